"""Command-line driver.

Exit codes: 0 success/feasible, 1 infeasible, 2 input error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .formats import (
    GenParams,
    ParseError,
    emit_boxes_csv,
    emit_gantt_csv,
    emit_instance,
    emit_schedule,
    generate_instance,
    parse_instance,
    parse_schedule,
)
from .geometry import format_scalar
from .optimizer import SolveGuardError, solve
from .oracles import OracleCapExceeded, grid_pack_oracle, time_grid_schedule_oracle
from .packer import ItemCannotFit, PackItem, pack_decision
from .scheduler import greedy_schedule, split_oversize, validate_schedule

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_INVALID = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _load(path: str, drop_oversize: bool):
    inst = parse_instance(_read(path))
    if drop_oversize:
        keep, drop = split_oversize(inst.container, inst.items)
        if drop:
            print("dropped oversize items: " + " ".join(it.id for it in drop), file=sys.stderr)
        inst.items = keep
    return inst


def _range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("-")
    return (int(lo), int(hi or lo))


def _box(text: str) -> tuple[int, int, int]:
    parts = text.lower().split("x")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected LxWxH")
    return tuple(int(p) for p in parts)


def _emit(args, inst, schedule, ordered: bool) -> int:
    report = validate_schedule(inst.container, inst.items, schedule, ordered)
    if not report.ok:
        for v in report.violations:
            print(v, file=sys.stderr)
        return EXIT_INVALID
    text = emit_schedule(schedule)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    if args.gantt:
        _write(args.gantt, emit_gantt_csv(schedule, inst.items))
    if args.boxes:
        _write(args.boxes, emit_boxes_csv(schedule, inst.items))
    return EXIT_OK


def cmd_pack(args) -> int:
    inst = _load(args.file, args.drop_oversize)
    items = [PackItem(it.id, it.dims) for it in inst.items]
    try:
        layout = pack_decision(inst.container, items)
    except ItemCannotFit as exc:
        print(f"INFEASIBLE: {exc}")
        return EXIT_INFEASIBLE
    if layout is None:
        print("INFEASIBLE")
        return EXIT_INFEASIBLE
    print("FEASIBLE")
    for i, p in layout.entries.items():
        coords = " ".join(format_scalar(v) for v in p.position)
        print(f"place {i} {coords} {p.orient}")
    return EXIT_OK


def cmd_schedule(args) -> int:
    inst = _load(args.file, args.drop_oversize)
    if args.order == "as-given":
        items = inst.items
    else:
        by_id = {it.id: it for it in inst.items}
        ids = args.order.split(",")
        if sorted(ids) != sorted(by_id):
            raise InputError("--order must list every item id exactly once")
        items = [by_id[i] for i in ids]
    schedule = greedy_schedule(inst.container, items)
    return _emit(args, inst, schedule, ordered=True)


def cmd_solve(args) -> int:
    inst = _load(args.file, args.drop_oversize)
    result = solve(inst, prune=args.prune, workers=args.workers, force=args.force)
    print(
        f"evaluated {result.permutations_evaluated} pruned {result.permutations_pruned} "
        f"lower_bound {format_scalar(result.lower_bound)}",
        file=sys.stderr,
    )
    return _emit(args, inst, result.best, ordered=False)


def cmd_validate(args) -> int:
    inst = parse_instance(_read(args.instance))
    schedule = parse_schedule(_read(args.schedule))
    report = validate_schedule(inst.container, inst.items, schedule, args.ordered)
    if report.ok:
        print("OK")
        return EXIT_OK
    print(f"INVALID ({len(report.violations)} violations)")
    for v in report.violations:
        print(v)
    return EXIT_INVALID


def cmd_gen(args) -> int:
    params = GenParams(
        seed=args.seed,
        n=args.n,
        container=args.container,
        dims=args.dims,
        times=args.times,
        mode=args.mode,
    )
    text = emit_instance(generate_instance(params))
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _load(args.file, args.drop_oversize)
    if args.what == "pack":
        ok = grid_pack_oracle(inst.container, inst.items, with_rotations=True)
        print("FEASIBLE" if ok else "INFEASIBLE")
        return EXIT_OK if ok else EXIT_INFEASIBLE
    order = None
    if args.order == "as-given":
        order = [it.id for it in inst.items]
    elif args.order != "any":
        order = args.order.split(",")
    best = time_grid_schedule_oracle(
        inst, order, time_cap=args.time_cap, item_cap=args.item_cap
    )
    if best is None:
        print("INFEASIBLE")
        return EXIT_INFEASIBLE
    print(f"makespan {best}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chronopack", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file")
        sp.add_argument("--drop-oversize", action="store_true",
                        help="remove items that fit in no orientation")
        return sp

    def outputs(sp):
        sp.add_argument("-o", "--output", help="write the schedule here instead of stdout")
        sp.add_argument("--gantt", help="write id,start,end CSV")
        sp.add_argument("--boxes", help="write per-beat placement CSV")

    sp = instance_cmd("pack", "decide whether all items pack at once")
    sp.set_defaults(func=cmd_pack)

    sp = instance_cmd("schedule", "greedy schedule for one baking order")
    sp.add_argument("--order", default="as-given",
                    help="'as-given' or a comma-separated id list")
    outputs(sp)
    sp.set_defaults(func=cmd_schedule)

    sp = instance_cmd("solve", "minimum makespan over all orders")
    sp.add_argument("--prune", action="store_true", help="stop once the lower bound is met")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--force", action="store_true", help="ignore the item-count guard")
    outputs(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("validate", help="check a schedule file against an instance")
    sp.add_argument("instance")
    sp.add_argument("schedule")
    sp.add_argument("--ordered", action="store_true",
                    help="also require starts to follow the schedule's order line")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("gen", help="generate a seeded instance")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--container", type=_box, default=(4, 4, 4), help="LxWxH")
    sp.add_argument("--dims", type=_range, default=(1, 3), help="lo-hi")
    sp.add_argument("--times", type=_range, default=(1, 3), help="lo-hi")
    sp.add_argument("--mode", choices=["random", "feasible-by-cuts"], default="random")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("oracle", help="brute-force checks on small integer instances")
    sp.add_argument("what", choices=["pack", "schedule"])
    sp.add_argument("file")
    sp.add_argument("--order", default="any",
                    help="'any', 'as-given' or a comma-separated id list")
    sp.add_argument("--time-cap", type=int, default=8)
    sp.add_argument("--item-cap", type=int, default=4)
    sp.add_argument("--drop-oversize", action="store_true")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ParseError, SolveGuardError, OracleCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
