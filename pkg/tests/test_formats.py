import random
from fractions import Fraction

import pytest

from chronopack.formats import (
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
from chronopack.geometry import Container
from chronopack.optimizer import Instance, solve
from chronopack.packer import PackItem, pack_decision
from chronopack.scheduler import greedy_schedule, validate_schedule

from conftest import bake


def test_parse_instance_basic():
    inst = parse_instance("container 1 1 1\nitem a 1 1 1 5")
    assert len(inst.items) == 1 and inst.items[0].bake_time == 5


def test_parse_instance_exact_numbers():
    inst = parse_instance("# oven\n\ncontainer 2 1 1\nitem a 0.5 1 1 3/2\n")
    it = inst.items[0]
    assert it.dims.as_tuple() == (Fraction(1, 2), 1, 1)
    assert it.bake_time == Fraction(3, 2)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("item a 1 1 1 5", 1, "missing container"),
        ("container 1 1 1\nitem a 1 1 1 5\nitem a 1 1 1 5", 3, "duplicate id"),
        ("container 1 1 1\nitem a 0 1 1 5", 2, "non-positive"),
        ("container 1 1 1\nitem a 1 x 1 5", 2, "malformed number"),
        ("container 1 1\n", 1, "expected"),
        ("container 1 1 1\ncontainer 1 1 1", 2, "duplicate container"),
        ("container 1 1 1\nbox a", 2, "unknown directive"),
        ("", 1, "missing container"),
    ],
)
def test_parse_instance_errors(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse_instance(text)
    assert err.value.line == line
    assert fragment in err.value.message


def test_instance_round_trip():
    text = "container 3 5/2 1\nitem a 1/2 1 1 3/2\nitem b 1 2 1 4\n"
    assert emit_instance(parse_instance(text)) == text


def test_schedule_round_trip_single():
    s = greedy_schedule(Container(1, 1, 1), [bake("a", 1, 1, 1, 5)])
    text = emit_schedule(s)
    assert parse_schedule(text) == s
    assert emit_schedule(parse_schedule(text)) == text


def test_schedule_round_trip_solved(three_cubes):
    s = solve(three_cubes).best
    back = parse_schedule(emit_schedule(s))
    assert back == s
    assert validate_schedule(three_cubes.container, three_cubes.items, back).ok


def test_tampered_gap_parses_but_fails_validation(three_cubes):
    s = solve(three_cubes).best
    text = emit_schedule(s).replace("beat 2 start 1", "beat 2 start 3/2")
    back = parse_schedule(text)
    assert "beat-gap" in validate_schedule(three_cubes.container, three_cubes.items, back).kinds()


def test_parse_schedule_errors():
    with pytest.raises(ParseError) as err:
        parse_schedule("makespan 1\norder a\nplace 1 a 0 0 0 1\n")
    assert err.value.line == 3
    with pytest.raises(ParseError):
        parse_schedule("order a\n")
    with pytest.raises(ParseError) as err:
        parse_schedule("makespan 1\norder a\nbeat 1 start 0 duration 1\nplace 1 a 0 0 0 9\n")
    assert err.value.line == 4


def test_gantt_csv(three_cubes):
    s = greedy_schedule(Container(1, 1, 1), [bake("a", 1, 1, 1, 5)])
    assert emit_gantt_csv(s, [bake("a", 1, 1, 1, 5)]) == "id,start,end\na,0,5\n"
    solved = solve(three_cubes).best
    rows = emit_gantt_csv(solved, three_cubes.items).splitlines()[1:]
    assert len(rows) == 3
    assert max(Fraction(r.split(",")[2]) for r in rows) == 2
    empty = greedy_schedule(Container(1, 1, 1), [])
    assert emit_gantt_csv(empty, []) == "id,start,end\n"


def test_boxes_csv(movement_instance):
    by_id = {it.id: it for it in movement_instance.items}
    s = greedy_schedule(movement_instance.container, [by_id[i] for i in "YXWZ"])
    lines = emit_boxes_csv(s, movement_instance.items).splitlines()
    assert lines[0] == "beat,id,x,y,z,ex,ey,ez"
    assert "1,X,1,0,0,2,1,1" in lines and "2,X,0,0,0,2,1,1" in lines


def test_generator_is_deterministic():
    p = GenParams(seed=1, n=3)
    assert emit_instance(generate_instance(p)) == emit_instance(generate_instance(p))
    assert emit_instance(generate_instance(p)) != emit_instance(generate_instance(GenParams(seed=2, n=3)))


@pytest.mark.parametrize("seed", range(15))
def test_feasible_by_cuts_packs(seed):
    rng = random.Random(seed)
    box = tuple(rng.randint(2, 3) for _ in range(3))
    inst = generate_instance(GenParams(seed=seed, n=4, container=box, mode="feasible-by-cuts"))
    items = [PackItem(it.id, it.dims) for it in inst.items]
    assert sum(it.dims.volume for it in inst.items) == inst.container.volume
    assert pack_decision(inst.container, items) is not None


def test_generator_rejects_degenerate_params():
    with pytest.raises(ValueError):
        GenParams(seed=1, n=0)
    with pytest.raises(ValueError):
        GenParams(seed=1, n=2, dims=(3, 1))
    with pytest.raises(ValueError):
        generate_instance(GenParams(seed=1, n=5, container=(2, 1, 1), mode="feasible-by-cuts"))


def test_generated_files_round_trip():
    for seed in range(10):
        inst = generate_instance(GenParams(seed=seed, n=4, container=(3, 3, 3), mode="feasible-by-cuts"))
        text = emit_instance(inst)
        assert emit_instance(parse_instance(text)) == text
        s = greedy_schedule(inst.container, inst.items)
        assert parse_schedule(emit_schedule(s)) == s


def test_instance_ids_must_be_unique():
    with pytest.raises(ValueError):
        Instance(Container(1, 1, 1), [bake("a", 1, 1, 1, 1), bake("a", 1, 1, 1, 1)])
