from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chronopack.geometry import (
    ORIENTATIONS,
    Box,
    Container,
    Dims3,
    Layout,
    Placement,
    format_scalar,
    is_valid,
    oriented_extents,
    pair_overlap_volume,
    potential_energy,
    protrusion_volume,
    to_scalar,
    total_overlap,
)

F = Fraction
UNIT = (1, 1, 1)


def layout_of(container, *specs):
    """specs: (dims tuple, position tuple[, orient])"""
    dims, entries = {}, {}
    for k, spec in enumerate(specs):
        d, pos = spec[0], spec[1]
        orient = spec[2] if len(spec) > 2 else 1
        dims[f"i{k}"] = Dims3(*d)
        entries[f"i{k}"] = Placement(*pos, orient)
    return Layout(Container(*container), dims, entries)


def test_scalar_parsing_is_exact():
    assert to_scalar("0.9") == F(9, 10)
    assert to_scalar("7/2") == F(7, 2)
    assert to_scalar(0.1) == F(1, 10)
    assert format_scalar(F(6, 4)) == "3/2"
    assert format_scalar(F(4, 2)) == "2"
    with pytest.raises(ValueError):
        to_scalar("1e3")


def test_dims_reject_non_positive():
    with pytest.raises(ValueError):
        Dims3(0, 1, 1)
    with pytest.raises(ValueError):
        Container(1, "-1", 1)


@pytest.mark.parametrize(
    "code, expected",
    [(1, (2, 3, 5)), (2, (2, 5, 3)), (3, (3, 2, 5)), (4, (3, 5, 2)), (5, (5, 2, 3)), (6, (5, 3, 2))],
)
def test_oriented_extents_table(code, expected):
    assert oriented_extents(Dims3(2, 3, 5), code) == expected


def test_cube_is_orientation_invariant():
    assert {oriented_extents(Dims3(*UNIT), c) for c in ORIENTATIONS} == {UNIT}


@given(st.tuples(*[st.integers(1, 9)] * 3))
def test_orientations_are_exactly_the_six_permutations(d):
    got = [oriented_extents(Dims3(*d), c) for c in sorted(ORIENTATIONS)]
    assert sorted(got) == sorted(permutations(d))


@pytest.mark.parametrize(
    "offset, volume",
    [((F(1, 2), 0, 0), F(1, 2)), ((1, 0, 0), 0), ((0, 0, 0), 1)],
)
def test_pair_overlap(offset, volume):
    a = Box.at((0, 0, 0), UNIT)
    b = Box.at(offset, UNIT)
    assert pair_overlap_volume(a, b) == volume
    assert pair_overlap_volume(b, a) == volume


@pytest.mark.parametrize(
    "pos, volume",
    [((0, 0, 0), 0), ((F(-1, 2), 0, 0), F(1, 2)), ((5, 5, 5), 1)],
)
def test_protrusion(pos, volume):
    assert protrusion_volume(Box.at(pos, UNIT), Container(2, 2, 2)) == volume


def test_total_overlap_examples():
    assert total_overlap(layout_of((1, 1, 1))) == 0
    assert total_overlap(layout_of((1, 1, 1), (UNIT, (0, 0, 0)))) == 0
    assert total_overlap(layout_of((2, 2, 2), (UNIT, (0, 0, 0)), (UNIT, (0, 0, 0)))) == 1


def test_is_valid_examples():
    assert is_valid(layout_of((1, 1, 1), (UNIT, (0, 0, 0))))
    assert not is_valid(layout_of((1, 1, 1), (UNIT, (F(1, 4), 0, 0))))
    assert is_valid(layout_of((2, 2, 1), ((1, 2, 1), (0, 0, 0)), ((1, 2, 1), (1, 0, 0))))


def test_potential_energy():
    assert potential_energy(layout_of((9, 9, 9))) == 0
    assert potential_energy(layout_of((9, 9, 9), (UNIT, (1, 2, 3)))) == 6
    assert potential_energy(layout_of((9, 9, 9), (UNIT, (0, 0, 0)), (UNIT, (1, 0, 0)))) == 1


rationals = st.fractions(min_value=-4, max_value=8, max_denominator=6)
extents = st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4)


@st.composite
def layouts(draw, min_items=1, max_items=4):
    n = draw(st.integers(min_items, max_items))
    container = tuple(draw(extents) for _ in range(3))
    specs = [
        (
            tuple(draw(extents) for _ in range(3)),
            tuple(draw(rationals) for _ in range(3)),
            draw(st.integers(1, 6)),
        )
        for _ in range(n)
    ]
    return layout_of(container, *specs)


@given(layouts(max_items=5))
def test_total_overlap_non_negative_and_zero_iff_terms_zero(layout):
    v = total_overlap(layout)
    assert v >= 0
    boxes = list(layout.boxes().values())
    terms = [protrusion_volume(b, layout.container) for b in boxes] + [
        pair_overlap_volume(a, b) for k, a in enumerate(boxes) for b in boxes[k + 1:]
    ]
    assert (v == 0) == all(t == 0 for t in terms)


@settings(max_examples=200)
@given(layouts(), st.data())
def test_lipschitz_bound(layout, data):
    ids = list(layout.entries)
    item = data.draw(st.sampled_from(ids))
    axis = data.draw(st.integers(0, 2))
    delta = data.draw(rationals.filter(lambda q: q != 0))
    p = layout.entries[item]
    moved = layout.with_entries({**layout.entries, item: p.moved(axis, p.position[axis] + delta)})
    ext = oriented_extents(layout.dims[item], p.orient)
    cross = ext[(axis + 1) % 3] * ext[(axis + 2) % 3]
    assert abs(total_overlap(moved) - total_overlap(layout)) <= len(ids) * cross * abs(delta)


@given(layouts(min_items=2), st.tuples(rationals, rationals, rationals))
def test_translation_keeps_pair_volumes(layout, shift):
    before = layout.boxes()
    shifted = {
        i: Placement(*(a + b for a, b in zip(p.position, shift)), p.orient)
        for i, p in layout.entries.items()
    }
    grown = Container(*(s + abs(d) + 1 for s, d in zip(layout.container.as_tuple(), shift)))
    after = Layout(grown, layout.dims, shifted).boxes()
    ids = list(before)
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            assert pair_overlap_volume(before[ids[a]], before[ids[b]]) == pair_overlap_volume(
                after[ids[a]], after[ids[b]]
            )
