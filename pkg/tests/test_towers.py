import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottlab.towers import (
    BottList,
    HeightCapError,
    ListShapeError,
    Omniorientation,
    a_family,
    all_omniorientations,
    big_entry,
    bounded_flag,
    check_cap,
    cp1_power,
    family_list,
    fiber_tower,
    stage_bundle,
    validate_list,
)

from strategies import bott_lists


def test_height_one_is_trivial_parity():
    lst = validate_list([])
    assert lst.height == 1
    assert lst.is_totally_even and lst.is_terminally_odd
    assert lst.parity == "trivial"


def test_named_lists():
    b3 = validate_list([[1], [0, 1]])
    assert b3 == bounded_flag(3)
    assert b3.parity == "terminally_odd"
    a3 = validate_list([[2], [0, 2]])
    assert a3 == a_family(3)
    assert a3.parity == "totally_even"
    assert BottList.parse("1;0,2").parity == "mixed"


def test_shape_errors_name_the_stage():
    with pytest.raises(ListShapeError) as exc:
        validate_list([[1], [0]])
    assert exc.value.stage == 3
    with pytest.raises(ListShapeError):
        BottList.parse("1;a,b")
    with pytest.raises(ListShapeError):
        validate_list([[True]])
    with pytest.raises(ListShapeError):
        BottList.parse("[[1], [2]")


def test_parse_forms():
    assert BottList.parse("1;0,1;0,0,1") == bounded_flag(4)
    assert BottList.parse("[[1],[0,1]]") == bounded_flag(3)
    assert BottList.parse("", height=0).height == 0
    assert BottList.parse("").height == 1


@given(bott_lists(max_k=6))
def test_round_trip(lst):
    if lst.height >= 1:
        assert BottList.parse(lst.to_text(), lst.height) == lst
    assert validate_list(json.loads(json.dumps(lst.to_json())), lst.height) == lst


def test_fiber_examples():
    lst = validate_list([[2], [5, 7]])
    assert fiber_tower(lst, 1) == validate_list([[7]])
    assert fiber_tower(lst, 0) == lst
    assert fiber_tower(bounded_flag(6), 2) == bounded_flag(4)
    with pytest.raises(ValueError):
        fiber_tower(lst, 4)


@given(bott_lists(max_k=7), st.data())
def test_fiber_composition(lst, data):
    k1 = data.draw(st.integers(0, lst.height))
    k2 = data.draw(st.integers(0, lst.height - k1))
    assert fiber_tower(fiber_tower(lst, k1), k2) == fiber_tower(lst, k1 + k2)


@given(bott_lists(max_k=7), st.data())
def test_fiber_keeps_family(lst, data):
    k0 = data.draw(st.integers(0, lst.height))
    f = fiber_tower(lst, k0)
    if lst.is_totally_even:
        assert f.is_totally_even
    if lst.is_terminally_odd:
        assert f.is_terminally_odd


def test_stage_bundle():
    assert stage_bundle(bounded_flag(3), 3) == (0, 1, 0)
    assert stage_bundle(validate_list([[2], [5, 7]]), 3) == (5, 7, 0)
    assert stage_bundle(validate_list([[2], [5, 7]]), 1) == (0, 0, 0)
    with pytest.raises(IndexError):
        stage_bundle(bounded_flag(3), 4)


def test_omniorientations():
    omnis = list(all_omniorientations(2))
    assert len(omnis) == 16 and len(set(omnis)) == 16
    for idx, o in enumerate(omnis):
        assert o.index() == idx
        assert Omniorientation.parse(o.to_text()) == o
    with pytest.raises(ValueError):
        Omniorientation((0, 1), (0,))
    with pytest.raises(ValueError):
        Omniorientation((2,), (0,))


def test_presets_and_cap(monkeypatch):
    assert cp1_power(3).stages == ((0,), (0, 0))
    assert bounded_flag(3, sign=-1).stages == ((-1,), (0, -1))
    lst = big_entry(5, random.Random(3))
    assert all(abs(lst.a(j - 1, j)) >= 3 for j in range(2, 6))
    assert family_list("big-entry", 4, 7) == family_list("big-entry", 4, 7)
    with pytest.raises(ValueError):
        family_list("nope", 2)
    with pytest.raises(HeightCapError):
        check_cap(17)
    check_cap(17, cap=20)
    monkeypatch.setenv("BOTTLAB_CAP", "3")
    with pytest.raises(HeightCapError):
        check_cap(4)
