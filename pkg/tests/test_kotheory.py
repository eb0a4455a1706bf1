import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bottlab.coeffs import E2, KOScalar, Laurent
from bottlab.ktheory import conjugate, k_algebra
from bottlab.kotheory import (
    KOClass,
    KOGenerator,
    UnsupportedFamilyError,
    a_family_u,
    d_class,
    generator_complex,
    ko_minus2_basis,
    ko_minus2_group,
    n_class,
    n_gen,
    n_generators,
    solved_product,
    te_algebra,
    te_relation,
    te_relation_free,
    to_product,
    unit_class,
)
from bottlab.steenrod import GroupDescriptor, bb_profile, ko_groups_from_bb
from bottlab.towers import BottList, a_family, bounded_flag, cp1_power

D1 = KOGenerator("d", 1)


def random_terminally_odd(k, rng):
    stages = []
    for j in range(2, k + 1):
        lower = [rng.randint(-3, 3) for _ in range(j - 2)]
        stages.append(tuple(lower) + (rng.choice([-3, -1, 1, 3, 5]),))
    return BottList(k, tuple(stages))


def random_totally_even(k, rng):
    return BottList(
        k, tuple(tuple(2 * rng.randint(-2, 2) for _ in range(j - 1)) for j in range(2, k + 1))
    )


def test_generator_names_and_degrees():
    g, carry = n_gen((1, 2), 4, 5)
    assert g.name == "n({1,2};4)_1" and carry == 1
    assert g.degree == 2
    assert KOGenerator("d", 0b101).name == "d1*d3"
    assert str(KOClass.of(bounded_flag(2), D1, KOScalar.gen(E2, 1))) == "e2*y^1*d1"
    with pytest.raises(ValueError):
        KOGenerator("n", 0b1, 2, 0)
    with pytest.raises(ValueError):
        KOGenerator("n", 0, 2, 4)


def test_complexification_examples():
    b2 = bounded_flag(2)
    alg = k_algebra(b2)
    x_d1 = KOClass.of(b2, D1, KOScalar.x())
    assert x_d1.complexify() == alg.gen(1) * Laurent({2: 2})
    assert not KOClass.of(b2, D1, KOScalar.gen(E2, 3)).complexify()
    g2 = alg.gen(2)
    for i in range(-3, 6):
        want = (g2 + conjugate(g2) * (1 if i % 2 else -1)) * Laurent.z(i + 1)
        assert n_class(b2, (), 2, i).complexify() == want


@pytest.mark.parametrize("k", range(1, 6))
def test_complexification_preserves_degree(k):
    lst = bounded_flag(k)
    for g in n_generators(lst):
        assert generator_complex(lst, g).degree() == g.degree


def test_module_relations():
    lst = bounded_flag(4)
    for g in n_generators(lst):
        base = KOClass.of(lst, g)
        R = [j for j in range(1, 5) if g.mask >> (j - 1) & 1]
        assert base.scale(KOScalar.e()) == KOClass(lst)
        assert base.scale(KOScalar.x()) == n_class(lst, R, g.j, g.i + 2, 2)
        assert base.scale(KOScalar.y()) == n_class(lst, R, g.j, g.i + 4)
        assert base.scale(KOScalar.x()).complexify() == base.complexify() * Laurent({2: 2})


def test_b2_products():
    b2 = bounded_flag(2)
    n = lambda i: n_class(b2, (), 2, i)
    d1 = d_class(b2, [1])
    for i in range(-4, 8):
        want = n(i - 1).scale(2) if i % 2 else KOClass(b2)
        assert d1 * n(i) == want
    assert d1 * d1 == KOClass(b2)


@pytest.mark.parametrize("seed", range(4))
def test_closed_forms_match_solver(seed):
    rng = random.Random(seed)
    lst = random_terminally_odd(rng.randint(3, 5), rng)
    for g in n_generators(lst):
        assert to_product(D1, g, lst) == solved_product(D1, g, lst)
        if g.j > 2:
            if g.mask & 1:
                assert not to_product(D1, g, lst)
            else:
                assert to_product(D1, g, lst) == KOClass.of(lst, KOGenerator("n", g.mask | 1, g.j, g.i))


@pytest.mark.parametrize("seed", range(3))
def test_products_are_associative_and_commutative(seed):
    rng = random.Random(seed)
    lst = random_terminally_odd(4, rng)
    gens = [D1] + list(n_generators(lst))
    for _ in range(40):
        a, b, c = (KOClass.of(lst, rng.choice(gens), rng.randint(-3, 3)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert (a * b).complexify() == a.complexify() * b.complexify()


def test_torsion_products_vanish():
    lst = bounded_flag(3)
    e_d1 = KOClass.of(lst, D1, KOScalar.e())
    for g in n_generators(lst):
        assert not e_d1 * KOClass.of(lst, g)
    assert not e_d1 * d_class(lst, [1])


def test_to_product_needs_terminally_odd():
    with pytest.raises(UnsupportedFamilyError):
        to_product(D1, D1, a_family(3))
    with pytest.raises(UnsupportedFamilyError):
        ko_minus2_basis(BottList.parse("1;0,2"))


def test_te_relations():
    for j in range(1, 5):
        rel = te_relation(cp1_power(4), j)
        assert rel.determined and not rel.value
    a = a_family(4)
    assert str(te_relation(a, 2).value) == "2*d1"
    assert str(te_relation(a, 3).value) == "2*d2 + e2*d1*d2"
    assert str(te_relation_free(a, 3)) == "2*d2"
    d2 = d_class(a, [2])
    assert d2 * d2 == d_class(a, [1, 2], 2)


@pytest.mark.parametrize("k", range(2, 7))
def test_a_family_recursion_is_homogeneous(k):
    lst = a_family(k)
    for i in range(-1, 4):
        u = KOClass(lst, [(KOGenerator("d", m), s) for m, s in a_family_u(lst, i, k).items()])
        if u:
            assert u.degree() == -2 * i
    for j in range(1, k + 1):
        rel = te_relation(lst, j)
        assert rel.determined
        if rel.value:
            assert rel.value.degree() == 2


@pytest.mark.parametrize("seed", range(5))
def test_te_free_part_matches_complexification(seed):
    rng = random.Random(seed)
    lst = random_totally_even(rng.randint(2, 5), rng)
    for j in range(1, lst.height + 1):
        rel = te_relation(lst, j)
        dj = d_class(lst, [j])
        assert (dj * dj).complexify() == rel.value.complexify() * dj.complexify()


def test_te_undetermined_flag():
    lst = BottList.parse("2;2,2")
    rel = te_relation(lst, 3)
    assert not rel.determined and rel.value.undetermined
    d3 = d_class(lst, [3])
    assert (d3 * d3).undetermined
    assert not (d_class(lst, [1]) * d_class(lst, [2])).undetermined
    assert te_algebra(lst)[1] is False


@given(st.integers(0, 6))
def test_totally_even_basis_cardinality(k):
    lst = a_family(k)
    alg, _ = te_algebra(lst)
    assert len(alg.basis()) == 2 ** k


def test_ko_minus2_examples():
    b2 = bounded_flag(2)
    basis = ko_minus2_basis(b2)
    assert [str(b.element) for b in basis] == ["x*d1", "n({};2)_1"]
    assert all(b.element.degree() == -2 for b in basis)
    a2 = a_family(2)
    assert ko_minus2_group(a2) == GroupDescriptor(2)
    assert ko_minus2_group(a2, reduced=False) == GroupDescriptor(2, (2,))
    s2 = BottList(1)
    assert [str(b.element) for b in ko_minus2_basis(s2)] == ["x*d1"]
    assert [b.order for b in ko_minus2_basis(s2, reduced=False)] == [2, 0]
    assert ko_minus2_group(BottList(0)) == GroupDescriptor(0)


@pytest.mark.parametrize("k", range(0, 9))
def test_ko_minus2_against_bb(k):
    for lst in (bounded_flag(k), a_family(k), cp1_power(k)):
        for reduced in (True, False):
            assert ko_minus2_group(lst, reduced) == ko_groups_from_bb(bb_profile(lst), -2, reduced)
        for b in ko_minus2_basis(lst):
            assert b.element.degree() == -2
            if b.order == 0:
                assert b.element.complexify()
            else:
                assert not b.element.complexify()


def test_terminally_odd_torsion_degrees():
    lst = bounded_flag(3)
    degs = set()
    for s in range(-2, 3):
        for tok in ("e", E2):
            degs.add(KOClass.of(lst, D1, KOScalar.gen(tok, s)).degree() % 8)
    assert degs == {0, 1}


def test_class_arithmetic():
    lst = bounded_flag(3)
    a = n_class(lst, (1,), 3, 2) + d_class(lst, [1], KOScalar.x())
    assert a - a == KOClass(lst)
    assert a + 0 == a
    assert unit_class(lst) * a == a
    assert a.to_json()[0]["generator"] in ("d1", "n({1};3)_2")
    assert a.torsion_part() == KOClass(lst)
