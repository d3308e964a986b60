from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from shardfan.errors import FaceNotCodim2, NotALattice
from shardfan.lattice import (
    ChamberPoset,
    canonical_join_rep_oracle,
    check_semidistributive,
    crown_check,
    gamma,
    irredundant_join_reps,
    join,
    join_irreducibles,
    meet,
    star_interval,
)

from conftest import built, by_vectors, chamber

FAMILIES = [("fa2",), ("orthant", 1), ("orthant", 2), ("orthant", 3), ("crown", 1, 2),
            ("crown", 2, 3), ("crown", 0, 0), ("coxeterA", 2), ("coxeterA", 3)]

# synthetic lattices given by cover pairs (upper, lower)
M3 = ChamberPoset.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
N5 = ChamberPoset.from_covers(5, [(0, 1), (0, 2), (1, 3), (3, 4), (2, 4)])
BOWTIE = ChamberPoset.from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


def leq_oracle(poset, a, b):
    """Reachability by plain graph search over lower covers."""
    stack, seen = [b], {b}
    while stack:
        c = stack.pop()
        if c == a:
            return True
        for d in poset.lower_covers[c]:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return False


def join_oracle(poset, a, b):
    ubs = [x for x in range(poset.size) if leq_oracle(poset, a, x) and leq_oracle(poset, b, x)]
    least = [x for x in ubs if all(leq_oracle(poset, x, y) for y in ubs)]
    assert len(least) == 1
    return least[0]


def meet_oracle(poset, a, b):
    lbs = [x for x in range(poset.size) if leq_oracle(poset, x, a) and leq_oracle(poset, x, b)]
    greatest = [x for x in lbs if all(leq_oracle(poset, y, x) for y in lbs)]
    assert len(greatest) == 1
    return greatest[0]


def semidistributive_oracle(poset):
    n = range(poset.size)
    for a, b, c in product(n, n, n):
        if meet_oracle(poset, a, b) == meet_oracle(poset, a, c) != meet_oracle(poset, a, join_oracle(poset, b, c)):
            return False
        if join_oracle(poset, a, b) == join_oracle(poset, a, c) != join_oracle(poset, a, meet_oracle(poset, b, c)):
            return False
    return True


def test_fa2_arrows(fa2):
    fan, poset, _ = fa2
    c = lambda s: chamber(fan, s)
    expected = {(c("01"), c("40")), (c("01"), c("12")), (c("40"), c("34")),
                (c("12"), c("23")), (c("23"), c("34"))}
    assert {(a.upper, a.lower) for a in poset.arrows} == expected


def test_orthant2_boolean():
    fan, poset, _ = built("orthant", 2)
    assert len(poset.arrows) == 4
    negs = {c: {v for v in fan.chamber_vectors(c) if sum(v) < 0} for c in range(4)}
    for a, b in product(range(4), repeat=2):
        assert poset.leq(a, b) == (negs[b] <= negs[a])


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_extremes_are_identity_and_negated(family):
    fan, poset, _ = built(*family)
    assert poset.maxima == [fan.identity_chamber]
    assert poset.minima == [fan.negated_chamber]
    assert not poset.transitive_arrows()


@pytest.mark.parametrize("family", FAMILIES[:7], ids=str)
def test_meet_join_match_brute_force(family):
    _, poset, _ = built(*family)
    for a, b in product(range(poset.size), repeat=2):
        assert poset.leq(a, b) == leq_oracle(poset, a, b)
        assert join(poset, a, b) == join_oracle(poset, a, b)
        assert meet(poset, a, b) == meet_oracle(poset, a, b)


def test_fa2_meet_join_examples(fa2):
    fan, poset, _ = fa2
    c = lambda s: chamber(fan, s)
    assert join(poset, c("40"), c("23")) == c("01")
    assert meet(poset, c("40"), c("12")) == c("34")
    for x in range(poset.size):
        assert join(poset, x, poset.bottom) == x


def test_non_lattice_rejected():
    assert not BOWTIE.is_lattice()
    with pytest.raises(NotALattice):
        BOWTIE.join(2, 3)


@pytest.mark.parametrize("poset, expected", [(M3, False), (N5, True)], ids=["M3", "N5"])
def test_semidistributive_synthetic(poset, expected):
    res = check_semidistributive(poset)
    assert res.ok is expected is semidistributive_oracle(poset)
    if not expected:
        kind, a, b, c = res.witness
        op, other = (poset.meet, poset.join) if kind == "meet" else (poset.join, poset.meet)
        assert op(a, b) == op(a, c) != op(a, other(b, c))


@pytest.mark.parametrize("family", [("fa2",), ("orthant", 3), ("crown", 1, 2), ("coxeterA", 2)], ids=str)
def test_semidistributive_fans(family):
    _, poset, _ = built(*family)
    assert check_semidistributive(poset).ok
    assert semidistributive_oracle(poset)


def test_join_irreducibles_examples(fa2):
    fan, poset, _ = fa2
    assert join_irreducibles(poset) == {chamber(fan, s) for s in ("40", "12", "23")}
    fan, poset, _ = built("orthant", 3)
    # top is the positive orthant, so the atoms keep exactly one positive coordinate
    one_positive = {c for c in range(poset.size)
                    if sum(1 for v in fan.chamber_vectors(c) if sum(v) > 0) == 1}
    assert join_irreducibles(poset) == one_positive


@pytest.mark.parametrize("p, q", [(0, 0), (0, 1), (1, 2), (2, 3), (3, 1)])
def test_crown_join_irreducibles_are_chain_chambers(p, q):
    fan, poset, _ = built("crown", p, q)
    chain = set(range(poset.size)) - {poset.top, poset.bottom}
    assert join_irreducibles(poset) == chain
    assert len(chain) == p + q + 2


def test_gamma_examples(fa2):
    fan, poset, _ = fa2
    c = lambda s: chamber(fan, s)
    assert gamma(poset, c("01"), c("40")) == c("23")
    assert gamma(poset, c("23"), c("34")) == c("23")
    fan, poset, _ = built("orthant", 2)
    pp = by_vectors(fan, (1, 0), (0, 1))
    mp = by_vectors(fan, (-1, 0), (0, 1))
    pm = by_vectors(fan, (1, 0), (0, -1))
    assert gamma(poset, pp, mp) == pm


def test_gamma_rejects_non_arrow(fa2):
    _, poset, _ = fa2
    with pytest.raises(ValueError):
        gamma(poset, poset.top, poset.bottom)


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_gamma_properties(family):
    _, poset, _ = built(*family)
    jirr = join_irreducibles(poset)
    for a in poset.arrows:
        g = gamma(poset, a.upper, a.lower)
        assert g in jirr
        assert poset.leq(g, a.upper) and not poset.leq(g, a.lower)
        assert poset.gamma_labels[a.upper, a.lower] == g


def test_cjr_examples(fa2):
    fan, poset, _ = fa2
    c = lambda s: chamber(fan, s)
    assert canonical_join_rep_oracle(poset, c("01")) == {c("40"), c("23")}
    assert set(irredundant_join_reps(poset, c("01"))) == {
        frozenset({c("40"), c("23")}), frozenset({c("40"), c("12")})}
    assert canonical_join_rep_oracle(poset, poset.bottom) == frozenset()
    for j in join_irreducibles(poset):
        assert canonical_join_rep_oracle(poset, j) == {j}


@pytest.mark.parametrize("family", FAMILIES, ids=str)
def test_cjr_properties(family):
    _, poset, _ = built(*family)
    jirr = join_irreducibles(poset)
    for x in range(poset.size):
        rep = canonical_join_rep_oracle(poset, x)
        assert rep <= jirr
        assert poset.join_all(rep) == x if rep else x == poset.bottom
        for k in range(len(rep)):
            for sub in combinations(sorted(rep), k):
                assert poset.join_all(sub) != x if sub else x != poset.bottom


def test_star_interval_examples(fa2):
    fan, poset, _ = fa2
    c = lambda s: chamber(fan, s)
    iv = star_interval(fan, poset, (2,))
    assert (iv.min, iv.max, iv.chambers) == (c("23"), c("12"), {c("12"), c("23")})
    iv = star_interval(fan, poset, ())
    assert (iv.min, iv.max, iv.chambers) == (c("34"), c("01"), frozenset(range(5)))


def test_orthant3_star_interval_of_e3():
    fan, poset, _ = built("orthant", 3)
    e3 = (fan.ray_index((0, 0, 1)),)
    iv = star_interval(fan, poset, e3)
    assert iv.max == by_vectors(fan, (1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert iv.min == by_vectors(fan, (-1, 0, 0), (0, -1, 0), (0, 0, 1))
    cr = crown_check(fan, poset, e3)
    assert cr.ok and cr.chain_lengths == (1, 1)


def test_fa2_crown_at_origin(fa2):
    fan, poset, _ = fa2
    cr = crown_check(fan, poset, ())
    assert cr.ok
    assert sorted(cr.arrow_lengths) == [2, 3]


def test_crown_1_2_chains():
    fan, poset, _ = built("crown", 1, 2)
    cr = crown_check(fan, poset, ())
    assert cr.ok and sorted(cr.chain_lengths) == [2, 3]


def test_crown_check_requires_codim2(fa2):
    fan, poset, _ = fa2
    with pytest.raises(FaceNotCodim2):
        crown_check(fan, poset, (0,))


@pytest.mark.parametrize("family", [("coxeterA", 3), ("orthant", 4), ("crown", 4, 5)], ids=str)
def test_crown_at_every_codim2_face(family):
    fan, poset, _ = built(*family)
    for face in fan.codim2_faces:
        assert crown_check(fan, poset, face).ok
    for face in fan.faces:
        star_interval(fan, poset, face)


def _random_lattice(draw):
    """Lattice of down-closed subsets of a random poset (always distributive)."""
    n = draw(st.integers(1, 4))
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())}
    ideals = [frozenset(s) for k in range(n + 1) for s in combinations(range(n), k)
              if all(i in s for (i, j) in rel if j in s)]
    covers = [(a, b) for a, A in enumerate(ideals) for b, B in enumerate(ideals)
              if B < A and len(A - B) == 1]
    return ChamberPoset.from_covers(len(ideals), covers)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_distributive_lattices_are_semidistributive(data):
    poset = _random_lattice(data.draw)
    assert poset.is_lattice()
    assert check_semidistributive(poset).ok
    for x in range(poset.size):
        rep = canonical_join_rep_oracle(poset, x)
        assert poset.join_all(rep) == x if rep else x == poset.bottom
