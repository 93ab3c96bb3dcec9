import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hikitabench.rootdata import (LeviSpec, LieType, WeylElement, act_on_weight, borel_condition_cosets,
                                  coroot, coset_reps, enumerate_levis, free_double_cosets, is_integral,
                                  is_l_regular, is_p_antidominant, is_positive, is_shortest_right,
                                  is_longest_left, length, levi_simple_roots, levi_weyl_elements,
                                  levi_weyl_group, levi_weyl_order, pairing, positive_roots, rho,
                                  rho_levi, roots, simple_roots, weyl_elements, weyl_order)

F = Fraction


def brute_free_orbits(m, l):
    """Count W_M x W_L orbits on W of full size, by direct orbit enumeration."""
    wm, wl = levi_weyl_elements(m), levi_weyl_elements(l)
    seen, free = set(), 0
    for w in weyl_elements(m.ambient):
        if w in seen:
            continue
        orbit = {a * w * b for a in wm for b in wl}
        seen |= orbit
        free += len(orbit) == len(wm) * len(wl)
    return free


def test_weyl_orders():
    assert weyl_order(LieType("A", 4)) == 24
    assert weyl_order(LieType("C", 3)) == 48
    assert weyl_order(LieType("D", 4)) == 192
    for t in ("A3", "B3", "C2", "D3"):
        lt = LieType.parse(t)
        assert len(weyl_elements(lt)) == weyl_order(lt)


def test_type_d_needs_rank_two():
    with pytest.raises(ValueError):
        LieType("D", 1)


def test_act_on_weight_examples():
    assert act_on_weight(WeylElement.identity(3), (1, 2, 3)) == (1, 2, 3)
    flip = WeylElement((1, 2, 3), (-1, 1, 1))
    assert act_on_weight(flip, (1, 2, 3)) == (-1, 2, 3)
    cyc = WeylElement.from_cycles(3, (1, 2, 3))
    assert act_on_weight(cyc, ("a", "b", "c")) == ("c", "a", "b")


def test_root_counts_and_pairing():
    assert len(roots(LieType("C", 3))) == 18
    assert len(roots(LieType("B", 4))) == 32
    a = (1, -1, 0)
    assert pairing(a, coroot(a)) == 2
    for t in ("B3", "C3", "D4"):
        for r in roots(LieType.parse(t)):
            assert pairing(r, coroot(r)) == 2


def test_levi_weyl_orders():
    assert levi_weyl_order(LeviSpec.parse("C3:gl3")) == 6
    assert levi_weyl_order(LeviSpec.parse("C3:gl1,gl1|sp1")) == 2
    b = LeviSpec.parse("B4:gl2|so2")
    assert levi_weyl_order(b) == 16
    # brute-force membership oracle
    grp = levi_weyl_group(b)
    assert sum(grp.contains(w) for w in weyl_elements(b.ambient)) == 16


def test_free_double_coset_examples():
    a4 = LieType("A", 4)
    t = LeviSpec.torus(a4)
    assert len(free_double_cosets(t, t)) == 24
    assert len(free_double_cosets(LeviSpec(a4, (1, 3)), t)) == 4
    m, l = LeviSpec.parse("C3:gl3"), LeviSpec.parse("C3:gl1,gl1|sp1")
    assert len(free_double_cosets(m, l)) == brute_free_orbits(m, l)


def test_free_reps_are_canonical():
    m, l = LeviSpec.parse("C3:gl2|sp1"), LeviSpec.parse("C3:gl1,gl1|sp1")
    for lab in free_double_cosets(m, l):
        assert is_shortest_right(lab.rep, m) and is_longest_left(lab.rep, l)


def test_coset_rep_counts():
    assert len(coset_reps(LeviSpec.torus(LieType("A", 3)))) == 6
    assert len(coset_reps(LeviSpec(LieType("A", 4), (1, 3)))) == 4
    assert len(coset_reps(LeviSpec.parse("C3:gl3"))) == 8


@pytest.mark.parametrize("text", ["A4:gl2,gl2", "B3:gl1|so2", "C3:gl2|sp1", "D4:gl2|so2", "C2:gl1,gl1"])
@pytest.mark.parametrize("side", ["right", "left", "left-longest"])
def test_coset_partition(text, side):
    l = LeviSpec.parse(text)
    wl = levi_weyl_elements(l)
    reps = coset_reps(l, side)
    cosets = [frozenset((u * r) if side == "right" else (r * u) for u in wl) for r in reps]
    assert len(set(cosets)) == len(reps)
    union = set().union(*cosets)
    assert union == set(weyl_elements(l.ambient))
    lengths = {w: length(w) for w in union}
    for r, c in zip(reps, cosets):
        target = max if side == "left-longest" else min
        assert lengths[r] == target(lengths[w] for w in c)


def test_length_is_inversion_count():
    for t in ("B3", "D4", "A4"):
        lt = LieType.parse(t)
        pos = positive_roots(lt)
        for w in weyl_elements(lt)[::7]:
            assert length(w, lt) == sum(not is_positive(act_on_weight(w, r)) for r in pos)


def test_rho_examples():
    assert rho(LieType("A", 4)) == (F(3, 2), F(1, 2), F(-1, 2), F(-3, 2))
    assert rho_levi(LeviSpec(LieType("A", 4), (1, 3))) == (0, 1, 0, -1)
    assert rho(LieType("C", 3)) == (3, 2, 1)


def test_weight_predicates():
    a4 = LieType("A", 4)
    borel = LeviSpec.torus(a4)
    zero = (0, 0, 0, 0)
    assert is_p_antidominant(zero, borel) and not is_l_regular(zero, borel)
    v = tuple(-x for x in rho(a4))
    assert is_p_antidominant(v, borel) and is_l_regular(v, borel) and is_integral(v, a4)
    assert not is_p_antidominant((1, 0, 0, 0), borel)


def test_levi_parse_errors_carry_location():
    with pytest.raises(ValueError, match="sq1"):
        LeviSpec.parse("C3:gl2|sq1")
    with pytest.raises(ValueError):
        LeviSpec.parse("C3:gl2,gl2")


def _all_pairs(rank_cap):
    out = []
    for t in ("A2", "A3", "A4", "B2", "B3", "C2", "C3", "D3", "D4"):
        lt = LieType.parse(t)
        if lt.rank > rank_cap:
            continue
        levis = enumerate_levis(lt)
        out += [(m, l) for m in levis for l in levis]
    return out


def test_three_descriptions_agree_exhaustive_small():
    for m, l in _all_pairs(3):
        k = len(free_double_cosets(m, l))
        shortlong = [w for w in weyl_elements(m.ambient) if is_shortest_right(w, m) and is_longest_left(w, l)]
        assert k == len(shortlong) == len(borel_condition_cosets(m, l)) == brute_free_orbits(m, l)


def test_inverse_symmetry_small():
    for m, l in _all_pairs(4):
        labs = free_double_cosets(m, l)
        back = {lab.rep.inverse() for lab in labs}
        assert len(free_double_cosets(l, m)) == len(labs)
        # each inverse lies in a distinct free double coset of (L, M)
        reps = {lab.rep for lab in free_double_cosets(l, m)}
        wl, wm = levi_weyl_elements(l), levi_weyl_elements(m)
        hit = {r for w in back for r in reps if any(a * r * b == w for a in wl for b in wm)}
        assert hit == reps


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_group_axioms(data):
    n = data.draw(st.integers(2, 5))
    draw = lambda: WeylElement(tuple(data.draw(st.permutations(range(1, n + 1)))),
                               tuple(data.draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))))
    a, b, c = draw(), draw(), draw()
    e = WeylElement.identity(n)
    assert (a * b) * c == a * (b * c)
    assert a * e == a == e * a
    assert a * a.inverse() == e
    v = tuple(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n)))
    assert act_on_weight(a * b, v) == act_on_weight(a, act_on_weight(b, v))
    # D closure: products of even-sign elements stay even
    def even(w):
        return sum(s < 0 for s in w.signs) % 2 == 0
    if even(a) and even(b):
        assert even(a * b)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["B3", "C3", "D4", "A4"]), st.integers(0, 10 ** 6))
def test_levi_simple_roots_fixed_by_reflection_group(t, seed):
    lt = LieType.parse(t)
    levis = enumerate_levis(lt)
    l = random.Random(seed).choice(levis)
    rts = set(roots(lt))
    for w in levi_weyl_group(l).generators:
        for a in simple_roots(lt):
            assert act_on_weight(w, a) in rts
    assert len(levi_weyl_elements(l)) == levi_weyl_order(l)
    for a in levi_simple_roots(l):
        assert a in rts
