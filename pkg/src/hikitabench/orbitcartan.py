"""Weyl orbits of generic points of z(l), their vanishing ideals I', the
leading-form ideals gr I', the weak flatness check and certificates that the
graded quotient cannot match the cohomology of the dual Springer fiber."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polyring import (GradedQuotient, IdealBasis, MultiPoly, leading_form_ideal,
                       monomial_str, quotient_analytics, ring, vanishing_ideal)
from .rootdata import (LeviSpec, act_on_weight, in_levi_weyl_group, levi_weyl_order,
                       weyl_elements, weyl_order)


class NonGenericBase(ValueError):
    pass


@dataclass
class OrbitScheme:
    levi: LeviSpec
    base_point: tuple
    points: list
    iprime: IdealBasis
    gr_iprime: IdealBasis
    quotient: GradedQuotient
    standard_monomials: list = field(default_factory=list)

    @property
    def names(self) -> tuple:
        return self.iprime.names


def stabilizer(base: Sequence, l: LeviSpec) -> list:
    return [w for w in weyl_elements(l.ambient) if act_on_weight(w, base) == tuple(base)]


def is_generic(base: Sequence, l: LeviSpec) -> bool:
    stab = stabilizer(base, l)
    return len(stab) == levi_weyl_order(l) and all(in_levi_weyl_group(l, w) for w in stab)


def canonical_base(l: LeviSpec, seed: int = 0) -> tuple:
    """Value j on the j-th GL block, zero on the tail; random small rationals
    if that is not generic."""
    vals = []
    for j, a in enumerate(l.gl_blocks, start=1):
        vals += [Fraction(j)] * a
    vals += [Fraction(0)] * l.tail
    base = tuple(vals)
    if is_generic(base, l):
        return base
    rng = random.Random(seed)
    for _ in range(100):
        vals = []
        for a in l.gl_blocks:
            vals += [Fraction(rng.randint(1, 97), rng.randint(1, 7))] * a
        vals += [Fraction(0)] * l.tail
        if is_generic(tuple(vals), l):
            return tuple(vals)
    raise NonGenericBase(f"could not synthesize a generic base point for {l}")


def build_orbit_scheme(l: LeviSpec, base: Sequence | None = None, seed: int = 0) -> OrbitScheme:
    if base is None:
        base = canonical_base(l, seed)
    base = tuple(Fraction(c) for c in base)
    if len(base) != l.n:
        raise ValueError(f"base point has {len(base)} coordinates, ambient rank is {l.n}")
    if not is_generic(base, l):
        raise NonGenericBase(f"stabilizer of {tuple(map(str, base))} is not W_L for {l}")
    points = sorted({act_on_weight(w, base) for w in weyl_elements(l.ambient)})
    expected = weyl_order(l.ambient) // levi_weyl_order(l)
    if len(points) != expected:
        raise RuntimeError(f"orbit has {len(points)} points, expected {expected}")
    names = ring(l.n)
    gb, std = vanishing_ideal(points, names)
    iprime = IdealBasis(gb, names, gb)
    gr = leading_form_ideal(iprime)
    quotient = quotient_analytics(gr)
    return OrbitScheme(l, base, points, iprime, gr, quotient, std)


def _monomial(scheme: OrbitScheme, exps) -> MultiPoly:
    exps = tuple(exps)
    if len(exps) == scheme.levi.n:
        exps = exps + (0,)
    return MultiPoly.monomial(scheme.names, exps)


def gr_membership(scheme: OrbitScheme, monomial) -> bool:
    """Is the monomial (exponent vector or MultiPoly) in gr I'?"""
    f = monomial if isinstance(monomial, MultiPoly) else _monomial(scheme, monomial)
    return scheme.quotient.contains(f)


def sp_witness(l: LeviSpec) -> tuple | None:
    """x_1 ... x_{c+1} with c the total GL size, for C-type Levis with a
    nontrivial sp tail and at least one GL block."""
    if l.ambient.family != "C" or l.tail == 0 or not l.gl_blocks:
        return None
    c = sum(l.gl_blocks)
    return tuple(1 if i <= c else 0 for i in range(l.n))


@dataclass
class FlatnessReport:
    levi: LeviSpec
    generic_dim: int
    special_dim: int | None
    witness_monomials: list
    verdict: str
    hilbert: list
    socle: int
    reason: str = ""

    def to_json(self) -> dict:
        return {"levi": str(self.levi), "generic_dim": self.generic_dim,
                "special_dim": self.special_dim, "verdict": self.verdict,
                "witnesses": self.witness_monomials, "hilbert": list(self.hilbert),
                "socle": self.socle}


def flatness_check(l: LeviSpec, special_dim: int | None = None,
                   scheme: OrbitScheme | None = None) -> FlatnessReport:
    scheme = scheme or build_orbit_scheme(l)
    generic = len(scheme.points)
    q = scheme.quotient
    witnesses = []
    w = sp_witness(l)
    if w is not None:
        witnesses.append({"monomial": monomial_str(scheme.names, w + (0,)),
                          "in_gr": gr_membership(scheme, w)})
    verdict, reason = "undetermined", "no external dimension and no structural case"
    if special_dim is not None:
        if special_dim == generic:
            verdict, reason = "flat", "special fiber dimension equals generic"
        elif special_dim > generic:
            verdict, reason = "not-flat", f"special fiber dimension {special_dim} > {generic}"
        else:
            reason = f"special fiber dimension {special_dim} < generic {generic} is impossible"
    elif l.ambient.family == "A":
        verdict, reason = "flat", "type A"
    elif l.ambient.family == "C" and l.tail == 0:
        verdict, reason = "flat", "type C Levi with GL factors only"
    elif witnesses and witnesses[0]["in_gr"]:
        verdict, reason = "not-flat", f"witness {witnesses[0]['monomial']} lies in gr I'"
    return FlatnessReport(l, generic, special_dim, witnesses, verdict, q.hilbert, q.socle_dim, reason)


@dataclass
class FailureCertificate:
    grade_mismatch: bool
    socle_mismatch: bool
    dims: tuple
    hilbert: list
    betti: list
    socle: int

    def to_json(self) -> dict:
        return {"grade_mismatch": self.grade_mismatch, "socle_mismatch": self.socle_mismatch,
                "dims": list(self.dims), "hilbert": self.hilbert, "betti": self.betti,
                "socle": self.socle}


def hikita_failure_certificate(l: LeviSpec, betti: Sequence[int],
                               scheme: OrbitScheme | None = None) -> FailureCertificate:
    """Compare C[h]/gr I' with the Betti numbers of the dual Springer fiber.

    A graded isomorphism needs equal Hilbert functions, and the socle of the
    cohomology ring contains the top degree, so it is at least betti[-1].
    """
    scheme = scheme or build_orbit_scheme(l)
    q = scheme.quotient
    betti = list(betti)
    while betti and betti[-1] == 0:
        betti.pop()
    grade = list(q.hilbert) != betti
    socle = bool(betti) and q.socle_dim < betti[-1]
    return FailureCertificate(grade, socle, (q.dim, sum(betti)), list(q.hilbert), betti, q.socle_dim)
