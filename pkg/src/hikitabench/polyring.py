"""Exact multivariate polynomials over Q, Weyl actions on them, Groebner
bases in graded reverse lexicographic order, leading-form ideals and the
analytics of Artinian graded quotients.

A ring is just a tuple of variable names.  The default ring for rank ``n`` is
``x1..xn, h`` with ``h`` standing for hbar; ``h`` is always the last and
smallest variable.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint
import sympy

from .rootdata import LeviSpec, WeylElement, act_on_weight, rho as rho_of

HBAR = "h"


def ring(n: int, hbar: bool = True) -> tuple:
    names = tuple(f"x{i}" for i in range(1, n + 1))
    return names + (HBAR,) if hbar else names


def grevlex_key(e: Sequence[int]) -> tuple:
    """Sort key: larger key means larger monomial."""
    return (sum(e), tuple(-x for x in reversed(e)))


def _q(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (flint.fmpq, flint.fmpz)):
        return Fraction(int(c.p), int(c.q)) if isinstance(c, flint.fmpq) else Fraction(int(c))
    if isinstance(c, sympy.Rational):
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


class MultiPoly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero
    Fractions."""

    __slots__ = ("names", "terms", "_hash")

    def __init__(self, names: Sequence[str], terms: Mapping | None = None):
        self.names = tuple(names)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.names):
                raise ValueError(f"exponent {e} does not fit ring {self.names}")
            c = _q(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- constructors
    @classmethod
    def const(cls, names, c) -> "MultiPoly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name_or_index) -> "MultiPoly":
        names = tuple(names)
        i = names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * len(names)
        e[i] = 1
        return cls(names, {tuple(e): 1})

    @classmethod
    def monomial(cls, names, exps, c=1) -> "MultiPoly":
        return cls(names, {tuple(exps): c})

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "MultiPoly":
        """Parse ``x1^2 - 1`` style text (``h`` is hbar)."""
        names = tuple(names)
        src = text.replace("^", "**")
        if re.search(r"[^\w\s\+\-\*/\(\)\.]", src):
            raise ValueError(f"malformed polynomial {text!r}")
        syms = {nm: sympy.Symbol(nm) for nm in names}
        try:
            expr = sympy.sympify(src, locals=syms)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ValueError(f"malformed polynomial {text!r}: {exc}") from None
        stray = {str(s) for s in expr.free_symbols} - set(names)
        if stray:
            raise ValueError(f"unknown variables {sorted(stray)} in {text!r}")
        poly = sympy.Poly(expr, *[syms[n] for n in names], domain="QQ")
        return cls.from_sympy(poly, names)

    @classmethod
    def from_sympy(cls, poly, names) -> "MultiPoly":
        return cls(names, {m: _q(c) for m, c in poly.terms()})

    def to_sympy(self):
        gens = sympy.symbols(self.names)
        return sympy.Poly.from_dict({e: sympy.Rational(c.numerator, c.denominator)
                                     for e, c in self.terms.items()} or {(0,) * len(self.names): 0},
                                    *gens, domain="QQ")

    # -- basic protocol
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.names != self.names:
                raise ValueError(f"ring mismatch: {self.names} vs {other.names}")
            return other
        return MultiPoly.const(self.names, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.names, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                return self == MultiPoly.const(self.names, other)
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.names.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.names, {e: c for e, c in self.terms.items() if sum(e) == d})

    def top_form(self) -> "MultiPoly":
        return self.homogeneous_part(self.degree())

    def leading_exp(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_exp()]

    def monic(self) -> "MultiPoly":
        lc = self.leading_coeff()
        return MultiPoly(self.names, {e: c / lc for e, c in self.terms.items()})

    def uses(self, name: str) -> bool:
        i = self.names.index(name)
        return any(e[i] for e in self.terms)

    # -- evaluation and substitution
    def subs(self, images: Sequence["MultiPoly | Fraction | int"], target: Sequence[str] | None = None) -> "MultiPoly":
        """Substitute variable i by ``images[i]`` (polynomials in ``target``)."""
        if len(images) != len(self.names):
            raise ValueError(f"need {len(self.names)} images, got {len(images)}")
        if target is None:
            target = next((im.names for im in images if isinstance(im, MultiPoly)), self.names)
        target = tuple(target)
        imgs = [im if isinstance(im, MultiPoly) else MultiPoly.const(target, im) for im in images]
        for im in imgs:
            if im.names != target:
                raise ValueError("images live in different rings")
        powers: list = [dict() for _ in imgs]

        def pw(i, k):
            if k not in powers[i]:
                powers[i][k] = imgs[i] ** k
            return powers[i][k]

        out = MultiPoly(target)
        for e, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def rename(self, names: Sequence[str]) -> "MultiPoly":
        return MultiPoly(names, self.terms)

    # -- display
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(self.names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"


def monomial_str(names: Sequence[str], e: Sequence[int]) -> str:
    s = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
    return s or "1"


# ---------------------------------------------------------------- Weyl actions


def _point_images(w: WeylElement, names: Sequence[str], n: int, shift=None) -> list:
    """Images of the variables under f -> f(w^-1 v + shift).

    Variables x1..xn are the coordinates of v; the hbar slot, if any, is
    left untouched.  ``shift`` is a vector of polynomials added after acting.
    """
    xs = [MultiPoly.var(names, i) for i in range(n)]
    pulled = act_on_weight(w.inverse(), xs)
    if shift is not None:
        pulled = [p + s for p, s in zip(pulled, shift)]
    return list(pulled) + [MultiPoly.var(names, i) for i in range(n, len(names))]


def weyl_act_poly(w: WeylElement, f: MultiPoly) -> MultiPoly:
    """(w . f)(v) = f(w^-1 v)."""
    n = w.rank
    if len(f.names) not in (n, n + 1):
        raise ValueError(f"rank mismatch: element of rank {w.rank}, ring {f.names}")
    return f.subs(_point_images(w, f.names, n), f.names)


def rho_shifted_act(w: WeylElement, f: MultiPoly, rho: Sequence | None = None,
                    family: str = "A") -> MultiPoly:
    """(w . f)(v, h) = f(w^-1 (v + h rho) - h rho, h).  Needs an hbar slot."""
    from .rootdata import LieType

    n = w.rank
    if f.names[-1] != HBAR or len(f.names) != n + 1:
        raise ValueError(f"rank mismatch: element of rank {n}, ring {f.names}")
    if rho is None:
        rho = rho_of(LieType(family, n))
    h = MultiPoly.var(f.names, HBAR)
    xs = [MultiPoly.var(f.names, i) + h * r for i, r in enumerate(rho)]
    moved = act_on_weight(w.inverse(), xs)
    images = [m - h * r for m, r in zip(moved, rho)] + [h]
    return f.subs(images, f.names)


def elementary_symmetric(k: int, polys: Sequence[MultiPoly]) -> MultiPoly:
    names = polys[0].names
    out = MultiPoly(names)
    for combo in itertools.combinations(polys, k):
        term = MultiPoly.const(names, 1)
        for p in combo:
            term = term * p
        out = out + term
    return out


def invariant_generators(l: LeviSpec, names: Sequence[str] | None = None) -> list:
    """Generators of C[h]^{W_L}: blockwise elementary symmetric functions and,
    on the tail, elementary symmetric functions of the squares (type D: the
    last one replaced by the product of the tail variables)."""
    names = tuple(names) if names is not None else ring(l.n)
    xs = [MultiPoly.var(names, i) for i in range(l.n)]
    out = []
    for block in l.blocks():
        bx = [xs[i] for i in block]
        out.extend(elementary_symmetric(k, bx) for k in range(1, len(bx) + 1))
    if l.tail:
        tx = [xs[i] for i in l.tail_coords()]
        sq = [x * x for x in tx]
        m = len(tx)
        if l.ambient.family == "D":
            out.extend(elementary_symmetric(k, sq) for k in range(1, m))
            out.append(elementary_symmetric(m, tx))
        else:
            out.extend(elementary_symmetric(k, sq) for k in range(1, m + 1))
    return out


# ---------------------------------------------------------------- Groebner


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    """Full reduction of ``f`` by ``basis`` (grevlex)."""
    lead = [(g.leading_exp(), g.leading_coeff(), g) for g in basis if g]
    rem: dict = {}
    p = dict(f.terms)
    while p:
        e = max(p, key=grevlex_key)
        c = p[e]
        for le, lc, g in lead:
            if _divides(le, e):
                q = tuple(x - y for x, y in zip(e, le))
                k = c / lc
                for ge, gc in g.terms.items():
                    t = tuple(x + y for x, y in zip(ge, q))
                    v = p.get(t, 0) - k * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[e] = c
            del p[e]
    return MultiPoly(f.names, rem)


@dataclass
class IdealBasis:
    generators: list
    names: tuple = ()
    groebner_cache: list | None = None
    order: str = "grevlex"

    def __post_init__(self):
        if not self.names:
            if not self.generators:
                raise ValueError("empty ideal needs explicit variable names")
            self.names = self.generators[0].names
        self.generators = [g for g in self.generators if g]

    @property
    def gb(self) -> list:
        if self.groebner_cache is None:
            self.groebner_cache = groebner_basis(self.generators, self.names)
        return self.groebner_cache

    def contains(self, f: MultiPoly) -> bool:
        return normal_form(f, self.gb).is_zero()

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        return normal_form(f, self.gb)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "IdealBasis":
        gens = [MultiPoly.parse(t, names) for t in text.split(";") if t.strip()]
        return cls(gens, tuple(names))


def _sort_basis(gb: Iterable[MultiPoly]) -> list:
    return sorted(gb, key=lambda g: grevlex_key(g.leading_exp()))


def groebner_basis(gens: Sequence[MultiPoly], names: Sequence[str]) -> list:
    """Reduced, monic grevlex Groebner basis (x1 > ... > xn > h) via sympy."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    syms = sympy.symbols(tuple(names))
    exprs = [g.to_sympy().as_expr() for g in gens]
    G = sympy.groebner(exprs, *syms, order="grevlex", domain="QQ")
    return _sort_basis(MultiPoly.from_sympy(sympy.Poly(p, *syms, domain="QQ"), names).monic()
                       for p in G.exprs)


def groebner(ideal: IdealBasis) -> IdealBasis:
    return IdealBasis(list(ideal.generators), ideal.names, groebner_basis(ideal.generators, ideal.names))


def leading_form_ideal(ideal: IdealBasis) -> IdealBasis:
    """gr I: generated by the top forms of a grevlex Groebner basis.

    Tails of a reduced basis are standard monomials, so the top forms are
    again a reduced basis of the homogeneous ideal."""
    tops = _sort_basis(g.top_form().monic() for g in ideal.gb)
    return IdealBasis(tops, ideal.names, tops)


def monomials_of_degree(k: int, d: int) -> list:
    """Exponent vectors of degree d in k variables, grevlex ascending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(k), d):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key)
    return out


# ---------------------------------------------------------------- vanishing ideals


def vanishing_ideal(points: Sequence[Sequence], names: Sequence[str]) -> tuple:
    """Reduced grevlex Groebner basis of the ideal of a finite point set.

    Degree-by-degree Buchberger-Moeller: in degree d the candidate monomials
    are those not divisible by a known leading monomial; an exact rref of the
    evaluation matrix (previous standard monomials, then candidates, both in
    ascending order) splits the candidates into new standard monomials
    (pivot columns) and new leading monomials, whose relations are read off
    the non-pivot columns.

    Returns ``(gb, standard_monomials)``.  Only the first ``len(point)``
    variables of ``names`` are used.
    """
    names = tuple(names)
    pts = [tuple(Fraction(c) for c in p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    npts = len(pts)
    k = len(pts[0]) if pts else 0
    if len(names) < k:
        raise ValueError("not enough variables for the point coordinates")
    pad = (0,) * (len(names) - k)
    std: list = []
    leads: list = []
    gb: list = []
    # power tables as flint rationals
    ptab = [[[flint.fmpq(1)] for _ in range(k)] for _ in pts]
    for r, p in enumerate(pts):
        for i in range(k):
            ptab[r][i][0] = flint.fmpq(1)
    cols_cache: dict = {}

    def column(e):
        if e in cols_cache:
            return cols_cache[e]
        col = []
        for r, p in enumerate(pts):
            v = flint.fmpq(1)
            for i, a in enumerate(e):
                if a:
                    tab = ptab[r][i]
                    while len(tab) <= a:
                        tab.append(tab[-1] * flint.fmpq(p[i].numerator, p[i].denominator))
                    v *= tab[a]
            col.append(v)
        cols_cache[e] = col
        return col

    d = 0
    while True:
        cands = [e for e in monomials_of_degree(k, d) if not any(_divides(le, e) for le in leads)]
        if not cands:
            break
        cols = std + cands
        M = flint.fmpq_mat(npts, len(cols))
        for j, e in enumerate(cols):
            for r, v in enumerate(column(e)):
                if v != 0:
                    M[r, j] = v
        R, rank = M.rref()
        pivots = []
        for r in range(rank):
            for j in range(len(cols)):
                if R[r, j] != 0:
                    pivots.append(j)
                    break
        pivot_row = {j: r for r, j in enumerate(pivots)}
        new_std = []
        for j in range(len(std), len(cols)):
            e = cols[j]
            if j in pivot_row:
                new_std.append(e)
                continue
            terms = {e + pad: Fraction(1)}
            for pj, r in pivot_row.items():
                if pj < j:
                    c = R[r, j]
                    if c != 0:
                        terms[cols[pj] + pad] = -_q(c)
            gb.append(MultiPoly(names, terms))
            leads.append(e)
        std = std + new_std
        for e in list(cols_cache):
            if sum(e) < d and e not in std:
                del cols_cache[e]
        d += 1
        if npts == 0:
            break
    if npts == 0:
        gb = [MultiPoly.const(names, 1)]
        std = []
    if len(std) != npts:
        raise RuntimeError(f"interpolation produced {len(std)} standard monomials for {npts} points")
    return _sort_basis(gb), [e + pad for e in std]


# ---------------------------------------------------------------- graded quotients


@dataclass
class GradedQuotient:
    """Artinian quotient of k[x_1..x_k] (k = number of non-hbar variables) by a
    homogeneous ideal, with normal-form tables per degree."""

    names: tuple
    ideal: IdealBasis
    monomial_basis: list
    hilbert: list
    socle_dim: int
    socle_by_degree: list = field(default_factory=list)
    _nf: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.monomial_basis)

    @property
    def top_degree(self) -> int:
        return len(self.hilbert) - 1

    def normal_form_monomial(self, e: tuple) -> dict:
        if sum(e) > self.top_degree:
            return {}
        return self._nf[e]

    def contains(self, f: MultiPoly) -> bool:
        """Membership of ``f`` in the ideal."""
        return self.normal_form(f).is_zero()

    def normal_form(self, f: MultiPoly) -> MultiPoly:
        out: dict = {}
        k = len(self.monomial_basis[0]) if self.monomial_basis else len(self.names)
        for e, c in f.terms.items():
            for b, v in self.normal_form_monomial(tuple(e[:k])).items():
                out[b] = out.get(b, 0) + c * v
        pad = (0,) * (len(self.names) - k)
        return MultiPoly(self.names, {b + pad: c for b, c in out.items()})

    def basis_strings(self) -> list:
        k = len(self.monomial_basis[0]) if self.monomial_basis else 0
        return [monomial_str(self.names[:k], e) for e in self.monomial_basis]

    def to_json(self) -> dict:
        return {"dim": self.dim, "hilbert": list(self.hilbert),
                "basis": self.basis_strings(), "socle_dim": self.socle_dim}


def quotient_analytics(ideal: IdealBasis) -> GradedQuotient:
    """Standard monomials, Hilbert function, normal forms and socle of the
    quotient by a homogeneous ideal in the non-hbar variables."""
    names = ideal.names
    k = len(names) - (1 if names and names[-1] == HBAR else 0)
    if not ideal.is_homogeneous():
        raise ValueError("quotient analytics needs a homogeneous ideal")
    if any(g.uses(HBAR) for g in ideal.generators if HBAR in names):
        raise ValueError("ideal involves hbar; the quotient is not Artinian")
    gb = ideal.gb
    leads = [g.leading_exp()[:k] for g in gb]
    tails = [(g.leading_exp()[:k], g.leading_coeff(),
              [(e[:k], c) for e, c in g.terms.items() if e[:k] != g.leading_exp()[:k]]) for g in gb]
    for i in range(k):
        if not any(le[i] > 0 and sum(le) == le[i] for le in leads):
            raise ValueError("quotient is infinite-dimensional")
    nf: dict = {}
    basis: list = []
    hilbert: list = []
    d = 0
    while True:
        mons = monomials_of_degree(k, d)
        std_d = []
        for e in mons:
            reducer = next((t for t in tails if _divides(t[0], e)), None)
            if reducer is None:
                nf[e] = {e: Fraction(1)}
                std_d.append(e)
                continue
            le, lc, tail = reducer
            q = tuple(a - b for a, b in zip(e, le))
            acc: dict = {}
            for te, tc in tail:
                prod = tuple(a + b for a, b in zip(te, q))
                for b, v in nf[prod].items():
                    acc[b] = acc.get(b, 0) - tc / lc * v
            nf[e] = {b: v for b, v in acc.items() if v}
        if not std_d:
            break
        basis.extend(std_d)
        hilbert.append(len(std_d))
        d += 1
    # nf tables for degree top+1 are present (all zero) from the last pass
    socle = []
    for deg in range(len(hilbert)):
        src = [b for b in basis if sum(b) == deg]
        tgt = [b for b in basis if sum(b) == deg + 1]
        if not tgt:
            socle.append(len(src))
            continue
        idx = {b: i for i, b in enumerate(tgt)}
        M = flint.fmpq_mat(len(src), len(tgt) * k)
        for r, b in enumerate(src):
            for i in range(k):
                e = list(b)
                e[i] += 1
                for t, v in nf[tuple(e)].items():
                    M[r, i * len(tgt) + idx[t]] = flint.fmpq(v.numerator, v.denominator)
        socle.append(len(src) - M.rank())
    return GradedQuotient(names, ideal, basis, hilbert, sum(socle), socle, nf)
