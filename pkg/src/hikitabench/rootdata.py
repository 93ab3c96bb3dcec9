"""Classical root data, Weyl groups as signed permutations, Levi subgroups
and the coset / double-coset combinatorics built on top of them.

Conventions
-----------
Type A of rank ``n`` means ``n`` epsilon-coordinates, so ``W = S_n``.

A Weyl element is stored as ``perm`` (1-based, ``perm[i-1]`` is the image of
``i``) and ``signs`` indexed by *target* coordinate, so that

    (w . v)[j] = signs[j] * v[perm^-1(j)].

Equivalently ``w(e_i) = signs[perm(i)] * e_perm(i)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

FAMILIES = ("A", "B", "C", "D")
DUAL_FAMILY = {"A": "A", "B": "C", "C": "B", "D": "D"}

Weight = tuple  # tuple of Fractions


def weight(coords: Iterable) -> tuple:
    return tuple(Fraction(c) for c in coords)


def parse_weight(text: str) -> tuple:
    """Parse ``3/2,1/2,-1/2`` into a weight."""
    try:
        return tuple(Fraction(tok.strip()) for tok in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed weight {text!r}: {exc}") from None


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if self.family == "D" and self.rank < 2:
            raise ValueError("type D needs rank >= 2")

    def __str__(self):
        return f"{self.family}{self.rank}"

    def dual(self) -> "LieType":
        return LieType(DUAL_FAMILY[self.family], self.rank)

    @classmethod
    def parse(cls, text: str) -> "LieType":
        m = re.fullmatch(r"\s*([ABCDabcd])\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"malformed type {text!r} (expected e.g. C3)")
        return cls(m.group(1).upper(), int(m.group(2)))


# ---------------------------------------------------------------- Weyl group


@dataclass(frozen=True, order=True)
class WeylElement:
    perm: tuple
    signs: tuple

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{n}")
        if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a vector of +-1 of matching length")

    @property
    def rank(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(1, n + 1)), (1,) * n)

    @classmethod
    def from_oneline(cls, images: Sequence[int]) -> "WeylElement":
        """Build from signed one-line notation: ``images[i-1] = +-j`` means
        ``w(e_i) = +-e_j``."""
        n = len(images)
        perm = tuple(abs(x) for x in images)
        signs = [1] * n
        for x in images:
            signs[abs(x) - 1] = 1 if x > 0 else -1
        return cls(perm, tuple(signs))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "WeylElement":
        """Plain permutation from cycles, ``(1, 2, 3)`` sends 1 to 2."""
        perm = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                perm[a - 1] = b
        return cls(tuple(perm), (1,) * n)

    def oneline(self) -> tuple:
        return tuple(self.signs[p - 1] * p for p in self.perm)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        # (self * other) . v == self . (other . v)
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        perm = tuple(self.perm[p - 1] for p in other.perm)
        inv_self = self._inverse_perm()
        signs = tuple(self.signs[k] * other.signs[inv_self[k] - 1]
                      for k in range(self.rank))
        return WeylElement(perm, signs)

    def _inverse_perm(self) -> tuple:
        cached = self.__dict__.get("_inv")
        if cached is not None:
            return cached
        inv = [0] * self.rank
        for i, p in enumerate(self.perm, start=1):
            inv[p - 1] = i
        inv = tuple(inv)
        object.__setattr__(self, "_inv", inv)
        return inv

    def inverse(self) -> "WeylElement":
        inv = self._inverse_perm()
        # w^-1(e_j) = signs[j] e_{perm^-1(j)}; sign lands on target perm^-1(j)
        signs = [1] * self.rank
        for j in range(1, self.rank + 1):
            signs[inv[j - 1] - 1] = self.signs[j - 1]
        return WeylElement(inv, tuple(signs))

    def act(self, v: Sequence) -> tuple:
        return act_on_weight(self, v)

    def is_identity(self) -> bool:
        return self == WeylElement.identity(self.rank)

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.oneline()) + "]"


def act_on_weight(w: WeylElement, v: Sequence) -> tuple:
    if w.rank != len(v):
        raise ValueError(f"rank mismatch: element of rank {w.rank}, weight of length {len(v)}")
    inv = w._inverse_perm()
    return tuple(w.signs[j] * v[inv[j] - 1] for j in range(w.rank))


def weyl_order(t: LieType) -> int:
    n = t.rank
    if t.family == "A":
        return factorial(n)
    if t.family in ("B", "C"):
        return 2 ** n * factorial(n)
    return 2 ** (n - 1) * factorial(n)


@lru_cache(maxsize=None)
def weyl_elements(t: LieType) -> tuple:
    """All elements of W(t), sorted lexicographically by signed one-line notation."""
    n = t.rank
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        if t.family == "A":
            out.append(WeylElement(perm, (1,) * n))
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if t.family == "D" and signs.count(-1) % 2:
                continue
            out.append(WeylElement(perm, signs))
    out.sort(key=lambda w: w.oneline())
    return tuple(out)


# ---------------------------------------------------------------- roots


def _unit(n: int, i: int, c: int = 1) -> list:
    v = [0] * n
    v[i] = c
    return v


@lru_cache(maxsize=None)
def positive_roots(t: LieType) -> tuple:
    """Standard positive roots as integer tuples."""
    n, fam = t.rank, t.family
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            v = [0] * n
            v[i], v[j] = 1, -1
            out.append(v)
            if fam != "A":
                v = [0] * n
                v[i], v[j] = 1, 1
                out.append(v)
        if fam == "B":
            out.append(_unit(n, i))
        elif fam == "C":
            out.append(_unit(n, i, 2))
    return tuple(tuple(v) for v in out)


@lru_cache(maxsize=None)
def roots(t: LieType) -> tuple:
    pos = positive_roots(t)
    return pos + tuple(tuple(-c for c in r) for r in pos)


def coroot(alpha: Sequence) -> tuple:
    norm = sum(c * c for c in alpha)
    return tuple(Fraction(2) * c / norm for c in alpha)


def coroots(t: LieType) -> tuple:
    return tuple(coroot(r) for r in roots(t))


def pairing(v: Sequence, cv: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(v, cv)), Fraction(0))


def is_positive(v: Sequence) -> bool:
    """Sign of the first nonzero coordinate; matches the standard positive
    systems of all four classical families."""
    for c in v:
        if c:
            return c > 0
    raise ValueError("zero vector is not a root")


@lru_cache(maxsize=None)
def simple_roots(t: LieType) -> tuple:
    n = t.rank
    out = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        out.append(v)
    if t.family == "B":
        out.append(_unit(n, n - 1))
    elif t.family == "C":
        out.append(_unit(n, n - 1, 2))
    elif t.family == "D":
        v = [0] * n
        v[n - 2], v[n - 1] = 1, 1
        out.append(v)
    return tuple(tuple(v) for v in out)


def length(w: WeylElement, t: LieType | None = None) -> int:
    """Number of positive roots sent to negative roots."""
    if t is None:
        fam = "A" if all(s == 1 for s in w.signs) else "B"
        t = LieType(fam, w.rank)
    return sum(1 for r in positive_roots(t) if not is_positive(w.act(r)))


def rho(t: LieType) -> tuple:
    n = t.rank
    if t.family == "A":
        return tuple(Fraction(n - 1, 2) - i for i in range(n))
    if t.family == "B":
        return tuple(Fraction(2 * (n - i) - 1, 2) for i in range(n))
    if t.family == "C":
        return tuple(Fraction(n - i) for i in range(n))
    return tuple(Fraction(n - 1 - i) for i in range(n))


# ---------------------------------------------------------------- Levi specs


_TAIL_TAG = {"B": "so", "C": "sp", "D": "so"}


@dataclass(frozen=True)
class LeviSpec:
    """GL blocks on the leading coordinates, classical tail on the last ``tail``."""

    ambient: LieType
    gl_blocks: tuple = ()
    tail: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gl_blocks", tuple(int(a) for a in self.gl_blocks))
        if any(a < 1 for a in self.gl_blocks):
            raise ValueError("GL block sizes must be positive")
        if self.tail < 0:
            raise ValueError("tail rank must be nonnegative")
        if sum(self.gl_blocks) + self.tail != self.ambient.rank:
            raise ValueError(
                f"blocks {self.gl_blocks} and tail {self.tail} do not sum to rank {self.ambient.rank}")
        if self.ambient.family == "A" and self.tail:
            raise ValueError("type A Levis carry no classical tail")

    @property
    def n(self) -> int:
        return self.ambient.rank

    def blocks(self) -> list:
        """Coordinate index lists (0-based) of the GL blocks."""
        out, start = [], 0
        for a in self.gl_blocks:
            out.append(list(range(start, start + a)))
            start += a
        return out

    def tail_coords(self) -> list:
        return list(range(self.n - self.tail, self.n))

    def dual(self) -> "LeviSpec":
        return LeviSpec(self.ambient.dual(), self.gl_blocks, self.tail)

    def char_dim(self) -> int:
        """Dimension of the character space X(l)."""
        k = len(self.gl_blocks)
        return k - 1 if self.ambient.family == "A" else k

    def is_torus(self) -> bool:
        return self.tail == 0 and all(a == 1 for a in self.gl_blocks)

    def __str__(self):
        return f"{self.ambient}:{self.body()}"

    def body(self) -> str:
        parts = ",".join(f"gl{a}" for a in self.gl_blocks)
        if self.tail:
            parts += f"|{_TAIL_TAG[self.ambient.family]}{self.tail}"
        return parts or "|"

    @classmethod
    def torus(cls, t: LieType) -> "LeviSpec":
        return cls(t, (1,) * t.rank, 0)

    @classmethod
    def parse(cls, text: str, ambient: LieType | None = None) -> "LeviSpec":
        """Parse ``C3:gl2|sp1``; with ``ambient`` given, the prefix is optional
        and the words ``torus`` and ``full`` are accepted."""
        text = text.strip()
        if ":" in text:
            head, body = text.split(":", 1)
            amb = LieType.parse(head)
            if ambient is not None and amb != ambient:
                raise ValueError(f"Levi {text!r} does not live in {ambient}")
        elif ambient is not None:
            amb, body = ambient, text
        else:
            raise ValueError(f"malformed Levi {text!r}: missing ambient prefix like 'C3:'")
        body = body.strip()
        if body == "torus":
            return cls.torus(amb)
        if body == "full":
            return cls(amb, (amb.rank,), 0) if amb.family == "A" else cls(amb, (), amb.rank)
        if "|" in body:
            gl_part, tail_part = body.split("|", 1)
        else:
            gl_part, tail_part = body, ""
        blocks = []
        for pos, tok in enumerate(t for t in gl_part.split(",") if t.strip()):
            m = re.fullmatch(r"\s*gl(\d+)\s*", tok)
            if not m:
                raise ValueError(f"malformed GL block {tok!r} at position {pos + 1} in {text!r}")
            blocks.append(int(m.group(1)))
        tail = 0
        if tail_part.strip():
            m = re.fullmatch(r"\s*(sp|so)(\d+)\s*", tail_part)
            if not m:
                raise ValueError(f"malformed tail {tail_part!r} in {text!r}")
            if amb.family == "A" or m.group(1) != _TAIL_TAG[amb.family]:
                raise ValueError(f"tail {tail_part!r} does not match ambient {amb}")
            tail = int(m.group(2))
        return cls(amb, tuple(blocks), tail)


def enumerate_levis(t: LieType) -> list:
    """All standard Levi specs of ``t`` (type D skips the redundant tail 1)."""
    out = []
    tails = [0] if t.family == "A" else range(t.rank + 1)
    for m in tails:
        if t.family == "D" and m == 1:
            continue
        for comp in _compositions(t.rank - m):
            out.append(LeviSpec(t, comp, m))
    return out


def _compositions(n: int) -> list:
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        out.extend((first,) + rest for rest in _compositions(n - first))
    return out


@lru_cache(maxsize=None)
def levi_positive_roots(l: LeviSpec) -> tuple:
    n = l.n
    out = []
    for block in l.blocks():
        for i, j in itertools.combinations(block, 2):
            v = [0] * n
            v[i], v[j] = 1, -1
            out.append(tuple(v))
    if l.tail:
        sub = LieType(l.ambient.family, l.tail) if not (l.ambient.family == "D" and l.tail < 2) else None
        if sub is not None:
            off = n - l.tail
            for r in positive_roots(sub):
                out.append((0,) * off + r)
    return tuple(out)


@lru_cache(maxsize=None)
def levi_roots(l: LeviSpec) -> tuple:
    pos = levi_positive_roots(l)
    return pos + tuple(tuple(-c for c in r) for r in pos)


@lru_cache(maxsize=None)
def levi_simple_roots(l: LeviSpec) -> tuple:
    """Simple roots of the standard Levi; a subset of the ambient simple roots."""
    pos = set(levi_positive_roots(l))
    return tuple(r for r in simple_roots(l.ambient) if r in pos)


def rho_levi(l: LeviSpec) -> tuple:
    out = [Fraction(0)] * l.n
    for r in levi_positive_roots(l):
        for i, c in enumerate(r):
            out[i] += c / 2
    return tuple(out)


@dataclass(frozen=True)
class LeviWeylGroup:
    levi: LeviSpec
    generators: tuple

    def contains(self, w: WeylElement) -> bool:
        return in_levi_weyl_group(self.levi, w)

    def elements(self) -> tuple:
        return levi_weyl_elements(self.levi)

    def order(self) -> int:
        return levi_weyl_order(self.levi)


def in_levi_weyl_group(l: LeviSpec, w: WeylElement) -> bool:
    for block in l.blocks():
        for i in block:
            if w.perm[i] - 1 not in block or w.signs[w.perm[i] - 1] != 1:
                return False
    return True  # the tail is then preserved automatically


def reflection(alpha: Sequence) -> WeylElement:
    """The reflection s_alpha as a signed permutation."""
    n = len(alpha)
    cv = coroot(alpha)
    images = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        p = pairing(e, cv)
        img = [e[k] - p * alpha[k] for k in range(n)]
        (j,) = [k for k in range(n) if img[k]]
        images.append(int(img[j]) * (j + 1))
    return WeylElement.from_oneline(images)


def levi_weyl_group(l: LeviSpec) -> LeviWeylGroup:
    return LeviWeylGroup(l, tuple(reflection(a) for a in levi_simple_roots(l)))


@lru_cache(maxsize=None)
def levi_weyl_elements(l: LeviSpec) -> tuple:
    return tuple(w for w in weyl_elements(l.ambient) if in_levi_weyl_group(l, w))


def levi_weyl_order(l: LeviSpec) -> int:
    out = 1
    for a in l.gl_blocks:
        out *= factorial(a)
    if l.tail:
        if l.ambient.family == "D":
            out *= 2 ** (l.tail - 1) * factorial(l.tail)
        else:
            out *= 2 ** l.tail * factorial(l.tail)
    return out


# ---------------------------------------------------------------- cosets


def is_shortest_right(w: WeylElement, m: LeviSpec) -> bool:
    """w is the shortest element of W_M w."""
    winv = w.inverse()
    return all(is_positive(winv.act(a)) for a in levi_simple_roots(m))


def is_longest_left(w: WeylElement, l: LeviSpec) -> bool:
    """w is the longest element of w W_L."""
    return all(not is_positive(w.act(a)) for a in levi_simple_roots(l))


def is_shortest_left(w: WeylElement, l: LeviSpec) -> bool:
    """w is the shortest element of w W_L."""
    return all(is_positive(w.act(a)) for a in levi_simple_roots(l))


def longest_levi_element(l: LeviSpec) -> WeylElement:
    els = levi_weyl_elements(l)
    return max(els, key=lambda w: length(w, l.ambient))


def coset_reps(l: LeviSpec, side: str = "right") -> list:
    """Coset representatives.

    ``right``: shortest reps of W_M \\ W.  ``left-longest``: longest reps of
    W / W_L.  ``left``: shortest reps of W / W_L.
    """
    els = weyl_elements(l.ambient)
    if side == "right":
        return [w for w in els if is_shortest_right(w, l)]
    if side == "left-longest":
        return [w for w in els if is_longest_left(w, l)]
    if side == "left":
        return [w for w in els if is_shortest_left(w, l)]
    raise ValueError(f"unknown side {side!r}")


@dataclass(frozen=True)
class CosetLabel:
    rep: WeylElement
    kind: str  # "left", "right" or "double"

    def __str__(self):
        return str(self.rep)


def _check_same_ambient(a: LeviSpec, b: LeviSpec):
    if a.ambient != b.ambient:
        raise ValueError(f"ambient mismatch: {a.ambient} vs {b.ambient}")


def is_free_element(w: WeylElement, m: LeviSpec, l: LeviSpec) -> bool:
    """w^-1(Delta_M) meets Delta_L trivially."""
    winv = w.inverse()
    lroots = set(levi_roots(l))
    return not any(winv.act(a) in lroots for a in levi_positive_roots(m))


def free_double_cosets(m: LeviSpec, l: LeviSpec) -> list:
    """Canonical labels of the free W_M x W_L orbits on W.

    Each label's rep is the unique element that is shortest in ``W_M w`` and
    longest in ``w W_L``; labels are sorted by signed one-line notation.
    """
    _check_same_ambient(m, l)
    reps = [w for w in weyl_elements(m.ambient)
            if is_shortest_right(w, m) and is_longest_left(w, l) and is_free_element(w, m, l)]
    return [CosetLabel(w, "double") for w in reps]


def double_coset_of(w: WeylElement, m: LeviSpec, l: LeviSpec) -> frozenset:
    return frozenset(a * w * b for a in levi_weyl_elements(m) for b in levi_weyl_elements(l))


def all_double_cosets(m: LeviSpec, l: LeviSpec) -> list:
    """Brute-force orbit decomposition of W under W_M x W_L."""
    _check_same_ambient(m, l)
    seen, out = set(), []
    for w in weyl_elements(m.ambient):
        if w in seen:
            continue
        orb = double_coset_of(w, m, l)
        seen |= orb
        out.append(orb)
    return out


def label_of(w: WeylElement, labels: Sequence[CosetLabel], m: LeviSpec, l: LeviSpec) -> CosetLabel:
    """The label whose double coset W_M rep W_L contains ``w``."""
    orb = double_coset_of(w, m, l)
    for lab in labels:
        if lab.rep in orb:
            return lab
    raise KeyError(f"{w} lies in no listed double coset")


def borel_condition_cosets(m: LeviSpec, l: LeviSpec) -> list:
    """Left cosets w W_L with w^-1(Delta_M^+) inside Delta^+ minus Delta_L.

    This is the set of cosets for which the conjugated parabolic meets M in
    its standard Borel; one shortest rep per coset is returned.
    """
    _check_same_ambient(m, l)
    lroots = set(levi_roots(l))
    out = []
    for w in coset_reps(l, "left"):
        winv = w.inverse()
        imgs = [winv.act(a) for a in levi_positive_roots(m)]
        if all(is_positive(r) and r not in lroots for r in imgs):
            out.append(w)
    return out


# ---------------------------------------------------------------- predicates


def _parabolic_coroots(p: LeviSpec) -> list:
    pos = positive_roots(p.ambient)
    return [coroot(a) for a in pos] + [coroot(tuple(-c for c in a)) for a in levi_positive_roots(p)]


def is_p_antidominant(v: Sequence, p: LeviSpec) -> bool:
    """No coroot of the parabolic pairs with v in Z_{>0}."""
    for cv in _parabolic_coroots(p):
        x = pairing(v, cv)
        if x.denominator == 1 and x > 0:
            return False
    return True


def is_l_regular(v: Sequence, p: LeviSpec) -> bool:
    """v pairs nontrivially with every coroot outside the Levi."""
    lroots = set(levi_roots(p))
    return all(pairing(v, coroot(a)) != 0 for a in roots(p.ambient) if a not in lroots)


def is_integral(v: Sequence, t: LieType) -> bool:
    return all(pairing(v, cv).denominator == 1 for cv in coroots(t))
