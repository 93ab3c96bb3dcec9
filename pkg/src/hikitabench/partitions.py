"""Partitions attached to nilpotent orbits of classical Lie algebras.

Type membership, transpose, B/C/D collapse, BVLS duality, saturation of the
regular orbit of a Levi, Richardson (induced from zero) orbits, the shape
predicates for component groups, normality and cohomological surjectivity,
and Kim's Betti numbers for the family (2k+1, 2k+1, 1).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .rootdata import LeviSpec, LieType


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __init__(self, parts: Iterable[int]):
        ps = tuple(sorted((int(p) for p in parts if int(p) != 0), reverse=True))
        if any(p < 0 for p in ps):
            raise ValueError(f"negative part in {ps}")
        object.__setattr__(self, "parts", ps)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        toks = [t.strip() for t in text.split(",")]
        for pos, tok in enumerate(toks, start=1):
            if not re.fullmatch(r"\d+", tok) or int(tok) == 0:
                raise ValueError(f"malformed partition {text!r}: bad part {tok!r} at position {pos}")
        return cls(int(t) for t in toks)


def standard_dim(t: LieType) -> int:
    """Dimension of the standard representation."""
    return {"A": t.rank, "B": 2 * t.rank + 1, "C": 2 * t.rank, "D": 2 * t.rank}[t.family]


def type_for_size(family: str, size: int) -> LieType:
    if family == "A":
        return LieType("A", size)
    if family == "B":
        if size % 2 == 0:
            raise ValueError("type B partitions have odd size")
        return LieType("B", (size - 1) // 2)
    if size % 2:
        raise ValueError(f"type {family} partitions have even size")
    return LieType(family, size // 2)


def _bad_parity(family: str) -> int | None:
    """Parity of the parts that must come with even multiplicity."""
    return {"A": None, "B": 0, "C": 1, "D": 0}[family]


def has_type(p: Partition, family: str) -> bool:
    par = _bad_parity(family)
    if par is None:
        return True
    return all(m % 2 == 0 for v, m in p.multiplicities().items() if v % 2 == par)


def is_orbit_partition(p: Partition, t: LieType) -> bool:
    return p.size == standard_dim(t) and has_type(p, t.family)


@dataclass(frozen=True)
class OrbitLabel:
    partition: Partition
    ambient: LieType
    very_even_flag: str | None = None

    def __post_init__(self):
        if not is_orbit_partition(self.partition, self.ambient):
            raise ValueError(f"{self.partition} is not a type {self.ambient} orbit partition")
        very_even = self.ambient.family == "D" and all(v % 2 == 0 for v in self.partition)
        if self.very_even_flag is not None and not very_even:
            raise ValueError("only very even type D partitions carry a I/II flag")
        if self.very_even_flag not in (None, "I", "II"):
            raise ValueError("flag must be I or II")

    def is_very_even(self) -> bool:
        return self.ambient.family == "D" and all(v % 2 == 0 for v in self.partition)


def transpose(p: Partition) -> Partition:
    if not p.parts:
        return p
    return Partition(sum(1 for v in p.parts if v > i) for i in range(p.parts[0]))


def dominates(p: Partition, q: Partition) -> bool:
    """p >= q in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(p), len(q))):
        a += p.parts[i] if i < len(p) else 0
        b += q.parts[i] if i < len(q) else 0
        if a < b:
            return False
    return True


def collapse(p: Partition, t: LieType | str) -> Partition:
    """Largest partition of the given type dominated by ``p``."""
    family = t.family if isinstance(t, LieType) else t
    par = _bad_parity(family)
    if par is None:
        return p
    if family == "B" and p.size % 2 == 0 or family in "CD" and p.size % 2:
        raise ValueError(f"cannot {family}-collapse a partition of size {p.size}")
    parts = list(p.parts)
    while True:
        counts = Counter(parts)
        bad = [v for v, m in counts.items() if v % 2 == par and m % 2 and v > 0]
        if not bad:
            return Partition(parts)
        q = max(bad)
        last = max(i for i, v in enumerate(parts) if v == q)
        parts[last] -= 1
        j = last + 1
        while j < len(parts) and parts[j] >= q - 1:
            j += 1
        if j == len(parts):
            parts.append(0)
        parts[j] += 1
        parts.sort(reverse=True)


def bvls_dual(o: OrbitLabel) -> OrbitLabel:
    """Partition-level BVLS duality into the Langlands dual type."""
    p, t = o.partition, o.ambient
    fam = t.family
    if fam == "A":
        q = transpose(p)
    elif fam == "C":
        q = collapse(transpose(Partition(p.parts + (1,))), "B")
    elif fam == "B":
        tp = list(transpose(p).parts)
        tp[-1] -= 1
        q = collapse(Partition(tp), "C")
    else:
        q = collapse(transpose(p), "D")
    return OrbitLabel(q, t.dual())


def sat_regular_levi(l: LeviSpec) -> OrbitLabel:
    """Orbit of a regular nilpotent of the Levi, saturated to the ambient."""
    t = l.ambient
    fam = t.family
    parts = []
    if fam == "A":
        parts = list(l.gl_blocks)
    else:
        for a in l.gl_blocks:
            parts += [a, a]
        m = l.tail
        if m:
            parts += {"B": [2 * m + 1], "C": [2 * m], "D": [2 * m - 1, 1]}[fam]
        parts += [1] * (standard_dim(t) - sum(parts))
    return OrbitLabel(collapse(Partition(parts), fam), t)


def induced_from_zero(l: LeviSpec) -> OrbitLabel:
    """Richardson orbit of a parabolic with Levi ``l``."""
    return bvls_dual(sat_regular_levi(l.dual()))


def orbit_dimension(o: OrbitLabel) -> int:
    """dim of the orbit from the standard centralizer formulas."""
    p, t = o.partition, o.ambient
    tp = transpose(p).parts
    sq = sum(c * c for c in tp)
    odd = sum(1 for v in p.parts if v % 2)
    n = t.rank
    if t.family == "A":
        return n * n - sq
    if t.family == "C":
        return (2 * n * n + n) - (sq + odd) // 2
    dimg = (2 * n + 1) * n if t.family == "B" else (2 * n - 1) * n
    return dimg - (sq - odd) // 2


# ---------------------------------------------------------------- shape predicates


def a_group_trivial(p: Partition, t: LieType | str) -> bool:
    """Shape list for the component group to act trivially on the Springer
    fiber cohomology."""
    family = t.family if isinstance(t, LieType) else t
    counts = p.multiplicities()
    if family == "A":
        return True
    if family == "C":
        evens = [v for v in counts if v % 2 == 0]
        return not evens or (len(evens) == 1 and counts[evens[0]] % 2 == 1)
    odds = [v for v in counts if v % 2 == 1]
    if family == "B":
        return len(odds) == 1
    if len(odds) <= 1:
        return True
    return len(odds) == 2 and all(counts[v] % 2 == 1 for v in odds)


class NotApplicable:
    """Verdict for a predicate whose precondition fails."""

    def __init__(self, reason: str):
        self.reason = reason

    def __bool__(self):
        raise TypeError("a not-applicable verdict has no truth value")

    def __eq__(self, other):
        return isinstance(other, NotApplicable)

    def __hash__(self):
        return hash("NotApplicable")

    def __repr__(self):
        return f"NotApplicable({self.reason!r})"

    def __str__(self):
        return "not-applicable"


def _fits(counts: Counter, slots: Sequence[tuple]) -> bool:
    """Do the multiplicities match a template of (value, parity) slots?

    Slots with value <= 0 are void; slots sharing a value merge, so their
    multiplicities add.
    """
    need: dict = {}
    for v, parity in slots:
        if v <= 0:
            continue
        odd, _ = need.get(v, (0, 0))
        need[v] = (odd + (parity == "odd"), 0)
    for v, m in counts.items():
        if v not in need:
            return False
    for v, (odd, _) in need.items():
        m = counts.get(v, 0)
        if m % 2 != odd % 2 or m < odd:
            return False
    return True


def normal_orbit_image(p: Partition, t: LieType | str):
    """Shape families whose dual is an orbit with normal closure.

    Returns True/False, or a ``NotApplicable`` verdict when ``p`` fails the
    component-group shape precondition.
    """
    family = t.family if isinstance(t, LieType) else t
    if not a_group_trivial(p, family):
        return NotApplicable("component group shape condition fails")
    counts = p.multiplicities()
    if family == "A":
        return NotApplicable("no shape list for type A")
    if family == "C":
        evens = [v for v in counts if v % 2 == 0]
        odds = [v for v in counts if v % 2 == 1]
        a = evens[0] // 2 if evens else 0
        if evens and counts[evens[0]] % 2 == 0:
            return False
        b1 = (max(odds) - 1) // 2 if odds else 0
        return a >= b1
    if family == "B":
        (odd,) = [v for v in counts if v % 2 == 1]
        a = (odd - 1) // 2
        evens = [v for v in counts if v % 2 == 0]
        return counts[odd] % 2 == 1 and (not evens or a <= min(evens) // 2)
    # type D
    odds = [v for v in counts if v % 2 == 1]
    evens = [v for v in counts if v % 2 == 0]
    if not odds:
        return len(evens) <= 2
    for v in odds:
        a = (v - 1) // 2
        slots = [(v, "odd"), (1, "odd")] + [(e, "even") for e in evens]
        if _fits(counts, slots) and all(e // 2 <= a + 1 for e in evens):
            return True
    return False


def surjectivity_necessary(p: Partition, t: LieType | str) -> bool:
    """Necessary shape for the pullback H*(flag) -> H*(Springer fiber) to be
    surjective."""
    family = t.family if isinstance(t, LieType) else t
    counts = p.multiplicities()
    if family == "A":
        return True
    top = max(p.parts) if p.parts else 0
    rng = range(0, top + 2)
    if family == "C":
        return any(_fits(counts, [(2 * a + 1, "even"), (2 * a, "odd"), (2 * a - 1, "even"), (1, "even")])
                   for a in rng)
    if family == "B":
        return any(_fits(counts, [(2 * a + 2, "even"), (2 * a + 1, "odd"), (2 * a, "even")]) for a in rng)
    for a in rng:
        forms = [
            [(2 * a + 2, "even"), (2 * a + 1, "even")],
            [(2 * a + 1, "even"), (2 * a, "even")],
            [(2 * a + 3, "odd"), (2 * a + 2, "even"), (2 * a + 1, "odd")],
            [(2 * a + 1, "odd"), (2 * a, "even"), (2, "even"), (1, "odd")],
        ]
        if any(_fits(counts, f) for f in forms):
            return True
        for b in rng:
            if _fits(counts, [(2 * a + 1, "odd"), (2 * b + 1, "odd")]):
                return True
    return False


def classical_hikita_candidate(l: LeviSpec) -> bool:
    """Levi shapes listed as expected good cases for the classical statement."""
    fam, n = l.ambient.family, l.n
    blocks = sorted(l.gl_blocks)
    if fam == "C":
        return l.tail == 0 and all(a in (1, 2) for a in blocks)
    if fam == "B":
        if l.tail == 1 and all(a in (1, 2) for a in blocks):
            return True
        if l.tail == 2 and all(a == 3 for a in blocks):
            return True
        return all(a == 1 for a in blocks)
    if fam == "D":
        if l.tail in (1, 2) and all(a in (1, 2) for a in blocks):
            return True
        if all(a == 1 for a in blocks):
            return True
        return l.tail == 0 and blocks == [n] and n % 2 == 0
    return True


def kim_betti(k: int) -> list:
    """Betti numbers d_0.. of the Springer fiber for (2k+1, 2k+1, 1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    top = (2 * k + 3) // 2
    return [comb(2 * k + 1, i) + (comb(2 * k + 1, i - 2) if i >= 2 else 0) for i in range(top + 1)]


def partitions_of(n: int, max_part: int | None = None):
    """All partitions of n, largest parts first."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def orbit_partitions(t: LieType) -> list:
    return [Partition(ps) for ps in partitions_of(standard_dim(t)) if has_type(Partition(ps), t.family)]
