"""Both weight maps of the refined Hikita-Nakajima diagram and their
comparison.

An element ``s (x) g`` of the big algebra has ``s`` invariant under W_M and
``g`` arbitrary.  With ``mu = lambda + 2 hbar rho_l`` on the character space
of ``l``:

* cohomology side, label ``u`` of W_L \\ W / W_M (free):
  ``s(u^-1 mu, 2 hbar) * g(mu, 2 hbar)``;
* quantization side, label ``[w]`` of W_M \\ W / W_L (free), evaluated at the
  shortest element ``d`` of the double coset:
  ``s(d mu, 2 hbar) * g(mu, 2 hbar)``,
  i.e. the highest weight formula at ``lambda + hbar rho_l`` followed by
  ``hbar -> 2 hbar``.

Labels are matched by ``[u] -> [u^-1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .polyring import HBAR, MultiPoly, invariant_generators, ring, weyl_act_poly
from .rootdata import (CosetLabel, LeviSpec, LieType, WeylElement, act_on_weight, coset_reps,
                       free_double_cosets, label_of, levi_weyl_group, longest_levi_element,
                       rho_levi)

PARAM_NAMES = ("a", "b", "c", "d", "e", "f", "g", "k", "m", "p", "q", "r")


class InvarianceError(ValueError):
    pass


@dataclass(frozen=True)
class BElement:
    s: MultiPoly
    g: MultiPoly
    name: str = ""

    @classmethod
    def make(cls, s, g, n: int, name: str = "") -> "BElement":
        names = ring(n)
        s = s if isinstance(s, MultiPoly) else MultiPoly.const(names, s)
        g = g if isinstance(g, MultiPoly) else MultiPoly.const(names, g)
        return cls(s, g, name or f"({s}) (x) ({g})")


@dataclass
class HikitaInstance:
    ambient: LieType
    levi_M: LeviSpec
    levi_L: LeviSpec

    def __post_init__(self):
        if self.levi_M.ambient != self.ambient or self.levi_L.ambient != self.ambient:
            raise ValueError("both Levis must live in the ambient type")

    @property
    def n(self) -> int:
        return self.ambient.rank

    @property
    def params(self) -> tuple:
        return PARAM_NAMES[: self.levi_L.char_dim()]

    @property
    def target(self) -> tuple:
        return self.params + (HBAR,)

    def restriction(self) -> list:
        """The point lambda in X(l) as polynomials in the character parameters.

        One parameter per GL block, zero on the tail; in type A the last block
        carries 0, which fixes the chart modulo the center."""
        tgt = self.target
        out = []
        for j, a in enumerate(self.levi_L.gl_blocks):
            if j < len(self.params):
                p = MultiPoly.var(tgt, self.params[j])
            else:
                p = MultiPoly(tgt)
            out += [p] * a
        out += [MultiPoly(tgt)] * self.levi_L.tail
        return out

    def mu(self) -> list:
        h = MultiPoly.var(self.target, HBAR)
        return [x + h * (2 * r) for x, r in zip(self.restriction(), rho_levi(self.levi_L))]

    def describe(self) -> dict:
        return {"ambient": str(self.ambient), "m": self.levi_M.body(), "l": self.levi_L.body()}


@dataclass
class WeightVector:
    labels: list
    entries: dict = field(default_factory=dict)

    def __getitem__(self, label):
        return self.entries[label]

    def values(self) -> list:
        return [self.entries[l] for l in self.labels]

    def to_json(self) -> list:
        return [{"label": str(l), "value": str(self.entries[l])} for l in self.labels]


def check_invariance(levi: LeviSpec, s: MultiPoly):
    for w in levi_weyl_group(levi).generators:
        if weyl_act_poly(w, s) != s:
            raise InvarianceError(f"{s} is not invariant under W_M generator {w}")


def _evaluate(f: MultiPoly, point: Sequence[MultiPoly], inst: HikitaInstance) -> MultiPoly:
    h2 = MultiPoly.var(inst.target, HBAR) * 2
    return f.subs(list(point) + [h2], inst.target)


def coh_labels(inst: HikitaInstance) -> list:
    return free_double_cosets(inst.levi_L, inst.levi_M)


def quant_labels(inst: HikitaInstance) -> list:
    return free_double_cosets(inst.levi_M, inst.levi_L)


def flag_fixed_restriction(inst: HikitaInstance, b: BElement) -> WeightVector:
    """(w . s) g on W / W_M, as polynomials in (x, hbar); full flag case."""
    if not inst.levi_L.is_torus():
        raise ValueError("the full-flag restriction needs L = torus")
    check_invariance(inst.levi_M, b.s)
    labels = [CosetLabel(w, "left") for w in coset_reps(inst.levi_M, "left")]
    return WeightVector(labels, {lab: weyl_act_poly(lab.rep, b.s) * b.g for lab in labels})


def coh_side(inst: HikitaInstance, b: BElement) -> WeightVector:
    check_invariance(inst.levi_M, b.s)
    mu = inst.mu()
    g_val = _evaluate(b.g, mu, inst)
    labels = coh_labels(inst)
    out = {}
    for lab in labels:
        point = act_on_weight(lab.rep.inverse(), mu)
        out[lab] = _evaluate(b.s, point, inst) * g_val
    return WeightVector(labels, out)


def quant_point_element(lab: CosetLabel, inst: HikitaInstance) -> WeylElement:
    """Shortest element of the double coset of a quantization-side label."""
    return lab.rep * longest_levi_element(inst.levi_L)


def quant_side(inst: HikitaInstance, b: BElement) -> WeightVector:
    check_invariance(inst.levi_M, b.s)
    mu = inst.mu()
    g_val = _evaluate(b.g, mu, inst)
    labels = quant_labels(inst)
    out = {}
    for lab in labels:
        d = quant_point_element(lab, inst)
        out[lab] = _evaluate(b.s, act_on_weight(d, mu), inst) * g_val
    return WeightVector(labels, out)


def label_bijection(inst: HikitaInstance) -> dict:
    """[u] -> [u^-1] from coh labels to quant labels."""
    q = quant_labels(inst)
    return {lab: label_of(lab.rep.inverse(), q, inst.levi_M, inst.levi_L) for lab in coh_labels(inst)}


def default_generators(inst: HikitaInstance) -> list:
    names = ring(inst.n)
    out = [BElement(s, MultiPoly.const(names, 1), f"s=e[{s}]") for s in invariant_generators(inst.levi_M, names)]
    out += [BElement(MultiPoly.const(names, 1), MultiPoly.var(names, i), f"g=x{i + 1}")
            for i in range(inst.n)]
    return out


def cartan_generators(n: int) -> list:
    """e_i = e_ii - e_{i+1,i+1} carried on the s leg."""
    names = ring(n)
    one = MultiPoly.const(names, 1)
    return [BElement(MultiPoly.var(names, i) - MultiPoly.var(names, i + 1), one, f"e{i + 1}")
            for i in range(n - 1)]


@dataclass
class DiagramResult:
    equal: bool
    mismatches: list
    per_generator: list

    def to_json(self) -> dict:
        return {"equal": self.equal, "mismatches": self.mismatches,
                "per_generator": self.per_generator}


def diagram_check(inst: HikitaInstance, generators: Sequence[BElement] | None = None) -> DiagramResult:
    gens = list(generators) if generators is not None else default_generators(inst)
    bij = label_bijection(inst)
    mismatches, per = [], []
    for b in gens:
        coh = coh_side(inst, b)
        quant = quant_side(inst, b)
        ok = True
        rows = []
        for lab in coh.labels:
            qlab = bij[lab]
            c, q = coh[lab], quant[qlab]
            same = c == q
            ok &= same
            rows.append({"coh_label": str(lab), "quant_label": str(qlab), "coh": str(c), "quant": str(q)})
            if not same:
                mismatches.append({"generator": b.name, "coh_label": str(lab), "quant_label": str(qlab),
                                   "coh": str(c), "quant": str(q), "difference": str(c - q)})
        per.append({"name": b.name, "coh": [r["coh"] for r in rows],
                    "quant": [r["quant"] for r in rows], "equal": ok})
    return DiagramResult(not mismatches, mismatches, per)


def fixed_point_census(inst: HikitaInstance) -> dict:
    labels = quant_labels(inst)
    other = coh_labels(inst)
    return {"count": len(labels), "labels": labels, "dual_count": len(other),
            "agree": len(labels) == len(other)}


def sl4_instance() -> HikitaInstance:
    t = LieType("A", 4)
    return HikitaInstance(t, LeviSpec.torus(t), LeviSpec(t, (1, 3)))
