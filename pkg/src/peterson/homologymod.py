"""H_*^S(P) as a Q[t]-module on the fundamental classes ``[P_J]``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cohring import CohClass, expand_in_omega, p_class, q_class
from .errors import DomainError
from .rootdata import (
    DynkinDiagram, card, connection_index, format_subset, fundamental_coweight,
    fundamental_weight, members, pairing, rho_check, subset, subsets_of,
)
from .tpoly import T, TPoly, frac
from .weylcox import WeylWord, coxeter_elements, is_coxeter, reduced_word_count, weyl_order


class HomClass:
    """``sum_J coeffs[J] [P_J]`` with ``coeffs[J]`` in ``Q[t]``."""

    __slots__ = ("diagram", "coeffs")

    def __init__(self, diagram: DynkinDiagram, coeffs=None):
        self.diagram = diagram
        self.coeffs = {J: c for J, c in (coeffs or {}).items() if c}

    @classmethod
    def fundamental(cls, D: DynkinDiagram, J: int | None = None) -> HomClass:
        J = D.full if J is None else D.check_subset(J)
        return cls(D, {J: TPoly.const(1)})

    def coeff(self, J: int) -> TPoly:
        return self.coeffs.get(J, TPoly())

    def __add__(self, other: HomClass) -> HomClass:
        if other.diagram != self.diagram:
            raise DomainError("classes live in different diagrams")
        keys = set(self.coeffs) | set(other.coeffs)
        return HomClass(self.diagram, {J: self.coeff(J) + other.coeff(J) for J in keys})

    def scale(self, c) -> HomClass:
        if not isinstance(c, TPoly):
            c = TPoly.const(frac(c))
        return HomClass(self.diagram, {J: v * c for J, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, HomClass) and other.diagram == self.diagram and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.diagram, frozenset(self.coeffs.items())))

    def __repr__(self):
        inner = ", ".join(f"{format_subset(J)}: {c}" for J, c in sorted(self.coeffs.items()))
        return f"HomClass({inner})"

    def to_json(self) -> dict:
        entries = [{"subset": members(J), "poly": self.coeffs[J].to_json()}
                   for J in sorted(self.coeffs, key=lambda m: (-card(m), m))]
        return {"basis": "fundamental", "entries": entries}

    @classmethod
    def from_json(cls, D: DynkinDiagram, payload: dict) -> HomClass:
        if payload.get("basis") != "fundamental":
            raise DomainError("homology classes use basis 'fundamental'")
        coeffs = {}
        for entry in payload.get("entries", []):
            J = D.check_subset(subset(entry["subset"]))
            coeffs[J] = coeffs.get(J, TPoly()) + TPoly.from_json(entry["poly"])
        return cls(D, coeffs)


@lru_cache(maxsize=None)
def _cap_divisor_terms(D: DynkinDiagram, alpha: int, J: int) -> tuple:
    if not J & subset([alpha]):
        return ()
    fw = fundamental_weight(D, J, alpha)
    terms = [(J, TPoly.monomial(2 * pairing(D, rho_check(D, J), fw), 1))]
    order_j = weyl_order(D, J)
    for beta in members(J):
        K = J & ~subset([beta])
        ratio = Fraction(order_j, weyl_order(D, K))
        assert ratio.denominator == 1
        c = pairing(D, fundamental_coweight(D, J, beta), fw) * ratio
        if c:
            terms.append((K, TPoly.const(c)))
    return tuple(terms)


def cap_divisor(D: DynkinDiagram, alpha: int, J: int) -> HomClass:
    """``p_alpha cap [P_J]`` by the equivariant Chevalley formula.

    Zero if alpha is not in J; otherwise
    ``<2 rho_J^vee, varpi_alpha^J> t [P_J]
    + sum_{beta in J} <varpi_beta^{J vee}, varpi_alpha^J> |W_J|/|W_{J-beta}| [P_{J-beta}]``,
    with all weights taken in the subdiagram J.
    """
    D.check_node(alpha)
    D.check_subset(J)
    return HomClass(D, dict(_cap_divisor_terms(D, alpha, J)))


def cap_divisor_class(alpha: int, c: HomClass) -> HomClass:
    out = HomClass(c.diagram)
    for J, coef in c.coeffs.items():
        for K, v in _cap_divisor_terms(c.diagram, alpha, J):
            out = out + HomClass(c.diagram, {K: v * coef})
    return out


def cap_omega(I: int, c: HomClass) -> HomClass:
    """``Omega_I cap c``, capping one divisor at a time."""
    for alpha in members(I):
        c = cap_divisor_class(alpha, c)
        if c.is_zero():
            break
    return c


def cap(x: CohClass, c: HomClass) -> HomClass:
    """``x cap c`` via the Omega-expansion of x and iterated divisor caps."""
    if x.diagram != c.diagram:
        raise DomainError("classes live in different diagrams")
    out = HomClass(c.diagram)
    for I, coef in expand_in_omega(x).items():
        out = out + cap_omega(I, c).scale(coef)
    return out


def integrate(x: CohClass, c: HomClass) -> TPoly:
    """``<x, c>``: the coefficient of ``[P_empty] = [pt]`` in ``x cap c``."""
    return cap(x, c).coeff(0)


def pair_omega(D: DynkinDiagram, I: int, J: int) -> TPoly:
    """``<Omega_I, [P_J]>`` by iterated capping."""
    return cap_omega(D.check_subset(I), HomClass.fundamental(D, J)).coeff(0)


@dataclass
class DualityReport:
    diagram: DynkinDiagram
    failures: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def duality_check(D: DynkinDiagram, coxeter=None) -> DualityReport:
    """Check ``<Omega_I,[P_J]> = delta_IJ |W_I|/f_I`` and the multiplicity formula.

    ``coxeter`` maps each subset to the Coxeter words to test; by default every
    Coxeter element of every subset.
    """
    report = DualityReport(D)
    for I in subsets_of(D.full):
        expected_diag = Fraction(weyl_order(D, I), connection_index(D, I))
        for J in subsets_of(D.full):
            got = pair_omega(D, I, J)
            want = TPoly.const(expected_diag) if I == J else TPoly()
            report.checked += 1
            if got != want:
                report.failures.append(
                    f"<Omega_{format_subset(I)}, [P_{format_subset(J)}]> = {got}, expected {want}")
        words = coxeter[I] if coxeter is not None else coxeter_elements(D, I)
        for v in words:
            got = multiplicity_by_integration(v)
            want = Fraction(reduced_word_count(v) * weyl_order(D, I),
                            math.factorial(card(I)) * connection_index(D, I))
            report.checked += 1
            if got != TPoly.const(want):
                report.failures.append(f"m({v.format()}) = {got}, expected {want}")
            elif want.denominator != 1 or want <= 0:
                report.failures.append(f"m({v.format()}) = {want} is not a positive integer")
    return report


def multiplicity_by_integration(v: WeylWord) -> TPoly:
    """``<p_v, [P_I]>`` for a Coxeter word v of I, computed by integration."""
    if not is_coxeter(v):
        raise DomainError(f"{v.format()} is not a Coxeter word")
    return integrate(p_class(v), HomClass.fundamental(v.diagram, v.support))


def q_chevalley_lhs(D: DynkinDiagram, I: int) -> HomClass:
    """``prod_{alpha not in I} (q_alpha - 2t) cap [P]``."""
    prod = CohClass.constant(D)
    for alpha in D.nodes:
        if not I & subset([alpha]):
            prod = prod * (q_class(D, alpha) - CohClass.constant(D, T * 2))
    return cap(prod, HomClass.fundamental(D))
