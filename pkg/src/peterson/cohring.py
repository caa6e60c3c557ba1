"""The ring H*_S(P) as vectors of values at the fixed points ``w_J``, J a subset of the nodes."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, OutsideModelError
from .rootdata import DynkinDiagram, card, format_subset, members, subset, subsets_of
from .tpoly import ONE, T, TPoly, frac
from .weylcox import (
    WeylWord, is_coxeter, reduced_word_count, reduced_words, require_reduced,
)
from .localization import p_restrict


class CohClass:
    """A class in H*_S(P), stored by its restrictions to all fixed points.

    ``values[J]`` is the restriction to ``w_J``; missing keys are zero.
    """

    __slots__ = ("diagram", "values")

    def __init__(self, diagram: DynkinDiagram, values=None):
        self.diagram = diagram
        self.values = {J: v for J, v in (values or {}).items() if v}

    def at(self, J: int) -> TPoly:
        return self.values.get(J, TPoly())

    @classmethod
    def constant(cls, D: DynkinDiagram, c=1) -> CohClass:
        c = c if isinstance(c, TPoly) else TPoly.const(c)
        return cls(D, {J: c for J in range(D.full + 1)})

    def _check(self, other):
        if not isinstance(other, CohClass) or other.diagram != self.diagram:
            raise DomainError("classes live in different diagrams")

    def __add__(self, other):
        self._check(other)
        keys = set(self.values) | set(other.values)
        return CohClass(self.diagram, {J: self.at(J) + other.at(J) for J in keys})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> CohClass:
        """Multiply by a scalar of ``Q[t]`` (a TPoly or a rational)."""
        if not isinstance(c, TPoly):
            c = TPoly.const(frac(c))
        return CohClass(self.diagram, {J: v * c for J, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        return isinstance(other, CohClass) and other.diagram == self.diagram and other.values == self.values

    def __hash__(self):
        return hash((self.diagram, frozenset(self.values.items())))

    def __repr__(self):
        inner = ", ".join(f"{format_subset(J)}: {v}" for J, v in sorted(self.values.items()))
        return f"CohClass({inner})"

    def omega(self) -> dict[int, TPoly]:
        return expand_in_omega(self)

    @classmethod
    def from_omega(cls, D: DynkinDiagram, coeffs) -> CohClass:
        out = CohClass(D)
        for I, c in coeffs.items():
            out = out + omega_class(D, I).scale(c)
        return out

    def to_json(self, basis: str = "omega") -> dict:
        if basis == "omega":
            data = self.omega()
        elif basis == "fixed_point":
            data = self.values
        else:
            raise DomainError(f"unknown basis {basis!r}")
        entries = [{"subset": members(J), "poly": data[J].to_json()}
                   for J in sorted(data, key=lambda m: (card(m), m))]
        return {"basis": basis, "entries": entries}

    @classmethod
    def from_json(cls, D: DynkinDiagram, payload: dict) -> CohClass:
        basis = payload.get("basis")
        coeffs = {}
        for entry in payload.get("entries", []):
            J = D.check_subset(subset(entry["subset"]))
            coeffs[J] = coeffs.get(J, TPoly()) + TPoly.from_json(entry["poly"])
        if basis == "fixed_point":
            return cls(D, coeffs)
        if basis == "omega":
            return cls.from_omega(D, coeffs)
        raise DomainError(f"unknown basis {basis!r}")


def multiply(a: CohClass, b: CohClass) -> CohClass:
    a._check(b)
    keys = set(a.values) & set(b.values)
    return CohClass(a.diagram, {J: a.values[J] * b.values[J] for J in keys})


def add(a: CohClass, b: CohClass) -> CohClass:
    return a + b


def scale(a: CohClass, c) -> CohClass:
    return a.scale(c)


def p_class(w: WeylWord) -> CohClass:
    """``p_w``, the pullback of the Schubert class of w, by Billey localization."""
    require_reduced(w)
    D = w.diagram
    return CohClass(D, {J: p_restrict(w, J) for J in range(D.full + 1)})


def divisor(D: DynkinDiagram, alpha: int) -> CohClass:
    return p_class(WeylWord((D.check_node(alpha),), D))


def q_class(D: DynkinDiagram, alpha: int) -> CohClass:
    """``q_alpha = sum_beta a_{alpha beta} p_beta``."""
    out = CohClass(D)
    for beta in D.nodes:
        if D.a(alpha, beta):
            out = out + divisor(D, beta).scale(D.a(alpha, beta))
    return out


@lru_cache(maxsize=None)
def _omega_table(D: DynkinDiagram) -> dict[int, dict[int, TPoly]]:
    """``table[I][J] = Omega_I|_{w_J}``, nonzero entries only."""
    divisors = {a: divisor(D, a) for a in D.nodes}
    table = {}
    for I in range(D.full + 1):
        row = {}
        for J in range(D.full + 1):
            val = ONE
            for a in members(I):
                val = val * divisors[a].at(J)
                if not val:
                    break
            if val:
                row[J] = val
        table[I] = row
    return table


def omega_class(D: DynkinDiagram, I: int) -> CohClass:
    """``Omega_I``, the product of the divisor classes ``p_alpha`` over alpha in I."""
    D.check_subset(I)
    return CohClass(D, _omega_table(D)[I])


def check_triangularity(D: DynkinDiagram) -> None:
    """Omega_I vanishes at w_J unless I is inside J, and is nonzero at w_I."""
    table = _omega_table(D)
    for I, row in table.items():
        if I not in row:
            raise OutsideModelError(f"Omega_{format_subset(I)} vanishes at its own fixed point")
        for J in row:
            if I & ~J:
                raise OutsideModelError(
                    f"Omega_{format_subset(I)} is nonzero at w_{format_subset(J)}")


def expand_in_omega(x: CohClass) -> dict[int, TPoly]:
    """Coefficients of x in the basis ``{Omega_I}``, by triangular back-substitution.

    Raises OutsideModelError if some coefficient is not a polynomial in t.
    """
    D = x.diagram
    table = _omega_table(D)
    coeffs: dict[int, TPoly] = {}
    for J in subsets_of(D.full):
        residual = x.at(J)
        for I, c in coeffs.items():
            if not I & ~J:
                residual = residual - c * table[I][J]
        if not residual:
            continue
        diag = table[J].get(J)
        if diag is None or not diag.is_monomial():
            raise OutsideModelError(f"Omega basis is not triangular at {format_subset(J)}")
        k = diag.degree
        quo, rem = residual.div_monomial(diag.coeff(k), k)
        if rem:
            raise OutsideModelError(
                f"class outside the model ring: coefficient of Omega_{format_subset(J)} "
                f"would be ({residual}) / ({diag})")
        coeffs[J] = quo
    return coeffs


# -- identities ---------------------------------------------------------------


def giambelli_check(v: WeylWord) -> tuple[bool, int | None]:
    """``p_v = R(v)/|I|! * Omega_I`` at every fixed point; returns (ok, first failing J)."""
    if not is_coxeter(v):
        raise DomainError(f"{v.format()} is not a Coxeter word")
    D = v.diagram
    I = v.support
    factor = Fraction(reduced_word_count(v), math.factorial(card(I)))
    lhs = p_class(v)
    rhs = omega_class(D, I).scale(factor)
    for J in subsets_of(D.full):
        if lhs.at(J) != rhs.at(J):
            return False, J
    return True, None


def relation_check(D: DynkinDiagram, alpha: int) -> bool:
    """``p_alpha (q_alpha - 2t) = 0`` in the fixed-point model."""
    D.check_node(alpha)
    rel = divisor(D, alpha) * (q_class(D, alpha) - CohClass.constant(D, T * 2))
    return rel.is_zero()


def reduced_word_average(w: WeylWord) -> CohClass:
    """``(1/l(w)!) * sum over reduced words u of w of prod_{letters a of u} p_a``."""
    D = w.diagram
    divisors = {a: divisor(D, a) for a in D.nodes}
    total = CohClass(D)
    for u in sorted(reduced_words(w)):
        prod = CohClass.constant(D)
        for a in u:
            prod = prod * divisors[a]
        total = total + prod
    return total.scale(Fraction(1, math.factorial(len(w.letters))))


def klyachko_ordinary_check(w: WeylWord) -> bool:
    """Omega-expansions of ``p_w`` and of the reduced-word average agree at ``t = 0``."""
    require_reduced(w)
    lhs = expand_in_omega(p_class(w))
    rhs = expand_in_omega(reduced_word_average(w))
    for J in set(lhs) | set(rhs):
        if lhs.get(J, TPoly())(0) != rhs.get(J, TPoly())(0):
            return False
    return True


def p_basis_product(D: DynkinDiagram, I: int, J: int, choice: dict[int, WeylWord]) -> dict[int, TPoly]:
    """Structure constants of ``p_{v_I} p_{v_J}`` in the basis ``{p_{v_K}}``."""
    prod = p_class(choice[I]) * p_class(choice[J])
    out = {}
    for K, c in expand_in_omega(prod).items():
        # p_{v_K} = R(v_K)/|K|! Omega_K
        out[K] = c * Fraction(math.factorial(card(K)), reduced_word_count(choice[K]))
    return out
