"""Restriction of equivariant Schubert classes to torus fixed points.

``billey_restrict(w, v)`` evaluates the AJS/Billey subword formula: for a
reduced word ``b_1 ... b_p`` of ``v`` put ``r_j = s_{b_1} ... s_{b_{j-1}}(alpha_{b_j})``;
then ``sigma_w|_v`` is the sum, over subsets ``j_1 < ... < j_k`` whose letters
spell a reduced word of ``w``, of ``r_{j_1} ... r_{j_k}``.

The subword sum is evaluated by a dynamic program over positions of the word
for ``v``.  The state is the part of ``w`` not yet spelled, ``x``, kept as the
weight coordinates of ``x(rho)``; a letter ``a`` may be taken exactly when
``s_a`` is a left descent of ``x``, so only reduced spellings are counted.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .rootdata import DynkinDiagram, fundamental_weight, height
from .tpoly import TPoly
from .weylcox import (
    WeylWord, act, longest_element, reflect_root_coords, reflect_weight_coords,
    require_reduced, rho_image,
)


class RootPolynomial:
    """Polynomial in the simple roots ``alpha_1..alpha_n`` with Fraction coefficients.

    Stored as a dict mapping exponent tuples to nonzero coefficients.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, rank: int, c=1) -> RootPolynomial:
        return cls(rank, {(0,) * rank: c})

    @classmethod
    def linear(cls, coords) -> RootPolynomial:
        rank = len(coords)
        return cls(rank, {tuple(int(i == k) for i in range(rank)): c
                          for k, c in enumerate(coords) if c})

    def __add__(self, other: RootPolynomial) -> RootPolynomial:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return RootPolynomial(self.rank, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RootPolynomial(self.rank, {k: c * other for k, c in self.terms.items()})
        out = defaultdict(Fraction)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(k1, k2))] += c1 * c2
        return RootPolynomial(self.rank, out)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(k) == degree for k in self.terms)

    def __eq__(self, other):
        return isinstance(other, RootPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"RootPolynomial({self.format()})"

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "*".join(f"a{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(k) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def restrict_to_S(p: RootPolynomial) -> TPoly:
    """Substitute ``alpha -> t`` for every simple root."""
    coeffs = defaultdict(Fraction)
    for k, c in p.terms.items():
        coeffs[sum(k)] += c
    top = max(coeffs, default=-1)
    return TPoly(coeffs[d] for d in range(top + 1))


def _inversion_roots(D: DynkinDiagram, letters) -> list[tuple[int, ...]]:
    """``r_j = s_{b_1} ... s_{b_{j-1}}(alpha_{b_j})`` for each position j."""
    out = []
    for j, b in enumerate(letters):
        v = tuple(int(i == b) for i in range(1, D.rank + 1))
        for a in reversed(letters[:j]):
            v = reflect_root_coords(D, v, a)
        out.append(v)
    return out


def _subword_sum(w: WeylWord, v_letters, weights, one):
    """Sum over reduced subwords for w of the product of the position weights."""
    D = w.diagram
    target = (1,) * D.rank
    todo = len(w.letters)
    states = {rho_image(D, w.letters): (todo, one)}
    n = len(v_letters)
    for j, b in enumerate(v_letters):
        nxt = {}
        left = n - j - 1
        for m, (need, val) in states.items():
            # skip position j
            if need <= left:
                _accumulate(nxt, m, need, val)
            # take position j when s_b is a left descent of the remaining element
            if need and m[b - 1] < 0:
                _accumulate(nxt, reflect_weight_coords(D, m, b), need - 1, val * weights[j])
        states = nxt
        if not states:
            break
    hit = states.get(target)
    return hit[1] if hit else None


def _accumulate(table, key, need, val):
    if key in table:
        table[key] = (need, table[key][1] + val)
    else:
        table[key] = (need, val)


def billey_restrict(w: WeylWord, v: WeylWord) -> RootPolynomial:
    """T-equivariant restriction ``sigma_w|_v`` as a polynomial in the simple roots."""
    if w.diagram != v.diagram:
        raise DomainError("words live in different diagrams")
    require_reduced(w)
    require_reduced(v)
    D = w.diagram
    weights = [RootPolynomial.linear(r) for r in _inversion_roots(D, v.letters)]
    out = _subword_sum(w, v.letters, weights, RootPolynomial.const(D.rank))
    return out if out is not None else RootPolynomial(D.rank)


@lru_cache(maxsize=None)
def _heights_along(D: DynkinDiagram, letters) -> tuple[int, ...]:
    return tuple(sum(r) for r in _inversion_roots(D, letters))


@lru_cache(maxsize=None)
def _p_restrict_scalar(D: DynkinDiagram, w_letters, J: int) -> int:
    w = WeylWord(w_letters, D)
    wj = longest_element(D, J).letters
    # substituting alpha -> t factor by factor is the same ring map applied
    # after the sum, and keeps the DP on integers
    out = _subword_sum(w, wj, _heights_along(D, wj), 1)
    return out or 0


def p_restrict(w: WeylWord, J: int) -> TPoly:
    """``p_w|_{w_J}``: restriction of ``sigma_w`` at ``w_J``, pushed to ``Q[t]``."""
    require_reduced(w)
    D = w.diagram
    D.check_subset(J)
    if w.support & ~J:
        # w is not below w_J; the DP would return 0 as well
        return TPoly()
    c = _p_restrict_scalar(D, w.letters, J)
    return TPoly.monomial(c, len(w.letters)) if c else TPoly()


def p_restrict_full(w: WeylWord, J: int) -> TPoly:
    """Same value as :func:`p_restrict` but through the full root polynomial."""
    return restrict_to_S(billey_restrict(w, longest_element(w.diagram, J)))


def divisor_closed_form(D: DynkinDiagram, alpha: int, J: int) -> TPoly:
    """``ht(varpi_alpha - w_J varpi_alpha) t``, the value of ``p_alpha`` at ``w_J``."""
    fw = fundamental_weight(D, D.full, alpha)
    diff = height(D, fw - act(longest_element(D, J), fw))
    return TPoly.monomial(diff, 1) if diff else TPoly()
