"""Weyl group elements as words in simple reflections.

A word ``(a1, ..., ak)`` stands for ``s_a1 s_a2 ... s_ak`` and acts on weights
right to left.  Two words name the same group element when they act equally
on every fundamental weight.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import DomainError, ParseError
from .rootdata import (
    DynkinDiagram, WeightVec, component_types, members, positive_coroots, subset,
)


@dataclass(frozen=True)
class WeylWord:
    letters: tuple[int, ...]
    diagram: DynkinDiagram

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            self.diagram.check_node(a)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def support(self) -> int:
        return subset(self.letters)

    def inverse(self) -> WeylWord:
        return WeylWord(self.letters[::-1], self.diagram)

    def __mul__(self, other: WeylWord) -> WeylWord:
        return WeylWord(self.letters + other.letters, self.diagram)

    def format(self) -> str:
        return " ".join(map(str, self.letters)) or "id"

    def __str__(self):
        return self.format()


def word(D: DynkinDiagram, letters) -> WeylWord:
    return WeylWord(tuple(letters), D)


def parse_word(D: DynkinDiagram, text: str) -> WeylWord:
    """Parse ``"2 1 3"`` or ``"2,1,3"``; ``""`` and ``"id"`` give the identity."""
    body = text.strip()
    if body in ("", "id", "e"):
        return WeylWord((), D)
    try:
        letters = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
    except ValueError as exc:
        raise ParseError(f"bad word {text!r}") from exc
    bad = [a for a in letters if not 1 <= a <= D.rank]
    if bad:
        raise ParseError(f"word {text!r} has letters outside 1..{D.rank}")
    return WeylWord(tuple(letters), D)


# -- actions -----------------------------------------------------------------


def reflect_weight_coords(D: DynkinDiagram, m, i: int) -> tuple:
    """``s_i`` on a weight given by ``m_j = <alpha_j^vee, mu>``."""
    mi = m[i - 1]
    if not mi:
        return tuple(m)
    row = D.cartan[i - 1]
    return tuple(mj - mi * aij for mj, aij in zip(m, row))


def reflect_root_coords(D: DynkinDiagram, v, i: int) -> tuple:
    """``s_i(lam) = lam - <alpha_i^vee, lam> alpha_i`` in simple-root coordinates."""
    pair = sum(vg * D.cartan[g][i - 1] for g, vg in enumerate(v) if vg)
    if not pair:
        return tuple(v)
    out = list(v)
    out[i - 1] -= pair
    return tuple(out)


def act(w: WeylWord, lam: WeightVec) -> WeightVec:
    v = lam.coords
    for a in reversed(w.letters):
        v = reflect_root_coords(w.diagram, v, a)
    return WeightVec(v)


def rho_image(D: DynkinDiagram, letters) -> tuple[int, ...]:
    """Weight coordinates of ``w(rho)``; faithful since rho is regular."""
    m = (1,) * D.rank
    for a in reversed(tuple(letters)):
        m = reflect_weight_coords(D, m, a)
    return m


def element_key(w: WeylWord) -> tuple:
    """Images of all fundamental weights, in weight coordinates."""
    D = w.diagram
    images = []
    for k in D.nodes:
        m = tuple(int(j == k) for j in D.nodes)
        for a in reversed(w.letters):
            m = reflect_weight_coords(D, m, a)
        images.append(m)
    return tuple(images)


def same_element(u: WeylWord, v: WeylWord) -> bool:
    return element_key(u) == element_key(v)


@lru_cache(maxsize=None)
def _coroot_rows(D: DynkinDiagram):
    return tuple(c.coords for c in positive_coroots(D))


def length_of(D: DynkinDiagram, m) -> int:
    """Length of the element x with ``x(rho)`` having weight coordinates ``m``."""
    return sum(1 for d in _coroot_rows(D) if sum(dg * mg for dg, mg in zip(d, m)) < 0)


def length(w: WeylWord) -> int:
    return length_of(w.diagram, rho_image(w.diagram, w.letters))


def is_reduced(w: WeylWord) -> bool:
    D = w.diagram
    m = (1,) * D.rank
    for a in reversed(w.letters):
        # s_a x is longer than x exactly when <alpha_a^vee, x rho> > 0
        if m[a - 1] <= 0:
            return False
        m = reflect_weight_coords(D, m, a)
    return True


def require_reduced(w: WeylWord) -> WeylWord:
    if not is_reduced(w):
        raise DomainError(f"word {w.format()} is not reduced")
    return w


# -- orders and longest elements ----------------------------------------------

_EXCEPTIONAL_ORDERS = {("G", 2): 12, ("F", 4): 1152, ("E", 6): 51840,
                       ("E", 7): 2903040, ("E", 8): 696729600}


def _component_order(family: str, n: int) -> int:
    if family == "A":
        return math.factorial(n + 1)
    if family in "BC":
        return 2 ** n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return _EXCEPTIONAL_ORDERS[(family, n)]


def weyl_order(D: DynkinDiagram, I: int | None = None) -> int:
    """``|W_I|`` by closed formulas, multiplied over connected components."""
    I = D.full if I is None else D.check_subset(I)
    order = 1
    for family, n in component_types(D, I):
        order *= _component_order(family, n)
    return order


def orbit_size(D: DynkinDiagram, I: int | None = None) -> int:
    """Size of the W_I-orbit of rho by enumeration; equals ``|W_I|``."""
    I = D.full if I is None else D.check_subset(I)
    start = (1,) * D.rank
    seen, queue = {start}, deque([start])
    nodes = members(I)
    while queue:
        m = queue.popleft()
        for a in nodes:
            nxt = reflect_weight_coords(D, m, a)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)


@lru_cache(maxsize=None)
def _longest_letters(D: DynkinDiagram, I: int) -> tuple[int, ...]:
    nodes = members(I)
    m = (1,) * D.rank
    letters = []
    while True:
        a = next((k for k in nodes if m[k - 1] > 0), None)
        if a is None:
            break
        m = reflect_weight_coords(D, m, a)
        letters.append(a)
    return tuple(reversed(letters))


def longest_element(D: DynkinDiagram, I: int | None = None) -> WeylWord:
    """Reduced word for ``w_I``, built greedily until rho is antidominant on I."""
    I = D.full if I is None else D.check_subset(I)
    return WeylWord(_longest_letters(D, I), D)


# -- Coxeter elements and reduced words --------------------------------------


def is_coxeter(w: WeylWord) -> bool:
    return len(set(w.letters)) == len(w.letters) and is_reduced(w)


def coxeter_elements(D: DynkinDiagram, I: int) -> list[WeylWord]:
    """One word per distinct Coxeter element of ``W_I`` (first ordering found wins)."""
    D.check_subset(I)
    seen, out = set(), []
    for perm in permutations(members(I)):
        w = WeylWord(perm, D)
        key = element_key(w)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def acyclic_orientation_count(D: DynkinDiagram, I: int) -> int:
    """Number of acyclic orientations of the Dynkin graph on I (by enumeration)."""
    nodes = members(I)
    edges = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:] if D.a(a, b)]
    count = 0
    for bits in range(1 << len(edges)):
        succ = {k: [] for k in nodes}
        for e, (a, b) in enumerate(edges):
            if bits >> e & 1:
                succ[a].append(b)
            else:
                succ[b].append(a)
        if _is_acyclic(nodes, succ):
            count += 1
    return count


def _is_acyclic(nodes, succ) -> bool:
    indeg = {k: 0 for k in nodes}
    for k in nodes:
        for b in succ[k]:
            indeg[b] += 1
    queue = [k for k in nodes if not indeg[k]]
    seen = 0
    while queue:
        k = queue.pop()
        seen += 1
        for b in succ[k]:
            indeg[b] -= 1
            if not indeg[b]:
                queue.append(b)
    return seen == len(nodes)


def _braid_order(D: DynkinDiagram, a: int, b: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[D.a(a, b) * D.a(b, a)]


def reduced_words(v: WeylWord) -> set[tuple[int, ...]]:
    """All reduced words of v, by closure under commutation and braid moves."""
    require_reduced(v)
    D = v.diagram
    start = v.letters
    seen, queue = {start}, deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a == b:
                continue
            m = _braid_order(D, a, b)
            if i + m > len(w):
                continue
            seg = w[i:i + m]
            if all(seg[k] == (a if k % 2 == 0 else b) for k in range(m)):
                swapped = tuple(b if k % 2 == 0 else a for k in range(m))
                nxt = w[:i] + swapped + w[i + m:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def reduced_word_count(v: WeylWord) -> int:
    return len(reduced_words(v))


def linear_extension_count(v: WeylWord) -> int:
    """R(v) for a Coxeter element, counted as linear extensions of its orientation.

    Edge ``{a, b}`` of the Dynkin graph on supp(v) is oriented ``a -> b`` when
    ``a`` precedes ``b`` in the word; the count runs a DP over downsets.
    """
    if not is_coxeter(v):
        raise DomainError(f"{v.format()} is not a Coxeter word")
    D = v.diagram
    letters = list(v.letters)
    pos = {a: i for i, a in enumerate(letters)}
    n = len(letters)
    preds = [0] * n
    for i, a in enumerate(letters):
        for b in letters:
            if b != a and D.a(a, b) and pos[b] < i:
                preds[i] |= 1 << pos[b]
    ways = [0] * (1 << n)
    ways[0] = 1
    for mask in range(1 << n):
        if not ways[mask]:
            continue
        for i in range(n):
            if not mask >> i & 1 and preds[i] & mask == preds[i]:
                ways[mask | 1 << i] += ways[mask]
    return ways[(1 << n) - 1]


def elements_by_length(D: DynkinDiagram, max_length: int, I: int | None = None) -> list[WeylWord]:
    """One reduced word for every element of ``W_I`` of length at most ``max_length``."""
    I = D.full if I is None else D.check_subset(I)
    start = (1,) * D.rank
    seen = {start: ()}
    layer = [((), start)]
    out = [WeylWord((), D)]
    for _ in range(max_length):
        nxt = []
        for letters, m in layer:
            for a in members(I):
                if m[a - 1] > 0:
                    m2 = reflect_weight_coords(D, m, a)
                    if m2 not in seen:
                        w = (a,) + letters
                        seen[m2] = w
                        nxt.append((w, m2))
                        out.append(WeylWord(w, D))
        layer = nxt
    return out
