"""Dynkin diagrams, Cartan matrices, root systems and (co)weights of subdiagrams.

Conventions: nodes are numbered ``1..n`` (Bourbaki numbering for the named
families) and the Cartan matrix entry ``cartan[a-1][b-1]`` is
``a_{ab} = <b^vee, a>``.  Subsets of nodes are int bitmasks, node ``k`` being
bit ``k-1``.  Weights are stored in simple-root coordinates, coweights in
simple-coroot coordinates, both as tuples of Fractions.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import DomainError, NotFiniteTypeError, ParseError

# --------------------------------------------------------------------------
# subsets


def subset(nodes=()) -> int:
    mask = 0
    for k in nodes:
        if k < 1:
            raise DomainError(f"node index {k} out of range")
        mask |= 1 << (k - 1)
    return mask


def members(mask: int) -> list[int]:
    out, k = [], 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def card(mask: int) -> int:
    return bin(mask).count("1")


def subsets_of(mask: int) -> list[int]:
    """All submasks of ``mask``, ordered by cardinality then by value."""
    nodes = members(mask)
    out = []
    for r in range(len(nodes) + 1):
        for combo in combinations(nodes, r):
            out.append(subset(combo))
    return sorted(out, key=lambda m: (card(m), m))


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(k) for k in members(mask)) + "}"


def parse_subset(text: str, rank: int | None = None) -> int:
    """Parse ``"2,3"`` (or ``""``/``"{}"`` for the empty set) into a mask."""
    body = text.strip().strip("{}").strip()
    if not body:
        return 0
    try:
        nodes = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
    except ValueError as exc:
        raise ParseError(f"bad subset {text!r}") from exc
    if rank is not None:
        bad = [k for k in nodes if not 1 <= k <= rank]
        if bad:
            raise ParseError(f"subset {text!r} has nodes outside 1..{rank}")
    return subset(nodes)


# --------------------------------------------------------------------------
# exact linear algebra on small Fraction matrices


def _det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _inverse(rows):
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


# --------------------------------------------------------------------------
# diagrams

_FAMILY_MIN = {"A": 1, "B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}


def _family_cartan(family: str, n: int):
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        # 1-based nodes; a[i][j] = <alpha_j^vee, alpha_i>
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if family in "ABC":
        for k in range(1, n - 1):
            bond(k, k + 1)
        if n >= 2:
            if family == "A":
                bond(n - 1, n)
            elif family == "B":
                # alpha_n short: <alpha_n^vee, alpha_{n-1}> = -2
                bond(n - 1, n, aij=-2, aji=-1)
            else:
                bond(n - 1, n, aij=-1, aji=-2)
    elif family == "D":
        for k in range(1, n - 1):
            bond(k, k + 1)
        bond(n - 2, n)
    elif family == "E":
        bond(1, 3)
        bond(3, 4)
        bond(2, 4)
        for k in range(4, n):
            bond(k, k + 1)
    elif family == "F":
        bond(1, 2)
        bond(2, 3, aij=-2, aji=-1)
        bond(3, 4)
    elif family == "G":
        # alpha_1 short
        bond(1, 2, aij=-1, aji=-3)
    return a


@dataclass(frozen=True)
class DynkinDiagram:
    cartan: tuple[tuple[int, ...], ...]
    label: str | None = None

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def nodes(self) -> list[int]:
        return list(range(1, self.rank + 1))

    @property
    def full(self) -> int:
        return (1 << self.rank) - 1

    def a(self, alpha: int, beta: int) -> int:
        """Cartan entry ``a_{alpha beta} = <beta^vee, alpha>``."""
        return self.cartan[alpha - 1][beta - 1]

    def neighbours(self, alpha: int) -> list[int]:
        return [b for b in self.nodes if b != alpha and self.a(alpha, b) != 0]

    def check_subset(self, mask: int) -> int:
        if mask < 0 or mask & ~self.full:
            raise DomainError(f"subset {format_subset(mask)} not contained in 1..{self.rank}")
        return mask

    def check_node(self, alpha: int) -> int:
        if not 1 <= alpha <= self.rank:
            raise DomainError(f"node {alpha} out of range 1..{self.rank}")
        return alpha

    def __str__(self):
        return self.label or f"Cartan{[list(r) for r in self.cartan]}"


def diagram_from_cartan(rows, label=None) -> DynkinDiagram:
    """Validate an explicit Cartan matrix and wrap it as a diagram."""
    try:
        cartan = tuple(tuple(int(x) for x in r) for r in rows)
    except (TypeError, ValueError) as exc:
        raise ParseError("Cartan matrix must be a square integer matrix") from exc
    n = len(cartan)
    if n == 0 or any(len(r) != n for r in cartan):
        raise ParseError("Cartan matrix must be a non-empty square matrix")
    for i in range(n):
        if cartan[i][i] != 2:
            raise NotFiniteTypeError(f"diagonal entry ({i + 1},{i + 1}) is not 2")
        for j in range(n):
            if i == j:
                continue
            if cartan[i][j] not in (0, -1, -2, -3):
                raise NotFiniteTypeError(f"entry ({i + 1},{j + 1}) = {cartan[i][j]} not in {{0,-1,-2,-3}}")
            if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise NotFiniteTypeError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not both zero")
    for r in range(1, n + 1):
        for combo in combinations(range(n), r):
            minor = _det([[cartan[i][j] for j in combo] for i in combo])
            if minor <= 0:
                nodes = [i + 1 for i in combo]
                raise NotFiniteTypeError(
                    f"principal minor on nodes {nodes} is {minor}, not positive", minor=(nodes, minor))
    return DynkinDiagram(cartan, label)


_SPEC_RE = re.compile(r"^\s*([A-Ga-g])\s*(\d+)\s*$")


@lru_cache(maxsize=None)
def build_diagram(spec: str) -> DynkinDiagram:
    """Build a diagram from ``"B3"``-style names or ``{"cartan": [[...]]}`` JSON."""
    text = spec.strip()
    if text.startswith("{"):
        try:
            payload = json.loads(text)
            rows = payload["cartan"]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad Cartan JSON: {spec!r}") from exc
        return diagram_from_cartan(rows)
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"bad diagram spec {spec!r}; expected e.g. B3 or {{\"cartan\": ...}}")
    family, n = m.group(1).upper(), int(m.group(2))
    if n < _FAMILY_MIN[family]:
        raise ParseError(f"{family}{n}: rank must be at least {_FAMILY_MIN[family]}")
    if family == "E" and n > 8 or family == "F" and n != 4 or family == "G" and n != 2:
        raise ParseError(f"no finite-type diagram {family}{n}")
    return DynkinDiagram(tuple(tuple(r) for r in _family_cartan(family, n)), f"{family}{n}")


def restrict(D: DynkinDiagram, mask: int) -> tuple[DynkinDiagram, list[int]]:
    """Standalone diagram on the nodes of ``mask`` plus the node map (new k -> old)."""
    nodes = members(D.check_subset(mask))
    cartan = tuple(tuple(D.a(i, j) for j in nodes) for i in nodes)
    return DynkinDiagram(cartan, None), nodes


def components(D: DynkinDiagram, mask: int) -> list[int]:
    """Connected components of the subgraph induced on ``mask``."""
    left = members(mask)
    comps = []
    while left:
        stack, comp = [left[0]], 0
        while stack:
            k = stack.pop()
            if comp & subset([k]):
                continue
            comp |= subset([k])
            stack.extend(b for b in D.neighbours(k) if mask & subset([b]) and not comp & subset([b]))
        comps.append(comp)
        left = [k for k in left if not comp & subset([k])]
    return sorted(comps)


def _classify_component(D: DynkinDiagram, comp: int) -> tuple[str, int]:
    nodes = members(comp)
    n = len(nodes)
    prods = {}
    for i, j in combinations(nodes, 2):
        p = D.a(i, j) * D.a(j, i)
        if p:
            prods[(i, j)] = p
    if n == 1:
        return ("A", 1)
    if 3 in prods.values():
        return ("G", 2)
    deg = {k: sum(1 for e in prods if k in e) for k in nodes}
    multiple = [e for e, p in prods.items() if p == 2]
    if multiple:
        if n == 4:
            i, j = multiple[0]
            if deg[i] == 2 and deg[j] == 2:
                return ("F", 4)
        i, j = multiple[0]
        # long end: the node whose simple root is longer, i.e. a(long, short) = -1
        short = i if D.a(j, i) == -2 else j
        # in B_n the short root is the end node; in C_n the long root is
        return ("B", n) if deg[short] == 1 and n > 2 else ("C", n) if n > 2 else ("B", 2)
    branch = [k for k in nodes if deg[k] == 3]
    if not branch:
        return ("A", n)
    b = branch[0]
    arms = []
    for start in (k for k in nodes if (min(b, k), max(b, k)) in prods):
        length, prev, cur = 1, b, start
        while True:
            nxt = [k for k in nodes if k != prev and (min(cur, k), max(cur, k)) in prods]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", n)
    return ("E", n)


def component_types(D: DynkinDiagram, mask: int) -> list[tuple[str, int]]:
    return [_classify_component(D, c) for c in components(D, mask)]


def type_label(D: DynkinDiagram, mask: int | None = None) -> str:
    mask = D.full if mask is None else mask
    if not mask:
        return "empty"
    return "x".join(f"{f}{n}" for f, n in component_types(D, mask))


# --------------------------------------------------------------------------
# weights and coweights


class _Vec:
    __slots__ = ("coords",)

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("immutable")

    def coeff(self, node: int) -> Fraction:
        return self.coords[node - 1]

    def __add__(self, other):
        self._same(other)
        return type(self)(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._same(other)
        return type(self)(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return type(self)(-a for a in self.coords)

    def __mul__(self, k):
        return type(self)(a * k for a in self.coords)

    __rmul__ = __mul__

    def _same(self, other):
        if type(other) is not type(self) or len(other.coords) != len(self.coords):
            raise DomainError("vector type or dimension mismatch")

    def is_zero(self):
        return not any(self.coords)

    def support(self) -> int:
        return subset(k + 1 for k, c in enumerate(self.coords) if c)

    def __eq__(self, other):
        return type(other) is type(self) and other.coords == self.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def __repr__(self):
        return f"{type(self).__name__}({[str(c) for c in self.coords]})"


class WeightVec(_Vec):
    """Element of the rational weight space, in simple-root coordinates."""

    def format(self, letter="a") -> str:
        terms = []
        for k, c in enumerate(self.coords, 1):
            if c:
                terms.append(f"{letter}{k}" if c == 1 else f"{c}*{letter}{k}")
        return " + ".join(terms) or "0"


class CoweightVec(_Vec):
    """Element of the rational coweight space, in simple-coroot coordinates."""


def simple_root(D: DynkinDiagram, alpha: int) -> WeightVec:
    D.check_node(alpha)
    return WeightVec(int(k == alpha) for k in D.nodes)


def simple_coroot(D: DynkinDiagram, alpha: int) -> CoweightVec:
    D.check_node(alpha)
    return CoweightVec(int(k == alpha) for k in D.nodes)


def pairing(D: DynkinDiagram, c: CoweightVec, w: WeightVec) -> Fraction:
    """``<c, w>`` computed from ``<beta^vee, alpha> = a_{alpha beta}``."""
    if not isinstance(c, CoweightVec) or not isinstance(w, WeightVec):
        raise DomainError("pairing takes (CoweightVec, WeightVec)")
    if len(c.coords) != D.rank or len(w.coords) != D.rank:
        raise DomainError("dimension mismatch in pairing")
    total = Fraction(0)
    for b, cb in enumerate(c.coords):
        if cb:
            for a, wa in enumerate(w.coords):
                if wa:
                    total += cb * wa * D.cartan[a][b]
    return total


@lru_cache(maxsize=None)
def _sub_inverse(D: DynkinDiagram, mask: int):
    nodes = members(mask)
    return nodes, _inverse([[D.a(i, j) for j in nodes] for i in nodes])


def fundamental_weight(D: DynkinDiagram, I: int, alpha: int) -> WeightVec:
    """``varpi_alpha^I``: supported on I with ``<beta^vee, .> = delta`` for beta in I."""
    D.check_subset(I)
    if not I & subset([D.check_node(alpha)]):
        raise DomainError(f"node {alpha} not in subset {format_subset(I)}")
    nodes, inv = _sub_inverse(D, I)
    row = inv[nodes.index(alpha)]
    coords = [Fraction(0)] * D.rank
    for k, node in enumerate(nodes):
        coords[node - 1] = row[k]
    return WeightVec(coords)


def fundamental_coweight(D: DynkinDiagram, I: int, alpha: int) -> CoweightVec:
    """``varpi_alpha^{I vee}``: supported on I with ``<., beta> = delta`` for beta in I."""
    D.check_subset(I)
    if not I & subset([D.check_node(alpha)]):
        raise DomainError(f"node {alpha} not in subset {format_subset(I)}")
    nodes, inv = _sub_inverse(D, I)
    col = nodes.index(alpha)
    coords = [Fraction(0)] * D.rank
    for k, node in enumerate(nodes):
        coords[node - 1] = inv[k][col]
    return CoweightVec(coords)


def connection_index(D: DynkinDiagram, I: int) -> int:
    """Determinant of the Cartan submatrix on I (1 for the empty set)."""
    nodes = members(D.check_subset(I))
    if not nodes:
        return 1
    det = _det([[D.a(i, j) for j in nodes] for i in nodes])
    assert det.denominator == 1 and det > 0
    return int(det)


def _saturate(cartan_at, nodes, rank):
    """Positive roots (integer root coordinates) of the subsystem spanned by ``nodes``."""
    simple = [tuple(int(k == a) for k in range(1, rank + 1)) for a in nodes]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for a in nodes:
                # <a^vee, beta> = sum_g beta_g a_{g a}
                pair = sum(beta[g - 1] * cartan_at(g, a) for g in nodes)
                p, down = 0, list(beta)
                while True:
                    down[a - 1] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q = p - pair
                if q > 0:
                    up = list(beta)
                    up[a - 1] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(found, key=lambda r: (sum(r), tuple(-x for x in r)))


@lru_cache(maxsize=None)
def _positive_roots(D: DynkinDiagram, I: int):
    return tuple(_saturate(D.a, members(I), D.rank))


@lru_cache(maxsize=None)
def _positive_coroots(D: DynkinDiagram, I: int):
    # coroots of D are the roots of the dual system, whose Cartan matrix is the transpose
    return tuple(_saturate(lambda g, a: D.a(a, g), members(I), D.rank))


def positive_roots(D: DynkinDiagram, I: int | None = None) -> list[WeightVec]:
    I = D.full if I is None else D.check_subset(I)
    return [WeightVec(r) for r in _positive_roots(D, I)]


def positive_coroots(D: DynkinDiagram, I: int | None = None) -> list[CoweightVec]:
    I = D.full if I is None else D.check_subset(I)
    return [CoweightVec(r) for r in _positive_coroots(D, I)]


@lru_cache(maxsize=None)
def rho(D: DynkinDiagram, I: int | None = None) -> WeightVec:
    I = D.full if I is None else D.check_subset(I)
    half = WeightVec([0] * D.rank)
    for r in positive_roots(D, I):
        half = half + r
    half = half * Fraction(1, 2)
    total = WeightVec([0] * D.rank)
    for a in members(I):
        total = total + fundamental_weight(D, I, a)
    assert half == total, "half-sum of positive roots disagrees with sum of fundamental weights"
    return half


@lru_cache(maxsize=None)
def rho_check(D: DynkinDiagram, I: int | None = None) -> CoweightVec:
    I = D.full if I is None else D.check_subset(I)
    half = CoweightVec([0] * D.rank)
    for r in positive_coroots(D, I):
        half = half + r
    half = half * Fraction(1, 2)
    total = CoweightVec([0] * D.rank)
    for a in members(I):
        total = total + fundamental_coweight(D, I, a)
    assert half == total, "half-sum of positive coroots disagrees with sum of fundamental coweights"
    return half


def height(D: DynkinDiagram, lam: WeightVec) -> Fraction:
    """Sum of simple-root coordinates, cross-checked against ``<rho^vee, lam>``."""
    ht = sum(lam.coords, Fraction(0))
    assert ht == pairing(D, rho_check(D), lam)
    return ht
