"""Fusion rings and dimensions of untwisted conformal blocks at any genus.

``block_dim(ring, g, labels)`` is computed from the fusion rules alone using
the two factorization rules

* handle:  N(g; W) = sum_M N(g-1; W, M, M')
* pants:   N(0; a, b, W) = sum_M N(0; a, b, M) * N(0; W, M')

with base cases

* N(0; a, b, c) = N_ab^{c'}
* N(0; a, b)    = [b == a']
* N(0; a)       = [a == unit]   (vacuum insertion applied to the two-point case)
* N(0; )        = 1, and N(g; ) = N(g; unit) for g >= 1.

Results are memoised on ``(genus, sorted labels)``; arithmetic is on Python
integers so nothing overflows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import BadLabel, InvalidRing


class Violation(NamedTuple):
    axiom: str
    witness: tuple
    detail: str

    def __str__(self):
        return f"{self.axiom} at {self.witness}: {self.detail}"


class GenusQuery(NamedTuple):
    genus: int
    insertions: tuple[int, ...]


@dataclass(frozen=True)
class FusionRing:
    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    coeffs: Mapping[tuple[int, int, int], int] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dual", tuple(self.dual))
        object.__setattr__(self, "coeffs", {k: v for k, v in dict(self.coeffs).items() if v != 0})

    @classmethod
    def from_products(cls, labels: Sequence[str], unit: str, dual: Mapping[str, str],
                      products: Mapping[tuple[str, str], Mapping[str, int]]) -> "FusionRing":
        """Build from names. ``dual`` lists non-self-dual labels; ``products`` is
        filled in commutatively."""
        idx = {name: i for i, name in enumerate(labels)}
        duals = list(range(len(labels)))
        for a, b in dual.items():
            duals[idx[a]] = idx[b]
            duals[idx[b]] = idx[a]
        coeffs = {}
        for (a, b), out in products.items():
            for c, n in out.items():
                coeffs[idx[a], idx[b], idx[c]] = n
                coeffs[idx[b], idx[a], idx[c]] = n
        return cls(tuple(labels), idx[unit], tuple(duals), coeffs)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def N(self, a: int, b: int, c: int) -> int:
        return self.coeffs.get((a, b, c), 0)

    def index(self, label) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.rank:
                raise BadLabel(f"label index {label} out of range 0..{self.rank - 1}")
            return label
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise BadLabel(f"unknown label {label!r}; ring has {list(self.labels)}") from None

    @cached_property
    def violations(self) -> list[Violation]:
        return validate_ring(self)

    def require_valid(self):
        if self.violations:
            raise InvalidRing(self.violations)

    @cached_property
    def _solver(self):
        return _make_solver(self)


def validate_ring(ring: FusionRing) -> list[Violation]:
    """Check every fusion-ring axiom; an empty list means the ring is valid."""
    out: list[Violation] = []
    n = len(ring.labels)
    if n == 0:
        return [Violation("nonempty", (), "ring has no labels")]
    if len(set(ring.labels)) != n:
        out.append(Violation("distinct labels", (), "label names repeat"))
    if not 0 <= ring.unit < n:
        return out + [Violation("unit", (ring.unit,), "unit index out of range")]
    if len(ring.dual) != n or any(not 0 <= d < n for d in ring.dual):
        return out + [Violation("dual", (), "dual map is not a map on the labels")]
    for (a, b, c), v in ring.coeffs.items():
        if not all(0 <= x < n for x in (a, b, c)):
            return out + [Violation("coefficient index", (a, b, c), "label index out of range")]
        if not isinstance(v, int) or v < 0:
            out.append(Violation("nonnegative integer", (a, b, c), f"coefficient {v!r}"))

    L = ring.labels
    dual, unit, N = ring.dual, ring.unit, ring.N
    for a in range(n):
        if dual[dual[a]] != a:
            out.append(Violation("dual involution", (L[a],), f"dual(dual({L[a]})) = {L[dual[dual[a]]]}"))
    if dual[unit] != unit:
        out.append(Violation("dual involution", (L[unit],), "unit is not self-dual"))
    for a, b in itertools.product(range(n), repeat=2):
        want = int(a == b)
        if N(unit, a, b) != want:
            out.append(Violation("unit", (L[a], L[b]), f"N_1{L[a]}^{L[b]} = {N(unit, a, b)}, expected {want}"))
        want = int(b == dual[a])
        if N(a, b, unit) != want:
            out.append(Violation("duality", (L[a], L[b]), f"N_{L[a]}{L[b]}^1 = {N(a, b, unit)}, expected {want}"))
    for a, b, c in itertools.product(range(n), repeat=3):
        if N(a, b, c) != N(b, a, c):
            out.append(Violation("commutativity", (L[a], L[b], L[c]), f"{N(a, b, c)} != {N(b, a, c)}"))
        frob = N(a, dual[c], dual[b])
        if N(a, b, c) != frob:
            out.append(Violation("Frobenius symmetry", (L[a], L[b], L[c]), f"{N(a, b, c)} != {frob}"))
    for a, b, c, d in itertools.product(range(n), repeat=4):
        lhs = sum(N(a, b, e) * N(e, c, d) for e in range(n))
        rhs = sum(N(b, c, e) * N(a, e, d) for e in range(n))
        if lhs != rhs:
            out.append(Violation("associativity", (L[a], L[b], L[c], L[d]), f"{lhs} != {rhs}"))
    return out


def _make_solver(ring: FusionRing):
    n = ring.rank
    unit, dual, N = ring.unit, ring.dual, ring.N
    labels = range(n)

    @lru_cache(maxsize=None)
    def solve(genus: int, ins: tuple[int, ...]) -> int:
        if genus > 0:
            if not ins:
                ins = (unit,)
            return sum(solve(genus - 1, tuple(sorted(ins + (m, dual[m])))) for m in labels)
        k = len(ins)
        if k == 0:
            return 1
        if k == 1:
            return int(ins[0] == unit)
        if k == 2:
            return int(ins[1] == dual[ins[0]])
        if k == 3:
            return N(ins[0], ins[1], dual[ins[2]])
        a, b, rest = ins[0], ins[1], ins[2:]
        total = 0
        for m in labels:
            left = N(a, b, dual[m])
            if left:
                total += left * solve(0, tuple(sorted(rest + (dual[m],))))
        return total

    return solve


def block_dim(ring: FusionRing, genus: int, insertions: Iterable = ()) -> int:
    """Dimension of the space of conformal blocks on a genus-``genus`` surface."""
    ring.require_valid()
    if not isinstance(genus, int) or genus < 0:
        raise ValueError(f"genus must be a nonnegative integer, got {genus!r}")
    key = tuple(sorted(ring.index(x) for x in insertions))
    return ring._solver(genus, key)


def fusion_table(ring: FusionRing) -> list[tuple[int, int, list[tuple[int, int]]]]:
    """Rows ``(a, b, [(c, N_ab^c), ...])`` for every ordered pair, in label order."""
    ring.require_valid()
    n = ring.rank
    return [
        (a, b, [(c, ring.N(a, b, c)) for c in range(n) if ring.N(a, b, c)])
        for a in range(n)
        for b in range(n)
    ]


def render_fusion_table(ring: FusionRing) -> str:
    L = ring.labels
    rows = []
    for a, b, out in fusion_table(ring):
        terms = " + ".join(L[c] if v == 1 else f"{v}*{L[c]}" for c, v in out) or "0"
        rows.append((f"{L[a]} x {L[b]}", terms))
    width = max(len(r[0]) for r in rows)
    return "\n".join(f"{lhs.ljust(width)} = {rhs}" for lhs, rhs in rows) + "\n"
