"""Permutations of a finite index set, cycle notation, orbits and word evaluation.

Conventions used everywhere in the package:

* elements are the integers ``0..n-1`` internally; text interfaces use
  1-based integers or the display names of an :class:`IndexSet`;
* composition is a left action, ``compose(a, b)(e) == a(b(e))``, and
  ``a * b`` means the same thing;
* a word ``[(j1, k1), (j2, k2), ...]`` evaluates to
  ``gens[j1]**k1 * gens[j2]**k2 * ...``, read left to right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import (
    BadGeneratorIndex,
    GroundMismatch,
    MalformedSyntax,
    RepeatedElement,
    UnknownElement,
)

_NAME_RE = re.compile(r"[^\s(),]+")


@dataclass(frozen=True)
class IndexSet:
    """The finite set E, of ``size`` elements, with optional display names."""

    size: int
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"index set size must be a positive integer, got {self.size!r}")
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            object.__setattr__(self, "names", names)
            if len(names) != self.size:
                raise ValueError(f"{len(names)} names given for a set of size {self.size}")
            if len(set(names)) != len(names):
                raise ValueError("display names must be pairwise distinct")
            for n in names:
                if not _NAME_RE.fullmatch(n):
                    raise ValueError(f"display name {n!r} may not contain whitespace, commas or parentheses")

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def name(self, i: int) -> str:
        if self.names is not None:
            return self.names[i]
        return str(i + 1)

    def index(self, token) -> int:
        """Resolve a display name or 1-based integer to a 0-based index."""
        text = str(token).strip()
        if self.names is not None:
            try:
                return self.names.index(text)
            except ValueError:
                raise UnknownElement(f"{text!r} is not an element of the ground set") from None
        if not re.fullmatch(r"[0-9]+", text):
            raise UnknownElement(f"{text!r} is not a 1-based element index")
        i = int(text) - 1
        if not 0 <= i < self.size:
            raise UnknownElement(f"element {text} is outside 1..{self.size}")
        return i


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``range(n)``, stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of 0..{len(images) - 1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 0-based cycles; unmentioned elements are fixed."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for k, e in enumerate(cyc):
                if e in seen:
                    raise RepeatedElement(f"element {e + 1} appears more than once")
                if not 0 <= e < n:
                    raise UnknownElement(f"element {e + 1} is outside 1..{n}")
                seen.add(e)
                images[e] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    def __len__(self):
        return len(self.images)

    def __call__(self, e: int) -> int:
        return self.images[e]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        n = len(self.images)
        images = [0] * n
        for cyc in self.cycles(include_fixed=True):
            m = len(cyc)
            for pos, e in enumerate(cyc):
                images[e] = cyc[(pos + k) % m]
        return Permutation(tuple(images))

    def __str__(self):
        return format_cycles(self)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for e, img in enumerate(self.images):
            inv[img] = e
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(e == img for e, img in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycles, each starting at its minimum, sorted by minimum."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc = []
            e = start
            while not seen[e]:
                seen[e] = True
                cyc.append(e)
                e = self.images[e]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def conjugate(self, s: "Permutation") -> "Permutation":
        """``s^-1 * self * s``."""
        return compose(s.inverse(), compose(self, s))


GroupWord = tuple[tuple[int, int], ...]
"""A word in the generators: ``((j, exponent), ...)`` with nonzero exponents."""


def word(*letters: tuple[int, int]) -> GroupWord:
    for j, k in letters:
        if k == 0:
            raise ValueError(f"letter ({j}, {k}) has zero exponent")
    return tuple((int(j), int(k)) for j, k in letters)


def _check_same_ground(*perms: Permutation) -> int:
    sizes = {len(p) for p in perms}
    if len(sizes) > 1:
        raise GroundMismatch(f"permutations act on sets of different sizes {sorted(sizes)}")
    return sizes.pop() if sizes else 0


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a o b)(e) = a(b(e))``."""
    _check_same_ground(a, b)
    ai = a.images
    return Permutation(tuple(ai[x] for x in b.images))


def product(perms: Sequence[Permutation], n: Optional[int] = None) -> Permutation:
    """Ordered product ``perms[0] o perms[1] o ...``; identity when empty."""
    if not perms:
        if n is None:
            raise ValueError("size needed for an empty product")
        return Permutation.identity(n)
    _check_same_ground(*perms)
    images = list(range(len(perms[0])))
    # apply right to left: images[e] = p0(p1(...(e)))
    for p in reversed(perms):
        pi = p.images
        images = [pi[x] for x in images]
    return Permutation(tuple(images))


def parse_cycles(text: str, ground: IndexSet) -> Permutation:
    """Parse cycle notation such as ``"(1 2 3)(4 5)"``, ``"(a,b)"``, ``"id"`` or ``"()"``.

    Grammar::

        perm  := "id" | "()" | cycle+
        cycle := "(" elem (sep elem)+ ")"
        sep   := whitespace | ","

    Whitespace between and inside cycles is ignored.
    """
    s = text.strip()
    if s == "id" or re.fullmatch(r"\(\s*\)", s):
        return Permutation.identity(ground.size)
    if not s:
        raise MalformedSyntax("empty permutation text; use 'id' or '()' for the identity")
    cycles = []
    pos = 0
    cycle_re = re.compile(r"\s*\(([^()]*)\)\s*")
    while pos < len(s):
        m = cycle_re.match(s, pos)
        if not m:
            raise MalformedSyntax(f"expected '(' at position {pos} in {text!r}")
        inner = m.group(1).strip()
        tokens = re.split(r"\s*,\s*|\s+", inner) if inner else []
        if any(t == "" for t in tokens):
            raise MalformedSyntax(f"empty element in cycle ({m.group(1)})")
        if len(tokens) < 2:
            raise MalformedSyntax(f"cycle ({m.group(1)}) needs at least two elements")
        cycles.append([ground.index(t) for t in tokens])
        pos = m.end()
    return Permutation.from_cycles(ground.size, cycles)


def format_cycles(perm: Permutation, ground: Optional[IndexSet] = None) -> str:
    """Inverse of :func:`parse_cycles`; identity renders as ``"()"``."""
    if ground is None:
        ground = IndexSet(len(perm))
    elif ground.size != len(perm):
        raise GroundMismatch(f"permutation of size {len(perm)} on ground of size {ground.size}")
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(ground.name(e) for e in c) + ")" for c in cycles)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def groups(self) -> list[list[int]]:
        """Classes as sorted lists, ordered by minimum element."""
        by_root: dict[int, list[int]] = {}
        for e in range(len(self.parent)):
            by_root.setdefault(self.find(e), []).append(e)
        return sorted(by_root.values(), key=lambda g: g[0])


def orbits(gens: Sequence[Permutation], ground) -> list[list[int]]:
    """Orbits of the group generated by ``gens`` on the ground set.

    ``ground`` is an :class:`IndexSet` or a plain size.
    """
    n = ground.size if isinstance(ground, IndexSet) else int(ground)
    for g in gens:
        if len(g) != n:
            raise GroundMismatch(f"generator of size {len(g)} on ground of size {n}")
    uf = UnionFind(n)
    for g in gens:
        for e, img in enumerate(g.images):
            uf.union(e, img)
    return uf.groups()


def eval_word(w: Iterable[tuple[int, int]], gens: Sequence[Permutation], n: Optional[int] = None) -> Permutation:
    """Evaluate a word in ``gens``; the empty word gives the identity."""
    factors = []
    for j, k in w:
        if not 0 <= j < len(gens):
            raise BadGeneratorIndex(f"generator index {j} out of range for {len(gens)} generators")
        factors.append(gens[j] ** k)
    if n is None and gens:
        n = len(gens[0])
    return product(factors, n)

