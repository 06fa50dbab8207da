"""Permutations of {1, ..., n} and the group machinery the deformation
checks are built on: cycle-notation parsing, conjugation, centralizers,
factorization pairs, and diagonal-conjugation orbits.

Conventions (these are load-bearing and pinned by regression tests):

- Points are 1-based.
- A permutation is stored in one-line form: ``img[i-1]`` is the image of ``i``.
- Products compose right-to-left, i.e. ``(x * y)(i) = x(y(i))``; in a string
  of cycles the rightmost cycle acts first, so ``(1 2 3)(3 4 5)`` is the
  5-cycle ``(1 2 3 4 5)``.
- ``conjugate(h, g)`` is ``h g h^{-1}``, which relabels the cycles of ``g``
  by ``h``.
"""
from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


def max_degree() -> int:
    """Largest permutation degree the enumerative helpers accept.

    Everything here is exact and exhaustive, so group enumeration grows like
    n!.  The default bound of 8 covers every computation the package needs;
    it can be raised with the PERMDEFORM_MAX_N environment variable.
    """
    return int(os.environ.get("PERMDEFORM_MAX_N", "8"))


def _check_degree(n: int) -> None:
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    if n > max_degree():
        raise ValueError(
            f"degree {n} exceeds the configured bound {max_degree()} "
            "(set PERMDEFORM_MAX_N to raise it)"
        )


class Perm:
    """A permutation of {1, ..., n} in one-line notation.

    >>> g = Perm.from_cycles([(1, 2, 3)], 5)
    >>> g(1), g(3), g(4)
    (2, 1, 4)
    >>> str(g)
    '(1 2 3)'
    """

    __slots__ = ("img", "_hash")

    def __init__(self, img: Sequence[int]):
        img = tuple(img)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"not a permutation of 1..{len(img)}: {img}")
        self.img = img
        self._hash = hash(img)

    # -- basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.img)

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(range(1, n + 1))

    @staticmethod
    def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> "Perm":
        """Product of the given cycles, rightmost cycle acting first."""
        result = Perm.identity(n)
        for cycle in cycles:
            img = list(range(1, n + 1))
            for pos, point in enumerate(cycle):
                if not 1 <= point <= n:
                    raise ValueError(f"cycle entry {point} out of range 1..{n}")
                img[point - 1] = cycle[(pos + 1) % len(cycle)]
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated entry in cycle {tuple(cycle)}")
            result = result * Perm(img)
        return result

    def __call__(self, i: int) -> int:
        return self.img[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        simg = self.img
        return Perm(tuple(simg[j - 1] for j in other.img))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.img, start=1):
            inv[j - 1] = i
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.img == other.img

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Perm") -> bool:
        return self.img < other.img

    # -- cycle structure ---------------------------------------------------

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.img, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length >= 2, each starting at its least point,
        ordered by least point."""
        seen = [False] * self.n
        out = []
        for i in range(1, self.n + 1):
            if seen[i - 1]:
                continue
            cyc = [i]
            seen[i - 1] = True
            j = self(i)
            while j != i:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Partition of n listing all cycle lengths (fixed points included),
        in decreasing order."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.n - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def support(self) -> frozenset[int]:
        return frozenset(i for i in range(1, self.n + 1) if self(i) != i)

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self(i) == i)

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Perm[{self}; n={self.n}]"


def conjugate(h: Perm, g: Perm) -> Perm:
    """h g h^{-1}: the cycles of g with every point relabelled by h.

    >>> h = Perm.from_cycles([(1, 4)], 4)
    >>> g = Perm.from_cycles([(1, 2, 3)], 4)
    >>> str(conjugate(h, g))
    '(2 3 4)'
    """
    img = [0] * g.n
    for i in range(1, g.n + 1):
        img[h(i) - 1] = h(g(i))
    return Perm(img)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int) -> Perm:
    """Parse cycle notation into a permutation of {1, ..., n}.

    Cycles may share points; the rightmost cycle acts first.  The identity
    may be written ``()``, ``e``, ``id`` or ``1``.

    >>> str(parse_perm("(1 2)(1 3)", 3))
    '(1 3 2)'
    >>> str(parse_perm("(1 2 3)(3 4 5)", 5))
    '(1 2 3 4 5)'
    """
    _check_degree(n)
    stripped = text.strip()
    if stripped in ("()", "e", "id", "1", ""):
        return Perm.identity(n)
    body = stripped.replace(",", " ")
    matches = list(_CYCLE_RE.finditer(body))
    if not matches:
        raise ValueError(f"cannot parse permutation {text!r}")
    consumed = "".join(m.group(0) for m in matches)
    if consumed.replace(" ", "") != body.replace(" ", ""):
        raise ValueError(f"stray characters in permutation {text!r}")
    cycles = []
    for m in matches:
        entries = m.group(1).split()
        if not entries:
            continue
        try:
            cycles.append(tuple(int(e) for e in entries))
        except ValueError as exc:
            raise ValueError(f"bad cycle entry in {text!r}") from exc
    return Perm.from_cycles(cycles, n)


# -- enumeration ------------------------------------------------------------


def symmetric_group(n: int) -> Iterator[Perm]:
    """All n! permutations, streamed in lexicographic one-line order."""
    _check_degree(n)
    for img in itertools.permutations(range(1, n + 1)):
        yield Perm(img)


def cycles_of_length(n: int, k: int) -> list[Perm]:
    """All k-cycles in S_n, sorted by one-line form."""
    _check_degree(n)
    out = []
    for support in itertools.combinations(range(1, n + 1), k):
        first = support[0]
        for rest in itertools.permutations(support[1:]):
            out.append(Perm.from_cycles([(first,) + rest], n))
    out.sort()
    return out


def three_cycles(n: int) -> list[Perm]:
    return cycles_of_length(n, 3)


def five_cycles(n: int) -> list[Perm]:
    return cycles_of_length(n, 5) if n >= 5 else []


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n in descending lexicographic order ((n,) first)."""
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], remaining: int, cap: int) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), 0, -1):
            extend(prefix + [part], remaining - part, part)

    extend([], n, n)
    return out


def centralizer_order(partition: Sequence[int], n: int) -> int:
    """Order of the centralizer of an element of the given cycle type,
    computed from the standard product formula."""
    assert sum(partition) == n
    counts: dict[int, int] = {}
    for part in partition:
        counts[part] = counts.get(part, 0) + 1
    order = 1
    for length, count in counts.items():
        order *= length**count * math.factorial(count)
    return order


@dataclass(frozen=True)
class ConjClass:
    """One conjugacy class of S_n: cycle type, canonical representative
    (consecutive points), and class size."""

    partition: tuple[int, ...]
    rep: Perm
    size: int

    @property
    def name(self) -> str:
        return "+".join(map(str, self.partition))


def conjugacy_classes(n: int) -> list[ConjClass]:
    """All conjugacy classes of S_n, ordered by descending-lex cycle type
    (so the n-cycle class comes first and the identity last)."""
    _check_degree(n)
    out = []
    for partition in partitions(n):
        cycles = []
        start = 1
        for part in partition:
            if part > 1:
                cycles.append(tuple(range(start, start + part)))
            start += part
        rep = Perm.from_cycles(cycles, n)
        size = math.factorial(n) // centralizer_order(partition, n)
        out.append(ConjClass(partition, rep, size))
    return out


# -- subgroups & centralizers ------------------------------------------------

_CLOSURE_CAP = 100_000


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of S_n, materialized as a sorted element tuple."""

    n: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    _members: frozenset[Perm] = field(repr=False, compare=False, default=frozenset())

    @staticmethod
    def generated(generators: Iterable[Perm], n: int, cap: int = _CLOSURE_CAP) -> "Subgroup":
        gens = tuple(generators)
        if not gens:
            gens = (Perm.identity(n),)
        seen = {Perm.identity(n)}
        frontier = [Perm.identity(n)]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    hg = h * g
                    if hg not in seen:
                        seen.add(hg)
                        nxt.append(hg)
                        if len(seen) > cap:
                            raise ValueError(f"subgroup closure exceeded cap {cap}")
            frontier = nxt
        elements = tuple(sorted(seen))
        return Subgroup(n, gens, elements, frozenset(elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._members

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)


def centralizer(g: Perm) -> Subgroup:
    """The centralizer Z(g) in S_n, materialized.

    Generators: each cycle of g, a swap between each pair of consecutive
    equal-length cycles, and the symmetric group on the fixed points.  The
    closure is cross-checked against the product formula for |Z(g)|.

    For the identity this materializes all of S_n, which is refused for
    n > 6; stream ``symmetric_group(n)`` instead.
    """
    n = g.n
    _check_degree(n)
    if g.is_identity() and n > 6:
        raise ValueError(
            "refusing to materialize the full symmetric group for n > 6; "
            "use symmetric_group(n) to stream it"
        )
    gens: list[Perm] = []
    cycles = g.cycles()
    for cyc in cycles:
        gens.append(Perm.from_cycles([cyc], n))
    by_length: dict[int, list[tuple[int, ...]]] = {}
    for cyc in cycles:
        by_length.setdefault(len(cyc), []).append(cyc)
    for same_length in by_length.values():
        for left, right in zip(same_length, same_length[1:]):
            gens.append(Perm.from_cycles([(a, b) for a, b in zip(left, right)], n))
    fixed = g.fixed_points()
    if len(fixed) >= 2:
        gens.append(Perm.from_cycles([fixed[:2]], n))
    if len(fixed) >= 3:
        gens.append(Perm.from_cycles([fixed], n))
    sub = Subgroup.generated(gens, n)
    expected = centralizer_order(g.cycle_type(), n)
    if sub.order != expected:
        raise AssertionError(
            f"centralizer closure of {g} has order {sub.order}, expected {expected}"
        )
    return sub


# -- factorizations and orbits ------------------------------------------------


def factor_pairs(g: Perm, xs: Iterable[Perm], ys: Iterable[Perm]) -> list[tuple[Perm, Perm]]:
    """All pairs (x, y) with x in xs, y in ys and x*y = g, sorted by x."""
    yset = set(ys)
    out = []
    for x in sorted(xs):
        y = x.inverse() * g
        if y in yset:
            out.append((x, y))
    return out


def diag_conj_orbit(subgroup: Subgroup, pair: tuple[Perm, Perm]) -> list[tuple[Perm, Perm]]:
    """Orbit of (x, y) under simultaneous conjugation by the subgroup,
    sorted."""
    x, y = pair
    orbit = {(conjugate(h, x), conjugate(h, y)) for h in subgroup}
    return sorted(orbit)


@dataclass(frozen=True)
class OrbitDecomposition:
    """Factor pairs of g split into diagonal-conjugation orbits of H."""

    g: Perm
    subgroup: Subgroup
    orbits: tuple[tuple[tuple[Perm, Perm], ...], ...]
    reps: tuple[tuple[Perm, Perm], ...]


def orbit_decomposition(
    g: Perm,
    xs: Iterable[Perm],
    ys: Iterable[Perm],
    subgroup: Subgroup,
    check: bool = True,
) -> OrbitDecomposition:
    """Split the factor pairs of g into H-orbits under diagonal conjugation.

    With ``check=True`` this validates the hypotheses under which orbit sums
    certify a full vanishing statement: H centralizes g, and for each orbit
    representative (x, y) the joint centralizer K = Z(x) ∩ Z(y) normalizes H.
    """
    pairs = factor_pairs(g, xs, ys)
    if check:
        for h in subgroup.generators:
            if conjugate(h, g) != g:
                raise ValueError(f"subgroup generator {h} does not centralize {g}")
    remaining = set(pairs)
    orbits = []
    for pair in pairs:
        if pair not in remaining:
            continue
        orbit = diag_conj_orbit(subgroup, pair)
        orbits.append(tuple(orbit))
        remaining -= set(orbit)
    orbits.sort(key=lambda orb: orb[0])
    reps = tuple(orb[0] for orb in orbits)
    if check:
        members = set(subgroup.elements)
        for x, y in reps:
            joint = [k for k in centralizer(x) if k * y == y * k]
            for k in joint:
                if any(conjugate(k, h) not in members for h in subgroup.generators):
                    raise ValueError(
                        f"Z(x) ∩ Z(y) for (x, y) = ({x}, {y}) does not normalize H"
                    )
    return OrbitDecomposition(g, subgroup, tuple(orbits), reps)


def fixed_space_membership(g: Perm, coords: Sequence) -> bool:
    """Whether the vector with the given coordinates lies in the fixed space
    V^g, i.e. is constant on the cycles of g.  Coordinates may be any values
    with equality (Fractions, polynomials, ...)."""
    if len(coords) != g.n:
        raise ValueError("coordinate length must equal the degree")
    return all(coords[g(i) - 1] == coords[i - 1] for i in range(1, g.n + 1))


def orbit_sums(g: Perm) -> list[tuple[int, ...]]:
    """The cycles of g on points, fixed points included, each sorted; these
    index the standard basis of the fixed space V^g."""
    seen = [False] * g.n
    out = []
    for i in range(1, g.n + 1):
        if seen[i - 1]:
            continue
        orbit = [i]
        seen[i - 1] = True
        j = g(i)
        while j != i:
            orbit.append(j)
            seen[j - 1] = True
            j = g(j)
        out.append(tuple(sorted(orbit)))
    return out


def triple_orbits(subgroup: Subgroup, n: int) -> list[list[tuple[int, int, int]]]:
    """Orbits of the subgroup on 3-element subsets of {1, ..., n}, each orbit
    sorted, orbits ordered by least element."""
    remaining = set(itertools.combinations(range(1, n + 1), 3))
    orbits = []
    while remaining:
        seed = min(remaining)
        orbit = {tuple(sorted((h(seed[0]), h(seed[1]), h(seed[2])))) for h in subgroup}
        orbits.append(sorted(orbit))
        remaining -= orbit
    orbits.sort(key=lambda orb: orb[0])
    return orbits


__all__ = [
    "Perm",
    "Subgroup",
    "ConjClass",
    "OrbitDecomposition",
    "parse_perm",
    "conjugate",
    "symmetric_group",
    "cycles_of_length",
    "three_cycles",
    "five_cycles",
    "partitions",
    "centralizer_order",
    "conjugacy_classes",
    "centralizer",
    "factor_pairs",
    "diag_conj_orbit",
    "orbit_decomposition",
    "fixed_space_membership",
    "orbit_sums",
    "triple_orbits",
    "max_degree",
]
