"""Group-graded 2- and 3-cochains on S_n with values in S(V).

A 2-cochain assigns to each group element g an alternating bilinear map
V x V -> S(V) of polynomial degree <= 1; a g-component together with its
group tag is written kappa_g (x) g.  Only pairs (i, j) with i < j are
stored; the accessor applies the alternation sign.  3-cochains are the
analogous alternating trilinear maps with values of degree <= 2 (they
arise as obstructions, not as deformation data).

The ``kind`` of a 2-cochain records whether its values are homogeneous
linear forms (``linear``, the kappa^L family), constants (``constant``,
the kappa^C family), or a mixture (``mixed``, arising only from sums).

Constructors cover the parameter maps of the classification:

- :func:`kappa_L1` -- supported at the identity: (e_i, e_j) -> a1 (e_i - e_j).
- :func:`kappa_L_tri` -- supported on 3-cycles; on the cyclic pairs of
  g = (i j k) the value is a (e_i + e_j + e_k) + b (sum of the other e_l),
  and any pair meeting the fixed space V^g is sent to zero.
- :func:`kappa_C_tri` -- the constant companion: the same support and
  vanishing rule, with constant value c on the cyclic pairs.
- :func:`kappa_C_penta` -- supported on 5-cycles; values are the entries
  of the matrix (a-b)^2 ([g] - [g]^T - 2 [g^2] + 2 [g^2]^T), where [g] is
  the permutation matrix with [g]_{ij} = 1 iff g(j) = i.  This convention
  makes kappa_g(e_i, g.e_i) = -(a-b)^2 and kappa_g(e_i, g^2.e_i) = 2(a-b)^2.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .algebra import (
    ParamPoly,
    PolyElem,
    Scalar,
    SkewElem,
    Vect,
    act,
    as_parampoly,
    nullspace,
    parse_polyelem,
)
from .perms import Perm, conjugate, parse_perm, three_cycles, cycles_of_length

KINDS = ("linear", "constant", "mixed")


def _pair_sign(i: int, j: int) -> int:
    if i == j:
        return 0
    return 1 if i < j else -1


def _triple_sign(i: int, j: int, k: int) -> int:
    if len({i, j, k}) < 3:
        return 0
    sign = 1
    for x, y in ((i, j), (i, k), (j, k)):
        if x > y:
            sign = -sign
    return sign


class TwoCochain:
    """An alternating 2-cochain: components kappa_g stored on pairs i < j."""

    __slots__ = ("_n", "_kind", "_components")

    def __init__(
        self,
        n: int,
        components: Mapping[Perm, Mapping[tuple[int, int], PolyElem | Scalar]] | None = None,
        kind: str | None = None,
    ):
        if n < 1:
            raise ValueError("degree must be at least 1")
        self._n = n
        clean: dict[Perm, dict[tuple[int, int], PolyElem]] = {}
        has_linear = has_constant = False
        for g, comp in (components or {}).items():
            if g.n != n:
                raise ValueError("degree mismatch between group element and cochain")
            bucket: dict[tuple[int, int], PolyElem] = {}
            for (i, j), value in comp.items():
                if not isinstance(value, PolyElem):
                    value = PolyElem.const(n, value)
                elif value.n != n:
                    raise ValueError("degree mismatch in cochain value")
                sign = _pair_sign(i, j)
                if sign == 0:
                    if value:
                        raise ValueError(f"nonzero value on the diagonal pair ({i}, {j})")
                    continue
                if sign < 0:
                    i, j, value = j, i, -value
                total = bucket.get((i, j), PolyElem.zero(n)) + value
                if total:
                    bucket[(i, j)] = total
                else:
                    bucket.pop((i, j), None)
            for value in bucket.values():
                for mono in value.terms:
                    if len(mono) > 1:
                        raise ValueError(f"2-cochain value of degree > 1: {value}")
                    if len(mono) == 1:
                        has_linear = True
                    else:
                        has_constant = True
            if bucket:
                clean[g] = bucket
        self._components = clean
        inferred = (
            "mixed"
            if has_linear and has_constant
            else "linear"
            if has_linear
            else "constant"
        )
        if kind is None:
            kind = inferred
        elif kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
        elif clean and kind != "mixed" and kind != inferred:
            raise ValueError(f"declared kind {kind!r} but values are {inferred}")
        self._kind = kind

    # -- queries ---------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def kind(self) -> str:
        return self._kind

    def components(self) -> dict[Perm, dict[tuple[int, int], PolyElem]]:
        return {g: dict(comp) for g, comp in self._components.items()}

    def component(self, g: Perm) -> dict[tuple[int, int], PolyElem]:
        return dict(self._components.get(g, {}))

    def value(self, g: Perm, i: int, j: int) -> PolyElem:
        """kappa_g(e_i, e_j), with the alternation sign applied."""
        sign = _pair_sign(i, j)
        if sign == 0:
            return PolyElem.zero(self._n)
        key = (i, j) if sign > 0 else (j, i)
        stored = self._components.get(g, {}).get(key)
        if stored is None:
            return PolyElem.zero(self._n)
        return stored if sign > 0 else -stored

    def support(self) -> tuple[Perm, ...]:
        return tuple(sorted(self._components))

    def is_zero(self) -> bool:
        return not self._components

    def __bool__(self) -> bool:
        return bool(self._components)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: "TwoCochain") -> "TwoCochain":
        if not isinstance(other, TwoCochain):
            return NotImplemented
        if self._n != other._n:
            raise ValueError("degree mismatch")
        merged: dict[Perm, dict[tuple[int, int], PolyElem]] = {
            g: dict(comp) for g, comp in self._components.items()
        }
        for g, comp in other._components.items():
            bucket = merged.setdefault(g, {})
            for pair, value in comp.items():
                bucket[pair] = bucket.get(pair, PolyElem.zero(self._n)) + value
        return TwoCochain(self._n, merged)

    def __sub__(self, other: "TwoCochain") -> "TwoCochain":
        return self + (-other)

    def __neg__(self) -> "TwoCochain":
        return self * -1

    def __mul__(self, scalar: Scalar) -> "TwoCochain":
        scalar = as_parampoly(scalar)
        components = {
            g: {pair: value * scalar for pair, value in comp.items()}
            for g, comp in self._components.items()
        }
        return TwoCochain(self._n, components, kind=self._kind if scalar else None)

    __rmul__ = __mul__

    def substitute(self, values: Mapping[str, Fraction | int]) -> "TwoCochain":
        components = {
            g: {pair: value.substitute(values) for pair, value in comp.items()}
            for g, comp in self._components.items()
        }
        return TwoCochain(self._n, components)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TwoCochain)
            and self._n == other._n
            and self._components == other._components
        )

    def __str__(self) -> str:
        if not self._components:
            return "0"
        pieces = []
        for g in self.support():
            for (i, j), value in sorted(self._components[g].items()):
                body = str(value) if len(value.terms) == 1 else f"({value})"
                pieces.append(f"[{g}; e{i},e{j}] {body}")
        return "  ".join(pieces)

    def __repr__(self) -> str:
        return f"<TwoCochain n={self._n} kind={self._kind} support={len(self._components)}>"

    # -- serialization ---------------------------------------------------------------

    def to_json(self) -> dict:
        """The documented JSON form (values in canonical rendering)."""
        return {
            "n": self._n,
            "kind": self._kind,
            "components": [
                {
                    "g": str(g),
                    "entries": [
                        {"i": i, "j": j, "value": str(value)}
                        for (i, j), value in sorted(self._components[g].items())
                    ],
                }
                for g in self.support()
            ],
        }

    @staticmethod
    def from_json(data: Mapping) -> "TwoCochain":
        n = int(data["n"])
        components: dict[Perm, dict[tuple[int, int], PolyElem]] = {}
        for item in data.get("components", []):
            g = parse_perm(item["g"], n)
            components[g] = {
                (int(e["i"]), int(e["j"])): parse_polyelem(e["value"], n)
                for e in item["entries"]
            }
        return TwoCochain(n, components, kind=data.get("kind"))


class ThreeCochain:
    """An alternating 3-cochain: components stored on triples i < j < k."""

    __slots__ = ("_n", "_components")

    def __init__(
        self,
        n: int,
        components: Mapping[Perm, Mapping[tuple[int, int, int], PolyElem | Scalar]] | None = None,
    ):
        if n < 1:
            raise ValueError("degree must be at least 1")
        self._n = n
        clean: dict[Perm, dict[tuple[int, int, int], PolyElem]] = {}
        for g, comp in (components or {}).items():
            if g.n != n:
                raise ValueError("degree mismatch between group element and cochain")
            bucket: dict[tuple[int, int, int], PolyElem] = {}
            for (i, j, k), value in comp.items():
                if not isinstance(value, PolyElem):
                    value = PolyElem.const(n, value)
                elif value.n != n:
                    raise ValueError("degree mismatch in cochain value")
                sign = _triple_sign(i, j, k)
                if sign == 0:
                    if value:
                        raise ValueError(f"nonzero value on degenerate triple ({i}, {j}, {k})")
                    continue
                key = tuple(sorted((i, j, k)))
                if sign < 0:
                    value = -value
                total = bucket.get(key, PolyElem.zero(n)) + value
                if total:
                    bucket[key] = total
                else:
                    bucket.pop(key, None)
            for value in bucket.values():
                if value.degree() > 2:
                    raise ValueError(f"3-cochain value of degree > 2: {value}")
            if bucket:
                clean[g] = bucket
        self._components = clean

    @property
    def n(self) -> int:
        return self._n

    def components(self) -> dict[Perm, dict[tuple[int, int, int], PolyElem]]:
        return {g: dict(comp) for g, comp in self._components.items()}

    def component(self, g: Perm) -> dict[tuple[int, int, int], PolyElem]:
        return dict(self._components.get(g, {}))

    def value(self, g: Perm, i: int, j: int, k: int) -> PolyElem:
        """The g-component on (e_i, e_j, e_k), with the alternation sign."""
        sign = _triple_sign(i, j, k)
        if sign == 0:
            return PolyElem.zero(self._n)
        stored = self._components.get(g, {}).get(tuple(sorted((i, j, k))))
        if stored is None:
            return PolyElem.zero(self._n)
        return stored if sign > 0 else -stored

    def support(self) -> tuple[Perm, ...]:
        return tuple(sorted(self._components))

    def is_zero(self) -> bool:
        return not self._components

    def __bool__(self) -> bool:
        return bool(self._components)

    def __add__(self, other: "ThreeCochain") -> "ThreeCochain":
        if not isinstance(other, ThreeCochain):
            return NotImplemented
        if self._n != other._n:
            raise ValueError("degree mismatch")
        merged: dict[Perm, dict[tuple[int, int, int], PolyElem]] = {
            g: dict(comp) for g, comp in self._components.items()
        }
        for g, comp in other._components.items():
            bucket = merged.setdefault(g, {})
            for triple, value in comp.items():
                bucket[triple] = bucket.get(triple, PolyElem.zero(self._n)) + value
        return ThreeCochain(self._n, merged)

    def __sub__(self, other: "ThreeCochain") -> "ThreeCochain":
        return self + (-other)

    def __neg__(self) -> "ThreeCochain":
        return self * -1

    def __mul__(self, scalar: Scalar) -> "ThreeCochain":
        scalar = as_parampoly(scalar)
        components = {
            g: {triple: value * scalar for triple, value in comp.items()}
            for g, comp in self._components.items()
        }
        return ThreeCochain(self._n, components)

    __rmul__ = __mul__

    def substitute(self, values: Mapping[str, Fraction | int]) -> "ThreeCochain":
        components = {
            g: {triple: value.substitute(values) for triple, value in comp.items()}
            for g, comp in self._components.items()
        }
        return ThreeCochain(self._n, components)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ThreeCochain)
            and self._n == other._n
            and self._components == other._components
        )

    def __repr__(self) -> str:
        return f"<ThreeCochain n={self._n} support={len(self._components)}>"


# -- constructors -------------------------------------------------------------------


def kappa_L1(a1: Scalar, n: int) -> TwoCochain:
    """The identity-supported map (e_i, e_j) -> a1 (e_i - e_j)."""
    a1 = as_parampoly(a1)
    identity = Perm.identity(n)
    comp = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            comp[(i, j)] = (Vect.basis(i, n) - Vect.basis(j, n)).to_polyelem() * a1
    return TwoCochain(n, {identity: comp}, kind="linear")


def _tri_pairs(g: Perm) -> tuple[tuple[int, int], ...]:
    """The cyclic pairs (x, g(x)) over the support of a 3-cycle."""
    (i, j, k) = g.cycles()[0]
    return ((i, j), (j, k), (k, i))


def kappa_L_tri(a: Scalar, b: Scalar, n: int) -> TwoCochain:
    """The 3-cycle-supported map with linear values.

    On the cyclic pairs of g = (i j k) the value is
    a (e_i + e_j + e_k) + b (sum of e_l over l outside the cycle);
    pairs meeting V^g are sent to zero.
    """
    if n < 3:
        raise ValueError("kappa_L_tri needs degree at least 3")
    a, b = as_parampoly(a), as_parampoly(b)
    components: dict[Perm, dict[tuple[int, int], PolyElem]] = {}
    for g in three_cycles(n):
        inside = set(g.cycles()[0])
        value = (
            Vect.sum_of(inside, n) * a
            + Vect.sum_of([l for l in range(1, n + 1) if l not in inside], n) * b
        ).to_polyelem()
        components[g] = {pair: value for pair in _tri_pairs(g)}
    return TwoCochain(n, components, kind="linear")


def kappa_C_tri(c: Scalar, n: int) -> TwoCochain:
    """The 3-cycle-supported map with constant value c on cyclic pairs."""
    if n < 3:
        raise ValueError("kappa_C_tri needs degree at least 3")
    c = as_parampoly(c)
    components: dict[Perm, dict[tuple[int, int], PolyElem]] = {}
    for g in three_cycles(n):
        value = PolyElem.const(n, c)
        components[g] = {pair: value for pair in _tri_pairs(g)}
    return TwoCochain(n, components, kind="constant")


def kappa_C_penta(a: Scalar, b: Scalar, n: int) -> TwoCochain:
    """The 5-cycle-supported constant map read off
    (a-b)^2 ([g] - [g]^T - 2 [g^2] + 2 [g^2]^T); zero for n < 5."""
    a, b = as_parampoly(a), as_parampoly(b)
    scale = (a - b) ** 2
    components: dict[Perm, dict[tuple[int, int], PolyElem]] = {}
    if n >= 5:

        def entry(g: Perm, i: int, j: int) -> int:
            # [g]_{ij} = 1 iff g(j) = i
            g2 = g * g
            return (
                (1 if g(j) == i else 0)
                - (1 if g(i) == j else 0)
                - 2 * (1 if g2(j) == i else 0)
                + 2 * (1 if g2(i) == j else 0)
            )

        for g in cycles_of_length(n, 5):
            comp = {}
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    coeff = entry(g, i, j)
                    if coeff:
                        comp[(i, j)] = PolyElem.const(n, coeff * scale)
            components[g] = comp
    return TwoCochain(n, components, kind="constant")


# -- the G-action and invariance ---------------------------------------------------


def act_on_cochain(h: Perm, alpha: TwoCochain) -> TwoCochain:
    """The conjugation action: the hgh^{-1}-component of the result sends
    (v1, v2) to h . (alpha_g(h^{-1} v1, h^{-1} v2))."""
    if h.n != alpha.n:
        raise ValueError("degree mismatch")
    components: dict[Perm, dict[tuple[int, int], PolyElem]] = {}
    for g, comp in alpha.components().items():
        moved = components.setdefault(conjugate(h, g), {})
        for (i, j), value in comp.items():
            moved[(h(i), h(j))] = act(h, value)
    return TwoCochain(alpha.n, components, kind=alpha.kind)


def default_generators(n: int) -> list[Perm]:
    """(1 2) and the n-cycle (1 2 ... n): a standard generating set."""
    if n == 1:
        return [Perm.identity(1)]
    gens = [Perm.from_cycles([(1, 2)], n)]
    if n >= 3:
        gens.append(Perm.from_cycles([tuple(range(1, n + 1))], n))
    return gens


Witness = tuple[Perm, Perm, int, int]


def is_invariant(
    alpha: TwoCochain, generators: Sequence[Perm] | None = None
) -> tuple[bool, Optional[Witness]]:
    """Whether the cochain is fixed by the group action.

    Checked on a generating set (default: (1 2) and (1 2 ... n)), which
    suffices because the action law is a homomorphism.  On failure returns
    the first witness (h, g, i, j) with (h . alpha)_g(e_i, e_j) != alpha_g(e_i, e_j),
    taking g over the combined support in sorted order.
    """
    if generators is None:
        generators = default_generators(alpha.n)
    for h in generators:
        moved = act_on_cochain(h, alpha)
        if moved == alpha:
            continue
        for g in sorted(set(moved.support()) | set(alpha.support())):
            pairs = sorted(set(moved.component(g)) | set(alpha.component(g)))
            for i, j in pairs:
                if moved.value(g, i, j) != alpha.value(g, i, j):
                    return False, (h, g, i, j)
        raise AssertionError("cochains differ but no differing entry found")
    return True, None


# -- queries --------------------------------------------------------------------------


def support(alpha: TwoCochain | ThreeCochain) -> tuple[Perm, ...]:
    """The group elements with a nonzero component."""
    return alpha.support()


def kernel_vectors(alpha: TwoCochain, g: Perm) -> list[Vect]:
    """A basis of {v : kappa_g(v, w) = 0 for all w}, with parameters symbolic.

    A rational vector is in the kernel for every parameter value iff the
    coefficient of each parameter monomial vanishes separately, so the
    computation expands values by parameter monomial and solves one exact
    linear system over Q.  Callers wanting a specialized kernel should
    substitute parameter values first.
    """
    n = alpha.n
    rows: dict[tuple, list[Fraction]] = {}
    for w in range(1, n + 1):
        for v in range(1, n + 1):
            if v == w:
                continue
            value = alpha.value(g, v, w)
            for mono, coeff in value.terms.items():
                for pexps, q in coeff.terms.items():
                    row = rows.setdefault((w, mono, pexps), [Fraction(0)] * n)
                    row[v - 1] += q
    if not rows:
        return [Vect.basis(i, n) for i in range(1, n + 1)]
    return [Vect(coords) for coords in nullspace(list(rows.values()))]


def eval_cochain(alpha: TwoCochain, v: Vect, w: Vect) -> SkewElem:
    """The bilinear alternating extension, summed over the support:
    sum_g kappa_g(v, w) (x) g as an element of S(V) # S_n."""
    n = alpha.n
    if v.n != n or w.n != n:
        raise ValueError("degree mismatch")
    components: dict[Perm, PolyElem] = {}
    for g, comp in alpha.components().items():
        total = PolyElem.zero(n)
        for (i, j), value in comp.items():
            coeff = v.coeff(i) * w.coeff(j) - v.coeff(j) * w.coeff(i)
            if coeff:
                total = total + value * coeff
        if total:
            components[g] = total
    return SkewElem(n, components)


__all__ = [
    "TwoCochain",
    "ThreeCochain",
    "KINDS",
    "kappa_L1",
    "kappa_L_tri",
    "kappa_C_tri",
    "kappa_C_penta",
    "act_on_cochain",
    "default_generators",
    "is_invariant",
    "support",
    "kernel_vectors",
    "eval_cochain",
]
