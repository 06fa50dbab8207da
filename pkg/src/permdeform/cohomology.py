"""Degree-2 cohomology spaces that carry deformation data, over Q.

For each group element g the relevant space in polynomial degree d is

    S^d(V^g) (x) Lambda^{2-c}(V^g)* (x) Lambda^c((V^g)^perp)*,   c = codim V^g,

which vanishes unless c is 0 or 2.  In S_n the codimension-2 elements are
exactly the 3-cycles and the double transpositions, and for them the
exterior factor is the line spanned by a volume form on the complement.
Everything here is rational: V^g has the cycle orbit-sum basis, the
complement is taken under the standard symmetric pairing (which the
permutation action preserves), and centralizer invariants are obtained
by Reynolds averaging, twisted by the determinant character of the
centralizer action on the complement.

The identification with alternating bilinear maps sends f (x) vol to the
cochain component kappa_g(e_i, e_j) = f * vol(e_i, e_j), so every basis
element below is a :class:`~permdeform.cochains.TwoCochain` supported at
a single group element; :func:`extend_to_G` sums the component over a
conjugacy class to produce the invariant cochains the classification
works with.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .algebra import PolyElem, Vect, rref
from .cochains import TwoCochain, act_on_cochain, default_generators
from .perms import (
    ConjClass,
    Perm,
    centralizer,
    conjugacy_classes,
    conjugate,
    orbit_sums,
    symmetric_group,
)

#: A rational alternating 2-form, stored on pairs i < j.
TwoForm = dict[tuple[int, int], Fraction]


def codim_fixed_space(g: Perm) -> int:
    """Codimension of V^g, i.e. n minus the number of cycles of g."""
    return g.n - len(orbit_sums(g))


def _normalize_form(form: TwoForm) -> TwoForm:
    """Scale to coprime integers with the lexicographically first
    coefficient positive."""
    if not form:
        return {}
    keys = sorted(form)
    denom = lcm(*(form[k].denominator for k in keys))
    scaled = [form[k] * denom for k in keys]
    common = 0
    for value in scaled:
        common = gcd(common, int(value))
    sign = 1 if scaled[0] > 0 else -1
    return {k: v * sign / common for k, v in zip(keys, scaled)}


def volume_form(g: Perm) -> TwoForm:
    """A basis 2-form for the top exterior power of ((V^g)^perp)*.

    Built from the canonical complement basis -- for a 3-cycle with
    support i < j < k the vectors e_i - e_j and e_j - e_k, for a double
    transposition (a b)(c d) the vectors e_a - e_b and e_c - e_d -- as
    omega(v, w) = det of the pairing matrix.  For (1 2 3) this is
    e1*^e2* + e2*^e3* + e3*^e1*.
    """
    if codim_fixed_space(g) != 2:
        raise ValueError(f"{g} does not have a codimension-2 fixed space")
    cycles = g.cycles()
    if len(cycles) == 1:
        i, j, k = sorted(cycles[0])
        u1, u2 = {i: 1, j: -1}, {j: 1, k: -1}
    else:
        (a, b), (c, d) = cycles
        u1, u2 = {a: 1, b: -1}, {c: 1, d: -1}
    form: TwoForm = {}
    for i in range(1, g.n + 1):
        for j in range(i + 1, g.n + 1):
            value = Fraction(u1.get(i, 0) * u2.get(j, 0) - u1.get(j, 0) * u2.get(i, 0))
            if value:
                form[(i, j)] = value
    return _normalize_form(form)


def _form_act(h: Perm, form: TwoForm) -> TwoForm:
    """Push a 2-form forward: (h . omega)(e_i, e_j) = omega(h^{-1}e_i, h^{-1}e_j)."""
    out: TwoForm = {}
    for (i, j), coeff in form.items():
        a, b = h(i), h(j)
        if a > b:
            a, b, coeff = b, a, -coeff
        out[(a, b)] = out.get((a, b), Fraction(0)) + coeff
    return {key: value for key, value in out.items() if value}


def _vol_character(z: Perm, vol: TwoForm) -> int:
    """det(z restricted to (V^g)^perp), read off the action on the volume line."""
    moved = _form_act(z, vol)
    first = min(vol)
    chi = moved.get(first, Fraction(0)) / vol[first]
    if chi not in (1, -1) or moved != {k: chi * v for k, v in vol.items()}:
        raise AssertionError(f"{z} does not preserve the volume line")
    return int(chi)


def _integer_normalize(row: Sequence[Fraction]) -> list[Fraction]:
    """Coprime-integer scaling of a rational vector, first nonzero positive."""
    denom = lcm(*(x.denominator for x in row)) if any(row) else 1
    scaled = [x * denom for x in row]
    common = 0
    for value in scaled:
        common = gcd(common, int(value))
    if common == 0:
        return list(scaled)
    first = next(x for x in scaled if x)
    sign = 1 if first > 0 else -1
    return [x * sign / common for x in scaled]


@dataclass(frozen=True)
class CohomBasis:
    """A basis of the degree-(2, d) space at g, as single-element cochains."""

    g: Perm
    d: int
    basis: tuple[TwoCochain, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _component_from_form(g: Perm, f: Vect | None, vol: TwoForm) -> TwoCochain:
    """The cochain supported at g with values f * vol(e_i, e_j)."""
    n = g.n
    comp: dict[tuple[int, int], PolyElem] = {}
    for pair, coeff in vol.items():
        value = PolyElem.const(n, coeff) if f is None else f.to_polyelem() * coeff
        comp[pair] = value
    return TwoCochain(n, {g: comp})


def h2_space(g: Perm, d: int, n: int | None = None) -> CohomBasis:
    """Basis of the degree-(2, d) cohomology space at g.

    Identity elements delegate to :func:`identity_invariants`; elements
    whose fixed space has codimension other than 0 or 2 get the zero
    space; codimension-2 elements get the twisted Reynolds average of
    S^d(V^g) against the volume line.
    """
    if d not in (0, 1):
        raise ValueError(f"polynomial degree d must be 0 or 1, got {d}")
    if n is not None and n != g.n:
        raise ValueError("degree mismatch")
    if g.is_identity():
        return identity_invariants(d, g.n)
    if codim_fixed_space(g) != 2:
        return CohomBasis(g, d, ())
    n = g.n
    vol = volume_form(g)
    zg = centralizer(g)
    chars = {z: _vol_character(z, vol) for z in zg}
    if d == 0:
        average = Fraction(sum(chars.values()), zg.order)
        if average == 0:
            return CohomBasis(g, 0, ())
        if average != 1:
            raise AssertionError("volume character average is neither 0 nor 1")
        return CohomBasis(g, 0, (_component_from_form(g, None, vol),))
    candidates = [Vect.sum_of(orbit, n) for orbit in orbit_sums(g)]
    rows = []
    for f in candidates:
        acc = Vect.zero(n)
        for z, chi in chars.items():
            acc = acc + chi * f.act(z)
        rows.append([coeff.constant_value() / zg.order for coeff in acc.coords])
    reduced, _ = rref(rows)
    basis = []
    for row in reduced:
        f = Vect(_integer_normalize(row))
        basis.append(_component_from_form(g, f, vol))
    return CohomBasis(g, 1, tuple(basis))


def identity_invariants(d: int, n: int) -> CohomBasis:
    """Basis of (S^d(V) (x) Lambda^2 V*)^{S_n}, by streamed Reynolds averaging.

    The projector image is spanned by the averages of one representative
    per S_n-orbit of standard basis tensors, so only those are averaged:
    e_{12}* for d = 0, and e_1 (x) e_{12}*, e_3 (x) e_{12}* for d = 1.
    For d = 1 the answer is one-dimensional; the normalized generator is
    sum over i < j of (e_i - e_j) (x) e_i*^e_j*.
    """
    if d not in (0, 1):
        raise ValueError(f"polynomial degree d must be 0 or 1, got {d}")
    identity = Perm.identity(n)
    if n < 2:
        return CohomBasis(identity, d, ())
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    pair_index = {pair: idx for idx, pair in enumerate(pairs)}

    if d == 0:
        reps: list[int | None] = [None]
        width = len(pairs)
    else:
        reps = [1, 3] if n >= 3 else [1]
        width = len(pairs) * n

    rows = []
    for k in reps:
        acc = [Fraction(0)] * width
        for h in symmetric_group(n):
            i, j = h(1), h(2)
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if k is None:
                acc[pair_index[(i, j)]] += sign
            else:
                acc[pair_index[(i, j)] * n + (h(k) - 1)] += sign
        rows.append(acc)
    reduced, _ = rref(rows)
    basis = []
    for row in reduced:
        row = _integer_normalize(row)
        comp: dict[tuple[int, int], PolyElem] = {}
        for pair, idx in pair_index.items():
            if d == 0:
                value = PolyElem.const(n, row[idx])
            else:
                coords = row[idx * n : (idx + 1) * n]
                value = Vect(coords).to_polyelem()
            if value:
                comp[pair] = value
        basis.append(TwoCochain(n, {identity: comp}))
    return CohomBasis(identity, d, tuple(basis))


def extend_to_G(element: TwoCochain) -> TwoCochain:
    """Sum a single-element component over coset representatives of its
    centralizer, producing the G-invariant cochain on the conjugacy class.

    The input must be supported at one group element and fixed by its
    centralizer (checked on generators).
    """
    supp = element.support()
    if not supp:
        return element
    if len(supp) > 1:
        raise ValueError("expected a cochain supported at a single group element")
    g = supp[0]
    n = element.n
    gens = default_generators(n) if g.is_identity() else centralizer(g).generators
    for z in gens:
        if act_on_cochain(z, element) != element:
            raise ValueError(f"component at {g} is not centralizer-invariant (moved by {z})")
    if g.is_identity():
        return element
    total = TwoCochain(n)
    seen = set()
    for h in symmetric_group(n):
        moved = conjugate(h, g)
        if moved in seen:
            continue
        seen.add(moved)
        total = total + act_on_cochain(h, element)
    return total


def class_dims(n: int) -> list[tuple[ConjClass, int, int, int]]:
    """Per conjugacy class: (class, codim V^g, dim in degree 1, dim in degree 0).

    Feeds the cohomology summary table; classes in the standard
    descending-cycle-type order (n-cycle first, identity last).
    """
    out = []
    for cls in conjugacy_classes(n):
        codim = codim_fixed_space(cls.rep)
        d1 = h2_space(cls.rep, 1).dim
        d0 = h2_space(cls.rep, 0).dim
        out.append((cls, codim, d1, d0))
    return out


__all__ = [
    "TwoForm",
    "CohomBasis",
    "codim_fixed_space",
    "volume_form",
    "h2_space",
    "identity_invariants",
    "extend_to_G",
    "class_dims",
]
