"""The obstruction operators psi and phi, the five conditions a pair
(kappa^L, kappa^C) must satisfy to define a Drinfeld orbifold algebra, the
closed-form shortcuts for phi summands over 3-cycle factors, orbit-reduced
obstruction tables, and the classification driver.

Conventions.  psi is the negated Koszul coboundary,

    psi_g(v1, v2, v3) = kappa_g(v1, v2)(g.v3 - v3) + cyclic,

and phi is the quadratic pairing

    phi_{x,y}(v1, v2, v3) = alpha_x(v1 + y.v1, beta_y(v2, v3)) + cyclic,
    phi_g = sum over factorizations x * y = g.

Both are alternating in the vector slots, so all evaluation happens on
basis triples i < j < k.  The five conditions:

    (0) im kappa^L_g lies in V^g,
    (1) kappa^L and kappa^C are G-invariant,
    (2) psi(kappa^L) = 0,
    (3) phi(kappa^L, kappa^L) = 2 psi(kappa^C),
    (4) phi(kappa^C, kappa^L) = 0.

By the conjugation-equivariance of psi and phi applied to invariant
cochains, conditions (2)-(4) need only be checked on conjugacy-class
representatives; ``exhaustive=True`` rechecks every group element
(capped at n = 6).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import PARAMS, ParamPoly, PolyElem, SkewElem, Vect, act, commutator, parameters
from .cochains import (
    ThreeCochain,
    TwoCochain,
    act_on_cochain,
    default_generators,
    eval_cochain,
    is_invariant,
    kappa_C_penta,
    kappa_C_tri,
    kappa_L1,
    kappa_L_tri,
)
from .perms import (
    Perm,
    Subgroup,
    centralizer,
    conjugacy_classes,
    diag_conj_orbit,
    factor_pairs,
    max_degree,
    orbit_decomposition,
    parse_perm,
    symmetric_group,
)

_A, _B, _C, _A1 = parameters()

CONDITION_LABELS = {
    0: "im kappa^L_g in V^g",
    1: "G-invariance",
    2: "psi(kappa^L) = 0",
    3: "phi(kappa^L, kappa^L) = 2 psi(kappa^C)",
    4: "phi(kappa^C, kappa^L) = 0",
}


def _triples(n: int):
    return itertools.combinations(range(1, n + 1), 3)


def _require_linear(beta: TwoCochain, role: str) -> None:
    if beta.kind != "linear" and not beta.is_zero():
        raise ValueError(f"{role} must be a linear cochain, got kind {beta.kind!r}")


def _require_homogeneous(alpha: TwoCochain, role: str) -> None:
    if alpha.kind == "mixed":
        raise ValueError(f"{role} must be homogeneous (linear or constant), not mixed")


# -- psi ---------------------------------------------------------------------------------------


def _moved(g: Perm, p: int, n: int) -> PolyElem:
    """g.e_p - e_p."""
    if g(p) == p:
        return PolyElem.zero(n)
    return PolyElem(n, {(g(p),): 1, (p,): -1})


def _psi_value(alpha: TwoCochain, g: Perm, i: int, j: int, k: int) -> PolyElem:
    return (
        alpha.value(g, i, j) * _moved(g, k, alpha.n)
        + alpha.value(g, j, k) * _moved(g, i, alpha.n)
        + alpha.value(g, k, i) * _moved(g, j, alpha.n)
    )


def psi(alpha: TwoCochain) -> ThreeCochain:
    """The negated coboundary: psi_g(v1,v2,v3) = kappa_g(v1,v2)(g.v3 - v3) + cyclic.

    Applied per homogeneous part, so mixed-kind input is rejected.
    """
    _require_homogeneous(alpha, "psi argument")
    n = alpha.n
    comps: dict[Perm, dict[tuple[int, int, int], PolyElem]] = {}
    for g in alpha.support():
        comp = {}
        for i, j, k in _triples(n):
            value = _psi_value(alpha, g, i, j, k)
            if value:
                comp[(i, j, k)] = value
        if comp:
            comps[g] = comp
    return ThreeCochain(n, comps)


# -- phi ---------------------------------------------------------------------------------------


def _pair_eval(alpha: TwoCochain, x: Perm, w: Vect, u: Vect) -> PolyElem:
    """alpha_x(w, u) for vectors with polynomial coefficients."""
    n = alpha.n
    total = PolyElem.zero(n)
    for p in range(1, n + 1):
        wp = w.coeff(p)
        if not wp:
            continue
        for q in range(1, n + 1):
            uq = u.coeff(q)
            if not uq:
                continue
            value = alpha.value(x, p, q)
            if value:
                total = total + value * (wp * uq)
    return total


def phi_xy(
    alpha: TwoCochain, beta: TwoCochain, x: Perm, y: Perm, triple: Sequence[int]
) -> PolyElem:
    """The (x, y) summand phi_{x,y}(e_i, e_j, e_k), as the coefficient of x*y.

    phi_{x,y}(v1,v2,v3) = alpha_x(v1 + y.v1, beta_y(v2,v3)) + cyclic; the
    result is alternating in the triple because beta is.
    """
    _require_homogeneous(alpha, "first phi argument")
    _require_linear(beta, "second phi argument")
    n = alpha.n
    i, j, k = triple
    total = PolyElem.zero(n)
    for p, q, r in ((i, j, k), (j, k, i), (k, i, j)):
        inner = beta.value(y, q, r)
        if inner.is_zero():
            continue
        w = Vect.basis(p, n) + Vect.basis(y(p), n)
        total = total + _pair_eval(alpha, x, w, Vect.from_polyelem(inner))
    return total


def phi_component(
    alpha: TwoCochain,
    beta: TwoCochain,
    g: Perm,
    triple: Sequence[int],
    factors: Sequence[tuple[Perm, Perm]] | None = None,
) -> PolyElem:
    """phi(alpha, beta)_g on one basis triple, summing over factorizations
    x * y = g with x in support(alpha); pass precomputed ``factors`` when
    evaluating many triples at the same g."""
    if factors is None:
        factors = factor_pairs(g, alpha.support(), beta.support())
    total = PolyElem.zero(alpha.n)
    for x, y in factors:
        total = total + phi_xy(alpha, beta, x, y, triple)
    return total


def phi(alpha: TwoCochain, beta: TwoCochain) -> ThreeCochain:
    """The full cochain phi(alpha, beta), components indexed by products x*y."""
    _require_homogeneous(alpha, "first phi argument")
    _require_linear(beta, "second phi argument")
    n = alpha.n
    comps: dict[Perm, dict[tuple[int, int, int], PolyElem]] = {}
    for x in alpha.support():
        for y in beta.support():
            g = x * y
            bucket = comps.setdefault(g, {})
            for triple in _triples(n):
                value = phi_xy(alpha, beta, x, y, triple)
                if value:
                    bucket[triple] = bucket.get(triple, PolyElem.zero(n)) + value
    return ThreeCochain(n, comps)


# -- closed forms over 3-cycle second factors ----------------------------------------------------


def closed_form_phi_xy(
    kind: str, x: Perm, y: Perm, triple: Sequence[int]
) -> PolyElem:
    """Case-split value of phi_{x,y} on a basis triple, for y a 3-cycle and
    alpha one of the canonical families (kind "L": kappa^L_tri; kind "C":
    kappa^C_tri when x is a 3-cycle, kappa^C_penta when x is a 5-cycle).

    Sorting the triple so that the V^y member (if any) comes first reduces
    to four shapes: (1) two vectors fixed by y -> 0; (2) the fixed vector
    also fixed by x -> 0; (3) e_s in V^y \\ V^x and the moved pair oriented
    as (e_m, y.e_m) -> the delta-indicator formula; (4) no vector fixed by
    y -> 0.
    """
    n = x.n
    if y.n != n:
        raise ValueError("degree mismatch")
    if sorted(len(c) for c in y.cycles()) != [3]:
        raise ValueError("second factor must be a 3-cycle")
    xlens = sorted(len(c) for c in x.cycles())
    if kind == "L":
        if xlens != [3]:
            raise ValueError("kind 'L' takes a 3-cycle first factor")
    elif kind == "C":
        if xlens not in ([3], [5]):
            raise ValueError("kind 'C' takes a 3-cycle or 5-cycle first factor")
    else:
        raise ValueError(f"unknown kind {kind!r}; expected 'L' or 'C'")

    i, j, k = triple
    if len({i, j, k}) < 3:
        return PolyElem.zero(n)
    fixed = [p for p in (i, j, k) if y(p) == p]
    if len(fixed) != 1:
        return PolyElem.zero(n)  # cases (1) and (4)
    s = fixed[0]
    if x(s) == s:
        return PolyElem.zero(n)  # case (2)
    m, m2 = [p for p in (i, j, k) if p != s]
    if y(m) != m2:
        m, m2 = m2, m
    assert y(m) == m2, "moved pair is not a y-orbit segment"
    # parity of the rearrangement (i, j, k) -> (s, m, m2)
    perm = [(s, m, m2).index(p) for p in (i, j, k)]
    inversions = sum(
        1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b]
    )
    sign = -1 if inversions % 2 else 1

    def delta(p: int) -> int:
        return 1 if y(p) == p else 0

    xinv = x.inverse()
    if xlens == [5]:
        bracket = (
            delta(x(s))
            - 2 * delta(x(x(s)))
            + 2 * delta(xinv(xinv(s)))
            - delta(xinv(s))
        )
        scale = 2 * (_A - _B) ** 3
        return PolyElem.const(n, scale * (sign * bracket))
    bracket = delta(x(s)) - delta(xinv(s))
    if bracket == 0:
        return PolyElem.zero(n)
    if kind == "C":
        kappa_value = PolyElem.const(n, _C)
    else:
        support = set().union(*x.cycles())
        coords = [_A if p in support else _B for p in range(1, n + 1)]
        kappa_value = Vect(coords).to_polyelem()
    factor = (_B - _A) * (2 * sign * bracket)
    return kappa_value * factor


# -- condition checking --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionWitness:
    """Where a condition fails: the group data, the basis tuple, and the
    nonzero residual polynomial."""

    condition: int
    location: tuple[Perm, ...]
    triple: tuple[int, ...]
    residual: PolyElem

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "location": [str(p) for p in self.location],
            "triple": list(self.triple),
            "residual": str(self.residual),
        }

    def __str__(self) -> str:
        where = ", ".join(str(p) for p in self.location)
        spots = ",".join(f"e{p}" for p in self.triple)
        return f"at {where} on ({spots}): {self.residual}"


@dataclass(frozen=True)
class ConditionReport:
    """Pass/fail for the five conditions, with the first witness per failure."""

    n: int
    exhaustive: bool
    cond0: bool
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    witnesses: tuple[ConditionWitness, ...] = ()

    @property
    def all_pass(self) -> bool:
        return self.cond0 and self.cond1 and self.cond2 and self.cond3 and self.cond4

    def passed(self, condition: int) -> bool:
        return (self.cond0, self.cond1, self.cond2, self.cond3, self.cond4)[condition]

    def witness(self, condition: int) -> Optional[ConditionWitness]:
        for w in self.witnesses:
            if w.condition == condition:
                return w
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "exhaustive": self.exhaustive,
            "all_pass": self.all_pass,
            "conditions": {
                str(c): {
                    "label": CONDITION_LABELS[c],
                    "passed": self.passed(c),
                }
                for c in range(5)
            },
            "witnesses": [w.to_json() for w in self.witnesses],
        }

    def to_markdown(self) -> str:
        lines = ["| condition | status | witness |", "| --- | --- | --- |"]
        for c in range(5):
            w = self.witness(c)
            lines.append(
                f"| ({c}) {CONDITION_LABELS[c]} "
                f"| {'pass' if self.passed(c) else 'FAIL'} "
                f"| {w if w else ''} |"
            )
        return "\n".join(lines)


def _invariance_witness(alpha: TwoCochain, generators) -> Optional[ConditionWitness]:
    ok, spot = is_invariant(alpha, generators)
    if ok:
        return None
    h, g, i, j = spot
    residual = act_on_cochain(h, alpha).value(g, i, j) - alpha.value(g, i, j)
    return ConditionWitness(1, (h, g), (i, j), residual)


def _first_nonzero(three: ThreeCochain) -> Optional[tuple[Perm, tuple[int, ...], PolyElem]]:
    for g in three.support():
        comp = three.component(g)
        for triple in sorted(comp):
            return g, triple, comp[triple]
    return None


def check_conditions(
    kappa_L: TwoCochain, kappa_C: TwoCochain, exhaustive: bool = False
) -> ConditionReport:
    """Check the five conditions for the pair (kappa^L, kappa^C).

    By default conditions (2)-(4) are evaluated on conjugacy-class
    representatives (sorted, with lexicographically first failing triples,
    so witnesses are deterministic); ``exhaustive=True`` builds the full
    psi/phi cochains over every group element, for n <= 6.
    """
    if kappa_L.n != kappa_C.n:
        raise ValueError("degree mismatch between the two cochains")
    n = kappa_L.n
    if kappa_L.kind != "linear" and not kappa_L.is_zero():
        raise ValueError(f"kappa^L must be linear, got kind {kappa_L.kind!r}")
    if kappa_C.kind != "constant" and not kappa_C.is_zero():
        raise ValueError(f"kappa^C must be constant, got kind {kappa_C.kind!r}")
    if exhaustive and n > 6:
        raise ValueError("exhaustive mode is capped at n = 6")

    witnesses: list[ConditionWitness] = []

    # (0) each kappa^L_g maps into the fixed space of g
    w0 = None
    for g in kappa_L.support():
        for (i, j), value in sorted(kappa_L.component(g).items()):
            residual = act(g, value) - value
            if residual:
                w0 = ConditionWitness(0, (g,), (i, j), residual)
                break
        if w0:
            break
    if w0:
        witnesses.append(w0)

    # (1) G-invariance of both cochains
    generators = list(symmetric_group(n)) if exhaustive else default_generators(n)
    w1 = _invariance_witness(kappa_L, generators) or _invariance_witness(
        kappa_C, generators
    )
    if w1:
        witnesses.append(w1)

    suppL = kappa_L.support()
    suppC = kappa_C.support()

    if exhaustive:
        spots = {
            2: _first_nonzero(psi(kappa_L)),
            3: _first_nonzero(phi(kappa_L, kappa_L) - psi(kappa_C) * 2),
            4: _first_nonzero(phi(kappa_C, kappa_L)),
        }
        for cond, spot in spots.items():
            if spot:
                g, triple, residual = spot
                witnesses.append(ConditionWitness(cond, (g,), triple, residual))
    else:
        reps = sorted(cls.rep for cls in conjugacy_classes(n))
        suppL_set = set(suppL)

        def first_failure(cond, g_list, cell) -> Optional[ConditionWitness]:
            for g in g_list:
                for triple in _triples(n):
                    residual = cell(g, triple)
                    if residual:
                        return ConditionWitness(cond, (g,), triple, residual)
            return None

        w2 = first_failure(
            2,
            [g for g in reps if g in suppL_set],
            lambda g, t: _psi_value(kappa_L, g, *t),
        )
        if w2:
            witnesses.append(w2)

        factors3 = {g: factor_pairs(g, suppL, suppL) for g in reps}
        w3 = first_failure(
            3,
            reps,
            lambda g, t: phi_component(kappa_L, kappa_L, g, t, factors3[g])
            - _psi_value(kappa_C, g, *t) * 2,
        )
        if w3:
            witnesses.append(w3)

        factors4 = {g: factor_pairs(g, suppC, suppL) for g in reps}
        w4 = first_failure(
            4,
            reps,
            lambda g, t: phi_component(kappa_C, kappa_L, g, t, factors4[g]),
        )
        if w4:
            witnesses.append(w4)

    failed = {w.condition for w in witnesses}
    return ConditionReport(
        n=n,
        exhaustive=exhaustive,
        cond0=0 not in failed,
        cond1=1 not in failed,
        cond2=2 not in failed,
        cond3=3 not in failed,
        cond4=4 not in failed,
        witnesses=tuple(witnesses),
    )


def mixed_jacobi_residual(kappa: TwoCochain) -> ThreeCochain:
    """The cyclic commutator sum [v1, kappa(v2,v3)] + [v2, kappa(v3,v1)] +
    [v3, kappa(v1,v2)], computed in the skew group algebra and regrouped by
    group element.  Vanishes exactly when psi(kappa) does."""
    _require_homogeneous(kappa, "mixed Jacobi argument")
    n = kappa.n
    one = Perm.identity(n)
    comps: dict[Perm, dict[tuple[int, int, int], PolyElem]] = {}
    for i, j, k in _triples(n):
        total = SkewElem.zero(n)
        for p, q, r in ((i, j, k), (j, k, i), (k, i, j)):
            vp = SkewElem.tensor(PolyElem.var(p, n), one)
            total = total + commutator(
                vp, eval_cochain(kappa, Vect.basis(q, n), Vect.basis(r, n))
            )
        for g, poly in total.components().items():
            comps.setdefault(g, {})[(i, j, k)] = poly
    return ThreeCochain(n, comps)


# -- obstruction tables --------------------------------------------------------------------------

_ALPHA_BUILDERS = {
    "C-penta": lambda n: kappa_C_penta(_A, _B, n),
    "L-tri": lambda n: kappa_L_tri(_A, _B, n),
    "C-tri": lambda n: kappa_C_tri(_C, n),
}


def render_cell(value: PolyElem) -> str:
    """Table cell text: multiples of (a-b)^k print factored with the base
    positive, matching the tables' sign normalization; zero prints "0"."""
    if value.is_zero():
        return "0"
    if value.degree() == 0:
        p = value.coeff(())
        for k in (3, 2, 1):
            lead = p.terms.get((k, 0, 0, 0))
            if lead and p == (_A - _B) ** k * lead:
                if lead == 1:
                    head = ""
                elif lead == -1:
                    head = "-"
                else:
                    head = f"{lead}*"
                return f"{head}(a-b)^{k}" if k > 1 else f"{head}(a-b)"
    return str(value)


def _triple_label(triple: Sequence[int]) -> str:
    return "(" + ",".join(f"e{p}" for p in triple) + ")"


@dataclass(frozen=True)
class OrbitBlock:
    """One diagonal-conjugation orbit of factor pairs, with its cell values
    and per-column sums."""

    rows: tuple[tuple[Perm, Perm], ...]
    cells: tuple[tuple[PolyElem, ...], ...]
    column_sums: tuple[PolyElem, ...]


@dataclass(frozen=True)
class ObstructionTable:
    """phi_{x,y} values on basis triples, rows grouped into H-orbits of the
    factorizations of g; per-block column sums certify the orbit-reduced
    vanishing statement."""

    g: Perm
    alpha_kind: str
    columns: tuple[tuple[int, ...], ...]
    blocks: tuple[OrbitBlock, ...]

    @property
    def rows(self) -> tuple[tuple[Perm, Perm], ...]:
        return tuple(row for block in self.blocks for row in block.rows)

    @property
    def cells(self) -> tuple[tuple[PolyElem, ...], ...]:
        return tuple(row for block in self.blocks for row in block.cells)

    @property
    def column_sums(self) -> tuple[PolyElem, ...]:
        n = self.g.n
        totals = [PolyElem.zero(n)] * len(self.columns)
        for block in self.blocks:
            totals = [t + s for t, s in zip(totals, block.column_sums)]
        return tuple(totals)

    def cell(self, x: Perm, y: Perm, triple: Sequence[int]) -> PolyElem:
        col = self.columns.index(tuple(triple))
        for block in self.blocks:
            for row, values in zip(block.rows, block.cells):
                if row == (x, y):
                    return values[col]
        raise KeyError(f"no row ({x}, {y})")

    def to_json(self) -> dict:
        return {
            "g": str(self.g),
            "alpha": self.alpha_kind,
            "columns": [list(t) for t in self.columns],
            "blocks": [
                {
                    "rows": [
                        {
                            "x": str(x),
                            "y": str(y),
                            "cells": [str(v) for v in values],
                        }
                        for (x, y), values in zip(block.rows, block.cells)
                    ],
                    "column_sums": [str(v) for v in block.column_sums],
                }
                for block in self.blocks
            ],
            "total_column_sums": [str(v) for v in self.column_sums],
        }

    def to_markdown(self) -> str:
        header = "| (x, y) | " + " | ".join(_triple_label(t) for t in self.columns) + " |"
        rule = "| --- |" + " --- |" * len(self.columns)
        lines = [f"g = {self.g}, alpha = {self.alpha_kind}", "", header, rule]
        for index, block in enumerate(self.blocks, start=1):
            for (x, y), values in zip(block.rows, block.cells):
                cells = " | ".join(render_cell(v) for v in values)
                lines.append(f"| ({x}, {y}) | {cells} |")
            sums = " | ".join(render_cell(v) for v in block.column_sums)
            lines.append(f"| block {index} sum | {sums} |")
        if len(self.blocks) > 1:
            sums = " | ".join(render_cell(v) for v in self.column_sums)
            lines.append(f"| total | {sums} |")
        return "\n".join(lines)


def obstruction_table(
    alpha_kind: str,
    g: Perm,
    subgroup: Subgroup,
    triples: Sequence[Sequence[int]],
    reps: Sequence[tuple[Perm, Perm]] | None = None,
) -> ObstructionTable:
    """Tabulate phi_{x,y} over the factorizations x * y = g with x in the
    support of the chosen alpha family and y a 3-cycle.

    The factorizations split into orbits under diagonal conjugation by
    Z(g); one H-orbit per Z(g)-orbit is tabulated as a block (the orbit
    reduction extends a vanishing block sum over the H-orbit of any single
    factorization to the whole Z(g)-orbit, so tabulating the remaining
    H-orbits would be redundant).  ``reps`` selects the factorization whose
    H-orbit is shown for each Z(g)-orbit, in block order; by default the
    lexicographically first H-orbit of each Z(g)-orbit is used.

    The decomposition validates the reduction hypotheses (H centralizes g;
    each joint centralizer Z(x) cap Z(y) normalizes H), so vanishing
    per-block column sums certify that the full sum over all
    factorizations vanishes on every basis triple.
    """
    if alpha_kind not in _ALPHA_BUILDERS:
        raise ValueError(
            f"unknown alpha kind {alpha_kind!r}; expected one of {sorted(_ALPHA_BUILDERS)}"
        )
    n = g.n
    alpha = _ALPHA_BUILDERS[alpha_kind](n)
    beta = kappa_L_tri(_A, _B, n)
    decomp = orbit_decomposition(g, alpha.support(), beta.support(), subgroup)
    zg = centralizer(g)
    zkeys = [diag_conj_orbit(zg, orbit[0])[0] for orbit in decomp.orbits]
    groups: dict[tuple[Perm, Perm], list[int]] = {}
    for index, key in enumerate(zkeys):
        groups.setdefault(key, []).append(index)
    if reps is None:
        chosen = sorted(indices[0] for indices in groups.values())
    else:
        located: dict[tuple[Perm, Perm], int] = {}
        for rep in reps:
            pair = (rep[0], rep[1])
            matches = [i for i, orbit in enumerate(decomp.orbits) if pair in orbit]
            if not matches:
                raise ValueError(f"({pair[0]}, {pair[1]}) is not a factorization of {g}")
            key = zkeys[matches[0]]
            if key in located:
                raise ValueError(
                    f"({pair[0]}, {pair[1]}) lies in an already-represented Z(g)-orbit"
                )
            located[key] = matches[0]
        if set(located) != set(groups):
            raise ValueError(
                "representatives must cover every Z(g)-orbit of the factorizations"
            )
        chosen = list(located.values())
    columns = tuple(tuple(t) for t in triples)
    blocks = []
    for index in chosen:
        orbit = decomp.orbits[index]
        cells = tuple(
            tuple(phi_xy(alpha, beta, x, y, t) for t in columns) for x, y in orbit
        )
        sums = []
        for col in range(len(columns)):
            total = PolyElem.zero(n)
            for row in cells:
                total = total + row[col]
            sums.append(total)
        blocks.append(OrbitBlock(rows=orbit, cells=cells, column_sums=tuple(sums)))
    return ObstructionTable(
        g=g, alpha_kind=alpha_kind, columns=columns, blocks=tuple(blocks)
    )


# -- the worked table cases ------------------------------------------------------------------------

# Each entry fixes the degree, group element, reduction subgroup H, the
# factorization whose H-orbit forms each block, and the basis triples that
# survive the fixed-space kernel argument.  The alpha kinds record which
# obstruction families the tables cover: the products of two 3-cycle
# families vanish everywhere (kinds L-tri and C-tri), while the 5-cycle
# times 3-cycle tables (kind C-penta) have entries that cancel per column.


@dataclass(frozen=True)
class TableCase:
    """A named obstruction-table scenario at its minimal degree."""

    case_id: str
    n: int
    g: str
    subgroup: tuple[str, ...]
    reps: tuple[tuple[str, str], ...]
    triples: tuple[tuple[int, int, int], ...]
    alpha_kinds: tuple[str, ...]

    def build(self) -> list[ObstructionTable]:
        g = parse_perm(self.g, self.n)
        subgroup = Subgroup.generated(
            [parse_perm(h, self.n) for h in self.subgroup], self.n
        )
        reps = tuple(
            (parse_perm(x, self.n), parse_perm(y, self.n)) for x, y in self.reps
        )
        return [
            obstruction_table(kind, g, subgroup, self.triples, reps=reps)
            for kind in self.alpha_kinds
        ]


TABLE_CASES: dict[str, TableCase] = {
    case.case_id: case
    for case in (
        TableCase(
            "identity",
            n=3,
            g="()",
            subgroup=("(1 2)", "(1 2 3)"),
            reps=(("(1 2 3)", "(1 3 2)"),),
            triples=((1, 2, 3),),
            alpha_kinds=("L-tri", "C-tri"),
        ),
        TableCase(
            "tri",
            n=4,
            g="(1 2 3)",
            subgroup=("(1 2 3)",),
            reps=(("(1 3 2)", "(1 3 2)"), ("(1 2 4)", "(4 2 3)")),
            triples=((1, 2, 3), (1, 2, 4)),
            alpha_kinds=("L-tri", "C-tri"),
        ),
        TableCase(
            "2211",
            n=4,
            g="(1 2)(3 4)",
            subgroup=("(1 3 2 4)",),
            reps=(("(1 2 3)", "(2 3 4)"),),
            triples=((1, 2, 3),),
            alpha_kinds=("L-tri", "C-tri"),
        ),
        TableCase(
            "33",
            n=6,
            g="(1 2 3)(4 5 6)",
            subgroup=("(1 2 3)", "(4 5 6)", "(1 4)(2 5)(3 6)"),
            reps=(("(1 2 3)", "(4 5 6)"),),
            triples=((1, 2, 3), (1, 2, 4)),
            alpha_kinds=("L-tri", "C-tri"),
        ),
        TableCase(
            "penta-33",
            n=8,
            g="(1 2 3 4 5)(6 7 8)",
            subgroup=("(1 2 3 4 5)", "(6 7 8)"),
            reps=(("(1 2 3 4 5)", "(6 7 8)"),),
            triples=((1, 6, 7), (6, 7, 8)),
            alpha_kinds=("C-penta",),
        ),
        TableCase(
            "7cycle",
            n=7,
            g="(1 2 3 4 5 6 7)",
            subgroup=("(1 2 3 4 5 6 7)",),
            reps=(("(1 2 3 4 5)", "(5 6 7)"),),
            triples=((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 5)),
            alpha_kinds=("C-penta",),
        ),
        TableCase(
            "4-2",
            n=6,
            g="(1 2 3 4)(5 6)",
            subgroup=("(1 2 3 4)", "(5 6)"),
            reps=(("(1 2 3 4 5)", "(4 5 6)"), ("(1 2 3 5 6)", "(3 4 6)")),
            triples=((1, 2, 3), (1, 2, 5), (1, 3, 5), (1, 5, 6)),
            alpha_kinds=("C-penta",),
        ),
        TableCase(
            "3-3",
            n=6,
            g="(1 2 3)(4 5 6)",
            subgroup=("(1 2 3)", "(4 5 6)"),
            reps=(("(1 2 3 4 5)", "(5 6 3)"),),
            triples=((1, 2, 3), (4, 5, 6), (1, 2, 4), (1, 4, 5)),
            alpha_kinds=("C-penta",),
        ),
        TableCase(
            "5cycle",
            n=6,
            g="(1 2 3 4 5)",
            subgroup=("(1 2 3 4 5)",),
            reps=(
                ("(1 2 3 5 4)", "(3 5 4)"),
                ("(1 2 5 3 4)", "(2 5 4)"),
                ("(1 2 3 4 6)", "(6 4 5)"),
            ),
            triples=((1, 2, 3), (1, 2, 4), (1, 2, 6), (1, 3, 6)),
            alpha_kinds=("C-penta",),
        ),
        TableCase(
            "2-2",
            n=5,
            g="(1 2)(3 4)",
            subgroup=("(1 3 2 4)", "(1 2)"),
            reps=(("(1 2 3 4 5)", "(5 4 2)"),),
            triples=((1, 2, 3), (1, 2, 5), (1, 3, 5)),
            alpha_kinds=("C-penta",),
        ),
        TableCase(
            "3cycle",
            n=5,
            g="(1 2 3)",
            subgroup=("(1 2 3)", "(4 5)"),
            reps=(("(1 2 3 5 4)", "(4 5 3)"),),
            triples=((1, 2, 3), (1, 2, 4), (1, 4, 5)),
            alpha_kinds=("C-penta",),
        ),
    )
}


def case_tables(case_id: str) -> list[ObstructionTable]:
    """Build the obstruction table(s) for a named case, one per alpha kind."""
    if case_id not in TABLE_CASES:
        raise ValueError(
            f"unknown case {case_id!r}; expected one of {sorted(TABLE_CASES)}"
        )
    return TABLE_CASES[case_id].build()


# -- classification ------------------------------------------------------------------------------


def general_family(n: int) -> tuple[TwoCochain, TwoCochain]:
    """The full symbolic candidate: kappa^L = a1*kappa_1 + kappa^L_tri(a,b),
    kappa^C = kappa^C_tri(c) + kappa^C_penta(a,b)."""
    kl = kappa_L1(_A1, n) + kappa_L_tri(_A, _B, n)
    kc = kappa_C_tri(_C, n) + kappa_C_penta(_A, _B, n)
    return kl, kc


@dataclass(frozen=True)
class ClassificationReport:
    """Outcome of running the conditions on the general symbolic family and
    on its two specializations."""

    n: int
    residuals: tuple[ConditionWitness, ...]
    a1_divisible: bool
    vanish_without_triangle_terms: bool
    lie_branch: ConditionReport
    off_identity_branch: ConditionReport
    off_identity_params: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return (
            self.a1_divisible
            and self.vanish_without_triangle_terms
            and self.lie_branch.all_pass
            and self.off_identity_branch.all_pass
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "residuals": [w.to_json() for w in self.residuals],
            "a1_divisible": self.a1_divisible,
            "vanish_without_triangle_terms": self.vanish_without_triangle_terms,
            "lie_branch_passes": self.lie_branch.all_pass,
            "off_identity_branch_passes": self.off_identity_branch.all_pass,
            "off_identity_params": list(self.off_identity_params),
            "consistent": self.consistent,
        }

    def to_markdown(self) -> str:
        off = ", ".join(self.off_identity_params)
        lines = [
            f"classification for n = {self.n}",
            "",
            "general family kappa^L = a1*kappa_1 + kappa^L_tri(a,b), "
            "kappa^C = kappa^C_tri(c) + kappa^C_penta(a,b):",
            f"- cross-term residuals found: {len(self.residuals)}",
            f"- every residual divisible by a1: {'yes' if self.a1_divisible else 'NO'}",
            "- every residual vanishes when a = b = c = 0: "
            f"{'yes' if self.vanish_without_triangle_terms else 'NO'}",
            "",
            "branches:",
            "- Lie branch (a = b = c = 0, a1 free): "
            f"{'all conditions pass' if self.lie_branch.all_pass else 'FAILS'}",
            f"- off-identity branch (a1 = 0; {off} free): "
            f"{'all conditions pass' if self.off_identity_branch.all_pass else 'FAILS'}",
        ]
        return "\n".join(lines)


def _all_residuals(kl: TwoCochain, kc: TwoCochain) -> list[ConditionWitness]:
    """Every nonzero residual of conditions (2)-(4) on class representatives."""
    n = kl.n
    reps = sorted(cls.rep for cls in conjugacy_classes(n))
    suppL = kl.support()
    out = []
    for g in reps:
        factors3 = factor_pairs(g, suppL, suppL)
        factors4 = factor_pairs(g, kc.support(), suppL)
        for triple in _triples(n):
            r2 = _psi_value(kl, g, *triple)
            if r2:
                out.append(ConditionWitness(2, (g,), triple, r2))
            r3 = (
                phi_component(kl, kl, g, triple, factors3)
                - _psi_value(kc, g, *triple) * 2
            )
            if r3:
                out.append(ConditionWitness(3, (g,), triple, r3))
            r4 = phi_component(kc, kl, g, triple, factors4)
            if r4:
                out.append(ConditionWitness(4, (g,), triple, r4))
    return out


def _coefficients(witnesses) -> list[ParamPoly]:
    return [
        coeff for w in witnesses for coeff in w.residual.terms.values()
    ]


def classify(n: int) -> ClassificationReport:
    """Run the conditions on the general symbolic family, inspect the failing
    residuals, and verify the two solution branches: {a1 free, a=b=c=0} and
    {a1=0, (a,b,c) free}."""
    if not 3 <= n <= max_degree():
        raise ValueError(f"degree must be between 3 and {max_degree()}")
    kl, kc = general_family(n)
    residuals = tuple(_all_residuals(kl, kc))
    coeffs = _coefficients(residuals)
    a1_divisible = all(p.divisible_by("a1") for p in coeffs)
    vanish = all(
        p.substitute({"a": 0, "b": 0, "c": 0}).is_zero() for p in coeffs
    )
    origin = {"a": 0, "b": 0, "c": 0}
    lie = check_conditions(kl.substitute(origin), kc.substitute(origin))
    kl_off = kl.substitute({"a1": 0})
    off = check_conditions(kl_off, kc.substitute({"a1": 0}))
    used = _params_used((kl_off, kc))
    params = tuple(name for name in ("a", "b", "c") if name in used)
    return ClassificationReport(
        n=n,
        residuals=residuals,
        a1_divisible=a1_divisible,
        vanish_without_triangle_terms=vanish,
        lie_branch=lie,
        off_identity_branch=off,
        off_identity_params=params,
    )


def _params_used(cochains) -> set[str]:
    used = set()
    for alpha in cochains:
        for comp in alpha.components().values():
            for value in comp.values():
                for coeff in value.terms.values():
                    for expo in coeff.terms:
                        used.update(
                            name for e, name in zip(expo, PARAMS) if e
                        )
    return used


__all__ = [
    "CONDITION_LABELS",
    "ConditionWitness",
    "ConditionReport",
    "OrbitBlock",
    "ObstructionTable",
    "ClassificationReport",
    "psi",
    "phi",
    "phi_xy",
    "phi_component",
    "closed_form_phi_xy",
    "check_conditions",
    "mixed_jacobi_residual",
    "obstruction_table",
    "render_cell",
    "general_family",
    "classify",
]
