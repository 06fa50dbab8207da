"""Rewriting-system oracle for the PBW property.

The deformation determined by a parameter map kappa = kappa^L + kappa^C is
the quotient of T(V) # S_n by the relations

    e_j e_i - e_i e_j - kappa(e_j, e_i)        (j > i),

with the deformation parameter t specialized to 1.  The quotient has the
PBW property exactly when the rewriting system

    (i)  e_j e_i  ->  e_i e_j + kappa(e_j, e_i)   for j > i,
    (ii) g * e_i  ->  e_{g(i)} * g                for every g,

is confluent, so that every word has a unique normal form: a weakly
increasing commutative monomial followed by a single group element.  The
term order is degree-lexicographic with group elements of degree zero
pushed to the right; both rules are strictly decreasing, so reduction
terminates.  This module reduces words, runs the diamond-lemma overlap
check, and counts normal forms, giving a PBW oracle that is independent
of the cochain-level condition checker.

Group elements never obstruct confluence on their own: candidate words
carry at most one group element once rule (ii) has been applied while
reading the word, and g * h ambiguities resolve definitionally through
composition.  The overlaps that matter are e_k e_j e_i with k > j > i,
plus g * e_j e_i, which holds exactly when kappa is invariant and is
verified once per group element inside :func:`check_overlaps`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .algebra import DEGREE_CAP, DegreeCapError, ParamPoly, PolyElem, SkewElem
from .cochains import TwoCochain
from .perms import Perm, symmetric_group

__all__ = [
    "Ambiguity",
    "OverlapReport",
    "RewriteSystem",
    "check_overlaps",
    "dimension_census",
    "normal_form",
]

#: a word in the tensor algebra: generator indices and group elements,
#: multiplied left to right.
Letter = Union[int, Perm]

# internal representation of a partially reduced element: each key is
# (word over 1..n, trailing group element), each value its coefficient.
_Terms = dict[tuple[tuple[int, ...], Perm], ParamPoly]


class RewriteSystem:
    """The reduction rules attached to a parameter map (kappa^L, kappa^C).

    Rule (i) is stored explicitly as the skew-algebra value kappa(e_j, e_i)
    for every pair j > i; rule (ii) is a formula, instantiated on demand.

    >>> from .cochains import TwoCochain, kappa_L1
    >>> rs = RewriteSystem(kappa_L1(1, 3), TwoCochain(3))
    >>> str(normal_form(rs, [2, 1]))
    '(-e1 + e2 + e1*e2) # ()'
    """

    def __init__(self, kappa_L: TwoCochain, kappa_C: TwoCochain):
        if kappa_L.n != kappa_C.n:
            raise ValueError("degree mismatch between the two cochains")
        if kappa_L.kind != "linear" and not kappa_L.is_zero():
            raise ValueError(f"kappa^L must be linear, got kind {kappa_L.kind!r}")
        if kappa_C.kind != "constant" and not kappa_C.is_zero():
            raise ValueError(f"kappa^C must be constant, got kind {kappa_C.kind!r}")
        self._n = kappa_L.n
        self._kappa_L = kappa_L
        self._kappa_C = kappa_C
        support = set(kappa_L.support()) | set(kappa_C.support())
        pair: dict[tuple[int, int], dict[Perm, PolyElem]] = {}
        for j in range(2, self._n + 1):
            for i in range(1, j):
                comps = {}
                for g in support:
                    value = kappa_L.value(g, j, i) + kappa_C.value(g, j, i)
                    if value:
                        comps[g] = value
                if comps:
                    pair[(j, i)] = comps
        self._pair = pair

    @property
    def n(self) -> int:
        return self._n

    @property
    def kappa_L(self) -> TwoCochain:
        return self._kappa_L

    @property
    def kappa_C(self) -> TwoCochain:
        return self._kappa_C

    def symbolic(self) -> bool:
        """True when some rule coefficient still involves a, b, c or a1."""
        return any(
            not coeff.is_constant()
            for comps in self._pair.values()
            for p in comps.values()
            for coeff in p.terms.values()
        )

    def kappa(self, j: int, i: int) -> SkewElem:
        """kappa(e_j, e_i) as an element of S(V) # S_n."""
        for index in (j, i):
            if not 1 <= index <= self._n:
                raise ValueError(f"generator index {index} out of range 1..{self._n}")
        sign, key = (1, (j, i)) if j > i else (-1, (i, j))
        if j == i:
            return SkewElem.zero(self._n)
        comps = self._pair.get(key, {})
        return SkewElem(self._n, {g: p * sign for g, p in comps.items()})

    def rules(self) -> list[str]:
        """Human-readable rule list (commutations first, then the twist)."""
        lines = []
        for j in range(2, self._n + 1):
            for i in range(1, j):
                rhs = f"e{i}*e{j}"
                correction = self.kappa(j, i)
                if not correction.is_zero():
                    rhs += f" + ({correction})"
                lines.append(f"e{j}*e{i} -> {rhs}")
        lines.append("g*ei -> e_{g(i)}*g  for every g in the group")
        return lines

    def __repr__(self) -> str:
        return f"RewriteSystem(n={self._n}, rules={len(self._pair)}+twist)"


def _first_descent(word: tuple[int, ...]) -> Optional[int]:
    for t in range(len(word) - 1):
        if word[t] > word[t + 1]:
            return t
    return None


def _add_term(terms: _Terms, key: tuple[tuple[int, ...], Perm], coeff: ParamPoly) -> None:
    total = terms.get(key, ParamPoly.zero()) + coeff
    if total:
        terms[key] = total
    else:
        terms.pop(key, None)


def _one_step(
    rs: RewriteSystem, word: tuple[int, ...], g: Perm, t: int
) -> list[tuple[tuple[int, ...], Perm, ParamPoly]]:
    """Apply rule (i) once at position t; the trailing group element is g."""
    j, i = word[t], word[t + 1]
    if j <= i:
        raise ValueError(f"no descent at position {t} of {word}")
    left, right = word[:t], word[t + 2 :]
    out = [(left + (i, j) + right, g, ParamPoly.one())]
    for h, p in rs._pair.get((j, i), {}).items():
        twisted = tuple(h(q) for q in right)
        hg = h * g
        for mono, coeff in p.terms.items():
            out.append((left + mono + twisted, hg, coeff))
    return out


def _reduce(rs: RewriteSystem, word: tuple[int, ...], g: Perm) -> _Terms:
    """Fully reduce word * g.  Terminates because each application of
    rule (i) either lowers the degree (the kappa corrections) or keeps it
    while removing an inversion (the swap)."""
    out: _Terms = {}
    pending = [(word, g, ParamPoly.one())]
    while pending:
        current, grp, coeff = pending.pop()
        t = _first_descent(current)
        if t is None:
            _add_term(out, (current, grp), coeff)
            continue
        for new_word, new_grp, step_coeff in _one_step(rs, current, grp, t):
            pending.append((new_word, new_grp, coeff * step_coeff))
    return out


def _assemble(n: int, terms: _Terms) -> SkewElem:
    components: dict[Perm, PolyElem] = {}
    for (mono, g), coeff in terms.items():
        poly = components.get(g, PolyElem.zero(n)) + PolyElem(n, {mono: coeff})
        if poly:
            components[g] = poly
        else:
            components.pop(g, None)
    return SkewElem(n, components)


def _parse_word(n: int, word: Sequence[Letter]) -> tuple[tuple[int, ...], Perm]:
    """Push all group elements to the right through rule (ii)."""
    g = Perm.identity(n)
    eword: list[int] = []
    for letter in word:
        if isinstance(letter, Perm):
            if letter.n != n:
                raise ValueError("degree mismatch between word and rewrite system")
            g = g * letter
        elif isinstance(letter, int) and not isinstance(letter, bool):
            if not 1 <= letter <= n:
                raise ValueError(f"generator index {letter} out of range 1..{n}")
            eword.append(g(letter))
        else:
            raise TypeError(f"word letters are generator indices or Perms, got {letter!r}")
    if len(eword) > DEGREE_CAP:
        raise DegreeCapError(f"word degree {len(eword)} exceeds the cap {DEGREE_CAP}")
    return tuple(eword), g


def normal_form(rs: RewriteSystem, word: Sequence[Letter]) -> SkewElem:
    """Reduce a word (letters e_i as ints, group elements as Perms) to its
    normal form in S(V) # S_n.

    >>> from .cochains import TwoCochain
    >>> rs = RewriteSystem(TwoCochain(3), TwoCochain(3))
    >>> str(normal_form(rs, [2, 1]))
    'e1*e2 # ()'
    >>> g = Perm.from_cycles([(1, 2)], 3)
    >>> str(normal_form(rs, [g, 1]))
    'e2 # (1 2)'
    """
    eword, g = _parse_word(rs.n, word)
    return _assemble(rs.n, _reduce(rs, eword, g))


@dataclass(frozen=True)
class Ambiguity:
    """An overlap whose two one-step reductions disagree."""

    word: tuple[Letter, ...]
    difference: SkewElem

    def __str__(self) -> str:
        letters = "*".join(f"e{x}" if isinstance(x, int) else f"({x})" for x in self.word)
        return f"{letters}: reductions differ by {self.difference}"


@dataclass(frozen=True)
class OverlapReport:
    """Outcome of the diamond-lemma check."""

    n: int
    passed: bool
    checked: int
    ambiguity: Optional[Ambiguity] = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "checked": self.checked,
            "ambiguity": None if self.ambiguity is None else str(self.ambiguity),
        }

    def __str__(self) -> str:
        if self.passed:
            return f"confluent: all {self.checked} overlaps resolve"
        return f"not confluent ({self.ambiguity})"


def _reduce_all(
    rs: RewriteSystem, branches: list[tuple[tuple[int, ...], Perm, ParamPoly]]
) -> _Terms:
    total: _Terms = {}
    for word, g, coeff in branches:
        for key, value in _reduce(rs, word, g).items():
            _add_term(total, key, value * coeff)
    return total


def _difference(rs: RewriteSystem, left: _Terms, right: _Terms) -> SkewElem:
    diff = dict(left)
    for key, value in right.items():
        _add_term(diff, key, -value)
    return _assemble(rs.n, diff)


def check_overlaps(rs: RewriteSystem) -> OverlapReport:
    """Decide confluence by resolving every genuine overlap ambiguity.

    Twist overlaps g * e_j e_i are checked first: pushing g through and
    then commuting must match commuting and then pushing g through, which
    holds exactly when kappa is G-invariant.  Then every word
    e_k e_j e_i with k > j > i is reduced starting from each of its two
    descents and the results are compared.  Symbolic coefficients are
    supported for n <= 4; for n = 5 substitute rational parameters first.
    """
    n = rs.n
    if rs.symbolic():
        if n > 4:
            raise ValueError(
                "symbolic overlap checking is capped at n = 4; "
                "substitute rational parameters for n = 5"
            )
    elif n > 5:
        raise ValueError("overlap checking is capped at n = 5")

    checked = 0
    pairs = [(j, i) for j in range(2, n + 1) for i in range(1, j)]
    for g in symmetric_group(n):
        for j, i in pairs:
            checked += 1
            # push g through first, then reduce
            twisted = _reduce(rs, (g(j), g(i)), g)
            # commute first, then push g through each branch
            branches = [
                (tuple(g(q) for q in word), g * h, coeff)
                for word, h, coeff in _one_step(rs, (j, i), Perm.identity(n), 0)
            ]
            commuted = _reduce_all(rs, branches)
            diff = _difference(rs, twisted, commuted)
            if not diff.is_zero():
                ambiguity = Ambiguity((g, j, i), diff)
                return OverlapReport(n, False, checked, ambiguity)

    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        checked += 1
        word = (k, j, i)
        identity = Perm.identity(n)
        left = _reduce_all(rs, _one_step(rs, word, identity, 0))
        right = _reduce_all(rs, _one_step(rs, word, identity, 1))
        diff = _difference(rs, left, right)
        if not diff.is_zero():
            return OverlapReport(n, False, checked, Ambiguity(word, diff))
    return OverlapReport(n, True, checked)


def dimension_census(rs: RewriteSystem, maxdeg: int = 3) -> list[int]:
    """Dimensions of the filtered pieces spanned by all normal forms.

    Entry d counts the distinct basis elements (weakly increasing monomial
    times group element) reached by reducing every word of degree <= d.
    Weakly increasing words are their own normal forms, so the span always
    contains the standard basis vectors it touches and the count is the
    dimension of the span, with no rank computation needed.  A PBW
    deformation predicts entry d = (number of monomials of degree <= d in
    n variables) * n!.
    """
    n = rs.n
    if n > 4:
        raise ValueError("dimension census is capped at n = 4")
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    if maxdeg > DEGREE_CAP:
        raise DegreeCapError(f"census degree {maxdeg} exceeds the cap {DEGREE_CAP}")
    group = list(symmetric_group(n))
    seen: set[tuple[tuple[int, ...], Perm]] = set()
    dims = []
    for d in range(maxdeg + 1):
        for word in itertools.product(range(1, n + 1), repeat=d):
            for g in group:
                for (mono, h), _coeff in _reduce(rs, word, g).items():
                    if len(mono) > d:
                        raise AssertionError("reduction raised the degree")
                    seen.add((mono, h))
        dims.append(len(seen))
    return dims
