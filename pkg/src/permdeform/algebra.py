"""Exact arithmetic for the skew group algebra S(V) # S_n.

The coefficient tower, bottom to top:

- :class:`ParamPoly` -- polynomials over Q in the four deformation
  parameters ``a``, ``b``, ``c``, ``a1`` (commuting formal symbols).
- :class:`Vect` -- vectors in V = Q^n with ParamPoly coordinates.
- :class:`PolyElem` -- elements of the symmetric algebra S(V):
  polynomials in e_1, ..., e_n with ParamPoly coefficients, total
  degree capped at :data:`DEGREE_CAP`.
- :class:`SkewElem` -- elements of S(V) # S_n, a finite sum of simple
  tensors p (x) g stored componentwise by group element.

Everything is exact (``fractions.Fraction``); there is no floating point.
The ground field is Q rather than C: every identity this package checks
has rational coefficients, so the restriction loses nothing, but
constructions that genuinely need complex scalars are out of scope.

Conventions:

- The group permutes coordinates: g . e_i = e_{g(i)}, extended to S(V)
  by algebra automorphisms.
- Multiplication in S(V) # S_n follows the twist law
  (r (x) g)(s (x) h) = r (g . s) (x) gh.
- The conjugation action on the skew algebra is
  g . (s (x) h) = (g . s) (x) g h g^{-1}.

A small exact linear-algebra toolkit over Fraction (:func:`rref`,
:func:`rank`, :func:`nullspace`) lives at the bottom; the cohomology and
rewriting layers use it.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .perms import Perm

PARAMS = ("a", "b", "c", "a1")
_PARAM_INDEX = {name: i for i, name in enumerate(PARAMS)}

#: Largest total degree a PolyElem may carry.  Deformation values have
#: degree <= 1 and obstruction residuals degree <= 2; the rewriting
#: oracle needs degree 3.  Exceeding the cap raises DegreeCapError
#: rather than truncating.
DEGREE_CAP = 3

Scalar = Union[int, Fraction, "ParamPoly"]


class DegreeCapError(ValueError):
    """A polynomial operation produced total degree above DEGREE_CAP."""


# -- parameter polynomials -----------------------------------------------------


class ParamPoly:
    """A polynomial in the parameters a, b, c, a1 with rational coefficients.

    Stored sparsely as exponent-vector -> Fraction, zero coefficients
    dropped.  Instances are immutable; all operators return new objects.

    >>> p = ParamPoly.param("a") - ParamPoly.param("b")
    >>> str(p * p)
    'a^2 - 2*a*b + b^2'
    >>> str(p.substitute({"a": Fraction(1, 2), "b": 0}))
    '1/2'
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int, int], Fraction | int] | None = None):
        clean: dict[tuple[int, int, int, int], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != len(PARAMS) or any(e < 0 for e in exps):
                    raise ValueError(f"bad exponent vector {exps}")
                coeff = Fraction(coeff)
                if coeff:
                    clean[exps] = clean.get(exps, Fraction(0)) + coeff
                    if not clean[exps]:
                        del clean[exps]
        self._terms = clean

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "ParamPoly":
        return ParamPoly()

    @staticmethod
    def one() -> "ParamPoly":
        return ParamPoly.const(1)

    @staticmethod
    def const(value: Fraction | int) -> "ParamPoly":
        return ParamPoly({(0, 0, 0, 0): Fraction(value)})

    @staticmethod
    def param(name: str) -> "ParamPoly":
        if name not in _PARAM_INDEX:
            raise ValueError(f"unknown parameter {name!r}; expected one of {PARAMS}")
        exps = [0] * len(PARAMS)
        exps[_PARAM_INDEX[name]] = 1
        return ParamPoly({tuple(exps): 1})

    # -- queries ---------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, int, int, int], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial, as a Fraction."""
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self._terms.get((0, 0, 0, 0), Fraction(0))

    def divisible_by(self, name: str) -> bool:
        """Whether every term carries a positive power of the parameter."""
        i = _PARAM_INDEX[name]
        return all(exps[i] > 0 for exps in self._terms)

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: Scalar) -> "ParamPoly":
        if not isinstance(other, (int, Fraction, ParamPoly)):
            return NotImplemented
        other = as_parampoly(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            total = terms.get(exps, Fraction(0)) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        out = ParamPoly.__new__(ParamPoly)
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        out = ParamPoly.__new__(ParamPoly)
        out._terms = {exps: -coeff for exps, coeff in self._terms.items()}
        return out

    def __sub__(self, other: Scalar) -> "ParamPoly":
        if not isinstance(other, (int, Fraction, ParamPoly)):
            return NotImplemented
        return self + (-as_parampoly(other))

    def __rsub__(self, other: Scalar) -> "ParamPoly":
        return as_parampoly(other) + (-self)

    def __mul__(self, other: Scalar) -> "ParamPoly":
        if not isinstance(other, (int, Fraction, ParamPoly)):
            return NotImplemented
        other = as_parampoly(other)
        terms: dict[tuple[int, int, int, int], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                total = terms.get(exps, Fraction(0)) + c1 * c2
                if total:
                    terms[exps] = total
                else:
                    terms.pop(exps, None)
        out = ParamPoly.__new__(ParamPoly)
        out._terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ParamPoly":
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        out = ParamPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, values: Mapping[str, Fraction | int]) -> "ParamPoly":
        """Replace some parameters by rational values (partial is fine)."""
        for name in values:
            if name not in _PARAM_INDEX:
                raise ValueError(f"unknown parameter {name!r}; expected one of {PARAMS}")
        terms: dict[tuple[int, int, int, int], Fraction] = {}
        for exps, coeff in self._terms.items():
            factor = coeff
            new_exps = list(exps)
            for name, value in values.items():
                i = _PARAM_INDEX[name]
                factor *= Fraction(value) ** exps[i]
                new_exps[i] = 0
            key = tuple(new_exps)
            total = terms.get(key, Fraction(0)) + factor
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        out = ParamPoly.__new__(ParamPoly)
        out._terms = terms
        return out

    # -- comparison and rendering -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self._terms == other._terms

    def _term_str(self, exps: tuple[int, int, int, int], coeff: Fraction) -> tuple[int, str]:
        """(sign, unsigned text) for one term."""
        parts = []
        for name, e in zip(PARAMS, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        mag = abs(coeff)
        if not parts:
            body = str(mag)
        elif mag == 1:
            body = "*".join(parts)
        else:
            body = "*".join([str(mag)] + parts)
        return (1 if coeff > 0 else -1, body)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps in sorted(self._terms, reverse=True):
            sign, body = self._term_str(exps, self._terms[exps])
            if not pieces:
                pieces.append(body if sign > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if sign > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return str(self)


def as_parampoly(value: Scalar) -> ParamPoly:
    """Coerce an int, Fraction, or ParamPoly to a ParamPoly."""
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return ParamPoly.const(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to ParamPoly")


def parameters() -> tuple[ParamPoly, ParamPoly, ParamPoly, ParamPoly]:
    """The four generators (a, b, c, a1) as polynomials."""
    return tuple(ParamPoly.param(name) for name in PARAMS)  # type: ignore[return-value]


# -- vectors in V ---------------------------------------------------------------


class Vect:
    """A vector in V = Q^n: coordinates on e_1, ..., e_n, each a ParamPoly.

    >>> v = Vect.basis(1, 3) - Vect.basis(2, 3)
    >>> str(v)
    'e1 - e2'
    >>> str(v.act(Perm.from_cycles([(1, 2, 3)], 3)))
    'e2 - e3'
    """

    __slots__ = ("_coords",)

    def __init__(self, coords: Sequence[Scalar]):
        self._coords = tuple(as_parampoly(c) for c in coords)
        if not self._coords:
            raise ValueError("a vector needs at least one coordinate")

    @staticmethod
    def zero(n: int) -> "Vect":
        return Vect([0] * n)

    @staticmethod
    def basis(i: int, n: int) -> "Vect":
        """The standard basis vector e_i (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"basis index {i} out of range 1..{n}")
        return Vect([1 if j == i else 0 for j in range(1, n + 1)])

    @staticmethod
    def sum_of(indices: Iterable[int], n: int) -> "Vect":
        """e_I = sum of e_i over i in I."""
        out = Vect.zero(n)
        for i in indices:
            out = out + Vect.basis(i, n)
        return out

    @property
    def n(self) -> int:
        return len(self._coords)

    @property
    def coords(self) -> tuple[ParamPoly, ...]:
        return self._coords

    def coeff(self, i: int) -> ParamPoly:
        """Coordinate on e_i (1-based)."""
        return self._coords[i - 1]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._coords)

    def act(self, g: Perm) -> "Vect":
        """g . v, permuting coordinates: the e_i coordinate moves to e_{g(i)}."""
        if g.n != self.n:
            raise ValueError("degree mismatch")
        coords = [ParamPoly.zero()] * self.n
        for i in range(1, self.n + 1):
            coords[g(i) - 1] = self._coords[i - 1]
        return Vect(coords)

    def __add__(self, other: "Vect") -> "Vect":
        if not isinstance(other, Vect):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("degree mismatch")
        return Vect([x + y for x, y in zip(self._coords, other._coords)])

    def __sub__(self, other: "Vect") -> "Vect":
        return self + (-other)

    def __neg__(self) -> "Vect":
        return Vect([-c for c in self._coords])

    def __mul__(self, scalar: Scalar) -> "Vect":
        scalar = as_parampoly(scalar)
        return Vect([c * scalar for c in self._coords])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vect) and self._coords == other._coords

    def to_polyelem(self) -> "PolyElem":
        return PolyElem(self.n, {(i,): c for i, c in enumerate(self._coords, start=1)})

    @staticmethod
    def from_polyelem(p: "PolyElem") -> "Vect":
        """Inverse of to_polyelem; requires a homogeneous degree-1 element."""
        coords = [ParamPoly.zero()] * p.n
        for mono, coeff in p.terms.items():
            if len(mono) != 1:
                raise ValueError(f"not homogeneous of degree 1: {p}")
            coords[mono[0] - 1] = coeff
        return Vect(coords)

    def __str__(self) -> str:
        return str(self.to_polyelem())

    def __repr__(self) -> str:
        return str(self)


# -- symmetric algebra -----------------------------------------------------------


class PolyElem:
    """An element of S(V): a polynomial in e_1, ..., e_n over ParamPoly.

    Monomials are sorted index tuples, e.g. (1, 2, 2) for e1*e2^2; total
    degree is capped at DEGREE_CAP.

    >>> p = PolyElem.var(1, 3) * PolyElem.var(2, 3)
    >>> str(p)
    'e1*e2'
    >>> str(act(Perm.from_cycles([(1, 2, 3)], 3), p))
    'e2*e3'
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        if n < 1:
            raise ValueError("degree must be at least 1")
        self._n = n
        clean: dict[tuple[int, ...], ParamPoly] = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(sorted(mono))
                if mono and not (1 <= mono[0] and mono[-1] <= n):
                    raise ValueError(f"monomial index out of range 1..{n}: {mono}")
                if len(mono) > DEGREE_CAP:
                    raise DegreeCapError(
                        f"monomial degree {len(mono)} exceeds the cap {DEGREE_CAP}"
                    )
                coeff = as_parampoly(coeff)
                if coeff:
                    total = clean.get(mono, ParamPoly.zero()) + coeff
                    if total:
                        clean[mono] = total
                    else:
                        clean.pop(mono, None)
        self._terms = clean

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "PolyElem":
        return PolyElem(n)

    @staticmethod
    def one(n: int) -> "PolyElem":
        return PolyElem(n, {(): 1})

    @staticmethod
    def const(n: int, value: Scalar) -> "PolyElem":
        return PolyElem(n, {(): value})

    @staticmethod
    def var(i: int, n: int) -> "PolyElem":
        """The generator e_i (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} out of range 1..{n}")
        return PolyElem(n, {(i,): 1})

    # -- queries ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> dict[tuple[int, ...], ParamPoly]:
        return dict(self._terms)

    def coeff(self, mono: Sequence[int]) -> ParamPoly:
        return self._terms.get(tuple(sorted(mono)), ParamPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((len(mono) for mono in self._terms), default=-1)

    # -- arithmetic ----------------------------------------------------------------

    def _check_same(self, other: "PolyElem") -> None:
        if self._n != other._n:
            raise ValueError("degree mismatch")

    def __add__(self, other: "PolyElem") -> "PolyElem":
        if not isinstance(other, PolyElem):
            return NotImplemented
        self._check_same(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            total = terms.get(mono, ParamPoly.zero()) + coeff
            if total:
                terms[mono] = total
            else:
                terms.pop(mono, None)
        out = PolyElem.__new__(PolyElem)
        out._n, out._terms = self._n, terms
        return out

    def __sub__(self, other: "PolyElem") -> "PolyElem":
        return self + (-other)

    def __neg__(self) -> "PolyElem":
        out = PolyElem.__new__(PolyElem)
        out._n = self._n
        out._terms = {mono: -coeff for mono, coeff in self._terms.items()}
        return out

    def __mul__(self, other: Union["PolyElem", Scalar]) -> "PolyElem":
        if isinstance(other, (int, Fraction, ParamPoly)):
            scalar = as_parampoly(other)
            terms = {}
            for mono, coeff in self._terms.items():
                total = coeff * scalar
                if total:
                    terms[mono] = total
            out = PolyElem.__new__(PolyElem)
            out._n, out._terms = self._n, terms
            return out
        if not isinstance(other, PolyElem):
            return NotImplemented
        self._check_same(other)
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(sorted(m1 + m2))
                if len(mono) > DEGREE_CAP:
                    raise DegreeCapError(
                        f"product degree {len(mono)} exceeds the cap {DEGREE_CAP}"
                    )
                total = terms.get(mono, ParamPoly.zero()) + c1 * c2
                if total:
                    terms[mono] = total
                else:
                    terms.pop(mono, None)
        out = PolyElem.__new__(PolyElem)
        out._n, out._terms = self._n, terms
        return out

    def __rmul__(self, other: Scalar) -> "PolyElem":
        return self * other

    def substitute(self, values: Mapping[str, Fraction | int]) -> "PolyElem":
        return PolyElem(self._n, {m: c.substitute(values) for m, c in self._terms.items()})

    # -- comparison and rendering ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = PolyElem.const(self._n, other)
        if not isinstance(other, PolyElem):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    @staticmethod
    def _mono_str(mono: tuple[int, ...]) -> str:
        parts = []
        for i, group in itertools.groupby(mono):
            e = len(tuple(group))
            parts.append(f"e{i}" if e == 1 else f"e{i}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono in sorted(self._terms, key=lambda m: (len(m), m)):
            coeff = self._terms[mono]
            if not mono:
                sign, body = 1, str(coeff)
                if len(coeff._terms) == 1:
                    sign, body = coeff._term_str(*next(iter(coeff._terms.items())))
            elif len(coeff._terms) == 1:
                sign, unsigned = coeff._term_str(*next(iter(coeff._terms.items())))
                body = self._mono_str(mono) if unsigned == "1" else f"{unsigned}*{self._mono_str(mono)}"
            else:
                sign, body = 1, f"({coeff})*{self._mono_str(mono)}"
            if not pieces:
                pieces.append(body if sign > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if sign > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return str(self)


def act(g: Perm, p: PolyElem) -> PolyElem:
    """The action of g on S(V): relabel every index i as g(i).

    >>> g = Perm.from_cycles([(1, 2, 3)], 3)
    >>> str(act(g, PolyElem(3, {(1, 2): 1})))
    'e2*e3'
    """
    if g.n != p.n:
        raise ValueError("degree mismatch")
    terms: dict[tuple[int, ...], ParamPoly] = {}
    for mono, coeff in p.terms.items():
        new = tuple(sorted(g(i) for i in mono))
        terms[new] = coeff
    out = PolyElem.__new__(PolyElem)
    out._n, out._terms = p.n, terms
    return out


# -- skew group algebra --------------------------------------------------------------


class SkewElem:
    """An element of S(V) # S_n: a finite sum of simple tensors p (x) g.

    >>> u = SkewElem.tensor(PolyElem.var(1, 3), Perm.from_cycles([(1, 2)], 3))
    >>> v = SkewElem.tensor(PolyElem.var(1, 3), Perm.from_cycles([(1, 3)], 3))
    >>> str(skew_mul(u, v))
    'e1*e2 # (1 3 2)'
    """

    __slots__ = ("_n", "_components")

    def __init__(self, n: int, components: Mapping[Perm, PolyElem | Scalar] | None = None):
        if n < 1:
            raise ValueError("degree must be at least 1")
        self._n = n
        clean: dict[Perm, PolyElem] = {}
        if components:
            for g, p in components.items():
                if g.n != n:
                    raise ValueError("degree mismatch between component and group element")
                if not isinstance(p, PolyElem):
                    p = PolyElem.const(n, p)
                elif p.n != n:
                    raise ValueError("degree mismatch")
                if p:
                    total = clean.get(g, PolyElem.zero(n)) + p
                    if total:
                        clean[g] = total
                    else:
                        clean.pop(g, None)
        self._components = clean

    # -- constructors ------------------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "SkewElem":
        return SkewElem(n)

    @staticmethod
    def one(n: int) -> "SkewElem":
        return SkewElem(n, {Perm.identity(n): PolyElem.one(n)})

    @staticmethod
    def tensor(p: PolyElem | Vect | Scalar, g: Perm) -> "SkewElem":
        """The simple tensor p (x) g."""
        if isinstance(p, Vect):
            p = p.to_polyelem()
        if not isinstance(p, PolyElem):
            p = PolyElem.const(g.n, p)
        return SkewElem(g.n, {g: p})

    @staticmethod
    def from_poly(p: PolyElem) -> "SkewElem":
        """p (x) identity."""
        return SkewElem.tensor(p, Perm.identity(p.n))

    @staticmethod
    def group_elem(g: Perm) -> "SkewElem":
        """1 (x) g."""
        return SkewElem.tensor(1, g)

    # -- queries ---------------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    def components(self) -> dict[Perm, PolyElem]:
        return dict(self._components)

    def component(self, g: Perm) -> PolyElem:
        return self._components.get(g, PolyElem.zero(self._n))

    def support(self) -> tuple[Perm, ...]:
        return tuple(sorted(self._components))

    def is_zero(self) -> bool:
        return not self._components

    def __bool__(self) -> bool:
        return bool(self._components)

    # -- arithmetic --------------------------------------------------------------------------

    def _check_same(self, other: "SkewElem") -> None:
        if self._n != other._n:
            raise ValueError("degree mismatch")

    def __add__(self, other: "SkewElem") -> "SkewElem":
        if not isinstance(other, SkewElem):
            return NotImplemented
        self._check_same(other)
        components = dict(self._components)
        for g, p in other._components.items():
            total = components.get(g, PolyElem.zero(self._n)) + p
            if total:
                components[g] = total
            else:
                components.pop(g, None)
        out = SkewElem.__new__(SkewElem)
        out._n, out._components = self._n, components
        return out

    def __sub__(self, other: "SkewElem") -> "SkewElem":
        return self + (-other)

    def __neg__(self) -> "SkewElem":
        out = SkewElem.__new__(SkewElem)
        out._n = self._n
        out._components = {g: -p for g, p in self._components.items()}
        return out

    def __mul__(self, other: Union["SkewElem", Scalar]) -> "SkewElem":
        if isinstance(other, (int, Fraction, ParamPoly)):
            components = {}
            for g, p in self._components.items():
                total = p * other
                if total:
                    components[g] = total
            out = SkewElem.__new__(SkewElem)
            out._n, out._components = self._n, components
            return out
        if not isinstance(other, SkewElem):
            return NotImplemented
        return skew_mul(self, other)

    def __rmul__(self, other: Scalar) -> "SkewElem":
        return self * other

    def substitute(self, values: Mapping[str, Fraction | int]) -> "SkewElem":
        return SkewElem(self._n, {g: p.substitute(values) for g, p in self._components.items()})

    # -- comparison and rendering ----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SkewElem)
            and self._n == other._n
            and self._components == other._components
        )

    def __str__(self) -> str:
        if not self._components:
            return "0"
        pieces = []
        for g in sorted(self._components):
            p = self._components[g]
            body = str(p) if len(p.terms) == 1 else f"({p})"
            pieces.append(f"{body} # {g}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return str(self)


def skew_mul(u: SkewElem, v: SkewElem) -> SkewElem:
    """Multiply in S(V) # S_n: (p (x) g)(q (x) h) = p (g . q) (x) gh."""
    if u.n != v.n:
        raise ValueError("degree mismatch")
    components: dict[Perm, PolyElem] = {}
    for g, p in u.components().items():
        for h, q in v.components().items():
            gh = g * h
            total = components.get(gh, PolyElem.zero(u.n)) + p * act(g, q)
            if total:
                components[gh] = total
            else:
                components.pop(gh, None)
    out = SkewElem.__new__(SkewElem)
    out._n, out._components = u.n, components
    return out


def commutator(u: SkewElem, v: SkewElem) -> SkewElem:
    """[u, v] = uv - vu in S(V) # S_n."""
    return skew_mul(u, v) - skew_mul(v, u)


def act_skew(g: Perm, u: SkewElem) -> SkewElem:
    """The conjugation action g . (q (x) h) = (g . q) (x) ghg^{-1}."""
    if g.n != u.n:
        raise ValueError("degree mismatch")
    ginv = g.inverse()
    components: dict[Perm, PolyElem] = {}
    for h, q in u.components().items():
        key = g * h * ginv
        total = components.get(key, PolyElem.zero(u.n)) + act(g, q)
        if total:
            components[key] = total
        else:
            components.pop(key, None)
    out = SkewElem.__new__(SkewElem)
    out._n, out._components = u.n, components
    return out


# -- parsing the canonical rendering ------------------------------------------------------

_NUM_RE = re.compile(r"^\d+(?:/\d+)?$")
_PARAM_RE = re.compile(r"^(a1|a|b|c)(?:\^(\d+))?$")
_VAR_RE = re.compile(r"^e(\d+)(?:\^(\d+))?$")


def _split_on(text: str, seps: str) -> list[str]:
    """Split at depth-0 occurrences of the separators, keeping sign markers."""
    pieces: list[str] = []
    depth = 0
    buf: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in seps:
            pieces.append("".join(buf))
            pieces.append(ch)
            buf = []
        else:
            buf.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    pieces.append("".join(buf))
    return pieces


def _signed_terms(text: str) -> list[tuple[int, str]]:
    """(sign, term) pieces of a rendered sum, split at depth-0 + and -."""
    out: list[tuple[int, str]] = []
    sign = 1
    pending = True
    for piece in _split_on(text, "+-"):
        if piece == "+":
            if pending:
                continue
            sign, pending = 1, True
        elif piece == "-":
            sign, pending = (-sign, True) if pending else (-1, True)
        else:
            term = piece.strip()
            if term:
                out.append((sign, term))
                sign, pending = 1, False
            elif not pending:
                raise ValueError(f"cannot parse {text!r}")
    if pending and out:
        raise ValueError(f"trailing operator in {text!r}")
    return out


def parse_parampoly(text: str) -> ParamPoly:
    """Parse the canonical rendering of a ParamPoly, e.g. ``a^2 - 2*a*b``."""
    result = ParamPoly.zero()
    terms = _signed_terms(text)
    if not terms:
        raise ValueError(f"cannot parse polynomial {text!r}")
    for sign, term in terms:
        value = ParamPoly.const(sign)
        for factor in _split_on(term, "*"):
            factor = factor.strip()
            if factor == "*":
                continue
            if not factor:
                raise ValueError(f"cannot parse term {term!r}")
            if factor.startswith("("):
                value = value * parse_parampoly(factor[1:-1])
            elif _NUM_RE.match(factor):
                value = value * Fraction(factor)
            elif m := _PARAM_RE.match(factor):
                value = value * ParamPoly.param(m.group(1)) ** int(m.group(2) or 1)
            else:
                raise ValueError(f"cannot parse factor {factor!r}")
        result = result + value
    return result


def parse_polyelem(text: str, n: int) -> PolyElem:
    """Parse the canonical rendering of a PolyElem, e.g. ``(a - b)*e1 + 2*e2``."""
    result = PolyElem.zero(n)
    terms = _signed_terms(text)
    if not terms:
        raise ValueError(f"cannot parse polynomial {text!r}")
    for sign, term in terms:
        value = PolyElem.const(n, sign)
        for factor in _split_on(term, "*"):
            factor = factor.strip()
            if factor == "*":
                continue
            if not factor:
                raise ValueError(f"cannot parse term {term!r}")
            if factor.startswith("("):
                value = value * parse_parampoly(factor[1:-1])
            elif _NUM_RE.match(factor):
                value = value * Fraction(factor)
            elif m := _PARAM_RE.match(factor):
                value = value * ParamPoly.param(m.group(1)) ** int(m.group(2) or 1)
            elif m := _VAR_RE.match(factor):
                for _ in range(int(m.group(2) or 1)):
                    value = value * PolyElem.var(int(m.group(1)), n)
            else:
                raise ValueError(f"cannot parse factor {factor!r}")
        result = result + value
    return result


# -- exact linear algebra over Q ---------------------------------------------------------


def rref(matrix: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction: (rows, pivot column indices).

    Zero rows are dropped from the result.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    if any(len(row) != ncols for row in rows):
        raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(matrix: Sequence[Sequence[Fraction | int]]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """A basis of the right kernel {v : M v = 0}, one vector per free column."""
    if not matrix:
        return []
    reduced, pivots = rref(matrix)
    ncols = len(matrix[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


__all__ = [
    "PARAMS",
    "DEGREE_CAP",
    "DegreeCapError",
    "ParamPoly",
    "Vect",
    "PolyElem",
    "SkewElem",
    "as_parampoly",
    "parameters",
    "act",
    "skew_mul",
    "commutator",
    "act_skew",
    "rref",
    "rank",
    "nullspace",
]
