"""Textual surfaces: map-spec parsing, presentations, CSV tables.

A map spec is the compact string form of a parameter map, e.g.
``"Ltri(a,b)+Ctri(c)+Cpenta(a,b)"``.  Terms name the four families
(L1, Ltri, Ctri, Cpenta) with rational or symbolic arguments; parsing
and rendering round-trip through a canonical form (fixed term order,
no whitespace).  This module also renders generator-and-relation
presentations and CSV versions of the obstruction tables.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .algebra import PARAMS, ParamPoly, PolyElem, Scalar
from .cochains import (
    TwoCochain,
    kappa_C_penta,
    kappa_C_tri,
    kappa_L1,
    kappa_L_tri,
)
from .obstructions import ObstructionTable, render_cell
from .perms import Perm

__all__ = [
    "MapSpec",
    "MapSpecError",
    "parse_subst",
    "presentation_lines",
    "table_csv",
]

Arg = Union[Fraction, str]


class MapSpecError(ValueError):
    """A map spec or substitution string that does not parse."""


def _scalar(arg: Arg) -> Scalar:
    return ParamPoly.param(arg) if isinstance(arg, str) else arg


# name -> (arity, target side, builder)
_TERMS: dict[str, tuple[int, str, Callable[..., TwoCochain]]] = {
    "L1": (1, "linear", kappa_L1),
    "Ltri": (2, "linear", kappa_L_tri),
    "Ctri": (1, "constant", kappa_C_tri),
    "Cpenta": (2, "constant", kappa_C_penta),
}
_TERM_ORDER = tuple(_TERMS)
_TERM_RE = re.compile(r"^(\w+)\(([^()]*)\)$")


def _parse_arg(text: str) -> Arg:
    text = text.strip()
    if text in PARAMS:
        return text
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise MapSpecError(
            f"cannot parse parameter {text!r}: expected one of {PARAMS} or a rational"
        ) from exc


@dataclass(frozen=True)
class MapSpec:
    """A parsed parameter-map expression: a sum of named term families.

    >>> spec = MapSpec.parse("Ctri(c) + Ltri(a, 1/2)")
    >>> spec.render()
    'Ltri(a,1/2)+Ctri(c)'
    """

    terms: tuple[tuple[str, tuple[Arg, ...]], ...]

    @classmethod
    def parse(cls, text: str) -> "MapSpec":
        terms = []
        seen = set()
        for chunk in text.split("+"):
            chunk = "".join(chunk.split())
            if not chunk:
                continue
            match = _TERM_RE.match(chunk)
            if not match:
                raise MapSpecError(
                    f"cannot parse term {chunk!r}: expected name(arg,...)"
                )
            name, arg_text = match.groups()
            if name not in _TERMS:
                raise MapSpecError(
                    f"unknown term {name!r}: expected one of {', '.join(_TERM_ORDER)}"
                )
            if name in seen:
                raise MapSpecError(f"duplicate term {name!r}")
            seen.add(name)
            arity = _TERMS[name][0]
            args = tuple(_parse_arg(a) for a in arg_text.split(",")) if arg_text else ()
            if len(args) != arity:
                raise MapSpecError(
                    f"{name} takes {arity} parameter(s), got {len(args)}"
                )
            terms.append((name, args))
        terms.sort(key=lambda item: _TERM_ORDER.index(item[0]))
        return cls(tuple(terms))

    def render(self) -> str:
        return "+".join(
            f"{name}({','.join(str(a) for a in args)})" for name, args in self.terms
        )

    def params_used(self) -> tuple[str, ...]:
        names = {a for _, args in self.terms for a in args if isinstance(a, str)}
        return tuple(p for p in PARAMS if p in names)

    def build(self, n: int) -> tuple[TwoCochain, TwoCochain]:
        """The (kappa^L, kappa^C) pair this spec names, at degree n."""
        linear, constant = TwoCochain(n), TwoCochain(n)
        for name, args in self.terms:
            _, side, builder = _TERMS[name]
            piece = builder(*(_scalar(a) for a in args), n)
            if side == "linear":
                linear = linear + piece
            else:
                constant = constant + piece
        return linear, constant


def parse_subst(text: str) -> dict[str, Fraction]:
    """Parse a substitution list like ``"a=1/2,b=0"``."""
    values: dict[str, Fraction] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, value = chunk.partition("=")
        name = name.strip()
        if not sep or name not in PARAMS:
            raise MapSpecError(
                f"cannot parse substitution {chunk!r}: expected name=rational "
                f"with name in {PARAMS}"
            )
        try:
            values[name] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MapSpecError(f"cannot parse substitution value {value!r}") from exc
    return values


# -- presentations ---------------------------------------------------------------


def _compact(g: Perm) -> str:
    return str(g).replace(" ", "")


def _leading(p: ParamPoly) -> Fraction:
    return min(p.terms.items())[1] if p.terms else Fraction(0)


def _coeff_text(p: ParamPoly) -> str:
    body = str(p).replace(" ", "")
    return f"({body})" if len(p.terms) > 1 else body


def _poly_leading(value: PolyElem) -> Fraction:
    terms = value.terms
    if not terms:
        return Fraction(0)
    return _leading(terms[min(terms)])


def linear_factored(value: PolyElem) -> str:
    """Compact rendering of a polynomial of degree <= 1, grouping the
    variables that share a coefficient: a*(e1+e2+e3)+b*(e4+e5)+c."""
    groups: dict[str, tuple[ParamPoly, list[tuple[int, int]]]] = {}
    order: list[str] = []
    for i in range(1, value.n + 1):
        coeff = value.coeff((i,))
        if coeff.is_zero():
            continue
        sign = 1 if _leading(coeff) > 0 else -1
        base = coeff if sign > 0 else -coeff
        key = str(base)
        if key not in groups:
            groups[key] = (base, [])
            order.append(key)
        groups[key][1].append((i, sign))
    pieces = []
    for key in order:
        base, members = groups[key]
        body = ""
        for i, sign in members:
            body += ("-" if sign < 0 else "+" if body else "") + f"e{i}"
        wrapped = f"({body})" if len(members) > 1 else body
        if base == ParamPoly.one():
            pieces.append(wrapped)
        else:
            pieces.append(f"{_coeff_text(base)}*{wrapped}")
    constant = value.coeff(())
    if not constant.is_zero():
        pieces.append(_coeff_text(constant))
    if not pieces:
        return "0"
    return "+".join(pieces).replace("+-", "-")


def _component_lines(value12: dict[Perm, PolyElem], n: int) -> list[str]:
    lines = []
    handled: set[Perm] = set()
    constants: dict[str, tuple[PolyElem, list[Perm]]] = {}
    for g in sorted(value12):
        if g in handled:
            continue
        poly = value12[g]
        if poly.degree() <= 0:
            # constant components batch by coefficient (the 5-cycle blocks)
            key = str(poly)
            constants.setdefault(key, (poly, []))[1].append(g)
            continue
        ginv = g.inverse()
        partner = value12.get(ginv)
        if ginv != g and partner == -poly:
            handled.add(ginv)
            if _poly_leading(poly) < 0:
                g, ginv, poly = ginv, g, partner
            lines.append(
                f"({linear_factored(poly)}) (x) ({_compact(g)}-{_compact(ginv)})"
            )
        else:
            lines.append(f"({linear_factored(poly)}) (x) {_compact(g)}")
    def batch_key(item):
        poly, _ = item[1]
        lead = _leading(poly.coeff(()))
        return (abs(lead), lead > 0, item[0])

    for _, (poly, cycles) in sorted(constants.items(), key=batch_key):
        body = "+".join(_compact(c) for c in cycles)
        lines.append(f"{render_cell(poly)} (x) ({body})")
    return lines


def presentation_lines(
    n: int, kappa_L: TwoCochain, kappa_C: TwoCochain
) -> list[str]:
    """The generators-and-relations presentation, as printable lines."""
    lines = [
        f"H = T(V) # S{n} / < e_i*e_j - e_j*e_i - kappa(e_i,e_j) | 1 <= i < j <= {n} >",
        "",
    ]
    value12: dict[Perm, PolyElem] = {}
    for g in set(kappa_L.support()) | set(kappa_C.support()):
        value = kappa_L.value(g, 1, 2) + kappa_C.value(g, 1, 2)
        if value:
            value12[g] = value
    head = (
        "kappa(e1,e2) = kappa(e2,e3) = kappa(e3,e1) = "
        if n == 3
        else "kappa(e1,e2) = "
    )
    body = _component_lines(value12, n)
    if not body:
        lines.append(head + "0")
    else:
        lines.append(head + body[0])
        indent = " " * (len(head) - 2)
        for extra in body[1:]:
            if extra.startswith("-"):
                lines.append(f"{indent}- {extra[1:]}")
            else:
                lines.append(f"{indent}+ {extra}")
    if n > 3:
        lines.append("")
        lines.append(
            f"kappa(e_s(1),e_s(2)) = s . kappa(e1,e2) for every s in S{n}"
        )
    return lines


# -- CSV tables ------------------------------------------------------------------


def _triple_label(triple: Sequence[int]) -> str:
    return "(" + ",".join(f"e{p}" for p in triple) + ")"


def table_csv(table: ObstructionTable) -> str:
    """The table as CSV: one row per factor pair, block sums appended."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "y"] + [_triple_label(t) for t in table.columns])
    for index, block in enumerate(table.blocks, start=1):
        for (x, y), values in zip(block.rows, block.cells):
            writer.writerow([str(x), str(y)] + [render_cell(v) for v in values])
        writer.writerow(
            [f"block {index} sum", ""] + [render_cell(v) for v in block.column_sums]
        )
    if len(table.blocks) > 1:
        writer.writerow(["total", ""] + [render_cell(v) for v in table.column_sums])
    return out.getvalue()
