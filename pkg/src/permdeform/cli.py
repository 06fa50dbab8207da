"""Command-line surface.

Subcommands: verify (the five deformation conditions), tables (the worked
obstruction tables), present (generators and relations), cohomology
(relevant cohomology dimensions per conjugacy class), classify (the
solution structure of the conditions), and pbw (the rewriting-system
oracle).

Exit codes: 0 pass, 1 mathematical failure (a witness is printed),
2 usage error, 3 internal invariant violation.  All numeric output is
exact.  The degree bound (default 8) can be raised with the
PERMDEFORM_MAX_N environment variable.
"""

from __future__ import annotations

import contextlib
import json
import sys
from typing import Optional

import click

from .cohomology import class_dims
from .obstructions import (
    TABLE_CASES,
    case_tables,
    check_conditions,
    classify,
)
from .render import (
    MapSpec,
    MapSpecError,
    parse_subst,
    presentation_lines,
    table_csv,
)
from .rewriting import RewriteSystem, check_overlaps, dimension_census

GENERAL_FAMILY = "Ltri(a,b)+Ctri(c)+Cpenta(a,b)"


@contextlib.contextmanager
def _guarded():
    """Map exceptions to the documented exit codes."""
    try:
        yield
    except click.exceptions.Exit:
        raise
    except click.UsageError:
        raise
    except (MapSpecError, ValueError) as exc:
        raise click.UsageError(str(exc))
    except Exception as exc:  # pragma: no cover - defensive
        click.echo(f"internal error: {exc!r}", err=True)
        sys.exit(3)


def _build_pair(n: int, map_text: str, subst_text: str):
    kappa_L, kappa_C = MapSpec.parse(map_text).build(n)
    if subst_text:
        values = parse_subst(subst_text)
        kappa_L, kappa_C = kappa_L.substitute(values), kappa_C.substitute(values)
    return kappa_L, kappa_C


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as handle:
            handle.write(text + "\n")
    else:
        click.echo(text)


_format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["md", "csv", "json"]),
    default="md",
    show_default=True,
    help="Output format.",
)
_output_option = click.option(
    "--output", type=click.Path(dir_okay=False, writable=True), default=None,
    help="Write the report to this file instead of stdout.",
)
_subst_option = click.option(
    "--subst", "subst_text", default="",
    help="Substitute rational parameter values, e.g. a=1/2,b=0.",
)


@click.group()
@click.version_option(package_name="permdeform")
def main():
    """Drinfeld orbifold algebras for the natural permutation action of S_n."""


@main.command()
@click.option("--n", "n", type=int, required=True, help="Degree of the symmetric group.")
@click.option("--map", "map_text", default="", help="Parameter map, e.g. Ltri(a,b)+Ctri(c).")
@_subst_option
@click.option("--exhaustive", is_flag=True, help="Check every group element (n <= 6).")
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
@_output_option
def verify(n, map_text, subst_text, exhaustive, as_json, output):
    """Check the five deformation conditions for a parameter map."""
    with _guarded():
        kappa_L, kappa_C = _build_pair(n, map_text, subst_text)
        report = check_conditions(kappa_L, kappa_C, exhaustive=exhaustive)
    text = json.dumps(report.to_json(), indent=2) if as_json else report.to_markdown()
    _emit(text, output)
    sys.exit(0 if report.all_pass else 1)


@main.command()
@click.option(
    "--case", "case_id", type=click.Choice(sorted(TABLE_CASES)), required=True,
    help="Which worked table to regenerate.",
)
@_format_option
@_output_option
def tables(case_id, fmt, output):
    """Regenerate a worked obstruction table, with column sums."""
    with _guarded():
        built = case_tables(case_id)
        if fmt == "json":
            text = json.dumps([t.to_json() for t in built], indent=2)
        elif fmt == "csv":
            text = "\n".join(table_csv(t) for t in built).rstrip("\n")
        else:
            text = "\n\n".join(t.to_markdown() for t in built)
    _emit(text, output)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--map", "map_text", default=GENERAL_FAMILY, show_default=True)
@_subst_option
@_output_option
def present(n, map_text, subst_text, output):
    """Print the algebra presentation with kappa expanded in cycle notation."""
    with _guarded():
        if not 3 <= n <= 6:
            raise click.UsageError("present supports 3 <= n <= 6")
        kappa_L, kappa_C = _build_pair(n, map_text, subst_text)
        text = "\n".join(presentation_lines(n, kappa_L, kappa_C))
    _emit(text, output)


@main.command()
@click.option("--n", "n", type=int, required=True)
@_format_option
@_output_option
def cohomology(n, fmt, output):
    """Dimensions of the relevant cohomology, per conjugacy class."""
    with _guarded():
        rows = [
            (cls.name, codim, d1, d0, d1 + d0)
            for cls, codim, d1, d0 in class_dims(n)
        ]
    if fmt == "json":
        text = json.dumps(
            [
                {"class": name, "codim": codim, "deg1": d1, "deg0": d0, "total": tot}
                for name, codim, d1, d0, tot in rows
            ],
            indent=2,
        )
    elif fmt == "csv":
        lines = ["class,codim,deg1,deg0,total"]
        lines += [f"{name},{codim},{d1},{d0},{tot}" for name, codim, d1, d0, tot in rows]
        text = "\n".join(lines)
    else:
        lines = [
            "| class | codim V^g | deg 1 | deg 0 | total |",
            "| --- | --- | --- | --- | --- |",
        ]
        lines += [
            f"| {name} | {codim} | {d1} | {d0} | {tot} |"
            for name, codim, d1, d0, tot in rows
        ]
        text = "\n".join(lines)
    _emit(text, output)


@main.command(name="classify")
@click.option("--n", "n", type=int, required=True)
@click.option(
    "--format", "fmt", type=click.Choice(["md", "json"]), default="md",
    show_default=True,
)
@_output_option
def classify_cmd(n, fmt, output):
    """Solve the conditions for the general parameter family at degree n."""
    with _guarded():
        report = classify(n)
        text = (
            json.dumps(report.to_json(), indent=2)
            if fmt == "json"
            else report.to_markdown()
        )
    _emit(text, output)
    sys.exit(0 if report.consistent else 3)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--map", "map_text", default="", help="Parameter map to test.")
@_subst_option
@click.option("--census", is_flag=True, help="Print filtered dimension counts instead.")
@_output_option
def pbw(n, map_text, subst_text, census, output):
    """Run the rewriting-system oracle on a parameter map."""
    with _guarded():
        kappa_L, kappa_C = _build_pair(n, map_text, subst_text)
        system = RewriteSystem(kappa_L, kappa_C)
        if census:
            dims = dimension_census(system)
            text = "\n".join(f"deg <= {d}: {dim}" for d, dim in enumerate(dims))
            _emit(text, output)
            sys.exit(0)
        report = check_overlaps(system)
    _emit(str(report), output)
    sys.exit(0 if report.passed else 1)


if __name__ == "__main__":
    main()
