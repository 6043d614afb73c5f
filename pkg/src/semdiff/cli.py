"""Command-line interface: ``semdiff diff|compare|evolution``.

Exit codes: ``diff`` returns 1 when witnesses were found and 0 when none
exist up to the scope; every command returns 2 on unreadable or ill-formed
input.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from ._lexer import DiagramSyntaxError
from .cd import ContextConditionError, TypeKindClash, read_cd
from .engine import DiffConfig, compare, diff, evolution
from .filters import FilterKind
from .om import od_to_json, render_od
from .om.od import FORMAT_VERSION

INPUT_ERROR = 2


class InputError(click.ClickException):
    exit_code = INPUT_ERROR

    def show(self, file=None):
        click.echo(f"error: {self.message}", err=True)


def _load(path: str):
    try:
        return read_cd(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except DiagramSyntaxError as exc:
        raise InputError(f"{path}:{exc}") from None
    except ContextConditionError as exc:
        raise InputError(str(exc)) from None


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except TypeKindClash as exc:
        raise InputError(str(exc)) from None


scope_option = click.option("--scope", "-k", default=5, show_default=True,
                            type=click.IntRange(min=0),
                            help="Maximum total number of objects.")


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Semantic differencing of class diagrams."""


@main.command("diff")
@click.argument("left", type=click.Path(dir_okay=False))
@click.argument("right", type=click.Path(dir_okay=False))
@scope_option
@click.option("--max", "max_witnesses", default=20, show_default=True,
              type=click.IntRange(min=1), help="Witnesses to report at most.")
@click.option("--filter", "filter_kind", default="none", show_default=True,
              type=click.Choice([k.value for k in FilterKind]))
@click.option("--abstract-attributes", is_flag=True,
              help="Ignore attributes of primitive type.")
@click.option("--switch", is_flag=True, help="Swap LEFT and RIGHT.")
@click.option("--format", "fmt", default="od", show_default=True,
              type=click.Choice(["od", "json"]))
@click.option("--no-strip-common", is_flag=True,
              help="Keep attributes common to both diagrams in the search.")
def diff_cmd(left, right, scope, max_witnesses, filter_kind,
             abstract_attributes, switch, fmt, no_strip_common):
    """Object models allowed by LEFT but not by RIGHT."""
    if switch:
        left, right = right, left
    cd1, cd2 = _load(left), _load(right)
    cfg = DiffConfig(scope=scope, max_witnesses=max_witnesses,
                     filter=FilterKind(filter_kind),
                     abstract_attributes=abstract_attributes,
                     strip_common=not no_strip_common)
    witnesses = _guard(diff, cd1, cd2, cfg)
    total = len(witnesses)
    if fmt == "json":
        doc = {
            "format_version": FORMAT_VERSION,
            "left": cd1.name,
            "right": cd2.name,
            "scope": scope,
            "witnesses": [od_to_json(w.full_om, f"w{i}")
                          for i, w in enumerate(witnesses, 1)],
        }
        click.echo(json.dumps(doc, indent=2, ensure_ascii=False))
    elif not witnesses:
        click.echo(f"no diff witnesses up to scope {scope}")
    else:
        for i, w in enumerate(witnesses, 1):
            if i > 1:
                click.echo()
            click.echo(f"witness {i} of {total} (scope {scope})")
            click.echo(render_od(w.full_om, f"w{i}"), nl=False)
    sys.exit(1 if witnesses else 0)


@main.command("compare")
@click.argument("left", type=click.Path(dir_okay=False))
@click.argument("right", type=click.Path(dir_okay=False))
@scope_option
@click.option("--abstract-attributes", is_flag=True,
              help="Ignore attributes of primitive type.")
def compare_cmd(left, right, scope, abstract_attributes):
    """Refinement verdict between LEFT and RIGHT."""
    cd1, cd2 = _load(left), _load(right)
    result = _guard(compare, cd1, cd2, scope,
                    abstract_attributes=abstract_attributes)
    click.echo(result.describe())


@main.command("evolution")
@click.argument("versions", nargs=-1, required=True,
                type=click.Path(dir_okay=False))
@scope_option
@click.option("--abstract-attributes", is_flag=True,
              help="Ignore attributes of primitive type.")
def evolution_cmd(versions, scope, abstract_attributes):
    """Classify each step of a version history, oldest first."""
    if len(versions) < 2:
        raise click.UsageError("evolution needs at least two versions")
    cds = [_load(v) for v in versions]
    names = [Path(v).stem for v in versions]
    results = _guard(evolution, cds, scope,
                     abstract_attributes=abstract_attributes)
    for (a, b), r in zip(zip(names, names[1:]), results):
        click.echo(f"{a} -> {b}: {r.verdict.value}_{scope} {r.label}")


if __name__ == "__main__":
    main()
