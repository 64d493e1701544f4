"""Command-line front end.

Exit codes: 0 success, 1 verified false, 2 verifier disagreement,
3 inapplicable method or failed precondition, 4 I/O error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field as dc_field

import click

from .catalog import CatalogRecord, append_records, catalog_query
from .construct import (
    ConstructionError,
    EnumerationSummary,
    as_polynomial,
    canonicalize,
    default_ranges,
    enumerate_triples,
)
from .field import FieldError, make_field
from .invert import inverse_params_special, theorem_inverse, verify_roundtrip
from .numtheory import NotInvertibleError
from .unit_circle import PoleError, build_unit_circle, fraction_permutes, load_fraction_table
from .verify import METHODS, DomainTooLarge, MethodInapplicable, verify

EXIT_OK, EXIT_FALSE, EXIT_DISAGREE, EXIT_INAPPLICABLE, EXIT_IO = 0, 1, 2, 3, 4

FORMATS = click.Choice(["json", "csv", "table"])


def parse_range(text: str) -> list[int]:
    """'1..4' (inclusive), '3', or '1,2,5'."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v.strip()]


def _range_option(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_range(value)
    except ValueError:
        raise click.BadParameter(f"cannot parse range {value!r}")


def _emit(rows: list[dict], fmt: str):
    if fmt == "json":
        for row in rows:
            click.echo(json.dumps(row, sort_keys=True))
        return
    if not rows:
        return
    keys = list(dict.fromkeys(k for row in rows for k in row))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in keys})
        click.echo(buf.getvalue(), nl=False)
        return
    cells = [[_cell(row.get(k)) for k in keys] for row in rows]
    widths = [max(len(k), *(len(c[n]) for c in cells)) for n, k in enumerate(keys)]
    click.echo("  ".join(k.ljust(w) for k, w in zip(keys, widths)))
    for c in cells:
        click.echo("  ".join(v.ljust(w) for v, w in zip(c, widths)))


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v)
    return str(v)


@dataclass
class ConstructResult:
    records: list[CatalogRecord] = dc_field(default_factory=list)
    summary: EnumerationSummary = dc_field(default_factory=EnumerationSummary)
    verified: int = 0
    failed: int = 0
    disagreements: int = 0

    @property
    def exit_code(self) -> int:
        if self.disagreements:
            return EXIT_DISAGREE
        return EXIT_FALSE if self.failed else EXIT_OK


def run_construct(m, i_range, j_range, u_range, methods, inject_disagreement=None) -> ConstructResult:
    """Enumerate, verify with every requested method and build catalog records.

    ``inject_disagreement`` flips the verdict of one method (testing only).
    """
    res = ConstructResult()
    field = make_field(m)
    for triple in enumerate_triples(m, i_range, j_range, u_range, res.summary):
        verdicts = {}
        for method in methods:
            v = verify(triple, method).verdict
            if method == inject_disagreement:
                v = not v
            verdicts[method] = v
        agree = len(set(verdicts.values())) == 1
        if not agree:
            res.disagreements += 1
        elif all(verdicts.values()):
            res.verified += 1
        else:
            res.failed += 1
        res.records.append(
            CatalogRecord(
                m=m, n=field.n, i=triple.i, j=triple.j, u=triple.u,
                d1=triple.nd1, d2=triple.nd2, d3=triple.nd3,
                canonical=list(canonicalize(triple.normalized, field)),
                source="theorem31",
                verified_by=list(methods),
                is_permutation=agree and all(verdicts.values()),
                verdicts=verdicts,
            )
        )
    return res


def _methods_option(ctx, param, value):
    methods = [v.strip() for v in value.split(",") if v.strip()]
    bad = [v for v in methods if v not in METHODS]
    if bad or not methods:
        raise click.BadParameter(f"choose from {', '.join(METHODS)}")
    return methods


@click.group()
def main():
    """Construct and verify all-ones permutation trinomials over GF(2^(2m))."""


@main.command()
@click.option("--m", "m", type=int, required=True, help="Half degree; the field is GF(2^(2m)).")
@click.option("--i", "i_range", callback=_range_option, help="i values, e.g. 1..4 (default 1..2m).")
@click.option("--j", "j_range", callback=_range_option, help="j values (default 1..2m).")
@click.option("--u", "u_range", callback=_range_option, help="u values (default 0..2^m).")
@click.option("--verify", "methods", default="exhaustive", callback=_methods_option,
              help="Comma-separated verifiers: exhaustive, expsum, subgroup.")
@click.option("--output", type=click.Path(dir_okay=False), help="Catalog file to append to.")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@click.option("--inject-disagreement", type=click.Choice(METHODS), hidden=True)
def construct(m, i_range, j_range, u_range, methods, output, fmt, inject_disagreement):
    """Enumerate exponent triples, verify them and append them to a catalog."""
    try:
        di, dj, du = default_ranges(m)
        make_field(m)
    except FieldError as exc:
        raise click.UsageError(str(exc))
    res = run_construct(
        m,
        i_range if i_range is not None else di,
        j_range if j_range is not None else dj,
        u_range if u_range is not None else du,
        methods,
        inject_disagreement,
    )
    if output:
        try:
            append_records(output, res.records)
        except OSError as exc:
            click.echo(f"error: cannot write catalog: {exc}", err=True)
            sys.exit(EXIT_IO)
    summary = {
        "m": m,
        **res.summary.as_dict(),
        "verified": res.verified,
        "verified_false": res.failed,
        "disagreements": res.disagreements,
        "methods": ",".join(methods),
    }
    if res.summary.same_ij:
        summary["note"] = f"{res.summary.same_ij} grid points skipped: i must differ from j"
    _emit([summary], fmt)
    for rec in res.records:
        if len(set(rec.verdicts.values())) > 1:
            click.echo(f"disagreement at i={rec.i} j={rec.j} u={rec.u}: {rec.verdicts}", err=True)
    sys.exit(res.exit_code)


@main.command("verify")
@click.option("--m", "m", type=int, required=True)
@click.option("--exponents", required=True, help="One to three exponents, e.g. 4,13,7.")
@click.option("--method", type=click.Choice(METHODS), default="exhaustive", show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
def verify_cmd(m, exponents, method, fmt):
    """Verify one sparse all-ones polynomial."""
    try:
        field = make_field(m)
        exps = parse_range(exponents)
    except (FieldError, ValueError) as exc:
        raise click.UsageError(str(exc))
    if not 1 <= len(exps) <= 3:
        raise click.UsageError("give between one and three exponents")
    exps = [(e - 1) % field.order + 1 for e in exps]
    try:
        rep = verify(exps, method, field)
    except (MethodInapplicable, DomainTooLarge) as exc:
        _emit([{"method": method, "exponents": exps, "error": str(exc)}], fmt)
        sys.exit(EXIT_INAPPLICABLE)
    _emit([{"m": m, "exponents": exps, **rep.as_dict()}], fmt)
    sys.exit(EXIT_OK if rep.verdict else EXIT_FALSE)


@main.command()
@click.option("--m", "m", type=int, required=True)
@click.option("--j", "j", type=int, required=True)
@click.option("--u", "u", type=int, default=None, help="Defaults to the smallest valid u.")
@click.option("--check", is_flag=True, help="Round-trip the inverse against the trinomial.")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
def invert(m, j, u, check, fmt):
    """Closed-form compositional inverse for i = j + m - 1."""
    try:
        params = inverse_params_special(m, j, u)
    except (ConstructionError, NotInvertibleError, FieldError, ValueError) as exc:
        _emit([{"m": m, "j": j, "i": j + m - 1, "error": str(exc)}], fmt)
        sys.exit(EXIT_INAPPLICABLE)
    row = params.as_dict()
    code = EXIT_OK
    if check:
        rt = verify_roundtrip(as_polynomial(params.triple), theorem_inverse(params), params.triple.field)
        row["roundtrip"] = rt.ok
        row["roundtrip_points"] = rt.points
        if not rt.ok:
            row["witness"] = rt.witness
            code = EXIT_FALSE
    _emit([row], fmt)
    sys.exit(code)


def fraction_report(ms) -> tuple[list[dict], bool]:
    rows, ok = [], True
    table = load_fraction_table()
    for m in ms:
        U = build_unit_circle(make_field(m))
        for frow in table:
            for k in (range(1, m + 1) if frow.family == "tu" else [None]):
                entry = {"row": frow.name, "m": m, "k": k, "condition": frow.condition,
                         "asserted": frow.asserted, "fraction": str(frow.fraction(k))}
                if not frow.applies(m, k):
                    entry["status"] = "not-applicable"
                else:
                    try:
                        cert = fraction_permutes(frow.fraction(k), U)
                        entry["status"] = "permutes" if cert.permutes else "fails"
                        if not cert.permutes:
                            entry["witness"] = list(cert.witness)
                    except PoleError as exc:
                        entry["status"] = "pole"
                        entry["witness"] = [exc.point]
                    if frow.asserted and entry["status"] != "permutes":
                        ok = False
                rows.append(entry)
    return rows, ok


@main.command()
@click.option("--m", "m_range", default="2..8", callback=_range_option, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
def fractions(m_range, fmt):
    """Check the shipped fractional maps on the unit circle."""
    try:
        for m in m_range:
            make_field(m)
    except FieldError as exc:
        raise click.UsageError(str(exc))
    rows, ok = fraction_report(m_range)
    _emit(rows, fmt)
    sys.exit(EXIT_OK if ok else EXIT_FALSE)


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(dir_okay=False))
@click.option("--m", "m", type=int, default=None)
@click.option("--source", default=None)
@click.option("--canonical", default=None, help="Canonical exponent tuple, e.g. 1,7,13.")
@click.option("--dedup", is_flag=True, help="Keep one record per canonical form.")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
def query(paths, m, source, canonical, dedup, fmt):
    """Filter one or more catalog files."""
    try:
        res = catalog_query(
            paths, m=m, source=source,
            canonical=parse_range(canonical) if canonical else None, dedup=dedup,
        )
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    _emit([asdict(r) for r in res.records], fmt)
    if res.malformed:
        click.echo(f"warning: skipped {res.malformed} malformed line(s)", err=True)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
