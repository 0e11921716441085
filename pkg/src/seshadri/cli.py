"""Command line interface.

Every numeric output prints the exact rational first and a decimal
rendering second; verdicts map to deterministic exit codes:

    0  success / valid certificate / emptiness certified
    1  undecided or invalid-verdict results
    2  usage or parse errors
    3  arithmetic precondition violations (the violated condition is named)

Examples:

    seshadri epsilon 33 1
    seshadri epsilon 7 1 --refined
    seshadri scan --n 19 --stat star --format csv
    seshadri nef build uniform --n 33 --l 1 --r 23 --d 4 --case a
    seshadri lp --t 5 --mults 2,2,2,2,2,2,2,1,1,1,1,1,1,1,1
    seshadri apps --n 16 --m 3
    seshadri compare 10 --through 20
    seshadri pell 19
"""

from __future__ import annotations

import csv
import io
import json
import sys
from fractions import Fraction

import click

from . import apps as apps_mod
from . import bounds, lptest, nefcert, stats
from .errors import PreconditionError
from .exactmath import format_decimal, format_rational, parse_rational

POSITIVE = click.IntRange(min=1)
FORMATS = click.Choice(["table", "csv", "json"])


class RationalParam(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational (use p/q, an integer, or a decimal)", param, ctx)


RATIONAL = RationalParam()


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except PreconditionError as exc:
        click.echo(f"precondition violated: {exc.condition}", err=True)
        sys.exit(3)


def _echo_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


def _rat(value: Fraction) -> str:
    return f"{format_rational(value)} ({format_decimal(value)})"


def _csv_line(values) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerow(values)
    return buf.getvalue().rstrip("\n")


def _bool(value: bool) -> str:
    return "true" if value else "false"


@click.group()
@click.version_option(version="0.1.0", prog_name="seshadri")
def main():
    """Certified Seshadri-constant bounds, nef certificates and scans."""


# ---------------------------------------------------------------------------
# epsilon


def _witness_text(witness: bounds.BoundWitness) -> str:
    parts = [f"r={witness.r}", f"d={witness.d}"]
    if witness.m != 1 or witness.set_tag.endswith("'"):
        parts.append(f"m={witness.m}")
    parts.append(witness.set_tag)
    return " ".join(parts)


def _bound_dict(bound: bounds.SeshadriBound) -> dict:
    out = {
        "n": bound.n,
        "l": bound.l,
        "value": format_rational(bound.value),
        "decimal": format_decimal(bound.value),
        "square_case": bound.square_case,
        "refined": bound.refined,
    }
    if bound.witness is not None:
        w = bound.witness
        out["witness"] = {"r": w.r, "d": w.d, "m": w.m, "set": w.set_tag}
    return out


@main.command()
@click.argument("n", type=POSITIVE)
@click.argument("l", type=POSITIVE)
@click.option("--refined", is_flag=True, help="Maximize the refined family instead.")
@click.option("--witness/--no-witness", "show_witness", default=True, help="Show the maximizing member.")
@click.option("--format", "fmt", type=FORMATS, default="table", help="Output format.")
def epsilon(n: int, l: int, refined: bool, show_witness: bool, fmt: str):
    """Certified lower bound for n points and self-intersection l."""
    bound = _guard(bounds.epsilon_refined if refined else bounds.epsilon_basic, n, l)
    if fmt == "json":
        data = _bound_dict(bound)
        if not show_witness:
            data.pop("witness", None)
        _echo_json(data)
        return
    if fmt == "csv":
        w = bound.witness
        click.echo(_csv_line([
            "n", "l", "value_num", "value_den", "decimal", "square_case", "refined",
            "witness_r", "witness_d", "witness_m", "witness_set",
        ]))
        click.echo(_csv_line([
            bound.n, bound.l, bound.value.numerator, bound.value.denominator,
            format_decimal(bound.value), _bool(bound.square_case), _bool(bound.refined),
            w.r if w else "", w.d if w else "", w.m if w else "", w.set_tag if w else "",
        ]))
        return
    line = _rat(bound.value)
    if bound.square_case:
        line += " [square case: supremum]"
    elif show_witness:
        line += f" (witness {_witness_text(bound.witness)})"
    click.echo(line)


# ---------------------------------------------------------------------------
# scan


def _parse_l_range(text: str | None, n: int) -> tuple[int, int]:
    if text is None:
        return 1, n
    try:
        lo_txt, hi_txt = text.split(":", 1)
        lo, hi = int(lo_txt), int(hi_txt)
    except ValueError:
        raise click.UsageError(f"--l-range must be LO:HI, got {text!r}")
    if not 1 <= lo <= hi:
        raise click.UsageError(f"--l-range must satisfy 1 <= LO <= HI, got {text!r}")
    return lo, hi


@main.command()
@click.option("--n", type=POSITIVE, required=True, help="Number of points.")
@click.option("--l-range", "l_range", default=None, help="LO:HI, default 1:n.")
@click.option("--stat", type=click.Choice(["star", "I", "J"]), default="star",
              help="Statistic for the summary count.")
@click.option("--format", "fmt", type=FORMATS, default="table", help="Output format.")
def scan(n: int, l_range: str | None, stat: str, fmt: str):
    """Per-l scan of the sharpness inequality and its interval statistics."""
    lo, hi = _parse_l_range(l_range, n)
    key = {"star": "star", "I": "in_I", "J": "in_J"}[stat]
    rows = list(_guard(lambda: list(stats.scan_rows(n, (lo, hi)))))
    holds = sum(row[key] for row in rows)
    total = len(rows)
    summary = f"{format_decimal(Fraction(holds * 100, total), 1)}% ({holds}/{total})"
    header = ["n", "l", "epsilon_num", "epsilon_den", "star", "in_I", "in_J"]
    if fmt == "json":
        _echo_json({
            "n": n, "stat": stat, "holds": holds, "total": total,
            "percentage": format_decimal(Fraction(holds * 100, total), 1),
            "rows": rows,
        })
        return
    if fmt == "csv":
        click.echo(_csv_line(header))
        for row in rows:
            click.echo(_csv_line([
                row["n"], row["l"], row["epsilon_num"], row["epsilon_den"],
                _bool(row["star"]), _bool(row["in_I"]), _bool(row["in_J"]),
            ]))
        click.echo(summary, err=True)
        return
    for row in rows:
        eps = Fraction(row["epsilon_num"], row["epsilon_den"])
        click.echo(
            f"l={row['l']:<5} eps={format_rational(eps):<12} ({format_decimal(eps)})"
            f"  star={_bool(row['star']):<5} in_I={_bool(row['in_I']):<5} in_J={_bool(row['in_J'])}"
        )
    click.echo(summary)


# ---------------------------------------------------------------------------
# nef


@main.group()
def nef():
    """Build or re-check nef divisor certificates."""


def _require(ctx_name: str, value, constructor: str):
    if value is None:
        raise click.UsageError(f"constructor {constructor!r} requires --{ctx_name}")
    return value


def _emit_certificate(cert: nefcert.NefCertificate, fmt: str) -> None:
    if fmt == "json":
        _echo_json(cert.to_dict())
    else:
        div = cert.divisor
        click.echo(f"divisor: {_rat(div.c0)} * L' - [{', '.join(format_rational(c) for c in div.e)}]")
        click.echo(f"curve:   d={cert.curve.d} mults={list(cert.curve.mults)}")
        for name in nefcert.CHECK_NAMES:
            click.echo(f"  {name:<28} {'pass' if cert.checks[name] else 'FAIL'}")
        for flag in cert.validity_flags:
            click.echo(f"  flag: {flag}")
        click.echo("valid" if cert.valid else "invalid")
    if not cert.valid:
        sys.exit(1)


@nef.command("build")
@click.argument("constructor",
                type=click.Choice(["uniform", "nonuniform", "refined", "extended", "adhoc"]))
@click.option("--n", type=POSITIVE, required=True)
@click.option("--l", type=POSITIVE, default=1, show_default=True)
@click.option("--r", type=POSITIVE, default=None)
@click.option("--d", type=POSITIVE, default=None)
@click.option("--case", type=click.Choice(["a", "b", "c"]), default=None,
              help="Branch for the uniform constructor.")
@click.option("--t", type=RATIONAL, default=None, help="Degree for equal-defect cases.")
@click.option("--j", type=POSITIVE, default=None, help="Leading-block length (nonuniform).")
@click.option("--dprime", type=RATIONAL, default=None, help="Rational degree d' (nonuniform).")
@click.option("--m", type=POSITIVE, default=None, help="First-point multiplicity (refined).")
@click.option("--rprime", type=POSITIVE, default=None, help="r' parameter (extended, adhoc).")
@click.option("--a", type=POSITIVE, default=None, help="Factor a of d = a*b*c (adhoc).")
@click.option("--b", type=POSITIVE, default=None, help="Factor b of d = a*b*c (adhoc).")
@click.option("--c", type=POSITIVE, default=None, help="Factor c of d = a*b*c (adhoc).")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
def nef_build(constructor, n, l, r, d, case, t, j, dprime, m, rprime, a, b, c, fmt):
    """Construct a certificate; exits 0 iff all five checks pass."""
    if constructor == "uniform":
        cert = _guard(
            nefcert.build_uniform, n, l,
            _require("r", r, constructor), _require("d", d, constructor),
            _require("case", case, constructor), t,
        )
    elif constructor == "nonuniform":
        cert = _guard(
            nefcert.build_nonuniform, n, l,
            _require("r", r, constructor), _require("d", d, constructor), j, dprime,
        )
    elif constructor == "refined":
        cert = _guard(
            nefcert.build_refined, n, l,
            _require("r", r, constructor), _require("d", d, constructor),
            _require("m", m, constructor), t,
        )
    elif constructor == "extended":
        cert = _guard(
            nefcert.build_extended, n,
            _require("d", d, constructor), _require("rprime", rprime, constructor),
        )
    else:
        cert = _guard(
            nefcert.build_adhoc, n,
            _require("a", a, constructor), _require("b", b, constructor),
            _require("c", c, constructor), _require("rprime", rprime, constructor),
        )
    _emit_certificate(cert, fmt)


@nef.command("check")
@click.option("--file", "path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Certificate JSON (default: stdin).")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
def nef_check(path, fmt):
    """Re-run all five checks on a serialized certificate."""
    raw = open(path, encoding="utf-8").read() if path else sys.stdin.read()
    try:
        data = json.loads(raw)
        cert = nefcert.certificate_from_dict(data)
    except PreconditionError as exc:
        click.echo(f"precondition violated: {exc.condition}", err=True)
        sys.exit(3)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        click.echo(f"malformed certificate: {exc}", err=True)
        sys.exit(2)
    _emit_certificate(cert, fmt)


# ---------------------------------------------------------------------------
# lp


def _parse_mults(inline: str | None, path: str | None) -> list[int]:
    if (inline is None) == (path is None):
        raise click.UsageError("exactly one of --mults or --mults-file is required")
    try:
        if inline is not None:
            return [int(part) for part in inline.split(",") if part.strip()]
        entries = []
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if line and not line.startswith("#"):
                    entries.append(int(line))
        return entries
    except (OSError, ValueError) as exc:
        click.echo(f"malformed multiplicities: {exc}", err=True)
        sys.exit(2)


@main.command()
@click.option("--t", type=RATIONAL, required=True, help="Degree of the target system.")
@click.option("--mults", default=None, help="Comma-separated multiplicities b_1,...,b_n.")
@click.option("--mults-file", "mults_file", default=None,
              help="One-column text file of multiplicities.")
@click.option("--n", type=POSITIVE, default=None, help="Number of points (default: len(mults)).")
@click.option("--l", type=POSITIVE, default=1, show_default=True)
@click.option("--r-max", type=POSITIVE, default=None)
@click.option("--d-max", type=POSITIVE, default=None)
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
def lp(t, mults, mults_file, n, l, r_max, d_max, fmt):
    """Certify emptiness of t*L' - sum(b_i E_i); exits 0 iff certified."""
    b = _parse_mults(mults, mults_file)
    if n is None:
        n = len(b)
    target = _guard(lptest.TargetSystem, Fraction(t), tuple(b), n, l)
    verdict = _guard(lptest.certify_empty, target, r_max, d_max)
    payload = {
        "t": format_rational(Fraction(t)),
        "n": n,
        "l": l,
        "empty_certified": verdict.empty_certified,
        "threshold": format_rational(verdict.threshold),
        "threshold_decimal": format_decimal(verdict.threshold),
        "test_divisor": verdict.best_test_divisor.to_dict(),
    }
    if fmt == "json":
        _echo_json(payload)
    else:
        click.echo(f"threshold: {_rat(verdict.threshold)}")
        click.echo("empty: certified" if verdict.empty_certified else "empty: undecided")
    sys.exit(0 if verdict.empty_certified else 1)


# ---------------------------------------------------------------------------
# apps


@main.command()
@click.option("--n", type=POSITIVE, required=True)
@click.option("--m", type=POSITIVE, required=True)
@click.option("--format", "fmt", type=FORMATS, default="table", show_default=True)
def apps(n, m, fmt):
    """Degree thresholds for the uniform system t*L' - m(E_1+...+E_n), l = 1."""
    report = _guard(apps_mod.threshold_report, n, m)
    if fmt == "json":
        _echo_json({
            "n": report.n,
            "m": report.m,
            "effectivity_lb": format_rational(report.effectivity_lb),
            "effectivity_lb_decimal": format_decimal(report.effectivity_lb),
            "ampleness_lb": format_rational(report.ampleness_lb),
            "ampleness_lb_decimal": format_decimal(report.ampleness_lb),
            "regularity_a": report.regularity_a,
            "regularity_b": report.regularity_b,
            "regularity_sharp": report.regularity_sharp,
            "freeness_lb": report.freeness_lb,
            "va_lb": report.va_lb,
            "notes": list(report.notes),
        })
        return
    click.echo(f"effectivity  t >= {_rat(report.effectivity_lb)}")
    click.echo(f"ampleness    t >  {_rat(report.ampleness_lb)}")
    if report.regularity_a is not None:
        reg = [report.regularity_a] + ([report.regularity_b] if report.regularity_b is not None else [])
        sharp = " (sharp)" if report.regularity_sharp else ""
        click.echo(f"regularity   t >= {min(reg)}{sharp}  [thresholds: {', '.join(map(str, reg))}]")
        click.echo(f"freeness     t >= {report.freeness_lb}")
        click.echo(f"very ample   t >= {report.va_lb}")
    for note in report.notes:
        click.echo(f"note: {note}")


# ---------------------------------------------------------------------------
# compare


@main.command()
@click.argument("n", type=click.IntRange(min=2))
@click.option("--through", type=click.IntRange(min=2), default=None,
              help="Emit rows for every value up to this one.")
@click.option("--format", "fmt", type=FORMATS, default="table", show_default=True)
def compare(n, through, fmt):
    """Exact comparison of the bound against reference values (l = 1)."""
    hi = through if through is not None else n
    if hi < n:
        raise click.UsageError("--through must be >= N")
    rows = [_guard(bounds.compare_references, k) for k in range(n, hi + 1)]
    if fmt == "json":
        _echo_json([
            {
                "n": row.n,
                "epsilon": format_rational(row.epsilon),
                "epsilon_decimal": format_decimal(row.epsilon),
                "epsilon_refined": format_rational(row.epsilon_refined),
                "vs_sqrt_np1": row.vs_sqrt_np1,
                "near_square": row.near_square,
                "pell": None if row.pell is None else {"r": row.pell.r, "d": row.pell.d, "rhs": row.pell.rhs},
                "pell_bound": None if row.pell_bound is None else format_rational(row.pell_bound),
                "pell_applies": row.pell_applies,
            }
            for row in rows
        ])
        return
    if fmt == "csv":
        click.echo(_csv_line([
            "n", "epsilon_num", "epsilon_den", "refined_num", "refined_den",
            "vs_sqrt_np1", "near_square", "pell_r", "pell_d", "pell_rhs", "pell_bound",
        ]))
        for row in rows:
            click.echo(_csv_line([
                row.n, row.epsilon.numerator, row.epsilon.denominator,
                row.epsilon_refined.numerator, row.epsilon_refined.denominator,
                row.vs_sqrt_np1, _bool(row.near_square),
                row.pell.r if row.pell else "", row.pell.d if row.pell else "",
                row.pell.rhs if row.pell else "",
                format_rational(row.pell_bound) if row.pell_bound is not None else "",
            ]))
        return
    for row in rows:
        rel = {1: ">", 0: "=", -1: "<"}[row.vs_sqrt_np1]
        line = (
            f"n={row.n:<5} eps={format_rational(row.epsilon):<10}"
            f" eps'={format_rational(row.epsilon_refined):<10}"
            f" eps {rel} 1/sqrt(n+1)"
        )
        if row.near_square:
            line += "  [n+1 or n-1 square]"
        if row.pell_bound is not None:
            line += f"  pell={format_rational(row.pell_bound)}"
            if row.pell_applies:
                line += " (= eps)"
        click.echo(line)


# ---------------------------------------------------------------------------
# pell


@main.command()
@click.argument("coeff", type=click.IntRange(min=2))
@click.option("--format", "fmt", type=FORMATS, default="table", show_default=True)
def pell(coeff, fmt):
    """Fundamental solution of r^2 - COEFF*d^2 = ±1."""
    sol = _guard(bounds.pell_fundamental, coeff)
    if fmt == "json":
        _echo_json({"coeff": sol.coeff, "r": sol.r, "d": sol.d, "rhs": sol.rhs})
    else:
        click.echo(f"r={sol.r} d={sol.d} rhs={'+1' if sol.rhs == 1 else '-1'}")


if __name__ == "__main__":
    main()
