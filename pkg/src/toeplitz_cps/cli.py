"""Command-line front end: ``toeplitz-cps <command> SPEC [options]``.

SPEC is a preset name (ruler-alt, fat-cantor, half-dim) or a spec file.
Machine reports are JSON (default) or CSV and are byte-identical across runs.
Exit status is 0 iff every check made by the command passes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import dimension, families, skeleton, specfile, window
from .intervals import Interval, format_fraction, parse_fraction, to_decimal
from .odometer import Metric
from .residues import BudgetExceeded

OUTDIR_ENV = "TOEPLITZ_CPS_OUTDIR"

DEFAULT_DEPTH = {"gen": 12, "analyze": 12, "window": 8, "project": 32, "dim": 12, "verify": 8}


def rational(x) -> dict:
    x = Fraction(x)
    return {"exact": format_fraction(x), "decimal": str(to_decimal(x, 20))}


def decimal(x: Decimal | None, digits: int = 30) -> str | None:
    if x is None:
        return None
    with localcontext() as ctx:
        ctx.prec = digits
        x = (+x).normalize()
    return format(x, "f")


def interval(iv: Interval) -> dict:
    return {"lo": rational(iv.lo), "hi": rational(iv.hi), "width": rational(iv.width)}


def parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like a:b, got {text!r}") from None


def load_metric(text: str) -> Metric:
    if text == "canonical":
        return Metric.canonical()
    doc = json.loads(Path(text).read_text())
    if isinstance(doc, dict):
        doc = doc.get("diameters", [])
    return Metric.custom([parse_fraction(v) for v in doc])


# -- commands --------------------------------------------------------------------

def cmd_analyze(spec, args):
    lmax = args.lmax if args.lmax is not None else spec.depth
    rows = skeleton.density_table(spec, lmax)
    verdict = skeleton.regularity(spec, lmax)
    results = {
        "density": [{"level": r.level, "period": str(r.period), "filled": str(r.filled),
                     "density": rational(r.density), "deficit": rational(r.deficit)}
                    for r in rows],
        "regularity": {"status": verdict.status.value,
                       "limit_density": interval(verdict.limit_density),
                       "boundary": interval(verdict.boundary)},
        "boundary_measure": interval(window.boundary_measure(spec, lmax)),
    }
    table = [["level", "period", "filled", "density", "deficit", "deficit_decimal"]]
    table += [[r.level, r.period, r.filled, format_fraction(r.density),
               format_fraction(r.deficit), to_decimal(r.deficit, 20)] for r in rows]
    bm = window.boundary_measure(spec, lmax)
    summary = [("regularity", verdict.status.value),
               ("boundary_lo", to_decimal(bm.lo, 20)), ("boundary_hi", to_decimal(bm.hi, 20))]
    return results, table, summary, True


def cmd_window(spec, args):
    lmax = args.lmax if args.lmax is not None else spec.depth
    out, table = [], [["level", "period", "U", "V", "N", "representation"]]
    for level in range(0, lmax + 1):
        wl = window.window_level(spec, level, args.budget)
        entry = {"level": level, "period": str(wl.modulus), "U": str(wl.U.count),
                 "V": str(wl.V.count), "N": str(wl.undetermined),
                 "measure_U": rational(wl.U.measure), "measure_V": rational(wl.V.measure),
                 "measure_N": rational(Fraction(wl.undetermined, wl.modulus)),
                 "representation": wl.U.representation}
        if args.residues and wl.U.representation == "explicit":
            entry["U_residues"] = [int(r) for r in wl.U.to_array()]
            entry["V_residues"] = [int(r) for r in wl.V.to_array()]
        out.append(entry)
        table.append([level, wl.modulus, wl.U.count, wl.V.count, wl.undetermined,
                      wl.U.representation])
    return {"levels": out}, table, [], True


def cmd_project(spec, args):
    a, b = args.range
    depth = args.depth
    try:
        inside = window.project(spec, a, b, depth)
    except skeleton.UndeterminedPosition as exc:
        results = {"range": [a, b], "depth": depth, "error": "undetermined",
                   "undetermined": exc.positions}
        return results, [["n", "undetermined"]] + [[n, 1] for n in exc.positions], \
            [("status", "UNDETERMINED")], False
    expected = window.ones(spec, a, b, depth)
    match = inside == expected
    diff = sorted(set(inside) ^ set(expected))
    results = {"range": [a, b], "depth": depth, "model_set": inside,
               "count": len(inside), "check": "MATCH" if match else "MISMATCH",
               "mismatches": diff}
    members = set(inside)
    table = [["n", "in_window", "xi"]]
    ones = set(expected)
    table += [[n, int(n in members), int(n in ones)] for n in range(a, b + 1)]
    return results, table, [("check", results["check"])], match


def _dim_rows(report):
    return [{"level": r.level, "period": str(r.period),
             "cover": None if r.cover is None else str(r.cover),
             "diameter": format_fraction(r.diameter),
             "ambient": decimal(r.ambient),
             "ambient_exact": None if r.ambient_exact is None else format_fraction(r.ambient_exact),
             "raw": decimal(r.raw),
             "raw_exact": None if r.raw_exact is None else format_fraction(r.raw_exact),
             "slope": decimal(r.slope),
             "slope_exact": None if r.slope_exact is None else format_fraction(r.slope_exact)}
            for r in report.rows]


def cmd_dim(spec, args):
    lmax = args.lmax if args.lmax is not None else spec.depth
    metric = load_metric(args.metric)
    bnd = dimension.dim_boundary(spec, metric, lmax, args.tail_start)
    tails = {k: {"start": t.start, "sup": decimal(t.sup), "inf": decimal(t.inf)}
             for k, t in bnd.tails.items()}
    results = {"metric": metric.kind, "hypothesis_ok": bnd.hypothesis_ok, "note": bnd.note,
               "rows": _dim_rows(bnd), "tail": tails}
    table = [["level", "period", "cover", "diameter", "ambient", "raw", "slope",
              "raw_exact", "slope_exact"]]
    for row in results["rows"]:
        table.append([row["level"], row["period"], row["cover"], row["diameter"],
                      row["ambient"], row["raw"], row["slope"], row["raw_exact"] or "",
                      row["slope_exact"] or ""])
    summary = [("hypothesis_ok", bnd.hypothesis_ok)]
    if bnd.note:
        summary.append(("note", bnd.note))
    return results, table, summary, bnd.hypothesis_ok


def cmd_verify(spec, args):
    depth = args.depth
    a, b = args.range
    rep = families.validate(spec, depth, a, b, args.budget)
    checks = [{"check": c.name, "level": c.level, "status": c.status,
               "witness": c.witness} for c in rep.checks()]
    proper = []
    for kappa in args.kappa:
        if kappa > depth:
            continue
        v = window.properness_check(spec, kappa, depth, args.budget)
        proper.append({"kappa": kappa, "depth": depth, "verified": v.verified,
                       "residue": v.residue,
                       "missing": None if v.missing is None else v.missing.value})
    ok = rep.ok and all(p["verified"] for p in proper)
    results = {"depth": depth, "range": [a, b], "ok": ok, "checks": checks,
               "properness": proper}
    table = [["check", "level", "status", "witness"]]
    table += [[c["check"], "" if c["level"] is None else c["level"], c["status"],
               "" if c["witness"] is None else json.dumps(c["witness"])] for c in checks]
    table += [["properness", p["kappa"], "pass" if p["verified"] else "fail",
               "" if p["residue"] is None else p["residue"]] for p in proper]
    return results, table, [("ok", ok)], ok


COMMANDS = {"analyze": cmd_analyze, "window": cmd_window, "project": cmd_project,
            "dim": cmd_dim, "verify": cmd_verify}


# -- plumbing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toeplitz-cps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", help="preset name or spec file")
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--lmax", type=int, default=None)
        p.add_argument("--budget", type=int, default=skeleton.DEFAULT_BUDGET)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None)
        return p

    gen = sub.add_parser("gen", help="emit a spec file for a family")
    gen.add_argument("family", choices=sorted(families.FAMILIES))
    gen.add_argument("--params", default="{}", help="family parameters as JSON")
    gen.add_argument("--depth", type=int, default=None)
    gen.add_argument("--backend", choices=("ruled", "finite"), default="ruled")
    gen.add_argument("--budget", type=int, default=skeleton.DEFAULT_BUDGET)
    gen.add_argument("--out", default=None)

    common(sub.add_parser("analyze", help="densities, regularity, boundary measure"))
    w = common(sub.add_parser("window", help="U_l, V_l and N(l) per level"))
    w.add_argument("--residues", action="store_true", help="list explicit residues")
    p = common(sub.add_parser("project", help="model set on a range, checked against the sequence"))
    p.add_argument("--range", type=parse_range, default=(0, 63))
    d = common(sub.add_parser("dim", help="box-dimension report"))
    d.add_argument("--metric", default="canonical", help="'canonical' or a JSON file of diameters")
    d.add_argument("--tail-start", type=int, default=None)
    v = common(sub.add_parser("verify", help="validation report and properness check"))
    v.add_argument("--range", type=parse_range, default=(-100, 100))
    v.add_argument("--kappa", type=int, nargs="+", default=[1, 2, 3])
    return parser


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def render(command, args_echo, spec, results, table, summary, ok, fmt) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for key, value in summary:
            buf.write(f"# {key}: {value}\n")
        writer.writerows(table)
        return buf.getvalue()
    doc = {"command": command, "arguments": args_echo,
           "spec": {"digest": specfile.spec_digest(spec), "backend": spec.backend},
           "status": "pass" if ok else "fail", "results": results}
    return json.dumps(doc, indent=2) + "\n"


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            depth = args.depth or DEFAULT_DEPTH["gen"]
            spec = families.generate(families.make_rule(args.family, json.loads(args.params)),
                                     depth)
            if args.backend == "finite":
                spec = skeleton.truncate(spec, depth, args.budget)
            _write(specfile.dumps_spec(spec), args.out)
            return 0
        if args.depth is None:
            args.depth = DEFAULT_DEPTH[args.command]
        spec = specfile.load_spec(args.spec, args.depth)
        if not spec.extendable:
            args.depth = min(args.depth, spec.depth)
        results, table, summary, ok = COMMANDS[args.command](spec, args)
    except (specfile.SpecError, families.RuleError, BudgetExceeded, skeleton.DepthError,
            skeleton.InconsistentSpec, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    echo = {k: (list(v) if isinstance(v, tuple) else v)
            for k, v in sorted(vars(args).items()) if k not in ("out", "format")}
    _write(render(args.command, echo, spec, results, table, summary, ok, args.format), args.out)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
