"""Command-line front end: ``boolsd <command> [options]``.

Exit status: 0 success, 1 an acceptance check failed, 2 invalid input,
3 a numerical procedure did not converge.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import catalog
from ._util import fmt17, jsonable
from .catalog import CatalogEntry
from .convolution import (
    boolean_convolve,
    bp_forward,
    bp_inverse,
    free_f_handle,
    sd_decompose,
)
from .errors import (
    BoolSDError,
    NotSelfDecomposable,
    NumericalDiagnostic,
    ShiftRefused,
)
from .limits import DEFAULT_LADDER
from .measure_model import measure_from_json
from .profiles import two_sided_grid
from .sd_analysis import (
    FAIL,
    atom_census,
    check_boolean_sd,
    default_window,
    normal_profile,
    normal_shift_scan,
    normal_threshold,
    profile_from_k,
    shift_profile,
    shift_threshold,
    UNIMODALITY_TOL,
    unimodality_check,
)
from .svg import line_chart
from .transforms import (
    eta,
    f_transform,
    g_from_f,
    gaussian_component_from_F,
    k_from_F,
    self_energy,
    stieltjes_invert,
)

EXIT_OK, EXIT_ACCEPTANCE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

COMMANDS = ("list", "eval", "invert", "k-profile", "check-sd", "atoms", "shift-scan",
            "shift-threshold", "normal-threshold", "convolve", "decompose", "bijection",
            "reproduce-paper")


class UsageError(BoolSDError, ValueError):
    """Malformed command line."""


# ---------------------------------------------------------------------------
# argument parsing


def _grid(text):
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:n, got {text!r}") from None
    if not (hi > lo and n >= 2):
        raise argparse.ArgumentTypeError("grid needs hi > lo and n >= 2")
    return lo, hi, n


def _ladder(text):
    try:
        vals = tuple(sorted((float(v) for v in text.split(",")), reverse=True))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad epsilon ladder {text!r}") from None
    if len(vals) < 5 or any(not v > 0 for v in vals):
        raise argparse.ArgumentTypeError("epsilon ladder needs at least 5 positive values")
    return vals


def build_parser():
    p = argparse.ArgumentParser(prog="boolsd", description="Boolean selfdecomposability toolkit",
                                allow_abbrev=False)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--dist", help="catalog id (see `boolsd list`)")
    p.add_argument("--param", action="append", default=[], metavar="K=V", help="family parameter (repeatable)")
    p.add_argument("--measure", help="JSON measure file")
    p.add_argument("--grid", type=_grid, help="lo:hi:n")
    p.add_argument("--eps-ladder", type=_ladder, default=DEFAULT_LADDER, help="e1,e2,... (>= 5 values)")
    p.add_argument("--tol", type=float, help="unimodality tolerance (check-sd, shift-scan) or range tolerance")
    p.add_argument("--out", help="output directory (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json", "svg"), help="output format")
    p.add_argument("--z", help="comma-separated complex points for eval, e.g. 0.5+1j,2j")
    p.add_argument("--transform", choices=("G", "F", "K", "eta"), default="F", help="eval target")
    p.add_argument("--a", dest="src_a", help="first operand of convolve, e.g. dirac:1")
    p.add_argument("--b", dest="src_b", help="second operand of convolve")
    p.add_argument("--c", type=float, default=0.5, help="dilation factor for decompose")
    p.add_argument("--m", help="shift values for shift-scan, comma list or lo:hi:n")
    p.add_argument("--direction", choices=("forward", "inverse"), default="forward",
                   help="bijection direction")
    return p


def _parse_value(text):
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"parameter value {text!r} is not a number") from None


def _params(args, extra):
    out = {}
    for item in args.param:
        if "=" not in item:
            raise UsageError(f"--param expects K=V, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = _parse_value(v)
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, val = key.split("=", 1)
        else:
            val = next(it, None)
            if val is None:
                raise UsageError(f"{tok} needs a value")
        out[key.replace("-", "_")] = _parse_value(val)
    # --a and --m double as family parameters outside the commands that own them
    if args.command != "convolve" and args.src_a is not None:
        out["a"] = _parse_value(args.src_a)
    if args.command != "shift-scan" and args.m is not None:
        out["m"] = _parse_value(args.m)
    return out


def parse_source(text):
    """``id`` or ``id:v1,k=v2,...`` (positional values follow the family's parameter order), or a JSON path."""
    if text.endswith(".json"):
        return measure_from_json(text)
    fid, _, rest = text.partition(":")
    params = {}
    if rest:
        schema = catalog.list_schema().get(catalog.ALIASES.get(fid, fid), {}).get("params", {})
        order = list(schema)
        for n, item in enumerate(rest.split(",")):
            if "=" in item:
                k, v = item.split("=", 1)
                params[k.strip()] = _parse_value(v)
            elif n < len(order):
                params[order[n]] = _parse_value(item)
            else:
                raise UsageError(f"too many positional parameters in {text!r}")
    return catalog.entry(fid, **params)


def _source(args, extra):
    if args.measure and args.dist:
        raise UsageError("give either --dist or --measure, not both")
    if args.measure:
        if extra or args.param:
            raise UsageError("family parameters only apply with --dist")
        return measure_from_json(args.measure)
    if not args.dist:
        raise UsageError(f"{args.command} needs --dist or --measure")
    return catalog.entry(args.dist, **_params(args, extra))


def _handle(src):
    return src.f_closed if isinstance(src, CatalogEntry) else f_transform(src, check=False)


def _label(src):
    return src.name if isinstance(src, CatalogEntry) else "measure"


# ---------------------------------------------------------------------------
# output


class Output:
    """Writes artifacts to ``--out`` or stdout; JSON keys are sorted for byte-stable output."""

    def __init__(self, out_dir, stream):
        self.out_dir = out_dir
        self.stream = stream
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            if not os.access(out_dir, os.W_OK):
                raise UsageError(f"output directory {out_dir!r} is not writable")

    def emit(self, name, text):
        if self.out_dir:
            path = os.path.join(self.out_dir, name)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            print(path, file=self.stream)
        else:
            self.stream.write(text)

    def json(self, name, obj):
        self.emit(name, json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n")


def _csv(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt17(v) for v in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_list(args, extra, out):
    out.json("catalog.json", catalog.list_schema())


def _points(text):
    if not text:
        raise UsageError("eval needs --z")
    try:
        return [complex(t.strip().replace(" ", "")) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse complex points {text!r}") from None


def cmd_eval(args, extra, out):
    src = _source(args, extra)
    h = _handle(src)
    target = {"G": g_from_f(h), "F": h, "K": self_energy(h), "eta": eta(h)}[args.transform]
    rows = [(z, target(z)) for z in _points(args.z)]
    if args.format == "csv":
        out.emit("eval.csv", _csv(("re_z", "im_z", "re", "im"),
                                  [(z.real, z.imag, v.real, v.imag) for z, v in rows]))
    else:
        out.json("eval.json", {"source": _label(src), "transform": args.transform,
                               "values": [{"z": z, "value": v} for z, v in rows]})


def _window_grid(args, src, default_n=401):
    if args.grid:
        return args.grid
    entry = src if isinstance(src, CatalogEntry) else None
    lo, hi = default_window(entry)
    return lo, hi, default_n


def cmd_invert(args, extra, out):
    src = _source(args, extra)
    lo, hi, n = _window_grid(args, src)
    prof = stieltjes_invert(_handle(src), (lo, hi), n, ladder=args.eps_ladder)
    _emit_profile(out, "density", prof.grid, prof.values, args.format,
                  lambda: prof.to_csv(), f"density of {_label(src)}", "density")


def _emit_profile(out, stem, x, y, fmt, csv_fn, title, ylabel, extra_json=None):
    if fmt == "svg":
        out.emit(f"{stem}.svg", line_chart([(x, y, "")], title, "x", ylabel))
    elif fmt == "json":
        payload = {"x": list(map(float, x)), ylabel: list(map(float, y))}
        payload.update(extra_json or {})
        out.json(f"{stem}.json", payload)
    else:
        out.emit(f"{stem}.csv", csv_fn())


def _k_grid(args, src):
    lo, hi, n = _window_grid(args, src)
    return two_sided_grid(lo, hi, n)


def _k_profile(args, src):
    h = _handle(src)
    grid = _k_grid(args, src)
    a = gaussian_component_from_F(h, args.eps_ladder)
    return k_from_F(h, grid, ladder=args.eps_ladder, gaussian_component=a)


def cmd_k_profile(args, extra, out):
    src = _source(args, extra)
    prof = _k_profile(args, src)
    _emit_profile(out, "k_profile", prof.grid, prof.k, args.format, prof.to_csv,
                  f"k of {_label(src)}", "k",
                  {"alpha": prof.alpha, "beta": prof.beta, "flags": list(prof.flags)})


def cmd_check_sd(args, extra, out):
    src = _source(args, extra)
    kw = {"tolerance": args.tol if args.tol is not None else UNIMODALITY_TOL}
    if args.grid:
        kw["grid"] = two_sided_grid(*args.grid)
    res = check_boolean_sd(src, **kw)
    if args.format == "csv":
        out.emit("check_sd.csv", res.profile.to_csv())
    elif args.format == "svg":
        out.emit("check_sd.svg", line_chart([(res.profile.grid, res.profile.k, res.verdict)],
                                            f"k of {_label(src)}", "x", "k"))
    else:
        out.json("check_sd.json", {"source": _label(src), **res.to_json()})


def cmd_atoms(args, extra, out):
    src = _source(args, extra)
    h = _handle(src)
    prof = _k_profile(args, src)
    cands = src.atom_candidates if isinstance(src, CatalogEntry) else ()
    cens = atom_census(h, None if prof.is_zero else prof, candidates=cands)
    if args.format == "csv":
        out.emit("atoms.csv", _csv(("x", "w"), cens.atoms))
    else:
        out.json("atoms.json", {"source": _label(src), **cens.to_json()})


def _m_values(text):
    if not text:
        return [0.0, 1.0, 2.0, 3.05, 3.2, 4.0, 6.0]
    if ":" in text:
        lo, hi, n = _grid(text)
        return list(np.linspace(lo, hi, n))
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --m list {text!r}") from None


def _base_profile(args, src):
    """Closed-form ``k`` when the catalog provides one, otherwise the boundary-value route."""
    if isinstance(src, CatalogEntry) and src.id == "normal" and src.params == {"m": 0.0, "v": 1.0}:
        return normal_profile()
    if isinstance(src, CatalogEntry) and src.k_closed is not None:
        lo, hi, n = args.grid or (*default_window(src), 2000)
        return profile_from_k(src.k_closed, two_sided_grid(lo, hi, n, near_zero=1e-6), src.k_support,
                              gaussian_component=src.gaussian_component)
    return _k_profile(args, src)


def cmd_shift_scan(args, extra, out):
    tol = args.tol if args.tol is not None else UNIMODALITY_TOL
    ms = _m_values(args.m)
    if not args.dist and not args.measure:
        args.dist = "normal"
    src = _source(args, extra)
    if isinstance(src, CatalogEntry) and src.id == "normal" and src.params == {"m": 0.0, "v": 1.0}:
        rows = normal_shift_scan(ms, tolerance=tol)
    else:
        base = _base_profile(args, src)
        rows = []
        for m in ms:
            try:
                rep = unimodality_check(shift_profile(base, float(m), grid=base.grid), tol)
                rows.append({"m": float(m), "verdict": rep.verdict, "worst_violation": rep.worst_violation})
            except ShiftRefused as exc:
                rows.append({"m": float(m), "verdict": FAIL, "worst_violation": None, "note": str(exc)})
    if args.format == "csv":
        out.emit("shift_scan.csv", _csv(("m", "verdict"), [(r["m"], r["verdict"]) for r in rows]))
    elif args.format == "svg":
        base = _base_profile(args, src)
        series = []
        for r in rows[:5]:
            prof = shift_profile(base, r["m"], grid=base.grid)
            series.append((prof.grid, prof.k, f"m = {r['m']:g}: {r['verdict']}"))
        out.emit("shift_scan.svg", line_chart(series, f"shifted k of {_label(src)}", "x", "k", ylim=(0, 1)))
    else:
        out.json("shift_scan.json", {"source": _label(src), "rows": rows})


def cmd_shift_threshold(args, extra, out):
    if not args.dist and not args.measure:
        args.dist = "normal"
    src = _source(args, extra)
    rep = shift_threshold(_base_profile(args, src))
    out.json("shift_threshold.json", {"source": _label(src), **rep.to_json()})


def cmd_normal_threshold(args, extra, out):
    rep = normal_threshold()
    if args.format == "svg":
        a, p = zip(*rep.p_curve)
        out.emit("p_curve.svg", line_chart([(a, p, f"M0 = {rep.M0:.4f} at a0 = {rep.a0:.4f}")],
                                           "p(a) for N(0,1)", "a", "p(a)"))
    elif args.format == "csv":
        out.emit("p_curve.csv", _csv(("a", "p"), rep.p_curve))
    else:
        out.json("normal_threshold.json", rep.to_json())


def _atom_table(h, window=None):
    cens = atom_census(h)
    return {fmt17(x): w for x, w in cens.atoms}


def cmd_convolve(args, extra, out):
    if not (args.src_a and args.src_b):
        raise UsageError("convolve needs --a and --b")
    a, b = parse_source(args.src_a), parse_source(args.src_b)
    h = boolean_convolve(_handle(a), _handle(b))
    result = {"a": _label(a), "b": _label(b), "atoms": _atom_table(h)}
    if args.grid:
        lo, hi, n = args.grid
        prof = stieltjes_invert(h, (lo, hi), n, ladder=args.eps_ladder)
        if args.format == "csv":
            out.emit("convolve.csv", prof.to_csv())
            return
        result["density"] = {"x": list(map(float, prof.grid)), "value": list(map(float, prof.values))}
    out.json("convolve.json", result)


def cmd_decompose(args, extra, out):
    src = _source(args, extra)
    h = _handle(src)
    kw = {} if args.tol is None else {"tol": args.tol}
    try:
        cof = sd_decompose(h, args.c, **kw)
    except NotSelfDecomposable as exc:
        out.json("decompose.json", {"source": _label(src), "c": args.c, "decomposable": False,
                                    "evidence": {"z": exc.z, "im_K": exc.im_value, "message": str(exc)}})
        return
    zs = [complex(x, 1.0) for x in (-2.0, -1.0, 0.0, 1.0, 2.0)]
    out.json("decompose.json", {"source": _label(src), "c": args.c, "decomposable": True,
                                "cofactor_F": [{"z": z, "value": cof(z)} for z in zs],
                                "cofactor_atoms": _atom_table(cof)})


def cmd_bijection(args, extra, out):
    src = _source(args, extra)
    if not isinstance(src, CatalogEntry) or src.pair is None:
        raise UsageError("bijection needs a catalog entry with a known generating pair")
    if args.direction == "forward":
        h = free_f_handle(bp_forward(src.pair, label=src.name))
    else:
        h = bp_inverse(src.pair, label=src.name)
    lo, hi, n = args.grid or (-3.0, 3.0, 121)
    prof = stieltjes_invert(h, (lo, hi), n, ladder=args.eps_ladder)
    _emit_profile(out, f"bijection_{args.direction}", prof.grid, prof.values, args.format, prof.to_csv,
                  f"{args.direction} image of {src.name}", "density")


def cmd_reproduce(args, extra, out_unused):
    from .acceptance import run_all

    out_dir = args.out or "reproduction"
    out = Output(out_dir, sys.stdout)

    def show(r):
        print(r.line(), flush=True)
        for d in r.details:
            print("    " + d, flush=True)

    results = run_all(show)
    out.emit("summary.csv", _csv(("criterion", "name", "passed", "seconds"),
                                 [(float(r.number), r.name, "yes" if r.passed else "no", r.seconds)
                                  for r in results]))
    out.json("summary.json", [r.to_json() for r in results])
    rep = normal_threshold()
    a, p = zip(*rep.p_curve)
    out.emit("figure_p_curve.svg", line_chart([(a, p, f"M0 = {rep.M0:.4f}")], "p(a) for N(0,1)", "a", "p(a)"))
    base = normal_profile(window=(-6.0, 10.0), n=1200)
    for m, stem in ((3.05, "figure_k_N3.05"), (3.2, "figure_k_N3.2")):
        prof = shift_profile(base, m, grid=base.grid)
        out.emit(f"{stem}.svg", line_chart([(prof.grid, prof.k, f"k of N({m:g},1)")],
                                           f"k of N({m:g},1)", "x", "k", ylim=(0, 0.3)))
    return EXIT_OK if all(r.passed for r in results) else EXIT_ACCEPTANCE


HANDLERS = {
    "list": cmd_list, "eval": cmd_eval, "invert": cmd_invert, "k-profile": cmd_k_profile,
    "check-sd": cmd_check_sd, "atoms": cmd_atoms, "shift-scan": cmd_shift_scan,
    "shift-threshold": cmd_shift_threshold, "normal-threshold": cmd_normal_threshold,
    "convolve": cmd_convolve, "decompose": cmd_decompose, "bijection": cmd_bijection,
    "reproduce-paper": cmd_reproduce,
}


def _glue_negative_values(argv):
    """Join ``--grid -3:3:50``-style pairs so argparse does not read the value as an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--grid", "--m", "--z", "--eps-ladder"):
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args, extra = parser.parse_known_args(_glue_negative_values(argv))
    try:
        out = Output(args.out, sys.stdout) if args.command != "reproduce-paper" else None
        status = HANDLERS[args.command](args, extra, out)
        return EXIT_OK if status is None else status
    except NumericalDiagnostic as exc:
        print(f"numerical diagnostic: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (BoolSDError, ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
