"""Command-line front end.

Every subcommand writes its artifacts (CSV/JSON, optional SVG) plus
manifest.json into --out and prints a short summary. Exit codes: 0 success,
2 invalid input, 3 numerical failure, 4 inconclusive verdict under --strict.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

import mpmath
from mpmath import mp

from . import cansys
from ._mp import exact_to_json, fmt, parse_exact, to_mp
from .cauchy import CauchyFunction, load_coeffs, parse_coeff_spec
from .density import borichev_sodin_test, density_residuals
from .errors import InvalidInput, NumericalFailure
from .localization import extract_attraction_set, localize, make_grid, ordering_check
from .measure import (check_power_separation, check_weight_decay, load_measure, make_example,
                      measure_from_json, measure_to_json, validate)
from .products import (CanonicalProduct, hamburger_check, lattice_product, powers2_product,
                       squares_product)
from .reports import (RunManifest, dumps, parallel_map, sha256_file, write_csv, write_json,
                      write_manifest, write_timing)
from .zeros import Rectangle, find_zeros

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_INCONCLUSIVE = 0, 2, 3, 4

# options whose values may start with '-' (negative window corners, index ranges)
_SIGNED = {"--window", "--n", "--stage"}


def _preprocess(argv):
    out = []
    for tok in argv:
        if out and out[-1] in _SIGNED and re.match(r"-[\d.]", tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def parse_window(spec: str) -> Rectangle:
    """``x0:x1,y0:y1`` -> Rectangle (exact decimal or p/q corners)."""
    try:
        xs, ys = spec.split(",")
        x0, x1 = xs.split(":")
        y0, y1 = ys.split(":")
        vals = [to_mp(parse_exact(v)) for v in (x0, x1, y0, y1)]
    except ValueError:
        raise InvalidInput(f"window must look like x0:x1,y0:y1, got {spec!r}") from None
    return Rectangle(*vals)


def _num_list(spec):
    try:
        return [int(v) for v in spec.split(",")]
    except ValueError:
        raise InvalidInput(f"expected comma-separated integers, got {spec!r}") from None


# -- shared helpers ---------------------------------------------------------------

class Context:
    def __init__(self, args):
        self.args = args
        self.out = Path(args.out)
        self.manifest = RunManifest(
            subcommand=args.command,
            params={k: v for k, v in sorted(vars(args).items())
                    if k not in ("jobs", "out", "svg", "func", "command", "precision", "seed")},
            precision_bits=args.precision, seed=args.seed)
        self.inconclusive = False

    def hash_input(self, path):
        self.manifest.input_hashes[str(path)] = sha256_file(path)

    def json(self, name, obj):
        obj = dict(obj)
        obj["precision_bits"] = mp.prec
        write_json(self.out / name, obj)
        self.manifest.artifacts.append(name)

    def csv(self, name, header, rows):
        write_csv(self.out / name, list(header) + ["precision_bits"],
                  [list(r) + [mp.prec] for r in rows])
        self.manifest.artifacts.append(name)

    def svg(self, name, fn, *a, **kw):
        if self.args.svg:
            fn(*a, path=self.out / name, **kw)
            self.manifest.artifacts.append(name)

    def flag(self, verdict):
        if verdict == "inconclusive":
            self.inconclusive = True


def _measure(ctx, path):
    ctx.hash_input(path)
    return load_measure(path)


def _coeffs(ctx, spec, m, convention, seed_shift=0):
    """Coefficients from a JSON file or a 'random:...' spec (seed shifted per run)."""
    if spec.startswith("random"):
        if "seed=" not in spec:
            spec = spec + ("," if ":" in spec else ":") + f"seed={ctx.args.seed}"
        base = int(re.search(r"seed=(-?\d+)", spec).group(1))
        spec = re.sub(r"seed=-?\d+", f"seed={base + seed_shift}", spec)
        return parse_coeff_spec(spec, len(m)), convention or "a"
    if seed_shift:
        raise InvalidInput("--runs > 1 needs random coefficients")
    ctx.hash_input(spec)
    coeffs, conv = load_coeffs(spec)
    return coeffs, convention or conv


def _g(ctx, m, spec, convention, shift=0):
    coeffs, conv = _coeffs(ctx, spec, m, convention, shift)
    return CauchyFunction(m, coeffs, conv)


def _zero_rows(inv, m):
    labels = m.labels()
    rows = []
    for r in inv.sorted_zeros():
        z = mpmath.mpc(r.location)
        near = min(range(len(m)), key=lambda i: abs(z - to_mp(m.support[i])))
        rows.append([fmt(z.real), fmt(z.imag), r.multiplicity, f"{r.winding_dev:.3e}",
                     mpmath.nstr(r.box_size, 6), labels[near], exact_to_json(m.support[near])])
    return rows


def _loc_summary(rep, m):
    labels = m.labels()
    grid_rows = []
    for idx in rep.indices:
        grid_rows.append({"index": labels[idx], "t": exact_to_json(m.support[idx]),
                          "count": rep.counts.get(idx)})
    strays = []
    for rec, near in rep.strays:
        z = mpmath.mpc(rec.location)
        strays.append({"re": fmt(z.real), "im": fmt(z.imag), "multiplicity": rec.multiplicity,
                       "nearest_index": labels[near]})
    return {
        "disks": grid_rows,
        "occupied": sorted(labels[i] for i in rep.occupied),
        "multi": sorted(labels[i] for i in rep.multi),
        "inconclusive_disks": sorted(labels[i] for i in rep.inconclusive),
        "strays": strays,
        "stray_count": rep.stray_count,
        "window_count": rep.window_count,
        "conservation_ok": rep.conservation_ok,
        "outside_unit": rep.outside_unit,
        "multiple_zeros": rep.multiple_zeros,
        "zero_coeff_indices": [labels[i] for i in rep.zero_coeff_indices],
        "verdicts": dict(sorted(rep.verdicts.items())),
        "budget": rep.budget,
        "M": exact_to_json(parse_exact(rep.M)),
        "c": exact_to_json(rep.c),
        "unresolved_boxes": len(rep.inventory.unresolved_boxes) if rep.inventory else 0,
        "notes": list(rep.notes),
    }


# -- worker jobs (module level so they pickle) -------------------------------------

def _job_localize(payload):
    m = measure_from_json(payload["measure"])
    g = CauchyFunction(m, [parse_exact(c) for c in payload["coeffs"]], payload["convention"])
    window = parse_window(payload["window"])
    grid = make_grid(m, payload["c"], payload["M"])
    rep = localize(g, grid, window, payload["budget"])
    return _loc_summary(rep, m)


def _job_attraction(payload):
    m = measure_from_json(payload["measure"])
    g = CauchyFunction(m, [parse_exact(c) for c in payload["coeffs"]], payload["convention"])
    window = parse_window(payload["window"])
    a = extract_attraction_set(g, window, payload["M"], payload["c"], payload["budget"])
    labels = m.labels()
    return {
        "T_f": sorted(labels[i] for i in a.T_f),
        "exception_count": a.exception_count,
        "windows_stable": a.windows_stable,
        "runs": {k: sorted(labels[i] for i in v) for k, v in sorted(a.runs.items())},
        "precondition_ok": a.precondition_ok,
        "budget": a.budget,
        "notes": list(a.notes),
        "localization": _loc_summary(a.primary, m),
    }


def _payloads(ctx, m, runs):
    a = ctx.args
    out = []
    for r in range(runs):
        coeffs, conv = _coeffs(ctx, a.coeffs, m, a.convention, r)
        out.append({"measure": measure_to_json(m), "coeffs": [exact_to_json(c) for c in coeffs],
                    "convention": conv, "window": a.window, "M": parse_exact(a.M),
                    "c": parse_exact(a.c), "budget": a.budget})
    return out


# -- subcommands ----------------------------------------------------------------------

def cmd_examples(ctx):
    a = ctx.args
    params = {}
    if a.n:
        lo, hi = (int(v) for v in a.n.split(".."))
        params.update(n_min=lo, n_max=hi)
    if a.weight:
        params["weight"] = a.weight
    if a.n_squares is not None:
        params["n_squares"] = a.n_squares
    if a.n_cubes is not None:
        params["n_cubes"] = a.n_cubes
    try:
        m = make_example(a.kind, **params)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    ctx.json("measure.json", measure_to_json(m))
    print(dumps(measure_to_json(m)), end="")


def cmd_validate(ctx):
    a = ctx.args
    m = _measure(ctx, a.measure)
    rep = validate(m)
    out = {"valid": rep.valid, "violations": list(rep.violations),
           "poisson_sum": fmt(rep.poisson_sum), "size": len(m)}
    if a.separation:
        C, N = a.separation.split(":")
        cert = check_power_separation(m, parse_exact(C), int(N))
        out["separation"] = {"C": exact_to_json(parse_exact(C)), "N": int(N),
                             "satisfied": cert.satisfied, "worst_index": cert.worst_index}
    if a.decay is not None:
        d = check_weight_decay(m, a.decay)
        out["decay"] = {"M": a.decay, "bounded": d.bounded,
                        "decreasing_tail": d.decreasing_tail, "max_value": fmt(d.max_value, digits=15),
                        "slope": None if d.slope is None else f"{d.slope:.6g}"}
    ctx.json("validation.json", out)
    print(f"valid={rep.valid} poisson_sum={fmt(rep.poisson_sum, digits=15)}")
    for v in rep.violations:
        print("  " + v)


def cmd_zeros(ctx):
    a = ctx.args
    m = _measure(ctx, a.measure)
    g = _g(ctx, m, a.coeffs, a.convention)
    window = parse_window(a.window)
    inv = find_zeros(g.entire(), window)
    rows = _zero_rows(inv, m)
    ctx.csv("zeros.csv", ["re", "im", "multiplicity", "winding_dev", "box_size",
                          "nearest_index", "nearest_t"], rows)
    ctx.json("zeros.json", {"window": a.window, "total_count": inv.total_count,
                            "found": inv.multiplicity_sum(),
                            "window_deviation": f"{inv.window_dev:.3e}",
                            "unresolved_boxes": len(inv.unresolved_boxes)})
    print(f"{inv.total_count} zeros in window {a.window}")
    for r in rows:
        print(f"  {r[0]} {r[1]}i  mult={r[2]}")
    if inv.unresolved_boxes:
        ctx.flag("inconclusive")


def _write_localization(ctx, results, m):
    disk_rows, stray_rows = [], []
    for run, res in enumerate(results):
        for d in res["disks"]:
            disk_rows.append([run, d["index"], d["t"], d["count"]])
        for s in res["strays"]:
            stray_rows.append([run, s["re"], s["im"], s["multiplicity"], s["nearest_index"]])
        for v in res["verdicts"].values():
            ctx.flag(v)
    ctx.csv("disks.csv", ["run", "index", "t", "count"], disk_rows)
    ctx.csv("strays.csv", ["run", "re", "im", "multiplicity", "nearest_index"], stray_rows)


def cmd_localize(ctx):
    a = ctx.args
    m = _measure(ctx, a.measure)
    payloads = _payloads(ctx, m, a.runs)
    results = parallel_map(_job_localize, payloads, a.jobs)
    _write_localization(ctx, results, m)
    ctx.json("localization.json", {"runs": results})
    for run, res in enumerate(results):
        print(f"run {run}: strays={res['stray_count']} occupied={res['occupied']} "
              f"verdicts={res['verdicts']}")
    if a.svg and a.runs == 1:
        from .plotting import plot_localization

        g = CauchyFunction(m, [parse_exact(c) for c in payloads[0]["coeffs"]],
                           payloads[0]["convention"])
        grid = make_grid(m, parse_exact(a.c), parse_exact(a.M))
        rep = localize(g, grid, parse_window(a.window), a.budget)
        ctx.svg("localization.svg", plot_localization, rep, grid.within(rep.inventory.window),
                title=m.label)


def cmd_attraction(ctx):
    a = ctx.args
    m = _measure(ctx, a.measure)
    results = parallel_map(_job_attraction, _payloads(ctx, m, a.runs), a.jobs)
    rows = [[run, " ".join(map(str, r["T_f"])), r["exception_count"], r["windows_stable"],
             r["localization"]["stray_count"]] for run, r in enumerate(results)]
    ctx.csv("attraction.csv", ["run", "T_f", "exception_count", "windows_stable",
                               "stray_count"], rows)
    ctx.json("attraction.json", {"runs": results})
    for r in rows:
        print(f"run {r[0]}: T_f={{{r[1]}}} exceptions={r[2]} stable={r[3]} strays={r[4]}")
        for v in results[r[0]]["localization"]["verdicts"].values():
            ctx.flag(v)


def cmd_order(ctx):
    a = ctx.args
    m = _measure(ctx, a.measure)
    p1 = _payloads(ctx, m, 1)[0]
    saved = a.coeffs
    a.coeffs = a.coeffs2
    p2 = _payloads(ctx, m, 1)[0]
    a.coeffs = saved
    r1, r2 = parallel_map(_job_attraction, [p1, p2], a.jobs)

    class _A:  # thin adaptor: ordering_check only reads these fields
        def __init__(self, r):
            self.T_f, self.budget, self.windows_stable = set(r["T_f"]), r["budget"], \
                r["windows_stable"]

    res = ordering_check(_A(r1), _A(r2), a.budget)
    out = {"relation": res.relation, "only_first": res.only_first,
           "only_second": res.only_second, "symmetric_difference": res.symmetric_difference,
           "budget": res.budget, "preconditions_ok": res.preconditions_ok,
           "T_f_first": r1["T_f"], "T_f_second": r2["T_f"]}
    ctx.json("ordering.json", out)
    print(f"relation={res.relation} |S1\\S2|={res.only_first} |S2\\S1|={res.only_second}")


def cmd_density(ctx):
    a = ctx.args
    m = _measure(ctx, a.measure)
    rep = density_residuals(m, a.K, seed=a.seed)
    if rep.precision_used > mp.prec:
        ctx.manifest.escalations.append({"module": "density", "precision": rep.precision_used})
    rows = []
    for name, res in sorted(rep.residuals.items()):
        for k, v in enumerate(res):
            rows.append([name, k, fmt(v, digits=20)])
    ctx.csv("residuals.csv", ["probe", "K", "residual"], rows)
    ctx.json("density.json", {
        "K": rep.K, "verdict": rep.verdict, "precision_used": rep.precision_used,
        "gram_loss": [fmt(v, digits=6) for v in rep.gram_condition],
        "window_drops": {str(w): {p: f"{v:.4g}" for p, v in sorted(d.items())}
                         for w, d in sorted(rep.window_drops.items())},
        "note": rep.note})
    ctx.flag(rep.verdict)
    print(f"verdict={rep.verdict} (K={rep.K}, {rep.precision_used} bits)")
    if rep.residuals:
        from .plotting import plot_residuals

        ctx.svg("residuals.svg", plot_residuals, rep, title=m.label)


def _product_from_args(ctx):
    a = ctx.args
    if a.zeros:
        ctx.hash_input(a.zeros)
        import json

        zs = json.loads(Path(a.zeros).read_text())
        return CanonicalProduct([parse_exact(z) for z in zs], 0)
    makers = {"squares": squares_product, "powers2": powers2_product,
              "lattice": lattice_product}
    if a.product not in makers:
        raise InvalidInput("give --zeros FILE or --product squares|powers2|lattice")
    return makers[a.product](a.n_max)


def cmd_hamburger(ctx):
    p = _product_from_args(ctx)
    d = hamburger_check(p, _num_list(ctx.args.M))
    out = {"verdict": d.verdict, "note": d.note, "trusted_zeros": len(d.trusted),
           "slopes": {str(M): None if s is None else f"{s:.6g}" for M, s in d.slopes.items()},
           "min_ratio": {str(M): f"{v:.6g}" for M, v in d.min_ratio.items()}}
    ctx.json("hamburger.json", out)
    ctx.flag(d.verdict)
    print(f"verdict={d.verdict} slopes={out['slopes']}")


def parse_mask(spec: str, m) -> list:
    """Divisor mask: 'i,j,k' (0-based indices), 'all', 'squares[:min]' or 'cubes[:min]'.

    'squares' picks integer perfect squares, 'cubes' points n^3 + 1/2; an
    optional min keeps only points >= min.
    """
    kind, _, lo = spec.partition(":")
    lo = parse_exact(lo) if lo else None

    def keep(t):
        return lo is None or t >= lo

    if kind == "all":
        return [i for i, t in enumerate(m.support) if keep(t)]
    if kind == "squares":
        return [i for i, t in enumerate(m.support)
                if t.denominator == 1 and t > 0 and _isqrt_exact(t.numerator) and keep(t)]
    if kind == "cubes":
        return [i for i, t in enumerate(m.support)
                if (t - Fraction(1, 2)).denominator == 1 and t > 0
                and _icbrt_exact(int(t - Fraction(1, 2))) and keep(t)]
    try:
        return [int(v) for v in spec.split(",")]
    except ValueError:
        raise InvalidInput(f"bad mask {spec!r}") from None


def _isqrt_exact(n):
    from math import isqrt

    return isqrt(n) ** 2 == n


def _icbrt_exact(n):
    r = round(n ** (1 / 3))
    return any((r + d) ** 3 == n for d in (-1, 0, 1))


def cmd_bs(ctx):
    a = ctx.args
    m = _measure(ctx, a.measure)
    mask = parse_mask(a.mask, m)
    rep = borichev_sodin_test(m, mask, _num_list(a.M))
    sums = rep.series.partial_sums
    ctx.csv("bs_series.csv", ["N", "partial_sum"],
            [[k + 1, fmt(s, digits=20)] for k, s in enumerate(sums)])
    ctx.json("bs.json", {"evidence": rep.evidence, "series_trend": rep.series.trend,
                         "hamburger_verdict": rep.hamburger.verdict, "mask_size": len(mask),
                         "exact": rep.exact})
    ctx.flag(rep.evidence)
    print(f"series {rep.series.trend}; divisor {rep.hamburger.verdict}; {rep.evidence}")


def _hamiltonian(ctx):
    a = ctx.args
    if a.hamiltonian:
        ctx.hash_input(a.hamiltonian)
        return cansys.load_hamiltonian(a.hamiltonian)
    if a.geometric:
        return cansys.geometric(a.geometric)
    if a.two_bursts:
        return cansys.two_bursts(a.two_bursts)
    if a.random:
        return cansys.random_hamiltonian(a.random, ctx.args.seed)
    raise InvalidInput("give --hamiltonian FILE, --geometric N, --two-bursts N or --random N")


def _poly_json(coeffs):
    return [exact_to_json(c) if isinstance(c, (Fraction, int)) else fmt(c) for c in coeffs]


def cmd_cansys(ctx):
    a = ctx.args
    h = _hamiltonian(ctx)
    if a.stage:
        lo, _, hi = a.stage.partition("..")
        stages = range(int(lo), int(hi or lo) + 1)
    else:
        stages = [len(h)]
    ctx.json("hamiltonian.json", cansys.hamiltonian_to_json(h))
    rows, stage_out = [], []
    for k in stages:
        sp = cansys.structure_pair(h, k)
        entry = {"stage": k, "A": _poly_json(sp.A), "B": _poly_json(sp.B), "exact": sp.exact}
        try:
            m = cansys.spectral_data(h, k)
            entry["points"] = len(m)
            ctx.json(f"measure_stage{k}.json", measure_to_json(m))
        except NumericalFailure as exc:
            entry["degenerate"] = str(exc)
            m = None
        if a.bridge and m is not None and len(m):
            rep = cansys.localization_bridge(h, k, a.seed, a.budget)
            entry["bridge"] = _loc_summary(rep, m)
            rows.append([k, len(m), rep.stray_count, rep.verdicts["iii"]])
            ctx.flag(rep.verdicts["iii"])
        stage_out.append(entry)
        print(f"stage {k}: deg A = {len(sp.A) - 1}, points = {entry.get('points', 0)}"
              + (f", strays = {rows[-1][2]}" if rows and rows[-1][0] == k else ""))
    ctx.json("cansys.json", {"stages": stage_out})
    if rows:
        ctx.csv("bridge.csv", ["stage", "points", "strays", "verdict_iii"], rows)


# -- parser ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=256, help="working precision in bits")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", default="cauchyloc-out", help="artifact directory")
    common.add_argument("--strict", action="store_true",
                        help="exit 4 when a verdict is inconclusive")
    common.add_argument("--svg", action="store_true", help="also write SVG figures")

    p = argparse.ArgumentParser(prog="cauchyloc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    def fn_args(sp, window=True):
        sp.add_argument("--measure", required=True)
        sp.add_argument("--coeffs", required=True, help="JSON file or random:seed=S,dist=D")
        sp.add_argument("--convention", choices=["a", "d", "r"], default=None)
        if window:
            sp.add_argument("--window", required=True, help="x0:x1,y0:y1")

    def grid_args(sp):
        sp.add_argument("--M", default="1")
        sp.add_argument("--c", default="1/4")
        sp.add_argument("--budget", type=int, default=2)
        sp.add_argument("--runs", type=int, default=1,
                        help="repeat with seeds seed..seed+runs-1 (random coefficients)")

    sp = add("examples", cmd_examples, "emit a named example measure")
    sp.add_argument("--kind", required=True,
                    choices=["simex", "lattice", "hamburger_cx", "squares"])
    sp.add_argument("--n", help="index range a..b")
    sp.add_argument("--weight", help="lattice weight law")
    sp.add_argument("--n-squares", type=int)
    sp.add_argument("--n-cubes", type=int)

    sp = add("validate", cmd_validate, "check a measure file")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--separation", help="C:N power-separation check")
    sp.add_argument("--decay", type=float, help="weight decay exponent M")

    fn_args(add("zeros", cmd_zeros, "certified zeros of F = A f in a window"))

    sp = add("localize", cmd_localize, "disk-grid localization statistics")
    fn_args(sp)
    grid_args(sp)

    sp = add("attraction", cmd_attraction, "attraction sets with stability checks")
    fn_args(sp)
    grid_args(sp)

    sp = add("order", cmd_order, "compare the attraction sets of two functions")
    fn_args(sp)
    grid_args(sp)
    sp.add_argument("--coeffs2", required=True)

    sp = add("density", cmd_density, "polynomial density residuals")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--K", type=int, default=8)

    sp = add("hamburger-check", cmd_hamburger, "finite-window Hamburger-class diagnostic")
    sp.add_argument("--zeros", help="JSON list of zeros")
    sp.add_argument("--product", choices=["squares", "powers2", "lattice"])
    sp.add_argument("--n-max", type=int, default=50)
    sp.add_argument("--M", default="1,2,3")

    sp = add("bs-test", cmd_bs, "divisor series test against density")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--mask", required=True, help="i,j,k | all | squares[:min] | cubes[:min]")
    sp.add_argument("--M", default="1,2,3")

    sp = add("cansys", cmd_cansys, "finite-stage canonical systems")
    sp.add_argument("--hamiltonian")
    sp.add_argument("--geometric", type=int)
    sp.add_argument("--two-bursts", type=int)
    sp.add_argument("--random", type=int)
    sp.add_argument("--stage", help="k or a..b (default: all intervals)")
    sp.add_argument("--bridge", action="store_true", help="localization statistics per stage")
    sp.add_argument("--budget", type=int, default=2)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_preprocess(argv))
    t0 = time.perf_counter()
    try:
        with mp.workprec(args.precision):
            ctx = Context(args)
            args.func(ctx)
            write_manifest(ctx.out, ctx.manifest)
            write_timing(ctx.out, time.perf_counter() - t0, args.jobs)
    except InvalidInput as exc:
        print(f"cauchyloc: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"cauchyloc: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalFailure as exc:
        print(f"cauchyloc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.strict and ctx.inconclusive:
        print("cauchyloc: inconclusive verdict under --strict", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
