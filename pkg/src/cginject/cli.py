"""Command-line front end: ``cginject <command> ...``.

Exit codes: 0 success, 1 input or hypothesis errors, 2 only when a
mathematical falsification is detected.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import io
from .complexes import homology_dims, prop41_pipeline
from .errors import CginjectError, HypothesisViolation, MalformedInputError, TheoremFalsification
from .groups.profiles import PROFILES, load_profile
from .knots import (
    absolute_complex,
    alexander_matrix,
    cg_lemma4_run,
    parse_presentation,
    relative_complex,
    verify_rep,
)
from .groups.splitting import splitting_subgroup
from .modmaps import check_main_theorem, random_map
from .reps import induce_rep, regular_base, tautological

EXIT_OK, EXIT_ERROR, EXIT_FALSIFIED = 0, 1, 2


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc.strerror}") from None


def _emit(report, as_json, out):
    if as_json:
        out.write(io.dumps(report))
    else:
        out.write(render_table(io.jsonable(report)))


def render_table(obj, indent=0):
    lines = []
    pad = "  " * indent
    for key, val in obj.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_table(val, indent + 1).rstrip("\n"))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}: ({len(val)} entries)")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(l for l in lines if l) + "\n"


def _base_report(command, args, files):
    return {
        "command": command,
        "arguments": {k: v for k, v in sorted(vars(args).items())
                      if k not in ("func", "json", "text", "timings")},
        "inputs": {name: io.digest(path) for name, path in files if path},
    }


def _load_rep(spec, G):
    if spec is None or spec == "tautological":
        return tautological(G)
    if spec == "induced":
        cert = splitting_subgroup(G)
        base, d = regular_base(G, cert)
        return induce_rep(G, base, d, cert)
    return io.rep_from_json(io.read_json(spec), G)


# --- commands -----------------------------------------------------------------------------

def cmd_check_map(args):
    G = io.group_from_json(io.read_json(args.group))
    m = io.map_from_json(io.read_json(args.map), G)
    rep = _load_rep(args.rep, G)
    report = _base_report("check-map", args, [("map", args.map), ("group", args.group),
                                              ("rep", args.rep if args.rep not in
                                               (None, "tautological", "induced") else None)])
    try:
        v = check_main_theorem(m, rep, args.prime, method=args.method)
    except TheoremFalsification as exc:
        report["verdict"] = exc.verdict.as_dict()
        report["falsified"] = True
        return report, EXIT_FALSIFIED
    report["verdict"] = v.as_dict()
    report["falsified"] = False
    return report, EXIT_OK


_PROFILE_CACHE = {}


def _fuzz_trial(profile, seed, support, coeff_bound):
    if profile not in _PROFILE_CACHE:
        G, p = load_profile(profile)
        _PROFILE_CACHE[profile] = (G, p, tautological(G))
    G, p, rep = _PROFILE_CACHE[profile]
    rng = random.Random(seed)
    a = rng.randint(1, 2)
    b = rng.randint(a, 3)
    m = random_map(G, a, b, support=support, coeff_bound=coeff_bound, seed=seed, p=p)
    v = check_main_theorem(m, rep, p, strict=False)
    return {"seed": seed, "shape": [a, b], "hypothesis": v.hypothesis_holds,
            "conclusion": v.conclusion_holds, "consistent": v.consistent}


def trial_seeds(master, n):
    rng = random.Random(master)
    return [rng.getrandbits(32) for _ in range(n)]


def run_fuzz(profile, trials, seed, support=3, coeff_bound=3, threads=1):
    load_profile(profile)
    seeds = trial_seeds(seed, trials)
    if threads > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_fuzz_trial, [profile] * trials, seeds,
                                    [support] * trials, [coeff_bound] * trials))
    else:
        results = [_fuzz_trial(profile, s, support, coeff_bound) for s in seeds]
    return {
        "profile": profile,
        "prime": PROFILES[profile][1],
        "trials": trials,
        "hypothesis_holds": sum(r["hypothesis"] for r in results),
        "conclusion_holds": sum(r["conclusion"] for r in results),
        "falsifications": sum(not r["consistent"] for r in results),
        "results": results,
    }


def _threads():
    try:
        return max(1, int(os.environ.get("CGI_THREADS", "1")))
    except ValueError:
        return 1


def cmd_fuzz(args):
    report = _base_report("fuzz", args, [])
    summary = run_fuzz(args.profile, args.trials, args.seed, args.support, args.coeff_bound,
                       _threads())
    report["summary"] = summary
    return report, EXIT_FALSIFIED if summary["falsifications"] else EXIT_OK


def cmd_lemma4(args):
    pres = parse_presentation(_read_text(args.knot))
    images = io.assignment_from_json(io.read_json(args.assign), pres)
    report = _base_report("lemma4", args, [("knot", args.knot), ("assign", args.assign)])
    try:
        res = cg_lemma4_run(pres, images, args.prime)
    except HypothesisViolation as exc:
        report["hypothesis_failure"] = {"check": exc.check, "message": str(exc)}
        return report, EXIT_ERROR
    except TheoremFalsification as exc:
        report["result"] = exc.verdict.as_dict()
        report["falsified"] = True
        return report, EXIT_FALSIFIED
    report["result"] = res.as_dict()
    report["falsified"] = False
    return report, EXIT_OK


def _complex_and_group(args):
    if args.knot:
        pres = parse_presentation(_read_text(args.knot))
        if not args.assign:
            raise MalformedInputError("--knot needs --assign")
        images = io.assignment_from_json(io.read_json(args.assign), pres)
        G, _ = verify_rep(pres, images)
        C = absolute_complex(pres, G) if args.absolute else relative_complex(pres, G)
        return C, G
    if not (args.complex and args.group):
        raise MalformedInputError("give --complex with --group, or --knot with --assign")
    G = io.group_from_json(io.read_json(args.group))
    return io.complex_from_json(io.read_json(args.complex), G), G


def cmd_homology(args):
    C, G = _complex_and_group(args)
    report = _base_report("homology", args, [("complex", args.complex), ("group", args.group),
                                             ("knot", args.knot), ("assign", args.assign)])
    report["ranks"] = list(C.ranks)
    if args.coeff:
        if not args.coeff.startswith("fp:"):
            raise MalformedInputError("--coeff must look like fp:P")
        p = int(args.coeff[3:])
        report["coefficients"] = f"F_{p}"
        report["dims"] = homology_dims(C, ("fp", p))
        return report, EXIT_OK
    rep = _load_rep(args.rep, G)
    report["coefficients"] = f"Q(H)^{rep.k}"
    report["dims"] = homology_dims(C, rep)
    if args.pipeline:
        if args.prime is None:
            raise MalformedInputError("--pipeline needs --prime")
        try:
            report["pipeline"] = prop41_pipeline(C, rep, args.prime).as_dict()
        except HypothesisViolation as exc:
            report["hypothesis_failure"] = {"check": exc.check, "message": str(exc)}
            return report, EXIT_ERROR
        except TheoremFalsification as exc:
            report["pipeline"] = exc.verdict.as_dict()
            return report, EXIT_FALSIFIED
    return report, EXIT_OK


def cmd_parse(args):
    report = _base_report("parse", args, [("knot", args.knot), ("group", args.group)])
    if args.knot:
        pres = parse_presentation(_read_text(args.knot))
        report["presentation"] = {
            "generators": list(pres.generators),
            "relators": len(pres.relators),
            "meridian": pres.meridian,
            "components": [list(c) for c in pres.components] if pres.components else None,
            "alexander_matrix": [[str(x) for x in row] for row in alexander_matrix(pres).data],
        }
    if args.group:
        G = io.group_from_json(io.read_json(args.group))
        report["group"] = G.describe()
    if not (args.knot or args.group):
        raise MalformedInputError("parse needs --knot or --group")
    return report, EXIT_OK


# --- entry point --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for falsifications
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _Parser(prog="cginject", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--json", action="store_true", default=None, help="machine-readable output")
        g.add_argument("--text", action="store_true", help="human-readable table")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings")

    p = sub.add_parser("check-map", help="check the injectivity theorem on one map")
    p.add_argument("--map", required=True)
    p.add_argument("--group", required=True)
    p.add_argument("--rep", help="rep JSON, or 'tautological' / 'induced'")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--method", default="auto", choices=("auto", "bareiss", "naive"))
    common(p)
    p.set_defaults(func=cmd_check_map)

    p = sub.add_parser("fuzz", help="seeded random maps against the theorem")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--profile", required=True)
    p.add_argument("--support", type=int, default=3)
    p.add_argument("--coeff-bound", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("lemma4", help="finite-dimensionality of the P-cover's homology")
    p.add_argument("--knot", required=True)
    p.add_argument("--assign", required=True)
    p.add_argument("--prime", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_lemma4)

    p = sub.add_parser("homology", help="twisted homology dimensions of a complex")
    p.add_argument("--complex")
    p.add_argument("--group")
    p.add_argument("--knot")
    p.add_argument("--assign")
    p.add_argument("--absolute", action="store_true", help="use the absolute knot complex")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--rep", help="rep JSON, or 'tautological' / 'induced'")
    src.add_argument("--coeff", help="fp:P for mod-p augmentation coefficients")
    p.add_argument("--pipeline", action="store_true", help="run the contraction-lifting check")
    p.add_argument("--prime", type=int)
    common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("parse", help="validate input files")
    p.add_argument("--knot")
    p.add_argument("--group")
    common(p)
    p.set_defaults(func=cmd_parse)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    as_json = args.json if args.json is not None else not (args.text or out.isatty())
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except CginjectError as exc:
        report = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "check", None):
            report["failed_check"] = exc.check
        if isinstance(exc, TheoremFalsification):
            report["verdict"] = exc.verdict.as_dict()
            report["exit_code"] = EXIT_FALSIFIED
            _emit(report, as_json, out)
            return EXIT_FALSIFIED
        report["exit_code"] = EXIT_ERROR
        _emit(report, as_json, out)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.timings:
        report["timings"] = {"wall_seconds": round(time.perf_counter() - start, 6)}
    report["exit_code"] = code
    _emit(report, as_json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
