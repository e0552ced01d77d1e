"""``twistk <command> --config <path> [--out <path>] [--seed <int>]``.

Prints a JSON report.  Exit status is 0 when every check passes, 2 when a
check fails and 1 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from dataclasses import replace
from fractions import Fraction

from . import __version__
from .config import COMMANDS, ConfigError, RunConfig, format_config, parse_config

SCHEMA_VERSION = 1

EXIT_OK, EXIT_CONFIG, EXIT_CHECK = 0, 1, 2


def _check(name, ok, measured, tolerance=0) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "tolerance": tolerance, "measured": measured}


def _presentation(cfg: RunConfig):
    from .ktheory import KRingPresentation, preset

    if cfg.space.upper() == "CUSTOM":
        return KRingPresentation.build(**cfg.presentation)
    return preset(cfg.space, cfg.k)


def run_kgroups(cfg: RunConfig, rng: random.Random):
    from .ktheory import preset, twisted_k
    from .zlinalg import FgAbGroup

    res = twisted_k(_presentation(cfg))
    results = {"space": cfg.space, "k": cfg.k, "degrees": res.to_json(),
               "k0": res.k0.to_json() if res.k0 else None, "k1": res.k1.to_json() if res.k1 else None}
    checks = []
    space = cfg.space.upper()
    if space in ("S2", "T2"):
        base = preset(space, 0)
        if cfg.k:
            free = 1 if space == "S2" else 2
            want0 = FgAbGroup.from_cyclic_orders([0] * free)
            want1 = FgAbGroup.from_cyclic_orders([0] * free + [cfg.k])
        else:
            want0 = base.group(1) + base.group(0)
            want1 = base.group(0) + base.group(1)
        checks.append(_check("k0_closed_form", res.k0 == want0, str(res.k0), str(want0)))
        checks.append(_check("k1_closed_form", res.k1 == want1, str(res.k1), str(want1)))
    checks.append(_check("extension_split_certain", all(res.extension_split_certain),
                         list(res.extension_split_certain), True))
    return results, checks


def run_spectrum(cfg: RunConfig, rng: random.Random):
    from .fock import build_basis, p_sector_spectrum, spectrum

    basis = build_basis(cfg.truncation, cfg.xi_rank)
    results, checks = {"basis_size": len(basis), "spectra": []}, []
    for y in cfg.y:
        sp = spectrum(y, basis)
        integral = Fraction(y).denominator == 1
        want = cfg.xi_rank if integral else 0
        reliable = abs(y) + 1 <= cfg.charge_window
        results["spectra"].append({"y": str(y), "kernel_dimension": sp.kernel_dimension,
                                   "smallest_nonzero": sp.smallest_nonzero,
                                   "truncation_reliable_below": sp.truncation_reliable_below})
        if reliable:
            checks.append(_check(f"kernel_dimension[y={y}]", sp.kernel_dimension == want, sp.kernel_dimension, want))
        gap = min((n + float(y)) ** 2 for n in range(-50, 51) if (n + float(y)) ** 2 > 1e-12)
        checks.append(_check(f"gap[y={y}]", sp.smallest_nonzero >= gap - 1e-9, sp.smallest_nonzero, 1e-9))
        ps = p_sector_spectrum(y, basis)
        worst = max(abs(e - (q + float(y)) ** 2) / max(1.0, (q + float(y)) ** 2) for q, _, e in ps)
        checks.append(_check(f"p_sector[y={y}]", worst <= 1e-10, worst, 1e-10))
    return results, checks


def run_flow(cfg: RunConfig, rng: random.Random):
    from .fock import loop_path, spectral_flow

    flow = spectral_flow(loop_path(cfg.flow_samples, cfg.flow_turns), cfg.flow_level)
    return ({"samples": cfg.flow_samples, "level": cfg.flow_level, "turns": cfg.flow_turns, "flow": flow},
            [_check("spectral_flow", flow == cfg.flow_turns, flow, 0)])


def run_supercharge(cfg: RunConfig, rng: random.Random):
    from .fock import (build_basis, interior_operator_checks, shift_covariance_checks, spectrum,
                       square_decomposition_check)

    basis = build_basis(cfg.truncation, cfg.xi_rank)
    results, checks = {"basis_size": len(basis), "per_y": []}, []
    for c in interior_operator_checks(basis):
        checks.append(_check(c.name, c.ok, len(c.failures), 0))
    for y in cfg.y:
        sq = square_decomposition_check(y, basis)["check"]
        checks.append(_check(f"square_decomposition[y={y}]", sq.ok, len(sq.failures), 0))
        sh = shift_covariance_checks(y, basis)
        checks.append(_check(f"shift_covariance[y={y}]", sh["covariance"].ok, len(sh["covariance"].failures), 0))
        sp = spectrum(y, basis)
        results["per_y"].append({"y": str(y), "kernel_dimension": sp.kernel_dimension,
                                 "smallest_nonzero": sp.smallest_nonzero,
                                 "literal_shift_invariance_failures": len(sh["invariance"].failures),
                                 "square_decomposition": sq.to_json()})
    return results, checks


def _cover(cfg: RunConfig):
    from .cech import Cover, cover_preset

    if cfg.cover.lower() == "custom":
        return Cover.build(cfg.cover_patches, cfg.cover_nerve, dict(cfg.cover_windings))
    return cover_preset(cfg.cover, cfg.k)


def run_cocycle(cfg: RunConfig, rng: random.Random):
    from .cech import (C, H, CocycleFault, Rewriter, Sh, antisymmetry_violations, coboundary_class, dd_class_report,
                       hilbert_cocycle, is_cocycle, lifted_cocycle, projective_cochain, verify_equivalence)

    cover = _cover(cfg)
    checks = []
    try:
        hilbert_cocycle(cover)
        checks.append(_check("hilbert_cocycle", True, 0, 0))
    except CocycleFault as exc:
        checks.append(_check("hilbert_cocycle", False, str(exc), 0))
    f_sym = coboundary_class(lifted_cocycle(cover, "symmetric"))
    f_right = coboundary_class(lifted_cocycle(cover, "right"))
    f_left = coboundary_class(lifted_cocycle(cover, "left"))
    checks.append(_check("f_prime_scalar", True, len(f_sym.components), 0))
    for name, f in (("f", f_left), ("f_prime", f_sym), ("f_double_prime", f_right)):
        checks.append(_check(f"cocycle[{name}]", is_cocycle(f), 0, 0))
        bad = antisymmetry_violations(f)
        checks.append(_check(f"antisymmetry[{name}]", not bad, len(bad), 0))
    e1 = verify_equivalence(f_right, f_sym, projective_cochain(cover, "right"))
    e2 = verify_equivalence(f_left, f_sym, projective_cochain(cover, "left"))
    checks.append(_check("equivalence[f'' -> f']", e1["equal"], len(e1["failing"]), 0))
    checks.append(_check("equivalence[f -> f']", e2["equal"], len(e2["failing"]), 0))
    # confluence spot check with seeded random rule order
    rw = Rewriter({1, 2, 3})
    letters = [Sh(1), Sh(-1), H((1, 2), Fraction(1, 2), Fraction(0)), H((2, 3), Fraction(1), Fraction(-1)),
               H((3, 1), Fraction(0), Fraction(1)), C((1, 3), "h,t", 1, 1), C((2, 3), "t,h", 1, -1)]
    diverged = 0
    for _ in range(50):
        w = [rng.choice(letters) for _ in range(rng.randint(0, 12))]
        if rw.normalize(w, rng=rng) != rw.normalize(w):
            diverged += 1
    checks.append(_check("rewrite_confluence", diverged == 0, diverged, 0))
    dd = dd_class_report(cover, cfg.k)
    checks.append(_check("dd_class_consistent", dd["consistent"], dd["cech_degree"], dd["de_rham_degree3"]))
    results = {"cover": cover.to_json(), "equivalence_f_double_prime": e1["certificates"],
               "equivalence_f": e2["certificates"], "dd_class": dd}
    return results, checks


def run_character(cfg: RunConfig, rng: random.Random):
    from .fock import build_basis
    from .forms import (MarkedCycle, XiData, index_character, pairing_mod_n, periodicity_check,
                        profile_csv, quotient_character, theta, theta_limit_check)

    k = cfg.k
    ind = index_character(k)
    qc = quotient_character(cfg.xi_rank, cfg.xi_degree, k)
    results = {"index_character": ind.to_json(), "quotient_character": qc.to_json(),
               "pair": [str(qc.degree1), f"{qc.degree3_class} mod {k}" if k else str(qc.degree3_class)]}
    checks = [_check("index_character_degree1", ind.coefficient(("dphi/2pi",)) == 1,
                     str(ind.coefficient(("dphi/2pi",))), 0),
              _check("index_character_degree3", ind.coefficient(("dphi/2pi", "F_b/2pi i")) == k,
                     str(ind.coefficient(("dphi/2pi", "F_b/2pi i"))), 0)]
    if k > 0:
        shifted = quotient_character(cfg.xi_rank, cfg.xi_degree + k, k)
        checks.append(_check("quotient_invariance", shifted.coordinates == qc.coordinates,
                             shifted.label(), 0))
        pr = pairing_mod_n(MarkedCycle(), cfg.xi_degree, k)
        results["pairing"] = pr
        checks.append(_check("pairing_consistent", pr["consistent"], pr["residue"], 0))
    if cfg.t_schedule:
        basis = build_basis(cfg.truncation)
        xi = XiData(cfg.xi_rank, cfg.xi_degree)
        per = []
        for t in cfg.t_schedule:
            p = periodicity_check(t, -0.5, basis, xi, k, sign=1)
            per.append({"t": t, "max_relative_deviation": p["max_relative_deviation"]})
            checks.append(_check(f"theta_periodicity[t={t}]", p["max_relative_deviation"] <= 1e-8,
                                 p["max_relative_deviation"], 1e-8))
        results["theta_periodicity"] = per
        lim = theta_limit_check(cfg.t_schedule, basis, xi, k)
        last = lim["per_t"][-1]
        checks.append(_check("theta_profile_sup", last["sup_relative_deviation"] <= 0.02,
                             last["sup_relative_deviation"], 0.02))
        worst = max(abs(v - 1) for v in last["center_integrals"].values())
        checks.append(_check("theta_center_integrals", worst <= 1e-3, worst, 1e-3))
        ff = max(abs(v["measured"] - v["expected"]) for v in last["form_factor"].values())
        checks.append(_check("theta_form_factor", ff <= 1e-8, ff, 1e-8))
        for (t1, t2), r in zip(zip(cfg.t_schedule, cfg.t_schedule[1:]), lim["width_ratios"]):
            want = math.sqrt(t2 / t1)
            checks.append(_check(f"theta_width_ratio[{t1}->{t2}]", abs(r / want - 1) <= 0.05, r, 0.05))
        results["theta_limit"] = [{kk: v for kk, v in p.items() if kk != "grid"} for p in lim["per_t"]]
        results["theta_limit_width_ratios"] = lim["width_ratios"]
        if cfg.csv:
            traces = [theta(t, float(y), basis, xi, k) for t in cfg.t_schedule
                      for y in lim["per_t"][0]["grid"]["y"]]
            with open(cfg.csv, "w", encoding="utf-8") as fh:
                fh.write(profile_csv(traces))
            results["csv"] = cfg.csv
    return results, checks


RUNNERS = {
    "kgroups": run_kgroups,
    "spectrum": run_spectrum,
    "flow": run_flow,
    "supercharge": run_supercharge,
    "cocycle": run_cocycle,
    "character": run_character,
}


def run(cfg: RunConfig) -> tuple[dict, int]:
    """Execute ``cfg``; return the report and the exit status."""
    rng = random.Random(cfg.seed)
    names = list(RUNNERS) if cfg.command == "all" else [cfg.command]
    results, checks = {}, []
    start = time.perf_counter()
    for name in names:
        res, chk = RUNNERS[name](cfg, rng)
        results[name] = res
        checks += [dict(c, name=f"{name}.{c['name']}") if cfg.command == "all" else c for c in chk]
    report = {
        "schema_version": SCHEMA_VERSION,
        "version": __version__,
        "command": cfg.command,
        "config": cfg.to_json(),
        "seed": cfg.seed,
        "warnings": list(cfg.warnings),
        "results": results if cfg.command == "all" else results[cfg.command],
        "checks": checks,
        "elapsed_seconds": round(time.perf_counter() - start, 3),
    }
    code = EXIT_OK if all(c["status"] == "pass" for c in checks) else EXIT_CHECK
    return report, code


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "tolist"):
        return o.tolist()
    if isinstance(o, float) and not math.isfinite(o):
        return str(o)
    return str(o)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="twistk", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="run configuration file")
    ap.add_argument("--out", help="write the JSON report here instead of stdout")
    ap.add_argument("--seed", type=int, help="seed for randomized checks")
    ap.add_argument("--print-config", action="store_true", help="echo the normalized configuration and exit")
    args = ap.parse_args(argv)
    try:
        text = ""
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        cfg = parse_config(text)
    except ConfigError as exc:
        for w in exc.warnings:
            print(f"warning: {w}", file=sys.stderr)
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for w in cfg.warnings:
        print(f"warning: {w}", file=sys.stderr)
    cfg = replace(cfg, command=args.command)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.out:
        cfg = replace(cfg, out=args.out)
    if args.print_config:
        sys.stdout.write(format_config(cfg))
        return EXIT_OK
    try:
        report, code = run(cfg)
    except (ValueError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = json.dumps(report, indent=2, default=_json_default)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
