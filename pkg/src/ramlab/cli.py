"""Command-line front end: decompose, compositum, check, fuzz.

JSON goes to stdout (sorted keys, so identical runs are byte-identical);
diagnostics go to stderr.  Exit status: 0 when every asserted verdict
holds, 1 on verdict failure, 2 on usage errors, 3 when a degree or prime
cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .abhyankar import (Instance, RandomBounds, check_instance,
                        check_narkiewicz, composita_for, random_instance)
from .errors import CapExceeded
from .exactpoly import parse_poly
from .maximalorder import order_and_primes
from .numberfield import field_for


@dataclass
class RunConfig:
    max_closure_degree: int = 24
    max_field_degree: int = 12
    prime_bound: int = 1000
    seed: int = 0
    cases: int = 20
    output_format: str = "json"


def _env_closure_default() -> int:
    raw = os.environ.get("RAMLAB_MAX_DEGREE")
    if raw is None:
        return 24
    try:
        val = int(raw)
    except ValueError:
        raise SystemExit(f"RAMLAB_MAX_DEGREE must be an integer, got {raw!r}")
    if val <= 0:
        raise SystemExit("RAMLAB_MAX_DEGREE must be positive")
    return val


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ramlab",
        description="Exact prime decomposition in number fields and "
                    "lcm-law checks for ramification in composita.")
    ap.add_argument("--max-closure-degree", type=int,
                    default=_env_closure_default(),
                    help="largest normal-closure degree attempted (default "
                         "24; env RAMLAB_MAX_DEGREE overrides)")
    ap.add_argument("--max-field-degree", type=int, default=12)
    ap.add_argument("--prime-bound", type=int, default=1000)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="primes above p in QQ[x]/(f)")
    d.add_argument("--field", required=True,
                   help="defining polynomial, 'x^2+1' or '[1,0,1]'")
    d.add_argument("--prime", type=int, required=True)

    c = sub.add_parser("compositum", help="all composita of two fields")
    c.add_argument("--f1", required=True)
    c.add_argument("--f2", required=True)

    k = sub.add_parser("check", help="run the full per-prime checker")
    k.add_argument("--f1", required=True)
    k.add_argument("--f2", required=True)
    k.add_argument("--prime", type=int, required=True)
    k.add_argument("--compositum-index", type=int, default=None,
                   help="which compositum (default: all of them)")

    z = sub.add_parser("fuzz", help="seeded random instance campaign")
    z.add_argument("--seed", type=int, default=0)
    z.add_argument("--cases", type=int, default=20)
    return ap


def _emit(payload, fmt: str, text_renderer) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text_renderer(payload) + "\n")


def _decompose_payload(args, cfg: RunConfig):
    f = parse_poly(args.field)
    field_for(f)
    _, primes = order_and_primes(f, args.prime,
                                 degree_cap=cfg.max_closure_degree,
                                 prime_bound=cfg.prime_bound)
    return {
        "field": f.to_string(),
        "p": args.prime,
        "degree": f.degree,
        "primes": [
            {"e": q.e, "f": q.f,
             "second_gen": [str(c) for c in q.second_gen.coords],
             "uniformizer": [str(c) for c in q.uniformizer.coords]}
            for q in primes
        ],
        "sum_ef": sum(q.e * q.f for q in primes),
    }


def _decompose_text(payload):
    lines = [f"primes above {payload['p']} in QQ[x]/({payload['field']}):"]
    for i, q in enumerate(payload["primes"]):
        lines.append(f"  q{i}: e={q['e']} f={q['f']} "
                     f"second_gen={q['second_gen']}")
    lines.append(f"  sum e*f = {payload['sum_ef']} (degree {payload['degree']})")
    return "\n".join(lines)


def _compositum_payload(args):
    f1, f2 = parse_poly(args.f1), parse_poly(args.f2)
    comps = composita_for(f1, f2)
    return {
        "f1": f1.to_string(),
        "f2": f2.to_string(),
        "composita": [
            {"index": c.index, "degree": c.field.degree,
             "poly": c.field.poly.to_string(), "mix_coeff": c.mix_coeff,
             "theta1_image": [str(v) for v in c.embed1.image_of_generator.coords],
             "theta2_image": [str(v) for v in c.embed2.image_of_generator.coords]}
            for c in comps
        ],
    }


def _compositum_text(payload):
    lines = [f"composita of {payload['f1']} and {payload['f2']}:"]
    for c in payload["composita"]:
        lines.append(f"  #{c['index']}: degree {c['degree']}  {c['poly']}")
    return "\n".join(lines)


def _check_payload(args, cfg: RunConfig):
    f1, f2 = parse_poly(args.f1), parse_poly(args.f2)
    comps = composita_for(f1, f2)
    if args.compositum_index is None:
        indices = range(len(comps))
    else:
        indices = [args.compositum_index]
    reports = []
    for idx in indices:
        inst = Instance(f1, f2, args.prime, idx)
        rep = check_instance(inst, max_closure_degree=cfg.max_closure_degree,
                             max_field_degree=cfg.max_field_degree,
                             prime_bound=cfg.prime_bound)
        d = rep.to_json_dict()
        d["narkiewicz"] = check_narkiewicz(
            inst, max_closure_degree=cfg.max_closure_degree,
            prime_bound=cfg.prime_bound)
        reports.append(d)
    return {"reports": reports, "all_ok": all(r["ok"] for r in reports)}


def _check_text(payload):
    lines = []
    for r in payload["reports"]:
        inst = r["instance"]
        lines.append(f"check f1={inst['f1']} f2={inst['f2']} p={inst['p']} "
                     f"compositum #{inst['compositum']} "
                     f"(degree {r['compositum']['degree']})")
        for pc in r["primes"]:
            lines.append(
                f"  e_q={pc['e_q']} e1={pc['e1']} e2={pc['e2']} "
                f"lcm={pc['lcm']} theorem={pc['verdict_theorem']} "
                f"eq1={pc['verdict_eq1']} corollary={pc['verdict_corollary']}")
        pw = r["pathways"]
        if pw["skipped"]:
            lines.append(f"  closure skipped: {pw['reason']}")
        else:
            lines.append(
                f"  closure degree {pw['closure_degree']}, "
                f"|inertia|={pw['inertia_order']}, "
                f"|wild|={pw['wild_order']}, "
                f"agreement={'yes' if all(pc['pathway_agreement'] for pc in r['primes']) else 'NO'}")
        lines.append(f"  narkiewicz: {r['narkiewicz']}")
        lines.append(f"  ok: {r['ok']}")
    lines.append(f"all ok: {payload['all_ok']}")
    return "\n".join(lines)


def _fuzz_payload(args, cfg: RunConfig):
    instances = []
    counts = {
        "cases": 0, "eq1_true": 0, "theorem_holds": 0,
        "theorem_not_applicable": 0, "corollary_holds": 0,
        "eq2_holds": 0, "narkiewicz_holds": 0, "pathway_agree": 0,
        "pathway_skipped": 0, "failures": 0,
    }
    failures = []
    for i in range(args.cases):
        inst = random_instance(args.seed * 1000003 + i)
        rep = check_instance(inst, max_closure_degree=cfg.max_closure_degree,
                             max_field_degree=cfg.max_field_degree,
                             prime_bound=cfg.prime_bound)
        nark = check_narkiewicz(inst, max_closure_degree=cfg.max_closure_degree,
                                prime_bound=cfg.prime_bound)
        counts["cases"] += 1
        if all(pc.verdict_eq1 for pc in rep.primes):
            counts["eq1_true"] += 1
        th = [pc.verdict_theorem for pc in rep.primes]
        if "fails" not in th and "holds" in th:
            counts["theorem_holds"] += 1
        elif "fails" not in th:
            counts["theorem_not_applicable"] += 1
        if any(pc.verdict_corollary == "holds" for pc in rep.primes):
            counts["corollary_holds"] += 1
        if any(pc.verdict_eq2 == "holds" for pc in rep.primes):
            counts["eq2_holds"] += 1
        if nark == "holds":
            counts["narkiewicz_holds"] += 1
        if rep.galois.skipped:
            counts["pathway_skipped"] += 1
        elif all(pc.pathway_agreement for pc in rep.primes):
            counts["pathway_agree"] += 1
        if not rep.ok or nark == "fails":
            counts["failures"] += 1
            failures.append(rep.to_json_dict())
        instances.append({
            "f1": inst.f1.to_string(), "f2": inst.f2.to_string(),
            "p": inst.p, "compositum": inst.compositum_index,
            "e_q": [pc.e_q for pc in rep.primes],
            "theorem": th, "ok": rep.ok, "narkiewicz": nark,
        })
    return {"seed": args.seed, "counts": counts, "instances": instances,
            "failures": failures}


def _fuzz_text(payload):
    lines = [f"fuzz seed={payload['seed']}"]
    for k, v in sorted(payload["counts"].items()):
        lines.append(f"  {k}: {v}")
    return "\n".join(lines)


def run_command(argv) -> int:
    """Run one CLI invocation; returns the exit status."""
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    cfg = RunConfig(max_closure_degree=args.max_closure_degree,
                    max_field_degree=args.max_field_degree,
                    prime_bound=args.prime_bound,
                    output_format=args.format)
    try:
        if args.command == "decompose":
            payload = _decompose_payload(args, cfg)
            _emit(payload, cfg.output_format, _decompose_text)
            return 0
        if args.command == "compositum":
            payload = _compositum_payload(args)
            _emit(payload, cfg.output_format, _compositum_text)
            return 0
        if args.command == "check":
            payload = _check_payload(args, cfg)
            _emit(payload, cfg.output_format, _check_text)
            return 0 if payload["all_ok"] else 1
        if args.command == "fuzz":
            cfg.seed, cfg.cases = args.seed, args.cases
            payload = _fuzz_payload(args, cfg)
            _emit(payload, cfg.output_format, _fuzz_text)
            return 0 if payload["counts"]["failures"] == 0 else 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def emit_report(report, fmt: str = "json") -> str:
    """Serialize a RamificationReport deterministically."""
    d = report.to_json_dict()
    if fmt == "json":
        return json.dumps(d, sort_keys=True, indent=2)
    return _check_text({"reports": [dict(d, narkiewicz="(not evaluated)")],
                        "all_ok": d["ok"]})


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
