"""Command-line front end.

Subcommands: construct, analyze, verify, decode, bounds, simulate.
Exit codes: 0 success, 1 internal error, 2 invalid input or config.
Every run prints its resolved configuration (seeds, tolerances) so results
can be reproduced from the console transcript alone.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import codes, sim, structure
from .decoder import PamConstellation, em_count_bounds, qrdm_bound
from .linalg import RankDeficient
from .structure import BlockOrthogonalProfile

_USER_ERRORS = (
    ValueError,
    KeyError,
    OSError,
    json.JSONDecodeError,
    RankDeficient,
)


def _load_code_arg(spec: str):
    """A code argument is either a shipped code name or a JSON file path."""
    if spec.endswith(".json"):
        return codes.load_code(spec)
    return codes.named_code(spec)


def _parse_profile(text: str) -> BlockOrthogonalProfile:
    parts = [int(x) for x in text.replace(",", " ").split()]
    if len(parts) != 3:
        raise ValueError("profile must be three integers, e.g. 2,4,1")
    return BlockOrthogonalProfile(*parts)


def _parse_ordering(code, text: str):
    items = [x.strip() for x in text.split(",") if x.strip()]
    if all(item.lstrip("-").isdigit() for item in items):
        return tuple(int(x) for x in items)
    return codes.ordering_from_labels(code, items)


def _pattern_grid(pattern) -> str:
    return "\n".join(" ".join("t" if x else "0" for x in row) for row in pattern)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=1))
    else:
        print(text)


def cmd_construct(args) -> int:
    if args.name in ("ci", "ciii", "civ"):
        m_name = args.m or ("a2" if args.a == 2 else None)
        if args.name == "ci":
            design = codes.cuwd_rate1_4group(args.a)
            m = codes.named_m_matrix(m_name or "bhv", design.n_t)
            code = codes.construction_i(design, m)
        elif args.name == "ciii":
            m = codes.named_m_matrix(m_name or "golden", 2)
            code = codes.construction_iii(codes.golden_diagonal_half(), m)
        else:
            design = codes.ciod(args.a)
            m = codes.named_m_matrix(m_name or "sr", design.n_t)
            code = codes.construction_iv(design, m)
    elif args.name == "cii":
        forms = {"golden": codes.golden_linear_forms}[args.design]()
        code = codes.construction_ii(forms)
    elif args.name == "cuwd":
        design = codes.cuwd_rate1_4group(args.a)
        code = codes.construction_i(design, codes.named_m_matrix(
            args.m or ("bhv" if args.a == 1 else "a2"), design.n_t))
    else:
        code = codes.named_code(args.name)
    codes.save_code(code, args.out)
    print(f"wrote {args.out}: n_t={code.n_t} t={code.t} K={code.k_real} "
          f"declared_profile={code.declared_profile}")
    return 0


def cmd_analyze(args) -> int:
    code = _load_code_arg(args.code)
    if args.ordering:
        code = codes.reorder(code, _parse_ordering(code, args.ordering))
    print(f"config: channels={args.channels} seed={args.seed} tol_rel={args.tol}")
    pattern = structure.structural_pattern(
        code, n_channels=args.channels, tol_rel=args.tol, seed=args.seed)
    report = structure.classify(pattern, tol=args.tol, seeds=(args.seed,))
    profile = report.profile.as_tuple() if report.profile else None
    text = _pattern_grid(pattern)
    if profile:
        text += f"\nprofile: {profile}"
    elif report.classification in ("multi-group", "fast-group"):
        text += f"\n{report.classification} with g = {report.group_count}"
    else:
        text += "\nno block-orthogonal structure"
    text += f"\nclassification: {report.classification}"
    payload = report.to_json()
    payload["pattern"] = [[bool(x) for x in row] for row in pattern]
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    code = _load_code_arg(args.code)
    if args.ordering:
        code = codes.reorder(code, _parse_ordering(code, args.ordering))
    print(f"config: channels={args.channels} seed={args.seed}")
    results = {}
    if args.construction_i:
        rep = structure.verify_cuwd_sum_structure(
            code, n_channels=args.channels, seed=args.seed)
        results["construction_i"] = {
            "r1_blocks_equal": float(rep.r1_blocks_equal),
            "r1_block_diagonal": float(rep.r1_block_diagonal),
            "e_structure": float(rep.e_structure),
            "e_structure_orientation": rep.e_structure_orientation,
            "r2_block_diagonal": float(rep.r2_block_diagonal),
            "pass": bool(rep.passes()),
        }
    profile = None
    if args.profile:
        profile = _parse_profile(args.profile)
    elif code.declared_profile:
        profile = BlockOrthogonalProfile(*code.declared_profile)
    if profile is not None:
        if profile.gamma_blocks == 2:
            rep = structure.verify_two_block_premises(
                code, profile.k, profile.gamma,
                n_channels=args.channels, seed=args.seed)
        else:
            rep = structure.verify_multi_block_premises(
                code, profile, n_channels=args.channels, seed=args.seed)
        results["premises"] = {
            "profile": profile.as_tuple(),
            "conditions": [
                {"name": c.name, "pass": bool(c.passed),
                 "residual": None if c.residual is None else float(c.residual)}
                for c in rep.conditions
            ],
            "pass": rep.all_pass,
        }
    if not results:
        raise ValueError("nothing to verify: give --profile or --construction-i")
    if args.format == "json":
        print(json.dumps(results, indent=1))
    else:
        for section, body in results.items():
            print(f"[{section}] pass={body['pass']}")
            for key, value in body.items():
                if key != "pass":
                    print(f"  {key}: {value}")
    return 0


def cmd_decode(args) -> int:
    code = _load_code_arg(args.code)
    cons = PamConstellation(args.m)
    profile = sim.resolve_profile(code)
    print(f"config: code={args.code} m={args.m} snr={args.snr} seed={args.seed} "
          f"profile={profile.as_tuple()}")
    trace = [] if args.trace else None
    trial = sim.run_trial(code, cons, args.snr,
                          np.random.SeedSequence(args.seed), profile,
                          trace=trace)
    if args.trace:
        with open(args.trace, "w") as f:
            for record in trace:
                f.write(json.dumps(record) + "\n")
        print(f"wrote {len(trace)} trace records to {args.trace}")
    payload = {
        "transmitted": list(trial.transmitted),
        "baseline": trial.stats_baseline.__dict__ | {
            "decoded": list(trial.stats_baseline.decoded)},
        "memoized": trial.stats_memoized.__dict__ | {
            "decoded": list(trial.stats_memoized.decoded)},
    }
    text = (f"transmitted {trial.transmitted}\n"
            f"baseline  decoded={trial.stats_baseline.decoded} "
            f"em={trial.stats_baseline.em_evaluations} "
            f"flops={trial.stats_baseline.flops}\n"
            f"memoized  decoded={trial.stats_memoized.decoded} "
            f"em={trial.stats_memoized.em_evaluations} "
            f"flops={trial.stats_memoized.flops} "
            f"cache_hits={trial.stats_memoized.cache_hits}")
    _emit(args, payload, text)
    return 0


def cmd_bounds(args) -> int:
    profile = _parse_profile(args.profile)
    b = em_count_bounds(profile, args.m)
    q = qrdm_bound(profile.k, profile.gamma, args.m)
    payload = {
        "profile": profile.as_tuple(),
        "m": args.m,
        "o_stbc": b.o_stbc,
        "o_bostbc": b.o_bostbc,
        "emrr": [b.emrr.numerator, b.emrr.denominator],
        "mem_entries": b.mem_entries,
        "qrdm_bound": [q.numerator, q.denominator],
    }
    text = (f"profile {profile.as_tuple()} m={args.m}\n"
            f"o_stbc       {b.o_stbc}\n"
            f"o_bostbc     {b.o_bostbc}\n"
            f"emrr         {b.emrr} = {float(b.emrr):.6g}\n"
            f"mem_entries  {b.mem_entries}\n"
            f"qrdm_bound   {q} = {float(q):.6g}")
    _emit(args, payload, text)
    return 0


def cmd_simulate(args) -> int:
    with open(args.campaign) as f:
        campaign = sim.SimulationCampaign.from_json(json.load(f))
    print(f"config: {json.dumps(campaign.to_json())}")
    result = sim.run_sweep(campaign)
    if args.out:
        sim.write_csv(result, args.out)
        print(f"wrote {args.out} ({len(result.rows)} rows)")
    else:
        print(sim.sweep_to_csv(result), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bostbc",
        description="Block-orthogonal STBC construction, analysis and decoding",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and write it as JSON")
    p.add_argument("name", choices=["alamouti", "golden", "golden-222", "bhv",
                                    "srinath-rajan", "cda-2x2", "cuwd", "ciod",
                                    "ci", "cii", "ciii", "civ"])
    p.add_argument("--a", type=int, default=1, help="design size exponent")
    p.add_argument("--m", help="companion matrix name (identity, bhv, golden, sr, a2)")
    p.add_argument("--design", default="golden", help="linear-form design for cii")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="print the structural R pattern and profile")
    p.add_argument("code", help="shipped code name or code JSON file")
    p.add_argument("--ordering", help="comma-separated indices or labels")
    p.add_argument("--channels", type=int, default=structure.DEFAULT_PATTERN_CHANNELS)
    p.add_argument("--seed", type=int, default=structure.DEFAULT_SEED)
    p.add_argument("--tol", type=float, default=structure.DEFAULT_TOL_REL)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the structural premise verifiers")
    p.add_argument("code")
    p.add_argument("--ordering")
    p.add_argument("--profile", help="Gamma,k,gamma to verify (default: declared)")
    p.add_argument("--construction-i", action="store_true",
                   help="also check the sum-construction R1/E/R2 structure")
    p.add_argument("--channels", type=int, default=structure.DEFAULT_PATTERN_CHANNELS)
    p.add_argument("--seed", type=int, default=structure.DEFAULT_SEED)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="run one paired decode trial")
    p.add_argument("code")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--snr", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", help="write per-node JSONL records here")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bounds", help="closed-form EM/memory/QRDM bounds")
    p.add_argument("--profile", required=True, help="Gamma,k,gamma")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", help="run a campaign JSON and emit CSV")
    p.add_argument("campaign")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
