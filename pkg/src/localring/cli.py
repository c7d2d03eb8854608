"""Command-line front end: invariants, resolutions, perturbation reports,
and golden-data reproductions of the worked examples.

Exit codes: 0 success, 1 check failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .rings import GF, QQ, RingError, parse_polynomial
from . import division as dv
from . import invariants as iv
from . import resolution as rs
from . import perturb as pb
from .ideal_io import IdealFileError, load_ideal


def _write_json(path, payload):
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")


def _load(path):
    try:
        return load_ideal(path)
    except (IdealFileError, OSError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        raise SystemExit(2)


def cmd_hilbert(args):
    ideal = _load(args.file)
    hd = iv.hilbert_data(ideal.generators)
    hf = hd.hf_range(args.degree)
    print("numerator:", hd.numerator)
    print("h-polynomial:", hd.h_polynomial)
    print("HF[0..{}]: {}".format(args.degree, hf))
    payload = {
        "command": "hilbert",
        "degree": args.degree,
        "numerator": hd.numerator,
        "h_polynomial": hd.h_polynomial,
        "hf": hf,
    }
    _write_json(args.json, payload)
    return 0


def cmd_invariants(args):
    ideal = _load(args.file)
    hd = iv.hilbert_data(ideal.generators)
    d = iv.depth(ideal.generators)
    dgr = iv.depth_gr(ideal.generators)
    cm = d == hd.dimension
    rows = [
        ("dimension", hd.dimension),
        ("multiplicity", hd.multiplicity),
        ("regularity_index", hd.regularity_index),
        ("embedding_codim", hd.embedding_codim),
        ("depth", d),
        ("depth_gr", dgr),
        ("cohen_macaulay", cm),
        ("mu", len(dv.minimal_generators(ideal.generators))),
        ("artin_rees", iv.artin_rees(ideal.generators).value),
    ]
    for name, value in rows:
        print("{}: {}".format(name, value))
    _write_json(args.json, {"command": "invariants", **dict(rows)})
    return 0


def cmd_betti(args):
    ideal = _load(args.file)
    betti = rs.betti_numbers(ideal.generators, p=args.p)
    print("betti:", tuple(betti))
    _write_json(args.json, {"command": "betti", "p": args.p, "betti": betti})
    return 0


def cmd_resolve(args):
    ideal = _load(args.file)
    res = rs.minimal_free_resolution(ideal.generators, p=args.p)
    print("ranks:", tuple(res.ranks))
    maps_payload = []
    for i, cols in enumerate(res.maps, start=1):
        entries = [[str(e) for e in col.polys] for col in cols]
        maps_payload.append(entries)
        if args.show_maps:
            print("d_{} columns:".format(i))
            for col in entries:
                print("  ({})".format(", ".join(col)))
    _write_json(
        args.json, {"command": "resolve", "ranks": res.ranks, "maps": maps_payload}
    )
    return 0


def cmd_artin_rees(args):
    ideal = _load(args.file)
    payload = {"command": "artin-rees"}
    ar = iv.artin_rees(ideal.generators)
    print("artin_rees:", ar.value)
    print("witness_orders:", ar.witness_orders)
    payload["artin_rees"] = ar.value
    payload["witness_orders"] = ar.witness_orders
    if args.syzygies is not None:
        res = rs.minimal_free_resolution(ideal.generators, p=args.syzygies)
        s_list = res.syzygy_ar_numbers()[: args.syzygies + 1]
        print("syzygy_ar:", s_list)
        payload["syzygy_ar"] = s_list
    _write_json(args.json, payload)
    return 0


def cmd_bound(args):
    ideal = _load(args.file)
    bounds = pb.theorem_bounds(ideal.generators, p=args.p)
    for name, value in sorted(bounds.to_dict().items()):
        print("{}: {}".format(name, value))
    _write_json(args.json, {"command": "bound", **bounds.to_dict()})
    return 0


def cmd_perturb(args):
    ideal = _load(args.file)
    gens = ideal.generators
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    known = {"star", "hf", "mu", "betti", "elias", "minmult"}
    bad = [c for c in checks if c not in known]
    if bad:
        print("error: unknown checks {}".format(bad), file=sys.stderr)
        return 2
    if ideal.has_perturbations():
        explicit = tuple(
            p if p is not None else gens[0].ring.zero()
            for p in ideal.perturbations
        )
        strategy = "explicit"
    else:
        explicit = None
        strategy = args.strategy
    report = pb.VerificationReport(instance=args.file, seed=args.seed)
    res = rs.minimal_free_resolution(gens)
    p = res.projective_dimension()
    for trial in range(args.trials):
        spec = pb.PerturbationSpec(
            N=args.N, strategy=strategy, seed=args.seed + trial, explicit=explicit
        )
        j_gens, _ = pb.make_perturbation(gens, spec)
        for name in checks:
            if name == "star":
                report.add(pb.check_star_inclusion(gens, j_gens, args.N))
            elif name == "hf":
                cmp = pb.compare_hilbert(gens, j_gens)
                report.add(
                    pb.CheckResult(
                        name="hf",
                        relation="Hilbert functions compared",
                        expected="report",
                        observed="equal" if cmp.equal else "different",
                        passed=True,
                        details=cmp.to_dict(),
                    )
                )
            elif name == "mu":
                report.add(pb.check_mu(gens, j_gens, args.N))
            elif name == "betti":
                report.add(pb.check_betti(gens, j_gens, p, args.N))
            elif name == "elias":
                report.add(pb.verify_elias(gens, j_gens, args.N))
            elif name == "minmult":
                report.add(pb.verify_min_mult(gens, j_gens, args.N))
    for check in report.checks:
        status = {True: "pass", False: "FAIL", None: "skip"}[check.passed]
        print("[{}] {}: expected {} observed {}".format(
            status, check.name, check.expected, check.observed))
    _write_json(args.json, report.to_dict())
    return 0 if report.ok() else 1


def cmd_search_min_n(args):
    ideal = _load(args.file)
    result = pb.search_min_N(
        ideal.generators, p=args.p, max_N=args.max_n, trials=args.trials,
        seed=args.seed,
    )
    print("thm_bound: {}  remark_bound: {}".format(
        result["thm_bound"], result["remark_bound"]))
    for row in result["table"]:
        print("N = {:2d}: preserved {}".format(row["N"], row["fraction"]))
    _write_json(args.json, {"command": "search-min-n", **result})
    return 0


def cmd_filter_regular(args):
    ideal = _load(args.file)
    ok = iv.is_filter_regular_sequence(ideal.generators)
    print("filter_regular:", ok)
    _write_json(args.json, {"command": "filter-regular", "filter_regular": ok})
    return 0


# -- golden reproductions ----------------------------------------------------


def _reproduce_ncm():
    ring = QQ("x", "y", "z")
    P = lambda s: parse_polynomial(s, ring)
    I = [P("x^2"), P("y")]
    I3 = [P("x^2"), P("x*y"), P("y - z^3")]
    golden = {
        "betti_I": [1, 2, 1],
        "betti_I3": [1, 3, 3, 1],
        "ar_I": 2,
        "xz3_in_I3_star": True,
        "xz3_in_I_star": False,
        "hf_first_difference": [4, 2, 1],
    }
    xz3 = P("x*z^3")
    i_star = pb._initial_ideal(I)
    i3_star = pb._initial_ideal(I3)
    cmp = pb.compare_hilbert(I, I3)
    observed = {
        "betti_I": rs.betti_numbers(I),
        "betti_I3": rs.betti_numbers(I3),
        "ar_I": iv.artin_rees(I).value,
        "xz3_in_I3_star": pb._graded_contains(i3_star, [xz3]),
        "xz3_in_I_star": pb._graded_contains(i_star, [xz3]),
        "hf_first_difference": list(cmp.first_difference),
    }
    return golden, observed


def _reproduce_betti_jump():
    ring = GF(32003, "x", "y", "z", "w", "t1", "t2", "t3", "t4")
    P = lambda s: parse_polynomial(s, ring)
    f = [P("x^2 + z^5"), P("x*y + z^5"), P("x*z + w^5"), P("z*w")]
    t = [P("t1^3"), P("t2^3"), P("t3^3"), P("t4^3")]
    golden = {"betti_J": [1, 4, 8, 6, 1], "betti_JN": [1, 4, 6, 4, 1]}
    observed = {
        "betti_J": rs.betti_numbers(f),
        "betti_JN": rs.betti_numbers([fi - ti for fi, ti in zip(f, t)]),
    }
    return golden, observed


def _reproduce_height_drop():
    ring = QQ("x", "y")
    P = lambda s: parse_polynomial(s, ring)
    unit = P("x + y + y^2")
    f1 = unit * P("x*y + y^2 + y^3") + P("y^5 + x*y^4")
    f2 = unit * P("x*y + x^2 + x^3") + P("x^5 + x^4*y")
    golden = {"dimension": 0}
    observed = {"dimension": iv.dimension([f1, f2])}
    return golden, observed


REPRODUCTIONS = {
    "ncm": _reproduce_ncm,
    "betti-jump": _reproduce_betti_jump,
    "height-drop": _reproduce_height_drop,
}


def cmd_reproduce(args):
    golden, observed = REPRODUCTIONS[args.case]()
    ok = True
    for key in golden:
        match = golden[key] == observed[key]
        ok = ok and match
        print("{}: expected {} observed {} [{}]".format(
            key, golden[key], observed[key], "pass" if match else "FAIL"))
    _write_json(args.json, {
        "command": "reproduce",
        "case": args.case,
        "golden": golden,
        "observed": observed,
        "ok": ok,
    })
    return 0 if ok else 1


# -- entry point -------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="localring", description="Standard bases, Hilbert invariants, "
        "minimal resolutions, and perturbation experiments over local rings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", default=None, help="write a structured report")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hilbert", parents=[common])
    s.add_argument("file")
    s.add_argument("--degree", type=int, default=10)
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("invariants", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("betti", parents=[common])
    s.add_argument("file")
    s.add_argument("--p", type=int, default=None)
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("resolve", parents=[common])
    s.add_argument("file")
    s.add_argument("--p", type=int, default=None)
    s.add_argument("--show-maps", action="store_true")
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("artin-rees", parents=[common])
    s.add_argument("file")
    s.add_argument("--syzygies", type=int, default=None)
    s.set_defaults(func=cmd_artin_rees)

    s = sub.add_parser("bound", parents=[common])
    s.add_argument("file")
    s.add_argument("--p", type=int, default=None)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("perturb", parents=[common])
    s.add_argument("file")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--strategy", default="random-homogeneous",
                   choices=["monomial", "random-homogeneous", "random-inhomogeneous"])
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--check", default="star,hf,mu,betti")
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("search-min-n", parents=[common])
    s.add_argument("file")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search_min_n)

    s = sub.add_parser("filter-regular", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_filter_regular)

    s = sub.add_parser("reproduce", parents=[common])
    s.add_argument("case", choices=sorted(REPRODUCTIONS))
    s.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        raise SystemExit(2 if exc.code not in (0, None) else 0)
    try:
        return args.func(args)
    except (RingError, OSError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
