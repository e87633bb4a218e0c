"""Command-line entry point.

Subcommands: gadget, spectral, hitdist, disj, thickness, bound, verify-all.
Commands writing an artifact also write `<out>.manifest.json` recording the
argv, seed, parameters, and output hashes; replaying the same argv
reproduces the bytes exactly (all randomness flows from --seed).

Exit codes: 0 ok, 1 verification failure, 2 usage error.
"""

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from ._backend import thread_cap
from . import gadgets, graphs, hashing, hitting, thickness


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(out_path, argv, seed, params, outputs):
    manifest = {
        "tool": "gadgetforge",
        "version": __version__,
        "argv": list(argv),
        "seed": seed,
        "params": params,
        "outputs": {str(p): _sha256(p) for p in outputs},
    }
    with open(f"{out_path}.manifest.json", "w") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _frac_str(x) -> str:
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
        d2 = den
        while d2 % 2 == 0:
            d2 //= 2
        while d2 % 5 == 0:
            d2 //= 5
        if d2 == 1:  # terminating decimal
            return str(num / den if den > 1 else num)
        return f"{num}/{den}"
    return str(x)


def _build_dist(args):
    g = graphs.build_ap(args.q)
    if args.color == "sqr":
        c = gadgets.build_sqr_coloring(args.q)
    elif args.color == "ones":
        c = gadgets.Coloring((1,) * g.m)
    elif args.color == "zeros":
        c = gadgets.Coloring((0,) * g.m)
    else:
        c = gadgets.load_coloring(args.color)
    return g, c, hitting.build_expander_distribution(
        g, c, args.b, mode=args.mode, listing=args.listing)


def _cmd_gadget(args, argv):
    g = graphs.build_ap(args.q)
    if args.color == "sqr":
        c = gadgets.build_sqr_coloring(args.q)
    elif args.color == "ones":
        c = gadgets.Coloring((1,) * g.m)
    elif args.color == "zeros":
        c = gadgets.Coloring((0,) * g.m)
    else:
        c = gadgets.load_coloring(args.color)
    gd = gadgets.build_gadget_from_colored_graph(g, c)
    outputs = []
    gadgets.save_gadget(gd, args.out)
    outputs.append(args.out)
    if args.coloring_out:
        gadgets.save_coloring(c, args.coloring_out)
        outputs.append(args.coloring_out)
    if args.graph_out:
        graphs.save_graph(g, args.graph_out)
        outputs.append(args.graph_out)
    _write_manifest(args.out, argv, None,
                    {"q": args.q, "color": args.color, "balanced": gadgets.is_balanced(c)},
                    outputs)
    print(f"wrote {args.out}: {gd.rows}x{gd.cols}, {gd.defined_count()} defined cells")
    return 0


def _cmd_spectral(args, argv):
    if args.graph:
        g = graphs.load_graph(args.graph)
    else:
        g = graphs.build_ap(args.q)
    rep = graphs.spectral_report(g, tol=args.tol)
    payload = {
        "m": g.m,
        "d": g.d,
        "gamma_hat": rep.gamma_hat,
        "multiplicity_of_d": rep.multiplicity_of_d,
        "extremes": [rep.eigenvalues[0], rep.eigenvalues[-1]],
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"m={g.m} d={g.d} gamma_hat={rep.gamma_hat:.9f} "
              f"mult(d)={rep.multiplicity_of_d}")
    return 0


def _cmd_hitdist(args, argv):
    if args.action == "bound":
        if args.gamma is not None:
            print(hitting.theorem2_h(args.gamma))
        else:
            val = hitting.simulation_bound(args.h, 1 << args.n_bits, args.eps)
            print("NONE" if val is None else _frac_str(val))
        return 0

    g, c, dist = _build_dist(args)
    if args.action in ("build", "list"):
        if dist.mode != hitting.EXACT:
            print("distribution is SAMPLER_ONLY at this size; no exact listing",
                  file=sys.stderr)
            return 1
        if args.action == "list" or not args.out:
            color = dist.color if dist.color is not None else "none"
            print(f"HITDIST color={color} support={dist.support_size()}")
            for rect, p in dist.support:
                print(f"{' '.join(map(str, rect.left))} | "
                      f"{' '.join(map(str, rect.right))} | {p.numerator}/{p.denominator}")
        else:
            hitting.save_distribution(dist, args.out)
            _write_manifest(args.out, argv, args.seed,
                            {"q": args.q, "b": args.b, "mode": args.mode}, [args.out])
            print(f"wrote {args.out}: {dist.support_size()} rectangles")
        return 0

    if args.action == "sample":
        for i in range(args.count):
            rect = hitting.sample_rectangle(dist, args.seed, stream_id=i)
            print(f"{' '.join(map(str, rect.left))} | {' '.join(map(str, rect.right))}")
        return 0

    if args.action == "sparsify":
        sparse = hitting.sparsify(dist, args.c, args.seed)
        hitting.save_distribution(sparse, args.out)
        _write_manifest(args.out, argv, args.seed,
                        {"q": args.q, "b": args.b, "c": args.c}, [args.out])
        print(f"wrote {args.out}: {sparse.support_size()} rectangles")
        return 0

    if args.action == "test":
        if args.t is not None:
            val = hitting.test_hitting_exact(dist, args.t, args.t)
            print(f"exact_min_hit t={args.t}: {val.numerator}/{val.denominator}"
                  f" = {float(val):.6f}")
            return 0
        hs = [int(x) for x in args.h_list.split(",")]
        rows = hitting.delta_curve(dist, hs, args.trials, args.strategy, args.seed)
        lines = ["h,t_left,t_right,trials,hits,delta"]
        lines += [f"{r['h']},{r['t_left']},{r['t_right']},{r['trials']},"
                  f"{r['hits']},{r['delta']:.6f}" for r in rows]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            _write_manifest(args.out, argv, args.seed,
                            {"q": args.q, "b": args.b, "strategy": args.strategy,
                             "trials": args.trials}, [args.out])
        else:
            sys.stdout.write(text)
        return 0

    raise AssertionError(args.action)


def _cmd_disj(args, argv):
    if args.action == "build0":
        dist = hitting.build_disj0_distribution(args.m, args.k)
        if args.out:
            hitting.save_distribution(dist, args.out)
            _write_manifest(args.out, argv, None, {"m": args.m, "k": args.k}, [args.out])
            print(f"wrote {args.out}: {dist.support_size()} rectangles")
        else:
            for rect, p in dist.support:
                print(f"{' '.join(map(str, rect.left))} | "
                      f"{' '.join(map(str, rect.right))} | {p.numerator}/{p.denominator}")
        return 0
    if args.action == "sample1":
        rect = hitting.sample_disj1_rectangle(args.m, args.k, args.seed)
        h, t = hitting.disj1_regime(args.m)
        print(f"A = {' '.join(map(str, rect.a_side))}")
        print(f"side_size = {rect.side_size}  regime: h={h} t={t}")
        return 0
    if args.action == "bound":
        b = hitting.disj1_failure_bound(args.m, args.k, args.h, args.t)
        print(f"miss_bound = {b.miss_bound:.9f}")
        print(f"distance_term = {b.distance_term.numerator}/{b.distance_term.denominator}")
        return 0
    raise AssertionError(args.action)


def _cmd_thickness(args, argv):
    if args.action == "verify":
        rep = thickness.verify_theorem5(args.n, args.s, args.eps)
        status = "PASS" if rep.ok else "FAIL"
        print(f"{status} n={rep.n} s={rep.s} eps={rep.eps} m={rep.m} "
              f"avg_bound={_frac_str(rep.avg_bound)} core_empty={rep.core_empty}")
        return 0 if rep.ok else 1

    if args.infile:
        x = thickness.load_gridset(args.infile)
    else:
        x = thickness.build_xn(args.n, args.m)
    if args.action == "build":
        pass
    elif args.action == "inflate":
        x = thickness.inflate(x, args.s)
    elif args.action == "peel":
        x = thickness.peel_core(x, args.threshold)
    elif args.action == "stats":
        st = thickness.degree_stats(x)
        for i in range(x.n):
            print(f"coord {i}: avg={_frac_str(st.avg_deg[i])} min={st.min_deg[i]}")
        return 0
    if args.out:
        thickness.save_gridset(x, args.out)
        _write_manifest(args.out, argv, None,
                        {"action": args.action, "n": x.n, "m": x.m}, [args.out])
        print(f"wrote {args.out}: {len(x)} elements")
    else:
        print(f"{len(x)} elements over alphabet {x.m}, arity {x.n}")
    return 0


def _cmd_bound(args, argv):
    val = hitting.corollary1_bound(1 << args.q_bits, 1 << args.n_bits)
    print("NONE" if val is None else _frac_str(val))
    return 0


def _cmd_verify_all(args, argv):
    q, seed = args.q, args.seed
    checks = []

    def check(name, fn):
        try:
            ok, detail = fn()
        except Exception as exc:  # report, don't crash the battery
            ok, detail = False, f"error: {exc}"
        checks.append({"name": name, "ok": bool(ok), "detail": str(detail)})

    g = graphs.build_ap(q)
    c = gadgets.build_sqr_coloring(q)
    gd = gadgets.build_gadget_from_colored_graph(g, c)

    check("regular", lambda: (all(len(r) == q for r in g.adjacency), f"d={q}"))
    rep = graphs.spectral_report(g)
    check("spectral_gap", lambda: (
        rep.gamma_hat <= q ** -0.5 + 1e-6 and rep.multiplicity_of_d == 1,
        f"gamma_hat={rep.gamma_hat:.6f}"))
    check("common_neighbors", lambda: (graphs.max_common_neighbors(g) == 1, "max=1"))
    check("definedness", lambda: (
        all((gd.value(u, v) != gadgets.UNDEF) == (u // q != v // q)
            for u in range(g.m) for v in range(g.m) if u != v),
        "pattern x != u"))
    check("subfunction", lambda: (gadgets.verify_subfunction(gd, q), "exhaustive"))
    check("balanced", lambda: (gadgets.is_balanced(c), f"ones={c.ones()}/{g.m}"))

    for b in (0, 1):
        dist = hitting.build_expander_distribution(g, c, b)
        if dist.mode == hitting.EXACT:
            check(f"mass_b{b}", lambda d=dist: (
                sum(p for _, p in d.support) == 1, f"support={d.support_size()}"))
            check(f"monochromatic_b{b}", lambda d=dist: (
                hitting.verify_monochromatic(d, gd), "all cells"))
        check(f"mc_b{b}", lambda d=dist: (
            0 <= hitting.test_hitting_mc(d, max(1, g.m // 4), max(1, g.m // 4),
                                         2000, rng_seed=seed).hits <= 2000, "ran"))

    fam = hashing.HashFamily(n=2, k=2)
    check("kwise_2_2", lambda: (hashing.verify_kwise(fam).ok, "exhaustive"))

    x2 = thickness.build_xn(2, 3)
    check("x2_size", lambda: (len(x2) == 2 * 3 - 1, f"|X_2|={len(x2)}"))
    check("x2_core_empty", lambda: (
        not thickness.peel_core(x2, 2).elements, "threshold 2"))

    failed = [c for c in checks if not c["ok"]]
    if args.json:
        print(json.dumps({"q": q, "seed": seed, "checks": checks,
                          "ok": not failed}, sort_keys=True))
    else:
        for c_ in checks:
            print(f"[{'PASS' if c_['ok'] else 'FAIL'}] {c_['name']}: {c_['detail']}")
        print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gadgetforge",
                                description="expander gadgets, hitting distributions, "
                                            "and desk-scale verification")
    p.add_argument("--version", action="version", version=f"gadgetforge {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pg = sub.add_parser("gadget", help="build a gadget matrix")
    pg_sub = pg.add_subparsers(dest="kind", required=True)
    pga = pg_sub.add_parser("ap", help="g(AP_q, c)")
    pga.add_argument("--q", type=int, required=True)
    pga.add_argument("--color", default="sqr",
                     help="sqr | ones | zeros | path to a coloring file")
    pga.add_argument("--out", required=True)
    pga.add_argument("--coloring-out")
    pga.add_argument("--graph-out")

    ps = sub.add_parser("spectral", help="eigenvalue report")
    ps.add_argument("--q", type=int)
    ps.add_argument("--graph", help="read a GRAPH file instead of building AP_q")
    ps.add_argument("--tol", type=float, default=1e-9)
    ps.add_argument("--json", action="store_true")

    ph = sub.add_parser("hitdist", help="expander hitting distributions")
    ph.add_argument("action",
                    choices=["build", "list", "sample", "test", "sparsify", "bound"])
    ph.add_argument("--q", type=int)
    ph.add_argument("--color", default="sqr")
    ph.add_argument("--b", type=int, default=1, choices=(0, 1))
    ph.add_argument("--mode", default=hitting.FULL_INDEP,
                    choices=[hitting.FULL_INDEP, hitting.POLY10WISE])
    ph.add_argument("--listing", default="auto", choices=["auto", "exact", "sampler"])
    ph.add_argument("--h", dest="h_list", default="1,2,3,4,5,6",
                    help="comma-separated h values for the delta curve")
    ph.add_argument("--t", type=int, help="exact tester set size")
    ph.add_argument("--trials", type=int, default=10000)
    ph.add_argument("--strategy", default=hitting.RANDOM_SETS,
                    choices=[hitting.RANDOM_SETS, hitting.NEIGHBORHOOD_AVOID,
                             hitting.FIRST_COORD_SLAB])
    ph.add_argument("--seed", type=int, default=0)
    ph.add_argument("--count", type=int, default=1, help="rectangles to sample")
    ph.add_argument("--c", type=int, default=8, help="sparsifier multiplier")
    ph.add_argument("--gamma", type=float, help="theorem2_h input (bound action)")
    ph.add_argument("--eps", help="simulation bound epsilon (bound action)")
    ph.add_argument("--n-bits", type=int, help="outer arity bits (bound action)")
    ph.add_argument("--out")

    pd = sub.add_parser("disj", help="Disjointness distributions")
    pd.add_argument("action", choices=["build0", "sample1", "bound"])
    pd.add_argument("--m", type=int, required=True)
    pd.add_argument("--k", type=int, required=True)
    pd.add_argument("--h", type=int, default=3)
    pd.add_argument("--t", type=int, default=8)
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--out")

    pt = sub.add_parser("thickness", help="grid sets and core peeling")
    pt.add_argument("action", choices=["build", "inflate", "stats", "peel", "verify"])
    pt.add_argument("--n", type=int, default=2)
    pt.add_argument("--m", type=int, default=3)
    pt.add_argument("--s", type=int, default=1)
    pt.add_argument("--eps", default="0.5")
    pt.add_argument("--threshold", type=int, default=2)
    pt.add_argument("--in", dest="infile", help="GRIDSET file input")
    pt.add_argument("--out")

    pb = sub.add_parser("bound", help="corollary-style lower bound")
    pb.add_argument("--q-bits", type=int, required=True)
    pb.add_argument("--n-bits", type=int, required=True)

    pv = sub.add_parser("verify-all", help="small-instance verification battery")
    pv.add_argument("--q", type=int, default=3)
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--json", action="store_true")

    return p


_DISPATCH = {
    "gadget": _cmd_gadget,
    "spectral": _cmd_spectral,
    "hitdist": _cmd_hitdist,
    "disj": _cmd_disj,
    "thickness": _cmd_thickness,
    "bound": _cmd_bound,
    "verify-all": _cmd_verify_all,
}


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        thread_cap()  # validate the env var early
    except RuntimeError as exc:
        print(f"gadgetforge: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    if args.command == "spectral" and not args.q and not args.graph:
        parser.error("spectral needs --q or --graph")
    if args.command == "hitdist" and args.action != "bound" and args.q is None:
        parser.error("hitdist needs --q")
    if args.command == "hitdist" and args.action == "bound":
        if args.gamma is None and (args.eps is None or args.h_list is None):
            parser.error("hitdist bound needs --gamma, or --h/--eps/--n-bits")
        if args.gamma is None:
            args.h = int(args.h_list)
    if args.command == "hitdist" and args.action == "sparsify" and not args.out:
        parser.error("sparsify needs --out")
    try:
        return _DISPATCH[args.command](args, argv)
    except (ValueError, RuntimeError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}),
              file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
