"""Command-line front end: ``tricert <subcommand> ...``.

Exit codes: 0 positive/accept, 1 negative/reject, 2 usage or format error,
3 internal self-verification failure. Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import gc
import statistics
import sys
import time

from .certificate import ConstructionCertificate, format_certificate, format_negative, parse_certificate
from .chains import classify, decompose
from .construction import certify
from .dfs import run_dfs
from .edge3 import (
    Edge3Certificate,
    EdgeCutWitness,
    certify_edge3,
    format_edge3,
    parse_edge3,
    verify_edge3,
    verify_edge_cut,
)
from .graph_core import (
    GraphFormatError,
    InternalCheckError,
    NegativeWitness,
    find_nonsimple,
    format_graph,
    parse_graph,
    precheck,
    verify_witness,
)
from .oracle import gen_random_3connected, plant_separation_pair, relabel
from .transforms import CertificateRejected, format_edge_ops, format_removals, to_edge_representation, to_removal_sequence
from .verifier import verify_certificate

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _NonSimple(Exception):
    def __init__(self, witness):
        self.witness = witness


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_graph(path: str):
    text = _read(path)
    try:
        return parse_graph(text)
    except GraphFormatError:
        w = find_nonsimple(text)
        if w is not None:
            raise _NonSimple(w) from None
        raise


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_root(g, root: int) -> None:
    if g.n and not 0 <= root < g.n:
        raise ValueError(f"--root must lie in 1..{g.n}")


def dump_chains(g, root: int) -> str:
    if precheck(g) is not None:
        return ""
    f = run_dfs(g, root)
    if isinstance(f, NegativeWitness):
        return ""
    d = decompose(g, f)
    if isinstance(d, NegativeWitness):
        return ""
    classify(d)
    return "".join(
        f"C{c.id} type={c.type or '-'} parent={c.parent} : {' '.join(str(v + 1) for v in c.vertices)}\n"
        for c in d.chains
    )


def time_certify(g, repeats: int = 5) -> float:
    """Median wall time of ``certify`` in seconds, with the garbage collector paused."""
    times = []
    for _ in range(repeats):
        gc.collect()
        gc.disable()
        try:
            t0 = time.perf_counter()
            certify(g, self_verify=False)
            times.append(time.perf_counter() - t0)
        finally:
            gc.enable()
    return statistics.median(times)


# --- subcommands -------------------------------------------------------------

def cmd_check(args) -> int:
    try:
        g = _load_graph(args.graph)
    except _NonSimple as ns:
        print(ns.witness)
        return EXIT_NO
    _check_root(g, args.root)
    if args.dump_chains:
        sys.stderr.write(dump_chains(g, args.root))
    res = certify(g, root=args.root)
    if isinstance(res, NegativeWitness):
        print(res)
        return EXIT_NO
    print("3-connected")
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        g = _load_graph(args.graph)
    except _NonSimple as ns:
        _emit(format_negative(ns.witness), args.out)
        return EXIT_NO
    _check_root(g, args.root)
    if args.dump_chains:
        sys.stderr.write(dump_chains(g, args.root))
    res = certify(g, root=args.root)
    if isinstance(res, NegativeWitness):
        _emit(format_negative(res), args.out)
        return EXIT_NO
    _emit(format_certificate(res), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    cert = parse_certificate(_read(args.cert))
    if isinstance(cert, NegativeWitness):
        ok = verify_witness(g, cert)
        print("accept" if ok else f"reject witness {cert}")
        return EXIT_OK if ok else EXIT_NO
    verdict = verify_certificate(g, cert)
    print(verdict)
    return EXIT_OK if verdict else EXIT_NO


def cmd_edge3(args) -> int:
    g = _load_graph(args.graph)
    if args.cert:
        cert = parse_edge3(_read(args.cert))
        if isinstance(cert, EdgeCutWitness):
            ok = verify_edge_cut(g, cert)
            print("accept" if ok else f"reject {cert}")
            return EXIT_OK if ok else EXIT_NO
        verdict = verify_edge3(g, cert)
        print(verdict)
        return EXIT_OK if verdict else EXIT_NO
    res = certify_edge3(g)
    _emit(format_edge3(res), args.out)
    if not args.out and isinstance(res, Edge3Certificate):
        sys.stderr.write("3-edge-connected\n")
    return EXIT_OK if isinstance(res, Edge3Certificate) else EXIT_NO


def cmd_transform(args) -> int:
    g = _load_graph(args.graph)
    cert = parse_certificate(_read(args.cert))
    if not isinstance(cert, ConstructionCertificate):
        sys.stderr.write("transform needs a positive certificate\n")
        return EXIT_NO
    try:
        if args.to == "removals":
            text = format_removals(to_removal_sequence(g, cert))
        else:
            text = format_edge_ops(to_edge_representation(g, cert))
    except CertificateRejected as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_NO
    _emit(text, args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    g = gen_random_3connected(args.ops, args.seed)
    comment = f"gen ops={args.ops} seed={args.seed}"
    if args.plant_pair:
        g, (u, v) = plant_separation_pair(g, args.seed, 1)
        comment += f" planted pair {u + 1} {v + 1}"
    g = relabel(g, args.seed, 2) if args.shuffle else g
    _emit(format_graph(g, comment), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = []
    out = ["n,m,micros"]
    for size in args.sizes:
        g = gen_random_3connected(max(size - 4, 0), args.seed)
        t = time_certify(g, args.repeats)
        rows.append((g.n, t))
        out.append(f"{g.n},{g.m},{round(t * 1e6)}")
        sys.stderr.write(f"n={g.n} m={g.m} {t:.3f}s\n")
    _emit("\n".join(out) + "\n", args.out)
    if args.plot:
        _plot(rows, args.plot)
    return EXIT_OK


def _plot(rows, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [n for n, _ in rows]
    ts = [t for _, t in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.loglog(ns, ts, "o-", label="certify")
    if ns:
        ax.loglog(ns, [ts[-1] * n / ns[-1] for n in ns], "--", color="grey", label="linear")
    ax.set_xlabel("n")
    ax.set_ylabel("seconds (median)")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tricert", description="Certifying 3-connectivity tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="graph file, '-' for stdin")
        return sp

    sp = graph_cmd("check", "decide 3-connectivity and print a witness if not")
    sp.add_argument("--root", type=int, default=1, help="1-based DFS root")
    sp.add_argument("--dump-chains", action="store_true", help="write the chain decomposition to stderr")
    sp.set_defaults(func=cmd_check)

    sp = graph_cmd("certify", "write a certificate")
    sp.add_argument("--out", help="output file (default stdout)")
    sp.add_argument("--root", type=int, default=1, help="1-based DFS root")
    sp.add_argument("--dump-chains", action="store_true")
    sp.set_defaults(func=cmd_certify)

    sp = graph_cmd("verify", "check a certificate against a graph")
    sp.add_argument("--cert", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = graph_cmd("edge3", "certify 3-edge-connectivity, or verify with --cert")
    sp.add_argument("--out")
    sp.add_argument("--cert")
    sp.set_defaults(func=cmd_edge3)

    sp = graph_cmd("transform", "derive removals or edge operations from a certificate")
    sp.add_argument("--cert", required=True)
    sp.add_argument("--to", choices=("removals", "edge-ops"), required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("gen", help="random 3-connected graph from K4 by k operations")
    sp.add_argument("--ops", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--plant-pair", action="store_true", help="glue a gadget on two vertices")
    sp.add_argument("--shuffle", action="store_true", help="randomly relabel vertices")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="time certify on generated graphs, CSV to stdout")
    sp.add_argument("--sizes", type=int, nargs="+", required=True, help="target vertex counts")
    sp.add_argument("--repeats", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--plot", help="also write a log-log plot to this PNG")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if hasattr(args, "root"):
        args.root -= 1
    try:
        return args.func(args)
    except InternalCheckError as exc:
        sys.stderr.write(f"internal check failed: {exc}\n")
        return EXIT_INTERNAL
    except _NonSimple as ns:
        sys.stderr.write(f"error: graph is not simple ({ns.witness})\n")
        return EXIT_USAGE
    except (GraphFormatError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
