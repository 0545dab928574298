"""Command-line interface: ``pathhom <subcommand> ...``.

Exit codes: 0 success, 1 mathematical mismatch or invalid certificate,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass

from . import circulant_fourier as cf
from .constructions import retraction_suite
from .digraph import (ConnectionSet, TorusLattice, circulant_digraph, load_source,
                      symmetrize, torus_circulant_iso)
from .pathcomplex import betti, clique_homology

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    source: str | None = None
    max_degree: int = 6
    method: str = "direct"
    q_max: int = 20
    n_range: range | None = None
    fmt: str = "table"
    workers: int = 1

    def __post_init__(self):
        if self.max_degree < 0:
            raise UsageError("--max-degree must be >= 0")
        if self.workers < 1:
            raise UsageError("worker count must be >= 1")


# ---------------------------------------------------------------------------
# parsing helpers

def parse_int_list(text):
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty integer list")
    return vals


def parse_range(text):
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def worker_count(flag_value):
    env = os.environ.get("PATHHOM_WORKERS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"PATHHOM_WORKERS must be an integer, got {env!r}")
    return flag_value


@contextmanager
def pool(workers):
    if workers <= 1:
        yield None
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            yield ex


def _load(source):
    try:
        return load_source(source)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc))


def _circulant_source(source):
    _, c = _load(source)
    if c is None:
        raise UsageError("this command needs a circulant source circ:n=<int>;S=<ints>")
    return c


# ---------------------------------------------------------------------------
# rendering

def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt_seq(xs):
    return "(" + ",".join(str(x) for x in xs) + ")"


def render_betti(table, fmt, extra=None):
    if fmt == "json":
        d = table.to_dict()
        d.update(extra or {})
        return json.dumps(d, indent=2)
    if fmt == "csv":
        rows = [[table.n, " ".join(map(str, table.S or [])), m, table.betti[m],
                 table.omega_dims[m], table.ranks[m]] for m in range(table.max_degree + 1)]
        return _csv(rows, ["n", "S", "degree", "betti", "omega_dim", "rank"])
    lines = [f"n={table.n}  S={table.S}  method={table.method}",
             f"betti       {_fmt_seq(table.betti)}",
             f"dim Omega   {_fmt_seq(table.omega_dims)}",
             f"rank d_m    {_fmt_seq(table.ranks)}"]
    for k, v in (extra or {}).items():
        lines.append(f"{k:<11} {v}")
    return "\n".join(lines)


def render_modes(table, fmt):
    if fmt == "json":
        return json.dumps(table.to_dict(), indent=2)
    if fmt == "csv":
        rows = [[q, v["phi"], m, x] for q, v in sorted(table.modes.items())
                for m, x in enumerate(v["dims"])]
        return _csv(rows, ["q", "phi", "degree", "dim"])
    lines = [f"n={table.n}  S={table.S}", f"{'q':>4} {'phi':>4}  block homology"]
    for q, v in sorted(table.modes.items()):
        lines.append(f"{q:>4} {v['phi']:>4}  {_fmt_seq(v['dims'])}")
    lines.append(f"total      {_fmt_seq(table.betti)}")
    return "\n".join(lines)


def render_support(rep, fmt):
    if fmt == "json":
        return json.dumps(rep.to_dict(), indent=2)
    if fmt == "csv":
        rows = [[q, int(q in rep.conductors), " ".join(map(str, rep.drops.get(q, []))),
                 " ".join(map(str, rep.homology.get(q, [])))]
                for q in range(2, rep.probed_q + 1)]
        return _csv(rows, ["q", "in_support", "rank_drop_degrees", "block_homology"])
    lines = [f"S={rep.S}  probed degrees <= {rep.probed_m} (ranks to {rep.probed_m + 1}), "
             f"conductors 2..{rep.probed_q}  [partial]",
             f"generic ranks {_fmt_seq(rep.generic_ranks[1:])}",
             f"support       {{{', '.join(map(str, rep.conductors))}}}"]
    for q in rep.conductors:
        lines.append(f"  q={q}: drops at {rep.drops.get(q, [])}, homology {rep.homology.get(q)}")
    return "\n".join(lines)


def render_scan(scan, fmt):
    if fmt == "json":
        return json.dumps(scan.to_dict(), indent=2)
    if fmt == "csv":
        rows = [[r.n, m, b, int(r.changed), int(r.consistent)]
                for r in scan.rows for m, b in enumerate(r.table.betti)]
        return _csv(rows, ["n", "degree", "betti", "changed", "consistent"])
    lines = [f"S={scan.S}  max_degree={scan.m_max}"]
    for r in scan.rows:
        flag = " changed" if r.changed else ""
        flag += "" if r.consistent else " INCONSISTENT"
        lines.append(f"n={r.n:<4} {_fmt_seq(r.table.betti)}{flag}")
    if scan.support is not None:
        lines.append(f"support (q <= {scan.support.probed_q}): {scan.support.conductors}")
    lines.append("constant" if scan.constant else "not constant")
    return "\n".join(lines)


def render_homotopy(rep, fmt):
    if fmt == "json":
        return json.dumps(rep.to_dict(), indent=2)
    if fmt == "csv":
        return _csv([[rep.n, rep.d, rep.m_max, rep.method, rep.checked, len(rep.failures),
                      int(rep.valid)]],
                    ["n", "d", "m_max", "method", "checked", "failures", "valid"])
    lines = [f"n={rep.n} d={rep.d} degrees<={rep.m_max} method={rep.method}",
             f"checked {rep.checked} chains: Pi o i = Id {'ok' if rep.sections_ok else 'FAILED'}, "
             f"homotopy identity {'ok' if rep.homotopies_ok else 'FAILED'}"]
    kinds = {}
    for k, _, _ in rep.failures:
        kinds[k] = kinds.get(k, 0) + 1
    for k, v in sorted(kinds.items()):
        lines.append(f"  {v} failures of kind {k}")
    lines.append("all certificates valid" if rep.valid else "certificates INVALID")
    return "\n".join(lines)


def render_torus(cert, fmt):
    if fmt == "json":
        return json.dumps(cert.to_dict(), indent=2)
    if fmt == "csv":
        rows = [[list(k), v] for k, v in sorted(cert.vertex_map.items())]
        return _csv([[" ".join(map(str, k)), v] for k, v in rows], ["coset", "vertex"])
    lines = [f"n={cert.n} gammas={list(cert.gammas)}",
             f"SNF invariants {_fmt_seq(cert.invariants)}, |det| = {cert.order}",
             "isomorphism valid" if cert.valid else f"INVALID: {cert.failure}"]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands; each returns (text, exit_code)

def cmd_betti(cfg: RunConfig, executor=None):
    g, c = _load(cfg.source)
    if cfg.method in ("fourier", "both") and c is None:
        raise UsageError("--method fourier needs a circulant source")
    S = list(c.S) if c else None
    if cfg.method == "direct":
        return render_betti(betti(g, cfg.max_degree, S), cfg.fmt), EXIT_OK
    four = cf.betti_via_fourier(c, cfg.max_degree, executor)
    if cfg.method == "fourier":
        return render_betti(four, cfg.fmt), EXIT_OK
    direct = betti(g, cfg.max_degree, S)
    agree = direct.same_homology(four)
    text = render_betti(four, cfg.fmt, {"agree": agree} if cfg.fmt == "json" else
                        {"direct": _fmt_seq(direct.betti), "agree": agree})
    return text, EXIT_OK if agree else EXIT_MISMATCH


def cmd_modes(cfg: RunConfig, executor=None):
    c = _circulant_source(cfg.source)
    return render_modes(cf.betti_via_fourier(c, cfg.max_degree, executor), cfg.fmt), EXIT_OK


def _no_wrap(S):
    try:
        return cf._no_wrap_set(S)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_support(cfg: RunConfig, S, executor=None):
    _no_wrap(S)
    rep = cf.cyclotomic_support(S, cfg.max_degree, cfg.q_max, executor)
    return render_support(rep, cfg.fmt), EXIT_OK


def cmd_stability(cfg: RunConfig, S, executor=None):
    _no_wrap(S)
    support = cf.cyclotomic_support(S, cfg.max_degree, cfg.q_max, executor) if cfg.q_max >= 2 else None
    try:
        scan = cf.stability_scan(S, cfg.n_range, cfg.max_degree, support, executor)
    except ValueError as exc:
        raise UsageError(str(exc))
    return render_scan(scan, cfg.fmt), EXIT_OK if scan.consistent else EXIT_MISMATCH


def cmd_homotopy(cfg: RunConfig, n, d, m, method):
    try:
        rep = retraction_suite(n, d, m, method)
    except ValueError as exc:
        raise UsageError(str(exc))
    return render_homotopy(rep, cfg.fmt), EXIT_OK if rep.valid else EXIT_MISMATCH


def cmd_torus(cfg: RunConfig, n, gammas):
    try:
        cert = torus_circulant_iso(TorusLattice(n, tuple(gammas)))
    except ValueError as exc:
        raise UsageError(str(exc))
    return render_torus(cert, cfg.fmt), EXIT_OK if cert.valid else EXIT_MISMATCH


def cmd_clique(cfg: RunConfig, symmetrize_source=False):
    g, c = _load(cfg.source)
    if symmetrize_source:
        if c is None:
            raise UsageError("--symmetrize needs a circulant source")
        c = symmetrize(c)
        g = circulant_digraph(c)
    try:
        table = clique_homology(g, cfg.max_degree)
    except ValueError as exc:
        raise UsageError(str(exc))
    table.S = list(c.S) if c else None
    return render_betti(table, cfg.fmt), EXIT_OK


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="pathhom", description="Exact GLMY path homology of digraphs, "
                                "with a Fourier fast path for circulant digraphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("table", "json", "csv"), default="table")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes (PATHHOM_WORKERS overrides)")
    common.add_argument("--max-degree", type=int, default=6)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("betti", parents=[common], help="Betti numbers of a digraph")
    b.add_argument("source", help="circ:n=<int>;S=<ints> or a digraph file")
    b.add_argument("--method", choices=("direct", "fourier", "both"), default="direct")

    m = sub.add_parser("modes", parents=[common], help="per-conductor Fourier block homology")
    m.add_argument("source")

    s = sub.add_parser("stability", parents=[common], help="Betti numbers across a range of n")
    s.add_argument("--s", dest="S", type=parse_int_list, required=True)
    s.add_argument("--n", dest="n_range", type=parse_range, required=True)
    s.add_argument("--q-max", type=int, default=20,
                   help="support bound used to explain changes (0 disables)")

    q = sub.add_parser("support", parents=[common], help="cyclotomic support scan")
    q.add_argument("--s", dest="S", type=parse_int_list, required=True)
    q.add_argument("--q-max", type=int, default=20)

    h = sub.add_parser("homotopy", parents=[common],
                       help="certify the retraction of C_n^{1..d} onto C_n^{1,2}")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--d", type=int, required=True)
    h.add_argument("--m", type=int, default=3, help="top degree checked")
    h.add_argument("--method", choices=("algebraic", "local"), default="algebraic")

    t = sub.add_parser("torus", parents=[common], help="discrete torus vs circulant graph")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--gamma", type=parse_int_list, default=[], help="comma-separated gammas")

    c = sub.add_parser("clique", parents=[common], help="clique-complex homology")
    c.add_argument("source")
    c.add_argument("--symmetrize", action="store_true",
                   help="use the circulant graph on S and -S")
    return p


def run(argv=None):
    """Parse, execute and return ``(text, exit_code)``."""
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, getattr(args, "source", None), args.max_degree,
                    getattr(args, "method", "direct"), getattr(args, "q_max", 20),
                    getattr(args, "n_range", None), args.fmt, worker_count(args.workers))
    with pool(cfg.workers) as ex:
        if args.command == "betti":
            return cmd_betti(cfg, ex)
        if args.command == "modes":
            return cmd_modes(cfg, ex)
        if args.command == "support":
            return cmd_support(cfg, args.S, ex)
        if args.command == "stability":
            return cmd_stability(cfg, args.S, ex)
        if args.command == "homotopy":
            return cmd_homotopy(cfg, args.n, args.d, args.m, args.method)
        if args.command == "torus":
            return cmd_torus(cfg, args.n, args.gamma)
        return cmd_clique(cfg, args.symmetrize)


def main(argv=None):
    try:
        text, code = run(argv)
    except UsageError as exc:
        print(f"pathhom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text.rstrip("\n"))
    return code


if __name__ == "__main__":
    sys.exit(main())
