"""Command-line interface.

Exit codes: 0 success / reachable / accept, 1 unreachable / reject,
2 unknown, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .certify import check_thick, check_thin, covered, degenerate_thinness
from .core import Configuration, Vass, execute
from .errors import VassError
from .generate import GeneratorParams, generate
from .geodim import cycle_space_basis
from .projection import find_srp, is_proper, support_projection
from .reach import (
    REACHABLE,
    UNREACHABLE,
    ReachQuery,
    bounded_reach,
    decide_geo0,
    decide_reach,
    oracle_reach,
    reduce_3vass_to_2vass,
    reduce_to_zero_reach,
)

EXIT_ERROR = 3


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return text


def _load_vass(path: str):
    return io.parse_vass(_load(path))


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="ascii")


def _resolve(G: Vass, configs: dict, name: str) -> Configuration:
    if name in configs:
        return configs[name]
    if name in G.index:
        return G.config(name)
    raise CliError(f"{name!r} is neither a configuration nor a state")


def _fmt_row(row) -> str:
    return " ".join(str(x) for x in row)


# ---------------------------------------------------------------------------
# commands


def cmd_gdim(args) -> int:
    G, _ = _load_vass(args.file)
    print(cycle_space_basis(G).rank)
    return 0


def cmd_basis(args) -> int:
    G, _ = _load_vass(args.file)
    for row in cycle_space_basis(G).basis:
        print(_fmt_row(row))
    return 0


def cmd_classify(args) -> int:
    G, _ = _load_vass(args.file)
    P = cycle_space_basis(G)
    if P.rank > 2:
        raise CliError(f"classify needs geometric dimension at most 2, got {P.rank}")
    if is_proper(G, P):
        w = find_srp(P)
        if w is None:  # a proper plane always has a sign-reflecting pair
            raise CliError("no sign-reflecting index pair found")
        print(f"proper i1={w.i1 + 1} i2={w.i2 + 1}")
        print("u1 " + _fmt_row(w.canonical_h))
        print("u2 " + _fmt_row(w.canonical_v))
        return 0
    res = degenerate_thinness(G, P)
    print(f"degenerate case={res.case}")
    sys.stdout.write(io.serialize_thin(res.certificate))
    return 0


def cmd_project_support(args) -> int:
    G, _ = _load_vass(args.file)
    sp = support_projection(G, prune=not args.full)
    header = ["support " + _fmt_row(i + 1 for i in sp.support)]
    for name, (q, v) in sp.decode.items():
        if name != q or v:
            header.append(f"{name} = {q} " + _fmt_row(v))
    _write(args.output, io.serialize_vass(sp.vass, header="\n".join(header)))
    return 0


def cmd_reduce_zero(args) -> int:
    G, configs = _load_vass(args.file)
    q = ReachQuery(G, _resolve(G, configs, args.source), _resolve(G, configs, args.target))
    red = reduce_to_zero_reach(q)
    text = io.serialize_vass(
        red.vass, {"source": red.source, "target": red.target}, header=f"length map: {red.length_map}"
    )
    _write(args.output, text)
    return 0


def cmd_reduce_3to2(args) -> int:
    G, configs = _load_vass(args.file)
    q = ReachQuery(G, _resolve(G, configs, args.source), _resolve(G, configs, args.target))
    notes = []
    if any(q.source.counters) or any(q.target.counters):
        q = reduce_to_zero_reach(q).query
        notes.append("wrapped for 0-reachability first (length map l -> l+2)")
    red = reduce_3vass_to_2vass(q)
    header = [f"length map: {red.length_map}"] + notes + list(red.notes)
    text = io.serialize_vass(red.vass, {"source": red.source, "target": red.target}, header="\n".join(header))
    _write(args.output, text)
    return 0


def cmd_reach(args) -> int:
    G, configs = _load_vass(args.file)
    q = ReachQuery(G, _resolve(G, configs, args.source), _resolve(G, configs, args.target))
    if args.strategy == "geo0":
        ans = decide_geo0(q)
    elif args.strategy == "bounded":
        ans = bounded_reach(q, args.max_len)
    elif args.strategy == "oracle":
        ans = oracle_reach(q, args.norm_cap)
    else:
        ans = decide_reach(q, budget=args.max_len, exp_const=args.exp_const)
    print(ans.verdict)
    print(f"# {ans.bound_used}")
    if ans.verdict == REACHABLE:
        sys.stdout.write(io.serialize_run(ans.witness))
        return 0
    return 1 if ans.verdict == UNREACHABLE else 2


def cmd_check_cert(args) -> int:
    G, _ = _load_vass(args.file)
    run = io.parse_run(_load(args.run), G)
    if args.kind == "thin":
        cert = io.parse_thin(_load(args.cert))
        if check_thin(run, cert):
            print("accept")
            return 0
        bad = [b for b in cert.beams if not b.is_a_beam(cert.A)]
        if bad:
            print(f"reject beams: beam {bad[0].direction} width {bad[0].width} is not an A-beam")
            return 1
        seq = execute(G, run.start, run.word)
        if seq is None:
            print("reject run: word is not a run from the start configuration")
            return 1
        k = next(k for k, c in enumerate(seq) if not covered(c.counters, cert.beams))
        print(f"reject beams: configuration {k} {seq[k]} lies in no beam")
        return 1
    cert = io.parse_thick(_load(args.cert))
    res = check_thick(run, cert)
    if res:
        print("accept")
        return 0
    print(f"reject {res.clause}: {res.detail}")
    return 1


def cmd_gen(args) -> int:
    params = GeneratorParams(args.dim, args.states, args.trans, args.norm, args.seed, args.gdim)
    G = generate(params)
    header = f"gen --dim {args.dim} --states {args.states} --trans {args.trans} --norm {args.norm} --seed {args.seed}"
    if args.gdim is not None:
        header += f" --gdim {args.gdim}"
    _write(args.output, io.serialize_vass(G, header=header))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vassgeo", description="Cycle-space geometry and reachability for VASS.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gdim", help="print the geometric dimension")
    s.add_argument("file")
    s.set_defaults(func=cmd_gdim)

    s = sub.add_parser("basis", help="print the canonical basis of the cycle space")
    s.add_argument("file")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("classify", help="proper (with projection) or degenerate (with beams)")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("project-support", help="write the support projection")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--full", action="store_true", help="emit every (state, vector) pair, not just reachable ones")
    s.set_defaults(func=cmd_project_support)

    for name, func, hlp in (
        ("reduce-zero", cmd_reduce_zero, "reduce to reachability between zero vectors"),
        ("reduce-3to2", cmd_reduce_3to2, "reduce a 3-VASS of geometric dimension <= 2 to a 2-VASS"),
    ):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("file")
        s.add_argument("--from", dest="source", required=True)
        s.add_argument("--to", dest="target", required=True)
        s.add_argument("-o", "--output", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("reach", help="decide reachability")
    s.add_argument("file")
    s.add_argument("--from", dest="source", required=True)
    s.add_argument("--to", dest="target", required=True)
    s.add_argument("--strategy", choices=["auto", "geo0", "bounded", "oracle"], default="auto")
    s.add_argument("--max-len", type=int, default=64, help="length budget (auto, bounded)")
    s.add_argument("--norm-cap", type=int, default=32, help="counter cap (oracle)")
    s.add_argument(
        "--exp-const",
        type=int,
        default=1,
        help="constant c in the length bound chi^(c*s*d^4); the default 1 truncates the true bound",
    )
    s.set_defaults(func=cmd_reach)

    s = sub.add_parser("check-cert", help="check a thin or thick certificate")
    s.add_argument("file")
    s.add_argument("--run", required=True)
    s.add_argument("--cert", required=True)
    s.add_argument("--kind", choices=["thin", "thick"], required=True)
    s.set_defaults(func=cmd_check_cert)

    s = sub.add_parser("gen", help="write a seeded random instance")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--states", type=int, required=True)
    s.add_argument("--trans", type=int, required=True)
    s.add_argument("--norm", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--gdim", type=int)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (VassError, CliError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
