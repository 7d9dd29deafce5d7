"""``gct`` command line.

Exit codes: 0 success, 1 inconclusive search, 2 usage error, 3 internal
defect (a failed exactness or termination assertion).  Progress goes to
stderr; stdout carries only the result.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import _backend
from .hwv import (
    PermTriple,
    certificate_to_json,
    certify_in_S,
    evaluate,
    parse_cycles,
    weight_to_json,
)
from .kronecker import InexactDivision, WeightTriple, kronecker, kronecker_semigroup_points
from .obstructions import ObstructionReport, lemma61_weight, run_obstruction, search
from .partitions import format_partition, parse_partition, staircase
from .polytopes import GeneratorSet, RationalPoint, hull_membership, kron_generators
from .stabilizer import MatmulFormat, barrier_lift, matmul_invariant_dim, unit_invariant_terms
from .symgroup import character
from .tableaux import StraighteningDefect, Tableau, format_expansion, straighten, weight_space_dim
from .tensors import load_tensor, named_tensor

log = logging.getLogger("gct")

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_DEFECT = 0, 1, 2, 3


@dataclass
class RunConfig:
    threads: int = 1
    seed: int = 0
    trials: int = 1000
    output: str = "plain"

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit_json(obj) -> str:
    """Key order preserved; integers as decimal strings; rationals as ``p/q``."""
    return json.dumps(_jsonable(obj), ensure_ascii=False, indent=2)


def report_to_json(report: ObstructionReport) -> dict:
    return {
        "weight": weight_to_json(report.weight),
        "target_m": report.target_m,
        "invariant_dim": report.invariant_dim,
        "not_in_So": report.not_in_So,
        "membership": certificate_to_json(report.membership) if report.membership else None,
        "conclusion": report.conclusion,
    }


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _out(args, plain: str, obj) -> None:
    print(emit_json(obj) if args.json else plain)


# --- handlers ----------------------------------------------------------------

def cmd_kron(args) -> int:
    g = kronecker(args.lam, args.mu, args.nu)
    _out(args, str(g), {"g": g})
    return EXIT_OK


def cmd_kron_points(args) -> int:
    pts = kronecker_semigroup_points(args.format, args.max_degree)
    rows = []
    for t in pts:
        if t.degree == 0:
            continue
        rows.append({"lambda1": str(t.lambda1), "lambda2": str(t.lambda2), "lambda3": str(t.lambda3),
                     "degree": t.degree, "g": kronecker(*t.parts)})
    plain = "\n".join(f"{r['lambda1']} | {r['lambda2']} | {r['lambda3']} : {r['g']}" for r in rows)
    _out(args, plain, {"format": list(args.format), "points": rows})
    return EXIT_OK


def cmd_char(args) -> int:
    value = character(args.lam, args.rho)
    _out(args, str(value), {"chi": value})
    return EXIT_OK


def cmd_kostka(args) -> int:
    k = weight_space_dim(args.shape, args.content)
    _out(args, str(k), {"kostka": k})
    return EXIT_OK


def cmd_straighten(args) -> int:
    rows = [[int(x) for x in r.split(",") if x.strip()] for r in args.rows.split(";")]
    t = Tableau.from_rows(rows)
    if args.shape is not None and t.shape != args.shape:
        raise ValueError(f"rows have shape {format_partition(t.shape)}, expected {format_partition(args.shape)}")
    expansion = straighten(t)
    obj = {"input": str(t), "terms": [{"tableau": str(s), "coefficient": c}
                                      for s, c in sorted(expansion.items(), key=lambda kv: kv[0].rows)]}
    _out(args, format_expansion(expansion), obj)
    return EXIT_OK


def cmd_staircase(args) -> int:
    p = staircase(args.m, args.d)
    _out(args, format_partition(p), {"staircase": format_partition(p)})
    return EXIT_OK


def cmd_invdim_unit(args) -> int:
    terms = unit_invariant_terms((args.l1, args.l2, args.l3), args.m)
    total = sum(v for _, v in terms)
    plain = str(total)
    if args.terms:
        plain = "\n".join(f"{format_partition(a)}: {v}" for a, v in terms) + f"\ntotal: {total}"
    _out(args, plain, {"dim": total, "terms": [{"alpha": format_partition(a), "dim": v} for a, v in terms]})
    return EXIT_OK


def cmd_invdim_matmul(args) -> int:
    dim = matmul_invariant_dim(args.l12, args.l23, args.l31, MatmulFormat(*args.n))
    _out(args, str(dim), {"dim": dim})
    return EXIT_OK


def cmd_barrier(args) -> int:
    k, lifted = barrier_lift((args.l1, args.l2, args.l3), args.m)
    plain = f"k = {k}\n{lifted.lambda1} | {lifted.lambda2} | {lifted.lambda3}"
    _out(args, plain, {"k": k, "lifted": weight_to_json(lifted)})
    return EXIT_OK


def cmd_tensor_emit(args) -> int:
    sys.stdout.write(named_tensor(args.name).to_text())
    return EXIT_OK


def _weight_from_args(args, w) -> WeightTriple:
    fmt = tuple(max(p.length, m) for p, m in zip((args.l1, args.l2, args.l3), w.format))
    return WeightTriple.of(args.l1, args.l2, args.l3, fmt=fmt)


def cmd_hwv_eval(args) -> int:
    w = load_tensor(args.tensor)
    triple = _weight_from_args(args, w)
    d = triple.degree
    perms = PermTriple(*(parse_cycles(c, d) for c in (args.perm1, args.perm2, args.perm3)))
    value = evaluate(triple, perms, w, cache=not args.no_cache)
    _out(args, str(value), {"value": value})
    return EXIT_OK


def cmd_hwv_certify(args) -> int:
    w = load_tensor(args.tensor)
    triple = _weight_from_args(args, w)
    cert = certify_in_S(triple, w, args.trials, args.seed, random_g=args.random_g, g_bound=args.g_bound)
    if cert is None:
        print(f"no nonzero evaluation in {args.trials} trials (inconclusive)", file=sys.stderr)
        _out(args, "inconclusive", {"certificate": None})
        return EXIT_INCONCLUSIVE
    obj = certificate_to_json(cert)
    _out(args, emit_json(obj), obj)
    return EXIT_OK


def _summary(report: ObstructionReport) -> str:
    lines = [
        f"weight: {report.weight.lambda1} | {report.weight.lambda2} | {report.weight.lambda3}",
        f"unit invariant dimension at m = {report.target_m}: {report.invariant_dim}",
    ]
    if report.membership is not None:
        lines.append(f"nonzero evaluation: {report.membership.value} (perms {' '.join(report.membership.perm_triple.cycles())})")
    else:
        lines.append("membership: no certificate (inconclusive)")
    lines.append(report.conclusion or "inconclusive")
    return "\n".join(lines)


def _finish_report(args, report: ObstructionReport) -> int:
    if args.output is not None:
        Path(args.output).write_text(emit_json(report_to_json(report)) + "\n", encoding="utf-8")
    _out(args, _summary(report), report_to_json(report))
    return EXIT_OK if report.conclusive else EXIT_INCONCLUSIVE


def cmd_obstruct_lemma61(args) -> int:
    n = args.n
    w = named_tensor(args.decomp if args.decomp == "strassen" else f"matmul:{n},{n},{n}")
    if args.decomp == "strassen" and n != 2:
        raise ValueError("the strassen decomposition is for n = 2")
    report = run_obstruction(lemma61_weight(n), w, n * n + 1, args.trials, args.seed,
                             tensor_name=f"⟨{n},{n},{n}⟩")
    return _finish_report(args, report)


def cmd_obstruct_search(args) -> int:
    w = load_tensor(args.tensor)
    report = search(w, args.m, args.max_degree, args.trials, args.seed, tensor_name=args.tensor)
    if report is None:
        print("no obstruction found (inconclusive)", file=sys.stderr)
        _out(args, "inconclusive", {"conclusion": None})
        return EXIT_INCONCLUSIVE
    return _finish_report(args, report)


def cmd_polytope_member(args) -> int:
    point = RationalPoint.from_json(json.loads(Path(args.point).read_text(encoding="utf-8")))
    gens = GeneratorSet.from_json(json.loads(Path(args.gens).read_text(encoding="utf-8")))
    witness = hull_membership(point, gens)
    if witness is None:
        _out(args, "false", {"member": False, "coefficients": None})
        return EXIT_OK
    _out(args, "true", {"member": True, "coefficients": list(witness.coefficients)})
    return EXIT_OK


def cmd_polytope_kron_gens(args) -> int:
    gens = kron_generators(args.format, args.max_degree)
    text = emit_json(gens.to_json())
    if args.o:
        Path(args.o).write_text(text + "\n", encoding="utf-8")
        print(f"{len(gens.points)} generators written to {args.o}", file=sys.stderr)
    else:
        print(text)
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: GCT_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="gct", description="Representation-theoretic border rank tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kron", parents=[common], help="Kronecker coefficient")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    p.add_argument("--mu", type=_partition, required=True)
    p.add_argument("--nu", type=_partition, required=True)
    p.set_defaults(func=cmd_kron)

    p = sub.add_parser("kron-points", parents=[common], help="triples with nonzero Kronecker coefficient")
    p.add_argument("--format", type=_ints, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_kron_points)

    p = sub.add_parser("char", parents=[common], help="symmetric group character value")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    p.add_argument("--rho", type=_partition, required=True, help="cycle type")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("kostka", parents=[common], help="weight space dimension")
    p.add_argument("--shape", type=_partition, required=True)
    p.add_argument("--content", type=_ints, required=True)
    p.set_defaults(func=cmd_kostka)

    p = sub.add_parser("straighten", parents=[common], help="expand a tableau in the semistandard basis")
    p.add_argument("--shape", type=_partition, default=None)
    p.add_argument("--rows", required=True, help='rows separated by ";", e.g. "1,2;2"')
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("staircase", parents=[common], help="smallest regular partition")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("invdim", help="stabiliser invariant dimensions")
    inv = p.add_subparsers(dest="kind", required=True)
    q = inv.add_parser("unit", parents=[common])
    q.add_argument("--m", type=int, required=True)
    for name in ("--l1", "--l2", "--l3"):
        q.add_argument(name, type=_partition, required=True)
    q.add_argument("--terms", action="store_true", help="show the per-alpha summands")
    q.set_defaults(func=cmd_invdim_unit)
    q = inv.add_parser("matmul", parents=[common])
    q.add_argument("--n", type=_ints, required=True, help="n1,n2,n3")
    for name in ("--l12", "--l23", "--l31"):
        q.add_argument(name, type=_partition, required=True)
    q.set_defaults(func=cmd_invdim_matmul)

    p = sub.add_parser("barrier", parents=[common], help="lift a weight into S° of the next unit tensor")
    p.add_argument("--m", type=int, required=True)
    for name in ("--l1", "--l2", "--l3"):
        p.add_argument(name, type=_partition, required=True)
    p.set_defaults(func=cmd_barrier)

    p = sub.add_parser("tensor", help="tensor decompositions")
    ts = p.add_subparsers(dest="kind", required=True)
    q = ts.add_parser("emit", parents=[common])
    q.add_argument("--name", required=True, help="unit:m | matmul:n1,n2,n3 | strassen | naive")
    q.set_defaults(func=cmd_tensor_emit)

    p = sub.add_parser("hwv", help="highest weight vector evaluation")
    hs = p.add_subparsers(dest="kind", required=True)
    for name, func in (("eval", cmd_hwv_eval), ("certify", cmd_hwv_certify)):
        q = hs.add_parser(name, parents=[common])
        for flag in ("--l1", "--l2", "--l3"):
            q.add_argument(flag, type=_partition, required=True)
        q.add_argument("--tensor", required=True, help="decomposition file or name")
        q.set_defaults(func=func)
        if name == "eval":
            for flag in ("--perm1", "--perm2", "--perm3"):
                q.add_argument(flag, default="()", help="cycle notation, e.g. '(1 2)(3 4)'")
            q.add_argument("--no-cache", action="store_true", help="recompute determinants (reference path)")
        else:
            q.add_argument("--trials", type=int, default=1000)
            q.add_argument("--seed", type=int, default=0)
            q.add_argument("--random-g", action="store_true", help="also evaluate at seeded g w")
            q.add_argument("--g-bound", type=int, default=1)

    p = sub.add_parser("obstruct", help="border rank obstructions")
    os_ = p.add_subparsers(dest="kind", required=True)
    q = os_.add_parser("lemma61", parents=[common])
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--decomp", choices=("strassen", "naive"), default="naive")
    q.add_argument("--trials", type=int, default=10000)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("-o", "--output", default=None, help="also write the report JSON here")
    q.set_defaults(func=cmd_obstruct_lemma61)
    q = os_.add_parser("search", parents=[common])
    q.add_argument("--tensor", required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--max-degree", type=int, default=6)
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("-o", "--output", default=None)
    q.set_defaults(func=cmd_obstruct_search)

    p = sub.add_parser("polytope", help="moment polytope points")
    ps = p.add_subparsers(dest="kind", required=True)
    q = ps.add_parser("member", parents=[common])
    q.add_argument("--point", required=True)
    q.add_argument("--gens", required=True)
    q.set_defaults(func=cmd_polytope_member)
    q = ps.add_parser("kron-gens", parents=[common])
    q.add_argument("--format", type=_ints, required=True)
    q.add_argument("--max-degree", type=int, required=True)
    q.add_argument("-o", default=None)
    q.set_defaults(func=cmd_polytope_kron_gens)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        config = RunConfig(threads=args.threads if args.threads is not None else _backend.configured_threads(),
                           seed=getattr(args, "seed", 0), trials=getattr(args, "trials", 0),
                           output="json" if args.json else "plain")
        _backend.set_threads(config.threads)
        return args.func(args)
    except (InexactDivision, StraighteningDefect, AssertionError) as exc:
        print(f"gct: internal defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except (ValueError, OSError, MemoryError) as exc:
        print(f"gct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
