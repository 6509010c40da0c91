"""Command-line entry point: ``densecsp <command> ...``.

Reports go to stdout (or ``-o``) as JSON; logs go to stderr.  Exit codes:
0 success, 1 failed verification or solver error, 2 invalid input,
3 budget exceeded, 64 usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import bench, io
from .bounds import PowerBound, float_at_least
from .complete import qptas_dense, solve_complete
from .core import evaluate
from .densifier import densify, solve_dense_csp
from .dks import induced_edges, reduce_dks, solve_dks
from .errors import (BudgetExceededError, DenseCSPError, InvalidAssignmentError,
                     InvalidInstanceError, KindError)
from .freegame import LevelParams, approx_free_game
from .generators import planted_clique_graph, planted_csp, random_free_game, random_graph
from .oracle import brute_force_csp, brute_force_dks
from .projection import RandomGraphConfig, generate_projection_game, solve_projection, square_game

log = logging.getLogger("densecsp")

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from err


def _emit(args, obj):
    text = io.dumps(obj)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _level(args):
    if args.gamma is not None:
        return LevelParams.from_gamma(args.gamma)
    return LevelParams(args.level or 1)


def _params(args, **extra):
    skip = {"func", "output", "timings", "log_level", "threads"}
    out = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    out.update(extra)
    return out


def _report(args, command, report, **extra):
    _emit(args, io.report_to_dict(report, command, _params(args, **extra), args.timings))
    log.info("%s: satisfied %d/%d, guarantee %s, met=%s, %.3fs", command, report.satisfied,
             report.edges, report.guarantee, report.guarantee_met, report.elapsed)
    return EXIT_OK


# ---- gen -------------------------------------------------------------------

def cmd_gen_projection(args):
    cfg = RandomGraphConfig(args.n, args.p, args.q, args.seed, planted=not args.no_planted)
    game, planted = generate_projection_game(cfg)
    _emit(args, io.instance_to_dict(game))
    if args.planted_out and planted is not None:
        io.save(io.assignment_to_dict(planted), args.planted_out)
    return EXIT_OK


def cmd_gen_planted(args):
    inst, planted = planted_csp(args.n, args.q, args.p_edge, args.p_allow, args.seed)
    _emit(args, io.instance_to_dict(inst))
    if args.planted_out:
        io.save(io.assignment_to_dict(planted), args.planted_out)
    return EXIT_OK


def cmd_gen_freegame(args):
    game, planted = random_free_game(args.half, args.q, args.p_allow, args.seed, args.planted)
    _emit(args, io.instance_to_dict(game))
    if args.planted_out and planted is not None:
        io.save(io.assignment_to_dict(planted), args.planted_out)
    return EXIT_OK


def cmd_gen_graph(args):
    if args.clique:
        graph, _ = planted_clique_graph(args.n, args.clique, args.p, args.seed)
    else:
        graph = random_graph(args.n, args.p, args.seed)
    _emit(args, io.graph_to_dict(graph))
    return EXIT_OK


# ---- solve -----------------------------------------------------------------

def cmd_solve_freegame(args):
    game = io.read_instance(args.file)
    profile = brute_force_csp(game) if args.oracle_check else None
    report = approx_free_game(game, params=_level(args), seed=args.seed,
                              max_work=args.max_work, profile=profile)
    return _report(args, "solve freegame", report)


def cmd_solve_dense(args):
    inst = io.read_instance(args.file)
    opt = brute_force_csp(inst).opt_satisfied if args.oracle_check else None
    p = _level(args)
    report = solve_dense_csp(inst, level=p.i, seed=args.seed, opt_satisfied=opt,
                             max_work=args.max_work)
    return _report(args, "solve dense", report)


def cmd_solve_complete(args):
    report = solve_complete(io.read_instance(args.file), level=args.level or 1, seed=args.seed)
    return _report(args, "solve complete", report)


def cmd_solve_qptas(args):
    report = qptas_dense(io.read_instance(args.file), args.epsilon, seed=args.seed)
    return _report(args, "solve qptas", report)


def cmd_solve_projection(args):
    game = io.read_instance(args.file)
    report = solve_projection(game, level=_level(args).i, p=args.p, seed=args.seed,
                              max_work=args.max_work)
    return _report(args, "solve projection", report)


def cmd_solve_dks(args):
    graph = io.read_graph(args.file)
    _, report = solve_dks(graph, args.k, level=_level(args).i, trials=args.trials,
                          seed=args.seed, max_work=args.max_work)
    return _report(args, "solve dks", report)


# ---- reduce ----------------------------------------------------------------

def cmd_reduce_densify(args):
    game, _ = densify(io.read_instance(args.file))
    _emit(args, io.instance_to_dict(game))
    return EXIT_OK


def cmd_reduce_square(args):
    squared, _ = square_game(io.read_instance(args.file))
    _emit(args, io.instance_to_dict(squared))
    return EXIT_OK


def cmd_reduce_dks(args):
    inst, dmap = reduce_dks(io.read_graph(args.file), args.k, seed=args.seed)
    out = io.instance_to_dict(inst)
    out["members"] = dmap.members.tolist()
    _emit(args, out)
    return EXIT_OK


# ---- oracle ----------------------------------------------------------------

def cmd_oracle_csp(args):
    inst = io.read_instance(args.file)
    prof = brute_force_csp(inst, budget=args.budget)
    _emit(args, {"format_version": io.FORMAT_VERSION, "command": "oracle csp",
                 "params": _params(args), "opt_satisfied": prof.opt_satisfied,
                 "edges": inst.m, "value": str(Fraction(prof.opt_satisfied, inst.m)),
                 "assignment": io.assignment_to_dict(prof.opt_assignment),
                 "d_opt": prof.d_opt.tolist()})
    return EXIT_OK


def cmd_oracle_dks(args):
    graph = io.read_graph(args.file)
    vertices, count = brute_force_dks(graph.n, graph.edges, args.k, budget=args.budget)
    _emit(args, {"format_version": io.FORMAT_VERSION, "command": "oracle dks",
                 "params": _params(args), "vertices": vertices, "edge_count": count})
    return EXIT_OK


# ---- verify / bench --------------------------------------------------------

def verify_report(rep, instance_path=None):
    """Recompute a report's claims; returns a dict of named checks."""
    params = rep.get("params", {})
    path = instance_path or params.get("file")
    labels = io.assignment_from_dict(rep["assignment"])
    checks = {}
    if rep["command"] == "solve dks":
        graph = io.read_graph(path)
        vertices = rep["extra"]["vertices"]
        checks["edge_count"] = induced_edges(graph, vertices) == rep["satisfied"]
        checks["size"] = len(set(vertices)) == params["k"]
    else:
        inst = io.read_instance(path)
        sat = evaluate(inst, labels)
        checks["satisfied"] = sat == rep["satisfied"]
        checks["value"] = str(Fraction(sat, inst.m)) == rep["value"]
    bound = rep.get("extra", {}).get("bound")
    if isinstance(bound, dict):
        checks["guarantee"] = PowerBound.from_json(bound).holds(rep["satisfied"])
    elif rep.get("guarantee") is not None:
        checks["guarantee"] = float_at_least(rep["satisfied"], rep["guarantee"])
    return checks


def cmd_verify(args):
    checks = verify_report(io.load(args.report), args.instance)
    ok = all(checks.values())
    _emit(args, {"format_version": io.FORMAT_VERSION, "command": "verify",
                 "report": args.report, "checks": checks, "ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bench(args):
    result = bench.run_suite(args.suite, seeds=args.seeds, seed=args.seed)
    if args.format == "table":
        sys.stdout.write(bench.format_table(result))
    else:
        _emit(args, result)
    return EXIT_OK if result.get("all_ok", True) else EXIT_FAIL


# ---- parser ----------------------------------------------------------------

def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1,
                        help="parallelism hint (accepted; solvers currently run single-threaded)")
    common.add_argument("-o", "--output")
    common.add_argument("--timings", action="store_true", help="include wall time in reports")
    common.add_argument("--log-level", default="WARNING")

    level = _Parser(add_help=False)
    g = level.add_mutually_exclusive_group()
    g.add_argument("--level", type=int)
    g.add_argument("--gamma", type=_fraction)
    level.add_argument("--max-work", type=float, default=1e10)

    parser = _Parser(prog="densecsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def group(name, help_):
        p = sub.add_parser(name, help=help_)
        s = p.add_subparsers(dest="sub", parser_class=_Parser)
        s.required = True
        return s

    gen = group("gen", "generate seeded instances")
    p = gen.add_parser("projection", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--no-planted", action="store_true")
    p.add_argument("--planted-out")
    p.set_defaults(func=cmd_gen_projection)
    p = gen.add_parser("planted", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p-edge", type=float, default=1.0)
    p.add_argument("--p-allow", type=float, default=0.3)
    p.add_argument("--planted-out")
    p.set_defaults(func=cmd_gen_planted)
    p = gen.add_parser("freegame", parents=[common])
    p.add_argument("--half", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p-allow", type=float, default=0.4)
    p.add_argument("--planted", action="store_true")
    p.add_argument("--planted-out")
    p.set_defaults(func=cmd_gen_freegame)
    p = gen.add_parser("graph", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--clique", type=int)
    p.set_defaults(func=cmd_gen_graph)

    solve = group("solve", "run a solver and print a report")
    for name, func, extra in [
        ("freegame", cmd_solve_freegame, [level]),
        ("dense", cmd_solve_dense, [level]),
        ("projection", cmd_solve_projection, [level]),
        ("dks", cmd_solve_dks, [level]),
    ]:
        p = solve.add_parser(name, parents=[common] + extra)
        p.add_argument("file")
        p.set_defaults(func=func)
        if name in ("freegame", "dense"):
            p.add_argument("--oracle-check", action="store_true")
        if name == "projection":
            p.add_argument("--p", type=float, help="edge probability used to generate the graph")
        if name == "dks":
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--trials", type=int)
    p = solve.add_parser("complete", parents=[common])
    p.add_argument("file")
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_solve_complete)
    p = solve.add_parser("qptas", parents=[common])
    p.add_argument("file")
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.set_defaults(func=cmd_solve_qptas)

    red = group("reduce", "apply a reduction and print the resulting instance")
    for name, func in [("densify", cmd_reduce_densify), ("square", cmd_reduce_square)]:
        p = red.add_parser(name, parents=[common])
        p.add_argument("file")
        p.set_defaults(func=func)
    p = red.add_parser("dks", parents=[common])
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_reduce_dks)

    orc = group("oracle", "exhaustive solvers")
    p = orc.add_parser("csp", parents=[common])
    p.add_argument("file")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_oracle_csp)
    p = orc.add_parser("dks", parents=[common])
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_oracle_dks)

    p = sub.add_parser("verify", parents=[common], help="re-check a report")
    p.add_argument("report")
    p.add_argument("--instance", help="instance or graph file (default: the report's)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="run a benchmark suite")
    p.add_argument("suite", choices=sorted(bench.SUITES))
    p.add_argument("--seeds", type=int, help="instances per suite (kernels: projection size)")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as err:
        sys.stderr.write(str(err))
        return EXIT_USAGE
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidInstanceError, InvalidAssignmentError, KindError, ValueError) as err:
        log.error("%s", err)
        return EXIT_INVALID
    except BudgetExceededError as err:
        log.error("%s", err)
        return EXIT_BUDGET
    except (DenseCSPError, OSError) as err:
        log.error("%s", err)
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
