"""Command-line front end.

Subcommands: ``solve``, ``feasible``, ``bounds``, ``steinitz``, ``gen`` and
``oracle``. Instances are JSON objects with keys ``m``, ``n``, ``A``, ``b``,
``c`` and optional ``u``. Results put every integer in a string.

Exit codes: 0 optimal/feasible, 1 infeasible, 2 unbounded, 3 unreadable
input, 4 the chosen algorithm does not accept the instance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import dp, knapsack, oracle, proximity
from .core import (INFEASIBLE, OPTIMAL, UNBOUNDED, IPInstance, PreconditionViolated,
                   from_dict, linf_norm, validate)
from .steinitz import InvalidInput, max_prefix_norm, steinitz_reorder

EXIT = {OPTIMAL: 0, "feasible": 0, INFEASIBLE: 1, UNBOUNDED: 2}
EXIT_PARSE = 3
EXIT_PRECONDITION = 4

ALGORITHMS = ("auto", "dp", "proximity", "knapsack", "acyclic")

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator, bit-exact.

    state <- state + 0x9E3779B97F4A7C15 (mod 2**64), then
    z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31),
    every product taken mod 2**64.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """``lo + next() % (hi - lo + 1)`` (the modulo bias is accepted)."""
        return lo + self.next() % (hi - lo + 1)


def generate(m: int, n: int, delta: int, seed: int, bounded: bool = False) -> IPInstance:
    """Feasible random instance; draws happen in exactly this order.

    ``A`` row-major from ``[-delta, delta]``; a hidden point ``x0`` from
    ``[0, 3]``; ``b = A x0``; ``c`` from ``[-5, 5]``; if ``bounded``,
    ``u_j = x0_j + randint(0, 3)``.
    """
    if m < 1 or n < 1 or delta < 0:
        raise ValueError("need m >= 1, n >= 1, delta >= 0")
    rng = SplitMix64(seed)
    a = [[rng.randint(-delta, delta) for _ in range(n)] for _ in range(m)]
    x0 = [rng.randint(0, 3) for _ in range(n)]
    b = [sum(aij * xj for aij, xj in zip(row, x0)) for row in a]
    c = [rng.randint(-5, 5) for _ in range(n)]
    u = [xj + rng.randint(0, 3) for xj in x0] if bounded else None
    return validate(a, b, c, u)


def load_instance(path: str) -> IPInstance:
    with open(path, encoding="utf-8") as fh:
        return from_dict(json.load(fh))


def pick_algorithm(inst: IPInstance) -> str:
    if inst.m == 1 and all(v > 0 for v in inst.a[0]) and inst.b[0] > 0:
        return "knapsack"
    if inst.upper is not None:
        return "proximity"
    if all(v >= 0 for row in inst.a for v in row):
        return "acyclic"
    return "dp"


def run_algorithm(inst: IPInstance, algorithm: str):
    if algorithm == "auto":
        algorithm = pick_algorithm(inst)
    if algorithm == "dp":
        return algorithm, dp.solve_standard_form(inst)
    if algorithm == "acyclic":
        return algorithm, dp.solve_acyclic(inst)
    if algorithm == "proximity":
        return algorithm, proximity.solve_bounded(inst)
    if algorithm == "knapsack":
        k = knapsack.KnapsackInstance.from_instance(inst)
        if k.upper is None:
            return algorithm, knapsack.solve_unbounded_knapsack(k)
        return algorithm, knapsack.solve_bounded_knapsack(k)
    raise ValueError("unknown algorithm %r" % algorithm)


def result_json(status, algorithm, x=None, value=None, stats=None, wall_ms=0.0) -> dict:
    stats = stats or {}
    out = {"status": status}
    if x is not None:
        out["x"] = [str(v) for v in x]
    if value is not None:
        out["value"] = str(value)
    out["stats"] = {"nodes_explored": stats.get("nodes_explored", 0),
                    "arcs_relaxed": stats.get("arcs_relaxed", 0),
                    "wall_ms": round(wall_ms, 3)}
    out["algorithm"] = algorithm
    return out


def _emit(obj, stream) -> None:
    stream.write(json.dumps(obj) + "\n")


def cmd_solve(args, out) -> int:
    inst = load_instance(args.path)
    t0 = time.perf_counter()
    algorithm, res = run_algorithm(inst, args.algorithm)
    wall = (time.perf_counter() - t0) * 1000
    _emit(result_json(res.status, algorithm, res.x, res.value, res.stats, wall), out)
    return EXIT[res.status]


def cmd_feasible(args, out) -> int:
    inst = load_instance(args.path)
    t0 = time.perf_counter()
    stats = {}
    if inst.upper is None:
        algorithm = "dp"
        z = dp.feasible(inst, stats=stats)
    else:
        algorithm = "proximity"
        res = proximity.solve_bounded(validate(inst.a, inst.b, (0,) * inst.n, inst.upper))
        stats = res.stats
        z = res.x
    wall = (time.perf_counter() - t0) * 1000
    status = "feasible" if z is not None else INFEASIBLE
    _emit(result_json(status, algorithm, z, None, stats, wall), out)
    return EXIT[status]


def cmd_bounds(args, out) -> int:
    inst = load_instance(args.path)
    m, d = inst.m, inst.delta
    _emit({"l1_bound": str(proximity.l1_bound(m, d)),
           "cook_l1_bound": str(proximity.cook_l1_bound(inst.n, m, d)),
           "gap_bound": str(proximity.gap_bound(linf_norm(inst.c), m, d)),
           "node_count_bound": str(dp.node_count_bound(m, d, inst.b))}, out)
    return 0


def read_vectors(path: str) -> list:
    """Vectors from a JSON array of arrays or a CSV file; entries may be "p/q"."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        rows = json.loads(text)
        if isinstance(rows, dict):
            rows = rows["vectors"]
    except json.JSONDecodeError:
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
    return [[Fraction(str(v).strip()) for v in row] for row in rows]


def cmd_steinitz(args, out) -> int:
    vectors = read_vectors(args.path)
    order = steinitz_reorder(vectors)
    m = len(vectors[0])
    bound = m * max(linf_norm(v) for v in vectors)
    _emit({"permutation": order,
           "max_prefix_norm": str(max_prefix_norm(vectors, order)),
           "bound": str(bound)}, out)
    return 0


def cmd_gen(args, out) -> int:
    inst = generate(args.m, args.n, args.delta, args.seed, args.bounded)
    _emit(inst.to_dict(), out)
    return 0


def cmd_oracle(args, out) -> int:
    inst = load_instance(args.path)
    t0 = time.perf_counter()
    res = oracle.reference_solve(inst, cap=args.cap)
    wall = (time.perf_counter() - t0) * 1000
    _emit(result_json(res.status, "oracle", res.x, res.value, {}, wall), out)
    return EXIT[res.status]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="steinitz-ip",
                                description="Standard-form integer programming solvers.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("path")
    s.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("feasible", help="find any feasible point")
    s.add_argument("path")
    s.set_defaults(func=cmd_feasible)

    s = sub.add_parser("bounds", help="print proximity and size bounds")
    s.add_argument("path")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("steinitz", help="reorder zero-sum vectors")
    s.add_argument("path")
    s.set_defaults(func=cmd_steinitz)

    s = sub.add_parser("gen", help="generate a random feasible instance")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--delta", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--bounded", action="store_true")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("oracle", help="brute-force reference solve (small instances)")
    s.add_argument("path")
    s.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (PreconditionViolated, InvalidInput) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PRECONDITION
    except (OSError, ValueError, KeyError, TypeError) as e:
        # json.JSONDecodeError and InstanceError are ValueErrors
        print("error: %s" % e, file=sys.stderr)
        return EXIT_PARSE

if __name__ == "__main__":
    sys.exit(main())
