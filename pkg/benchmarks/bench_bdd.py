"""Compare the compiled and pure-Python BDD kernels.

    python3 benchmarks/bench_bdd.py [--vars 18] [--formulas 40] [--repeat 3]
"""

import argparse
import random
import time

from epicheck.bdd import KERNELS, Manager
from epicheck.checker import boolean_fn, check_valid
from epicheck.formula import TOP, Announce, Conj, Disj, KnowsWhether, Neg, Prop, Scene
from epicheck.randgen import random_formula


def build_and_quantify(backend, vocab, formulas, qsets):
    m = Manager(vocab, backend=backend)
    for f, qs in zip(formulas, qsets):
        fn = boolean_fn(m, f)
        m.forall_set(qs, m.exists_set(qs[: len(qs) // 2], fn))
    return m.total_nodes


def muddy_children(n):
    # child i sees every forehead but its own; after the father's announcement and
    # n-1 rounds of silence only the all-muddy state is left and everyone knows
    vocab = tuple(range(1, n + 1))
    obs = {f"c{i}": set(vocab) - {i} for i in vocab}
    knows = [KnowsWhether(f"c{i}", Prop(i)) for i in vocab]
    silence = Conj(tuple(Neg(k) for k in knows))
    query = Conj(tuple(knows))
    for _ in range(n - 1):
        query = Announce(silence, query)
    return Scene(vocab, TOP, obs, Announce(Disj(tuple(Prop(i) for i in vocab)), query))


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vars", type=int, default=18)
    ap.add_argument("--formulas", type=int, default=40)
    ap.add_argument("--depth", type=int, default=9)
    ap.add_argument("--children", type=int, default=9, help="at least 2")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    vocab = list(range(1, args.vars + 1))
    formulas = [random_formula(rng, vocab, depth=args.depth) for _ in range(args.formulas)]
    qsets = [rng.sample(vocab, rng.randint(1, args.vars // 2)) for _ in formulas]
    scene = muddy_children(args.children)

    rows = []
    for be in sorted(KERNELS):
        t_apply, nodes = best_of(args.repeat, build_and_quantify, be, vocab, formulas, qsets)
        t_check, res = best_of(args.repeat, check_valid, scene, be)
        rows.append((be, t_apply, nodes, t_check, res.verdict))

    print(f"{'kernel':<8} {'apply+quant (s)':>16} {'nodes':>9} {'muddy-' + str(args.children) + ' (s)':>14} verdict")
    for be, ta, nodes, tc, v in rows:
        print(f"{be:<8} {ta:>16.4f} {nodes:>9} {tc:>14.4f} {v}")
    if len(rows) == 2:
        (_, ta_c, _, tc_c, _), (_, ta_p, _, tc_p, _) = rows
        print(f"speedup  {ta_p / ta_c:>15.1f}x {'':>9} {tc_p / tc_c:>13.1f}x")
    else:
        print("compiled kernel not built; only the Python kernel was timed")


if __name__ == "__main__":
    main()
