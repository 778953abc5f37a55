"""Time the numba and numpy kernel backends side by side.

    python benchmarks/bench_kernels.py [--features 50 200 800] [--samples 500] [--repeat 5]

Each row reports the best of ``--repeat`` runs after one warm-up call (which
also triggers numba compilation). The LU rows include LAPACK
(``numpy.linalg.solve``) as a reference point.
"""
import argparse
import time

import numpy as np

from ilfs import _kernels


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n, m, rng):
    values = rng.normal(size=(m, n))
    labels = (np.arange(m) % 2).astype(np.int64)
    mu = np.stack([values[labels == k].mean(axis=0) for k in range(2)])
    denom = np.stack([values[labels == k].var(axis=0) for k in range(2)]).sum(axis=0) + 1e-12
    pi = rng.uniform(0, 1, (m, n))
    counts = rng.integers(0, 50, (n, 6)).astype(float)
    p_z = np.array([0.5, 0.5])
    p_f_z = rng.dirichlet(np.ones(n), 2).T.copy()
    p_t_z = rng.dirichlet(np.ones(6), 2).T.copy()
    v = rng.uniform(0, 1, n)
    mat = np.eye(n) - (0.9 / float(v @ v)) * np.outer(v, v)
    rhs = np.outer(v, v)

    def run(impl):
        post = impl.e_step(p_z, p_f_z, p_t_z)

        def lu():
            lu_, perm, _ = impl.lu_factor(mat, 1e-14)
            impl.lu_solve(lu_, perm, rhs)

        return {
            "fisher_priors": lambda: impl.fisher_priors(values, labels, mu, denom, True),
            "tokenize_counts": lambda: impl.tokenize_counts(pi, 6),
            "em_iteration": lambda: impl.m_step(impl.e_step(p_z, p_f_z, p_t_z), counts),
            "log_likelihood": lambda: impl.log_likelihood(p_t_z, post[:, 0, :], counts),
            "lu_factor+solve": lu,
        }

    return run, lambda: np.linalg.solve(mat, rhs)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--features", type=int, nargs="+", default=[50, 200, 800])
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    impls = {name: _kernels.get_impl(name) for name in _kernels.BACKENDS}
    if impls["numba"] is impls["numpy"]:
        print("numba is not installed; only the numpy backend can be timed")
        impls = {"numpy": impls["numpy"]}

    rng = np.random.default_rng(args.seed)
    header = f"{'kernel':<18}{'n':>6}" + "".join(f"{k + ' [ms]':>14}" for k in impls) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for n in args.features:
        run, lapack = cases(n, args.samples, rng)
        fns = {name: run(impl) for name, impl in impls.items()}
        for kernel in fns["numpy"]:
            ms = {name: 1e3 * best_of(fns[name][kernel], args.repeat) for name in impls}
            speed = ms["numpy"] / ms["numba"] if "numba" in ms and ms["numba"] > 0 else float("nan")
            print(f"{kernel:<18}{n:>6}" + "".join(f"{ms[k]:>14.3f}" for k in impls) + f"{speed:>9.1f}x")
        print(f"{'  lapack solve':<18}{n:>6}{1e3 * best_of(lapack, args.repeat):>14.3f}")


if __name__ == "__main__":
    main()
