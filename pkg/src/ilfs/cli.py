"""Command-line entry point: ``ilfs rank | synth | verify``.

Exit codes: 0 success, 1 runtime error (one ``error:<Name>:<message>``
line on stderr), 2 invalid flags.
"""
import argparse
import sys
from dataclasses import asdict, dataclass

from . import _jsonio
from .dataset import load_csv, save_csv
from .errors import IlfsError, InvalidSpec
from .graph import save_graph_csv
from .plsa import EmConfig
from .quantizer import PHI_MODES
from .ranker import METHODS, run_pipeline
from .synth import SynthSpec, generate_split


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    label_column: str = "label"
    bins: int = 6
    phi_mode: str = "prose"
    damping: float = 0.9
    em_max_iter: int = 100
    em_tol: float = 1e-6
    smoothing: float = 0.0
    top_k: int = None
    output_path: str = None
    dump_model: str = None
    dump_graph: str = None
    zero_diagonal: bool = False
    method: str = "lu"


def _fail(exc):
    name = exc.name if isinstance(exc, IlfsError) else type(exc).__name__
    msg = str(exc).replace("\n", " ")
    print(f"error:{name}:{msg}", file=sys.stderr)
    return 1


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_rank(config):
    try:
        data = load_csv(config.input_path, config.label_column)
        em = EmConfig(max_iterations=config.em_max_iter, rel_tolerance=config.em_tol,
                      smoothing=config.smoothing)
        res = run_pipeline(data, config.bins, config.phi_mode, em, config.damping,
                           config.zero_diagonal, config.method)
        out = res.ranking.to_dict(top=config.top_k)
        _write_text(config.output_path, _jsonio.dumps(out))
        if config.dump_model:
            _write_text(config.dump_model, _jsonio.dumps(res.model.to_dict()))
        if config.dump_graph:
            save_graph_csv(res.graph, config.dump_graph)
    except (IlfsError, OSError, ValueError) as exc:
        return _fail(exc)
    model = res.model
    print(f"n={data.n_features} m={data.n_samples} K={data.n_classes} "
          f"r={res.ranking.r:.6g} rho={res.ranking.spectral_radius:.6g} "
          f"iterations={model.iterations_run} converged={str(model.converged).lower()}",
          file=sys.stderr)
    return 0


def cmd_synth(spec, output, truth, n_test=0, test_output=None):
    try:
        sd = generate_split(spec, n_test)
        save_csv(sd.train, output)
        if sd.test is not None:
            save_csv(sd.test, test_output)
        sidecar = {
            "informative": list(sd.informative),
            "spec": asdict(spec),
            "generator": "numpy.random.Generator(Philox)",
            "label_column": "label",
        }
        _write_text(truth, _jsonio.dumps(sidecar))
    except (IlfsError, OSError) as exc:
        return _fail(exc)
    return 0


def cmd_verify(trials, seed):
    from .verification import suites

    results = suites.run_all(trials=trials, seed=seed)
    status = 0
    for res in results:
        flag = "ok" if res.passed else "FAIL"
        print(f"{res.name}: trials={res.trials} max_deviation={res.max_deviation:.3e} "
              f"tol={res.tolerance:.0e} {flag}")
    failed = [res for res in results if not res.passed]
    if failed:
        first = failed[0]
        print(f"error:VerificationFailed:suite={first.name} "
              f"case={_jsonio.dumps(first.failure, indent=0).replace(chr(10), '')}",
              file=sys.stderr)
        status = 1
    return status


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _unit_open(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {v}")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {v}")
    return v


def _nonneg_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _bins(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be >= 2, got {v}")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="ilfs", description="Latent-relevancy graph feature ranking.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("rank", help="rank the features of a CSV dataset")
    r.add_argument("input", help="CSV file with a header row")
    r.add_argument("--label-column", default="label")
    r.add_argument("--bins", type=_bins, default=6, help="number of tokens (default 6)")
    r.add_argument("--phi-mode", choices=PHI_MODES, default="prose")
    r.add_argument("--damping", type=_unit_open, default=0.9, help="r * rho(A) (default 0.9)")
    r.add_argument("--em-max-iter", type=_positive_int, default=100)
    r.add_argument("--em-tol", type=_positive_float, default=1e-6)
    r.add_argument("--smoothing", type=_nonneg_float, default=0.0)
    r.add_argument("--top", type=_positive_int, default=None, help="truncate 'order' to K entries")
    r.add_argument("--output", "-o", default=None, help="ranking JSON path (default stdout)")
    r.add_argument("--dump-model", metavar="PATH", default=None)
    r.add_argument("--dump-graph", metavar="PATH", default=None)
    r.add_argument("--zero-diagonal", action="store_true", help="drop graph self-loops")
    r.add_argument("--method", choices=METHODS, default="lu",
                   help="lu (generic) or rank1 (Sherman-Morrison fast path)")

    s = sub.add_parser("synth", help="write a synthetic dataset and its ground truth")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--informative", type=int, default=5)
    s.add_argument("--noise", type=int, default=45)
    s.add_argument("--separation", type=float, default=3.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", "-o", required=True, help="CSV path")
    s.add_argument("--truth", required=True, help="ground-truth JSON path")
    s.add_argument("--test-samples", type=int, default=0)
    s.add_argument("--test-output", default=None, help="CSV path for the test split")

    v = sub.add_parser("verify", help="run the randomized oracle equivalence suites")
    v.add_argument("--trials", type=_positive_int, default=50)
    v.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "rank":
        if args.zero_diagonal and args.method == "rank1":
            parser.error("--method rank1 cannot be combined with --zero-diagonal")
        cfg = RunConfig(
            input_path=args.input, label_column=args.label_column, bins=args.bins,
            phi_mode=args.phi_mode, damping=args.damping, em_max_iter=args.em_max_iter,
            em_tol=args.em_tol, smoothing=args.smoothing, top_k=args.top,
            output_path=args.output, dump_model=args.dump_model, dump_graph=args.dump_graph,
            zero_diagonal=args.zero_diagonal, method=args.method,
        )
        return cmd_rank(cfg)
    if args.command == "synth":
        try:
            spec = SynthSpec(args.samples, args.informative, args.noise, args.separation, args.seed)
        except InvalidSpec as exc:
            parser.error(str(exc))
        if args.test_samples and not args.test_output:
            parser.error("--test-samples needs --test-output")
        if args.test_samples == 1 or args.test_samples < 0:
            parser.error("--test-samples must be 0 or >= 2")
        return cmd_synth(spec, args.output, args.truth, args.test_samples, args.test_output)
    return cmd_verify(args.trials, args.seed)


if __name__ == "__main__":
    sys.exit(main())
