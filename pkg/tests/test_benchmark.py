import importlib.util
from pathlib import Path


def test_benchmark_script_runs(capsys):
    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.main(["--features", "6", "--samples", "20", "--repeat", "1"])
    out = capsys.readouterr().out
    for kernel in ("fisher_priors", "em_iteration", "lu_factor+solve", "lapack solve"):
        assert kernel in out
