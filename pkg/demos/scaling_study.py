"""Time the Newton solver over growing problem sizes.

Each size regenerates the running-average experiment from the same seed,
so the sequence discretizes one fixed signal ever finer.  Iteration counts
barely move with n while per-iteration cost grows polynomially; the
fitted exponent of time against size stays near the cost of the dense
linear algebra.  The proximal-gradient baseline is run once at n=500 with
a generous iteration budget to show the gap in wall time.
"""

import time

import l1newton as ln
from l1newton.cli import Command, RunConfig, run_scaling


def main():
    opts = ln.SolveOptions(max_iters=100, residual_tol=1e-6,
                           stop_rule=ln.StopRule.RESIDUAL_NORM)
    base = ln.ExperimentSpec(
        kind=ln.ExperimentKind.INVERSE_INTEGRATION,
        n=100,
        w_value=3e-3,
        gamma=5e5,
        seed=3,
        noise_rel=0.05,
    )
    cfg = RunConfig(command=Command.SCALING, solver="ssn", options=opts,
                    experiment=base)
    sizes = [100, 150, 224, 335, 501, 750]
    # one throwaway solve so library warm-up does not pollute the first row
    ln.solve_ssn(ln.make_instance(base)[0], opts=opts)
    result = run_scaling(cfg, sizes, repeats=3)

    print(f"{'n':>6}  {'seconds':>10}  {'iterations':>10}")
    for n, t, it in zip(result.sizes, result.cpu_seconds, result.iterations):
        print(f"{n:>6}  {t:>10.4f}  {it:>10}")
    print(f"fitted exponent: {result.fitted_exponent:.2f}")

    # baseline at one size; it will not reach the same tolerance in time
    spec = ln.ExperimentSpec(kind=base.kind, n=500, w_value=base.w_value,
                             gamma=base.gamma, seed=base.seed,
                             noise_rel=base.noise_rel)
    problem, _ = ln.make_instance(spec)
    t0 = time.perf_counter()
    newton = ln.solve_ssn(problem, opts=opts)
    t_newton = time.perf_counter() - t0
    ista = ln.solve_ista(problem, opts=ln.SolveOptions(max_iters=4000,
                                                       residual_tol=1e-6))
    print(f"\nn=500 head to head at tolerance 1e-6:")
    print(f"  newton:   {newton.status.value} in {newton.iterations} "
          f"iterations, {t_newton:.3f}s")
    print(f"  baseline: {ista.status.value} after {ista.iterations} "
          f"iterations, {ista.wall_time:.3f}s, "
          f"residual still {ista.final_residual:.2e}")


if __name__ == "__main__":
    main()
