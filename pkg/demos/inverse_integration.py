"""Recover a piecewise-constant signal from its running average.

The forward map is cumulative averaging, a smoothing operator whose
inversion amplifies noise badly.  The l1 penalty keeps the reconstruction
sparse in the signal domain and the Newton-type solver finds it in a few
steps.  Watch the residual column: it is allowed to grow for several
iterations before collapsing by many orders of magnitude once the correct
support is identified.
"""

import numpy as np

import l1newton as ln
from l1newton.cli import format_records_table


def main():
    spec = ln.ExperimentSpec(
        kind=ln.ExperimentKind.INVERSE_INTEGRATION,
        n=500,
        w_value=3e-3,
        gamma=5e5,
        seed=3,
        noise_rel=0.05,
    )
    problem, truth = ln.make_instance(spec)
    print(f"instance: n={spec.n}, 5% noise, constant weight {spec.w_value}")

    report = ln.solve_ssn(problem, opts=ln.SolveOptions(max_iters=60,
                                                        residual_tol=1e-10))
    print(format_records_table(report.records))
    print(f"\nstatus: {report.status.value} after {report.iterations} updates "
          f"({report.wall_time:.3f}s)")

    trace = report.residual_trace()
    bumps = int(np.sum(np.diff(trace) > 0))
    print(f"residual rose on {bumps} of {len(trace) - 1} steps, "
          f"then dropped {trace[-2] / trace[-1]:.1e}x on the last one")

    support = int(np.count_nonzero(report.solution))
    misfit = np.linalg.norm(problem.K.apply(report.solution) - problem.f)
    print(f"solution keeps {support} of {spec.n} entries, data misfit "
          f"{misfit:.3f} at noise norm {truth.noise_norm:.3f}")

    cert = ln.certify(problem, report.solution)
    print(f"duality gap {cert.gap:.2e}, "
          f"certificate accepted: {cert.within_tolerance()}")


if __name__ == "__main__":
    main()
