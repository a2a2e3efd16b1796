"""Prove a solution is (nearly) optimal without trusting the solver.

The dual of the penalized least-squares problem maximizes a concave
quadratic over vectors whose correlations stay inside the weight box.  At
a primal minimizer the misfit itself is the dual optimum, so a certificate
costs one operator application: evaluate both objectives and report the
gap.  Any vector can be checked this way, including one produced by other
software or read from a file.
"""

import numpy as np

import l1newton as ln


def show(label, cert):
    gap = "inf" if not np.isfinite(cert.gap) else f"{cert.gap:.3e}"
    print(f"{label:<28} gap {gap:>10}  margin {cert.feasibility_margin:+.2e}  "
          f"accepted {cert.within_tolerance()}")


def main():
    rng = np.random.default_rng(1)
    n = 60
    K = ln.integration_operator(n)
    u_true = np.zeros(n)
    u_true[[10, 25, 44]] = [1.2, -0.8, 0.5]
    f = K.apply(u_true) + 0.002 * rng.standard_normal(n)
    problem = ln.Problem(K=K, f=f, w=ln.Weights.constant(2e-4, n), gamma=1e4)

    report = ln.solve_ssn(problem)
    print(f"solver: {report.status.value} in {report.iterations} iterations\n")

    # the solver's answer passes
    show("solver output", ln.certify(problem, report.solution))

    # at the minimizer the correlations sit exactly on the box walls, so
    # perturbing u pushes the implied dual candidate outside: rejection
    # comes from the feasibility margin, not from a finite gap
    for eps in (1e-4, 1e-2):
        u = report.solution.copy()
        u[10] += eps
        show(f"perturbed by {eps:g}", ln.certify(problem, u))
    show("zero vector", ln.certify(problem, np.zeros(n)))

    # when the optimum has slack in the box (here the zero vector, weights
    # above every correlation) the gap is finite and grows with distance
    f2 = np.array([1.0, -0.5, 0.2, 0.0])
    slack = ln.Problem(K=ln.identity(4), f=f2,
                       w=ln.Weights.constant(2.0, 4), gamma=1.0)
    print()
    show("slack optimum itself", ln.certify(slack, np.zeros(4)))
    for eps in (0.1, 0.3):
        show(f"slack, off by {eps:g}",
             ln.certify(slack, np.array([eps, 0.0, 0.0, 0.0])))

    # certificates serialize to strict JSON, infinities included
    text = ln.certify(problem, np.zeros(n)).to_json(indent=None)
    print(f"\njson form of the last one:\n{text[:120]}...")


if __name__ == "__main__":
    main()
