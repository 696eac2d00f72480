"""Central finite-difference oracle shared by the gradient tests.

The oracle never touches the analytic backward paths: it re-evaluates the
forward closure at perturbed parameter values only.
"""

import numpy as np

FD_STEP = 1e-5
REL_TOL = 1e-4


def central_diff(f, arrays, h=FD_STEP):
    """d f / d arrays[i][j] by central differences, perturbing in place."""
    grads = []
    for a in arrays:
        g = np.zeros_like(a)
        flat = a.reshape(-1)
        gflat = g.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + h
            fp = f()
            flat[i] = orig - h
            fm = f()
            flat[i] = orig
            gflat[i] = (fp - fm) / (2.0 * h)
        grads.append(g)
    return grads


def max_rel_err(analytic, numeric):
    worst = 0.0
    for ga, gn in zip(analytic, numeric):
        denom = np.maximum(1.0, np.abs(gn))
        worst = max(worst, float(np.max(np.abs(ga - gn) / denom)))
    return worst


def assert_grads_match(analytic, numeric, tol=REL_TOL):
    err = max_rel_err(analytic, numeric)
    assert err < tol, f"gradient mismatch vs finite differences: {err:.3e} >= {tol}"
