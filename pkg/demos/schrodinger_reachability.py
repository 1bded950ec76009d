"""Sampled reachability for the bilinear Schrodinger model.

Crank-Nicolson keeps the norm, the zero state never moves, and halving
the step shrinks the error by about four.

Run with ``python demos/schrodinger_reachability.py``.
"""

import numpy as np

from topocontrol.reach import (
    ProbabilityBins,
    attainable_cloud,
    check_mu_controllability,
    l2_norm,
    probability,
    schrodinger_system,
    sine_state,
    smooth_state,
    step_halving_ratio,
    zero_state,
)

system = schrodinger_system(n_grid=63, dt=1e-3, segments=4, amplitude=5.0)
phi0 = sine_state(63)
cloud = attainable_cloud(system, phi0, T=0.1, K=20, seed=0)

drift = max(abs(l2_norm(s.terminal) - l2_norm(phi0)) for s in cloud.samples)
print(f"worst norm drift over 20 controls: {drift:.2e}")
print("P(0, 0.5) per sample:", np.round([probability(s.terminal, 0.0, 0.5) for s in cloud.samples[:5]], 4))

bins = ProbabilityBins(((0.0, 0.5),), 0.1)
verdict = check_mu_controllability(cloud, bins)
print(f"{verdict.f_size} of {verdict.universe_size} probability bins hit, dense: {verdict.dense}")

zero = attainable_cloud(system, zero_state(63), T=0.1, K=5, seed=1)
print("zero state stays put:", float(np.max(np.abs(zero.terminals()))) == 0.0)

control = np.random.default_rng(4).uniform(-5.0, 5.0, 4)
print(f"step-halving ratio: {step_halving_ratio(system, control, smooth_state(63), 0.1):.3f}")
