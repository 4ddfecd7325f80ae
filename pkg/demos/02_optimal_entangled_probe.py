#!/usr/bin/env python3
"""Walkthrough: the optimal entangled probe and why entanglement helps.

The optimal signal-idler state has Schmidt spectrum inversely proportional
to the environment spectrum: mu_i^2 = lambda_h / lambda_i, where lambda_h
is the inverse of the summed inverse environment eigenvalues. The noisier
an environment direction, the *less* weight the probe puts on it. This
script builds the state, feeds it through the bipartite channel pair, and
confirms by direct eigendecomposition that it achieves the closed-form
minimum.
"""

import numpy as np

from illume import (
    EnvironmentState,
    Scenario,
    haar_random_state,
    omega_c,
    omega_q,
    optimal_probe_quantum,
    perr_conventional,
    perr_quantum,
    projector,
    schmidt_squares,
    trace_norm,
)

env = EnvironmentState([0.5, 0.3, 0.2])
s = Scenario(p0=0.5, eta=0.6, env=env)

print("Environment spectrum:", env.spectrum)
print("Harmonic quantity lambda_h = 1 / sum(1/lambda_i) =", env.lambda_harmonic)
print("Schmidt squares of the optimal probe:", np.round(schmidt_squares(env), 6))
print("  (inversely proportional to the spectrum, normalized to 1)")
print()

psi = optimal_probe_quantum(s)
achieved = (1.0 - trace_norm(omega_q(s, psi))) / 2.0
print(f"Error achieved by the optimal entangled probe: {achieved:.12f}")
print(f"Closed-form quantum minimum:                   {perr_quantum(s):.12f}")
print(f"Closed-form conventional minimum:              {perr_conventional(s):.12f}")
print()

# A product probe gains nothing: it reduces to conventional illumination.
rng = np.random.default_rng(1)
phi, chi = haar_random_state(3, rng), haar_random_state(3, rng)
product = np.kron(phi, chi)
print("Product probe |phi>|chi| reduces to the conventional case:")
print(f"  bipartite trace norm  = {trace_norm(omega_q(s, product)):.12f}")
print(f"  single-signal version = {trace_norm(omega_c(s, projector(phi))):.12f}")
print()

# Entanglement only pays when the environment is anisotropic *and* the
# spectrum has no zeros: with a flat spectrum lambda_h = lambda_d / d is far
# below lambda_d, while a zero eigenvalue collapses both to 0.
for spectrum in ([0.5, 0.3, 0.2], [1 / 3] * 3, [0.6, 0.4, 0.0]):
    e = EnvironmentState(spectrum)
    sc = Scenario(0.5, 0.6, e)
    print(f"  spectrum {np.round(e.spectrum, 3)}: lambda_d - lambda_h ="
          f" {e.lambda_min - e.lambda_harmonic:.4f},"
          f" advantage = {perr_conventional(sc) - perr_quantum(sc):.6f}")
