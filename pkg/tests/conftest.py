"""Shared random-instance builders for the test suite."""

import numpy as np

from illume import EnvironmentState, Scenario, eig


def random_hermitian(rng, dim, scale=1.0):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (g + g.conj().T) / 2.0


def random_density(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim):
    # eigenbasis of a random Hermitian matrix is Haar-like and exactly unitary
    return eig(random_hermitian(rng, dim)).eigenvectors


def random_spectrum(rng, dim):
    lam = rng.exponential(size=dim)
    lam /= lam.sum()
    return np.sort(lam)[::-1]


def random_scenario(rng, dim, gamma_sign=None):
    """Random scenario; gamma_sign=-1 forces the measurement regime."""
    spectrum = random_spectrum(rng, dim)
    while True:
        p0 = float(rng.uniform(0.02, 0.98))
        eta = float(rng.uniform(0.0, 1.0))
        gamma = (1.0 - p0) * (1.0 - eta) - p0
        if gamma_sign is None or gamma * gamma_sign > 1e-6:
            return Scenario(p0, eta, EnvironmentState(spectrum))
