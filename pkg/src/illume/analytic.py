"""Closed-form detection limits: region classification, minimal errors, optimal probes.

The parameter space (p0, eta) splits into three regions per mode. In region
I (target likely present, weak reflection) the best strategy is to always
guess "present"; in region II (target likely absent, weak reflection) to
always guess "absent"; in region III a measurement helps and the minimal
error decreases with the reflectivity. The conventional formulas involve the
smallest environment eigenvalue, the quantum ones its harmonic counterpart,
which is where the entangled probe gains its advantage.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import require_state_vector
from .model import DerivedParams, EnvironmentState, Scenario, derived_params
from .tolerances import BOUNDARY_TOL, ZERO_EIGENVALUE_TOL

REGION_I = "I"
REGION_II = "II"
REGION_III = "III"


def eta_star(p0: float, p1: float) -> float:
    """Reflectivity below which always guessing "present" is optimal (needs p0 < p1)."""
    if p1 <= 0.0:
        return float("-inf")
    return 1.0 - p0 / p1


def eta_guess_absent(p0: float, p1: float, lam: float) -> float:
    """Reflectivity below which always guessing "absent" is optimal (needs p0 > p1).

    ``lam`` is the smallest environment eigenvalue for conventional
    illumination and the harmonic quantity for quantum illumination. The
    value is not clamped; it may be negative (empty region) or exceed 1.
    """
    if p1 <= 0.0:
        return float("inf")
    ratio = p0 / p1 - 1.0
    if 1.0 - lam <= 0.0:
        if ratio == 0.0:
            return 0.0
        return float("inf") if ratio > 0.0 else float("-inf")
    return ratio * lam / (1.0 - lam)


def _classify_mode(s: Scenario, lam: float) -> str:
    # Boundary equalities (within BOUNDARY_TOL in eta) are labeled III; the
    # region-III formula is continuous there, so the reported error agrees.
    if s.p0 < s.p1 and s.eta < eta_star(s.p0, s.p1) - BOUNDARY_TOL:
        return REGION_I
    if s.p0 > s.p1 and s.eta < eta_guess_absent(s.p0, s.p1, lam) - BOUNDARY_TOL:
        return REGION_II
    return REGION_III


def classify(s: Scenario) -> tuple[str, str]:
    """Region labels (conventional, quantum) for a scenario.

    The degenerate priors p0 = 0 and p0 = 1 are labeled I and II by limit;
    their minimal error is 0 in both modes.
    """
    if s.p0 <= 0.0:
        return REGION_I, REGION_I
    if s.p0 >= 1.0:
        return REGION_II, REGION_II
    dp = derived_params(s)
    return _classify_mode(s, dp.lambda_d), _classify_mode(s, dp.lambda_h)


def _perr(s: Scenario, region: str, lam: float, dp: DerivedParams) -> float:
    if region == REGION_I:
        return s.p0
    if region == REGION_II:
        return s.p1
    return s.p0 + dp.gamma * (1.0 - lam)


def perr_conventional(s: Scenario) -> float:
    """Minimal one-shot error over all single-signal probe states."""
    region = classify(s)[0]
    dp = derived_params(s)
    return _perr(s, region, dp.lambda_d, dp)


def perr_quantum(s: Scenario) -> float:
    """Minimal one-shot error over all entangled signal-idler probe states.

    Never exceeds :func:`perr_conventional` for the same scenario.
    """
    region = classify(s)[1]
    dp = derived_params(s)
    return _perr(s, region, dp.lambda_h, dp)


def optimal_probe_conventional(s: Scenario) -> np.ndarray:
    """Optimal single-signal probe: the environment eigenvector of smallest weight.

    In regions I and II any state is optimal; this one is returned uniformly.
    With a degenerate smallest eigenvalue the optimum is non-unique and the
    contract is the achieved error, not the particular vector.
    """
    return s.env.eigenvector(s.env.dim - 1)


def schmidt_squares(env: EnvironmentState) -> np.ndarray:
    """Squared Schmidt coefficients of the optimal entangled probe.

    ``lambda_h / lambda_i`` for a fully positive spectrum — inversely
    proportional to the environment weights — and the continuity limit
    (all weight on the last eigenvector) when the smallest eigenvalue is
    numerically zero.
    """
    if env.lambda_min <= ZERO_EIGENVALUE_TOL:
        out = np.zeros(env.dim)
        out[-1] = 1.0
        return out
    return env.lambda_harmonic / env.spectrum


def optimal_probe_quantum(s: Scenario) -> np.ndarray:
    """Optimal entangled probe sum_i mu_i |theta_i>|theta_i>, unit norm.

    The amplitudes are the square roots of :func:`schmidt_squares`.
    """
    env = s.env
    mu = np.sqrt(schmidt_squares(env))
    psi = np.einsum("i,ia,ib->ab", mu.astype(np.complex128), env.basis, env.basis).reshape(-1)
    return psi / np.linalg.norm(psi)


def binary_trace_norm(s: Scenario, probe) -> float:
    """Closed-form trace norm of the conventional hypothesis difference at d = 2.

    Works from the probe's amplitude moduli in the environment eigenbasis;
    returns |trace| when the 2x2 determinant is nonnegative (both eigenvalues
    share a sign), else the discriminant root.
    """
    if s.env.dim != 2:
        raise ValueError("closed form applies to two-dimensional signals only")
    psi = require_state_vector(probe)
    if psi.size != 2:
        raise ValueError(f"probe has dimension {psi.size}, expected 2")
    mu = np.abs(s.env.basis.conj() @ psi)
    lam0, lam1 = s.env.spectrum
    gamma = s.p1 * (1.0 - s.eta) - s.p0
    p1eta = s.p1 * s.eta
    a = p1eta * mu[0] ** 2 + gamma * lam0
    b = p1eta * mu[1] ** 2 + gamma * lam1
    c = p1eta * mu[0] * mu[1]
    tr = a + b
    det = a * b - c * c
    if det >= 0.0:
        return abs(tr)
    return float(np.sqrt(tr * tr - 4.0 * det))


@dataclass(frozen=True)
class DetectionReport:
    """Full analytic answer for one scenario."""

    region_c: str
    region_q: str
    perr_c: float
    perr_q: float
    advantage: float
    optimal_probe_c: np.ndarray
    optimal_probe_q: np.ndarray
    eta_star: float
    eta_c: float
    eta_q: float
    mu_sq: np.ndarray

    @property
    def boundaries(self) -> tuple[float, float, float]:
        return (self.eta_star, self.eta_c, self.eta_q)

    def to_dict(self) -> dict:
        """JSON-ready payload. Non-finite boundaries serialize as null."""

        def _real(x: float):
            return float(x) if np.isfinite(x) else None

        return {
            "schema": 1,
            "region_c": self.region_c,
            "region_q": self.region_q,
            "perr_c": float(self.perr_c),
            "perr_q": float(self.perr_q),
            "advantage": float(self.advantage),
            "eta_star": _real(self.eta_star),
            "eta_c": _real(self.eta_c),
            "eta_q": _real(self.eta_q),
            "mu_sq": [float(m) for m in self.mu_sq],
        }


def report(s: Scenario) -> DetectionReport:
    """Classify, evaluate both minimal errors, and construct both optimal probes."""
    region_c, region_q = classify(s)
    dp = derived_params(s)
    perr_c = _perr(s, region_c, dp.lambda_d, dp)
    perr_q = _perr(s, region_q, dp.lambda_h, dp)
    return DetectionReport(
        region_c=region_c,
        region_q=region_q,
        perr_c=perr_c,
        perr_q=perr_q,
        advantage=perr_c - perr_q,
        optimal_probe_c=optimal_probe_conventional(s),
        optimal_probe_q=optimal_probe_quantum(s),
        eta_star=eta_star(s.p0, s.p1),
        eta_c=eta_guess_absent(s.p0, s.p1, dp.lambda_d),
        eta_q=eta_guess_absent(s.p0, s.p1, dp.lambda_h),
        mu_sq=schmidt_squares(s.env),
    )
