"""First-principles verification, independent of the closed-form solver.

Everything here goes through explicit operators and eigendecompositions:
the error of an arbitrary probe state, a seeded multi-start stochastic hill
climb over pure probes (an independent upper bound on the minimal error),
spot checks of the eigenvalue structure the closed forms rely on, and a
Monte-Carlo simulation of the optimal binary measurement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import (
    optimal_probe_conventional,
    optimal_probe_quantum,
    perr_conventional,
    perr_quantum,
)
from .linalg import (
    eig,
    haar_random_state,
    partial_trace_first,
    projector,
    require_state_vector,
    tensor,
    trace_norm,
)
from .model import (
    CONVENTIONAL,
    MODES,
    QUANTUM,
    EnvironmentState,
    Scenario,
    channel_absent,
    channel_present,
    derived_params,
    omega_c,
    omega_q,
    omega_q_density,
)
from .tolerances import DENSITY_EIG_TOL, POSITIVE_PART_TOL

# Quantum-probe searches walk the d^2-dimensional complex sphere; beyond
# d = 8 only the analytic formulas are offered.
MAX_QUANTUM_SEARCH_DIM = 8

# Consecutive rejected proposals before the walk contracts its step.
STALL_WINDOW = 8


@dataclass(frozen=True)
class SearchConfig:
    """Budget and seeding for the stochastic trace-norm maximization."""

    restarts: int = 32
    steps_per_restart: int = 2000
    initial_step: float = 0.5
    shrink_factor: float = 0.9
    seed: int = 0
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not 0.0 < self.shrink_factor < 1.0:
            raise ValueError("shrink_factor must lie strictly between 0 and 1")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")


@dataclass
class OracleResult:
    """Outcome of a trace-norm maximization."""

    best_value: float
    best_state: np.ndarray
    perr: float
    evaluations: int


@dataclass
class MeasurementStats:
    """Tally of a simulated measurement run."""

    trials: int
    errors: int
    empirical_perr: float
    std_error: float


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def perr_of_state(s: Scenario, probe, mode: str) -> float:
    """Detection error of a specific pure probe, straight from the trace norm."""
    _check_mode(mode)
    probe = require_state_vector(probe)
    if mode == CONVENTIONAL:
        if probe.size != s.env.dim:
            raise ValueError(
                f"conventional probe has dimension {probe.size}, expected {s.env.dim}"
            )
        omega = omega_c(s, projector(probe))
    else:
        omega = omega_q(s, probe)
    return (1.0 - trace_norm(omega)) / 2.0


def _batched_objective(s: Scenario, mode: str):
    """Vectorized trace-norm objective over a stack of candidate states."""
    d = s.env.dim
    rho_e = s.env.density()
    gamma = s.p1 * (1.0 - s.eta) - s.p0
    p1eta = s.p1 * s.eta

    if mode == CONVENTIONAL:
        def value(states: np.ndarray) -> np.ndarray:
            outers = np.einsum("ni,nj->nij", states, states.conj())
            omegas = p1eta * outers + gamma * rho_e
            return np.abs(np.linalg.eigvalsh(omegas)).sum(axis=1)

        return d, value

    def value(states: np.ndarray) -> np.ndarray:
        n = states.shape[0]
        outers = np.einsum("ni,nj->nij", states, states.conj())
        mats = states.reshape(n, d, d)
        rho_b = np.einsum("nai,naj->nij", mats, mats.conj())
        background = np.einsum("ab,ncd->nacbd", rho_e, rho_b).reshape(n, d * d, d * d)
        omegas = p1eta * outers + gamma * background
        return np.abs(np.linalg.eigvalsh(omegas)).sum(axis=1)

    return d * d, value


def maximize_trace_norm(
    s: Scenario,
    mode: str,
    cfg: SearchConfig,
    initial_state=None,
) -> OracleResult:
    """Maximize the hypothesis-difference trace norm over pure probe states.

    Multi-start stochastic hill climb on the complex unit sphere: each
    restart perturbs its current state by a Gaussian step, renormalizes,
    keeps the proposal if the trace norm increased, and contracts the step
    geometrically after ``STALL_WINDOW`` consecutive rejections. A restart
    ends once its step falls below ``cfg.tolerance`` (further moves cannot
    change the value at the reported resolution) or its step budget runs
    out, which is normal termination.

    Restart ``r`` owns the private stream ``default_rng([cfg.seed, r])``, so
    results are reproducible bit-for-bit given the config. If
    ``initial_state`` is given, restart 0 starts there instead of at a Haar
    draw. The returned ``perr`` is an upper bound on the true minimal error;
    ties between restarts resolve to the lowest restart index.
    """
    _check_mode(mode)
    if mode == QUANTUM and s.env.dim > MAX_QUANTUM_SEARCH_DIM:
        raise ValueError(
            f"quantum search supports environment dimension <= {MAX_QUANTUM_SEARCH_DIM}, "
            f"got {s.env.dim}"
        )
    dim, value_of = _batched_objective(s, mode)

    rngs = [np.random.default_rng([cfg.seed, r]) for r in range(cfg.restarts)]
    states = np.empty((cfg.restarts, dim), dtype=np.complex128)
    for r, rng in enumerate(rngs):
        if r == 0 and initial_state is not None:
            start = require_state_vector(initial_state)
            if start.size != dim:
                raise ValueError(f"initial state has dimension {start.size}, expected {dim}")
            states[r] = start
        else:
            states[r] = haar_random_state(dim, rng)
    values = value_of(states)
    evaluations = cfg.restarts

    steps = np.full(cfg.restarts, float(cfg.initial_step))
    stalls = np.zeros(cfg.restarts, dtype=int)
    active = np.ones(cfg.restarts, dtype=bool)

    for _ in range(cfg.steps_per_restart):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        noise = np.empty((idx.size, dim), dtype=np.complex128)
        for k, r in enumerate(idx):
            draw = rngs[r].standard_normal((2, dim))
            noise[k] = draw[0] + 1j * draw[1]
        proposals = states[idx] + steps[idx, None] * noise
        proposals /= np.linalg.norm(proposals, axis=1, keepdims=True)
        trial = value_of(proposals)
        evaluations += idx.size

        improved = trial > values[idx]
        accepted = idx[improved]
        states[accepted] = proposals[improved]
        values[accepted] = trial[improved]
        stalls[accepted] = 0

        rejected = idx[~improved]
        stalls[rejected] += 1
        contract = rejected[stalls[rejected] >= STALL_WINDOW]
        steps[contract] *= cfg.shrink_factor
        stalls[contract] = 0
        active[contract[steps[contract] < cfg.tolerance]] = False

    best = int(np.argmax(values))
    best_value = float(values[best])
    return OracleResult(
        best_value=best_value,
        best_state=states[best].copy(),
        perr=(1.0 - best_value) / 2.0,
        evaluations=evaluations,
    )


def check_single_negative_eigenvalue(rho, alpha: float, psi) -> bool:
    """A density matrix minus a positive rank-one term has at most one negative eigenvalue."""
    rho = np.asarray(rho, dtype=np.complex128)
    psi = require_state_vector(psi)
    if rho.shape != (psi.size, psi.size):
        raise ValueError(f"dimension mismatch: rho {rho.shape} vs psi {psi.size}")
    w = np.linalg.eigvalsh(rho - alpha * projector(psi))
    return int(np.sum(w < -DENSITY_EIG_TOL)) <= 1


def check_eigenvalue_lower_bound(env: EnvironmentState, alpha: float, psi) -> bool:
    """Ground level of the bipartite background minus the probe projector is bounded.

    Builds ``rho_E (x) rho_B - alpha |psi><psi|`` with ``rho_B`` the idler
    marginal of ``psi`` and checks its smallest eigenvalue, with 1e-10 slack:
    at least ``lambda_h - alpha`` when ``alpha > lambda_h``, and at least 0
    when ``alpha <= lambda_h``. (The two branches are genuinely distinct: a
    product probe has ground level exactly 0, below ``lambda_h - alpha``
    whenever ``alpha < lambda_h``.)
    """
    d = env.dim
    psi = require_state_vector(psi)
    if psi.size != d * d:
        raise ValueError(f"bipartite state has dimension {psi.size}, expected {d * d}")
    rho_ab = projector(psi)
    rho_b = partial_trace_first(rho_ab, d, d)
    h = tensor(env.density(), rho_b) - alpha * rho_ab
    e_g = float(np.linalg.eigvalsh(h)[0])
    lam_h = env.lambda_harmonic
    if alpha > lam_h:
        return e_g >= lam_h - alpha - DENSITY_EIG_TOL
    return e_g >= -DENSITY_EIG_TOL


def check_perr_linear_in_min_eigenvalue(s: Scenario, psi) -> bool:
    """The probe error is linear in the ground level of the shifted environment.

    Requires ``gamma < 0``. With ``E_d`` the smallest eigenvalue of
    ``rho_E - alpha |psi><psi|`` and ``E_d <= 0``, the error equals
    ``(1 - |gamma| (1 - alpha - 2 E_d)) / 2``; compared against
    :func:`perr_of_state` at 1e-10. States with ``E_d > 0`` are outside the
    identity's precondition and pass vacuously.
    """
    dp = derived_params(s)
    if dp.alpha is None:
        raise ValueError("check requires gamma < 0")
    psi = require_state_vector(psi)
    if psi.size != s.env.dim:
        raise ValueError(f"probe has dimension {psi.size}, expected {s.env.dim}")
    e_d = float(np.linalg.eigvalsh(s.env.density() - dp.alpha * projector(psi))[0])
    if e_d > 0.0:
        return True
    predicted = 0.5 * (1.0 - abs(dp.gamma) * (1.0 - dp.alpha - 2.0 * e_d))
    return abs(predicted - perr_of_state(s, psi, CONVENTIONAL)) <= 1e-10


def check_convexity_reduction(s: Scenario, rho, mode: str) -> bool:
    """A mixed probe never out-performs the best eigenstate in its mixture."""
    _check_mode(mode)
    rho = np.asarray(rho, dtype=np.complex128)
    build = omega_c if mode == CONVENTIONAL else omega_q_density
    mixed_value = trace_norm(build(s, rho))
    decomp = eig(rho)
    best_pure = 0.0
    for k, weight in enumerate(decomp.eigenvalues):
        if weight <= 1e-12:
            continue
        vec = decomp.eigenvectors[:, k]
        best_pure = max(best_pure, trace_norm(build(s, projector(vec))))
    return mixed_value <= best_pure + 1e-10


def _hypothesis_pair(s: Scenario, probe: np.ndarray, mode: str):
    if mode == CONVENTIONAL:
        if probe.size != s.env.dim:
            raise ValueError(
                f"conventional probe has dimension {probe.size}, expected {s.env.dim}"
            )
        rho = projector(probe)
        return channel_absent(s, rho), channel_present(s, rho)
    d = s.env.dim
    if probe.size != d * d:
        raise ValueError(f"bipartite probe has dimension {probe.size}, expected {d * d}")
    rho_ab = projector(probe)
    background = tensor(s.env.density(), partial_trace_first(rho_ab, d, d))
    return background, s.eta * rho_ab + (1.0 - s.eta) * background


def simulate_measurement(
    s: Scenario,
    probe,
    mode: str,
    trials: int,
    seed: int,
) -> MeasurementStats:
    """Monte-Carlo run of the optimal binary measurement for a given probe.

    The "present" projector collects the eigenvectors of
    ``p1 rho_1 - p0 rho_0`` with eigenvalue above ``POSITIVE_PART_TOL``
    (knife-edge eigenvalues go to the "absent" side; at such degeneracies
    either assignment yields the same error). Each trial draws the
    hypothesis from (p0, p1) and the outcome from the Born probabilities;
    the expected error rate is :func:`perr_of_state`. Fixed seeds reproduce
    identical statistics.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_mode(mode)
    probe = require_state_vector(probe)
    rho0, rho1 = _hypothesis_pair(s, probe, mode)

    decomp = eig(s.p1 * rho1 - s.p0 * rho0)
    plus = decomp.eigenvectors[:, decomp.eigenvalues > POSITIVE_PART_TOL]
    proj_plus = plus @ plus.conj().T
    q_absent = float(np.clip(np.trace(proj_plus @ rho0).real, 0.0, 1.0))
    q_present = float(np.clip(np.trace(proj_plus @ rho1).real, 0.0, 1.0))

    rng = np.random.default_rng(seed)
    present = rng.random(trials) < s.p1
    u = rng.random(trials)
    says_present = np.where(present, u < q_present, u < q_absent)
    errors = int(np.count_nonzero(says_present != present))

    empirical = errors / trials
    return MeasurementStats(
        trials=trials,
        errors=errors,
        empirical_perr=empirical,
        std_error=float(np.sqrt(empirical * (1.0 - empirical) / trials)),
    )


# ---------------------------------------------------------------------------
# Verification suites (the substance behind the `verify` command).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BundledCase:
    """A named scenario/mode pair used by the oracle and Monte-Carlo suites."""

    name: str
    scenario: Scenario
    mode: str

    def analytic_perr(self) -> float:
        if self.mode == CONVENTIONAL:
            return perr_conventional(self.scenario)
        return perr_quantum(self.scenario)

    def optimal_probe(self) -> np.ndarray:
        if self.mode == CONVENTIONAL:
            return optimal_probe_conventional(self.scenario)
        return optimal_probe_quantum(self.scenario)


def bundled_scenarios() -> list[BundledCase]:
    """Twenty scenarios spanning regions, spectra and both modes."""

    def case(name, p0, eta, spectrum, mode):
        return BundledCase(name, Scenario(p0, eta, EnvironmentState(spectrum)), mode)

    mixed2 = [0.5, 0.5]
    skew3 = [0.5, 0.3, 0.2]
    return [
        case("mixed2-region3-conv", 0.5, 0.6, mixed2, CONVENTIONAL),
        case("mixed2-region3-quant", 0.5, 0.6, mixed2, QUANTUM),
        case("skew3-region3-conv", 0.5, 0.6, skew3, CONVENTIONAL),
        case("skew3-region3-quant", 0.5, 0.6, skew3, QUANTUM),
        case("region1-conv", 0.3, 0.5, mixed2, CONVENTIONAL),
        case("region1-quant", 0.3, 0.5, skew3, QUANTUM),
        case("region2-conv", 0.6, 0.08, skew3, CONVENTIONAL),
        case("region2c-region3q", 0.6, 0.08, skew3, QUANTUM),
        case("zero-eig-conv", 0.4, 0.7, [0.7, 0.3, 0.0], CONVENTIONAL),
        case("zero-eig-quant", 0.4, 0.7, [0.7, 0.3, 0.0], QUANTUM),
        case("no-signal-conv", 0.45, 0.0, [0.6, 0.4], CONVENTIONAL),
        case("full-reflection-conv", 0.5, 1.0, [0.8, 0.2], CONVENTIONAL),
        case("full-reflection-quant", 0.5, 1.0, [0.8, 0.2], QUANTUM),
        case("degenerate-tail-conv", 0.5, 0.5, [0.4, 0.3, 0.3], CONVENTIONAL),
        case("degenerate-tail-quant", 0.5, 0.5, [0.4, 0.3, 0.3], QUANTUM),
        case("uniform4-conv", 0.35, 0.9, [0.25] * 4, CONVENTIONAL),
        case("eta-star-boundary-conv", 0.4, 1.0 / 3.0, mixed2, CONVENTIONAL),
        case("rare-target-region1", 0.05, 0.2, skew3, CONVENTIONAL),
        case("likely-absent-region2-quant", 0.8, 0.01, mixed2, QUANTUM),
        case("strong-reflection-quant", 0.7, 0.95, [0.6, 0.4], QUANTUM),
    ]


def _random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _random_scenario(rng: np.random.Generator, dim: int, force_gamma_negative=False) -> Scenario:
    spectrum = rng.exponential(size=dim)
    spectrum /= spectrum.sum()
    while True:
        p0 = float(rng.uniform(0.01, 0.99))
        eta = float(rng.uniform(0.0, 1.0))
        gamma = (1.0 - p0) * (1.0 - eta) - p0
        if not force_gamma_negative or gamma < -1e-6:
            return Scenario(p0, eta, EnvironmentState(spectrum))


def run_lemma_suite(seed: int = 0, trials: int = 10000) -> dict:
    """Random-instance checks of the eigenvalue structure behind the closed forms.

    Each check reports a worst margin, normalized so that a pass means
    margin >= 0 (the tolerance is already folded in).
    """
    rng = np.random.default_rng([seed, 101])
    dims = (2, 3, 4, 6)
    checks = []

    # At most one negative eigenvalue of rho - alpha |psi><psi|.
    violations = 0
    worst = np.inf
    for t in range(trials):
        d = dims[t % len(dims)]
        rho = _random_density(rng, d)
        psi = haar_random_state(d, rng)
        alpha = float(rng.uniform(1e-3, 2.0))
        w = np.linalg.eigvalsh(rho - alpha * projector(psi))
        margin = float(w[1]) + DENSITY_EIG_TOL  # second-smallest must clear -tol
        worst = min(worst, margin)
        if margin < 0.0:
            violations += 1
    checks.append(
        {"name": "single_negative_eigenvalue", "trials": trials,
         "violations": violations, "worst_margin": worst}
    )

    # Ground-level lower bound of the bipartite background operator.
    n_bipartite = max(trials // 10, 1)
    violations = 0
    worst = np.inf
    for t in range(n_bipartite):
        d = 2 + (t % 2)
        env = EnvironmentState(np.sort(rng.dirichlet(np.ones(d)))[::-1])
        psi = haar_random_state(d * d, rng)
        lam_h = env.lambda_harmonic
        if t % 2 == 0:
            alpha = float(rng.uniform(0.0, 1.0)) * lam_h  # below the harmonic level
        else:
            alpha = lam_h + float(rng.exponential(0.5))
        rho_ab = projector(psi)
        h = tensor(env.density(), partial_trace_first(rho_ab, d, d)) - alpha * rho_ab
        e_g = float(np.linalg.eigvalsh(h)[0])
        if alpha > lam_h:
            margin = e_g - (lam_h - alpha) + DENSITY_EIG_TOL
        else:
            margin = e_g + DENSITY_EIG_TOL
        worst = min(worst, margin)
        if margin < 0.0:
            violations += 1
    checks.append(
        {"name": "bipartite_ground_level_bound", "trials": n_bipartite,
         "violations": violations, "worst_margin": worst}
    )

    # Linearity of the probe error in the shifted environment's ground level.
    n_linear = max(trials // 10, 1)
    violations = 0
    worst = np.inf
    for t in range(n_linear):
        d = dims[t % len(dims)]
        s = _random_scenario(rng, d, force_gamma_negative=True)
        psi = haar_random_state(d, rng)
        dp = derived_params(s)
        e_d = float(np.linalg.eigvalsh(s.env.density() - dp.alpha * projector(psi))[0])
        if e_d > 0.0:
            margin = 1e-10
        else:
            predicted = 0.5 * (1.0 - abs(dp.gamma) * (1.0 - dp.alpha - 2.0 * e_d))
            margin = 1e-10 - abs(predicted - perr_of_state(s, psi, CONVENTIONAL))
        worst = min(worst, margin)
        if margin < 0.0:
            violations += 1
    checks.append(
        {"name": "perr_linear_in_ground_level", "trials": n_linear,
         "violations": violations, "worst_margin": worst}
    )

    # Mixed probes never beat their best eigenstate.
    n_convex = max(trials // 10, 1)
    violations = 0
    worst = np.inf
    for t in range(n_convex):
        d = 2 + (t % 3)
        s = _random_scenario(rng, d)
        mode = CONVENTIONAL if t % 2 == 0 else QUANTUM
        probe_dim = d if mode == CONVENTIONAL else d * d
        rho = _random_density(rng, probe_dim)
        build = omega_c if mode == CONVENTIONAL else omega_q_density
        mixed_value = trace_norm(build(s, rho))
        decomp = eig(rho)
        best_pure = max(
            trace_norm(build(s, projector(decomp.eigenvectors[:, k])))
            for k in range(probe_dim)
            if decomp.eigenvalues[k] > 1e-12
        )
        margin = best_pure + 1e-10 - mixed_value
        worst = min(worst, margin)
        if margin < 0.0:
            violations += 1
    checks.append(
        {"name": "convexity_reduction", "trials": n_convex,
         "violations": violations, "worst_margin": worst}
    )

    total = sum(c["violations"] for c in checks)
    return {"suite": "lemmas", "seed": seed, "checks": checks, "violations": total}


def run_oracle_suite(seed: int = 0, cfg: SearchConfig | None = None) -> dict:
    """Stochastic search versus the closed forms on the bundled scenarios.

    A case passes when the search error agrees with the analytic error to
    the search tolerance (two-sided: the search must neither beat the
    claimed optimum nor fall short of reaching it).
    """
    checks = []
    for case in bundled_scenarios():
        case_cfg = cfg if cfg is not None else SearchConfig(seed=seed)
        result = maximize_trace_norm(case.scenario, case.mode, case_cfg)
        diff = abs(result.perr - case.analytic_perr())
        margin = case_cfg.tolerance - diff
        checks.append(
            {"name": case.name, "trials": result.evaluations,
             "violations": int(margin < 0.0), "worst_margin": margin}
        )
    total = sum(c["violations"] for c in checks)
    return {"suite": "oracle", "seed": seed, "checks": checks, "violations": total}


def run_montecarlo_suite(seed: int = 0, trials: int = 100000) -> dict:
    """Simulated measurements versus the analytic errors on the bundled scenarios.

    Each case must land within four standard errors of the analytic value.
    """
    checks = []
    for i, case in enumerate(bundled_scenarios()):
        stats = simulate_measurement(
            case.scenario, case.optimal_probe(), case.mode, trials, seed=seed + i
        )
        diff = abs(stats.empirical_perr - case.analytic_perr())
        margin = 4.0 * stats.std_error - diff
        checks.append(
            {"name": case.name, "trials": trials,
             "violations": int(margin < 0.0), "worst_margin": margin}
        )
    total = sum(c["violations"] for c in checks)
    return {"suite": "montecarlo", "seed": seed, "checks": checks, "violations": total}
