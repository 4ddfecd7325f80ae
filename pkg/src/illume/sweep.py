"""Grid evaluation over (p0, eta) for phase-diagram and error-curve datasets.

The sweep is a pure function of its spec: rerunning one produces
byte-identical CSV output. Records are ordered row-major with p0 as the
outer loop. Plotting is out of scope; the CSV is the deliverable.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import classify, eta_guess_absent, eta_star, perr_conventional, perr_quantum
from .model import CONVENTIONAL, QUANTUM, EnvironmentState, Scenario
from .oracle import MAX_QUANTUM_SEARCH_DIM, SearchConfig, maximize_trace_norm

CSV_FIELDS = ("p0", "eta", "region_c", "region_q", "perr_c", "perr_q", "advantage")
CSV_ORACLE_FIELDS = CSV_FIELDS + ("oracle_perr_c", "oracle_perr_q")


def _check_range(name: str, rng: tuple) -> tuple[float, float, int]:
    lo, hi, steps = float(rng[0]), float(rng[1]), int(rng[2])
    if steps < 2:
        raise ValueError(f"{name} needs at least 2 steps, got {steps}")
    if not (0.0 <= lo <= hi <= 1.0):
        raise ValueError(f"{name} must satisfy 0 <= min <= max <= 1, got ({lo}, {hi})")
    return lo, hi, steps


@dataclass(frozen=True)
class SweepSpec:
    """Grid specification: (min, max, steps) ranges include both endpoints."""

    p0_range: tuple[float, float, int]
    eta_range: tuple[float, float, int]
    env: EnvironmentState
    include_oracle: bool = False
    oracle_cfg: SearchConfig | None = None

    def __post_init__(self):
        _check_range("p0_range", self.p0_range)
        _check_range("eta_range", self.eta_range)


@dataclass
class SweepRecord:
    """One grid cell of a sweep."""

    p0: float
    eta: float
    region_c: str
    region_q: str
    perr_c: float
    perr_q: float
    advantage: float
    oracle_perr_c: float | None = None
    oracle_perr_q: float | None = None


def _analytic_record(p0: float, eta: float, env: EnvironmentState) -> SweepRecord:
    s = Scenario(p0, eta, env)
    region_c, region_q = classify(s)
    perr_c = perr_conventional(s)
    perr_q = perr_quantum(s)
    return SweepRecord(
        p0=p0, eta=eta, region_c=region_c, region_q=region_q,
        perr_c=perr_c, perr_q=perr_q, advantage=perr_c - perr_q,
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRecord]:
    """Evaluate every grid cell; oracle columns are filled only when requested.

    The oracle reuses one search config (and hence one seed) per cell, so
    output is deterministic regardless of ``workers``. Requesting the oracle
    for environments beyond the quantum search cap is a configuration error.
    """
    if spec.include_oracle and spec.env.dim > MAX_QUANTUM_SEARCH_DIM:
        raise ValueError(
            f"oracle sweep needs environment dimension <= {MAX_QUANTUM_SEARCH_DIM}, "
            f"got {spec.env.dim}"
        )
    lo, hi, n = _check_range("p0_range", spec.p0_range)
    p0s = np.linspace(lo, hi, n)
    lo, hi, n = _check_range("eta_range", spec.eta_range)
    etas = np.linspace(lo, hi, n)

    records = [
        _analytic_record(float(p0), float(eta), spec.env)
        for p0 in p0s
        for eta in etas
    ]
    if not spec.include_oracle:
        return records

    cfg = spec.oracle_cfg if spec.oracle_cfg is not None else SearchConfig()

    def attach_oracle(record: SweepRecord) -> SweepRecord:
        s = Scenario(record.p0, record.eta, spec.env)
        record.oracle_perr_c = maximize_trace_norm(s, CONVENTIONAL, cfg).perr
        record.oracle_perr_q = maximize_trace_norm(s, QUANTUM, cfg).perr
        return record

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(attach_oracle, records))
    else:
        records = [attach_oracle(r) for r in records]
    return records


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def records_to_csv(records: list[SweepRecord], include_oracle: bool = False) -> str:
    """Render records as CSV text (12 significant digits, LF newlines)."""
    fields = CSV_ORACLE_FIELDS if include_oracle else CSV_FIELDS
    out = io.StringIO()
    out.write(",".join(fields) + "\n")
    for r in records:
        row = [_fmt(r.p0), _fmt(r.eta), r.region_c, r.region_q,
               _fmt(r.perr_c), _fmt(r.perr_q), _fmt(r.advantage)]
        if include_oracle:
            row += [_fmt(r.oracle_perr_c), _fmt(r.oracle_perr_q)]
        out.write(",".join(row) + "\n")
    return out.getvalue()


def write_csv(records: list[SweepRecord], path, include_oracle: bool = False) -> None:
    """Write the CSV dataset; identical specs yield byte-identical files."""
    text = records_to_csv(records, include_oracle)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


@dataclass
class BoundaryCurves:
    """Region-boundary polylines over a p0 grid.

    ``*_raw`` columns keep the unclamped formula values (which may be
    negative, exceed 1, or be infinite at degenerate priors); the plain
    columns are clamped to [0, 1] for presentation.
    """

    p0: np.ndarray
    eta_star_raw: np.ndarray
    eta_star: np.ndarray
    eta_c_raw: np.ndarray
    eta_c: np.ndarray
    eta_q_raw: np.ndarray
    eta_q: np.ndarray


def region_boundaries(env: EnvironmentState, p0_range: tuple) -> BoundaryCurves:
    """Boundary curves eta*, eta_c, eta_q as functions of p0 for a fixed environment."""
    lo, hi, n = _check_range("p0_range", p0_range)
    p0s = np.linspace(lo, hi, n)
    lam_d = env.lambda_min
    lam_h = env.lambda_harmonic
    star = np.array([eta_star(p0, 1.0 - p0) for p0 in p0s])
    etac = np.array([eta_guess_absent(p0, 1.0 - p0, lam_d) for p0 in p0s])
    etaq = np.array([eta_guess_absent(p0, 1.0 - p0, lam_h) for p0 in p0s])
    return BoundaryCurves(
        p0=p0s,
        eta_star_raw=star, eta_star=np.clip(star, 0.0, 1.0),
        eta_c_raw=etac, eta_c=np.clip(etac, 0.0, 1.0),
        eta_q_raw=etaq, eta_q=np.clip(etaq, 0.0, 1.0),
    )
