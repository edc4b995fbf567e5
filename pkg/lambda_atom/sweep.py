"""
Time sweeps: indicator series over scaled time written as CSV
"""
import csv
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, List, Optional

import numpy as np

from .errors import CSIUndefined, NumericalError, OutputError, QUndefined
from .field_state import TRUNCATION_TOLERANCE, assemble_state
from .model_core import BlockTable, solve_blocks
from .models import ModelConfig, ObservableRecord, ObservableSeries, SweepSpec
from .observables import (
    csi_parameter, direct_squeezing, mandel_q, moments, sum_squeezing, two_mode_squeezing,
)
from .oracle import verify_against_oracle
from .phase_entropy import entropies, phase_distribution
from .presets import reduced_config

logger = logging.getLogger('lambda_atom.sweep')

CROSS_CHECK_TOLERANCE = 1e-6
SNAPSHOT_TOLERANCE = 1e-6
VERIFY_TAUS = tuple(float(t) for t in range(1, 11))


def format_value(value: float) -> str:
    """Shortest round-trip decimal; undefined values as nan"""
    return repr(float(value))


def evaluate_sample(cfg: ModelConfig, tau: float, table: Optional[BlockTable] = None,
                    m_pts: int = 128, theta0: float = -math.pi,
                    cross_check: bool = False,
                    trunc_tol: float = TRUNCATION_TOLERANCE) -> ObservableRecord:
    """Every indicator at one scaled time tau = lambda1 t"""
    try:
        state = assemble_state(cfg, tau / cfg.lambda1, table, trunc_tol)
        record = entropies(state, phase_distribution(state, theta0, m_pts))
        mom = moments(state)
        s_x1, s_x2 = two_mode_squeezing(mom)
        s_y1, s_y2 = sum_squeezing(mom)
        if cross_check:
            _cross_check(state, tau, (s_x1, s_x2, s_y1, s_y2))
    except NumericalError as e:
        raise e.annotate(tau=tau)

    q = []
    for mode in (1, 2):
        try:
            q.append(mandel_q(mom, mode))
        except QUndefined:
            logger.warning(f"Mandel Q of mode {mode} undefined at tau={tau}")
            q.append(math.nan)
    try:
        i0 = csi_parameter(mom)
    except CSIUndefined:
        logger.warning(f"CSI parameter undefined at tau={tau}")
        i0 = math.nan

    return ObservableRecord(
        tau=float(tau),
        S_theta=record.S_theta, S_n=record.S_n,
        R_n=record.R_n, R_theta=record.R_theta,
        Q1=q[0], Q2=q[1], I0=i0,
        S_X1=s_x1, S_X2=s_x2, S_Y1=s_y1, S_Y2=s_y2,
        n1_mean=mom.n1, n2_mean=mom.n2,
        norm_err=abs(state.norm() - 1.0),
    )


def _cross_check(state, tau: float, from_moments) -> None:
    direct = direct_squeezing(state)
    gap = max(abs(a - b) for a, b in zip(from_moments, direct))
    if gap > CROSS_CHECK_TOLERANCE:
        logger.warning(f"Squeezing moments disagree with direct variances by {gap:.2e} at tau={tau}")


def write_series(path: Path, records: Iterable[ObservableRecord], columns) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(columns)
            for record in records:
                writer.writerow([format_value(v) for v in record.to_row(columns)])
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e.strerror or e}", {"path": str(path)})


def run_verification(spec: SweepSpec, oracle_dt: float = 1e-3):
    """Reduced-scale oracle comparison; raises VerificationError on failure"""
    cfg = reduced_config(spec.config)
    logger.info(f"Verifying closed form against RK4 oracle (n_max={cfg.n_max}, dt={oracle_dt})")
    return verify_against_oracle(cfg, VERIFY_TAUS, dt=oracle_dt, strict=True)


def run_sweep(spec: SweepSpec, table: Optional[BlockTable] = None,
              oracle_dt: float = 1e-3) -> ObservableSeries:
    """Evaluate every tau sample concurrently and write the rows in tau order"""
    start = time.time()
    label = spec.preset or "custom"
    logger.info(f"Sweep '{label}': tau in [{spec.tau_start}, {spec.tau_end}], "
                f"{spec.tau_steps} samples, n_max={spec.config.n_max}")

    if spec.verify:
        run_verification(spec, oracle_dt)

    table = solve_blocks(spec.config, table)
    taus = spec.taus()

    def sample(tau: float) -> ObservableRecord:
        return evaluate_sample(spec.config, float(tau), table, spec.m_pts, spec.theta0,
                               cross_check=spec.verify, trunc_tol=spec.trunc_tol)

    with ThreadPoolExecutor(max_workers=spec.workers) as executor:
        records: List[ObservableRecord] = list(executor.map(sample, taus))

    write_series(spec.out, records, spec.columns)
    series = ObservableSeries(records=records, columns=spec.columns, path=spec.out)

    if spec.phase_snapshot is not None:
        dump_phase_snapshot(spec, spec.phase_snapshot, table=table)

    logger.info(f"Sweep '{label}' wrote {len(records)} rows to {spec.out} "
                f"in {time.time() - start:.2f}s")
    return series


def snapshot_path(spec: SweepSpec, tau: float) -> Path:
    return spec.out.with_name(f"{spec.out.stem}_phase_tau{tau:g}.csv")


def dump_phase_snapshot(spec: SweepSpec, tau: float, path: Optional[Path] = None,
                        table: Optional[BlockTable] = None) -> Path:
    """Write (theta1, theta2, P) rows of the phase distribution at tau"""
    path = path or snapshot_path(spec, tau)
    try:
        state = assemble_state(spec.config, tau / spec.config.lambda1, table, spec.trunc_tol)
        grid = phase_distribution(state, spec.theta0, spec.m_pts)
    except NumericalError as e:
        raise e.annotate(tau=tau)

    integral = grid.integral()
    if abs(integral - 1.0) > SNAPSHOT_TOLERANCE:
        logger.warning(f"Phase distribution at tau={tau} integrates to {integral:.9f}")

    thetas = grid.thetas
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["theta1", "theta2", "P_theta"])
            for i, theta1 in enumerate(thetas):
                for j, theta2 in enumerate(thetas):
                    writer.writerow([format_value(theta1), format_value(theta2),
                                     format_value(grid.values[i, j])])
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e.strerror or e}", {"path": str(path)})

    peak = np.unravel_index(int(np.argmax(grid.values)), grid.values.shape)
    logger.info(f"Phase snapshot at tau={tau} written to {path} "
                f"(peak at theta=({thetas[peak[0]]:.4f}, {thetas[peak[1]]:.4f}))")
    return path
