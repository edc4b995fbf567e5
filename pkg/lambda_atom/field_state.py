"""
Initial field amplitudes and assembly of the joint atom-field state
"""
import logging
from typing import Optional

import numpy as np

from .errors import TruncationError
from .model_core import BlockTable, solve_blocks
from .models import JointState, ModelConfig

logger = logging.getLogger('lambda_atom.field')

TRUNCATION_TOLERANCE = 1e-10
NORM_TOLERANCE = 1e-9


def coherent_weights(alpha: complex, n_max: int, trunc_tol: float = TRUNCATION_TOLERANCE) -> np.ndarray:
    """
    q_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!) for n = 0..n_max via the
    recurrence q_{n+1} = q_n alpha / sqrt(n+1).
    """
    q = np.empty(n_max + 1, dtype=complex)
    q[0] = np.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(n_max):
        q[n + 1] = q[n] * alpha / np.sqrt(n + 1)
    tail = 1.0 - float(np.sum(np.abs(q) ** 2))
    if tail > trunc_tol:
        raise TruncationError(f"Truncation n_max={n_max} drops {tail:.2e} of the coherent state",
                              {"alpha": [complex(alpha).real, complex(alpha).imag],
                               "n_max": n_max, "tail": tail, "tolerance": trunc_tol})
    return q


def minimal_truncation(alpha: complex, trunc_tol: float = TRUNCATION_TOLERANCE, limit: int = 2000) -> int:
    """Smallest n_max whose coherent tail mass is below trunc_tol"""
    weight = np.exp(-abs(alpha) ** 2)
    total = weight
    n = 0
    while 1.0 - total > trunc_tol:
        n += 1
        if n > limit:
            raise TruncationError("No truncation below the limit reaches the tolerance",
                                  {"limit": limit, "tolerance": trunc_tol})
        weight *= abs(alpha) ** 2 / n
        total += weight
    return max(n, 1)


def initial_weights(cfg: ModelConfig, mode: int, trunc_tol: float = TRUNCATION_TOLERANCE) -> np.ndarray:
    """Explicit weights from the config when given, coherent amplitudes otherwise"""
    explicit = cfg.weights1 if mode == 1 else cfg.weights2
    if explicit is None:
        alpha = cfg.alpha1 if mode == 1 else cfg.alpha2
        return coherent_weights(complex(alpha), cfg.n_max, trunc_tol)
    q = np.asarray(explicit, dtype=complex)
    deficit = abs(1.0 - float(np.sum(np.abs(q) ** 2)))
    if deficit > trunc_tol:
        raise TruncationError(f"Explicit weights for mode {mode} are not normalized",
                              {"deficit": deficit, "tolerance": trunc_tol})
    return q


def free_phases(cfg: ModelConfig, t: float):
    """
    exp(-i gamma_k t) on the joint grid. In grid coordinates (m1, m2) every
    branch has gamma_k = omega_k + m1 Omega1 + m2 Omega2.
    """
    m = np.arange(cfg.grid_size)
    field_energy = m[:, None] * cfg.Omega1 + m[None, :] * cfg.Omega2
    return tuple(np.exp(-1j * (omega + field_energy) * t)
                 for omega in (cfg.omega1, cfg.omega2, cfg.omega3))


def assemble_state(cfg: ModelConfig, t: float, table: Optional[BlockTable] = None,
                   trunc_tol: float = TRUNCATION_TOLERANCE) -> JointState:
    """Joint state at time t from the closed-form block amplitudes"""
    table = solve_blocks(cfg, table)
    q1 = initial_weights(cfg, 1, trunc_tol)
    q2 = initial_weights(cfg, 2, trunc_tol)
    weights = np.outer(q1, q2)
    A, B, C = table.amplitudes(t)

    size = cfg.grid_size
    psi1 = np.zeros((size, size), dtype=complex)
    psi2 = np.zeros((size, size), dtype=complex)
    psi3 = np.zeros((size, size), dtype=complex)
    psi1[:-1, :-1] = weights * A
    psi2[1:, :-1] = weights * B
    psi3[:-1, 1:] = weights * C

    if cfg.include_free_phases:
        phase1, phase2, phase3 = free_phases(cfg, t)
        psi1 *= phase1
        psi2 *= phase2
        psi3 *= phase3

    state = JointState(psi1, psi2, psi3, t)
    drift = abs(state.norm() - 1.0)
    if drift > NORM_TOLERANCE:
        logger.warning(f"Joint state norm off by {drift:.2e} at t={t}")
    return state


def number_distribution(state: JointState) -> np.ndarray:
    """Joint photon-number distribution P_n(m1, m2) of the reduced field state"""
    return sum(np.abs(psi) ** 2 for psi in state.branches)


def marginal_distributions(state: JointState):
    """Single-mode photon-number distributions (P_n1, P_n2)"""
    joint = number_distribution(state)
    return joint.sum(axis=1), joint.sum(axis=0)
