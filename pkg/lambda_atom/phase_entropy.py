"""
Two-mode phase distribution and number/phase Shannon entropies
"""
import logging
import math

import numpy as np
from scipy import special

from .errors import ResolutionError
from .field_state import number_distribution
from .models import EntropyRecord, JointState, PhaseGrid

logger = logging.getLogger('lambda_atom.phase')

BOUND_TOLERANCE = 1e-4
LN_2PI = math.log(2.0 * math.pi)


def _window_phase(size: int, theta0: float) -> np.ndarray:
    return np.exp(-1j * np.arange(size) * theta0)


def phase_distribution(state: JointState, theta0: float = -math.pi, m_pts: int = 128) -> PhaseGrid:
    """
    P(theta1, theta2) = 1/(4 pi^2) sum_k |sum psi_k(m1,m2) e^{-i m1 theta1 - i m2 theta2}|^2
    on the mesh theta_i = theta0 + 2 pi i / m_pts. Each branch sum is a
    zero-padded 2-D FFT of the amplitude grid shifted to the window start.
    """
    required = 2 * (state.n_max + 1)
    if m_pts < required:
        raise ResolutionError(f"m_pts={m_pts} is below the Nyquist bound {required}",
                              {"m_pts": m_pts, "required": required, "n_max": state.n_max})

    shift = _window_phase(state.grid_size, theta0)
    window = np.outer(shift, shift)
    values = np.zeros((m_pts, m_pts))
    for psi in state.branches:
        values += np.abs(np.fft.fft2(psi * window, s=(m_pts, m_pts))) ** 2
    return PhaseGrid(theta0=theta0, m_pts=m_pts, values=values / (4.0 * np.pi ** 2))


def single_mode_phase_distribution(weights: np.ndarray, theta0: float = -math.pi, m_pts: int = 128) -> np.ndarray:
    """Single-mode density (1/2 pi) |sum q_n e^{-i n theta}|^2 on the same mesh"""
    q = np.asarray(weights, dtype=complex)
    if m_pts < q.size:
        raise ResolutionError(f"m_pts={m_pts} cannot resolve {q.size} Fock amplitudes",
                              {"m_pts": m_pts, "required": q.size})
    return np.abs(np.fft.fft(q * _window_phase(q.size, theta0), n=m_pts)) ** 2 / (2.0 * np.pi)


def _shannon(p: np.ndarray) -> float:
    return float(special.entr(p).sum())


def number_entropy(state: JointState) -> float:
    """R_n = -sum P_n ln P_n over the joint Fock grid"""
    return _shannon(number_distribution(state))


def phase_entropy(grid: PhaseGrid) -> float:
    """R_theta by the periodic rectangle rule"""
    return _shannon(grid.values) * grid.cell_area


def entropies(state: JointState, grid: PhaseGrid) -> EntropyRecord:
    R_n = number_entropy(state)
    R_theta = phase_entropy(grid)
    total = R_n + R_theta
    if total < LN_2PI - BOUND_TOLERANCE:
        logger.warning(f"Entropic bound violated at t={state.t}: "
                       f"R_n + R_theta = {total:.6f} < ln 2pi = {LN_2PI:.6f}")
    elif total < 2.0 * LN_2PI:
        logger.debug(f"R_n + R_theta = {total:.6f} below 2 ln 2pi at t={state.t}")

    norm = math.sqrt(2.0 * math.pi)
    return EntropyRecord(
        R_n=R_n,
        R_theta=R_theta,
        S_n=math.exp(R_n) / norm - 1.0,
        S_theta=math.exp(R_theta) / norm - 1.0,
    )
