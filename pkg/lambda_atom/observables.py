"""
Field moments and nonclassicality indicators

Expectation values of the reduced field state are sums of branch
expectations <psi_k|O|psi_k>; the reduced density matrix is never built.
"""
import logging
from typing import Tuple

import numpy as np

from .errors import CSIUndefined, QUndefined
from .models import JointState, MomentSet

logger = logging.getLogger('lambda_atom.observables')

Q_FLOOR = 1e-12
CSI_FLOOR = 1e-12


def _ladder_factors(size: int) -> Tuple[np.ndarray, np.ndarray]:
    """sqrt(m+1) for m=0..size-2 and sqrt((m+1)(m+2)) for m=0..size-3"""
    m = np.arange(size, dtype=float)
    return np.sqrt(m[1:]), np.sqrt(m[1:-1] * m[2:])


def moments(state: JointState) -> MomentSet:
    """All first- and second-order moments the indicators need"""
    size = state.grid_size
    m = np.arange(size, dtype=float)
    one, two = _ladder_factors(size)
    m1, m2 = m[:, None], m[None, :]

    totals = dict.fromkeys(("m10", "m01", "m20", "m02", "m11", "c11", "g22"), 0j)
    counts = dict.fromkeys(("n1", "n2", "n1sq", "n2sq", "nn"), 0.0)
    joint = np.zeros((size, size))

    for psi in state.branches:
        p = np.abs(psi) ** 2
        joint += p
        counts["n1"] += np.sum(m1 * p)
        counts["n2"] += np.sum(m2 * p)
        counts["n1sq"] += np.sum(m1 * (m1 - 1) * p)
        counts["n2sq"] += np.sum(m2 * (m2 - 1) * p)
        counts["nn"] += np.sum(m1 * m2 * p)

        conj = psi.conj()
        totals["m10"] += np.sum(conj[:-1, :] * one[:, None] * psi[1:, :])
        totals["m01"] += np.sum(conj[:, :-1] * one[None, :] * psi[:, 1:])
        totals["m20"] += np.sum(conj[:-2, :] * two[:, None] * psi[2:, :])
        totals["m02"] += np.sum(conj[:, :-2] * two[None, :] * psi[:, 2:])
        totals["m11"] += np.sum(conj[:-1, :-1] * np.outer(one, one) * psi[1:, 1:])
        # <a1^dag a2>: (m1, m2) <- (m1-1, m2+1)
        totals["c11"] += np.sum(conj[1:, :-1] * np.outer(one, one) * psi[:-1, 1:])
        totals["g22"] += np.sum(conj[:-2, :-2] * np.outer(two, two) * psi[2:, 2:])

    var_n1 = _central_variance(m, joint.sum(axis=1))
    var_n2 = _central_variance(m, joint.sum(axis=0))

    return MomentSet(
        m10=complex(totals["m10"]), m01=complex(totals["m01"]),
        m20=complex(totals["m20"]), m02=complex(totals["m02"]),
        m11=complex(totals["m11"]), c11=complex(totals["c11"]),
        n1=float(counts["n1"]), n2=float(counts["n2"]),
        n1sq=float(counts["n1sq"]), n2sq=float(counts["n2sq"]),
        nn=float(counts["nn"]), g22=complex(totals["g22"]),
        var_n1=var_n1, var_n2=var_n2,
    )


def _central_variance(m: np.ndarray, p: np.ndarray) -> float:
    total = float(np.sum(p))
    if total <= 0.0:
        return 0.0
    mean = float(np.sum(m * p)) / total
    return float(np.sum((m - mean) ** 2 * p))


def mandel_q(mom: MomentSet, mode: int = 1) -> float:
    """
    Q = (<(dn)^2> - <n>) / <n>. The variance is the central second moment of
    the marginal, equal to <a^dag^2 a^2> + <n> - <n>^2 without the cancellation.
    """
    if mode == 1:
        mean, variance = mom.n1, mom.var_n1
    elif mode == 2:
        mean, variance = mom.n2, mom.var_n2
    else:
        raise ValueError("mode must be 1 or 2")
    if mean <= Q_FLOOR:
        raise QUndefined(f"Mean photon number of mode {mode} is below {Q_FLOOR}",
                         {"mode": mode, "mean": mean})
    return (variance - mean) / mean


def csi_parameter(mom: MomentSet) -> float:
    """I0 = sqrt(<a1^dag2 a1^2><a2^dag2 a2^2>) / |<n1 n2>| - 1; negative is nonclassical"""
    if abs(mom.nn) <= CSI_FLOOR:
        raise CSIUndefined(f"<n1 n2> is below {CSI_FLOOR}", {"nn": mom.nn})
    return float(np.sqrt(max(mom.n1sq, 0.0) * max(mom.n2sq, 0.0)) / abs(mom.nn) - 1.0)


def two_mode_squeezing(mom: MomentSet) -> Tuple[float, float]:
    """(S_X1, S_X2); squeezing when -1 < S < 0"""
    mean_sum = mom.m10 + mom.m01
    s_x1 = ((mom.m20 + mom.m02 + 2 * mom.c11 + 2 * mom.m11).real
            + mom.n1 + mom.n2 - 2.0 * mean_sum.real ** 2)
    s_x2 = ((2 * mom.c11 - 2 * mom.m11 - mom.m20 - mom.m02).real
            + mom.n1 + mom.n2 - 2.0 * mean_sum.imag ** 2)
    return float(s_x1), float(s_x2)


def sum_squeezing(mom: MomentSet) -> Tuple[float, float]:
    """(S_Y1, S_Y2) normalized by <n1 + n2 + 1>; squeezing when S < 0"""
    denominator = mom.n1 + mom.n2 + 1.0
    s_y1 = (2 * mom.g22.real + 2 * mom.nn - 4 * mom.m11.real ** 2) / denominator
    s_y2 = (2 * mom.nn - 2 * mom.g22.real - 4 * mom.m11.imag ** 2) / denominator
    return float(s_y1), float(s_y2)


# Direct operator application, used to cross-check the moment formulas

def _lower(phi: np.ndarray, axis: int) -> np.ndarray:
    factors = np.sqrt(np.arange(1, phi.shape[axis], dtype=float))
    out = np.zeros_like(phi)
    if axis == 0:
        out[:-1, :] = factors[:, None] * phi[1:, :]
    else:
        out[:, :-1] = factors[None, :] * phi[:, 1:]
    return out


def _raise(phi: np.ndarray, axis: int) -> np.ndarray:
    factors = np.sqrt(np.arange(1, phi.shape[axis], dtype=float))
    out = np.zeros_like(phi)
    if axis == 0:
        out[1:, :] = factors[:, None] * phi[:-1, :]
    else:
        out[:, 1:] = factors[None, :] * phi[:, :-1]
    return out


def _variance(state: JointState, apply) -> float:
    mean = 0.0
    square = 0.0
    for psi in state.branches:
        # one padding row/column keeps every raised component on the grid
        phi = np.pad(psi, ((0, 1), (0, 1)))
        image = apply(phi)
        mean += float(np.vdot(phi, image).real)
        square += float(np.vdot(image, image).real)
    return square - mean ** 2


def direct_squeezing(state: JointState) -> Tuple[float, float, float, float]:
    """
    (S_X1, S_X2, S_Y1, S_Y2) from 4 Var(X) - 1 and 4 Var(Y) / <n1+n2+1> - 1
    with the quadrature operators applied to the branch grids.
    """
    def x1(phi):
        return (_lower(phi, 0) + _raise(phi, 0) + _lower(phi, 1) + _raise(phi, 1)) / (2 * np.sqrt(2))

    def x2(phi):
        return (_lower(phi, 0) - _raise(phi, 0) + _lower(phi, 1) - _raise(phi, 1)) / (2j * np.sqrt(2))

    def y1(phi):
        return (_lower(_lower(phi, 1), 0) + _raise(_raise(phi, 1), 0)) / 2

    def y2(phi):
        return (_lower(_lower(phi, 1), 0) - _raise(_raise(phi, 1), 0)) / 2j

    m = np.arange(state.grid_size, dtype=float)
    p = sum(np.abs(psi) ** 2 for psi in state.branches)
    total = float(np.sum(p) + np.sum(m[:, None] * p) + np.sum(m[None, :] * p))

    s_x1 = 4 * _variance(state, x1) - 1
    s_x2 = 4 * _variance(state, x2) - 1
    s_y1 = 4 * _variance(state, y1) / total - 1
    s_y2 = 4 * _variance(state, y2) / total - 1
    return s_x1, s_x2, s_y1, s_y2
