"""
Closed-form solution of the Lambda-atom / two-mode field dynamics

Each Fock block {|1,n1,n2>, |2,n1+1,n2>, |3,n1,n2+1>} evolves independently;
its amplitudes are sums of three exponentials whose frequencies are the real
roots of a cubic.
"""
import logging
import math
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .errors import DegenerateCubicError, DegenerateRootsError
from .models import BlockSolution, ModelConfig

logger = logging.getLogger('lambda_atom.model')

# Roots closer than this (relative to the largest root) are treated as degenerate
ROOT_DEGENERACY_REL = 1e-8
ROOT_DEGENERACY_ABS = 1e-12
# Relative size of the x3 nudge applied to degenerate blocks
REGULARIZATION_SHIFT = 1e-10
# How far past [-1, 1] the arccos argument may drift before it is reported
ACOS_CLAMP_SLACK = 1e-10
# Beyond this the cubic genuinely has complex roots
ACOS_COMPLEX_LIMIT = 1e-6


class BlockConstants(NamedTuple):
    VA: float
    VB: float
    VC: float
    kappa1: float
    kappa2: float
    delta2: float
    delta3: float


def kerr_shift(n1: int, n2: int, cfg: ModelConfig) -> float:
    """V(n1, n2) = chi * n1 g1(n1)^2 * n2 g2(n2)^2"""
    return cfg.chi * cfg.g1.kerr_factor(n1) * cfg.g2.kerr_factor(n2)


def block_constants(n1: int, n2: int, cfg: ModelConfig) -> BlockConstants:
    """Kerr shifts, effective couplings and detunings of block (n1, n2)"""
    return BlockConstants(
        VA=kerr_shift(n1, n2, cfg),
        VB=kerr_shift(n1 + 1, n2, cfg),
        VC=kerr_shift(n1, n2 + 1, cfg),
        kappa1=cfg.lambda1 * cfg.f1.ladder(n1 + 1),
        kappa2=cfg.lambda2 * cfg.f2.ladder(n2 + 1),
        delta2=cfg.delta2,
        delta3=cfg.delta3,
    )


def cubic_coefficients(c: BlockConstants) -> Tuple[float, float, float]:
    """Coefficients of mu^3 + x1 mu^2 + x2 mu + x3 = 0 for one block"""
    shifted_c = c.VC + c.delta3 - c.delta2
    x1 = c.VA + c.VB + c.VC + c.delta3 - 2.0 * c.delta2
    x2 = ((c.VA + c.VB - c.delta2) * shifted_c + c.VB * (c.VA - c.delta2)
          - c.kappa1 ** 2 - c.kappa2 ** 2)
    x3 = (c.VB * ((c.VA - c.delta2) * shifted_c - c.kappa2 ** 2)
          - c.kappa1 ** 2 * shifted_c)
    return x1, x2, x3


def _cubic(mu: float, x1: float, x2: float, x3: float) -> float:
    return ((mu + x1) * mu + x2) * mu + x3


def _polish(mu: float, x1: float, x2: float, x3: float) -> float:
    """One Newton step, kept only if it lowers the residual"""
    slope = (3.0 * mu + 2.0 * x1) * mu + x2
    if slope == 0.0:
        return mu
    candidate = mu - _cubic(mu, x1, x2, x3) / slope
    if abs(_cubic(candidate, x1, x2, x3)) < abs(_cubic(mu, x1, x2, x3)):
        return candidate
    return mu


def cardano_roots(x1: float, x2: float, x3: float) -> Tuple[float, float, float]:
    """
    Three real roots of mu^3 + x1 mu^2 + x2 mu + x3 by the trigonometric
    formula, in ascending order.
    """
    scale = max(1.0, abs(x1), math.sqrt(abs(x2)), abs(x3) ** (1.0 / 3.0))
    spread = x1 * x1 - 3.0 * x2
    if spread < -1e-12 * scale ** 2:
        raise DegenerateCubicError("Cubic has complex roots (x1^2 - 3 x2 < 0)",
                                   {"x1": x1, "x2": x2, "x3": x3})
    if spread <= 0.0:
        root = -x1 / 3.0
        return root, root, root

    arg = (9.0 * x1 * x2 - 2.0 * x1 ** 3 - 27.0 * x3) / (2.0 * spread ** 1.5)
    excess = abs(arg) - 1.0
    if excess > ACOS_COMPLEX_LIMIT:
        raise DegenerateCubicError("Cubic has complex roots (arccos argument out of range)",
                                   {"x1": x1, "x2": x2, "x3": x3, "argument": arg})
    if excess > ACOS_CLAMP_SLACK:
        logger.warning(f"arccos argument {arg:.3e} clamped by {excess:.2e}")
    theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0

    radius = 2.0 / 3.0 * math.sqrt(spread)
    roots = [
        _polish(-x1 / 3.0 + radius * math.cos(theta + 2.0 * math.pi * j / 3.0), x1, x2, x3)
        for j in range(3)
    ]
    return tuple(sorted(roots))


def _check_distinct(mu: Tuple[float, float, float]) -> None:
    largest = max(abs(m) for m in mu)
    gap = min(abs(mu[1] - mu[0]), abs(mu[2] - mu[1]), abs(mu[2] - mu[0]))
    tolerance = max(ROOT_DEGENERACY_REL * largest, ROOT_DEGENERACY_ABS)
    if gap < tolerance:
        raise DegenerateRootsError("Cubic roots coincide within tolerance",
                                   {"mu": list(mu), "gap": gap, "tolerance": tolerance})


def _weights(mu: Tuple[float, float, float], VA: float, VB: float, delta2: float) -> Tuple[float, float, float]:
    _check_distinct(mu)
    b = []
    for j in range(3):
        k, l = [i for i in range(3) if i != j]
        numerator = mu[k] + mu[l] + VA + VB - delta2
        b.append(numerator / ((mu[j] - mu[k]) * (mu[j] - mu[l])))
    return tuple(b)


def block_weights(sol: BlockSolution) -> Tuple[float, float, float]:
    """Weights b_j fixed by the excited-atom initial condition A(0)=1, B(0)=C(0)=0"""
    return _weights(sol.mu, sol.VA, sol.VB, sol.delta2)


def solve_block(n1: int, n2: int, cfg: ModelConfig) -> BlockSolution:
    """Roots and weights of one block, regularizing degenerate roots"""
    consts = block_constants(n1, n2, cfg)
    x1, x2, x3 = cubic_coefficients(consts)
    mu = cardano_roots(x1, x2, x3)
    regularized = False
    try:
        b = _weights(mu, consts.VA, consts.VB, consts.delta2)
    except DegenerateRootsError as e:
        scale = max(1.0, abs(x1), math.sqrt(abs(x2)), abs(x3) ** (1.0 / 3.0)) ** 3
        logger.warning(f"Block ({n1}, {n2}): degenerate roots {e.details.get('mu')}, "
                       f"shifting x3 by {REGULARIZATION_SHIFT * scale:.1e}")
        x3 += REGULARIZATION_SHIFT * scale
        mu = cardano_roots(x1, x2, x3)
        try:
            b = _weights(mu, consts.VA, consts.VB, consts.delta2)
        except DegenerateRootsError as again:
            raise again.annotate(n1=n1, n2=n2)
        regularized = True
    return BlockSolution(
        n1=n1, n2=n2, mu=mu, b=b,
        VA=consts.VA, VB=consts.VB, VC=consts.VC,
        kappa1=consts.kappa1, kappa2=consts.kappa2,
        x1=x1, x2=x2, x3=x3,
        delta2=consts.delta2, delta3=consts.delta3,
        regularized=regularized,
    )


def block_amplitudes(sol: BlockSolution, t: float) -> Tuple[complex, complex, complex]:
    """A(n1,n2,t), B(n1+1,n2,t), C(n1,n2+1,t) of one block"""
    mu = np.asarray(sol.mu)
    b = np.asarray(block_weights(sol))
    phases = np.exp(1j * mu * t)
    A = -np.exp(-1j * sol.delta2 * t) * np.sum((mu + sol.VB) * b * phases)
    B = sol.kappa1 * np.sum(b * phases)
    c_coeff = (mu + sol.VB) * (mu + sol.VA - sol.delta2) - sol.kappa1 ** 2
    C = np.exp(1j * (sol.delta3 - sol.delta2) * t) / sol.kappa2 * np.sum(c_coeff * b * phases)
    return complex(A), complex(B), complex(C)


class BlockTable:
    """
    Solutions of every block (n1, n2) in [0, n_max]^2 for one config,
    stored as arrays so amplitudes at a time t are a single vectorized pass.
    Read-only after construction; safe to share between threads.
    """

    def __init__(self, cfg: ModelConfig, solutions):
        size = cfg.n_max + 1
        self.cfg = cfg
        self.solutions = solutions
        self.mu = np.empty((size, size, 3))
        self.b = np.empty((size, size, 3))
        self.VA = np.empty((size, size))
        self.VB = np.empty((size, size))
        self.kappa1 = np.empty((size, size))
        self.kappa2 = np.empty((size, size))
        for sol in solutions:
            i, j = sol.n1, sol.n2
            self.mu[i, j] = sol.mu
            self.b[i, j] = sol.b
            self.VA[i, j] = sol.VA
            self.VB[i, j] = sol.VB
            self.kappa1[i, j] = sol.kappa1
            self.kappa2[i, j] = sol.kappa2
        for array in (self.mu, self.b, self.VA, self.VB, self.kappa1, self.kappa2):
            array.setflags(write=False)
        self.regularized = sum(1 for sol in solutions if sol.regularized)

    @classmethod
    def from_config(cls, cfg: ModelConfig) -> "BlockTable":
        solutions = [solve_block(n1, n2, cfg)
                     for n1 in range(cfg.n_max + 1)
                     for n2 in range(cfg.n_max + 1)]
        table = cls(cfg, solutions)
        if table.regularized:
            logger.info(f"{table.regularized} of {len(solutions)} blocks needed root regularization")
        return table

    def solution(self, n1: int, n2: int) -> BlockSolution:
        return self.solutions[n1 * (self.cfg.n_max + 1) + n2]

    def amplitudes(self, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Grids A(n1,n2,t), B(n1+1,n2,t), C(n1,n2+1,t) indexed by block (n1, n2)"""
        d2, d3 = self.cfg.delta2, self.cfg.delta3
        phases = np.exp(1j * self.mu * t)
        weighted = self.b * phases
        VB = self.VB[..., None]
        A = -np.exp(-1j * d2 * t) * np.sum((self.mu + VB) * weighted, axis=-1)
        B = self.kappa1 * np.sum(weighted, axis=-1)
        c_coeff = (self.mu + VB) * (self.mu + self.VA[..., None] - d2) - self.kappa1[..., None] ** 2
        C = np.exp(1j * (d3 - d2) * t) / self.kappa2 * np.sum(c_coeff * weighted, axis=-1)
        return A, B, C

    def max_root_spread(self) -> float:
        """Largest mu_max - mu_min over all blocks (fastest beat frequency)"""
        return float(np.max(self.mu[..., 2] - self.mu[..., 0]))


def solve_blocks(cfg: ModelConfig, table: Optional[BlockTable] = None) -> BlockTable:
    return table if table is not None and table.cfg == cfg else BlockTable.from_config(cfg)
