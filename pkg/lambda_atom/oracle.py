"""
Brute-force Schrodinger integration on the truncated atom + two-mode space

Matrix elements are derived here from the Hamiltonian directly, sharing only
ModelConfig with the closed-form path, so either path can catch a
transcription error in the other.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

from .errors import DimensionError, StepSizeError, VerificationError
from .field_state import TRUNCATION_TOLERANCE, assemble_state, initial_weights
from .model_core import solve_blocks
from .models import JointState, ModelConfig, Nonlinearity

logger = logging.getLogger('lambda_atom.oracle')

LEVELS = 3
NORM_DRIFT_LIMIT = 1e-8
STEP_BOUND = 0.01
VERIFY_TOLERANCE = 1e-6


@dataclass(frozen=True)
class SparseHamiltonian:
    """Hamiltonian in COO form over the basis index (level * K + m1) * K + m2"""
    dimension: int
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray

    def to_csr(self) -> csr_matrix:
        matrix = coo_matrix((self.values, (self.rows, self.cols)),
                            shape=(self.dimension, self.dimension), dtype=complex)
        return matrix.tocsr()

    def entries(self) -> List[Tuple[int, int, complex]]:
        return list(zip(self.rows.tolist(), self.cols.tolist(), self.values.tolist()))

    def is_hermitian(self) -> bool:
        """Every (r, c, v) has its exact partner (c, r, conj(v)); diagonal is real"""
        lookup = {(r, c): v for r, c, v in self.entries()}
        for (r, c), v in lookup.items():
            partner = lookup.get((c, r))
            if partner is None or partner != np.conj(v):
                return False
        return True

    def max_entry(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


def basis_index(level: int, m1: int, m2: int, size: int) -> int:
    """level in 0..2 for atomic levels |1>, |2>, |3>"""
    return (level * size + m1) * size + m2


def _ladder(nl: Nonlinearity, n: int) -> float:
    # sqrt(n) f(n), written out from f itself
    return 0.0 if n == 0 else math.sqrt(n) * float(nl.values(np.array([n]))[0])


def _occupation(nl: Nonlinearity, n: int) -> float:
    # n g(n)^2
    return 0.0 if n == 0 else n * float(nl.values(np.array([n]))[0]) ** 2


def build_hamiltonian(cfg: ModelConfig, include_coupling: bool = True) -> SparseHamiltonian:
    """
    H0 = sum_j omega_j |j><j| + Omega1 n1 + Omega2 n2, the cross-Kerr term
    chi n1 g1^2(n1) n2 g2^2(n2), and the Lambda couplings |2><1| a1^dag f1 and
    |3><1| a2^dag f2 with their conjugates. Couplings leaving the grid are dropped.
    """
    size = cfg.grid_size
    rows: List[int] = []
    cols: List[int] = []
    values: List[complex] = []

    def add(r: int, c: int, v: complex) -> None:
        rows.append(r)
        cols.append(c)
        values.append(v)

    kerr1 = [_occupation(cfg.g1, m) for m in range(size)]
    kerr2 = [_occupation(cfg.g2, m) for m in range(size)]
    for level, omega in enumerate((cfg.omega1, cfg.omega2, cfg.omega3)):
        for m1 in range(size):
            for m2 in range(size):
                energy = omega + m1 * cfg.Omega1 + m2 * cfg.Omega2 + cfg.chi * kerr1[m1] * kerr2[m2]
                if energy != 0.0:
                    idx = basis_index(level, m1, m2, size)
                    add(idx, idx, complex(energy))

    if include_coupling:
        for m1 in range(size):
            for m2 in range(size):
                ground = basis_index(0, m1, m2, size)
                if m1 + 1 < size:
                    g = cfg.lambda1 * _ladder(cfg.f1, m1 + 1)
                    target = basis_index(1, m1 + 1, m2, size)
                    add(target, ground, complex(g))
                    add(ground, target, complex(g))
                if m2 + 1 < size:
                    g = cfg.lambda2 * _ladder(cfg.f2, m2 + 1)
                    target = basis_index(2, m1, m2 + 1, size)
                    add(target, ground, complex(g))
                    add(ground, target, complex(g))

    return SparseHamiltonian(
        dimension=LEVELS * size * size,
        rows=np.asarray(rows, dtype=int),
        cols=np.asarray(cols, dtype=int),
        values=np.asarray(values, dtype=complex),
    )


def initial_vector(cfg: ModelConfig, trunc_tol: float = TRUNCATION_TOLERANCE) -> np.ndarray:
    """Atom in |1>, field in q1 x q2"""
    size = cfg.grid_size
    grid = np.zeros((LEVELS, size, size), dtype=complex)
    grid[0, :-1, :-1] = np.outer(initial_weights(cfg, 1, trunc_tol), initial_weights(cfg, 2, trunc_tol))
    return grid.ravel()


def to_joint_state(vector: np.ndarray, cfg: ModelConfig, t: float) -> JointState:
    size = cfg.grid_size
    if vector.shape != (LEVELS * size * size,):
        raise DimensionError(f"State vector of shape {vector.shape} does not match n_max={cfg.n_max}",
                             {"expected": LEVELS * size * size, "given": list(vector.shape)})
    grid = vector.reshape(LEVELS, size, size)
    return JointState(grid[0], grid[1], grid[2], t)


def reachable_support(cfg: ModelConfig) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Boolean masks of the branch cells a block-diagonal evolution can populate"""
    size = cfg.grid_size
    masks = [np.zeros((size, size), dtype=bool) for _ in range(LEVELS)]
    masks[0][:-1, :-1] = True
    masks[1][1:, :-1] = True
    masks[2][:-1, 1:] = True
    return tuple(masks)


def rk4_step(psi: np.ndarray, H: csr_matrix, dt: float) -> np.ndarray:
    """One classic Runge-Kutta step of d psi/dt = -i H psi"""
    def rhs(x):
        return -1j * (H @ x)

    dt2 = dt / 2.0
    k1 = rhs(psi)
    k2 = rhs(psi + k1 * dt2)
    k3 = rhs(psi + k2 * dt2)
    k4 = rhs(psi + k3 * dt)
    return psi + (k1 + 2 * k2 + 2 * k3 + k4) * dt / 6.0


def _check_step(hamiltonian: SparseHamiltonian, dt: float) -> None:
    bound = STEP_BOUND / hamiltonian.max_entry() if hamiltonian.max_entry() > 0 else math.inf
    if not 0 < dt <= bound:
        raise StepSizeError(f"dt={dt} exceeds the stability bound {bound:.3e}",
                            {"dt": dt, "bound": bound})


def trajectory(cfg: ModelConfig, times: Sequence[float], dt: float,
               include_coupling: bool = True) -> Iterator[JointState]:
    """
    JointStates at each of the ascending checkpoint times from a single RK4
    run. Each interval is split into equal steps no longer than dt.
    """
    hamiltonian = build_hamiltonian(cfg, include_coupling)
    _check_step(hamiltonian, dt)
    H = hamiltonian.to_csr()
    psi = initial_vector(cfg)
    start_norm = float(np.vdot(psi, psi).real)

    t = 0.0
    for target in times:
        if target < t:
            raise ValueError("Checkpoint times must be ascending and non-negative")
        steps = int(math.ceil((target - t) / dt - 1e-12)) if target > t else 0
        if steps:
            h = (target - t) / steps
            for _ in range(steps):
                psi = rk4_step(psi, H, h)
        t = target
        drift = abs(float(np.vdot(psi, psi).real) - start_norm)
        if drift > NORM_DRIFT_LIMIT:
            raise StepSizeError(f"Norm drifted by {drift:.2e} by t={t}",
                                {"t": t, "drift": drift, "dt": dt})
        yield to_joint_state(psi, cfg, t)


def integrate(cfg: ModelConfig, t_end: float, dt: float, include_coupling: bool = True) -> JointState:
    """State at t_end from RK4 integration in the lab picture"""
    return next(iter(trajectory(cfg, [t_end], dt, include_coupling)))


def energy(state: JointState, H: csr_matrix) -> float:
    vector = np.stack(state.branches).ravel()
    return float(np.vdot(vector, H @ vector).real)


@dataclass
class VerificationReport:
    """Closed-form vs oracle comparison over a set of checkpoints"""
    taus: List[float] = field(default_factory=list)
    deviations: List[float] = field(default_factory=list)
    norm_drift: float = 0.0
    energy_drift: float = 0.0
    tolerance: float = VERIFY_TOLERANCE

    @property
    def max_deviation(self) -> float:
        return max(self.deviations) if self.deviations else 0.0

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance

    def to_dict(self):
        return {
            "taus": self.taus,
            "deviations": self.deviations,
            "max_deviation": self.max_deviation,
            "norm_drift": self.norm_drift,
            "energy_drift": self.energy_drift,
            "passed": self.passed,
        }


def verify_against_oracle(cfg: ModelConfig, taus: Sequence[float], dt: float = 1e-3,
                          tolerance: float = VERIFY_TOLERANCE, strict: bool = False) -> VerificationReport:
    """
    Max-norm deviation between assemble_state and the RK4 state at each tau
    (t = tau / lambda1). Raises VerificationError when strict and the bound fails.
    """
    # the oracle runs in the lab picture, so compare against the state with free phases
    cfg = cfg.with_overrides(include_free_phases=True)
    table = solve_blocks(cfg)
    H = build_hamiltonian(cfg).to_csr()
    times = [tau / cfg.lambda1 for tau in taus]
    report = VerificationReport(tolerance=tolerance)
    start_energy = None

    for tau, numeric in zip(taus, trajectory(cfg, times, dt)):
        closed = assemble_state(cfg, numeric.t, table)
        deviation = max(float(np.max(np.abs(a - b))) for a, b in zip(closed.branches, numeric.branches))
        report.taus.append(float(tau))
        report.deviations.append(deviation)
        report.norm_drift = max(report.norm_drift, abs(numeric.norm() - 1.0))
        current = energy(numeric, H)
        if start_energy is None:
            start_energy = energy(assemble_state(cfg, 0.0, table), H)
        scale = max(abs(start_energy), 1.0)
        report.energy_drift = max(report.energy_drift, abs(current - start_energy) / scale)
        logger.debug(f"Oracle checkpoint tau={tau}: deviation {deviation:.3e}")

    verdict = "passed" if report.passed else "FAILED"
    logger.info(f"Oracle verification {verdict}: max deviation {report.max_deviation:.3e} "
                f"over {len(report.taus)} checkpoints (tolerance {tolerance:.0e})")
    if strict and not report.passed:
        worst = report.taus[int(np.argmax(report.deviations))]
        raise VerificationError("Closed-form state disagrees with the oracle",
                                {"max_deviation": report.max_deviation, "tau": worst,
                                 "tolerance": tolerance})
    return report
