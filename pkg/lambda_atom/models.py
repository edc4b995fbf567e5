"""
Domain models for the Lambda-atom two-mode cavity simulator
Defines parameter sets, per-block solutions, joint states and indicator records
"""
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import ConfigError


# Enums
class NonlinearityKind(Enum):
    """Available deformation functions f(n) / g(n)"""
    UNIT = "unit"
    HARMONIOUS = "harmonious"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Nonlinearity:
    """
    Deformation function of the ladder operators.

    Only the combinations sqrt(n) f(n) (ladder action) and n f(n)^2 (Kerr
    factor) are evaluated; both vanish at n = 0 for every kind, which keeps
    the harmonious f(n) = 1/sqrt(n) finite on the vacuum.
    """
    kind: NonlinearityKind = NonlinearityKind.UNIT
    table: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.kind is NonlinearityKind.CUSTOM:
            if not self.table:
                raise ConfigError("Custom nonlinearity requires a table of values f(0..n_max+1)")
        elif self.table is not None:
            raise ConfigError(f"Nonlinearity '{self.kind.value}' does not take a table")

    @classmethod
    def unit(cls) -> "Nonlinearity":
        return cls(NonlinearityKind.UNIT)

    @classmethod
    def harmonious(cls) -> "Nonlinearity":
        return cls(NonlinearityKind.HARMONIOUS)

    @classmethod
    def custom(cls, values) -> "Nonlinearity":
        return cls(NonlinearityKind.CUSTOM, tuple(float(v) for v in values))

    @classmethod
    def from_name(cls, name: str) -> "Nonlinearity":
        try:
            kind = NonlinearityKind(name.strip().lower())
        except ValueError:
            raise ConfigError(f"Unknown nonlinearity '{name}'",
                              {"allowed": [k.value for k in NonlinearityKind if k is not NonlinearityKind.CUSTOM]})
        if kind is NonlinearityKind.CUSTOM:
            raise ConfigError("Custom nonlinearities need a table; use Nonlinearity.custom()")
        return cls(kind)

    @property
    def name(self) -> str:
        return self.kind.value

    def _table_value(self, n: int) -> float:
        if n >= len(self.table):
            raise ConfigError(f"Custom nonlinearity table has no entry for n={n}",
                              {"table_length": len(self.table)})
        return self.table[n]

    def ladder(self, n: int) -> float:
        """sqrt(n) f(n), zero on the vacuum"""
        if n <= 0:
            return 0.0
        if self.kind is NonlinearityKind.UNIT:
            return math.sqrt(n)
        if self.kind is NonlinearityKind.HARMONIOUS:
            return 1.0
        return math.sqrt(n) * self._table_value(n)

    def kerr_factor(self, n: int) -> float:
        """n f(n)^2, zero on the vacuum"""
        if n <= 0:
            return 0.0
        if self.kind is NonlinearityKind.UNIT:
            return float(n)
        if self.kind is NonlinearityKind.HARMONIOUS:
            return 1.0
        return n * self._table_value(n) ** 2

    def values(self, n: np.ndarray) -> np.ndarray:
        """Raw f(n) for n >= 1 (undefined for the harmonious vacuum)"""
        n = np.asarray(n, dtype=float)
        if np.any(n < 1):
            raise ValueError("f(n) is only evaluated for n >= 1")
        if self.kind is NonlinearityKind.UNIT:
            return np.ones_like(n)
        if self.kind is NonlinearityKind.HARMONIOUS:
            return 1.0 / np.sqrt(n)
        idx = n.astype(int)
        if idx.max() >= len(self.table):
            raise ConfigError("Custom nonlinearity table too short", {"table_length": len(self.table)})
        return np.asarray(self.table, dtype=float)[idx]


# Data Models
@dataclass(frozen=True)
class ModelConfig:
    """
    Physical parameter set (all frequencies in rad/time).

    Detunings are derived from the stored frequencies, never stored:
    delta2 = omega2 - omega1 + Omega1, delta3 = omega3 - omega1 + Omega2.
    """
    lambda1: float = 1.0
    lambda2: float = 1.0
    chi: float = 0.0
    omega1: float = 0.0
    omega2: float = 0.0
    omega3: float = 0.0
    Omega1: float = 0.0
    Omega2: float = 0.0
    f1: Nonlinearity = field(default_factory=Nonlinearity.unit)
    f2: Nonlinearity = field(default_factory=Nonlinearity.unit)
    g1: Nonlinearity = field(default_factory=Nonlinearity.unit)
    g2: Nonlinearity = field(default_factory=Nonlinearity.unit)
    n_max: int = 40
    alpha1: complex = 0j
    alpha2: complex = 0j
    include_free_phases: bool = True
    # Explicit initial field amplitudes q_0..q_{n_max}; coherent when None
    weights1: Optional[Tuple[complex, ...]] = None
    weights2: Optional[Tuple[complex, ...]] = None

    def __post_init__(self):
        self.validate()

    @property
    def delta2(self) -> float:
        return self.omega2 - self.omega1 + self.Omega1

    @property
    def delta3(self) -> float:
        return self.omega3 - self.omega1 + self.Omega2

    @property
    def grid_size(self) -> int:
        """Fock grid length per mode; branches 2 and 3 reach index n_max + 1"""
        return self.n_max + 2

    @classmethod
    def from_detunings(cls, delta2: float = 0.0, delta3: float = 0.0, *,
                       omega1: float = 0.0, Omega1: float = 0.0, Omega2: float = 0.0,
                       **kwargs) -> "ModelConfig":
        """Build a config by choosing level frequencies that realize the given detunings"""
        return cls(omega1=omega1,
                   omega2=delta2 + omega1 - Omega1,
                   omega3=delta3 + omega1 - Omega2,
                   Omega1=Omega1, Omega2=Omega2, **kwargs)

    def validate(self) -> None:
        errors: Dict[str, str] = {}
        if not self.lambda1 > 0:
            errors["lambda1"] = "must be > 0"
        if not self.lambda2 > 0:
            errors["lambda2"] = "must be > 0"
        if not isinstance(self.n_max, (int, np.integer)) or self.n_max < 1:
            errors["n_max"] = "must be an integer >= 1"
        for name in ("lambda1", "lambda2", "chi", "omega1", "omega2", "omega3", "Omega1", "Omega2"):
            if not math.isfinite(getattr(self, name)):
                errors[name] = "must be finite"
        if errors:
            raise ConfigError("Invalid model configuration", errors)

        for name in ("f1", "f2", "g1", "g2"):
            nl = getattr(self, name)
            if nl.kind is NonlinearityKind.CUSTOM:
                if len(nl.table) < self.n_max + 2:
                    raise ConfigError(f"Custom table for {name} must cover n = 0..n_max+1",
                                      {"required": self.n_max + 2, "given": len(nl.table)})
                if name in ("f1", "f2") and any(v == 0 for v in nl.table[1:self.n_max + 2]):
                    raise ConfigError(f"Custom coupling deformation {name} must be nonzero for n >= 1")

        for name in ("weights1", "weights2"):
            weights = getattr(self, name)
            if weights is not None and len(weights) != self.n_max + 1:
                raise ConfigError(f"{name} must hold n_max + 1 amplitudes",
                                  {"required": self.n_max + 1, "given": len(weights)})

    def with_overrides(self, **changes) -> "ModelConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class BlockSolution:
    """Closed-form data of one Fock block {|1,n1,n2>, |2,n1+1,n2>, |3,n1,n2+1>}"""
    n1: int
    n2: int
    mu: Tuple[float, float, float]
    b: Tuple[float, float, float]
    VA: float
    VB: float
    VC: float
    kappa1: float
    kappa2: float
    x1: float
    x2: float
    x3: float
    delta2: float
    delta3: float
    regularized: bool = False

    def residuals(self) -> Tuple[float, ...]:
        return tuple(((m + self.x1) * m + self.x2) * m + self.x3 for m in self.mu)


def _frozen_array(values: np.ndarray) -> np.ndarray:
    array = np.array(values, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class JointState:
    """
    Atom-field state at time t as three field-amplitude grids, one per atomic
    level, over (m1, m2) in [0, n_max+1]^2.
    """
    psi1: np.ndarray
    psi2: np.ndarray
    psi3: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        for name in ("psi1", "psi2", "psi3"):
            object.__setattr__(self, name, _frozen_array(np.asarray(getattr(self, name), dtype=complex)))
        if not (self.psi1.shape == self.psi2.shape == self.psi3.shape) or self.psi1.ndim != 2:
            raise ValueError("Branch grids must share one 2-D shape")

    @property
    def branches(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.psi1, self.psi2, self.psi3

    @property
    def grid_size(self) -> int:
        return self.psi1.shape[0]

    @property
    def n_max(self) -> int:
        return self.grid_size - 2

    def populations(self) -> Tuple[float, float, float]:
        """Atomic level populations (reduced atomic state diagonal)"""
        return tuple(float(np.sum(np.abs(psi) ** 2)) for psi in self.branches)

    def norm(self) -> float:
        return float(sum(self.populations()))

    def with_global_phase(self, phase: float) -> "JointState":
        factor = np.exp(1j * phase)
        return JointState(self.psi1 * factor, self.psi2 * factor, self.psi3 * factor, self.t)


@dataclass(frozen=True)
class MomentSet:
    """Field-mode expectation values of the reduced field state"""
    m10: complex
    m01: complex
    m20: complex
    m02: complex
    m11: complex
    c11: complex
    n1: float
    n2: float
    n1sq: float
    n2sq: float
    nn: float
    g22: complex
    # Central photon-number variances of the single-mode marginals
    var_n1: float = 0.0
    var_n2: float = 0.0


@dataclass(frozen=True)
class PhaseGrid:
    """Two-mode phase distribution sampled on theta_i = theta0 + 2 pi i / m_pts"""
    theta0: float
    m_pts: int
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(np.asarray(self.values, dtype=float)))

    @property
    def thetas(self) -> np.ndarray:
        return self.theta0 + 2.0 * np.pi * np.arange(self.m_pts) / self.m_pts

    @property
    def cell_area(self) -> float:
        return (2.0 * np.pi / self.m_pts) ** 2

    def integral(self) -> float:
        """Periodic rectangle-rule integral over the full phase square"""
        return float(np.sum(self.values) * self.cell_area)


@dataclass(frozen=True)
class EntropyRecord:
    """Number/phase Shannon entropies (nats) and their squeezing indicators"""
    R_n: float
    R_theta: float
    S_n: float
    S_theta: float

    @property
    def entropy_sum(self) -> float:
        return self.R_n + self.R_theta


# Fixed CSV column order
COLUMNS: Tuple[str, ...] = (
    "tau", "S_theta", "S_n", "R_n", "R_theta", "Q1", "Q2", "I0",
    "S_X1", "S_X2", "S_Y1", "S_Y2", "n1_mean", "n2_mean", "norm_err",
)


@dataclass(frozen=True)
class ObservableRecord:
    """All scalar indicators at one scaled-time sample"""
    tau: float
    S_theta: float
    S_n: float
    R_n: float
    R_theta: float
    Q1: float
    Q2: float
    I0: float
    S_X1: float
    S_X2: float
    S_Y1: float
    S_Y2: float
    n1_mean: float
    n2_mean: float
    norm_err: float

    def to_row(self, columns: Tuple[str, ...] = COLUMNS) -> List[float]:
        return [getattr(self, name) for name in columns]


@dataclass
class ObservableSeries:
    """Time-ordered indicator records of one sweep"""
    records: List[ObservableRecord] = field(default_factory=list)
    columns: Tuple[str, ...] = COLUMNS
    path: Optional[Path] = None

    def __len__(self) -> int:
        return len(self.records)

    def column(self, name: str) -> np.ndarray:
        if name not in COLUMNS:
            raise KeyError(name)
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    def summary(self) -> Dict[str, Dict[str, float]]:
        """Per-column min/max ignoring undefined samples"""
        stats = {}
        for name in self.columns:
            if name == "tau":
                continue
            values = self.column(name)
            finite = values[np.isfinite(values)]
            if finite.size:
                stats[name] = {"min": float(finite.min()), "max": float(finite.max())}
            else:
                stats[name] = {"min": math.nan, "max": math.nan}
        return stats


@dataclass(frozen=True)
class SweepSpec:
    """A validated request for one time sweep"""
    config: ModelConfig
    preset: Optional[str] = None
    tau_start: float = 0.0
    tau_end: float = 50.0
    tau_steps: int = 500
    observables: Tuple[str, ...] = COLUMNS
    out: Path = Path("output/sweep.csv")
    verify: bool = False
    m_pts: int = 128
    theta0: float = -math.pi
    mode: int = 1
    phase_snapshot: Optional[float] = None
    workers: int = 4
    trunc_tol: float = 1e-10

    def __post_init__(self):
        errors: Dict[str, str] = {}
        if not self.tau_start >= 0:
            errors["tau_start"] = "must be >= 0"
        if not self.tau_end > self.tau_start:
            errors["tau_end"] = "must be greater than tau_start"
        if self.tau_steps < 2:
            errors["tau_steps"] = "must be >= 2"
        if self.mode not in (1, 2):
            errors["mode"] = "must be 1 or 2"
        if self.workers < 1:
            errors["workers"] = "must be >= 1"
        if not 0 < self.trunc_tol < 1:
            errors["trunc_tol"] = "must lie in (0, 1)"
        unknown = [name for name in self.observables if name not in COLUMNS]
        if unknown:
            errors["observables"] = f"unknown columns: {', '.join(unknown)}"
        if errors:
            raise ConfigError("Invalid sweep specification", errors)

    @property
    def columns(self) -> Tuple[str, ...]:
        """Selected columns in the fixed schema order, tau always first"""
        selected = set(self.observables) | {"tau"}
        return tuple(name for name in COLUMNS if name in selected)

    def taus(self) -> np.ndarray:
        return np.linspace(self.tau_start, self.tau_end, self.tau_steps)
