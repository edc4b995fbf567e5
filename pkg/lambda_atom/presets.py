"""
Named scenario presets

Families: a = no Kerr medium, resonant; b = deformed Kerr medium (chi = 0.4,
g harmonious), resonant; c = as b but detuned. Suffix up = unit coupling
deformation f, down = harmonious f. All share lambda1 = lambda2 = 1 and
coherent inputs with |alpha|^2 = 10 in both modes.
"""
import math
import re
from collections import OrderedDict
from typing import Dict, Tuple

import numpy as np

from .errors import ConfigError
from .field_state import coherent_weights
from .models import ModelConfig, Nonlinearity

PRESET_NAMES = ("a-up", "a-down", "b-up", "b-down", "c-up", "c-down")
DEFAULT_DETUNING = 5.0
KERR_STRENGTH = 0.4
MEAN_PHOTONS = 10.0

# Reduced scale used for oracle cross-checks
REDUCED_N_MAX = 15
REDUCED_MEAN_PHOTONS = 4.0


def _preset(family: str, coupling: str, detuning: float, n_max: int, mean_photons: float) -> ModelConfig:
    f = Nonlinearity.harmonious() if coupling == "down" else Nonlinearity.unit()
    g = Nonlinearity.unit() if family == "a" else Nonlinearity.harmonious()
    chi = 0.0 if family == "a" else KERR_STRENGTH
    delta = detuning if family == "c" else 0.0
    alpha = complex(math.sqrt(mean_photons))
    return ModelConfig.from_detunings(
        delta2=delta, delta3=delta,
        lambda1=1.0, lambda2=1.0, chi=chi,
        f1=f, f2=f, g1=g, g2=g,
        n_max=n_max, alpha1=alpha, alpha2=alpha,
    )


def presets(detuning: float = DEFAULT_DETUNING, n_max: int = 40,
            mean_photons: float = MEAN_PHOTONS) -> "OrderedDict[str, ModelConfig]":
    """The six scenario configs in fixed order"""
    table: Dict[str, ModelConfig] = OrderedDict()
    for name in PRESET_NAMES:
        family, coupling = name.split("-")
        table[name] = _preset(family, coupling, detuning, n_max, mean_photons)
    return table


_ALIAS = re.compile(r"^(?:fig\d)?([abc])-?(up|down)$")


def canonical_name(name: str) -> str:
    """Accepts 'a-down', 'adown' and 'fig'-prefixed aliases such as 'fig1a-down'"""
    match = _ALIAS.match(name.strip().lower())
    if not match:
        raise ConfigError(f"Unknown preset '{name}'", {"allowed": list(PRESET_NAMES)})
    return f"{match.group(1)}-{match.group(2)}"


def resolve_preset(name: str, detuning: float = DEFAULT_DETUNING, n_max: int = 40,
                   mean_photons: float = MEAN_PHOTONS) -> ModelConfig:
    return presets(detuning, n_max, mean_photons)[canonical_name(name)]


def truncated_coherent(alpha: complex, n_max: int) -> Tuple[complex, ...]:
    """Coherent amplitudes cut at n_max and renormalized"""
    q = coherent_weights(alpha, n_max, trunc_tol=1.0)
    q = q / np.linalg.norm(q)
    return tuple(complex(v) for v in q)


def reduced_config(cfg: ModelConfig, n_max: int = REDUCED_N_MAX,
                   mean_photons: float = REDUCED_MEAN_PHOTONS) -> ModelConfig:
    """
    Same physics at a scale the oracle integrates quickly. The Poisson tail
    at this truncation is far above the coherent tolerance, so the inputs
    are passed as renormalized explicit weights.
    """
    alpha = complex(math.sqrt(mean_photons))
    weights = truncated_coherent(alpha, n_max)
    return cfg.with_overrides(n_max=n_max, alpha1=alpha, alpha2=alpha,
                              weights1=weights, weights2=weights)
