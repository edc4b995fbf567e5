"""
Test helper utilities and shared testing functions
"""
import math
from typing import Tuple

import numpy as np
from scipy.linalg import expm

from lambda_atom.models import BlockSolution, ModelConfig


def block_matrix(sol: BlockSolution) -> np.ndarray:
    """Block Hamiltonian minus the |1,n1,n2> free energy"""
    return np.array([
        [sol.VA, sol.kappa1, sol.kappa2],
        [sol.kappa1, sol.delta2 + sol.VB, 0.0],
        [sol.kappa2, 0.0, sol.delta3 + sol.VC],
    ])


def expm_amplitudes(sol: BlockSolution, t: float) -> Tuple[complex, complex, complex]:
    """(A, B, C) of a block from a dense matrix exponential"""
    v = expm(-1j * block_matrix(sol) * t)[:, 0]
    return (complex(v[0]),
            complex(v[1] * np.exp(1j * sol.delta2 * t)),
            complex(v[2] * np.exp(1j * sol.delta3 * t)))


def poisson(n: int, mean: float) -> float:
    return math.exp(-mean) * mean ** n / math.factorial(n)


def fock_weights(n: int, n_max: int) -> Tuple[complex, ...]:
    weights = [0j] * (n_max + 1)
    weights[n] = 1 + 0j
    return tuple(weights)


def vacuum_free_weights(alpha: complex, n_max: int) -> Tuple[complex, ...]:
    """Coherent amplitudes with the vacuum component removed, renormalized"""
    q = np.array([np.exp(-abs(alpha) ** 2 / 2) * alpha ** n / math.sqrt(math.factorial(n))
                  for n in range(n_max + 1)], dtype=complex)
    q[0] = 0.0
    q /= np.linalg.norm(q)
    return tuple(complex(v) for v in q)


def max_deviation(first, second) -> float:
    return max(float(np.max(np.abs(a - b))) for a, b in zip(first.branches, second.branches))


def write_config(path, values: dict):
    lines = ["# test configuration"]
    lines += [f"{key}={value}" for key, value in values.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def small_config(**changes) -> ModelConfig:
    base = dict(n_max=10, alpha1=complex(0.7), alpha2=complex(0.5))
    base.update(changes)
    return ModelConfig(**base)
