"""
Unit tests for the deformation functions and parameter validation
"""
import math

import numpy as np
import pytest

from lambda_atom.errors import ConfigError
from lambda_atom.model_core import block_constants, kerr_shift
from lambda_atom.models import ModelConfig, Nonlinearity, NonlinearityKind

N_MAX = 10
TABLE = [1.0 / (1.0 + 0.1 * n) for n in range(N_MAX + 2)]


class TestCustomNonlinearity:
    """Test table-driven deformation functions"""

    def test_custom_kind(self):
        nl = Nonlinearity.custom(TABLE)
        assert nl.kind is NonlinearityKind.CUSTOM
        assert nl.name == "custom"
        assert nl.table == tuple(TABLE)

    @pytest.mark.parametrize("n", [1, 4, N_MAX + 1])
    def test_ladder_and_kerr_factor(self, n):
        """Test sqrt(n) f(n) and n f(n)^2 read from the table"""
        nl = Nonlinearity.custom(TABLE)
        assert nl.ladder(n) == pytest.approx(math.sqrt(n) * TABLE[n])
        assert nl.kerr_factor(n) == pytest.approx(n * TABLE[n] ** 2)

    def test_vacuum_is_zero(self):
        nl = Nonlinearity.custom([5.0] * 4)
        assert nl.ladder(0) == 0.0
        assert nl.kerr_factor(0) == 0.0

    def test_values(self):
        nl = Nonlinearity.custom(TABLE)
        assert np.allclose(nl.values(np.arange(1, N_MAX + 2)), TABLE[1:])

    def test_lookup_past_table(self):
        nl = Nonlinearity.custom([1.0, 1.0, 1.0])
        with pytest.raises(ConfigError) as exc_info:
            nl.ladder(3)
        assert exc_info.value.details["table_length"] == 3
        with pytest.raises(ConfigError):
            nl.kerr_factor(7)
        with pytest.raises(ConfigError):
            nl.values(np.array([3]))

    def test_table_required(self):
        with pytest.raises(ConfigError):
            Nonlinearity(NonlinearityKind.CUSTOM)
        with pytest.raises(ConfigError):
            Nonlinearity.custom([])

    def test_builtin_kinds_reject_table(self):
        with pytest.raises(ConfigError):
            Nonlinearity(NonlinearityKind.HARMONIOUS, (1.0, 2.0))

    def test_custom_by_name_rejected(self):
        with pytest.raises(ConfigError) as exc_info:
            Nonlinearity.from_name("custom")
        assert "table" in exc_info.value.message

    def test_unknown_name(self):
        with pytest.raises(ConfigError) as exc_info:
            Nonlinearity.from_name("sinc")
        assert exc_info.value.details["allowed"] == ["unit", "harmonious"]


class TestModelConfigValidation:
    """Test custom tables against the truncation"""

    def test_table_must_cover_grid(self):
        with pytest.raises(ConfigError) as exc_info:
            ModelConfig(n_max=N_MAX, f1=Nonlinearity.custom(TABLE[:-1]))
        assert exc_info.value.details == {"required": N_MAX + 2, "given": N_MAX + 1}

    @pytest.mark.parametrize("name", ["f1", "f2"])
    def test_zero_coupling_rejected(self, name):
        table = list(TABLE)
        table[3] = 0.0
        with pytest.raises(ConfigError) as exc_info:
            ModelConfig(n_max=N_MAX, **{name: Nonlinearity.custom(table)})
        assert name in exc_info.value.message

    def test_zero_vacuum_entry_allowed(self):
        table = [0.0] + TABLE[1:]
        cfg = ModelConfig(n_max=N_MAX, f1=Nonlinearity.custom(table))
        assert cfg.f1.ladder(1) == pytest.approx(TABLE[1])

    def test_zero_kerr_deformation_allowed(self):
        table = list(TABLE)
        table[3] = 0.0
        cfg = ModelConfig(n_max=N_MAX, chi=0.3, g1=Nonlinearity.custom(table))
        assert kerr_shift(3, 2, cfg) == 0.0

    def test_block_constants_use_table(self):
        cfg = ModelConfig(n_max=N_MAX, lambda1=0.5, chi=0.2,
                          f1=Nonlinearity.custom(TABLE), g2=Nonlinearity.custom(TABLE))
        consts = block_constants(2, 3, cfg)
        assert consts.kappa1 == pytest.approx(0.5 * math.sqrt(3) * TABLE[3])
        assert consts.kappa2 == pytest.approx(2.0)
        assert consts.VA == pytest.approx(0.2 * 2 * 3 * TABLE[3] ** 2)
        assert consts.VC == pytest.approx(0.2 * 2 * 4 * TABLE[4] ** 2)

    def test_non_positive_coupling(self):
        with pytest.raises(ConfigError) as exc_info:
            ModelConfig(lambda1=0.0)
        assert "lambda1" in exc_info.value.details

    def test_weights_length(self):
        with pytest.raises(ConfigError):
            ModelConfig(n_max=3, weights1=(1 + 0j, 0j))
