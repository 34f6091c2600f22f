"""Tests for schema validation functionality."""

import pytest

from lambda_epsilon.errors import LambdaEpsilonError
from lambda_epsilon.schema import ValidationError, validate_config


class TestConfigValidation:
    """Tests for config.yaml validation."""

    def test_empty_config(self):
        """Test that an empty mapping passes validation with no sections."""
        result = validate_config({})
        assert result.model is None
        assert result.axioms is None

    def test_valid_full_config(self):
        """Test that a config with every section passes validation."""
        config_data = {
            "model": {"base_assignment": {"a": 3, "b": 2}, "size_limit": 4096},
            "reduction": {"fuel": 500, "erasure_bound": 6},
            "generation": {
                "seed": 7,
                "max_size": 10,
                "var_pool": ["x", "y", "f'"],
                "type_depth": 2,
                "base_types": ["a", "b"],
                "workers": 4,
            },
            "axioms": {"modulus": 3, "budget": 500, "seed": 1, "workers": 2},
        }
        result = validate_config(config_data)
        assert result.model.base_assignment == {"a": 3, "b": 2}
        assert result.reduction.fuel == 500
        assert result.generation.var_pool == ["x", "y", "f'"]
        assert result.axioms.modulus == 3

    def test_partial_section(self):
        """Test that omitted keys inside a section stay unset."""
        result = validate_config({"reduction": {"fuel": 10}})
        assert result.reduction.fuel == 10
        assert result.reduction.erasure_bound is None

    def test_unknown_section(self):
        """Test that an unknown top-level key fails validation."""
        with pytest.raises(ValidationError) as exc_info:
            validate_config({"plotting": {"dpi": 300}})
        assert "plotting" in str(exc_info.value)

    def test_unknown_key_in_section(self):
        """Test that an unknown key inside a section fails validation."""
        with pytest.raises(ValidationError) as exc_info:
            validate_config({"model": {"modulus": 3}})
        assert "modulus" in str(exc_info.value)


class TestModelSection:
    """Tests for the model section."""

    def test_zero_modulus(self):
        """Test that Z_0 is rejected."""
        with pytest.raises(ValidationError) as exc_info:
            validate_config({"model": {"base_assignment": {"a": 0}}})
        assert "modulus for 'a'" in str(exc_info.value)

    def test_size_limit_must_be_positive(self):
        """Test that a zero carrier size limit fails validation."""
        with pytest.raises(ValidationError):
            validate_config({"model": {"size_limit": 0}})

    def test_non_integer_modulus(self):
        """Test that a non-numeric modulus fails validation."""
        with pytest.raises(ValidationError):
            validate_config({"model": {"base_assignment": {"a": "three"}}})


class TestReductionSection:
    """Tests for the reduction section."""

    def test_zero_fuel_is_allowed(self):
        """Test that fuel 0 means canonicalization only."""
        assert validate_config({"reduction": {"fuel": 0}}).reduction.fuel == 0

    def test_negative_bound(self):
        """Test that a negative erasure bound fails validation."""
        with pytest.raises(ValidationError) as exc_info:
            validate_config({"reduction": {"erasure_bound": -1}})
        assert "erasure_bound" in str(exc_info.value)


class TestGenerationSection:
    """Tests for the generation section."""

    @pytest.mark.parametrize("name", ["eps", "D", "1x", "x y", ""])
    def test_bad_variable_names(self, name):
        """Test that keywords and non-identifiers are rejected."""
        with pytest.raises(ValidationError):
            validate_config({"generation": {"var_pool": ["x", name]}})

    def test_empty_pool(self):
        """Test that an empty variable pool fails validation."""
        with pytest.raises(ValidationError) as exc_info:
            validate_config({"generation": {"var_pool": []}})
        assert "must not be empty" in str(exc_info.value)

    def test_zero_size(self):
        """Test that max_size 0 fails validation."""
        with pytest.raises(ValidationError):
            validate_config({"generation": {"max_size": 0}})


class TestAxiomSection:
    """Tests for the axioms section."""

    def test_zero_budget(self):
        """Test that a zero budget fails validation."""
        with pytest.raises(ValidationError) as exc_info:
            validate_config({"axioms": {"budget": 0}})
        assert "budget" in str(exc_info.value)

    def test_zero_workers(self):
        """Test that zero workers fails validation."""
        with pytest.raises(ValidationError):
            validate_config({"axioms": {"workers": 0}})


def test_validation_error_is_a_toolkit_error():
    """Test that validation errors share the toolkit's base exception."""
    with pytest.raises(LambdaEpsilonError):
        validate_config({"model": []})
