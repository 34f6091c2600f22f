#!/usr/bin/env python3
"""
Schema validation for the YAML configuration file.

config.yaml has four optional sections:
- model: moduli of base types and the carrier size limit
- reduction: normalization fuel and the erasure search bound
- generation: defaults for seeded term generation (fuzz)
- axioms: modulus, budget and parallelism of the axiom checks
"""

import re
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import LambdaEpsilonError

_IDENT = re.compile(r"[a-zA-Z_][a-zA-Z0-9_']*")


class ValidationError(LambdaEpsilonError):
    """Custom validation error for clearer error messages."""

    pass


class ModelSection(BaseModel):
    """Configuration for the finite group model."""

    model_config = ConfigDict(extra="forbid")

    base_assignment: dict[str, int] | None = None
    size_limit: int | None = Field(default=None, ge=1)

    @field_validator("base_assignment")
    @classmethod
    def validate_moduli(cls, v: dict[str, int] | None) -> dict[str, int] | None:
        """Each modulus n denotes Z_n, so n >= 1."""
        if v is not None:
            for name, modulus in v.items():
                if modulus < 1:
                    raise ValueError(f"modulus for '{name}' must be at least 1")
        return v


class ReductionSection(BaseModel):
    """Configuration for normalization and erasure simulation."""

    model_config = ConfigDict(extra="forbid")

    fuel: int | None = Field(default=None, ge=0)
    erasure_bound: int | None = Field(default=None, ge=0)


class GenerationSection(BaseModel):
    """Configuration for seeded generation."""

    model_config = ConfigDict(extra="forbid")

    seed: int | None = None
    max_size: int | None = Field(default=None, ge=1)
    var_pool: list[str] | None = None
    type_depth: int | None = Field(default=None, ge=1)
    base_types: list[str] | None = None
    workers: int | None = Field(default=None, ge=1)

    @field_validator("var_pool", "base_types")
    @classmethod
    def validate_names(cls, v: list[str] | None) -> list[str] | None:
        if v is not None:
            if not v:
                raise ValueError("name list must not be empty")
            for name in v:
                if not _IDENT.fullmatch(name) or name in ("eps", "D"):
                    raise ValueError(f"'{name}' is not an identifier")
        return v


class AxiomSection(BaseModel):
    """Configuration for the axiom checks."""

    model_config = ConfigDict(extra="forbid")

    modulus: int | None = Field(default=None, ge=1)
    budget: int | None = Field(default=None, ge=1)
    seed: int | None = None
    workers: int | None = Field(default=None, ge=1)


class ConfigSchema(BaseModel):
    """Schema for config.yaml."""

    model_config = ConfigDict(extra="forbid")

    model: ModelSection | None = None
    reduction: ReductionSection | None = None
    generation: GenerationSection | None = None
    axioms: AxiomSection | None = None


def validate_config(data: dict[str, Any]) -> ConfigSchema:
    """
    Validate config.yaml data.

    Args:
        data: Dictionary containing config data

    Returns:
        Validated ConfigSchema instance

    Raises:
        ValidationError: If validation fails
    """
    try:
        return ConfigSchema(**data)
    except Exception as e:
        raise ValidationError(f"Config validation failed: {e}") from e
