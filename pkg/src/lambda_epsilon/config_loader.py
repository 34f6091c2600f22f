#!/usr/bin/env python3
"""
Configuration loading and management for lambda-epsilon.

Handles loading configuration from config.yaml and merging with CLI arguments.
CLI arguments take precedence over config.yaml values.
"""

from pathlib import Path

import yaml

from .axioms import DEFAULT_BUDGET, AxiomConfig
from .logging_config import get_logger
from .model import DEFAULT_SIZE_LIMIT, ModelConfig, parse_model_spec
from .reduction import DEFAULT_FUEL
from .schema import ValidationError, validate_config
from .testkit import ERASURE_BOUND, GenConfig, SuiteOptions

# Initialize logger for this module
logger = get_logger(__name__)


class Config:
    """Configuration management class for lambda-epsilon."""

    def __init__(self, config_path: Path | None = None):
        """Initialize configuration with defaults and load from file if available."""
        # Model
        self.base_assignment: dict[str, int] = {"a": 3}
        self.size_limit = DEFAULT_SIZE_LIMIT

        # Reduction
        self.fuel = DEFAULT_FUEL
        self.erasure_bound = ERASURE_BOUND

        # Generation
        self.seed = 0
        self.max_size = 12
        self.var_pool: list[str] = ["x", "y", "z", "u", "v"]
        self.type_depth = 3
        self.base_types: list[str] = ["a"]
        self.generation_workers = 1

        # Axioms
        self.axiom_modulus = 2
        self.axiom_budget = DEFAULT_BUDGET
        self.axiom_seed = 0
        self.axiom_workers = 1

        if config_path is None:
            config_path = Path.cwd() / "config" / "config.yaml"
            if not config_path.exists():
                config_path = Path.cwd() / "config.yaml"
            if config_path.exists():
                self._load_from_file(config_path)
        elif not config_path.exists():
            raise ValidationError(f"Config file not found: {config_path}")
        else:
            self._load_from_file(config_path)

    def _load_from_file(self, config_path: Path) -> None:
        """Load configuration from YAML file."""
        try:
            with open(config_path, encoding="utf-8") as f:
                config_data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValidationError(f"Config validation failed: {e}") from e
        except OSError as e:
            logger.warning(f"Could not load {config_path}: {e}")
            logger.info("Using default values")
            return

        if not config_data:
            return
        if not isinstance(config_data, dict):
            raise ValidationError("Config validation failed: top level must be a mapping")

        try:
            schema = validate_config(config_data)
            logger.debug(f"Configuration from {config_path} validated successfully")
        except ValidationError as e:
            logger.error(f"Configuration validation failed: {e}")
            raise

        if schema.model:
            if schema.model.base_assignment is not None:
                self.base_assignment = dict(schema.model.base_assignment)
            if schema.model.size_limit is not None:
                self.size_limit = schema.model.size_limit

        if schema.reduction:
            if schema.reduction.fuel is not None:
                self.fuel = schema.reduction.fuel
            if schema.reduction.erasure_bound is not None:
                self.erasure_bound = schema.reduction.erasure_bound

        if schema.generation:
            section = schema.generation
            if section.seed is not None:
                self.seed = section.seed
            if section.max_size is not None:
                self.max_size = section.max_size
            if section.var_pool is not None:
                self.var_pool = list(section.var_pool)
            if section.type_depth is not None:
                self.type_depth = section.type_depth
            if section.base_types is not None:
                self.base_types = list(section.base_types)
            if section.workers is not None:
                self.generation_workers = section.workers

        if schema.axioms:
            section_ax = schema.axioms
            if section_ax.modulus is not None:
                self.axiom_modulus = section_ax.modulus
            if section_ax.budget is not None:
                self.axiom_budget = section_ax.budget
            if section_ax.seed is not None:
                self.axiom_seed = section_ax.seed
            if section_ax.workers is not None:
                self.axiom_workers = section_ax.workers

    def merge_with_cli_args(self, args) -> None:
        """Merge CLI arguments with config values. CLI args take precedence."""
        command = getattr(args, "command", None)

        if getattr(args, "model", None) is not None:
            if command == "axioms":
                self.axiom_modulus = _parse_modulus(args.model)
            else:
                self.base_assignment = parse_model_spec(args.model)
        if getattr(args, "size_limit", None) is not None:
            self.size_limit = args.size_limit
        if getattr(args, "fuel", None) is not None:
            self.fuel = args.fuel
        if getattr(args, "bound", None) is not None:
            self.erasure_bound = args.bound
        if getattr(args, "budget", None) is not None:
            self.axiom_budget = args.budget

        if getattr(args, "seed", None) is not None:
            if command == "axioms":
                self.axiom_seed = args.seed
            else:
                self.seed = args.seed
        if getattr(args, "size", None) is not None:
            self.max_size = args.size
        if getattr(args, "type_depth", None) is not None:
            self.type_depth = args.type_depth
        if getattr(args, "workers", None) is not None:
            if command == "axioms":
                self.axiom_workers = args.workers
            else:
                self.generation_workers = args.workers

    def model_config(self) -> ModelConfig:
        try:
            return ModelConfig(
                base_assignment=self.base_assignment, size_limit=self.size_limit
            )
        except Exception as e:
            raise ValidationError(f"Config validation failed: {e}") from e

    def gen_config(self) -> GenConfig:
        try:
            return GenConfig(
                seed=self.seed,
                max_size=self.max_size,
                var_pool=tuple(self.var_pool),
                type_depth=self.type_depth,
                base_types=tuple(self.base_types),
            )
        except ValueError as e:
            raise ValidationError(f"Config validation failed: {e}") from e

    def suite_options(self) -> SuiteOptions:
        return SuiteOptions(
            fuel=self.fuel, erasure_bound=self.erasure_bound, model=self.model_config()
        )

    def axiom_config(self) -> AxiomConfig:
        try:
            return AxiomConfig(
                modulus=self.axiom_modulus,
                budget=self.axiom_budget,
                seed=self.axiom_seed,
                workers=self.axiom_workers,
            )
        except Exception as e:
            raise ValidationError(f"Config validation failed: {e}") from e


def _parse_modulus(text: str) -> int:
    """`Z3` or `3` to 3."""
    digits = text.strip().upper().removeprefix("Z")
    if not digits.isdigit() or int(digits) < 1:
        raise ValidationError(f"'{text}' is not a modulus of the form Zn")
    return int(digits)


def load_config(config_path: Path | None = None) -> Config:
    """Load configuration from file or use defaults."""
    return Config(config_path)
