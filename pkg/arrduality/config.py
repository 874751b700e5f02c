"""Configuration management for arrduality runs."""

from typing import Optional, Dict, Any
from dataclasses import dataclass, asdict
import os
import json

from sympy import isprime

from .exceptions import ConfigurationError

COMMANDS = (
    "flats", "poincare", "nested", "gamma", "betti", "charvar",
    "propagate", "generic-vanish", "toric", "orbit",
)
MODES = ("exhaustive", "sample")
BUILDINGS = ("minimal", "maximal")
OUTPUTS = ("json", "table")


@dataclass
class RunConfig:
    """Configuration for one arrduality command."""

    # What to run
    command: str = "flats"
    input_path: Optional[str] = None

    # Character sweeps
    prime: int = 5
    mode: str = "exhaustive"
    samples: int = 2000
    seed: Optional[int] = None
    degree: Optional[int] = None
    character: Optional[str] = None
    workers: int = 1
    exhaustive_budget: int = 10**6

    # Combinatorics
    building: str = "minimal"
    compactify: bool = False
    max_hyperplanes: int = 9
    max_dimension: int = 4

    # Output and logging
    output: str = "json"
    enable_logging: bool = True
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, **overrides: Any) -> "RunConfig":
        """Create configuration from ARRDUALITY_* environment variables."""
        seed = os.getenv("ARRDUALITY_SEED")
        config = cls(
            prime=int(os.getenv("ARRDUALITY_PRIME", "5")),
            mode=os.getenv("ARRDUALITY_MODE", "exhaustive"),
            samples=int(os.getenv("ARRDUALITY_SAMPLES", "2000")),
            seed=int(seed) if seed else None,
            workers=int(os.getenv("ARRDUALITY_WORKERS", "1")),
            exhaustive_budget=int(os.getenv("ARRDUALITY_EXHAUSTIVE_BUDGET", str(10**6))),
            building=os.getenv("ARRDUALITY_BUILDING", "minimal"),
            max_hyperplanes=int(os.getenv("ARRDUALITY_MAX_HYPERPLANES", "9")),
            max_dimension=int(os.getenv("ARRDUALITY_MAX_DIMENSION", "4")),
            output=os.getenv("ARRDUALITY_OUTPUT", "json"),
            enable_logging=os.getenv("ARRDUALITY_ENABLE_LOGGING", "true").lower() == "true",
            log_level=os.getenv("ARRDUALITY_LOG_LEVEL", "WARNING"),
        )
        return config.merged(**overrides)

    @classmethod
    def from_file(cls, config_path: str) -> "RunConfig":
        """Load configuration from JSON file."""
        try:
            with open(config_path, 'r') as f:
                config_data = json.load(f)
            return cls(**config_data)
        except FileNotFoundError:
            raise ConfigurationError(f"Configuration file not found: {config_path}")
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Invalid JSON in configuration file: {e}")
        except TypeError as e:
            raise ConfigurationError(f"Invalid configuration parameters: {e}")

    def to_file(self, config_path: str) -> None:
        """Save configuration to JSON file."""
        directory = os.path.dirname(config_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(config_path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)

    def merged(self, **overrides: Any) -> "RunConfig":
        """Copy with every non-None override applied."""
        values = self.to_dict()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig(**values)

    def validate(self) -> None:
        """Validate the configuration."""
        if self.command not in COMMANDS:
            raise ConfigurationError(f"Unknown command: {self.command}")

        if self.prime < 3 or not isprime(self.prime):
            raise ConfigurationError(f"prime must be a prime >= 3, got {self.prime}")

        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {', '.join(MODES)}")

        if self.mode == "sample" and self.seed is None:
            raise ConfigurationError("a seed is required in sample mode")

        if self.building not in BUILDINGS:
            raise ConfigurationError(f"building must be one of {', '.join(BUILDINGS)}")

        if self.output not in OUTPUTS:
            raise ConfigurationError(f"output must be one of {', '.join(OUTPUTS)}")

        if self.samples < 1:
            raise ConfigurationError("samples must be at least 1")

        if self.workers < 1:
            raise ConfigurationError("workers must be at least 1")

        if self.degree is not None and self.degree < 0:
            raise ConfigurationError("degree must be non-negative")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def report_dict(self) -> Dict[str, Any]:
        """The settings embedded in every report (no logging or file paths)."""
        return {
            "prime": self.prime,
            "mode": self.mode,
            "samples": self.samples if self.mode == "sample" else None,
            "seed": self.seed,
            "building": self.building,
            "compactify": self.compactify,
            "degree": self.degree,
        }
