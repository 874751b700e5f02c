"""Tests for arrduality run configuration."""

import pytest
import tempfile
import os
import json
from arrduality.config import RunConfig
from arrduality.exceptions import ConfigurationError

class TestRunConfig:
    """Test configuration management."""

    def test_default_config(self):
        """Test default configuration values."""
        config = RunConfig()

        assert config.command == "flats"
        assert config.prime == 5
        assert config.mode == "exhaustive"
        assert config.samples == 2000
        assert config.seed is None
        assert config.workers == 1
        assert config.exhaustive_budget == 10**6
        assert config.building == "minimal"
        assert config.compactify is False
        assert config.output == "json"
        assert config.enable_logging is True
        assert config.log_level == "WARNING"

    def test_custom_config(self):
        """Test custom configuration values."""
        config = RunConfig(command="charvar", prime=7, mode="sample", samples=50, seed=3, degree=1)

        assert config.command == "charvar"
        assert config.prime == 7
        assert config.mode == "sample"
        assert config.samples == 50
        assert config.seed == 3
        assert config.degree == 1

    def test_from_env(self, monkeypatch):
        """Test configuration from environment variables."""
        monkeypatch.setenv("ARRDUALITY_PRIME", "11")
        monkeypatch.setenv("ARRDUALITY_MODE", "sample")
        monkeypatch.setenv("ARRDUALITY_SEED", "42")
        monkeypatch.setenv("ARRDUALITY_BUILDING", "maximal")

        config = RunConfig.from_env()

        assert config.prime == 11
        assert config.mode == "sample"
        assert config.seed == 42
        assert config.building == "maximal"

    def test_from_env_overrides_win(self, monkeypatch):
        """Explicit overrides beat the environment; None overrides are ignored."""
        monkeypatch.setenv("ARRDUALITY_PRIME", "11")

        config = RunConfig.from_env(prime=7, seed=None)

        assert config.prime == 7
        assert config.seed is None

    def test_to_file_and_from_file(self):
        """Test saving and loading configuration from file."""
        original_config = RunConfig(command="propagate", prime=7, building="maximal", workers=2)

        with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
            config_path = f.name

        try:
            original_config.to_file(config_path)
            loaded_config = RunConfig.from_file(config_path)

            assert loaded_config == original_config
            with open(config_path) as f:
                assert json.load(f)["prime"] == 7
        finally:
            os.unlink(config_path)

    def test_from_file_not_found(self):
        """Test error when config file doesn't exist."""
        with pytest.raises(ConfigurationError, match="Configuration file not found"):
            RunConfig.from_file("nonexistent.json")

    def test_from_file_invalid_json(self):
        """Test error with invalid JSON in config file."""
        with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
            f.write("invalid json content")
            config_path = f.name

        try:
            with pytest.raises(ConfigurationError, match="Invalid JSON"):
                RunConfig.from_file(config_path)
        finally:
            os.unlink(config_path)

    def test_from_file_unknown_key(self, tmp_path):
        """Unknown keys are configuration errors."""
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"primes": 5}))

        with pytest.raises(ConfigurationError, match="Invalid configuration parameters"):
            RunConfig.from_file(str(path))

    def test_validate_success(self):
        """Test successful validation."""
        RunConfig(command="generic-vanish", mode="sample", seed=1).validate()

    def test_validate_unknown_command(self):
        """Test that an unknown command is rejected."""
        with pytest.raises(ConfigurationError, match="Unknown command"):
            RunConfig(command="homology").validate()

    @pytest.mark.parametrize("prime", [2, 4, 9, 1])
    def test_validate_bad_prime(self, prime):
        """Test validation failure for moduli that are not odd primes."""
        with pytest.raises(ConfigurationError, match="prime must be a prime"):
            RunConfig(prime=prime).validate()

    def test_validate_sample_needs_seed(self):
        """Test that sample mode needs a seed."""
        with pytest.raises(ConfigurationError, match="seed is required"):
            RunConfig(mode="sample").validate()

    def test_validate_bad_building(self):
        """Test that an unknown building set is rejected."""
        with pytest.raises(ConfigurationError, match="building must be one of"):
            RunConfig(building="custom").validate()

    def test_validate_bad_workers(self):
        """Test that the worker count must be positive."""
        with pytest.raises(ConfigurationError, match="workers must be at least 1"):
            RunConfig(workers=0).validate()

    def test_report_dict_omits_samples_outside_sample_mode(self):
        """Sample counts only appear in reports of sampled sweeps."""
        assert RunConfig(samples=10).report_dict()["samples"] is None
        assert RunConfig(mode="sample", samples=10, seed=1).report_dict()["samples"] == 10
