"""
Settings manager for the plane-separation solvers.
Handles persistent storage of emulation constants, recursion knobs and oracle caps.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass, asdict, replace

K_RULES = ("balanced", "asymptotic")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class SolverSettings:
    """Solver settings dataclass."""
    # Emulation constants
    c_grover: float = 1.0
    c_aa: float = 2.0

    # Recursion parameters
    c2: float = 8.0
    base_cutoff: int = 64
    retry_budget: int = 3
    k_rule: str = "balanced"
    crossing_factor: float = 4.0

    # Brute-force oracle caps
    oracle_line_cap: int = 60
    oracle_coverage_cap: int = 40
    oracle_sightline_cap: int = 60
    oracle_3sum_cap: int = 200

    # Instance generation
    generator_retries: int = 20
    coefficient_range: int = 1000

    log_level: str = "INFO"

    def validate(self):
        """
        Check value ranges.

        Raises:
            ValueError: If any setting is out of range
        """
        if self.c_grover < 1 or self.c_aa < 1:
            raise ValueError(f"c_grover and c_aa must be >= 1, got {self.c_grover} and {self.c_aa}")
        if self.c2 <= 1:
            raise ValueError(f"c2 must exceed 1, got {self.c2}")
        if self.base_cutoff < 4:
            raise ValueError(f"base_cutoff must be at least 4, got {self.base_cutoff}")
        if self.retry_budget < 0 or self.generator_retries < 1:
            raise ValueError("retry budgets must be non-negative")
        if self.k_rule not in K_RULES:
            raise ValueError(f"k_rule must be one of {K_RULES}, got {self.k_rule!r}")
        if self.crossing_factor <= 0:
            raise ValueError("crossing_factor must be positive")
        if self.coefficient_range < 3:
            raise ValueError("coefficient_range must be at least 3")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValueError(f"Unknown log level {self.log_level!r}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SolverSettings':
        """Create settings from dictionary."""
        # Filter out unknown keys to handle version compatibility
        known_fields = {field.name for field in cls.__dataclass_fields__.values()}
        filtered_data = {k: v for k, v in data.items() if k in known_fields}
        return cls(**filtered_data)


class SettingsManager:
    """Manages solver settings with persistent storage."""

    def __init__(self, config_file: Optional[Path] = None):
        """
        Initialize settings manager.

        Args:
            config_file: Optional settings file; defaults to the platform config directory
        """
        self.logger = logging.getLogger(__name__)

        if config_file:
            self.config_file = Path(config_file)
            self.config_dir = self.config_file.parent
        else:
            # Use platform-appropriate config directory
            home = Path.home()
            if home.joinpath("AppData").exists():  # Windows
                self.config_dir = home / "AppData" / "Roaming" / "PlaneSeparation"
            elif home.joinpath(".config").exists():  # Linux
                self.config_dir = home / ".config" / "plane-separation"
            else:  # macOS or fallback
                self.config_dir = home / ".plane-separation"
            self.config_file = self.config_dir / "settings.json"

        self._settings = self._load_settings()

    def _load_settings(self) -> SolverSettings:
        """Load settings from file or create defaults."""
        try:
            if self.config_file.exists():
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    data = json.load(f)
                settings = SolverSettings.from_dict(data)
                settings.validate()
                self.logger.info(f"Loaded settings from {self.config_file}")
                return settings
            else:
                self.logger.debug("No settings file found, using defaults")
                return SolverSettings()

        except Exception as e:
            self.logger.error(f"Error loading settings: {e}, using defaults")
            return SolverSettings()

    def _save_settings(self) -> bool:
        """Save current settings to file."""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self._settings.to_dict(), f, indent=2)
            self.logger.info(f"Settings saved to {self.config_file}")
            return True

        except Exception as e:
            self.logger.error(f"Error saving settings: {e}")
            return False

    @property
    def settings(self) -> SolverSettings:
        """Get current settings."""
        return self._settings

    def _apply(self, candidate: SolverSettings) -> bool:
        try:
            candidate.validate()
        except ValueError as e:
            self.logger.error(f"Rejected settings: {e}")
            return False
        self._settings = candidate
        return self._save_settings()

    def update_setting(self, key: str, value: Any) -> bool:
        """
        Update a single setting.

        Args:
            key: Setting key name
            value: New value

        Returns:
            bool: True if the value was valid and saved
        """
        if key not in SolverSettings.__dataclass_fields__:
            self.logger.error(f"Unknown setting key: {key}")
            return False
        return self._apply(replace(self._settings, **{key: value}))

    def update_settings(self, **kwargs) -> bool:
        """
        Update multiple settings at once; unknown keys are ignored.

        Returns:
            bool: True if the combined values were valid and saved
        """
        known = {}
        for key, value in kwargs.items():
            if key in SolverSettings.__dataclass_fields__:
                known[key] = value
            else:
                self.logger.warning(f"Ignoring unknown setting: {key}")
        return self._apply(replace(self._settings, **known))

    def reset_to_defaults(self) -> bool:
        """Reset all settings to defaults."""
        self._settings = SolverSettings()
        return self._save_settings()

    def export_settings(self, file_path: Path) -> bool:
        """Export settings to a file."""
        try:
            with open(file_path, 'w', encoding='utf-8') as f:
                json.dump(self._settings.to_dict(), f, indent=2)
            self.logger.info(f"Settings exported to {file_path}")
            return True

        except OSError as e:
            self.logger.error(f"Error exporting settings: {e}")
            return False

    def import_settings(self, file_path: Path) -> bool:
        """Import settings from a file."""
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            self.logger.error(f"Error importing settings: {e}")
            return False

        success = self._apply(SolverSettings.from_dict(data))
        if success:
            self.logger.info(f"Settings imported from {file_path}")
        return success
