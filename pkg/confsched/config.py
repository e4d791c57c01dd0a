"""
Configuration management for confsched.

This module loads defaults from environment variables (optionally via a
.env file) and combines them with command line flags into the settings of
one run.
"""

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import logging
from dotenv import load_dotenv

from confsched.corpus import CalendarDate
from confsched.errors import ConfigError, InvalidDateError
from confsched.scoring import ALL_FACTORS, BaselineOrder, Factor
from confsched.titles import DEFAULT_GAZETTEER_FILE

logger = logging.getLogger(__name__)

# Default configuration values
DEFAULT_CONFIG = {
    'LOG_LEVEL': 'INFO',
    'LOG_FILE': '',  # Console only
    'LOG_MAX_BYTES': str(10 * 1024 * 1024),
    'LOG_BACKUP_COUNT': '5',
    'GAZETTEER_FILE': DEFAULT_GAZETTEER_FILE,
    'OUTPUT_DIR': 'out',
    'CUTOFFS': '10,20,50,100,200',
    'RATING_CLASS_MAP': 'A*=4,A=3,B=2,C=1,Other=0',
    'BASELINE_ORDER': BaselineOrder.DUE_FIRST.value,
    'WORKERS': '1',
}


def parse_cutoffs(text: str) -> List[int]:
    """
    Parse a comma-separated list of nDCG cutoffs.

    Raises:
        ConfigError: If a cutoff is not a positive integer or the list is not strictly increasing
    """
    try:
        cutoffs = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ConfigError(f"--cutoffs must be comma-separated integers, got {text!r}") from None
    if not cutoffs:
        raise ConfigError("--cutoffs must name at least one cutoff")
    if any(k < 1 for k in cutoffs):
        raise ConfigError(f"--cutoffs must be positive, got {text!r}")
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ConfigError(f"--cutoffs must be strictly increasing, got {text!r}")
    return cutoffs


def parse_rating_class_map(text: str) -> Dict[str, int]:
    """
    Parse ``CLASS=value`` pairs such as ``A*=4,A=3,B=2,C=1,Other=0``.

    Raises:
        ConfigError: If a pair is malformed or a value is negative
    """
    mapping: Dict[str, int] = {}
    for pair in text.split(','):
        if not pair.strip():
            continue
        name, sep, value = pair.partition('=')
        if not sep or not name.strip():
            raise ConfigError(f"RATING_CLASS_MAP entries must look like CLASS=value, got {pair!r}")
        try:
            number = int(value)
        except ValueError:
            raise ConfigError(f"RATING_CLASS_MAP value for {name.strip()!r} is not an integer") from None
        if number < 0:
            raise ConfigError(f"RATING_CLASS_MAP value for {name.strip()!r} must be non-negative")
        mapping[name.strip()] = number
    return mapping


def parse_factors(text: str) -> List[Factor]:
    """Parse ``all`` or a comma-separated list of factor names."""
    if text.strip().lower() == 'all':
        return list(ALL_FACTORS)
    try:
        return list(dict.fromkeys(Factor.parse(name) for name in text.split(',') if name.strip()))
    except ValueError as e:
        raise ConfigError(f"--factor: {e}") from None


class Config:
    """Configuration singleton holding environment-provided defaults."""

    _instance = None

    def __new__(cls):
        """Ensure only one instance of Config exists."""
        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        """Initialize the configuration, loading from environment variables."""
        if self._initialized:
            return

        # Load environment variables from .env file
        load_dotenv()

        # Don't let empty environment variables override defaults
        for key, default_value in DEFAULT_CONFIG.items():
            env_value = os.getenv(key)
            if env_value is not None and env_value.strip() != '':
                setattr(self, key.lower(), env_value.strip())
            else:
                setattr(self, key.lower(), default_value)

        self.log_file = self.log_file or None
        self._initialized = True

    def validate(self) -> bool:
        """
        Validate the environment-provided defaults.

        Returns:
            bool: True if validation passes, False otherwise
        """
        logger.debug("🔍 Starting configuration validation...")
        valid = True

        for key in ('LOG_MAX_BYTES', 'LOG_BACKUP_COUNT', 'WORKERS'):
            value = getattr(self, key.lower())
            try:
                if int(value) < (1 if key == 'WORKERS' else 0):
                    raise ValueError(value)
            except ValueError:
                logger.error(f"❌ {key} must be a non-negative integer{' >= 1' if key == 'WORKERS' else ''}. Got: {value}")
                valid = False

        for key, parser in (('CUTOFFS', parse_cutoffs), ('RATING_CLASS_MAP', parse_rating_class_map)):
            try:
                parser(getattr(self, key.lower()))
            except ConfigError as e:
                logger.error(f"❌ {key} is invalid: {e}")
                valid = False

        try:
            BaselineOrder(self.baseline_order)
        except ValueError:
            choices = ', '.join(order.value for order in BaselineOrder)
            logger.error(f"❌ BASELINE_ORDER must be one of {choices}. Got: {self.baseline_order}")
            valid = False

        if not os.path.isfile(self.gazetteer_file):
            logger.error(f"❌ GAZETTEER_FILE not found: {self.gazetteer_file}")
            valid = False

        if valid:
            logger.debug("✅ Configuration validation passed.")
        return valid


@dataclass
class RunConfig:
    """Settings of one command line invocation."""

    now: Optional[CalendarDate] = None
    eval_year: Optional[int] = None
    factors: List[Factor] = field(default_factory=lambda: list(ALL_FACTORS))
    cutoffs: List[int] = field(default_factory=lambda: [10, 20, 50, 100, 200])
    rating_class_map: Dict[str, int] = field(
        default_factory=lambda: {'A*': 4, 'A': 3, 'B': 2, 'C': 1, 'Other': 0})
    events_path: Optional[str] = None
    papers_path: Optional[str] = None
    ratings_path: Optional[str] = None
    citations_path: Optional[str] = None
    author_counts_path: Optional[str] = None
    gazetteer_path: str = DEFAULT_GAZETTEER_FILE
    out_dir: str = 'out'
    seed: int = 0
    linear_gain: bool = False
    baseline_order: BaselineOrder = BaselineOrder.DUE_FIRST
    workers: int = 1

    @classmethod
    def from_args(cls, args, config: Optional[Config] = None) -> 'RunConfig':
        """
        Build a run configuration from parsed arguments and environment defaults.

        Flags that are absent (None) fall back to the environment defaults.

        Raises:
            ConfigError: If a value cannot be parsed
        """
        config = config or Config()

        def flag(name):
            return getattr(args, name, None)

        try:
            now = CalendarDate.parse(flag('now')) if flag('now') else None
        except InvalidDateError as e:
            raise ConfigError(f"--now: {e}") from None

        try:
            baseline_order = BaselineOrder(flag('baseline_order') or config.baseline_order)
        except ValueError:
            raise ConfigError(f"--baseline-order: unknown order {flag('baseline_order')!r}") from None

        return cls(
            now=now,
            eval_year=flag('year'),
            factors=parse_factors(flag('factor') or 'all'),
            cutoffs=parse_cutoffs(flag('cutoffs') or config.cutoffs),
            rating_class_map=parse_rating_class_map(flag('rating_map') or config.rating_class_map),
            events_path=flag('events'),
            papers_path=flag('papers'),
            ratings_path=flag('ratings'),
            citations_path=flag('citations'),
            author_counts_path=flag('author_counts'),
            gazetteer_path=flag('gazetteer') or config.gazetteer_file,
            out_dir=flag('out') or config.output_dir,
            seed=flag('seed') if flag('seed') is not None else 0,
            linear_gain=bool(flag('linear_gain')),
            baseline_order=baseline_order,
            workers=flag('workers') if flag('workers') is not None else int(config.workers),
        )

    def validate(self, required: Sequence[str] = ()) -> List[str]:
        """
        Check the configuration of this run.

        Args:
            required: Attribute names that must be set, e.g. ``('events_path', 'now')``

        Returns:
            List[str]: One message per problem, naming the offending key
        """
        problems = []
        for name in required:
            if getattr(self, name) in (None, '', []):
                problems.append(f"missing required setting {_flag_name(name)}")

        for name in ('events_path', 'papers_path', 'ratings_path', 'citations_path',
                     'author_counts_path', 'gazetteer_path'):
            path = getattr(self, name)
            if path and not os.path.isfile(path):
                problems.append(f"{_flag_name(name)}: file not found: {path}")

        if not self.cutoffs or any(k < 1 for k in self.cutoffs) or \
                any(b <= a for a, b in zip(self.cutoffs, self.cutoffs[1:])):
            problems.append(f"--cutoffs must be positive and strictly increasing, got {self.cutoffs}")
        if any(value < 0 for value in self.rating_class_map.values()):
            problems.append("--rating-map values must be non-negative")
        if self.workers < 1:
            problems.append(f"--workers must be >= 1, got {self.workers}")
        if self.eval_year is not None and self.eval_year <= 1900:
            problems.append(f"--year must be after 1900, got {self.eval_year}")

        for problem in problems:
            logger.error(f"❌ {problem}")
        return problems


_FLAG_NAMES = {
    'now': '--now',
    'eval_year': '--year',
    'events_path': '--events',
    'papers_path': '--papers',
    'ratings_path': '--ratings',
    'citations_path': '--citations',
    'author_counts_path': '--author-counts',
    'gazetteer_path': '--gazetteer',
    'out_dir': '--out',
    'factors': '--factor',
    'cutoffs': '--cutoffs',
}


def _flag_name(attribute: str) -> str:
    return _FLAG_NAMES.get(attribute, attribute)
