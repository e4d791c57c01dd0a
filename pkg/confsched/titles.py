"""
Proceedings-title parsing for confsched.

Extracts the event date (month, year) and the venue country from titles
such as "Proceedings of JCDL 2016, Newark, NJ, USA, June 19-23, 2016".
Countries are looked up in a line-oriented gazetteer file
(``kind<TAB>name<TAB>code``).
"""

import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Optional, Pattern, Union

from confsched.corpus import CalendarDate
from confsched.logging_utils import get_logger

# Get logger
logger = get_logger(__name__)

DEFAULT_GAZETTEER_FILE = str(Path(__file__).resolve().parent / 'data' / 'gazetteer.tsv')

MIN_TITLE_YEAR = 1900
MAX_TITLE_YEAR = 2100

# Maximum number of characters between a month name and its year
MAX_MONTH_YEAR_GAP = 12

MONTHS: Dict[str, int] = {
    'january': 1, 'february': 2, 'march': 3, 'april': 4, 'may': 5, 'june': 6,
    'july': 7, 'august': 8, 'september': 9, 'october': 10, 'november': 11, 'december': 12,
}

_MONTH_NAME = (
    r'jan(?:uary)?|feb(?:ruary)?|mar(?:ch)?|apr(?:il)?|may|june?|july?|aug(?:ust)?'
    r'|sep(?:t(?:ember)?)?|oct(?:ober)?|nov(?:ember)?|dec(?:ember)?'
)
MONTH_PATTERN = re.compile(rf'(?<![a-z])({_MONTH_NAME})(?![a-z])\.?', re.IGNORECASE | re.ASCII)
YEAR_PATTERN = re.compile(r'(?<!\d)(\d{4})(?!\d)', re.ASCII)

# "September 28 - " directly before a month name marks a range spanning two months
RANGE_START_PATTERN = re.compile(
    rf'(?<![a-z])({_MONTH_NAME})(?![a-z])\.?\s*\d{{1,2}}\s*(?:-|–|—|to)\s*$',
    re.IGNORECASE | re.ASCII,
)

GAZETTEER_KINDS = ('country', 'city')
_COUNTRY_CODE = re.compile(r'^[A-Z]{2}$')


def month_number(name: str) -> int:
    """
    Map a full or abbreviated English month name to 1..12.

    Raises:
        ValueError: If the name is not an English month name
    """
    prefix = name.rstrip('.').lower()[:3]
    for full, number in MONTHS.items():
        if len(prefix) == 3 and prefix.isascii() and full.startswith(prefix):
            return number
    raise ValueError(f"not a month name: {name!r}")


@dataclass(frozen=True)
class Gazetteer:
    """Case-folded country and city names mapped to ISO-3166 alpha-2 codes."""

    country_names: Dict[str, str] = field(default_factory=dict)
    city_to_country: Dict[str, str] = field(default_factory=dict)

    @staticmethod
    def _names_pattern(names) -> Optional[Pattern]:
        if not names:
            return None
        # Longest names first so "new south wales" wins over "wales"
        alternatives = '|'.join(re.escape(name) for name in sorted(names, key=lambda n: (-len(n), n)))
        return re.compile(rf'(?<!\w)({alternatives})(?!\w)', re.IGNORECASE)

    @cached_property
    def country_pattern(self) -> Optional[Pattern]:
        return self._names_pattern(self.country_names)

    @cached_property
    def city_pattern(self) -> Optional[Pattern]:
        return self._names_pattern(self.city_to_country)


def load_gazetteer(path: Union[str, Path] = DEFAULT_GAZETTEER_FILE) -> Gazetteer:
    """
    Load a gazetteer file.

    Each non-comment line is ``kind<TAB>name<TAB>code`` with kind ``country``
    or ``city``. The first entry for a name wins; malformed lines are logged
    and skipped.

    Args:
        path: Path to the gazetteer file

    Returns:
        Gazetteer: The loaded gazetteer
    """
    countries: Dict[str, str] = {}
    cities: Dict[str, str] = {}

    with open(path, 'r', encoding='utf-8') as file:
        for line_no, raw in enumerate(file, start=1):
            line = raw.rstrip('\n').rstrip('\r')
            if not line.strip() or line.lstrip().startswith('#'):
                continue
            parts = line.split('\t')
            if len(parts) != 3:
                logger.warning(f"⚠️  {path}:{line_no}: expected 3 tab-separated fields, skipping")
                continue
            kind, name, code = (part.strip() for part in parts)
            code = code.upper()
            if kind not in GAZETTEER_KINDS or not name or not _COUNTRY_CODE.match(code):
                logger.warning(f"⚠️  {path}:{line_no}: invalid gazetteer entry {line!r}, skipping")
                continue
            target = countries if kind == 'country' else cities
            key = name.casefold()
            if key in target:
                logger.debug(f"{path}:{line_no}: duplicate {kind} {name!r}, keeping first entry")
                continue
            target[key] = code

    logger.debug(f"Loaded gazetteer from {path}: {len(countries)} country names, {len(cities)} cities")
    return Gazetteer(country_names=countries, city_to_country=cities)


def parse_event_date(title: str) -> Optional[CalendarDate]:
    """
    Extract the event date from a proceedings title.

    The last month name (full or abbreviated) that is followed by a year in
    1900..2100 within 12 characters wins. A range such as "June 12-15, 2016"
    yields its starting month, also when the range spans two months.

    Args:
        title: The proceedings title

    Returns:
        Optional[CalendarDate]: The event date, or None if the title has none
    """
    if not title:
        return None

    found: Optional[CalendarDate] = None
    for month_match in MONTH_PATTERN.finditer(title):
        gap_start = month_match.end()
        year = None
        for year_match in YEAR_PATTERN.finditer(title, gap_start):
            if year_match.start() - gap_start > MAX_MONTH_YEAR_GAP:
                break
            value = int(year_match.group(1))
            if MIN_TITLE_YEAR <= value <= MAX_TITLE_YEAR:
                year = value
                break
        if year is None:
            continue

        month = month_number(month_match.group(1))
        range_start = RANGE_START_PATTERN.search(title, 0, month_match.start())
        if range_start:
            month = month_number(range_start.group(1))
        found = CalendarDate(month=month, year=year)

    return found


def _last_match(pattern: Optional[Pattern], names: Dict[str, str], title: str) -> Optional[str]:
    if pattern is None:
        return None
    code = None
    for match in pattern.finditer(title):
        found = names.get(match.group(1).casefold())
        if found is not None:
            code = found
    return code


def parse_country(title: str, g: Gazetteer) -> Optional[str]:
    """
    Extract the venue country from a proceedings title.

    The last whole-word country name wins; without one, the last city name
    decides.

    Args:
        title: The proceedings title
        g: The gazetteer to look names up in

    Returns:
        Optional[str]: ISO-3166 alpha-2 code, or None
    """
    if not title:
        return None
    return (_last_match(g.country_pattern, g.country_names, title)
            or _last_match(g.city_pattern, g.city_to_country, title))
