"""
Core domain types for confsched.

This module holds the month-granular calendar arithmetic, the event,
conference and corpus types, and the derivation of each conference's
characteristic parameters (interval, usual month, entry delay) from its
event history.
"""

import bisect
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from confsched.errors import EmptyInputError, InvalidDateError, UnrankableConferenceError

MIN_YEAR = 1900

# Number of most recent events used for the interval and delay medians
RECENT_EVENTS = 5

_ISO_MONTH = re.compile(r'^(\d{4})-(\d{2})$')


@total_ordering
@dataclass(frozen=True)
class CalendarDate:
    """A (month, year) pair; dates order by year first, then month."""

    month: int
    year: int

    def __post_init__(self):
        if not isinstance(self.month, int) or not 1 <= self.month <= 12:
            raise InvalidDateError(f"Month must be in 1..12, got {self.month!r}")
        if not isinstance(self.year, int) or self.year < MIN_YEAR:
            raise InvalidDateError(f"Year must be >= {MIN_YEAR}, got {self.year!r}")

    def __lt__(self, other: 'CalendarDate') -> bool:
        if not isinstance(other, CalendarDate):
            return NotImplemented
        return (self.year, self.month) < (other.year, other.month)

    def __str__(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    @classmethod
    def parse(cls, text: str) -> 'CalendarDate':
        """
        Parse an ISO ``YYYY-MM`` string.

        Args:
            text: Date string with a two-digit month

        Returns:
            CalendarDate: The parsed date

        Raises:
            InvalidDateError: If the string is not a valid ``YYYY-MM`` date
        """
        match = _ISO_MONTH.match(text.strip()) if isinstance(text, str) else None
        if not match:
            raise InvalidDateError(f"Expected YYYY-MM, got {text!r}")
        return cls(month=int(match.group(2)), year=int(match.group(1)))


def diff_months(later: CalendarDate, earlier: CalendarDate) -> int:
    """Signed number of months from ``earlier`` to ``later``."""
    return (later.year - earlier.year) * 12 + (later.month - earlier.month)


def add_months(d: CalendarDate, delta: int) -> CalendarDate:
    """
    Return the date ``delta`` months after ``d`` (before it if negative).

    Raises:
        InvalidDateError: If the result falls before year 1900
    """
    index = d.year * 12 + (d.month - 1) + delta
    year, month0 = divmod(index, 12)
    return CalendarDate(month=month0 + 1, year=year)


def median_int(values: Sequence[int]) -> int:
    """
    Integer median; an even count averages the middle pair rounding half up.

    Raises:
        EmptyInputError: If ``values`` is empty
    """
    if not values:
        raise EmptyInputError("median of an empty list is undefined")
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid] + 1) // 2


@dataclass(frozen=True)
class Event:
    """One edition of a conference series and its proceedings record."""

    event_key: str
    conf_key: str
    entry_date: CalendarDate
    event_date: Optional[CalendarDate] = None
    country: Optional[str] = None
    paper_count: int = 0
    author_ids: FrozenSet[str] = frozenset()
    citations_per_year: Mapping[int, int] = field(default_factory=dict, hash=False)
    title: str = ''

    def __post_init__(self):
        if self.paper_count < 0:
            raise ValueError(f"Event {self.event_key}: paper_count must be >= 0")
        if any(count < 0 for count in self.citations_per_year.values()):
            raise ValueError(f"Event {self.event_key}: citation counts must be >= 0")

    @property
    def author_count(self) -> int:
        """a(e): number of distinct authors."""
        return len(self.author_ids)

    @property
    def is_dated(self) -> bool:
        return self.event_date is not None

    def sort_key(self) -> Tuple:
        dated = (self.event_date.year, self.event_date.month) if self.event_date else (0, 0)
        return (dated, self.entry_date.year, self.entry_date.month, self.event_key)


@dataclass(frozen=True)
class Conference:
    """A keyed series of events plus the numeric values of its external ratings."""

    conf_key: str
    events: Tuple[Event, ...] = ()
    rating_values: Tuple[int, ...] = ()

    def __post_init__(self):
        # Undated events sort first; profile derivation ignores them anyway
        object.__setattr__(self, 'events', tuple(sorted(self.events, key=Event.sort_key)))
        object.__setattr__(self, 'rating_values', tuple(self.rating_values))

    @property
    def rankable(self) -> bool:
        """True if at least one event carries an event date."""
        return any(event.is_dated for event in self.events)

    def visible_events(self, now: CalendarDate) -> List[Event]:
        """Events whose record was entered at or before ``now``."""
        return [event for event in self.events if event.entry_date <= now]

    def dated_events(self, now: CalendarDate) -> List[Event]:
        """Visible events that carry an event date, oldest first."""
        return [event for event in self.visible_events(now) if event.is_dated]


@dataclass(frozen=True)
class Corpus:
    """
    All conferences plus cumulative per-author record counts.

    ``author_record_counts`` maps ``(author_id, year)`` to the number of
    records of that author up to and including ``year``; a lookup for a year
    without an explicit entry uses the latest earlier year.
    """

    conferences: Dict[str, Conference] = field(default_factory=dict)
    author_record_counts: Dict[Tuple[str, int], int] = field(default_factory=dict)

    @cached_property
    def _author_index(self) -> Dict[str, Tuple[List[int], List[int]]]:
        per_author: Dict[str, List[Tuple[int, int]]] = {}
        for (author_id, year), count in self.author_record_counts.items():
            per_author.setdefault(author_id, []).append((year, count))
        index = {}
        for author_id, pairs in per_author.items():
            pairs.sort()
            index[author_id] = ([year for year, _ in pairs], [count for _, count in pairs])
        return index

    def author_records(self, author_id: str, year: int) -> int:
        """p(a, y): cumulative record count of an author up to ``year``."""
        entry = self._author_index.get(author_id)
        if entry is None:
            return 0
        years, counts = entry
        pos = bisect.bisect_right(years, year)
        return counts[pos - 1] if pos else 0

    def sorted_keys(self) -> List[str]:
        return sorted(self.conferences)


@dataclass(frozen=True)
class ConferenceProfile:
    """Characteristic parameters of a conference derived at a given date."""

    delta_year: int
    mode_month: int
    delta_month: int
    last_entry_date: CalendarDate

    def __post_init__(self):
        if self.delta_year < 1:
            raise ValueError(f"delta_year must be >= 1, got {self.delta_year}")
        if self.delta_month < 0:
            raise ValueError(f"delta_month must be >= 0, got {self.delta_month}")
        if not 1 <= self.mode_month <= 12:
            raise ValueError(f"mode_month must be in 1..12, got {self.mode_month}")


def derive_profile(c: Conference, now: CalendarDate) -> ConferenceProfile:
    """
    Derive the characteristic parameters of a conference at ``now``.

    Only events entered at or before ``now`` are considered, and of those
    only events with an event date.

    Args:
        c: The conference
        now: The evaluation date

    Returns:
        ConferenceProfile: delta_year, mode_month, delta_month and the last entry date

    Raises:
        UnrankableConferenceError: If no dated event is visible at ``now``
    """
    visible = c.dated_events(now)
    if not visible:
        raise UnrankableConferenceError(c.conf_key)

    recent = visible[-RECENT_EVENTS:]

    gaps = [b.event_date.year - a.event_date.year for a, b in zip(recent, recent[1:])]
    delta_year = max(1, median_int(gaps)) if gaps else 1

    months = Counter(event.event_date.month for event in visible)
    top = max(months.values())
    mode_month = min(month for month, count in months.items() if count == top)

    delays = [max(0, diff_months(event.entry_date, event.event_date)) for event in recent]
    delta_month = median_int(delays)

    last_year = recent[-1].event_date.year
    last_entry_date = max(event.entry_date for event in visible if event.event_date.year == last_year)

    return ConferenceProfile(
        delta_year=delta_year,
        mode_month=mode_month,
        delta_month=delta_month,
        last_entry_date=last_entry_date,
    )
