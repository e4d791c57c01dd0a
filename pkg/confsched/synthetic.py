"""
Synthetic corpus generation for confsched.

Produces deterministic input files (events, papers, ratings, citations)
with a controllable mix of annual and biennial, discontinued, rated and
international conference series. The same seed always yields
byte-identical files.
"""

import csv
import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from confsched.corpus import CalendarDate, add_months
from confsched.ingest import RATINGS_HEADER
from confsched.logging_utils import get_logger

# Get logger
logger = get_logger(__name__)

# Venues whose city and country are both in the packaged gazetteer
VENUES: Tuple[Tuple[str, str, str], ...] = (
    ('Trier', 'Germany', 'DE'),
    ('Paris', 'France', 'FR'),
    ('Newark', 'USA', 'US'),
    ('Tokyo', 'Japan', 'JP'),
    ('Rome', 'Italy', 'IT'),
    ('Madrid', 'Spain', 'ES'),
    ('Toronto', 'Canada', 'CA'),
    ('Sydney', 'Australia', 'AU'),
    ('Rio de Janeiro', 'Brazil', 'BR'),
    ('Amsterdam', 'The Netherlands', 'NL'),
    ('Stockholm', 'Sweden', 'SE'),
    ('Lisbon', 'Portugal', 'PT'),
    ('Athens', 'Greece', 'GR'),
    ('Vienna', 'Austria', 'AT'),
    ('Singapore', 'Singapore', 'SG'),
    ('Beijing', 'China', 'CN'),
    ('Seoul', 'South Korea', 'KR'),
    ('Zurich', 'Switzerland', 'CH'),
    ('London', 'UK', 'GB'),
    ('Wellington', 'New Zealand', 'NZ'),
)

MONTH_NAMES = ('January', 'February', 'March', 'April', 'May', 'June', 'July',
               'August', 'September', 'October', 'November', 'December')

RATING_LISTS = ('CORE2008', 'CORE2017', 'RANK2008')
RATING_CLASSES = ('A*', 'A', 'B', 'C', 'Other')


@dataclass(frozen=True)
class SyntheticMix:
    """Fractions of conference kinds in a generated corpus."""

    biennial_fraction: float = 0.2
    discontinued_fraction: float = 0.2
    rated_fraction: float = 0.4
    international_fraction: float = 0.4

    def __post_init__(self):
        for name in ('biennial_fraction', 'discontinued_fraction', 'rated_fraction', 'international_fraction'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass
class SyntheticDataset:
    """Generated input rows, ready to be written or ingested."""

    events: List[Dict[str, Any]] = field(default_factory=list)
    papers: List[Dict[str, Any]] = field(default_factory=list)
    ratings: List[Tuple[str, str, str]] = field(default_factory=list)
    citations: List[Dict[str, Any]] = field(default_factory=list)


def _title(acronym: str, edition: int, year: int, month: int, day: int, city: str, country: str) -> str:
    return (f"Proceedings of the {edition}. {acronym} Symposium {year}, {city}, {country}, "
            f"{MONTH_NAMES[month - 1]} {day}-{day + 3}, {year}")


def generate_records(seed: int, n_conferences: int, years: range,
                     mix: SyntheticMix = SyntheticMix()) -> SyntheticDataset:
    """
    Generate a synthetic corpus in memory.

    Active conferences hold their last event within one interval of the
    end of ``years``; discontinued ones stop at least one interval earlier.

    Args:
        seed: Random seed
        n_conferences: Number of conference series, at least 1
        years: Event years, e.g. ``range(2000, 2017)``
        mix: Fractions of conference kinds

    Returns:
        SyntheticDataset: The generated rows
    """
    if n_conferences < 1:
        raise ValueError(f"n_conferences must be >= 1, got {n_conferences}")
    if len(years) < 1:
        raise ValueError("years must not be empty")

    rng = np.random.default_rng(seed)
    dataset = SyntheticDataset()
    first_year, last_year = years[0], years[-1]
    author_pool = [f"a{j:05d}" for j in range(max(50, 12 * n_conferences))]

    for i in range(n_conferences):
        conf_key = f"conf{i:03d}"
        acronym = f"SYM{i}"
        period = 2 if rng.random() < mix.biennial_fraction else 1
        discontinued = bool(rng.random() < mix.discontinued_fraction)
        international = bool(rng.random() < mix.international_fraction)
        usual_month = int(rng.integers(1, 13))
        entry_delay = int(rng.integers(0, 5))
        home = int(rng.integers(0, len(VENUES)))
        citation_rate = float(rng.uniform(0.1, 2.0))

        if discontinued and last_year - period - 1 >= first_year:
            final_year = int(rng.integers(first_year, last_year - period))
        elif discontinued:
            final_year = first_year
        else:
            final_year = last_year - int(rng.integers(0, period))

        event_years = list(range(final_year, first_year - 1, -period))[::-1]
        for edition, year in enumerate(event_years, start=1):
            month = usual_month
            if rng.random() < 0.1:
                month = min(12, max(1, month + int(rng.choice([-1, 1]))))
            event_date = CalendarDate(month=month, year=year)
            entry_date = add_months(event_date, entry_delay + int(rng.integers(0, 2)))
            venue = VENUES[int(rng.integers(0, len(VENUES)))] if international else VENUES[home]
            day = int(rng.integers(1, 25))

            paper_count = int(rng.integers(4, 40))
            n_authors = min(len(author_pool), int(rng.integers(2, 2 * paper_count + 1)))
            authors = sorted(str(a) for a in rng.choice(author_pool, size=n_authors, replace=False))
            event_key = f"{conf_key}/{year}"

            row: Dict[str, Any] = {
                'event_key': event_key,
                'conf_key': conf_key,
                'title': _title(acronym, edition, year, month, day, venue[0], venue[1]),
                'entry': str(entry_date),
                'paper_count': paper_count,
                'author_ids': authors,
            }
            if rng.random() < 0.1:
                row['event'] = str(event_date)
                row['country'] = venue[2]
            dataset.events.append(row)

            for p in range(paper_count):
                size = min(len(authors), int(rng.integers(1, 4)))
                paper_authors = sorted(str(a) for a in rng.choice(authors, size=size, replace=False))
                dataset.papers.append({'record_key': f"{event_key}/p{p}", 'author_ids': paper_authors,
                                       'year': year})

            for citing_year in range(year + 1, last_year + 1):
                count = int(rng.poisson(citation_rate * paper_count / 4))
                if count:
                    dataset.citations.append({'event_key': event_key, 'year': citing_year, 'count': count})

        if rng.random() < mix.rated_fraction:
            lists = [name for name in RATING_LISTS if rng.random() < 0.7] or [RATING_LISTS[0]]
            for list_id in lists:
                dataset.ratings.append((conf_key, list_id, RATING_CLASSES[int(rng.integers(0, 4))]))

    return dataset


def write_dataset(dataset: SyntheticDataset, out_dir: str) -> Dict[str, str]:
    """
    Write a dataset as input files.

    Returns:
        Dict[str, str]: Paths keyed by ``events``, ``papers``, ``ratings``, ``citations``
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        'events': os.path.join(out_dir, 'events.jsonl'),
        'papers': os.path.join(out_dir, 'papers.jsonl'),
        'ratings': os.path.join(out_dir, 'ratings.csv'),
        'citations': os.path.join(out_dir, 'citations.jsonl'),
    }
    for name in ('events', 'papers', 'citations'):
        with open(paths[name], 'w', encoding='utf-8', newline='\n') as file:
            for row in getattr(dataset, name):
                file.write(json.dumps(row, sort_keys=True, ensure_ascii=False) + '\n')
    with open(paths['ratings'], 'w', encoding='utf-8', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(RATINGS_HEADER)
        writer.writerows(dataset.ratings)
    return paths


def generate_synthetic(seed: int, n_conferences: int, years: range, out_dir: str,
                       mix: SyntheticMix = SyntheticMix()) -> Dict[str, str]:
    """Generate a synthetic corpus and write its input files to ``out_dir``."""
    dataset = generate_records(seed, n_conferences, years, mix)
    paths = write_dataset(dataset, out_dir)
    logger.info(f"✅ Generated {len(dataset.events)} events of {n_conferences} conferences "
                f"(seed {seed}) in {out_dir}")
    return paths
