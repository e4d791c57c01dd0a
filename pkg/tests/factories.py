"""
Builders for corpora used across the test modules.
"""

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from confsched.corpus import CalendarDate, Conference, Corpus, Event, add_months
from confsched.ingest import build_corpus, cumulative_author_counts, parse_event_row
from confsched.storage import format_run_line
from confsched.synthetic import SyntheticDataset
from confsched.titles import load_gazetteer

DEFAULT_CLASS_MAP = {'A*': 4, 'A': 3, 'B': 2, 'C': 1, 'Other': 0}
RATING_CLASSES = ('A*', 'A', 'B', 'C', 'Other')
COUNTRIES = ('DE', 'US', 'FR', 'JP', 'BR')


def d(month: int, year: int) -> CalendarDate:
    return CalendarDate(month=month, year=year)


def event(conf_key: str, event_date: Optional[CalendarDate], entry_date: CalendarDate,
          **kwargs) -> Event:
    """Event keyed by conference and event (or entry) date."""
    stamp = event_date or entry_date
    key = kwargs.pop('event_key', f"{conf_key}/{stamp}")
    return Event(event_key=key, conf_key=conf_key, entry_date=entry_date,
                 event_date=event_date, **kwargs)


def series(conf_key: str, dates: Iterable[Tuple[int, int]], entry_delay: int = 0, **kwargs) -> Tuple[Event, ...]:
    """Events at ``(month, year)`` dates, each entered ``entry_delay`` months later."""
    return tuple(event(conf_key, d(m, y), add_months(d(m, y), entry_delay), **kwargs) for m, y in dates)


def corpus_of(*conferences: Conference,
              author_record_counts: Optional[Mapping[Tuple[str, int], int]] = None) -> Corpus:
    return Corpus(conferences={c.conf_key: c for c in conferences},
                  author_record_counts=dict(author_record_counts or {}))


def random_corpus(seed: int, class_map: Mapping[str, int] = DEFAULT_CLASS_MAP,
                  citation_scale: int = 1) -> Tuple[Corpus, CalendarDate]:
    """
    Small random corpus and evaluation date.

    The random draws do not depend on ``class_map`` or ``citation_scale``, so
    corpora built with the same seed differ only in the scaled values.
    """
    rng = np.random.default_rng(seed)
    authors = [f"a{i}" for i in range(25)]

    author_counts: Dict[Tuple[str, int], int] = {}
    for author in authors:
        running = 0
        for year in range(1995, 2017):
            running += int(rng.integers(0, 4))
            author_counts[(author, year)] = running

    conferences = []
    for i in range(int(rng.integers(1, 7))):
        conf_key = f"c{i}"
        period = int(rng.integers(1, 3))
        start = int(rng.integers(1998, 2013))
        month = int(rng.integers(1, 13))
        events = []
        for j in range(int(rng.integers(0, 6))):
            year = start + j * period
            event_date = d(month, year) if rng.random() < 0.85 else None
            entry = add_months(d(month, year), int(rng.integers(0, 8)))
            country_index = int(rng.integers(0, len(COUNTRIES) + 1))
            size = int(rng.integers(0, 6))
            chosen = rng.choice(len(authors), size=size, replace=False)
            citations = {y: int(rng.integers(0, 20)) * citation_scale
                         for y in range(year, year + 4) if rng.random() < 0.6}
            events.append(Event(
                event_key=f"{conf_key}/{j}",
                conf_key=conf_key,
                entry_date=entry,
                event_date=event_date,
                country=COUNTRIES[country_index] if country_index < len(COUNTRIES) else None,
                paper_count=int(rng.integers(0, 30)),
                author_ids=frozenset(authors[int(k)] for k in chosen),
                citations_per_year=citations,
            ))
        classes = [RATING_CLASSES[int(rng.integers(0, len(RATING_CLASSES)))]
                   for _ in range(3) if rng.random() < 0.4]
        conferences.append(Conference(conf_key=conf_key, events=tuple(events),
                                      rating_values=tuple(class_map[name] for name in classes)))

    now = d(int(rng.integers(1, 13)), 2016)
    return corpus_of(*conferences, author_record_counts=author_counts), now


def dataset_corpus(dataset: SyntheticDataset,
                   class_map: Mapping[str, int] = DEFAULT_CLASS_MAP) -> Corpus:
    """Build a corpus from generated rows without going through files."""
    gazetteer = load_gazetteer()
    events = [parse_event_row(row, gazetteer) for row in dataset.events]
    ratings: Dict[str, list] = {}
    for conf_key, _, rating_class in dataset.ratings:
        ratings.setdefault(conf_key, []).append(class_map[rating_class])
    citations: Dict[str, Dict[int, int]] = {}
    for row in dataset.citations:
        per_event = citations.setdefault(row['event_key'], {})
        per_event[row['year']] = per_event.get(row['year'], 0) + row['count']
    author_counts = cumulative_author_counts((row['author_ids'], row['year']) for row in dataset.papers)
    return build_corpus(events, ratings, citations, author_counts)


def without_entries_from(corpus: Corpus, year: int) -> Corpus:
    """Copy of a corpus without anything entered or counted in or after ``year``."""
    conferences = []
    for conference in corpus.conferences.values():
        events = tuple(
            Event(event_key=e.event_key, conf_key=e.conf_key, entry_date=e.entry_date,
                  event_date=e.event_date, country=e.country, paper_count=e.paper_count,
                  author_ids=e.author_ids,
                  citations_per_year={y: n for y, n in e.citations_per_year.items() if y < year},
                  title=e.title)
            for e in conference.events if e.entry_date.year < year
        )
        conferences.append(Conference(conf_key=conference.conf_key, events=events,
                                      rating_values=conference.rating_values))
    counts = {key: n for key, n in corpus.author_record_counts.items() if key[1] < year}
    return corpus_of(*conferences, author_record_counts=counts)


def run_lines(rankings: Sequence) -> list:
    return [format_run_line(r.query_id, e.conf_key, e.rank, e.score, r.factor.value)
            for r in rankings for e in r.entries]
