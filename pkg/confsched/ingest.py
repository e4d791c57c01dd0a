"""
Corpus ingestion for confsched.

Reads the line-oriented input files (events, papers, author counts,
ratings, citations) and assembles a Corpus. Missing event dates and
countries are filled in from the proceedings titles.
"""

import csv
import json
from collections import defaultdict
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Set, Tuple

from confsched.config import RunConfig
from confsched.corpus import CalendarDate, Conference, Corpus, Event
from confsched.errors import IngestError, InvalidDateError
from confsched.logging_utils import get_logger
from confsched.titles import Gazetteer, load_gazetteer, parse_country, parse_event_date

# Get logger
logger = get_logger(__name__)

RATINGS_HEADER = ['conf_key', 'list_id', 'class']


def read_jsonl(path: str) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """
    Yield ``(line_no, object)`` for every non-blank line of a JSONL file.

    Raises:
        IngestError: If a line is not a JSON object
    """
    with open(path, 'r', encoding='utf-8') as file:
        for line_no, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as e:
                raise IngestError(path, line_no, f"invalid JSON: {e.msg}") from None
            if not isinstance(row, dict):
                raise IngestError(path, line_no, "expected a JSON object")
            yield line_no, row


def _key(row: Mapping[str, Any], name: str, path: str, line_no: int) -> str:
    value = row.get(name)
    if isinstance(value, int) and not isinstance(value, bool):
        value = str(value)
    if not isinstance(value, str) or not value.strip():
        raise IngestError(path, line_no, f"missing or empty {name}")
    if any(ch.isspace() for ch in value):
        raise IngestError(path, line_no, f"{name} must not contain whitespace: {value!r}")
    return value


def _non_negative_int(row: Mapping[str, Any], name: str, path: str, line_no: int,
                      default: Optional[int] = None) -> int:
    value = row.get(name, default)
    if value is None or isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise IngestError(path, line_no, f"{name} must be a non-negative integer, got {value!r}")
    return value


def _date(row: Mapping[str, Any], name: str, path: str, line_no: int) -> Optional[CalendarDate]:
    value = row.get(name)
    if value is None or value == '':
        return None
    try:
        return CalendarDate.parse(value)
    except InvalidDateError as e:
        raise IngestError(path, line_no, f"{name}: {e}") from None


def _author_ids(row: Mapping[str, Any], path: str, line_no: int) -> List[str]:
    value = row.get('author_ids', [])
    if not isinstance(value, list):
        raise IngestError(path, line_no, "author_ids must be a list")
    authors = []
    for author in value:
        if isinstance(author, bool) or not isinstance(author, (str, int)) or str(author).strip() == '':
            raise IngestError(path, line_no, f"invalid author id {author!r}")
        authors.append(str(author))
    return authors


def parse_event_row(row: Mapping[str, Any], gazetteer: Gazetteer,
                    path: str = '<events>', line_no: int = 0) -> Event:
    """
    Build an Event from one events-file object.

    Explicit ``event`` and ``country`` values win; otherwise they are parsed
    from the title.

    Raises:
        IngestError: If a field is missing or malformed
    """
    event_key = _key(row, 'event_key', path, line_no)
    conf_key = _key(row, 'conf_key', path, line_no)
    title = row.get('title') or ''
    if not isinstance(title, str):
        raise IngestError(path, line_no, "title must be a string")

    entry_date = _date(row, 'entry', path, line_no)
    if entry_date is None:
        raise IngestError(path, line_no, "missing entry date")

    event_date = _date(row, 'event', path, line_no)
    if event_date is None:
        event_date = parse_event_date(title)

    country = row.get('country')
    if country:
        if not isinstance(country, str) or len(country.strip()) != 2 or not country.strip().isalpha():
            raise IngestError(path, line_no, f"country must be an ISO-3166 alpha-2 code, got {country!r}")
        country = country.strip().upper()
    else:
        country = parse_country(title, gazetteer)

    return Event(
        event_key=event_key,
        conf_key=conf_key,
        entry_date=entry_date,
        event_date=event_date,
        country=country,
        paper_count=_non_negative_int(row, 'paper_count', path, line_no, default=0),
        author_ids=frozenset(_author_ids(row, path, line_no)),
        title=title,
    )


def read_events(path: str, gazetteer: Gazetteer) -> List[Event]:
    """
    Read the events file.

    Raises:
        IngestError: On a malformed line or a duplicate event_key
    """
    events: List[Event] = []
    seen: Dict[str, int] = {}
    for line_no, row in read_jsonl(path):
        event = parse_event_row(row, gazetteer, path, line_no)
        if event.event_key in seen:
            raise IngestError(path, line_no,
                              f"duplicate event_key {event.event_key!r} (first on line {seen[event.event_key]})")
        seen[event.event_key] = line_no
        if event.event_date is None:
            logger.debug(f"{path}:{line_no}: no event date for {event.event_key}, excluded from profiles")
        events.append(event)
    logger.debug(f"Read {len(events)} events from {path}")
    return events


def cumulative_author_counts(records: Iterable[Tuple[Iterable[str], int]]) -> Dict[Tuple[str, int], int]:
    """
    Turn ``(author_ids, year)`` records into cumulative counts p(a, y).

    The result has an entry for every year in which an author has a record,
    holding the number of that author's records up to and including the year.
    """
    per_year: Dict[str, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for author_ids, year in records:
        for author in set(author_ids):
            per_year[author][year] += 1

    counts = {}
    for author, years in per_year.items():
        running = 0
        for year in sorted(years):
            running += years[year]
            counts[(author, year)] = running
    return counts


def read_papers(path: str) -> Dict[Tuple[str, int], int]:
    """Derive cumulative author record counts from the papers file."""
    records = []
    keys: Set[str] = set()
    for line_no, row in read_jsonl(path):
        record_key = _key(row, 'record_key', path, line_no)
        if record_key in keys:
            raise IngestError(path, line_no, f"duplicate record_key {record_key!r}")
        keys.add(record_key)
        year = _non_negative_int(row, 'year', path, line_no)
        records.append((_author_ids(row, path, line_no), year))
    logger.debug(f"Read {len(records)} paper records from {path}")
    return cumulative_author_counts(records)


def read_author_counts(path: str) -> Dict[Tuple[str, int], int]:
    """Read precomputed cumulative author record counts ``{author_id, year, count}``."""
    counts = {}
    for line_no, row in read_jsonl(path):
        author = _key(row, 'author_id', path, line_no)
        year = _non_negative_int(row, 'year', path, line_no)
        if (author, year) in counts:
            raise IngestError(path, line_no, f"duplicate author count for {author} in {year}")
        counts[(author, year)] = _non_negative_int(row, 'count', path, line_no)
    return counts


def _rating_value(name: str, class_map: Mapping[str, int]) -> Optional[int]:
    if name in class_map:
        return class_map[name]
    folded = {key.casefold(): value for key, value in class_map.items()}
    return folded.get(name.casefold())


def read_ratings(path: str, class_map: Mapping[str, int],
                 known_confs: Set[str]) -> Dict[str, List[int]]:
    """
    Read the ratings CSV ``conf_key,list_id,class``.

    Rows for unknown conferences, unknown classes or repeated (conference,
    list) pairs are skipped with a warning.

    Raises:
        IngestError: If a row does not have three fields
    """
    ratings: Dict[str, Dict[str, int]] = defaultdict(dict)
    with open(path, 'r', encoding='utf-8', newline='') as file:
        for line_no, row in enumerate(csv.reader(file), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            cells = [cell.strip() for cell in row]
            if line_no == 1 and cells == RATINGS_HEADER:
                continue
            if len(cells) != 3 or not all(cells):
                raise IngestError(path, line_no, f"expected conf_key,list_id,class, got {row!r}")
            conf_key, list_id, rating_class = cells
            if conf_key not in known_confs:
                logger.warning(f"⚠️  {path}:{line_no}: unknown conference {conf_key!r}, row skipped")
                continue
            value = _rating_value(rating_class, class_map)
            if value is None:
                logger.warning(f"⚠️  {path}:{line_no}: unknown rating class {rating_class!r}, row skipped")
                continue
            if list_id in ratings[conf_key]:
                logger.warning(f"⚠️  {path}:{line_no}: {conf_key} already rated in {list_id}, row skipped")
                continue
            ratings[conf_key][list_id] = value

    return {conf_key: [lists[list_id] for list_id in sorted(lists)]
            for conf_key, lists in ratings.items()}


def read_citations(path: str, known_events: Set[str]) -> Dict[str, Dict[int, int]]:
    """
    Read pre-aggregated citation counts ``{event_key, year, count}``.

    Rows for unknown events are skipped with a warning; repeated
    (event, year) pairs are summed.
    """
    citations: Dict[str, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for line_no, row in read_jsonl(path):
        event_key = _key(row, 'event_key', path, line_no)
        year = _non_negative_int(row, 'year', path, line_no)
        count = _non_negative_int(row, 'count', path, line_no)
        if event_key not in known_events:
            logger.warning(f"⚠️  {path}:{line_no}: unknown event {event_key!r}, row skipped")
            continue
        citations[event_key][year] += count
    return {key: dict(years) for key, years in citations.items()}


def build_corpus(events: Iterable[Event],
                 ratings: Optional[Mapping[str, List[int]]] = None,
                 citations: Optional[Mapping[str, Mapping[int, int]]] = None,
                 author_record_counts: Optional[Mapping[Tuple[str, int], int]] = None) -> Corpus:
    """Assemble conferences from events and attach ratings and citations."""
    ratings = ratings or {}
    citations = citations or {}

    grouped: Dict[str, List[Event]] = defaultdict(list)
    for event in events:
        if event.event_key in citations:
            event = Event(
                event_key=event.event_key,
                conf_key=event.conf_key,
                entry_date=event.entry_date,
                event_date=event.event_date,
                country=event.country,
                paper_count=event.paper_count,
                author_ids=event.author_ids,
                citations_per_year=dict(citations[event.event_key]),
                title=event.title,
            )
        grouped[event.conf_key].append(event)

    conferences = {
        conf_key: Conference(conf_key=conf_key, events=tuple(grouped[conf_key]),
                             rating_values=tuple(ratings.get(conf_key, ())))
        for conf_key in sorted(grouped)
    }
    return Corpus(conferences=conferences, author_record_counts=dict(author_record_counts or {}))


def ingest(config: RunConfig) -> Corpus:
    """
    Build the corpus from the files named in the run configuration.

    Args:
        config: Run configuration with at least ``events_path`` set

    Returns:
        Corpus: The assembled corpus

    Raises:
        IngestError: On malformed lines or duplicate keys
    """
    gazetteer = load_gazetteer(config.gazetteer_path)
    events = read_events(config.events_path, gazetteer)
    conf_keys = {event.conf_key for event in events}
    event_keys = {event.event_key for event in events}

    author_counts: Dict[Tuple[str, int], int] = {}
    if config.papers_path:
        author_counts.update(read_papers(config.papers_path))
    if config.author_counts_path:
        # Precomputed counts win over derived ones
        author_counts.update(read_author_counts(config.author_counts_path))

    ratings = read_ratings(config.ratings_path, config.rating_class_map, conf_keys) \
        if config.ratings_path else {}
    citations = read_citations(config.citations_path, event_keys) if config.citations_path else {}

    corpus = build_corpus(events, ratings, citations, author_counts)

    unrankable = [key for key, conference in corpus.conferences.items() if not conference.rankable]
    for key in unrankable:
        logger.info(f"Conference {key} has no dated event and cannot be ranked")
    undated = sum(1 for event in events if event.event_date is None)
    logger.info(f"✅ Ingested {len(events)} events of {len(corpus.conferences)} conferences "
                f"({undated} undated events, {len(unrankable)} unrankable conferences)")
    return corpus
