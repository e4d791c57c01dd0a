"""
Scoring and ranking of conferences for confsched.

Every conference gets a base score from how overdue its next proceedings
entry is (Δ), multiplied by one weighting factor: ratings,
internationality, discontinuation, citations or author prominence. The raw
delay alone forms the baseline ranking.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from confsched.corpus import (
    CalendarDate,
    Conference,
    ConferenceProfile,
    Corpus,
    add_months,
    derive_profile,
    diff_months,
)
from confsched.errors import InvariantViolation, UnrankableConferenceError
from confsched.logging_utils import get_logger

# Get logger
logger = get_logger(__name__)

# Events with fewer papers are ignored for author prominence
MIN_PROMINENCE_PAPERS = 10

Number = Union[int, float, Fraction]


class Factor(str, Enum):
    """Ranking variants: the raw-delay baseline and the five weighting factors."""

    BASELINE = 'baseline'
    RATING = 'rating'
    INTERNATIONALITY = 'internationality'
    DISCONTINUED = 'discontinued'
    CITATION = 'citation'
    PROMINENCE = 'prominence'

    @classmethod
    def parse(cls, name: str) -> 'Factor':
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ', '.join(f.value for f in cls)
            raise ValueError(f"Unknown factor {name!r} (expected one of: {valid})") from None


ALL_FACTORS: Tuple[Factor, ...] = tuple(Factor)
WEIGHTING_FACTORS: Tuple[Factor, ...] = tuple(f for f in Factor if f is not Factor.BASELINE)


class BaselineOrder(str, Enum):
    """How the baseline orders conferences by Δ."""

    # Δ ascending among due conferences, not-yet-due ones last by ascending |Δ|
    DUE_FIRST = 'due-first'
    # Δ descending, most overdue first
    MOST_OVERDUE = 'most-overdue'


@dataclass(frozen=True)
class FactorWeights:
    """Δ(c), the base delay score and all five weights of one conference."""

    delay_base: int
    rating: float
    internationality: float
    discontinued: float
    citation: float
    prominence: float
    delta: int

    def weight(self, factor: Factor) -> float:
        return {
            Factor.RATING: self.rating,
            Factor.INTERNATIONALITY: self.internationality,
            Factor.DISCONTINUED: self.discontinued,
            Factor.CITATION: self.citation,
            Factor.PROMINENCE: self.prominence,
        }[factor]

    def check_ranges(self, conf_key: str = '?') -> None:
        """Raise InvariantViolation if any weight leaves its documented range."""
        problems = []
        if self.delay_base not in (0, 1, 2, 3, 4):
            problems.append(f"w_delay={self.delay_base}")
        for name in ('rating', 'internationality', 'citation', 'prominence'):
            value = getattr(self, name)
            if not 1.0 <= value <= 2.0:
                problems.append(f"w_{name}={value}")
        if not 0.0 < self.discontinued <= 1.0:
            problems.append(f"w_discontinued={self.discontinued}")
        if problems:
            raise InvariantViolation(f"Weights out of range for {conf_key}: {', '.join(problems)}")


@dataclass(frozen=True)
class RankedEntry:
    conf_key: str
    score: float
    rank: int


@dataclass(frozen=True)
class RankedList:
    """Conferences in priority order for one date and one factor."""

    now: CalendarDate
    factor: Factor
    entries: Tuple[RankedEntry, ...]

    @property
    def query_id(self) -> str:
        return str(self.now)

    def conf_keys(self) -> List[str]:
        return [entry.conf_key for entry in self.entries]


@dataclass(frozen=True)
class CorpusMaxima:
    """max_C of each max-normalised factor; 0 means no conference is covered."""

    rating: Fraction = Fraction(0)
    internationality: int = 0
    citation: Fraction = Fraction(0)
    prominence: Fraction = Fraction(0)


def expected_next_entry(profile: ConferenceProfile) -> CalendarDate:
    """Expected entry date of the next event: (m(c), year(d_n) + δ_year) + δ_month."""
    base = CalendarDate(month=profile.mode_month,
                        year=profile.last_entry_date.year + profile.delta_year)
    return add_months(base, profile.delta_month)


def delay(profile: ConferenceProfile, now: CalendarDate) -> int:
    """Δ(c): months the next entry is overdue at ``now`` (negative if not yet due)."""
    return diff_months(now, expected_next_entry(profile))


def delay_base_score(delta: int) -> int:
    """Map Δ(c) onto the five delay buckets 4, 3, 2, 1 and 0 (not yet due)."""
    if delta < 0:
        return 0
    if delta <= 3:
        return 4
    if delta <= 7:
        return 3
    if delta <= 11:
        return 2
    return 1


def _normalised(value: Number, maximum: Number) -> float:
    """1 + value/maximum, or the neutral 1 for uncovered conferences."""
    if value <= 0 or maximum <= 0:
        return 1.0
    return float(1 + Fraction(value) / Fraction(maximum))


def rating_value(c: Conference) -> Fraction:
    """r(c): mean numeric rating over the lists that rate the conference, else 0."""
    if not c.rating_values:
        return Fraction(0)
    return Fraction(sum(c.rating_values), len(c.rating_values))


def rating_score(c: Conference, max_r: Number) -> float:
    """w_r(c) = 1 + r(c)/max_r."""
    return _normalised(rating_value(c), max_r)


def internationality_value(c: Conference, now: Optional[CalendarDate] = None) -> int:
    """i(c): number of distinct venue countries, optionally among events visible at ``now``."""
    events = c.events if now is None else c.visible_events(now)
    return len({event.country for event in events if event.country})


def internationality_score(c: Conference, max_i: int, now: Optional[CalendarDate] = None) -> float:
    """w_i(c) = 1 + i(c)/max_i."""
    return _normalised(internationality_value(c, now), max_i)


def discontinued_score(profile: ConferenceProfile, now: CalendarDate) -> float:
    """w_d(c) = (1 + years since last entry / δ_year)^-2."""
    years_since = max(0, now.year - profile.last_entry_date.year)
    return (1.0 + years_since / profile.delta_year) ** -2


def citation_value(c: Conference, now: CalendarDate) -> Fraction:
    """
    cit(c): citations per paper summed over the citation years.

    The citation years are the event years strictly before ``now.year``;
    events without papers are skipped.
    """
    events = c.visible_events(now)
    years = {event.event_date.year for event in events
             if event.is_dated and event.event_date.year < now.year}
    total = Fraction(0)
    for event in events:
        if event.paper_count <= 0:
            continue
        cited = sum(count for year, count in event.citations_per_year.items() if year in years)
        if cited:
            total += Fraction(cited, event.paper_count)
    return total


def citation_score(c: Conference, now: CalendarDate, max_cit: Number) -> float:
    """w_cit(c) = 1 + cit(c)/max_cit."""
    return _normalised(citation_value(c, now), max_cit)


def prominence_value(c: Conference, corpus: Corpus, now: CalendarDate) -> Fraction:
    """
    prm(c): mean author prominence over events with at least 10 papers.

    An event's prominence is the mean record count p(a, year(now) - 1) of
    its authors. Events without authors are left out.
    """
    reference_year = now.year - 1
    per_event = []
    for event in c.visible_events(now):
        if event.paper_count < MIN_PROMINENCE_PAPERS or not event.author_ids:
            continue
        records = sum(corpus.author_records(author, reference_year) for author in event.author_ids)
        per_event.append(Fraction(records, event.author_count))
    if not per_event:
        return Fraction(0)
    return sum(per_event, Fraction(0)) / len(per_event)


def prominence_score(c: Conference, corpus: Corpus, now: CalendarDate, max_prm: Number) -> float:
    """w_prm(c) = 1 + prm(c)/max_prm."""
    return _normalised(prominence_value(c, corpus, now), max_prm)


def corpus_maxima(corpus: Corpus, now: CalendarDate,
                  conf_keys: Optional[Iterable[str]] = None) -> CorpusMaxima:
    """
    Compute max_C of every max-normalised factor.

    Args:
        corpus: The corpus
        now: The evaluation date
        conf_keys: Conferences to take the maxima over (default: all rankable at ``now``)

    Returns:
        CorpusMaxima: The maxima; uncovered factors have maximum 0
    """
    if conf_keys is None:
        conf_keys = [key for key in corpus.sorted_keys()
                     if corpus.conferences[key].dated_events(now)]
    conferences = [corpus.conferences[key] for key in conf_keys]
    return CorpusMaxima(
        rating=max((rating_value(c) for c in conferences), default=Fraction(0)),
        internationality=max((internationality_value(c, now) for c in conferences), default=0),
        citation=max((citation_value(c, now) for c in conferences), default=Fraction(0)),
        prominence=max((prominence_value(c, corpus, now) for c in conferences), default=Fraction(0)),
    )


def conference_weights(c: Conference, corpus: Corpus, now: CalendarDate, maxima: CorpusMaxima,
                       profile: Optional[ConferenceProfile] = None) -> FactorWeights:
    """
    Compute Δ(c), w_delay and all five weighting factors of a conference.

    Raises:
        UnrankableConferenceError: If no profile can be derived at ``now``
    """
    if profile is None:
        profile = derive_profile(c, now)
    delta = delay(profile, now)
    weights = FactorWeights(
        delay_base=delay_base_score(delta),
        rating=rating_score(c, maxima.rating),
        internationality=internationality_score(c, maxima.internationality, now),
        discontinued=discontinued_score(profile, now),
        citation=citation_score(c, now, maxima.citation),
        prominence=prominence_score(c, corpus, now, maxima.prominence),
        delta=delta,
    )
    weights.check_ranges(c.conf_key)
    return weights


def baseline_score(delta: int, order: BaselineOrder = BaselineOrder.DUE_FIRST) -> float:
    """
    Score encoding the baseline order of Δ; higher scores rank first.

    ``due-first`` maps Δ >= 0 to 1/(1+Δ) and Δ < 0 to -|Δ|.
    """
    if order is BaselineOrder.MOST_OVERDUE:
        return float(delta)
    if delta >= 0:
        return 1.0 / (1 + delta)
    return float(delta)


def score(c: Conference, factor: Factor, now: CalendarDate, maxima: CorpusMaxima,
          corpus: Optional[Corpus] = None,
          baseline_order: BaselineOrder = BaselineOrder.DUE_FIRST) -> float:
    """
    Score one conference under one factor.

    Weighting factors yield w_delay(Δ) × w_factor; the baseline yields a
    key that orders Δ as described by ``baseline_order``.
    """
    weights = conference_weights(c, corpus if corpus is not None else Corpus(), now, maxima)
    return _factor_score(weights, factor, baseline_order)


def _factor_score(weights: FactorWeights, factor: Factor, baseline_order: BaselineOrder) -> float:
    if factor is Factor.BASELINE:
        return baseline_score(weights.delta, baseline_order)
    return weights.delay_base * weights.weight(factor)


def _ranked(now: CalendarDate, factor: Factor, scored: Sequence[Tuple[str, float]]) -> RankedList:
    ordered = sorted(scored, key=lambda item: (-item[1], item[0]))
    entries = tuple(RankedEntry(conf_key=key, score=value, rank=position)
                    for position, (key, value) in enumerate(ordered, start=1))
    for previous, current in zip(entries, entries[1:]):
        if current.score > previous.score:
            raise InvariantViolation(f"Ranking for {factor.value} at {now} is not ordered by score")
    return RankedList(now=now, factor=factor, entries=entries)


def rank_all(corpus: Corpus, now: CalendarDate, factors: Sequence[Factor],
             baseline_order: BaselineOrder = BaselineOrder.DUE_FIRST) -> Dict[Factor, RankedList]:
    """
    Rank the corpus under several factors at once.

    Profiles, maxima and weights are computed once and shared by all factors.
    Conferences without a visible dated event are left out.

    Args:
        corpus: The corpus snapshot
        now: The evaluation date
        factors: Factors to produce rankings for
        baseline_order: Ordering rule of the baseline

    Returns:
        Dict[Factor, RankedList]: One ranking per requested factor
    """
    profiles: Dict[str, ConferenceProfile] = {}
    for key in corpus.sorted_keys():
        try:
            profiles[key] = derive_profile(corpus.conferences[key], now)
        except UnrankableConferenceError as e:
            logger.debug(f"Omitting {key} at {now}: {e}")

    maxima = corpus_maxima(corpus, now, profiles.keys())
    weights = {key: conference_weights(corpus.conferences[key], corpus, now, maxima, profile)
               for key, profile in profiles.items()}

    rankings = {}
    for factor in factors:
        scored = [(key, _factor_score(w, factor, baseline_order)) for key, w in weights.items()]
        rankings[factor] = _ranked(now, factor, scored)
    return rankings


def rank(corpus: Corpus, now: CalendarDate, factor: Factor,
         baseline_order: BaselineOrder = BaselineOrder.DUE_FIRST) -> RankedList:
    """Rank the corpus at ``now`` under one factor."""
    return rank_all(corpus, now, [factor], baseline_order)[factor]
