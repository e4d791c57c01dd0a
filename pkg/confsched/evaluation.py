"""
Leave-out evaluation of conference rankings for confsched.

Rankings for each month of an evaluation year are computed from data
entered before that year and judged against graded pseudo-relevance
derived from the entries that actually arrived. Quality is measured with
nDCG at several cutoffs and compared to the baseline with a paired
two-sided t-test over the twelve monthly values.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from confsched.corpus import CalendarDate, Conference, Corpus, Event, diff_months
from confsched.errors import InsufficientDataError
from confsched.logging_utils import get_logger
from confsched.scoring import BaselineOrder, Factor, RankedList, delay_base_score, rank_all

# Get logger
logger = get_logger(__name__)

MONTHS = tuple(range(1, 13))


@dataclass(frozen=True)
class QrelSet:
    """Graded pseudo-relevance judgments (0..4) for one evaluation month."""

    query_id: str
    judgments: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class EvalReport:
    """Monthly and yearly nDCG of one factor, with p-values against the baseline."""

    factor: Factor
    per_month_ndcg: Dict[str, Dict[int, float]]
    yearly_average: Dict[int, float]
    p_value_vs_baseline: Dict[int, float]


@dataclass(frozen=True)
class YearEvaluation:
    """Everything a leave-out evaluation produced: runs, qrels and reports."""

    eval_year: int
    runs: Dict[str, Dict[Factor, RankedList]]
    qrels: Dict[str, QrelSet]
    reports: List[EvalReport]


def judgment_delay(c: Conference, now: CalendarDate) -> Optional[int]:
    """Months between the latest entry at or before ``now`` and ``now``."""
    entries = [event.entry_date for event in c.visible_events(now)]
    if not entries:
        return None
    return diff_months(now, max(entries))


def pseudo_relevance(c: Conference, now: CalendarDate) -> int:
    """
    Grade a conference by how recently its latest record was entered.

    The judgment delay is bucketed like the delay score, so grades run
    from 4 (entered within the last three months) to 1; a conference
    without any entry at or before ``now`` gets 0.
    """
    delta = judgment_delay(c, now)
    if delta is None:
        return 0
    return delay_base_score(delta)


def build_qrels(corpus_full: Corpus, now: CalendarDate) -> QrelSet:
    """Judge every conference with at least one dated event at ``now``."""
    judgments = {}
    for key in corpus_full.sorted_keys():
        conference = corpus_full.conferences[key]
        if conference.rankable:
            judgments[key] = pseudo_relevance(conference, now)
    return QrelSet(query_id=str(now), judgments=judgments)


def leave_out_snapshot(corpus_full: Corpus, eval_year: int) -> Corpus:
    """
    View of the corpus as it stood before ``eval_year``.

    Events entered in or after ``eval_year`` are dropped, and citation and
    author record counts are truncated to earlier years.
    """
    conferences = {}
    for key, conference in corpus_full.conferences.items():
        events = tuple(
            Event(
                event_key=event.event_key,
                conf_key=event.conf_key,
                entry_date=event.entry_date,
                event_date=event.event_date,
                country=event.country,
                paper_count=event.paper_count,
                author_ids=event.author_ids,
                citations_per_year={year: count for year, count in event.citations_per_year.items()
                                    if year < eval_year},
                title=event.title,
            )
            for event in conference.events
            if event.entry_date.year < eval_year
        )
        conferences[key] = Conference(conf_key=key, events=events, rating_values=conference.rating_values)

    author_counts = {(author, year): count
                     for (author, year), count in corpus_full.author_record_counts.items()
                     if year < eval_year}
    return Corpus(conferences=conferences, author_record_counts=author_counts)


def _gains(grades: np.ndarray, linear_gain: bool) -> np.ndarray:
    if linear_gain:
        return grades.astype(float)
    return np.power(2.0, grades) - 1.0


def _dcg(grades: Sequence[int], k: int, linear_gain: bool) -> float:
    top = np.asarray(list(grades)[:k], dtype=float)
    if top.size == 0:
        return 0.0
    discounts = np.log2(np.arange(2, top.size + 2, dtype=float))
    return float(np.sum(_gains(top, linear_gain) / discounts))


def ndcg_at_k(run: RankedList, qrels: QrelSet, k: int, linear_gain: bool = False) -> float:
    """
    nDCG of the top ``k`` of a ranking.

    Gains are 2^grade - 1 (or the grade itself with ``linear_gain``),
    discounted by log2(rank + 1). Unjudged conferences count as grade 0.
    The ideal ranking is taken from the qrels; if its DCG is 0 the result
    is 0.

    Args:
        run: The ranking
        qrels: Judgments for the same query
        k: Cutoff, at least 1
        linear_gain: Use linear instead of exponential gain

    Returns:
        float: nDCG@k in [0, 1]
    """
    if k < 1:
        raise ValueError(f"Cutoff must be >= 1, got {k}")
    run_grades = [qrels.judgments.get(key, 0) for key in run.conf_keys()]
    ideal_grades = sorted(qrels.judgments.values(), reverse=True)
    idcg = _dcg(ideal_grades, k, linear_gain)
    if idcg == 0.0:
        return 0.0
    return _dcg(run_grades, k, linear_gain) / idcg


def paired_ttest_two_sided(a: Sequence[float], b: Sequence[float]) -> float:
    """
    p-value of a paired two-sided t-test on the differences a - b.

    All-zero differences give 1.0; constant non-zero differences (infinite t)
    give 0.0.

    Raises:
        ValueError: If the sequences differ in length
        InsufficientDataError: If fewer than two pairs are given
    """
    if len(a) != len(b):
        raise ValueError(f"Paired samples differ in length: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise InsufficientDataError(f"A paired t-test needs at least 2 pairs, got {len(a)}")

    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    differences = x - y
    if not np.any(differences):
        return 1.0
    if np.std(differences, ddof=1) == 0.0:
        return 0.0
    return float(stats.ttest_rel(x, y).pvalue)


def _evaluate_month(corpus_full: Corpus, snapshot: Corpus, now: CalendarDate,
                    factors: Sequence[Factor],
                    baseline_order: BaselineOrder) -> Tuple[Dict[Factor, RankedList], QrelSet]:
    runs = rank_all(snapshot, now, factors, baseline_order)
    qrels = build_qrels(corpus_full, now)
    logger.debug(f"Evaluated {now}: {len(qrels.judgments)} judged conferences")
    return runs, qrels


def leave_out_evaluation(corpus_full: Corpus, eval_year: int, factors: Sequence[Factor],
                         cutoffs: Sequence[int], linear_gain: bool = False,
                         baseline_order: BaselineOrder = BaselineOrder.DUE_FIRST,
                         workers: int = 1) -> YearEvaluation:
    """
    Run the sliding-window leave-out evaluation over the months of ``eval_year``.

    Rankings come from the snapshot before ``eval_year``; qrels come from the
    full corpus restricted to entries up to each month. The baseline is always
    ranked so that every factor can be tested against it.

    Args:
        corpus_full: The complete corpus
        eval_year: The evaluation year
        factors: Factors to report on
        cutoffs: nDCG cutoffs
        linear_gain: Use linear instead of exponential nDCG gain
        baseline_order: Ordering rule of the baseline
        workers: Number of months evaluated in parallel

    Returns:
        YearEvaluation: Runs and qrels per month plus one report per factor
    """
    snapshot = leave_out_snapshot(corpus_full, eval_year)
    ranked_factors = list(dict.fromkeys([Factor.BASELINE, *factors]))
    months = [CalendarDate(month=m, year=eval_year) for m in MONTHS]

    def evaluate(now: CalendarDate):
        return _evaluate_month(corpus_full, snapshot, now, ranked_factors, baseline_order)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, months))
    else:
        results = [evaluate(now) for now in months]

    runs = {str(now): month_runs for now, (month_runs, _) in zip(months, results)}
    qrels = {str(now): month_qrels for now, (_, month_qrels) in zip(months, results)}

    ndcg: Dict[Factor, Dict[str, Dict[int, float]]] = {
        factor: {
            query_id: {k: ndcg_at_k(runs[query_id][factor], qrels[query_id], k, linear_gain)
                       for k in cutoffs}
            for query_id in runs
        }
        for factor in ranked_factors
    }

    reports = []
    for factor in factors:
        per_month = ndcg[factor]
        yearly = {k: float(np.mean([per_month[q][k] for q in runs])) for k in cutoffs}
        p_values = {
            k: paired_ttest_two_sided([per_month[q][k] for q in runs],
                                      [ndcg[Factor.BASELINE][q][k] for q in runs])
            for k in cutoffs
        }
        reports.append(EvalReport(factor=factor, per_month_ndcg=per_month,
                                  yearly_average=yearly, p_value_vs_baseline=p_values))
        logger.info(f"📊 {factor.value}: " + ', '.join(f"nDCG@{k}={yearly[k]:.4f}" for k in cutoffs))

    return YearEvaluation(eval_year=eval_year, runs=runs, qrels=qrels, reports=reports)


def evaluate_year(corpus_full: Corpus, eval_year: int, factors: Sequence[Factor],
                  cutoffs: Sequence[int], linear_gain: bool = False,
                  baseline_order: BaselineOrder = BaselineOrder.DUE_FIRST,
                  workers: int = 1) -> List[EvalReport]:
    """Leave-out evaluation of ``eval_year``, returning one report per factor."""
    return leave_out_evaluation(corpus_full, eval_year, factors, cutoffs, linear_gain,
                                baseline_order, workers).reports


def significance_marker(p_value: float) -> str:
    """Stars for p < 0.001, 0.01 and 0.05."""
    if p_value < 0.001:
        return '***'
    if p_value < 0.01:
        return '**'
    if p_value < 0.05:
        return '*'
    return ''
