"""
Result storage for confsched.

This module writes and re-reads the evaluation artefacts: trec-style run
and qrels files and the CSV reports.
"""

import os
import re
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Sequence

import pandas as pd

from confsched.errors import FormatError
from confsched.evaluation import EvalReport, QrelSet
from confsched.logging_utils import get_logger
from confsched.scoring import RankedList

# Get logger
logger = get_logger(__name__)

RUN_LINE = re.compile(r'^(\d{4}-\d{2}) Q0 (\S+) ([1-9]\d*) (-?\d+\.\d{6}) (\S+)$')
QREL_LINE = re.compile(r'^(\d{4}-\d{2}) 0 (\S+) ([0-4])$')
MONTH_COLUMNS = [f"m{month:02d}" for month in range(1, 13)]
REPORT_COLUMNS = ['factor', 'cutoff', *MONTH_COLUMNS, 'average', 'p_vs_baseline']


class RunLine(NamedTuple):
    query_id: str
    conf_key: str
    rank: int
    score: float
    run_tag: str


def format_run_line(query_id: str, conf_key: str, rank: int, score: float, run_tag: str) -> str:
    return f"{query_id} Q0 {conf_key} {rank} {score:.6f} {run_tag}"


def format_qrel_line(query_id: str, conf_key: str, grade: int) -> str:
    return f"{query_id} 0 {conf_key} {grade}"


def report_rows(reports: Sequence[EvalReport]) -> List[Dict[str, Any]]:
    """Flatten reports into one row per factor and cutoff."""
    rows = []
    for report in reports:
        query_ids = sorted(report.per_month_ndcg)
        for k in sorted(report.yearly_average):
            row: Dict[str, Any] = {'factor': report.factor.value, 'cutoff': k}
            for query_id in query_ids:
                row[f"m{int(query_id[-2:]):02d}"] = report.per_month_ndcg[query_id][k]
            row['average'] = report.yearly_average[k]
            row['p_vs_baseline'] = report.p_value_vs_baseline[k]
            rows.append(row)
    return rows


class Storage(ABC):
    """Abstract base class for result storage backends."""

    @abstractmethod
    def save_run(self, name: str, rankings: Iterable[RankedList], run_tag: str) -> bool:
        """
        Save rankings as a run file.

        Args:
            name: Artefact name
            rankings: Rankings, one query each
            run_tag: Tag written in the last column

        Returns:
            bool: True if successful, False otherwise
        """
        pass

    @abstractmethod
    def load_run(self, name: str) -> List[RunLine]:
        """Load a run file."""
        pass

    @abstractmethod
    def save_qrels(self, name: str, qrels: Iterable[QrelSet]) -> bool:
        """Save judgments as a qrels file."""
        pass

    @abstractmethod
    def load_qrels(self, name: str) -> Dict[str, QrelSet]:
        """Load a qrels file."""
        pass

    @abstractmethod
    def save_report(self, name: str, reports: Sequence[EvalReport]) -> bool:
        """Save evaluation reports as CSV."""
        pass

    @abstractmethod
    def load_report(self, name: str) -> pd.DataFrame:
        """Load an evaluation report."""
        pass

    @abstractmethod
    def save_table(self, name: str, rows: Sequence[Mapping[str, Any]], columns: Sequence[str],
                   float_format: str = '%.6f') -> bool:
        """Save a generic table as CSV."""
        pass


class FileStorage(Storage):
    """File-based storage below an output directory (UTF-8, LF line endings)."""

    def __init__(self, out_dir: str = 'out'):
        self.out_dir = out_dir

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def _write_lines(self, name: str, lines: Iterable[str]) -> bool:
        path = self.path(name)
        try:
            os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
            with open(path, 'w', encoding='utf-8', newline='\n') as file:
                count = 0
                for line in lines:
                    file.write(line + '\n')
                    count += 1
            logger.debug(f"Saved {count} lines to {path}")
            return True
        except Exception as e:
            logger.error(f"Error saving {path}: {e}")
            return False

    def _read_lines(self, name: str):
        path = self.path(name)
        with open(path, 'r', encoding='utf-8', newline='') as file:
            for line_no, line in enumerate(file, start=1):
                if not line.endswith('\n') or line.endswith('\r\n'):
                    raise FormatError(path, line_no, "lines must end with a single LF")
                yield path, line_no, line[:-1]

    def save_run(self, name: str, rankings: Iterable[RankedList], run_tag: str) -> bool:
        lines = (format_run_line(ranking.query_id, entry.conf_key, entry.rank, entry.score, run_tag)
                 for ranking in rankings for entry in ranking.entries)
        return self._write_lines(name, lines)

    def load_run(self, name: str) -> List[RunLine]:
        run = []
        for path, line_no, line in self._read_lines(name):
            match = RUN_LINE.match(line)
            if not match:
                raise FormatError(path, line_no, f"not a run line: {line!r}")
            query_id, conf_key, rank, score, run_tag = match.groups()
            run.append(RunLine(query_id, conf_key, int(rank), float(score), run_tag))
        return run

    def save_qrels(self, name: str, qrels: Iterable[QrelSet]) -> bool:
        lines = (format_qrel_line(qrel_set.query_id, conf_key, grade)
                 for qrel_set in qrels
                 for conf_key, grade in sorted(qrel_set.judgments.items()))
        return self._write_lines(name, lines)

    def load_qrels(self, name: str) -> Dict[str, QrelSet]:
        judgments: Dict[str, Dict[str, int]] = {}
        for path, line_no, line in self._read_lines(name):
            match = QREL_LINE.match(line)
            if not match:
                raise FormatError(path, line_no, f"not a qrels line: {line!r}")
            query_id, conf_key, grade = match.groups()
            per_query = judgments.setdefault(query_id, {})
            if conf_key in per_query:
                raise FormatError(path, line_no, f"duplicate judgment for {conf_key} in {query_id}")
            per_query[conf_key] = int(grade)
        return {query_id: QrelSet(query_id=query_id, judgments=per_query)
                for query_id, per_query in judgments.items()}

    def save_report(self, name: str, reports: Sequence[EvalReport]) -> bool:
        return self.save_table(name, report_rows(reports), REPORT_COLUMNS, float_format='%.4f')

    def load_report(self, name: str) -> pd.DataFrame:
        path = self.path(name)
        with open(path, 'r', encoding='utf-8') as file:
            header = file.readline().rstrip('\n')
        if header != ','.join(REPORT_COLUMNS):
            raise FormatError(path, 1, f"unexpected report header {header!r}")
        frame = pd.read_csv(path, dtype={'factor': str, 'cutoff': int})
        values = frame[[*MONTH_COLUMNS, 'average', 'p_vs_baseline']]
        if values.isna().any().any() or ((values < 0) | (values > 1)).any().any():
            raise FormatError(path, 2, "report values must lie in [0, 1]")
        return frame

    def save_table(self, name: str, rows: Sequence[Mapping[str, Any]], columns: Sequence[str],
                   float_format: str = '%.6f') -> bool:
        path = self.path(name)
        try:
            os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
            frame = pd.DataFrame(list(rows), columns=list(columns))
            frame.to_csv(path, index=False, float_format=float_format,
                         lineterminator='\n', encoding='utf-8')
            logger.debug(f"Saved {len(frame)} rows to {path}")
            return True
        except Exception as e:
            logger.error(f"Error saving {path}: {e}")
            return False
