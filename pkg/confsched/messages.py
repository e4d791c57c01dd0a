"""
Console formatting for confsched.

This module turns conference profiles and evaluation reports into the
plain-text tables printed by the command line tool.
"""

from typing import Any, Dict, List, Mapping, Sequence

from confsched.evaluation import EvalReport, significance_marker

PROFILE_COLUMNS = [
    'conf_key', 'delta', 'w_delay', 'w_r', 'w_i', 'w_d', 'w_cit', 'w_prm',
    'delta_year', 'mode_month', 'delta_month', 'last_entry', 'expected_next',
]

# Column headers as printed on the console
PROFILE_HEADERS = {
    'conf_key': 'c', 'delta': 'Δ(c)', 'w_delay': 'w_delay', 'w_r': 'w_r', 'w_i': 'w_i',
    'w_d': 'w_d', 'w_cit': 'w_cit', 'w_prm': 'w_prm', 'delta_year': 'δ_year',
    'mode_month': 'm(c)', 'delta_month': 'δ_month', 'last_entry': 'last entry',
    'expected_next': 'expected',
}


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    lines = ['  '.join(h.ljust(w) if i == 0 else h.rjust(w) for i, (h, w) in enumerate(zip(headers, widths)))]
    lines.append('  '.join('-' * w for w in widths))
    for row in rows:
        lines.append('  '.join(c.ljust(w) if i == 0 else c.rjust(w)
                               for i, (c, w) in enumerate(zip(row, widths))))
    return '\n'.join(lines)


def format_profile_row(row: Mapping[str, Any]) -> List[str]:
    """
    Format one conference profile as table cells.

    Args:
        row: Profile values keyed by PROFILE_COLUMNS

    Returns:
        List[str]: Cells in PROFILE_COLUMNS order; weights with 3 decimals
    """
    return [_cell(row.get(column, '')) for column in PROFILE_COLUMNS]


def format_profile_table(rows: Sequence[Mapping[str, Any]]) -> str:
    """Format conference profiles like an example-values table."""
    return _table([PROFILE_HEADERS[c] for c in PROFILE_COLUMNS],
                  [format_profile_row(row) for row in rows])


def format_report_table(reports: Sequence[EvalReport], cutoff: int) -> str:
    """
    Format the monthly nDCG values of all factors at one cutoff.

    One row per month plus the yearly average; one column per factor.
    """
    headers = ['month'] + [report.factor.value for report in reports]
    query_ids = sorted(reports[0].per_month_ndcg) if reports else []
    rows = [[query_id] + [f"{report.per_month_ndcg[query_id][cutoff]:.4f}" for report in reports]
            for query_id in query_ids]
    rows.append(['average'] + [f"{report.yearly_average[cutoff]:.4f}" for report in reports])
    return f"nDCG@{cutoff}\n" + _table(headers, rows)


def cutoff_table_rows(reports: Sequence[EvalReport]) -> List[Dict[str, str]]:
    """
    Yearly averages per factor and cutoff, marked with significance stars.

    Returns:
        List[Dict[str, str]]: One row per factor with ``ndcg@k`` columns
    """
    rows = []
    for report in reports:
        row = {'factor': report.factor.value}
        for k in sorted(report.yearly_average):
            marker = significance_marker(report.p_value_vs_baseline[k])
            row[f"ndcg@{k}"] = f"{report.yearly_average[k]:.4f}{marker}"
        rows.append(row)
    return rows


def format_cutoff_table(reports: Sequence[EvalReport]) -> str:
    rows = cutoff_table_rows(reports)
    if not rows:
        return ''
    headers = list(rows[0])
    return _table(headers, [[row[h] for h in headers] for row in rows])
