"""
Tests for the messages module.
"""

import unittest

from confsched.evaluation import EvalReport
from confsched.messages import (
    PROFILE_COLUMNS,
    cutoff_table_rows,
    format_cutoff_table,
    format_profile_row,
    format_profile_table,
    format_report_table,
)
from confsched.scoring import Factor


def report(factor, value, p_value):
    per_month = {f"2016-{m:02d}": {10: value, 20: value / 2} for m in range(1, 13)}
    return EvalReport(factor=factor, per_month_ndcg=per_month,
                      yearly_average={10: value, 20: value / 2},
                      p_value_vs_baseline={10: p_value, 20: 1.0})


class TestMessages(unittest.TestCase):
    """Test cases for the messages module."""

    def setUp(self):
        self.profile = {
            'conf_key': 'jcdl', 'delta': -2, 'w_delay': 0, 'w_r': 2.0, 'w_i': 1.5, 'w_d': 0.25,
            'w_cit': 1.0, 'w_prm': 1.3333333, 'delta_year': 1, 'mode_month': 6, 'delta_month': 2,
            'last_entry': '2015-08', 'expected_next': '2016-08',
        }

    def test_format_profile_row(self):
        """Test that weights get three decimals and integers stay as they are."""
        cells = format_profile_row(self.profile)
        self.assertEqual(len(cells), len(PROFILE_COLUMNS))
        self.assertEqual(cells[:4], ['jcdl', '-2', '0', '2.000'])
        self.assertEqual(cells[7], '1.333')
        self.assertEqual(cells[-2:], ['2015-08', '2016-08'])

    def test_format_profile_table(self):
        table = format_profile_table([self.profile, {**self.profile, 'conf_key': 'tpdl', 'delta': 14}])
        lines = table.split('\n')
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[0].startswith('c '))
        self.assertIn('Δ(c)', lines[0])
        self.assertIn('δ_year', lines[0])
        self.assertTrue(lines[3].startswith('tpdl'))
        self.assertEqual(len({len(line) for line in lines}), 1)

    def test_format_report_table(self):
        """Test one row per month plus the average."""
        table = format_report_table([report(Factor.BASELINE, 0.5, 1.0), report(Factor.RATING, 0.75, 0.01)], 10)
        lines = table.split('\n')
        self.assertEqual(lines[0], 'nDCG@10')
        self.assertEqual(lines[1].split(), ['month', 'baseline', 'rating'])
        self.assertEqual(lines[3].split(), ['2016-01', '0.5000', '0.7500'])
        self.assertEqual(lines[-1].split(), ['average', '0.5000', '0.7500'])
        self.assertEqual(len(lines), 2 + 1 + 12 + 1)

    def test_cutoff_table_rows_mark_significance(self):
        rows = cutoff_table_rows([report(Factor.RATING, 0.75, 0.004), report(Factor.CITATION, 0.5, 0.2)])
        self.assertEqual(rows[0], {'factor': 'rating', 'ndcg@10': '0.7500**', 'ndcg@20': '0.3750'})
        self.assertEqual(rows[1]['ndcg@10'], '0.5000')

    def test_format_cutoff_table(self):
        table = format_cutoff_table([report(Factor.RATING, 0.75, 0.0001)])
        lines = table.split('\n')
        self.assertEqual(lines[0].split(), ['factor', 'ndcg@10', 'ndcg@20'])
        self.assertEqual(lines[2].split(), ['rating', '0.7500***', '0.3750'])

    def test_empty_reports(self):
        self.assertEqual(format_cutoff_table([]), '')


if __name__ == '__main__':
    unittest.main()
