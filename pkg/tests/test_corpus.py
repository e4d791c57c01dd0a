"""
Tests for the core domain types and profile derivation.
"""

import unittest

import numpy as np

from confsched.corpus import (
    CalendarDate,
    Conference,
    Corpus,
    ConferenceProfile,
    add_months,
    derive_profile,
    diff_months,
    median_int,
)
from confsched.errors import EmptyInputError, InvalidDateError, UnrankableConferenceError
from tests.factories import d, event, series


class TestCalendarDate(unittest.TestCase):
    """Test cases for month-granular dates."""

    def test_ordering_by_year_then_month(self):
        """Test that dates order by year first."""
        self.assertLess(d(12, 2015), d(1, 2016))
        self.assertLess(d(3, 2016), d(4, 2016))
        self.assertEqual(max([d(6, 2016), d(12, 2015), d(1, 2016)]), d(6, 2016))

    def test_invalid_month_rejected(self):
        """Test that months outside 1..12 raise InvalidDateError."""
        for month in (0, 13, -1):
            with self.assertRaises(InvalidDateError):
                CalendarDate(month=month, year=2016)

    def test_invalid_year_rejected(self):
        """Test that years before 1900 raise InvalidDateError."""
        with self.assertRaises(InvalidDateError):
            CalendarDate(month=1, year=1899)

    def test_parse_and_format(self):
        """Test ISO YYYY-MM parsing and formatting."""
        self.assertEqual(CalendarDate.parse('2016-06'), d(6, 2016))
        self.assertEqual(str(d(3, 2004)), '2004-03')

    def test_parse_rejects_malformed_text(self):
        """Test that malformed dates are rejected."""
        for text in ('2016-6', '2016/06', '16-06', '2016-13', '', None):
            with self.assertRaises(InvalidDateError):
                CalendarDate.parse(text)

    def test_diff_months(self):
        """Test signed month differences."""
        self.assertEqual(diff_months(d(1, 2017), d(10, 2016)), 3)
        self.assertEqual(diff_months(d(6, 2016), d(6, 2016)), 0)
        self.assertEqual(diff_months(d(2, 2004), d(11, 2016)), -153)

    def test_add_months(self):
        """Test month addition with year carry."""
        self.assertEqual(add_months(d(11, 2016), 3), d(2, 2017))
        self.assertEqual(add_months(d(6, 2015), 0), d(6, 2015))
        self.assertEqual(add_months(d(1, 2016), -2), d(11, 2015))

    def test_add_months_inverts_diff_months(self):
        """Test that add_months(b, diff_months(a, b)) == a."""
        a, b = d(7, 2013), d(2, 2001)
        self.assertEqual(add_months(b, diff_months(a, b)), a)
        self.assertEqual(add_months(a, diff_months(b, a)), b)

    def test_add_months_underflow(self):
        """Test that results before 1900 raise InvalidDateError."""
        with self.assertRaises(InvalidDateError):
            add_months(d(1, 1900), -1)


class TestMedian(unittest.TestCase):
    """Test cases for the integer median."""

    def test_odd_count(self):
        self.assertEqual(median_int([1, 3, 2]), 2)

    def test_even_count_rounds_half_up(self):
        self.assertEqual(median_int([1, 1, 2, 2]), 2)
        self.assertEqual(median_int([2, 4]), 3)
        self.assertEqual(median_int([0, 1]), 1)

    def test_singleton(self):
        self.assertEqual(median_int([5]), 5)

    def test_empty_input(self):
        with self.assertRaises(EmptyInputError):
            median_int([])


class TestCorpus(unittest.TestCase):
    """Test cases for conferences and the corpus container."""

    def test_events_sorted_by_event_date(self):
        """Test that a conference keeps its events oldest first."""
        events = series('jcdl', [(6, 2015), (6, 2013), (6, 2014)])
        conference = Conference(conf_key='jcdl', events=events)
        self.assertEqual([e.event_date.year for e in conference.events], [2013, 2014, 2015])

    def test_visible_events_use_entry_date(self):
        """Test that only events entered by now are visible."""
        conference = Conference(conf_key='jcdl', events=series('jcdl', [(6, 2015), (6, 2016)], entry_delay=2))
        self.assertEqual(len(conference.visible_events(d(7, 2016))), 1)
        self.assertEqual(len(conference.visible_events(d(8, 2016))), 2)

    def test_rankable_requires_dated_event(self):
        """Test that conferences without any event date are unrankable."""
        undated = Conference(conf_key='x', events=(event('x', None, d(3, 2015)),))
        self.assertFalse(undated.rankable)
        self.assertTrue(Conference(conf_key='y', events=series('y', [(6, 2015)])).rankable)

    def test_author_records_uses_latest_earlier_year(self):
        """Test cumulative author lookups between recorded years."""
        corpus = Corpus(author_record_counts={('a1', 2010): 3, ('a1', 2013): 7})
        self.assertEqual(corpus.author_records('a1', 2009), 0)
        self.assertEqual(corpus.author_records('a1', 2010), 3)
        self.assertEqual(corpus.author_records('a1', 2012), 3)
        self.assertEqual(corpus.author_records('a1', 2015), 7)
        self.assertEqual(corpus.author_records('unknown', 2015), 0)


class TestDeriveProfile(unittest.TestCase):
    """Test cases for characteristic parameter derivation."""

    def test_yearly_june_events(self):
        """Test a yearly conference entered two months after each event."""
        conference = Conference(conf_key='c', events=series('c', [(6, y) for y in range(2012, 2016)], entry_delay=2))
        profile = derive_profile(conference, d(12, 2016))
        self.assertEqual((profile.delta_year, profile.mode_month, profile.delta_month), (1, 6, 2))
        self.assertEqual(profile.last_entry_date, d(8, 2015))

    def test_single_event(self):
        """Test the single-event fallback."""
        conference = Conference(conf_key='c', events=series('c', [(6, 2015)]))
        profile = derive_profile(conference, d(12, 2016))
        self.assertEqual((profile.delta_year, profile.mode_month, profile.delta_month), (1, 6, 0))

    def test_biennial_month_tie_broken_low(self):
        """Test that a tie between usual months picks the smaller month."""
        events = (
            event('c', d(3, 2009), d(4, 2009)),
            event('c', d(3, 2011), d(5, 2011)),
            event('c', d(9, 2013), d(10, 2013)),
            event('c', d(9, 2015), d(12, 2015)),
        )
        profile = derive_profile(Conference(conf_key='c', events=events), d(12, 2016))
        self.assertEqual(profile.delta_year, 2)
        self.assertEqual(profile.mode_month, 3)
        # Delays 1, 2, 1, 3 -> median of the middle pair (1, 2) rounded up
        self.assertEqual(profile.delta_month, 2)

    def test_only_recent_events_for_interval(self):
        """Test that the interval comes from the five most recent events."""
        dates = [(6, y) for y in (1990, 1995, 2000)] + [(6, y) for y in range(2010, 2015)]
        profile = derive_profile(Conference(conf_key='c', events=series('c', dates)), d(1, 2016))
        self.assertEqual(profile.delta_year, 1)

    def test_same_year_events_clamp_interval(self):
        """Test that two events in one year still give an interval of one year."""
        profile = derive_profile(Conference(conf_key='c', events=series('c', [(3, 2015), (9, 2015)])), d(1, 2016))
        self.assertEqual(profile.delta_year, 1)
        self.assertEqual(profile.last_entry_date, d(9, 2015))

    def test_negative_entry_delay_clamped(self):
        """Test that records entered before the event count as zero delay."""
        events = (event('c', d(6, 2015), d(4, 2015)),)
        profile = derive_profile(Conference(conf_key='c', events=events), d(12, 2016))
        self.assertEqual(profile.delta_month, 0)

    def test_invisible_events_ignored(self):
        """Test that events entered after now do not count."""
        conference = Conference(conf_key='c', events=series('c', [(6, 2014), (6, 2015), (6, 2016)], entry_delay=1))
        profile = derive_profile(conference, d(3, 2016))
        self.assertEqual(profile.last_entry_date, d(7, 2015))

    def test_undated_events_ignored(self):
        """Test that undated events do not contribute to the profile."""
        events = series('c', [(6, 2014)]) + (event('c', None, d(2, 2016)),)
        profile = derive_profile(Conference(conf_key='c', events=events), d(12, 2016))
        self.assertEqual(profile.last_entry_date, d(6, 2014))

    def test_shift_by_whole_years(self):
        """Test that moving every date by k years moves only the last entry date."""
        rng = np.random.default_rng(11)
        for _ in range(200):
            years = sorted(int(y) for y in rng.choice(np.arange(1995, 2016), size=int(rng.integers(1, 8)),
                                                      replace=False))
            dated = [(d(int(rng.integers(1, 13)), y), int(rng.integers(-2, 10))) for y in years]
            now = d(int(rng.integers(1, 13)), 2017)
            k = int(rng.integers(-20, 21))

            def conference(shift):
                events = tuple(event('c', add_months(date, 12 * shift), add_months(date, 12 * shift + delay))
                               for date, delay in dated)
                return Conference(conf_key='c', events=events)

            original = derive_profile(conference(0), now)
            shifted = derive_profile(conference(k), add_months(now, 12 * k))
            with self.subTest(dated=dated, k=k):
                self.assertEqual((shifted.delta_year, shifted.mode_month, shifted.delta_month),
                                 (original.delta_year, original.mode_month, original.delta_month))
                self.assertEqual(shifted.last_entry_date, add_months(original.last_entry_date, 12 * k))

    def test_unrankable_conference(self):
        """Test that a conference without visible dated events raises."""
        conference = Conference(conf_key='c', events=(event('c', None, d(3, 2015)),))
        with self.assertRaises(UnrankableConferenceError) as cm:
            derive_profile(conference, d(12, 2016))
        self.assertEqual(cm.exception.conf_key, 'c')

        future = Conference(conf_key='f', events=series('f', [(6, 2017)]))
        with self.assertRaises(UnrankableConferenceError):
            derive_profile(future, d(12, 2016))

    def test_profile_validation(self):
        """Test ConferenceProfile range checks."""
        with self.assertRaises(ValueError):
            ConferenceProfile(delta_year=0, mode_month=6, delta_month=0, last_entry_date=d(6, 2015))
        with self.assertRaises(ValueError):
            ConferenceProfile(delta_year=1, mode_month=13, delta_month=0, last_entry_date=d(6, 2015))


if __name__ == '__main__':
    unittest.main()
