"""
Tests for the configuration module.
"""

import argparse
import os
import shutil
import tempfile
import unittest
from unittest.mock import patch

from confsched.config import (
    DEFAULT_CONFIG,
    Config,
    RunConfig,
    parse_cutoffs,
    parse_factors,
    parse_rating_class_map,
)
from confsched.errors import ConfigError
from confsched.scoring import ALL_FACTORS, BaselineOrder, Factor
from tests.factories import d


class TestConfig(unittest.TestCase):
    """Test cases for the Config class."""

    def setUp(self):
        """Set up the test environment."""
        # Clear the singleton instance
        Config._instance = None

        # Mock environment variables
        self.env_patcher = patch.dict(os.environ, {
            'CUTOFFS': '5,10',
            'LOG_LEVEL': 'DEBUG',
            'WORKERS': '',
        })
        self.env_patcher.start()

    def tearDown(self):
        """Clean up after the test."""
        self.env_patcher.stop()
        Config._instance = None

    def test_singleton(self):
        """Test that Config is a singleton."""
        config1 = Config()
        config2 = Config()
        self.assertIs(config1, config2)

    def test_environment_values(self):
        """Test environment variable configuration values."""
        config = Config()
        self.assertEqual(config.cutoffs, '5,10')
        self.assertEqual(config.log_level, 'DEBUG')

    def test_empty_values_keep_defaults(self):
        """Test that empty environment variables do not override defaults."""
        config = Config()
        self.assertEqual(config.workers, DEFAULT_CONFIG['WORKERS'])
        self.assertEqual(config.rating_class_map, DEFAULT_CONFIG['RATING_CLASS_MAP'])

    def test_validate_defaults(self):
        self.assertTrue(Config().validate())

    def test_validate_invalid_values(self):
        """Test that each invalid default fails validation."""
        for key, value in (('CUTOFFS', '10,5'), ('WORKERS', '0'), ('BASELINE_ORDER', 'random'),
                           ('RATING_CLASS_MAP', 'A*=four'), ('GAZETTEER_FILE', '/nonexistent/gaz.tsv')):
            with self.subTest(key=key):
                with patch.dict(os.environ, {key: value}):
                    Config._instance = None
                    with self.assertLogs('confsched', level='ERROR'):
                        self.assertFalse(Config().validate())


class TestParsers(unittest.TestCase):
    """Test cases for the value parsers."""

    def test_parse_cutoffs(self):
        self.assertEqual(parse_cutoffs('10,20,50,100,200'), [10, 20, 50, 100, 200])
        self.assertEqual(parse_cutoffs(' 5 , 10 '), [5, 10])

    def test_parse_cutoffs_invalid(self):
        for text in ('', 'ten', '0,10', '20,10', '10,10'):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    parse_cutoffs(text)

    def test_parse_rating_class_map(self):
        self.assertEqual(parse_rating_class_map('A*=4,A=3,B=2,C=1,Other=0'),
                         {'A*': 4, 'A': 3, 'B': 2, 'C': 1, 'Other': 0})

    def test_parse_rating_class_map_invalid(self):
        for text in ('A*', '=4', 'A=x', 'A=-1'):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    parse_rating_class_map(text)

    def test_parse_factors(self):
        self.assertEqual(parse_factors('all'), list(ALL_FACTORS))
        self.assertEqual(parse_factors('Rating, citation,rating'), [Factor.RATING, Factor.CITATION])
        with self.assertRaises(ConfigError):
            parse_factors('popularity')


class TestRunConfig(unittest.TestCase):
    """Test cases for per-invocation settings."""

    def setUp(self):
        Config._instance = None
        self.env_patcher = patch.dict(os.environ, {'CUTOFFS': '10,20', 'OUTPUT_DIR': 'results'})
        self.env_patcher.start()
        self.temp_dir = tempfile.mkdtemp()
        self.events = os.path.join(self.temp_dir, 'events.jsonl')
        with open(self.events, 'w', encoding='utf-8') as f:
            f.write('')

    def tearDown(self):
        self.env_patcher.stop()
        Config._instance = None
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_from_args_uses_flags(self):
        args = argparse.Namespace(now='2016-06', factor='discontinued', cutoffs='5,50',
                                  events=self.events, out='elsewhere', baseline_order='most-overdue',
                                  workers=3, linear_gain=True)
        run = RunConfig.from_args(args, Config())
        self.assertEqual(run.now, d(6, 2016))
        self.assertEqual(run.factors, [Factor.DISCONTINUED])
        self.assertEqual(run.cutoffs, [5, 50])
        self.assertEqual(run.out_dir, 'elsewhere')
        self.assertEqual(run.baseline_order, BaselineOrder.MOST_OVERDUE)
        self.assertEqual(run.workers, 3)
        self.assertTrue(run.linear_gain)

    def test_from_args_falls_back_to_environment(self):
        run = RunConfig.from_args(argparse.Namespace(), Config())
        self.assertIsNone(run.now)
        self.assertEqual(run.factors, list(ALL_FACTORS))
        self.assertEqual(run.cutoffs, [10, 20])
        self.assertEqual(run.out_dir, 'results')
        self.assertEqual(run.baseline_order, BaselineOrder.DUE_FIRST)
        self.assertEqual(run.workers, 1)

    def test_from_args_invalid_values(self):
        """Test that unparseable flags raise ConfigError."""
        for args in (argparse.Namespace(now='June 2016'), argparse.Namespace(factor='nope'),
                     argparse.Namespace(cutoffs='3,1'), argparse.Namespace(rating_map='A=high')):
            with self.subTest(args=args):
                with self.assertRaises(ConfigError):
                    RunConfig.from_args(args, Config())

    def test_validate_names_missing_flags(self):
        run = RunConfig()
        with self.assertLogs('confsched', level='ERROR'):
            problems = run.validate(('events_path', 'now'))
        self.assertEqual(len(problems), 2)
        self.assertIn('--events', problems[0])
        self.assertIn('--now', problems[1])

    def test_zero_workers_flag_is_rejected(self):
        """Test that --workers 0 is kept and reported instead of falling back to WORKERS."""
        with patch.dict(os.environ, {'WORKERS': '4'}):
            Config._instance = None
            run = RunConfig.from_args(argparse.Namespace(workers=0), Config())
        self.assertEqual(run.workers, 0)
        with self.assertLogs('confsched', level='ERROR'):
            problems = run.validate()
        self.assertEqual(problems, ['--workers must be >= 1, got 0'])

    def test_validate_missing_file(self):
        run = RunConfig(events_path=os.path.join(self.temp_dir, 'missing.jsonl'), now=d(1, 2016))
        with self.assertLogs('confsched', level='ERROR'):
            problems = run.validate(('events_path', 'now'))
        self.assertEqual(len(problems), 1)
        self.assertIn('file not found', problems[0])

    def test_validate_ok(self):
        run = RunConfig(events_path=self.events, eval_year=2016)
        self.assertEqual(run.validate(('events_path', 'eval_year')), [])

    def test_validate_workers(self):
        run = RunConfig(workers=0)
        with self.assertLogs('confsched', level='ERROR'):
            self.assertEqual(len(run.validate()), 1)


if __name__ == '__main__':
    unittest.main()
