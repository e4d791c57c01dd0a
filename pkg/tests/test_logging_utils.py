"""
Tests for the logging utilities.
"""

import logging
import os
import shutil
import tempfile
import unittest

from confsched.logging_utils import LOGGER_NAME, change_log_level, get_logger, setup_logging


class TestLoggingUtils(unittest.TestCase):
    """Test cases for the logging utilities."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        setup_logging('INFO')
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_child_loggers(self):
        self.assertEqual(get_logger().name, 'confsched')
        self.assertEqual(get_logger('confsched.scoring').name, 'confsched.scoring')
        self.assertEqual(get_logger('ingest').name, 'confsched.ingest')

    def test_root_logger_untouched(self):
        root_handlers = list(logging.getLogger().handlers)
        package_logger = setup_logging('WARNING')
        self.assertEqual(logging.getLogger().handlers, root_handlers)
        self.assertFalse(package_logger.propagate)
        self.assertEqual(package_logger.level, logging.WARNING)

    def test_unknown_level_falls_back_to_info(self):
        self.assertEqual(setup_logging('chatty').level, logging.INFO)

    def test_file_logging(self):
        """Test that children of the package logger reach the rotating file."""
        log_file = os.path.join(self.temp_dir, 'confsched.log')
        package_logger = setup_logging('DEBUG', log_file, max_bytes=1024, backup_count=1)
        self.assertEqual(len(package_logger.handlers), 2)

        get_logger('confsched.evaluation').info("📊 nDCG@10 0.5000")
        for handler in package_logger.handlers:
            handler.flush()
        with open(log_file, encoding='utf-8') as f:
            content = f.read()
        self.assertIn('confsched.evaluation: 📊 nDCG@10 0.5000', content)

    def test_reconfigure_replaces_handlers(self):
        setup_logging('INFO')
        self.assertEqual(len(setup_logging('INFO').handlers), 1)

    def test_change_log_level(self):
        setup_logging('INFO')
        self.assertTrue(change_log_level('debug'))
        self.assertEqual(logging.getLogger(LOGGER_NAME).level, logging.DEBUG)

    def test_change_log_level_invalid(self):
        setup_logging('INFO')
        with self.assertLogs(LOGGER_NAME, level='ERROR'):
            self.assertFalse(change_log_level('loud'))
        self.assertEqual(logging.getLogger(LOGGER_NAME).level, logging.INFO)


if __name__ == '__main__':
    unittest.main()
