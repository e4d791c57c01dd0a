#!/usr/bin/env python3
"""
Entry point for confsched.

This script runs the command line tool, e.g.

    python main.py evaluate --events events.jsonl --year 2016 --out out/
"""

import sys
import signal

from confsched.cli import main as run_cli
from confsched.logging_utils import get_logger

# Initialize logger
logger = get_logger()


def signal_handler(sig, frame):
    """Handle interruption of a long evaluation."""
    logger.info("Interrupted, shutting down...")
    sys.exit(130)


def main():
    """Main entry point."""
    signal.signal(signal.SIGINT, signal_handler)
    signal.signal(signal.SIGTERM, signal_handler)

    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
