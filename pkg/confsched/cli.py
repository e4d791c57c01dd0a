"""
Command line interface for confsched.

Subcommands:

    rank          rank the corpus at --now, one run file per factor
    evaluate      leave-out evaluation of --year (qrels, runs, report CSVs)
    profile       per-conference delay, weights and characteristic parameters
    parse-titles  batch-test the proceedings-title parser
    generate      write a synthetic corpus
"""

import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from confsched import __version__
from confsched.config import Config, RunConfig
from confsched.corpus import Corpus, derive_profile
from confsched.errors import (
    ConfigError,
    EmptyInputError,
    FormatError,
    IngestError,
    InsufficientDataError,
    InvalidDateError,
    InvariantViolation,
    UnrankableConferenceError,
)
from confsched.evaluation import leave_out_evaluation
from confsched.ingest import ingest
from confsched.logging_utils import change_log_level, get_logger, setup_logging
from confsched.messages import (
    PROFILE_COLUMNS,
    cutoff_table_rows,
    format_cutoff_table,
    format_profile_table,
    format_report_table,
)
from confsched.scoring import BaselineOrder, conference_weights, corpus_maxima, expected_next_entry, rank_all
from confsched.storage import FileStorage
from confsched.synthetic import SyntheticMix, generate_synthetic
from confsched.titles import load_gazetteer, parse_country, parse_event_date

# Get logger
logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INTERNAL_ERROR = 2

INPUT_ERRORS = (ConfigError, IngestError, FormatError, InvalidDateError, InsufficientDataError, OSError)
INTERNAL_ERRORS = (InvariantViolation, EmptyInputError)


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with the input-error status."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _add_input_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('input files')
    group.add_argument('--events', metavar='FILE', help='events JSONL file')
    group.add_argument('--papers', metavar='FILE', help='papers JSONL file for author record counts')
    group.add_argument('--author-counts', dest='author_counts', metavar='FILE',
                       help='precomputed cumulative author record counts (JSONL)')
    group.add_argument('--ratings', metavar='FILE', help='ratings CSV conf_key,list_id,class')
    group.add_argument('--citations', metavar='FILE', help='citations JSONL file')
    group.add_argument('--gazetteer', metavar='FILE', help='gazetteer TSV file')
    group.add_argument('--rating-map', dest='rating_map', metavar='MAP',
                       help='rating classes, e.g. "A*=4,A=3,B=2,C=1,Other=0"')


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all subcommands."""
    common = ArgumentParser(add_help=False)
    common.add_argument('--log-level', dest='log_level', metavar='LEVEL',
                        help='DEBUG, INFO, WARNING, ERROR or CRITICAL')
    common.add_argument('-v', '--verbose', action='store_true', help='same as --log-level DEBUG')

    parser = ArgumentParser(prog='confsched',
                            description='Prioritise conference series for proceedings harvesting.')
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')

    rank_parser = subparsers.add_parser('rank', parents=[common], help='rank conferences at a date')
    _add_input_flags(rank_parser)
    rank_parser.add_argument('--now', metavar='YYYY-MM', help='evaluation date')
    rank_parser.add_argument('--factor', metavar='NAME|all', default='all', help='factors to rank by')
    rank_parser.add_argument('--baseline-order', dest='baseline_order',
                             choices=[order.value for order in BaselineOrder])
    rank_parser.add_argument('--out', metavar='DIR', help='output directory')

    evaluate_parser = subparsers.add_parser('evaluate', parents=[common], help='leave-out evaluation of a year')
    _add_input_flags(evaluate_parser)
    evaluate_parser.add_argument('--year', type=int, metavar='N', help='evaluation year')
    evaluate_parser.add_argument('--factor', metavar='NAME|all', default='all', help='factors to evaluate')
    evaluate_parser.add_argument('--cutoffs', metavar='a,b,c', help='nDCG cutoffs')
    evaluate_parser.add_argument('--linear-gain', dest='linear_gain', action='store_true',
                                 help='use the grade instead of 2^grade - 1 as gain')
    evaluate_parser.add_argument('--baseline-order', dest='baseline_order',
                                 choices=[order.value for order in BaselineOrder])
    evaluate_parser.add_argument('--workers', type=int, metavar='N', help='months evaluated in parallel')
    evaluate_parser.add_argument('--out', metavar='DIR', help='output directory')

    profile_parser = subparsers.add_parser('profile', parents=[common], help='show conference profiles')
    _add_input_flags(profile_parser)
    profile_parser.add_argument('--now', metavar='YYYY-MM', help='evaluation date')
    profile_parser.add_argument('--conf', action='append', metavar='KEY',
                                help='conference to show (repeatable, default: all)')
    profile_parser.add_argument('--out', metavar='DIR', help='output directory')

    titles_parser = subparsers.add_parser('parse-titles', parents=[common], help='batch-test the title parser')
    titles_parser.add_argument('--titles', metavar='FILE',
                               help='one title per line, optionally title<TAB>YYYY-MM|-<TAB>CC|-')
    titles_parser.add_argument('--gazetteer', metavar='FILE', help='gazetteer TSV file')

    generate_parser = subparsers.add_parser('generate', parents=[common], help='write a synthetic corpus')
    generate_parser.add_argument('--out', metavar='DIR', help='output directory')
    generate_parser.add_argument('--seed', type=int, metavar='N', help='random seed (default: 0)')
    generate_parser.add_argument('--conferences', type=int, default=50, metavar='N',
                                 help='number of conference series (default: 50)')
    generate_parser.add_argument('--start-year', dest='start_year', type=int, default=2000, metavar='N')
    generate_parser.add_argument('--end-year', dest='end_year', type=int, default=2016, metavar='N')
    defaults = SyntheticMix()
    for name in ('biennial', 'discontinued', 'rated', 'international'):
        generate_parser.add_argument(f"--{name}", type=float, metavar='FRACTION',
                                     default=getattr(defaults, f"{name}_fraction"),
                                     help=f"fraction of {name} conferences")

    return parser


def _require(run: RunConfig, required: Sequence[str]) -> None:
    problems = run.validate(required)
    if problems:
        raise ConfigError('; '.join(problems))


def profile_rows(corpus: Corpus, run: RunConfig, conf_keys: Optional[Sequence[str]] = None) -> List[Dict[str, Any]]:
    """
    Delay, weights and characteristic parameters of conferences at ``run.now``.

    Args:
        corpus: The corpus
        run: Run configuration with ``now`` set
        conf_keys: Conferences to report (default: all)

    Returns:
        List[Dict[str, Any]]: One row per rankable conference, keyed by PROFILE_COLUMNS
    """
    now = run.now
    unknown = [key for key in conf_keys or () if key not in corpus.conferences]
    if unknown:
        raise ConfigError(f"--conf: unknown conference(s) {', '.join(unknown)}")

    profiles = {}
    for key in corpus.sorted_keys():
        try:
            profiles[key] = derive_profile(corpus.conferences[key], now)
        except UnrankableConferenceError:
            if conf_keys and key in conf_keys:
                logger.warning(f"⚠️  {key} has no dated event entered by {now}, not profiled")
    maxima = corpus_maxima(corpus, now, profiles.keys())

    rows = []
    for key, profile in profiles.items():
        if conf_keys and key not in conf_keys:
            continue
        weights = conference_weights(corpus.conferences[key], corpus, now, maxima, profile)
        rows.append({
            'conf_key': key,
            'delta': weights.delta,
            'w_delay': weights.delay_base,
            'w_r': weights.rating,
            'w_i': weights.internationality,
            'w_d': weights.discontinued,
            'w_cit': weights.citation,
            'w_prm': weights.prominence,
            'delta_year': profile.delta_year,
            'mode_month': profile.mode_month,
            'delta_month': profile.delta_month,
            'last_entry': str(profile.last_entry_date),
            'expected_next': str(expected_next_entry(profile)),
        })
    return rows


def _saved(ok: bool, what: str) -> None:
    if not ok:
        raise OSError(f"could not write {what}")


def cmd_rank(args: argparse.Namespace, run: RunConfig) -> int:
    _require(run, ('events_path', 'now'))
    corpus = ingest(run)
    rankings = rank_all(corpus, run.now, run.factors, run.baseline_order)

    storage = FileStorage(run.out_dir)
    for factor in run.factors:
        name = f"{factor.value}.run"
        _saved(storage.save_run(name, [rankings[factor]], run_tag=factor.value), storage.path(name))
    logger.info(f"✅ Ranked {len(rankings[run.factors[0]].entries)} conferences at {run.now} "
                f"by {len(run.factors)} factor(s) into {run.out_dir}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace, run: RunConfig) -> int:
    _require(run, ('events_path', 'eval_year'))
    corpus = ingest(run)
    result = leave_out_evaluation(corpus, run.eval_year, run.factors, run.cutoffs,
                                  run.linear_gain, run.baseline_order, run.workers)

    storage = FileStorage(run.out_dir)
    _saved(storage.save_qrels('qrels.txt', result.qrels.values()), storage.path('qrels.txt'))
    ranked_factors = next(iter(result.runs.values())).keys()
    for factor in ranked_factors:
        name = f"runs/{factor.value}.run"
        rankings = [month_runs[factor] for month_runs in result.runs.values()]
        _saved(storage.save_run(name, rankings, run_tag=factor.value), storage.path(name))
    _saved(storage.save_report('report.csv', result.reports), storage.path('report.csv'))
    cutoff_columns = ['factor', *[f"ndcg@{k}" for k in run.cutoffs]]
    _saved(storage.save_table('cutoffs.csv', cutoff_table_rows(result.reports), cutoff_columns),
           storage.path('cutoffs.csv'))

    for k in run.cutoffs:
        print(format_report_table(result.reports, k))
        print()
    print(format_cutoff_table(result.reports))
    logger.info(f"✅ Evaluated {run.eval_year} into {run.out_dir}")
    return EXIT_OK


def cmd_profile(args: argparse.Namespace, run: RunConfig) -> int:
    _require(run, ('events_path', 'now'))
    corpus = ingest(run)
    rows = profile_rows(corpus, run, args.conf)

    storage = FileStorage(run.out_dir)
    _saved(storage.save_table('profile.csv', rows, PROFILE_COLUMNS), storage.path('profile.csv'))
    print(format_profile_table(rows))
    return EXIT_OK


def _expectation(value: str) -> Optional[str]:
    value = value.strip()
    return None if value in ('', '-') else value


def cmd_parse_titles(args: argparse.Namespace, run: RunConfig) -> int:
    if not args.titles:
        raise ConfigError("missing required setting --titles")
    gazetteer = load_gazetteer(run.gazetteer_path)

    total = checked = matched = 0
    with open(args.titles, 'r', encoding='utf-8') as file:
        for line_no, raw in enumerate(file, start=1):
            line = raw.rstrip('\n').rstrip('\r')
            if not line.strip():
                continue
            parts = line.split('\t')
            title = parts[0]
            event_date = parse_event_date(title)
            country = parse_country(title, gazetteer)
            date_text = str(event_date) if event_date else '-'
            print(f"{title}\t{date_text}\t{country or '-'}")
            total += 1

            if len(parts) >= 3:
                checked += 1
                expected = (_expectation(parts[1]), _expectation(parts[2]))
                if expected == (str(event_date) if event_date else None, country):
                    matched += 1
                else:
                    logger.warning(f"⚠️  {args.titles}:{line_no}: expected {parts[1]}/{parts[2]}, "
                                   f"got {date_text}/{country or '-'}")

    if checked:
        print(f"# {matched}/{checked} titles match their expectations")
    logger.info(f"✅ Parsed {total} titles")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, run: RunConfig) -> int:
    if args.conferences < 1:
        raise ConfigError(f"--conferences must be >= 1, got {args.conferences}")
    if args.end_year < args.start_year:
        raise ConfigError(f"--end-year must not precede --start-year ({args.end_year} < {args.start_year})")
    try:
        mix = SyntheticMix(biennial_fraction=args.biennial, discontinued_fraction=args.discontinued,
                           rated_fraction=args.rated, international_fraction=args.international)
    except ValueError as e:
        raise ConfigError(str(e)) from None
    generate_synthetic(run.seed, args.conferences, range(args.start_year, args.end_year + 1),
                       run.out_dir, mix)
    return EXIT_OK


COMMANDS = {
    'rank': cmd_rank,
    'evaluate': cmd_evaluate,
    'profile': cmd_profile,
    'parse-titles': cmd_parse_titles,
    'generate': cmd_generate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line tool.

    Args:
        argv: Arguments without the program name (default: ``sys.argv[1:]``)

    Returns:
        int: 0 on success, 1 on input errors, 2 on internal errors
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_INPUT_ERROR

    config = Config()
    if not config.validate():
        logger.error("💥 Configuration validation failed. Please fix the issues above and try again.")
        return EXIT_INPUT_ERROR

    setup_logging(config.log_level, config.log_file, int(config.log_max_bytes), int(config.log_backup_count))
    if args.verbose:
        change_log_level('DEBUG')
    elif args.log_level and not change_log_level(args.log_level):
        return EXIT_INPUT_ERROR

    logger.debug(f"🚀 Running {args.command}")
    try:
        run = RunConfig.from_args(args, config)
        return COMMANDS[args.command](args, run)
    except INPUT_ERRORS as e:
        logger.error(f"❌ {e}")
        return EXIT_INPUT_ERROR
    except INTERNAL_ERRORS as e:
        logger.error(f"💥 Internal error: {e}")
        return EXIT_INTERNAL_ERROR
    except Exception as e:
        logger.exception(f"💥 Unexpected error: {e}")
        return EXIT_INTERNAL_ERROR
