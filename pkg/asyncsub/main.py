#!/usr/bin/env python3
"""
AsyncSub - asynchronous session subtyping toolkit
Command line entry point
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

# Add project root to path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config.settings import ConfigError, load_config

from asyncsub.cfsm import build_cfsm, to_dot
from asyncsub.errors import AsyncSubError, FragmentViolation
from asyncsub.queue_machine import (
    Accepted, encode_control, encode_queue, load_machine, run, trace,
)
from asyncsub.session import classify, load_type, render
from asyncsub.subtyping import (
    CheckResult, NotSubtype, Subtype, SubtypingChecker,
    oracle_check, relation_domains,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3


class _ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors reported under the tool's error exit code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def setup_logging(config):
    """Root logger with the stream handler and, when its directory exists, a file handler"""
    log_handlers = []
    if getattr(config, 'ENABLE_CONSOLE_LOGGING', True):
        log_handlers.append(logging.StreamHandler())

    # Only use file logging if logs directory exists
    log_file = getattr(config, 'LOG_FILE_PATH', './logs/asyncsub.log')
    if log_file and os.path.isdir(os.path.dirname(log_file) or '.'):
        log_handlers.append(logging.FileHandler(log_file))

    if not log_handlers:
        log_handlers.append(logging.NullHandler())

    logging.basicConfig(
        level=getattr(logging, str(getattr(config, 'LOG_LEVEL', 'WARNING')).upper(), logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=log_handlers
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog='asyncsub', description='Asynchronous session subtyping toolkit')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    check = commands.add_parser('check', help='check whether LEFT is a subtype of RIGHT')
    check.add_argument('left', help='.st file with the subtype candidate')
    check.add_argument('right', help='.st file with the supertype candidate')
    check.add_argument('--algo', choices=('semi', 'decide', 'oracle'),
                       help='procedure to run (default: decide inside the single-choice fragments, semi otherwise)')
    check.add_argument('--fuel', type=int, help='rule applications allowed to the semi procedure')
    check.add_argument('--pair-bound', type=int, help='distinct pairs explored by the oracle')
    check.add_argument('--trace', action='store_true', help='print one line per rule application')
    check.add_argument('--json', action='store_true', help='print the verdict as a JSON object')

    classify_cmd = commands.add_parser('classify', help='report the syntactic fragments of a type')
    classify_cmd.add_argument('file', help='.st file')
    classify_cmd.add_argument('--against', help='second .st file: also report single-choice relation domains')
    classify_cmd.add_argument('--json', action='store_true', help='print the report as a JSON object')

    qm = commands.add_parser('qm', help='queue machine commands')
    qm_commands = qm.add_subparsers(dest='qm_command', required=True, parser_class=_ArgumentParser)

    qm_run = qm_commands.add_parser('run', help='simulate a queue machine')
    qm_run.add_argument('machine', help='.qm file')
    qm_run.add_argument('--input', default='', help='input word (characters, or symbols separated by spaces)')
    qm_run.add_argument('--max-steps', type=int, help='transitions to simulate at most')
    qm_run.add_argument('--trace', action='store_true', help='print every configuration')

    qm_encode = qm_commands.add_parser('encode', help='encode a machine and its input as session types')
    qm_encode.add_argument('machine', help='.qm file')
    qm_encode.add_argument('--input', default='', help='input word (characters, or symbols separated by spaces)')
    qm_encode.add_argument('--out-control', help='write the finite control encoding here')
    qm_encode.add_argument('--out-queue', help='write the queue encoding here')

    export = commands.add_parser('export-dot', help='export the communicating automaton of a type as DOT')
    export.add_argument('file', help='.st file')
    export.add_argument('--out', help='output file (default: stdout)')

    return parser


def _word(text: str) -> List[str]:
    return text.split() if any(c.isspace() for c in text) else list(text)


def _exit_code(result: CheckResult) -> int:
    if isinstance(result, Subtype):
        return EXIT_OK
    if isinstance(result, NotSubtype):
        return EXIT_NEGATIVE
    return EXIT_UNKNOWN


def _default_algorithm(left, right) -> str:
    try:
        SubtypingChecker.check_fragment(left, right)
    except FragmentViolation:
        return 'semi'
    return 'decide'


def command_check(args, config) -> int:
    left = load_type(args.left)
    right = load_type(args.right)
    if args.fuel is not None and args.fuel < 1:
        raise AsyncSubError("--fuel must be at least 1")

    algorithm = args.algo or _default_algorithm(left, right)
    print(f"algorithm: {algorithm}", file=sys.stderr)

    checker = SubtypingChecker(config)
    if algorithm == 'semi':
        result = checker.semi_check(left, right, args.fuel, record_trace=args.trace)
    elif algorithm == 'decide':
        result = checker.decide(left, right, record_trace=args.trace)
    else:
        result = oracle_check(left, right, args.pair_bound, config=config)

    if args.trace:
        for application in getattr(result, 'trace', ()):
            print(application.trace_line())
        if isinstance(result, NotSubtype) and result.failing is not None:
            print(f"err | {render(result.failing.left)} | {render(result.failing.right)} | "
                  f"{len(result.failing.env)}")

    if args.json:
        payload = result.to_dict()
        payload['algo'] = algorithm
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(result.verdict)
        if isinstance(result, NotSubtype) and result.reason:
            print(f"reason: {result.reason}", file=sys.stderr)
    return _exit_code(result)


def command_classify(args, config) -> int:
    t = load_type(args.file)
    report = classify(t).to_dict()
    if args.against:
        report['relations'] = relation_domains(t, load_type(args.against)).to_dict()
    if args.json:
        print(json.dumps(report))
    else:
        for key, value in report.items():
            if isinstance(value, dict):
                for inner_key, inner_value in value.items():
                    print(f"{key}.{inner_key}: {str(inner_value).lower()}")
            else:
                print(f"{key}: {str(value).lower()}")
    return EXIT_OK


def command_qm_run(args, config) -> int:
    machine = load_machine(args.machine)
    max_steps = args.max_steps if args.max_steps is not None else getattr(config, 'ASYNCSUB_QM_MAX_STEPS', 1000)
    word = _word(args.input)
    if args.trace:
        for configuration in trace(machine, word, max_steps):
            print(configuration.render())
    result = run(machine, word, max_steps)
    if isinstance(result, Accepted):
        print(f"accepted in {result.steps} steps")
        return EXIT_OK
    print(f"still running after {result.steps} steps at {result.configuration.render()}")
    return EXIT_NEGATIVE


def command_qm_encode(args, config) -> int:
    machine = load_machine(args.machine)
    word = _word(args.input)
    unknown = [symbol for symbol in word if symbol not in machine.input_alphabet]
    if unknown:
        raise AsyncSubError(f"'{unknown[0]}' is not an input symbol")
    control = render(encode_control(machine))
    queue = render(encode_queue(machine, word + [machine.initial_symbol]))
    for text, target in ((control, args.out_control), (queue, args.out_queue)):
        if target:
            Path(target).write_text(text + '\n', encoding='utf-8')
            logger.info(f"Wrote {target}")
        else:
            print(text)
    return EXIT_OK


def command_export_dot(args, config) -> int:
    cfsm = build_cfsm(load_type(args.file), config=config)
    dot = to_dot(cfsm)
    if args.out:
        Path(args.out).write_text(dot, encoding='utf-8')
        logger.info(f"Wrote {args.out}")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


COMMANDS = {
    'check': command_check,
    'classify': command_classify,
    'export-dot': command_export_dot,
}
QM_COMMANDS = {
    'run': command_qm_run,
    'encode': command_qm_encode,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main application entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    setup_logging(config)

    handler = QM_COMMANDS[args.qm_command] if args.command == 'qm' else COMMANDS[args.command]
    try:
        return handler(args, config)
    except (AsyncSubError, OSError, ValueError) as e:
        # reported once on stderr; the log keeps the traceback for debugging
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
