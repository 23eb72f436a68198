"""Commandline implementation"""

from __future__ import absolute_import, print_function

import argparse
import csv
import json
import logging
import sys
import time

import parmap

from mfaregex.avd import active_sets, savd_bruteforce
from mfaregex.config import config
from mfaregex.constants import CLASSIFY_COLUMNS, ENGINE_BFS, ENGINE_SYNC
from mfaregex.engines import AUTO, analyse, engine_registry, match, recommend_engine
from mfaregex.exceptions import EngineRefused, InvalidEngine, MfaRegexException
from mfaregex.export import export_dot, export_json, load_mfa
from mfaregex.matcher import sync_match
from mfaregex.mdet import bounded_sync_check, has_non_sync_branch
from mfaregex.mfa import mfa_accepts
from mfaregex.syntax import parse, to_pattern
from mfaregex.testgen import gen_1in3_mfa, gen_3sat_sync_mfa, gen_setcover_regex, parse_cnf, parse_setcover
from mfaregex.utils import format_word, read_word, timed

GENERATORS = ('setcover', 'onein3', 'satsync')


def list_engine_classes():
    """List all available engine classes."""
    print('Available engines:\n')
    for key, engine_cls in engine_registry.engines.items():
        print('{:<10} {}'.format(key, engine_cls.__doc__))


def get_arg_parser():
    parser = argparse.ArgumentParser(description='Match and analyse regular expressions with backreferences')
    parser.add_argument('-v', '--verbose', action='count', help='Increase verbosity')
    parser.add_argument('-l', '--list-engines', action='store_true', help='Show a list of all available engines',
                        default=False)
    parser.add_argument('--config', help='A YAML settings file with budgets and caps')
    commands = parser.add_subparsers(dest='command')

    match_parser = commands.add_parser('match', help='Decide whether a word matches a pattern')
    match_parser.add_argument('pattern', nargs='?', help='The pattern (omitted with --mfa)')
    match_parser.add_argument('word', nargs='?', help='The input word, or a file name with --from-file')
    match_parser.add_argument('--engine', choices=(AUTO,) + tuple(engine_registry.engines), default=AUTO,
                              help='The engine to match with')
    match_parser.add_argument('--force-sync', action='store_true', default=False,
                              help='Use the sync engine on patterns that are not memory-deterministic')
    match_parser.add_argument('--budget', type=int, help='Maximum number of configurations or node visits')
    match_parser.add_argument('--avd-cap', type=int, help='Largest avd handled by a memory-reuse automaton')
    match_parser.add_argument('--mfa', help='Match against an automaton JSON file instead of a pattern')
    _add_word_arguments(match_parser)

    avd_parser = commands.add_parser('avd', help='Print the active variable degree of a pattern')
    avd_parser.add_argument('pattern', help='The pattern')
    avd_parser.add_argument('--savd', action='store_true', default=False,
                            help='Also compute the strong active variable degree by brute force')
    avd_parser.add_argument('--savd-cap', type=int, help='Largest number of variables for --savd')

    mdet_parser = commands.add_parser('mdet', help='Decide memory determinism')
    mdet_parser.add_argument('pattern', nargs='?', help='The pattern (omitted with --mfa)')
    mdet_parser.add_argument('--mfa', help='Analyse an automaton JSON file instead of a pattern')
    mdet_parser.add_argument('--bound', type=int, help='Also search synchronisation violations up to this length')
    mdet_parser.add_argument('--budget', type=int, help='Maximum number of explored pairs for --bound')

    gen_parser = commands.add_parser('gen', help='Generate an adversarial instance')
    gen_parser.add_argument('kind', choices=GENERATORS, help='The construction')
    gen_parser.add_argument('instance', help='A set cover or DIMACS-like CNF file')
    gen_parser.add_argument('--k', type=int, default=1, help='Cover size for setcover')
    gen_parser.add_argument('--dot', action='store_true', default=False, help='Write automata as dot')
    gen_parser.add_argument('--output', help='Output file (default is stdout)')

    classify_parser = commands.add_parser('classify', help='Analyse a corpus with one pattern per line into CSV')
    classify_parser.add_argument('corpus', help='The corpus file')
    classify_parser.add_argument('--avd-cap', type=int, help='Largest avd handled by a memory-reuse automaton')
    classify_parser.add_argument('--parallel', action='store_true', default=None,
                                 help='Analyse lines in parallel processes')
    classify_parser.add_argument('--output', help='Output file (default is stdout)')

    export_parser = commands.add_parser('export', help='Write the canonical automaton of a pattern')
    export_parser.add_argument('pattern', help='The pattern')
    export_parser.add_argument('--dot', action='store_true', default=False, help='Write dot instead of JSON')
    export_parser.add_argument('--output', help='Output file (default is stdout)')

    return parser


def _add_word_arguments(parser):
    parser.add_argument('-f', '--from-file', action='store_true', default=False,
                        help='Read the word from the given file, one symbol per byte')
    parser.add_argument('--tokens', action='store_true', default=False,
                        help='Split the word on whitespace into multi-character symbols')


def _open_output(path):
    return open(path, 'w', newline='') if path else sys.stdout


def _write_lines(lines, path):
    output = _open_output(path)
    try:
        output.writelines(lines)
    finally:
        if output is not sys.stdout:
            output.close()


def cmd_match(args):
    """Match a word and return 0 on a match, 1 otherwise."""
    if args.mfa:
        word = args.word if args.word is not None else args.pattern
        if word is None:
            raise MfaRegexException('No input word given')
        word = read_word(word, args.from_file, args.tokens)
        mfa = load_mfa(args.mfa)
        engine = args.engine
        deterministic = engine in (AUTO, ENGINE_SYNC) and has_non_sync_branch(mfa) is None
        if engine == AUTO:
            engine = ENGINE_SYNC if deterministic else 'bfs'
        elif engine == ENGINE_SYNC and not deterministic and not args.force_sync:
            raise EngineRefused('The automaton is not memory-deterministic, use --force-sync to match anyway')
        if engine == ENGINE_SYNC:
            accepted = sync_match(mfa, word=word)
        elif engine == 'bfs':
            accepted = mfa_accepts(mfa, word, args.budget)
            engine = ENGINE_BFS
        else:
            raise InvalidEngine('Engine "{}" needs a pattern, not an automaton'.format(engine))
    else:
        if args.pattern is None or args.word is None:
            raise MfaRegexException('A pattern and a word are required')
        word = read_word(args.word, args.from_file, args.tokens)
        ast = parse(args.pattern)
        result = match(ast, word, args.engine, budget=args.budget, avd_cap=args.avd_cap,
                       force_sync=args.force_sync)
        accepted, engine = result
    print('{} (engine: {})'.format('match' if accepted else 'no match', engine))
    return 0 if accepted else 1


def cmd_avd(args):
    ast = parse(args.pattern)
    analysis = analyse(ast)
    reachability = analysis.reachability
    print('avd={}'.format(analysis.avd))
    for name, active in active_sets(ast, reachability):
        print('  {}: {{{}}}'.format(name, ', '.join(active)))
    if args.savd:
        print('savd={}'.format(savd_bruteforce(ast, args.savd_cap, reachability)))
    return 0


def cmd_mdet(args):
    if args.mfa:
        mfa = load_mfa(args.mfa)
    elif args.pattern is not None:
        mfa = analyse(parse(args.pattern)).mfa
    else:
        raise MfaRegexException('A pattern or --mfa is required')
    branching = has_non_sync_branch(mfa)
    print('memory-deterministic: {}'.format('yes' if branching is None else 'no'))
    if branching is not None:
        print('non-synchronised branching: q={} p1={} p2={}'.format(branching.q, branching.p1, branching.p2))
        if branching.word is not None:
            print('witness prefix: {}'.format(format_word(branching.word)))
    if args.bound is not None:
        violation = bounded_sync_check(mfa, args.bound, args.budget)
        if violation is None:
            print('no synchronisation violation up to length {}'.format(args.bound))
        else:
            print('synchronisation violation on "{}" after {} steps'.format(
                format_word(violation.word), violation.step))
    return 0


def cmd_gen(args):
    with open(args.instance) as f:
        text = f.read()
    if args.kind == 'setcover':
        universe, subsets = parse_setcover(text)
        _write_lines([to_pattern(gen_setcover_regex(universe, subsets, args.k)) + '\n'], args.output)
        return 0
    cnf = parse_cnf(text)
    probe = None
    if args.kind == 'onein3':
        mfa, probe = gen_1in3_mfa(cnf)
    else:
        mfa = gen_3sat_sync_mfa(cnf)
    if args.dot:
        lines = export_dot(mfa)
    else:
        document = export_json(mfa)
        if probe is not None:
            document['probe'] = probe
        lines = [json.dumps(document, indent=2, ensure_ascii=False) + '\n']
    _write_lines(lines, args.output)
    return 0


def classify_line(line, avd_cap):
    """
    Analyse one corpus pattern.

    :return: A record with the values of ``CLASSIFY_COLUMNS``
    :rtype: dict
    """
    start_time = time.time()
    record = dict.fromkeys(CLASSIFY_COLUMNS, '')
    record['pattern'] = line
    try:
        ast = parse(line)
        recommendation = recommend_engine(ast, avd_cap)
    except MfaRegexException as exc:
        logging.info('Skipping "%s": %s', line, exc)
        record['parse_ok'] = False
    else:
        record.update({
            'parse_ok': True,
            'variables': len(ast.variables),
            'avd': recommendation.avd,
            'mdet': recommendation.mdet,
            'recommended_engine': recommendation.label,
        })
    record['analysis_ms'] = '{:.3f}'.format((time.time() - start_time) * 1000)
    return record


def cmd_classify(args):
    with open(args.corpus) as f:
        lines = [line.strip() for line in f if line.strip()]
    avd_cap = config.get('avd_cap', args.avd_cap)
    parallel = config.get('parallel', args.parallel)
    with timed('Classification of {} patterns'.format(len(lines))):
        records = parmap.map(classify_line, lines, avd_cap, pm_parallel=parallel, pm_pbar=bool(args.verbose))
    output = _open_output(args.output)
    try:
        writer = csv.DictWriter(output, fieldnames=CLASSIFY_COLUMNS)
        writer.writeheader()
        writer.writerows(records)
    finally:
        if output is not sys.stdout:
            output.close()
    return 0


def cmd_export(args):
    mfa = analyse(parse(args.pattern)).mfa
    if args.dot:
        lines = export_dot(mfa)
    else:
        lines = [json.dumps(export_json(mfa), indent=2, ensure_ascii=False) + '\n']
    _write_lines(lines, args.output)
    return 0


COMMANDS = {
    'match': cmd_match,
    'avd': cmd_avd,
    'mdet': cmd_mdet,
    'gen': cmd_gen,
    'classify': cmd_classify,
    'export': cmd_export,
}


def main(args):
    """Main method"""

    if not args.verbose:
        loglevel = logging.WARNING
    elif args.verbose == 1:
        loglevel = logging.INFO
    else:
        loglevel = logging.DEBUG
    logging.basicConfig(format='%(levelname)s: %(message)s', level=loglevel)

    if args.list_engines:
        list_engine_classes()
        return 0
    if args.command is None:
        get_arg_parser().print_usage()
        return 2

    config.reset(args.config)
    try:
        return COMMANDS[args.command](args)
    except (MfaRegexException, IOError) as exc:
        logging.error(exc)
        return 2
