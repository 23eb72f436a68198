"""Matching engines, their registry and the engine dispatcher"""

from __future__ import absolute_import

import logging
import threading
from collections import OrderedDict, namedtuple

from cachetools import LRUCache, cached

from mfaregex.avd import avd, build_reuse_mfa, compute_reachability
from mfaregex.config import config
from mfaregex.constants import ANALYSIS_CACHE_SIZE, ENGINE_BFS, ENGINE_REUSE, ENGINE_SYNC
from mfaregex.contracted import build_contracted_tables
from mfaregex.exceptions import EngineAlreadyRegistered, EngineRefused, InvalidEngine
from mfaregex.matcher import sync_match
from mfaregex.mdet import is_memory_deterministic
from mfaregex.mfa import canonical_mfa, mfa_accepts
from mfaregex.oracle import oracle_match
from mfaregex.utils import timed

AUTO = 'auto'

Analysis = namedtuple('Analysis', 'mfa tables reachability avd mdet')
"""Static facts about one pattern: canonical automaton, contracted tables, variable reachability, avd and mdet."""

Recommendation = namedtuple('Recommendation', 'engine label avd mdet')
"""The engine id the dispatcher picks, its reported name and the numbers the choice is based on."""

MatchResult = namedtuple('MatchResult', 'accepted engine')


@cached(LRUCache(maxsize=ANALYSIS_CACHE_SIZE), lock=threading.RLock())
def analyse(ast):
    """
    Run the static analyses of a pattern once and memoise them.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :rtype: Analysis
    """
    with timed('Analysis of a pattern with {} variables'.format(len(ast.variables))):
        mfa = canonical_mfa(ast)
        tables = build_contracted_tables(mfa)
        reachability = compute_reachability(ast, mfa)
        degree = avd(ast, reachability)
        mdet = is_memory_deterministic(mfa, tables)
    logging.debug('Canonical automaton has %d states, avd=%d, mdet=%s', mfa.state_count, degree, mdet)
    return Analysis(mfa, tables, reachability, degree, mdet)


class EngineRegistry(object):
    """A registry for engine classes."""

    def __init__(self):
        self._registry = OrderedDict()

    def register(self, engine_class, engine_id):
        """
        Register an engine class.

        :param type engine_class: Engine class that should be registered
        :param str engine_id: A string id to register the engine for
        :raises EngineAlreadyRegistered: If another engine with the given id has been registered
        """
        if engine_id in self._registry:
            raise EngineAlreadyRegistered('An engine with the id "{}" has already been registered'.format(engine_id))
        self._registry[engine_id] = engine_class

    def get_engine(self, engine_id):
        """
        Return an engine by its id.

        :param str engine_id: The string id of the desired engine
        :raises InvalidEngine: If no engine can be found with the given id
        :rtype: type
        """
        try:
            return self._registry[engine_id]
        except KeyError:
            raise InvalidEngine('Could not find engine with id "{}"'.format(engine_id))

    @property
    def engines(self):
        """
        Return the registered engines.

        :rtype: OrderedDict
        """
        return self._registry


engine_registry = EngineRegistry()


def register(engine_id, **kwargs):
    """
    A wrapper that registers an engine class to the engine registry.

    :param str engine_id: The string id to register the engine for
    :keyword registry: The registry the engine class is registered at (default is ``engine_registry``)
    :return: The decorator function
    :rtype: function
    """

    def wrapper(engine_class):
        registry = kwargs.get('registry', engine_registry)
        registry.register(engine_class, engine_id)
        return engine_class

    return wrapper


class Engine(object):
    """Base class for all engines."""

    @classmethod
    def match(cls, ast, word, **options):
        """
        Decide whether a word belongs to the language of a pattern.

        :param mfaregex.syntax.RegexAst ast: The pattern
        :param word: A string or a sequence of symbols
        :return: The decision and the name of the engine that made it
        :rtype: MatchResult
        """
        raise NotImplementedError


@register('oracle')
class OracleEngine(Engine):
    """Brute-force matching on the pattern itself."""

    @classmethod
    def match(cls, ast, word, **options):
        return MatchResult(oracle_match(ast, word, options.get('budget')), 'oracle')


@register('bfs')
class BfsEngine(Engine):
    """Configuration search on the canonical automaton."""

    @classmethod
    def match(cls, ast, word, **options):
        return MatchResult(mfa_accepts(analyse(ast).mfa, word, options.get('budget')), ENGINE_BFS)


@register('reuse')
class ReuseEngine(Engine):
    """Configuration search on a memory-reuse automaton with avd memories."""

    @classmethod
    def match(cls, ast, word, **options):
        analysis = analyse(ast)
        automaton = build_reuse_mfa(ast, analysis.avd, analysis.reachability)
        accepted = mfa_accepts(automaton, word, options.get('budget'))
        logging.debug('Reuse automaton expanded %d states', automaton.expanded)
        return MatchResult(accepted, ENGINE_REUSE.format(analysis.avd))


@register('sync')
class SyncEngine(Engine):
    """Linear time matching for memory-deterministic patterns."""

    @classmethod
    def match(cls, ast, word, **options):
        analysis = analyse(ast)
        if not analysis.mdet:
            if not options.get('force_sync'):
                raise EngineRefused('The pattern is not memory-deterministic, use --force-sync to match anyway')
            logging.warning('Matching a pattern that is not memory-deterministic with the sync engine')
        return MatchResult(sync_match(analysis.mfa, analysis.tables, word=word), ENGINE_SYNC)


def recommend_engine(ast, avd_cap=None):
    """
    Pick the engine for a pattern: sync if it is memory-deterministic, a reuse automaton if its avd does not exceed
    the cap, the configuration search otherwise.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :param int avd_cap: Largest avd handled by a reuse automaton
    :rtype: Recommendation
    """
    avd_cap = config.get('avd_cap', avd_cap)
    analysis = analyse(ast)
    if analysis.mdet:
        return Recommendation('sync', ENGINE_SYNC, analysis.avd, True)
    if analysis.avd <= avd_cap:
        return Recommendation('reuse', ENGINE_REUSE.format(analysis.avd), analysis.avd, False)
    return Recommendation('bfs', ENGINE_BFS, analysis.avd, False)


def match_auto(ast, word, avd_cap=None, budget=None):
    """
    Match with the recommended engine.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :param word: A string or a sequence of symbols
    :param int avd_cap: Largest avd handled by a reuse automaton
    :param int budget: Budget of the configuration searches
    :raises BudgetExceeded: If the chosen engine runs out of its budget
    :rtype: MatchResult
    """
    recommendation = recommend_engine(ast, avd_cap)
    logging.info('Using engine %s', recommendation.label)
    return engine_registry.get_engine(recommendation.engine).match(ast, word, budget=budget)


def match(ast, word, engine=AUTO, **options):
    """
    Match with a named engine, or with the recommended one for ``'auto'``.

    :rtype: MatchResult
    """
    if engine == AUTO:
        return match_auto(ast, word, options.get('avd_cap'), options.get('budget'))
    return engine_registry.get_engine(engine).match(ast, word, **options)
