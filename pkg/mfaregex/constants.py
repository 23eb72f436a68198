# Default node-visit / configuration budget of the exhaustive engines
DEFAULT_BUDGET = 10 ** 7

# Largest avd for which the dispatcher still builds a memory-reuse automaton
DEFAULT_AVD_CAP = 2

# Largest number of variables the brute-force savd computation accepts
DEFAULT_SAVD_CAP = 12

# Maximum number of candidate words checked by a language enumeration
DEFAULT_ENUMERATION_BUDGET = 10 ** 6

# Engine names reported by the dispatcher
ENGINE_SYNC = 'sync'
ENGINE_REUSE = 'reuse-mfa({})'
ENGINE_BFS = 'generic-bfs'

# Column order of the ``classify`` CSV output
CLASSIFY_COLUMNS = ('pattern', 'parse_ok', 'variables', 'avd', 'mdet', 'recommended_engine', 'analysis_ms')

# Metacharacters of the pattern grammar
METACHARACTERS = frozenset('|+*()[]{}~$\\')

# Label kinds used in the automaton JSON documents
LABEL_KINDS = ('char', 'eps', 'recall', 'open', 'close')

# Maximum number of cached canonical automaton analyses
ANALYSIS_CACHE_SIZE = 256
