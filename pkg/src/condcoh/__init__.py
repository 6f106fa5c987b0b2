"""Exact coherence checking and propagation for conditional events,
their conjunctions and iterated conditionals."""

from .coherence import Assessment, CheckReport, assess, check_coherence, dutch_book_witness, gain, is_coherent
from .compound import Cond, Conj, Iter, build_table, canonical_key, cond, iterated, conjunction_n, required_keys
from .dsl import elaborate, format_expr, parse, parse_formula
from .errors import *  # noqa: F401,F403
from .eventspace import EventSpace, conj, disj, neg
from .propagation import Interval, extension_interval, p_consistent, p_entails
from .quantity import ConditionalEvent, ValueTable, format_rational, indicator, parse_rational
from .replication import run_suite

__version__ = "0.1.0"
