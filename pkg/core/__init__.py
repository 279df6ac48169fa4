"""
Core module initialization.
This module contains the typed computer-algebra kernel: structures,
carriers, expressions, the CA language front end and the OOP back end.
"""

from .command_handler import CommandHandler, Session, SessionOptions
from .engine import elaborate, evaluate, free_symbols, infer_type, simplify, substitute
from .expr import Apply, Environment, FreeSymbol, Literal
from .hierarchy import builtin_registry
from .typetags import TypeTag

__all__ = [
    'CommandHandler', 'Session', 'SessionOptions',
    'elaborate', 'evaluate', 'free_symbols', 'infer_type', 'simplify', 'substitute',
    'Apply', 'Environment', 'FreeSymbol', 'Literal',
    'builtin_registry', 'TypeTag',
]
