"""Treebank to Tree-Adjoining Grammar conversion toolkit.

Thin Python surface over the C++ core: convert bracketed constituency trees
into the token-aligned tabular derivation format, validate files, and gather
grammar/corpus statistics.
"""

try:
    from ._tagbank import convert, default_tables, grammar, stats, validate
except ImportError:  # module built next to the package instead of inside it
    from _tagbank import convert, default_tables, grammar, stats, validate

__all__ = ["convert", "validate", "grammar", "stats", "default_tables"]
__version__ = "0.1.0"
