"""Lisp interpreter whose values are holographic reduced representations."""

from ._vsalisp import (
    Oracle,
    Session,
    VsaError,
    bench,
    bind,
    normalize,
    parse_print,
    sample_atom,
    similarity,
    unbind,
)

__all__ = [
    "Oracle",
    "Session",
    "VsaError",
    "bench",
    "bind",
    "normalize",
    "parse_print",
    "sample_atom",
    "similarity",
    "unbind",
]
