"""Atomic-diagram codecs, prefix-continuous reductions, theory completions,
and verified finite-injury demos."""

try:
    from ._core import *  # noqa: F401,F403  (installed layout)
except ImportError:  # in-tree builds put _core next to the package dir
    from _core import *  # noqa: F401,F403

from ._version import __version__  # noqa: F401
