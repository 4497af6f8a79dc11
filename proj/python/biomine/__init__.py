"""Mine gender-balanced, document-level parallel corpora from Wikipedia dumps."""

from ._biomine import *  # noqa: F401,F403
from ._biomine import __doc__  # noqa: F401
