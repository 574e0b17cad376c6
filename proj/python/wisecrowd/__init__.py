"""Exact crowd-versus-individual squared-error analysis."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, CrowdError  # noqa: F401
