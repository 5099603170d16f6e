"""
EPDiff-SW

Pseudospectral simulation of the shallow-water and EPDiff equations on
periodic 1-D and 2-D domains, with Yukawa Green's-function tooling and
invariant verification suites.
"""

from epdiffsw.core.config import settings
from epdiffsw.core.log_config import configure_logging

# Import-time events (formulation registration) must not reach stdout.
configure_logging()

__version__ = settings.VERSION

__all__ = ["__version__", "configure_logging"]
