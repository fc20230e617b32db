"""solowin: a single-window IDE engine.

Tool-view workflows (project tree, build results, tasks, breakpoints, call
stack, variables) are served by three mechanisms instead: a multi-mode
breadcrumbs bar, an enhanced two-part status bar, and inline text-editor
widgets. This package is the headless core; see the CLI (``solowin``) and the
terminal frontend for the user-facing surfaces.
"""

from .engine import Engine

__version__ = "0.1.0"

__all__ = ["Engine", "__version__"]
