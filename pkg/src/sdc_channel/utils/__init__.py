"""Utility modules for SDC-Channel."""

from .logging import get_logger, link_context, numpy_to_builtin, setup_logging

__all__ = ["get_logger", "link_context", "numpy_to_builtin", "setup_logging"]
