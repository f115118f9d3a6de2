"""Structured logging setup for SDC-Channel.

Simulation code logs plain key/value events; the link being simulated is
bound once per worker with ``link_context`` and merged into every event.
"""

import logging
import sys
from contextlib import contextmanager
from typing import Any, Iterator, MutableMapping

import numpy as np
import structlog


def numpy_to_builtin(
    logger: Any, method_name: str, event_dict: MutableMapping[str, Any]
) -> MutableMapping[str, Any]:
    """Turn numpy scalars and small arrays in an event into plain Python values.

    ``np.int64`` snapshot indices and ``np.bool_`` flags are not JSON
    serializable; arrays become lists.
    """
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            event_dict[key] = value.tolist()
    return event_dict


@contextmanager
def link_context(scenario: str, trp_id: str) -> Iterator[None]:
    """Bind the scenario name and TRP id to every event logged in this context.

    Context variables do not cross thread-pool boundaries, so each worker
    binds its own link.
    """
    with structlog.contextvars.bound_contextvars(scenario=scenario, trp_id=trp_id):
        yield


def setup_logging(log_level: str = "INFO", development: bool = True) -> None:
    """Configure structured logging.

    Logs go to stderr so that data written to stdout (scenario dumps, traces)
    stays machine-readable.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        development: If True, use pretty console output; if False, use JSON lines
    """
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, log_level.upper()),
        force=True,
    )

    processors: list[Any] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        numpy_to_builtin,
        structlog.processors.StackInfoRenderer(),
    ]

    if development:
        processors.append(structlog.dev.ConsoleRenderer())
    else:
        processors.extend(
            [
                structlog.processors.format_exc_info,
                structlog.processors.JSONRenderer(),
            ]
        )

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> Any:
    """Get a configured structlog logger.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Configured structlog logger
    """
    return structlog.get_logger(name)
