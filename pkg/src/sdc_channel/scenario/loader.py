"""Scenario parsing, serialization and hashing.

JSON is the canonical format; YAML is accepted for hand-written files.
Validation failures are reported as ``ScenarioError`` listing every
offending key path.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Literal, Union

import yaml
from pydantic import ValidationError

from ..errors import ScenarioError
from ..models import Scenario
from ..utils import get_logger

logger = get_logger(__name__)

Format = Literal["json", "yaml"]


def _problems(exc: ValidationError) -> list[tuple[str, str]]:
    problems: list[tuple[str, str]] = []
    for err in exc.errors():
        path = ".".join(str(part) for part in err["loc"])
        message = str(err["msg"]).removeprefix("Value error, ")
        if path:
            problems.append((path, message))
            continue
        # model-level checks report "key: message" parts joined by "; "
        for part in message.split("; "):
            key, sep, rest = part.partition(": ")
            problems.append((key, rest) if sep else ("", part))
    return problems


def scenario_from_data(data: Any) -> Scenario:
    """Validate already-decoded scenario data.

    Raises:
        ScenarioError: If validation fails
    """
    if not isinstance(data, dict):
        raise ScenarioError([("", "scenario document must be a mapping")])
    try:
        return Scenario.model_validate(data)
    except ValidationError as exc:
        raise ScenarioError(_problems(exc)) from exc


def parse_scenario(text: str, fmt: Format = "json") -> Scenario:
    """Parse and validate a scenario document.

    Args:
        text: Document text
        fmt: ``json`` (canonical) or ``yaml``

    Returns:
        Validated scenario

    Raises:
        ScenarioError: On malformed text or any validation failure
    """
    if fmt == "json":
        try:
            return Scenario.model_validate_json(text)
        except ValidationError as exc:
            if any(err["type"] == "json_invalid" for err in exc.errors()):
                raise ScenarioError([("", f"malformed JSON: {exc.errors()[0]['msg']}")]) from exc
            raise ScenarioError(_problems(exc)) from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError([("", f"malformed YAML: {exc}")]) from exc
    return scenario_from_data(data)


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Load a scenario file; ``.yaml``/``.yml`` files are read as YAML.

    Raises:
        ScenarioError: On invalid content
        OSError: If the file cannot be read
    """
    path = Path(path)
    fmt: Format = "yaml" if path.suffix.lower() in (".yaml", ".yml") else "json"
    scenario = parse_scenario(path.read_text(encoding="utf-8"), fmt)
    logger.info(
        "Scenario loaded",
        path=str(path),
        name=scenario.name,
        trps=len(scenario.trps),
        sdcs=len(scenario.sdcs),
    )
    return scenario


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical, human-readable JSON text of a scenario."""
    return scenario.model_dump_json(indent=2) + "\n"


def scenario_hash(scenario: Scenario) -> str:
    """SHA-256 of the compact, key-sorted JSON form of the scenario."""
    canonical = json.dumps(
        scenario.model_dump(mode="json"), sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
