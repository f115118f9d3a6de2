#!/usr/bin/env python3
"""Write the JSON schema of scenario documents to docs/scenario.schema.json."""

import json
import sys
from pathlib import Path

from sdc_channel.models import Scenario

SCHEMA_PATH = Path("docs/scenario.schema.json")


def export_schema(path: Path = SCHEMA_PATH) -> Path:
    """Dump ``Scenario.model_json_schema()`` with stable key order.

    Returns:
        Path of the written schema
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    schema = Scenario.model_json_schema()
    path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


if __name__ == "__main__":
    print(f"✅ Wrote {export_schema()}")
    sys.exit(0)
