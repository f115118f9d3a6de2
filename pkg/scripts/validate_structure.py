#!/usr/bin/env python3
"""Validate the SDC-Channel project structure."""

import sys
from pathlib import Path

PACKAGE = "src/sdc_channel"
SUBPACKAGES = (
    "clusters",
    "config",
    "drifting",
    "geometry",
    "metrics",
    "models",
    "positioning",
    "propagation",
    "scenario",
    "utils",
)

# Expected files and directories
EXPECTED_STRUCTURE = {
    "files": [
        "pyproject.toml",
        ".env.example",
        "README.md",
        "DESIGN.md",
        "docs/scenario-format.md",
        f"{PACKAGE}/__init__.py",
        f"{PACKAGE}/cli.py",
        f"{PACKAGE}/constants.py",
        f"{PACKAGE}/errors.py",
        *(f"{PACKAGE}/{sub}/__init__.py" for sub in SUBPACKAGES),
        # Tests
        "tests/__init__.py",
        "tests/conftest.py",
        "tests/unit/__init__.py",
        "tests/integration/__init__.py",
        "tests/integration/test_reference_scenario.py",
        # Scripts
        "scripts/setup_dev.sh",
        "scripts/export_schema.py",
    ],
    "directories": [
        PACKAGE,
        *(f"{PACKAGE}/{sub}" for sub in SUBPACKAGES),
        "tests",
        "tests/unit",
        "tests/integration",
        "scripts",
        "docs",
    ],
}


def validate_structure() -> bool:
    """Validate that all expected files and directories exist.

    Returns:
        True if all files exist, False otherwise
    """
    root = Path.cwd()
    all_valid = True

    print("Validating project structure...\n")

    print("Checking directories:")
    for directory in EXPECTED_STRUCTURE["directories"]:
        if (root / directory).is_dir():
            print(f"  ✅ {directory}")
        else:
            print(f"  ❌ {directory} (missing)")
            all_valid = False

    print("\nChecking files:")
    for file in EXPECTED_STRUCTURE["files"]:
        if (root / file).is_file():
            print(f"  ✅ {file}")
        else:
            print(f"  ❌ {file} (missing)")
            all_valid = False

    print("\n" + "=" * 60)
    if all_valid:
        print("✅ All files and directories are present!")
        return True
    print("❌ Some files or directories are missing")
    return False


if __name__ == "__main__":
    success = validate_structure()
    sys.exit(0 if success else 1)
