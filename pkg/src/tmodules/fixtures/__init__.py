"""Example module descriptions shipped with the package."""

from pathlib import Path

FIXTURE_DIR = Path(__file__).parent


def fixture_path(name):
    """Path of a bundled description; ".json" may be omitted."""
    if not name.endswith(".json"):
        name += ".json"
    p = FIXTURE_DIR / name
    if not p.exists():
        raise FileNotFoundError(f"no bundled module named {name!r}")
    return p


def fixture_names():
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))
