"""Command-line front end."""

from importlib import resources


def bundled_configs() -> list:
    """Paths of the example configs shipped with the package."""
    root = resources.files(__package__) / "configs"
    return sorted(p for p in root.iterdir() if p.name.endswith(".ini"))
