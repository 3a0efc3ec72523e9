"""Bundled demonstration systems used as golden regression fixtures."""

from __future__ import annotations

from importlib import resources


def bundled_names() -> list[str]:
    root = resources.files("funcobs").joinpath("data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_text(name: str) -> str:
    path = resources.files("funcobs").joinpath("data", f"{name}.json")
    if not path.is_file():
        known = ", ".join(bundled_names())
        raise FileNotFoundError(f"no bundled system {name!r}; available: {known}")
    return path.read_text(encoding="utf-8")
