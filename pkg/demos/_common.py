"""Shared helpers for the demo scripts."""

from pathlib import Path

OUT = Path(__file__).resolve().parent / "output"


def out_path(name):
    OUT.mkdir(exist_ok=True)
    return OUT / name
