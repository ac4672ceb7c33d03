"""Bundled graph6 corpora of small planar graphs."""

from __future__ import annotations

from importlib import resources

from .graph import Graph
from .io import parse_graph6_lines

CORPORA = {
    "planar_le8": "planar_le8.g6",
    "girth5_planar_le9": "girth5_planar_le9.g6",
    "girth5_outerplanar_le10": "girth5_outerplanar_le10.g6",
}


def load(name: str, *, max_vertices: int | None = None, connected: bool | None = None) -> list[Graph]:
    """Graphs of a bundled corpus, optionally filtered by order and connectivity."""
    if name not in CORPORA:
        raise KeyError(f"unknown corpus {name!r}; available: {sorted(CORPORA)}")
    text = resources.files(__package__).joinpath("data", CORPORA[name]).read_text(encoding="ascii")
    graphs = parse_graph6_lines(text, source=name)
    if max_vertices is not None:
        graphs = [g for g in graphs if g.v <= max_vertices]
    if connected is not None:
        graphs = [g for g in graphs if g.is_connected() == connected]
    return graphs
