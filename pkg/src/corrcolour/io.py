"""Reading and writing graphs, plane embeddings and assignments.

Three interchange formats are supported:

* graph6 text, one graph per line (blank lines and ``>>graph6<<`` headers
  are allowed);
* an embedding document ``{"rotation": {"v": [w, ...]}, "outer_face": [...]}``;
* an assignment document ``{"k": int?, "lists": {"v": [c, ...]},
  "matchings": {"u,v": [[cu, cv], ...]}}``. ``"mode": "identity"`` builds
  identity matchings on shared colours and then needs a graph, given either
  to :func:`parse_assignment` or inline as a ``"graph6"`` field.

A JSON file may hold one document or a list of documents.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .correspondence import CorrespondenceAssignment, from_lists, validate
from .errors import GraphError
from .graph import Graph
from .graph6 import Graph6Error, encode_graph6, parse_graph6
from .plane import PlaneGraph


class IngestError(GraphError):
    """Malformed input; ``location`` names the line or JSON field."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass
class Ingested:
    graphs: list[Graph] = field(default_factory=list)
    embeddings: list[PlaneGraph] = field(default_factory=list)
    assignments: list[CorrespondenceAssignment] = field(default_factory=list)


# -- graph6 ------------------------------------------------------------------


def parse_graph6_lines(text: str, *, source: str = "<text>") -> list[Graph]:
    graphs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line == ">>graph6<<":
            continue
        try:
            graphs.append(parse_graph6(line))
        except Graph6Error as exc:
            raise IngestError(str(exc), f"{source}:{lineno}") from None
        except GraphError as exc:
            raise IngestError(str(exc), f"{source}:{lineno}") from None
    return graphs


def emit_graph6(graphs: Graph | Sequence[Graph]) -> str:
    if isinstance(graphs, Graph):
        graphs = [graphs]
    return "".join(encode_graph6(g) + "\n" for g in graphs)


# -- embeddings --------------------------------------------------------------


def embedding_to_json(pg: PlaneGraph) -> dict:
    from .plane import face_vertices

    walks = [face_vertices(f) for f in pg.outer_faces]
    return {
        "rotation": {str(v): list(nbrs) for v, nbrs in pg.rotation.items()},
        "outer_face": walks[0] if len(walks) == 1 else walks,
    }


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise IngestError(f"expected an integer, found {value!r}", where)
    try:
        return int(value)
    except ValueError:
        raise IngestError(f"expected an integer, found {value!r}", where) from None


def parse_embedding(doc: Mapping, *, source: str = "<json>") -> PlaneGraph:
    rot_doc = doc.get("rotation")
    if not isinstance(rot_doc, Mapping):
        raise IngestError("'rotation' must be an object", f"{source}:rotation")
    rotation = {}
    for key, nbrs in rot_doc.items():
        where = f"{source}:rotation.{key}"
        if not isinstance(nbrs, list):
            raise IngestError("neighbour list must be an array", where)
        rotation[_int(key, where)] = [_int(w, where) for w in nbrs]
    outer = doc.get("outer_face")
    if outer is not None and not isinstance(outer, list):
        raise IngestError("'outer_face' must be an array", f"{source}:outer_face")
    try:
        return PlaneGraph(rotation, outer)
    except GraphError as exc:
        raise IngestError(str(exc), f"{source}:rotation") from None


# -- assignments -------------------------------------------------------------


def assignment_to_json(a: CorrespondenceAssignment) -> dict:
    out: dict = {}
    if a.k is not None:
        out["k"] = a.k
    out["lists"] = {str(v): sorted(cs) for v, cs in a.lists.items()}
    out["matchings"] = {f"{u},{v}": sorted([x, y] for x, y in pairs) for (u, v), pairs in a.matchings.items()}
    return out


def _edge_key(key: str, where: str) -> tuple[int, int]:
    parts = key.split(",")
    if len(parts) != 2:
        raise IngestError(f"edge key {key!r} is not of the form 'u,v'", where)
    u, v = (_int(p.strip(), where) for p in parts)
    if u == v:
        raise IngestError(f"edge key {key!r} is a loop", where)
    return u, v


def parse_assignment(doc: Mapping, graph: Graph | None = None, *, source: str = "<json>") -> CorrespondenceAssignment:
    """Build and validate an assignment; violations raise :class:`IngestError`."""
    k = doc.get("k")
    if k is not None:
        k = _int(k, f"{source}:k")
    if graph is None and "graph6" in doc:
        try:
            graph = parse_graph6(str(doc["graph6"]))
        except GraphError as exc:
            raise IngestError(str(exc), f"{source}:graph6") from None
    lists_doc = doc.get("lists")
    if not isinstance(lists_doc, Mapping):
        raise IngestError("'lists' must be an object", f"{source}:lists")
    lists = {}
    for key, cs in lists_doc.items():
        where = f"{source}:lists.{key}"
        if not isinstance(cs, list):
            raise IngestError("a list must be an array of colours", where)
        colours = [_int(c, where) for c in cs]
        if len(set(colours)) != len(colours):
            raise IngestError("repeated colour in list", where)
        lists[_int(key, where)] = colours
    mode = doc.get("mode")
    if mode == "identity":
        if graph is None:
            raise IngestError("identity mode needs a graph", f"{source}:mode")
        try:
            a = from_lists(graph, lists, k)
        except GraphError as exc:
            raise IngestError(str(exc), f"{source}:lists") from None
        return a
    if mode is not None:
        raise IngestError(f"unknown mode {mode!r}", f"{source}:mode")
    matchings = {}
    m_doc = doc.get("matchings", {})
    if not isinstance(m_doc, Mapping):
        raise IngestError("'matchings' must be an object", f"{source}:matchings")
    for key, pairs in m_doc.items():
        where = f"{source}:matchings.{key}"
        u, v = _edge_key(key, where)
        if not isinstance(pairs, list) or any(not isinstance(p, list) or len(p) != 2 for p in pairs):
            raise IngestError("pairs must be an array of [cu, cv] arrays", where)
        oriented = [(_int(x, where), _int(y, where)) for x, y in pairs]
        if (u, v) in matchings or (v, u) in matchings:
            raise IngestError(f"edge {key} given twice", where)
        matchings[(u, v)] = oriented
    a = CorrespondenceAssignment(lists, matchings, k)
    check = graph
    if check is None:
        try:
            check = Graph(lists.keys(), [e for e in a.matchings])
        except GraphError as exc:
            raise IngestError(str(exc), f"{source}:matchings") from None
    problems = validate(check, a)
    if problems:
        first = problems[0]
        field_name = "matchings" if "," in first.where else "lists"
        raise IngestError(
            "; ".join(p.message for p in problems), f"{source}:{field_name}.{first.where}"
        )
    return a


# -- dispatch ----------------------------------------------------------------


def _classify(doc, where: str) -> str:
    if not isinstance(doc, Mapping):
        raise IngestError("expected a JSON object", where)
    if "rotation" in doc:
        return "embedding"
    if "lists" in doc:
        return "assignment"
    raise IngestError("unrecognised document: needs 'rotation' or 'lists'", where)


def ingest_text(text: str, *, source: str = "<text>", graph: Graph | None = None) -> Ingested:
    out = Ingested()
    stripped = text.lstrip()
    if not stripped.startswith(("{", "[")):
        out.graphs = parse_graph6_lines(text, source=source)
        return out
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IngestError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None
    docs = doc if isinstance(doc, list) else [doc]
    for i, d in enumerate(docs):
        where = source if not isinstance(doc, list) else f"{source}[{i}]"
        kind = _classify(d, where)
        if kind == "embedding":
            pg = parse_embedding(d, source=where)
            out.embeddings.append(pg)
        else:
            base = graph
            if base is None and out.embeddings:
                base = out.embeddings[-1].graph
            elif base is None and out.graphs:
                base = out.graphs[-1]
            out.assignments.append(parse_assignment(d, base, source=where))
    return out


def ingest(path: str | Path, *, graph: Graph | None = None) -> Ingested:
    """Read a graph6, embedding or assignment file, detecting the format."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestError(str(exc), str(p)) from None
    return ingest_text(text, source=str(p), graph=graph)


def emit(obj, path: str | Path | None = None) -> str:
    """Serialise a graph (or graphs), an embedding or an assignment."""
    if isinstance(obj, PlaneGraph):
        text = json.dumps(embedding_to_json(obj), sort_keys=False) + "\n"
    elif isinstance(obj, CorrespondenceAssignment):
        text = json.dumps(assignment_to_json(obj)) + "\n"
    elif isinstance(obj, Graph) or (isinstance(obj, Sequence) and all(isinstance(g, Graph) for g in obj)):
        text = emit_graph6(obj)
    else:
        raise TypeError(f"cannot emit {type(obj).__name__}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
