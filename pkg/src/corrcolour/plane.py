"""Plane embeddings as rotation systems with designated outer faces."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from types import MappingProxyType

from .errors import GraphError
from .graph import Edge, Graph, edge_key

Dart = tuple[int, int]


def _positions(rotation: Mapping[int, Sequence[int]]) -> dict[int, dict[int, int]]:
    return {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rotation.items()}


def trace_faces(rotation: Mapping[int, Sequence[int]]) -> list[tuple[Dart, ...]]:
    """Orbits of the face permutation ``(u, v) -> (v, rot[v][pos(u) - 1])``."""
    pos = _positions(rotation)
    seen: set[Dart] = set()
    faces = []
    for u in sorted(rotation):
        for v in rotation[u]:
            if (u, v) in seen:
                continue
            face = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                a, b = dart
                nbrs = rotation[b]
                dart = (b, nbrs[(pos[b][a] - 1) % len(nbrs)])
            faces.append(tuple(face))
    return faces


def face_vertices(face: Sequence[Dart]) -> list[int]:
    return [d[0] for d in face]


def _rotation_components(rotation: Mapping[int, Sequence[int]]) -> list[set[int]]:
    seen: set[int] = set()
    comps = []
    for root in sorted(rotation):
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        seen.add(root)
        while stack:
            x = stack.pop()
            for y in rotation[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def _match_face(faces, walk: Sequence[int]) -> tuple[Dart, ...] | None:
    n = len(walk)
    walk = list(walk)
    candidates = []
    for face in faces:
        fv = face_vertices(face)
        if len(fv) != n:
            continue
        for seq, rank in ((walk, 0), (walk[::-1], 1)):
            for shift in range(n):
                if fv[shift:] + fv[:shift] == seq:
                    candidates.append((rank, face))
                    break
    if not candidates:
        return None
    candidates.sort(key=lambda c: c[0])
    return candidates[0][1]


class PlaneGraph:
    """A simple graph with a rotation system and one outer face per component.

    ``rotation[v]`` lists the neighbours of ``v`` in cyclic order. Faces are
    traced as orbits of darts; every component must satisfy Euler's formula
    ``v - e + f = 2``, which rejects rotation data of positive genus.
    """

    __slots__ = ("graph", "rotation", "_faces", "_outer")

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        outer_face: Sequence[int] | Sequence[Sequence[int]] | None = None,
        *,
        outer_darts: Iterable[Dart] | None = None,
    ):
        rot = {int(v): tuple(int(w) for w in nbrs) for v, nbrs in rotation.items()}
        for v, nbrs in rot.items():
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"rotation at {v} repeats a neighbour")
            for w in nbrs:
                if w == v:
                    raise GraphError(f"loop at {v}")
                if w not in rot or v not in rot[w]:
                    raise GraphError(f"rotation is not symmetric on edge ({v},{w})")
        edges = {edge_key(v, w) for v, nbrs in rot.items() for w in nbrs}
        self.graph = Graph(rot.keys(), edges)
        self.rotation = MappingProxyType(rot)
        self._faces = trace_faces(rot)
        self._check_euler()
        self._outer = self._designate_outer(outer_face, outer_darts)

    # -- construction helpers --------------------------------------------

    def _check_euler(self) -> None:
        face_of = {}
        for i, face in enumerate(self._faces):
            for d in face:
                face_of[d] = i
        for comp in _rotation_components(self.rotation):
            nv = len(comp)
            ne = sum(len(self.rotation[v]) for v in comp) // 2
            if ne == 0:
                continue
            nf = len({face_of[(v, w)] for v in comp for w in self.rotation[v]})
            if nv - ne + nf != 2:
                raise GraphError(
                    f"rotation system is not planar: component with v={nv}, e={ne} "
                    f"traces f={nf} faces (Euler characteristic {nv - ne + nf}, expected 2)"
                )

    def _designate_outer(self, outer_face, outer_darts) -> tuple[tuple[Dart, ...], ...]:
        comps = [c for c in _rotation_components(self.rotation) if any(self.rotation[v] for v in c)]
        chosen: dict[int, tuple[Dart, ...]] = {}

        def comp_index(face):
            v = face[0][0]
            return next(i for i, c in enumerate(comps) if v in c)

        if outer_darts is not None:
            darts = set(outer_darts)
            for face in self._faces:
                if darts.intersection(face):
                    i = comp_index(face)
                    if i in chosen and chosen[i] != face:
                        raise GraphError("two outer faces designated in one component")
                    chosen[i] = face
        elif outer_face is not None:
            walks = outer_face
            if walks and not isinstance(walks[0], (list, tuple)):
                walks = [walks]
            for walk in walks:
                face = _match_face(self._faces, walk)
                if face is None:
                    raise GraphError(f"outer face {list(walk)} is not a face of the embedding")
                i = comp_index(face)
                if i in chosen:
                    raise GraphError("two outer faces designated in one component")
                chosen[i] = face
        for i, comp in enumerate(comps):
            if i not in chosen:
                if outer_face is not None and outer_darts is None and len(comps) == 1:
                    raise GraphError("outer face not found")
                own = [f for f in self._faces if f[0][0] in comp]
                chosen[i] = max(own, key=lambda f: (len(f), [-x for x in face_vertices(f)]))
        return tuple(chosen[i] for i in range(len(comps)))

    # -- queries ---------------------------------------------------------

    def faces(self) -> list[tuple[Dart, ...]]:
        return list(self._faces)

    def face_walks(self) -> list[list[int]]:
        return [face_vertices(f) for f in self._faces]

    @property
    def outer_faces(self) -> tuple[tuple[Dart, ...], ...]:
        return self._outer

    @property
    def outer_face(self) -> list[int]:
        """Vertex walk of the outer face of the first component with edges."""
        return face_vertices(self._outer[0]) if self._outer else []

    def outer_darts(self) -> frozenset[Dart]:
        return frozenset(d for f in self._outer for d in f)

    def outer_vertices(self) -> frozenset[int]:
        """Vertices on some outer boundary walk; isolated vertices count."""
        vs = {d[0] for f in self._outer for d in f}
        vs.update(v for v, nbrs in self.rotation.items() if not nbrs)
        return frozenset(vs)

    def outer_edges(self) -> frozenset[Edge]:
        return frozenset(edge_key(*d) for f in self._outer for d in f)

    def __repr__(self) -> str:
        return f"PlaneGraph(rotation={dict(self.rotation)}, outer_face={self.outer_face})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return dict(self.rotation) == dict(other.rotation) and self.outer_darts() == other.outer_darts()

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.rotation.items())), self.outer_darts()))

    # -- sub-embeddings --------------------------------------------------

    def delete_edges(self, edges: Iterable[tuple[int, int]]) -> PlaneGraph:
        """Delete edges one at a time, tracking where the outer region goes.

        Removing an edge between two faces merges them; removing a bridge
        splits its face, and a component split off from an interior face
        takes its piece of that face as its own outer face.
        """
        rot = {v: list(n) for v, n in self.rotation.items()}
        outer = set(self.outer_darts())
        for u, w in sorted(edge_key(*e) for e in edges):
            if w not in rot.get(u, ()):
                raise GraphError(f"({u},{w}) is not an edge")
            faces = trace_faces(rot)
            old_face = {d for f in faces if (u, w) in f or (w, u) in f for d in f}
            rot[u].remove(w)
            rot[w].remove(u)
            outer.discard((u, w))
            outer.discard((w, u))
            old_face -= {(u, w), (w, u)}
            faces = trace_faces(rot)
            new_outer = set()
            for f in faces:
                if outer.intersection(f):
                    new_outer.update(f)
            for comp in _rotation_components(rot):
                if not any(rot[v] for v in comp):
                    continue
                own = [f for f in faces if f[0][0] in comp]
                if any(new_outer.intersection(f) for f in own):
                    continue
                split = [f for f in own if old_face.intersection(f)]
                if len(split) != 1:
                    raise GraphError("could not locate the outer face after deletion")
                new_outer.update(split[0])
            outer = new_outer
        return PlaneGraph(rot, outer_darts=outer)

    def restrict(self, vertices: Iterable[int]) -> PlaneGraph:
        """Induced sub-embedding on ``vertices`` with outer faces tracked."""
        keep = set(vertices)
        unknown = keep - set(self.rotation)
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        drop = [e for e in self.graph.edges if e[0] not in keep or e[1] not in keep]
        pg = self.delete_edges(drop)
        rot = {v: n for v, n in pg.rotation.items() if v in keep}
        return PlaneGraph(rot, outer_darts=pg.outer_darts())

    def edge_subgraph(self, edges: Iterable[tuple[int, int]]) -> PlaneGraph:
        """Sub-embedding on exactly the given edges and their endpoints."""
        keep = {edge_key(*e) for e in edges}
        vs = {x for e in keep for x in e}
        pg = self.delete_edges(self.graph.edges - keep)
        rot = {v: n for v, n in pg.rotation.items() if v in vs}
        return PlaneGraph(rot, outer_darts=pg.outer_darts())


def faces(pg: PlaneGraph) -> list[list[int]]:
    """Boundary walks of all faces of ``pg`` as vertex sequences."""
    return pg.face_walks()
