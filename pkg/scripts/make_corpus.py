"""Generate the bundled graph6 corpora.

* ``planar_le8.g6``: every planar graph on 1 to 8 vertices, one per
  isomorphism class, connected or not.
* ``girth5_planar_le9.g6``: every planar graph of girth at least five
  (forests included) on 1 to 9 vertices.
* ``girth5_outerplanar_le10.g6``: every outerplanar graph of girth at least
  five on 1 to 10 vertices.

Both classes are closed under vertex deletion, so level ``n + 1`` is built by
adding a vertex to each level-``n`` graph in every possible way, filtering,
and removing isomorphic duplicates (Weisfeiler-Lehman hash buckets, then an
exact isomorphism test).
"""

from __future__ import annotations

import argparse
import itertools
from pathlib import Path

import networkx as nx

DATA = Path(__file__).resolve().parent.parent / "src" / "corrcolour" / "data"


def has_short_cycle(g: nx.Graph, new: int, limit: int) -> bool:
    """Whether a cycle of length below ``limit`` passes through ``new``."""
    nbrs = list(g.neighbors(new))
    h = g.copy()
    h.remove_node(new)
    for a, b in itertools.combinations(nbrs, 2):
        try:
            d = nx.shortest_path_length(h, a, b)
        except nx.NetworkXNoPath:
            continue
        if d + 2 < limit:
            return True
    return False


def is_outerplanar(g: nx.Graph) -> bool:
    h = g.copy()
    apex = max(h.nodes, default=-1) + 1
    h.add_edges_from((apex, v) for v in g.nodes)
    h.add_node(apex)
    return nx.check_planarity(h)[0]


def extend(level: list[nx.Graph], girth5: bool, outer: bool = False) -> list[nx.Graph]:
    buckets: dict[str, list[nx.Graph]] = {}
    out = []
    for g in level:
        n = g.number_of_nodes()
        for k in range(n + 1):
            for nbrs in itertools.combinations(range(n), k):
                h = g.copy()
                h.add_node(n)
                h.add_edges_from((n, x) for x in nbrs)
                if girth5 and has_short_cycle(h, n, 5):
                    continue
                if not (is_outerplanar(h) if outer else nx.check_planarity(h)[0]):
                    continue
                key = nx.weisfeiler_lehman_graph_hash(h, iterations=4)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(h, o) for o in bucket):
                    continue
                bucket.append(h)
                out.append(h)
    return out


def generate(max_n: int, girth5: bool, outer: bool = False) -> list[list[nx.Graph]]:
    first = nx.Graph()
    first.add_node(0)
    levels = [[first]]
    while len(levels) < max_n:
        levels.append(extend(levels[-1], girth5, outer))
    return levels


def write(levels: list[list[nx.Graph]], path: Path) -> None:
    lines = []
    for level in levels:
        for g in level:
            lines.append(nx.to_graph6_bytes(g, header=False).decode().strip())
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=DATA)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    planar = generate(8, girth5=False)
    print("planar:", [len(x) for x in planar])
    write(planar, args.out / "planar_le8.g6")
    g5 = generate(9, girth5=True)
    print("girth>=5 planar:", [len(x) for x in g5])
    write(g5, args.out / "girth5_planar_le9.g6")
    g5o = generate(10, girth5=True, outer=True)
    print("girth>=5 outerplanar:", [len(x) for x in g5o])
    write(g5o, args.out / "girth5_outerplanar_le10.g6")


if __name__ == "__main__":
    main()
