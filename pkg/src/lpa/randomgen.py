"""Seeded random multigraph generation for property campaigns.

Endpoints are drawn uniformly with replacement, so loops and parallel
edges (the interesting Leavitt cases) occur often.
"""

from __future__ import annotations

import random

from .graphs import Edge, Graph


def random_graph(rng: random.Random, max_vertices: int, max_edges: int) -> Graph:
    if max_vertices < 1:
        raise ValueError("max_vertices must be at least 1")
    if max_edges < 0:
        raise ValueError("max_edges must be nonnegative")
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(0, max_edges)
    vertices = [f"v{i}" for i in range(1, nv + 1)]
    edges = [
        Edge(f"e{j}", rng.choice(vertices), rng.choice(vertices))
        for j in range(1, ne + 1)
    ]
    return Graph(vertices, edges)


def graph_stream(seed: int, count: int, max_vertices: int, max_edges: int):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_graph(rng, max_vertices, max_edges)
