"""Canonical fixture graphs used across the test suite and docs."""

from __future__ import annotations

import json

from .graphs import Graph, parse_graph

DOCUMENTS: dict[str, dict] = {
    "g_loop": {
        "vertices": ["v"],
        "edges": [{"id": "c", "src": "v", "dst": "v"}],
    },
    "g_line3": {
        "vertices": ["v1", "v2", "v3"],
        "edges": [
            {"id": "e1", "src": "v1", "dst": "v2"},
            {"id": "e2", "src": "v2", "dst": "v3"},
        ],
    },
    "g_toeplitz": {
        "vertices": ["u", "v"],
        "edges": [
            {"id": "e", "src": "u", "dst": "u"},
            {"id": "f", "src": "u", "dst": "v"},
        ],
    },
    "g_r2": {
        "vertices": ["v"],
        "edges": [
            {"id": "e1", "src": "v", "dst": "v"},
            {"id": "e2", "src": "v", "dst": "v"},
        ],
    },
    "g_ext2": {
        "vertices": ["u", "w"],
        "edges": [
            {"id": "e", "src": "u", "dst": "u"},
            {"id": "f", "src": "u", "dst": "w"},
            {"id": "g", "src": "w", "dst": "u"},
        ],
    },
    "g_cwe": {
        "vertices": ["w", "z"],
        "edges": [
            {"id": "e", "src": "w", "dst": "w"},
            {"id": "g", "src": "w", "dst": "z"},
            {"id": "h", "src": "z", "dst": "z"},
        ],
    },
}


def graph(name: str) -> Graph:
    return parse_graph(json.dumps(DOCUMENTS[name]))
