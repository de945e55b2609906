"""Breadth-first enumeration of the exchange quiver of silting pairs.

The walk starts at the projective pair and mutates every module summand of
every frontier node; shifted-projective summands are never mutated, since a
left mutation there would leave the two-term range — every downward edge is
realised at a module summand.  Wave results are merged in a fixed order
(source index, then canonical summand position), so node and edge numbering
is independent of the worker count and of registry id assignment.

Running out of the node or depth budget is a value, not an error: the
quiver comes back with ``complete = False`` and downstream consumers that
need completeness check the flag.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteDimAlgebra
from .silting import Registry, SiltingPair, SiltingWorkspace  # noqa: F401  Registry re-exported here

DEFAULT_MAX_NODES = 1_000_000
DEFAULT_MAX_DEPTH = 1_000_000


@dataclass(frozen=True)
class ExploreLimits:
    max_nodes: int = DEFAULT_MAX_NODES
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_depth < 0:
            raise ValueError("limits must be positive")


@dataclass
class ExchangeQuiver:
    """Nodes are canonical silting pairs; edges are labelled left mutations."""

    workspace: SiltingWorkspace
    nodes: list[SiltingPair]
    edges: list[tuple[int, int, int]]   # (from, to, mutated summand position)
    complete: bool
    stats: dict = field(default_factory=dict)

    @property
    def algebra(self) -> FiniteDimAlgebra:
        return self.workspace.algebra

    def node_index(self, pair: SiltingPair) -> int:
        return self.nodes.index(pair)


def explore(algebra: FiniteDimAlgebra, limits: ExploreLimits | None = None,
            workers: int = 1, workspace: SiltingWorkspace | None = None) -> ExchangeQuiver:
    limits = limits or ExploreLimits()
    ws = workspace if workspace is not None else SiltingWorkspace(algebra)
    start = ws.lambda_pair()
    nodes: list[SiltingPair] = [start]
    index: dict[SiltingPair, int] = {start: 0}
    edges: list[tuple[int, int, int]] = []
    frontier = [0]
    complete = True
    depth = 0
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while frontier:
            if depth >= limits.max_depth:
                complete = False
                break
            tasks = [(src, at) for src in frontier
                     for at in range(len(nodes[src].summands))]

            def run(task):
                src, at = task
                return src, at, ws.mutate_left(nodes[src], at)

            if pool is not None:
                results = list(pool.map(run, tasks))
            else:
                results = [run(t) for t in tasks]

            new_frontier = []
            overflowed = False
            for src, at, cand in results:   # already in (src, at) order
                if cand is None:
                    continue
                tgt = index.get(cand)
                if tgt is None:
                    if len(nodes) >= limits.max_nodes:
                        overflowed = True
                        continue
                    tgt = len(nodes)
                    nodes.append(cand)
                    index[cand] = tgt
                    new_frontier.append(tgt)
                edges.append((src, tgt, at))
            if overflowed:
                complete = False
                break
            frontier = new_frontier
            depth += 1
    finally:
        if pool is not None:
            pool.shutdown(wait=True)
    stats = {"nodes": len(nodes), "edges": len(edges), "max_depth": depth}
    return ExchangeQuiver(ws, nodes, edges, complete, stats)


def poset_relations(eq: ExchangeQuiver) -> np.ndarray:
    """Full boolean matrix ``leq[i, j] == (node_i <= node_j)``, sanity-checked."""
    ws = eq.workspace
    n = len(eq.nodes)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            leq[i, j] = ws.pair_leq(eq.nodes[i], eq.nodes[j])
    assert all(leq[i, i] for i in range(n)), "order is not reflexive"
    for i in range(n):
        for j in range(n):
            if i != j and leq[i, j] and leq[j, i]:
                raise AssertionError(f"order is not antisymmetric at {i}, {j}")
            if leq[i, j]:
                for k in range(n):
                    if leq[j, k] and not leq[i, k]:
                        raise AssertionError("order is not transitive")
    return leq


def cover_relations(leq: np.ndarray) -> set[tuple[int, int]]:
    """Edges (u, v) with node_v strictly below node_u and nothing between."""
    n = leq.shape[0]
    covers = set()
    for u in range(n):
        for v in range(n):
            if u == v or not leq[v, u]:
                continue
            if any(k not in (u, v) and leq[v, k] and leq[k, u] for k in range(n)):
                continue
            covers.add((u, v))
    return covers


def hasse_check(eq: ExchangeQuiver) -> bool:
    """Whether the mutation edges coincide with the covers of the order."""
    if not eq.complete:
        raise ValueError("Hasse comparison needs a complete exploration")
    got = {(u, v) for (u, v, _) in eq.edges}
    return got == cover_relations(poset_relations(eq))


# ---- serialization --------------------------------------------------------------


def node_payload(eq: ExchangeQuiver, i: int) -> dict:
    ws = eq.workspace
    pair = eq.nodes[i]
    return {
        "id": i,
        "summands": [
            {"dims": list(ws.registry.dims(s)), "gvec": list(ws.registry.gvector(s))}
            for s in pair.summands
        ],
        "proj_part": [eq.algebra.quiver.vertices[v] for v in pair.proj_part],
    }


def to_json(eq: ExchangeQuiver) -> str:
    doc = {
        "algebra": eq.algebra.to_json_dict(),
        "complete": eq.complete,
        "nodes": [node_payload(eq, i) for i in range(len(eq.nodes))],
        "edges": [{"from": u, "to": v, "at": at} for (u, v, at) in eq.edges],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def node_label(eq: ExchangeQuiver, i: int) -> str:
    ws = eq.workspace
    pair = eq.nodes[i]
    if not pair.summands and not pair.proj_part:
        return "0"
    dims = "+".join(str(list(ws.registry.dims(s))) for s in pair.summands) or "0"
    if pair.proj_part:
        verts = ",".join(eq.algebra.quiver.vertices[v] for v in pair.proj_part)
        return f"{dims} | {{{verts}}}"
    return dims


def to_dot(eq: ExchangeQuiver) -> str:
    lines = ["digraph exchange {"]
    for i in range(len(eq.nodes)):
        label = node_label(eq, i).replace('"', "'")
        lines.append(f'  n{i} [label="{label}" tooltip="{label}"];')
    for (u, v, at) in eq.edges:
        lines.append(f'  n{u} -> n{v} [label="{at}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
