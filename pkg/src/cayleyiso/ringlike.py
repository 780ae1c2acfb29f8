"""Block systems on two-ended cylinder graphs and the interval-cover bound.

A cylinder Z x Z_m carries the natural block partition B_z = {z} x Z_m,
linearly ordered by z. With s = m (block size) and t = max |zShift| over the
generators, every edge joins blocks at distance <= t (the partition is
(s,t)-ring-like) and any two vertices in the same or adjacent blocks are
joined by a path of length <= 2st (2st-cohesiveness). For a finite connected
set A with connected closure and |boundary(A)| = k, the interval of blocks
spanned by A covers A with slack |Q \\ A| <= 2s^2t^2k + 2stk.

This module instantiates the known block system and verifies those
definitional properties exhaustively on a window of blocks; it does not
search for block systems on arbitrary graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Tuple

from .groups import Cylinder, GroupGraph, Vertex
from .isoperimetry import VertexSet, _boundary_elements, is_connected_with_boundary


@dataclass
class CyclicSystem:
    """The z-fiber block system of a cylinder, with sampled-window checks.

    ``q`` is the exact cohesiveness over the window when ``cohesive_ok`` is
    True; otherwise it is a lower bound (some pair distance exceeded the
    search radius, which already refutes q <= 2st).
    """

    host: Cylinder
    s: int
    t: int
    q: int
    window: int
    partition_ok: bool
    ring_like_ok: bool
    cohesive_ok: bool

    def block_of(self, v: Vertex) -> int:
        self.host.validate_vertex(v)
        return v[0]

    def block(self, z: int) -> VertexSet:
        return VertexSet(self.host, ((z, r) for r in range(self.s)))

    def to_dict(self) -> dict:
        return {
            "group": self.host.family,
            "s": self.s,
            "t": self.t,
            "q": self.q,
            "qBound": 2 * self.s * self.t,
            "window": self.window,
            "partitionOk": self.partition_ok,
            "ringLikeOk": self.ring_like_ok,
            "cohesiveOk": self.cohesive_ok,
        }

    def violations(self) -> list:
        out = []
        if not self.partition_ok:
            out.append("blocks partition the window into size-s fibers")
        if not self.ring_like_ok:
            out.append("every edge joins blocks at distance <= t")
        if not self.cohesive_ok:
            out.append("q <= 2st")
        return out


def _distance_table(host: Cylinder, radius: int) -> Dict[Vertex, Dict[Tuple[int, int], int]]:
    """BFS distance from each (0, r) out to ``radius``, keyed by source then
    target. Generators act by z-translation, so these tables give the
    distance between any two vertices via d((z1,r1),(z2,r2)) =
    d((0,r1),(z2-z1,r2))."""
    tables: Dict[Vertex, Dict[Tuple[int, int], int]] = {}
    for r in range(host.m):
        source = (0, r)
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if dist[v] == radius:
                continue
            for u in host.neighbors(v):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        tables[source] = dist
    return tables


def cyclic_system(host: GroupGraph, window: int = 50) -> CyclicSystem:
    """Instantiate the z-fiber block system and verify its properties on the
    blocks -window..window (2*window + 1 blocks, exhaustively).

    Checks: the window's vertices fall into blocks of exactly s vertices
    each; every edge leaving a window vertex moves the block index by at
    most t; and any two vertices in the same or adjacent blocks are within
    distance 2st (cohesiveness q, exact by z-translation invariance).
    """
    if not isinstance(host, Cylinder):
        raise ValueError(f"block system requires a cylinder host, got {host.family}")
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    s = host.m
    t = host.max_z_shift

    partition_ok = True
    ring_like_ok = True
    for z in range(-window, window + 1):
        block = {(z, r) for r in range(s)}
        if len(block) != s or any(v[0] != z for v in block):
            partition_ok = False
        for v in block:
            for u in host.neighbors(v):
                if abs(u[0] - v[0]) > t:
                    ring_like_ok = False

    cap = 2 * s * t + 1
    tables = _distance_table(host, cap)
    q = 0
    cohesive_ok = True
    for z in range(-window, window + 1):
        for r1 in range(s):
            for dz in (0, 1):
                if z + dz > window:
                    continue
                for r2 in range(s):
                    if dz == 0 and r1 == r2:
                        continue
                    d = tables[(0, r1)].get((dz, r2))
                    if d is None:
                        q = max(q, cap)
                        cohesive_ok = False
                    else:
                        q = max(q, d)
    if q > 2 * s * t:
        cohesive_ok = False
    return CyclicSystem(
        host=host,
        s=s,
        t=t,
        q=q,
        window=window,
        partition_ok=partition_ok,
        ring_like_ok=ring_like_ok,
        cohesive_ok=cohesive_ok,
    )


@dataclass
class IntervalCover:
    """The interval of blocks spanned by A, its union Q, and the slack bound.

    slack = |Q \\ A| and bound = 2s^2t^2k + 2stk with k = |boundary(A)|;
    ``holds`` records slack <= bound, a claim for every connected A with
    connected closure.
    """

    j_lo: int
    j_hi: int
    q_vertices: VertexSet
    sizeA: int
    k: int
    slack: int
    bound: int
    holds: bool

    def to_dict(self) -> dict:
        return {
            "jLo": self.j_lo,
            "jHi": self.j_hi,
            "sizeQ": len(self.q_vertices),
            "sizeA": self.sizeA,
            "k": self.k,
            "slack": self.slack,
            "bound": self.bound,
            "holds": self.holds,
        }


def interval_cover(system: CyclicSystem, A: VertexSet) -> IntervalCover:
    """Cover A by the blocks it touches and check the slack bound."""
    if A.host != system.host:
        raise ValueError(
            f"set lives on {A.host.family} but the block system is on "
            f"{system.host.family}"
        )
    if not A.elements:
        raise ValueError("interval cover needs a non-empty set")
    if not is_connected_with_boundary(A):
        raise ValueError("interval cover requires A union boundary(A) connected")
    lo = min(v[0] for v in A.elements)
    hi = max(v[0] for v in A.elements)
    s, t = system.s, system.t
    q_vertices = VertexSet(
        A.host, ((z, r) for z in range(lo, hi + 1) for r in range(s))
    )
    k = len(_boundary_elements(A))
    slack = len(q_vertices) - len(A)
    bound = 2 * s * s * t * t * k + 2 * s * t * k
    return IntervalCover(
        j_lo=lo,
        j_hi=hi,
        q_vertices=q_vertices,
        sizeA=len(A),
        k=k,
        slack=slack,
        bound=bound,
        holds=slack <= bound,
    )


class BranchError(ValueError):
    """The set belongs to the small-set branch; use classify_separation."""


@dataclass
class Branch2Report:
    """Combined ring-like obligations for a large set on a cylinder."""

    system: CyclicSystem
    cover: IntervalCover

    @property
    def holds(self) -> bool:
        return (
            self.system.partition_ok
            and self.system.ring_like_ok
            and self.system.cohesive_ok
            and self.cover.holds
        )

    def violations(self) -> list:
        out = self.system.violations()
        if not self.cover.holds:
            out.append("|Q\\A| <= 2s^2t^2k + 2stk")
        return out

    def to_dict(self) -> dict:
        merged = self.system.to_dict()
        merged.update(self.cover.to_dict())
        merged["holds"] = self.holds
        return merged


def theorem_impr_branch2(A: VertexSet, window: int = 50) -> Branch2Report:
    """Check the ring-like branch obligations for a set with |A| > 16k^2.

    Sets with |A| <= 16k^2 belong to the small-set branch and are rejected
    with BranchError; the separation classifier handles them.
    """
    if not A.elements:
        raise ValueError("theorem_impr_branch2 needs a non-empty set")
    if not isinstance(A.host, Cylinder):
        raise ValueError(
            f"ring-like branch requires a cylinder host, got {A.host.family}"
        )
    k = len(_boundary_elements(A))
    if len(A) <= 16 * k * k:
        raise BranchError(
            f"|A| = {len(A)} <= 16k^2 = {16 * k * k}: small-set branch; "
            "use classify_separation"
        )
    system = cyclic_system(A.host, window=window)
    cover = interval_cover(system, A)
    return Branch2Report(system=system, cover=cover)
