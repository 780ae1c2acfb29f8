"""Implicit Cayley graphs for a fixed family of groups.

Each graph exposes only local structure (neighbor enumeration from an exact
vertex representation); balls and growth statistics are computed by
breadth-first expansion under an explicit vertex budget.

Supported families and vertex representations:

* ``IntegerLattice(d)``  - tuples of ints, standard generators +-e_i
* ``Torus(n, d)``        - tuples of residues mod n, same generators
* ``FreeGroup(rank)``    - reduced words as tuples of signed generator
  indices (+i for the i-th generator, -i for its inverse)
* ``Cylinder(m, gens)``  - pairs (z, r) with z an int and r a residue mod m,
  generators are explicit (zShift, rShift) pairs, symmetrized
"""

from __future__ import annotations

import ast
import math
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional, Sequence, Tuple

Vertex = Tuple[int, ...]

DEFAULT_BUDGET = 10_000_000

INFINITE_ENDS = math.inf


class InvalidVertexError(ValueError):
    """A vertex value is malformed for its host graph."""


class BudgetExceeded(RuntimeError):
    """An operation would touch more vertices than the budget allows.

    For breadth-first expansions ``radius_reached`` is the last radius whose
    sphere was fully generated before the budget tripped; operations that
    size their work up front leave it as None.
    """

    def __init__(self, budget: int, visited: int, radius_reached: Optional[int] = None):
        self.budget = budget
        self.visited = visited
        self.radius_reached = radius_reached
        detail = (
            f" (complete up to radius {radius_reached})"
            if radius_reached is not None
            else ""
        )
        super().__init__(
            f"vertex budget {budget} exceeded: needs {visited} vertices{detail}"
        )


class GroupGraph:
    """Base class: an implicit, locally finite, vertex-transitive graph.

    Instances are immutable after construction and safe to share across
    threads; every operation is a pure function of its arguments.
    """

    #: number of distinct neighbors of any vertex (multi-edges collapsed)
    degree: int
    #: declared number of ends (0, 1, 2, or math.inf); metadata only
    declared_ends: float
    #: canonical grammar string, e.g. ``z^2`` or ``cyl:3``
    family: str
    #: total vertex count for finite hosts, None for infinite ones
    vertex_count: Optional[int]

    def identity(self) -> Vertex:
        raise NotImplementedError

    def neighbors(self, v: Vertex) -> list:
        """All vertices adjacent to ``v``, deduplicated, in a fixed order."""
        raise NotImplementedError

    def validate_vertex(self, v) -> None:
        """Raise InvalidVertexError unless ``v`` is a valid vertex here."""
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.vertex_count is not None

    def vertex_to_json(self, v: Vertex):
        return list(v)

    def vertex_from_json(self, obj) -> Vertex:
        if not isinstance(obj, (list, tuple)):
            raise InvalidVertexError(f"expected a coordinate list, got {obj!r}")
        try:
            v = tuple(int(x) for x in obj)
        except (TypeError, ValueError) as exc:
            raise InvalidVertexError(f"non-integer coordinate in {obj!r}") from exc
        self.validate_vertex(v)
        return v

    def vertex_str(self, v: Vertex) -> str:
        return repr(v)

    def sort_key(self, v: Vertex):
        """Canonical ordering key, used to serialize sets deterministically."""
        return v

    def exact_ball_profile(self, r: int) -> Optional[list]:
        """Cumulative ball sizes [b(0)..b(r)] by exact counting, when the
        family admits a counting rule that needs no vertex enumeration.

        Returns None when only BFS enumeration is available. Counting rules
        must agree with BFS wherever both are feasible; the tests compare
        them on overlapping radii.
        """
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupGraph) and self.family == other.family

    def __hash__(self) -> int:
        return hash(self.family)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.family!r})"


class IntegerLattice(GroupGraph):
    """Cayley graph of Z^d with the standard generating set."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError(f"lattice dimension must be >= 1, got {d}")
        self.d = d
        self.degree = 2 * d
        self.declared_ends = 2 if d == 1 else 1
        self.family = f"z^{d}"
        self.vertex_count = None

    def identity(self) -> Vertex:
        return (0,) * self.d

    def validate_vertex(self, v) -> None:
        if (
            not isinstance(v, tuple)
            or len(v) != self.d
            or not all(isinstance(x, int) for x in v)
        ):
            raise InvalidVertexError(f"{v!r} is not a length-{self.d} integer tuple")

    def neighbors(self, v: Vertex) -> list:
        self.validate_vertex(v)
        out = []
        for i in range(self.d):
            for step in (1, -1):
                out.append(v[:i] + (v[i] + step,) + v[i + 1 :])
        return out


class Torus(GroupGraph):
    """Cayley graph of (Z_n)^d with the standard generating set; n >= 3."""

    def __init__(self, n: int, d: int = 2):
        if n < 3:
            raise ValueError(f"torus side must be >= 3, got {n}")
        if d < 1:
            raise ValueError(f"torus dimension must be >= 1, got {d}")
        self.n = n
        self.d = d
        self.degree = 2 * d
        self.declared_ends = 0
        self.family = f"torus:{'x'.join(str(n) for _ in range(d))}"
        self.vertex_count = n**d

    def identity(self) -> Vertex:
        return (0,) * self.d

    def validate_vertex(self, v) -> None:
        if (
            not isinstance(v, tuple)
            or len(v) != self.d
            or not all(isinstance(x, int) and 0 <= x < self.n for x in v)
        ):
            raise InvalidVertexError(
                f"{v!r} is not a length-{self.d} tuple of residues mod {self.n}"
            )

    def neighbors(self, v: Vertex) -> list:
        self.validate_vertex(v)
        out = []
        for i in range(self.d):
            for step in (1, -1):
                out.append(v[:i] + ((v[i] + step) % self.n,) + v[i + 1 :])
        return out


class FreeGroup(GroupGraph):
    """Cayley graph of the free group on ``rank`` generators (a 2*rank-regular tree).

    Vertices are reduced words stored as tuples of signed generator indices;
    the string form uses lowercase letters for generators and uppercase for
    their inverses (``"aB"`` is a * b^-1).
    """

    def __init__(self, rank: int):
        if rank < 2:
            raise ValueError(f"free group rank must be >= 2, got {rank}")
        if rank > 26:
            raise ValueError("free group rank capped at 26 (one letter per generator)")
        self.rank = rank
        self.degree = 2 * rank
        self.declared_ends = INFINITE_ENDS
        self.family = f"free:{rank}"
        self.vertex_count = None

    def identity(self) -> Vertex:
        return ()

    def validate_vertex(self, v) -> None:
        if not isinstance(v, tuple):
            raise InvalidVertexError(f"{v!r} is not a word tuple")
        for x in v:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise InvalidVertexError(f"letter {x!r} out of range for rank {self.rank}")
        for a, b in zip(v, v[1:]):
            if a == -b:
                raise InvalidVertexError(f"word {v!r} is not reduced")

    def neighbors(self, v: Vertex) -> list:
        self.validate_vertex(v)
        out = []
        for i in range(1, self.rank + 1):
            for g in (i, -i):
                if v and v[-1] == -g:
                    out.append(v[:-1])
                else:
                    out.append(v + (g,))
        return out

    def vertex_to_json(self, v: Vertex) -> str:
        return self.vertex_str(v)

    def vertex_from_json(self, obj) -> Vertex:
        if not isinstance(obj, str):
            raise InvalidVertexError(f"free group vertex must be a word string, got {obj!r}")
        return self.parse_word(obj)

    def vertex_str(self, v: Vertex) -> str:
        letters = []
        for x in v:
            base = ord("a") + abs(x) - 1
            letters.append(chr(base) if x > 0 else chr(base).upper())
        return "".join(letters)

    def parse_word(self, text: str) -> Vertex:
        word = []
        for ch in text:
            if "a" <= ch <= "z":
                x = ord(ch) - ord("a") + 1
            elif "A" <= ch <= "Z":
                x = -(ord(ch) - ord("A") + 1)
            else:
                raise InvalidVertexError(f"bad letter {ch!r} in word {text!r}")
            word.append(x)
        v = tuple(word)
        self.validate_vertex(v)
        return v

    def sort_key(self, v: Vertex):
        return (len(v), v)

    def exact_ball_profile(self, r: int) -> list:
        # spheres of a (2*rank)-regular tree: 2*rank*(2*rank-1)^(n-1)
        sizes = [1]
        sphere = 2 * self.rank
        for _ in range(r):
            sizes.append(sizes[-1] + sphere)
            sphere *= 2 * self.rank - 1
        return sizes


STANDARD_CYLINDER_GENERATORS = ((1, 0), (-1, 0), (0, 1), (0, -1))


class Cylinder(GroupGraph):
    """Cayley graph of Z x Z_m with an explicit symmetrized generating set.

    The generator list is closed under inverses (missing inverses are added)
    and must generate the whole group; non-generating sets are rejected.
    """

    def __init__(self, m: int, generators: Optional[Sequence[Tuple[int, int]]] = None):
        if m < 2:
            raise ValueError(f"cylinder modulus must be >= 2, got {m}")
        self.m = m
        raw = list(generators) if generators is not None else [(1, 0), (0, 1)]
        gens = set()
        for item in raw:
            if not (isinstance(item, (tuple, list)) and len(item) == 2):
                raise ValueError(f"generator {item!r} is not a (zShift, rShift) pair")
            dz, dr = int(item[0]), int(item[1]) % m
            if dz == 0 and dr == 0:
                raise ValueError("identity (0,0) is not allowed as a generator")
            gens.add((dz, dr))
            gens.add((-dz, (-dr) % m))
        self.generators = tuple(sorted(gens))
        self.max_z_shift = max(abs(dz) for dz, _ in self.generators)
        self._check_generates()
        self.degree = len(self.generators)
        self.declared_ends = 2
        if self.generators == tuple(
            sorted((dz, dr % m) for dz, dr in STANDARD_CYLINDER_GENERATORS)
        ):
            self.family = f"cyl:{m}"
        else:
            self.family = f"cyl:{m}:{list(self.generators)!r}".replace(" ", "")
        self.vertex_count = None

    def _check_generates(self) -> None:
        # The set generates Z x Z_m iff the z-shifts have gcd 1 and the
        # column z=0 is fully reachable; a walk hitting every residue at
        # z=0 can always be rearranged to stay within |z| <= max shift,
        # so a box-restricted BFS is exact.
        m = self.m
        g = 0
        for dz, _ in self.generators:
            g = gcd(g, abs(dz))
        if g != 1:
            raise ValueError(
                f"generators {list(self.generators)} do not generate Z x Z_{m}: "
                f"z-shifts have gcd {g}"
            )
        box = m * self.max_z_shift
        seen = {(0, 0)}
        queue = deque([(0, 0)])
        while queue:
            z, r = queue.popleft()
            for dz, dr in self.generators:
                u = (z + dz, (r + dr) % m)
                if abs(u[0]) <= box and u not in seen:
                    seen.add(u)
                    queue.append(u)
        column = {r for z, r in seen if z == 0}
        if len(column) != m:
            raise ValueError(
                f"generators {list(self.generators)} do not generate Z x Z_{m}: "
                f"only residues {sorted(column)} are reachable at z=0"
            )

    def identity(self) -> Vertex:
        return (0, 0)

    def validate_vertex(self, v) -> None:
        if (
            not isinstance(v, tuple)
            or len(v) != 2
            or not isinstance(v[0], int)
            or not isinstance(v[1], int)
            or not 0 <= v[1] < self.m
        ):
            raise InvalidVertexError(f"{v!r} is not a (z, residue mod {self.m}) pair")

    def neighbors(self, v: Vertex) -> list:
        self.validate_vertex(v)
        z, r = v
        out = []
        seen = set()
        for dz, dr in self.generators:
            u = (z + dz, (r + dr) % self.m)
            if u not in seen:
                seen.add(u)
                out.append(u)
        return out


def parse_group(text: str) -> GroupGraph:
    """Build a GroupGraph from the compact grammar used by the CLI and set files.

    Examples: ``z^2``, ``torus:31x31``, ``free:2``, ``cyl:3``,
    ``cyl:3:[(1,0),(-1,0),(0,1),(0,-1)]``.
    """
    s = text.strip()
    if s.startswith("z^"):
        try:
            d = int(s[2:])
        except ValueError:
            raise ValueError(f"bad lattice spec {text!r}") from None
        return IntegerLattice(d)
    if s.startswith("torus:"):
        sides = s[len("torus:") :].split("x")
        try:
            ns = [int(x) for x in sides]
        except ValueError:
            raise ValueError(f"bad torus spec {text!r}") from None
        if not ns or any(n != ns[0] for n in ns):
            raise ValueError(f"torus spec {text!r} must repeat one side, e.g. torus:31x31")
        return Torus(ns[0], len(ns))
    if s.startswith("free:"):
        try:
            rank = int(s[len("free:") :])
        except ValueError:
            raise ValueError(f"bad free group spec {text!r}") from None
        return FreeGroup(rank)
    if s.startswith("cyl:"):
        rest = s[len("cyl:") :]
        if ":" in rest:
            m_text, gens_text = rest.split(":", 1)
            try:
                gens = ast.literal_eval(gens_text)
            except (ValueError, SyntaxError):
                raise ValueError(f"bad cylinder generators in {text!r}") from None
            if not isinstance(gens, (list, tuple)):
                raise ValueError(f"cylinder generators in {text!r} must be a list of pairs")
        else:
            m_text, gens = rest, None
        try:
            m = int(m_text)
        except ValueError:
            raise ValueError(f"bad cylinder modulus in {text!r}") from None
        return Cylinder(m, gens)
    raise ValueError(f"unknown group grammar {text!r}")


def _bfs_levels(
    g: GroupGraph, center: Vertex, budget: int, max_radius: Optional[int] = None
) -> Iterator[set]:
    """Yield the BFS spheres around ``center``: level r is yielded at step r.

    Stops after ``max_radius`` levels if given, or when the frontier empties
    (finite hosts). Raises BudgetExceeded when the visited set would grow
    past ``budget``; the exception records the last completed radius.
    """
    g.validate_vertex(center)
    seen = {center}
    frontier = {center}
    r = 0
    yield frontier
    while frontier:
        if max_radius is not None and r >= max_radius:
            return
        nxt = set()
        for v in frontier:
            for u in g.neighbors(v):
                if u not in seen:
                    # checked per vertex so memory cannot overshoot the
                    # budget by a whole level on fast-growing graphs
                    if len(seen) >= budget:
                        raise BudgetExceeded(budget, len(seen) + 1, r)
                    seen.add(u)
                    nxt.add(u)
        frontier = nxt
        r += 1
        if frontier:
            yield frontier


def ball(
    g: GroupGraph, center: Vertex, r: int, budget: Optional[int] = None
) -> set:
    """Exact metric ball {u : d(u, center) <= r}, by breadth-first expansion."""
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    budget = DEFAULT_BUDGET if budget is None else budget
    out: set = set()
    for sphere in _bfs_levels(g, center, budget, max_radius=r):
        out |= sphere
    return out


def ball_profile(
    g: GroupGraph, r: int, budget: Optional[int] = None, center: Optional[Vertex] = None
) -> list:
    """Cumulative ball sizes [b(0), b(1), ..., b(r)] around ``center``.

    On a finite host the profile is padded with the saturated total once the
    frontier empties. When no center is given and the family has an exact
    counting rule (free groups), the profile is counted without enumerating
    vertices and is exempt from the budget; passing an explicit center always
    forces BFS, which is what the transitivity tests rely on.
    """
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    budget = DEFAULT_BUDGET if budget is None else budget
    if center is None:
        center = g.identity()
        exact = g.exact_ball_profile(r)
        if exact is not None:
            return exact
    sizes = []
    total = 0
    for sphere in _bfs_levels(g, center, budget, max_radius=r):
        total += len(sphere)
        sizes.append(total)
    while len(sizes) < r + 1:
        sizes.append(total)
    return sizes


def ball_size(
    g: GroupGraph, r: int, budget: Optional[int] = None, center: Optional[Vertex] = None
) -> int:
    """Number of vertices in a ball of radius ``r`` (center-independent)."""
    return ball_profile(g, r, budget=budget, center=center)[r]


def minimal_ball_radius(
    g: GroupGraph, target: int, budget: Optional[int] = None
) -> int:
    """Smallest positive m with b(m) >= target; the host must be infinite."""
    if target < 1:
        raise ValueError(f"target must be >= 1, got {target}")
    if g.is_finite:
        raise ValueError(f"minimal_ball_radius needs an infinite host, got {g.family}")
    budget = DEFAULT_BUDGET if budget is None else budget
    total = 0
    for r, sphere in enumerate(_bfs_levels(g, g.identity(), budget)):
        total += len(sphere)
        if r >= 1 and total >= target:
            return r
    raise RuntimeError(f"BFS frontier emptied on infinite host {g.family}")


@dataclass
class GrowthReport:
    """Sampled growth of a graph and the branch of the linear/quadratic dichotomy.

    branch 1: b(n) stays under a linear envelope alpha*n + beta on the sample
    (alpha is the largest observed increment, beta = b(0)); branch 2: the
    quadratic lower bound b(n) >= (n+1)(n+2)/2 holds at every sampled n.
    """

    group: str
    max_radius: int
    ball_sizes: list
    branch: int
    alpha: Optional[int]
    beta: Optional[int]

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "maxRadius": self.max_radius,
            "ballSizes": list(self.ball_sizes),
            "branch": self.branch,
            "alpha": self.alpha,
            "beta": self.beta,
        }


def classify_growth(
    g: GroupGraph, max_radius: int, budget: Optional[int] = None
) -> GrowthReport:
    """Sample b(0..max_radius) and report which branch of the dichotomy holds.

    The quadratic branch is decided pointwise over the whole sample; when it
    fails anywhere the report returns the linear branch with the fitted
    envelope. Sampling too few radii can misclassify a linear-growth family,
    so ``max_radius`` must be at least 2 and 20 is a sensible default.
    """
    if max_radius < 2:
        raise ValueError(f"max_radius must be >= 2, got {max_radius}")
    sizes = ball_profile(g, max_radius, budget=budget)
    quadratic = all(
        sizes[n] * 2 >= (n + 1) * (n + 2) for n in range(max_radius + 1)
    )
    if quadratic:
        return GrowthReport(g.family, max_radius, sizes, 2, None, None)
    alpha = max(sizes[n] - sizes[n - 1] for n in range(1, max_radius + 1))
    return GrowthReport(g.family, max_radius, sizes, 1, alpha, sizes[0])
