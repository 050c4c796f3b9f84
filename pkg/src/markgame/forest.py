"""Forests, distances, m-th powers and instance generators.

Vertices are dense 0-based indices.  Components are discovered by traversal
when a :class:`Forest` is built, never declared by the caller.

Random generators draw from :class:`numpy.random.Generator` seeded with
``numpy.random.PCG64(seed)``.  PCG64 (O'Neill's permuted congruential
generator, 128-bit state, 64-bit output) is stream-stable across platforms
and numpy versions, so a ``(kind, n, max_degree, seed)`` tuple always
reproduces the same forest.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InputError

ENUMERATION_CAP = 10
FOREST_ENUMERATION_CAP = 7
KINDS = ("path", "complete_dary", "random_tree", "random_forest")

#: chance that a new random_forest vertex starts a fresh component
NEW_COMPONENT_PROBABILITY = 0.1


class Forest:
    """An immutable simple acyclic graph.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Undirected edges; order and orientation are irrelevant.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        seen = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        uf = list(range(n))

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {key}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InputError(f"edge {key} closes a cycle")
            uf[ru] = rv
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)

        self.vertex_count = n
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        self.edges = tuple(sorted(seen))
        comp = [-1] * n
        label = 0
        for s in range(n):
            if comp[s] >= 0:
                continue
            comp[s] = label
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if comp[y] < 0:
                        comp[y] = label
                        stack.append(y)
            label += 1
        self.component_id = tuple(comp)

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Vertex sets of the components, ordered by their lowest vertex."""
        groups: list[list[int]] = [[] for _ in range(self.component_count)]
        for v, c in enumerate(self.component_id):
            groups[c].append(v)
        return tuple(tuple(g) for g in groups)

    @cached_property
    def component_count(self) -> int:
        return max(self.component_id, default=-1) + 1

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_vertex(self, v) -> int:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.vertex_count:
            raise InputError(f"vertex {v!r} out of range for n={self.vertex_count}")
        return int(v)

    def relabel(self, perm: Sequence[int]) -> "Forest":
        """Return the forest with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.vertex_count)):
            raise InputError("relabelling must be a permutation of the vertices")
        return Forest(self.vertex_count, ((perm[u], perm[v]) for u, v in self.edges))

    def __eq__(self, other):
        if not isinstance(other, Forest):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"Forest(n={self.vertex_count}, edges={list(self.edges)})"


def distance(f: Forest, u: int, v: int) -> int | None:
    """Length of the unique ``u``-``v`` path, or ``None`` across components."""
    u, v = f.check_vertex(u), f.check_vertex(v)
    if u == v:
        return 0
    if f.component_id[u] != f.component_id[v]:
        return None
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in f.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    raise AssertionError("component labels inconsistent with adjacency")


class PowerView:
    """The m-th power of a forest stored as sorted CSR neighbour lists.

    ``indices[indptr[v]:indptr[v + 1]]`` are the vertices at forest distance
    between 1 and ``radius_m`` from ``v``, in increasing order.
    """

    def __init__(self, base: Forest, radius_m: int, indptr: np.ndarray, indices: np.ndarray):
        self.base = base
        self.radius_m = radius_m
        self.indptr = indptr
        self.indices = indices
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def n(self) -> int:
        return self.base.vertex_count

    def neighbours(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def power_adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in self.neighbours(v)) for v in range(self.n))

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks."""
        return tuple(sum(1 << u for u in nbrs) for nbrs in self.power_adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v in range(self.n) for u in self.power_adjacency[v] if v < u]

    def __repr__(self):
        return f"PowerView(n={self.n}, m={self.radius_m}, edges={len(self.edges())})"


def build_power(f: Forest, m: int) -> PowerView:
    """Build the ``m``-th power of ``f`` by a depth-truncated BFS from each vertex."""
    if m < 0:
        raise InputError(f"power must be non-negative, got {m}")
    n = f.vertex_count
    indptr = np.zeros(n + 1, dtype=np.int64)
    chunks = []
    for s in range(n):
        ball = []
        if m > 0:
            depth = {s: 0}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                d = depth[x]
                if d == m:
                    continue
                for y in f.adjacency[x]:
                    if y not in depth:
                        depth[y] = d + 1
                        ball.append(y)
                        queue.append(y)
            ball.sort()
        chunks.append(ball)
        indptr[s + 1] = indptr[s] + len(ball)
    indices = np.fromiter(itertools.chain.from_iterable(chunks), dtype=np.int64, count=int(indptr[-1]))
    return PowerView(f, m, indptr, indices)


# ---------------------------------------------------------------------------
# generators


def _rng(seed) -> np.random.Generator:
    if seed is None:
        raise InputError("random kinds require an explicit seed")
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise InputError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _attach(n, max_degree, rng, p_new):
    # residual-capacity list gives a rejection-free uniform pick
    edges = []
    open_slots = [0] if max_degree > 0 else []
    residual = [0] * n
    residual[0] = max_degree
    for v in range(1, n):
        if not open_slots or (p_new > 0 and rng.random() < p_new):
            residual[v] = max_degree
            if max_degree > 0:
                open_slots.append(v)
            continue
        i = int(rng.integers(len(open_slots)))
        u = open_slots[i]
        edges.append((u, v))
        residual[u] -= 1
        if residual[u] == 0:
            open_slots[i] = open_slots[-1]
            open_slots.pop()
        residual[v] = max_degree - 1
        if residual[v] > 0:
            open_slots.append(v)
    return edges


def generate(kind: str, n: int, max_degree: int | None = None, seed: int | None = None) -> Forest:
    """Generate a test forest.

    ``path`` ignores ``max_degree`` and ``seed``.  ``complete_dary`` numbers
    vertices in BFS order: the root gets ``max_degree`` children, every other
    internal vertex ``max_degree - 1``.  ``random_tree`` attaches each new
    vertex to a uniformly chosen earlier vertex that still has spare degree.
    ``random_forest`` does the same but lets each new vertex start a new
    component with probability :data:`NEW_COMPONENT_PROBABILITY`.
    """
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if kind == "path":
        return Forest(n, ((i, i + 1) for i in range(n - 1)))
    if max_degree is None:
        raise InputError(f"kind {kind!r} requires max_degree")
    if kind == "complete_dary":
        if n > 1 and max_degree < 1:
            raise InputError("complete_dary with n > 1 needs max_degree >= 1")
        if n > 2 and max_degree < 2:
            raise InputError("complete_dary with n > 2 needs max_degree >= 2")
        edges = []
        queue = deque([(0, max_degree)])
        nxt = 1
        while nxt < n:
            parent, kids = queue.popleft()
            for _ in range(kids):
                if nxt >= n:
                    break
                edges.append((parent, nxt))
                queue.append((nxt, max_degree - 1))
                nxt += 1
        return Forest(n, edges)
    rng = _rng(seed)
    if kind == "random_tree":
        if n > 1 and max_degree < 1 or n > 2 and max_degree < 2:
            raise InputError(f"no tree on {n} vertices has maximum degree <= {max_degree}")
        return Forest(n, _attach(n, max_degree, rng, 0.0))
    if max_degree < 0:
        raise InputError("max_degree must be non-negative")
    return Forest(n, _attach(n, max_degree, rng, NEW_COMPONENT_PROBABILITY))


# ---------------------------------------------------------------------------
# enumeration


def prufer_decode(seq: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = degree.index(1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return edges


def enumerate_trees(n: int, max_degree: int) -> Iterator[Forest]:
    """Yield every labelled tree on ``n`` vertices with maximum degree <= ``max_degree``.

    Trees come from Prüfer codes in lexicographic order; a label may occur at
    most ``max_degree - 1`` times in a code.
    """
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if n > ENUMERATION_CAP:
        raise InputError(f"enumerate_trees is capped at n={ENUMERATION_CAP}, got {n}")
    if n == 1:
        yield Forest(1)
        return
    if max_degree < 1 or (n > 2 and max_degree < 2):
        return
    if n == 2:
        yield Forest(2, [(0, 1)])
        return
    limit = max_degree - 1
    counts = [0] * n
    seq = [0] * (n - 2)

    def rec(i):
        if i == n - 2:
            yield Forest(n, prufer_decode(seq, n))
            return
        for x in range(n):
            if counts[x] < limit:
                counts[x] += 1
                seq[i] = x
                yield from rec(i + 1)
                counts[x] -= 1

    yield from rec(0)


def enumerate_forests(n: int, max_degree: int | None = None) -> Iterator[Forest]:
    """Yield every labelled forest on ``n`` vertices (small ``n`` only)."""
    if n < 0 or n > FOREST_ENUMERATION_CAP:
        raise InputError(f"enumerate_forests needs 0 <= n <= {FOREST_ENUMERATION_CAP}, got {n}")
    pairs = list(itertools.combinations(range(n), 2))

    def rec(i, chosen, uf, deg):
        if i == len(pairs):
            yield Forest(n, chosen)
            return
        yield from rec(i + 1, chosen, uf, deg)
        u, v = pairs[i]
        if max_degree is not None and (deg[u] >= max_degree or deg[v] >= max_degree):
            return
        ru, rv = uf[u], uf[v]
        if ru == rv:
            return
        new_uf = [rv if c == ru else c for c in uf]
        deg[u] += 1
        deg[v] += 1
        yield from rec(i + 1, chosen + [(u, v)], new_uf, deg)
        deg[u] -= 1
        deg[v] -= 1

    yield from rec(0, [], list(range(n)), [0] * n)


def level_order_relabel(f: Forest, root: int = 0) -> list[int]:
    """Permutation sending each vertex of a tree to its rank by (depth from ``root``, index)."""
    depth = _depths(f, root)
    if any(d < 0 for d in depth):
        raise InputError("level ordering needs a connected forest")
    order = sorted(range(f.vertex_count), key=lambda v: (depth[v], v))
    perm = [0] * f.vertex_count
    for rank, v in enumerate(order):
        perm[v] = rank
    return perm


def enumerate_level_ordered_trees(n: int, max_degree: int) -> Iterator[tuple[Forest, int]]:
    """Yield trees whose labels are sorted by depth from vertex 0.

    Each labelled tree ``T`` on ``n`` vertices maps to exactly one yielded
    tree, namely ``T.relabel(level_order_relabel(T))``.  The second item is
    the number of labelled trees mapping onto it,
    ``(n - 1)! / prod(level_size!)``.
    """
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if n == 1:
        yield Forest(1), 1
        return

    def levels(remaining):
        if remaining == 0:
            yield ()
            return
        for k in range(1, remaining + 1):
            for rest in levels(remaining - k):
                yield (k,) + rest

    for sizes in levels(n - 1):
        mult = math.factorial(n - 1)
        for s in sizes:
            mult //= math.factorial(s)
        bounds = [(0, 1)]
        start = 1
        for s in sizes:
            bounds.append((start, start + s))
            start += s
        per_level = []
        feasible = True
        for d, (lo, hi) in enumerate(bounds[1:]):
            plo, phi = bounds[d]
            cap = max_degree if d == 0 else max_degree - 1
            if cap <= 0 or (phi - plo) * cap < hi - lo:
                feasible = False
                break
            choices = [
                combo
                for combo in itertools.product(range(plo, phi), repeat=hi - lo)
                if all(combo.count(p) <= cap for p in range(plo, phi))
            ]
            per_level.append((lo, choices))
        if not feasible:
            continue
        for pick in itertools.product(*(c for _, c in per_level)):
            edges = [
                (parent, lo + i)
                for (lo, _), combo in zip(per_level, pick)
                for i, parent in enumerate(combo)
            ]
            yield Forest(n, edges), mult


def _depths(f: Forest, root: int) -> list[int]:
    depth = [-1] * f.vertex_count
    depth[root] = 0
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in f.adjacency[x]:
            if depth[y] < 0:
                depth[y] = depth[x] + 1
                queue.append(y)
    return depth


def canonical_form(f: Forest) -> tuple:
    """An isomorphism-invariant key (AHU encoding of each component at its centre)."""
    keys = []
    for comp in f.components:
        keys.append(min(_ahu(f, c) for c in _centres(f, comp)))
    return (f.vertex_count, tuple(sorted(keys)))


def _centres(f: Forest, comp: Sequence[int]) -> list[int]:
    if len(comp) <= 2:
        return list(comp)
    deg = {v: f.degree(v) for v in comp}
    layer = [v for v in comp if deg[v] == 1]
    left = len(comp)
    while left > 2:
        left -= len(layer)
        nxt = []
        for leaf in layer:
            for y in f.adjacency[leaf]:
                deg[y] -= 1
                if deg[y] == 1:
                    nxt.append(y)
            deg[leaf] = 0
        layer = nxt
    return layer


def _ahu(f: Forest, root: int) -> str:
    parent = {root: -1}
    order = [root]
    for x in order:
        for y in f.adjacency[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    code: dict[int, str] = {}
    for x in reversed(order):
        code[x] = "(" + "".join(sorted(code[y] for y in f.adjacency[x] if parent.get(y) == x and y != root)) + ")"
    return code[root]


# ---------------------------------------------------------------------------
# text format


def format_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> str:
    lines = [f"n {n}"]
    lines += [f"{u} {v}" for u, v in sorted((min(e), max(e)) for e in edges)]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> tuple[int, list[tuple[int, int]]]:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise InputError(f"line {lineno}: expected 'n <vertex_count>'")
            n = _int(parts[1], lineno)
            continue
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected '<u> <v>'")
        edges.append((_int(parts[0], lineno), _int(parts[1], lineno)))
    if n is None:
        raise InputError("missing 'n <vertex_count>' header")
    return n, edges


def _int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise InputError(f"line {lineno}: {token!r} is not an integer") from None


def read_forest(path: str | Path) -> Forest:
    n, edges = parse_edge_list(Path(path).read_text())
    return Forest(n, edges)


def write_forest(f: Forest, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(f.vertex_count, f.edges))
