"""Forests, trees, 2-colorings, imbalance, and balanced separators.

Vertices are dense integers 0..n-1.  All types are immutable after
construction and every operation is a pure function, so concurrent use on
shared inputs is safe.  The half-size comparisons used by the separator
walk are done as ``2 * size <= n`` to stay in integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CycleDetected,
    DuplicateEdge,
    GraphFormatError,
    NotATree,
    SelfLoop,
    VertexOutOfRange,
)

__all__ = [
    "Forest",
    "Tree",
    "TwoColoring",
    "build_forest",
    "build_tree",
    "two_coloring",
    "imbalance",
    "subtree_sizes",
    "find_balanced_separator",
    "parse_graph",
    "format_graph",
]


@dataclass(frozen=True)
class Forest:
    """An acyclic simple graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def components(self) -> list[list[int]]:
        """Connected components as vertex lists, each sorted ascending."""
        seen = bytearray(self.n)
        out: list[list[int]] = []
        adj = self.adjacency
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = 1
            comp = [start]
            head = 0
            while head < len(comp):
                v = comp[head]
                head += 1
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = 1
                        comp.append(w)
            comp.sort()
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n >= 1 and len(self.edges) == self.n - 1


@dataclass(frozen=True)
class Tree(Forest):
    """A connected forest, optionally carrying a designated root."""

    root: int | None = None


@dataclass(frozen=True)
class TwoColoring:
    """A proper 2-coloring with classes labeled 1 and 2, |C1| >= |C2|."""

    assignment: tuple[int, ...]
    class_sizes: tuple[int, int] = field(init=False)

    def __post_init__(self):
        c1 = sum(1 for c in self.assignment if c == 1)
        object.__setattr__(self, "class_sizes", (c1, len(self.assignment) - c1))

    def class_vertices(self, label: int) -> list[int]:
        return [v for v, c in enumerate(self.assignment) if c == label]


def _build_adjacency(n: int, edges: list[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return tuple(tuple(a) for a in adj)


def build_forest(n: int, edges) -> Forest:
    """Validate and build a forest; rejects malformed or cyclic input."""
    if n < 0:
        raise VertexOutOfRange(f"vertex count must be non-negative, got {n}")
    normalized: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    # Union-find with path halving; a repeated root means a cycle.
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if not (0 <= u < n) or not (0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {key} appears twice")
        seen.add(key)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise CycleDetected(f"edge {key} closes a cycle")
        parent[ru] = rv
        normalized.append(key)
    return Forest(n=n, edges=tuple(normalized), adjacency=_build_adjacency(n, normalized))


def build_tree(n: int, edges, root: int | None = None) -> Tree:
    """Build a tree: a forest with a single connected component."""
    f = build_forest(n, edges)
    if n == 0 or len(f.edges) != n - 1:
        raise NotATree(f"{n} vertices with {len(f.edges)} edges is not a tree")
    if root is not None and not (0 <= root < n):
        raise VertexOutOfRange(f"root {root} outside 0..{n - 1}")
    return Tree(n=n, edges=f.edges, adjacency=f.adjacency, root=root)


def as_tree(f: Forest, root: int | None = None) -> Tree:
    """Reinterpret a connected forest as a tree without revalidating edges."""
    if not f.is_connected():
        raise NotATree("forest is not connected")
    return Tree(n=f.n, edges=f.edges, adjacency=f.adjacency, root=root)


def _unchecked_tree(n: int, edges: list[tuple[int, int]], root: int | None = None) -> Tree:
    """Tree constructor for edges known to form a tree (generator output).

    Skips the union-find cycle check; edges are normalized to (min, max).
    """
    normalized = tuple((u, v) if u < v else (v, u) for u, v in edges)
    return Tree(n=n, edges=normalized, adjacency=_build_adjacency(n, list(normalized)), root=root)


def _component_sides(f: Forest) -> list[tuple[list[int], list[int]]]:
    """Per component: (side containing its smallest vertex, other side)."""
    color = [-1] * f.n
    adj = f.adjacency
    out = []
    for start in range(f.n):
        if color[start] != -1:
            continue
        color[start] = 0
        side0, side1 = [start], []
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            nc = color[v] ^ 1
            for w in adj[v]:
                if color[w] == -1:
                    color[w] = nc
                    (side0 if nc == 0 else side1).append(w)
                    queue.append(w)
        out.append((side0, side1))
    return out


def two_coloring(f: Forest, policy: str = "canonical") -> TwoColoring:
    """Proper 2-coloring of a forest.

    Which side of each component is labeled class 1 is a policy choice:

    * ``canonical``: the side containing the component's smallest vertex.
    * ``balanced``: greedy balancing; components are processed in
      non-increasing order of imbalance and each component's larger side
      goes to the currently smaller global class.  This keeps the larger
      class close to the minimum achievable over all 2-colorings.
    * ``min_exact``: subset-sum DP that makes class 1 exactly as small as
      possible (guarded to n <= 4096; oracle use).

    Whatever the policy, labels are swapped at the end if needed so that
    globally |C1| >= |C2|.
    """
    sides = _component_sides(f)
    assignment = [0] * f.n

    if policy == "canonical":
        for side0, side1 in sides:
            for v in side0:
                assignment[v] = 1
            for v in side1:
                assignment[v] = 2
    elif policy == "balanced":
        order = sorted(
            sides, key=lambda s: (-(abs(len(s[0]) - len(s[1]))), s[0][0])
        )
        g1 = g2 = 0
        for side0, side1 in order:
            big, small = (side0, side1) if len(side0) >= len(side1) else (side1, side0)
            if g1 <= g2:
                to1, to2 = big, small
            else:
                to1, to2 = small, big
            for v in to1:
                assignment[v] = 1
            for v in to2:
                assignment[v] = 2
            g1 += len(to1)
            g2 += len(to2)
    elif policy == "min_exact":
        choices = _min_side_choices(sides)
        for (side0, side1), pick0 in zip(sides, choices):
            to1, to2 = (side0, side1) if pick0 else (side1, side0)
            for v in to1:
                assignment[v] = 1
            for v in to2:
                assignment[v] = 2
    else:
        raise ValueError(f"unknown 2-coloring policy {policy!r}")

    c1 = assignment.count(1)
    if c1 < f.n - c1:
        assignment = [3 - c if c else 0 for c in assignment]
    return TwoColoring(assignment=tuple(assignment))


def _min_side_choices(sides: list[tuple[list[int], list[int]]]) -> list[bool]:
    """True per component iff side0 goes to class 1, minimizing max class."""
    n = sum(len(a) + len(b) for a, b in sides)
    if n > 4096:
        raise ValueError("min_exact policy guarded to n <= 4096")
    masks = [1]
    for side0, side1 in sides:
        prev = masks[-1]
        masks.append((prev << len(side0)) | (prev << len(side1)))
    full = masks[-1]
    best = min(
        (max(s, n - s), s) for s in range(n + 1) if (full >> s) & 1
    )[1]
    # Walk the DP backwards to recover one optimal orientation.
    choices: list[bool] = []
    target = best
    for (side0, side1), prev in zip(reversed(sides), reversed(masks[:-1])):
        a, b = len(side0), len(side1)
        if target >= a and (prev >> (target - a)) & 1:
            choices.append(True)
            target -= a
        else:
            choices.append(False)
            target -= b
    choices.reverse()
    return choices


def min_larger_class(f: Forest, skip_trivial: bool = False) -> int:
    """Smallest achievable size of the larger class over all 2-colorings.

    With ``skip_trivial`` components without edges are left out of the
    balance entirely (they can always hide in the low class of a coloring,
    so they must not inflate a lower bound).
    """
    sides = _component_sides(f)
    if skip_trivial:
        sides = [s for s in sides if len(s[0]) + len(s[1]) >= 2]
    total = sum(len(a) + len(b) for a, b in sides)
    if total == 0:
        return 0
    if total <= 4096:
        mask = 1
        for side0, side1 in sides:
            mask = (mask << len(side0)) | (mask << len(side1))
        return min(max(s, total - s) for s in range(total + 1) if (mask >> s) & 1)
    # Pigeonhole floor, never above the true minimum (safe for bounds).
    return max((total + 1) // 2, max(max(len(a), len(b)) for a, b in sides))


def imbalance(t: Tree) -> int:
    """|C1| - |C2| of the unique bipartition of a tree."""
    if not t.is_connected():
        raise NotATree("imbalance is defined for trees only")
    c1, c2 = two_coloring(t).class_sizes
    return c1 - c2


def subtree_sizes(t: Tree, root: int) -> list[int]:
    """Subtree size of every vertex when the tree is rooted at ``root``."""
    if not t.is_connected():
        raise NotATree("subtree sizes are defined for trees only")
    if not (0 <= root < t.n):
        raise VertexOutOfRange(f"root {root} outside 0..{t.n - 1}")
    adj = t.adjacency
    parent = [-1] * t.n
    order = [root]
    parent[root] = root
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                order.append(w)
    size = [1] * t.n
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    return size


def find_balanced_separator(t: Tree) -> int:
    """A vertex whose removal leaves components of size at most n/2.

    Subtree sizes are computed once from vertex 0 and the walk descends
    into the unique too-large subtree, so the whole search is linear.
    """
    if not t.is_connected():
        raise NotATree("separator search is defined for trees only")
    n = t.n
    size = subtree_sizes(t, 0)
    adj = t.adjacency
    v, parent = 0, -1
    while True:
        heavy = -1
        for w in adj[v]:
            if w != parent and 2 * size[w] > n:
                heavy = w
                break
        if heavy == -1:
            return v
        parent, v = v, heavy


def parse_graph(text: str) -> Forest:
    """Parse the shared graph text format.

    Line 1 is ``n m``; the next m lines are ``u v`` with 0-indexed
    endpoints.  Lines starting with ``#`` and blank lines are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise GraphFormatError("empty graph input")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError(f"line {lineno}: expected 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise GraphFormatError(f"line {lineno}: non-integer header {header!r}") from exc
    if len(rows) - 1 != m:
        raise GraphFormatError(f"header promises {m} edges, found {len(rows) - 1}")
    edges = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer edge {line!r}") from exc
    return build_forest(n, edges)


def format_graph(f: Forest) -> str:
    lines = [f"{f.n} {len(f.edges)}"]
    lines.extend(f"{u} {v}" for u, v in f.edges)
    return "\n".join(lines) + "\n"
