"""Backbone colorings of cliques whose backbone is a forest.

A coloring assigns distinct positive colors to all vertices (the clique
host forces injectivity) and keeps colors at least ``min_gap`` apart
across every backbone edge.  Two constructions are provided:

* ``color_direct``: one interval per bipartition class, reaching exactly
  max(min_gap + |C1|, n).
* ``color_via_decomposition``: red-blue-yellow decomposition with the
  yellow vertices pushed to the extreme colors, staying within
  max(n, 2 * min_gap) + max_degree^2 * ceil(log2 n) + 1.

``color_best`` returns whichever of the two uses fewer colors, which is
an additive max_degree^2 * ceil(log2 n) above the optimum for trees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import RbyDecomposition, rby_decompose_forest
from .errors import (
    DegreeTooSmall,
    LambdaTooSmall,
    NotIndependent,
    PreconditionViolated,
)
from .graphs import Forest, Tree, as_tree, build_tree, min_larger_class, two_coloring

__all__ = [
    "BackboneColoring",
    "ColorInterval",
    "ColoringReport",
    "DecompositionLayout",
    "color_bipartition_intervals",
    "color_direct",
    "color_via_decomposition",
    "color_best",
    "lower_bound",
    "augment_forest_to_tree",
    "verify_backbone_coloring",
    "plan_layout",
]


@dataclass(frozen=True)
class BackboneColoring:
    """Vertex -> color map; ``colors[v]`` is the color of vertex v."""

    min_gap: int
    colors: tuple[int, ...]

    @property
    def max_color(self) -> int:
        return max(self.colors, default=0)

    def to_json_dict(self) -> dict:
        return {
            "lambda": self.min_gap,
            "colors": list(self.colors),
            "max_color": self.max_color,
        }


@dataclass(frozen=True)
class ColorInterval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise PreconditionViolated(f"interval [{self.lo}, {self.hi}] is empty")

    @property
    def capacity(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class ColoringReport:
    ok: bool
    violations: tuple[tuple[str, str], ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"kind": k, "detail": d} for k, d in self.violations],
        }


@dataclass(frozen=True)
class DecompositionLayout:
    """Color ranges and vertex groups used by the decomposition coloring.

    ``span`` is max(ceil(n/2), min_gap); ``top_color`` the largest color
    the scheme may touch, 2*span + max_deg^2*|y1| + max_deg*|y2|.
    """

    span: int
    max_deg: int
    y1: tuple[int, ...]
    y2: tuple[int, ...]
    b1: tuple[int, ...]
    b2: tuple[int, ...]
    b_rest: tuple[int, ...]
    r1: tuple[int, ...]
    r2: tuple[int, ...]
    r_rest: tuple[int, ...]
    top_color: int


def _check_gap(min_gap: int) -> None:
    if min_gap < 2:
        raise LambdaTooSmall(f"backbone gap must be at least 2, got {min_gap}")


def _pair_color_into(
    adj,
    side: list[int],
    colors: list[int],
    a_lo: int,
    a_hi: int,
    b_lo: int,
    b_hi: int,
) -> None:
    """Leaf-peeling interval assignment on the subgraph marked by ``side``.

    ``side[v]`` is 1 for the low set, 2 for the high set, 0 for vertices
    outside the subproblem.  A leaf of the high set takes the low end of
    both intervals together with its neighbor; a leaf of the low set takes
    the high ends.  Remaining isolated vertices fill their interval
    leftovers in ascending vertex order.
    """
    n = len(side)
    deg = [0] * n
    members = [v for v in range(n) if side[v]]
    for v in members:
        d = 0
        for w in adj[v]:
            if side[w]:
                d += 1
        deg[v] = d
    done = bytearray(n)
    queue = [v for v in members if deg[v] == 1]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        if done[v] or deg[v] != 1:
            continue
        u = -1
        for w in adj[v]:
            if side[w] and not done[w]:
                u = w
                break
        if side[v] == 2:
            colors[v] = b_lo
            colors[u] = a_lo
            b_lo += 1
            a_lo += 1
        else:
            colors[v] = a_hi
            colors[u] = b_hi
            a_hi -= 1
            b_hi -= 1
        done[v] = done[u] = 1
        for x in (v, u):
            for w in adj[x]:
                if side[w] and not done[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        queue.append(w)
    for v in members:
        if not done[v]:
            if side[v] == 1:
                colors[v] = a_lo
                a_lo += 1
            else:
                colors[v] = b_lo
                b_lo += 1


def _check_pair_preconditions(
    f: Forest,
    side: list[int],
    count_a: int,
    count_b: int,
    interval_a: ColorInterval,
    interval_b: ColorInterval,
    min_gap: int,
    require_partition: bool,
) -> None:
    """Validate the interval-pair contract on the side-label array."""
    if require_partition and count_a + count_b != f.n:
        raise PreconditionViolated("sides must partition the vertex set")
    for u, v in f.edges:
        if side[u] and side[u] == side[v]:
            raise NotIndependent(f"edge ({u}, {v}) joins two vertices of one side")
    if interval_a.capacity < count_a:
        raise PreconditionViolated(
            f"low interval holds {interval_a.capacity} colors for {count_a} vertices"
        )
    if interval_b.capacity < count_b:
        raise PreconditionViolated(
            f"high interval holds {interval_b.capacity} colors for {count_b} vertices"
        )
    if interval_a.lo + min_gap > interval_b.lo or interval_a.hi + min_gap > interval_b.hi:
        raise PreconditionViolated(
            f"interval offsets below the required gap {min_gap}"
        )
    if count_a and count_b and interval_a.hi >= interval_b.lo:
        raise PreconditionViolated("intervals overlap, clique injectivity would break")


def _side_array(n: int, side_a, side_b) -> tuple[list[int], int, int]:
    side = [0] * n
    count_a = count_b = 0
    for v in side_a:
        if side[v]:
            raise PreconditionViolated(f"vertex {v} appears in both sides")
        side[v] = 1
        count_a += 1
    for v in side_b:
        if side[v]:
            raise PreconditionViolated(f"vertex {v} appears in both sides")
        side[v] = 2
        count_b += 1
    return side, count_a, count_b


def color_bipartition_intervals(
    f: Forest,
    side_a,
    side_b,
    interval_a: ColorInterval,
    interval_b: ColorInterval,
    min_gap: int,
) -> BackboneColoring:
    """Color side_a inside interval_a and side_b inside interval_b.

    The sides must partition the vertices, both be independent, fit their
    intervals, and the intervals must be disjoint with both endpoints of
    the high one at least ``min_gap`` above the low one's.
    """
    side, count_a, count_b = _side_array(f.n, side_a, side_b)
    _check_pair_preconditions(
        f, side, count_a, count_b, interval_a, interval_b, min_gap, require_partition=True
    )
    colors = [0] * f.n
    _pair_color_into(
        f.adjacency, side, colors,
        interval_a.lo, interval_a.hi, interval_b.lo, interval_b.hi,
    )
    return BackboneColoring(min_gap=min_gap, colors=tuple(colors))


def color_direct(f: Forest, min_gap: int) -> BackboneColoring:
    """Two-interval coloring reaching exactly max(min_gap + |C1|, n).

    The bipartition uses the balanced class policy, so |C1| is close to
    the smallest achievable larger class.  Edgeless backbones have no gap
    constraints at all and get colors 1..n.
    """
    _check_gap(min_gap)
    if not f.edges:
        return BackboneColoring(min_gap=min_gap, colors=tuple(range(1, f.n + 1)))
    tc = two_coloring(f, policy="balanced")
    n1, n2 = tc.class_sizes
    span = max(min_gap, n2)
    # Class 2 is the low side, class 1 the high side; both are proper
    # classes of a 2-coloring, so the interval-pair preconditions hold by
    # construction (1 + gap <= span + 1 and n2 + gap <= span + n1).
    side = [2 if c == 1 else 1 for c in tc.assignment]
    colors = [0] * f.n
    _pair_color_into(f.adjacency, side, colors, 1, n2, span + 1, span + n1)
    return BackboneColoring(min_gap=min_gap, colors=tuple(colors))


def plan_layout(f: Forest, min_gap: int, d: RbyDecomposition) -> DecompositionLayout:
    """Derive the color layout for a balanced (k = 0) decomposition.

    Yellow splits into y1/y2 through a 2-coloring of the forest obtained
    by contracting every edge inside red-union-blue; that makes b1/b2 and
    r1/r2 disjoint by construction, which is asserted here.
    """
    n = f.n
    max_deg = f.max_degree
    span = max((n + 1) // 2, min_gap)
    adj = f.adjacency
    # group: 1 red, 2 blue, 3 yellow
    group = bytearray(n)
    for v in d.red:
        group[v] = 1
    for v in d.blue:
        group[v] = 2
    for v in d.yellow:
        group[v] = 3

    y1, y2 = [], []
    if d.yellow:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in f.edges:
            if group[u] != 3 and group[v] != 3:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        contracted: dict[int, list[int]] = {}
        for u, v in f.edges:
            if group[u] != 3 and group[v] != 3:
                continue
            cu = u if group[u] == 3 else find(u)
            cv = v if group[v] == 3 else find(v)
            contracted.setdefault(cu, []).append(cv)
            contracted.setdefault(cv, []).append(cu)
        cls: dict[int, int] = {}
        for start in sorted(contracted):
            if start in cls:
                continue
            cls[start] = 1
            stack = [start]
            while stack:
                x = stack.pop()
                for w in contracted[x]:
                    if w not in cls:
                        cls[w] = 3 - cls[x]
                        stack.append(w)
        y1 = sorted(v for v in d.yellow if cls.get(v, 1) == 1)
        y2 = sorted(v for v in d.yellow if cls.get(v, 1) == 2)
        if len(y1) < len(y2):
            y1, y2 = y2, y1

    b1 = sorted({v for y in y1 for v in adj[y] if group[v] == 2})
    r1 = sorted({v for b in b1 for v in adj[b] if group[v] == 1})
    r2 = sorted({v for y in y2 for v in adj[y] if group[v] == 1})
    b2 = sorted({v for r in r2 for v in adj[r] if group[v] == 2})
    assert not set(b1) & set(b2), "b1 and b2 must be disjoint by construction"
    assert not set(r1) & set(r2), "r1 and r2 must be disjoint by construction"
    taken = set(b1) | set(b2) | set(r1) | set(r2)
    b_rest = [v for v in range(n) if group[v] == 2 and v not in taken]
    r_rest = [v for v in range(n) if group[v] == 1 and v not in taken]
    top = 2 * span + max_deg * max_deg * len(y1) + max_deg * len(y2)
    return DecompositionLayout(
        span=span,
        max_deg=max_deg,
        y1=tuple(y1),
        y2=tuple(y2),
        b1=tuple(b1),
        b2=tuple(b2),
        b_rest=tuple(b_rest),
        r1=tuple(r1),
        r2=tuple(r2),
        r_rest=tuple(r_rest),
        top_color=top,
    )


def color_via_decomposition(f: Forest, min_gap: int) -> BackboneColoring:
    """Coloring through a balanced red-blue-yellow decomposition.

    Pipeline: decompose with red excess 0, split yellow via the
    contracted-forest 2-coloring, give y1 the smallest colors and y2 the
    largest, place the blue/red vertices adjacent to them at the matching
    ends of their own ranges sorted by their hottest colored neighbor, and
    fill the untouched middles with the interval-pair procedure.
    """
    _check_gap(min_gap)
    n = f.n
    if not f.edges:
        return BackboneColoring(min_gap=min_gap, colors=tuple(range(1, n + 1)))
    d = rby_decompose_forest(f, 0)
    lay = plan_layout(f, min_gap, d)
    span, deg = lay.span, lay.max_deg
    adj = f.adjacency
    colors = [0] * n

    n_y1, n_y2 = len(lay.y1), len(lay.y2)
    for i, v in enumerate(lay.y1):
        colors[v] = 1 + i
    for i, v in enumerate(lay.y2):
        colors[v] = lay.top_color - n_y2 + 1 + i

    def hottest(v, group):
        return max(colors[w] for w in adj[v] if w in group)

    def coldest(v, group):
        return min(colors[w] for w in adj[v] if w in group)

    # Blue range [deg*|y1| + 1, span + deg*|y1|]: b1 from the top, b2 from
    # the bottom.  Red range [span + deg^2*|y1| + 1, 2*span + deg^2*|y1|]:
    # r1 from the top, r2 from the bottom.
    blue_lo = deg * n_y1 + 1
    blue_hi = span + deg * n_y1
    red_lo = span + deg * deg * n_y1 + 1
    red_hi = 2 * span + deg * deg * n_y1

    y1_set = set(lay.y1)
    for rank, v in enumerate(sorted(lay.b1, key=lambda b: (-hottest(b, y1_set), b))):
        colors[v] = blue_hi - rank
    b1_set = set(lay.b1)
    for rank, v in enumerate(sorted(lay.r1, key=lambda r: (-hottest(r, b1_set), r))):
        colors[v] = red_hi - rank
    y2_set = set(lay.y2)
    for rank, v in enumerate(sorted(lay.r2, key=lambda r: (coldest(r, y2_set), r))):
        colors[v] = red_lo + rank
    r2_set = set(lay.r2)
    for rank, v in enumerate(sorted(lay.b2, key=lambda b: (coldest(b, r2_set), b))):
        colors[v] = blue_lo + rank

    rest_a_lo = blue_lo + len(lay.b2)
    rest_a_hi = blue_hi - len(lay.b1)
    rest_b_lo = red_lo + len(lay.r2)
    rest_b_hi = red_hi - len(lay.r1)
    if lay.b_rest or lay.r_rest:
        # The leftover middle subintervals must fit the leftover sets and
        # keep the full span offset; that is the heart of the bound.
        assert rest_a_hi - rest_a_lo + 1 >= len(lay.b_rest)
        assert rest_b_hi - rest_b_lo + 1 >= len(lay.r_rest)
        if lay.b_rest and lay.r_rest:
            assert rest_a_lo + min_gap <= rest_b_lo and rest_a_hi + min_gap <= rest_b_hi
            assert rest_a_hi < rest_b_lo
        side = [0] * n
        for v in lay.b_rest:
            side[v] = 1
        for v in lay.r_rest:
            side[v] = 2
        _pair_color_into(
            adj, side, colors, rest_a_lo, rest_a_hi, rest_b_lo, rest_b_hi
        )
    return BackboneColoring(min_gap=min_gap, colors=tuple(colors))


def color_best(f: Forest, min_gap: int) -> BackboneColoring:
    """The better of the direct and the decomposition colorings.

    Ties go to the direct coloring.  For trees the result stays within
    max_degree^2 * ceil(log2 n) of the optimum.
    """
    direct = color_direct(f, min_gap)
    via = color_via_decomposition(f, min_gap)
    return via if via.max_color < direct.max_color else direct


def lower_bound(f: Forest, min_gap: int) -> int:
    """A certified lower bound on the backbone coloring number.

    For a tree this is max(n, min(min_gap + |C1|, 2*min_gap + 1)).  For a
    forest the |C1| clause balances only components that carry edges;
    edgeless backbones need exactly n colors.
    """
    _check_gap(min_gap)
    if not f.edges:
        return f.n
    if f.is_connected():
        c1 = two_coloring(f).class_sizes[0]
    else:
        c1 = min_larger_class(f, skip_trivial=True)
    return max(f.n, min(min_gap + c1, 2 * min_gap + 1))


def augment_forest_to_tree(f: Forest) -> Tree:
    """Join the components into one spanning tree through their leaves.

    Chains the components in order of smallest vertex, linking the
    largest-id leaf of one to the smallest-id leaf of the next, so the
    maximum degree never grows (it must already be at least 2 when the
    forest is disconnected).
    """
    comps = f.components()
    if len(comps) == 1:
        return as_tree(f)
    if f.max_degree <= 1:
        raise DegreeTooSmall(
            "augmentation keeps the degree bound only when max degree >= 2"
        )
    ins, outs = [], []
    for comp in comps:
        leaves = [v for v in comp if f.degree(v) <= 1]
        ins.append(leaves[0])
        outs.append(leaves[-1])
    new_edges = list(f.edges)
    for i in range(len(comps) - 1):
        new_edges.append((outs[i], ins[i + 1]))
    return build_tree(f.n, new_edges)


def verify_backbone_coloring(f: Forest, min_gap: int, coloring) -> ColoringReport:
    """Check injectivity and every backbone gap; violations name witnesses."""
    colors = coloring.colors if isinstance(coloring, BackboneColoring) else tuple(coloring)
    violations: list[tuple[str, str]] = []
    if len(colors) != f.n:
        violations.append(
            ("shape", f"{len(colors)} colors supplied for {f.n} vertices")
        )
        return ColoringReport(ok=False, violations=tuple(violations))
    owner: dict[int, int] = {}
    for v, c in enumerate(colors):
        if not isinstance(c, int) or c < 1:
            violations.append(("color-range", f"vertex {v} has invalid color {c!r}"))
            continue
        if c in owner:
            violations.append(
                ("injectivity", f"vertices {owner[c]} and {v} share color {c}")
            )
        else:
            owner[c] = v
    for u, v in f.edges:
        if abs(colors[u] - colors[v]) < min_gap:
            violations.append(
                (
                    "gap",
                    f"edge ({u}, {v}) has |{colors[u]} - {colors[v]}| < {min_gap}",
                )
            )
    return ColoringReport(ok=not violations, violations=tuple(violations))
