"""Exact backbone coloring numbers on small instances.

``decide_bbc_le`` is a complete backtracking search over colorings into
[1, max_color]; ``exact_bbc`` scans that decision upward from the
certified lower bound.  ``exact_bbc_permutation`` re-decides the same
question by brute enumeration of injections and exists purely to
cross-check the backtracking solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .coloring import BackboneColoring, color_best, lower_bound
from .errors import InstanceTooLarge, KTooSmall, LambdaTooSmall
from .graphs import Forest

__all__ = [
    "ExactResult",
    "decide_bbc_le",
    "exact_bbc",
    "exact_bbc_permutation",
]

_BACKTRACK_LIMIT = 15
_PERMUTATION_LIMIT = 8


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: BackboneColoring

    def to_json_dict(self) -> dict:
        return {"value": self.value, "witness": list(self.witness.colors)}


def _search_order(f: Forest) -> list[int]:
    """Backbone DFS, components in decreasing size, rooted at max degree.

    High-degree roots put the most constrained vertices first, which is
    where the pruning pays off (stars are the observed worst case).
    """
    comps = sorted(f.components(), key=lambda c: (-len(c), c[0]))
    order: list[int] = []
    adj = f.adjacency
    for comp in comps:
        root = max(comp, key=lambda v: (f.degree(v), -v))
        seen = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            for w in sorted(adj[v], reverse=True):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return order


def decide_bbc_le(f: Forest, min_gap: int, max_color: int) -> BackboneColoring | None:
    """A valid coloring into [1, max_color], or None if none exists.

    Complete search: vertices in backbone-DFS order, colors forward
    checked against the colored backbone neighbor and a used-color set.
    Only colors up to ceil(max_color / 2) are tried for the first vertex;
    the complement coloring max_color + 1 - c covers the rest.
    """
    if min_gap < 2:
        raise LambdaTooSmall(f"backbone gap must be at least 2, got {min_gap}")
    if f.n > _BACKTRACK_LIMIT:
        raise InstanceTooLarge(f"backtracking guarded to n <= {_BACKTRACK_LIMIT}")
    if max_color < f.n:
        raise KTooSmall(f"{max_color} colors cannot host {f.n} distinct vertices")
    n = f.n
    if n == 0:
        return BackboneColoring(min_gap=min_gap, colors=())
    order = _search_order(f)
    pos = {v: i for i, v in enumerate(order)}
    prev_nb = [[w for w in f.adjacency[v] if pos[w] < pos[v]] for v in order]
    assigned = [0] * n
    used = bytearray(max_color + 1)

    def ranges_for(i: int) -> list[tuple[int, int]]:
        hi = (max_color + 1) // 2 if i == 0 else max_color
        spans = [(1, hi)]
        for w in prev_nb[i]:
            pc = assigned[pos[w]]
            spans = [
                piece
                for a, b in spans
                for piece in ((a, min(b, pc - min_gap)), (max(a, pc + min_gap), b))
                if piece[0] <= piece[1]
            ]
        return spans

    def bt(i: int) -> bool:
        if i == n:
            return True
        for a, b in ranges_for(i):
            for c in range(a, b + 1):
                if used[c]:
                    continue
                used[c] = 1
                assigned[i] = c
                if bt(i + 1):
                    return True
                used[c] = 0
        assigned[i] = 0
        return False

    if not bt(0):
        return None
    colors = [0] * n
    for i, v in enumerate(order):
        colors[v] = assigned[i]
    return BackboneColoring(min_gap=min_gap, colors=tuple(colors))


def exact_bbc(f: Forest, min_gap: int) -> ExactResult:
    """Minimal number of colors, with a witness coloring attached.

    Scans decide_bbc_le upward from lower_bound; the window is closed from
    above by color_best, so the scan always terminates with the optimum.
    """
    if f.n > _BACKTRACK_LIMIT:
        raise InstanceTooLarge(f"exact solving guarded to n <= {_BACKTRACK_LIMIT}")
    if f.n == 0:
        return ExactResult(0, BackboneColoring(min_gap=min_gap, colors=()))
    lo = lower_bound(f, min_gap)
    hi = color_best(f, min_gap).max_color
    for k in range(lo, hi + 1):
        witness = decide_bbc_le(f, min_gap, k)
        if witness is not None:
            return ExactResult(k, witness)
    raise AssertionError("color_best produced a coloring the decision search missed")


def exact_bbc_permutation(f: Forest, min_gap: int, max_color: int) -> BackboneColoring | None:
    """Same decision as decide_bbc_le, settled by enumerating injections.

    Kept deliberately naive (no search tree, no propagation) so that it is
    an independent check on the backtracking solver.
    """
    if f.n > _PERMUTATION_LIMIT or max_color > f.n + 6:
        raise InstanceTooLarge(
            f"permutation oracle guarded to n <= {_PERMUTATION_LIMIT}, k <= n + 6"
        )
    if max_color < f.n:
        raise KTooSmall(f"{max_color} colors cannot host {f.n} distinct vertices")
    edges = f.edges
    for assignment in permutations(range(1, max_color + 1), f.n):
        if all(abs(assignment[u] - assignment[v]) >= min_gap for u, v in edges):
            return BackboneColoring(min_gap=min_gap, colors=assignment)
    return None
