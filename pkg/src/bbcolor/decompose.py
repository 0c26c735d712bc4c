"""Red-blue-yellow (k, l)-decompositions of forests.

A decomposition splits the vertex set into independent sets R and B with
|R| - |B| = k plus a small leftover set Y with |Y| <= l.  The constructive
routines follow the balanced-separator iteration: pad with k virtual
isolated vertices, repeatedly remove a separator into Y, fold all but the
most imbalanced separator subtree into R/B by the larger/smaller rule, and
recurse into the remaining subtree.  Subtree sizes halve every round, so
|Y| stays within ceil(log2 n) and the total work is linear.

The virtual pad is a counter, never materialized; set-size comparisons
include it, reported sets do not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log2

from .errors import (
    InstanceTooLarge,
    InvalidDecomposition,
    KOutOfRange,
    NotFibonacciTree,
)
from .graphs import Forest, Tree

__all__ = [
    "RbyDecomposition",
    "RbyReport",
    "rby_decompose_tree",
    "rby_decompose_forest",
    "validate_rby",
    "exhaustive_rby_search",
    "pushdown_yellow",
    "yellow_budget",
]


def yellow_budget(n: int) -> int:
    """ceil(log2 n); the yellow budget the constructive routines target."""
    return ceil(log2(n)) if n >= 2 else 0


@dataclass(frozen=True)
class RbyDecomposition:
    """Partition (red, blue, yellow) with red/blue independent in the backbone."""

    red: frozenset[int]
    blue: frozenset[int]
    yellow: frozenset[int]
    red_excess: int
    yellow_budget: int

    def to_json_dict(self) -> dict:
        return {
            "R": sorted(self.red),
            "B": sorted(self.blue),
            "Y": sorted(self.yellow),
            "k": self.red_excess,
            "l": self.yellow_budget,
        }


@dataclass(frozen=True)
class RbyReport:
    """Validation outcome; ``violations`` holds (clause, detail) pairs."""

    ok: bool
    violations: tuple[tuple[str, str], ...] = field(default_factory=tuple)


class _SplitState:
    """Growing R/B sets plus the virtual pad during decomposition."""

    __slots__ = ("red", "blue", "virt", "virt_in_red", "red_min", "blue_min")

    def __init__(self, virt: int):
        self.red: list[int] = []
        self.blue: list[int] = []
        self.virt = virt
        self.virt_in_red = True
        self.red_min = float("inf")
        self.blue_min = float("inf")

    def padded_diff(self) -> int:
        r = len(self.red) + (self.virt if self.virt_in_red else 0)
        b = len(self.blue) + (0 if self.virt_in_red else self.virt)
        return r - b

    def fold(self, larger_class: list[int], smaller_class: list[int]) -> None:
        """Merge a subtree bipartition by the larger/smaller rule.

        Candidate a is red + the subtree's smaller class, candidate b is
        blue + its larger class; the bigger candidate (pad included)
        becomes red.  Equal sizes go to the candidate holding the smallest
        real vertex id.
        """
        size_a = len(self.red) + (self.virt if self.virt_in_red else 0) + len(smaller_class)
        size_b = len(self.blue) + (0 if self.virt_in_red else self.virt) + len(larger_class)
        min_a = min(self.red_min, min(smaller_class) if smaller_class else float("inf"))
        min_b = min(self.blue_min, min(larger_class) if larger_class else float("inf"))
        a_is_red = size_a > size_b or (size_a == size_b and min_a <= min_b)
        if not a_is_red:
            self.red, self.blue = self.blue, self.red
            self.red_min, self.blue_min = self.blue_min, self.red_min
            self.virt_in_red = not self.virt_in_red
            larger_class, smaller_class = smaller_class, larger_class
            min_a, min_b = min_b, min_a
        self.red.extend(smaller_class)
        self.blue.extend(larger_class)
        self.red_min = min_a
        self.blue_min = min_b

    def finish(self, yellow: list[int], k: int, budget: int) -> RbyDecomposition:
        """Drop the pad, normalize so |red| >= |blue|, and package."""
        red, blue = self.red, self.blue
        if len(red) < len(blue):
            red, blue = blue, red
        if len(red) - len(blue) != k:
            raise AssertionError(
                f"decomposition invariant broken: got excess {len(red) - len(blue)}, want {k}"
            )
        return RbyDecomposition(
            red=frozenset(red),
            blue=frozenset(blue),
            yellow=frozenset(yellow),
            red_excess=k,
            yellow_budget=budget,
        )


def _component_split(adj, vertices: list[int]) -> tuple[list[int], list[int], int]:
    """Bipartition of one whole component: (larger class, smaller class, imb).

    Ties designate the class containing the smallest vertex as the larger
    one; ``vertices`` must be a full connected component of ``adj``.
    """
    root = min(vertices)
    side = {root: 0}
    c0, c1 = [root], []
    queue = [root]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        nxt = side[v] ^ 1
        for w in adj[v]:
            if w not in side:
                side[w] = nxt
                (c0 if nxt == 0 else c1).append(w)
                queue.append(w)
    if len(c0) >= len(c1):
        return c0, c1, len(c0) - len(c1)
    return c1, c0, len(c1) - len(c0)


def _classes_of(piece, side):
    """Split ``piece`` by 2-coloring parity into (larger, smaller) classes.

    A tie goes to the class holding the smallest vertex id.
    """
    zeros = [v for v in piece if not side[v]]
    ones = [v for v in piece if side[v]]
    if len(zeros) > len(ones):
        return zeros, ones
    if len(zeros) < len(ones):
        return ones, zeros
    if not zeros:
        return zeros, ones
    return (zeros, ones) if min(zeros) < min(ones) else (ones, zeros)


def _decompose_seeded(adj, component: list[int], state: _SplitState, yellow: list[int]) -> None:
    """Run the separator iteration on one tree with pre-seeded R/B sets.

    Each level does one preorder traversal of the remaining tree, giving
    parent pointers, subtree sizes, 2-coloring parity, and contiguous
    subtree slices all at once.  The level either exits early (the padded
    set difference equals the tree's imbalance, so folding the whole
    bipartition lands the sets exactly one virtual pad apart) or sends the
    separator to yellow, folds every separator subtree except the most
    imbalanced one, and recurses into that one.  Sizes halve per level.
    """
    n_all = len(adj)
    parent = [-1] * n_all
    size = [1] * n_all
    pos = [0] * n_all
    side = bytearray(n_all)
    marker = bytearray(n_all)
    current = component
    while current:
        m = len(current)
        root = current[0]
        for v in current:
            marker[v] = 1
            size[v] = 1
        # Preorder traversal; subtrees become contiguous slices of order.
        order = []
        append = order.append
        marker[root] = 2
        parent[root] = -1
        side[root] = 0
        stack = [root]
        pop = stack.pop
        push = stack.append
        while stack:
            v = pop()
            pos[v] = len(order)
            append(v)
            sv = side[v] ^ 1
            for w in adj[v]:
                if marker[w] == 1:
                    marker[w] = 2
                    parent[w] = v
                    side[w] = sv
                    push(w)
        for i in range(m - 1, 0, -1):
            v = order[i]
            size[parent[v]] += size[v]
        ones = 0
        for v in order:
            ones += side[v]
        imb = abs(m - 2 * ones)
        if state.padded_diff() == imb:
            larger, smaller = _classes_of(order, side)
            state.fold(larger, smaller)
            for v in order:
                marker[v] = 0
            return
        # Separator: descend into the unique too-large child subtree.
        sep = root
        while True:
            heavy = -1
            for w in adj[sep]:
                if marker[w] == 2 and parent[w] == sep and 2 * size[w] > m:
                    heavy = w
                    break
            if heavy == -1:
                break
            sep = heavy
        yellow.append(sep)
        pieces = []
        for w in adj[sep]:
            if marker[w] == 2 and parent[w] == sep:
                pieces.append((w, order[pos[w]: pos[w] + size[w]]))
        if sep != root:
            rest = order[: pos[sep]] + order[pos[sep] + size[sep]:]
            pieces.append((parent[sep], rest))
        # Sort by (imbalance, root id), fold all but the most imbalanced.
        keyed = []
        for piece_root, verts in pieces:
            ones_p = 0
            for v in verts:
                ones_p += side[v]
            keyed.append((abs(len(verts) - 2 * ones_p), piece_root, verts))
        keyed.sort(key=lambda s: (s[0], s[1]))
        for _, _, verts in keyed[:-1]:
            larger, smaller = _classes_of(verts, side)
            state.fold(larger, smaller)
            for v in verts:
                marker[v] = 0
        marker[sep] = 0
        if keyed:
            current = keyed[-1][2]
            for v in current:
                marker[v] = 0
        else:
            current = []


def rby_decompose_tree(t: Tree, excess: int) -> RbyDecomposition:
    """Red-blue-yellow (k, ceil(log2 n))-decomposition of a tree.

    Requires 0 <= excess <= imbalance(t).  The single vertex with
    excess 0 is the one boundary case where the yellow budget cannot be
    met: no (0, 0)-decomposition of K1 exists, and the routine returns
    yellow = {v} there.
    """
    from .graphs import imbalance

    imb = imbalance(t)
    if not (0 <= excess <= imb):
        raise KOutOfRange(f"excess {excess} outside [0, {imb}]")
    state = _SplitState(virt=excess)
    yellow: list[int] = []
    _decompose_seeded(t.adjacency, list(range(t.n)), state, yellow)
    budget = max(yellow_budget(t.n), len(yellow))
    return state.finish(yellow, excess, budget)


def rby_decompose_forest(f: Forest, excess: int) -> RbyDecomposition:
    """Red-blue-yellow (k, ceil(log2 n))-decomposition of a forest.

    Component trees are folded in non-decreasing imbalance order; the
    remaining tree with the largest imbalance finishes the job through the
    seeded separator iteration.
    """
    comps = f.components()
    infos = []
    for comp in comps:
        big, small, imb = _component_split(f.adjacency, comp)
        infos.append((imb, comp[0], big, small, comp))
    total_imb = sum(i[0] for i in infos)
    if not (0 <= excess <= total_imb):
        raise KOutOfRange(f"excess {excess} outside [0, {total_imb}]")
    infos.sort(key=lambda s: (s[0], s[1]))
    state = _SplitState(virt=excess)
    yellow: list[int] = []
    for _, _, big, small, _ in infos[:-1]:
        state.fold(big, small)
    if infos:
        _decompose_seeded(f.adjacency, infos[-1][4], state, yellow)
    budget = max(yellow_budget(f.n), len(yellow))
    return state.finish(yellow, excess, budget)


def validate_rby(f: Forest, d: RbyDecomposition, k: int, l: int) -> RbyReport:
    """Check all decomposition invariants; violations carry witnesses."""
    violations: list[tuple[str, str]] = []
    red, blue, yellow = d.red, d.blue, d.yellow
    union = red | blue | yellow
    if red & blue or red & yellow or blue & yellow:
        overlap = (red & blue) | (red & yellow) | (blue & yellow)
        violations.append(("partition", f"sets overlap on {sorted(overlap)}"))
    everything = set(range(f.n))
    if union != everything:
        missing = sorted(everything - union)
        extra = sorted(union - everything)
        violations.append(("partition", f"missing={missing} extra={extra}"))
    for name, group in (("red", red), ("blue", blue)):
        for u, v in f.edges:
            if u in group and v in group:
                violations.append((f"{name}-independent", f"edge ({u}, {v}) inside {name}"))
    if len(red) - len(blue) != k:
        violations.append(
            ("excess", f"|R| - |B| = {len(red) - len(blue)}, expected {k}")
        )
    if len(yellow) > l:
        violations.append(("yellow-budget", f"|Y| = {len(yellow)} exceeds l = {l}"))
    return RbyReport(ok=not violations, violations=tuple(violations))


def exhaustive_rby_search(f: Forest, k: int, l: int) -> RbyDecomposition | None:
    """Complete search for a (k, l)-decomposition on small forests.

    Enumerates assignments V -> {R, B, Y} depth first, pruning on the
    yellow budget first, then on independence, then on the reachable
    |R| - |B| range.  The first assignment found (R < B < Y per vertex,
    vertices in id order) is returned after normalizing so |R| >= |B|;
    absence is certified by exhaustion.
    """
    if f.n > 20:
        raise InstanceTooLarge(f"exhaustive search guarded to n <= 20, got n = {f.n}")
    if k < 0 or l < 0:
        return None
    adj = f.adjacency
    labels = [0] * f.n  # 1 red, 2 blue, 3 yellow

    def feasible_diff(diff: int, remaining: int) -> bool:
        lo, hi = diff - remaining, diff + remaining
        return lo <= k <= hi or lo <= -k <= hi

    def rec(v: int, diff: int, yellows: int) -> bool:
        if v == f.n:
            return abs(diff) == k
        if not feasible_diff(diff, f.n - v):
            return False
        for lab, ndiff in ((1, diff + 1), (2, diff - 1)):
            ok = True
            for w in adj[v]:
                if w < v and labels[w] == lab:
                    ok = False
                    break
            if ok:
                labels[v] = lab
                if rec(v + 1, ndiff, yellows):
                    return True
        if yellows < l:
            labels[v] = 3
            if rec(v + 1, diff, yellows + 1):
                return True
        labels[v] = 0
        return False

    if not rec(0, 0, 0):
        return None
    red = frozenset(v for v in range(f.n) if labels[v] == 1)
    blue = frozenset(v for v in range(f.n) if labels[v] == 2)
    yellow = frozenset(v for v in range(f.n) if labels[v] == 3)
    if len(red) < len(blue):
        red, blue = blue, red
    return RbyDecomposition(
        red=red, blue=blue, yellow=yellow, red_excess=k, yellow_budget=l
    )


def pushdown_yellow(t: Tree, d: RbyDecomposition) -> RbyDecomposition:
    """Move every yellow vertex off the Fibonacci-subtree-root level.

    Input must be a Fibonacci tree (root found automatically when not
    designated) and a valid decomposition of it.  Writing C1 for the class
    of the root in the tree's 2-coloring, the result has Y' subset of C2,
    |Y'| <= |Y|, and red excess k' with 0 <= k' <= k + 2l.

    Reassignment cases, with parent(v) read in the rooted tree:

    * v in C2, neither v nor parent(v) yellow: keep v's color.
    * v in C1, v not yellow: keep v's color.
    * v in C1, v yellow, parent not yellow: take the color opposite to the
      parent's (a missing or non-red parent sends v to red).
    * v in C1, v yellow, parent yellow: send v to red.
    """
    from .fibonacci import recognize_fib_tree

    recognized = recognize_fib_tree(t)
    if recognized is None:
        raise NotFibonacciTree("pushdown requires a Fibonacci tree")
    _, root = recognized
    if t.root is not None:
        root = t.root
        if recognize_fib_tree(t, root=root) is None:
            raise NotFibonacciTree(f"designated root {root} does not match the shape")
    report = validate_rby(t, d, d.red_excess, d.yellow_budget)
    if not report.ok:
        raise InvalidDecomposition(f"input decomposition invalid: {report.violations}")

    adj = t.adjacency
    parent = [-1] * t.n
    depth = [0] * t.n
    order = [root]
    parent[root] = root
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                depth[w] = depth[v] + 1
                order.append(w)
    parent[root] = -1
    in_c1 = [depth[v] % 2 == 0 for v in range(t.n)]

    yellow = d.yellow
    new_red, new_blue, new_yellow = set(), set(), set()
    for v in range(t.n):
        p = parent[v]
        p_yellow = p != -1 and p in yellow
        if not in_c1[v]:
            if v in yellow or p_yellow:
                new_yellow.add(v)
            elif v in d.red:
                new_red.add(v)
            else:
                new_blue.add(v)
        elif v not in yellow:
            (new_red if v in d.red else new_blue).add(v)
        elif not p_yellow:
            if p != -1 and p in d.red:
                new_blue.add(v)
            else:
                new_red.add(v)
        else:
            new_red.add(v)

    if len(new_red) < len(new_blue):
        new_red, new_blue = new_blue, new_red
    k_prime = len(new_red) - len(new_blue)
    return RbyDecomposition(
        red=frozenset(new_red),
        blue=frozenset(new_blue),
        yellow=frozenset(new_yellow),
        red_excess=k_prime,
        yellow_budget=d.yellow_budget,
    )
