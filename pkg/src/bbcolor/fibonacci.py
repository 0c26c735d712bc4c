"""Fibonacci trees, Zeckendorf arithmetic, and the lower-bound machinery.

All Fibonacci arithmetic is exact big-integer; floating point appears
only in the golden-ratio logarithm diagnostic, which is always
cross-checked against integer recurrences.

Index convention: F(1) = F(2) = 1.  Greedy Zeckendorf output follows the
classical uniqueness convention and represents the value 1 at position 2,
matching Z(3) = (0,0,0,1) and Z(6) = (0,1,0,0,1); ``zeckendorf_value``
accepts a one at position 1 as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .decompose import exhaustive_rby_search
from .errors import (
    AdjacentOnes,
    HypothesisViolated,
    InstanceTooLarge,
    LambdaTooSmall,
    NotAFibTreeSize,
    OrderOutOfRange,
    SearchSpaceTooLarge,
)
from .graphs import Tree, build_tree

__all__ = [
    "FibTree",
    "ZeckendorfRep",
    "RepresentationQuery",
    "RepresentationOutcome",
    "ImpossibilityReport",
    "CertificateReport",
    "fib",
    "fib_tree",
    "fib_order_from_size",
    "recognize_fib_tree",
    "zeckendorf",
    "zeckendorf_value",
    "representation_search",
    "impossibility_k_range",
    "impossibility_check",
    "lower_bound_certificate",
]

_PHI = (1 + math.sqrt(5)) / 2
_MAX_TREE_ORDER = 30
_SEARCH_ENUM_GUARD = 10**9


def fib(n: int) -> int:
    """n-th Fibonacci number, F(1) = F(2) = 1, exact arithmetic."""
    if n < 1:
        raise OrderOutOfRange(f"Fibonacci index must be positive, got {n}")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def _fib_list(n: int) -> list[int]:
    """Fibonacci numbers indexed 1..n (slot 0 unused)."""
    vals = [0, 1, 1]
    while len(vals) <= n:
        vals.append(vals[-1] + vals[-2])
    return vals[: n + 1]


@dataclass(frozen=True)
class FibTree:
    """The recursively defined tree of a given order, rooted at vertex 0."""

    order: int
    tree: Tree


def fib_tree(order: int) -> FibTree:
    """Build the Fibonacci tree of the given order, vertices in preorder.

    Orders 1 and 2 are a single vertex; for order >= 3 the root has one
    child whose two subtrees are the trees of orders order-1 and order-2.
    The result has exactly 3*F(order) - 2 vertices.
    """
    if not (1 <= order <= _MAX_TREE_ORDER):
        raise OrderOutOfRange(f"supported orders are 1..{_MAX_TREE_ORDER}, got {order}")
    edges: list[tuple[int, int]] = []
    counter = 0
    stack: list[tuple[int, int]] = [(order, -1)]
    while stack:
        sub_order, parent = stack.pop()
        top = counter
        counter += 1
        if parent != -1:
            edges.append((parent, top))
        if sub_order >= 3:
            child = counter
            counter += 1
            edges.append((top, child))
            stack.append((sub_order - 2, child))
            stack.append((sub_order - 1, child))
    return FibTree(order=order, tree=build_tree(counter, edges, root=0))


def fib_order_from_size(n: int) -> int:
    """Recover the order from a vertex count of the form 3*F(N) - 2.

    Valid for n >= 10, where the order also equals floor(log_phi n); the
    float formula is cross-checked against the integer recovery and a
    disagreement raises instead of being patched over.
    """
    if n < 10:
        raise NotAFibTreeSize(f"order recovery is specified for n >= 10, got {n}")
    a, b, order = 1, 1, 1
    while 3 * a - 2 < n:
        a, b = b, a + b
        order += 1
    if 3 * a - 2 != n:
        raise NotAFibTreeSize(f"{n} is not 3*F(N) - 2 for any N")
    by_log = math.floor(math.log(n) / math.log(_PHI))
    if by_log != order:
        raise AssertionError(
            f"floor(log_phi {n}) = {by_log} disagrees with recovered order {order}"
        )
    return order


def _fib_shape_order(t: Tree, root: int, order: int) -> bool:
    """Check the recursive shape with subtree sizes rooted at ``root``."""
    adj = t.adjacency
    parent = [-1] * t.n
    parent[root] = root
    topo = [root]
    head = 0
    while head < len(topo):
        v = topo[head]
        head += 1
        for w in adj[v]:
            if parent[w] == -1:
                parent[w] = v
                topo.append(w)
    size = [1] * t.n
    for v in reversed(topo[1:]):
        size[parent[v]] += size[v]
    parent[root] = -1
    fibs = _fib_list(order)

    stack = [(root, order)]
    while stack:
        v, sub = stack.pop()
        kids = [w for w in adj[v] if parent[w] == v]
        if sub <= 2:
            if kids:
                return False
            continue
        if len(kids) != 1:
            return False
        mid = kids[0]
        grand = [w for w in adj[mid] if parent[w] == mid]
        if len(grand) != 2:
            return False
        grand.sort(key=lambda w: -size[w])
        big, small = grand
        if size[big] != 3 * fibs[sub - 1] - 2 or size[small] != 3 * fibs[sub - 2] - 2:
            return False
        stack.append((big, sub - 1))
        stack.append((small, sub - 2))
    return True


def recognize_fib_tree(t: Tree, root: int | None = None) -> tuple[int, int] | None:
    """(order, root) when the tree is a Fibonacci tree, None otherwise.

    A single vertex reports order 1 (orders 1 and 2 share that shape).
    Candidate roots are leaves whose neighbor has degree 3, scanned in
    ascending id; passing ``root`` checks that vertex alone.
    """
    n = t.n
    if n == 1:
        if root not in (None, 0):
            return None
        return (1, 0)
    a, b, order = 1, 1, 1
    while 3 * a - 2 < n:
        a, b = b, a + b
        order += 1
    if 3 * a - 2 != n:
        return None
    if root is not None:
        candidates = [root]
    else:
        candidates = [
            v
            for v in range(n)
            if t.degree(v) == 1 and t.degree(t.adjacency[v][0]) == 3
        ]
    for cand in candidates:
        if t.degree(cand) == 1 and _fib_shape_order(t, cand, order):
            return (order, cand)
    return None


@dataclass(frozen=True)
class ZeckendorfRep:
    """Bit vector over Fibonacci positions; bits[i] belongs to F(i + 1)."""

    bits: tuple[int, ...]

    def positions(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, b in enumerate(self.bits) if b)

    def ones(self) -> int:
        return sum(self.bits)


def zeckendorf(n: int) -> ZeckendorfRep:
    """Greedy Zeckendorf representation of a non-negative integer.

    Repeatedly subtracts the largest Fibonacci number that fits; the
    output has no two consecutive ones and minimal support.
    """
    if n < 0:
        raise ValueError(f"Zeckendorf representation needs n >= 0, got {n}")
    if n == 0:
        return ZeckendorfRep(bits=())
    fibs = [1, 1]  # values for positions 1, 2
    while fibs[-1] + fibs[-2] <= n:
        fibs.append(fibs[-1] + fibs[-2])
    top = len(fibs)  # largest usable position
    bits = [0] * top
    rem = n
    j = top
    while rem:
        while fibs[j - 1] > rem:
            j -= 1
        if j == 1:
            j = 2  # value 1 sits at position 2 in the classical convention
        bits[j - 1] = 1
        rem -= fibs[j - 1]
        j -= 2
    return ZeckendorfRep(bits=tuple(bits))


def zeckendorf_value(rep: ZeckendorfRep | tuple[int, ...]) -> int:
    """Sum of the Fibonacci numbers selected by the bit vector.

    A single one at position 1 or position 2 both mean the value 1 and
    are accepted; two consecutive ones anywhere are rejected.
    """
    bits = rep.bits if isinstance(rep, ZeckendorfRep) else tuple(rep)
    for i in range(len(bits) - 1):
        if bits[i] and bits[i + 1]:
            raise AdjacentOnes(f"positions {i + 1} and {i + 2} both set")
    fibs = _fib_list(len(bits))
    return sum(fibs[i + 1] for i, b in enumerate(bits) if b)


@dataclass(frozen=True)
class RepresentationQuery:
    """Ask whether (F(order) - excess + budget) / 2 splits as y plus a
    short signed sum of Fibonacci numbers, y in [0, budget] and at most
    2*budget + 1 terms."""

    order: int
    excess: int
    budget: int

    def target(self) -> int | None:
        total = fib(self.order) - self.excess + self.budget
        return total // 2 if total % 2 == 0 else None


@dataclass(frozen=True)
class RepresentationOutcome:
    found: bool
    reason: str | None = None  # "parity" or "exhausted" when absent
    y: int | None = None
    terms: tuple[tuple[int, int], ...] | None = None  # (position, sign)
    target: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "found": self.found,
            "reason": self.reason,
            "y": self.y,
            "terms": [list(t) for t in self.terms] if self.terms else None,
            "target": str(self.target) if self.target is not None else None,
        }


def _enum_estimate(n: int, budget: int) -> int:
    total = 0
    for s in range(2 * budget + 2):
        total += math.comb(n, s) * (2**s)
    return total * (budget + 1)


def representation_search(query: RepresentationQuery) -> RepresentationOutcome:
    """Exhaustive search for the bounded-support signed representation.

    Enumeration order: y ascending, then support size, then positions in
    lexicographic order, then sign patterns starting all-positive.  The
    first witness wins; absence means the full space was scanned.  An odd
    F(order) - excess + budget is absent immediately by parity.
    """
    N, k, l = query.order, query.excess, query.budget
    if l < 1 or k < 0:
        raise ValueError("query needs budget >= 1 and excess >= 0")
    if N > 200:
        raise SearchSpaceTooLarge(f"order {N} above the supported 200")
    if _enum_estimate(N, l) > _SEARCH_ENUM_GUARD:
        raise SearchSpaceTooLarge(
            f"about {_enum_estimate(N, l):.2e} enumerations exceed the guard"
        )
    target = query.target()
    if target is None:
        return RepresentationOutcome(found=False, reason="parity")
    fibs = _fib_list(N)
    max_support = 2 * l + 1
    positions = range(1, N + 1)
    for y in range(l + 1):
        want = target - y
        if want == 0:
            return RepresentationOutcome(found=True, y=y, terms=(), target=target)
        for s in range(1, max_support + 1):
            for combo in combinations(positions, s):
                vals = [fibs[p] for p in combo]
                for mask in range(2**s):
                    acc = 0
                    for i in range(s):
                        acc += -vals[i] if (mask >> i) & 1 else vals[i]
                    if acc == want:
                        terms = tuple(
                            (combo[i], -1 if (mask >> i) & 1 else 1) for i in range(s)
                        )
                        return RepresentationOutcome(
                            found=True, y=y, terms=terms, target=target
                        )
    return RepresentationOutcome(found=False, reason="exhausted", target=target)


def impossibility_k_range(n: int, min_gap: int, budget: int) -> tuple[int, int]:
    """The excess interval [0, min(min_gap - 1, 2*min_gap - n + budget)].

    Requires 2*min_gap + budget >= n.  An upper end below 0 signals the
    empty interval.
    """
    if min_gap < 2:
        raise LambdaTooSmall(f"backbone gap must be at least 2, got {min_gap}")
    if 2 * min_gap + budget < n:
        raise HypothesisViolated(
            f"need 2*{min_gap} + {budget} >= {n} for the impossibility argument"
        )
    return (0, min(min_gap - 1, 2 * min_gap - n + budget))


@dataclass(frozen=True)
class ImpossibilityReport:
    n: int
    min_gap: int
    budget: int
    k_range: tuple[int, int]
    decompositions_found: tuple[tuple[int, bool], ...]
    premise_holds: bool
    bbc_value: int | None
    threshold: int
    consistent: bool
    note: str

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "lambda": self.min_gap,
            "l": self.budget,
            "k_range": list(self.k_range),
            "decompositions_found": [list(p) for p in self.decompositions_found],
            "premise_holds": self.premise_holds,
            "bbc_value": self.bbc_value,
            "threshold": self.threshold,
            "consistent": self.consistent,
            "note": self.note,
        }


def impossibility_check(t: Tree, min_gap: int, budget: int) -> ImpossibilityReport:
    """Exercise the no-decomposition implies many-colors statement.

    Runs the exhaustive decomposition search across the whole excess
    range; when nothing is found, the exact solver must report strictly
    more than 2*min_gap + budget colors.  The verdict is inconsistent only
    if that implication fails, which would contradict the theorem.
    """
    if t.n > 15:
        raise InstanceTooLarge("impossibility check relies on exact solving, n <= 15")
    lo, hi = impossibility_k_range(t.n, min_gap, budget)
    found = tuple(
        (k, exhaustive_rby_search(t, k, budget) is not None) for k in range(lo, hi + 1)
    )
    premise = all(not present for _, present in found)
    threshold = 2 * min_gap + budget
    if premise:
        from .exact import exact_bbc

        value = exact_bbc(t, min_gap).value
        consistent = value > threshold
        note = (
            "no decomposition in range, so the coloring number must exceed "
            f"{threshold}: exact value {value}"
        )
    else:
        value = None
        consistent = True
        note = "premise fails, a decomposition exists; the statement is silent here"
    return ImpossibilityReport(
        n=t.n,
        min_gap=min_gap,
        budget=budget,
        k_range=(lo, hi),
        decompositions_found=found,
        premise_holds=premise,
        bbc_value=value,
        threshold=threshold,
        consistent=consistent,
        note=note,
    )


@dataclass(frozen=True)
class CertificateReport:
    order: int
    n: int
    min_gap: int
    budget: int | None
    budget_note: str
    regime: str
    gates: tuple[tuple[str, bool, str], ...]
    searches: tuple[tuple[int, bool, str], ...]
    impossibility: ImpossibilityReport | None
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "n": str(self.n),
            "lambda": str(self.min_gap),
            "l": self.budget,
            "l_note": self.budget_note,
            "regime": self.regime,
            "gates": [[g, bool(v), d] for g, v, d in self.gates],
            "searches": [[k, bool(a), d] for k, a, d in self.searches],
            "impossibility": self.impossibility.to_json_dict()
            if self.impossibility
            else None,
            "ok": self.ok,
        }


def lower_bound_certificate(order: int, min_gap: int | None = None) -> CertificateReport:
    """Verify the arithmetic chain behind the logarithmic lower bound.

    For order >= 96 this checks, in exact integers, every inequality the
    proof composes, and runs the representation search on the parity-valid
    extremes of the excess range (feasible only while the budget is 1,
    orders 96..143).  Smaller orders are outside the regime and instead
    attach the small-scale impossibility check when the tree fits the
    exact solver.
    """
    n = 3 * fib(order) - 2
    lam = n // 2 if min_gap is None else min_gap

    if order < 96:
        imp = None
        if n <= 15 and lam >= 2 and 2 * lam + 1 >= n:
            imp = impossibility_check(fib_tree(order).tree, lam, 1)
        return CertificateReport(
            order=order,
            n=n,
            min_gap=lam,
            budget=None,
            budget_note="not applicable below order 96",
            regime="outside theorem regime",
            gates=(),
            searches=(),
            impossibility=imp,
            ok=imp.consistent if imp else True,
        )

    if order % 48 == 0:
        budget = order // 48 - 1
        budget_note = "order/48 - 1 (exact)"
    else:
        budget = order // 48 - 1
        budget_note = "floor(order/48) - 1 (order/48 not integral)"

    half_fib = fib(order // 2 - 1)
    slack = 2 * lam - n + budget
    gates = (
        (
            "hypothesis",
            2 * lam + budget >= n,
            f"2*lambda + l >= n with l = {budget}",
        ),
        (
            "range-dominates",
            slack <= lam - 1,
            "2*lambda - n + l <= lambda - 1",
        ),
        (
            "k-range-inclusion",
            24 * half_fib - order + 48 > 24 * slack,
            "F(order/2 - 1) - order/24 + 2 > 2*lambda - n + l, scaled by 24",
        ),
        (
            "max-term",
            2 * lam >= max(n, 2 * lam) - 1,
            "2*lambda within 1 of max(n, 2*lambda) for lambda = floor(n/2)",
        ),
        (
            "order-vs-log",
            math.floor(math.log(n) / math.log(_PHI)) == order,
            "order equals floor(log_phi n), cross-checked on exact n",
        ),
    )

    searches: list[tuple[int, bool, str]] = []
    if budget == 1:
        parity = (fib(order) + budget) % 2  # excess must match this parity
        low_k = 0 if parity == 0 else 1
        high_k = half_fib - ((half_fib - low_k) % 2)
        for k in dict.fromkeys((low_k, high_k)):
            outcome = representation_search(
                RepresentationQuery(order=order, excess=k, budget=budget)
            )
            searches.append(
                (k, not outcome.found, outcome.reason or "witness found")
            )
    else:
        searches.append((-1, True, "search infeasible for budget >= 2, skipped"))

    ok = all(v for _, v, _ in gates) and all(absent for _, absent, _ in searches)
    return CertificateReport(
        order=order,
        n=n,
        min_gap=lam,
        budget=budget,
        budget_note=budget_note,
        regime="theorem regime (order >= 96)",
        gates=gates,
        searches=tuple(searches),
        impossibility=None,
        ok=ok,
    )
