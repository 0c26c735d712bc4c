"""Seeded tree generation and exhaustive labeled-tree enumeration.

Randomness comes from SplitMix64 with the published constants below, so a
fixed seed reproduces byte-identical trees on every platform.  Bounded
draws use plain modulo; the bias is far below anything these corpora
measure.  Labeled trees are sampled uniformly through random Pruefer
sequences and decoded with the linear pointer algorithm.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

import numpy as np

from .errors import InfeasibleDegreeBound, InstanceTooLarge, VertexOutOfRange
from .graphs import Tree, _unchecked_tree

__all__ = [
    "SplitMix64",
    "DEFAULT_SEED",
    "gen_random_tree",
    "pruefer_to_tree",
    "enumerate_trees",
]

DEFAULT_SEED = 123456789

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


class SplitMix64:
    """The SplitMix64 generator (Steele, Lea, Flood 2014 constants)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


def _stream(seed: int, offset: int, count: int) -> np.ndarray:
    """Outputs offset+1 .. offset+count of SplitMix64(seed), vectorized.

    The i-th scalar output mixes seed + i * gamma, so the whole stream is
    one elementwise pass; equality with the scalar class is tested.
    """
    idx = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK) + idx * np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def pruefer_to_tree(seq, n: int) -> Tree:
    """Decode a Pruefer sequence of length n - 2 into a labeled tree."""
    if n < 1:
        raise VertexOutOfRange("a tree needs at least one vertex")
    if n == 1:
        return _unchecked_tree(1, [])
    if len(seq) != n - 2:
        raise VertexOutOfRange(f"sequence length {len(seq)} != n - 2 = {n - 2}")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    edges: list[tuple[int, int]] = []
    for v in seq:
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1 and v < ptr:
            leaf = v
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return _unchecked_tree(n, edges)


def gen_random_tree(n: int, max_degree: int | None = None, seed: int = DEFAULT_SEED) -> Tree:
    """Uniform random labeled tree, optionally with a degree cap.

    Degree-capped sampling rejects and resamples the Pruefer sequence up
    to 100 times, then repairs the last draw by redistributing the excess
    occurrences to the lowest-loaded vertices.  The repair skews the
    distribution slightly, which is acceptable: no consumer makes a
    uniformity claim under a degree bound.
    """
    if n < 1:
        raise VertexOutOfRange("a tree needs at least one vertex")
    if max_degree is not None:
        if max_degree < 1 or n * max_degree < 2 * (n - 1):
            raise InfeasibleDegreeBound(
                f"no tree on {n} vertices has maximum degree {max_degree}"
            )
    if n <= 2:
        return _unchecked_tree(n, [] if n == 1 else [(0, 1)])

    m = n - 2
    if max_degree is None:
        seq = (_stream(seed, 0, m) % np.uint64(n)).tolist()
        return pruefer_to_tree(seq, n)

    cap = max_degree - 1  # Pruefer multiplicity bound
    offset = 0
    arr = None
    for _ in range(100):
        arr = _stream(seed, offset, m) % np.uint64(n)
        offset += m
        if int(np.bincount(arr, minlength=n).max()) <= cap:
            return pruefer_to_tree(arr.tolist(), n)
    # Repair the last draw: keep entries while a vertex has room, move the
    # rest onto the smallest vertices that still fit.
    seq = arr.tolist()
    counts = [0] * n
    overflow = []
    for i, x in enumerate(seq):
        if counts[x] < cap:
            counts[x] += 1
        else:
            overflow.append(i)
    fill = 0
    for i in overflow:
        while counts[fill] >= cap:
            fill += 1
        seq[i] = fill
        counts[fill] += 1
    return pruefer_to_tree(seq, n)


def enumerate_trees(n: int) -> Iterator[Tree]:
    """All n^(n-2) labeled trees on n vertices, by Pruefer code order."""
    if n > 7:
        raise InstanceTooLarge(f"enumeration guarded to n <= 7, got {n}")
    if n < 1:
        raise VertexOutOfRange("a tree needs at least one vertex")
    if n <= 2:
        yield _unchecked_tree(n, [] if n == 1 else [(0, 1)])
        return
    for seq in product(range(n), repeat=n - 2):
        yield pruefer_to_tree(seq, n)
