"""Finite simple graphs, the constructions used on them, and exact small-scale
combinatorial parameters.

Vertices are 1-based at every public boundary (edge lists, permutations,
coperp pairs as printed) and 0-based internally.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import IndexOutOfRange, LoopEdge, ParseError, SizeCapExceeded

CLIQUE_CAP = 16
BIPARTITE_CAP = 14
ISO_CAP = 10


@dataclass(frozen=True)
class Graph:
    """A loop-free undirected graph on vertices 0..n-1.

    ``edges`` holds 0-based pairs ``(i, j)`` with ``i < j``.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad internal edge {(i, j)} for n={self.n}")

    def has_edge(self, i: int, j: int) -> bool:
        """0-based adjacency test."""
        if i > j:
            i, j = j, i
        return (i, j) in self.edges

    def edge_list(self) -> list[tuple[int, int]]:
        """Sorted 1-based edge list."""
        return [(i + 1, j + 1) for i, j in sorted(self.edges)]

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def neighbor_masks(self) -> list[int]:
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_list()})"


@dataclass(frozen=True)
class CoperpBasis:
    """Ordered off-diagonal non-edge pairs of a graph (0-based).

    Each unordered non-edge ``{i, j}`` with ``i < j`` contributes ``(i, j)``
    immediately followed by ``(j, i)``; unordered pairs run in row-major order.
    """

    n: int
    pairs: tuple

    def __len__(self):
        return len(self.pairs)

    def labels(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in self.pairs]

    def unordered(self) -> list[tuple[int, int]]:
        """The ``i < j`` representatives, in order."""
        return list(self.pairs[0::2])

    def support(self) -> set:
        return set(self.pairs)


# --- construction -----------------------------------------------------------

def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from 1-based vertex pairs; duplicates and reversals collapse."""
    if n < 1:
        raise IndexOutOfRange(f"vertex count must be positive, got {n}")
    edges = set()
    for pair in pairs:
        i, j = (int(v) for v in pair)
        for v in (i, j):
            if not 1 <= v <= n:
                raise IndexOutOfRange(f"vertex {v} outside 1..{n}")
        if i == j:
            raise LoopEdge(f"loop at vertex {i}")
        a, b = sorted((i - 1, j - 1))
        edges.add((a, b))
    return Graph(n, frozenset(edges))


def _from_internal(n, pairs) -> Graph:
    return Graph(n, frozenset((min(i, j), max(i, j)) for i, j in pairs))


def complete(n: int) -> Graph:
    return _from_internal(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return _from_internal(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return _from_internal(n, ((i, i + 1) for i in range(n - 1)))


def complete_bipartite(p: int, q: int) -> Graph:
    return _from_internal(p + q, ((i, p + j) for i in range(p) for j in range(q)))


def complement(g: Graph) -> Graph:
    pairs = (e for e in itertools.combinations(range(g.n), 2) if e not in g.edges)
    return _from_internal(g.n, pairs)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    pairs = list(g.edges) + [(i + g.n, j + g.n) for i, j in h.edges]
    return _from_internal(g.n + h.n, pairs)


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product; vertex (i, j) gets 0-based index ``i*h.n + j``.

    With this encoding ``r_matrix(strong_product(g, h)) == kron(r_matrix(g), r_matrix(h))``.
    """
    m = h.n

    def close(graph, a, b):
        return a == b or graph.has_edge(a, b)

    pairs = []
    for (i, j), (k, l) in itertools.combinations(itertools.product(range(g.n), range(m)), 2):
        if close(g, i, k) and close(h, j, l):
            pairs.append((i * m + j, k * m + l))
    return _from_internal(g.n * m, pairs)


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v-1]`` (1-based permutation of 1..n)."""
    p = _check_perm(perm, g.n)
    return _from_internal(g.n, ((p[i], p[j]) for i, j in g.edges))


def _check_perm(perm, n):
    p = [int(v) - 1 for v in perm]
    if sorted(p) != list(range(n)):
        raise ValueError(f"not a permutation of 1..{n}: {list(perm)}")
    return p


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """U with ``U e_j = e_{perm(j)}``; then ``U A_G U^T = A_{permute(G, perm)}``."""
    p = _check_perm(perm, len(perm))
    u = np.zeros((len(p), len(p)))
    u[p, range(len(p))] = 1.0
    return u


# --- matrices attached to a graph --------------------------------------------

def adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for i, j in g.edges:
        a[i, j] = a[j, i] = 1.0
    return a


def r_matrix(g: Graph) -> np.ndarray:
    """Identity plus adjacency: the 0/1 pattern of the graph's operator system."""
    return np.eye(g.n) + adjacency(g)


def coperp_basis(g: Graph) -> CoperpBasis:
    pairs = []
    for i, j in itertools.combinations(range(g.n), 2):
        if (i, j) not in g.edges:
            pairs.extend([(i, j), (j, i)])
    return CoperpBasis(g.n, tuple(pairs))


# --- exact combinatorial parameters -------------------------------------------

def _cap(n, cap, what):
    if n > cap:
        raise SizeCapExceeded(f"{what} needs n <= {cap}, got n = {n}")


def _max_clique_mask(nbrs: list[int], candidates: int) -> int:
    """Largest clique inside ``candidates`` (bitmask), by branch and bound."""
    best = 0
    best_size = 0

    def expand(clique, size, cand):
        nonlocal best, best_size
        if cand == 0:
            if size > best_size:
                best, best_size = clique, size
            return
        if size + cand.bit_count() <= best_size:
            return
        # branch on a pivot-free ordering; drop each vertex after exploring it
        while cand:
            if size + cand.bit_count() <= best_size:
                return
            v = cand.bit_length() - 1
            expand(clique | (1 << v), size + 1, cand & nbrs[v])
            cand &= ~(1 << v)

    expand(0, 0, candidates)
    return best


def clique_number(g: Graph, cap: int = CLIQUE_CAP) -> int:
    _cap(g.n, cap, "clique_number")
    return _max_clique_mask(g.neighbor_masks(), (1 << g.n) - 1).bit_count()


def independence_number(g: Graph, cap: int = CLIQUE_CAP) -> int:
    return clique_number(complement(g), cap)


def chromatic_number(g: Graph, cap: int = CLIQUE_CAP) -> int:
    """Smallest k admitting a proper k-colouring, tried upward from the clique number."""
    _cap(g.n, cap, "chromatic_number")
    nbrs = g.neighbor_masks()
    order = sorted(range(g.n), key=lambda v: -nbrs[v].bit_count())

    def colourable(k):
        colour = [-1] * g.n

        def place(idx):
            if idx == g.n:
                return True
            v = order[idx]
            used = {colour[u] for u in range(g.n) if nbrs[v] >> u & 1 and colour[u] >= 0}
            # symmetry break: never open more than one fresh colour
            top = max(colour) + 1 if idx else 0
            for c in range(min(k, top + 1)):
                if c not in used:
                    colour[v] = c
                    if place(idx + 1):
                        return True
            colour[v] = -1
            return False

        return place(0)

    k = max(1, clique_number(g, cap))
    while not colourable(k):
        k += 1
    return k


def induced_bipartite_max(g: Graph, cap: int = BIPARTITE_CAP) -> tuple[int, int, float]:
    """Maximise sqrt(p*q) over induced complete bipartite subgraphs K_{p,q}.

    Returns ``(p, q, sqrt(p*q))`` with ``p <= q``; among maximisers the
    lexicographically smallest ``(p, q)`` wins. An edgeless graph gives
    ``(0, 0, 0.0)``.
    """
    _cap(g.n, cap, "induced_bipartite_max")
    nbrs = g.neighbor_masks()
    full = (1 << g.n) - 1
    non_nbrs = [full & ~nbrs[v] & ~(1 << v) for v in range(g.n)]
    best = (0, 0)

    # walk all independent sets A; the other side lives in A's common neighbourhood
    def walk(a_mask, size, cand, common):
        nonlocal best
        if size:
            q = _max_clique_mask(non_nbrs, common).bit_count()
            if q:
                p2, q2 = sorted((size, q))
                key, cur = p2 * q2, best[0] * best[1]
                if key > cur or (key == cur and (p2, q2) < best):
                    best = (p2, q2)
        while cand:
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            walk(a_mask | (1 << v), size + 1, cand & non_nbrs[v], common & nbrs[v])

    walk(0, 0, full, full)
    p, q = best
    return p, q, math.sqrt(p * q)


def is_induced_complete_bipartite(g: Graph, side1: Iterable[int], side2: Iterable[int]) -> bool:
    """0-based check that ``side1``/``side2`` span an induced K_{|side1|,|side2|}."""
    a, b = set(side1), set(side2)
    if not a or not b or a & b:
        return False
    if any(g.has_edge(i, j) for i, j in itertools.combinations(sorted(a), 2)):
        return False
    if any(g.has_edge(i, j) for i, j in itertools.combinations(sorted(b), 2)):
        return False
    return all(g.has_edge(i, j) for i in a for j in b)


# --- isomorphism ------------------------------------------------------------

def is_isomorphic(g: Graph, h: Graph, cap: int = ISO_CAP) -> Optional[list[int]]:
    """Return a 1-based permutation ``pi`` with ``permute(g, pi) == h``, or None."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    _cap(g.n, cap, "is_isomorphic")
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    n = g.n
    gn, hn = g.neighbor_masks(), h.neighbor_masks()
    gdeg, hdeg = g.degrees(), h.degrees()
    order = sorted(range(n), key=lambda v: -gdeg[v])
    image = [-1] * n
    used = [False] * n

    def extend(idx):
        if idx == n:
            return True
        v = order[idx]
        for w in range(n):
            if used[w] or hdeg[w] != gdeg[v]:
                continue
            ok = True
            for u in order[:idx]:
                if (gn[v] >> u & 1) != (hn[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v], used[w] = w, True
                if extend(idx + 1):
                    return True
                image[v], used[w] = -1, False
        return False

    if extend(0):
        return [w + 1 for w in image]
    return None


def canonical_form(g: Graph, cap: int = 8) -> Optional[str]:
    """Isomorphism-invariant graph6 string, or None above ``cap`` vertices.

    Brute force over relabelings that sort vertices by non-increasing degree,
    keeping the lexicographically largest upper-triangle bit string.
    """
    if g.n > cap:
        return None
    deg = g.degrees()
    classes = {}
    for v in range(g.n):
        classes.setdefault(deg[v], []).append(v)
    groups = [classes[d] for d in sorted(classes, reverse=True)]
    best_bits = None
    best_perm = None
    for parts in itertools.product(*(itertools.permutations(grp) for grp in groups)):
        order = [v for part in parts for v in part]
        bits = tuple(g.has_edge(order[i], order[j]) for j in range(g.n) for i in range(j))
        if best_bits is None or bits > best_bits:
            best_bits, best_perm = bits, order
    pos = {v: k for k, v in enumerate(best_perm)}
    return to_graph6(_from_internal(g.n, ((pos[i], pos[j]) for i, j in g.edges)))


# --- text formats -------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first data line, then one ``i j`` pair per line; ``#`` starts a comment."""
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(nums) != 1 or nums[0] < 1:
                raise ParseError("first line must hold a positive vertex count", lineno)
            n = nums[0]
            continue
        if len(nums) != 2:
            raise ParseError(f"expected a vertex pair, got {line!r}", lineno)
        i, j = nums
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"vertex outside 1..{n} in {line!r}", lineno)
        if i == j:
            raise ParseError(f"loop edge {line!r}", lineno)
        pairs.append((i, j))
    if n is None:
        raise ParseError("empty edge list")
    return from_edge_list(n, pairs)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{i} {j}" for i, j in g.edge_list()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    """Read an edge-list file, or a graph6 file when the name ends in ``.g6``."""
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".g6"):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError(f"expected one graph6 line in {path}, found {len(lines)}")
        return from_graph6(lines[0])
    return parse_edge_list(text)


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 short form only covers n <= 62")
    bits = [1 if g.has_edge(i, j) else 0 for j in range(g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return "".join(chars)


def from_graph6(s: str) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(not 0 <= c <= 63 for c in codes):
        raise ParseError(f"invalid graph6 character in {s!r}")
    n = codes[0]
    if n == 63:
        raise ParseError("graph6 long form (n > 62) is not supported")
    if n < 1:
        raise ParseError("graph6 graph has no vertices")
    bits = []
    for c in codes[1:]:
        bits.extend((c >> k) & 1 for k in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise ParseError(f"graph6 string too short for n = {n}")
    pairs = []
    k = 0
    for j in range(n):
        for i in range(j):
            if bits[k]:
                pairs.append((i, j))
            k += 1
    return _from_internal(n, pairs)
