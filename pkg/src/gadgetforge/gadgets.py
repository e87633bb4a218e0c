"""Partial two-party gadgets.

g(G, c): on a graph where distinct vertices share at most one neighbor,
cell (u, v) carries the color of the unique common neighbor and is
undefined when u = v or no common neighbor exists.  The square-ness
coloring of AP_q makes that gadget a sub-function of the "is a - b a
square in F_{q^2}" predicate.  Disjointness on k-subsets is indexed by
colexicographic rank.
"""

from dataclasses import dataclass
import hashlib
import math

import numpy as np

from .algebra import ExtContext, ExtFieldElem, FieldError, ext_is_square, _checked_prime
from .graphs import RegularGraph, build_ap, max_common_neighbors

UNDEF = -1  # trit value for undefined cells


class GadgetError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    bits: tuple  # 0/1 per vertex

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise GadgetError("coloring entries must be 0/1")

    def __len__(self):
        return len(self.bits)

    def ones(self) -> int:
        return sum(self.bits)

    def color_class(self, b: int) -> tuple:
        return tuple(v for v, bit in enumerate(self.bits) if bit == b)

    def flipped(self, v: int) -> "Coloring":
        bits = list(self.bits)
        bits[v] ^= 1
        return Coloring(tuple(bits))


def is_balanced(c: Coloring) -> bool:
    """|V|/3 <= |c^-1(1)| <= 2|V|/3, exact integer comparison."""
    m = len(c)
    ones = c.ones()
    return 3 * ones >= m and 3 * ones <= 2 * m


@dataclass(frozen=True, eq=False)
class PartialGadget:
    rows: int
    cols: int
    cells: np.ndarray  # int8, values {0, 1, UNDEF}
    row_labels: tuple = None
    col_labels: tuple = None

    def __post_init__(self):
        if self.cells.shape != (self.rows, self.cols):
            raise GadgetError("cell matrix shape mismatch")
        if not np.isin(self.cells, (0, 1, UNDEF)).all():
            raise GadgetError("cells must be 0/1/UNDEF")
        self.cells.setflags(write=False)

    def value(self, u: int, v: int) -> int:
        return int(self.cells[u, v])

    def defined_count(self) -> int:
        return int((self.cells != UNDEF).sum())

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.rows}x{self.cols}:".encode())
        h.update(self.cells.tobytes())
        return h.hexdigest()[:16]


DENSE_SIDE_CAP = 2048  # trit matrices are materialized up to this side length


def gadget_cell(g: RegularGraph, c: Coloring, u: int, v: int) -> int:
    """One cell of g(G, c) without materializing the matrix."""
    if u == v:
        return UNDEF
    common = frozenset(g.adjacency[u]) & frozenset(g.adjacency[v])
    if not common:
        return UNDEF
    if len(common) > 1:
        raise GadgetError(f"vertices {u}, {v} share {len(common)} neighbors")
    (w,) = common
    return c.bits[w]


def build_gadget_from_colored_graph(g: RegularGraph, c: Coloring) -> PartialGadget:
    """Cell (u, v) = color of the unique common neighbor; UNDEF if none or u = v.

    Dense construction; beyond DENSE_SIDE_CAP vertices use `gadget_cell`."""
    if len(c) != g.m:
        raise GadgetError("coloring length != vertex count")
    if g.m > DENSE_SIDE_CAP:
        raise GadgetError(f"m={g.m} > {DENSE_SIDE_CAP}: evaluate cells on demand "
                          "with gadget_cell instead")
    if max_common_neighbors(g) > 1:
        raise GadgetError("gadget ill-defined: some pair has >= 2 common neighbors")
    sets = [frozenset(row) for row in g.adjacency]
    cells = np.full((g.m, g.m), UNDEF, dtype=np.int8)
    for u in range(g.m):
        for v in range(g.m):
            if u == v:
                continue
            common = sets[u] & sets[v]
            if common:
                (w,) = common
                cells[u, v] = c.bits[w]
    return PartialGadget(rows=g.m, cols=g.m, cells=cells,
                         row_labels=g.labels, col_labels=g.labels)


def sqr_context(q: int) -> ExtContext:
    if q == 2:
        raise FieldError("SQR needs odd q")
    return ExtContext.for_prime(q)


def build_sqr_coloring(q: int) -> Coloring:
    """c((a, b)) = 1 iff 1 + w*a is a square in F_{q^2}; depends on a only."""
    _checked_prime(q)
    ctx = sqr_context(q)
    per_a = [1 if ext_is_square(ctx.elem(1, a)) else 0 for a in range(q)]
    return Coloring(tuple(per_a[a] for a in range(q) for _b in range(q)))


def eval_sqr(a: ExtFieldElem, b: ExtFieldElem) -> int:
    """1 iff a - b is a square in F_{q^2}."""
    if a.ctx != b.ctx:
        raise FieldError("mixed extension contexts")
    return 1 if ext_is_square(a - b) else 0


def build_sqr_gadget(q: int) -> PartialGadget:
    """g(AP_q, squareness coloring): a sub-function of the SQR predicate."""
    return build_gadget_from_colored_graph(build_ap(q), build_sqr_coloring(q))


def find_subfunction_violation(g_partial: PartialGadget, q: int):
    """First defined cell disagreeing with SQR^q under (x, y) -> x + y*w, or None."""
    ctx = sqr_context(q)
    if g_partial.rows != q * q or g_partial.cols != q * q:
        raise GadgetError("gadget dimensions do not match AP_q")
    for u in range(q * q):
        au = ctx.elem(u // q, u % q)
        for v in range(q * q):
            val = g_partial.value(u, v)
            if val == UNDEF:
                continue
            if val != eval_sqr(au, ctx.elem(v // q, v % q)):
                return (u, v)
    return None


def verify_subfunction(g_partial: PartialGadget, q: int) -> bool:
    """Exhaustive check over all q^4 cells that defined values match SQR^q."""
    return find_subfunction_violation(g_partial, q) is None


# --- Disjointness on k-subsets of {0, ..., m-1} --------------------------------

def rank_colex(subset) -> int:
    """Colex rank of a sorted k-subset of nonnegative ints."""
    return sum(math.comb(e, i + 1) for i, e in enumerate(subset))


def unrank_colex(r: int, m: int, k: int) -> tuple:
    """Inverse of rank_colex over k-subsets of range(m)."""
    if not 0 <= r < math.comb(m, k):
        raise GadgetError(f"rank {r} out of range for C({m},{k})")
    out = [0] * k
    n = m
    while k > 0:
        n -= 1
        offset = math.comb(n, k)
        if r >= offset:
            r -= offset
            k -= 1
            out[k] = n
    return tuple(out)


@dataclass(frozen=True)
class DisjGadget:
    m: int
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.m:
            raise GadgetError("need 0 <= k <= m")

    @property
    def side(self) -> int:
        return math.comb(self.m, self.k)

    def subset(self, rank: int) -> tuple:
        return unrank_colex(rank, self.m, self.k)

    def rank(self, subset) -> int:
        return rank_colex(sorted(subset))


def eval_disj(d: DisjGadget, a_rank: int, b_rank: int) -> int:
    """1 iff the two ranked k-subsets are disjoint."""
    a = set(d.subset(a_rank))
    b = set(d.subset(b_rank))
    return 1 if not (a & b) else 0


# --- text export ----------------------------------------------------------------

_CHAR = {0: "0", 1: "1", UNDEF: "*"}
_TRIT = {"0": 0, "1": 1, "*": UNDEF}


def save_gadget(g: PartialGadget, path):
    with open(path, "w") as fh:
        fh.write(f"GADGET {g.rows} {g.cols}\n")
        for u in range(g.rows):
            fh.write("".join(_CHAR[int(x)] for x in g.cells[u]) + "\n")


def load_gadget(path) -> PartialGadget:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "GADGET":
            raise GadgetError("bad GADGET header")
        rows, cols = int(header[1]), int(header[2])
        cells = np.full((rows, cols), UNDEF, dtype=np.int8)
        for u in range(rows):
            line = fh.readline().strip()
            if len(line) != cols:
                raise GadgetError(f"row {u} has {len(line)} cells, expected {cols}")
            cells[u] = [_TRIT[ch] for ch in line]
    return PartialGadget(rows=rows, cols=cols, cells=cells)


def save_coloring(c: Coloring, path):
    with open(path, "w") as fh:
        fh.write("".join(str(b) for b in c.bits) + "\n")


def load_coloring(path) -> Coloring:
    with open(path) as fh:
        return Coloring(tuple(int(ch) for ch in fh.readline().strip()))
