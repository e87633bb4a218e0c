"""Regular graphs, the affine-plane expander, and its spectral/structural checks.

The affine-plane graph on F_q^2 joins (x, y) and (a, b) exactly when
a*x = b + y; it is q-regular and any two distinct vertices share at most
one neighbor.  A self-loop is stored once in the neighbor list and
contributes 1 to the degree.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ._jacobi import symmetric_eigenvalues
from ._rng import Stream
from .algebra import _checked_prime


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class RegularGraph:
    m: int
    d: int
    adjacency: tuple  # per-vertex sorted tuple of neighbor indices
    labels: Optional[tuple] = None  # vertex index -> domain label, e.g. (x, y)

    def __post_init__(self):
        if self.m != len(self.adjacency):
            raise GraphError("adjacency length != m")
        neigh_sets = []
        for v, row in enumerate(self.adjacency):
            if list(row) != sorted(set(row)):
                raise GraphError(f"vertex {v}: neighbors must be sorted and distinct")
            if len(row) != self.d:
                raise GraphError(f"vertex {v}: degree {len(row)} != {self.d}")
            if any(not 0 <= u < self.m for u in row):
                raise GraphError(f"vertex {v}: neighbor out of range")
            neigh_sets.append(frozenset(row))
        for v, row in enumerate(self.adjacency):
            for u in row:
                if v not in neigh_sets[u]:
                    raise GraphError(f"asymmetric edge ({v}, {u})")
        if self.labels is not None and len(self.labels) != self.m:
            raise GraphError("labels length != m")

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def adjacency_matrix(self) -> np.ndarray:
        mat = np.zeros((self.m, self.m))
        for v, row in enumerate(self.adjacency):
            for u in row:
                mat[v, u] = 1.0
        return mat

    def neighborhood_of_set(self, vertices) -> frozenset:
        out = set()
        for v in vertices:
            out.update(self.adjacency[v])
        return frozenset(out)


def build_ap(q: int) -> RegularGraph:
    """Affine-plane graph AP_q on q^2 vertices, labeled (x, y) with index x*q + y."""
    _checked_prime(q)
    adjacency = []
    labels = []
    for x in range(q):
        for y in range(q):
            labels.append((x, y))
            row = sorted(a * q + (a * x - y) % q for a in range(q))
            adjacency.append(tuple(row))
    return RegularGraph(m=q * q, d=q, adjacency=tuple(adjacency), labels=tuple(labels))


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: tuple  # ascending
    degree: int
    gamma_hat: float
    multiplicity_of_d: int

    def __post_init__(self):
        if abs(self.eigenvalues[-1] - self.degree) > 1e-6:
            raise GraphError(
                f"largest eigenvalue {self.eigenvalues[-1]} != degree {self.degree}"
            )


def spectral_report(g: RegularGraph, tol: float = 1e-9, d_tol: float = 1e-6,
                    max_sweeps: int = 60) -> SpectralReport:
    """Full spectrum via cyclic Jacobi; gamma_hat = (2nd largest |eigenvalue|)/d."""
    if g.m > 10_000:
        raise GraphError("dense eigensolve capped at m <= 10^4")
    evs = symmetric_eigenvalues(g.adjacency_matrix(), tol=tol, max_sweeps=max_sweeps)
    mult = int(np.sum(np.abs(evs - g.d) <= d_tol))
    rest = np.abs(evs[:-1])  # drop one copy of the Perron eigenvalue
    gamma_hat = float(rest.max() / g.d) if len(rest) else 0.0
    return SpectralReport(
        eigenvalues=tuple(float(e) for e in evs),
        degree=g.d,
        gamma_hat=gamma_hat,
        multiplicity_of_d=mult,
    )


def max_common_neighbors(g: RegularGraph) -> int:
    """max over distinct vertex pairs of |Γ(u) ∩ Γ(v)|, exhaustive."""
    sets = [frozenset(row) for row in g.adjacency]
    best = 0
    for u in range(g.m):
        su = sets[u]
        for v in range(u + 1, g.m):
            inter = len(su & sets[v])
            if inter > best:
                best = inter
    return best


def _as_gamma_sq(gamma, gamma_sq) -> Fraction:
    if (gamma is None) == (gamma_sq is None):
        raise ValueError("pass exactly one of gamma, gamma_sq")
    if gamma_sq is not None:
        gs = Fraction(gamma_sq)
    else:
        gs = Fraction(gamma) ** 2  # exact value of the given float/rational
    if not 0 < gs < 1:
        raise ValueError("need 0 < gamma < 1")
    return gs


def check_affine_like(m: int, d: int, gamma=None, *, gamma_sq=None) -> bool:
    """2d + 4 > d^2 (2 gamma^2 + 4(1-gamma^2)/m), decided in exact rationals.

    True guarantees any two distinct vertices of an (m, d, gamma)-spectral
    expander share at most one neighbor.
    """
    if m < 1 or not 1 <= d <= m:
        raise ValueError("need m >= 1 and 1 <= d <= m")
    gs = _as_gamma_sq(gamma, gamma_sq)
    rhs = d * d * (2 * gs + Fraction(4) * (1 - gs) / m)
    return 2 * d + 4 > rhs


def expansion_lower_bound(size: int, m: int, gamma_sq: Fraction) -> Fraction:
    """|Γ(A)|/|A| >= 1 / (gamma^2 + (1-gamma^2) |A|/m), the spectral bound."""
    return 1 / (gamma_sq + (1 - gamma_sq) * Fraction(size, m))


@dataclass
class ExpansionReport:
    samples: int
    min_slack: Optional[Fraction]
    violations: list = field(default_factory=list)  # (size, |Γ(A)|, bound)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_vertex_expansion(g: RegularGraph, gamma=None, *, gamma_sq=None,
                           samples: int = 100, rng_seed: int = 0) -> ExpansionReport:
    """Sample vertex sets (log-uniform sizes) and test the expansion bound exactly.

    A violation flags gamma as an underestimate of the true expansion constant.
    Per-sample RNG streams come from (rng_seed, sample index), so the report
    does not depend on evaluation order.
    """
    gs = _as_gamma_sq(gamma, gamma_sq)
    report = ExpansionReport(samples=samples, min_slack=None)
    max_exp = (g.m).bit_length() - 1
    for i in range(samples):
        stream = Stream(rng_seed, i)
        k = stream.below(max_exp + 1)
        lo = 1 << k
        hi = min((1 << (k + 1)) - 1, g.m)
        size = lo + stream.below(hi - lo + 1)
        subset = stream.subset(g.m, size)
        expanded = len(g.neighborhood_of_set(subset))
        bound = expansion_lower_bound(size, g.m, gs)
        slack = Fraction(expanded, size) - bound
        if report.min_slack is None or slack < report.min_slack:
            report.min_slack = slack
        if slack < 0:
            report.violations.append((size, expanded, bound))
    return report


# --- text export --------------------------------------------------------------

def save_graph(g: RegularGraph, path):
    with open(path, "w") as fh:
        fh.write(f"GRAPH {g.m} {g.d}\n")
        for v, row in enumerate(g.adjacency):
            fh.write(f"{v}: {' '.join(str(u) for u in row)}\n")
        if g.labels is not None:
            for v, lab in enumerate(g.labels):
                fh.write(f"LABEL {v} {lab[0]} {lab[1]}\n")


def load_graph(path) -> RegularGraph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "GRAPH":
            raise GraphError("bad GRAPH header")
        m, d = int(header[1]), int(header[2])
        adjacency = []
        labels = {}
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "LABEL":
                labels[int(parts[1])] = (int(parts[2]), int(parts[3]))
            else:
                v = int(parts[0].rstrip(":"))
                if v != len(adjacency):
                    raise GraphError("vertex lines out of order")
                adjacency.append(tuple(int(u) for u in parts[1:]))
    label_tuple = tuple(labels[v] for v in range(m)) if labels else None
    return RegularGraph(m=m, d=d, adjacency=tuple(adjacency), labels=label_tuple)
