"""Grid sets, fiber-degree statistics, core peeling, and the extremal family.

A GridSet is a finite X ⊆ {0..m-1}^n.  For coordinate i, the fibers are the
groups of elements agreeing everywhere except coordinate i; AvgDeg_i is
|X| / (number of fibers), MinDeg_i the smallest fiber.  The recursive family
X_n has every nonempty subset containing an element alone in some fiber,
yet average degrees approaching n; inflating it by s keeps that ceiling at
s per coordinate while scaling averages by s — which is what makes the
average-to-min degree tradeoff unimprovable beyond a factor n.
"""

from dataclasses import dataclass
from fractions import Fraction

from ._rng import Stream

DEFAULT_BUDGET = 4_000_000  # max m^n cells touched by builders


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridSet:
    n: int
    m: int
    elements: frozenset  # of n-tuples over range(m)

    def __post_init__(self):
        for el in self.elements:
            if len(el) != self.n or any(not 0 <= x < self.m for x in el):
                raise GridError(f"bad element {el} for n={self.n}, m={self.m}")

    def __len__(self):
        return len(self.elements)

    def projection_size(self, i: int) -> int:
        return len({el[:i] + el[i + 1:] for el in self.elements})


def _fibers(elements, i):
    fib = {}
    for el in elements:
        fib.setdefault(el[:i] + el[i + 1:], []).append(el)
    return fib


@dataclass(frozen=True)
class DegreeStats:
    avg_deg: tuple  # Fraction per coordinate
    min_deg: tuple  # int per coordinate


def degree_stats(x: GridSet) -> DegreeStats:
    if not x.elements:
        raise GridError("degree stats of the empty set")
    avg = []
    mn = []
    for i in range(x.n):
        fib = _fibers(x.elements, i)
        avg.append(Fraction(len(x.elements), len(fib)))
        mn.append(min(len(v) for v in fib.values()))
    return DegreeStats(avg_deg=tuple(avg), min_deg=tuple(mn))


def build_xn(n: int, m: int, budget: int = DEFAULT_BUDGET) -> GridSet:
    """The recursive reducible family:

    X_2 = {(j, j)} ∪ {(j, j+1)};  X_{n+1} = X_n x alphabet ∪ complement(X_n) x {0}.
    """
    if n < 2 or m < 2:
        raise GridError("need n >= 2 and m >= 2")
    if n > 8 or m ** n > budget:
        raise GridError(f"m^n = {m ** n} exceeds budget {budget}")
    current = {(j, j) for j in range(m)} | {(j, j + 1) for j in range(m - 1)}
    arity = 2
    while arity < n:
        grown = {el + (j,) for el in current for j in range(m)}
        full = _all_tuples(m, arity)
        grown |= {el + (0,) for el in full if el not in current}
        current = grown
        arity += 1
    return GridSet(n=n, m=m, elements=frozenset(current))


def _all_tuples(m, n):
    out = [()]
    for _ in range(n):
        out = [t + (j,) for t in out for j in range(m)]
    return out


def inflate(x: GridSet, s: int, budget: int = DEFAULT_BUDGET) -> GridSet:
    """Replace each symbol by a block of s symbols: |In(X, s)| = s^n |X|."""
    if s < 1:
        raise GridError("s >= 1")
    if len(x.elements) * s ** x.n > budget:
        raise GridError("inflation exceeds budget")
    offsets = _all_tuples(s, x.n)
    elements = {tuple(s * xi + ri for xi, ri in zip(el, off))
                for el in x.elements for off in offsets}
    return GridSet(n=x.n, m=s * x.m, elements=frozenset(elements))


def peel_core(x: GridSet, threshold: int, order_seed: int = None) -> GridSet:
    """Maximal subset with every fiber of size >= threshold (possibly empty).

    Repeatedly drains fibers smaller than the threshold until fixpoint.  The
    fixpoint is unique — removals never enlarge other fibers — so
    `order_seed` (shuffling the work queue) must not change the result; the
    tests exploit that.
    """
    if threshold < 1:
        raise GridError("threshold >= 1")
    alive = set(x.elements)
    fibers = [_fibers(alive, i) for i in range(x.n)]
    for i in range(x.n):
        fibers[i] = {key: set(group) for key, group in fibers[i].items()}
    queue = [(i, key) for i in range(x.n) for key, group in fibers[i].items()
             if len(group) < threshold]
    if order_seed is not None:
        Stream(order_seed).shuffle(queue)
    seen = set(queue)
    while queue:
        i, key = queue.pop()
        group = fibers[i].get(key)
        if not group:
            continue
        for el in list(group):
            alive.discard(el)
            for j in range(x.n):
                jkey = el[:j] + el[j + 1:]
                jgroup = fibers[j].get(jkey)
                if jgroup is None:
                    continue
                jgroup.discard(el)
                if not jgroup:
                    del fibers[j][jkey]
                elif len(jgroup) < threshold and (j, jkey) not in seen:
                    queue.append((j, jkey))
                    seen.add((j, jkey))
        fibers[i].pop(key, None)
    return GridSet(n=x.n, m=x.m, elements=frozenset(alive))


def has_unique_element(elements, n) -> bool:
    """True iff some element sits alone in one of its fibers."""
    for i in range(n):
        counts = {}
        for el in elements:
            key = el[:i] + el[i + 1:]
            counts[key] = counts.get(key, 0) + 1
        if any(cnt == 1 for cnt in counts.values()):
            return True
    return False


@dataclass(frozen=True)
class Theorem5Report:
    n: int
    s: int
    eps: Fraction
    m: int
    avg_deg: tuple
    avg_bound: Fraction     # s (n - eps)
    core_empty: bool

    @property
    def ok(self) -> bool:
        return self.core_empty and all(a >= self.avg_bound for a in self.avg_deg)


def verify_theorem5(n: int, s: int, eps, budget: int = DEFAULT_BUDGET) -> Theorem5Report:
    """Construct In(X_n, s) at the smallest feasible m and check both claims:
    AvgDeg_i >= s(n - eps) for every i, and the (s+1)-core is empty."""
    eps = Fraction(repr(eps)) if isinstance(eps, float) else Fraction(eps)
    if eps <= 0:
        raise GridError("eps must be positive: n(1 - 1/m)^(n-1) < n for every finite m")
    if n < 2 or s < 1:
        raise GridError("need n >= 2 and s >= 1")
    m = None
    cand = 2
    while cand ** n <= budget:
        # n (1 - 1/m)^(n-1) >= n - eps, exactly
        if n * (cand - 1) ** (n - 1) >= (n - eps) * cand ** (n - 1):
            m = cand
            break
        cand += 1
    if m is None:
        raise GridError("no feasible m within budget")
    inflated = inflate(build_xn(n, m, budget), s, budget)
    stats = degree_stats(inflated)
    core = peel_core(inflated, s + 1)
    return Theorem5Report(n=n, s=s, eps=eps, m=m, avg_deg=stats.avg_deg,
                          avg_bound=s * (n - eps), core_empty=not core.elements)


def thickness_prune(x: GridSet, delta, d) -> GridSet:
    """Drop fibers of degree < delta*d/n until MinDeg_i >= delta*d/n everywhere.

    Requires AvgDeg_i(x) >= d for all i.  The survivor count is guaranteed
    to be at least (1 - delta)|x|; falling short would be an implementation
    bug, so it raises."""
    delta = Fraction(repr(delta)) if isinstance(delta, float) else Fraction(delta)
    d = Fraction(d)
    if not 0 < delta < 1:
        raise GridError("need 0 < delta < 1")
    stats = degree_stats(x)
    if any(a < d for a in stats.avg_deg):
        raise GridError("precondition AvgDeg_i >= d fails")
    cut = delta * d / x.n
    # fiber sizes are integers, so "size < cut" == "size < ceil(cut)"
    threshold = -(-cut.numerator // cut.denominator)
    result = peel_core(x, threshold)
    if len(result) < (1 - delta) * len(x):
        raise AssertionError(
            f"pruned set too small: {len(result)} < (1-{delta})*{len(x)}")
    return result


# --- text export -----------------------------------------------------------------

def save_gridset(x: GridSet, path):
    with open(path, "w") as fh:
        fh.write(f"GRIDSET {x.n} {x.m} {len(x.elements)}\n")
        for el in sorted(x.elements):
            fh.write(" ".join(map(str, el)) + "\n")


def load_gridset(path) -> GridSet:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 4 or header[0] != "GRIDSET":
            raise GridError("bad GRIDSET header")
        n, m, count = (int(v) for v in header[1:])
        elements = set()
        for line in fh:
            if line.strip():
                elements.add(tuple(int(v) for v in line.split()))
    if len(elements) != count:
        raise GridError(f"expected {count} elements, read {len(elements)}")
    return GridSet(n=n, m=m, elements=frozenset(elements))
