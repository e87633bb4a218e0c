"""Hitting distributions over monochromatic rectangles, their testers, and bounds.

The expander construction: draw a vertex v of color b uniformly, split its
neighborhood into (A, B), and output the rectangle A x B.  Because any two
distinct neighbors of v have v as their unique common neighbor, A x B is
b-monochromatic.  Splits come either from ideal independent fair bits
(FULL_INDEP, exactly listable for d <= 24) or from the 10-wise independent
polynomial hash over GF(2^n) with n = ceil(log2 m) (POLY10WISE, whose seed
space is far beyond listing budgets at desk scale, so it is sampler-first).

Also here: the Disjointness distributions on k-subsets, the sparsifier and
support lower bound, the random-subset adversarial probe, and the
simulation-theorem bound calculators.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import bisect
import hashlib
import math
import warnings

from ._mckernels import SPLIT_INDEP, SPLIT_POLY10, mc_random_sets
from ._rng import Stream
from .gadgets import Coloring, PartialGadget, is_balanced, unrank_colex
from .graphs import RegularGraph, max_common_neighbors

FULL_INDEP = "FULL_INDEP"
POLY10WISE = "POLY10WISE"

EXACT = "EXACT"
SAMPLER_ONLY = "SAMPLER_ONLY"

RANDOM_SETS = "RANDOM_SETS"
NEIGHBORHOOD_AVOID = "NEIGHBORHOOD_AVOID"
FIRST_COORD_SLAB = "FIRST_COORD_SLAB"


class DistributionError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """Exact enumeration would exceed its budget; use the Monte-Carlo path."""


class Rectangle:
    """Combinatorial rectangle left x right; sides are sorted index tuples."""

    __slots__ = ("left", "right", "left_set", "right_set")

    def __init__(self, left, right):
        object.__setattr__(self, "left", tuple(sorted(left)))
        object.__setattr__(self, "right", tuple(sorted(right)))
        object.__setattr__(self, "left_set", frozenset(self.left))
        object.__setattr__(self, "right_set", frozenset(self.right))

    def __setattr__(self, *a):
        raise AttributeError("Rectangle is immutable")

    def __eq__(self, other):
        return (isinstance(other, Rectangle)
                and self.left == other.left and self.right == other.right)

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"Rectangle({list(self.left)}, {list(self.right)})"

    def nonempty(self) -> bool:
        return bool(self.left) and bool(self.right)

    def hits(self, xs, ys) -> bool:
        return not self.left_set.isdisjoint(xs) and not self.right_set.isdisjoint(ys)


@dataclass(frozen=True)
class _ExpanderProcess:
    """Sampling context: color class with neighbor rows, plus split mode."""

    vlist: tuple                # vertices of color b
    vlist_neighbors: tuple      # Γ(v) per vlist entry, sorted
    adjacency: tuple            # full adjacency (for adversarial strategies)
    labels: tuple               # vertex labels, or None
    split: str                  # FULL_INDEP | POLY10WISE
    hash_n: int                 # POLY10WISE input bit-length

    def sample(self, stream: Stream) -> Rectangle:
        vi = stream.below(len(self.vlist))
        nv = self.vlist_neighbors[vi]
        d = len(nv)
        if self.split == FULL_INDEP:
            word = stream.u64()
            bits = [(word >> j) & 1 for j in range(d)]
        else:
            from .algebra import gf2n_mul

            mask = (1 << self.hash_n) - 1
            coeffs = [stream.u64() & mask for _ in range(10)]
            bits = []
            for u in nv:
                acc = coeffs[9]
                for c in reversed(coeffs[:9]):
                    acc = gf2n_mul(acc, u, self.hash_n) ^ c
                bits.append(acc & 1)
        return Rectangle((u for u, b in zip(nv, bits) if b == 0),
                         (u for u, b in zip(nv, bits) if b == 1))


@dataclass(eq=False)
class HittingDistribution:
    gadget_rows: int
    gadget_cols: int
    gadget_hash: str
    color: int = None           # 0, 1, or None
    mode: str = EXACT
    support: tuple = None       # ((Rectangle, Fraction), ...) when EXACT
    params: dict = field(default_factory=dict)
    process: object = None      # sampling context, if process-backed

    def __post_init__(self):
        if self.mode == EXACT:
            if not self.support:
                raise DistributionError("EXACT mode needs a support")
            total = sum(p for _, p in self.support)
            if total != 1:
                raise DistributionError(f"probabilities sum to {total}, not 1")
            if any(p <= 0 for _, p in self.support):
                raise DistributionError("probabilities must be positive")
        elif self.mode == SAMPLER_ONLY:
            if self.process is None:
                raise DistributionError("SAMPLER_ONLY mode needs a process")
        else:
            raise DistributionError(f"unknown mode {self.mode}")

    def support_size(self) -> int:
        if self.support is None:
            raise DistributionError("no listed support in SAMPLER_ONLY mode")
        return len(self.support)

    def common_denominator(self) -> int:
        den = 1
        for _, p in self.support:
            den = math.lcm(den, p.denominator)
        return den

    def _cumulative(self):
        den = self.common_denominator()
        cum = []
        acc = 0
        for _, p in self.support:
            acc += int(p * den)
            cum.append(acc)
        return den, cum

    def sample(self, stream: Stream) -> Rectangle:
        """One rectangle; process-faithful when a process is attached."""
        if self.process is not None:
            return self.process.sample(stream)
        den, cum = self._cumulative_cached()
        j = stream.below(den)
        return self.support[bisect.bisect_right(cum, j)][0]

    def _cumulative_cached(self):
        cache = getattr(self, "_cum_cache", None)
        if cache is None:
            cache = self._cumulative()
            object.__setattr__(self, "_cum_cache", cache)
        return cache


def _graph_coloring_hash(g: RegularGraph, c: Coloring) -> str:
    h = hashlib.sha256()
    h.update(f"{g.m} {g.d} ".encode())
    for row in g.adjacency:
        h.update(" ".join(map(str, row)).encode())
        h.update(b";")
    h.update("".join(map(str, c.bits)).encode())
    return h.hexdigest()[:16]


def _raw_full_indep(vlist, neighbors, t):
    """Unaggregated (v, split) -> (Rectangle, probability) stream."""
    for vi, nv in enumerate(neighbors):
        d = len(nv)
        p = Fraction(1, t * (1 << d))
        for mask in range(1 << d):
            yield (vlist[vi], mask), Rectangle(
                (nv[j] for j in range(d) if not (mask >> j) & 1),
                (nv[j] for j in range(d) if (mask >> j) & 1)), p


def build_expander_distribution(g: RegularGraph, c: Coloring, b: int,
                                mode: str = FULL_INDEP, listing: str = "auto",
                                seed_budget: int = 1 << 20,
                                exact_budget: int = 1 << 20) -> HittingDistribution:
    """Hitting distribution over b-monochromatic rectangles of g(G, c).

    FULL_INDEP lists the exact support (all 2^d splits per vertex, d <= 24)
    unless `listing="sampler"`;  POLY10WISE lists only when the full seed
    space fits `seed_budget`, otherwise the result is SAMPLER_ONLY.
    """
    if b not in (0, 1):
        raise DistributionError("b must be 0 or 1")
    if len(c) != g.m:
        raise DistributionError("coloring does not match graph")
    vlist = c.color_class(b)
    if not vlist:
        raise DistributionError(f"empty color class {b}")
    hash_n = max(1, (g.m - 1).bit_length())
    if mode == POLY10WISE and hash_n > 16:
        raise DistributionError(f"POLY10WISE needs ceil(log2 m) <= 16, got {hash_n}")
    if max_common_neighbors(g) > 1:
        raise DistributionError("graph has a pair with >= 2 common neighbors")
    if not is_balanced(c):
        warnings.warn("coloring is not balanced; hitting guarantees degrade", stacklevel=2)
    t = len(vlist)
    neighbors = tuple(g.adjacency[v] for v in vlist)
    ghash = _graph_coloring_hash(g, c)
    params = {"split": mode, "b": b, "m": g.m, "d": g.d, "hash_n": hash_n}
    process = _ExpanderProcess(vlist=vlist, vlist_neighbors=neighbors,
                               adjacency=g.adjacency, labels=g.labels,
                               split=mode, hash_n=hash_n)

    if listing not in ("auto", "exact", "sampler"):
        raise DistributionError("listing must be auto|exact|sampler")

    want_exact = listing != "sampler"
    if mode == FULL_INDEP:
        if g.d > 24:
            raise DistributionError("FULL_INDEP exact listing needs d <= 24")
        if listing == "auto" and t * (1 << g.d) > exact_budget:
            want_exact = False
        if want_exact:
            agg = {}
            for _vs, rect, p in _raw_full_indep(vlist, neighbors, t):
                agg[rect] = agg.get(rect, Fraction(0)) + p
            support = tuple(sorted(agg.items(), key=lambda rp: (rp[0].left, rp[0].right)))
            return HittingDistribution(g.m, g.m, ghash, color=b, mode=EXACT,
                                       support=support, params=params, process=process)
    elif mode == POLY10WISE:
        seeds = 1 << (10 * hash_n)
        if want_exact and seeds <= seed_budget:
            from .hashing import HashFamily, hash_eval

            fam = HashFamily(n=hash_n, k=10)
            agg = {}
            p = Fraction(1, t * seeds)
            for nv in neighbors:
                for s in range(seeds):
                    bits = [hash_eval(fam, s, u) for u in nv]
                    rect = Rectangle((u for u, bit in zip(nv, bits) if bit == 0),
                                     (u for u, bit in zip(nv, bits) if bit == 1))
                    agg[rect] = agg.get(rect, Fraction(0)) + p
            support = tuple(sorted(agg.items(), key=lambda rp: (rp[0].left, rp[0].right)))
            return HittingDistribution(g.m, g.m, ghash, color=b, mode=EXACT,
                                       support=support, params=params, process=process)
    else:
        raise DistributionError(f"unknown split mode {mode}")

    return HittingDistribution(g.m, g.m, ghash, color=b, mode=SAMPLER_ONLY,
                               support=None, params=params, process=process)


def sample_rectangle(dist: HittingDistribution, rng_seed: int, stream_id: int = 0) -> Rectangle:
    return dist.sample(Stream(rng_seed, stream_id))


def theorem2_h(gamma: float) -> int:
    """floor(2 log2(1/gamma)) - 100; may be negative (then vacuous)."""
    if not 0 < gamma < 1:
        raise ValueError("need 0 < gamma < 1")
    return math.floor(2 * math.log2(1 / gamma)) - 100


# --- exact tester ---------------------------------------------------------------

def test_hitting_exact(dist: HittingDistribution, t_left: int, t_right: int,
                       pair_budget: int = 10 ** 8) -> Fraction:
    """Exact min over |X| = t_left, |Y| = t_right of Pr[R ∩ X x Y != ∅].

    Hitting mass is monotone in the sets, so the minimum over exact sizes
    certifies all larger sizes.
    """
    if dist.mode != EXACT:
        raise DistributionError("exact tester needs EXACT mode")
    rows, cols = dist.gadget_rows, dist.gadget_cols
    if not (0 < t_left <= rows and 0 < t_right <= cols):
        raise ValueError("set sizes out of range")
    if dist.support_size() > 10 ** 4:
        raise BudgetExceeded("support too large; use test_hitting_mc")
    if math.comb(rows, t_left) * math.comb(cols, t_right) > pair_budget:
        raise BudgetExceeded("too many subset pairs; use test_hitting_mc")

    den = dist.common_denominator()
    nums = [int(p * den) for _, p in dist.support]
    left_masks = [sum(1 << u for u in r.left) for r, _ in dist.support]
    right_masks = [sum(1 << u for u in r.right) for r, _ in dist.support]

    def hit_vectors(masks, n, t):
        out = []
        for xs in combinations(range(n), t):
            xm = 0
            for u in xs:
                xm |= 1 << u
            bitset = 0
            for i, rm in enumerate(masks):
                if rm & xm:
                    bitset |= 1 << i
            out.append(bitset)
        return out

    hx = hit_vectors(left_masks, rows, t_left)
    hy = hit_vectors(right_masks, cols, t_right)
    best = None
    for a in hx:
        for bvec in hy:
            both = a & bvec
            total = 0
            while both:
                low = both & -both
                total += nums[low.bit_length() - 1]
                both ^= low
            if best is None or total < best:
                best = total
                if best == 0:
                    return Fraction(0)
    return Fraction(best, den)


# --- Monte-Carlo tester ----------------------------------------------------------

@dataclass(frozen=True)
class HitReport:
    trials: int
    hits: int
    estimated_delta: float
    wilson_interval: tuple  # 95% interval for the hit probability
    strategy: str

    def __post_init__(self):
        if self.hits > self.trials:
            raise ValueError("hits > trials")


def _wilson(hits: int, trials: int, z: float = 1.959963984540054):
    if trials == 0:
        return (0.0, 1.0)
    phat = hits / trials
    z2 = z * z
    denom = 1 + z2 / trials
    center = phat + z2 / (2 * trials)
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials))
    return ((center - half) / denom, (center + half) / denom)


def _report(hits, trials, strategy):
    return HitReport(trials=trials, hits=hits,
                     estimated_delta=1.0 - hits / trials,
                     wilson_interval=_wilson(hits, trials), strategy=strategy)


def test_hitting_mc(dist: HittingDistribution, t_left: int, t_right: int,
                    trials: int, strategy: str = RANDOM_SETS,
                    rng_seed: int = 0) -> HitReport:
    """Per-trial streams from (rng_seed, trial): results are reproducible and
    independent of worker count."""
    if trials < 1:
        raise ValueError("trials >= 1")
    rows, cols = dist.gadget_rows, dist.gadget_cols
    if not (0 < t_left <= rows and 0 < t_right <= cols):
        raise ValueError("set sizes out of range")

    proc = dist.process
    if strategy == RANDOM_SETS and isinstance(proc, _ExpanderProcess):
        split = SPLIT_INDEP if proc.split == FULL_INDEP else SPLIT_POLY10
        hits = mc_random_sets(rows, cols, t_left, t_right, proc.vlist_neighbors,
                              split, proc.hash_n, trials, rng_seed)
        return _report(hits, trials, strategy)

    hits = 0
    for trial in range(trials):
        stream = Stream(rng_seed, trial)
        if strategy == RANDOM_SETS:
            xs = set(stream.subset(rows, t_left))
            ys = set(stream.subset(cols, t_right))
        elif strategy == NEIGHBORHOOD_AVOID:
            if not isinstance(proc, _ExpanderProcess):
                raise DistributionError("NEIGHBORHOOD_AVOID needs a graph-backed distribution")
            xs = _avoid_sample(stream, proc.adjacency, rows, t_left)
            ys = _avoid_sample(stream, proc.adjacency, cols, t_right)
        elif strategy == FIRST_COORD_SLAB:
            if not isinstance(proc, _ExpanderProcess) or proc.labels is None:
                raise DistributionError("FIRST_COORD_SLAB needs labeled vertices")
            xs = _slab_sample(stream, proc.labels, t_left)
            ys = _slab_sample(stream, proc.labels, t_right)
        else:
            raise ValueError(f"unknown strategy {strategy}")
        if dist.sample(stream).hits(xs, ys):
            hits += 1
    return _report(hits, trials, strategy)


# keep pytest from collecting these API names as test functions
test_hitting_exact.__test__ = False
test_hitting_mc.__test__ = False


def _avoid_sample(stream, adjacency, n, t):
    """t vertices preferring the complement of a random vertex's neighborhood."""
    v = stream.below(n)
    banned = set(adjacency[v])
    pool = [u for u in range(n) if u not in banned]
    stream.shuffle(pool)
    picked = pool[:t]
    if len(picked) < t:
        rest = sorted(banned)
        stream.shuffle(rest)
        picked.extend(rest[: t - len(picked)])
    return set(picked)


def _slab_sample(stream, labels, t):
    """All vertices whose first coordinate lies in a random slab set."""
    q = max(lab[0] for lab in labels) + 1
    count = max(1, t // q)
    slab = set(stream.subset(q, count))
    return {v for v, lab in enumerate(labels) if lab[0] in slab}


def delta_curve(dist: HittingDistribution, hs, trials: int,
                strategy: str = RANDOM_SETS, rng_seed: int = 0) -> list:
    """Empirical miss probability per h, with t = ceil(2^-h * side)."""
    rows, cols = dist.gadget_rows, dist.gadget_cols
    out = []
    for h in hs:
        t_left = max(1, -(-rows // (1 << h)))
        t_right = max(1, -(-cols // (1 << h)))
        rep = test_hitting_mc(dist, t_left, t_right, trials, strategy, rng_seed)
        out.append({"h": h, "t_left": t_left, "t_right": t_right,
                    "trials": rep.trials, "hits": rep.hits,
                    "delta": rep.estimated_delta})
    return out


# --- monochromaticity -------------------------------------------------------------

def find_monochromatic_violation(dist: HittingDistribution, gadget: PartialGadget):
    """(rectangle, cell) breaking color purity, or None.  Empty-sided
    rectangles are vacuously monochromatic."""
    if dist.mode != EXACT:
        raise DistributionError("needs EXACT mode")
    if (dist.gadget_rows, dist.gadget_cols) != (gadget.rows, gadget.cols):
        raise DistributionError("gadget dimensions do not match distribution")
    if dist.color is None:
        return None
    for rect, _p in dist.support:
        if not rect.nonempty():
            continue
        for u in rect.left:
            for v in rect.right:
                if gadget.value(u, v) != dist.color:
                    return (rect, (u, v))
    return None


def verify_monochromatic(dist: HittingDistribution, gadget: PartialGadget) -> bool:
    return find_monochromatic_violation(dist, gadget) is None


# --- Disjointness distributions ---------------------------------------------------

def _disj_hash(m: int, k: int) -> str:
    return hashlib.sha256(f"DISJ {m} {k}".encode()).hexdigest()[:16]


def build_disj0_distribution(m: int, k: int) -> HittingDistribution:
    """Uniform over {U_I x U_I : I in [m]}, U_I = k-subsets containing I; color 0."""
    if not 1 <= k or not 100 * k < 99 * m:
        raise DistributionError("need 1 <= k < 0.99 m")
    side = math.comb(m, k)
    groups = [[] for _ in range(m)]
    for rank in range(side):
        for e in unrank_colex(rank, m, k):
            groups[e].append(rank)
    agg = {}
    for ranks in groups:
        rect = Rectangle(ranks, ranks)
        agg[rect] = agg.get(rect, Fraction(0)) + Fraction(1, m)
    support = tuple(sorted(agg.items(), key=lambda rp: rp[0].left))
    return HittingDistribution(side, side, _disj_hash(m, k), color=0, mode=EXACT,
                               support=support, params={"m": m, "k": k})


@dataclass(frozen=True)
class DisjOneRectangle:
    """Implicit 1-monochromatic rectangle U_A x V_A for DISJ^m_k.

    U_A = k-subsets inside A, V_A = k-subsets inside the complement; sides
    have exactly binom(m/2, k) members, far too many to list."""

    m: int
    k: int
    a_side: tuple  # sorted half of [m]

    @property
    def side_size(self) -> int:
        return math.comb(self.m // 2, self.k)

    def contains_left(self, subset) -> bool:
        return set(subset) <= set(self.a_side)

    def contains_right(self, subset) -> bool:
        return not (set(subset) & set(self.a_side))


def disj1_regime(m: int) -> tuple:
    """(h, t) = (ceil(log2(m)/8), ceil(m^(1/7))) from the 1-side analysis."""
    h = 1
    while (1 << (8 * h)) < m:
        h += 1
    r = round(m ** (1 / 7))
    while r ** 7 > m:
        r -= 1
    while (r + 1) ** 7 <= m:
        r += 1
    t = r if r ** 7 == m else r + 1
    return h, t


def sample_disj1_rectangle(m: int, k: int, rng_seed: int, stream_id: int = 0) -> DisjOneRectangle:
    """Uniform half-split A of [m]; returns the implicit rectangle U_A x V_A."""
    if m % 2:
        raise DistributionError("m must be even")
    if k > m // 2:
        raise DistributionError("need k <= m/2")
    if k ** 3 >= m:
        warnings.warn("k >= m^(1/3): outside the analyzed regime", stacklevel=2)
    stream = Stream(rng_seed, stream_id)
    return DisjOneRectangle(m=m, k=k, a_side=tuple(stream.subset(m, m // 2)))


@dataclass(frozen=True)
class Disj1Bound:
    miss_bound: float            # exp(-t/2^h) + distance term
    distance_term: Fraction      # union bound over ordered pairs: k^2 t(t-1)/(m-k)
    distance_term_loose: Fraction  # the displayed k^2 t^2 / (m-k) form


def disj1_failure_bound(m: int, k: int, h: int, t: int) -> Disj1Bound:
    """One-side miss probability bound for the half-split construction."""
    if min(m, k, h, t) < 1 or k >= m:
        raise ValueError("need positive parameters with k < m")
    distance = Fraction(k * k * t * (t - 1), m - k)
    loose = Fraction(k * k * t * t, m - k)
    miss = math.exp(-t / (1 << h)) + float(distance)
    return Disj1Bound(miss_bound=miss, distance_term=distance, distance_term_loose=loose)


def disj_pairwise_overlap_exact(m: int, k: int) -> Fraction:
    """Pr two independent uniform k-subsets of [m] intersect, exactly."""
    return 1 - Fraction(math.comb(m - k, k), math.comb(m, k))


# --- adversarial probe (random s-subsets) ----------------------------------------

@dataclass(frozen=True)
class AdversarialReport:
    trials: int
    s: int
    min_hit: Fraction
    mean_hit: Fraction
    ceiling: Fraction          # 2^(k - 2h + 1)
    all_sides_small: bool      # every support rectangle has a side < s


def _square_log2(dist: HittingDistribution) -> int:
    n = dist.gadget_rows
    if dist.gadget_cols != n or n & (n - 1):
        raise DistributionError("needs a square gadget with power-of-two sides")
    return n.bit_length() - 1


def adversarial_witness_search(gadget: PartialGadget, dist: HittingDistribution,
                               h: int, trials: int, rng_seed: int) -> AdversarialReport:
    """Sample s-subsets X, Y (s = 2^(k-h)) and compute each pair's exact hit mass."""
    if (gadget.rows, gadget.cols) != (dist.gadget_rows, dist.gadget_cols):
        raise DistributionError("gadget does not match distribution")
    if dist.mode != EXACT:
        raise DistributionError("needs EXACT mode")
    k = _square_log2(dist)
    if not 1 <= h <= k:
        raise ValueError("need 1 <= h <= k (s = 2^(k-h) must be a positive integer <= 2^(k-1))")
    n = 1 << k
    s = 1 << (k - h)
    den = dist.common_denominator()
    nums = [int(p * den) for _, p in dist.support]
    total_min = None
    total_sum = Fraction(0)
    for trial in range(trials):
        stream = Stream(rng_seed, trial)
        xs = set(stream.subset(n, s))
        ys = set(stream.subset(n, s))
        mass = sum(w for (rect, _), w in zip(dist.support, nums) if rect.hits(xs, ys))
        frac = Fraction(mass, den)
        total_sum += frac
        if total_min is None or frac < total_min:
            total_min = frac
    small = all(min(len(r.left), len(r.right)) < s for r, _ in dist.support)
    return AdversarialReport(trials=trials, s=s, min_hit=total_min,
                             mean_hit=total_sum / trials,
                             ceiling=Fraction(2) ** (k - 2 * h + 1),
                             all_sides_small=small)


def adversarial_average_exact(dist: HittingDistribution, h: int) -> Fraction:
    """E over uniform s-subsets X, Y of the hit mass, via hypergeometric counts."""
    if dist.mode != EXACT:
        raise DistributionError("needs EXACT mode")
    k = _square_log2(dist)
    if not 1 <= h <= k:
        raise ValueError("need 1 <= h <= k")
    n = 1 << k
    s = 1 << (k - h)
    total_subsets = math.comb(n, s)
    acc = Fraction(0)
    for rect, p in dist.support:
        hit_left = Fraction(total_subsets - math.comb(n - len(rect.left), s), total_subsets)
        hit_right = Fraction(total_subsets - math.comb(n - len(rect.right), s), total_subsets)
        acc += p * hit_left * hit_right
    return acc


# --- sparsifier and support bound --------------------------------------------------

def sparsify(dist: HittingDistribution, c: int, rng_seed: int) -> HittingDistribution:
    """Uniform distribution on c * 2^ceil(log2 side) rectangles drawn i.i.d. from dist."""
    if dist.mode != EXACT:
        raise DistributionError("sparsify needs EXACT mode")
    if c < 1:
        raise ValueError("c >= 1")
    side = max(dist.gadget_rows, dist.gadget_cols)
    count = c * (1 << (side - 1).bit_length())
    stream = Stream(rng_seed)
    tally = {}
    for _ in range(count):
        rect = dist.sample(stream)
        tally[rect] = tally.get(rect, 0) + 1
    support = tuple(sorted(((r, Fraction(n, count)) for r, n in tally.items()),
                           key=lambda rp: (rp[0].left, rp[0].right)))
    params = dict(dist.params)
    params.update({"sparsified_from": dist.gadget_hash, "c": c, "draws": count,
                   "seed": rng_seed})
    return HittingDistribution(dist.gadget_rows, dist.gadget_cols, dist.gadget_hash,
                               color=dist.color, mode=EXACT, support=support,
                               params=params)


@dataclass(frozen=True)
class SupportBoundResult:
    ok: bool
    violated_side: int = None  # color whose support is too small
    sizes: tuple = None
    required: int = 0

    def __bool__(self):
        return self.ok


def support_lower_bound_check(dist0: HittingDistribution, dist1: HittingDistribution,
                              h: int) -> SupportBoundResult:
    """If both are claimed (δ<1, h)-hitting, each support must have >= 2^h rectangles."""
    if dist0.color != 0 or dist1.color != 1:
        raise DistributionError("pass the 0-colored then the 1-colored distribution")
    for d in (dist0, dist1):
        if d.mode != EXACT:
            raise DistributionError("needs EXACT mode")
    if (dist0.gadget_rows, dist0.gadget_cols) != (dist1.gadget_rows, dist1.gadget_cols):
        raise DistributionError("distributions target different gadgets")
    required = 1 << max(0, h)
    sizes = (dist0.support_size(), dist1.support_size())
    for b, size in enumerate(sizes):
        if size < required:
            return SupportBoundResult(False, violated_side=b, sizes=sizes, required=required)
    return SupportBoundResult(True, sizes=sizes, required=required)


# --- simulation-theorem bound calculators -------------------------------------------

def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))  # decimal reading: 0.1 -> 1/10
    return Fraction(x)


def simulation_bound(h: int, n: int, eps) -> Fraction:
    """eps*h/4 when h >= 6/eps and n <= 2^(h(1-eps)); None when inapplicable."""
    if h <= 0 or n <= 0:
        raise ValueError("need positive h and n")
    eps = _as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    if h * eps < 6:
        return None
    expo = h * (1 - eps)
    if Fraction(n) ** expo.denominator > Fraction(2) ** expo.numerator:
        return None
    return eps * h / 4


def corollary1_bound(q: int, n: int):
    """(log2(q/n) - 200)/4 when n <= 2^(log2 q - 200); exact when q, n are powers of 2."""
    if q <= 0 or n <= 0:
        raise ValueError("need positive q and n")
    if n << 200 > q:
        return None
    if q & (q - 1) == 0 and n & (n - 1) == 0:
        return Fraction((q.bit_length() - 1) - (n.bit_length() - 1) - 200, 4)
    return (math.log2(q) - math.log2(n) - 200) / 4


# --- text export ----------------------------------------------------------------------

def save_distribution(dist: HittingDistribution, path):
    if dist.mode != EXACT:
        raise DistributionError("only EXACT distributions are listable")
    color = "none" if dist.color is None else str(dist.color)
    keys = " ".join(f"{k}={v}" for k, v in sorted(dist.params.items()))
    with open(path, "w") as fh:
        fh.write(f"HITDIST color={color} mode={dist.mode} "
                 f"gadget={dist.gadget_rows}x{dist.gadget_cols}:{dist.gadget_hash}"
                 f"{' ' + keys if keys else ''}\n")
        for rect, p in dist.support:
            left = " ".join(map(str, rect.left))
            right = " ".join(map(str, rect.right))
            fh.write(f"{left} | {right} | {p.numerator}/{p.denominator}\n")


def load_distribution(path) -> HittingDistribution:
    with open(path) as fh:
        header = fh.readline().split()
        if not header or header[0] != "HITDIST":
            raise DistributionError("bad HITDIST header")
        fields = dict(item.split("=", 1) for item in header[1:])
        dims, ghash = fields.pop("gadget").split(":")
        rows, cols = (int(x) for x in dims.split("x"))
        color_s = fields.pop("color")
        color = None if color_s == "none" else int(color_s)
        fields.pop("mode", None)
        support = []
        for line in fh:
            if not line.strip():
                continue
            left_s, right_s, frac_s = (part.strip() for part in line.split("|"))
            num, den = frac_s.split("/")
            support.append((Rectangle((int(x) for x in left_s.split()),
                                      (int(x) for x in right_s.split())),
                            Fraction(int(num), int(den))))
    return HittingDistribution(rows, cols, ghash, color=color, mode=EXACT,
                               support=tuple(support), params=fields)
