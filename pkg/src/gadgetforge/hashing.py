"""k-wise independent hash family over GF(2^n).

A seed of k*n bits encodes k coefficients of a degree-(k-1) polynomial over
GF(2^n); the hash value is the least-significant bit of the polynomial
evaluated at the input.  For distinct inputs x_1..x_k the evaluation vector
is uniform over GF(2^n)^k (Vandermonde), so each outcome vector of bits has
probability exactly 2^-k over a uniform seed.
"""

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .algebra import gf2n_mul


class HashError(ValueError):
    pass


@dataclass(frozen=True)
class HashFamily:
    n: int  # input bit-length
    k: int  # independence order

    def __post_init__(self):
        if not 1 <= self.n <= 16 or not 1 <= self.k <= 16:
            raise HashError("need 1 <= n, k <= 16")

    @property
    def seed_bits(self) -> int:
        return self.k * self.n

    def coefficients(self, seed: int) -> tuple:
        """Coefficient i sits in bits [i*n, (i+1)*n); hex prints high degree first."""
        if not 0 <= seed < (1 << self.seed_bits):
            raise HashError(f"seed out of range for {self.seed_bits} bits")
        mask = (1 << self.n) - 1
        return tuple((seed >> (i * self.n)) & mask for i in range(self.k))

    def seed_to_hex(self, seed: int) -> str:
        return f"{seed:0{(self.seed_bits + 3) // 4}x}"

    def seed_from_hex(self, text: str) -> int:
        seed = int(text, 16)
        if seed >= 1 << self.seed_bits:
            raise HashError("hex seed too long")
        return seed


def hash_eval(fam: HashFamily, seed: int, x: int) -> int:
    """LSB of the seed polynomial evaluated at x in GF(2^n)."""
    if not 0 <= x < (1 << fam.n):
        raise HashError(f"input {x} out of range for n={fam.n}")
    coeffs = fam.coefficients(seed)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = gf2n_mul(acc, x, fam.n) ^ c
    return acc & 1


def poly_eval_full(fam: HashFamily, seed: int, x: int) -> int:
    """Full GF(2^n) polynomial value (used by the bijectivity tests)."""
    coeffs = fam.coefficients(seed)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = gf2n_mul(acc, x, fam.n) ^ c
    return acc


@dataclass
class KwiseReport:
    ok: bool
    exhaustive: bool
    counterexample: tuple = None  # (xs, outcome bits, count, expected)


def _eval_table(fam: HashFamily, eval_fn) -> np.ndarray:
    seeds = 1 << fam.seed_bits
    points = 1 << fam.n
    table = np.empty((seeds, points), dtype=np.uint8)
    for s in range(seeds):
        for x in range(points):
            table[s, x] = eval_fn(fam, s, x)
    return table


def verify_kwise(fam: HashFamily, eval_fn=None, budget: int = 1 << 24,
                 sample_seeds: int = 1 << 14, sample_tuples: int = 64,
                 rng_seed: int = 0) -> KwiseReport:
    """Check Pr_seed[psi(s, x_i) = b_i for all i] = 2^-k for all distinct tuples.

    Exhaustive when the seed space fits the budget; otherwise a flagged
    statistical pass over sampled seeds and sampled tuples (5 sigma per
    outcome count).
    """
    eval_fn = eval_fn or hash_eval
    seeds = 1 << fam.seed_bits
    points = 1 << fam.n
    if fam.k > points:
        raise HashError("k distinct inputs need k <= 2^n")

    if seeds <= budget:
        weights = np.array([1 << (fam.k - 1 - i) for i in range(fam.k)], dtype=np.int64)
        table = _eval_table(fam, eval_fn).astype(np.int64)
        expected = seeds >> fam.k
        # permuting a tuple permutes the outcome bits, so sorted tuples suffice
        for xs in combinations(range(points), fam.k):
            outcome = table[:, list(xs)] @ weights
            counts = np.bincount(outcome, minlength=1 << fam.k)
            if not (counts == expected).all():
                bad = int(np.argmax(counts != expected))
                return KwiseReport(False, True, (xs, bad, int(counts[bad]), expected))
        return KwiseReport(True, True)

    # sampled fallback: random seeds (bit-draws: the space exceeds 2^64) and
    # random distinct tuples, tolerance 5 sigma per outcome count
    from ._rng import Stream

    stream = Stream(rng_seed)
    draws = [stream.bits(fam.seed_bits) for _ in range(sample_seeds)]
    p = 2.0 ** -fam.k
    sigma = max(1.0, (sample_seeds * p * (1 - p)) ** 0.5)
    for _ in range(sample_tuples):
        xs = tuple(stream.subset(points, fam.k))
        counts = np.zeros(1 << fam.k, dtype=np.int64)
        for s in draws:
            idx = 0
            for x in xs:
                idx = (idx << 1) | eval_fn(fam, s, x)
            counts[idx] += 1
        if np.abs(counts - sample_seeds * p).max() > 5 * sigma:
            bad = int(np.argmax(np.abs(counts - sample_seeds * p)))
            return KwiseReport(False, False, (xs, bad, int(counts[bad]), sample_seeds * p))
    return KwiseReport(True, False)


def verify_marginal_uniform(fam: HashFamily) -> bool:
    """Every fixed input hits 0/1 on exactly half the seeds."""
    seeds = 1 << fam.seed_bits
    for x in range(1 << fam.n):
        ones = sum(hash_eval(fam, s, x) for s in range(seeds))
        if 2 * ones != seeds:
            return False
    return True


def verify_vandermonde_bijection(fam: HashFamily) -> bool:
    """seed -> (p(x_1), ..., p(x_k)) is a bijection for distinct x_i (full values)."""
    seeds = 1 << fam.seed_bits
    points = 1 << fam.n
    for xs in product(range(points), repeat=fam.k):
        if len(set(xs)) != fam.k:
            continue
        seen = set()
        for s in range(seeds):
            seen.add(tuple(poly_eval_full(fam, s, x) for x in xs))
        if len(seen) != seeds:
            return False
    return True
