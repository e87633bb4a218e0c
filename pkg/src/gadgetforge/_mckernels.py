"""Hot loop for Monte-Carlo hitting trials (RANDOM_SETS strategy).

Per trial, a stream derived from (seed, trial index) draws X, Y, a vertex
from the color class, and a neighborhood split; the trial hits when the
split's left part meets X and right part meets Y.  The numba kernel and the
Python twin consume identical u64 sequences, so hit counts are equal on
both backends and independent of how trials are chunked across workers.
"""

import numpy as np

from ._backend import USE_NUMBA
from ._rng import MASK64, Stream
from .algebra import _GF2_REDUCTION, gf2n_mul

SPLIT_INDEP = 0
SPLIT_POLY10 = 1


def _trial_python(state_seed: int, trial: int, rows: int, cols: int,
                  t_left: int, t_right: int, vcount: int, neigh, split_mode: int,
                  hash_n: int) -> bool:
    stream = Stream(state_seed, trial)

    def sample_marks(n, t):
        # virtual partial Fisher-Yates; same draw sequence as the array kernel
        swap = {}
        marks = set()
        for i in range(t):
            j = i + stream.below(n - i)
            marks.add(swap.get(j, j))
            swap[j] = swap.get(i, i)
        return marks

    xmarks = sample_marks(rows, t_left)
    ymarks = sample_marks(cols, t_right)
    vi = stream.below(vcount)
    nv = neigh[vi]
    d = len(nv)
    if split_mode == SPLIT_INDEP:
        word = stream.u64()
        bits = [(word >> j) & 1 for j in range(d)]
    else:
        red = _GF2_REDUCTION[hash_n]
        mask = (1 << hash_n) - 1
        coeffs = [stream.u64() & mask for _ in range(10)]
        bits = []
        for u in nv:
            acc = coeffs[9]
            for c in reversed(coeffs[:9]):
                acc = gf2n_mul(acc, u, hash_n) ^ c
            bits.append(acc & 1)
    hit_left = any(bits[j] == 0 and nv[j] in xmarks for j in range(d))
    hit_right = any(bits[j] == 1 and nv[j] in ymarks for j in range(d))
    return hit_left and hit_right


def _mc_python(rows, cols, t_left, t_right, vlist_neigh, split_mode, hash_n,
               trials, seed) -> int:
    hits = 0
    for trial in range(trials):
        if _trial_python(seed, trial, rows, cols, t_left, t_right,
                         len(vlist_neigh), vlist_neigh, split_mode, hash_n):
            hits += 1
    return hits


if USE_NUMBA:
    from numba import njit

    _U = np.uint64

    @njit(cache=True)
    def _mc_numba(rows, cols, t_left, t_right, neigh, split_mode, hash_n,
                  trials, seed):  # pragma: no cover - compiled
        gamma = _U(0x9E3779B97F4A7C15)
        mix1 = _U(0xBF58476D1CE4E5B9)
        mix2 = _U(0x94D049BB133111EB)

        def mix(z):
            z = (z ^ (z >> _U(30))) * mix1
            z = (z ^ (z >> _U(27))) * mix2
            return z ^ (z >> _U(31))

        vcount = neigh.shape[0]
        d = neigh.shape[1]
        permx = np.empty(rows, dtype=np.int64)
        permy = np.empty(cols, dtype=np.int64)
        xstamp = np.zeros(rows, dtype=np.int64)
        ystamp = np.zeros(cols, dtype=np.int64)
        bits = np.empty(d, dtype=np.int64)
        coeffs = np.empty(10, dtype=np.uint64)
        red = _U(0)
        nmask = _U(0)
        if split_mode == 1:
            reds = [0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B,
                    0x203, 0x409, 0x805, 0x1009, 0x201B, 0x4021, 0x8003, 0x1002B]
            red = _U(reds[hash_n])
            nmask = (_U(1) << _U(hash_n)) - _U(1)

        hits = 0
        for trial in range(trials):
            state = mix(_U(seed) ^ mix(_U(trial) * gamma + _U(1)))
            stamp = trial + 1

            def nxt(st):
                st = st + gamma
                return st, mix(st)

            def below(st, n):
                un = _U(n)
                threshold = (_U(0) - un) % un
                while True:
                    st, r = nxt(st)
                    if r >= threshold:
                        return st, np.int64(r % un)

            for i in range(rows):
                permx[i] = i
            for i in range(t_left):
                state, off = below(state, rows - i)
                j = i + off
                permx[i], permx[j] = permx[j], permx[i]
                xstamp[permx[i]] = stamp
            for i in range(cols):
                permy[i] = i
            for i in range(t_right):
                state, off = below(state, cols - i)
                j = i + off
                permy[i], permy[j] = permy[j], permy[i]
                ystamp[permy[i]] = stamp

            state, vi = below(state, vcount)
            if split_mode == 0:
                state, word = nxt(state)
                for j in range(d):
                    bits[j] = np.int64((word >> _U(j)) & _U(1))
            else:
                for i in range(10):
                    state, w = nxt(state)
                    coeffs[i] = w & nmask
                for j in range(d):
                    x = _U(neigh[vi, j])
                    acc = coeffs[9]
                    for ci in range(8, -1, -1):
                        # carry-less multiply acc * x mod reduction polynomial
                        a = acc
                        b = x
                        prod = _U(0)
                        while b != _U(0):
                            if b & _U(1) != _U(0):
                                prod ^= a
                            b >>= _U(1)
                            a <<= _U(1)
                            if (a >> _U(hash_n)) & _U(1) != _U(0):
                                a ^= red
                        acc = prod ^ coeffs[ci]
                    bits[j] = np.int64(acc & _U(1))

            hit_left = False
            hit_right = False
            for j in range(d):
                u = neigh[vi, j]
                if bits[j] == 0:
                    if xstamp[u] == stamp:
                        hit_left = True
                else:
                    if ystamp[u] == stamp:
                        hit_right = True
            if hit_left and hit_right:
                hits += 1
        return hits


def mc_random_sets(rows: int, cols: int, t_left: int, t_right: int,
                   vlist_neigh, split_mode: int, hash_n: int,
                   trials: int, seed: int) -> int:
    """Hit count over `trials` RANDOM_SETS trials; backend-independent."""
    if USE_NUMBA:
        neigh = np.array(vlist_neigh, dtype=np.int64)
        return int(_mc_numba(rows, cols, t_left, t_right, neigh, split_mode,
                             hash_n, trials, np.uint64(seed & MASK64)))
    return _mc_python(rows, cols, t_left, t_right, vlist_neigh, split_mode,
                      hash_n, trials, seed & MASK64)
