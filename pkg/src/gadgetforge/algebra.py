"""Exact arithmetic: prime fields F_q, quadratic extensions F_{q^2}, GF(2^n).

F_{q^2} is realized as F_q[w]/(w^2 - d) where d is the smallest quadratic
non-residue mod q, so every construction downstream is reproducible from q
alone.  Rational values are `fractions.Fraction` throughout the package.

Also holds the exact binomial inequalities the distribution machinery
leans on (`binomial_fraction_holds`, `binomial_log_gap_holds`).
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

Rational = Fraction  # denominator > 0 and gcd-reduced by construction


class FieldError(ValueError):
    """Bad field parameter or mixed-field operand."""


# deterministic Miller-Rabin, exact for all n < 3.3e24
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _checked_prime(q: int) -> int:
    if not is_prime(q):
        raise FieldError(f"modulus {q} is not prime")
    return q


@dataclass(frozen=True)
class FieldElem:
    """Residue in F_q, q prime."""

    value: int
    q: int

    def __post_init__(self):
        _checked_prime(self.q)
        object.__setattr__(self, "value", self.value % self.q)

    def _coerce(self, other):
        if isinstance(other, int):
            return FieldElem(other, self.q)
        if isinstance(other, FieldElem):
            if other.q != self.q:
                raise FieldError(f"mixed moduli {self.q} and {other.q}")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.value + o.value, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.value - o.value, self.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(o.value - self.value, self.q)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.value * o.value, self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.q)

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0")
        return FieldElem(pow(self.value, -1, self.q), self.q)

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(pow(self.value, e, self.q), self.q)

    def is_square(self) -> bool:
        """Euler criterion in F_q (0 counts as a square)."""
        if self.q == 2:
            raise FieldError("characteristic 2 unsupported for residue tests")
        return self.value == 0 or pow(self.value, (self.q - 1) // 2, self.q) == 1

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FieldElem({self.value} mod {self.q})"


def find_nonresidue(q: int) -> FieldElem:
    """Smallest quadratic non-residue of F_q (q odd prime)."""
    _checked_prime(q)
    if q == 2:
        raise FieldError("q=2 has no non-residue")
    for d in range(2, q):
        if pow(d, (q - 1) // 2, q) == q - 1:
            return FieldElem(d, q)
    raise FieldError(f"no non-residue found for q={q}")  # unreachable for odd primes


@dataclass(frozen=True)
class ExtContext:
    """F_{q^2} = F_q[w]/(w^2 - d), d the smallest non-residue mod q."""

    q: int
    d: int

    @classmethod
    def for_prime(cls, q: int) -> "ExtContext":
        return cls(q=q, d=find_nonresidue(q).value)

    def __post_init__(self):
        _checked_prime(self.q)
        if self.q == 2:
            raise FieldError("quadratic extension needs odd q")
        if pow(self.d, (self.q - 1) // 2, self.q) != self.q - 1:
            raise FieldError(f"d={self.d} is a square mod {self.q}")

    def elem(self, c0: int, c1: int = 0) -> "ExtFieldElem":
        return ExtFieldElem(c0 % self.q, c1 % self.q, self)

    def from_pair(self, pair) -> "ExtFieldElem":
        """(x, y) in F_q^2  ->  x + y*w."""
        return self.elem(pair[0], pair[1])

    def all_elements(self):
        for c0 in range(self.q):
            for c1 in range(self.q):
                yield self.elem(c0, c1)


@dataclass(frozen=True)
class ExtFieldElem:
    """c0 + c1*w in F_{q^2}."""

    c0: int
    c1: int
    ctx: ExtContext

    def _check(self, other):
        if not isinstance(other, ExtFieldElem) or other.ctx != self.ctx:
            raise FieldError("mixed extension contexts")

    def __add__(self, other):
        self._check(other)
        q = self.ctx.q
        return ExtFieldElem((self.c0 + other.c0) % q, (self.c1 + other.c1) % q, self.ctx)

    def __sub__(self, other):
        self._check(other)
        q = self.ctx.q
        return ExtFieldElem((self.c0 - other.c0) % q, (self.c1 - other.c1) % q, self.ctx)

    def __mul__(self, other):
        self._check(other)
        q, d = self.ctx.q, self.ctx.d
        c0 = (self.c0 * other.c0 + self.c1 * other.c1 % q * d) % q
        c1 = (self.c0 * other.c1 + self.c1 * other.c0) % q
        return ExtFieldElem(c0, c1, self.ctx)

    def __neg__(self):
        q = self.ctx.q
        return ExtFieldElem(-self.c0 % q, -self.c1 % q, self.ctx)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def inverse(self) -> "ExtFieldElem":
        # conjugate over norm: (c0 - c1 w) / (c0^2 - d c1^2)
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0")
        q, d = self.ctx.q, self.ctx.d
        norm = (self.c0 * self.c0 - d * self.c1 * self.c1) % q
        ninv = pow(norm, -1, q)
        return ExtFieldElem(self.c0 * ninv % q, -self.c1 * ninv % q, self.ctx)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.elem(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        return f"({self.c0} + {self.c1}w | q={self.ctx.q}, w^2={self.ctx.d})"


def ext_is_square(a: ExtFieldElem) -> bool:
    """True iff a = c^2 for some c in F_{q^2}; Euler criterion at order q^2-1."""
    q = a.ctx.q
    if a.is_zero():
        return True
    p = a ** ((q * q - 1) // 2)
    return p.c0 == 1 and p.c1 == 0


# --- GF(2^n), n <= 16 --------------------------------------------------------

# lowest-weight irreducible reduction polynomial per degree, verified once
# at import by exhaustive trial division
_GF2_REDUCTION = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B,
}


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _poly_irreducible(p: int) -> bool:
    n = p.bit_length() - 1
    for deg in range(1, n // 2 + 1):
        for q in range(1 << deg, 1 << (deg + 1)):
            if _poly_mod(p, q) == 0:
                return False
    return True


for _n, _p in _GF2_REDUCTION.items():
    if _p.bit_length() - 1 != _n or not _poly_irreducible(_p):
        raise AssertionError(f"reduction polynomial table broken at n={_n}")


def gf2n_mul(a: int, b: int, n: int) -> int:
    """Carry-less multiply mod the degree-n reduction polynomial."""
    red = _GF2_REDUCTION[n]
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> n:
            a ^= red
    return acc


@dataclass(frozen=True)
class Gf2nElem:
    """Element of GF(2^n) in polynomial basis, 1 <= n <= 16."""

    bits: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= 16:
            raise FieldError(f"GF(2^n) supported for 1 <= n <= 16, got n={self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise FieldError(f"value {self.bits} out of range for n={self.n}")

    def _check(self, other):
        if not isinstance(other, Gf2nElem) or other.n != self.n:
            raise FieldError("mixed GF(2^n) dimensions")

    def __add__(self, other):
        self._check(other)
        return Gf2nElem(self.bits ^ other.bits, self.n)

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return Gf2nElem(gf2n_mul(self.bits, other.bits, self.n), self.n)

    def inverse(self) -> "Gf2nElem":
        if self.bits == 0:
            raise ZeroDivisionError("inverse of 0")
        # a^(2^n - 2)
        e = (1 << self.n) - 2
        result = Gf2nElem(1, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __repr__(self):
        return f"Gf2nElem(0b{self.bits:0{self.n}b}, n={self.n})"


def gf2n_eval_poly(coeffs, x: Gf2nElem) -> Gf2nElem:
    """Horner evaluation of sum coeffs[i] * x^i in GF(2^n)."""
    if not coeffs:
        raise ValueError("empty coefficient list")
    for c in coeffs:
        x._check(c)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


# --- exact binomial inequalities ---------------------------------------------

def binomial_fraction_holds(m: int, k: int) -> bool:
    """binom(m-k,k)/binom(m,k) >= 1 - k^2/(m-k), exact rationals; needs k <= m/2."""
    if not 1 <= k <= m // 2:
        raise ValueError("need 1 <= k <= m/2")
    lhs = Fraction(math.comb(m - k, k), math.comb(m, k))
    return lhs >= 1 - Fraction(k * k, m - k)


def binomial_log_gap_holds(m: int, k: int) -> bool:
    """log2(binom(m,k)/binom(0.99m,k)) >= 0.01k for k <= 0.99m, m a multiple of 100.

    Checked without floats: ratio >= 2^(k/100)  <=>  ratio^100 >= 2^k.
    """
    if m % 100:
        raise ValueError("m must be a multiple of 100 so 0.99m is an integer")
    m99 = 99 * m // 100
    if not 1 <= k <= m99:
        raise ValueError("need 1 <= k <= 0.99m")
    ratio = Fraction(math.comb(m, k), math.comb(m99, k))
    return ratio ** 100 >= Fraction(2) ** k
