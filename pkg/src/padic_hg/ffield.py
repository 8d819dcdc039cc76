"""Exact arithmetic in F_{p^r} with full discrete-log tables.

Fields are built deterministically (lexicographically smallest monic
irreducible modulus, smallest generator) so that every run of the package
produces identical tables.  Point counting over the supported Weierstrass
families is the ground-truth oracle for the trace formulas.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DegreeTooLarge,
    DenominatorDivisibleByP,
    HypothesisViolation,
    NotPrime,
    SingularCurve,
)

TABLE_CAP = 10**6  # largest q for which log tables are built


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    """The global arithmetic context (p, r, q = p^r)."""

    p: int
    r: int
    q: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise NotPrime(f"p = {self.p} is not an odd prime")
        if self.r < 1:
            raise ValueError(f"r = {self.r} must be >= 1")
        if self.q != self.p**self.r:
            raise ValueError("q must equal p^r exactly")


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient tuples, low degree first)

def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mulmod(a, b, mod, p):
    """a*b reduced by the monic polynomial mod, all over F_p."""
    deg = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg + 1):
                prod[i - deg + j] = (prod[i - deg + j] - c * mod[j]) % p
    return tuple(prod[:deg]) + (0,) * (deg - min(len(prod), deg))


def _poly_powmod(base, e, mod, p):
    deg = len(mod) - 1
    result = (1,) + (0,) * (deg - 1)
    base = tuple(base[:deg]) + (0,) * (deg - len(base))
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(tuple(a)), _poly_trim(tuple(b))
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        while len(r) >= len(b):
            c = (r[-1] * inv) % p
            shift = len(r) - len(b)
            for j, bj in enumerate(b):
                r[shift + j] = (r[shift + j] - c * bj) % p
            r = list(_poly_trim(tuple(r)))
            if not r:
                break
        a, b = b, tuple(r)
    return a


def _is_irreducible(f, p):
    """Rabin test: f monic of degree r over F_p."""
    r = len(f) - 1
    if r == 1:
        return True
    x = (0, 1)
    xq = _poly_powmod(x, p**r, f, p)
    lin = list(xq)
    lin[1] = (lin[1] - 1) % p
    if _poly_trim(tuple(lin)):
        return False
    for s in prime_factors(r):
        h = _poly_powmod(x, p ** (r // s), f, p)
        diff = list(h)
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(diff, f, p)) != 1:
            return False
    return True


def _smallest_irreducible(p, r):
    """Lexicographically smallest monic irreducible of degree r over F_p,
    comparing coefficient tuples low degree first."""
    for tail in itertools.product(range(p), repeat=r):
        f = tail + (1,)
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FqElem:
    """Element of F_{p^r} as a residue-polynomial coefficient tuple."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field):
        self.coeffs = coeffs
        self.field = field

    def encode(self):
        """Integer 0..q-1, base-p digits with the constant term lowest."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def is_zero(self):
        return not any(self.coeffs)

    def log(self):
        return self.field.log(self)

    def __add__(self, other):
        f = self.field
        return FqElem(
            tuple((a + b) % f.p for a, b in zip(self.coeffs, other.coeffs)), f
        )

    def __sub__(self, other):
        f = self.field
        return FqElem(
            tuple((a - b) % f.p for a, b in zip(self.coeffs, other.coeffs)), f
        )

    def __neg__(self):
        f = self.field
        return FqElem(tuple((-a) % f.p for a in self.coeffs), f)

    def __mul__(self, other):
        f = self.field
        if self.is_zero() or other.is_zero():
            return f.zero
        return f.exp(f.log(self) + f.log(other))

    def __pow__(self, e):
        f = self.field
        if self.is_zero():
            if e == 0:
                return f.one
            if e < 0:
                raise ZeroDivisionError("0 has no negative powers in F_q")
            return f.zero
        return f.exp(f.log(self) * e)

    def inverse(self):
        return self**-1

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.field.p, self.field.r))

    def __repr__(self):
        return f"FqElem({self.encode()} in F_{self.field.q})"


class FqField:
    """F_{p^r} with modulus, generator, and complete log/exp tables.

    Immutable after construction; all operations are pure reads.
    """

    def __init__(self, p, r):
        if not is_prime(p) or p == 2:
            raise NotPrime(f"p = {p} is not an odd prime")
        if r < 1:
            raise ValueError("r must be >= 1")
        q = p**r
        if q > TABLE_CAP:
            raise DegreeTooLarge(f"q = {q} exceeds table cap {TABLE_CAP}")
        self.p = p
        self.r = r
        self.q = q
        self.ctx = PrimePower(p, r, q)
        self.modulus = _smallest_irreducible(p, r)
        self.zero = FqElem((0,) * r, self)
        self.one = FqElem((1,) + (0,) * (r - 1), self)
        self._build_tables()

    def _decode(self, v):
        coeffs = []
        for _ in range(self.r):
            v, c = divmod(v, self.p)
            coeffs.append(c)
        return tuple(coeffs)

    def _build_tables(self):
        p, q = self.p, self.q
        subgroup_orders = [(q - 1) // s for s in prime_factors(q - 1)]
        gen = None
        for v in range(2, q):
            cand = self._decode(v)
            if all(
                _poly_powmod(cand, m, self.modulus, p) != self.one.coeffs
                for m in subgroup_orders
            ):
                gen = cand
                break
        assert gen is not None, "F_q^x is cyclic; a generator must exist"
        self.generator = FqElem(gen, self)

        exp_table = [0] * (q - 1)
        log_table = {}
        cur = self.one.coeffs
        for k in range(q - 1):
            enc = FqElem(cur, self).encode()
            exp_table[k] = enc
            log_table[enc] = k
            cur = _poly_mulmod(cur, gen, self.modulus, p)
        assert cur == self.one.coeffs, "generator order must be q-1"
        self._exp = exp_table
        self._log = log_table

    # -- element constructors ------------------------------------------------

    def elem(self, v):
        """Element from its 0..q-1 encoding (base-p, constant digit first)."""
        v %= self.q
        return FqElem(self._decode(v), self)

    def from_int(self, n):
        """Image of the rational integer n in the prime subfield."""
        return FqElem((n % self.p,) + (0,) * (self.r - 1), self)

    def from_rational(self, x):
        """Image of a Fraction with denominator prime to p."""
        if x.denominator % self.p == 0:
            raise DenominatorDivisibleByP(
                f"{x} does not reduce mod {self.p}"
            )
        return self.from_int(
            x.numerator * pow(x.denominator, -1, self.p)
        )

    def elements(self):
        return (self.elem(v) for v in range(self.q))

    def units(self):
        return (self.elem(v) for v in range(1, self.q))

    # -- multiplicative structure ---------------------------------------------

    def log(self, x):
        """Discrete log base the fixed generator, in [0, q-2]."""
        if x.is_zero():
            raise ZeroDivisionError("log(0) undefined")
        return self._log[x.encode()]

    def exp(self, k):
        return FqElem(self._decode(self._exp[k % (self.q - 1)]), self)

    def absolute_trace(self, x):
        """tr(x) = x + x^p + ... + x^(p^(r-1)) as an integer in [0, p)."""
        acc = x
        frob = x
        for _ in range(self.r - 1):
            frob = frob**self.p
            acc = acc + frob
        assert not any(acc.coeffs[1:]), "trace must land in F_p"
        return acc.coeffs[0]

    def __repr__(self):
        return f"FqField(p={self.p}, r={self.r})"


@lru_cache(maxsize=None)
def build_field(p: int, r: int) -> FqField:
    """Deterministic F_{p^r}; cached so repeated builds share tables."""
    return FqField(p, r)


def quad_char(x: FqElem) -> int:
    """Quadratic character phi: 0 at 0, else +-1 by discrete-log parity."""
    if x.is_zero():
        return 0
    return 1 if x.field.log(x) % 2 == 0 else -1


# ---------------------------------------------------------------------------
# curves

LEGENDRE = "legendre"
A1A3 = "a1a3"
FG = "fg"
CD = "cd"
WEIERSTRASS = "weierstrass"


@dataclass(frozen=True)
class CurveSpec:
    """One of the supported Weierstrass families over a fixed F_q."""

    family: str
    params: tuple

    @staticmethod
    def legendre(lam):
        # y^2 = x(x-1)(x-lambda); lambda in {0,1} is singular and is
        # reported by count_points, not here.  lambda = -1 is a valid curve
        # (only the +-lambda pairing of the trace theorems excludes it).
        return CurveSpec(LEGENDRE, (lam,))

    @staticmethod
    def a1a3(a1, a3):
        if a1.field.p <= 3:
            raise HypothesisViolation("a1a3 family requires p > 3")
        if a1.is_zero() or a3.is_zero():
            raise HypothesisViolation("a1a3 family requires a1, a3 nonzero")
        return CurveSpec(A1A3, (a1, a3))

    @staticmethod
    def fg(f, g):
        if f.is_zero() or g.is_zero():
            raise HypothesisViolation("fg family requires f, g nonzero")
        return CurveSpec(FG, (f, g))

    @staticmethod
    def cd(c, d):
        if c.field.p <= 3:
            raise HypothesisViolation("cd family requires p > 3")
        if c.is_zero() or d.is_zero():
            raise HypothesisViolation("cd family requires c, d nonzero")
        return CurveSpec(CD, (c, d))

    @staticmethod
    def weierstrass(a1, a2, a3, a4, a6):
        return CurveSpec(WEIERSTRASS, (a1, a2, a3, a4, a6))

    def a_invariants(self, field):
        """(a1, a2, a3, a4, a6) of the long Weierstrass form."""
        z = field.zero
        if self.family == LEGENDRE:
            (lam,) = self.params
            return (z, -(field.one + lam), z, lam, z)
        if self.family == A1A3:
            a1, a3 = self.params
            return (a1, z, a3, z, z)
        if self.family == FG:
            f, g = self.params
            return (z, f, z, g, z)
        if self.family == CD:
            c, d = self.params
            return (z, c, z, z, d)
        return self.params


def _b_invariants(curve, field):
    a1, a2, a3, a4, a6 = curve.a_invariants(field)
    four = field.from_int(4)
    two = field.from_int(2)
    b2 = a1 * a1 + four * a2
    b4 = two * a4 + a1 * a3
    b6 = a3 * a3 + four * a6
    b8 = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def discriminant(curve: CurveSpec, field: FqField) -> FqElem:
    b2, b4, b6, b8 = _b_invariants(curve, field)
    nine = field.from_int(9)
    return (
        -(b2 * b2 * b8)
        - field.from_int(8) * (b4 * b4 * b4)
        - field.from_int(27) * (b6 * b6)
        + nine * b2 * b4 * b6
    )


def count_points(curve: CurveSpec, field: FqField) -> int:
    """#E(F_q) including infinity, via the quadratic-character sum.

    Completing the square (p odd) turns every supported form into
    w^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, so the count is
    1 + sum_x (1 + phi(rhs(x))).
    """
    if discriminant(curve, field).is_zero():
        raise SingularCurve(f"{curve.family} parameters give a singular curve")
    b2, b4, b6, _ = _b_invariants(curve, field)
    four = field.from_int(4)
    two = field.from_int(2)
    c2, c1 = b2, two * b4
    total = 1 + field.q
    for x in field.elements():
        rhs = ((four * x + c2) * x + c1) * x + b6
        total += quad_char(rhs)
    return total


def count_points_exhaustive(curve: CurveSpec, field: FqField) -> int:
    """Independent oracle: enumerate all (x, y) on the long Weierstrass form."""
    if discriminant(curve, field).is_zero():
        raise SingularCurve(f"{curve.family} parameters give a singular curve")
    a1, a2, a3, a4, a6 = curve.a_invariants(field)
    total = 1
    for x in field.elements():
        rhs = ((x + a2) * x + a4) * x + a6
        lin = a1 * x + a3
        for y in field.elements():
            if y * y + lin * y == rhs:
                total += 1
    return total


def trace_of_frobenius(curve: CurveSpec, field: FqField) -> int:
    """a_q = q + 1 - #E(F_q); validated against the Hasse bound."""
    a = field.q + 1 - count_points(curve, field)
    assert a * a <= 4 * field.q, "Hasse bound violated: counting bug"
    return a
