"""Exact arithmetic mod p^N in the Galois ring GR(p^N, r).

Holds the p-adic gamma function (table-backed), Teichmuller lifts, and the
exact-rational floor/fractional identities that the G-function evaluator
and its test oracles consume.  Floating point is forbidden throughout:
the floor identities are exact-arithmetic-fragile.
"""

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DenominatorDivisibleByP,
    HypothesisViolation,
    NonUnitInverse,
    ZeroInput,
)
from .ffield import FqElem

GAMMA_TABLE_CAP = 10**7  # densest gamma table we are willing to hold


def frac(x):
    """Fractional part <x> = x - floor(x) of an exact rational, in [0, 1)."""
    x = Fraction(x)
    return x - math.floor(x)


def a0(x, p: int) -> int:
    """The representative of x mod p in {1, ..., p}."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise DenominatorDivisibleByP(f"{x} is not in Z_{p}")
    v = x.numerator * pow(x.denominator, -1, p) % p
    return p if v == 0 else v


class PadicCtx:
    """GR(p^N, r) tied to a companion FqField (same modulus, lifted).

    Immutable after construction apart from the gamma table, which is
    built once under a lock and then only read.
    """

    def __init__(self, field, N: int):
        if N < 1:
            raise ValueError("precision N must be >= 1")
        self.field = field
        self.p = field.p
        self.r = field.r
        self.q = field.q
        self.N = N
        self.pN = field.p**N
        self.modulus = field.modulus
        self._gamma_table = None
        self._gamma_memo = {}
        self._inv_memo = {}
        self._lock = threading.Lock()

    # -- scalar helpers -------------------------------------------------------

    def inv(self, n: int) -> int:
        """Inverse of the unit n mod p^N, memoized."""
        n %= self.pN
        hit = self._inv_memo.get(n)
        if hit is None:
            hit = self._inv_memo[n] = pow(n, -1, self.pN)
        return hit

    def rational_residue(self, x) -> int:
        """The residue of x in [0, p^N) for x in Z_p."""
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise DenominatorDivisibleByP(f"{x} is not in Z_{self.p}")
        return x.numerator * self.inv(x.denominator) % self.pN

    # -- p-adic gamma ---------------------------------------------------------

    def warm_gamma_table(self):
        """Populate the gamma table; call before any parallel section."""
        if self._gamma_table is None and self.pN <= GAMMA_TABLE_CAP:
            with self._lock:
                if self._gamma_table is None:
                    self._gamma_table = self._build_gamma_table()

    def _build_gamma_table(self):
        # Gamma_p(m+1) = -Gamma_p(m) * (m if p does not divide m else 1)
        p, pN = self.p, self.pN
        table = [0] * pN
        table[0] = 1
        g = 1
        for m in range(pN - 1):
            g = -g * (m if m % p else 1) % pN
            table[m + 1] = g
        return table

    def gamma_at_residue(self, m: int) -> int:
        """Gamma_p(m) mod p^N for the integer residue m in [0, p^N)."""
        if self.pN <= GAMMA_TABLE_CAP:
            if self._gamma_table is None:
                self.warm_gamma_table()
            return self._gamma_table[m]
        hit = self._gamma_memo.get(m)
        if hit is None:
            p, pN = self.p, self.pN
            g = 1
            for j in range(1, m):
                if j % p:
                    g = g * j % pN
            hit = self._gamma_memo[m] = (-1) ** m * g % pN
        return hit

    def gamma(self, x) -> int:
        """Gamma_p(x) mod p^N for x in Q intersect Z_p, as a bare residue."""
        return self.gamma_at_residue(self.rational_residue(x))

    # -- Galois ring elements -------------------------------------------------

    def gr(self, coeffs) -> "GrElem":
        coeffs = tuple(c % self.pN for c in coeffs)
        if len(coeffs) != self.r:
            raise ValueError(f"expected {self.r} coefficients")
        return GrElem(coeffs, self)

    def gr_scalar(self, v: int) -> "GrElem":
        return GrElem((v % self.pN,) + (0,) * (self.r - 1), self)

    def gr_one(self) -> "GrElem":
        return self.gr_scalar(1)

    def gr_from_field(self, x) -> "GrElem":
        """The coefficientwise integer lift of an FqElem."""
        return GrElem(tuple(x.coeffs) + (0,) * (self.r - len(x.coeffs)), self)

    def __repr__(self):
        return f"PadicCtx(p={self.p}, r={self.r}, N={self.N})"


@dataclass(frozen=True)
class PadicInt:
    """A residue in [0, p^N) standing for an element of Z_p."""

    value: int
    ctx: PadicCtx

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.ctx.pN)

    def __int__(self):
        return self.value


def gamma_p(x, ctx: PadicCtx) -> PadicInt:
    """The p-adic gamma function at x in Q intersect Z_p, mod p^N.

    Gamma_p(x) mod p^N depends only on x mod p^N, so the value is the
    finite product Gamma_p(m) at the congruent integer m in [0, p^N).
    """
    return PadicInt(ctx.gamma(x), ctx)


# ---------------------------------------------------------------------------
# Galois ring arithmetic

def _gr_mul(a, b, mod, pN):
    r = len(a)
    if r == 1:
        return (a[0] * b[0] % pN,)
    prod = [0] * (2 * r - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for i in range(2 * r - 2, r - 1, -1):
        c = prod[i] % pN
        if c:
            for j in range(r):
                prod[i - r + j] -= c * mod[j]
        prod[i] = 0
    return tuple(v % pN for v in prod[:r])


class GrElem:
    """Element of GR(p^N, r) as a length-r coefficient tuple mod p^N."""

    __slots__ = ("coeffs", "ctx")

    def __init__(self, coeffs, ctx):
        self.coeffs = coeffs
        self.ctx = ctx

    def is_constant(self):
        return not any(self.coeffs[1:])

    def constant_value(self) -> int:
        return self.coeffs[0]

    def is_unit(self):
        p = self.ctx.p
        return any(c % p for c in self.coeffs)

    def __add__(self, other):
        pN = self.ctx.pN
        return GrElem(
            tuple((a + b) % pN for a, b in zip(self.coeffs, other.coeffs)),
            self.ctx,
        )

    def __sub__(self, other):
        pN = self.ctx.pN
        return GrElem(
            tuple((a - b) % pN for a, b in zip(self.coeffs, other.coeffs)),
            self.ctx,
        )

    def __neg__(self):
        pN = self.ctx.pN
        return GrElem(tuple(-a % pN for a in self.coeffs), self.ctx)

    def __mul__(self, other):
        ctx = self.ctx
        if isinstance(other, int):
            return GrElem(
                tuple(a * other % ctx.pN for a in self.coeffs), ctx
            )
        return GrElem(
            _gr_mul(self.coeffs, other.coeffs, ctx.modulus, ctx.pN), ctx
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        return gr_pow(self, e)

    def inverse(self):
        """Newton lift of the mod-p inverse; requires a unit."""
        if not self.is_unit():
            raise NonUnitInverse("element is divisible by p")
        ctx = self.ctx
        reduced = FqElem(tuple(c % ctx.p for c in self.coeffs), ctx.field)
        y = ctx.gr_from_field(reduced.inverse())
        two = ctx.gr_scalar(2)
        # each Newton step doubles the modulus of agreement
        for _ in range(ctx.N.bit_length() + 1):
            y = y * (two - self * y)
        assert (self * y).coeffs == ctx.gr_one().coeffs, "Newton inversion failed"
        return y

    def __eq__(self, other):
        return (
            isinstance(other, GrElem)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.coeffs, self.ctx.p, self.ctx.N))

    def __repr__(self):
        return f"GrElem({list(self.coeffs)} mod {self.ctx.p}^{self.ctx.N})"


def gr_pow(base: GrElem, e: int) -> GrElem:
    """base^e in GR(p^N, r), square-and-multiply; negative e via inversion."""
    if e < 0:
        return gr_pow(base.inverse(), -e)
    result = base.ctx.gr_one()
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def teichmuller(t, ctx: PadicCtx) -> GrElem:
    """The Teichmuller lift of t in F_q^x: the (q-1)-th root of unity in
    GR(p^N, r) congruent to t mod p, by iterating z -> z^q N times."""
    if t.is_zero():
        raise ZeroInput("omega(0) is excluded; callers handle t = 0 separately")
    z = ctx.gr_from_field(t)
    for _ in range(ctx.N):
        z = gr_pow(z, ctx.q)
    assert gr_pow(z, ctx.q - 1) == ctx.gr_one(), "Teichmuller lift failed"
    return z


# ---------------------------------------------------------------------------
# gamma-product and floor identities (the test oracles of the evaluator)

def product_formula_check(x, m: int, ctx: PadicCtx, field) -> bool:
    """Multiplication-type identity for Gamma_p along the orbit of x.

    Both sides live in GR(p^N, r) because of the Teichmuller factor
    omega(m^((1-x)(1-q))); requires p coprime to m and x(q-1) integral.
    """
    x = Fraction(x)
    if m < 1 or m % ctx.p == 0:
        raise HypothesisViolation("m must be positive and prime to p")
    if (x * (ctx.q - 1)).denominator != 1:
        raise HypothesisViolation("x(q-1) must be an integer")
    q, r = ctx.q, ctx.r
    lhs = 1
    for i in range(r):
        pi = ctx.p**i
        for h in range(m):
            lhs = lhs * ctx.gamma(frac((x + h) / m * pi)) % ctx.pN
    rhs = 1
    for i in range(r):
        pi = ctx.p**i
        rhs = rhs * ctx.gamma(frac(x * pi)) % ctx.pN
        for h in range(1, m):
            rhs = rhs * ctx.gamma(frac(Fraction(h * pi, m))) % ctx.pN
    e = (1 - x) * (1 - q)
    assert e.denominator == 1
    w = teichmuller(field.from_int(m) ** int(e), ctx)
    return ctx.gr_scalar(lhs) == w * rhs


def reflection_check(x, ctx: PadicCtx) -> bool:
    """Gamma_p(x) * Gamma_p(1-x) = (-1)^(a0(x)) mod p^N."""
    x = Fraction(x)
    lhs = ctx.gamma(x) * ctx.gamma(1 - x) % ctx.pN
    return lhs == (-1) ** a0(x, ctx.p) % ctx.pN


def gamma_product_downshift_check(t: int, a: int, ctx: PadicCtx, field) -> bool:
    """Gamma products for the orbit of -t*a/(q-1), downshifted by h/t."""
    if t < 1 or t % ctx.p == 0:
        raise HypothesisViolation("t must be positive and prime to p")
    q, r, p = ctx.q, ctx.r, ctx.p
    nu = Fraction(a, q - 1)
    lhs_scalar = 1
    rhs = 1
    for i in range(r):
        pi = p**i
        lhs_scalar = lhs_scalar * ctx.gamma(frac(-t * nu * pi)) % ctx.pN
        for h in range(1, t):
            lhs_scalar = lhs_scalar * ctx.gamma(frac(Fraction(h * pi, t))) % ctx.pN
        for h in range(t):
            rhs = rhs * ctx.gamma(frac((Fraction(1 + h, t) - nu) * pi)) % ctx.pN
    w = teichmuller(field.from_int(t) ** (-t * a), ctx)
    return w * lhs_scalar == ctx.gr_scalar(rhs)


def gamma_product_upshift_check(t: int, a: int, ctx: PadicCtx, field) -> bool:
    """Companion identity with +t*a/(q-1) and upshift by h/t."""
    if t < 1 or t % ctx.p == 0:
        raise HypothesisViolation("t must be positive and prime to p")
    q, r, p = ctx.q, ctx.r, ctx.p
    nu = Fraction(a, q - 1)
    lhs_scalar = 1
    rhs = 1
    for i in range(r):
        pi = p**i
        lhs_scalar = lhs_scalar * ctx.gamma(frac(t * nu * pi)) % ctx.pN
        for h in range(1, t):
            lhs_scalar = lhs_scalar * ctx.gamma(frac(Fraction(h * pi, t))) % ctx.pN
        for h in range(t):
            rhs = rhs * ctx.gamma(frac((Fraction(h, t) + nu) * pi)) % ctx.pN
    w = teichmuller(field.from_int(t) ** (t * a), ctx)
    return w * lhs_scalar == ctx.gr_scalar(rhs)


def gamma_complement_product_check(a: int, ctx: PadicCtx) -> bool:
    """prod_i Gamma(<(1 - a/(q-1))p^i>) Gamma(<a p^i/(q-1)>) = (-1)^r (-1)^a."""
    if not 0 < a <= ctx.q - 2:
        raise HypothesisViolation("need 0 < a <= q-2")
    nu = Fraction(a, ctx.q - 1)
    lhs = 1
    for i in range(ctx.r):
        pi = ctx.p**i
        lhs = lhs * ctx.gamma(frac((1 - nu) * pi)) % ctx.pN
        lhs = lhs * ctx.gamma(frac(nu * pi)) % ctx.pN
    return lhs == (-1) ** ctx.r * (-1) ** a % ctx.pN


def gamma_half_shift_check(a: int, ctx: PadicCtx) -> bool:
    """The <1/2 +- a/(q-1)> gamma quotient equals (-1)^a off the midpoint."""
    if a == (ctx.q - 1) // 2:
        raise HypothesisViolation("a = (q-1)/2 is excluded")
    nu = Fraction(a, ctx.q - 1)
    half = Fraction(1, 2)
    lhs = 1
    rhs = (-1) ** a % ctx.pN
    for i in range(ctx.r):
        pi = ctx.p**i
        lhs = lhs * ctx.gamma(frac((half - nu) * pi)) % ctx.pN
        lhs = lhs * ctx.gamma(frac((half + nu) * pi)) % ctx.pN
        rhs = rhs * ctx.gamma(frac(half * pi)) ** 2 % ctx.pN
    return lhs == rhs


def floor_negative_multiple_check(d: int, a: int, i: int, p: int, q: int) -> bool:
    """floor(a p^i/(q-1)) + floor(-d a p^i/(q-1)) matches the h/d shift sum."""
    nu = Fraction(a * p**i, q - 1)
    lhs = math.floor(nu) + math.floor(-d * nu)
    rhs = sum(
        math.floor(frac(Fraction(h * p**i, d)) - nu) for h in range(1, d)
    ) - 1
    return lhs == rhs


def floor_positive_multiple_check(l: int, a: int, i: int, p: int, q: int) -> bool:
    """floor(l a p^i/(q-1)) matches the -h/l shift sum."""
    nu = Fraction(a * p**i, q - 1)
    lhs = math.floor(l * nu)
    rhs = sum(
        math.floor(frac(Fraction(-h * p**i, l)) + nu) for h in range(l)
    )
    return lhs == rhs


def floor_halving_check(x, j: int, i: int, p: int, q: int) -> bool:
    """Both halving identities for floor(<x p^i> -+ 2j p^i/(q-1))."""
    x = Fraction(x)
    pi = p**i
    nu = Fraction(j * pi, q - 1)
    minus_ok = math.floor(frac(x * pi) - 2 * nu) == math.floor(
        frac(x / 2 * pi) - nu
    ) + math.floor(frac((1 + x) / 2 * pi) - nu)
    plus_ok = math.floor(frac(x * pi) + 2 * nu) == math.floor(
        frac(x / 2 * pi) + nu
    ) + math.floor(frac((1 + x) / 2 * pi) + nu)
    return minus_ok and plus_ok


def quarter_gamma_product_check(n: int, ctx: PadicCtx) -> bool:
    """Four-gamma product at offsets +-1/4, +-3/4 around n/(q-1) equals 1."""
    q = ctx.q
    if q % 4 != 1:
        raise HypothesisViolation("requires q = 1 mod 4")
    if n in ((q - 1) // 4, 3 * (q - 1) // 4):
        raise HypothesisViolation("n on the quarter points is excluded")
    quarter, three_quarter = Fraction(1, 4), Fraction(3, 4)
    nu = Fraction(n, q - 1)
    s = 0
    num = 1
    den = 1
    for i in range(ctx.r):
        pi = ctx.p**i
        nui = nu * pi
        s -= (
            math.floor(three_quarter - nui)
            + math.floor(quarter + nui)
            + math.floor(three_quarter + nui)
            + math.floor(quarter - nui)
        )
        for c in (quarter + nu, three_quarter - nu, quarter - nu, three_quarter + nu):
            num = num * ctx.gamma(frac(c * pi)) % ctx.pN
        g1 = ctx.gamma(frac(quarter * pi))
        g3 = ctx.gamma(frac(three_quarter * pi))
        den = den * g1 * g1 % ctx.pN * g3 % ctx.pN * g3 % ctx.pN
    if s >= 0:
        return pow(-ctx.p, s, ctx.pN) * num % ctx.pN == den
    return num == pow(-ctx.p, -s, ctx.pN) * den % ctx.pN


def dth_root_gamma_quotient_check(d: int, n: int, ctx: PadicCtx) -> bool:
    """Four-gamma quotient around n/(p-1) for p = -1 mod d equals 1 (q = p)."""
    p = ctx.p
    if ctx.r != 1:
        raise HypothesisViolation("stated over the prime field only")
    if (p + 1) % d != 0:
        raise HypothesisViolation("requires p = -1 mod d")
    nu = Fraction(n, p - 1)
    od = Fraction(1, d)
    lhs = (
        ctx.gamma(frac(-od + nu))
        * ctx.gamma(frac(-(1 - od) + nu))
        % ctx.pN
        * ctx.gamma(frac(od - nu))
        % ctx.pN
        * ctx.gamma(frac((1 - od) - nu))
        % ctx.pN
    )
    rhs = ctx.gamma(od) ** 2 * ctx.gamma(1 - od) ** 2 % ctx.pN
    return lhs == rhs
