"""The p-adic hypergeometric G-function evaluator over GR(p^N, r).

The defining sum runs over a in [0, q-2]; for each summand the power of
(-p) comes from exact floor bookkeeping and the unit part from quotients
of p-adic gamma values.  Coefficient tables depend only on the parameter
lists and the field, so they are cached and reused across arguments t.

Individual summands may carry a negative power of (-p) for some parameter
lists.  The evaluator measures the worst exponent first and works at a
shifted precision, so every value is exact mod p^N even when intermediate
terms leave Z_p.
"""

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DenominatorDivisibleByP,
    HypothesisViolation,
    NoRepresentative,
    NonConstantResult,
    NonIntegralValue,
    PrecisionUnderflow,
    ZeroArgument,
)
from .ffield import FqElem, FqField, prime_factors
from .padic import PadicCtx, PadicInt, _gr_mul, frac, teichmuller


@dataclass(frozen=True)
class GParams:
    """Parameter rows a_1..a_n / b_1..b_n plus the argument t in F_q^x."""

    top: tuple
    bottom: tuple
    t: FqElem

    def __post_init__(self):
        top = tuple(Fraction(x) for x in self.top)
        bottom = tuple(Fraction(x) for x in self.bottom)
        object.__setattr__(self, "top", top)
        object.__setattr__(self, "bottom", bottom)
        if len(top) != len(bottom) or not top:
            raise ValueError("parameter rows must have equal positive length")
        p = self.t.field.p
        for c in top + bottom:
            if c.denominator % p == 0:
                raise DenominatorDivisibleByP(f"{c} is not in Z_{p}")
        if self.t.is_zero():
            raise ZeroArgument("t = 0 is rejected; no theorem evaluates there")

    @property
    def n(self):
        return len(self.top)


@dataclass(frozen=True)
class GValue:
    """A G-function value mod p^N, optionally lifted to an integer."""

    padic: PadicInt
    integer: int | None
    precision: int


# ---------------------------------------------------------------------------
# kernel: everything that does not depend on the argument t

class _GKernel:
    """Summand coefficients for fixed parameter rows over a fixed field.

    coeffs[a] is the scalar multiplying omega-bar^a(t); the true value is
    (-1/(q-1)) * sum_a coeffs[a] * omega-bar^a(t) divided by (-p)^shift.
    """

    def __init__(self, top, bottom, field, N):
        self.field = field
        self.N = N
        q, p, r = field.q, field.p, field.r
        n = len(top)
        rows = [
            (p**i, ak, bk, frac(ak * p**i), frac(-bk * p**i))
            for ak, bk in zip(top, bottom)
            for i in range(r)
        ]

        # pass 1: the (-p)-exponent of every summand, in pure integers
        floor_rows = [
            (
                ua.numerator * (q - 1), ua.denominator * pi, ua.denominator * (q - 1),
                vb.numerator * (q - 1), vb.denominator * pi, vb.denominator * (q - 1),
            )
            for (pi, _, _, ua, vb) in rows
        ]
        exps = [0] * (q - 1)
        for a in range(q - 1):
            e = 0
            for (un, m1, d1, vn, m2, d2) in floor_rows:
                e -= (un - a * m1) // d1
                e -= (vn + a * m2) // d2
            exps[a] = e
        self.shift = max(0, -min(exps))

        work = PadicCtx(field, N + self.shift)
        work.warm_gamma_table()
        self.work = work
        pNw = work.pN
        nw = work.N

        # pass 2: unit parts.  The gamma argument <(a_k - a/(q-1)) p^i> is
        # (A - a*B)*pi mod MOD over MOD with MOD = d_k (q-1); its residue
        # mod p^N is numerator * MOD^-1.
        gamma_rows = []
        den = 1
        for (pi, ak, bk, ua, vb) in rows:
            mod1 = ak.denominator * (q - 1)
            mod2 = bk.denominator * (q - 1)
            gamma_rows.append(
                (
                    pi,
                    ak.numerator * (q - 1), ak.denominator, mod1, work.inv(mod1),
                    bk.numerator * (q - 1), bk.denominator, mod2, work.inv(mod2),
                )
            )
            den = den * work.gamma(ua) % pNw * work.gamma(vb) % pNw
        inv_den = work.inv(den)

        minus_p_pow = [pow(-p, e, pNw) for e in range(nw)]
        coeffs = [0] * (q - 1)
        gam = work.gamma_at_residue
        for a in range(q - 1):
            e = exps[a] + self.shift
            if e >= nw:
                continue
            c = minus_p_pow[e]
            if (a * n) % 2:
                c = pNw - c
            for (pi, a1, b1, mod1, inv1, a2, b2, mod2, inv2) in gamma_rows:
                num1 = (a1 - a * b1) * pi % mod1
                num2 = (a * b2 - a2) * pi % mod2
                c = c * gam(num1 * inv1 % pNw) % pNw * gam(num2 * inv2 % pNw) % pNw
            coeffs[a] = c * inv_den % pNw
        self.coeffs = coeffs

    def raw_eval(self, t):
        """Return (vec, shift): the value is the GR element vec / (-p)^shift.

        The vector is kept whole because G-values for parameter rows that
        are not closed under multiplication by p mod 1 genuinely live in
        the extension ring, not in Z_p.
        """
        if t.is_zero():
            raise ZeroArgument("t = 0 is rejected")
        work = self.work
        pNw, r, mod = work.pN, work.r, work.modulus
        wbar = teichmuller(t.inverse(), work).coeffs
        acc = [0] * r
        cur = (1,) + (0,) * (r - 1)
        for c in self.coeffs:
            if c:
                for j in range(r):
                    acc[j] += c * cur[j]
            cur = _gr_mul(cur, wbar, mod, pNw)
        lead = -work.inv(self.field.q - 1) % pNw
        return tuple(v * lead % pNw for v in acc), self.shift


_KERNELS = {}
_KERNEL_LOCK = threading.Lock()


def _kernel(top, bottom, field, N):
    key = (top, bottom, field.p, field.r, N)
    kern = _KERNELS.get(key)
    if kern is None:
        with _KERNEL_LOCK:
            kern = _KERNELS.get(key)
            if kern is None:
                kern = _KERNELS[key] = _GKernel(top, bottom, field, N)
    return kern


def _raw_to_residue(raw, p, N):
    """Collapse (vec, shift) to a residue mod p^N.

    The value must be Galois-stable (constant vector) and a p-adic
    integer; each failure has its own error so callers can distinguish
    an evaluator bug from a genuinely non-rational value.
    """
    vec, s = raw
    if any(v % p ** (N + s) for v in vec[1:]):
        raise NonConstantResult(
            "G-value has nonzero extension-ring coordinates"
        )
    T = vec[0]
    if s == 0:
        return T % p**N
    if T % p**s:
        raise NonIntegralValue(
            f"value has p-adic valuation -{s}; not a p-adic integer"
        )
    return (-1) ** s * (T // p**s) % p**N


def _raw_sum_is_zero(terms, p, N):
    """Exact test of sum_j sign_j vec_j/(-p)^(s_j) = 0 mod p^N, in GR."""
    smax = max(s for _, s, _ in terms)
    width = max(len(vec) for vec, _, _ in terms)
    modulus = p ** (N + smax)
    for j in range(width):
        total = 0
        for vec, s, sign in terms:
            total += sign * vec[j] * (-p) ** (smax - s)
        if total % modulus:
            return False
    return True


# ---------------------------------------------------------------------------
# public operations

def evaluate_G(params: GParams, field: FqField, ctx: PadicCtx, bound=None) -> GValue:
    """Evaluate the G-function defined by params over GR(p^N, r).

    The accumulated Galois-ring sum must be constant (Galois stability is
    asserted, not assumed).  If bound is given the symmetric residue with
    absolute value at most bound is attached as .integer.
    """
    if ctx.p != field.p or ctx.r != field.r:
        raise ValueError("field and p-adic context disagree")
    if params.t.field is not field:
        raise ValueError("argument t lives in a different field")
    kern = _kernel(params.top, params.bottom, field, ctx.N)
    value = _raw_to_residue(kern.raw_eval(params.t), field.p, ctx.N)
    integer = None
    if bound is not None:
        integer = _symmetric_lift(value, ctx.pN, bound)
    return GValue(PadicInt(value, ctx), integer, ctx.N)


def _symmetric_lift(residue, pN, bound):
    if pN <= 2 * bound:
        raise PrecisionUnderflow(f"p^N = {pN} cannot separate |m| <= {bound}")
    residue %= pN
    if residue <= bound:
        return residue
    if pN - residue <= bound:
        return residue - pN
    raise NoRepresentative(
        f"no integer of absolute value <= {bound} is congruent to {residue}"
    )


def reconstruct_integer(v: GValue, bound: int) -> int:
    """The unique integer m with |m| <= bound and m = v mod p^N."""
    return _symmetric_lift(v.padic.value, v.padic.ctx.pN, bound)


def choose_precision(q: int, bound: int) -> int:
    """Smallest N with p^N > 2*bound, where p is the prime underlying q."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    p = ps[0]
    N = 1
    while p**N <= 2 * bound:
        N += 1
    return N


def trace_bound(q: int) -> int:
    """Default integer bound for trace sums: 4*sqrt(q) + 4."""
    return 4 * math.isqrt(q) + 4


def check_splitting_identity(a1, a2, a3, a4, x: FqElem, field: FqField,
                             ctx: PadicCtx) -> bool:
    """G[a1,a2;a3,a4](x) + G[a1,a2;a3,a4](-x) against the doubled-length G(x^2).

    Hypotheses: p coprime to all parameter denominators and q = 1 modulo
    their lcm.  Comparison is exact mod p^N even when individual values
    leave Z_p.
    """
    coeffs = tuple(Fraction(c) for c in (a1, a2, a3, a4))
    p, q = field.p, field.q
    d = math.lcm(*(c.denominator for c in coeffs))
    if d % p == 0:
        raise HypothesisViolation("p divides a parameter denominator")
    if (q - 1) % d != 0:
        raise HypothesisViolation(f"q = {q} is not 1 mod {d}")
    if x.is_zero():
        raise ZeroArgument("x = 0 is rejected")
    a1, a2, a3, a4 = coeffs
    top2, bot2 = (a1, a2), (a3, a4)
    top4 = (a1 / 2, (1 + a1) / 2, a2 / 2, (1 + a2) / 2)
    bot4 = (a3 / 2, (1 + a3) / 2, a4 / 2, (1 + a4) / 2)
    k2 = _kernel(top2, bot2, field, ctx.N)
    k4 = _kernel(top4, bot4, field, ctx.N)
    t1, s1 = k2.raw_eval(x)
    t2, s2 = k2.raw_eval(-x)
    t3, s3 = k4.raw_eval(x * x)
    return _raw_sum_is_zero(
        [(t1, s1, 1), (t2, s2, 1), (t3, s3, -1)], p, ctx.N
    )


def check_reduction_identity(a, b, d: int, t: FqElem, p: int, N: int = 3) -> bool:
    """Appending the pair (1/d, (d-1)/d) to both rows over F_p is a no-op
    when p = -1 mod d."""
    field = t.field
    if field.p != p or field.r != 1:
        raise HypothesisViolation("stated over the prime field F_p only")
    if (p + 1) % d != 0:
        raise HypothesisViolation(f"p = {p} is not -1 mod {d}")
    top = tuple(Fraction(c) for c in a)
    bottom = tuple(Fraction(c) for c in b)
    pair = (Fraction(1, d), Fraction(d - 1, d))
    kn = _kernel(top, bottom, field, N)
    kx = _kernel(top + pair, bottom + pair, field, N)
    t1, s1 = kx.raw_eval(t)
    t2, s2 = kn.raw_eval(t)
    return _raw_sum_is_zero([(t1, s1, 1), (t2, s2, -1)], p, N)
