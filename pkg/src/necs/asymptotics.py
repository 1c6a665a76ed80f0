"""High-precision evaluation of the Mobius series and its growth constants.

The count a_k of natural exact covering systems of size k grows like
c * gamma^k * k^(-3/2), where, with M(x) = sum mu(k) x^k:

    tau   = the positive zero of M' inside the disc of convergence,
    rho   = M(tau),        gamma = 1/rho,
    d1    = sqrt(-2 M(tau) / M''(tau)),
    c     = d1 / (2 sqrt(pi)) = sqrt(-M(tau) / (2 pi M''(tau))).

Everything here runs on base-10 fixed-point numbers over exact integers
with an explicit rational error bound, so results are reproducible
digit-for-digit and independent of platform float semantics.  Series
evaluations carry certified truncation tails (the coefficients of M have
absolute value at most 1, so tails are geometric once |x| <= 0.71), and
roots are certified by evaluated sign changes over an explicit bracket.

The refinement by gcd uses the same constants: the number of systems of
size k and gcd m grows like m tau^(m-1) M'(tau^m) c gamma^k k^(-3/2),
whose weights over m >= 2 sum to 1 because the Lambert series of the
Mobius function telescopes (sum_m M(x^m) = x, differentiate and put
x = tau where M'(tau) = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable

from .counting import CountTable, count_size_gcd
from .series import mobius_upto

#: series evaluation is restricted to this radius; tails stay geometric
RADIUS_LIMIT = Fraction(71, 100)


# --- fixed-point numbers -----------------------------------------------------


@dataclass(frozen=True)
class FixedReal:
    """mantissa / 10^scale, within error_bound of the value it stands for."""

    mantissa: int
    scale: int
    error_bound: Fraction = Fraction(0)

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError("scale must be nonnegative")
        if self.error_bound < 0:
            raise ValueError("error bound must be nonnegative")

    def value(self) -> Fraction:
        return Fraction(self.mantissa, 10**self.scale)

    def magnitude_bound(self) -> Fraction:
        """Certified upper bound on the absolute value represented."""
        return abs(self.value()) + self.error_bound

    def decimal(self, digits: int | None = None) -> str:
        """Decimal string, truncated toward zero to the requested digits."""
        digits = self.scale if digits is None else digits
        m, s = self.mantissa, self.scale
        if digits < s:
            m = abs(m) // 10 ** (s - digits) * (-1 if m < 0 else 1)
            s = digits
        sign = "-" if m < 0 else ""
        m = abs(m)
        whole, frac = divmod(m, 10**s)
        body = f"{whole}.{frac:0{s}d}" if s else str(whole)
        if digits > s:
            body += "0" * (digits - s) if s else "." + "0" * digits
        return sign + body

    def __repr__(self) -> str:
        return f"FixedReal({self.decimal()}, err<={float(self.error_bound):.2e})"


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b, ties away from zero; b > 0."""
    if a >= 0:
        return (2 * a + b) // (2 * b)
    return -((-2 * a + b) // (2 * b))


def from_fraction(v: Fraction | int, scale: int, error: Fraction = Fraction(0)) -> FixedReal:
    v = Fraction(v)
    m = _round_div(v.numerator * 10**scale, v.denominator)
    rep_err = abs(Fraction(m, 10**scale) - v)
    return FixedReal(m, scale, error + rep_err)


def rescale(x: FixedReal, scale: int) -> FixedReal:
    if scale >= x.scale:
        return FixedReal(x.mantissa * 10 ** (scale - x.scale), scale, x.error_bound)
    m = _round_div(x.mantissa, 10 ** (x.scale - scale))
    err = x.error_bound + abs(Fraction(m, 10**scale) - x.value())
    return FixedReal(m, scale, err)


def fx_add(a: FixedReal, b: FixedReal) -> FixedReal:
    s = max(a.scale, b.scale)
    a, b = rescale(a, s), rescale(b, s)
    return FixedReal(a.mantissa + b.mantissa, s, a.error_bound + b.error_bound)


def fx_sub(a: FixedReal, b: FixedReal) -> FixedReal:
    return fx_add(a, fx_neg(b))


def fx_neg(a: FixedReal) -> FixedReal:
    return FixedReal(-a.mantissa, a.scale, a.error_bound)


def fx_abs(a: FixedReal) -> FixedReal:
    return FixedReal(abs(a.mantissa), a.scale, a.error_bound)


def fx_mul(a: FixedReal, b: FixedReal, scale: int) -> FixedReal:
    exact = a.value() * b.value()
    err = (
        abs(a.value()) * b.error_bound
        + abs(b.value()) * a.error_bound
        + a.error_bound * b.error_bound
    )
    out = from_fraction(exact, scale)
    return FixedReal(out.mantissa, scale, out.error_bound + err)


def fx_div(a: FixedReal, b: FixedReal, scale: int) -> FixedReal:
    """a / b; requires b certifiably nonzero."""
    b_low = abs(b.value()) - b.error_bound
    if b_low <= 0:
        raise ZeroDivisionError("divisor is not certified away from zero")
    exact = a.value() / b.value()
    err = (a.error_bound + abs(exact) * b.error_bound) / b_low
    out = from_fraction(exact, scale)
    return FixedReal(out.mantissa, scale, out.error_bound + err)


def fx_sqrt(a: FixedReal, scale: int) -> FixedReal:
    """Square root; requires a certifiably nonnegative lower bound > 0."""
    v = a.value()
    low = v - a.error_bound
    if low <= 0:
        raise ValueError("sqrt needs a value certified positive")
    num = v.numerator * 10 ** (2 * scale)
    m = isqrt(num // v.denominator)
    rep = Fraction(m, 10**scale)
    rep_err = abs(rep * rep - v) / (2 * rep)  # |sqrt(v) - rep| <= |v - rep^2| / (2 rep)
    prop_err = a.error_bound / (2 * _sqrt_lower(low))
    return FixedReal(m, scale, rep_err + prop_err)


def _sqrt_lower(v: Fraction) -> Fraction:
    """A positive rational lower bound for sqrt(v), v > 0."""
    scale = 10**12
    m = isqrt(v.numerator * scale * scale // v.denominator)
    return Fraction(max(m - 1, 1), scale)


def is_definitely_positive(x: FixedReal) -> bool:
    return x.value() - x.error_bound > 0


def is_definitely_negative(x: FixedReal) -> bool:
    return x.value() + x.error_bound < 0


def pi_fixed(digits: int) -> FixedReal:
    """pi by Machin's formula, pi = 16 atan(1/5) - 4 atan(1/239), with the
    alternating-series tail absorbed into the error bound."""
    w = digits + 10
    unit = 10**w

    def atan_inv(q: int) -> tuple[int, int]:
        total = 0
        qq = q * q
        power = unit // q  # floor of 10^w / q^(2i+1), i = 0
        i = 0
        terms = 0
        while power:
            term = power // (2 * i + 1)
            total += -term if i % 2 else term
            power //= qq
            i += 1
            terms += 1
        return total, terms + 2  # one truncation ulp per term plus tail

    a5, e5 = atan_inv(5)
    a239, e239 = atan_inv(239)
    mant = 16 * a5 - 4 * a239
    err = Fraction(16 * e5 + 4 * e239, unit)
    return rescale(FixedReal(mant, w, err), digits + 4)


# --- certified series evaluation --------------------------------------------

_MU_CACHE: list[int] = []


def _mu(upto: int) -> list[int]:
    global _MU_CACHE
    if len(_MU_CACHE) <= upto:
        _MU_CACHE = mobius_upto(max(upto, 2 * len(_MU_CACHE), 64))
    return _MU_CACHE


def _geom_tails(n: int, r: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Exact tails of the geometric series and its derivatives from k = n+1:
    sum r^k, sum k r^(k-1), sum k(k-1) r^(k-2)."""
    if r == 0:
        return Fraction(0), Fraction(0), Fraction(0)
    one = 1 - r
    rn = r**n
    s0 = rn * r / one
    s1 = (n + 1) * rn / one + rn * r / one**2
    s2 = n * (n + 1) * rn / (r * one) + 2 * (n + 1) * rn / one**2 + 2 * rn * r / one**3
    return s0, s1, s2


# (coefficient multiplier, power shift, tail selector) per series kind:
#   M   = sum mu(k) x^k            M'  = sum k mu(k) x^(k-1)
#   M'' = sum k(k-1) mu(k) x^(k-2) G   = sum mu(k) x^(k-1)
#   G'  = sum (k-1) mu(k) x^(k-2)
_KINDS = {
    "M": (lambda k: 1, 0, lambda n, r: _geom_tails(n, r)[0]),
    "M1": (lambda k: k, 1, lambda n, r: _geom_tails(n, r)[1]),
    "M2": (lambda k: k * (k - 1), 2, lambda n, r: _geom_tails(n, r)[2]),
    "G": (lambda k: 1, 1, lambda n, r: _geom_tails(n - 1, r)[0] if n >= 1 else r / (1 - r)),
    "G1": (lambda k: k - 1, 2, lambda n, r: _geom_tails(n - 1, r)[1]),
}


def _coerce(x, scale: int) -> FixedReal:
    if isinstance(x, FixedReal):
        return rescale(x, scale)
    return from_fraction(Fraction(x), scale)


def _radius_bound(x: FixedReal) -> Fraction:
    r = x.magnitude_bound()
    if r > RADIUS_LIMIT:
        raise ValueError(f"|x| <= {RADIUS_LIMIT} required, got about {float(r):.4f}")
    return r


def _round_up(r: Fraction, places: int = 4) -> Fraction:
    q = 10**places
    return Fraction(-((-r.numerator * q) // r.denominator), q)


def _pick_terms(kind: str, r_up: Fraction, target: Fraction) -> int:
    if r_up == 0:
        return 2
    tail = _KINDS[kind][2]
    n = 4
    while tail(n, r_up) > target:
        n += 8
    return n


def _eval_kind(kind: str, x, digits: int) -> FixedReal:
    """Certified fixed-point sum of the selected Mobius-coefficient series."""
    w = digits + 16
    xf = _coerce(x, w)
    r = _radius_bound(xf)
    r_up = min(_round_up(r), RADIUS_LIMIT)
    target = Fraction(1, 10 ** (digits + 4))
    n = _pick_terms(kind, r_up, target)
    mu = _mu(n)
    coeff, shift, tail_fn = _KINDS[kind]

    unit = 10**w
    xm = xf.mantissa
    xe = int(xf.error_bound * unit) + (1 if xf.error_bound else 0)  # ulps, rounded up
    xa = abs(xm) + xe

    # running power x^(k - shift), advanced by one multiplication per term;
    # exponent 0 is exactly 1
    k0 = max(1, shift)
    p, pe = (xm, xe) if shift == 0 else (unit, 0)
    acc, acc_e = 0, 0
    for k in range(k0, n + 1):
        if k > k0:
            pe = (xa * pe + abs(p) * xe) // unit + 2
            p = _round_div(p * xm, unit)
        if mu[k]:
            acc += coeff(k) * mu[k] * p
            acc_e += abs(coeff(k)) * pe
    tail = tail_fn(n, r_up)
    return FixedReal(acc, w, Fraction(acc_e, unit) + tail)


def eval_M(x, digits: int) -> FixedReal:
    """M(x) = sum mu(k) x^k with certified truncation and rounding error."""
    return _eval_kind("M", x, digits)


def eval_Mprime(x, digits: int) -> FixedReal:
    return _eval_kind("M1", x, digits)


def eval_Mdoubleprime(x, digits: int) -> FixedReal:
    return _eval_kind("M2", x, digits)


def eval_G(x, digits: int) -> FixedReal:
    """G(u) = M(u)/u as a series; G(0) = 1."""
    return _eval_kind("G", x, digits)


def eval_Gprime(x, digits: int) -> FixedReal:
    return _eval_kind("G1", x, digits)


# --- certified root finding ---------------------------------------------------


def _float_series(kind: str, x: float, terms: int = 260) -> float:
    mu = _mu(terms)
    coeff, shift, _ = _KINDS[kind]
    total = 0.0
    for k in range(max(1, shift), terms + 1):
        if mu[k]:
            total += coeff(k) * mu[k] * x ** (k - shift)
    return total


def _float_seed(kind: str, lo: float, hi: float) -> float:
    """First sign change of the series scanning from lo toward hi, then
    bisected; good to ~1e-12, plenty to seed Newton."""
    steps = 200
    h = (hi - lo) / steps
    prev_x, prev_v = lo, _float_series(kind, lo)
    root_lo = root_hi = None
    for i in range(1, steps + 1):
        x = lo + i * h
        v = _float_series(kind, x)
        if prev_v == 0.0:
            return prev_x
        if v == 0.0 or (v < 0) != (prev_v < 0):
            root_lo, root_hi = prev_x, x
            break
        prev_x, prev_v = x, v
    if root_lo is None:
        raise ArithmeticError(f"no sign change of {kind} in [{lo}, {hi}]")
    f_lo = _float_series(kind, root_lo)
    for _ in range(80):
        mid = (root_lo + root_hi) / 2
        f_mid = _float_series(kind, mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            root_lo, f_lo = mid, f_mid
        else:
            root_hi = mid
    return (root_lo + root_hi) / 2


def _newton_refine(kind: str, dkind: str, seed: float, digits: int) -> int:
    """Newton iteration at escalating precision; returns the root mantissa
    at scale digits (not yet certified)."""
    w = 18
    x = round(seed * 10**w)
    target = digits + 6
    while True:
        w_next = min(2 * w, target)
        x *= 10 ** (w_next - w)
        w = w_next
        for _ in range(2):
            f = _eval_kind(kind, FixedReal(x, w), w - 8).mantissa
            fp = _eval_kind(dkind, FixedReal(x, w), w - 8).mantissa
            # both mantissas share the scale w + 16 used inside _eval_kind
            x -= _round_div(f * 10**w, fp)
        if w == target:
            break
    return _round_div(x, 10 ** (w - digits))


def _certified_root(kind: str, dkind: str, lo: float, hi: float, digits: int) -> FixedReal:
    """Root of the given series with error certified by a sign change over
    the bracket [root - delta, root + delta]."""
    seed = _float_seed(kind, lo, hi)
    scale = digits + 4
    mant = _newton_refine(kind, dkind, seed, scale)
    delta_exp = digits + 2
    while delta_exp >= digits:
        delta = 10 ** (scale - delta_exp)
        left = _eval_kind(kind, FixedReal(mant - delta, scale), digits + 8)
        right = _eval_kind(kind, FixedReal(mant + delta, scale), digits + 8)
        neg_left, pos_left = is_definitely_negative(left), is_definitely_positive(left)
        neg_right, pos_right = is_definitely_negative(right), is_definitely_positive(right)
        if (neg_left and pos_right) or (pos_left and neg_right):
            return FixedReal(mant, scale, Fraction(1, 10**delta_exp))
        delta_exp -= 1  # widen the bracket tenfold and retry
    raise ArithmeticError(f"could not certify the {kind} root to {digits} digits")


def find_tau(digits: int) -> FixedReal:
    """The positive zero of M', certified to the requested digits."""
    return _certified_root("M1", "M2", 0.05, 0.66, digits)


def find_beta(digits: int) -> FixedReal:
    """The negative zero of M', certified to the requested digits."""
    return _certified_root("M1", "M2", -0.05, -0.66, digits)


def find_alpha(digits: int) -> FixedReal:
    """The positive zero of G(u) = M(u)/u: the radius of convergence of
    u/M(u), certified to the requested digits."""
    return _certified_root("G", "G1", 0.05, 0.68, digits)


# --- the growth constants -----------------------------------------------------


@dataclass(frozen=True)
class AsymptoticConstants:
    """Certified values driving the c * gamma^k * k^(-3/2) growth law."""

    tau: FixedReal
    rho: FixedReal
    gamma: FixedReal
    c: FixedReal
    d1: FixedReal
    m2tau: FixedReal

    def as_dict(self) -> dict[str, FixedReal]:
        return {
            "tau": self.tau,
            "rho": self.rho,
            "gamma": self.gamma,
            "c": self.c,
            "d1": self.d1,
            "m2tau": self.m2tau,
        }


def constants(digits: int) -> AsymptoticConstants:
    """tau, rho = M(tau), gamma = 1/rho, d1 = sqrt(-2 rho / M''(tau)),
    c = d1 / (2 sqrt(pi)), and M''(tau), all certified to <= 10^-digits."""
    inner = digits + 8
    scale = digits + 6
    tau = find_tau(inner)
    rho = rescale(eval_M(tau, inner), scale)
    m2 = rescale(eval_Mdoubleprime(tau, inner), scale)
    gamma = fx_div(from_fraction(1, scale), rho, scale)
    two = from_fraction(2, scale)
    d1 = fx_sqrt(fx_div(fx_mul(fx_neg(two), rho, scale), m2, scale), scale)
    sqrt_pi = fx_sqrt(pi_fixed(inner), scale)
    c = fx_div(d1, fx_mul(two, sqrt_pi, scale), scale)
    result = AsymptoticConstants(tau=tau, rho=rho, gamma=gamma, c=c, d1=d1, m2tau=m2)
    limit = Fraction(1, 10**digits)
    for name, v in result.as_dict().items():
        if v.error_bound > limit:
            raise ArithmeticError(f"{name} certified only to {float(v.error_bound):.2e}")
    return result


# --- convergence diagnostics ---------------------------------------------------


@dataclass(frozen=True)
class RatioRow:
    k: int
    ratio: float
    gap: float  # |ratio - target|


@dataclass(frozen=True)
class RatioReport:
    target: float
    rows: tuple[RatioRow, ...]

    def gaps_decreasing(self, k_from: int, k_to: int) -> bool:
        gaps = [row.gap for row in self.rows if k_from <= row.k <= k_to]
        return all(a > b for a, b in zip(gaps, gaps[1:]))


def ratio_check(k_max: int, table: CountTable | None = None) -> RatioReport:
    """a_k * k^(3/2) / gamma^k against its limit c, for k = 1..k_max.

    Counts come from the dynamic-programming table (an independent path
    from the series reversion).
    """
    if table is None or table.max_size < k_max:
        table = count_size_gcd(k_max)
    cs = constants(40)
    gamma = float(cs.gamma.value())
    c = float(cs.c.value())
    rows = []
    for k in range(1, k_max + 1):
        ratio = table.row_sum(k) * k**1.5 / gamma**k
        rows.append(RatioRow(k, ratio, abs(ratio - c)))
    return RatioReport(c, tuple(rows))


def gcd_ratio_check(k_max: int, m: int, table: CountTable | None = None) -> RatioReport:
    """a_{k,m} * k^(3/2) / gamma^k against m tau^(m-1) M'(tau^m) c."""
    if m < 1:
        raise ValueError("need m >= 1")
    if table is None or table.max_size < k_max:
        table = count_size_gcd(k_max)
    cs = constants(40)
    digits = 40
    scale = digits + 6
    tau_pow = from_fraction(1, scale)  # tau^(m-1)
    for _ in range(m - 1):
        tau_pow = fx_mul(tau_pow, cs.tau, scale)
    tau_m = fx_mul(tau_pow, cs.tau, scale)  # tau^m
    weight = fx_mul(
        fx_mul(from_fraction(m, scale), tau_pow, scale),
        eval_Mprime(tau_m, digits),
        scale,
    )
    target = float(fx_mul(weight, cs.c, scale).value())
    gamma = float(cs.gamma.value())
    rows = []
    for k in range(1, k_max + 1):
        ratio = table.get(k, m) * k**1.5 / gamma**k
        rows.append(RatioRow(k, ratio, abs(ratio - target)))
    return RatioReport(target, tuple(rows))


def gcd_weight_sum(m_max: int, digits: int = 30) -> FixedReal:
    """Partial sum over 2 <= m <= m_max of m tau^(m-1) M'(tau^m); tends to 1."""
    scale = digits + 6
    tau = find_tau(digits + 4)
    total = from_fraction(0, scale)
    tau_pow = rescale(tau, scale)  # tau^(m-1) starting at m = 2
    for m in range(2, m_max + 1):
        tau_m = fx_mul(tau_pow, tau, scale)
        term = fx_mul(fx_mul(from_fraction(m, scale), tau_pow, scale),
                      eval_Mprime(tau_m, digits + 4), scale)
        total = fx_add(total, term)
        tau_pow = tau_m
    return total


# --- identity battery ----------------------------------------------------------


@dataclass(frozen=True)
class IdentityResult:
    name: str
    point: str
    residual_bound: Fraction  # certified upper bound on |lhs - rhs|


@dataclass(frozen=True)
class IdentityReport:
    results: tuple[IdentityResult, ...]

    def worst(self) -> Fraction:
        return max(r.residual_bound for r in self.results)


def _lambert_terms(r_up: Fraction, target: Fraction) -> int:
    # |M(y)| <= |y|/(1-|y|) <= 2|y| for |y| <= 1/2, so the tail over m > M
    # is at most 2 sum r^m; r <= 0.71 keeps everything geometric
    m = 4
    while 2 * _geom_tails(m, r_up)[0] > target:
        m += 4
    return m


def _certified_bound(x: FixedReal) -> Fraction:
    return abs(x.value()) + x.error_bound


def identity_checks(digits: int, points: Iterable[Fraction] | None = None) -> IdentityReport:
    """Certified residuals of three Mobius-series identities.

    At every sample point x (default: tau and two rational points):
      lambert:          sum_m M(x^m) = x
      derivative-sum:   sum_m m x^(m-1) M'(x^m) = 1
    and at tau only, where M'(tau) = 0 removes the m = 1 term:
      gcd-weights:      sum_{m>=2} m tau^(m-1) M'(tau^m) = 1
    Truncation points are chosen so the certified tail fits the digit
    budget; each residual bound includes all rounding, input and tail
    error.
    """
    inner = digits + 6
    scale = inner + 8
    tau = find_tau(inner + 4)
    sample = [("tau", rescale(tau, scale))]
    for p in points if points is not None else (Fraction(3, 10), Fraction(1, 2)):
        if not 0 < p < Fraction(3, 5):
            raise ValueError("sample points must lie in (0, 0.6)")
        sample.append((str(p), from_fraction(p, scale)))
    target = Fraction(1, 10 ** (digits + 2))
    results = []
    for label, x in sample:
        r_up = _round_up(x.magnitude_bound())
        m_terms = _lambert_terms(r_up, target)

        lam = fx_neg(x)
        deriv = from_fraction(-1, scale)
        gcdw = from_fraction(-1, scale)
        x_pow = from_fraction(1, scale)  # x^(m-1)
        for m in range(1, m_terms + 1):
            x_m = fx_mul(x_pow, x, scale)
            lam = fx_add(lam, eval_M(x_m, inner))
            dterm = fx_mul(fx_mul(from_fraction(m, scale), x_pow, scale),
                           eval_Mprime(x_m, inner), scale)
            deriv = fx_add(deriv, dterm)
            if label == "tau" and m >= 2:
                gcdw = fx_add(gcdw, dterm)
            x_pow = x_m

        lam_tail = 2 * _geom_tails(m_terms, r_up)[0]
        # |M'(y)| <= 1/(1-|y|)^2 <= 12 on the working disc
        deriv_tail = 12 * _geom_tails(m_terms, r_up)[1]
        results.append(IdentityResult("lambert", label, _certified_bound(lam) + lam_tail))
        results.append(IdentityResult("derivative-sum", label, _certified_bound(deriv) + deriv_tail))
        if label == "tau":
            results.append(
                IdentityResult("gcd-weights", label, _certified_bound(gcdw) + deriv_tail)
            )
    return IdentityReport(tuple(results))
