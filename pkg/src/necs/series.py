"""Exact truncated power series over arbitrary-precision integers.

The series of interest here are dense with integer coefficients:

    M(x) = sum_{k>=1} mu(k) x^k          (the Mobius series)
    A(x) = the reversion of M            (coefficients count the natural
                                          exact covering systems by size)
    A_m(x) = M(A(x)^m)                   (refinement by gcd)
    T(x) = (1 + x - sqrt(1-6x+x^2))/4    (Schroder numbers, counting the
                                          underlying split trees by leaves)
    phi(u) = u/M(u)                      (used for the asymptotic analysis)

Everything is computed with exact integer arithmetic.  A series carries an
explicit truncation order N and stores coefficients 0..N; every operation
takes the requested output order as an explicit argument and refuses to
fabricate coefficients it cannot know.
"""

from __future__ import annotations

from typing import Iterable


class IntSeries:
    """A power series truncated at an explicit order, with int coefficients.

    ``coeffs[k]`` is the coefficient of x^k for 0 <= k <= order.  Values
    beyond the truncation order are unknown, not zero; indexing past the
    order raises.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = tuple(int(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = cs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            else:
                sign = "+" if c > 0 else "-"
                mag = abs(c)
                coef = "" if mag == 1 else f"{mag}*"
                terms.append(f"{sign} {coef}x^{k}" if terms else f"{'-' if c < 0 else ''}{coef}x^{k}")
        body = " ".join(terms) if terms else "0"
        return f"IntSeries({body} + O(x^{self.order + 1}))"

    def truncate(self, n: int) -> "IntSeries":
        """Drop coefficients above order n (n must not exceed the known order)."""
        _require_order(self, n)
        return IntSeries(self.coeffs[: n + 1])

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (order+1 if all zero)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.order + 1


def _require_order(s: IntSeries, n: int) -> None:
    if s.order < n:
        raise ValueError(f"series known only to order {s.order}, need {n}")


def x_series(n: int) -> IntSeries:
    """The series x, truncated at order n >= 1."""
    if n < 1:
        raise ValueError("need order >= 1 to represent x")
    return IntSeries([0, 1] + [0] * (n - 1))


def add(s: IntSeries, r: IntSeries, n: int) -> IntSeries:
    _require_order(s, n)
    _require_order(r, n)
    return IntSeries([s.coeffs[k] + r.coeffs[k] for k in range(n + 1)])


def sub(s: IntSeries, r: IntSeries, n: int) -> IntSeries:
    _require_order(s, n)
    _require_order(r, n)
    return IntSeries([s.coeffs[k] - r.coeffs[k] for k in range(n + 1)])


def mul(s: IntSeries, r: IntSeries, n: int) -> IntSeries:
    """Product truncated at order n (plain convolution; the series are dense)."""
    _require_order(s, n)
    _require_order(r, n)
    a, b = s.coeffs, r.coeffs
    out = [0] * (n + 1)
    # skip leading zero blocks; valuations add under multiplication
    va = s.valuation()
    vb = r.valuation()
    if va + vb > n:
        return IntSeries(out)
    for i in range(va, n - vb + 1):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(vb, n - i + 1):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return IntSeries(out)


def power(s: IntSeries, e: int, n: int) -> IntSeries:
    """s**e truncated at order n, by binary exponentiation."""
    if e < 0:
        raise ValueError("negative powers are not defined for truncated series")
    _require_order(s, n)
    result = IntSeries([1] + [0] * n)
    base = s.truncate(n)
    while e:
        if e & 1:
            result = mul(result, base, n)
        e >>= 1
        if e:
            base = mul(base, base, n)
    return result


def compose(s: IntSeries, r: IntSeries, n: int) -> IntSeries:
    """s(r(x)) truncated at order n; requires r(0) = 0 so the result is finite."""
    _require_order(s, n)
    _require_order(r, n)
    if r.coeffs[0] != 0:
        raise ValueError("composition needs inner series with zero constant term")
    # Horner from the top coefficient down.
    acc = IntSeries([s.coeffs[n]] + [0] * n)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, r, n)
        acc = IntSeries((acc.coeffs[0] + s.coeffs[k],) + acc.coeffs[1:])
    return acc


def derivative(s: IntSeries) -> IntSeries:
    """Formal derivative; the result is known one order less far."""
    if s.order == 0:
        return IntSeries([0])
    return IntSeries([k * s.coeffs[k] for k in range(1, s.order + 1)])


def revert(s: IntSeries, n: int) -> IntSeries:
    """Compositional inverse r with s(r(x)) = x through order n.

    Requires s(0) = 0 and linear coefficient +-1, which makes every r_k an
    integer.  Solved coefficient by coefficient: the order-k equation in
    s(r(x)) = x is linear in r_k with coefficient s_1, everything else
    already known.  Runs in O(n^3) integer multiplications via the table
    q[j][k] = [x^k] r(x)^j.
    """
    _require_order(s, n)
    if s.coeffs[0] != 0:
        raise ValueError("reversion needs zero constant term")
    s1 = s.coeffs[1]
    if s1 not in (1, -1):
        raise ValueError("reversion with integer coefficients needs linear coefficient +-1")
    if n < 1:
        raise ValueError("need order >= 1")

    r = [0] * (n + 1)
    r[1] = s1  # s1 * r1 = 1 and s1 = +-1
    # q[j][k] = [x^k] r(x)^j for the part of r known so far; q[j][k] only
    # involves r_1..r_{k-j+1}, so filling column k before solving r_k is sound.
    q = [[0] * (n + 1) for _ in range(n + 1)]
    q[0][0] = 1
    q[1][1] = r[1]
    for k in range(2, n + 1):
        for j in range(2, k + 1):
            acc = 0
            qprev = q[j - 1]
            for i in range(1, k - j + 2):
                ri = r[i]
                if ri:
                    acc += ri * qprev[k - i]
            q[j][k] = acc
        rhs = 1 if k == 1 else 0
        acc = 0
        for j in range(2, k + 1):
            sj = s.coeffs[j]
            if sj:
                acc += sj * q[j][k]
        r[k] = s1 * (rhs - acc)  # divide by s1 = multiply, since s1^2 = 1
        q[1][k] = r[k]
    return IntSeries(r)


# --- Mobius function -------------------------------------------------------


def mobius_upto(n: int) -> list[int]:
    """mu(0..n) by a linear sieve (mu(0) = 0 by convention)."""
    if n < 0:
        raise ValueError("need n >= 0")
    mu = [0] * (n + 1)
    if n >= 1:
        mu[1] = 1
    composite = bytearray(n + 1)
    primes: list[int] = []
    for i in range(2, n + 1):
        if not composite[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > n:
                break
            composite[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def mobius(n: int) -> int:
    """mu(n) for n >= 1."""
    if n < 1:
        raise ValueError("mu is defined for n >= 1")
    return mobius_upto(n)[n]


def mobius_series(n: int) -> IntSeries:
    """M(x) = sum_{k>=1} mu(k) x^k truncated at order n."""
    if n < 1:
        raise ValueError("need order >= 1")
    return IntSeries(mobius_upto(n))


# --- The named series ------------------------------------------------------


def A_series(n: int) -> IntSeries:
    """Reversion of the Mobius series; coefficient k counts the natural
    exact covering systems with k residue classes."""
    return revert(mobius_series(n), n)


def Am_series(m: int, n: int) -> IntSeries:
    """A_m(x) = M(A(x)^m): size generating series for systems of gcd m."""
    if m < 1:
        raise ValueError("need m >= 1")
    a = A_series(n)
    return compose(mobius_series(n), power(a, m, n), n)


def schroeder_series(n: int) -> IntSeries:
    """Leaf-count series T(x) of rooted ordered trees with no unary vertex.

    Solves 2T^2 - (1+x)T + x = 0 coefficientwise, which keeps everything in
    integers instead of expanding the square root in the closed form.
    """
    if n < 1:
        raise ValueError("need order >= 1")
    t = [0] * (n + 1)
    t[1] = 1
    for k in range(2, n + 1):
        conv = sum(t[i] * t[k - i] for i in range(1, k))
        t[k] = 2 * conv - t[k - 1]
    return IntSeries(t)


def phi_series(n: int) -> IntSeries:
    """phi(u) = u / M(u), the reciprocal of G(u) = sum mu(k) u^{k-1}.

    G has constant term 1, so the reciprocal has exact integer coefficients.
    """
    if n < 0:
        raise ValueError("need order >= 0")
    mu = mobius_upto(n + 1)
    g = [mu[j + 1] for j in range(n + 1)]  # g[j] = mu(j+1), g[0] = 1
    phi = [0] * (n + 1)
    phi[0] = 1
    for k in range(1, n + 1):
        phi[k] = -sum(g[j] * phi[k - j] for j in range(1, k + 1))
    return IntSeries(phi)
