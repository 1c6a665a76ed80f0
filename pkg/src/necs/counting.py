"""Counting natural exact covering systems by size, gcd, and lcm.

Let a(k, m) be the number of natural exact covering systems with k
classes and gcd m.  Contracting by the full gcd puts the systems with
gcd exactly n >= 2 in bijection with n-tuples of systems whose sizes sum
to k and whose gcds are globally coprime, which gives the recurrence

    a(k, n) = sum over compositions j_1+..+j_n = k and tuples
              (m_1..m_n), gcd{m_i} = 1, of  prod a(j_i, m_i),

with base cases a(k, k) = 1 and a(k, 1) = [k = 1].  Enumerating the
tuples is exponential in n, so the coprimality filter is collapsed by
Mobius inversion and the composition sum by polynomial powers:

    a(k, n) = sum_{e >= 1} mu(e) * [x^k] W_e(x)^n,
    W_e(x)  = sum_j ( sum_{e | m} a(j, m) ) x^j.

Only coefficients of W_e below degree k appear in [x^k] W_e^n when
n >= 2, so the table fills row by row.  Row sums reproduce the reversion
of the Mobius series by an independent route.

The same recurrence refines by lcm: each polynomial coefficient becomes
a vector of counts indexed by lcm value and coefficient multiplication
lcm-convolves, since the lcm of an assembled system is n times the lcm
of its pieces' lcms.  For the set of attainable lcm values alone, counts
are unnecessary: reachability over (size, lcm) pairs suffices, because
any p >= 2 systems assemble into one (with p a prime, every nontrivial
system arises this way from the contraction by a prime dividing its gcd).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from math import lcm

from .series import mobius_upto

#: lcm bucket key for counts whose lcm exceeded the configured cap.
OVERFLOW = -1

_CACHE_FORMAT = "necs-count-cache"
_CACHE_VERSION = 1


@dataclass
class CountTable:
    """Counts of natural exact covering systems by (size, gcd).

    entries[(k, m)] holds a(k, m) for 1 <= m <= k <= max_size; absent keys
    read as zero.
    """

    max_size: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def get(self, k: int, m: int) -> int:
        return self.entries.get((k, m), 0)

    def row_sum(self, k: int) -> int:
        """Total count of systems of size k (equals the reversion coefficient)."""
        if not 1 <= k <= self.max_size:
            raise ValueError(f"size {k} outside table range 1..{self.max_size}")
        return sum(self.get(k, m) for m in range(1, k + 1))

    def rows(self):
        for k in range(1, self.max_size + 1):
            for m in range(1, k + 1):
                yield k, m, self.get(k, m)


@dataclass
class LcmCountTable:
    """Counts by (size, gcd, lcm); lcm key OVERFLOW aggregates counts whose
    lcm exceeded lcm_max (None means unbounded, so no overflow)."""

    max_size: int
    lcm_max: int | None
    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def get(self, k: int, m: int, l: int) -> int:
        return self.entries.get((k, m, l), 0)

    @property
    def overflowed(self) -> bool:
        return any(l == OVERFLOW for (_, _, l) in self.entries)

    def marginal(self) -> CountTable:
        """Sum out the lcm dimension; matches count_size_gcd exactly."""
        out = CountTable(self.max_size)
        for (k, m, _), v in self.entries.items():
            out.entries[k, m] = out.entries.get((k, m), 0) + v
        return out

    def rows(self):
        for (k, m, l), v in sorted(self.entries.items()):
            yield k, m, l, v


def count_size_gcd(max_size: int, cache_path: str | None = None) -> CountTable:
    """Fill the (size, gcd) table for all 1 <= m <= k <= max_size.

    With a cache path, previously computed rows are reloaded and the table
    is extended as needed, then saved back.
    """
    if max_size < 1:
        raise ValueError("need max_size >= 1")
    table = _load_cache(cache_path) if cache_path else None
    if table is None:
        table = CountTable(0)
    if table.max_size >= max_size:
        kept = {km: v for km, v in table.entries.items() if km[0] <= max_size}
        return CountTable(max_size, kept)

    mu = mobius_upto(max_size)
    a = table.entries
    for k in range(table.max_size + 1, max_size + 1):
        a[k, 1] = 1 if k == 1 else 0
        if k >= 2:
            a[k, k] = 1
        for n in range(2, k):
            total = 0
            for e in range(1, k // n + 1):
                if mu[e] == 0:
                    continue
                # W_e up to degree k-1; the degree-k coefficient of W_e^n
                # with n >= 2 never touches the (unknown) degree-k entry.
                w = [0] * k
                for j in range(e, k):
                    w[j] = sum(a.get((j, m), 0) for m in range(e, j + 1, e))
                total += mu[e] * _power_coeff(w, n, k)
            a[k, n] = total
    table.max_size = max_size
    if cache_path:
        _save_cache(cache_path, table)
    return table


def _power_coeff(w: list[int], n: int, k: int) -> int:
    """[x^k] of (sum w[j] x^j)^n, by repeated truncated convolution."""
    cur = w[: k + 1] + [0] * (k + 1 - len(w))
    for _ in range(n - 1):
        nxt = [0] * (k + 1)
        for i, wi in enumerate(w):
            if wi == 0:
                continue
            for j in range(k + 1 - i):
                cj = cur[j]
                if cj:
                    nxt[i + j] += wi * cj
        cur = nxt
    return cur[k]


def count_size_gcd_lcm(max_size: int, lcm_max: int | None = None) -> LcmCountTable:
    """Fill the (size, gcd, lcm) table for 1 <= m <= k <= max_size."""
    if max_size < 1:
        raise ValueError("need max_size >= 1")
    mu = mobius_upto(max_size)
    # by_gcd[(k, m)] maps lcm value (or OVERFLOW) to its count
    by_gcd: dict[tuple[int, int], dict[int, int]] = {(1, 1): {1: 1}}
    for k in range(2, max_size + 1):
        by_gcd[k, k] = {_cap(k, lcm_max): 1}
        for n in range(2, k):
            acc: dict[int, int] = {}
            for e in range(1, k // n + 1):
                if mu[e] == 0:
                    continue
                w: list[dict[int, int]] = [dict() for _ in range(k)]
                for j in range(e, k):
                    vec = w[j]
                    for m in range(e, j + 1, e):
                        for l, v in by_gcd.get((j, m), {}).items():
                            vec[l] = vec.get(l, 0) + v
                for l, v in _lcm_power_coeff(w, n, k).items():
                    acc[l] = acc.get(l, 0) + mu[e] * v
            vec = {}
            for l, v in acc.items():
                if v:
                    full_l = OVERFLOW if l == OVERFLOW else _cap(n * l, lcm_max)
                    vec[full_l] = vec.get(full_l, 0) + v
            if vec:
                by_gcd[k, n] = vec
    entries = {
        (k, m, l): v for (k, m), vec in by_gcd.items() for l, v in vec.items() if v
    }
    return LcmCountTable(max_size, lcm_max, entries)


def _cap(l: int, lcm_max: int | None) -> int:
    return OVERFLOW if lcm_max is not None and l > lcm_max else l


def _lcm_power_coeff(w: list[dict[int, int]], n: int, k: int) -> dict[int, int]:
    """Degree-k entry of the n-th power where coefficients are lcm-indexed
    count vectors and coefficient multiplication lcm-convolves."""
    cur: list[dict[int, int]] = [dict(vec) for vec in w] + [dict() for _ in range(k + 1 - len(w))]
    for _ in range(n - 1):
        nxt: list[dict[int, int]] = [dict() for _ in range(k + 1)]
        for i, vec in enumerate(w):
            if not vec:
                continue
            for j in range(k + 1 - i):
                cv = cur[j]
                if not cv:
                    continue
                out = nxt[i + j]
                for l1, v1 in vec.items():
                    for l2, v2 in cv.items():
                        l = OVERFLOW if OVERFLOW in (l1, l2) else lcm(l1, l2)
                        out[l] = out.get(l, 0) + v1 * v2
        cur = nxt
    return cur[k]


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    primes = []
    for p in range(2, n + 1):
        if sieve[p]:
            primes.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = 0
    return primes


def distinct_lcm_values(k: int) -> set[int]:
    """The lcm values attained by natural exact covering systems of size k.

    Reachability only, no counts.  A system of size > 1 contracts by any
    prime p dividing its gcd into p smaller systems; conversely any p
    systems with sizes summing to k assemble into one of size k whose lcm
    is p times the lcm of the piece lcms.  So attainable (size, lcm)
    pairs are generated by t-fold combinations of smaller pairs, read off
    at prime t.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    attained: dict[int, set[int]] = {1: {1}}  # size -> attainable lcms
    for size in range(2, k + 1):
        pieces = [(s, l) for s, ls in attained.items() for l in ls]
        primes = _primes_upto(size)
        found: set[int] = set()
        # combos = t-fold combinations (total size, lcm of lcms); prefix work
        # is shared across the different primes t.
        combos: set[tuple[int, int]] = {(s, l) for s, l in pieces if s < size}
        for t in range(2, primes[-1] + 1):
            nxt: set[tuple[int, int]] = set()
            is_final = t in primes
            for s, l in combos:
                for sj, lj in pieces:
                    s2 = s + sj
                    if s2 > size:
                        continue
                    l2 = lcm(l, lj)
                    if s2 == size:
                        if is_final:
                            found.add(t * l2)
                    else:
                        nxt.add((s2, l2))
            combos = nxt
        attained[size] = found
    return attained[k]


def lcm_value_count(k: int) -> int:
    """How many distinct lcm values occur among systems of size k."""
    return len(distinct_lcm_values(k))


# --- disk cache --------------------------------------------------------------


def _load_cache(path: str) -> CountTable | None:
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("format") != _CACHE_FORMAT or data.get("version") != _CACHE_VERSION:
        raise ValueError(f"unrecognized cache format in {path}")
    entries = {(int(k), int(m)): int(v) for k, m, v in data["counts"]}
    return CountTable(int(data["max_size"]), entries)


def _save_cache(path: str, table: CountTable) -> None:
    payload = {
        "format": _CACHE_FORMAT,
        "version": _CACHE_VERSION,
        "max_size": table.max_size,
        "counts": [[k, m, str(v)] for (k, m), v in sorted(table.entries.items())],
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)
