"""Explicit generation of covering systems.

Natural systems are generated duplicate-free by running the counting
recurrence forwards: a system with gcd m >= 2 and size k is the assembly
of a unique m-tuple of smaller systems (its contraction by m), so
looping over compositions of k, coprime gcd tuples with nonzero counts,
and recursively generated pieces emits every system exactly once --
duplicate-freeness comes from the bijection, not from a dedup pass.

General exact covering systems (not necessarily natural) are found by a
complete two-phase backtracking search.  Phase one enumerates candidate
modulus multisets: nondecreasing, exact density sum 1/n_i = 1 (so a
modulus chosen with c slots left on budget r obeys ceil(1/r) <= n <=
floor(c/r)), pairwise non-coprime (disjoint classes always share a
modulus factor), and consistent with the residue strata mod each prime:
the terms p/n over p-divisible moduli must split into p equal groups,
and the classes of any divisibility-maximal modulus form a vanishing
root-of-unity sum, so their multiplicity is a combination of its prime
factors.  Phase two assigns offsets by always branching on the class
that covers the smallest uncovered integer, which visits every solution
along exactly one path.  Disjoint classes of total density one always
cover, so no separate covering check is needed.

Internally systems travel as flat sorted tuples of (modulus, offset)
pairs; CoveringSystem objects are built only at the public boundary.
"""

from __future__ import annotations

import hashlib
import time
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator

from .congruence import CoveringSystem, ResidueClass
from .counting import CountTable, count_size_gcd

Flat = tuple[tuple[int, int], ...]  # sorted ((modulus, offset), ...)

#: piece lists for sizes up to this are materialized and reused
_MEMO_MAX_SIZE = 9


class SearchBudgetExceeded(RuntimeError):
    """The backtracking search ran out of its configured time budget."""


def _to_system(flat: Flat) -> CoveringSystem:
    return CoveringSystem(ResidueClass(n, a) for n, a in flat)


def _compositions_colex(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for last in range(1, total - parts + 2):
        for rest in _compositions_colex(total - last, parts - 1):
            yield rest + (last,)


class _NecsGenerator:
    """Recursive generator for natural systems, memoizing small piece lists."""

    def __init__(self, table: CountTable):
        self.table = table
        self.memo: dict[tuple[int, int], tuple[Flat, ...]] = {}
        # gcd values with nonzero counts, per size
        self.support = {
            j: tuple(m for m in range(1, j + 1) if table.get(j, m) > 0)
            for j in range(1, table.max_size + 1)
        }

    def generate(self, k: int, m: int) -> Iterator[Flat]:
        if not 1 <= m <= k:
            return
        if self.table.get(k, m) == 0:
            return
        if k <= _MEMO_MAX_SIZE:
            yield from self._memoized(k, m)
        else:
            yield from self._fresh(k, m)

    def _memoized(self, k: int, m: int) -> tuple[Flat, ...]:
        got = self.memo.get((k, m))
        if got is None:
            got = tuple(self._fresh(k, m))
            self.memo[k, m] = got
        return got

    def _fresh(self, k: int, m: int) -> Iterator[Flat]:
        if m == 1:
            if k == 1:
                yield ((1, 0),)
            return
        for comp in _compositions_colex(k, m):
            supports = [self.support[j] for j in comp]
            for gcds in self._coprime_tuples(supports):
                yield from self._assemble(comp, gcds, 0, [])

    def _coprime_tuples(self, supports) -> Iterator[tuple[int, ...]]:
        n = len(supports)

        def rec(i: int, g: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if i == n:
                if g == 1:
                    yield acc
                return
            for m in supports[i]:
                yield from rec(i + 1, gcd(g, m), acc + (m,))

        return rec(0, 0, ())

    def _assemble(self, comp, gcds, i, pieces) -> Iterator[Flat]:
        if i == len(comp):
            n = len(comp)
            out = []
            for idx, piece in enumerate(pieces):
                out.extend((n * pn, idx + n * pa) for pn, pa in piece)
            out.sort()
            yield tuple(out)
            return
        for piece in self.generate(comp[i], gcds[i]):
            pieces.append(piece)
            yield from self._assemble(comp, gcds, i + 1, pieces)
            pieces.pop()


def _necs_stream(k: int, m: int | None, table: CountTable | None = None) -> Iterator[Flat]:
    if table is None:
        table = count_size_gcd(k)
    gen = _NecsGenerator(table)
    if m is not None:
        yield from gen.generate(k, m)
    else:
        for mm in range(1, k + 1):
            yield from gen.generate(k, mm)


def enumerate_necs(
    k: int, m: int | None = None, *, ordered: bool = True
) -> Iterator[CoveringSystem]:
    """Every natural exact covering system of size k (and gcd m, if given),
    exactly once.

    With ordered=True (the default) the whole stream is materialized and
    emitted in canonical lexicographic order; ordered=False streams in
    the deterministic recursion order with O(depth) memory.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if m is not None and not 1 <= m <= k:
        raise ValueError("need 1 <= m <= k")
    flats: Iterable[Flat] = _necs_stream(k, m)
    if ordered:
        flats = sorted(flats)
    for flat in flats:
        yield _to_system(flat)


def _canonical_flat(flat: Flat) -> Flat:
    """Lexicographically least translate of a flat system (see
    congruence.canonical_shift; same refinement, tuple-level)."""
    groups: dict[int, list[int]] = {}
    for n, a in flat:
        groups.setdefault(n, []).append(a)
    period = 1
    cands = [0]
    for n in sorted(groups):
        offs = groups[n]
        new_period = period * n // gcd(period, n)
        best_key = None
        survivors: list[int] = []
        for t0 in cands:
            for t in range(t0, new_period, period):
                key = tuple(sorted((o + t) % n for o in offs))
                if best_key is None or key < best_key:
                    best_key, survivors = key, [t]
                elif key == best_key:
                    survivors.append(t)
        period, cands = new_period, survivors
    t = cands[0] if len(cands) == 1 else min(cands)
    return tuple(sorted((n, (a + t) % n) for n, a in flat))


def shift_class_count(k: int) -> int:
    """Number of orbits of the size-k natural systems under translation.

    For k >= 11 only 16-byte digests of the canonical forms are kept
    (about 1.5M systems at k = 12); smaller sizes keep the forms
    themselves so the classes can be audited directly.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if k <= 10:
        return len({_canonical_flat(f) for f in _necs_stream(k, None)})
    seen: set[bytes] = set()
    for flat in _necs_stream(k, None):
        canon = _canonical_flat(flat)
        seen.add(hashlib.blake2b(repr(canon).encode(), digest_size=16).digest())
    return len(seen)


def enumerate_shift_classes(k: int) -> Iterator[CoveringSystem]:
    """One representative per shift class: the lexicographically least
    translate, emitted in canonical lexicographic order."""
    reps = {_canonical_flat(f) for f in _necs_stream(k, None)}
    for flat in sorted(reps):
        yield _to_system(flat)


# --- general exact covering systems (backtracking search) --------------------


@dataclass
class EcsSearchConfig:
    """Bounds for the exact-cover search.

    max_modulus defaults to 2^(k-1), the extremal modulus of the binary
    split chain (the classical bound for disjoint covering systems).
    gcd restricts output to systems with that exact gcd; gcd=1 also
    restricts branching to moduli with at least two distinct prime
    factors, since any prime-power modulus forces its prime into every
    other modulus and hence into the gcd.  gcd=m>=2 restricts branching
    to multiples of m.  budget_seconds aborts the search distinctly via
    SearchBudgetExceeded.
    """

    max_modulus: int | None = None
    budget_seconds: float | None = None
    gcd: int | None = None


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return True  # 1 behaves like one here: it would force gcd > 1 anyway
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
        p += 1
    return True  # prime


def _modulus_multisets(
    k: int, max_mod: int, admissible
) -> Iterator[tuple[int, ...]]:
    """Nondecreasing modulus tuples (n_1 <= ... <= n_k) with sum 1/n_i = 1
    that could be the moduli of an exact cover.

    With moduli nondecreasing, a modulus chosen when c remain on budget r
    satisfies 1/n <= r <= c/n, so ceil(1/r) <= n <= floor(c/r) bounds
    every branch and the enumeration terminates.  Two further necessary
    conditions prune hard: moduli of disjoint classes are pairwise
    non-coprime, and the largest modulus of an exact cover occurs at
    least twice (at a primitive root of unity of the top modulus, the
    offsets of its classes form a vanishing sum, which needs at least two
    terms).
    """
    if k == 1:
        yield (1,)
        return
    if k == 2:
        yield (2, 2)
        return
    values = [n for n in range(2, max_mod + 1) if admissible(n)]
    admissible_set = set(values)
    factors = {n: _prime_factors(n) for n in values}

    def compatible(n: int, distinct: list[int]) -> bool:
        for m in distinct:
            if gcd(n, m) == 1:
                return False
        return True

    # Per-prime stratum state: for p dividing some chosen modulus,
    # strata[p] = [S', M] with S' the chosen density on moduli not
    # divisible by p and M the largest p/n over chosen p-divisible n.
    # Within each residue j mod p the p-divisible classes of an exact
    # cover sum to exactly R_p = 1 - S'_final, so M <= 1 - S' must hold
    # already for the chosen prefix (S' only grows).
    strata: dict[int, list[Fraction]] = {}

    def push_strata(n: int, chosen_density: Fraction) -> list | None:
        """Update stratum state for modulus n; None means infeasible
        (state already rolled back), else an undo token."""
        undo: list = []
        d = Fraction(1, n)
        fs = factors[n] if n in factors else _prime_factors(n)
        ok = True
        for p in fs:
            entry = strata.get(p)
            if entry is None:
                # every earlier modulus missed p
                entry = [chosen_density, Fraction(0)]
                strata[p] = entry
                undo.append((p, None, None))
            term = Fraction(p, n)
            if term > entry[1]:
                undo.append((p, 1, entry[1]))
                entry[1] = term
            if entry[1] > 1 - entry[0]:
                ok = False
        if ok:
            fset = set(fs)
            for p, entry in strata.items():
                if p in fset:
                    continue
                undo.append((p, 0, entry[0]))
                entry[0] += d
                if entry[1] > 1 - entry[0]:
                    ok = False
        if not ok:
            pop_strata(undo)
            return None
        return undo

    def pop_strata(undo: list) -> None:
        for p, slot, old in reversed(undo):
            if slot is None:
                del strata[p]
            else:
                strata[p][slot] = old

    def strata_partition_ok(moduli: list[int]) -> bool:
        """Exact per-prime feasibility: for each prime p, the terms p/n over
        p-divisible moduli must split into p groups, one per residue class
        mod p, each summing exactly R_p = 1 - sum of 1/n over the rest."""
        primes: set[int] = set()
        for n in moduli:
            primes.update(factors[n] if n in factors else _prime_factors(n))
        for p in primes:
            terms: list[Fraction] = []
            other = Fraction(0)
            for n in moduli:
                if n % p == 0:
                    terms.append(Fraction(p, n))
                else:
                    other += Fraction(1, n)
            if not _splits_into_equal_parts(terms, p, 1 - other):
                return False
        return True

    def rec(num: int, den: int, remaining: int, lo_idx: int, acc: list[int], distinct: list[int]):
        # budget num/den > 0 is kept in lowest terms
        if remaining == 2:
            # the final two moduli both equal the overall largest value v:
            # a strictly larger last modulus would be divisibility-maximal
            # with multiplicity one, an impossible vanishing sum
            if (2 * den) % num == 0:
                v = 2 * den // num
                if (
                    v >= acc[-1]
                    and v <= max_mod
                    and v in admissible_set
                    and compatible(v, distinct)
                ):
                    out = acc + [v, v]
                    if _maximal_multiplicities_ok(out) and strata_partition_ok(out):
                        chosen_density = Fraction(den - num, den)
                        undo1 = push_strata(v, chosen_density)
                        if undo1 is not None:
                            undo2 = push_strata(v, chosen_density + Fraction(1, v))
                            if undo2 is not None:
                                yield tuple(out)
                                pop_strata(undo2)
                            pop_strata(undo1)
            return
        n_lo = -(-den // num)
        n_hi = min(max_mod, (remaining * den) // num)
        start = bisect_left(values, n_lo, lo_idx)
        rem1 = remaining - 1
        for idx in range(start, len(values)):
            n = values[idx]
            if n > n_hi:
                break
            if not compatible(n, distinct):
                continue
            # rest = num/den - 1/n, with bounds rem1/max_mod <= rest <= rem1/n
            rnum = num * n - den
            rden = den * n
            if rnum <= 0 or rnum * n > rden * rem1 or rnum * max_mod < rden * rem1:
                continue
            undo = push_strata(n, Fraction(den - num, den))
            if undo is None:
                continue
            g = gcd(rnum, rden)
            acc.append(n)
            fresh = n not in distinct
            if fresh:
                distinct.append(n)
            yield from rec(rnum // g, rden // g, rem1, idx, acc, distinct)
            if fresh:
                distinct.pop()
            acc.pop()
            pop_strata(undo)

    for idx, n in enumerate(values):
        if n > k:  # smallest modulus is at most k (densities average 1/k)
            break
        rnum, rden = n - 1, n
        if rnum * max_mod < rden * (k - 1):
            continue
        undo = push_strata(n, Fraction(0))
        if undo is None:
            continue
        g = gcd(rnum, rden)
        yield from rec(rnum // g, rden // g, k - 1, idx, [n], [n])
        pop_strata(undo)


def _splits_into_equal_parts(items: list[Fraction], parts: int, target: Fraction) -> bool:
    """Can items be partitioned into `parts` groups each summing to target?

    Small exact bin packing (at most as many items as the system has
    classes); bins with equal remaining capacity are interchangeable, so
    only distinct capacities are tried for each item.
    """
    if target < 0 or sum(items) != parts * target:
        return False
    if any(it > target for it in items):
        return False
    # integer scaling keeps the bin arithmetic exact and hashable
    denom = 1
    for it in items + [target]:
        denom = denom * it.denominator // gcd(denom, it.denominator)
    scaled = sorted((int(it * denom) for it in items), reverse=True)
    goal = int(target * denom)
    bins = [goal] * parts

    def place(i: int) -> bool:
        if i == len(scaled):
            return True
        item = scaled[i]
        tried = set()
        for b in range(parts):
            cap = bins[b]
            if cap >= item and cap not in tried:
                tried.add(cap)
                bins[b] = cap - item
                if place(i + 1):
                    bins[b] = cap
                    return True
                bins[b] = cap
        return False

    return place(0)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime_combination(t: int, primes: list[int]) -> bool:
    """Is t a nonnegative integer combination of the given primes?"""
    reach = bytearray(t + 1)
    reach[0] = 1
    for p in primes:
        for v in range(p, t + 1):
            if reach[v - p]:
                reach[v] = 1
    return bool(reach[t])


def _maximal_multiplicities_ok(moduli: list[int]) -> bool:
    """Vanishing-sum necessary condition on a candidate modulus multiset.

    For a divisibility-maximal modulus value v (no other modulus a multiple
    of v), summing z^offset over the classes of modulus v at a primitive
    v-th root of unity z gives zero, and a vanishing sum of t v-th roots of
    unity forces t to be a nonnegative combination of the primes dividing v.
    """
    counts: dict[int, int] = {}
    for n in moduli:
        counts[n] = counts.get(n, 0) + 1
    for v, t in counts.items():
        if v == 1:
            continue
        if any(u != v and u % v == 0 for u in counts):
            continue
        if not _is_prime_combination(t, _prime_factors(v)):
            return False
    return True


def _assign_offsets(moduli: tuple[int, ...], tick) -> Iterator[Flat]:
    """All exact covers with the given modulus multiset, each exactly once.

    The class covering the smallest yet-uncovered integer x is unique in
    any exact cover, so branching over the distinct remaining modulus
    values (offset forced to x mod n) visits every solution along exactly
    one path.  Disjointness (offsets distinct mod pairwise modulus gcds)
    plus the exact total density guarantee coverage at the end.
    """
    counts: dict[int, int] = {}
    for n in moduli:
        counts[n] = counts.get(n, 0) + 1
    values = sorted(counts)
    chosen: list[tuple[int, int]] = []

    def smallest_uncovered(start: int) -> int:
        x = start
        while True:
            if all((x - a) % n != 0 for n, a in chosen):
                return x
            x += 1

    def rec(remaining: int, x_from: int) -> Iterator[Flat]:
        tick()
        if remaining == 0:
            yield tuple(sorted(chosen))
            return
        x = smallest_uncovered(x_from)
        for n in values:
            if counts[n] == 0:
                continue
            a = x % n
            if any((a - aj) % gcd(n, nj) == 0 for nj, aj in chosen):
                continue
            counts[n] -= 1
            chosen.append((n, a))
            yield from rec(remaining - 1, x + 1)
            chosen.pop()
            counts[n] += 1

    yield from rec(len(moduli), 0)


def enumerate_ecs(
    k: int, config: EcsSearchConfig | None = None, *, ordered: bool = True
) -> Iterator[CoveringSystem]:
    """Every exact covering system of size k, exactly once.

    Two phases: enumerate the feasible modulus multisets (nondecreasing,
    exact density budget, per-step bounds ceil(1/r) <= n <= floor(c/r)),
    then assign offsets within each multiset by always branching on the
    class that covers the smallest uncovered integer.  With ordered=True
    the stream is materialized and emitted in canonical lexicographic
    order; ordered=False streams multiset by multiset with O(k) memory.
    May raise SearchBudgetExceeded when a time budget is configured.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    cfg = config or EcsSearchConfig()
    want_gcd = cfg.gcd
    if want_gcd is not None and (want_gcd < 1 or want_gcd > k):
        return
    max_mod = cfg.max_modulus if cfg.max_modulus is not None else 1 << (k - 1)
    deadline = None
    if cfg.budget_seconds is not None:
        deadline = time.monotonic() + cfg.budget_seconds
    ticks = 0

    def tick():
        nonlocal ticks
        ticks += 1
        if deadline is not None and ticks % 1024 == 0 and time.monotonic() > deadline:
            raise SearchBudgetExceeded(f"search for k={k} exceeded {cfg.budget_seconds}s")

    def admissible(n: int) -> bool:
        # a prime-power modulus puts its prime into every other modulus
        # (disjoint classes need non-coprime moduli), hence into the gcd
        if want_gcd == 1 and k >= 2 and _is_prime_power(n):
            return False
        if want_gcd is not None and want_gcd >= 2 and n % want_gcd != 0:
            return False
        return True

    def stream() -> Iterator[Flat]:
        for moduli in _modulus_multisets(k, max_mod, admissible):
            if want_gcd is not None:
                g = 0
                for n in moduli:
                    g = gcd(g, n)
                if g != want_gcd:  # the system gcd is the gcd of its moduli
                    continue
            yield from _assign_offsets(moduli, tick)

    flats: Iterable[Flat] = stream()
    if ordered:
        flats = sorted(flats)
    for flat in flats:
        yield _to_system(flat)


def count_ecs(k: int, config: EcsSearchConfig | None = None) -> int:
    """Number of exact covering systems of size k (honors config bounds)."""
    total = 0
    for _ in enumerate_ecs(k, config):
        total += 1
    return total
