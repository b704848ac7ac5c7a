"""Counting and listing nested canalizing functions."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Iterator

from .errors import OutOfScope, TooLarge
from .metrics import iter_profiles
from .ncf import LayeredForm, construct_ncf, is_ncf_oracle
from .truthtable import TruthTable, full_mask, zero_mask


@dataclass(frozen=True)
class NcfCount:
    n: int
    r: int | None
    value: int

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "count": self.value}


def multinomial(ks) -> int:
    out = factorial(sum(ks))
    for k in ks:
        out //= factorial(k)
    return out


@lru_cache(maxsize=None)
def _surjections(m: int, j: int) -> int:
    # sum over compositions of m into j positive parts of m! / prod(k!)
    if j == 0:
        return 1 if m == 0 else 0
    return sum(comb(m, k) * _surjections(m - k, j - 1) for k in range(1, m + 1))


def profile_weight_sum(n: int, r: int) -> int:
    """Sum of multinomial(n; k_1..k_r) over valid profiles with ``r`` layers."""
    return sum(comb(n, k) * _surjections(n - k, r - 1) for k in range(2, n - r + 2))


def count_ncf(n: int, r: int | None = None) -> NcfCount:
    """Number of NCFs in ``n`` variables, optionally with layer number ``r``."""
    if n < 2:
        raise OutOfScope("the count formula starts at n = 2")
    if r is not None:
        if not 1 <= r <= n - 1:
            raise OutOfScope(f"layer number must be in 1..{n - 1}")
        return NcfCount(n, r, 2 ** (n + 1) * profile_weight_sum(n, r))
    total = sum(profile_weight_sum(n, rr) for rr in range(1, n))
    return NcfCount(n, None, 2 ** (n + 1) * total)


def count_ncf_by_profiles(n: int, r: int | None = None) -> int:
    """Direct sum over listed profiles; exponential, for cross-checking."""
    return 2 ** (n + 1) * sum(multinomial(p.ks) for p in iter_profiles(n, r))


def count_ncf_recursive(n: int) -> NcfCount:
    """Count via the recursion on the size of the first layer.

    ``a_2 = 8`` and ``a_n = sum_{r=2}^{n-1} C(n, r-1) 2^(r-1) a_(n-r+1) + 2^(n+1)``.
    """
    if n < 2:
        raise OutOfScope("the recursion starts at n = 2")
    return NcfCount(n, None, _recursive(n))


@lru_cache(maxsize=None)
def _recursive(n: int) -> int:
    if n == 2:
        return 8
    return sum(comb(n, r - 1) * 2 ** (r - 1) * _recursive(n - r + 1)
               for r in range(2, n)) + 2 ** (n + 1)


def enumerate_all(n: int) -> Iterator[tuple[LayeredForm, TruthTable]]:
    """Every NCF on ``n`` variables exactly once, as canonical form and table."""
    if not 2 <= n <= 5:
        raise TooLarge("enumerate_all supports 2 <= n <= 5")
    for profile in iter_profiles(n):
        for blocks in _ordered_partitions(tuple(range(1, n + 1)), profile.ks):
            for inputs in product((0, 1), repeat=n):
                it = iter(inputs)
                layers = tuple(tuple((v, next(it)) for v in block) for block in blocks)
                for b in (0, 1):
                    form = LayeredForm(b, layers)
                    yield form, construct_ncf(form)


def _ordered_partitions(items, sizes):
    if not sizes:
        yield ()
        return
    for block in combinations(items, sizes[0]):
        rest = tuple(x for x in items if x not in block)
        for tail in _ordered_partitions(rest, sizes[1:]):
            yield (block,) + tail


def _all_essential(n: int, mask: int) -> bool:
    for i in range(1, n + 1):
        z = zero_mask(n, i)
        if mask & z == (mask >> (1 << (n - i))) & z:
            return False
    return True


def _census_chunk(args) -> int:
    n, start, stop = args
    found = 0
    for mask in range(start, stop):
        if _all_essential(n, mask) and is_ncf_oracle(TruthTable(n, mask)):
            found += 1
    return found


def bruteforce_census(n: int, workers: int = 1) -> NcfCount:
    """Count NCFs by testing every one of the ``2**(2**n)`` truth tables."""
    if not 1 <= n <= 4:
        raise TooLarge("the census scans all tables and supports 1 <= n <= 4")
    total = full_mask(n) + 1
    if workers <= 1:
        return NcfCount(n, None, _census_chunk((n, 0, total)))
    step = -(-total // (workers * 4))
    chunks = [(n, s, min(s + step, total)) for s in range(0, total, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return NcfCount(n, None, sum(pool.map(_census_chunk, chunks)))


def count_table(n: int, r: int | None = None) -> list[NcfCount]:
    """Rows for the CLI: one per layer number, or the single requested one, then the total."""
    if r is not None:
        return [count_ncf(n, r)]
    return [count_ncf(n, rr) for rr in range(1, n)] + [count_ncf(n)]
