"""Closed-form Hamming weight, activities and average sensitivity of NCFs.

All of these depend only on the layer profile ``(k_1, ..., k_r)``.  Sums are
carried out on signed integers and divided by ``2**(n-1)`` once at the end,
so every value is an exact ``DyadicRational``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from typing import Iterator, Sequence

from .dyadic import DyadicRational
from .errors import BadLayer, InvalidProfile, OutOfScope, TooLarge
from .ncf import LayerProfile


def as_profile(profile) -> LayerProfile:
    if isinstance(profile, LayerProfile):
        return profile
    try:
        return LayerProfile(tuple(profile))
    except TypeError:
        raise InvalidProfile(f"not a layer profile: {profile!r}") from None


def _prefix(ks: Sequence[int]) -> list[int]:
    # prefix[j] = k_1 + ... + k_j, prefix[0] = 0
    return [0, *accumulate(ks)]


def weight_formula(profile, b: int) -> int:
    """Number of ones in the truth table of an NCF with this profile and output bit ``b``."""
    p = as_profile(profile)
    n, c = p.n, _prefix(p.ks)
    w = sum((-1) ** (j - 1) * 2 ** (n - c[j]) for j in range(1, p.r + 1))
    return w if b == 0 else 2**n - w


def _activity_numerator(ks: Sequence[int], l: int) -> int:
    n, c, r = sum(ks), _prefix(ks), len(ks)
    return sum((-1) ** (j - 1) * 2 ** (n - c[j + l - 1]) for j in range(1, r - l + 2))


def activity_formula(profile, l: int) -> DyadicRational:
    """Activity shared by every variable of layer ``l`` (1-based)."""
    p = as_profile(profile)
    if not 1 <= l <= p.r:
        raise BadLayer(f"layer {l} outside 1..{p.r}")
    return DyadicRational(_activity_numerator(p.ks, l), p.n - 1)


def activity_numerators(profile) -> tuple[int, ...]:
    """Per-layer activities scaled by ``2**(n-1)``, as integers.

    Uses ``N_l = 2**(n - c_l) - N_(l+1)``, linear in the number of layers.
    """
    p = as_profile(profile)
    c = _prefix(p.ks)
    out, nxt = [], 0
    for l in range(p.r, 0, -1):
        nxt = 2 ** (p.n - c[l]) - nxt
        out.append(nxt)
    return tuple(reversed(out))


def sensitivity_formula(profile) -> DyadicRational:
    p = as_profile(profile)
    total = sum(k * _activity_numerator(p.ks, l) for l, k in enumerate(p.ks, start=1))
    return DyadicRational(total, p.n - 1)


def sensitivity_bounds(n: int) -> tuple[DyadicRational, DyadicRational]:
    """``(n / 2**(n-1), 2 - 1/2**(n-2))``; the lower bound is attained, the upper is strict."""
    if n < 3:
        raise OutOfScope("the bounds are stated for n >= 3")
    return DyadicRational(n, n - 1), DyadicRational(2 ** (n - 1) - 1, n - 2)


@dataclass(frozen=True)
class SensitivityReport:
    profile: LayerProfile
    per_layer_activity: tuple[DyadicRational, ...]
    average_sensitivity: DyadicRational
    weight_b0: int
    weight_b1: int

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile.ks),
            "per_layer_activity": [a.to_json() for a in self.per_layer_activity],
            "average_sensitivity": self.average_sensitivity.to_json(),
            "weight_b0": self.weight_b0,
            "weight_b1": self.weight_b1,
        }


def report(profile) -> SensitivityReport:
    p = as_profile(profile)
    return SensitivityReport(
        profile=p,
        per_layer_activity=tuple(activity_formula(p, l) for l in range(1, p.r + 1)),
        average_sensitivity=sensitivity_formula(p),
        weight_b0=weight_formula(p, 0),
        weight_b1=weight_formula(p, 1),
    )


def iter_profiles(n: int, r: int | None = None) -> Iterator[LayerProfile]:
    """Valid profiles of ``n`` in lexicographic order, optionally with ``r`` layers."""
    if n == 1:
        if r in (None, 1):
            yield LayerProfile((1,))
        return

    def rec(remaining, prefix):
        if r is not None and len(prefix) == r - 1:
            if remaining >= 2:
                yield prefix + (remaining,)
            return
        for k in range(1, remaining + 1):
            if k == remaining:
                if k >= 2 and r is None:
                    yield prefix + (k,)
            elif remaining - k >= 2:
                yield from rec(remaining - k, prefix + (k,))

    for ks in rec(n, ()):
        yield LayerProfile(ks)


# Conjecture scan.
#
# Swapping the two sums in the sensitivity formula gives
#   2**(n-1) * s = sum_m 2**(n - c_m) * T_m,   T_m = k_m - T_{m-1},  T_0 = 0,
# with c_m the prefix sums.  The tail of that sum depends only on (c_m, T_m), which
# makes the maximum over all compositions a small exact dynamic programme.


def _scan_numerator(ks: Sequence[int]) -> int:
    n, c, t, total = sum(ks), 0, 0, 0
    for k in ks:
        c += k
        t = k - t
        total += t << (n - c)
    return total


def lemma_value(n: int, item: int) -> Fraction:
    if item == 1:
        return Fraction(4, 3) - Fraction(3 + (-1) ** n, 3 * 2**n)
    if item == 2:
        return Fraction(4, 3) - Fraction(9 + 5 * (-1) ** (n - 1), 3 * 2**n)
    if item == 3:
        return Fraction(4, 3) - Fraction(4, 3 * 2**n)
    raise ValueError(item)


def conjectured_max(n: int) -> DyadicRational:
    return DyadicRational.from_fraction(lemma_value(n, 1))


def max_sensitivity_scan(n: int) -> tuple[DyadicRational, list[LayerProfile]]:
    """Exact maximum of the average sensitivity over every valid profile of ``n``,
    with all profiles attaining it (lexicographic order)."""
    if not 3 <= n <= 30:
        raise TooLarge("the scan supports 3 <= n <= 30")
    best, arg = _scan(n)
    return DyadicRational(best, n - 1), [LayerProfile(ks) for ks in arg]


@lru_cache(maxsize=None)
def _scan(n: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    @lru_cache(maxsize=None)
    def tail(c: int, t: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
        # best completion from prefix sum c with alternating sum t
        best, arg = None, []
        for k in range(1, n - c + 1):
            if k == n - c:
                if k < 2:
                    continue
                value, rests = k - t, ((),)
            elif n - c - k >= 2:
                sub, rests = tail(c + k, k - t)
                value = ((k - t) << (n - c - k)) + sub
            else:
                continue
            if best is None or value > best:
                best, arg = value, [(k,) + rest for rest in rests]
            elif value == best:
                arg.extend((k,) + rest for rest in rests)
        return best, tuple(arg)

    best, arg = tail(0, 0)
    return best, tuple(sorted(arg))


def max_sensitivity_bruteforce(n: int) -> tuple[DyadicRational, list[LayerProfile]]:
    """Same as ``max_sensitivity_scan`` by walking all ``2**(n-2)`` profiles."""
    best, arg = -1, []
    for p in iter_profiles(n):
        v = _scan_numerator(p.ks)
        if v > best:
            best, arg = v, [p]
        elif v == best:
            arg.append(p)
    return DyadicRational(best, n - 1), arg


def lemma_profiles(n: int) -> list[tuple[LayerProfile, DyadicRational]]:
    """The special profiles with closed-form sensitivities that apply to ``n``."""
    out = []
    if n >= 3:
        out.append((LayerProfile((1,) * (n - 2) + (2,)), lemma_value(n, 1)))
    if n >= 4:
        out.append((LayerProfile((1,) * (n - 3) + (3,)), lemma_value(n, 2)))
    if n >= 6 and n % 2 == 0:
        out.append((LayerProfile((1,) + (2,) * (n // 2 - 2) + (3,)), lemma_value(n, 3)))
    return [(p, DyadicRational.from_fraction(v)) for p, v in out]


def scan_report(n: int, strict: bool = False) -> dict:
    """Scan result next to the conjectured maximum; ``strict`` raises on a counterexample."""
    best, arg = max_sensitivity_scan(n)
    expected = conjectured_max(n)
    if strict and best != expected:
        raise AssertionError(f"n={n}: scan maximum {best} differs from conjectured {expected}")
    return {
        "n": n,
        "max": best.to_json(),
        "argmax": [list(p.ks) for p in arg],
        "conjectured": expected.to_json(),
        "matches_conjecture": best == expected,
    }
