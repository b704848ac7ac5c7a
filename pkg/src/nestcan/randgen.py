"""Seeded sampling of layer profiles, NCFs and random Boolean networks.

Random streams are numpy ``PCG64`` generators keyed by
``SeedSequence(seed, spawn_key=(tag, *indices))``.  The tag names the purpose
of the stream and the indices name the network and node, so every node of
every network draws from its own stream and parallel generation gives the
same result as a serial run.  Changing this mapping changes every sampled
object; ``STREAM_VERSION`` is recorded in output metadata.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from .enumeration import multinomial, profile_weight_sum
from .errors import InvalidProfile, InvalidRequest
from .metrics import as_profile, iter_profiles
from .ncf import LayeredForm, LayerProfile, construct_ncf

STREAM_VERSION = 1

TAG_NETWORK = 1
TAG_PAIRS = 2
TAG_SAMPLE = 3


def stream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for ``(seed, key)``; same inputs, same stream."""
    ss = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def randbelow(rng: np.random.Generator, bound: int) -> int:
    """Exactly uniform integer in ``[0, bound)`` for arbitrarily large ``bound``."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    if bound <= 2**62:
        return int(rng.integers(0, bound))
    nbits = bound.bit_length()
    nwords = -(-nbits // 64)
    while True:
        words = rng.integers(0, 2**64, size=nwords, dtype=np.uint64)
        value = int.from_bytes(words.tobytes(), "little") >> (nwords * 64 - nbits)
        if value < bound:
            return value


@lru_cache(maxsize=None)
def _tail_weight(m: int, j: int | None) -> int:
    # weighted number of valid layer tails covering m variables (j layers, or any)
    if j is None:
        return sum(profile_weight_sum(m, jj) for jj in range(1, m)) if m >= 2 else 0
    return profile_weight_sum(m, j) if m >= 2 and 1 <= j <= m - 1 else 0


def sample_profile(n: int, r: int | None, rng: np.random.Generator) -> LayerProfile:
    """Draw a profile with probability proportional to its multinomial coefficient.

    That makes the induced NCF uniform over all NCFs in ``n`` variables (or all
    with layer number ``r``).  Parts are drawn one at a time from exact integer
    weights.
    """
    if n < 2 or (r is not None and not 1 <= r <= n - 1):
        raise InvalidRequest(f"no NCF with n={n}, r={r}")
    ks: list[int] = []
    m, j = n, r
    while True:
        options = []
        if j in (None, 1) and m >= 2:
            options.append((m, 1))
        if j is None or j >= 2:
            for k in range(1, m - 1):
                if j is None:
                    w = comb(m, k) * _tail_weight(m - k, None)
                else:
                    # the remaining j-1 layers: any composition, last part >= 2
                    w = comb(m, k) * _tail_weight(m - k, j - 1)
                if w:
                    options.append((k, w))
        total = sum(w for _, w in options)
        pick = randbelow(rng, total)
        for k, w in options:
            if pick < w:
                break
            pick -= w
        ks.append(k)
        m -= k
        if m == 0:
            return LayerProfile(tuple(ks))
        if j is not None:
            j -= 1


def sample_ncf(n: int, profile, rng: np.random.Generator) -> LayeredForm:
    """Uniform NCF among those with the given profile, in canonical form."""
    p = as_profile(profile)
    if p.n != n:
        raise InvalidProfile(f"profile {p} does not sum to n={n}")
    order = rng.permutation(n) + 1
    inputs = rng.integers(0, 2, size=n)
    b = int(rng.integers(0, 2))
    layers, pos = [], 0
    for k in p.ks:
        layers.append(tuple((int(v), int(a)) for v, a in zip(order[pos:pos + k], inputs[pos:pos + k])))
        pos += k
    return LayeredForm(b, tuple(layers))


def sample_uniform_ncf(n: int, rng: np.random.Generator, r: int | None = None) -> LayeredForm:
    return sample_ncf(n, sample_profile(n, r, rng), rng)


def sample_network(nodes: int, k: int, m: int | None, seed: int, network_index: int = 0,
                   *, degree: str = "fixed", self_loops: bool = True):
    """Random network where every node has an NCF of layer number ``m``.

    ``degree="fixed"`` gives every node ``k`` regulators.  ``degree="random"``
    draws each in-degree uniformly from the feasible range ``m+1..k``.
    Regulators are distinct and drawn uniformly from all nodes, or from the
    other nodes when ``self_loops`` is false.
    """
    from .netsim import BooleanNetwork, Node

    check_network_request(nodes, k, m, degree=degree, self_loops=self_loops)
    out = []
    for i in range(nodes):
        rng = stream(seed, TAG_NETWORK, network_index, i)
        if degree == "fixed":
            deg = k
        else:
            lo = 2 if m is None else m + 1
            deg = int(rng.integers(lo, k + 1))
        pool = np.arange(1, nodes + 1) if self_loops else np.delete(np.arange(1, nodes + 1), i)
        regulators = tuple(int(x) for x in rng.choice(pool, size=deg, replace=False))
        form = sample_uniform_ncf(deg, rng, m)
        out.append(Node(regulators, construct_ncf(form), form))
    return BooleanNetwork(tuple(out))


def check_network_request(nodes: int, k: int, m: int | None, *, degree: str = "fixed",
                          self_loops: bool = True) -> None:
    if degree not in ("fixed", "random"):
        raise InvalidRequest(f"unknown degree model {degree!r}")
    if nodes < 1:
        raise InvalidRequest("a network needs at least one node")
    if k < 2:
        raise InvalidRequest("in-degree must be at least 2")
    if k > (nodes if self_loops else nodes - 1):
        raise InvalidRequest(f"in-degree {k} exceeds the number of available regulators")
    if m is not None and not 1 <= m <= k - 1:
        raise InvalidRequest(f"no NCF in {k} variables has layer number {m}")


def profile_probabilities(n: int, r: int | None = None) -> dict[tuple[int, ...], tuple[int, int]]:
    """Exact sampling probability of each profile, as ``(numerator, denominator)``."""
    weights = {p.ks: multinomial(p.ks) for p in iter_profiles(n, r)}
    total = sum(weights.values())
    return {ks: (w, total) for ks, w in weights.items()}

