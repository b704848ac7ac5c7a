"""Synchronous Boolean networks and Derrida curves."""
from __future__ import annotations

import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np

from . import __version__
from .enumeration import multinomial
from .errors import DimensionMismatch, InvalidRequest
from .metrics import iter_profiles, sensitivity_formula
from .ncf import LayeredForm, construct_ncf
from .randgen import STREAM_VERSION, TAG_PAIRS, check_network_request, sample_network, stream
from .truthtable import TruthTable, make_truth_table


@dataclass(frozen=True)
class Node:
    regulators: tuple[int, ...]  # 1-based node indices, in input order
    table: TruthTable
    form: LayeredForm | None = None

    def __post_init__(self):
        if self.table.n != len(self.regulators):
            raise DimensionMismatch(
                f"table arity {self.table.n} != {len(self.regulators)} regulators")


@dataclass(frozen=True)
class BooleanNetwork:
    nodes: tuple[Node, ...]

    def __post_init__(self):
        for node in self.nodes:
            if any(not 1 <= r <= self.N for r in node.regulators):
                raise DimensionMismatch(f"regulator outside 1..{self.N}: {node.regulators}")

    @property
    def N(self) -> int:
        return len(self.nodes)

    def to_json(self) -> dict:
        degrees = {len(node.regulators) for node in self.nodes}
        out = []
        for node in self.nodes:
            entry = {"regulators": list(node.regulators)}
            if node.form is not None:
                entry["form"] = node.form.to_json()
            else:
                entry["table"] = node.table.to_string()
            out.append(entry)
        return {"n": self.N, "k": degrees.pop() if len(degrees) == 1 else None, "nodes": out}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj) -> BooleanNetwork:
        if isinstance(obj, str):
            obj = json.loads(obj)
        nodes = []
        for entry in obj["nodes"]:
            regs = tuple(int(r) for r in entry["regulators"])
            if "form" in entry:
                form = LayeredForm.from_json(entry["form"])
                nodes.append(Node(regs, construct_ncf(form), form))
            else:
                nodes.append(Node(regs, make_truth_table(len(regs), entry["table"])))
        net = cls(tuple(nodes))
        if obj.get("n") is not None and obj["n"] != net.N:
            raise DimensionMismatch(f"declared n={obj['n']} but {net.N} nodes given")
        return net

    def compile(self) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """Group nodes by in-degree into ``(node_ids, regulators, lookup)`` arrays (0-based)."""
        groups: dict[int, list[int]] = {}
        for i, node in enumerate(self.nodes):
            groups.setdefault(len(node.regulators), []).append(i)
        out = []
        for deg, ids in sorted(groups.items()):
            regs = np.array([[r - 1 for r in self.nodes[i].regulators] for i in ids],
                            dtype=np.intp).reshape(len(ids), deg)
            lut = np.stack([self.nodes[i].table.to_array() for i in ids])
            out.append((np.array(ids, dtype=np.intp), regs, lut))
        return out


def step_many(net: BooleanNetwork, states: np.ndarray, compiled=None) -> np.ndarray:
    """Synchronous update of a batch of states, shape ``(S, N)``."""
    states = np.asarray(states, dtype=np.uint8)
    if states.ndim != 2 or states.shape[1] != net.N:
        raise DimensionMismatch(f"states must have shape (S, {net.N})")
    compiled = net.compile() if compiled is None else compiled
    out = np.empty_like(states)
    for ids, regs, lut in compiled:
        deg = regs.shape[1]
        # first regulator is the most significant bit of the table index
        weights = (1 << np.arange(deg - 1, -1, -1)).astype(np.int64)
        idx = states[:, regs].astype(np.int64) @ weights
        out[:, ids] = lut[np.arange(len(ids)), idx]
    return out


def step(net: BooleanNetwork, state: Sequence[int]) -> tuple[int, ...]:
    if len(state) != net.N:
        raise DimensionMismatch(f"state has length {len(state)}, expected {net.N}")
    arr = np.asarray([state], dtype=np.uint8)
    return tuple(int(x) for x in step_many(net, arr)[0])


def ensemble_mean_sensitivity(k: int, m: int | None = None) -> Fraction:
    """Average sensitivity of a uniformly drawn NCF in ``k`` variables (layer ``m`` if given)."""
    if k < 2 or (m is not None and not 1 <= m <= k - 1):
        raise InvalidRequest(f"no NCF with k={k}, m={m}")
    num = den = 0
    for p in iter_profiles(k, m):
        w = multinomial(p.ks)
        num += w * sensitivity_formula(p).as_fraction()
        den += w
    return Fraction(num) / den


@dataclass
class DerridaRow:
    d: int
    samples: int = 0
    sum_next: int = 0
    sum_sq_next: int = 0
    # sum over networks of (that network's sum at this distance) squared
    sum_sq_network: int = 0

    @property
    def mean_next(self) -> Fraction:
        return Fraction(self.sum_next, self.samples) if self.samples else Fraction(0)


@dataclass
class DerridaCurve:
    N: int
    k: int
    m: int | None
    networks: int
    pairs: int
    seed: int
    rows: list[DerridaRow] = field(default_factory=list)
    degree: str = "fixed"
    self_loops: bool = True

    def row(self, d: int) -> DerridaRow:
        return self.rows[d]

    def mean(self, d: int) -> Fraction:
        return self.rows[d].mean_next

    def standard_error(self, d: int) -> float:
        """Standard error of the mean at distance ``d``, treating networks as the
        independent units (pairs drawn on the same network are correlated)."""
        row, B, P = self.rows[d], self.networks, self.pairs
        if B < 2:
            return float("nan")
        grand = Fraction(row.sum_next, B * P)
        var = (Fraction(row.sum_sq_network, P * P) - B * grand * grand) / (B - 1)
        return sqrt(max(float(var), 0.0) / B)

    def predicted_slope(self) -> Fraction | None:
        if self.degree != "fixed":
            return None
        return ensemble_mean_sensitivity(self.k, self.m)

    def metadata(self) -> list[tuple[str, str]]:
        return [
            ("N", str(self.N)),
            ("k", str(self.k)),
            ("m", "any" if self.m is None else str(self.m)),
            ("networks", str(self.networks)),
            ("pairs", str(self.pairs)),
            ("seed", str(self.seed)),
            ("degree", self.degree),
            ("self_loops", "yes" if self.self_loops else "no"),
            ("stream_version", str(STREAM_VERSION)),
            ("tool_version", f"nestcan {__version__}"),
        ]

    def to_csv(self, normalized: bool = False) -> str:
        buf = io.StringIO()
        for key, value in self.metadata():
            buf.write(f"# {key}={value}\n")
        buf.write("d,mean_next,samples" + (",norm_d,norm_mean_next" if normalized else "") + "\n")
        for row in self.rows:
            line = f"{row.d},{fixed(row.sum_next, row.samples)},{row.samples}"
            if normalized:
                line += f",{fixed(row.d, self.N)},{fixed(row.sum_next, row.samples * self.N)}"
            buf.write(line + "\n")
        return buf.getvalue()


def fixed(num: int, den: int, digits: int = 6) -> str:
    """``num/den`` rounded half-up to ``digits`` decimals, from integers only."""
    if den == 0:
        return "nan"
    scaled = (2 * num * 10**digits + den) // (2 * den)
    whole, frac = divmod(scaled, 10**digits)
    return f"{whole}.{frac:0{digits}d}"


def _network_sums(args) -> list[tuple[int, int, int]]:
    N, k, m, pairs, seed, b, degree, self_loops = args
    net = sample_network(N, k, m, seed, b, degree=degree, self_loops=self_loops)
    compiled = net.compile()
    xs, ys = [], []
    for d in range(N + 1):
        rng = stream(seed, TAG_PAIRS, b, d)
        x = rng.integers(0, 2, size=(pairs, N), dtype=np.uint8)
        flip = np.zeros((pairs, N), dtype=np.uint8)
        if d:
            pos = np.argsort(rng.random((pairs, N)), axis=1)[:, :d]
            np.put_along_axis(flip, pos, 1, axis=1)
        xs.append(x)
        ys.append(x ^ flip)
    fx = step_many(net, np.concatenate(xs), compiled)
    fy = step_many(net, np.concatenate(ys), compiled)
    dist = (fx != fy).sum(axis=1).reshape(N + 1, pairs).astype(np.int64)
    return [(int(h.sum()), int((h * h).sum()), int(h.sum()) ** 2) for h in dist]


def derrida_curve(N: int, k: int, m: int | None, networks: int, pairs: int, seed: int,
                  *, workers: int = 1, degree: str = "fixed",
                  self_loops: bool = True) -> DerridaCurve:
    """Estimate the one-step Derrida map ``H(t) -> E[H(t+1)]`` for ``H(t) = 0..N``.

    For each of ``networks`` random networks and each distance ``d``, draws
    ``pairs`` uniform states ``x`` and flips ``d`` distinct random coordinates to
    get ``y``.  Every (network, distance) cell has its own random stream and
    results are merged by exact integer sums, so the output does not depend on
    ``workers``.
    """
    check_network_request(N, k, m, degree=degree, self_loops=self_loops)
    if networks < 1 or pairs < 1:
        raise InvalidRequest("networks and pairs must be positive")
    tasks = [(N, k, m, pairs, seed, b, degree, self_loops) for b in range(networks)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_network_sums, tasks, chunksize=max(1, networks // (4 * workers))))
    else:
        results = [_network_sums(t) for t in tasks]
    rows = [DerridaRow(d) for d in range(N + 1)]
    for per_d in results:
        for row, (s, sq, net_sq) in zip(rows, per_d):
            row.samples += pairs
            row.sum_next += s
            row.sum_sq_next += sq
            row.sum_sq_network += net_sq
    return DerridaCurve(N, k, m, networks, pairs, seed, rows, degree, self_loops)
