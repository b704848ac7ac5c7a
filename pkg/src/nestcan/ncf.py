"""Nested canalizing functions and their layered normal form.

Every NCF on ``n >= 2`` variables has exactly one expression

    f = M_1 (M_2 ( ... (M_{r-1} (M_r + 1) + 1) ... ) + 1) + b

over GF(2), where the ``M_l`` are extended monomials ``prod (x_i + a_i)`` on
disjoint variable sets covering all variables and the innermost layer has at
least two variables.  ``LayeredForm`` stores ``b`` and the layers; within a
layer the ``(variable, a)`` pairs are kept sorted so equal functions give
equal forms.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import InvalidForm, InvalidProfile, NotNCF, NotReduced, TooLarge
from .truthtable import (
    TruthTable,
    canalizing_pairs,
    essential_variables,
    full_mask,
    restrict,
    var_mask,
)

Layer = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class LayerProfile:
    """Layer sizes ``(k_1, ..., k_r)``."""

    ks: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(int(k) for k in self.ks)
        object.__setattr__(self, "ks", ks)
        if not ks or any(k < 1 for k in ks):
            raise InvalidProfile(f"layer sizes must be positive: {ks}")
        if sum(ks) >= 2 and ks[-1] < 2:
            raise InvalidProfile(f"last layer needs at least 2 variables: {ks}")

    @property
    def n(self) -> int:
        return sum(self.ks)

    @property
    def r(self) -> int:
        return len(self.ks)

    def __iter__(self):
        return iter(self.ks)

    def __len__(self):
        return len(self.ks)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.ks)) + ")"


@dataclass(frozen=True)
class LayeredForm:
    b: int
    layers: tuple[Layer, ...]

    def __post_init__(self):
        layers = tuple(
            tuple(sorted((int(v), int(a)) for v, a in layer)) for layer in self.layers
        )
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "b", int(self.b))
        if self.b not in (0, 1):
            raise InvalidForm(f"output bit must be 0 or 1, got {self.b}")
        if not layers or any(not layer for layer in layers):
            raise InvalidForm("a form needs at least one non-empty layer")
        variables = [v for layer in layers for v, _ in layer]
        if sorted(variables) != list(range(1, len(variables) + 1)):
            raise InvalidForm(f"variables must cover 1..n exactly once, got {variables}")
        if any(a not in (0, 1) for layer in layers for _, a in layer):
            raise InvalidForm("canalizing inputs must be 0 or 1")
        if len(variables) >= 2 and len(layers[-1]) < 2:
            raise InvalidForm("last layer needs at least 2 variables")

    @property
    def n(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def r(self) -> int:
        return len(self.layers)

    @property
    def degenerate(self) -> bool:
        """True for the one-variable case, which the layered normal form does not cover."""
        return self.n == 1

    @property
    def profile(self) -> LayerProfile:
        return LayerProfile(tuple(len(layer) for layer in self.layers))

    def layer_of(self, variable: int) -> int:
        for l, layer in enumerate(self.layers, start=1):
            if any(v == variable for v, _ in layer):
                return l
        raise KeyError(variable)

    def to_json(self) -> dict:
        return {"b": self.b, "layers": [[[v, a] for v, a in layer] for layer in self.layers]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj) -> LayeredForm:
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(obj["b"], tuple(tuple((v, a) for v, a in layer) for layer in obj["layers"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidForm(f"malformed layered form: {exc}") from None


@dataclass(frozen=True)
class NcfPresentation:
    """The ``{sigma : alpha : beta}`` description: variable order, canalizing
    inputs and canalized outputs."""

    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def __str__(self) -> str:
        def t(x):
            return "(" + ",".join(map(str, x)) + ")"

        return f"{{{t(self.sigma)}:{t(self.alpha)}:{t(self.beta)}}}"


def construct_ncf(form: LayeredForm) -> TruthTable:
    n = form.n
    full = full_mask(n)
    monomials = []
    for layer in form.layers:
        m = full
        for v, a in layer:
            # (x_v + a) is 1 exactly when x_v != a
            m &= var_mask(n, v) if a == 0 else full ^ var_mask(n, v)
        monomials.append(m)
    acc = monomials[-1]
    for m in reversed(monomials[:-1]):
        acc = m & (acc ^ full)
    return TruthTable(n, acc ^ (full if form.b else 0))


def _remap(tt: TruthTable, names: list[int]):
    # canalizing triples of a restricted table, with variables renamed to originals
    return [(names[i - 1], a, b) for i, a, b in canalizing_pairs(tt)]


def decompose(tt: TruthTable) -> LayeredForm:
    """Unique canonical layered form of an NCF.

    Raises ``NotReduced`` if some variable is not essential and ``NotNCF``
    if the function is not nested canalizing.
    """
    if tt.n == 0:
        raise NotNCF("constant functions are not nested canalizing")
    if len(essential_variables(tt)) != tt.n:
        raise NotReduced("function has non-essential variables; reduce it first")

    names = list(range(1, tt.n + 1))
    g = tt
    layers: list[list[tuple[int, int]]] = []
    outputs: list[int] = []
    while True:
        if g.n == 1:
            # x + c: canalizing for both inputs, one per output value
            triples = _remap(g, names)
            if not layers:
                v, a, b = triples[0]
                return LayeredForm(b, (((v, a),),))
            v, a, _ = next(t for t in triples if t[2] == outputs[-1])
            layers[-1].append((v, a))
            break
        if len(essential_variables(g)) != g.n:
            raise NotNCF("a nested restriction has non-essential variables")
        triples = _remap(g, names)
        if not triples:
            raise NotNCF(f"no canalizing variable among {names}")
        b = triples[0][2]
        if any(t[2] != b for t in triples) or len({t[0] for t in triples}) != len(triples):
            raise NotNCF("inconsistent canalized outputs")
        if outputs and b == outputs[-1]:
            raise NotNCF("canalized outputs of consecutive layers must alternate")
        layers.append([(v, a) for v, a, _ in triples])
        outputs.append(b)
        if len(triples) == g.n:
            break
        layer_vars = {v: a for v, a, _ in triples}
        for pos in reversed(range(len(names))):
            v = names[pos]
            if v in layer_vars:
                g = restrict(g, pos + 1, 1 - layer_vars[v])
                del names[pos]
    return LayeredForm(outputs[0], tuple(tuple(layer) for layer in layers))


def is_ncf(tt: TruthTable) -> bool:
    try:
        decompose(tt)
    except (NotNCF, NotReduced):
        return False
    return True


def is_ncf_oracle(tt: TruthTable) -> bool:
    """Direct search for a variable order that satisfies the NCF definition.

    Works on explicit ``{state: value}`` tables and never touches the layered
    form machinery.  Exponential; limited to ``n <= 4``.
    """
    if tt.n > 4:
        raise TooLarge("the brute-force NCF oracle supports n <= 4")
    if tt.n == 0:
        return False
    table = {}
    for idx, state in enumerate(product((0, 1), repeat=tt.n)):
        table[state] = (tt.mask >> idx) & 1
    return _nested(table, tt.n)


def _nested(table: dict, width: int) -> bool:
    if width == 1:
        return table[(0,)] != table[(1,)]
    for pos in range(width):
        for a in (0, 1):
            fixed = {s: v for s, v in table.items() if s[pos] == a}
            if len(set(fixed.values())) != 1:
                continue
            rest = {s[:pos] + s[pos + 1:]: v for s, v in table.items() if s[pos] != a}
            if _nested(rest, width - 1):
                return True
    return False


def presentation(form: LayeredForm) -> NcfPresentation:
    sigma, alpha, beta = [], [], []
    out = form.b
    for layer in form.layers:
        for v, a in layer:
            sigma.append(v)
            alpha.append(a)
            beta.append(out)
        out ^= 1
    return NcfPresentation(tuple(sigma), tuple(alpha), tuple(beta))


def layers_from_outputs(beta: Sequence[int]) -> tuple[int, LayerProfile]:
    """Layer number and profile read off the canalized outputs of an NCF."""
    beta = [int(x) for x in beta]
    if not beta:
        raise InvalidProfile("empty canalized output vector")
    runs = [1]
    for prev, cur in zip(beta, beta[1:]):
        if cur == prev:
            runs[-1] += 1
        else:
            runs.append(1)
    if len(beta) >= 2 and runs[-1] == 1:
        raise InvalidProfile(f"no NCF has canalized outputs {tuple(beta)}")
    return len(runs), LayerProfile(tuple(runs))


def form_from_presentation(p: NcfPresentation) -> LayeredForm:
    """Group a ``{sigma:alpha:beta}`` presentation back into layers."""
    _, profile = layers_from_outputs(p.beta)
    layers, pos = [], 0
    for k in profile:
        layers.append(tuple(zip(p.sigma[pos:pos + k], p.alpha[pos:pos + k])))
        pos += k
    return LayeredForm(p.beta[0], tuple(layers))
