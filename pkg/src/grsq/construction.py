"""Generalized Reed-Solomon codes over Q.

A code is fixed by its locators alpha_i (distinct, nonzero) and the column
multipliers v (parity-check side) and v' (generator side).  The two
multiplier vectors are tied together by v_i * v'_i = w_i with
w_i = prod_{j != i} (alpha_i - alpha_j)^-1.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Optional, Sequence

from .exact import ONE, RatLike, RatMatrix, format_rat, rat


class Preset(enum.Enum):
    V_PRIME_ONE = "vprime1"   # v' = 1, v = w
    CAUCHY_UNIT = "cauchyunit"  # c_i d_j = 1 in the systematic generator
    V_ONE = "v1"              # v = 1, v' = w
    CUSTOM = "custom"


class GeneratorKind(enum.Enum):
    VANDERMONDE = "vandermonde"
    CAUCHY_SYSTEMATIC = "cauchy"


class AlphaChoice(enum.Enum):
    MIN_BITWIDTH = "min"
    INTEGERS_1_TO_N = "1..n"
    CUSTOM = "custom"


class CodeConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class GrsCode:
    n: int
    k: int
    alphas: tuple
    v: tuple
    v_prime: tuple
    preset: Preset = Preset.CUSTOM

    @property
    def d(self) -> int:
        return self.n - self.k + 1

    @property
    def radius(self) -> int:
        """Number of errors the BMD decoder corrects, floor((d-1)/2)."""
        return (self.n - self.k) // 2

    @cached_property
    def w(self) -> tuple:
        return weights_w(self.alphas)

    @cached_property
    def H(self) -> RatMatrix:
        return parity_check(self)

    @cached_property
    def G(self) -> RatMatrix:
        return generator_vandermonde(self)

    @cached_property
    def G_cauchy(self) -> RatMatrix:
        return generator_cauchy(self)

    def generator(self, kind: GeneratorKind) -> RatMatrix:
        return self.G if kind is GeneratorKind.VANDERMONDE else self.G_cauchy


# --------------------------------------------------------------------------
# locators
# --------------------------------------------------------------------------

def _level_fractions(level: int) -> list:
    """All nonzero reduced p/q with max(|p|, q) == level, in locator order."""
    pos = set()
    for other in range(1, level + 1):
        if gcd(other, level) == 1:
            pos.add(rat(other) / level)
            pos.add(rat(level) / other)
    out = []
    for x in sorted(pos):
        out.extend((x, -x))
    return out


def iter_min_locators():
    """Nonzero rationals ordered by level max(|num|, den), then by |value|,
    positive before negative."""
    level = 1
    while True:
        yield from _level_fractions(level)
        level += 1


def enumerate_min_locators(n: int) -> tuple:
    if n < 1:
        raise ValueError("need at least one locator")
    out = []
    for a in iter_min_locators():
        out.append(a)
        if len(out) == n:
            return tuple(out)


def choose_alphas(choice: AlphaChoice | str, n: int,
                  custom: Optional[Sequence[RatLike]] = None) -> tuple:
    choice = AlphaChoice(choice)
    if choice is AlphaChoice.MIN_BITWIDTH:
        return enumerate_min_locators(n)
    if choice is AlphaChoice.INTEGERS_1_TO_N:
        return tuple(rat(i) for i in range(1, n + 1))
    if custom is None or len(custom) != n:
        raise CodeConstructionError(f"custom locators must have length {n}")
    return tuple(rat(a) for a in custom)


# --------------------------------------------------------------------------
# multipliers
# --------------------------------------------------------------------------

def _check_locators(alphas: Sequence) -> None:
    if any(a == 0 for a in alphas):
        raise CodeConstructionError("code locators must be nonzero")
    if len(set(alphas)) != len(alphas):
        raise CodeConstructionError("code locators must be distinct")


def _inv_prod(x, others) -> "mpq":
    p = ONE
    for y in others:
        p *= x - y
    return 1 / p


def weights_w(alphas: Sequence[RatLike]) -> tuple:
    alphas = [rat(a) for a in alphas]
    if len(set(alphas)) != len(alphas):
        raise CodeConstructionError("code locators must be distinct")
    return tuple(_inv_prod(a, alphas[:i] + alphas[i + 1:]) for i, a in enumerate(alphas))


def make_code(n: int, k: int, alphas: Sequence[RatLike], preset: Preset | str,
              v: Optional[Sequence[RatLike]] = None,
              v_prime: Optional[Sequence[RatLike]] = None) -> GrsCode:
    """Build a code and check v_i * v'_i = w_i.

    For ``Preset.CUSTOM`` exactly one of ``v`` / ``v_prime`` must be given;
    the other one is derived from w.
    """
    preset = Preset(preset)
    if not 1 <= k < n:
        raise CodeConstructionError(f"need 1 <= k < n, got n={n}, k={k}")
    alphas = tuple(rat(a) for a in alphas)
    if len(alphas) != n:
        raise CodeConstructionError(f"expected {n} locators, got {len(alphas)}")
    _check_locators(alphas)
    w = weights_w(alphas)

    if preset is not Preset.CUSTOM and (v is not None or v_prime is not None):
        raise CodeConstructionError("explicit multipliers need the custom preset")
    if preset is Preset.V_PRIME_ONE:
        vp = (ONE,) * n
        vv = w
    elif preset is Preset.V_ONE:
        vv = (ONE,) * n
        vp = w
    elif preset is Preset.CAUCHY_UNIT:
        tail = alphas[k:]
        vv = tuple(_inv_prod(a, [t for t in tail if t != a]) for a in alphas)
        vp = tuple(wi / vi for wi, vi in zip(w, vv))
    else:
        if (v is None) == (v_prime is None):
            raise CodeConstructionError("custom preset takes exactly one of v, v_prime")
        given = tuple(rat(x) for x in (v if v is not None else v_prime))
        if len(given) != n:
            raise CodeConstructionError(f"expected {n} multipliers, got {len(given)}")
        if any(x == 0 for x in given):
            raise CodeConstructionError("column multipliers must be nonzero")
        derived = tuple(wi / x for wi, x in zip(w, given))
        vv, vp = (given, derived) if v is not None else (derived, given)

    code = GrsCode(n, k, alphas, tuple(vv), tuple(vp), preset)
    code.__dict__["w"] = w
    if __debug__ and not verify_system_eq1(code):
        raise CodeConstructionError("multipliers do not satisfy the duality system")
    return code


def verify_system_eq1(code: GrsCode) -> bool:
    """True iff sum_i alpha_i^r v_i v'_i = 0 for r = 0..n-2."""
    prods = [a * b for a, b in zip(code.v, code.v_prime)]
    if any(p == 0 for p in prods):
        return False
    for _ in range(code.n - 1):
        if sum(prods):
            return False
        prods = [p * a for p, a in zip(prods, code.alphas)]
    return True


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------

def _scaled_vandermonde(alphas, mult, nrows: int) -> RatMatrix:
    rows = []
    cur = list(mult)
    for _ in range(nrows):
        rows.append(cur)
        cur = [c * a for c, a in zip(cur, alphas)]
    return RatMatrix.from_rows(rows)


def generator_vandermonde(code: GrsCode) -> RatMatrix:
    """k x n matrix with entry (j, i) = alpha_i^j v'_i."""
    return _scaled_vandermonde(code.alphas, code.v_prime, code.k)


def parity_check(code: GrsCode) -> RatMatrix:
    """(n-k) x n matrix with entry (r, i) = alpha_i^r v_i."""
    return _scaled_vandermonde(code.alphas, code.v, code.n - code.k)


def cauchy_factors(code: GrsCode) -> tuple[tuple, tuple]:
    """(c_1..c_k, d_1..d_{n-k}) of the systematic Cauchy generator."""
    k, al, vp = code.k, code.alphas, code.v_prime
    head = al[:k]
    c = tuple(_inv_prod(al[i], head[:i] + head[i + 1:]) / vp[i] for i in range(k))
    d = tuple(vp[j] / _inv_prod(al[j], head) for j in range(k, code.n))
    return c, d


def generator_cauchy(code: GrsCode) -> RatMatrix:
    """Systematic generator (I_k | A) with A_ij = c_i d_j / (b_j - a_i).

    a_i = alpha_i, b_j = alpha_{j+k}.  Writing the denominator as
    a_i - b_j flips the sign of A and the rows leave the code.
    """
    k, al = code.k, code.alphas
    c, d = cauchy_factors(code)
    rows = []
    for i in range(k):
        ident = [ONE if i == j else rat(0) for j in range(k)]
        rows.append(ident + [c[i] * d[j] / (al[j + k] - al[i]) for j in range(code.n - k)])
    return RatMatrix.from_rows(rows)


# --------------------------------------------------------------------------
# code documents
# --------------------------------------------------------------------------

def code_to_dict(code: GrsCode) -> dict:
    doc = {
        "n": code.n,
        "k": code.k,
        "preset": code.preset.value,
        "alphas": [format_rat(a) for a in code.alphas],
    }
    if code.preset is Preset.CUSTOM:
        doc["v"] = [format_rat(x) for x in code.v]
    return doc


def code_from_dict(doc: dict) -> GrsCode:
    try:
        n, k, preset, alphas = int(doc["n"]), int(doc["k"]), doc["preset"], doc["alphas"]
    except KeyError as exc:
        raise CodeConstructionError(f"code document lacks field {exc}") from None
    return make_code(n, k, alphas, preset, v=doc.get("v"), v_prime=doc.get("v_prime"))


def dump_code(code: GrsCode) -> str:
    return json.dumps(code_to_dict(code), indent=2) + "\n"


def load_code(text: str) -> GrsCode:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodeConstructionError(f"malformed code document: {exc}") from None
    return code_from_dict(doc)
