"""Encoding, error injection and bounded-distance decoding over Q.

The decoder is syndrome based: the key equation Lambda*S = Omega mod x^(d-1)
is solved with the extended Euclidean algorithm and the error values follow
from Forney's formula.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional, Sequence

from .bounds import GrowthReport, conformance_check
from .construction import GeneratorKind, GrsCode
from .exact import (ZERO, RatLike, RatPoly, common_denominator, dot,
                    eea_with_stop, eea_with_stop_ff, rat, vecmat)


class DecodeFailure(Exception):
    """The received word is not within the decoding radius of any codeword."""


@dataclass(frozen=True)
class ErrorPattern:
    """Sparse error: 1-based position -> nonzero value."""

    values: Mapping[int, object] = field(default_factory=dict)

    def __post_init__(self):
        vals = {int(p): rat(x) for p, x in dict(self.values).items()}
        if any(x == 0 for x in vals.values()):
            raise ValueError("error values must be nonzero")
        object.__setattr__(self, "values", vals)

    @property
    def positions(self) -> frozenset:
        return frozenset(self.values)

    @property
    def weight(self) -> int:
        return len(self.values)

    def to_vector(self, n: int) -> tuple:
        out = [ZERO] * n
        for p, x in self.values.items():
            if not 1 <= p <= n:
                raise IndexError(f"error position {p} outside 1..{n}")
            out[p - 1] = x
        return tuple(out)

    @classmethod
    def from_vector(cls, e: Sequence[RatLike]) -> "ErrorPattern":
        return cls({i + 1: x for i, x in enumerate(e) if rat(x)})


class KeyEqSolution(NamedTuple):
    """Error locator Lambda (with Lambda(0) = 1) and error evaluator Omega."""

    locator: RatPoly
    evaluator: RatPoly


@dataclass
class DecodeOutcome:
    codeword: tuple
    error: tuple
    report: GrowthReport
    syndrome: tuple = ()
    solution: Optional[KeyEqSolution] = None
    xi: int = 1


def encode(code: GrsCode, kind: GeneratorKind, u: Sequence[RatLike]) -> tuple:
    """c = u G for the chosen generator."""
    if len(u) != code.k:
        raise ValueError(f"information word has length {len(u)}, expected {code.k}")
    return vecmat(u, code.generator(GeneratorKind(kind)))


def corrupt(c: Sequence[RatLike], e: ErrorPattern) -> tuple:
    r = [rat(x) for x in c]
    for p, x in e.values.items():
        if not 1 <= p <= len(r):
            raise IndexError(f"error position {p} outside 1..{len(r)}")
        r[p - 1] += x
    return tuple(r)


def syndrome(code: GrsCode, r: Sequence[RatLike]) -> tuple:
    """s_i = sum_j r_j v_j alpha_j^i for i = 0..d-2, i.e. r H^T."""
    if len(r) != code.n:
        raise ValueError(f"received word has length {len(r)}, expected {code.n}")
    r = [rat(x) for x in r]
    H = code.H
    return tuple(dot(r, H.row(i)) for i in range(H.rows))


def syndrome_poly(s: Sequence[RatLike]) -> RatPoly:
    return RatPoly(s)


def common_denominator_xi(S: RatPoly) -> int:
    """Least positive integer xi with xi*S in Z[x]."""
    return common_denominator(S.coeffs)


def solve_key_equation(S: RatPoly, d: int, method: str = "fraction_free") -> KeyEqSolution:
    """Find (Lambda, Omega) from the syndrome polynomial.

    ``method="classical"`` runs the EEA over Q; ``"fraction_free"`` runs the
    subresultant remainder sequence over Z.  Both return associates of the
    same triple, and the normalisation below removes the scalar.
    """
    if S.is_zero():
        raise ValueError("zero syndrome has no key-equation solution to find")
    xi = common_denominator_xi(S)
    a = RatPoly.monomial(d - 1, xi)
    b = S * xi
    t_stop = rat(d - 1) / 2
    if b.deg < t_stop:
        # h = 0 would give Lambda = 1 with deg Omega >= deg Lambda
        raise DecodeFailure("syndrome degree below the stopping degree")
    if method == "classical":
        r_h, _, t_h = eea_with_stop(a, b, t_stop)
    elif method == "fraction_free":
        r_h, _, t_h = eea_with_stop_ff(a, b, t_stop, with_s=False)
    else:
        raise ValueError(f"unknown method {method!r}")
    c = t_h[0]
    if c == 0:
        raise DecodeFailure("error locator has zero constant term")
    Lambda = t_h / c
    Omega = r_h / (xi * c)
    if Omega.deg >= Lambda.deg:
        raise DecodeFailure("deg Omega >= deg Lambda")
    return KeyEqSolution(Lambda, Omega)


def locate_errors(code: GrsCode, Lambda: RatPoly) -> list:
    """0-based positions i with Lambda(1/alpha_i) = 0."""
    return [i for i, a in enumerate(code.alphas) if Lambda(1 / a) == 0]


def forney(code: GrsCode, sol: KeyEqSolution,
           positions: Optional[Sequence[int]] = None) -> tuple:
    """Error values e_i = -(alpha_i/v_i) Omega(1/alpha_i) / Lambda'(1/alpha_i).

    The formula only holds at roots of Lambda; every other coordinate is
    zero.  ``positions`` (0-based) skips the root search when already known.
    """
    Lambda, Omega = sol
    if positions is None:
        positions = locate_errors(code, Lambda)
    dLambda = Lambda.derivative()
    e = [ZERO] * code.n
    for i in positions:
        x = 1 / code.alphas[i]
        denom = dLambda(x)
        if denom == 0:
            raise DecodeFailure(f"repeated root of the error locator at position {i + 1}")
        e[i] = -(code.alphas[i] / code.v[i]) * Omega(x) / denom
    return tuple(e)


def decode(code: GrsCode, r: Sequence[RatLike], method: str = "fraction_free") -> DecodeOutcome:
    """Bounded-distance decoding up to floor((d-1)/2) errors.

    Raises :class:`DecodeFailure` whenever the result cannot be verified:
    the returned codeword always has zero syndrome and differs from ``r``
    in at most ``code.radius`` positions.
    """
    r = tuple(rat(x) for x in r)
    s = syndrome(code, r)
    if not any(s):
        e = (ZERO,) * code.n
        rep = conformance_check(code, e=e, s=s)
        return DecodeOutcome(r, e, rep, s)

    S = syndrome_poly(s)
    xi = common_denominator_xi(S)
    sol = solve_key_equation(S, code.d, method)
    Lambda = sol.locator
    positions = locate_errors(code, Lambda)
    if len(positions) != Lambda.deg:
        raise DecodeFailure(f"error locator of degree {Lambda.deg} has "
                            f"{len(positions)} roots among the inverse locators")
    if len(positions) > code.radius:
        raise DecodeFailure("more errors located than the code can correct")
    e = forney(code, sol, positions)
    if syndrome(code, e) != s:
        raise DecodeFailure("corrected word is not a codeword")
    c = tuple(x - y for x, y in zip(r, e))
    rep = conformance_check(code, e=e, s=s, xiS=S * xi, Lambda=Lambda, Omega=sol.evaluator)
    return DecodeOutcome(c, e, rep, s, sol, int(xi))
