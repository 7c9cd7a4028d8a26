"""Exact arithmetic over the rationals.

Rationals are :class:`gmpy2.mpq` values, which are always stored in lowest
terms with a positive denominator.  On top of them this module provides
dense polynomials (:class:`RatPoly`), dense matrices (:class:`RatMatrix`),
the bit-width measure used throughout the package, and the extended
Euclidean algorithm with a degree stopping condition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

import gmpy2
from gmpy2 import mpq, mpz

Rat = type(mpq())
RatLike = Union[int, str, Fraction, "mpq", "mpz"]

NEG_INF = float("-inf")

_RAT_RE = re.compile(r"^\s*([-−]?)(\d+)(?:/(\d+))?\s*$")

ZERO = mpq(0)
ONE = mpq(1)


def rat(x: RatLike) -> mpq:
    """Coerce ``x`` to a canonical rational.

    Strings use the canonical text form ``[-]digits[/digits]``; the
    Unicode minus sign is accepted as well.
    """
    if isinstance(x, Rat):
        return x
    if isinstance(x, str):
        m = _RAT_RE.match(x)
        if m is None:
            raise ValueError(f"not a rational literal: {x!r}")
        sign, num, den = m.groups()
        if den is not None and int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {x!r}")
        q = mpq(int(num), int(den) if den else 1)
        return -q if sign else q
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction)) or isinstance(x, type(mpz())):
        return mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def format_rat(q: mpq) -> str:
    """Canonical text form: integers without ``/1``, ASCII minus."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# bit width
# --------------------------------------------------------------------------

def bitwidth_int(a: int) -> int:
    """floor(log2|a|) + 1, and 0 for a == 0."""
    return int(abs(mpz(a)).bit_length())


def bitwidth_rat(a: RatLike) -> int:
    a = rat(a)
    return max(bitwidth_int(a.numerator), bitwidth_int(a.denominator))


def bitwidth_vector(v: Iterable[RatLike]) -> int:
    """Bit width of a vector, i.e. of a 1 x n matrix (0 if empty)."""
    return max((bitwidth_rat(x) for x in v), default=0)


def common_denominator(coeffs: Iterable[mpq]) -> mpz:
    """lcm of the reduced denominators (1 for an empty sequence)."""
    out = mpz(1)
    for c in coeffs:
        out = gmpy2.lcm(out, c.denominator)
    return out


def bitwidth_poly(a: "RatPoly") -> int:
    """Bit width of a polynomial in common-denominator form.

    The polynomial is written as (a_0 + ... + a_n x^n) / b with integer
    a_i, b and gcd(a_0, ..., a_n, b) = 1.  Taking b as the lcm of the reduced
    denominators already makes that gcd 1.  The zero polynomial has width 0.
    """
    if a.is_zero():
        return 0
    b = common_denominator(a.coeffs)
    width = bitwidth_int(b)
    for c in a.coeffs:
        width = max(width, bitwidth_int(c.numerator * (b // c.denominator)))
    return width


def bitwidth_matrix(a: "RatMatrix") -> int:
    return bitwidth_vector(a.entries)


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------

def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class RatPoly:
    """Dense univariate polynomial over Q, coefficients in ascending order.

    Instances are immutable.  The zero polynomial has no coefficients and
    degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        object.__setattr__(self, "coeffs", tuple(_trim([rat(c) for c in coeffs])))

    def __setattr__(self, name, value):
        raise AttributeError("RatPoly is immutable")

    @classmethod
    def constant(cls, c: RatLike) -> "RatPoly":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: RatLike = 1) -> "RatPoly":
        return cls([0] * degree + [c])

    @property
    def deg(self):
        """Degree as an int, or ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> mpq:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> mpq:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        try:
            return self == RatPoly.constant(rat(other))
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly([{', '.join(format_rat(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                terms.append(("-" if c < 0 else "+") + mono)
            else:
                terms.append(("-" if c < 0 else "+") + format_rat(abs(c)) + ("*" + mono if mono else ""))
        s = " ".join(terms)
        return s[1:] if s.startswith("+") else s

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "RatPoly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "RatPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "RatPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            c = rat(other)
            return RatPoly([c * x for x in self.coeffs]) if c else RatPoly()
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c: RatLike) -> "RatPoly":
        c = rat(c)
        if not c:
            raise ZeroDivisionError("polynomial divided by zero")
        return RatPoly([x / c for x in self.coeffs])

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        m = len(other.coeffs) - 1
        if len(rem) - 1 < m:
            return RatPoly(), self
        quo = [ZERO] * (len(rem) - m)
        inv_lc = 1 / other.coeffs[-1]
        for i in range(len(rem) - 1, m - 1, -1):
            q = rem[i] * inv_lc
            if not q:
                continue
            quo[i - m] = q
            for j, b in enumerate(other.coeffs):
                rem[i - m + j] -= q * b
        return RatPoly(quo), RatPoly(rem[:m])

    def __floordiv__(self, other) -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RatPoly":
        return divmod(self, other)[1]

    def __call__(self, x: RatLike) -> mpq:
        """Evaluate with Horner's rule."""
        x = rat(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def truncate(self, n: int) -> "RatPoly":
        """Reduce modulo x^n."""
        return RatPoly(self.coeffs[:n])

    def to_strings(self) -> list[str]:
        return [format_rat(c) for c in self.coeffs]


def _as_poly(x) -> RatPoly:
    return x if isinstance(x, RatPoly) else RatPoly.constant(rat(x))


def poly_add(a: RatPoly, b: RatPoly) -> RatPoly:
    return a + b


def poly_mul(a: RatPoly, b: RatPoly) -> RatPoly:
    return a * b


def poly_scale(a: RatPoly, c: RatLike) -> RatPoly:
    return a * rat(c)


def poly_eval(p: RatPoly, x: RatLike) -> mpq:
    return p(x)


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RatMatrix:
    """Dense row-major matrix over Q."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RatLike]]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged or empty matrix")
        return cls(len(rows), len(rows[0]), tuple(rat(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> mpq:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[mpq]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         tuple(self.entries[i * self.cols + j]
                               for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        return RatMatrix(self.rows, other.cols,
                         tuple(dot(self.row(i), c) for i in range(self.rows) for c in cols))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def select_columns(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_rows([[self[i, j] for j in idx] for i in range(self.rows)])

    def rank(self) -> int:
        return len(_row_echelon(self.to_rows())[1])

    def det(self) -> mpq:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = self.to_rows()
        n = self.rows
        det = ONE
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return ZERO
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            p = m[c][c]
            det *= p
            for r in range(c + 1, n):
                f = m[r][c] / p
                if f:
                    for j in range(c, n):
                        m[r][j] -= f * m[c][j]
        return det

    def rref(self) -> "RatMatrix":
        m, pivots = _row_echelon(self.to_rows())
        for r, c in enumerate(pivots):
            p = m[r][c]
            m[r] = [x / p for x in m[r]]
            for r2 in range(r):
                f = m[r2][c]
                if f:
                    m[r2] = [a - f * b for a, b in zip(m[r2], m[r])]
        return RatMatrix.from_rows(m)


def _row_echelon(m: list[list[mpq]]) -> tuple[list[list[mpq]], list[int]]:
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            f = m[i][c] / m[r][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def dot(a: Sequence[mpq], b: Sequence[mpq]) -> mpq:
    acc = ZERO
    for x, y in zip(a, b):
        if x and y:
            acc += x * y
    return acc


def vecmat(u: Sequence[RatLike], m: RatMatrix) -> tuple:
    """Row vector times matrix."""
    if len(u) != m.rows:
        raise ValueError(f"vector of length {len(u)} times {m.rows}x{m.cols} matrix")
    u = [rat(x) for x in u]
    return tuple(dot(u, m.column(j)) for j in range(m.cols))


# --------------------------------------------------------------------------
# extended Euclidean algorithm
# --------------------------------------------------------------------------

class EeaTriple(NamedTuple):
    """(r, s, t) with r = s*a + t*b for the inputs a, b."""

    r: RatPoly
    s: RatPoly
    t: RatPoly


def _check_eea_args(a: RatPoly, b: RatPoly, t_stop) -> None:
    if a.is_zero() or b.is_zero():
        raise ValueError("EEA inputs must be nonzero")
    if a.deg < b.deg:
        raise ValueError(f"EEA needs deg a >= deg b, got {a.deg} < {b.deg}")
    if t_stop is not None and rat(t_stop) > b.deg:
        raise ValueError(f"stopping degree {t_stop} exceeds deg b = {b.deg}")


def eea_sequence(a: RatPoly, b: RatPoly) -> Iterator[EeaTriple]:
    """Yield the classical EEA triples r_{-1}, r_0, r_1, ... down to r = 0."""
    _check_eea_args(a, b, None)
    one, zero = RatPoly.constant(1), RatPoly()
    prev, cur = EeaTriple(a, one, zero), EeaTriple(b, zero, one)
    yield prev
    yield cur
    while cur.r:
        q, r = divmod(prev.r, cur.r)
        prev, cur = cur, EeaTriple(r, prev.s - q * cur.s, prev.t - q * cur.t)
        yield cur


def eea_with_stop(a: RatPoly, b: RatPoly, t_stop: RatLike) -> EeaTriple:
    """Classical EEA over Q halted at the unique triple with
    deg r_h < t_stop <= deg r_{h-1}.

    ``t_stop`` may be any rational, e.g. (d-1)/2 for even d.
    """
    t_stop = rat(t_stop)
    _check_eea_args(a, b, t_stop)
    for triple in eea_sequence(a, b):
        if triple.r.deg < t_stop:
            return triple
    raise AssertionError("unreachable: the sequence ends with r = 0")


# Fraction-free variant over Z carrying the t cofactor.  Each remainder is a
# rational multiple of the classical one, so the returned triple is an
# associate of the classical triple.

def _primitive_part(p: RatPoly) -> tuple[list, mpq]:
    """Split p = scale * prim with prim in Z[x] primitive."""
    den = common_denominator(p.coeffs)
    ints = [c.numerator * (den // c.denominator) for c in p.coeffs]
    content = mpz(0)
    for x in ints:
        content = gmpy2.gcd(content, x)
    return [x // content for x in ints], mpq(content, den)


def _pseudo_divmod(f: list, g: list) -> tuple[list, list]:
    """lc(g)^(deg f - deg g + 1) * f = q*g + r over Z (ascending lists).

    After scaling f once, plain long division stays in Z: every quotient
    digit is divisible by lc(g).
    """
    m = len(g) - 1
    lc = g[-1]
    delta = len(f) - len(g)
    scale = lc ** (delta + 1)
    r = [x * scale for x in f]
    q = [mpz(0)] * (delta + 1)
    for j in range(delta, -1, -1):
        top = r[j + m]
        if not top:
            continue
        qj = gmpy2.divexact(top, lc)
        q[j] = qj
        for i in range(m):
            gi = g[i]
            if gi:
                r[i + j] -= qj * gi
    return q, _trim(r[:m])


def _int_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [mpz(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_lin(c1, p1: list, p2: list) -> list:
    """c1*p1 - p2."""
    n = max(len(p1), len(p2))
    out = [mpz(0)] * n
    for i, x in enumerate(p1):
        out[i] = c1 * x
    for i, y in enumerate(p2):
        out[i] -= y
    return _trim(out)


def _content(polys) -> mpz:
    g = mpz(0)
    for p in polys:
        for x in p:
            if x:
                g = gmpy2.gcd(g, x)
                if g == 1:
                    return g
    return g


def _ff_remainder_and_t(a: list, b: list, t_stop) -> tuple[list, list]:
    # Primitive PRS: after each pseudo-division the pair (r, t) is divided by
    # the joint content of both, which keeps r = s*a + t*b up to one common
    # rational factor and removes most of the subresultant growth.
    f, g = a, b
    tf, tg = [], [mpz(1)]
    while len(g) - 1 >= t_stop:
        lc = g[-1]
        q, h = _pseudo_divmod(f, g)
        th = _int_lin(lc ** (len(f) - len(g) + 1), tf, _int_mul(q, tg))
        cont = _content((h, th))
        if cont != 1:
            h = [gmpy2.divexact(x, cont) for x in h]
            th = [gmpy2.divexact(x, cont) for x in th]
        f, g, tf, tg = g, h, tg, th
        if not g:
            break
    return g, tg


def eea_with_stop_ff(a: RatPoly, b: RatPoly, t_stop: RatLike,
                     with_s: bool = True) -> EeaTriple:
    """Fraction-free counterpart of :func:`eea_with_stop`.

    Runs a primitive polynomial remainder sequence on the primitive parts
    of ``a`` and ``b`` in Z[x].  The result satisfies r = s*a + t*b and is a nonzero
    rational multiple of the classical triple.  With ``with_s=False`` the s
    component is returned as the zero polynomial.
    """
    t_stop = rat(t_stop)
    _check_eea_args(a, b, t_stop)
    pa, _ = _primitive_part(a)
    pb, scale_b = _primitive_part(b)
    r, t = _ff_remainder_and_t(pa, pb, t_stop)
    # r = s'*pa + t'*pb with pb = b / scale_b
    r_poly = RatPoly(r)
    t_poly = RatPoly(t) / scale_b
    if not with_s:
        return EeaTriple(r_poly, RatPoly(), t_poly)
    s_poly, rem = divmod(r_poly - t_poly * b, a)
    if rem:
        raise ArithmeticError("cofactor recovery failed")
    return EeaTriple(r_poly, s_poly, t_poly)


def poly_gcd_monic(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd via plain Euclid; used as a cross-check."""
    while b:
        a, b = b, a % b
    return a / a.lc if a else a


def lcm_many(xs: Iterable[int]) -> mpz:
    out = mpz(1)
    for x in xs:
        out = gmpy2.lcm(out, x)
    return out


__all__ = [
    "Rat", "rat", "format_rat", "NEG_INF", "ZERO", "ONE",
    "bitwidth_int", "bitwidth_rat", "bitwidth_vector", "bitwidth_poly", "bitwidth_matrix",
    "common_denominator", "RatPoly", "poly_add", "poly_mul", "poly_scale", "poly_eval",
    "RatMatrix", "dot", "vecmat", "EeaTriple", "eea_sequence", "eea_with_stop",
    "eea_with_stop_ff", "poly_gcd_monic", "lcm_many",
]
