"""Closed-form bit-width bounds and a checker comparing them with measurements.

Every calculator takes bit widths as plain integers instead of recomputing
them, so measurement and bounding stay separate.  ``preset=None`` (or
``Preset.CUSTOM``) selects the general row of the tables.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .construction import GeneratorKind, GrsCode, Preset
from .exact import (RatMatrix, RatPoly, bitwidth_matrix, bitwidth_poly,
                    bitwidth_vector)

QUANTITIES = ("G", "H", "c", "c_table", "s", "s_table", "s_int", "xiS", "Lambda", "Omega", "u", "e")


@dataclass(frozen=True)
class BoundInputs:
    n: int
    k: int
    tau: int = 0
    lambda_alpha: int = 0
    lambda_v: int = 0
    lambda_v_prime: int = 0
    lambda_u: int = 0
    lambda_e: int = 0

    @classmethod
    def from_code(cls, code: GrsCode, **kw) -> "BoundInputs":
        return cls(code.n, code.k,
                   lambda_alpha=bitwidth_vector(code.alphas),
                   lambda_v=bitwidth_vector(code.v),
                   lambda_v_prime=bitwidth_vector(code.v_prime), **kw)


def _row(preset: Optional[Preset]) -> Optional[Preset]:
    return None if preset in (None, Preset.CUSTOM) else Preset(preset)


# --------------------------------------------------------------------------
# generator and parity-check matrices
# --------------------------------------------------------------------------

def bound_G_vandermonde(b: BoundInputs, preset: Optional[Preset] = None,
                        corrected: bool = False) -> int:
    """With ``corrected``, the c_i d_j = 1 row counts k factors in v'_i for
    the columns i > k instead of k - 1; the tabulated cell undercounts them
    and is exceeded e.g. at n=5, k=2."""
    n, k, la = b.n, b.k, b.lambda_alpha
    row = _row(preset)
    if row is None:
        return (k - 1) * la + b.lambda_v_prime
    if row is Preset.V_PRIME_ONE:
        return (k - 1) * la
    if row is Preset.CAUCHY_UNIT:
        if corrected:
            return (3 * k - 1) * la + k
        return (k - 1) * (3 * la + 1)
    return (2 * n + k - 3) * la + n - 1


def bound_G_cauchy(b: BoundInputs, preset: Optional[Preset] = None) -> int:
    n, k, la = b.n, b.k, b.lambda_alpha
    row = _row(preset)
    if row is None:
        return 2 * (2 * k - 1) * la + 2 * b.lambda_v_prime + 2 * k - 1
    if row is Preset.V_PRIME_ONE:
        return 2 * (k - 1) * (2 * la + 1)
    if row is Preset.CAUCHY_UNIT:
        return 2 * la + 1
    return (2 * n - 2 * k + 1) * (2 * la + 1)


def bound_G(b: BoundInputs, preset: Optional[Preset], kind: GeneratorKind,
            corrected: bool = False) -> int:
    if kind is GeneratorKind.VANDERMONDE:
        return bound_G_vandermonde(b, preset, corrected)
    return bound_G_cauchy(b, preset)


def bound_H(b: BoundInputs, preset: Optional[Preset] = None) -> int:
    n, k, la = b.n, b.k, b.lambda_alpha
    row = _row(preset)
    if row is None:
        # printed without the additive constant its siblings carry
        return (n - k - 1) * la + b.lambda_v
    if row is Preset.V_PRIME_ONE:
        return (3 * n - k - 3) * la + n - 1
    if row is Preset.CAUCHY_UNIT:
        return (3 * (n - k) - 1) * la + n - k
    return (n - k - 1) * la


# --------------------------------------------------------------------------
# codeword and syndrome
# --------------------------------------------------------------------------

def bound_codeword(b: BoundInputs, lambda_G: int) -> int:
    return b.k * (b.lambda_u + lambda_G + 1)


def bound_codeword_table(b: BoundInputs, preset: Optional[Preset], kind: GeneratorKind,
                         corrected: bool = False) -> int:
    """Codeword bound with the tabulated generator bound plugged in."""
    return bound_codeword(b, bound_G(b, preset, kind, corrected))


def bound_syndrome(b: BoundInputs, lambda_H: int, integer_H: bool = False) -> int:
    if integer_H:
        return (b.tau + 1) * b.lambda_e + lambda_H + b.n
    return b.tau * (b.lambda_e + lambda_H + 1)


def bound_syndrome_table(b: BoundInputs, preset: Optional[Preset], integer_H: bool = False,
                         variant: str = "loose") -> int:
    """Preset-specific syndrome bound.

    For ``Preset.CAUCHY_UNIT`` two printed forms exist; ``variant="tight"``
    uses (3n-3k-1) lambda(alpha), ``variant="loose"`` the looser
    3(n-k) lambda(alpha).  The integer-H forms only exist in the looser shape.
    """
    n, k, la, le, tau = b.n, b.k, b.lambda_alpha, b.lambda_e, b.tau
    row = _row(preset)
    if row is Preset.CAUCHY_UNIT:
        if integer_H:
            return (tau + 1) * le + 3 * (n - k) * la + 2 * n - k
        if variant == "tight":
            return tau * (le + (3 * n - 3 * k - 1) * la + n - k + 1)
        if variant == "loose":
            return tau * (le + 3 * (n - k) * la + n - k + 1)
        raise ValueError(f"unknown variant {variant!r}")
    return bound_syndrome(b, bound_H(b, preset), integer_H)


# --------------------------------------------------------------------------
# decoder internals
# --------------------------------------------------------------------------

def bound_eea_input(d: int, lambda_s: int) -> int:
    return d * (lambda_s + 1)


def bound_lambda_locator(tau: int, lambda_alpha: int) -> int:
    return tau * (lambda_alpha + 2)


def bound_lambda_omega(b: BoundInputs) -> int:
    return b.tau * (b.lambda_alpha + b.lambda_e + b.lambda_v + 5)


# --------------------------------------------------------------------------
# conformance
# --------------------------------------------------------------------------

@dataclass
class GrowthReport:
    """Measured bit widths next to their bounds.

    ``floored`` lists matrix quantities whose tabulated bound fell below 1
    and was raised to lambda(1) = 1, the width of any nonzero matrix.  ``skipped`` lists
    measured quantities that have no bound for this run (e.g. decoder
    internals when no error occurred).
    """

    measured: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    floored: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def conforms(self) -> bool:
        return all(self.measured[q] <= self.bounds[q] for q in self.bounds if q in self.measured)

    def violations(self) -> list:
        return [q for q in self.bounds if q in self.measured and self.measured[q] > self.bounds[q]]

    def merged(self, other: "GrowthReport") -> "GrowthReport":
        return replace(self, measured={**self.measured, **other.measured},
                       bounds={**self.bounds, **other.bounds},
                       floored=sorted(set(self.floored) | set(other.floored)),
                       skipped=sorted(set(self.skipped) | set(other.skipped)))

    def to_record(self) -> dict:
        rec = {}
        for q in QUANTITIES:
            rec[f"measured_{q}"] = self.measured.get(q, "")
            rec[f"bound_{q}"] = self.bounds.get(q, "")
        rec["conforms"] = int(self.conforms)
        return rec

    def to_csv(self) -> str:
        buf = io.StringIO()
        rec = self.to_record()
        writer = csv.DictWriter(buf, fieldnames=list(rec), lineterminator="\n")
        writer.writeheader()
        writer.writerow(rec)
        return buf.getvalue()


def is_integer_matrix(m: RatMatrix) -> bool:
    return all(x.denominator == 1 for x in m.entries)


def conformance_check(code: GrsCode, *, kind: Optional[GeneratorKind] = None,
                      u: Optional[Sequence] = None, c: Optional[Sequence] = None,
                      e: Optional[Sequence] = None, s: Optional[Sequence] = None,
                      xiS: Optional[RatPoly] = None, Lambda: Optional[RatPoly] = None,
                      Omega: Optional[RatPoly] = None,
                      cauchy_syndrome_variant: str = "loose",
                      corrected: bool = False) -> GrowthReport:
    """Measure whatever quantities are supplied and bound them.

    Decoder quantities (s, xiS, Lambda, Omega) need the error ``e`` to fix
    tau; with tau = 0 they are measured but not bounded.

    Matrix bounds are the tabulated cells, except that cells whose (k-1) or
    (n-k-1) factor vanishes are raised to 1 (listed in ``floored``), the
    width of any nonzero matrix.  The c_i d_j = 1 Vandermonde cell
    undercounts v' and can be exceeded; ``corrected=True`` swaps in the
    recounted cell.
    """
    rep = GrowthReport()
    m, bnd = rep.measured, rep.bounds
    base = BoundInputs.from_code(code)
    preset = code.preset

    def put_matrix_bound(q, value):
        if value < 1:
            rep.floored.append(q)
            value = 1
        bnd[q] = value

    H = code.H
    m["H"] = bitwidth_matrix(H)
    put_matrix_bound("H", bound_H(base, preset))

    if kind is not None:
        G = code.generator(kind)
        m["G"] = bitwidth_matrix(G)
        put_matrix_bound("G", bound_G(base, preset, kind, corrected))
    if u is not None:
        m["u"] = bitwidth_vector(u)
        base = replace(base, lambda_u=m["u"])
    if c is not None:
        m["c"] = bitwidth_vector(c)
        if kind is not None and u is not None:
            bnd["c"] = bound_codeword(base, m["G"])
            bnd["c_table"] = bound_codeword_table(base, preset, kind, corrected)
            m["c_table"] = m["c"]

    tau = None
    if e is not None:
        m["e"] = bitwidth_vector(e)
        tau = sum(1 for x in e if x)
        base = replace(base, lambda_e=m["e"], tau=tau)

    dec = {"s": s is not None, "xiS": xiS is not None,
           "Lambda": Lambda is not None, "Omega": Omega is not None}
    if s is not None:
        m["s"] = bitwidth_vector(s)
    if xiS is not None:
        m["xiS"] = bitwidth_poly(xiS)
    if Lambda is not None:
        m["Lambda"] = bitwidth_poly(Lambda)
    if Omega is not None:
        m["Omega"] = bitwidth_poly(Omega)

    if tau:
        integer_H = is_integer_matrix(H)
        if dec["s"]:
            bnd["s"] = bound_syndrome(base, m["H"])
            bnd["s_table"] = bound_syndrome_table(base, preset, variant=cauchy_syndrome_variant)
            m["s_table"] = m["s"]
            if integer_H:
                bnd["s_int"] = bound_syndrome(base, m["H"], integer_H=True)
                m["s_int"] = m["s"]
        if dec["xiS"] and dec["s"]:
            bnd["xiS"] = bound_eea_input(code.d, m["s"])
        if dec["Lambda"]:
            bnd["Lambda"] = bound_lambda_locator(tau, base.lambda_alpha)
        if dec["Omega"]:
            bnd["Omega"] = bound_lambda_omega(base)
    else:
        rep.skipped.extend(q for q, present in dec.items() if present)
    return rep


def bound_table(b: BoundInputs) -> list[tuple[str, str, int]]:
    """Every tabulated cell evaluated for ``b`` as (row, column, value)."""
    rows = [("general", None), ("v'=1, v=w", Preset.V_PRIME_ONE),
            ("c_i d_j=1", Preset.CAUCHY_UNIT), ("v=1, v'=w", Preset.V_ONE)]
    out = []
    for label, preset in rows:
        out.append((label, "lambda(G_GRS)", bound_G_vandermonde(b, preset)))
        out.append((label, "lambda(G_Cauchy)", bound_G_cauchy(b, preset)))
        out.append((label, "lambda(H_GRS)", bound_H(b, preset)))
        out.append((label, "lambda(c), G_GRS",
                    bound_codeword_table(b, preset, GeneratorKind.VANDERMONDE)))
        out.append((label, "lambda(c), G_Cauchy",
                    bound_codeword_table(b, preset, GeneratorKind.CAUCHY_SYSTEMATIC)))
        if preset is Preset.CAUCHY_UNIT:
            out.append((label, "lambda(G_GRS) [recounted]", bound_G_vandermonde(b, preset, corrected=True)))
            out.append((label, "lambda(s) [tight form]", bound_syndrome_table(b, preset, variant="tight")))
            out.append((label, "lambda(s) [loose form]", bound_syndrome_table(b, preset, variant="loose")))
        else:
            out.append((label, "lambda(s)", bound_syndrome_table(b, preset)))
        if preset in (Preset.V_ONE, Preset.CAUCHY_UNIT):
            out.append((label, "lambda(s), H integer", bound_syndrome_table(b, preset, integer_H=True)))
    out.append(("decoder", "lambda(Lambda)", bound_lambda_locator(b.tau, b.lambda_alpha)))
    out.append(("decoder", "lambda(Omega)", bound_lambda_omega(b)))
    return out
