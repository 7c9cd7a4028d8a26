"""Seeded experiments: codeword growth statistics and decoder runtime trend.

Every trial draws from its own RNG stream keyed by (seed, n, trial), so the
output does not depend on execution order and runs are reproducible.
"""

from __future__ import annotations

import csv
import io
import math
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .codec import DecodeFailure, ErrorPattern, corrupt, decode, encode, syndrome
from .construction import AlphaChoice, GeneratorKind, GrsCode, Preset, choose_alphas, make_code
from .exact import bitwidth_vector, rat

CSV_HEADER = ("n", "k", "trial", "lambda_u", "lambda_c", "lambda_s",
              "alpha_choice", "preset", "genkind", "decode_ok", "time_us")


def sample_rational(t: int, rng: random.Random):
    """Random nonzero rational of bit width at most t.

    Numerator magnitude uniform in [1, 2^t - 1] with a random sign,
    denominator uniform in [1, 2^t - 1], then reduced.
    """
    if t < 1:
        raise ValueError("bit width must be at least 1")
    top = (1 << t) - 1
    num = rng.randint(1, top)
    if rng.random() < 0.5:
        num = -num
    return rat(num) / rng.randint(1, top)


def trial_rng(seed: int, n: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{n}:{trial}")


def random_error(n: int, tau: int, bits: int, rng: random.Random) -> ErrorPattern:
    positions = rng.sample(range(1, n + 1), tau)
    return ErrorPattern({p: sample_rational(bits, rng) for p in sorted(positions)})


@dataclass
class ExperimentConfig:
    trials: int = 100
    n_values: Sequence[int] = (30, 60, 90, 120)
    k: Optional[int] = None          # None: k = floor(n/3)
    info_bits: int = 100
    error_bits: int = 32
    tau: Optional[int] = None        # None: decoding radius
    alpha_choice: AlphaChoice = AlphaChoice.MIN_BITWIDTH
    preset: Preset = Preset.V_PRIME_ONE
    genkind: GeneratorKind = GeneratorKind.VANDERMONDE
    seed: int = 0
    decode: bool = False
    timing: bool = False

    def __post_init__(self):
        self.alpha_choice = AlphaChoice(self.alpha_choice)
        self.preset = Preset(self.preset)
        self.genkind = GeneratorKind(self.genkind)
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for n in self.n_values:
            k = self.k_for(n)
            if not 1 <= k < n:
                raise ValueError(f"need n > k >= 1, got n={n}, k={k}")
        if self.alpha_choice is AlphaChoice.CUSTOM or self.preset is Preset.CUSTOM:
            raise ValueError("experiments need a generated locator set and a named preset")

    def k_for(self, n: int) -> int:
        return n // 3 if self.k is None else self.k

    def tau_for(self, code: GrsCode) -> int:
        return code.radius if self.tau is None else min(self.tau, code.n)


@dataclass
class StatRow:
    n: int
    k: int
    trial: int
    lambda_u: int
    lambda_c: int
    lambda_s: Optional[int]
    alpha_choice: str
    preset: str
    genkind: str
    decode_ok: Optional[bool]
    time_us: int = 0

    def as_csv_row(self) -> list:
        return [self.n, self.k, self.trial, self.lambda_u, self.lambda_c,
                "" if self.lambda_s is None else self.lambda_s,
                self.alpha_choice, self.preset, self.genkind,
                "" if self.decode_ok is None else int(self.decode_ok), self.time_us]


def build_code(cfg: ExperimentConfig, n: int) -> GrsCode:
    return make_code(n, cfg.k_for(n), choose_alphas(cfg.alpha_choice, n), cfg.preset)


def run_trial(cfg: ExperimentConfig, code: GrsCode, trial: int) -> StatRow:
    rng = trial_rng(cfg.seed, code.n, trial)
    u = [sample_rational(cfg.info_bits, rng) for _ in range(code.k)]
    c = encode(code, cfg.genkind, u)
    lambda_s = decode_ok = None
    elapsed = 0
    if cfg.decode:
        e = random_error(code.n, cfg.tau_for(code), cfg.error_bits, rng)
        r = corrupt(c, e)
        lambda_s = bitwidth_vector(syndrome(code, r))
        start = time.perf_counter()
        try:
            out = decode(code, r)
            decode_ok = out.codeword == c
        except DecodeFailure:
            decode_ok = False
        elapsed = int((time.perf_counter() - start) * 1e6)
    return StatRow(code.n, code.k, trial, bitwidth_vector(u), bitwidth_vector(c), lambda_s,
                   cfg.alpha_choice.value, cfg.preset.value, cfg.genkind.value, decode_ok,
                   elapsed if cfg.timing else 0)


def run_stats(cfg: ExperimentConfig) -> list[StatRow]:
    rows = []
    for n in cfg.n_values:
        code = build_code(cfg, n)
        rows.extend(run_trial(cfg, code, t) for t in range(cfg.trials))
    return rows


@dataclass
class SummaryRow:
    n: int
    k: int
    alpha_choice: str
    preset: str
    genkind: str
    mean_lambda_u: float
    mean_lambda_c: float
    mean_lambda_s: Optional[float]
    decode_ok_rate: Optional[float]
    mean_time_us: float
    trials: int = field(default=0)

    def as_csv_row(self) -> list:
        fmt = lambda x: "" if x is None else f"{x:.6f}"  # noqa: E731
        return [self.n, self.k, "mean", fmt(self.mean_lambda_u), fmt(self.mean_lambda_c),
                fmt(self.mean_lambda_s), self.alpha_choice, self.preset, self.genkind,
                fmt(self.decode_ok_rate), fmt(self.mean_time_us)]


def summarize(rows: Iterable[StatRow]) -> list[SummaryRow]:
    groups: dict = {}
    for r in rows:
        groups.setdefault((r.n, r.k, r.alpha_choice, r.preset, r.genkind), []).append(r)
    out = []
    for (n, k, a, p, g), grp in groups.items():
        dec = [r for r in grp if r.decode_ok is not None]
        out.append(SummaryRow(
            n, k, a, p, g,
            statistics.fmean(r.lambda_u for r in grp),
            statistics.fmean(r.lambda_c for r in grp),
            statistics.fmean(r.lambda_s for r in dec) if dec else None,
            statistics.fmean(int(r.decode_ok) for r in dec) if dec else None,
            statistics.fmean(r.time_us for r in grp),
            len(grp)))
    return out


def stats_csv(rows: Sequence[StatRow], with_summary: bool = True) -> str:
    rows = sorted(rows, key=lambda r: (r.alpha_choice, r.preset, r.genkind, r.n, r.trial))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_csv_row())
    if with_summary:
        for s in summarize(rows):
            w.writerow(s.as_csv_row())
    return buf.getvalue()


# --------------------------------------------------------------------------
# runtime trend
# --------------------------------------------------------------------------

TREND_HEADER = ("n", "k", "tau", "mean_time_us", "mean_time_us_clean", "all_ok")


@dataclass
class TrendPoint:
    n: int
    k: int
    tau: int
    mean_time_us: float
    mean_time_us_clean: float
    all_ok: bool


@dataclass
class TrendResult:
    points: list
    slope: float
    slope_limit: float

    @property
    def ratios_ok(self) -> bool:
        """Consecutive time ratios stay within 2 * (n ratio)^slope_limit."""
        for a, b in zip(self.points, self.points[1:]):
            allowed = 2 * (b.n / a.n) ** self.slope_limit
            if b.mean_time_us > allowed * a.mean_time_us:
                return False
        return True

    @property
    def ok(self) -> bool:
        return self.slope < self.slope_limit and self.ratios_ok and all(p.all_ok for p in self.points)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TREND_HEADER)
        for p in self.points:
            w.writerow([p.n, p.k, p.tau, f"{p.mean_time_us:.1f}", f"{p.mean_time_us_clean:.1f}", int(p.all_ok)])
        w.writerow(["slope", f"{self.slope:.4f}", "limit", f"{self.slope_limit:g}", "ok", int(self.ok)])
        return buf.getvalue()


def loglog_slope(ns: Sequence[float], times: Sequence[float]) -> float:
    if len(ns) < 2:
        return 0.0
    fit = statistics.linear_regression([math.log(n) for n in ns],
                                       [math.log(max(t, 1.0)) for t in times])
    return fit.slope


def runtime_trend(cfg: ExperimentConfig, slope_limit: float = 9.0) -> TrendResult:
    """Time decoding at radius-weight errors (and of clean words) over n."""
    points = []
    for n in cfg.n_values:
        code = build_code(cfg, n)
        tau = cfg.tau_for(code)
        times, clean, ok = [], [], True
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, n, trial)
            u = [sample_rational(cfg.info_bits, rng) for _ in range(code.k)]
            c = encode(code, cfg.genkind, u)
            r = corrupt(c, random_error(n, tau, cfg.error_bits, rng))
            start = time.perf_counter()
            try:
                ok &= decode(code, r).codeword == c
            except DecodeFailure:
                ok = False
            times.append((time.perf_counter() - start) * 1e6)
            start = time.perf_counter()
            ok &= decode(code, c).codeword == c
            clean.append((time.perf_counter() - start) * 1e6)
        points.append(TrendPoint(n, code.k, tau, statistics.fmean(times), statistics.fmean(clean), ok))
    slope = loglog_slope([p.n for p in points], [p.mean_time_us for p in points])
    return TrendResult(points, slope, slope_limit)
