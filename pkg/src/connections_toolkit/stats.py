"""Welch's and paired t-tests.

Two-sided p-values come from the Student-t distribution evaluated through
the regularized incomplete beta function, computed with the classic
continued-fraction expansion (Lentz's algorithm). Degenerate samples (too
small, zero variance) are loud errors: silently returning p = NaN has
burned too many evaluation pipelines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import StatsError

_MAX_ITER = 300
_EPS = 3e-14
_TINY = 1e-300


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: float
    p: float  # two-sided
    kind: str  # "welch" | "paired"

    def to_dict(self) -> dict:
        return {"t": self.t, "df": self.df, "p": self.p, "kind": self.kind}


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise StatsError(f"incomplete beta failed to converge for a={a}, b={b}, x={x}")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise StatsError(f"beta parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise StatsError(f"x must be within [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # The continued fraction converges fast on one side of the mean.
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def student_t_two_sided_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for T ~ Student-t with df degrees of freedom."""
    if df <= 0:
        raise StatsError(f"degrees of freedom must be positive, got {df}")
    x = df / (df + t * t)
    return regularized_incomplete_beta(df / 2.0, 0.5, x)


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs)


def _sample_variance(xs: Sequence[float]) -> float:
    m = _mean(xs)
    return sum((x - m) ** 2 for x in xs) / (len(xs) - 1)


def _check_sample(name: str, xs: Sequence[float]) -> None:
    if len(xs) < 2:
        raise StatsError(f"sample {name} needs at least 2 values, got {len(xs)}")


def welch_t(sample_a: Sequence[float], sample_b: Sequence[float]) -> TTestResult:
    """Welch's unequal-variance t-test with Welch-Satterthwaite df."""
    a = [float(x) for x in sample_a]
    b = [float(x) for x in sample_b]
    _check_sample("a", a)
    _check_sample("b", b)
    va, vb = _sample_variance(a), _sample_variance(b)
    if va == 0.0:
        raise StatsError("sample a has zero variance; Welch's t is undefined")
    if vb == 0.0:
        raise StatsError("sample b has zero variance; Welch's t is undefined")
    na, nb = len(a), len(b)
    sa, sb = va / na, vb / nb
    se2 = sa + sb
    t = (_mean(a) - _mean(b)) / math.sqrt(se2)
    df = se2 * se2 / (sa * sa / (na - 1) + sb * sb / (nb - 1))
    return TTestResult(t=t, df=df, p=student_t_two_sided_p(t, df), kind="welch")


def paired_t(sample_a: Sequence[float], sample_b: Sequence[float]) -> TTestResult:
    """Dependent (paired) t-test on elementwise differences, df = n - 1."""
    a = [float(x) for x in sample_a]
    b = [float(x) for x in sample_b]
    if len(a) != len(b):
        raise StatsError(f"paired samples differ in length: {len(a)} vs {len(b)}")
    _check_sample("a", a)
    diffs = [x - y for x, y in zip(a, b)]
    vd = _sample_variance(diffs)
    if vd == 0.0:
        raise StatsError("difference variance is zero; paired t is undefined")
    n = len(diffs)
    t = _mean(diffs) / math.sqrt(vd / n)
    df = float(n - 1)
    return TTestResult(t=t, df=df, p=student_t_two_sided_p(t, df), kind="paired")
