"""Empirical verification of asymptotic normality.

Provides standardization of sampled statistics, the Kolmogorov distance of a
standardized sample against the standard normal, the normal-approximation
criterion ``k * delta^(m-1) / Var^(m/2)`` with its m = 3 rate bound, and the
rank-regime classification that decides which convergence-rate bound applies
to a bounded-height inversion statistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import depgraph, formulas, stats
from .errors import WeylstatError
from .rootsys import RootSystem
from .stats import SampleRun, frac_str
from .weyl import DEFAULT_CAP


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function.

    ``math.erfc`` is evaluated by the platform libm to within a few ulp,
    far inside the 1e-10 absolute target; accuracy is pinned by a committed
    table of high-precision reference values.
    """
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def standardize(run: SampleRun | list, mean: Fraction, variance: Fraction) -> list[float]:
    """Center and scale sample values to unit variance, in double precision."""
    if variance <= 0:
        raise WeylstatError(f"variance must be positive, got {variance}")
    values = run.values if isinstance(run, SampleRun) else run
    mu = float(mean)
    sigma = math.sqrt(float(variance))
    return [(v - mu) / sigma for v in values]


def ks_distance(standardized: list[float]) -> float:
    """Sup distance between the empirical CDF and the standard normal.

    Evaluated at both one-sided limits of every sample point.
    """
    if not standardized:
        raise WeylstatError("cannot compute a KS distance of an empty sample")
    xs = sorted(standardized)
    m = len(xs)
    best = 0.0
    for i, x in enumerate(xs):
        phi = normal_cdf(x)
        best = max(best, abs((i + 1) / m - phi), abs(phi - i / m))
    return best


def janson_criterion(k: int, delta: int, variance, m: int = 3) -> float:
    """The normal-approximation quantity ``k * delta^(m-1) / Var^(m/2)``.

    An edgeless family has delta = 0; it is replaced by 1 so the criterion
    stays a usable (non-vacuous) bound.  For m = 3 this is the convergence
    rate bound ``k * delta^2 * Var^(-3/2)``.
    """
    if m < 2:
        raise WeylstatError("criterion needs m >= 2")
    if variance <= 0:
        raise WeylstatError("criterion needs positive variance")
    return k * max(delta, 1) ** (m - 1) / float(variance) ** (m / 2)


@dataclass(frozen=True)
class RegimeClassification:
    """Rank mass per regime bucket and the three candidate rate bounds."""

    r_a: int
    r_b: int
    r_c: int
    regime: str  # bucket holding the largest rank mass: "A", "B" or "C"
    rates: tuple[tuple[str, float, bool], ...]  # (bucket, rate, side condition holds)


def classify_regime(component_ranks, d: int) -> RegimeClassification:
    """Partition components by rank versus d and report candidate rates.

    Buckets: rank < d (A), d <= rank <= d^2 (B), d^2 < rank (C).  The B rate
    ``r * d^(-3/2)`` carries the side condition ``d >= r^(2/3)`` and the C
    rate ``r^(-1/2) * d^(3/2)`` the condition ``d <= r^(1/3)``, both
    evaluated exactly in integers.
    """
    ranks = list(component_ranks)
    if d < 1 or any(r < 1 for r in ranks) or not ranks:
        raise WeylstatError("need positive d and at least one positive rank")
    r_a = sum(r for r in ranks if r < d)
    r_b = sum(r for r in ranks if d <= r <= d * d)
    r_c = sum(r for r in ranks if d * d < r)
    r = r_a + r_b + r_c
    buckets = {"A": r_a, "B": r_b, "C": r_c}
    regime = max("ABC", key=lambda key: (buckets[key], -ord(key)))
    rates = (
        ("A", r**-0.5, True),
        ("B", r * d**-1.5, d**3 >= r * r),
        ("C", r**-0.5 * d**1.5, d**3 <= r),
    )
    return RegimeClassification(r_a, r_b, r_c, regime, rates)


@dataclass
class CLTReport:
    """One normality experiment: moments, sampled KS distance, rate bound."""

    spec: str
    statistic: str  # "descents" or "inversions"
    d: int
    k: int
    delta: int
    mean: Fraction
    variance: Fraction
    seed: int
    n_samples: int
    ks: float
    janson_m3: float
    regime: RegimeClassification | None

    def to_json_dict(self) -> dict:
        out = {
            "spec": self.spec,
            "statistic": self.statistic,
            "d": self.d,
            "k": self.k,
            "delta": self.delta,
            "mean": frac_str(self.mean),
            "variance": frac_str(self.variance),
            "seed": self.seed,
            "n": self.n_samples,
            "ks_distance": self.ks,
            "janson_m3": self.janson_m3,
        }
        if self.regime is not None:
            out["regime"] = {
                "r_a": self.regime.r_a,
                "r_b": self.regime.r_b,
                "r_c": self.regime.r_c,
                "regime": self.regime.regime,
                "rates": [
                    {"bucket": b, "rate": rate, "condition_holds": cond}
                    for b, rate, cond in self.regime.rates
                ],
            }
        return out

    def csv_row(self, rank: int):
        return (rank, self.d, self.k, self.delta, frac_str(self.variance),
                repr(self.ks), repr(self.janson_m3))


def theoretical_variance(rs: RootSystem, d: int, statistic: str) -> Fraction:
    """Exact variance of the height-d statistic, one component at a time.

    Classical components use the closed formulas (clamped at their maximal
    height); a G2 component is enumerated outright.  Components act
    independently, so variances add.
    """
    total = Fraction(0)
    for ci, comp in enumerate(rs.spec.components):
        if comp.family == "G2":
            sub = stats._component_hist(
                rs, ci,
                [rs.roots[k] for k in rs.component_root_ids(ci)
                 if (rs.heights[k] == d if statistic == "descents" else rs.heights[k] <= d)],
                threads=1,
            )
            n = sum(sub.values())
            s1 = sum(v * c for v, c in sub.items())
            s2 = sum(v * v * c for v, c in sub.items())
            total += Fraction(s2, n) - Fraction(s1, n) ** 2
            continue
        n_param = comp.rank + 1 if comp.family == "A" else comp.rank
        top = {"A": n_param - 1, "B": 2 * comp.rank - 1,
               "C": 2 * comp.rank - 1, "D": 2 * comp.rank - 3}[comp.family]
        if statistic == "descents":
            if d > top:
                continue  # no roots of that height in this component
            q = formulas.VarianceQuery(comp.family, n_param, d, "descents")
            total += formulas.var_descents(q)
        else:
            q = formulas.VarianceQuery(comp.family, n_param, min(d, top), "inversions")
            total += formulas.var_inversions(q)
    return total


def clt_report(
    rs: RootSystem,
    d: int,
    statistic: str,
    n_samples: int,
    seed: int,
    threads: int = 1,
    cap: int = DEFAULT_CAP,
) -> CLTReport:
    """Run the sample-standardize-KS-criterion pipeline for one experiment."""
    if statistic not in ("descents", "inversions"):
        raise WeylstatError(f"unknown statistic {statistic!r}")
    psi = rs.roots_of_height(d) if statistic == "descents" else rs.roots_up_to_height(d)
    if not psi:
        raise WeylstatError(f"no roots of height {'=' if statistic == 'descents' else '<='} {d}")
    mean = stats.exact_mean(rs, psi)
    variance = theoretical_variance(rs, d, statistic)
    graph = depgraph.build_graph(rs, psi)
    run = stats.mc_run(
        rs, psi, n_samples, seed, threads=threads,
        descriptor={"stat": statistic, "d": d},
    )
    z = standardize(run, mean, variance)
    ks = ks_distance(z)
    crit = janson_criterion(len(psi), graph.max_degree, variance, m=3)
    regime = None
    if statistic == "inversions":
        regime = classify_regime([c.rank for c in rs.spec.components], d)
    return CLTReport(
        spec=str(rs.spec),
        statistic=statistic,
        d=d,
        k=len(psi),
        delta=graph.max_degree,
        mean=mean,
        variance=variance,
        seed=seed,
        n_samples=n_samples,
        ks=ks,
        janson_m3=crit,
        regime=regime,
    )
