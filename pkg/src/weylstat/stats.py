"""Exact and Monte Carlo distributions of root-indicator statistics.

For a set Psi of positive roots, the statistic of an element w counts the
roots of Psi sent to negative roots.  Exact results come from enumerating
each irreducible component's group once and convolving the per-component
histograms (components act on orthogonal blocks, so their contributions are
independent); everything on the exact path is integer or rational, never
floating point.

Monte Carlo runs draw in fixed chunks of :data:`CHUNK_SAMPLES` samples; chunk
``c`` uses an independent rng stream seeded with ``derived_seed(seed, c)``.
Results are therefore bit-identical for any worker count: workers process
disjoint chunks and the merge is associative integer accumulation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import itertools

import numpy as np

from .errors import TooLargeError, WeylstatError
from .rootsys import Root, RootSystem
from .weyl import (
    _G2_INV_MASKS,
    _G2_ORDER,
    DEFAULT_CAP,
    derived_seed,
    group_order,
)

CHUNK_ELEMENTS = 65536
CHUNK_SAMPLES = 4096
BOOTSTRAP_RESAMPLES = 200
_MATRIX_CACHE_LIMIT = 200_000
JOINT_OUTCOME_GUARD = 20


def frac_str(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class WPartitionCounts:
    """Sizes of the four sign classes of the group for a root pair.

    ``pp`` counts elements keeping both roots positive, ``pm`` those keeping
    the first positive and sending the second negative, and so on.
    """

    pp: int
    pm: int
    mp: int
    mm: int

    @property
    def total(self) -> int:
        return self.pp + self.pm + self.mp + self.mm


@dataclass
class SampleRun:
    """A seeded Monte Carlo record with exact sample moments."""

    spec: str
    descriptor: dict
    seed: int
    n_samples: int
    values: list[int]
    sample_mean: Fraction
    sample_variance: Fraction

    def to_json_dict(self, include_values: bool = True) -> dict:
        out = {
            "spec": self.spec,
            "psi": self.descriptor,
            "seed": self.seed,
            "n": self.n_samples,
        }
        if include_values:
            out["values"] = list(self.values)
        out["moments"] = {
            "mean": frac_str(self.sample_mean),
            "variance": frac_str(self.sample_variance),
        }
        return out


# -- helpers -------------------------------------------------------------------

def _check_cap(rs: RootSystem, cap: int) -> int:
    order = group_order(rs)
    if order > cap:
        raise TooLargeError(order, cap)
    return order


def _canonical_ids(rs: RootSystem, roots) -> tuple[int, ...]:
    return tuple(sorted({rs.index(r) for r in roots}))


def _component_order(comp) -> int:
    fam, n = comp.family, comp.rank
    if fam == "G2":
        return _G2_ORDER
    f = 1
    top = n + 1 if fam == "A" else n
    for k in range(2, top + 1):
        f *= k
    if fam in ("B", "C"):
        f *= 2**n
    elif fam == "D":
        f *= 2 ** (n - 1)
    return f


def _split_by_component(rs: RootSystem, ids):
    by_comp: dict[int, list[Root]] = {}
    for k in ids:
        r = rs.roots[k]
        by_comp.setdefault(r.component, []).append(r)
    return by_comp


# -- classical enumeration (numpy rows of signed one-line values) ----------------

def _signs_matrix(fam: str, n: int) -> np.ndarray:
    if fam in ("B", "C"):
        rows = list(itertools.product((1, -1), repeat=n))
    else:  # type D: free head, last sign fixes even parity
        rows = []
        for head in itertools.product((1, -1), repeat=n - 1):
            last = 1
            for s in head:
                last *= s
            rows.append(head + (last,))
    return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=8)
def _cached_matrix(fam: str, rank: int) -> np.ndarray:
    """Full element matrix of one component, rows in enumeration order."""
    dim = rank + 1 if fam == "A" else rank
    perms = np.array(list(itertools.permutations(range(1, dim + 1))), dtype=np.int64)
    if fam == "A":
        return perms
    signs = _signs_matrix(fam, rank)
    reps = np.repeat(perms, len(signs), axis=0)
    return reps * np.tile(signs, (len(perms), 1))


def _row_chunks(fam: str, rank: int, order: int):
    """Yield (m, dim) blocks of element rows in enumeration order."""
    if order <= _MATRIX_CACHE_LIMIT:
        full = _cached_matrix(fam, rank)
        for lo in range(0, len(full), CHUNK_ELEMENTS):
            yield full[lo : lo + CHUNK_ELEMENTS]
        return
    dim = rank + 1 if fam == "A" else rank
    perm_iter = itertools.permutations(range(1, dim + 1))
    if fam == "A":
        while True:
            block = list(itertools.islice(perm_iter, CHUNK_ELEMENTS))
            if not block:
                return
            yield np.array(block, dtype=np.int64)
    else:
        signs = _signs_matrix(fam, rank)
        per_perm = len(signs)
        batch = max(1, CHUNK_ELEMENTS // per_perm)
        while True:
            block = list(itertools.islice(perm_iter, batch))
            if not block:
                return
            perms = np.array(block, dtype=np.int64)
            yield np.repeat(perms, per_perm, axis=0) * np.tile(signs, (len(block), 1))


def _compile_roots(roots) -> dict:
    """Column-index arrays for vectorized sign tests, per root form."""
    iN, jN, iP, jP, iO = [], [], [], [], []
    for r in roots:
        if r.form == "N":
            iN.append(r.i - 1)
            jN.append(r.j - 1)
        elif r.form == "P":
            iP.append(r.i - 1)
            jP.append(r.j - 1)
        else:
            iO.append(r.i - 1)
    return {
        "N": (np.array(iN, dtype=np.intp), np.array(jN, dtype=np.intp)),
        "P": (np.array(iP, dtype=np.intp), np.array(jP, dtype=np.intp)),
        "O": np.array(iO, dtype=np.intp),
    }


def _values_for_rows(rows: np.ndarray, compiled: dict) -> np.ndarray:
    """Statistic values for a block of signed one-line rows.

    A root ``N[i,j]`` is an inversion iff ``w_j < w_i``, ``P[i,j]`` iff
    ``w_i + w_j < 0`` and ``O[i]`` iff ``w_i < 0``.
    """
    vals = np.zeros(len(rows), dtype=np.int64)
    iN, jN = compiled["N"]
    if len(iN):
        vals += (rows[:, jN] < rows[:, iN]).sum(axis=1)
    iP, jP = compiled["P"]
    if len(iP):
        vals += (rows[:, iP] + rows[:, jP] < 0).sum(axis=1)
    iO = compiled["O"]
    if len(iO):
        vals += (rows[:, iO] < 0).sum(axis=1)
    return vals


def _map_ordered(fn, items, threads: int):
    """Apply ``fn`` over ``items`` preserving order, optionally on a pool."""
    if threads <= 1:
        for item in items:
            yield fn(item)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        window: list = []
        items = iter(items)
        for item in items:
            window.append(pool.submit(fn, item))
            if len(window) >= 2 * threads:
                yield window.pop(0).result()
        for fut in window:
            yield fut.result()


def _component_hist(rs: RootSystem, ci: int, roots, threads: int) -> dict[int, int]:
    """Histogram of the statistic over one component's group."""
    comp = rs.spec.components[ci]
    order = _component_order(comp)
    if not roots:
        return {0: order}
    if comp.family == "G2":
        hist: dict[int, int] = {}
        psi_mask = sum(1 << (r.i - 1) for r in roots)
        for m in _G2_INV_MASKS:
            v = (m & psi_mask).bit_count()
            hist[v] = hist.get(v, 0) + 1
        return hist
    compiled = _compile_roots(roots)
    counts = np.zeros(len(roots) + 1, dtype=np.int64)
    chunks = _row_chunks(comp.family, comp.rank, order)

    def evaluate(rows):
        return np.bincount(_values_for_rows(rows, compiled), minlength=len(roots) + 1)

    for c in _map_ordered(evaluate, chunks, threads):
        counts += c
    return {int(v): int(c) for v, c in enumerate(counts) if c}


def _convolve(h1: dict[int, int], h2: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for v1, c1 in h1.items():
        for v2, c2 in h2.items():
            key = v1 + v2
            out[key] = out.get(key, 0) + c1 * c2
    return out


# -- exact operations -------------------------------------------------------------

def exact_distribution(
    rs: RootSystem, psi, cap: int = DEFAULT_CAP, threads: int = 1
) -> dict[int, int]:
    """Exact histogram of the Psi-statistic over the whole group.

    Counts sum to the group order.  Components are enumerated independently
    and combined by convolution.
    """
    _check_cap(rs, cap)
    ids = _canonical_ids(rs, psi)
    by_comp = _split_by_component(rs, ids)
    hist = {0: 1}
    for ci in range(len(rs.spec.components)):
        hist = _convolve(hist, _component_hist(rs, ci, by_comp.get(ci, []), threads))
    return dict(sorted(hist.items()))


def exact_mean(rs: RootSystem, psi) -> Fraction:
    """Mean of the Psi-statistic: |Psi|/2 (each indicator is Bernoulli(1/2))."""
    return Fraction(len(_canonical_ids(rs, psi)), 2)


def exact_variance(
    rs: RootSystem, psi, cap: int = DEFAULT_CAP, threads: int = 1
) -> Fraction:
    """Exact variance of the Psi-statistic, as a rational number."""
    hist = exact_distribution(rs, psi, cap=cap, threads=threads)
    n = sum(hist.values())
    s1 = sum(v * c for v, c in hist.items())
    s2 = sum(v * v * c for v, c in hist.items())
    return Fraction(s2, n) - Fraction(s1, n) ** 2


def _pair_counts_one_component(rs: RootSystem, beta: Root, gamma: Root) -> tuple[int, int, int, int]:
    """(pp, pm, mp, mm) over the component group containing both roots."""
    ci = beta.component
    comp = rs.spec.components[ci]
    if comp.family == "G2":
        b_bit, g_bit = 1 << (beta.i - 1), 1 << (gamma.i - 1)
        pp = pm = mp = mm = 0
        for m in _G2_INV_MASKS:
            bneg, gneg = bool(m & b_bit), bool(m & g_bit)
            if bneg and gneg:
                mm += 1
            elif bneg:
                mp += 1
            elif gneg:
                pm += 1
            else:
                pp += 1
        return pp, pm, mp, mm
    compiled_b = _compile_roots([beta])
    compiled_g = _compile_roots([gamma])
    pp = pm = mp = mm = 0
    for rows in _row_chunks(comp.family, comp.rank, _component_order(comp)):
        bneg = _values_for_rows(rows, compiled_b).astype(bool)
        gneg = _values_for_rows(rows, compiled_g).astype(bool)
        mm += int(np.count_nonzero(bneg & gneg))
        mp += int(np.count_nonzero(bneg & ~gneg))
        pm += int(np.count_nonzero(~bneg & gneg))
        pp += int(np.count_nonzero(~bneg & ~gneg))
    return pp, pm, mp, mm


def wpartition_counts(
    rs: RootSystem, beta: Root, gamma: Root, cap: int = DEFAULT_CAP
) -> WPartitionCounts:
    """Sizes of the four sign classes for (beta, gamma), by direct enumeration."""
    order = _check_cap(rs, cap)
    rs.index(beta)
    rs.index(gamma)
    if beta.component == gamma.component:
        pp, pm, mp, mm = _pair_counts_one_component(rs, beta, gamma)
        cofactor = order // sum((pp, pm, mp, mm))
        return WPartitionCounts(pp * cofactor, pm * cofactor, mp * cofactor, mm * cofactor)
    # Orthogonal components: each root is negative for exactly half its group.
    quarter = order // 4
    return WPartitionCounts(quarter, quarter, quarter, quarter)


def exact_cov(rs: RootSystem, beta: Root, gamma: Root, cap: int = DEFAULT_CAP) -> Fraction:
    """Exact covariance of two root indicators, from the sign-class sizes."""
    c = wpartition_counts(rs, beta, gamma, cap=cap)
    return Fraction(c.mm, c.total) - Fraction(1, 4)


def exact_joint_distribution(
    rs: RootSystem, psi, psi2, cap: int = DEFAULT_CAP
) -> dict[tuple[int, int], int]:
    """Joint counts of the two indicator vectors over the group.

    Keys are bitmask pairs: bit ``k`` of the first mask is the indicator of
    the ``k``-th root of ``psi`` in canonical (catalog-sorted) order, and
    likewise for ``psi2``.
    """
    ids1 = _canonical_ids(rs, psi)
    ids2 = _canonical_ids(rs, psi2)
    if len(ids1) + len(ids2) > JOINT_OUTCOME_GUARD:
        raise WeylstatError(
            f"joint outcome space too large: |psi|+|psi2| = {len(ids1) + len(ids2)} > {JOINT_OUTCOME_GUARD}"
        )
    _check_cap(rs, cap)
    pos1 = {rid: k for k, rid in enumerate(ids1)}
    pos2 = {rid: k for k, rid in enumerate(ids2)}

    result: dict[tuple[int, int], int] = {(0, 0): 1}
    for ci, comp in enumerate(rs.spec.components):
        local1 = [(pos1[rid], rs.roots[rid]) for rid in ids1 if rs.roots[rid].component == ci]
        local2 = [(pos2[rid], rs.roots[rid]) for rid in ids2 if rs.roots[rid].component == ci]
        part = _component_joint(comp, local1, local2)
        merged: dict[tuple[int, int], int] = {}
        for (a1, a2), ca in result.items():
            for (b1, b2), cb in part.items():
                key = (a1 | b1, a2 | b2)
                merged[key] = merged.get(key, 0) + ca * cb
        result = merged
    return dict(sorted(result.items()))


def _component_joint(comp, local1, local2) -> dict[tuple[int, int], int]:
    if not local1 and not local2:
        return {(0, 0): _component_order(comp)}
    out: dict[tuple[int, int], int] = {}
    if comp.family == "G2":
        for m in _G2_INV_MASKS:
            m1 = sum(1 << pos for pos, r in local1 if m >> (r.i - 1) & 1)
            m2 = sum(1 << pos for pos, r in local2 if m >> (r.i - 1) & 1)
            out[(m1, m2)] = out.get((m1, m2), 0) + 1
        return out
    order = _component_order(comp)
    for rows in _row_chunks(comp.family, comp.rank, order):
        m1 = _masks_for_rows(rows, local1)
        m2 = _masks_for_rows(rows, local2)
        pairs, counts = np.unique(np.stack([m1, m2], axis=1), axis=0, return_counts=True)
        for (a, b), c in zip(pairs, counts):
            key = (int(a), int(b))
            out[key] = out.get(key, 0) + int(c)
    return out


def _masks_for_rows(rows: np.ndarray, local: list) -> np.ndarray:
    """Indicator bitmask per row; bit positions are supplied by the caller."""
    total = np.zeros(len(rows), dtype=np.int64)
    for pos, r in local:
        if r.form == "N":
            col = rows[:, r.j - 1] < rows[:, r.i - 1]
        elif r.form == "P":
            col = rows[:, r.i - 1] + rows[:, r.j - 1] < 0
        else:
            col = rows[:, r.i - 1] < 0
        total += col.astype(np.int64) << pos
    return total


# -- Monte Carlo --------------------------------------------------------------------

def mc_run(
    rs: RootSystem,
    psi,
    n_samples: int,
    seed: int,
    threads: int = 1,
    descriptor: dict | None = None,
) -> SampleRun:
    """Seeded Monte Carlo estimates of the Psi-statistic.

    Draw ``i`` of chunk ``c`` is independent of every other draw; the stream
    of chunk ``c`` is ``numpy.random.default_rng(derived_seed(seed, c))``.
    """
    if n_samples < 1:
        raise WeylstatError("n_samples must be positive")
    ids = _canonical_ids(rs, psi)
    by_comp = _split_by_component(rs, ids)
    comps = rs.spec.components
    compiled = {
        ci: _compile_roots(by_comp[ci])
        for ci in by_comp
        if comps[ci].family != "G2"
    }
    g2_tables = {}
    for ci in by_comp:
        if comps[ci].family == "G2":
            mask = sum(1 << (r.i - 1) for r in by_comp[ci])
            g2_tables[ci] = np.array([(m & mask).bit_count() for m in _G2_INV_MASKS], dtype=np.int64)

    n_chunks = (n_samples + CHUNK_SAMPLES - 1) // CHUNK_SAMPLES

    def run_chunk(c: int) -> np.ndarray:
        m = min(CHUNK_SAMPLES, n_samples - c * CHUNK_SAMPLES)
        rng = np.random.default_rng(derived_seed(seed, c))
        vals = np.zeros(m, dtype=np.int64)
        for ci, comp in enumerate(comps):
            fam, n = comp.family, comp.rank
            if fam == "G2":
                idx = rng.integers(0, _G2_ORDER, size=m)
                if ci in g2_tables:
                    vals += g2_tables[ci][idx]
                continue
            dim = comp.dimension
            perms = rng.permuted(np.tile(np.arange(1, dim + 1), (m, 1)), axis=1)
            if fam == "A":
                rows = perms
            elif fam in ("B", "C"):
                rows = perms * (1 - 2 * rng.integers(0, 2, size=(m, n)))
            else:
                head = 1 - 2 * rng.integers(0, 2, size=(m, n - 1))
                last = head.prod(axis=1, keepdims=True)
                rows = perms * np.concatenate([head, last], axis=1)
            if ci in compiled:
                vals += _values_for_rows(rows, compiled[ci])
        return vals

    chunks = list(_map_ordered(run_chunk, range(n_chunks), threads))
    values = [int(v) for v in np.concatenate(chunks)] if chunks else []
    s1 = sum(values)
    s2 = sum(v * v for v in values)
    n = n_samples
    mean = Fraction(s1, n)
    variance = Fraction(0) if n == 1 else Fraction(n * s2 - s1 * s1, n * (n - 1))
    if descriptor is None:
        descriptor = {"psi": [rs.render_root(rs.roots[k]) for k in ids]}
    return SampleRun(
        spec=str(rs.spec),
        descriptor=descriptor,
        seed=seed,
        n_samples=n_samples,
        values=values,
        sample_mean=mean,
        sample_variance=variance,
    )


def bootstrap_variance_se(run: SampleRun, resamples: int = BOOTSTRAP_RESAMPLES) -> float:
    """Bootstrap standard error of the sample variance (seed-derived stream)."""
    rng = np.random.default_rng(derived_seed(run.seed, "bootstrap"))
    values = np.array(run.values, dtype=np.float64)
    n = len(values)
    stats = np.empty(resamples)
    for b in range(resamples):
        idx = rng.integers(0, n, size=n)
        stats[b] = values[idx].var(ddof=1)
    return float(stats.std(ddof=1))


# -- serialization --------------------------------------------------------------------

def histogram_json(rs: RootSystem, psi, hist: dict[int, int]) -> dict:
    ids = _canonical_ids(rs, psi)
    n = sum(hist.values())
    s1 = sum(v * c for v, c in hist.items())
    s2 = sum(v * v * c for v, c in hist.items())
    mean = Fraction(s1, n)
    variance = Fraction(s2, n) - mean**2
    return {
        "spec": str(rs.spec),
        "psi": [rs.render_root(rs.roots[k]) for k in ids],
        "n": n,
        "counts": [[v, c] for v, c in sorted(hist.items())],
        "moments": {"mean": frac_str(mean), "variance": frac_str(variance)},
    }


def histogram_csv_rows(hist: dict[int, int]):
    yield ("value", "count")
    for v, c in sorted(hist.items()):
        yield (v, c)
