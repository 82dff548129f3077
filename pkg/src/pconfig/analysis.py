"""Regularity diagnostics and the flat-point non-isomorphism experiment.

Non-smoothness witness
----------------------
Conjugations between distinct regular configurations solve the additive
functional equation nonlinearly, and nonlinear solutions cannot be C^1;
numerically this surfaces as unbounded one-sided difference quotients at
the endpoint fixed points.  Near t0 = 1 the first branch acts like
multiplication by a = delta1'(1) while the standard target halves, so the
conjugation scales like s^beta with beta = log 2 / log(1/a), and the
quotient at scale s grows like s^(beta-1).  Successive dyadic quotients
then hover around 2^(1-beta) -- *around*, not *at*: the local conjugacy to
the linear model carries a genuine log-periodic modulation (period
log2(1/a) in the scale exponent), so the ratio sequence oscillates.  The
oracle enclosure below measures that oscillation exactly, without
consulting the solver.

Flat-point experiment
---------------------
For the flat-point families, dyadic endpoints 1 - 2^-m are fixed by any
intertwiner (induction from h(0) = 0 up the branch orbit), so an
isomorphism of the underlying systems maps each dyadic cell J_m to itself
and can never match flat points living in different cells.  Guided systems
with perturbations in different cells are therefore non-isomorphic, even
though the underlying dynamical systems are intertwined by the computed h.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from . import funcspace
from .conjugacy import DEFAULT_GRID, DEFAULT_TOL, conjugate_to_standard
from .errors import BadSpec, BuildFailure, DyadicCheckFailure, ScaleBelowGrid
from .families import MapPair, flat_interval, perturbed_flat_pair
from .funcspace import MonotoneFunction


# --------------------------------------------------------------------------
# difference quotients and Holder exponent
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientProbe:
    """One-sided difference quotients of f at an endpoint, over dyadic
    scales 2^-k, with successive ratios and the log-log fitted exponent."""

    t0: float
    side: str
    k_values: tuple
    scales: tuple
    quotients: tuple
    ratios: tuple
    holder_exponent: float
    grid_size: int

    def to_dict(self) -> dict:
        return {
            "t0": self.t0,
            "side": self.side,
            "k_values": list(self.k_values),
            "scales": list(self.scales),
            "quotients": list(self.quotients),
            "ratios": list(self.ratios),
            "holder_exponent": self.holder_exponent,
            "grid_size": self.grid_size,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def to_csv(self) -> str:
        """Rows ``k,step,quotient,ratio``; the ratio on row k compares
        scale 2^-(k+1) against 2^-k and is empty on the last row."""
        buf = io.StringIO()
        buf.write("k,step,quotient,ratio\n")
        for i, k in enumerate(self.k_values):
            ratio = f"{self.ratios[i]:.17g}" if i < len(self.ratios) else ""
            buf.write(
                f"{k},{self.scales[i]:.17g},{self.quotients[i]:.17g},{ratio}\n")
        return buf.getvalue()


def difference_quotients(f: MonotoneFunction, t0: float,
                         k_min: int = 4, k_max: int = 10) -> QuotientProbe:
    """One-sided quotients |f(t0) - f(t0 -/+ 2^-k)| / 2^-k, k = k_min..k_max.

    The probe always points toward the interior.  The finest scale must be
    resolved by the grid: 2^-k_max has to be at least twice the widest
    node gap inside the probed window, else :class:`ScaleBelowGrid`.
    """
    if t0 not in (-1.0, 1.0):
        raise ValueError("t0 must be -1 or 1")
    if not (0 < k_min <= k_max):
        raise ValueError("need 0 < k_min <= k_max")
    sign = -1.0 if t0 == 1.0 else 1.0
    ks = np.arange(k_min, k_max + 1)
    scales = 2.0 ** (-ks.astype(float))

    # each scale must be resolved by the grid *where it probes*: the gap
    # containing t0 -/+ 2^-k has to be at most half that scale
    queries = t0 + sign * scales
    idx = np.clip(np.searchsorted(f.nodes, queries), 1, f.nodes.size - 1)
    local_gaps = f.nodes[idx] - f.nodes[idx - 1]
    bad = scales < 2.0 * local_gaps
    if np.any(bad):
        j = int(np.flatnonzero(bad)[0])
        raise ScaleBelowGrid(
            f"scale 2^-{int(ks[j])} = {scales[j]:.3g} below grid resolution "
            f"(local node gap {local_gaps[j]:.3g})"
        )

    fa = funcspace.evaluate(f, t0)
    fb = funcspace.evaluate(f, t0 + sign * scales)
    deltas = np.abs(fa - fb)
    quotients = deltas / scales
    ratios = tuple(
        float(quotients[i + 1] / quotients[i])
        for i in range(len(quotients) - 1)
        if quotients[i] > 0.0
    )
    if np.all(deltas > 0.0):
        slope = np.polyfit(np.log(scales), np.log(deltas), 1)[0]
        holder = float(slope)
    else:
        holder = float("nan")
    return QuotientProbe(
        t0=float(t0),
        side="interior",
        k_values=tuple(int(k) for k in ks),
        scales=tuple(float(s) for s in scales),
        quotients=tuple(float(q) for q in quotients),
        ratios=ratios,
        holder_exponent=holder,
        grid_size=f.grid_size,
    )


def holder_estimate(f: MonotoneFunction, t0: float,
                    k_min: int = 4, k_max: int = 10) -> float:
    """Least-squares slope of log|f(t0) - f(t0 -/+ s)| against log s."""
    return difference_quotients(f, t0, k_min, k_max).holder_exponent


# --------------------------------------------------------------------------
# solver-independent oracle enclosure of endpoint quotients
# --------------------------------------------------------------------------

def _abscissa_of_dyadic(pair: MapPair, y: float, max_depth: int = 60) -> float:
    """The point x with h(x) = y for dyadic y, via the branch address.

    Walk y back through the standard maps to an anchor, recording the
    branch word, then push the anchor forward through `pair`.  All
    standard-side steps are exact in floats for dyadic y.
    """
    branches = []
    while y not in (-1.0, 0.0, 1.0):
        if y > 0.0:
            branches.append(1)
            y = 2.0 * y - 1.0
        else:
            branches.append(2)
            y = 2.0 * y + 1.0
        if len(branches) > max_depth:
            raise ValueError("y is not dyadic at the requested depth")
    x = y
    for b in reversed(branches):
        x = float(pair.delta1(x)) if b == 1 else float(pair.delta2(x))
    return x


@dataclass(frozen=True)
class QuotientEnclosure:
    """Rigorous per-scale bounds on endpoint difference quotients.

    Bounds come from monotone bracketing between exact orbit points whose
    conjugation values are dyadics of denominator 2^depth; no solver
    output is involved.  ``ratio_bounds[i]`` encloses
    quotient(k+1)/quotient(k).
    """

    t0: float
    k_values: tuple
    quotient_bounds: tuple
    ratio_bounds: tuple
    depth: int

    @property
    def ratio_envelope(self) -> tuple:
        lo = min(b[0] for b in self.ratio_bounds)
        hi = max(b[1] for b in self.ratio_bounds)
        return (lo, hi)

    def geometric_mean_ratio_bounds(self) -> tuple:
        q_first = self.quotient_bounds[0]
        q_last = self.quotient_bounds[-1]
        n = len(self.k_values) - 1
        return ((q_last[0] / q_first[1]) ** (1.0 / n),
                (q_last[1] / q_first[0]) ** (1.0 / n))

    def to_dict(self) -> dict:
        return {
            "t0": self.t0,
            "k_values": list(self.k_values),
            "quotient_bounds": [list(b) for b in self.quotient_bounds],
            "ratio_bounds": [list(b) for b in self.ratio_bounds],
            "depth": self.depth,
        }


def oracle_quotient_enclosure(pair: MapPair, t0: float = 1.0,
                              k_min: int = 6, k_max: int = 13,
                              depth: int = 22) -> QuotientEnclosure:
    """Enclose |h(t0) - h(t0 -/+ 2^-k)| / 2^-k using orbit points only.

    For each scale the query abscissa is bracketed, by bisection over the
    dyadic index, between two orbit points with known conjugation values
    (j-1) 2^-depth apart; monotonicity of h turns the bracket into bounds
    on the quotient.  This is the independent confirmation channel for
    quotient-ratio bands: it measures the true log-periodic oscillation
    around 2^(1-beta) without trusting the fixed-point solver.
    """
    if t0 not in (-1.0, 1.0):
        raise ValueError("t0 must be -1 or 1")
    eps = 2.0 ** (-depth)
    sign = -1.0 if t0 == 1.0 else 1.0

    def absc(j):
        # j-th dyadic step inward from the endpoint, pushed to the orbit
        return _abscissa_of_dyadic(pair, t0 + sign * j * eps, max_depth=depth)

    def inward(x):
        # distance from the endpoint toward the interior
        return sign * (x - t0)

    q_bounds = []
    ks = range(k_min, k_max + 1)
    for k in ks:
        s = 2.0 ** (-float(k))
        target = s  # inward distance of the query point
        lo_j, hi_j = 0, 2 ** max(1, depth - k - 2)
        while inward(absc(hi_j)) < target:
            hi_j *= 2
            if hi_j > 2 ** depth:
                raise ValueError("bracketing failed; depth too small")
        while hi_j - lo_j > 1:
            mid = (lo_j + hi_j) // 2
            if inward(absc(mid)) < target:
                lo_j = mid
            else:
                hi_j = mid
        # |h| moves by exactly j * eps at the bracketing orbit points
        q_bounds.append((lo_j * eps / s, hi_j * eps / s))

    r_bounds = tuple(
        (q_bounds[i + 1][0] / q_bounds[i][1], q_bounds[i + 1][1] / q_bounds[i][0])
        for i in range(len(q_bounds) - 1)
    )
    return QuotientEnclosure(
        t0=float(t0),
        k_values=tuple(ks),
        quotient_bounds=tuple(q_bounds),
        ratio_bounds=r_bounds,
        depth=depth,
    )


# --------------------------------------------------------------------------
# dyadic fixed points and the non-isomorphism experiment
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DyadicCheckTable:
    """Deviations |h(1 - 2^-m) - (1 - 2^-m)| for m = 1..m_max.

    ``resolved[i]`` is False when 2^-m is finer than the local node gap,
    in which case the deviation says more about interpolation than about
    h.  ``orbit_agrees`` records whether the pair actually reproduces the
    dyadic points along its first-branch orbit (true for flat-point
    families, false e.g. for quadratic ones).
    """

    m_values: tuple
    points: tuple
    deviations: tuple
    resolved: tuple
    orbit_agrees: bool

    def max_resolved_deviation(self) -> float:
        devs = [d for d, r in zip(self.deviations, self.resolved) if r]
        return max(devs) if devs else float("nan")

    def to_dict(self) -> dict:
        return {
            "m_values": list(self.m_values),
            "points": list(self.points),
            "deviations": list(self.deviations),
            "resolved": list(self.resolved),
            "orbit_agrees": self.orbit_agrees,
        }


def dyadic_fixed_point_check(h: MonotoneFunction, pair: MapPair,
                             m_max: int = 8) -> DyadicCheckTable:
    """Tabulate how far h moves the dyadic points 1 - 2^-m."""
    ms = np.arange(1, m_max + 1)
    pts = 1.0 - 2.0 ** (-ms.astype(float))
    devs = np.abs(funcspace.evaluate(h, pts) - pts)

    gaps = np.diff(h.nodes)
    resolved = []
    for p, m in zip(pts, ms):
        i = np.searchsorted(h.nodes, p)
        local = gaps[min(max(i - 1, 0), gaps.size - 1)]
        resolved.append(bool(2.0 ** (-float(m)) >= local))

    x = 0.0
    agrees = True
    for p in pts:
        x = float(pair.delta1(x))
        if abs(x - p) > 1e-9:
            agrees = False
            break
    return DyadicCheckTable(
        m_values=tuple(int(m) for m in ms),
        points=tuple(float(p) for p in pts),
        deviations=tuple(float(d) for d in devs),
        resolved=tuple(resolved),
        orbit_agrees=agrees,
    )


@dataclass(frozen=True)
class ExperimentReport:
    """Evidence that two flat-point configurations are non-isomorphic as
    guided systems.

    ``h`` intertwines the two underlying dynamical systems (computed
    through the standard intermediate); the dyadic table certifies that h
    fixes the cell endpoints, hence maps each J_m to itself, while the two
    flat points live in the interiors of *different* cells.  No
    homeomorphism can then match the guiding sets.
    """

    n: int
    k: int
    flat_point_n: float
    flat_point_k: float
    cell_n: tuple
    cell_k: tuple
    image_of_flat_point: float
    image_in_cell_n: bool
    flat_point_k_in_cell_k: bool
    cells_interior_disjoint: bool
    dyadic_table: DyadicCheckTable
    max_dyadic_deviation: float
    homeomorphism_ok: bool
    verdict: str
    grid: int
    tol: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "flat_point_n": self.flat_point_n,
            "flat_point_k": self.flat_point_k,
            "cell_n": list(self.cell_n),
            "cell_k": list(self.cell_k),
            "image_of_flat_point": self.image_of_flat_point,
            "image_in_cell_n": self.image_in_cell_n,
            "flat_point_k_in_cell_k": self.flat_point_k_in_cell_k,
            "cells_interior_disjoint": self.cells_interior_disjoint,
            "dyadic_table": self.dyadic_table.to_dict(),
            "max_dyadic_deviation": self.max_dyadic_deviation,
            "homeomorphism_ok": self.homeomorphism_ok,
            "verdict": self.verdict,
            "grid": self.grid,
            "tol": self.tol,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def nonregular_experiment(n: int, k: int, shape: dict | None = None,
                          grid: int = DEFAULT_GRID, tol: float = 1e-3,
                          m_max: int = 8,
                          solver_tol: float = DEFAULT_TOL) -> ExperimentReport:
    """Run the non-isomorphism experiment for flat cells J_n vs J_k.

    Builds the two flat-point configurations, computes the candidate
    intertwiner h through the standard intermediate, certifies the dyadic
    fixed points up to ``m_max`` within `tol`, and locates the flat points
    and the image of the first one.  The homeomorphism property of h is
    checked a posteriori (strict increase at grid level) because the
    contraction argument alone does not grant it for flat families.

    Raises
    ------
    ValueError
        If n == k or either index is < 1 (no contradiction derivable).
    BuildFailure
        If the flat-point families cannot be built with `shape`.
    DyadicCheckFailure
        If a dyadic point drifts beyond `tol` (solver misconfiguration).
    """
    if n == k:
        raise ValueError("need two distinct cells: n != k")
    if n < 1 or k < 1:
        raise ValueError("cell indices must be >= 1")
    try:
        pair_n = perturbed_flat_pair(n, **(shape or {}))
        pair_k = perturbed_flat_pair(k, **(shape or {}))
    except BadSpec as exc:
        raise BuildFailure(str(exc)) from exc

    h_n, _ = conjugate_to_standard(pair_n, grid=grid, tol=solver_tol)
    h_k, _ = conjugate_to_standard(pair_k, grid=grid, tol=solver_tol)
    inv_k = funcspace.invert(h_k, resample=False)
    h = funcspace.compose(inv_k, h_n)

    table = dyadic_fixed_point_check(h, pair_n, m_max=m_max)
    max_dev = max(table.deviations)
    if max_dev > tol:
        raise DyadicCheckFailure(
            f"dyadic point deviates by {max_dev:.3g} > tol {tol:.3g}")

    lam = pair_n.flat_points[0]
    omega_pt = pair_k.flat_points[0]
    cell_n = flat_interval(n)
    cell_k = flat_interval(k)
    h_lam = float(funcspace.evaluate(h, lam))
    image_in_cell = cell_n[0] <= h_lam <= cell_n[1]
    omega_interior = cell_k[0] < omega_pt < cell_k[1]
    disjoint = min(cell_n[1], cell_k[1]) <= max(cell_n[0], cell_k[0])
    homeo = (h.is_strictly_increasing()
             and h_n.is_strictly_increasing()
             and h_k.is_strictly_increasing())

    conclusive = image_in_cell and omega_interior and disjoint
    return ExperimentReport(
        n=int(n),
        k=int(k),
        flat_point_n=float(lam),
        flat_point_k=float(omega_pt),
        cell_n=cell_n,
        cell_k=cell_k,
        image_of_flat_point=h_lam,
        image_in_cell_n=bool(image_in_cell),
        flat_point_k_in_cell_k=bool(omega_interior),
        cells_interior_disjoint=bool(disjoint),
        dyadic_table=table,
        max_dyadic_deviation=float(max_dev),
        homeomorphism_ok=bool(homeo),
        verdict="non-isomorphic" if conclusive else "inconclusive",
        grid=int(grid),
        tol=float(tol),
    )
