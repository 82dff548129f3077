"""Solutions of the homogeneous Cauchy-type functional equation

    f(t) = f(delta1(t)) + f(delta2(t)),   t in [-1, 1].

Linear functions f(t) = c t always solve it when the pair is additive
(delta1 + delta2 = t).  Nonlinear continuous solutions exist as well: any
conjugation h of the pair to a *different* additive pair solves the
equation, because summing the two intertwining identities gives
h(delta1(t)) + h(delta2(t)) = tau1(h(t)) + tau2(h(t)) = h(t).  Such an h
fixes 1, so if it were linear it would be the identity, forcing the two
pairs to coincide; distinct pairs therefore yield genuinely nonlinear
solutions.

This module packages that construction (:func:`solve_nonlinear`), measures
how well a candidate solves the equation (:func:`fe_residual`), measures
distance from the linear family (:func:`nonlinearity_gap`), and inverts
the construction: a strictly increasing continuous solution fixing the
anchors induces a conjugate system sigma_i = f o delta_i o f^{-1} that is
additive with the standard boundary pattern, but carries no
differentiability guarantee (:func:`induced_system`).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from . import funcspace
from .conjugacy import DEFAULT_GRID, DEFAULT_TOL, conjugate, conjugate_to_standard
from .errors import AnchorsNotFixed, DegenerateChoice, InvalidPair, NotStrictlyIncreasing
from .families import MapPair, pairs_agree_on_grid, quadratic_pair, standard_pair, validate
from .funcspace import MonotoneFunction


@dataclass(frozen=True)
class SolutionCertificate:
    """A produced solution together with its measured quality.

    ``fe_residual`` is the grid supremum of |f - f o delta1 - f o delta2|;
    ``nonlinearity_gap`` the grid supremum of |f(t) - f(1) t|.  A zero gap
    means the samples are exactly the linear function through f(1).
    ``degenerate`` marks the case where source and target coincide and
    only the linear (identity) solution could be produced.
    """

    solution: MonotoneFunction
    fe_residual: float
    nonlinearity_gap: float
    source: dict
    target: dict
    grid: int
    tol: float
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "fe_residual": self.fe_residual,
            "nonlinearity_gap": self.nonlinearity_gap,
            "source": self.source,
            "target": self.target,
            "grid": self.grid,
            "tol": self.tol,
            "degenerate": self.degenerate,
            "solution_nodes": self.solution.grid_size,
            "solution_max_local_variation": self.solution.max_local_variation,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def fe_residual(f, pair: MapPair, grid: int = DEFAULT_GRID) -> float:
    """Sup over a uniform grid of |f(t) - f(delta1(t)) - f(delta2(t))|.

    `f` is a :class:`MonotoneFunction` or any plain callable on [-1, 1]
    (linear comparators c t with |c| > 1 cannot be monotone samples, yet
    are exact solutions whenever the pair is additive).
    """
    if isinstance(f, MonotoneFunction):
        def ev(x):
            return funcspace.evaluate(f, np.clip(x, -1.0, 1.0))
    else:
        ev = f
    t = np.union1d(np.linspace(-1.0, 1.0, grid), (-1.0, 0.0, 1.0))
    res = np.abs(np.asarray(ev(t))
                 - np.asarray(ev(pair.delta1(t)))
                 - np.asarray(ev(pair.delta2(t))))
    return float(np.max(res))


def nonlinearity_gap(f: MonotoneFunction, slope: float | None = None) -> float:
    """Sup over f's nodes of |f(t) - c t|, measuring distance to the
    linear family.

    The comparator slope defaults to c = f(1): any linear solution that
    matches f at the pinned node t = 1 has that slope, so this is the
    deterministic choice.  Pass ``slope="lsq"`` for the least-squares
    slope instead, or any float for a custom comparator.
    """
    if slope is None:
        c = float(f.values[-1])
    elif slope == "lsq":
        c = float(np.dot(f.nodes, f.values) / np.dot(f.nodes, f.nodes))
    else:
        c = float(slope)
    return float(np.max(np.abs(f.values - c * f.nodes)))


def solve_nonlinear(pair: MapPair, target: MapPair | None = None,
                    grid: int = DEFAULT_GRID,
                    tol: float = DEFAULT_TOL) -> SolutionCertificate:
    """Produce a continuous nonlinear solution for the given pair.

    The solution is the conjugation of `pair` to `target`; the target must
    be additive so that the sum of the intertwining identities collapses.
    By default the target is the standard pair; if `pair` itself is the
    standard pair the default target switches to quadratic(0.2), since a
    coinciding target could only produce the linear solution.

    If an explicitly requested target coincides with `pair` on the grid,
    the identity is returned with ``degenerate=True`` and a
    :class:`DegenerateChoice` warning.

    Raises
    ------
    InvalidPair
        If `pair` fails validation as a regular or quasi-regular
        configuration (guided pairs are rejected here: the construction's
        uniqueness argument needs strictly increasing branches).
    """
    report = validate(pair, mode="full")
    if report.classification != "regular":
        report = validate(pair, mode="quasi")
        if report.classification != "quasi-regular":
            raise InvalidPair(
                f"pair classifies as {report.classification!r}; "
                "need regular or quasi-regular"
            )

    if target is None:
        target = standard_pair()
        if pairs_agree_on_grid(pair, target, grid=min(grid, 4097)):
            target = quadratic_pair(0.2)
    elif pairs_agree_on_grid(pair, target, grid=min(grid, 4097)):
        warnings.warn(
            "source and target coincide; only the linear solution exists "
            "for this choice", DegenerateChoice)
        ident = funcspace.identity(17)
        return SolutionCertificate(
            solution=ident,
            fe_residual=fe_residual(ident, pair, grid=grid),
            nonlinearity_gap=0.0,
            source=pair.descriptor(),
            target=target.descriptor(),
            grid=int(grid),
            tol=float(tol),
            degenerate=True,
        )

    if target.family == "standard":
        h, _ = conjugate_to_standard(pair, grid=grid, tol=tol)
    else:
        h = conjugate(pair, target, grid=grid, tol=tol)
    return SolutionCertificate(
        solution=h,
        fe_residual=fe_residual(h, pair, grid=grid),
        nonlinearity_gap=nonlinearity_gap(h),
        source=pair.descriptor(),
        target=target.descriptor(),
        grid=int(grid),
        tol=float(tol),
    )


# --------------------------------------------------------------------------
# the induced system of a solution
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class InducedSystemReport:
    """Verification of the system induced by a solution.

    The induced maps satisfy additivity and the boundary pattern within
    the reported deviations.  They are continuous and strictly increasing
    but *not* claimed differentiable, so the report never calls them a
    P-configuration.
    """

    additivity_max_dev: float
    additivity_ok: bool
    boundary_deviations: dict
    boundary_ok: bool
    tol: float
    grid: int
    differentiability_claimed: bool = False

    def to_dict(self) -> dict:
        return {
            "additivity_max_dev": self.additivity_max_dev,
            "additivity_ok": self.additivity_ok,
            "boundary_deviations": self.boundary_deviations,
            "boundary_ok": self.boundary_ok,
            "tol": self.tol,
            "grid": self.grid,
            "differentiability_claimed": self.differentiability_claimed,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def induced_system(f: MonotoneFunction, pair: MapPair,
                   grid: int = DEFAULT_GRID, tol: float = 1e-3,
                   ) -> tuple[tuple[MonotoneFunction, MonotoneFunction],
                              InducedSystemReport]:
    """Sample the conjugate system sigma_i = f o delta_i o f^{-1}.

    `f` must be strictly increasing at grid level and fix -1, 0, 1
    exactly.  The induced maps are sampled on a uniform grid of `grid`
    nodes; the report records how well they satisfy additivity and the
    boundary pattern (differentiability is not claimed).

    Raises
    ------
    NotStrictlyIncreasing
        If `f` has equal consecutive node values.
    AnchorsNotFixed
        If `f` does not fix the anchors.
    """
    if not f.is_strictly_increasing():
        raise NotStrictlyIncreasing("solution has a plateau at grid level")
    if not f.fixes_anchors():
        raise AnchorsNotFixed("solution must fix -1, 0 and 1 exactly")

    t = np.union1d(np.linspace(-1.0, 1.0, grid), (-1.0, 0.0, 1.0))
    # exact piecewise-linear inverse: swap nodes and values
    x = np.interp(t, f.values, f.nodes)
    s1 = funcspace.evaluate(f, np.clip(pair.delta1(x), -1.0, 1.0))
    s2 = funcspace.evaluate(f, np.clip(pair.delta2(x), -1.0, 1.0))
    # guard 1-ulp interpolation wiggle; the maps are monotone compositions
    s1 = np.maximum.accumulate(s1)
    s2 = np.maximum.accumulate(s2)
    sigma1 = MonotoneFunction(t, s1, provenance="induced")
    sigma2 = MonotoneFunction(t, s2, provenance="induced")

    add_dev = float(np.max(np.abs(s1 + s2 - t)))
    bdev = {
        "sigma1(-1)": abs(float(funcspace.evaluate(sigma1, -1.0))),
        "sigma1(1)": abs(float(funcspace.evaluate(sigma1, 1.0)) - 1.0),
        "sigma2(-1)": abs(float(funcspace.evaluate(sigma2, -1.0)) + 1.0),
        "sigma2(1)": abs(float(funcspace.evaluate(sigma2, 1.0))),
    }
    report = InducedSystemReport(
        additivity_max_dev=add_dev,
        additivity_ok=add_dev <= tol,
        boundary_deviations=bdev,
        boundary_ok=all(v <= tol for v in bdev.values()),
        tol=float(tol),
        grid=int(t.size),
    )
    return (sigma1, sigma2), report
