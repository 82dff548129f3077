"""Sampled nondecreasing continuous functions on I = [-1, 1].

This module is the ambient space of the whole toolkit: conjugating
homeomorphisms, functional-equation solutions and induced branch maps are
all represented as :class:`MonotoneFunction` objects, i.e. piecewise-linear
interpolants through an explicit, strictly increasing node grid spanning
[-1, 1].  Low-order interpolation is deliberate: the objects of interest
are merely continuous (typically not C^1), so the representation error is
governed by their modulus of continuity, which the node placement can be
chosen to equidistribute.

Conventions
-----------
* Node values are compared exactly; interpolated comparisons always carry
  an explicit tolerance argument.
* Inversion resolves plateaus to the left endpoint (smallest preimage).
* All values are immutable after construction and every operation is pure,
  so concurrent read access is safe.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadDomain,
    NonMonotoneInput,
    NotInvertible,
    OutOfDomain,
    OutOfRange,
    RangeMismatch,
)

DOMAIN_LEFT = -1.0
DOMAIN_RIGHT = 1.0

#: Default node count for uniform grids, 2^12 + 1.
DEFAULT_GRID_SIZE = 4097

#: Abscissa tolerance honoured by inverse evaluation.
INVERSE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MonotoneFunction:
    """A nondecreasing piecewise-linear function on [-1, 1].

    Attributes
    ----------
    nodes :
        Strictly increasing abscissae; first is -1, last is +1.
    values :
        Nondecreasing ordinates in [-1, 1], one per node.
    provenance :
        Free-form tag recording how the function was produced
        ("identity", "user", "solver", "composition", "inverse", ...).
    """

    nodes: np.ndarray
    values: np.ndarray
    provenance: str = "user"

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if nodes.ndim != 1 or values.ndim != 1 or nodes.size != values.size:
            raise BadDomain("nodes and values must be 1-d arrays of equal length")
        if nodes.size < 2:
            raise BadDomain("need at least two nodes")
        if nodes[0] != DOMAIN_LEFT or nodes[-1] != DOMAIN_RIGHT:
            raise BadDomain(
                f"nodes must span [-1, 1], got [{nodes[0]}, {nodes[-1]}]"
            )
        if np.any(np.diff(nodes) <= 0):
            raise BadDomain("nodes must be strictly increasing")
        if np.any(np.diff(values) < 0):
            raise NonMonotoneInput("values must be nondecreasing")
        if values[0] < DOMAIN_LEFT or values[-1] > DOMAIN_RIGHT:
            raise NonMonotoneInput("values must lie within [-1, 1]")
        nodes.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    # -- basic queries --------------------------------------------------

    @property
    def grid_size(self) -> int:
        return self.nodes.size

    @property
    def max_node_gap(self) -> float:
        return float(np.max(np.diff(self.nodes)))

    @property
    def max_local_variation(self) -> float:
        """Largest value increment between adjacent nodes.

        This is the honest interpolation-error bound for the function the
        samples represent: between nodes nothing more can be claimed.
        """
        return float(np.max(np.diff(self.values)))

    def is_strictly_increasing(self) -> bool:
        return bool(np.all(np.diff(self.values) > 0))

    def fixes_anchors(self) -> bool:
        """True if the function maps -1, 0, 1 to themselves exactly.

        0 must be a node for this to hold.
        """
        if self.values[0] != -1.0 or self.values[-1] != 1.0:
            return False
        idx = np.searchsorted(self.nodes, 0.0)
        return bool(
            idx < self.nodes.size
            and self.nodes[idx] == 0.0
            and self.values[idx] == 0.0
        )

    # -- evaluation ------------------------------------------------------

    def __call__(self, t):
        return evaluate(self, t)

    def __repr__(self):
        return (
            f"MonotoneFunction({self.grid_size} nodes, "
            f"provenance={self.provenance!r})"
        )


def make_monotone(nodes, values, provenance: str = "user") -> MonotoneFunction:
    """Validate samples and wrap them as a :class:`MonotoneFunction`.

    Parameters
    ----------
    nodes :
        Strictly increasing abscissae spanning [-1, 1], length >= 2.
    values :
        Ordinates, same length, nondecreasing (exact comparison).

    Raises
    ------
    NonMonotoneInput
        If the values decrease anywhere or leave [-1, 1].
    BadDomain
        If the nodes do not form a strictly increasing span of [-1, 1].
    """
    return MonotoneFunction(np.array(nodes, dtype=float),
                            np.array(values, dtype=float), provenance)


def identity(n: int = DEFAULT_GRID_SIZE, nodes=None) -> MonotoneFunction:
    """The identity function, sampled uniformly (default) or on `nodes`."""
    if nodes is None:
        nodes = np.linspace(DOMAIN_LEFT, DOMAIN_RIGHT, n)
    nodes = np.asarray(nodes, dtype=float)
    return MonotoneFunction(nodes, nodes.copy(), provenance="identity")


def evaluate(f: MonotoneFunction, t):
    """Evaluate `f` at scalar or array `t` by linear interpolation.

    Node hits return the stored value exactly.

    Raises
    ------
    OutOfDomain
        If any evaluation point lies outside [-1, 1].
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < DOMAIN_LEFT) or np.any(arr > DOMAIN_RIGHT):
        raise OutOfDomain(f"evaluation point outside [-1, 1]: {t!r}")
    out = np.interp(arr, f.nodes, f.values)
    return float(out) if np.isscalar(t) or arr.ndim == 0 else out


def eval_inverse(f: MonotoneFunction, y):
    """Smallest t with f(t) = y (left preimage under plateau ties).

    The result satisfies ``|evaluate(f, result) - y| <= 1e-12`` for y in
    the range of `f`.

    Raises
    ------
    OutOfRange
        If y lies outside [f(-1), f(1)].
    """
    arr = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(arr < f.values[0]) or np.any(arr > f.values[-1]):
        raise OutOfRange(f"target outside range [{f.values[0]}, {f.values[-1]}]")
    # Leftmost index j with values[j] >= y; exact hits return nodes[j],
    # which is the left end of any plateau at that value.
    j = np.searchsorted(f.values, arr, side="left")
    out = np.empty_like(arr)
    exact = f.values[j] == arr
    out[exact] = f.nodes[j[exact]]
    seg = ~exact  # here j >= 1 and values[j-1] < y < values[j]
    jj = j[seg]
    v0, v1 = f.values[jj - 1], f.values[jj]
    t0, t1 = f.nodes[jj - 1], f.nodes[jj]
    out[seg] = t0 + (arr[seg] - v0) / (v1 - v0) * (t1 - t0)
    return float(out[0]) if np.isscalar(y) or np.asarray(y).ndim == 0 else out


def compose(outer: MonotoneFunction, inner: MonotoneFunction) -> MonotoneFunction:
    """The composition outer(inner(.)), sampled on inner's node grid.

    Monotone by construction.  Raises :class:`RangeMismatch` if inner
    takes values outside [-1, 1] (impossible for validated inputs, but
    checked so the contract is explicit).
    """
    if inner.values[0] < DOMAIN_LEFT or inner.values[-1] > DOMAIN_RIGHT:
        raise RangeMismatch("inner function leaves [-1, 1]")
    vals = np.interp(inner.values, outer.nodes, outer.values)
    return MonotoneFunction(inner.nodes, vals, provenance="composition")


def invert(f: MonotoneFunction, n: int | None = None,
           resample: bool = True) -> MonotoneFunction:
    """Inverse of a strictly increasing function with full range [-1, 1].

    With ``resample=True`` (default) the swapped samples are re-sampled to
    a uniform grid of ``n`` nodes (same count as `f` if omitted).  With
    ``resample=False`` the nodes and values are swapped verbatim, which is
    the *exact* piecewise-linear inverse of the interpolant.

    Raises
    ------
    NotInvertible
        If `f` has a plateau at grid resolution or does not attain -1
        and 1 at the endpoints (so the inverse would not span [-1, 1]).
    """
    if not f.is_strictly_increasing():
        raise NotInvertible("plateau detected: equal consecutive node values")
    if f.values[0] != DOMAIN_LEFT or f.values[-1] != DOMAIN_RIGHT:
        raise NotInvertible("range must be all of [-1, 1] to invert")
    if not resample:
        return MonotoneFunction(f.values, f.nodes, provenance="inverse")
    grid = np.linspace(DOMAIN_LEFT, DOMAIN_RIGHT, n or f.grid_size)
    vals = np.interp(grid, f.values, f.nodes)
    # uniform grid includes the endpoints, where the swap is exact
    return MonotoneFunction(grid, vals, provenance="inverse")


def sup_distance(f: MonotoneFunction, g: MonotoneFunction) -> float:
    """Sup-norm distance, taken over the union of both node sets.

    On sampled functions this is a true metric: zero iff the interpolants
    agree on the union grid, symmetric, and triangle-inequality-compliant.
    The reduction order is fixed (sorted union grid), so the result is
    bit-deterministic.
    """
    grid = np.union1d(f.nodes, g.nodes)
    return float(np.max(np.abs(
        np.interp(grid, f.nodes, f.values) - np.interp(grid, g.nodes, g.values)
    )))


# -- serialization -----------------------------------------------------------

CSV_HEADER = "t,value"


def to_csv(f: MonotoneFunction) -> str:
    """CSV serialization: header ``t,value``, one row per node, 17
    significant digits, rows in node order."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for t, v in zip(f.nodes, f.values):
        buf.write(f"{t:.17g},{v:.17g}\n")
    return buf.getvalue()


def from_csv(text: str, provenance: str = "user") -> MonotoneFunction:
    """Parse the CSV format written by :func:`to_csv`."""
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0].strip() != CSV_HEADER:
        raise BadDomain(f"expected header {CSV_HEADER!r}")
    rows = [ln.split(",") for ln in lines[1:]]
    nodes = np.array([float(r[0]) for r in rows])
    values = np.array([float(r[1]) for r in rows])
    return MonotoneFunction(nodes, values, provenance)
