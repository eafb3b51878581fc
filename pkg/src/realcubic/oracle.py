"""Floating-point cross-checks: region connectivity on P^2(R), fibre scans over P^1(R).

These are heuristics with explicit honesty flags, not certificates. A report
is ``stable`` when halving the resolution gives the same count and every
sign change along a grid edge is clear: the larger endpoint |value| (relative
to the largest |value| on the grid) is not below ``MARGIN_TOL``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

MARGIN_TOL = 1e-6
MIN_RESOLUTION = 16


@dataclass
class GridReport:
    resolution: int
    component_count: int
    min_margin: float
    stable: bool
    coarse_count: int = None
    mask: object = field(default=None, repr=False)

    def to_dict(self):
        return {
            "resolution": self.resolution,
            "component_count": self.component_count,
            "min_margin": self.min_margin,
            "stable": self.stable,
        }


def _numeric_poly(poly, variables):
    """(exponents array, float coefficients) for fast evaluation in ``variables``."""
    idx = [poly.variables.index(v) for v in variables]
    others = [i for i in range(poly.nvars) if i not in idx]
    exps, coeffs = [], []
    for e, c in poly.terms.items():
        if any(e[i] for i in others):
            raise ValueError(f"polynomial involves variables outside {variables}")
        if not isinstance(c, Fraction):
            raise ValueError("polynomial must be real")
        exps.append([e[i] for i in idx])
        coeffs.append(float(c))
    return np.array(exps, dtype=int).reshape(-1, len(idx)), np.array(coeffs)


def _evaluate(exps, coeffs, pts):
    # pts: (N, k)
    out = np.zeros(len(pts))
    for e, c in zip(exps, coeffs):
        out += c * np.prod(pts ** e, axis=1)
    return out


def _hemisphere_nodes(n):
    """Nodes of the square [-1,1]^2 mapped onto the closed upper hemisphere."""
    t = np.linspace(-1.0, 1.0, n + 1)
    u, v = np.meshgrid(t, t, indexing="ij")
    z = 1.0 - np.maximum(np.abs(u), np.abs(v))
    pts = np.stack([u, v, z], axis=-1).reshape(-1, 3)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _grid_edges(n):
    """Edges of the triangulated (n+1)x(n+1) grid plus antipodal boundary gluing."""
    idx = np.arange((n + 1) * (n + 1)).reshape(n + 1, n + 1)
    edges = [
        np.stack([idx[:-1, :].ravel(), idx[1:, :].ravel()], 1),
        np.stack([idx[:, :-1].ravel(), idx[:, 1:].ravel()], 1),
        np.stack([idx[:-1, :-1].ravel(), idx[1:, 1:].ravel()], 1),
    ]
    # boundary node (i, j) ~ (n - i, n - j)
    bd = [(i, j) for i in range(n + 1) for j in range(n + 1) if i in (0, n) or j in (0, n)]
    glue = np.array([[idx[i, j], idx[n - i, n - j]] for i, j in bd])
    edges.append(glue)
    return np.concatenate(edges)


def _count_components(mask, edges, nnodes):
    keep = mask[edges[:, 0]] & mask[edges[:, 1]]
    e = edges[keep]
    graph = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(nnodes, nnodes))
    _, labels = connected_components(graph, directed=False)
    return len(np.unique(labels[mask]))


def _region_count(exps, coeffs, n):
    pts = _hemisphere_nodes(n)
    vals = _evaluate(exps, coeffs, pts)
    mask = vals >= 0
    edges = _grid_edges(n)
    count = _count_components(mask, edges, len(pts)) if mask.any() else 0
    change = mask[edges[:, 0]] != mask[edges[:, 1]]
    if change.any():
        a, b = np.abs(vals[edges[change, 0]]), np.abs(vals[edges[change, 1]])
        margin = float(np.min(np.maximum(a, b)) / max(np.max(np.abs(vals)), 1e-300))
    else:
        margin = float("inf")
    return count, margin, mask.reshape(n + 1, n + 1)


def region_components_p2(g, resolution=256, variables=None):
    """Connected components of {G >= 0} in P^2(R) for a real form G of even degree."""
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be >= {MIN_RESOLUTION}")
    if not g.is_homogeneous() or g.degree() % 2:
        raise ValueError("G must be homogeneous of even degree")
    if variables is None:
        used = [v for v in g.variables if v in g.support_vars()]
        variables = tuple(used) if len(used) == 3 else tuple(g.variables[-3:])
    exps, coeffs = _numeric_poly(g, variables)
    count, margin, mask = _region_count(exps, coeffs, resolution)
    coarse, _, _ = _region_count(exps, coeffs, resolution // 2)
    stable = coarse == count and margin >= MARGIN_TOL
    return GridReport(resolution, count, margin, stable, coarse, mask)


def write_pgm(report, path):
    """Dump the region mask as a plain-text portable graymap (white = inside)."""
    mask = np.asarray(report.mask, dtype=int)
    h, w = mask.shape
    with open(path, "w") as fh:
        fh.write(f"P2\n{w} {h}\n1\n")
        for row in mask:
            fh.write(" ".join(str(x) for x in row) + "\n")


# -- fibre scans over P^1 ---------------------------------------------------------

def _float_pencil(matrix):
    """Array of shape (deg+1, 4, 4): matrix(x) = sum_k x^k * out[k]."""
    deg = max(len(e.coeffs) for row in matrix for e in row)
    out = np.zeros((max(deg, 1), len(matrix), len(matrix)))
    for i, row in enumerate(matrix):
        for j, e in enumerate(row):
            for k, c in enumerate(e.coeffs):
                out[k, i, j] = float(c)
    return out


def _eval_pencil(pencil, xs):
    powers = np.power.outer(xs, np.arange(len(pencil)))
    return np.einsum("nk,kij->nij", powers, pencil)


def _nonempty(eigs, tol):
    pos = np.sum(eigs > tol)
    neg = np.sum(eigs < -tol)
    # an Empty fibre is a definite rank-4 quadric
    return not (pos == 4 or neg == 4)


def _circular_runs(flags):
    flags = list(flags)
    if not any(flags):
        return 0
    if all(flags):
        return 1
    return sum(1 for i in range(len(flags)) if flags[i] and not flags[i - 1])


def _scan(gram, n):
    theta = np.pi * (np.arange(n) + 0.5) / n
    c, s = np.cos(theta), np.sin(theta)
    chart0 = np.abs(c) >= np.abs(s)
    mats = np.empty((n, 4, 4))
    mats[chart0] = _eval_pencil(_float_pencil(gram.matrix), s[chart0] / c[chart0])
    mats[~chart0] = _eval_pencil(_float_pencil(gram.matrix_inf), c[~chart0] / s[~chart0])
    eigs = np.linalg.eigvalsh(mats)
    scale = np.maximum(1.0, np.max(np.abs(eigs), axis=1))
    flags = [_nonempty(e, 1e-12 * sc) for e, sc in zip(eigs, scale)]
    margins = np.min(np.abs(eigs), axis=1) / scale
    count = _circular_runs(flags)
    border = [max(margins[i], margins[i - 1]) for i in range(n) if flags[i] != flags[i - 1]]
    margin = float(min(border)) if border else float("inf")
    return count, margin


def fiber_scan_p1(gram, resolution=512):
    """Numeric count of nonempty-fibre runs on the circle P^1(R)."""
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be >= {MIN_RESOLUTION}")
    count, margin = _scan(gram, resolution)
    coarse, _ = _scan(gram, resolution // 2)
    return GridReport(resolution, count, margin, coarse == count and margin >= MARGIN_TOL, coarse)
