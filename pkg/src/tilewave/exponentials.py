"""Exponential systems on polygonal regions.

Translation sets are finite unions of shifted dual lattices.  Gram matrices
use a closed-form Fourier transform of polygon indicators, and their extreme
eigenvalues estimate Riesz bounds on finite sections.
"""

from __future__ import annotations

import io
import math
import struct
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._parallel import ordered_map
from .errors import BoundaryPoint, NotHermitian, ShiftCollision
from .geometry import Lattice2, Region, same_set
from .tiling import CHUNK, LatticeMembership, covering_cells, sample_indices

TWO_PI = 2.0 * math.pi
COLLISION_TOL = 1e-12
TAYLOR_CUTOFF = 1e-3
CAVEAT = ("finite-section estimate: lambda_min bounds the Riesz constant C1 from above and "
          "lambda_max bounds C2 from below; no global bound is certified")


def dual_lattice(g: Lattice2) -> Lattice2:
    return g.dual()


# ---------------------------------------------------------------------------
# translation sets

@dataclass(frozen=True)
class TranslationSet:
    """``union_j (dual + shifts[j])``."""

    dual: Lattice2
    shifts: tuple  # ((x, y), ...) floats
    seed: int | None = None

    @property
    def k(self) -> int:
        return len(self.shifts)

    def labels(self, radius: float) -> tuple:
        """``(labels, points)`` of all elements in the closed disk of ``radius``.

        Labels are ``(j, i1, i2)`` with point ``dual.basis @ (i1, i2) + shifts[j]``,
        sorted lexicographically.
        """
        if radius <= 0:
            raise ValueError("radius must be > 0")
        B = self.dual.basis.shadow
        inv = np.linalg.inv(B)
        lab, pts = [], []
        r2 = radius * radius * (1 + 1e-12)
        for j, x in enumerate(self.shifts):
            x = np.asarray(x, float)
            corners = np.array([[sx, sy] for sx in (-radius, radius) for sy in (-radius, radius)]) - x
            uv = corners @ inv.T
            lo = np.floor(uv.min(axis=0)).astype(int) - 1
            hi = np.ceil(uv.max(axis=0)).astype(int) + 1
            i1, i2 = np.meshgrid(np.arange(lo[0], hi[0] + 1), np.arange(lo[1], hi[1] + 1), indexing="ij")
            ij = np.column_stack([i1.ravel(), i2.ravel()])
            p = ij @ B.T + x
            keep = np.einsum("ij,ij->i", p, p) <= r2
            for (a, b), q in zip(ij[keep].tolist(), p[keep]):
                lab.append((j, a, b))
                pts.append(q)
        order = sorted(range(len(lab)), key=lambda i: lab[i])
        return [lab[i] for i in order], np.array([pts[i] for i in order]).reshape(-1, 2)

    def to_json(self) -> dict:
        return {"dual": self.dual.to_json(), "shifts": [[float(a), float(b)] for a, b in self.shifts],
                "seed": self.seed}


def _collides(dual: Lattice2, x, y, tol: float = COLLISION_TOL) -> bool:
    d = np.linalg.solve(dual.basis.shadow, np.asarray(x, float) - np.asarray(y, float))
    return bool(np.all(np.abs(d - np.round(d)) < tol))


def generate_lambda(g: Lattice2, k: int, seed: int | None = None, shifts=None,
                    validate: bool = True) -> TranslationSet:
    """Translation set ``union_j (g* + x_j)`` for ``k`` shifts.

    Shifts are either given explicitly or drawn uniformly from the dual
    fundamental domain with ``numpy.random.default_rng(seed)``.
    ``validate=False`` admits colliding shifts, which is only useful for
    building deliberately degenerate systems.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    dual = g.dual()
    if shifts is None:
        if seed is None:
            raise ValueError("give either a seed or explicit shifts")
        u = np.random.default_rng(seed).random((k, 2))
        pts = u @ dual.basis.shadow.T
        shifts = tuple((float(a), float(b)) for a, b in pts)
    else:
        shifts = tuple((float(a), float(b)) for a, b in shifts)
        if len(shifts) != k:
            raise ValueError(f"expected {k} shifts, got {len(shifts)}")
    if validate:
        for i in range(k):
            for j in range(i + 1, k):
                if _collides(dual, shifts[i], shifts[j]):
                    raise ShiftCollision(f"shifts {i} and {j} coincide modulo the dual lattice; re-seed")
    return TranslationSet(dual, shifts, seed)


def covering_translates(w: Region, g: Lattice2, x) -> list:
    """Exact ``{gamma in g : x - gamma in interior(w)}``, sorted."""
    x = (Fraction(x[0]), Fraction(x[1]))
    bx0, by0, bx1, by1 = w.bbox
    iu, iv = g.index_box((x[0] - bx1, x[1] - by1, x[0] - bx0, x[1] - by0), margin=1)
    out = []
    for i in iu:
        for j in iv:
            gx, gy = g.point(i, j)
            r = w.contains((x[0] - gx, x[1] - gy))
            if r == 0:
                raise BoundaryPoint(f"{x} - {(gx, gy)} lies on the boundary of the region")
            if r == 1:
                out.append((gx, gy))
    return sorted(out)


# ---------------------------------------------------------------------------
# admissibility of shifts

@dataclass
class DetReport:
    min_abs_det: float
    histogram: dict  # decade label -> count
    samples: int
    discarded: int
    seed: int

    def to_json(self) -> dict:
        return {"min_abs_det": round(self.min_abs_det, 12), "histogram": self.histogram,
                "samples": self.samples, "discarded": self.discarded, "seed": self.seed}


def _decade(v: float) -> str:
    if v <= 1e-12:
        return "<=1e-12"
    e = math.floor(math.log10(v))
    return f"1e{e}"


def _symbol_matrices(shifts: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    """``M[..., j, m] = exp(2 pi i <x_j, gamma_m>)`` for stacked ``gammas``."""
    phase = np.einsum("jd,nmd->njm", shifts, gammas)
    return np.exp(1j * TWO_PI * phase)


def det_criterion(w: Region, g: Lattice2, ts: TranslationSet, samples: int = 10_000,
                  seed: int = 0) -> DetReport:
    """Minimum of ``|det M(x)|`` over seeded points ``x`` of the fundamental domain.

    ``M(x)`` pairs the ``k`` shifts with the ``k`` lattice translates covering
    ``x``; a value near zero flags an inadmissible choice of shifts.
    """
    mem = LatticeMembership(w, g)
    k = ts.k
    gam = np.array([[float(a), float(b)] for a, b in mem.gammas]).reshape(-1, 2)
    xs = np.array(ts.shifts, float)
    ij = sample_indices(samples, seed)
    chunks = [ij[s:s + CHUNK] for s in range(0, samples, CHUNK)]

    def work(chunk):
        inside, boundary = mem.classify(chunk)
        inside = inside[~boundary]
        counts = inside.sum(axis=1)
        if np.any(counts != k):
            raise ValueError(f"covering count {sorted(set(counts.tolist()))} differs from k={k}; "
                             "the region does not k-tile with this lattice")
        idx = np.nonzero(inside)[1].reshape(-1, k)
        dets = np.abs(np.linalg.det(_symbol_matrices(xs, gam[idx]))) if len(idx) else np.zeros(0)
        return dets, int(boundary.sum())

    dets, disc = [], 0
    for d, b in ordered_map(work, chunks):
        dets.append(d)
        disc += b
    dets = np.concatenate(dets)
    hist = {}
    for v in dets.tolist():
        key = _decade(v)
        hist[key] = hist.get(key, 0) + 1
    mn = float(dets.min()) if len(dets) else float("nan")
    return DetReport(mn, dict(sorted(hist.items())), samples, disc, seed)


@dataclass
class SymbolBounds:
    """Riesz bounds of the full (untruncated) system, from covering cells."""

    lower: float
    upper: float
    min_abs_det: float
    cells: int

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "min_abs_det": self.min_abs_det, "cells": self.cells}


def symbol_bounds(w: Region, g: Lattice2, ts: TranslationSet) -> SymbolBounds:
    """Exact-cell evaluation of ``covol * [min sigma_min^2, max sigma_max^2]``.

    On each cell of the covering overlay the covering translates are fixed,
    so the analysis operator of ``E(Lambda)`` reduces to the constant matrix
    ``M`` on that cell; its singular values give the Riesz bounds directly.
    """
    cells = covering_cells(w, g)
    if any(len(S) != ts.k for _, S in cells):
        raise ValueError("symbol bounds need a verified k-tiling with k = number of shifts")
    xs = np.array(ts.shifts, float)
    lo, hi, mdet = math.inf, 0.0, math.inf
    for _, S in cells:
        # covering set of x is -S in the convention of covering_translates
        G = -np.array([[float(a), float(b)] for a, b in S])
        M = _symbol_matrices(xs, G[None])[0]
        sv = np.linalg.svd(M, compute_uv=False)
        lo = min(lo, sv[-1] ** 2)
        hi = max(hi, sv[0] ** 2)
        mdet = min(mdet, abs(np.linalg.det(M)))
    cov = float(g.covolume)
    return SymbolBounds(cov * lo, cov * hi, mdet, len(cells))


# ---------------------------------------------------------------------------
# Fourier transform of polygon indicators

def _cis_neg(s: np.ndarray) -> np.ndarray:
    """``exp(-2 pi i s)`` with the argument reduced mod 1, exact at quarter turns."""
    r = s - np.round(s)
    out = np.exp(-1j * TWO_PI * r)
    for q, v in ((0.0, 1.0), (0.25, -1j), (-0.25, 1j), (0.5, -1.0), (-0.5, -1.0)):
        out = np.where(r == q, v, out)
    return out


def _edge_factor(s: np.ndarray) -> np.ndarray:
    """``E(s) = int_0^1 exp(-2 pi i s t) dt``."""
    r = s - np.round(s)
    num = -2.0 * np.sin(math.pi * r) ** 2 - 1j * np.sin(TWO_PI * r)
    num = np.where(np.isin(r, (0.0, 0.5, -0.5, 0.25, -0.25)), _cis_neg(s) - 1.0, num)
    small = np.abs(s) < TAYLOR_CUTOFF
    safe = np.where(small, 1.0, s)
    out = num / (-1j * TWO_PI * safe)
    if np.any(small):
        z = -1j * TWO_PI * np.where(small, s, 0.0)
        series = np.zeros_like(out)
        term = np.ones_like(out)
        for n in range(6):
            series = series + term / math.factorial(n + 1)
            term = term * z
        out = np.where(small, series, out)
    return out


def _part_ft_edges(v: np.ndarray, xi: np.ndarray) -> np.ndarray:
    e = np.roll(v, -1, axis=0) - v
    n2 = np.einsum("nd,nd->n", xi, xi)
    coeff = xi[:, :1] * e[None, :, 1] - xi[:, 1:] * e[None, :, 0]
    total = np.sum(coeff * _cis_neg(xi @ v.T) * _edge_factor(xi @ e.T), axis=1)
    return 1j * total / (TWO_PI * n2)


def _part_ft_moments(v: np.ndarray, xi: np.ndarray, terms: int = 40) -> np.ndarray:
    """Power series of the transform about the first vertex (small ``|xi|``)."""
    p0 = v[0]
    rel = v[1:] - p0
    z = -1j * TWO_PI
    out = np.zeros(len(xi), dtype=complex)
    for a, b in zip(rel[:-1], rel[1:]):
        twice = a[0] * b[1] - a[1] * b[0]
        u, w = xi @ a, xi @ b
        h = np.ones(len(xi), dtype=complex)
        wp = np.ones(len(xi), dtype=complex)
        acc = h / 2.0
        zn = 1.0
        for n in range(1, terms):
            wp = wp * w
            h = u * h + wp
            zn = zn * z
            acc = acc + zn * h / math.factorial(n + 2)
        out += twice * acc
    return out * _cis_neg(xi @ p0)


def _float_parts(w) -> list:
    if isinstance(w, Region):
        return w.to_float_parts()
    return [np.asarray(p, float) for p in w]


def polygon_ft(w, xi) -> np.ndarray | complex:
    """``int_w exp(-2 pi i <xi, x>) dx`` for a region or list of float parts.

    Edge-sum closed form from the divergence theorem; near the origin a
    power series about a vertex takes over to avoid cancellation.
    """
    parts = _float_parts(w)
    xi_arr = np.asarray(xi, float)
    scalar = xi_arr.ndim == 1
    xi_arr = np.atleast_2d(xi_arr)
    out = np.zeros(len(xi_arr), dtype=complex)
    norm = np.hypot(xi_arr[:, 0], xi_arr[:, 1])
    zero = norm == 0
    area = float(w.area) if isinstance(w, Region) else sum(
        0.5 * float(np.sum(p[:, 0] * np.roll(p[:, 1], -1) - np.roll(p[:, 0], -1) * p[:, 1])) for p in parts)
    for v in parts:
        R = float(np.max(np.hypot(*(v - v[0]).T)))
        small = (TWO_PI * norm * R <= 2.0) & ~zero
        big = ~small & ~zero
        if np.any(big):
            out[big] += _part_ft_edges(v, xi_arr[big])
        if np.any(small):
            out[small] += _part_ft_moments(v, xi_arr[small])
    out[zero] = area
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# Gram matrices

@dataclass
class GramMatrix:
    labels: list
    points: np.ndarray
    entries: np.ndarray
    area: float
    radius: float = 0.0

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def is_hermitian(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.conj().T))

    def quadratic_form(self, c) -> float:
        c = np.asarray(c)
        return float(np.real(np.vdot(c, self.entries @ c)))

    MAGIC = b"TWGRAM01"

    def to_bytes(self) -> bytes:
        """Little-endian container: magic, header, labels, complex128 entries."""
        buf = io.BytesIO()
        buf.write(self.MAGIC)
        buf.write(struct.pack("<QQdd", self.dimension, 1, self.area, self.radius))
        for (j, a, b), p in zip(self.labels, self.points):
            buf.write(struct.pack("<qqqdd", j, a, b, float(p[0]), float(p[1])))
        buf.write(np.ascontiguousarray(self.entries, dtype="<c16").tobytes())
        return buf.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "GramMatrix":
        if data[:8] != cls.MAGIC:
            raise ValueError("not a tilewave Gram container")
        n, _, area, radius = struct.unpack_from("<QQdd", data, 8)
        off = 8 + 32
        labels, pts = [], []
        for _ in range(n):
            j, a, b, x, y = struct.unpack_from("<qqqdd", data, off)
            labels.append((j, a, b))
            pts.append((x, y))
            off += 40
        ent = np.frombuffer(data, dtype="<c16", count=n * n, offset=off).reshape(n, n).copy()
        return cls(labels, np.array(pts).reshape(-1, 2), ent, area, radius)

    def to_csv(self) -> str:
        lines = ["row,col,real,imag"]
        n = self.dimension
        E = self.entries
        for i in range(n):
            for j in range(n):
                lines.append(f"{i},{j},{E[i, j].real!r},{E[i, j].imag!r}")
        return "\n".join(lines) + "\n"


def _is_symmetric(w) -> bool:
    return isinstance(w, Region) and same_set(w, -w)


def gram_from_labels(w, labels, points, shifts, basis: np.ndarray, radius: float = 0.0) -> GramMatrix:
    """``G[i][j] = F_w(lambda_i - lambda_j)`` via a table of unique differences."""
    n = len(labels)
    if n == 0:
        raise ValueError("empty truncation: no translation inside the radius")
    lab = np.array(labels, dtype=np.int64).reshape(-1, 3)
    sh = np.asarray(shifts, float).reshape(-1, 2)
    G = np.zeros((n, n), dtype=complex)
    groups = {j: np.nonzero(lab[:, 0] == j)[0] for j in sorted(set(lab[:, 0].tolist()))}
    tasks = [(j1, j2) for j1 in groups for j2 in groups if j1 <= j2]

    def block(task):
        j1, j2 = task
        A, B = groups[j1], groups[j2]
        D = lab[A][:, None, 1:] - lab[B][None, :, 1:]
        lo = D.reshape(-1, 2).min(axis=0)
        span = int(D[..., 1].max() - lo[1] + 1)
        key = (D[..., 0] - lo[0]) * span + (D[..., 1] - lo[1])
        ukey, inv = np.unique(key.ravel(), return_inverse=True)
        uniq = np.column_stack([ukey // span + lo[0], ukey % span + lo[1]])
        xi = uniq @ basis.T + (sh[j1] - sh[j2])
        vals = polygon_ft(w, xi)
        if isinstance(vals, complex):
            vals = np.array([vals])
        return vals[inv.reshape(-1)].reshape(len(A), len(B))

    for (j1, j2), blk in zip(tasks, ordered_map(block, tasks)):
        A, B = groups[j1], groups[j2]
        G[np.ix_(A, B)] = blk
        if j1 != j2:
            G[np.ix_(B, A)] = blk.conj().T
    if _is_symmetric(w):
        G = G.real.astype(complex)
    lower = np.tril_indices(n, -1)
    G[lower] = G.T[lower].conj()
    area = float(w.area) if isinstance(w, Region) else float(np.real(polygon_ft(w, (0.0, 0.0))))
    G[np.diag_indices(n)] = area
    return GramMatrix(list(map(tuple, labels)), np.asarray(points), G, area, radius)


def gram(w, ts: TranslationSet, radius: float) -> GramMatrix:
    """Gram matrix of ``E(Lambda)`` on ``L^2(w)`` over ``Lambda`` in a closed disk."""
    labels, points = ts.labels(radius)
    return gram_from_labels(w, labels, points, ts.shifts, ts.dual.basis.shadow, radius)


# ---------------------------------------------------------------------------
# eigenvalues

def _round_robin(n: int) -> list:
    """Disjoint index pairs for each step of a cyclic sweep (odd ``n`` gets a bye)."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            P, Q = np.array(pairs).T
            rounds.append((P, Q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60) -> tuple:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Rotations within one round-robin step act on disjoint index pairs and
    are applied together.  Returns ``(eigenvalues, sweeps, off_norm)`` with
    ``off_norm`` the Frobenius norm of the remaining off-diagonal part,
    which bounds the eigenvalue error.
    """
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    if n == 1:
        return A.diagonal().copy(), 0, 0.0
    rounds = _round_robin(n)
    scale = max(1.0, float(np.linalg.norm(A)))
    sweeps = 0

    def off(M):
        return float(np.linalg.norm(M - np.diag(np.diag(M))))

    while off(A) > tol * scale and sweeps < max_sweeps:
        for P, Q in rounds:
            apq = A[P, Q]
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            app, aqq = A[P, P], A[Q, Q]
            safe = np.where(active, apq, 1.0)
            with np.errstate(over="ignore"):
                tau = (aqq - app) / (2.0 * safe)
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            rp, rq = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = c[:, None] * rp - s[:, None] * rq
            A[Q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = cp * c - cq * s
            A[:, Q] = cp * s + cq * c
            # closed-form diagonal update keeps rounding from accumulating
            A[P, P] = app - t * apq
            A[Q, Q] = aqq + t * apq
            A[P, Q] = 0.0
            A[Q, P] = 0.0
        sweeps += 1
    return np.sort(A.diagonal()), sweeps, off(A)


def realify(H: np.ndarray) -> np.ndarray:
    """``[[Re H, -Im H], [Im H, Re H]]``: same spectrum, each eigenvalue doubled."""
    R, I = H.real, H.imag
    return np.block([[R, -I], [I, R]])


@dataclass
class BoundsEstimate:
    lambda_min: float
    lambda_max: float
    truncation_radius: float
    iterations: int
    residual: float
    dimension: int = 0
    method: str = "jacobi"
    caveat: str = CAVEAT
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"lambda_min": self.lambda_min, "lambda_max": self.lambda_max,
                "truncation_radius": self.truncation_radius, "iterations": self.iterations,
                "residual": self.residual, "dimension": self.dimension, "method": self.method,
                "caveat": self.caveat, **self.extra}


JACOBI_LIMIT = 300


def riesz_bounds(G, method: str = "auto", psd_tol: float = 1e-10) -> BoundsEstimate:
    """Extreme eigenvalues of a Gram matrix.

    ``method`` is ``"jacobi"``, ``"lapack"`` or ``"auto"`` (Jacobi up to
    ``JACOBI_LIMIT`` real unknowns, LAPACK beyond).
    """
    radius = G.radius if isinstance(G, GramMatrix) else 0.0
    H = G.entries if isinstance(G, GramMatrix) else np.asarray(G)
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise NotHermitian("Gram matrix must be square")
    scale = max(1.0, float(np.max(np.abs(H))))
    if np.max(np.abs(H - H.conj().T)) > 1e-12 * scale:
        raise NotHermitian("matrix is not Hermitian")
    complex_part = np.iscomplexobj(H) and np.any(H.imag != 0)
    R = realify(H) if complex_part else np.real(H).astype(float)
    n = R.shape[0]
    if method == "auto":
        method = "jacobi" if n <= JACOBI_LIMIT else "lapack"
    if method == "jacobi":
        ev, sweeps, resid = jacobi_eigenvalues(R)
        lo, hi = float(ev[0]), float(ev[-1])
    elif method == "lapack":
        from scipy.linalg import eigh

        w0, v0 = eigh(R, subset_by_index=[0, 0])
        w1, v1 = eigh(R, subset_by_index=[n - 1, n - 1])
        lo, hi = float(w0[0]), float(w1[0])
        resid = max(float(np.linalg.norm(R @ v0[:, 0] - lo * v0[:, 0])),
                    float(np.linalg.norm(R @ v1[:, 0] - hi * v1[:, 0])))
        sweeps = 0
    else:
        raise ValueError(f"unknown method {method!r}")
    if lo < -psd_tol:
        raise ValueError(f"matrix is not positive semidefinite (lambda_min = {lo:.3e})")
    return BoundsEstimate(lo, hi, radius, sweeps, resid, H.shape[0], method)


# ---------------------------------------------------------------------------
# direct evaluation of the synthesis norm

def _gauss_triangle(v0, v1, v2, nodes: int):
    g, wts = np.polynomial.legendre.leggauss(nodes)
    g = (g + 1) / 2
    wts = wts / 2
    U, V = np.meshgrid(g, g, indexing="ij")
    WU, WV = np.meshgrid(wts, wts, indexing="ij")
    # collapsed square -> triangle
    a, b = v1 - v0, v2 - v0
    pts = v0 + U[..., None] * ((1 - V)[..., None] * a + V[..., None] * b)
    jac = (a[0] * b[1] - a[1] * b[0]) * U
    return pts.reshape(-1, 2), (WU * WV * jac).ravel()


def synthesis_norm2(w, points, c, nodes: int = 256) -> float:
    """``||sum_i c_i e_{lambda_i}||^2`` on ``L^2(w)`` by Gauss quadrature."""
    c = np.asarray(c, complex)
    P = np.asarray(points, float)
    total = 0.0
    for v in _float_parts(w):
        for i in range(1, len(v) - 1):
            x, wt = _gauss_triangle(v[0], v[i], v[i + 1], nodes)
            for s in range(0, len(x), 8192):
                xs = x[s:s + 8192]
                f = np.exp(1j * TWO_PI * (xs @ P.T)) @ c
                total += float(np.sum(wt[s:s + 8192] * np.abs(f) ** 2))
    return total
