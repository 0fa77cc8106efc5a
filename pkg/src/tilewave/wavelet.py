"""Wavelet Riesz systems built from a multiplicative tile.

The system is ``(D_A T_lambda psi)`` with ``psi^ = c_psi 1_W``.  On the
Fourier side the element for dilation ``A`` lives on ``A^{-T} W``; since these
images are disjoint, the Gram matrix is block diagonal with one block per
dilation, and each block is unitarily the exponential Gram of ``W``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import ordered_map
from .errors import UnverifiedDescriptor
from .exponentials import (
    BoundsEstimate,
    GramMatrix,
    TranslationSet,
    det_criterion,
    gram_from_labels,
    polygon_ft,
    riesz_bounds,
)
from .geometry import Mat2, Region, affine_image, float_intersection_area, overlay, shadow_image
from .groups import (
    ShearElement,
    ShearletParams,
    SimilitudeElement,
    SimilitudeParams,
    dual_action,
    element_matrix,
)
from .tiling import verify_multiplicative_shearlet, verify_multiplicative_similitude

DET_THRESHOLD = 1e-9
DISJOINT_MARGIN = 1e-9


@dataclass
class WaveletSystemDescriptor:
    """Tile, dilation family, translation set and attached verification reports.

    ``tile`` and ``translations`` are stored in the coordinates they were
    verified in; ``coord_map`` sends stored frequency coordinates to natural
    ones (identity for shearlets, ``diag(tan(pi/n), 1)`` for the scaled
    similitude tile).
    """

    tile: Region
    params: ShearletParams | SimilitudeParams
    translations: TranslationSet
    k_range: tuple = (-1, 1)
    m_range: tuple = (-1, 1)  # shear indices; ignored for similitude
    c_psi: float = 1.0
    coord_map: Mat2 = field(default_factory=Mat2.identity)
    reports: dict = field(default_factory=dict)

    @property
    def is_shearlet(self) -> bool:
        return isinstance(self.params, ShearletParams)

    @property
    def verified(self) -> bool:
        mult = self.reports.get("multiplicative")
        det = self.reports.get("det_criterion")
        return bool(mult is not None and mult.verdict and det is not None
                    and det.min_abs_det > DET_THRESHOLD)

    def dilations(self) -> list:
        """Group elements in canonical order ``(k, m)`` or ``(k, l)``."""
        ks = range(self.k_range[0], self.k_range[1] + 1)
        if self.is_shearlet:
            ms = range(self.m_range[0], self.m_range[1] + 1)
            return [ShearElement(k, m) for k in ks for m in ms]
        return [SimilitudeElement(k, l) for k in ks for l in range(self.params.n // 2)]

    def natural_tile(self) -> list:
        return shadow_image(self.tile, self.coord_map)

    def natural_translations(self) -> tuple:
        """``(basis, shifts)`` of the translation set in natural coordinates."""
        inv_t = np.linalg.inv(self.coord_map.shadow).T
        basis = inv_t @ self.translations.dual.basis.shadow
        shifts = [tuple(inv_t @ np.asarray(x, float)) for x in self.translations.shifts]
        return basis, shifts

    def natural_points(self, radius: float) -> tuple:
        labels, pts = self.translations.labels(radius)
        inv_t = np.linalg.inv(self.coord_map.shadow).T
        return labels, pts @ inv_t.T

    def to_json(self) -> dict:
        group = "shearlet" if self.is_shearlet else "similitude"
        return {
            "schema": "tilewave.descriptor",
            "version": 1,
            "tile": self.tile.to_json(),
            "group": group,
            "params": self.params.to_json(),
            "k_range": list(self.k_range),
            "m_range": list(self.m_range) if self.is_shearlet else None,
            "translations": self.translations.to_json(),
            "c_psi": self.c_psi,
            "coord_map": self.coord_map.to_json(),
            "reports": {k: v.to_json() for k, v in sorted(self.reports.items())},
        }


def build_descriptor(tile: Region, params, translations: TranslationSet, lattice, *,
                     k_range=(-1, 1), m_range=(-1, 1), c_psi: float = 1.0, coord_map: Mat2 | None = None,
                     samples: int = 20_000, seed: int = 7, det_samples: int = 10_000) -> WaveletSystemDescriptor:
    """Descriptor with multiplicative and shift-admissibility reports attached."""
    if isinstance(params, ShearletParams):
        mult = verify_multiplicative_shearlet(params, samples=samples, seed=seed)
    else:
        mult = verify_multiplicative_similitude(params, samples=samples, seed=seed)
    det = det_criterion(tile, lattice, translations, samples=det_samples, seed=seed)
    d = WaveletSystemDescriptor(tile, params, translations, tuple(k_range), tuple(m_range), c_psi,
                                coord_map or Mat2.identity(), {"multiplicative": mult, "det_criterion": det})
    return d


def eval_psi(d: WaveletSystemDescriptor, x):
    """``psi(x) = c_psi * int_W exp(2 pi i <x, xi>) d xi``."""
    x = np.asarray(x, float)
    return d.c_psi * polygon_ft(d.natural_tile(), -x)


def psi_norm2(d: WaveletSystemDescriptor, spacing: float = 0.25, half_width: float = 32.0) -> float:
    """``||psi||_2^2`` from lattice sums of ``|psi|^2`` over two boxes.

    With ``1/spacing`` at least the width of ``W - W``, the full lattice sum
    equals the integral exactly (Poisson summation against the compactly
    supported autocorrelation).  Truncation to ``[-L, L]^2`` leaves a tail
    of order ``1/L``, removed by Richardson extrapolation over ``L, 2L``.
    """
    def box(L):
        n = np.arange(-int(round(L / spacing)), int(round(L / spacing)) + 1) * spacing
        X, Y = np.meshgrid(n, n)
        P = np.column_stack([X.ravel(), Y.ravel()])
        s = 0.0
        for i in range(0, len(P), 200_000):
            s += float(np.sum(np.abs(eval_psi(d, P[i:i + 200_000])) ** 2))
        return s * spacing * spacing

    s1, s2 = box(half_width), box(2 * half_width)
    return 2 * s2 - s1


# ---------------------------------------------------------------------------
# block-diagonal Gram

@dataclass
class SystemGram:
    dilations: list
    blocks: list  # GramMatrix per dilation
    base: GramMatrix  # exponential Gram of the natural tile
    cross_zero: bool

    @property
    def dimension(self) -> int:
        return sum(b.dimension for b in self.blocks)

    def dense(self) -> np.ndarray:
        n = self.dimension
        out = np.zeros((n, n), dtype=complex)
        o = 0
        for b in self.blocks:
            m = b.dimension
            out[o:o + m, o:o + m] = b.entries
            o += m
        return out

    def quadratic_form(self, c) -> float:
        c = np.asarray(c)
        total, o = 0.0, 0
        for b in self.blocks:
            m = b.dimension
            total += b.quadratic_form(c[o:o + m])
            o += m
        return total

    def max_block_deviation(self) -> float:
        return max(float(np.max(np.abs(b.entries - self.base.entries))) for b in self.blocks)


def _supports_disjoint(d: WaveletSystemDescriptor, mats: list) -> bool:
    exact = d.coord_map.is_exact and all(m.is_exact for m in mats)
    if exact:
        images = [affine_image(d.tile, m) for m in mats]
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                if any(mult > 1 for _, mult in overlay([images[i], images[j]])):
                    return False
        return True
    images = [shadow_image(d.natural_tile(), m) for m in mats]
    boxes = [(np.min(np.vstack(im), axis=0), np.max(np.vstack(im), axis=0)) for im in images]
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            (lo1, hi1), (lo2, hi2) = boxes[i], boxes[j]
            if np.any(hi1 < lo2) or np.any(hi2 < lo1):
                continue
            for p in images[i]:
                for q in images[j]:
                    if float_intersection_area(p, q) > DISJOINT_MARGIN:
                        return False
    return True


def system_gram(d: WaveletSystemDescriptor, radius: float = 5.0, require_verified: bool = True) -> SystemGram:
    """Gram of ``{D_{A^{-T}} E_lambda 1_W}`` over truncated dilations and translations.

    Block for ``M = A^{-T}``: ``|det M|^{-1} F_{MW}(M^{-T}(lambda_i - lambda_j))``,
    evaluated on the dilated tile itself.  Off-diagonal blocks vanish
    because the supports ``MW`` are pairwise disjoint, which is checked.
    """
    if require_verified and not d.verified:
        raise UnverifiedDescriptor("descriptor lacks passing multiplicative and det_criterion reports")
    labels, points = d.natural_points(radius)
    basis, shifts = d.natural_translations()
    tile = d.natural_tile()
    base = gram_from_labels(tile, labels, points, shifts, basis, radius)
    dil = d.dilations()
    mats = [dual_action(g, d.params) for g in dil]

    def block(M: Mat2) -> GramMatrix:
        S = M.shadow
        inv_t = np.linalg.inv(S).T
        img = shadow_image(tile, M)
        G = gram_from_labels(img, labels, points @ inv_t.T, [tuple(inv_t @ np.asarray(x)) for x in shifts],
                             inv_t @ basis, radius)
        G.entries = G.entries / abs(float(np.linalg.det(S)))
        G.area = G.area / abs(float(np.linalg.det(S)))
        return G

    blocks = ordered_map(block, mats)
    return SystemGram(dil, blocks, base, _supports_disjoint(d, mats))


def system_bounds(sg: SystemGram, method: str = "auto") -> BoundsEstimate:
    """Riesz bounds of the block-diagonal system (union of block spectra)."""
    ests = [riesz_bounds(b, method=method) for b in sg.blocks]
    lo = min(e.lambda_min for e in ests)
    hi = max(e.lambda_max for e in ests)
    return BoundsEstimate(lo, hi, sg.blocks[0].radius, max(e.iterations for e in ests),
                          max(e.residual for e in ests), sg.dimension, ests[0].method,
                          extra={"blocks": len(sg.blocks)})


# ---------------------------------------------------------------------------
# coefficients and the Riesz inequality

@dataclass
class CoefficientVector:
    """Sparse coefficients keyed by ``(dilation index, translation label)``."""

    entries: dict

    def dense(self, sg: SystemGram) -> np.ndarray:
        index = {}
        o = 0
        for g, b in zip(sg.dilations, sg.blocks):
            for lab in b.labels:
                index[(g, tuple(lab))] = o
                o += 1
        out = np.zeros(o, dtype=complex)
        for key, v in self.entries.items():
            g, lab = key
            if (g, tuple(lab)) not in index:
                raise KeyError(f"coefficient {key!r} outside the truncated system")
            out[index[(g, tuple(lab))]] = v
        return out


def riesz_inequality(sg: SystemGram, c, bounds: BoundsEstimate) -> tuple:
    """``(C1 |c|^2, c* G c, C2 |c|^2)`` for a coefficient vector."""
    if isinstance(c, CoefficientVector):
        c = c.dense(sg)
    c = np.asarray(c, complex)
    n2 = float(np.vdot(c, c).real)
    return bounds.lambda_min * n2, sg.quadratic_form(c), bounds.lambda_max * n2


@dataclass
class InequalityReport:
    trials: int
    holds: bool
    worst_lower_margin: float
    worst_upper_margin: float
    seed: int

    def to_json(self) -> dict:
        return {"trials": self.trials, "holds": self.holds, "worst_lower_margin": self.worst_lower_margin,
                "worst_upper_margin": self.worst_upper_margin, "seed": self.seed}


def riesz_inequality_check(sg: SystemGram, bounds: BoundsEstimate, trials: int = 1000, seed: int = 0,
                           rtol: float = 1e-10) -> InequalityReport:
    """Check ``lhs <= middle <= rhs`` on seeded complex Gaussian vectors."""
    rng = np.random.default_rng(seed)
    n = sg.dimension
    lo_m, hi_m, ok = math.inf, math.inf, True
    for _ in range(trials):
        c = rng.normal(size=n) + 1j * rng.normal(size=n)
        lhs, mid, rhs = riesz_inequality(sg, c, bounds)
        slack = rtol * max(1.0, rhs)
        lo_m = min(lo_m, (mid - lhs) / rhs)
        hi_m = min(hi_m, (rhs - mid) / rhs)
        ok &= lhs <= mid + slack and mid <= rhs + slack
    return InequalityReport(trials, bool(ok), lo_m, hi_m, seed)


# ---------------------------------------------------------------------------
# sampling grid

def sampling_grid(d: WaveletSystemDescriptor, radius: float = 5.0) -> list:
    """Nodes ``(A lambda, A)`` in order ``(k, m or l, lambda label)``.

    Rows are ``(k, m_or_l, lambda, A lambda)`` with natural coordinates.
    """
    labels, pts = d.natural_points(radius)
    rows = []
    for g in d.dilations():
        A = element_matrix(g, d.params).shadow
        second = g.m if isinstance(g, ShearElement) else g.l
        img = pts @ A.T
        for lam, al in zip(pts, img):
            rows.append((g.k, second, float(lam[0]), float(lam[1]), float(al[0]), float(al[1])))
    return rows


def grid_csv(rows: list, second: str = "m") -> str:
    lines = [f"k,{second},lambda1,lambda2,A_lambda1,A_lambda2"]
    for k, s, l1, l2, a1, a2 in rows:
        lines.append(f"{k},{s},{l1:.15g},{l2:.15g},{a1:.15g},{a2:.15g}")
    return "\n".join(lines) + "\n"
