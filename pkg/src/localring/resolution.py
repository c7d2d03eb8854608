"""Minimal free resolutions, Betti numbers, and resolution perturbation.

Each level is built from a minimal generating set of the previous syzygy
module, so every matrix is minimal (entries in the maximal ideal) and the
complex is exact by construction; both properties are re-verified on demand.
The perturbed complex needs unit denominators, so its entries live in a thin
fraction type whose denominators are units of the local ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import GLOBAL, LOCAL, RingError, Vector, unit_vector
from . import division as dv
from . import invariants as iv


class ResolutionError(RingError):
    pass


# -- free resolutions --------------------------------------------------------


@dataclass
class FreeResolution:
    ring: object
    ranks: list  # rank F_i for i = 0..len(maps)
    maps: list  # maps[i] = d_{i+1} as a list of columns (Vectors in F_i)
    order: object
    minimal: bool = True
    _syzygy_ar: list = field(default=None, repr=False)

    def projective_dimension(self):
        return len(self.maps)

    def betti_numbers(self):
        return list(self.ranks)

    def columns(self, i):
        """Columns of d_i (1-based homological index)."""
        return self.maps[i - 1]

    def syzygy_ar_numbers(self):
        """s_i = AR(m, im d_{i+1} <= F_i) for i = 0..p, with AR(0) = 0."""
        if self._syzygy_ar is None:
            p = self.projective_dimension()
            out = []
            for i in range(p):
                out.append(iv.artin_rees(self.maps[i], self.order).value)
            out.append(0)
            self._syzygy_ar = out
        return list(self._syzygy_ar)

    def check(self):
        """Verify d o d = 0, minimality, and exactness at F_1..F_p."""
        for i in range(len(self.maps) - 1):
            for col in self.maps[i + 1]:
                acc = None
                for k, entry in enumerate(col.polys):
                    if entry.is_zero():
                        continue
                    term = self.maps[i][k].mul_poly(entry)
                    acc = term if acc is None else acc + term
                if acc is not None and not acc.is_zero():
                    raise ResolutionError("d o d != 0")
        for cols in self.maps:
            for col in cols:
                for entry in col.polys:
                    if not entry.is_zero() and entry.order == 0:
                        raise ResolutionError("non-minimal matrix entry")
        for i in range(len(self.maps) - 1):
            nxt = [dv._maybe_poly(c, c.rank) for c in self.maps[i + 1]]
            basis = dv.standard_basis(nxt, self.order) if nxt else None
            for z in dv.syzygies(self.maps[i], self.order):
                ok = basis is not None and dv.membership(
                    z, None, self.order, basis=basis
                )
                if not ok:
                    raise ResolutionError("complex not exact")
        if self.maps:
            last = self.maps[-1]
            if dv.syzygies(last, self.order):
                raise ResolutionError("resolution too short: last map not injective")
        return True


def minimal_free_resolution(generators, p=None, order=LOCAL, check=False):
    """Minimal free resolution of R^r / <generators> (r = 1 for an ideal)."""
    vecs = [dv._as_vec(g) for g in generators]
    vecs = [v for v in vecs if not v.is_zero()]
    if not vecs:
        raise ResolutionError("zero module: empty resolution; pass generators")
    ring = vecs[0].ring
    rank0 = vecs[0].rank
    if rank0 == 1 and any(v.polys[0].order == 0 for v in vecs):
        raise ResolutionError("unit ideal has no minimal resolution")
    current = dv.minimal_generators(vecs, order)
    current = [dv._as_vec(g) for g in current]
    ranks = [rank0, len(current)]
    maps = [current]
    limit = ring.nvars + 1 if p is None else min(p, ring.nvars) + 1
    while len(maps) < limit:
        syz = dv.syzygies(maps[-1], order)
        if not syz:
            break
        syz = [dv._as_vec(g) for g in dv.minimal_generators(syz, order)]
        maps.append(syz)
        ranks.append(len(syz))
    else:
        if p is None and dv.syzygies(maps[-1], order):
            raise ResolutionError("resolution exceeded the ambient dimension")
    res = FreeResolution(ring=ring, ranks=ranks, maps=maps, order=order)
    if check:
        res.check()
    return res


def betti_numbers(generators, p=None, order=LOCAL):
    return minimal_free_resolution(generators, p=p, order=order).betti_numbers()


def graded_betti(generators, p=None):
    """Betti numbers of a homogeneous quotient via the global-order engine."""
    for g in generators:
        v = dv._as_vec(g)
        if not v.is_zero() and not v.is_homogeneous():
            raise ResolutionError("graded Betti numbers need homogeneous input")
    return minimal_free_resolution(generators, p=p, order=GLOBAL).betti_numbers()


def image_initial_module(columns, order=LOCAL, upto=None):
    """Initial module of the column span inside the graded free module.

    Returns (initial generators, graded HF up to degree upto or None)."""
    cols = [dv._as_vec(c) for c in columns]
    cols = [c for c in cols if not c.is_zero()]
    if not cols:
        return [], None if upto is None else [0] * (upto + 1)
    basis = dv.standard_basis(cols, order)
    init = dv.initial_module(basis)
    hf = None
    if upto is not None:
        hf = iv.submodule_hilbert_function(init, upto, GLOBAL)
    return init, hf


# -- unit-denominator fractions ----------------------------------------------


class LocalValue:
    """num/den with den a unit of the local ring (nonzero constant term)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        ring = num.ring
        if den is None:
            den = ring.one()
        if den.is_zero() or den.order != 0:
            raise ResolutionError("denominator is not a unit")
        c = den.constant_term()
        if c != ring.field.one:
            inv = ring.field.inv(c)
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return self.num.is_zero()

    @property
    def order(self):
        return self.num.order

    def __add__(self, other):
        other = _lv(other, self.ring)
        if self.den == other.den:
            return LocalValue(self.num + other.num, self.den)
        return LocalValue(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-_lv(other, self.ring))

    def __neg__(self):
        return LocalValue(-self.num, self.den)

    def __mul__(self, other):
        other = _lv(other, self.ring)
        return LocalValue(self.num * other.num, self.den * other.den)

    def __eq__(self, other):
        other = _lv(other, self.ring)
        return (self.num * other.den - other.num * self.den).is_zero()

    def __repr__(self):
        if self.den == self.ring.one():
            return str(self.num)
        return "({})/({})".format(self.num, self.den)


def _lv(x, ring):
    if isinstance(x, LocalValue):
        return x
    return LocalValue(x if hasattr(x, "ring") else ring.constant(x))


def _lv_column(polys):
    return [LocalValue(p) for p in polys]


def _clear_denominators(lv_column):
    """Multiply a LocalValue column by a common unit; returns a poly Vector."""
    ring = lv_column[0].ring
    dens = []
    for v in lv_column:
        if v.den != ring.one() and all(v.den != d for d in dens):
            dens.append(v.den)
    common = ring.one()
    for d in dens:
        common = common * d
    out = []
    for v in lv_column:
        extra = ring.one()
        for d in dens:
            if d != v.den:
                extra = extra * d
        if v.den == ring.one():
            out.append(v.num * common)
        else:
            out.append(v.num * extra)
    return Vector(out, ring), common


# -- perturbed complexes -----------------------------------------------------


@dataclass
class PerturbedComplex:
    base: FreeResolution
    eps: list  # epsilon_i aligned with the columns of d_1
    deltas: list  # deltas[i] = columns of delta_{i+1} as LocalValue lists
    N0: int
    exact: bool = False
    initial_images_equal: bool = False
    delta_order_ok: bool = False
    notes: list = field(default_factory=list)

    def perturbed_columns(self, i):
        """Columns of d_i + delta_i as LocalValue lists."""
        base_cols = self.base.maps[i - 1]
        out = []
        for col, dcol in zip(base_cols, self.deltas[i - 1]):
            out.append([LocalValue(p) + d for p, d in zip(col.polys, dcol)])
        return out

    def polynomial_columns(self, i):
        """Perturbed columns with denominators cleared (module unchanged)."""
        return [_clear_denominators(c)[0] for c in self.perturbed_columns(i)]

    def check_complex(self):
        """(d_i + delta_i) o (d_{i+1} + delta_{i+1}) = 0, exactly."""
        p = len(self.base.maps)
        for i in range(1, p):
            cols_lo = self.perturbed_columns(i)
            for col in self.perturbed_columns(i + 1):
                rank = len(cols_lo[0])
                acc = [_lv(self.base.ring.zero(), self.base.ring) for _ in range(rank)]
                for k, entry in enumerate(col):
                    if entry.is_zero():
                        continue
                    for r in range(rank):
                        acc[r] = acc[r] + cols_lo[k][r] * entry
                if any(not a.is_zero() for a in acc):
                    return False
        return True


def check_exact(columns_by_level, order=LOCAL):
    """True iff every syzygy of level i lies in the column span of level i+1.

    columns_by_level[i] holds the columns of d_{i+1} as poly Vectors; the last
    map must additionally be injective."""
    certificates = []
    for i in range(len(columns_by_level)):
        cols = [dv._as_vec(c) for c in columns_by_level[i]]
        syz = dv.syzygies(cols, order)
        if i + 1 < len(columns_by_level):
            nxt = [dv._maybe_poly(dv._as_vec(c), dv._as_vec(c).rank) for c in columns_by_level[i + 1]]
            basis = dv.standard_basis(nxt, order) if nxt else None
            for z in syz:
                if basis is None or not dv.membership(z, None, order, basis=basis):
                    return False, certificates
                certificates.append((i + 1, z))
        else:
            if syz:
                return False, certificates
    return True, certificates


def perturb_resolution(res, j_gens, N0=None, order=LOCAL, horizon=None):
    """Perturb a minimal free resolution of R/I along J = (f_i + eps_i).

    j_gens must be aligned with the columns of d_1; eps_i = j_i - f_i.  Each
    column of d_{i+1} is a syzygy of the columns of d_i, so its perturbed
    counterpart is the nearby syzygy of the perturbed columns: the original
    column minus its reduction against the perturbed syzygy module, carried
    out only up to the target order.  An order violation or a column that
    collapses is recorded instead of silently repaired."""
    ring = res.ring
    f_cols = res.maps[0]
    if len(j_gens) != len(f_cols):
        raise ResolutionError("J generators must align with the minimal generators")
    eps = [j - c.polys[0] for j, c in zip(j_gens, f_cols)]
    for e in eps:
        if not e.is_zero() and e.order < 1:
            raise ResolutionError("perturbation has a unit term")
    bounds = [e.order for e in eps if not e.is_zero()]
    if N0 is None:
        N0 = 1 + max(res.syzygy_ar_numbers())
    notes = []
    if bounds and min(bounds) < N0:
        notes.append("perturbation order {} below N0 = {}".format(min(bounds), N0))

    p = len(res.maps)
    deltas = [[[LocalValue(e)] for e in eps]]
    pert_cols = [[[LocalValue(c.polys[0] + e)] for c, e in zip(f_cols, eps)]]
    delta_order_ok = all(e.is_zero() or e.order >= N0 for e in eps)

    target = N0 + 1
    for i in range(2, p + 1):
        prev = pert_cols[-1]
        prev_poly = [_clear_denominators(col)[0] for col in prev]
        prev_basisable = [dv._maybe_poly(v, v.rank) for v in prev_poly]
        syz = dv.syzygies(prev_basisable, order) if len(prev) > 1 else []
        syz_basis = dv.standard_basis(syz, order).elements if syz else []
        level_deltas = []
        level_cols = []
        for col in res.maps[i - 1]:
            rank_lo = len(prev[0])
            w = [LocalValue(ring.zero()) for _ in range(rank_lo)]
            for k, entry in enumerate(col.polys):
                if entry.is_zero():
                    continue
                for r in range(rank_lo):
                    w[r] = w[r] + prev[k][r] * LocalValue(entry)
            if all(x.is_zero() for x in w):
                dcol = [LocalValue(ring.zero()) for _ in col.polys]
            else:
                cvec = Vector(list(col.polys), ring)
                rem = cvec
                if syz_basis:
                    rem = dv._as_vec(dv.reduce_to_order(cvec, syz_basis, order, target))
                dcol = [-LocalValue(q) for q in rem.polys]
                if all((c - q).is_zero() for c, q in zip(col.polys, rem.polys)):
                    notes.append("level {} column collapsed to zero".format(i))
            for d in dcol:
                if not d.is_zero() and d.order < N0:
                    delta_order_ok = False
                    notes.append(
                        "delta_{} entry of order {} < N0".format(i, d.order)
                    )
            level_deltas.append(dcol)
            level_cols.append(
                [LocalValue(pv) + d for pv, d in zip(col.polys, dcol)]
            )
        deltas.append(level_deltas)
        pert_cols.append(level_cols)

    complex_ = PerturbedComplex(
        base=res, eps=eps, deltas=deltas, N0=N0, notes=notes,
        delta_order_ok=delta_order_ok,
    )
    if not complex_.check_complex():
        raise ResolutionError("perturbed complex does not compose to zero")

    levels = [complex_.polynomial_columns(i) for i in range(1, p + 1)]
    complex_.exact = check_exact(levels, order)[0]

    if horizon is None:
        horizon = 2 * N0
    equal = True
    for i in range(1, p + 1):
        _, hf_base = image_initial_module(res.maps[i - 1], order, upto=horizon)
        _, hf_pert = image_initial_module(levels[i - 1], order, upto=horizon)
        if hf_base != hf_pert:
            equal = False
            notes.append("initial image differs at level {}".format(i))
    complex_.initial_images_equal = equal
    return complex_
