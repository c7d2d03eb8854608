"""Division and completion engine for ideals and submodules of free modules.

The weak normal form is Mora's algorithm with the ecart strategy, which
terminates for the local degree order and degenerates to ordinary division
for the global one.  Completion is Buchberger-style with the normal pair
selection strategy; every S-pair reduction is tracked, so the engine can
hand back division certificates, lifts through the original generators,
and generating sets of syzygy modules.

Internally elements live as dicts mapping (component, exponents) to
coefficients; the public API speaks Polynomial / Vector.
"""

from __future__ import annotations

import bisect
import heapq
import itertools
from dataclasses import dataclass

from .rings import (
    GLOBAL,
    LOCAL,
    Polynomial,
    RingError,
    RingSpec,
    Vector,
    module_order,
    unit_vector,
)


class DivisionError(RingError):
    pass


class NotAMember(DivisionError):
    pass


class _ReductionBudgetExceeded(Exception):
    """A single Mora reduction ran past the step budget (ecart-strategy
    blowup); the caller restarts the completion via homogenization."""


# single-reduction work budget (coefficient operations) for local
# completions; well beyond any well-behaved reduction, but tripped quickly
# by ecart-strategy blowups
_MORA_STEP_LIMIT = 1_000_000


# -- internal term-dict helpers ---------------------------------------------


def _vec_to_terms(vec):
    out = {}
    for comp, poly in enumerate(vec.polys):
        for e, c in poly.terms.items():
            out[(comp, e)] = c
    return out


def _terms_to_vec(terms, ring, rank):
    polys = [{} for _ in range(rank)]
    for (comp, e), c in terms.items():
        polys[comp][e] = c
    return Vector([Polynomial(ring, p) for p in polys], ring)


def _lead(terms, keyfn):
    return max(terms, key=keyfn)


def _negkey(k):
    """Elementwise negation of a nested tuple-of-ints order key (max -> min)."""
    return tuple(_negkey(x) if isinstance(x, tuple) else -x for x in k)


def _divides(a, b):
    # term a = (comp, exps) divides term b
    return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))


def _deg(term):
    return sum(term[1])


def _degmax(terms):
    return max(sum(e) for _, e in terms)


def _sub_scaled_term(h, c, mono, g, field):
    """h -= c * x^mono * g, in place; returns the terms newly added to h."""
    zero = field.zero
    new = []
    for (comp, e), gc in g.items():
        key = (comp, tuple(a + b for a, b in zip(e, mono)))
        old = h.get(key)
        val = field.sub(old if old is not None else zero, field.mul(c, gc))
        if val == zero:
            if old is not None:
                del h[key]
        else:
            h[key] = val
            if old is None:
                new.append(key)
    return new


def _sub_scaled_polydict(h, c, mono, g, field):
    """Polynomial-dict version: h -= c * x^mono * g, in place."""
    zero = field.zero
    for e, gc in g.items():
        key = tuple(a + b for a, b in zip(e, mono))
        val = field.sub(h.get(key, zero), field.mul(c, gc))
        if val == zero:
            h.pop(key, None)
        else:
            h[key] = val


def _acc_product(target, a, b, field):
    """target += a * b for polynomial dicts, in place."""
    zero = field.zero
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            val = field.add(target.get(key, zero), field.mul(c1, c2))
            if val == zero:
                target.pop(key, None)
            else:
                target[key] = val


def _shift(polydict, mono, field, negate=False):
    if negate:
        return {tuple(x + y for x, y in zip(e, mono)): field.neg(c) for e, c in polydict.items()}
    return {tuple(x + y for x, y in zip(e, mono)): c for e, c in polydict.items()}


# -- Mora weak normal form ---------------------------------------------------


class _Reducer:
    __slots__ = ("terms", "lead", "ecart", "rep", "index")

    def __init__(self, terms, lead, ecart, rep, index):
        self.terms = terms
        self.lead = lead
        self.ecart = ecart
        self.rep = rep
        self.index = index


def _mora(fterms, basis_terms, morder, ring, track=False, basis_leads=None,
          full=False, step_limit=None):
    """Reduce f against monic basis elements with the ecart strategy.

    Returns (remainder_terms, rep); rep is None unless track, in which case
    it maps -1 -> poly-dict c and i -> poly-dict a_i with the exact identity

        remainder = c*f + sum_i a_i * basis_i,

    where c has constant term 1 (a unit of the localization).

    With full=True (sound for well-orders only) irreducible leads are moved
    aside and reduction continues into the tail, so the remainder is fully
    reduced.
    """
    field = ring.field
    keyfn = morder.key
    nzero = (0,) * ring.nvars

    T = []
    for i, g in enumerate(basis_terms):
        lg = basis_leads[i] if basis_leads is not None else _lead(g, keyfn)
        rep = {i: {nzero: field.one}} if track else None
        T.append(_Reducer(g, lg, _degmax(g) - _deg(lg), rep, i))

    h = dict(fterms)
    rep_h = {-1: {nzero: field.one}} if track else None

    # Reduction strictly lowers the lead, so the lead and the maximal degree
    # of h can be tracked with lazy heaps instead of rescanning every term.
    nkmemo = {}

    def nk(term):
        r = nkmemo.get(term)
        if r is None:
            r = nkmemo[term] = _negkey(keyfn(term))
        return r

    lead_heap = [(nk(t), t) for t in h]
    deg_heap = [(-_deg(t), t) for t in h]
    heapq.heapify(lead_heap)
    heapq.heapify(deg_heap)

    # kept sorted by (ecart, index) so the first divider is the chosen reducer
    T_sorted = sorted((t.ecart, t.index, t.lead[0], t.lead[1], t) for t in T)

    parked = {}
    work = 0
    while h:
        if step_limit is not None and work > step_limit:
            raise _ReductionBudgetExceeded
        while lead_heap[0][1] not in h:
            heapq.heappop(lead_heap)
        lh = lead_heap[0][1]
        lcomp, lexps = lh
        g = None
        for _, _, comp, gexps, t in T_sorted:
            if comp == lcomp:
                for a, b in zip(gexps, lexps):
                    if a > b:
                        break
                else:
                    g = t
                    break
        if g is None:
            if not full:
                break
            parked[lh] = h.pop(lh)
            continue
        while deg_heap[0][1] not in h:
            heapq.heappop(deg_heap)
        ecart_h = -deg_heap[0][0] - _deg(lh)
        if g.ecart > ecart_h:
            # snapshot h as a new reducer, normalized to be monic
            inv = field.inv(h[lh])
            snap_terms = {m: field.mul(inv, c) for m, c in h.items()}
            snap = None
            if track:
                snap = {
                    k: {m: field.mul(inv, c) for m, c in v.items()}
                    for k, v in rep_h.items()
                }
            snap_red = _Reducer(snap_terms, lh, ecart_h, snap, len(T))
            T.append(snap_red)
            bisect.insort(T_sorted, (ecart_h, snap_red.index, lcomp, lexps, snap_red))
        c = h[lh]  # reducers are monic
        mono = tuple(a - b for a, b in zip(lh[1], g.lead[1]))
        work += len(g.terms)
        for t in _sub_scaled_term(h, c, mono, g.terms, field):
            heapq.heappush(lead_heap, (nk(t), t))
            heapq.heappush(deg_heap, (-_deg(t), t))
        if track:
            for k, gk in g.rep.items():
                work += len(gk)
                tgt = rep_h.setdefault(k, {})
                _sub_scaled_polydict(tgt, c, mono, gk, field)
                if not tgt:
                    del rep_h[k]
    if parked:
        parked.update(h)
        return parked, rep_h
    return h, rep_h


# -- public types ------------------------------------------------------------


@dataclass
class DivisionCertificate:
    """Exact identity  unit * f = sum_i cofactors[i] * basis[i] + remainder."""

    unit: Polynomial
    cofactors: list
    remainder: object  # Polynomial or Vector
    f: object
    basis: list

    def verify(self):
        lhs = _as_vec(self.f).mul_poly(self.unit)
        rhs = _as_vec(self.remainder)
        for a, g in zip(self.cofactors, self.basis):
            rhs = rhs + _as_vec(g).mul_poly(a)
        if lhs != rhs:
            raise DivisionError("division certificate identity failed")
        return True


@dataclass
class StandardBasis:
    ring: object
    order: object  # base DegreeOrder
    rank: int
    elements: list  # Vectors (rank > 1) or Polynomials (rank 1)
    orders_v: list
    minimal: bool = False


# -- input normalization -----------------------------------------------------


def _as_vec(x):
    if isinstance(x, Vector):
        return x
    return Vector([x], x.ring)


def _maybe_poly(vec, rank):
    return vec.polys[0] if rank == 1 else vec


def _normalize_inputs(items):
    vecs = [_as_vec(x) for x in items]
    if not vecs:
        raise DivisionError("empty input")
    ring = vecs[0].ring
    rank = vecs[0].rank
    for v in vecs:
        if v.ring != ring or v.rank != rank:
            raise DivisionError("mixed rings or ranks")
    return vecs, ring, rank


def _monic(terms, morder, field):
    lc = terms[_lead(terms, morder.key)]
    if lc == field.one:
        return terms, field.one
    inv = field.inv(lc)
    return {k: field.mul(inv, c) for k, c in terms.items()}, lc


def _vec_key(v):
    return tuple(tuple(sorted(p.terms.items())) for p in _as_vec(v).polys)


# -- weak normal form --------------------------------------------------------


def weak_normal_form(f, basis, order=LOCAL, verify=True):
    """Mora weak normal form of f against basis, with exact certificate."""
    basis = list(basis)
    vecs, ring, rank = _normalize_inputs(basis + [f])
    fvec = vecs[-1]
    gvecs = vecs[:-1]
    morder = module_order(order)
    field = ring.field

    monic = []
    scales = []  # (original index, lead coefficient)
    for i, g in enumerate(gvecs):
        if g.is_zero():
            continue
        mt, lc = _monic(_vec_to_terms(g), morder, field)
        monic.append(mt)
        scales.append((i, lc))

    rem_terms, rep = _mora(_vec_to_terms(fvec), monic, morder, ring, track=True)

    unit = Polynomial(ring, dict(rep.get(-1, {})))
    # remainder = unit*f + sum_pos a_pos * monic_pos, monic_pos = (1/lc_i) g_i
    cof = [ring.zero() for _ in gvecs]
    for pos, (i, lc) in enumerate(scales):
        a = rep.get(pos)
        if a:
            cof[i] = Polynomial(ring, dict(a)).scale(field.neg(field.inv(lc)))
    remainder = _terms_to_vec(rem_terms, ring, rank)
    cert = DivisionCertificate(
        unit=unit,
        cofactors=cof,
        remainder=_maybe_poly(remainder, rank),
        f=_maybe_poly(fvec, rank),
        basis=[_maybe_poly(g, rank) for g in gvecs],
    )
    if verify:
        cert.verify()
    return cert


# -- completion --------------------------------------------------------------


class _Completion:
    """Standard-basis completion with representation and syzygy tracking."""

    use_criteria = True  # product/chain pair criteria (off only for debugging)

    def __init__(self, vecs, ring, rank, order, track=False, morder=None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.morder = morder or module_order(order)
        self.field = ring.field
        self.track = track
        # full tail reduction is sound (and pays off) exactly for well-orders;
        # local reductions get a step budget instead (blowup -> homogenize)
        self.full = not self.morder.base.local
        self.step_limit = _MORA_STEP_LIMIT if self.morder.base.local else None
        nzero = (0,) * ring.nvars

        self.basis = []  # monic term dicts
        self.leads = []
        self.reps = []  # reps[k]: dict j -> poly-dict; basis[k] = sum_j reps[k][j]*vecs[j]
        self.syzygies = []  # dicts basis-index -> poly-dict
        self.zero_inputs = []

        for j, v in enumerate(vecs):
            if v.is_zero():
                self.zero_inputs.append(j)
                continue
            mt, lc = _monic(_vec_to_terms(v), self.morder, self.field)
            self.basis.append(mt)
            self.leads.append(_lead(mt, self.morder.key))
            if track:
                self.reps.append({j: {nzero: self.field.inv(lc)}})

        self.pairs = []
        self.pending = set()
        for b in range(len(self.basis)):
            for a in range(b):
                self._push_pair(a, b)

    def _push_pair(self, a, b):
        la, lb = self.leads[a], self.leads[b]
        if la[0] != lb[0]:
            return
        lcm = tuple(max(x, y) for x, y in zip(la[1], lb[1]))
        heapq.heappush(self.pairs, (sum(lcm), b, a, lcm))
        self.pending.add((a, b))

    def _chain_skip(self, a, b, lcm):
        """Buchberger chain criterion: some lead_k divides the lcm and both
        pairs (a,k), (b,k) were finalized earlier, so this pair is covered."""
        comp = self.leads[a][0]
        pending = self.pending
        for k, lk in enumerate(self.leads):
            if k == a or k == b or lk[0] != comp:
                continue
            for x, y in zip(lk[1], lcm):
                if x > y:
                    break
            else:
                p1 = (a, k) if a < k else (k, a)
                p2 = (b, k) if b < k else (k, b)
                if p1 not in pending and p2 not in pending:
                    return True
        return False

    def run(self):
        field = self.field
        nzero = (0,) * self.ring.nvars
        while self.pairs:
            _, b, a, lcm = heapq.heappop(self.pairs)
            self.pending.discard((a, b))
            la, lb = self.leads[a], self.leads[b]
            if self.use_criteria and self.rank == 1 and all(
                min(x, y) == 0 for x, y in zip(la[1], lb[1])
            ):
                # product criterion; its syzygy is the Koszul relation
                if self.track:
                    self.syzygies.append({
                        a: {e: c for (_, e), c in self.basis[b].items()},
                        b: {e: field.neg(c) for (_, e), c in self.basis[a].items()},
                    })
                continue
            if self.use_criteria and self._chain_skip(a, b, lcm):
                continue
            ma = tuple(x - y for x, y in zip(lcm, la[1]))
            mb = tuple(x - y for x, y in zip(lcm, lb[1]))
            sp = {}
            _sub_scaled_term(sp, field.neg(field.one), ma, self.basis[a], field)
            _sub_scaled_term(sp, field.one, mb, self.basis[b], field)
            if not sp:
                if self.track:
                    self.syzygies.append({a: {ma: field.one}, b: {mb: field.neg(field.one)}})
                continue
            rem, rep = _mora(
                sp, self.basis, self.morder, self.ring,
                track=self.track, basis_leads=self.leads, full=self.full,
                step_limit=self.step_limit,
            )

            syz = None
            if self.track:
                # rem = c*sp + sum_k a_k*B_k with sp = x^ma*B_a - x^mb*B_b, so
                # 0 = c*x^ma*B_a - c*x^mb*B_b + sum a_k*B_k - rem
                c = rep.get(-1, {})
                syz = {}
                for k, ak in rep.items():
                    if k != -1:
                        syz[k] = dict(ak)
                for e, v in _shift(c, ma, field).items():
                    tgt = syz.setdefault(a, {})
                    val = field.add(tgt.get(e, field.zero), v)
                    if val == field.zero:
                        tgt.pop(e, None)
                    else:
                        tgt[e] = val
                for e, v in _shift(c, mb, field, negate=True).items():
                    tgt = syz.setdefault(b, {})
                    val = field.add(tgt.get(e, field.zero), v)
                    if val == field.zero:
                        tgt.pop(e, None)
                    else:
                        tgt[e] = val
                syz = {k: v for k, v in syz.items() if v}

            if rem:
                mt, lc = _monic(rem, self.morder, self.field)
                new_idx = len(self.basis)
                if self.track:
                    syz[new_idx] = {nzero: field.neg(lc)}
                    self.reps.append(self._expand_rep(rep, ma, mb, a, b, field.inv(lc)))
                self.basis.append(mt)
                self.leads.append(_lead(mt, self.morder.key))
                for k in range(new_idx):
                    self._push_pair(k, new_idx)
            if self.track:
                self.syzygies.append(syz)

    def _expand_rep(self, rep, ma, mb, a, b, inv):
        """Representation of rem/lc over the original inputs."""
        field = self.field
        out = {}

        def add_product(coeff_dict, basis_index):
            for j, pj in self.reps[basis_index].items():
                tgt = out.setdefault(j, {})
                _acc_product(tgt, coeff_dict, pj, field)
                if not tgt:
                    del out[j]

        c = rep.get(-1, {})
        add_product(_shift(c, ma, field), a)
        add_product(_shift(c, mb, field, negate=True), b)
        for k, ak in rep.items():
            if k != -1:
                add_product(ak, k)
        result = {}
        for j, pj in out.items():
            scaled = {e: field.mul(inv, v) for e, v in pj.items()}
            scaled = {e: v for e, v in scaled.items() if v != field.zero}
            if scaled:
                result[j] = scaled
        return result

    def lead_minimal_indices(self):
        """Indices of a lead-minimal subset (still a standard basis)."""
        keyfn = self.morder.key
        order_idx = sorted(range(len(self.basis)), key=lambda i: keyfn(self.leads[i]), reverse=True)
        kept = []
        for i in order_idx:
            if not any(_divides(self.leads[j], self.leads[i]) for j in kept):
                kept.append(i)
        return kept


# -- homogenized completion for the local order ------------------------------


@dataclass(frozen=True)
class _HomogenizedOrder:
    """Degree-first global order on a ring with one extra (last) variable.

    Total degree decides first, then the base order on the remaining
    exponents; this is a well-order, so completion under it runs on plain
    Buchberger division with no ecart snapshots and always terminates.
    """

    base: object
    local = False

    def key(self, exps):
        return (sum(exps), self.base.key(exps[:-1]))


def _extended_ring(ring):
    name = "t"
    while name in ring.variables:
        name += "_"
    return RingSpec(ring.field, ring.variables + (name,))


def _homogenize_vec(v, ring_h, rank):
    terms = _vec_to_terms(v)
    deg = max(sum(e) for _, e in terms)
    polys = [{} for _ in range(rank)]
    for (comp, e), c in terms.items():
        polys[comp][e + (deg - sum(e),)] = c
    return Vector([Polynomial(ring_h, p) for p in polys], ring_h)


def _dehom_terms(terms, field):
    out = {}
    for (comp, e), c in terms.items():
        key = (comp, e[:-1])
        val = field.add(out.get(key, field.zero), c)
        if val == field.zero:
            out.pop(key, None)
        else:
            out[key] = val
    return out


def _dehom_poly(polydict, field):
    out = {}
    for e, c in polydict.items():
        key = e[:-1]
        val = field.add(out.get(key, field.zero), c)
        if val == field.zero:
            out.pop(key, None)
        else:
            out[key] = val
    return out


class _LocalCompletion:
    """Standard-basis completion for the local order via homogenization.

    Each input is made homogeneous with an extra last variable (raised to
    its maximal term degree), the global completion runs under the
    degree-first order, and the extra variable is then set to 1.  The
    dehomogenized basis is a standard basis for the local order, and since
    evaluation at 1 is a ring homomorphism, the tracked representations and
    syzygies dehomogenize to exact local certificates.  This sidesteps the
    (extremely slow in bad cases) ecart-strategy reduction during
    completion; Mora reduction is still used for normal forms afterwards.
    """

    def __init__(self, vecs, ring, rank, order, track=False):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.morder = module_order(order)
        self.field = ring.field
        ring_h = _extended_ring(ring)
        zero_h = Vector([ring_h.zero()] * rank, ring_h)
        hvecs = [
            zero_h if v.is_zero() else _homogenize_vec(v, ring_h, rank)
            for v in vecs
        ]
        comp = _Completion(
            hvecs, ring_h, rank, order, track=track,
            morder=module_order(_HomogenizedOrder(order)),
        )
        comp.run()
        field = self.field
        self.zero_inputs = comp.zero_inputs
        self.basis = []
        self.leads = []
        for t in comp.basis:
            dt = _dehom_terms(t, field)
            self.basis.append(dt)
            self.leads.append(_lead(dt, self.morder.key))
        self.reps = [
            {j: p for j, p in ((j, _dehom_poly(pj, field)) for j, pj in rep.items()) if p}
            for rep in comp.reps
        ]
        self.syzygies = [
            {k: p for k, p in ((k, _dehom_poly(zk, field)) for k, zk in syz.items()) if p}
            for syz in comp.syzygies
        ]

    lead_minimal_indices = _Completion.lead_minimal_indices


def _completion(vecs, ring, rank, order, track=False):
    comp = _Completion(vecs, ring, rank, order, track=track)
    try:
        comp.run()
        return comp
    except _ReductionBudgetExceeded:
        # ecart-strategy blowup; only local completions carry a budget
        return _LocalCompletion(vecs, ring, rank, order, track=track)


def _complete(items, order, track=False):
    vecs, ring, rank = _normalize_inputs(list(items))
    comp = _completion(vecs, ring, rank, order, track=track)
    return comp, vecs, ring, rank


def standard_basis(generators, order=LOCAL):
    """Complete generators to a standard basis (local) / Groebner basis (global)."""
    comp, vecs, ring, rank = _complete(generators, order, track=False)
    kept = comp.lead_minimal_indices()
    kept_terms = [comp.basis[i] for i in kept]
    if not order.local:
        kept_terms = _interreduce_tails(kept_terms, comp.morder, ring.field)
    vecs_out = [_terms_to_vec(t, ring, rank) for t in kept_terms]
    return StandardBasis(
        ring=ring,
        order=order,
        rank=rank,
        elements=[_maybe_poly(v, rank) for v in vecs_out],
        orders_v=[v.order for v in vecs_out],
        minimal=False,
    )


def _interreduce_tails(terms_list, morder, field):
    # full tail reduction; terminates for global orders only
    keyfn = morder.key
    out = []
    for i, t in enumerate(terms_list):
        others = [g for j, g in enumerate(terms_list) if j != i]
        leads = [_lead(g, keyfn) for g in others]
        h = dict(t)
        result = {}
        while h:
            lh = _lead(h, keyfn)
            red = next(((g, lg) for g, lg in zip(others, leads) if _divides(lg, lh)), None)
            if red is None:
                result[lh] = h.pop(lh)
            else:
                g, lg = red
                mono = tuple(x - y for x, y in zip(lh[1], lg[1]))
                _sub_scaled_term(h, h[lh], mono, g, field)
        out.append(result)
    return out


def initial_module(basis):
    """Initial forms of a standard basis; they generate the initial module."""
    elements = basis.elements if isinstance(basis, StandardBasis) else basis
    return [g.initial_form() for g in elements if not g.is_zero()]


def minimalize(basis):
    """Minimal standard basis: drop elements whose initial form lies in the
    graded module generated by the remaining initial forms."""
    elements = [g for g in basis.elements if not g.is_zero()]
    changed = True
    while changed and len(elements) > 1:
        changed = False
        idx = sorted(range(len(elements)), key=lambda i: (-elements[i].order, -i))
        for i in idx:
            others = [g.initial_form() for j, g in enumerate(elements) if j != i]
            if membership(elements[i].initial_form(), others, order=GLOBAL):
                elements.pop(i)
                changed = True
                break
    return StandardBasis(
        ring=basis.ring,
        order=basis.order,
        rank=basis.rank,
        elements=elements,
        orders_v=[g.order for g in elements],
        minimal=True,
    )


def membership(f, generators, order=LOCAL, basis=None):
    """Is f in the submodule generated over the localization?"""
    if _as_vec(f).is_zero():
        return True
    if basis is None:
        gens = [g for g in generators if not _as_vec(g).is_zero()]
        if not gens:
            return False
        basis = standard_basis(gens, order)
    vecs, ring, rank = _normalize_inputs(list(basis.elements) + [f])
    morder = module_order(order)
    field = ring.field
    monic = [_monic(_vec_to_terms(g), morder, field)[0] for g in vecs[:-1]]
    try:
        rem, _ = _mora(
            _vec_to_terms(vecs[-1]), monic, morder, ring,
            step_limit=_MORA_STEP_LIMIT if order.local else None,
        )
        return not rem
    except _ReductionBudgetExceeded:
        # normal-form blowup: f is a member iff adjoining it leaves the
        # initial module unchanged (Y = Y + Rf iff L(Y) = L(Y + Rf))
        keyfn = morder.key
        old_leads = [_lead(g, keyfn) for g in monic]
        comp = _completion(vecs, ring, rank, order, track=False)
        return all(
            any(_divides(lo, ln) for lo in old_leads) for ln in comp.leads
        )


def lift(f, generators, order=LOCAL):
    """Cofactors with unit: unit*f = sum cofactors[i]*generators[i].

    Raises NotAMember when f is outside the generated submodule.  The
    division runs against a lead-minimal standard basis (elements of order
    at most the Artin-Rees number), so when v(f) >= t every cofactor has
    order >= t - AR.
    """
    generators = list(generators)
    fvec = _as_vec(f)
    ring = fvec.ring
    if fvec.is_zero():
        return ring.one(), [ring.zero() for _ in generators]
    vecs, ring, rank = _normalize_inputs(generators + [f])
    comp = _completion(vecs[:-1], ring, rank, order, track=True)
    kept = comp.lead_minimal_indices()
    sub_basis = [comp.basis[i] for i in kept]
    try:
        rem, rep = _mora(
            _vec_to_terms(fvec), sub_basis, comp.morder, ring, track=True,
            step_limit=_MORA_STEP_LIMIT if order.local else None,
        )
    except _ReductionBudgetExceeded:
        return _lift_via_syzygies(fvec, vecs[:-1], ring, rank, order)
    if rem:
        raise NotAMember("element is not in the generated submodule")
    field = ring.field
    unit = Polynomial(ring, dict(rep.get(-1, {})))
    # 0 = unit*f + sum_pos a_pos*B_kept[pos], B_k = sum_j T_kj * gen_j
    cof = {}
    for pos, apos in rep.items():
        if pos == -1:
            continue
        k = kept[pos]
        for j, tkj in comp.reps[k].items():
            tgt = cof.setdefault(j, {})
            _acc_product(tgt, apos, tkj, field)
    cofactors = [
        Polynomial(ring, dict(cof.get(j, {}))).scale(field.neg(field.one))
        for j in range(len(generators))
    ]
    lhs = fvec.mul_poly(unit)
    rhs = Vector([ring.zero()] * rank, ring)
    for a, g in zip(cofactors, generators):
        rhs = rhs + _as_vec(g).mul_poly(a)
    if lhs != rhs:
        raise DivisionError("lift identity failed")
    if unit.constant_term() == field.zero:
        raise DivisionError("lift produced a non-unit")
    return unit, cofactors


def reduce_to_order(f, basis, order=LOCAL, target=0):
    """Reduce f by basis only while the lead has degree below target.

    Stops at the first lead of degree >= target (or an irreducible one), so
    the remainder agrees with f modulo the basis and has all reducible terms
    pushed past the target degree.  Unlike the full Mora normal form this
    always terminates quickly: only finitely many module terms lie below the
    degree bound and the lead strictly decreases in the order.
    """
    vecs, ring, rank = _normalize_inputs(list(basis) + [f])
    morder = module_order(order)
    field = ring.field
    keyfn = morder.key
    monic = []
    for g in vecs[:-1]:
        if g.is_zero():
            continue
        mt, _ = _monic(_vec_to_terms(g), morder, field)
        monic.append((mt, _lead(mt, keyfn)))
    h = dict(_vec_to_terms(vecs[-1]))
    heap = [(_negkey(keyfn(t)), t) for t in h]
    heapq.heapify(heap)
    parked = {}
    while h:
        while heap and heap[0][1] not in h:
            heapq.heappop(heap)
        if not heap:
            break
        lh = heap[0][1]
        if _deg(lh) >= target:
            break
        hit = next(((gt, lg) for gt, lg in monic if _divides(lg, lh)), None)
        if hit is None:
            parked[lh] = h.pop(lh)
            continue
        g, lg = hit
        c = h[lh]
        mono = tuple(a - b for a, b in zip(lh[1], lg[1]))
        for t in _sub_scaled_term(h, c, mono, g, field):
            heapq.heappush(heap, (_negkey(keyfn(t)), t))
    parked.update(h)
    return _maybe_poly(_terms_to_vec(parked, ring, rank), rank)


def _lift_via_syzygies(fvec, gvecs, ring, rank, order):
    """Lift through a syzygy of (f, gens) with unit first coordinate; used
    when the normal form against the standard basis blows up."""
    field = ring.field
    for z in syzygies([fvec] + list(gvecs), order):
        c0 = z.polys[0].constant_term()
        if c0 == field.zero:
            continue
        inv = field.inv(c0)
        unit = z.polys[0].scale(inv)
        cofactors = [q.scale(field.neg(inv)) for q in z.polys[1:]]
        lhs = fvec.mul_poly(unit)
        rhs = Vector([ring.zero()] * rank, ring)
        for a, g in zip(cofactors, gvecs):
            rhs = rhs + g.mul_poly(a)
        if lhs == rhs:
            return unit, cofactors
    raise NotAMember("element is not in the generated submodule")


def syzygies(vectors, order=LOCAL):
    """Generators of the syzygy module {a in R^m : sum a_i*vectors_i = 0}."""
    vecs, ring, rank = _normalize_inputs(vectors)
    m = len(vecs)
    field = ring.field
    if all(v.is_zero() for v in vecs):
        return [unit_vector(ring, m, i) for i in range(m)]
    comp = _completion(vecs, ring, rank, order, track=True)

    out = [unit_vector(ring, m, j) for j in comp.zero_inputs]
    for syz in comp.syzygies:
        w = {}
        for k, zk in syz.items():
            for j, tkj in comp.reps[k].items():
                tgt = w.setdefault(j, {})
                _acc_product(tgt, zk, tkj, field)
        polys = [Polynomial(ring, dict(w.get(j, {}))) for j in range(m)]
        vec = Vector(polys, ring)
        if not vec.is_zero():
            out.append(vec)

    seen = set()
    unique = []
    for v in out:
        key = _vec_key(v)
        if key not in seen:
            seen.add(key)
            unique.append(v)
    for z in unique:
        acc = Vector([ring.zero()] * rank, ring)
        for a, v in zip(z.polys, vecs):
            acc = acc + v.mul_poly(a)
        if not acc.is_zero():
            raise DivisionError("syzygy certificate failed")
    return unique


def minimal_generators(items, order=LOCAL):
    """Minimal generating set over the local ring: drop any element lying in
    the submodule generated by the others, until stable."""
    gens = []
    seen = set()
    for g in items:
        if _as_vec(g).is_zero():
            continue
        key = _vec_key(g)
        if key not in seen:
            seen.add(key)
            gens.append(g)
    # cheap greedy pass: one growing basis screens out most redundant inputs
    if len(gens) > 1:
        gens.sort(key=lambda g: _as_vec(g).order)
        kept = []
        basis = None
        for g in gens:
            if basis is not None and membership(g, None, order, basis=basis):
                continue
            kept.append(g)
            basis = standard_basis(kept, order)
        gens = kept
    changed = True
    while changed and len(gens) > 1:
        changed = False
        idx = sorted(range(len(gens)), key=lambda i: (-_as_vec(gens[i]).order, -i))
        for i in idx:
            others = [g for j, g in enumerate(gens) if j != i]
            if membership(gens[i], others, order):
                gens.pop(i)
                changed = True
                break
    return gens


def colon(ideal_gens, f, order=LOCAL):
    """Generators of (A : f) in the localization, via syzygies of (f, A)."""
    ideal_gens = list(ideal_gens)
    vecs, ring, rank = _normalize_inputs(ideal_gens + [f])
    fvec = vecs[-1]
    if fvec.is_zero():
        return [ring.one()]
    result = []
    for z in syzygies([fvec] + vecs[:-1], order):
        q = z.polys[0]
        if not q.is_zero():
            result.append(q)
    return minimal_generators(result, order) if result else []


def intersect(a_gens, b_gens, order=LOCAL):
    """Generators of A intersect B inside a common free module."""
    a_gens = list(a_gens)
    b_gens = list(b_gens)
    vecs, ring, rank = _normalize_inputs(a_gens + b_gens)
    na = len(a_gens)
    out = []
    for z in syzygies(vecs, order):
        w = Vector([ring.zero()] * rank, ring)
        for coeff, v in zip(z.polys[:na], vecs[:na]):
            w = w + v.mul_poly(coeff)
        if not w.is_zero():
            out.append(_maybe_poly(w, rank))
    return minimal_generators(out, order) if out else []


def maximal_ideal_power(ring, n, rank=1):
    """Generators of m^n R^rank: all degree-n monomials in every slot."""
    out = []
    for combo in itertools.combinations_with_replacement(range(ring.nvars), n):
        e = [0] * ring.nvars
        for i in combo:
            e[i] += 1
        mono = ring.monomial(e)
        for c in range(rank):
            out.append(_maybe_poly(unit_vector(ring, rank, c, mono), rank))
    return out
