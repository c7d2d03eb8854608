"""Hilbert invariants, Artin-Rees numbers, depth and regularity tests.

Hilbert data of R/I is read off the lead-term monomial module of a standard
basis under a degree-compatible local order, so the graded counts agree with
the counts of the m-adic filtration.  The numerator of the Hilbert series of
a monomial quotient is computed by the classical pivot recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rings import GLOBAL, LOCAL, RingError, Vector, module_order
from . import division as dv


class InvariantError(RingError):
    pass


# -- Hilbert series of monomial quotients ------------------------------------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_add(a, b, shift=0):
    out = list(a) + [0] * max(0, shift + len(b) - len(a))
    for j, y in enumerate(b):
        out[shift + j] += y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize_monomials(gens):
    out = []
    for m in sorted(set(gens), key=lambda m: (sum(m), m)):
        if not any(all(x >= y for x, y in zip(m, g)) for g in out):
            out.append(m)
    return out


@lru_cache(maxsize=None)
def _numerator_cached(gens):
    """Numerator f(t) of HS_{k[x]/(gens)} = f(t)/(1-t)^n as a coeff tuple."""
    gens = _minimalize_monomials(gens)
    if not gens:
        return (1,)
    if any(sum(m) == 0 for m in gens):
        return (0,)
    mixed = [m for m in gens if sum(1 for e in m if e) > 1]
    if not mixed:
        # pure powers of pairwise distinct variables: complete intersection
        result = [1]
        for m in gens:
            d = sum(m)
            result = _poly_mul(result, [1] + [0] * (d - 1) + [-1])
        return tuple(result)
    n = len(gens[0])
    counts = [0] * n
    for m in mixed:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    piv = max(range(n), key=lambda i: counts[i])
    # 0 -> (S/(I:x))(-1) -> S/I -> S/(I+(x)) -> 0 with x the pivot variable
    xgen = tuple(1 if i == piv else 0 for i in range(n))
    without = tuple(sorted(set(m for m in gens if m[piv] == 0) | {xgen}))
    quotient = tuple(
        sorted(
            set(
                tuple(e - 1 if i == piv and e else e for i, e in enumerate(m))
                for m in gens
            )
        )
    )
    return tuple(
        _poly_add(_numerator_cached(without), _numerator_cached(quotient), shift=1)
    )


def monomial_quotient_numerator(monomials, nvars):
    """HS numerator of k[x1..xn]/(monomials) with denominator (1-t)^n."""
    if not monomials:
        return [1]
    return list(_numerator_cached(tuple(sorted(set(tuple(m) for m in monomials)))))


def series_coefficients(numerator, poles, upto):
    """First upto+1 coefficients of numerator/(1-t)^poles."""
    coeffs = list(numerator) + [0] * max(0, upto + 1 - len(numerator))
    coeffs = coeffs[: upto + 1]
    for _ in range(poles):
        acc = 0
        for i in range(len(coeffs)):
            acc += coeffs[i]
            coeffs[i] = acc
    return coeffs


# -- lead terms --------------------------------------------------------------


def lead_term(element, order=LOCAL):
    """Lead (component, exponents) of a polynomial or vector."""
    vec = element if isinstance(element, Vector) else Vector([element])
    morder = module_order(order)
    terms = [(c, e) for c, p in enumerate(vec.polys) for e in p.terms]
    if not terms:
        raise InvariantError("zero element has no lead term")
    return max(terms, key=morder.key)


def lead_module(elements, order=LOCAL, rank=None):
    """Per-component lists of lead monomials of the given elements."""
    if rank is None:
        first = elements[0]
        rank = first.rank if isinstance(first, Vector) else 1
    comps = [[] for _ in range(rank)]
    for g in elements:
        c, e = lead_term(g, order)
        comps[c].append(e)
    return comps


# -- Hilbert data of R/I -----------------------------------------------------


def _strip_unit_factors(numerator):
    """Divide out every (1-t) factor; returns (h, count) with h(1) != 0."""
    h = list(numerator)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    count = 0
    while any(h) and sum(h) == 0:
        q = []
        acc = 0
        for c in h[:-1]:
            acc += c
            q.append(acc)
        h = q or [0]
        while len(h) > 1 and h[-1] == 0:
            h.pop()
        count += 1
    return h, count


def _hilbert_polynomial(h, d):
    """HP(X) = sum_i h_i binom(X - i + d - 1, d - 1) as Fraction coeffs."""
    coeffs = [Fraction(0)] * d
    fact = math.factorial(d - 1)
    for i, hi in enumerate(h):
        if hi == 0:
            continue
        poly = [Fraction(1)]  # product over k of (X - i + k), k = 1..d-1
        for k in range(1, d):
            shift = Fraction(-i + k)
            new = [Fraction(0)] * (len(poly) + 1)
            for j, c in enumerate(poly):
                new[j + 1] += c
                new[j] += c * shift
            poly = new
        for j, c in enumerate(poly):
            coeffs[j] += Fraction(hi, fact) * c
    return coeffs


def _eval_poly(coeffs, n):
    return sum(c * Fraction(n) ** i for i, c in enumerate(coeffs))


@dataclass
class HilbertData:
    numerator: list  # f(t) with HS = f/(1-t)^nvars
    h_polynomial: list  # h(t) with HS = h/(1-t)^d and h(1) != 0
    dimension: int
    multiplicity: int
    hilbert_polynomial: list | None  # Fraction coefficients, None when d = 0
    regularity_index: int
    embedding_codim: int
    nvars: int

    def hf(self, n):
        return self.hf_range(n)[n]

    def hf_range(self, upto):
        return series_coefficients(self.numerator, self.nvars, upto)

    def hp(self, n):
        if self.hilbert_polynomial is None:
            return Fraction(0)
        return _eval_poly(self.hilbert_polynomial, n)

    def check(self):
        d, e, s = self.dimension, self.multiplicity, self.regularity_index
        if sum(self.h_polynomial) != e or e < 1:
            raise InvariantError("h(1) != multiplicity")
        l = len(self.h_polynomial) - 1
        if d > 0 and s > max(l - d + 1, 0):
            raise InvariantError("regularity index exceeds the proven bound")
        horizon = s + max(l, d, 1) + 2
        hf = self.hf_range(horizon)
        if self.embedding_codim != hf[1] - d:
            raise InvariantError("embedding codimension mismatch")
        if s > 0 and Fraction(hf[s - 1]) == self.hp(s - 1):
            raise InvariantError("regularity index is not minimal")
        for n in range(s, horizon + 1):
            if Fraction(hf[n]) != self.hp(n):
                raise InvariantError("HF != HP beyond the regularity index")
        return True


def hilbert_data(gens, ring=None, order=LOCAL):
    """Full Hilbert data of R/I; I may be the zero ideal when ring is given."""
    gens = [g for g in gens if not g.is_zero()]
    if gens:
        ring = gens[0].ring
        basis = dv.standard_basis(gens, order)
        leads = lead_module(basis.elements, order, rank=1)[0]
        if any(sum(m) == 0 for m in leads):
            raise InvariantError("unit ideal has no Hilbert data")
        num = monomial_quotient_numerator(leads, ring.nvars)
    elif ring is None:
        raise InvariantError("zero ideal needs an explicit ring")
    else:
        num = [1]
    nvars = ring.nvars
    h, stripped = _strip_unit_factors(num)
    d = nvars - stripped
    e = sum(h)
    l = len(h) - 1
    if d > 0:
        hp = _hilbert_polynomial(h, d)
        s = max(l - d + 1, 0)
        hf = series_coefficients(num, nvars, max(s, 1))
        while s > 0 and Fraction(hf[s - 1]) == _eval_poly(hp, s - 1):
            s -= 1
    else:
        hp = None
        s = len(num)
        hf = series_coefficients(num, nvars, s)
        while s > 0 and hf[s - 1] == 0:
            s -= 1
    hf1 = series_coefficients(num, nvars, 1)[1]
    data = HilbertData(
        numerator=list(num),
        h_polynomial=h,
        dimension=d,
        multiplicity=e,
        hilbert_polynomial=hp,
        regularity_index=s,
        embedding_codim=hf1 - d,
        nvars=nvars,
    )
    data.check()
    return data


def hilbert_function_range(gens, upto, ring=None, order=LOCAL):
    """[HF_{R/I}(0), ..., HF_{R/I}(upto)]."""
    return hilbert_data(gens, ring=ring, order=order).hf_range(upto)


def hilbert_function(gens, n, ring=None, order=LOCAL):
    return hilbert_function_range(gens, n, ring=ring, order=order)[n]


def dimension(gens, ring=None, order=LOCAL):
    return hilbert_data(gens, ring=ring, order=order).dimension


def free_module_hf(nvars, rank, n):
    """Dimension of the degree-n piece of gr(R)^rank."""
    return rank * math.comb(n + nvars - 1, nvars - 1)


def submodule_hilbert_function(elements, upto, order=GLOBAL, rank=None):
    """Degreewise dimensions of the graded submodule of a free module
    generated by the given homogeneous elements (via a Groebner basis)."""
    elements = [dv._as_vec(g) for g in elements]
    elements = [g for g in elements if not g.is_zero()]
    if not elements:
        return [0] * (upto + 1)
    basis = dv.standard_basis(elements, order)
    ring = basis.ring
    comps = lead_module(basis.elements, order, rank=basis.rank)
    total = [0] * (upto + 1)
    for mono_list in comps:
        quot = series_coefficients(
            monomial_quotient_numerator(mono_list, ring.nvars), ring.nvars, upto
        )
        for n in range(upto + 1):
            total[n] += math.comb(n + ring.nvars - 1, ring.nvars - 1) - quot[n]
    return total


# -- Artin-Rees numbers ------------------------------------------------------


@dataclass
class ARResult:
    value: int
    witness_basis: object  # minimal StandardBasis, None for the zero module
    witness_orders: list


def artin_rees(gens, order=LOCAL):
    """AR(m, N <= M) = max order over a minimal standard basis of N."""
    vecs = [dv._as_vec(g) for g in gens]
    vecs = [v for v in vecs if not v.is_zero()]
    if not vecs:
        return ARResult(0, None, [])
    basis = dv.minimalize(dv.standard_basis(vecs, order))
    orders = [int(v) for v in basis.orders_v]
    return ARResult(max(orders), basis, orders)


def artin_rees_bruteforce(gens, n_max, order=LOCAL):
    """Least s with m^n M cap N = m^(n-s) (m^s M cap N) for s <= n <= n_max.

    Brute-force oracle for small instances; checks the stated range only."""
    vecs = [dv._as_vec(g) for g in gens]
    vecs = [v for v in vecs if not v.is_zero()]
    if not vecs:
        return 0
    ring = vecs[0].ring
    rank = vecs[0].rank
    gens_list = [dv._maybe_poly(v, rank) for v in vecs]
    inter_cache = {}

    def inter(n):
        if n not in inter_cache:
            if n == 0:
                inter_cache[n] = gens_list
            else:
                inter_cache[n] = dv.intersect(
                    dv.maximal_ideal_power(ring, n, rank), gens_list, order
                )
        return inter_cache[n]

    for s in range(n_max + 1):
        base = inter(s)
        ok = True
        for n in range(s + 1, n_max + 1):
            lhs = inter(n)
            if not lhs:
                continue
            rhs = []
            for exps in _degree_monomials(ring.nvars, n - s):
                mono = ring.monomial(exps)
                for w in base:
                    rhs.append(dv._maybe_poly(dv._as_vec(w).mul_poly(mono), rank))
            if not rhs:
                ok = False
                break
            rhs_basis = dv.standard_basis(rhs, order)
            if not all(dv.membership(f, None, order, basis=rhs_basis) for f in lhs):
                ok = False
                break
        if ok:
            return s
    raise InvariantError("Artin-Rees search exceeded n_max")


def _degree_monomials(nvars, d):
    if nvars == 1:
        return [(d,)]
    out = []
    for e in range(d + 1):
        for rest in _degree_monomials(nvars - 1, d - e):
            out.append((e,) + rest)
    return out


# -- depth, Cohen-Macaulay, filter-regularity --------------------------------


def depth(gens, ring=None, order=LOCAL):
    """depth(R/I) = nvars - pd(R/I) over the regular local ambient ring."""
    from . import resolution as rs

    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise InvariantError("zero ideal needs an explicit ring")
        ring = gens[0].ring
    if not gens:
        return ring.nvars
    res = rs.minimal_free_resolution(gens, order=order)
    return ring.nvars - res.projective_dimension()


def depth_gr(gens, ring=None):
    """depth of the associated graded ring gr(R)/I*."""
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise InvariantError("zero ideal needs an explicit ring")
        ring = gens[0].ring
    if not gens:
        return ring.nvars
    from . import resolution as rs

    basis = dv.standard_basis(gens, LOCAL)
    init = dv.initial_module(basis)
    res = rs.minimal_free_resolution(init, order=GLOBAL)
    return ring.nvars - res.projective_dimension()


def is_cohen_macaulay(gens, ring=None, order=LOCAL):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return True
    return depth(gens, ring=ring, order=order) == dimension(
        gens, ring=ring, order=order
    )


def is_filter_regular_sequence(elements, order=LOCAL):
    """True when each f_i is filter-regular on R/(f_1..f_{i-1}), i.e. the
    module (prev : f_i)/prev has finite length."""
    elements = list(elements)
    prev = []
    for f in elements:
        if f.is_zero():
            return False
        quotient_gens = dv.colon(prev, f, order) if prev else []
        for q in quotient_gens:
            if q.is_zero():
                continue
            if dv.membership(q, prev, order):
                continue
            # q witnesses (prev : f) strictly larger than prev; its class must
            # be killed by a power of m, i.e. dim R/(prev : q) = 0
            ann = dv.colon(prev, q, order)
            if not ann or dimension(ann, order=order) > 0:
                return False
        prev = prev + [f]
    return True
