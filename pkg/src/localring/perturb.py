"""Perturbation laboratory: generate perturbations, compute stability bounds,
and verify the perturbation-theory statements on concrete instances.

Every randomized routine takes an explicit seed and is fully deterministic;
assertions are gated: a relation is only asserted after its preconditions
have been verified by the engine in the same run.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .rings import GLOBAL, LOCAL, RingError
from . import division as dv
from . import invariants as iv
from . import resolution as rs


class PerturbationError(RingError):
    pass


STRATEGIES = ("monomial", "random-homogeneous", "random-inhomogeneous", "explicit")


# -- specs and reports -------------------------------------------------------


@dataclass(frozen=True)
class PerturbationSpec:
    N: int
    strategy: str = "random-homogeneous"
    seed: int = 0
    trials: int = 1
    explicit: tuple = None

    def __post_init__(self):
        if self.N < 1:
            raise PerturbationError("perturbation order N must be at least 1")
        if self.strategy not in STRATEGIES:
            raise PerturbationError("unknown strategy {!r}".format(self.strategy))
        if self.strategy == "explicit" and self.explicit is None:
            raise PerturbationError("explicit strategy needs an explicit list")


@dataclass
class CheckResult:
    name: str
    relation: str  # the verified statement, in words
    expected: object
    observed: object
    passed: bool  # None when the check was skipped (precondition unmet)
    details: dict = dfield(default_factory=dict)

    def to_dict(self):
        return {
            "name": self.name,
            "relation": self.relation,
            "expected": _json_value(self.expected),
            "observed": _json_value(self.observed),
            "passed": self.passed,
            "details": {k: _json_value(v) for k, v in sorted(self.details.items())},
        }


@dataclass
class VerificationReport:
    instance: str
    checks: list = dfield(default_factory=list)
    seed: int = 0

    def add(self, check):
        self.checks.append(check)
        return check

    def ok(self):
        return all(c.passed is not False for c in self.checks)

    def to_dict(self):
        return {
            "instance": self.instance,
            "seed": self.seed,
            "ok": self.ok(),
            "checks": [c.to_dict() for c in self.checks],
        }


def _json_value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in sorted(v.items())}
    if isinstance(v, (int, bool, str)) or v is None:
        return v
    return str(v)


# -- perturbation generation -------------------------------------------------


def _random_coeff(field, rng):
    if field.characteristic:
        return rng.randrange(field.characteristic)
    return Fraction(rng.randint(-3, 3))


def random_homogeneous(ring, degree, rng, max_terms=4):
    """Random sparse nonzero homogeneous polynomial of the exact degree."""
    monos = iv._degree_monomials(ring.nvars, degree)
    while True:
        terms = {}
        for m in rng.sample(monos, min(rng.randint(1, max_terms), len(monos))):
            c = _random_coeff(ring.field, rng)
            if c != ring.field.zero:
                terms[m] = c
        if terms:
            from .rings import Polynomial

            return Polynomial(ring, terms)


def random_monomial(ring, degree, rng):
    monos = iv._degree_monomials(ring.nvars, degree)
    return ring.monomial(rng.choice(monos))


def make_perturbation(gens, spec):
    """J = (f_i + eps_i) for the given generators; returns (j_gens, eps)."""
    gens = list(gens)
    if not gens:
        raise PerturbationError("no generators to perturb")
    ring = gens[0].ring
    rng = random.Random(spec.seed)
    eps = []
    if spec.strategy == "explicit":
        if len(spec.explicit) != len(gens):
            raise PerturbationError("explicit list length mismatch")
        for e in spec.explicit:
            if not e.is_zero() and e.order < spec.N:
                raise PerturbationError("explicit perturbation below order N")
            eps.append(e)
    else:
        for _ in gens:
            if spec.strategy == "monomial":
                eps.append(random_monomial(ring, spec.N, rng))
            elif spec.strategy == "random-homogeneous":
                eps.append(random_homogeneous(ring, spec.N, rng))
            else:
                e = random_homogeneous(ring, spec.N, rng)
                for extra in range(1, 3):
                    if rng.random() < 0.5:
                        e = e + random_homogeneous(ring, spec.N + extra, rng)
                eps.append(e)
    return [f + e for f, e in zip(gens, eps)], eps


# -- bounds ------------------------------------------------------------------


@dataclass
class TheoremBounds:
    ar: int
    s_list: list
    N0: int
    thm_bound: int
    remark_bound: int
    p: int

    def to_dict(self):
        return {
            "ar": self.ar,
            "s_list": list(self.s_list),
            "N0": self.N0,
            "thm_bound": self.thm_bound,
            "remark_bound": self.remark_bound,
            "p": self.p,
        }


def theorem_bounds(gens, p=None, order=LOCAL, resolution=None):
    """Stability bounds computed from the syzygy filtration orders."""
    res = resolution or rs.minimal_free_resolution(gens, order=order)
    s_full = res.syzygy_ar_numbers()
    if p is None:
        p = res.projective_dimension()
    s_list = [s_full[i] if i < len(s_full) else 0 for i in range(p + 1)]
    N0 = 1 + max(s_list)
    thm_bound = N0 + sum(s_list[:p]) + 1
    hd = iv.hilbert_data(gens, order=order)
    remark_bound = max(
        s_list[0] + 1, hd.regularity_index + hd.dimension, hd.multiplicity
    )
    return TheoremBounds(
        ar=s_full[0],
        s_list=s_list,
        N0=N0,
        thm_bound=thm_bound,
        remark_bound=remark_bound,
        p=p,
    )


# -- elementary checks -------------------------------------------------------


def _initial_ideal(gens, order=LOCAL):
    basis = dv.standard_basis([g for g in gens if not g.is_zero()], order)
    return dv.initial_module(basis)


def _graded_contains(sup_init, sub_init):
    """sub_init subseteq (sup_init) as graded ideals (global membership)."""
    if not sub_init:
        return True
    if not sup_init:
        return False
    basis = dv.standard_basis(sup_init, GLOBAL)
    return all(dv.membership(g, None, GLOBAL, basis=basis) for g in sub_init)


def ideals_congruent(i_gens, j_gens, N):
    """I + m^N == J + m^N, by membership in both directions."""
    ring = i_gens[0].ring
    mpow = [v.polys[0] for v in [dv._as_vec(m) for m in dv.maximal_ideal_power(ring, N)]]
    bi = dv.standard_basis(list(i_gens) + mpow, LOCAL)
    bj = dv.standard_basis(list(j_gens) + mpow, LOCAL)
    return all(dv.membership(g, None, LOCAL, basis=bj) for g in i_gens) and all(
        dv.membership(g, None, LOCAL, basis=bi) for g in j_gens
    )


def check_star_inclusion(i_gens, j_gens, N):
    """When N > AR(m, I <= R): the initial ideal of I sits inside that of J."""
    ar = iv.artin_rees(i_gens).value
    if N <= ar:
        return CheckResult(
            name="star-inclusion",
            relation="initial ideal of I contained in initial ideal of J",
            expected="skipped",
            observed="skipped",
            passed=None,
            details={"reason": "N <= AR", "N": N, "ar": ar},
        )
    i_star = _initial_ideal(i_gens)
    j_star = _initial_ideal(j_gens)
    ok = _graded_contains(j_star, i_star)
    return CheckResult(
        name="star-inclusion",
        relation="initial ideal of I contained in initial ideal of J",
        expected=True,
        observed=ok,
        passed=ok,
        details={"N": N, "ar": ar},
    )


@dataclass
class HilbertComparison:
    equal: bool
    certified: bool  # equality of initial ideals verified both ways
    first_difference: tuple  # (n, HF_I(n), HF_J(n)) or None
    horizon: int

    def to_dict(self):
        return {
            "equal": self.equal,
            "certified": self.certified,
            "first_difference": _json_value(self.first_difference),
            "horizon": self.horizon,
        }


def compare_hilbert(i_gens, j_gens, D=None):
    """Compare Hilbert functions; equality is certified via equal initial
    ideals, not via the finite window alone."""
    hi = iv.hilbert_data(i_gens)
    hj = iv.hilbert_data(j_gens)
    if D is None:
        D = 2 * max(
            len(hi.numerator), len(hj.numerator), hi.regularity_index, hj.regularity_index, 2
        )
    fi = hi.hf_range(D)
    fj = hj.hf_range(D)
    first = None
    for n in range(D + 1):
        if fi[n] != fj[n]:
            first = (n, fi[n], fj[n])
            break
    if first is not None:
        return HilbertComparison(False, False, first, D)
    i_star = _initial_ideal(i_gens)
    j_star = _initial_ideal(j_gens)
    certified = _graded_contains(j_star, i_star) and _graded_contains(i_star, j_star)
    return HilbertComparison(certified, certified, None, D)


def check_mu(i_gens, j_gens, N):
    """mu(I) <= mu(J) when N > AR; equality when the HF agree as well."""
    ar = iv.artin_rees(i_gens).value
    mu_i = len(dv.minimal_generators(i_gens))
    mu_j = len(dv.minimal_generators(j_gens))
    if N <= ar:
        return CheckResult(
            name="mu",
            relation="minimal generator counts comparable",
            expected="skipped",
            observed=(mu_i, mu_j),
            passed=None,
            details={"reason": "N <= AR", "N": N, "ar": ar},
        )
    cmp = compare_hilbert(i_gens, j_gens)
    if cmp.equal:
        ok = mu_i == mu_j
        relation = "mu(I) = mu(J) under equal Hilbert functions"
    else:
        ok = mu_i <= mu_j
        relation = "mu(I) <= mu(J)"
    return CheckResult(
        name="mu",
        relation=relation,
        expected=mu_i,
        observed=mu_j,
        passed=ok,
        details={"N": N, "ar": ar, "hf_equal": cmp.equal},
    )


def check_betti(i_gens, j_gens, p, N):
    """Betti vectors equal up to p once HF agree and N reaches the bound."""
    bounds = theorem_bounds(i_gens, p=p)
    bi = rs.betti_numbers(i_gens, p=p)
    bj = rs.betti_numbers(j_gens, p=p)
    cmp = compare_hilbert(i_gens, j_gens)
    asserted = cmp.equal and N >= bounds.thm_bound
    equal = bi[: p + 1] == bj[: p + 1]
    return CheckResult(
        name="betti",
        relation="Betti numbers equal up to homological degree p",
        expected=bi,
        observed=bj,
        passed=equal if asserted else None,
        details={
            "N": N,
            "p": p,
            "thm_bound": bounds.thm_bound,
            "hf_equal": cmp.equal,
            "asserted": asserted,
        },
    )


def verify_elias(i_gens, j_gens, N):
    """Equal dimension + Cohen-Macaulay perturbation of high graded depth
    preserves the Hilbert function once N reaches the remark bound."""
    bounds = theorem_bounds(i_gens)
    d = iv.dimension(i_gens)
    conds = {
        "congruent": ideals_congruent(i_gens, j_gens, N),
        "dim_equal": iv.dimension(j_gens) == d,
        "cm": iv.is_cohen_macaulay(j_gens),
        "depth_gr": iv.depth_gr(j_gens) >= d - 1,
    }
    cmp = compare_hilbert(i_gens, j_gens)
    applicable = all(conds.values()) and N >= bounds.remark_bound
    return CheckResult(
        name="elias",
        relation="Hilbert functions equal under CM perturbation of high graded depth",
        expected=True if applicable else "not asserted",
        observed=cmp.equal,
        passed=cmp.equal if applicable else None,
        details={
            "N": N,
            "remark_bound": bounds.remark_bound,
            "conditions": conds,
            "first_difference": _json_value(cmp.first_difference),
        },
    )


def verify_min_mult(i_gens, j_gens, N, p=None):
    """Almost-minimal multiplicity: e <= h + 2 forces Betti stability for CM
    perturbations of the same dimension."""
    hd = iv.hilbert_data(i_gens)
    e, h = hd.multiplicity, hd.embedding_codim
    if e > h + 2:
        return CheckResult(
            name="min-mult",
            relation="Betti stability under almost minimal multiplicity",
            expected="precondition e <= h + 2",
            observed="e = {}, h = {}".format(e, h),
            passed=None,
            details={"error": "precondition unmet"},
        )
    bounds = theorem_bounds(i_gens, p=p)
    p = bounds.p
    hj = iv.hilbert_data(j_gens)
    conds = {
        "congruent": ideals_congruent(i_gens, j_gens, N),
        "cm": iv.is_cohen_macaulay(j_gens),
        "dim_equal": hj.dimension == hd.dimension,
    }
    applicable = all(conds.values()) and N >= bounds.remark_bound
    bi = rs.betti_numbers(i_gens, p=p)
    bj = rs.betti_numbers(j_gens, p=p)
    equal = bi[: p + 1] == bj[: p + 1]
    return CheckResult(
        name="min-mult",
        relation="Betti stability under almost minimal multiplicity",
        expected=bi,
        observed=bj,
        passed=equal if applicable else None,
        details={
            "N": N,
            "remark_bound": bounds.remark_bound,
            "conditions": conds,
            "e": e,
            "h": h,
            "e_perturbed": hj.multiplicity,
            "h_perturbed": hj.embedding_codim,
            "case": "minimal" if hj.multiplicity == h + 1 else "almost-minimal",
        },
    )


def verify_filter_regular_theorem(elements, N, trials, seed):
    """Sampled perturbations of a filter-regular sequence keep the HF."""
    elements = list(elements)
    if not iv.is_filter_regular_sequence(elements):
        return CheckResult(
            name="filter-regular",
            relation="Hilbert function stable under perturbation of a filter-regular sequence",
            expected="precondition: filter-regular sequence",
            observed="not filter-regular",
            passed=None,
            details={"error": "precondition unmet"},
        )
    rng = random.Random(seed)
    ring = elements[0].ring
    counterwitness = None
    for t in range(trials):
        eps = [random_homogeneous(ring, N, rng) for _ in elements]
        j_gens = [f + e for f, e in zip(elements, eps)]
        cmp = compare_hilbert(elements, j_gens, D=2 * N)
        if not cmp.equal:
            counterwitness = {
                "trial": t,
                "eps": [str(e) for e in eps],
                "first_difference": _json_value(cmp.first_difference),
            }
            break
    return CheckResult(
        name="filter-regular",
        relation="Hilbert function stable under perturbation of a filter-regular sequence",
        expected="all trials equal",
        observed="all equal" if counterwitness is None else "counterwitness",
        passed=counterwitness is None,
        details={
            "N": N,
            "trials": trials,
            "seed": seed,
            "counterwitness": counterwitness,
        },
    )


def search_min_N(gens, p, max_N, trials, seed):
    """Empirical stability table: for each N, the fraction of sampled
    perturbations preserving the Hilbert function and the Betti numbers."""
    bounds = theorem_bounds(gens, p=p)
    bi = rs.betti_numbers(gens, p=p)
    table = []
    if trials > 0:
        for N in range(1, max_N + 1):
            preserved = 0
            for t in range(trials):
                spec = PerturbationSpec(
                    N=N, strategy="random-homogeneous", seed=seed * 1000003 + N * 1009 + t
                )
                j_gens, _ = make_perturbation(gens, spec)
                try:
                    cmp = compare_hilbert(gens, j_gens)
                    ok = cmp.equal and bi == rs.betti_numbers(j_gens, p=p)
                except RingError:
                    ok = False
                if ok:
                    preserved += 1
            table.append(
                {"N": N, "preserved": preserved, "trials": trials,
                 "fraction": "{}/{}".format(preserved, trials)}
            )
    return {
        "table": table,
        "thm_bound": bounds.thm_bound,
        "remark_bound": bounds.remark_bound,
        "p": p,
        "seed": seed,
    }


# -- random instances (test support) ----------------------------------------


def random_polynomial(ring, rng, max_degree, min_order=1, max_terms=4):
    """Random sparse polynomial whose order is at least min_order."""
    pool = []
    for d in range(min_order, max_degree + 1):
        pool.extend(iv._degree_monomials(ring.nvars, d))
    while True:
        terms = {}
        for m in rng.sample(pool, min(rng.randint(1, max_terms), len(pool))):
            c = _random_coeff(ring.field, rng)
            if c != ring.field.zero:
                terms[m] = c
        if terms:
            from .rings import Polynomial

            return Polynomial(ring, terms)


def random_ideal(ring, rng, max_gens=3, max_degree=3):
    count = rng.randint(1, max_gens)
    return [random_polynomial(ring, rng, max_degree) for _ in range(count)]


def random_filter_regular_sequence(ring, rng, length, max_degree=3, attempts=200):
    """Resample random sequences until one is certified filter-regular."""
    for _ in range(attempts):
        seq = [random_polynomial(ring, rng, max_degree) for _ in range(length)]
        try:
            if iv.is_filter_regular_sequence(seq):
                return seq
        except RingError:
            continue
    raise PerturbationError("no filter-regular sequence found")


def random_regular_sequence(ring, rng, length, max_degree=3):
    """Random complete-intersection input: one generator per distinct
    variable, a pure power plus a random higher-order tail."""
    length = min(length, ring.nvars)
    out = []
    for i in range(length):
        d = rng.randint(1, max_degree)
        exps = tuple(d if j == i else 0 for j in range(ring.nvars))
        f = ring.monomial(exps)
        tail = random_polynomial(ring, rng, max_degree + 1, min_order=d + 1)
        if rng.random() < 0.5:
            f = f + tail
        out.append(f)
    return out
