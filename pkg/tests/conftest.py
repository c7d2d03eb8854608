"""Shared fixtures and independent oracles used across the test suite."""

import itertools
from fractions import Fraction

import pytest

from localring.rings import GF, QQ, parse_polynomial


@pytest.fixture
def R3():
    return QQ("x", "y", "z")


@pytest.fixture
def R2():
    return QQ("x", "y")


@pytest.fixture
def P(R3):
    return lambda s: parse_polynomial(s, R3)


@pytest.fixture
def P2(R2):
    return lambda s: parse_polynomial(s, R2)


def monomials_below(nvars, degree):
    """All exponent tuples of total degree < degree, in a fixed order."""
    out = []
    for d in range(degree):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return out


def exact_rank(rows, characteristic=0):
    """Rank of a matrix given as coefficient rows, by exact elimination."""
    rows = [list(r) for r in rows if any(r)]
    if characteristic:
        p = characteristic

        def inv(a):
            return pow(a, p - 2, p)

    else:
        rows = [[Fraction(x) for x in r] for r in rows]

        def inv(a):
            return 1 / a

    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        piv_inv = inv(rows[rank][col])
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col] * piv_inv
                if characteristic:
                    rows[i] = [
                        (a - factor * b) % characteristic
                        for a, b in zip(rows[i], rows[rank])
                    ]
                else:
                    rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def truncated_quotient_dim(gens, D):
    """dim_k R/(I + m^D) by exact linear algebra; oracle for cumulative HF."""
    ring = gens[0].ring
    monos = monomials_below(ring.nvars, D)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        v = g.order
        for a in monomials_below(ring.nvars, max(D - v, 0)):
            shifted = {}
            for m, c in g.terms.items():
                total = tuple(x + y for x, y in zip(m, a))
                if sum(total) < D:
                    shifted[total] = c
            if shifted:
                row = [0] * len(monos)
                for m, c in shifted.items():
                    row[index[m]] = c if ring.field.characteristic else Fraction(c)
                rows.append(row)
    rank = exact_rank(rows, ring.field.characteristic) if rows else 0
    return len(monos) - rank


def truncated_membership(f, gens, D):
    """f in I + m^D, decided by exact linear algebra on truncations."""
    ring = f.ring
    monos = monomials_below(ring.nvars, D)
    index = {m: i for i, m in enumerate(monos)}

    def row_of(poly):
        row = [0] * len(monos)
        for m, c in poly.terms.items():
            if sum(m) < D:
                row[index[m]] = c if ring.field.characteristic else Fraction(c)
        return row

    rows = []
    for g in gens:
        if g.is_zero():
            continue
        for a in monomials_below(ring.nvars, max(D - g.order, 0)):
            shifted = g.mul_monomial(a)
            r = row_of(shifted)
            if any(r):
                rows.append(r)
    base = exact_rank(rows, ring.field.characteristic) if rows else 0
    target = row_of(f)
    if not any(target):
        return True
    joined = exact_rank(rows + [target], ring.field.characteristic)
    return joined == base
