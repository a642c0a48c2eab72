"""Exact polynomial and rational-function arithmetic over the rationals.

Polynomials are dense coefficient tuples of ``fractions.Fraction``: index i
holds the coefficient of x**i, the last entry is nonzero, and the zero
polynomial is the empty tuple. Rational functions keep their denominators in
the factored form prod (1 - k*x)**e with integer k >= 1, so every pole is
known exactly and partial fractions reduce to evaluation plus synthetic
division instead of root finding. Real-root counting uses exact Sturm chains.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

Poly = tuple  # dense coefficient tuple, constant term first
FactorMap = tuple  # ((k, e), ...) sorted by decreasing k

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def poly(coeffs) -> Poly:
    """Normalize an iterable of numbers into a Poly (strip trailing zeros)."""
    out = [Fraction(c) for c in coeffs]
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    """Degree of p; the zero polynomial reports -1."""
    return len(p) - 1


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly(
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    return poly(x * c for x in p)


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out) if out[-1] else poly(out)


def poly_derivative(p: Poly) -> Poly:
    return poly(i * p[i] for i in range(1, len(p)))


def poly_divrem(num: Poly, den: Poly) -> tuple:
    """Quotient and remainder with deg(remainder) < deg(den)."""
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    rem = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = rem[i + len(den) - 1] / lead
        if c:
            q[i] = c
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    return poly(q), poly(rem)


def poly_eval(p: Poly, x):
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_compose(p: Poly, q: Poly) -> Poly:
    """p(q(x)), by Horner over polynomial arithmetic."""
    acc = ZERO
    for c in reversed(p):
        acc = poly_add(poly_mul(acc, q), poly((c,)))
    return acc


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd with zero is the monic version of the other argument."""
    while b:
        a, b = b, poly_divrem(a, b)[1]
    if not a:
        return ZERO
    return poly_scale(a, 1 / a[-1])


def poly_arith(a, b, op: str):
    """Single dispatch point for the polynomial ring operations."""
    if op == "add":
        return poly_add(a, b)
    if op == "sub":
        return poly_sub(a, b)
    if op == "mul":
        return poly_mul(a, b)
    if op == "derivative":
        return poly_derivative(a)
    if op == "divrem":
        return poly_divrem(a, b)
    raise ValueError(f"unknown op {op!r}")


def poly_to_strings(p: Poly) -> list:
    """Coefficients as exact decimal strings, constant term first."""
    return [str(c) for c in p]


def factored_denominator(factors) -> FactorMap:
    """Canonical tuple for prod (1 - k*x)**e: pairs (k, e) by decreasing k.

    Accepts a mapping or an iterable of pairs; zero exponents are dropped.
    """
    items = dict(factors)
    out = []
    for k in sorted(items, reverse=True):
        e = items[k]
        if e == 0:
            continue
        if not (isinstance(k, int) and k >= 1) or not (isinstance(e, int) and e > 0):
            raise ValueError(f"factor (1-{k}x)^{e} outside the supported family")
        out.append((k, e))
    return tuple(out)


def denominator_degree(den) -> int:
    return sum(e for _, e in factored_denominator(den))


def denominator_expand(den) -> Poly:
    """Expand the factored denominator into a Poly (constant term 1)."""
    out = ONE
    for k, e in factored_denominator(den):
        f = poly((1, -k))
        for _ in range(e):
            out = poly_mul(out, f)
    return out


@dataclass(frozen=True)
class RationalFunction:
    """numerator(x) / prod (1 - k*x)**e, stored in lowest terms.

    Construction rejects a numerator sharing a root 1/k with the denominator;
    use :func:`rational_function` to build with automatic cancellation.
    """

    numerator: Poly
    denominator: FactorMap

    def __post_init__(self):
        object.__setattr__(self, "numerator", poly(self.numerator))
        object.__setattr__(self, "denominator", factored_denominator(self.denominator))
        if not self.numerator:
            if self.denominator:
                raise ValueError("the zero function carries an empty denominator")
            return
        for k, _ in self.denominator:
            if poly_eval(self.numerator, Fraction(1, k)) == 0:
                raise ValueError(f"numerator shares the factor (1-{k}x) with the denominator")


def _deflate(p: Poly, k: int) -> Poly:
    # exact division by (1 - k*x); caller guarantees p(1/k) == 0
    q, r = poly_divrem(p, poly((1, -k)))
    assert not r
    return q


def rational_function(numerator, denominator) -> RationalFunction:
    """Build a RationalFunction, cancelling shared (1 - k*x) factors."""
    num = poly(numerator)
    if not num:
        return RationalFunction(ZERO, ())
    den = {k: e for k, e in factored_denominator(denominator)}
    for k in list(den):
        while den[k] and poly_eval(num, Fraction(1, k)) == 0:
            num = _deflate(num, k)
            den[k] -= 1
        if not den[k]:
            del den[k]
    return RationalFunction(num, factored_denominator(den))


def rf_add(f: RationalFunction, g: RationalFunction) -> RationalFunction:
    fd, gd = dict(f.denominator), dict(g.denominator)
    den = {k: max(fd.get(k, 0), gd.get(k, 0)) for k in set(fd) | set(gd)}
    fnum = poly_mul(f.numerator, denominator_expand({k: e - fd.get(k, 0) for k, e in den.items()}))
    gnum = poly_mul(g.numerator, denominator_expand({k: e - gd.get(k, 0) for k, e in den.items()}))
    return rational_function(poly_add(fnum, gnum), den)


def rf_mul_poly(f: RationalFunction, p) -> RationalFunction:
    return rational_function(poly_mul(f.numerator, poly(p)), f.denominator)


def rf_derivative(f: RationalFunction) -> RationalFunction:
    """d/dx, with the denominator kept factored (each exponent grows by one)."""
    den = dict(f.denominator)
    if not den:
        return rational_function(poly_derivative(f.numerator), ())
    p_all = denominator_expand({k: 1 for k in den})
    num = poly_mul(poly_derivative(f.numerator), p_all)
    for k, e in den.items():
        others = denominator_expand({j: 1 for j in den if j != k})
        num = poly_add(num, poly_scale(poly_mul(f.numerator, others), e * k))
    return rational_function(num, {k: e + 1 for k, e in den.items()})


def series_coefficients(f: RationalFunction, n_max: int) -> list:
    """Taylor coefficients of f at 0, indices 0..n_max, as Fractions.

    Runs the linear recurrence read off the expanded denominator, so cost is
    O(n_max * deg(denominator)) exact operations.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    den = denominator_expand(f.denominator)
    num = f.numerator
    out = []
    for n in range(n_max + 1):
        acc = num[n] if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * out[n - j]
        out.append(acc)
    return out


@dataclass(frozen=True)
class PartialFractionExpansion:
    """pole_terms is ((k, m, c), ...): the term c / (1 - k*x)**m.

    Terms are ordered by decreasing k, then decreasing m within a pole.
    poly_part is the quotient left over when the numerator was not proper.
    """

    pole_terms: tuple
    poly_part: Poly


def partial_fractions(f: RationalFunction) -> PartialFractionExpansion:
    if not f.denominator:
        return PartialFractionExpansion((), f.numerator)
    den_full = denominator_expand(f.denominator)
    if degree(f.numerator) >= denominator_degree(f.denominator):
        poly_part, r = poly_divrem(f.numerator, den_full)
    else:
        poly_part, r = ZERO, f.numerator
    terms = []
    rest = list(f.denominator)
    while rest:
        (k, e) = rest[0]
        rest = rest[1:]
        b = denominator_expand(rest)
        bval = poly_eval(b, Fraction(1, k))
        for m in range(e, 0, -1):
            c = poly_eval(r, Fraction(1, k)) / bval
            if c:
                terms.append((k, m, c))
            r = _deflate(poly_sub(r, poly_scale(b, c)), k)
    assert not r, "peeling must exhaust the proper part"
    return PartialFractionExpansion(tuple(terms), poly_part)


def reassemble(pfe: PartialFractionExpansion) -> RationalFunction:
    """Recombine an expansion over the common denominator. Inverse of
    :func:`partial_fractions` up to the stored reduced form."""
    den = {}
    for k, m, _ in pfe.pole_terms:
        den[k] = max(den.get(k, 0), m)
    num = poly_mul(pfe.poly_part, denominator_expand(den))
    for k, m, c in pfe.pole_terms:
        shrunk = dict(den)
        shrunk[k] -= m
        num = poly_add(num, poly_scale(denominator_expand(shrunk), c))
    return rational_function(num, den)


def pole_term_coefficient(k: int, m: int, c, n: int):
    """Coefficient of x**n in c / (1 - k*x)**m, i.e. c * C(n+m-1, m-1) * k**n."""
    return Fraction(c) * comb(n + m - 1, m - 1) * k**n


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs) -> int:
    out, prev = 0, 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def _squarefree_part(p: Poly) -> Poly:
    g = poly_gcd(p, poly_derivative(p))
    q, r = poly_divrem(p, g)
    assert not r
    return q


def sturm_real_root_audit(p) -> tuple:
    """(number of distinct real roots, whether every real root is <= 0).

    Exact: strips the power of x (a root at 0), takes the squarefree part,
    and counts sign variations of the Sturm chain at -inf, 0, +inf.
    """
    p = poly(p)
    if not p:
        raise ValueError("zero polynomial has no root count")
    v = 0
    while not p[v]:
        v += 1
    r = poly(p[v:])
    q = _squarefree_part(r)
    chain = [q, poly_derivative(q)]
    while chain[-1]:
        chain.append(poly_scale(poly_divrem(chain[-2], chain[-1])[1], -1))
    chain.pop()
    at_neg = [_sign(h[-1]) * (-1 if degree(h) % 2 else 1) for h in chain]
    at_pos = [_sign(h[-1]) for h in chain]
    at_zero = [_sign(h[0]) for h in chain]
    distinct = _variations(at_neg) - _variations(at_pos)
    nonpositive = _variations(at_neg) - _variations(at_zero)  # roots of q in (-inf, 0]
    count = distinct + (1 if v else 0)
    squarefree_degree = degree(q) + (1 if v else 0)
    all_nonpositive = count == squarefree_degree and nonpositive == distinct
    return count, all_nonpositive
