"""Fixed-column generating functions for the run-count triangle.

For each s >= 1 the series u_s(x) = sum_{n>=2} P(n,s) x**n is rational with
denominator prod_{i=0}^{s-1} (1 - (s-i)x)**eps(i), where eps runs
1,1,2,2,3,3,... This module builds the u_s by the exact first-order
recurrence, keeps denominators factored, and audits every degree the
construction is supposed to satisfy. Numerator degree is always one more
than denominator degree, so each u_s decomposes as a linear polynomial plus
proper partial fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exact_algebra import (
    ONE,
    ZERO,
    RationalFunction,
    degree,
    denominator_degree,
    denominator_expand,
    factored_denominator,
    poly,
    poly_add,
    poly_derivative,
    poly_divrem,
    poly_mul,
    poly_scale,
    rational_function,
    rf_add,
    rf_derivative,
    rf_mul_poly,
)


def epsilon(i: int) -> int:
    """Denominator multiplicity pattern: 1, 1, 2, 2, 3, 3, ..."""
    if i < 0:
        raise ValueError("multiplicity index must be >= 0")
    return i // 2 + 1


def delta(s: int):
    """Factored denominator at level s: (1 - (s-i)x)**eps(i) for i < s."""
    if s < 1:
        raise ValueError("levels start at s=1")
    fac = factored_denominator({s - i: epsilon(i) for i in range(s)})
    assert denominator_degree(fac) == _denominator_degree(s)
    return fac


def _denominator_degree(s: int) -> int:
    # ceil(s(s+2)/4)
    return (s * (s + 2) + 3) // 4


def _numerator_degree(s: int) -> int:
    return 1 + _denominator_degree(s)


def _recurrence_degree(s: int) -> int:
    # the degree the assembly recurrence forces, seeded at levels 2 and 3
    d = {2: 3, 3: 5}
    for m in range(4, s + 1):
        d[m] = max(d[m - 1] + (m + 1) // 2, d[m - 2] + m)
    return d[s]


@dataclass(frozen=True)
class UsFunction:
    """One column series u_s packaged with its level."""

    s: int
    ratfun: RationalFunction


def build_us(s_max: int) -> list:
    """u_0..u_{s_max} (index is the level), built by the exact recurrence

        (1 - s*x) u_s = 2x u_{s-1} + x^2 u_{s-2}' - (s-1) x u_{s-2}

    from u_0 = 0 and u_1 = 2x^2/(1-x). Each step clears the new denominator
    against the predicted factored form; a nonzero remainder or a surviving
    common factor means the predicted form is wrong and raises.
    """
    if s_max < 1:
        raise ValueError("need s_max >= 1")
    out = [UsFunction(0, rational_function(ZERO, ()))]
    out.append(UsFunction(1, RationalFunction(poly((0, 0, 2)), delta(1))))
    for s in range(2, s_max + 1):
        prev = out[s - 1].ratfun
        prev2 = out[s - 2].ratfun
        rhs = rf_add(
            rf_mul_poly(prev, poly((0, 2))),
            rf_add(
                rf_mul_poly(rf_derivative(prev2), poly((0, 0, 1))),
                rf_mul_poly(prev2, poly((0, -(s - 1)))),
            ),
        )
        lifted = dict(rhs.denominator)
        lifted[s] = lifted.get(s, 0) + 1
        target = delta(s)
        num, rem = poly_divrem(
            poly_mul(rhs.numerator, denominator_expand(target)),
            denominator_expand(lifted),
        )
        if rem:
            raise ArithmeticError("factored denominator normalization failed: nonzero remainder")
        u = rational_function(num, target)
        if u.denominator != target or u.numerator != num:
            raise ArithmeticError("factored denominator normalization failed: common factor")
        out.append(UsFunction(s, u))
    return out


@dataclass(frozen=True)
class DegreeReport:
    s: int
    numerator_degree: int
    denominator_degree: int
    lowest_numerator_degree: int


def degree_audit(u: UsFunction) -> DegreeReport:
    """Check every degree claim for one level; raises on any mismatch.

    Numerator degree must equal 1 + ceil(s(s+2)/4), match the assembly
    recurrence value for s >= 2, and sit one above the denominator degree;
    the lowest numerator term is x**(s+1).
    """
    s = u.s
    if s < 1:
        raise ValueError("audit applies to levels s >= 1")
    nd = degree(u.ratfun.numerator)
    dd = denominator_degree(u.ratfun.denominator)
    low = next(i for i, c in enumerate(u.ratfun.numerator) if c)
    if nd != _numerator_degree(s):
        raise ArithmeticError(f"numerator degree {nd} != {_numerator_degree(s)} at s={s}")
    if dd != _denominator_degree(s):
        raise ArithmeticError(f"denominator degree {dd} != {_denominator_degree(s)} at s={s}")
    if nd != dd + 1:
        raise ArithmeticError(f"numerator degree {nd} is not denominator degree + 1 at s={s}")
    if s >= 2 and nd != _recurrence_degree(s):
        raise ArithmeticError(f"recurrence degree {_recurrence_degree(s)} != {nd} at s={s}")
    if low != s + 1:
        raise ArithmeticError(f"lowest numerator term x^{low}, expected x^{s + 1} at s={s}")
    return DegreeReport(s, nd, dd, low)


@dataclass(frozen=True)
class RatioReport:
    s: int
    first_degree: int
    second_degree: int


def _even_gap_product(s: int):
    out = ONE
    for j in range(2, s, 2):
        out = poly_mul(out, poly((1, -(s - j))))
    return out


def _full_gap_product(s: int):
    out = ONE
    for j in range(1, s):
        out = poly_mul(out, poly((1, -(s - j))))
    return out


def ratio_identities_check(s: int) -> RatioReport:
    """Verify the two denominator ratios used when assembling level s.

    delta(s) / ((1-sx) delta(s-1)) must equal prod over even gaps j of
    (1-(s-j)x), a polynomial of degree floor((s-1)/2); and
    delta(s) / ((1-sx) delta(s-2)) must equal the full product over
    j = 1..s-1, of degree s-1. Both divisions must be exact.
    """
    if s < 2:
        raise ValueError("ratio identities apply from s=2")
    num = denominator_expand(delta(s))

    den1 = poly_mul(poly((1, -s)), denominator_expand(delta(s - 1)))
    q1, r1 = poly_divrem(num, den1)
    if r1 or q1 != _even_gap_product(s):
        raise ArithmeticError(f"first denominator ratio broke at s={s}")

    low = ONE if s == 2 else denominator_expand(delta(s - 2))
    den2 = poly_mul(poly((1, -s)), low)
    q2, r2 = poly_divrem(num, den2)
    if r2 or q2 != _full_gap_product(s):
        raise ArithmeticError(f"second denominator ratio broke at s={s}")

    report = RatioReport(s, degree(q1), degree(q2))
    assert report.first_degree == (s - 1) // 2
    assert report.second_degree == s - 1
    return report


def assembly_term_degrees(us: list, s: int) -> tuple:
    """Degrees of the four numerator pieces that sum to level s's numerator.

    The pieces come from clearing the recurrence over the common denominator:
    2x * N_{s-1} * (even-gap product), x^2 * N_{s-2}' * (full product), the
    logarithmic-derivative correction, and -(s-1)x * N_{s-2} * (full product).
    Raises if the four do not sum to the stored numerator exactly.
    """
    if s < 2 or s >= len(us):
        raise ValueError("need 2 <= s <= built levels")
    n1 = us[s - 1].ratfun.numerator
    n2 = us[s - 2].ratfun.numerator
    r1 = _even_gap_product(s)
    r2 = _full_gap_product(s)
    t1 = poly_mul(poly((0, 2)), poly_mul(n1, r1))
    t2 = poly_mul(poly((0, 0, 1)), poly_mul(poly_derivative(n2), r2))
    correction = ZERO
    for j in range(2, s):
        part = ONE
        for l in range(1, s):
            if l != j:
                part = poly_mul(part, poly((1, -(s - l))))
        correction = poly_add(correction, poly_scale(part, epsilon(j - 2) * (s - j)))
    t3 = poly_mul(poly((0, 0, 1)), poly_mul(n2, correction))
    t4 = poly_mul(poly((0, -(s - 1))), poly_mul(n2, r2))
    total = poly_add(poly_add(t1, t2), poly_add(t3, t4))
    if total != us[s].ratfun.numerator:
        raise ArithmeticError(f"assembly identity failed at s={s}")
    return tuple(degree(t) for t in (t1, t2, t3, t4))


def _power_text(base: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return base
    return f"{base}^{e}"


def _int_poly_text(coeffs) -> str:
    # ascending, integer coefficients, first one positive by construction
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        body = ("" if mag == 1 and i > 0 else str(mag)) + _power_text("x", i)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


def render_us(u: UsFunction) -> str:
    """Display form: content and power of x pulled out of the numerator,
    denominator factors by decreasing k, e.g. 2x^4(5-6x) / ((1-3x)(1-2x)(1-x)^2).
    """
    num = u.ratfun.numerator
    assert num and all(c.denominator == 1 for c in num)
    val = next(i for i, c in enumerate(num) if c)
    ints = [int(c) for c in num[val:]]
    content = 0
    for c in ints:
        content = gcd(content, abs(c))
    if ints[0] < 0:
        content = -content
    residual = [c // content for c in ints]
    head = ("" if abs(content) == 1 else str(abs(content))) + _power_text("x", val)
    if content < 0:
        head = "-" + head
    if residual == [1]:
        num_text = head if head else "1"
    else:
        num_text = f"{head}({_int_poly_text(residual)})"
    factors = "".join(
        f"(1-{'' if k == 1 else k}x)" + (f"^{e}" if e > 1 else "")
        for k, e in u.ratfun.denominator
    )
    if len(u.ratfun.denominator) > 1 or u.ratfun.denominator[0][1] > 1:
        den_text = f"({factors})"
    else:
        den_text = factors
    return f"{num_text} / {den_text}"
