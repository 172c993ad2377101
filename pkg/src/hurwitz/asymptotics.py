"""Closed-form large-genus leading terms and exact-vs-asymptotic reports.

Every leading term is evaluated in exact rational (or Gaussian
rational) arithmetic; ratios are formed exactly and only rendered to
decimal strings at a configurable precision (default 128 bits, about 38
digits), so reports carry no rounding noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .core import GSpec, m_ds
from .errors import DomainError, EmptyReportError
from .exactnum import (
    GaussianRational,
    MultiPoly,
    format_rational,
    stirling,
)
from .partitions import check_partition, class_data, contents


# ---------------------------------------------------------------------------
# Dominant pole coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoleCoefficient:
    """Top coefficient of a dominant pole of the generating function.

    ``rho`` is +-(d-1): the pole sits at 1/rho and contributes
    coefficient ~ A * r^{K-1}/(K-1)! * rho^r.  The coefficient is kept
    formal in the u's and v's; the expansion in each v is truncated at
    ``v_order`` (it is an honest power series there), while the u part
    is an exact polynomial.
    """

    rho: int
    order: int
    coefficient: MultiPoly
    v_order: int


def _sign_exponent(d: int, profiles) -> int:
    return d * len(profiles) - sum(len(mu) for mu in profiles)


def _caps(gspec: GSpec, d: int, v_order: int) -> tuple[int, ...]:
    return (d - 1,) * gspec.L + (v_order,) * gspec.M


def pole_coefficient(d: int, gspec: GSpec, profiles=(), sign: int = 1, *,
                     v_order: int = 6) -> PoleCoefficient:
    """Top pole coefficient by literal limit evaluation.

    Only the row partition (sign +) or the column partition (sign -)
    reaches the extreme content +-(d-1); cancelling the vanishing
    literal factor of that box and substituting z = sign/(d-1) in every
    remaining factor gives the limit exactly.
    """
    if gspec.K < 1:
        raise DomainError("pole_coefficient needs at least one literal pole (K >= 1)")
    if d < 2:
        raise DomainError(f"degree {d} has no pole (need d >= 2)")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    profiles = tuple(check_partition(mu) for mu in profiles)
    for mu in profiles:
        if sum(mu) != d:
            raise DomainError(f"profile {mu} does not partition {d}")

    lam = (d,) if sign == 1 else (1,) * d
    z0 = Fraction(sign, d - 1)
    caps = _caps(gspec, d, v_order)
    nvars = gspec.nvars
    # prefactor (+-1)^{Nd - sum l} / d!^2; the sign bites only for the column case
    sgn = 1 if sign == 1 or _sign_exponent(d, profiles) % 2 == 0 else -1
    acc = MultiPoly.constant(nvars, Fraction(sgn, math.factorial(d) ** 2))
    for c in contents(lam):
        if c == 0:
            continue
        cz = c * z0
        if cz == 1:
            # the vanishing literal factor: its K powers cancel the K powers
            # of (1 -+ z(d-1)); u and v factors of this box still contribute
            pass
        else:
            acc = acc.scale(Fraction(1, 1) / (1 - cz) ** gspec.K)
        for i in range(gspec.L):
            u = MultiPoly.variable(nvars, i)
            acc = acc.mul(MultiPoly.constant(nvars, 1) + u.scale(cz), caps)
        for j in range(gspec.M):
            v = MultiPoly.variable(nvars, gspec.L + j)
            geo = MultiPoly.constant(nvars, 1)
            power = MultiPoly.constant(nvars, 1)
            for _ in range(v_order):
                power = power.mul(v).scale(cz)
                geo = geo + power
            acc = acc.mul(geo, caps)
    return PoleCoefficient(rho=sign * (d - 1), order=gspec.K,
                           coefficient=acc, v_order=v_order)


def pole_coefficient_stirling(d: int, gspec: GSpec, profiles=(), sign: int = 1, *,
                              v_order: int = 6) -> PoleCoefficient:
    """The same coefficient from the Stirling-number generating series."""
    if gspec.K < 1:
        raise DomainError("pole_coefficient needs at least one literal pole (K >= 1)")
    if d < 2:
        raise DomainError(f"degree {d} has no pole (need d >= 2)")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    profiles = tuple(check_partition(mu) for mu in profiles)
    nvars = gspec.nvars
    caps = _caps(gspec, d, v_order)
    sgn = 1 if sign == 1 or _sign_exponent(d, profiles) % 2 == 0 else -1
    scalar = Fraction(sgn * (d - 1) ** (gspec.K * (d - 2)),
                      math.factorial(d) ** 2 * math.factorial(d - 2) ** gspec.K)
    acc = MultiPoly.constant(nvars, scalar)
    # the u/v series are identical at both poles: content and z0 signs cancel
    for i in range(gspec.L):
        u = MultiPoly.variable(nvars, i)
        poly = MultiPoly.zero(nvars)
        power = MultiPoly.constant(nvars, 1)
        for a in range(d):
            poly = poly + power.scale(Fraction(stirling(1, d, d - a), (d - 1) ** a))
            power = power.mul(u)
        acc = acc.mul(poly, caps)
    for j in range(gspec.M):
        v = MultiPoly.variable(nvars, gspec.L + j)
        poly = MultiPoly.zero(nvars)
        power = MultiPoly.constant(nvars, 1)
        for b in range(v_order + 1):
            poly = poly + power.scale(Fraction(stirling(2, b + d - 1, d - 1),
                                               (d - 1) ** b))
            power = power.mul(v)
        acc = acc.mul(poly, caps)
    return PoleCoefficient(rho=sign * (d - 1), order=gspec.K,
                           coefficient=acc, v_order=v_order)


# ---------------------------------------------------------------------------
# Leading terms of the asymptotic theorems
# ---------------------------------------------------------------------------

def monotone_leading_term(r: int, d: int, n_profiles: int, ell_sum: int, k: int,
                          a_vec=(), b_vec=()) -> Fraction:
    """Leading term for rational weights with K weak blocks growing with r.

    2 * r^{K-1}/(K-1)! * (d-1)^{(d-2)K - sum a - sum b + r} /
    (d!^2 (d-2)!^K) * prod [d; d-a_i] * prod {b_j+d-1; d-1}.
    Returns 0 when some a_i >= d (the Stirling factor vanishes).
    """
    if k < 1:
        raise DomainError(f"need K >= 1, got {k}")
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    if r < 0:
        raise DomainError(f"need r >= 0, got {r}")
    a_vec = tuple(int(a) for a in a_vec)
    b_vec = tuple(int(b) for b in b_vec)
    stir = 1
    for a in a_vec:
        stir *= stirling(1, d, d - a) if a < d else 0
    for b in b_vec:
        stir *= stirling(2, b + d - 1, d - 1)
    if stir == 0:
        return Fraction(0)
    exponent = (d - 2) * k - sum(a_vec) - sum(b_vec) + r
    return (
        2
        * Fraction(r ** (k - 1), math.factorial(k - 1))
        * Fraction(d - 1) ** exponent
        / (Fraction(math.factorial(d)) ** 2 * Fraction(math.factorial(d - 2)) ** k)
        * stir
    )


def completed_leading_term(r: int, d: int, s: int, n_profiles: int = 0,
                           ell_sum: int = 0) -> Fraction:
    """(2/d!^2) * M_{d,s}^r for the completed-cycle family."""
    if r < 0:
        raise DomainError(f"need r >= 0, got {r}")
    return Fraction(2, math.factorial(d) ** 2) * m_ds(d, s) ** r


def b_leading_term(r: int, d: int, n_profiles: int, ell_sum: int, k: int,
                   a_vec=(), b_vec=(), b=0):
    """Leading term of the b-deformed family, exact in Q or Q(i).

    The regime is decided by comparing |b+1| with 1 exactly; at
    |b+1| = 1 both dominant poles contribute and their regime factors
    add.  Each pole carries the Jack norm of its own extreme partition:
    d! prod (1+m*alpha) for the row, d! alpha prod (m+alpha) for the
    column (as the hook-product norm gives; the two agree only at
    alpha = 1).  Returns a Fraction when the value is real, otherwise a
    GaussianRational.
    """
    if k < 1:
        raise DomainError(f"need K >= 1, got {k}")
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    if r < 0:
        raise DomainError(f"need r >= 0, got {r}")
    alpha = GaussianRational.of(b) + 1
    a_vec = tuple(int(a) for a in a_vec)
    b_vec = tuple(int(x) for x in b_vec)
    stir = 1
    for a in a_vec:
        stir *= stirling(1, d, d - a) if a < d else 0
    for bb in b_vec:
        stir *= stirling(2, bb + d - 1, d - 1)
    if stir == 0:
        return Fraction(0)
    exponent = k * (d - 2) - sum(a_vec) - sum(b_vec) + r
    common = GaussianRational.of(
        Fraction(r ** (k - 1), math.factorial(k - 1))
        * Fraction(d - 1) ** exponent
        * Fraction(stir, math.factorial(d) * math.factorial(d - 2) ** k)
    )
    norm_row = GaussianRational.of(1)
    norm_col = alpha
    for m in range(1, d):
        norm_row = norm_row * (GaussianRational.of(1) + alpha * m)
        norm_col = norm_col * (alpha + m)

    def plus_term():
        if norm_row.abs2() == 0:
            raise DomainError(f"degenerate deformation: row norm vanishes at b+1={alpha}")
        return alpha ** (r + (n_profiles - 1) * d - ell_sum) / norm_row

    def minus_term():
        if norm_col.abs2() == 0:
            raise DomainError(f"degenerate deformation: column norm vanishes at b+1={alpha}")
        return GaussianRational.of(
            Fraction((-1) ** ((r + n_profiles * d - ell_sum) % 2))
        ) / norm_col

    abs2 = alpha.abs2()
    if abs2 > 1:
        value = common * plus_term()
    elif abs2 < 1:
        value = common * minus_term()
    else:
        value = common * (plus_term() + minus_term())
    if value.is_real:
        return value.re
    return value


def gw_leading_term(mu, nu, insertions) -> Fraction:
    """(2/(z(mu) z(nu) d!^2)) * prod_s (M_{d,s}/s!)^{m_s}."""
    mu = check_partition(mu)
    nu = check_partition(nu)
    if sum(mu) != sum(nu):
        raise DomainError(f"profiles of different degrees: {mu}, {nu}")
    d = sum(mu)
    acc = Fraction(2, class_data(mu).stabilizer * class_data(nu).stabilizer
                   * math.factorial(d) ** 2)
    for s, m in sorted(dict(insertions).items()):
        if s < 1 or m < 0:
            raise DomainError(f"bad insertion {s}:{m}")
        if m:
            acc *= (m_ds(d, s) / math.factorial(s)) ** m
    return acc


# ---------------------------------------------------------------------------
# Ratio reports
# ---------------------------------------------------------------------------

def _decimal_str(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


@dataclass(frozen=True)
class RatioEntry:
    r: int
    exact: Fraction
    asymptotic: Fraction
    ratio: Fraction
    ratio_decimal: str


@dataclass(frozen=True)
class RatioReport:
    """Exact/asymptotic comparison over an r sweep, zero rows dropped."""

    entries: tuple[RatioEntry, ...]
    final_error: Fraction
    final_error_decimal: str
    monotone_from: int | None
    diverging: bool

    def to_json(self) -> dict:
        return {
            "rows": [
                {
                    "r": e.r,
                    "exact": format_rational(e.exact),
                    "asymptotic": format_rational(e.asymptotic),
                    "ratio": e.ratio_decimal,
                }
                for e in self.entries
            ],
            "final_abs_error": self.final_error_decimal,
            "monotone_from": self.monotone_from,
            "diverging": self.diverging,
        }

    def csv_rows(self) -> list[list[str]]:
        rows = [["r", "exact", "asymptotic", "ratio"]]
        for e in self.entries:
            rows.append([
                str(e.r), format_rational(e.exact),
                format_rational(e.asymptotic), e.ratio_decimal,
            ])
        return rows


def ratio_report(exact_fn, asymptotic_fn, r_values, *,
                 precision_bits: int = 128) -> RatioReport:
    """Tabulate exact/asymptotic ratios over ``r_values``.

    Rows with exact value 0 are dropped (that is the parity filter); if
    every row drops, the request was vacuous and raises
    ``EmptyReportError``.
    """
    digits = max(2, int(precision_bits * 0.30103))
    entries = []
    for r in r_values:
        exact = Fraction(exact_fn(r))
        if exact == 0:
            continue
        asym = Fraction(asymptotic_fn(r))
        if asym == 0:
            raise DomainError(f"asymptotic value vanishes at r={r} while exact does not")
        ratio = exact / asym
        entries.append(RatioEntry(r, exact, asym, ratio, _decimal_str(ratio, digits)))
    if not entries:
        raise EmptyReportError("every exact value in the requested range is zero")
    errors = [abs(e.ratio - 1) for e in entries]
    monotone_from = None
    for i in range(len(errors)):
        if all(errors[j + 1] <= errors[j] for j in range(i, len(errors) - 1)):
            monotone_from = entries[i].r
            break
    return RatioReport(
        entries=tuple(entries),
        final_error=errors[-1],
        final_error_decimal=_decimal_str(errors[-1], digits),
        monotone_from=monotone_from,
        diverging=len(errors) > 1 and errors[-1] > errors[0],
    )
