"""Harish Chandra series solutions in the asymptotic zone |z_1|<...<|z_n|.

The solver derives a triangular recursion for the series coefficients from
the first-order eigen-equation: expanding each rational operator weight in
the ratio variables zeta_l = z_l/z_{l+1} raises the total degree, so the
coefficient of every monomial is determined by strictly lower degrees.
Higher-order equations are verified numerically, not imposed.

Also holds the closed-form leading coefficients, numeric evaluation with a
geometric tail estimate, JSON round-tripping, and the residue-summation
oracles for the contour-integral representations.
"""

from __future__ import annotations

import cmath
import itertools
import json
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (ConvergenceError, DomainError, NondegeneracyError,
                     PoleError, ZoneError)
from .operators import SpectralData, eigenvalue_c, macdonald_apply_numeric
from .qcore import (QParams, XRMode, _cpow, fq, qgamma, qpochhammer_inf,
                    qpochhammer_inf_drop, theta)

DEFAULT_DEPTH = {2: 24, 3: 16, 4: 10}
_MAX_RESIDUES = 100_000


def default_depth(n: int) -> int:
    return DEFAULT_DEPTH.get(n, 8)


class PowerTable:
    """Dense table of series coefficients indexed by p in Z_+^(n-1), |p| <= N."""

    __slots__ = ("n_vars", "max_degree", "coeffs")

    def __init__(self, n_vars: int, max_degree: int):
        self.n_vars = n_vars
        self.max_degree = max_degree
        self.coeffs: dict[tuple[int, ...], complex] = {
            p: 0.0 for p in multi_indices(n_vars, max_degree)}

    def __getitem__(self, p):
        return self.coeffs[tuple(p)]

    def __setitem__(self, p, v):
        self.coeffs[tuple(p)] = complex(v)


def multi_indices(n_vars: int, max_total: int):
    """All p in Z_+^(n_vars) with |p| <= max_total, by increasing |p|."""
    for total in range(max_total + 1):
        for cuts in itertools.combinations(range(total + n_vars - 1),
                                           n_vars - 1):
            p = []
            prev = -1
            for c in cuts:
                p.append(c - prev - 1)
                prev = c
            p.append(total + n_vars - 1 - prev - 1)
            yield tuple(p)


def kappa(p: tuple[int, ...]) -> tuple[int, ...]:
    """Exponent shift of the monomial prod zeta_l^(p_l): kappa_i = p_i - p_(i-1)."""
    ext = (0,) + tuple(p) + (0,)
    return tuple(ext[i] - ext[i - 1] for i in range(1, len(ext)))


@dataclass
class HCSolution:
    """A Harish Chandra solution: prefactor exponent, coefficient table, params."""

    spectral: SpectralData
    params: QParams
    table: PowerTable
    leading_coefficient_modeA: complex
    leading_coefficient_modeB: complex

    @property
    def n(self) -> int:
        return self.spectral.n

    @property
    def max_degree(self) -> int:
        return self.table.max_degree

    @property
    def prefactor_exponent(self) -> tuple[complex, ...]:
        return self.spectral.eta_plus_rho


def _weight_expansions(n: int, t: float, N: int) -> list[dict]:
    """For each i, the expansion of prod_{j != i}(t z_i - z_j)/(z_i - z_j)
    in the ratio variables, truncated at total degree N.

    For j > i the factor is 1 + (1-t) sum_{m>=1} u^m, u = z_i/z_j;
    for j < i it is t + (t-1) sum_{m>=1} u^m, u = z_j/z_i.  The ratio
    z_a/z_b (a < b) carries multi-index (0,..,m..,m,..0) on slots a..b-1.
    """
    out = []
    zero = tuple([0] * (n - 1))
    for i in range(n):
        acc = {zero: complex(1.0)}
        for j in range(n):
            if j == i:
                continue
            a, b = (i, j) if i < j else (j, i)
            const = 1.0 if j > i else t
            coef = (1.0 - t) if j > i else (t - 1.0)
            span = b - a
            factor = {zero: complex(const)}
            for m in range(1, N // span + 1):
                d = [0] * (n - 1)
                for l in range(a, b):
                    d[l] = m
                factor[tuple(d)] = complex(coef)
            acc = _convolve_truncated(acc, factor, N)
        out.append(acc)
    return out


def _convolve_truncated(A: dict, B: dict, N: int) -> dict:
    out: dict[tuple[int, ...], complex] = {}
    for da, ca in A.items():
        sa = sum(da)
        for db, cb in B.items():
            if sa + sum(db) > N:
                continue
            d = tuple(x + y for x, y in zip(da, db))
            out[d] = out.get(d, 0.0) + ca * cb
    return out


def solve_coefficients(s: SpectralData, p: QParams, N: int | None = None
                       ) -> HCSolution:
    """Build the coefficients a(p), |p| <= N, by the triangular recursion
    from the D^1 eigen-equation, normalized by a(0) = 1."""
    n = s.n
    if N is None:
        N = default_depth(n)
    q, t = p.q, p.t
    epr = s.eta_plus_rho
    weights = _weight_expansions(n, t, N)
    c_target = eigenvalue_c(s.lam_plus_rho, 1, p)

    table = PowerTable(n - 1, N)
    table[(0,) * (n - 1)] = 1.0
    q_epr = [_cpow(q, e) for e in epr]

    def q_nu(pp, i):
        # q^{(eta+rho+kappa(pp))_i}
        return q_epr[i] * q ** kappa(pp)[i]

    for P in multi_indices(n - 1, N):
        if sum(P) == 0:
            continue
        nu_qs = [q_nu(P, i) for i in range(n)]
        denom = c_target - sum(t ** (i + 1) * nu_qs[i] for i in range(n))
        if abs(denom) < 1e-10 * abs(c_target):
            raise NondegeneracyError(
                f"nondegeneracy violated at p={P}", multi_index=P)
        acc = complex(0.0)
        for i in range(n):
            for d, wc in weights[i].items():
                if sum(d) == 0 or any(dl > pl for dl, pl in zip(d, P)):
                    continue
                pp = tuple(pl - dl for pl, dl in zip(P, d))
                acc += wc * q_nu(pp, i) * table[pp]
        table[P] = t * acc / denom

    def _lead(mode):
        # a Gamma_q pole here flags a non-generic lambda; the series itself
        # is still well defined, so record the coefficient as unavailable
        try:
            return leading_coefficient(s, p, mode)
        except PoleError:
            return None

    return HCSolution(
        spectral=s, params=p, table=table,
        leading_coefficient_modeA=_lead(XRMode.A),
        leading_coefficient_modeB=_lead(XRMode.B),
    )


def leading_coefficient(s: SpectralData, p: QParams,
                        mode: XRMode = XRMode.A) -> complex:
    """Closed-form leading asymptotic coefficient of the matrix-element
    normalization, as a product over positive roots of Gamma_q ratios."""
    mode = XRMode(mode) if not isinstance(mode, XRMode) else mode
    n, q, k = s.n, p.q, p.k
    eta = s.eta
    out = complex(-1.0) ** (n * (n - 1) // 2)
    for i in range(n):
        for j in range(i + 1, n):
            d = eta[i] - eta[j]
            if mode is XRMode.A:
                out *= (_cpow(q, d * (d + k) / 2.0) * qgamma(1.0 - k, q)
                        / (qgamma(d + 1.0, q) * qgamma(-d + 1.0 - k, q)))
            else:
                out *= (_cpow(q, d * (d + 1.0 - k) / 2.0) * qgamma(k, q)
                        / (qgamma(d + 1.0, q) * qgamma(-d + k, q)))
    return out


class EvalResult(NamedTuple):
    value: complex
    tail_estimate: float


def evaluate(sol: HCSolution, z, max_ratio: float = 1.0) -> EvalResult:
    """Evaluate the truncated series at z (all ratios |z_i/z_{i+1}| < 1).

    Returns the value together with a crude geometric tail estimate based
    on the magnitude of the top-degree stratum.  max_ratio loosens the
    zone guard when the coefficients decay fast enough for the series to
    converge slightly beyond |z_i/z_{i+1}| = 1 (checkable a posteriori
    through the tail estimate).
    """
    z = tuple(complex(c) for c in z)
    n = sol.n
    if len(z) != n:
        raise DomainError(f"point must have {n} coordinates")
    ratios = [z[i] / z[i + 1] for i in range(n - 1)]
    rho_max = max(abs(r) for r in ratios)
    if rho_max >= max_ratio:
        raise ZoneError(
            f"point outside the zone: max ratio {rho_max} >= {max_ratio}")
    pref = complex(1.0)
    for zi, e in zip(z, sol.prefactor_exponent):
        pref *= _cpow(zi, e)
    total = complex(0.0)
    top = 0.0
    prev = 0.0
    N = sol.max_degree
    for p, a in sol.table.coeffs.items():
        mono = a
        for r, pl in zip(ratios, p):
            mono *= r ** pl
        total += mono
        if sum(p) == N:
            top += abs(mono)
        elif sum(p) == N - 1:
            prev += abs(mono)
    # geometric tail from the observed decay of the top two strata
    s = min(0.95, top / prev) if prev > 0 and top < prev else min(0.95, rho_max)
    tail = abs(pref) * top * s / (1.0 - s)
    return EvalResult(value=pref * total, tail_estimate=tail)


def eigen_residual(sol: HCSolution, m: int, z) -> float:
    """|D^m phi - c^m phi| / |c^m phi| with phi the truncated series."""
    phi = lambda zz: evaluate(sol, zz).value
    c = eigenvalue_c(sol.spectral.lam_plus_rho, m, sol.params)
    ref = c * phi(tuple(z))
    lhs = macdonald_apply_numeric(phi, m, tuple(z), sol.params)
    return abs(lhs - ref) / abs(ref)


# ---------------------------------------------------------------------------
# Residue-summation oracles for the contour integrals


def residue_integral_prop6(n_pow: int, lam12: complex, p: QParams) -> complex:
    """Residue sum for the theta-ratio contour integral with integrand
    y^n Theta_q(q^(l21+(k+1)/2)/y)/Theta_q(q^((1+k)/2)/y)
        * (q^((1+k)/2)/y;q)_inf/(q^((1-k)/2)/y;q)_inf  dy/(2 pi i y),
    poles at y = q^((1-k)/2+m), m >= 0."""
    q, k = p.q, p.k
    l21 = -complex(lam12)
    pref = (_cpow(q, (1.0 - k) / 2.0 * n_pow)
            * theta(_cpow(q, l21 + k), q) / theta(q ** k, q)
            * qpochhammer_inf(q ** k, q) / qpochhammer_inf(q, q))
    expo = l21 + n_pow + k
    if expo.real <= 0.0:
        raise ConvergenceError("residue series for the one-point integral "
                               "diverges for these parameters")
    ratio = _cpow(q, expo)
    total = complex(0.0)
    term = complex(1.0)  # prod_{j=1..m} (1-q^(j-k))/(1-q^j) at m=0
    for m in range(_MAX_RESIDUES):
        contrib = term * ratio ** m
        total += contrib
        if m > 4 and abs(contrib) < p.eps * max(1.0, abs(total)):
            return pref * total
        term *= (1.0 - q ** (m + 1 - k)) / (1.0 - q ** (m + 1))
    raise ConvergenceError("residue series for the one-point integral "
                           "did not converge")


def one_point_integral_closed_form(n_pow: int, lam12: complex, p: QParams) -> complex:
    """Gamma_q closed form the residue sum must reproduce."""
    q, k = p.q, p.k
    l21 = -complex(lam12)
    return (qgamma(1.0 - k, q)
            / (qgamma(l21 + 1.0, q) * qgamma(complex(lam12) + 1.0 - k, q))
            * qgamma(l21 + k + n_pow, q) * qgamma(l21 + 1.0, q)
            / (qgamma(l21 + k, q) * qgamma(l21 + n_pow + 1.0, q))
            * _cpow(q, (1.0 - k) / 2.0 * n_pow))


def one_point_integral_binomial_route(n_pow: int, lam12: complex, p: QParams) -> complex:
    """Independent route: q-binomial expansion of the s-kernel followed by
    term-by-term moments of the remaining Pochhammer ratio."""
    q, k = p.q, p.k
    l12 = complex(lam12)
    l21 = -l12
    qhalf = q ** ((1.0 - k) / 2.0)
    total = complex(0.0)
    outer = complex(1.0)  # prod_{j<m}(1-q^(l12+j))/(1-q^(j+1)) z^m at m=0
    for m in range(_MAX_RESIDUES):
        # inner moment: oint y^(m+n) (q^(l21+(k+1)/2)/y;q)/(q^((1-k)/2)/y;q)
        M = m + n_pow
        inner = complex(1.0)
        for j in range(M):
            inner *= (1.0 - _cpow(q, l21 + k + j)) / (1.0 - q ** (j + 1))
        inner *= qhalf ** M
        contrib = outer * inner
        total += contrib
        if m > 4 and abs(contrib) < p.eps * max(1.0, abs(total)):
            return total
        outer *= (1.0 - _cpow(q, l12 + m)) / (1.0 - q ** (m + 1)) * qhalf
    raise ConvergenceError("binomial-route series did not converge")


def integral_rep_fq(lam, z1: complex, z2: complex, p: QParams) -> complex:
    """Residue evaluation of the single-valued theta-ratio contour integral

        oint Theta_q(q^(l2-l1+(1+k)/2) z1/y)/Theta_q(q^((1+k)/2) z1/y)
             * s(z1/y-kernel) * s(y/z2-kernel) dy/(2 pi i y)

    summing over the poles y = q^((1-k)/2+m) z1.  Equals
    Gamma_q(1-k)/(Gamma_q(l1-l2+1-k) Gamma_q(l2-l1+1))
        * F_q(k, l2-l1+k, l2-l1+1, q^(1-k) z1/z2).
    """
    q, k = p.q, p.k
    l1, l2 = complex(lam[0]), complex(lam[1])
    z1, z2 = complex(z1), complex(z2)
    if z1 == 0:
        # only the Gamma prefactor survives
        return (qgamma(1.0 - k, q)
                / (qgamma(l1 - l2 + 1.0 - k, q) * qgamma(l2 - l1 + 1.0, q)))
    arg = q ** (1.0 - k) * z1 / z2
    if abs(arg) >= 1.0:
        raise ZoneError("z1/z2 outside the convergence region")
    b_half = q ** ((1.0 + k) / 2.0)
    c_half = q ** ((1.0 - k) / 2.0)
    # at the m-th pole the theta ratio and the z1/y Pochhammer ratio reduce,
    # via quasi-periodicity, to stable m=0 values times simple recurrences
    theta_base = theta(_cpow(q, l2 - l1 + k), q) / theta(q ** k, q)
    poch_base = qpochhammer_inf(q ** k, q) / qpochhammer_inf(q, q)
    shift = _cpow(q, l2 - l1)  # theta-ratio gain per unit pole index
    if abs(shift) * q ** k >= 1.0:
        raise ConvergenceError(
            "residue series diverges: requires Re(lam2 - lam1 + k) > 0")
    fm = complex(1.0)          # prod_{j<=m} q^k (1-q^(j-k))/(1-q^j)
    total = complex(0.0)
    for m in range(_MAX_RESIDUES):
        ym = c_half * q ** m * z1
        rest = (theta_base * shift ** m * poch_base * fm
                * qpochhammer_inf(b_half * ym / z2, q)
                / qpochhammer_inf(c_half * ym / z2, q))
        total += rest
        if m > 4 and abs(rest) < p.eps * max(1.0, abs(total)):
            return total
        fm *= q ** k * (1.0 - q ** (m + 1 - k)) / (1.0 - q ** (m + 1))
    raise ConvergenceError("residue series for the two-point integral "
                           "did not converge")


def integral_rep_fq_reference(lam, z1: complex, z2: complex,
                              p: QParams) -> complex:
    """The prefactored F_q value the contour integral must reproduce."""
    q, k = p.q, p.k
    l1, l2 = complex(lam[0]), complex(lam[1])
    return (qgamma(1.0 - k, q)
            / (qgamma(l1 - l2 + 1.0 - k, q) * qgamma(l2 - l1 + 1.0, q))
            * fq(k, l2 - l1 + k, l2 - l1 + 1.0,
                 q ** (1.0 - k) * z1 / z2, q, p.eps))


# ---------------------------------------------------------------------------
# JSON serialization


def _fmt(x: float) -> float:
    return float(format(float(x), ".17g"))


def solution_to_dict(sol: HCSolution) -> dict:
    return {
        "n": sol.n,
        "q": _fmt(sol.params.q),
        "k": _fmt(sol.params.k),
        "lambda": [[_fmt(c.real), _fmt(c.imag)] for c in sol.spectral.lam],
        "w": list(sol.spectral.w),
        "N": sol.max_degree,
        "prefactor_exponent": [[_fmt(c.real), _fmt(c.imag)]
                               for c in sol.prefactor_exponent],
        "coeffs": [
            {"p": list(p), "re": _fmt(a.real), "im": _fmt(a.imag)}
            for p, a in sorted(sol.table.coeffs.items())
        ],
        "leading_coefficient_modeA": _opt_complex(sol.leading_coefficient_modeA),
        "leading_coefficient_modeB": _opt_complex(sol.leading_coefficient_modeB),
    }


def _opt_complex(c):
    return None if c is None else [_fmt(c.real), _fmt(c.imag)]


def solution_from_dict(doc: dict) -> HCSolution:
    p = QParams(q=doc["q"], k=doc["k"])
    lam = tuple(complex(re, im) for re, im in doc["lambda"])
    s = SpectralData(n=doc["n"], lam=lam, w=tuple(doc["w"]), k=p.k)
    table = PowerTable(doc["n"] - 1, doc["N"])
    for entry in doc["coeffs"]:
        table[tuple(entry["p"])] = complex(entry["re"], entry["im"])
    la = doc["leading_coefficient_modeA"]
    la = None if la is None else complex(*la)
    lb = doc["leading_coefficient_modeB"]
    lb = None if lb is None else complex(*lb)
    return HCSolution(spectral=s, params=p, table=table,
                      leading_coefficient_modeA=la,
                      leading_coefficient_modeB=lb)


def solution_to_json(sol: HCSolution) -> str:
    return json.dumps(solution_to_dict(sol))


def solution_from_json(text: str) -> HCSolution:
    return solution_from_dict(json.loads(text))
