"""Connection formulas between asymptotic zones.

The two-term continuation of the basic q-hypergeometric series, the 2x2
braiding matrices relating Harish Chandra solutions across adjacent zones,
the face Boltzmann weights that mirror them, and a braid-relation checker
for the n=3 solution space.

Index bookkeeping for the braiding matrix: "the solution at sigma_i(z)"
means the zone series for the permuted ordering, evaluated after swapping
the i-th and (i+1)-th coordinates.  All ratio powers and theta arguments
are evaluated at the concrete ratio z_i/z_{i+1} with principal branches;
evaluation points in tests keep arguments well away from the cut.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError, ResonanceError, ZoneError
from .operators import SpectralData
from .qcore import (QParams, XRParams, _cpow, bracket_v, fq, g1, qgamma,
                    qpochhammer_inf, theta)

_RESONANCE_TOL = 1e-10


def fq_connection(a: complex, b: complex, c: complex, z: complex,
                  p: QParams) -> tuple[complex, complex]:
    """Both sides of the two-term analytic continuation of F_q.

    lhs: the |z|-series.  rhs: the theta-weighted combination of the two
    series in q^(c+1-a-b)/z.  z must lie in the annulus where both sides
    converge.
    """
    q = p.q
    z = complex(z)
    zi = _cpow(q, c + 1.0 - a - b) / z
    if abs(z) >= 1.0 or abs(zi) >= 1.0:
        raise ZoneError("z outside the mutual convergence annulus")
    lhs = fq(a, b, c, z, q, p.eps)

    def half(a1, b1):
        # Gamma_q(b1-a1)/Gamma_q(b1) in pole-free product form: it must
        # degenerate to an exact zero for terminating b1
        num = qpochhammer_inf(_cpow(q, b1), q, p.eps)
        den = qpochhammer_inf(_cpow(q, b1 - a1), q, p.eps)
        if abs(den) < _RESONANCE_TOL * max(1.0, abs(num)):
            raise PoleError("Gamma_q(b-a) pole in a connection coefficient")
        coeff = _cpow(1.0 - q, a1) * num / den
        if abs(coeff) == 0.0:
            return 0.0
        return (qgamma(c, q) * coeff / qgamma(c - a1, q)
                * theta(_cpow(q, a1) * z, q) / theta(z, q)
                * fq(a1, a1 - c + 1.0, a1 - b1 + 1.0, zi, q, p.eps))

    rhs = half(a, b) + half(b, a)
    return lhs, rhs


@dataclass
class ConnectionMatrix:
    """2x2 continuation coefficients attached to an adjacent transposition.

    Row 0 expresses phi(eta, z), row 1 phi(sigma_i eta, z), both in the
    basis {phi(eta, sigma_i z), phi(sigma_i eta, sigma_i z)} (that order).
    """

    i: int
    w: tuple[int, ...]
    ratio: complex
    entries: list  # 2x2 nested list of complex

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=complex)

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "w": list(self.w),
            "ratio": {"re": self.ratio.real, "im": self.ratio.imag},
            "entries": [[{"re": e.real, "im": e.imag} for e in row]
                        for row in self.entries],
        }


def _braid_coefficients(d: complex, zeta: complex, p: QParams
                        ) -> tuple[complex, complex]:
    """The pair (diagonal, off-diagonal) continuation coefficients for
    crossing one wall, where d = eta_{i+1} - eta_i and zeta = z_i/z_{i+1}.

    diag multiplies the same solution at the swapped point; off multiplies
    the eta-swapped solution there.
    """
    q, k = p.q, p.k
    u = 1.0 / zeta
    qd = _cpow(q, d)
    qk = q ** k
    for name, val in (("Theta_q(q^d)", theta(qd, q)),
                      ("Theta_q(q^k u)", theta(qk * u, q))):
        if abs(val) < _RESONANCE_TOL:
            raise ResonanceError(f"{name} vanishes: resonant parameters")
    diag = (theta(qk, q) / theta(qd, q)
            * theta(qd * u, q) / theta(qk * u, q)
            * _cpow(zeta, -d + k))
    off = (_cpow(q, -k * d)
           * theta(_cpow(q, -d + k), q) / theta(_cpow(q, -d), q)
           * theta(u, q) / theta(qk * u, q)
           * _cpow(zeta, k))
    return diag, off


def braid_matrix(s: SpectralData, i: int, z, p: QParams) -> ConnectionMatrix:
    """Continuation matrix for crossing the wall |z_i| = |z_{i+1}| (1-based i).

    phi(eta, z)       = M[0][0] phi(eta, sigma z) + M[0][1] phi(s_i eta, sigma z)
    phi(s_i eta, z)   = M[1][0] phi(eta, sigma z) + M[1][1] phi(s_i eta, sigma z)
    """
    n = s.n
    if not 1 <= i <= n - 1:
        raise DomainError(f"i must lie in 1..{n - 1}")
    z = tuple(complex(c) for c in z)
    zeta = z[i - 1] / z[i]
    if zeta == 0:
        raise DomainError("z_i / z_{i+1} must be nonzero")
    eta = s.eta
    d = eta[i] - eta[i - 1]  # lambda_{w(i+1)} - lambda_{w(i)}
    diag0, off0 = _braid_coefficients(d, zeta, p)
    diag1, off1 = _braid_coefficients(-d, zeta, p)
    return ConnectionMatrix(
        i=i, w=s.w, ratio=zeta,
        entries=[[diag0, off0], [off1, diag1]],
    )


def braid_action(s_list, i: int, z, p: QParams) -> np.ndarray:
    """The full n!-dimensional continuation matrix for wall i, on the basis
    of solutions ordered as in s_list (a list of SpectralData sharing lam)."""
    dim = len(s_list)
    index = {sd.w: j for j, sd in enumerate(s_list)}
    M = np.zeros((dim, dim), dtype=complex)
    done = set()
    for j, sd in enumerate(s_list):
        if j in done:
            continue
        sd_swap = sd.swap(i - 1)
        j2 = index[sd_swap.w]
        cm = braid_matrix(sd, i, z, p)
        M[j, j] = cm.entries[0][0]
        M[j, j2] = cm.entries[0][1]
        M[j2, j] = cm.entries[1][0]
        M[j2, j2] = cm.entries[1][1]
        done.update((j, j2))
    return M


def verify_braid_relations(s: SpectralData, p: QParams, z) -> dict:
    """Check the braid relation and double-crossing on the n!-dim basis.

    For n=3 assembles the 6x6 matrices for the two walls along both
    reduced words of the longest element and compares the products; for
    any n checks that crossing wall 1 forth and back is the identity.
    Returns a report with the max deviations.
    """
    n = s.n
    z = tuple(complex(c) for c in z)
    basis = [SpectralData(n=n, lam=s.lam, w=w, k=s.k)
             for w in itertools.permutations(range(n))]
    report = {}

    # double crossing: continue across wall 1 and back
    M1 = braid_action(basis, 1, z, p)
    zs = _swap_point(z, 1)
    M1_back = braid_action(basis, 1, zs, p)
    dim = len(basis)
    report["double_crossing"] = float(
        np.max(np.abs(M1 @ M1_back - np.eye(dim))))

    if n == 3:
        # sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2 along consistent points
        def path(walls):
            pt = z
            total = np.eye(dim, dtype=complex)
            for i in walls:
                total = total @ braid_action(basis, i, pt, p)
                pt = _swap_point(pt, i)
            return total, pt

        A, ptA = path([1, 2, 1])
        B, ptB = path([2, 1, 2])
        assert ptA == ptB
        scale = max(np.max(np.abs(A)), np.max(np.abs(B)))
        report["braid_relation"] = float(np.max(np.abs(A - B)) / scale)
    return report


def _swap_point(z, i: int):
    z = list(z)
    z[i - 1], z[i] = z[i], z[i - 1]
    return tuple(z)


@dataclass
class BoltzmannWeights:
    """Face weights for exchanging two adjacent vertex insertions."""

    mu_ij: complex
    v: complex
    r1: complex
    w_cross: complex  # exchanges the two column states
    w_same: complex   # keeps the two column states

    def matrix(self, other: "BoltzmannWeights") -> np.ndarray:
        """2x2 exchange matrix pairing this weight set (mu_ij) with the
        reversed pair (mu_ji = -mu_ij)."""
        return np.array([[self.w_same, self.w_cross],
                         [other.w_cross, other.w_same]], dtype=complex)


def boltzmann_r1(v: complex, xr: XRParams, n: int) -> complex:
    """Common prefactor r_1(v) = z^((r-1)/r (n-1)/n) g_1(1/z)/g_1(z), z=x^2v."""
    x, r = xr.x, xr.r
    z = _cpow(x, 2.0 * v)
    return (_cpow(z, (r - 1.0) / r * (n - 1.0) / n)
            * g1(1.0 / z, x, r, n) / g1(z, x, r, n))


def boltzmann_w(mu_ij: complex, v: complex, xr: XRParams,
                n: int) -> BoltzmannWeights:
    """The two face weights sharing the r_1(v) prefactor:

    w_cross = r1 [v][mu_ij - 1] / ([v-1][mu_ij])
    w_same  = r1 [v - mu_ij][1] / ([v-1][mu_ij])
    """
    br = lambda u: bracket_v(u, xr)
    den1 = br(v - 1.0)
    den2 = br(mu_ij)
    if abs(den1) < _RESONANCE_TOL or abs(den2) < _RESONANCE_TOL:
        raise ResonanceError("bracket vanishes in a weight denominator")
    r1 = boltzmann_r1(v, xr, n)
    w_cross = r1 * br(v) * br(mu_ij - 1.0) / (den1 * den2)
    w_same = r1 * br(v - mu_ij) * br(1.0) / (den1 * den2)
    return BoltzmannWeights(mu_ij=mu_ij, v=v, r1=r1,
                            w_cross=w_cross, w_same=w_same)


def boltzmann_exchange_matrix(mu_ij: complex, v: complex, xr: XRParams,
                              n: int) -> np.ndarray:
    """The 2x2 exchange matrix at spectral separation v."""
    wij = boltzmann_w(mu_ij, v, xr, n)
    wji = boltzmann_w(-mu_ij, v, xr, n)
    return wij.matrix(wji)
