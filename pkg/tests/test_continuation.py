"""Tests for connection formulas, braiding matrices and Boltzmann weights."""

import cmath
import itertools

import numpy as np
import pytest

from qmacdonald import (QParams, ResonanceError, SpectralData, XRMode,
                        XRParams, ZoneError, boltzmann_exchange_matrix,
                        boltzmann_w, braid_action, braid_matrix, bracket_v,
                        evaluate, fq_connection, g1, leading_coefficient,
                        solve_coefficients, verify_braid_relations)

LAM3 = (0.31, -0.11, -0.20)


class TestFqConnection:
    def test_generic_annulus_points(self, p):
        for z in (0.7, 0.5 + 0.3j, 0.8 * cmath.exp(0.4j)):
            lhs, rhs = fq_connection(0.3, 0.7, 1.2, z, p)
            assert abs(lhs - rhs) < 1e-12 * abs(lhs)

    def test_ab_symmetry(self, p):
        _, r1 = fq_connection(0.3, 0.7, 1.2, 0.6, p)
        _, r2 = fq_connection(0.7, 0.3, 1.2, 0.6, p)
        assert abs(r1 - r2) < 1e-13 * abs(r1)

    def test_terminating_case(self, p):
        for b in (-2.0, -3.0):
            lhs, rhs = fq_connection(0.3, b, 1.2, 0.9, p)
            assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))

    def test_zone_guard(self, p):
        with pytest.raises(ZoneError):
            fq_connection(0.3, 0.7, 1.2, 1.8, p)


class TestBraidMatrix:
    def test_dual_zone_agreement_n2(self):
        # continue the series solutions across the wall and compare with
        # direct evaluation inside the overlap annulus
        p = QParams(q=0.5, k=0.3)
        lam = (0.27, -0.27)
        s = SpectralData.make(lam, p)
        ss = s.swap(0)
        sol = solve_coefficients(s, p, N=160)
        sol_s = solve_coefficients(ss, p, N=160)

        def phi(so, z):
            lead = leading_coefficient(so.spectral, p, "A")
            return lead * evaluate(so, z, max_ratio=1.2).value

        for ratio in (1.05 * cmath.exp(0.25j), 0.95 * cmath.exp(-0.2j)):
            z2 = 1.3 * cmath.exp(0.07j)
            z = (ratio * z2, z2)
            zs = (z[1], z[0])
            M = braid_matrix(s, 1, z, p).as_array()
            for row, so in ((0, sol), (1, sol_s)):
                lhs = phi(so, z)
                rhs = (M[row, 0] * phi(sol, zs) + M[row, 1] * phi(sol_s, zs))
                assert abs(lhs - rhs) < 1e-8 * abs(lhs)

    def test_entries_depend_on_ratio_only(self, p):
        s = SpectralData.make((0.27, -0.27), p)
        m1 = braid_matrix(s, 1, (0.9, 1.2), p).as_array()
        m2 = braid_matrix(s, 1, (1.8, 2.4), p).as_array()
        assert np.max(np.abs(m1 - m2)) < 1e-13

    def test_genericity_smoke(self, p):
        s = SpectralData.make(LAM3, p)
        for i in (1, 2):
            M = braid_matrix(s, i, (1.0, 1.7, 2.9), p).as_array()
            assert np.all(np.isfinite(M))
            assert np.all(np.abs(M) > 0)

    def test_resonant_ratio_rejected(self, p):
        # ratio q^{k-1} puts q^k/zeta on the theta zero lattice
        s = SpectralData.make((0.27, -0.27), p)
        with pytest.raises(ResonanceError):
            braid_matrix(s, 1, (p.q ** (p.k - 1.0), 1.0), p)


class TestBraidRelations:
    Z3 = (1.0 * cmath.exp(0.1j), 2.0 * cmath.exp(0.05j),
          4.0 * cmath.exp(0.15j))

    def test_double_crossing_n2(self, p):
        s = SpectralData.make((0.27, -0.27), p)
        report = verify_braid_relations(s, p, (1.0 * cmath.exp(0.2j), 3.0))
        assert report["double_crossing"] < 1e-8

    def test_braid_relation_n3(self, p):
        s = SpectralData.make(LAM3, p)
        report = verify_braid_relations(s, p, self.Z3)
        assert report["double_crossing"] < 1e-8
        assert report["braid_relation"] < 1e-6

    def test_action_is_permutation_block(self, p):
        s_list = [SpectralData(n=3, lam=LAM3, w=w, k=p.k)
                  for w in itertools.permutations(range(3))]
        M = braid_action(s_list, 1, self.Z3, p)
        # every row couples exactly the pair (w, sigma_1 w)
        for j, sd in enumerate(s_list):
            nz = np.flatnonzero(np.abs(M[j]) > 1e-13)
            assert len(nz) == 2


class TestBoltzmannWeights:
    def test_cross_vanishes_at_zero(self):
        xr = XRParams(x=0.85, r=2.5)
        w = boltzmann_w(0.61, 0.0, xr, 2)
        assert abs(w.w_cross) < 1e-12

    def test_factor_recomputation(self):
        xr = XRParams(x=0.85, r=2.5)
        v, mu = 0.23, 0.61
        w = boltzmann_w(mu, v, xr, 2)
        z = xr.x ** (2 * v)
        r1 = (z ** ((xr.r - 1) / xr.r * (2 - 1) / 2)
              * g1(1 / z, xr.x, xr.r, 2) / g1(z, xr.x, xr.r, 2))
        br = lambda u: bracket_v(u, xr)
        assert abs(w.r1 - r1) < 1e-12 * abs(r1)
        ref_cross = r1 * br(v) * br(mu - 1) / (br(v - 1) * br(mu))
        ref_same = r1 * br(v - mu) * br(1) / (br(v - 1) * br(mu))
        assert abs(w.w_cross - ref_cross) < 1e-12 * abs(ref_cross)
        assert abs(w.w_same - ref_same) < 1e-12 * abs(ref_same)

    def test_inversion(self, p):
        for mode in (XRMode.A, XRMode.B):
            xr = XRParams.from_qparams(p, mode)
            for mu, v in ((2.0, 0.37), (1.3 + 0.2j, -0.61), (3.1, 1.9)):
                m1 = boltzmann_exchange_matrix(mu, v, xr, 2)
                m2 = boltzmann_exchange_matrix(mu, -v, xr, 2)
                dev = np.max(np.abs(m2 @ m1 - np.eye(2)))
                assert dev < 1e-8

    def test_resonant_bracket_rejected(self):
        xr = XRParams(x=0.85, r=2.5)
        with pytest.raises(ResonanceError):
            boltzmann_w(0.61, 1.0, xr, 2)  # [v-1] = [0] = 0
