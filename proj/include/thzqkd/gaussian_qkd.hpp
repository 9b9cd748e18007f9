// SPDX-License-Identifier: Apache-2.0
// ------------------------------------------------------------------------
// thzqkd - secret key rate of RIS-assisted THz MIMO CV-QKD links
// Copyright (C) 2026 The thzqkd authors
// All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef THZQKD_GAUSSIAN_QKD_HPP
#define THZQKD_GAUSSIAN_QKD_HPP

#include "mode_decomposition.hpp"

#include <Eigen/Dense>
#include <array>
#include <string>
#include <tuple>
#include <vector>

namespace thzqkd
{
    // Which of Eve's three ancilla pairs is kept in memory
    enum class AncillaCase
    {
        Direct,   // d: Alice-Bob link
        AliceRis, // g: Alice-RIS hop
        RisBob    // f: RIS-Bob hop
    };

    enum class BobPath
    {
        Direct,
        Ris
    };

    inline const char *case_tag(AncillaCase c)
    {
        return c == AncillaCase::Direct ? "d" : (c == AncillaCase::AliceRis ? "g" : "f");
    }

    inline AncillaCase parse_case(const std::string &s)
    {
        if (s == "d")
            return AncillaCase::Direct;
        if (s == "g")
            return AncillaCase::AliceRis;
        if (s == "f")
            return AncillaCase::RisBob;
        throw InvalidInput("unknown ancilla case '" + s + "' (expected d, g or f)");
    }

    struct NoiseModel
    {
        double n_bar = 0.0;
        double v_o = 1.0;
        double v_a = 1.0;
        double v_e = 1.0;
        double v_s = 0.0;
    };

    struct BobVariances
    {
        double v_b_d;
        double v_b_ris;
        double v_b_d_cond;
        double v_b_ris_cond;
    };

    // Two-mode covariance with Pauli-Z coupling, modes ordered (x_out, p_out, x_qm, p_qm)
    struct TwoModeCov
    {
        double v_out = 1.0;
        double v_e = 1.0;
        cdouble v_corr;

        Eigen::Matrix4cd realize() const
        {
            Eigen::Matrix4cd k = Eigen::Matrix4cd::Zero();
            k(0, 0) = k(1, 1) = v_out;
            k(2, 2) = k(3, 3) = v_e;
            k(0, 2) = v_corr;
            k(1, 3) = -v_corr;
            k(2, 0) = std::conj(v_corr);
            k(3, 1) = -std::conj(v_corr);
            return k;
        }
    };

    // Eve's state conditioned on Bob's x-quadrature. Each block is diag(x, p).
    struct ConditionalCov
    {
        Eigen::Vector2cd a_block;
        Eigen::Vector2cd b_block;
        Eigen::Vector2cd c_block;
        double nabla_tilde = 0.0;
        double det_value = 0.0;

        Eigen::Matrix4cd realize() const
        {
            Eigen::Matrix4cd k = Eigen::Matrix4cd::Zero();
            for (int q = 0; q < 2; ++q)
            {
                k(q, q) = a_block[q];
                k(q + 2, q + 2) = b_block[q];
                k(q, q + 2) = c_block[q];
                k(q + 2, q) = std::conj(c_block[q]);
            }
            return k;
        }
    };

    struct SymplecticPair
    {
        double first;
        double second;
    };

    struct BranchRecord
    {
        int index = 1;
        double i_ab_direct = 0.0;
        double i_ab_ris = 0.0;
        double holevo = 0.0;
        std::array<double, 4> lambda{1.0, 1.0, 1.0, 1.0};
        double skr = 0.0;
        int sub_vacuum = 0; // eigenvalues below 1 - 1e-9, entropy clamped to 0
    };

    struct SkrWarnings
    {
        int clamp_count = 0;
        int sub_vacuum_count = 0;
        int negative_branches = 0;
    };

    struct SkrReport
    {
        std::vector<BranchRecord> branches;
        double total_skr = 0.0;
        AncillaCase ancilla_case = AncillaCase::Direct;
        SkrWarnings warnings;

        double holevo_total() const
        {
            double h = 0.0;
            for (const auto &b : branches)
                h += b.holevo;
            return h;
        }
    };

    inline constexpr double radicand_tolerance = 1e-9;
    inline constexpr double vacuum_tolerance = 1e-9;

    // ---------------------------------------------------------------- noise

    inline double thermal_occupation(double f_c, double t_e)
    {
        if (!(f_c > 0.0) || !(t_e > 0.0))
            throw InvalidInput("thermal_occupation: frequency and temperature must be > 0");
        const double x = constants::planck * f_c / (constants::boltzmann * t_e);
        if (x > 700.0)
            return 0.0;
        return 1.0 / std::expm1(x);
    }

    inline NoiseModel make_noise_model(double f_c, double t_e, double v_s, double v_e)
    {
        if (!(v_s > 0.0))
            throw InvalidInput("modulation variance must be > 0");
        if (!(v_e >= 1.0))
            throw InvalidInput("Eve's EPR variance must be >= 1");
        NoiseModel n;
        n.n_bar = thermal_occupation(f_c, t_e);
        n.v_o = 2.0 * n.n_bar + 1.0;
        n.v_s = v_s;
        n.v_a = v_s + n.v_o;
        n.v_e = v_e;
        return n;
    }

    inline NoiseModel make_noise_model(const Scenario &s)
    {
        return make_noise_model(s.carrier_frequency, s.temperature, s.modulation_variance, s.eve_variance);
    }

    // ------------------------------------------------------------ variances

    inline double pcos_term(const BranchParams &b)
    {
        return std::sqrt(b.beta_f * (1.0 - b.beta_f) * (1.0 - b.beta_g)) * std::cos(b.phi);
    }

    inline BobVariances bob_variances(const BranchParams &b, const NoiseModel &n)
    {
        const double a2 = std::norm(b.alpha);
        const double g2 = std::norm(b.gamma);
        return {b.beta_d * n.v_a + (1.0 - b.beta_d) * n.v_e, a2 * n.v_a + g2 * n.v_e,
                b.beta_d * n.v_o + (1.0 - b.beta_d) * n.v_e, a2 * n.v_o + g2 * n.v_e};
    }

    inline double eve_output_variance(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        switch (c)
        {
        case AncillaCase::Direct:
            return (1.0 - b.beta_d) * n.v_a + b.beta_d * n.v_e;
        case AncillaCase::AliceRis:
            return (1.0 - b.beta_g) * n.v_a + b.beta_g * n.v_e;
        default:
        {
            const double ve_coeff = (1.0 - b.beta_g) + b.beta_g * b.beta_f - 2.0 * pcos_term(b);
            return (1.0 - b.beta_f) * b.beta_g * n.v_a + ve_coeff * n.v_e;
        }
        }
    }

    inline TwoModeCov eve_cov(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const double s = std::sqrt(n.v_e * n.v_e - 1.0);
        TwoModeCov k;
        k.v_out = eve_output_variance(c, b, n);
        k.v_e = n.v_e;
        if (c == AncillaCase::Direct)
            k.v_corr = std::sqrt(b.beta_d) * s;
        else if (c == AncillaCase::AliceRis)
            k.v_corr = std::sqrt(b.beta_g) * s;
        else
            k.v_corr = b.beta_f_tilde * s;
        return k;
    }

    // -------------------------------------------------- symplectic spectrum

    // Clamp a radicand that is negative by rounding only
    template <class Real>
    Real checked_radicand(Real r, Real scale, const char *what)
    {
        if (r >= Real(0))
            return r;
        if (r > -Real(radicand_tolerance) * std::max(Real(1), std::abs(scale)))
            return Real(0);
        throw NumericError(std::string(what) + ": negative radicand " + std::to_string(double(r)));
    }

    template <class Real>
    struct SymplecticPairT
    {
        Real first;
        Real second;
    };

    // Roots of lambda^4 - nabla lambda^2 + det = 0. The small root is sqrt(det) / big
    // to avoid cancellation when the two roots are far apart.
    template <class Real>
    SymplecticPairT<Real> symplectic_roots(Real nabla, Real det)
    {
        const Real d = checked_radicand(det, nabla * nabla, "symplectic roots (det)");
        const Real disc = checked_radicand(nabla * nabla - Real(4) * d, nabla * nabla, "symplectic roots");
        const Real big2 = Real(0.5) * (nabla + std::sqrt(disc));
        if (!(big2 > Real(0)))
            throw NumericError("symplectic roots: non-positive eigenvalue");
        const Real big = std::sqrt(big2);
        return {big, std::sqrt(d) / big};
    }

    inline SymplecticPair symplectic_from_invariants(double nabla, double det)
    {
        const auto r = symplectic_roots<double>(nabla, det);
        return {r.first, r.second};
    }

    // Invariants of Eve's unconditioned two-mode state
    inline std::pair<double, double> eve_invariants(const TwoModeCov &k)
    {
        const double c2 = std::norm(k.v_corr);
        const double m = k.v_out * k.v_e - c2;
        return {k.v_out * k.v_out + k.v_e * k.v_e - 2.0 * c2, m * m};
    }

    namespace detail
    {
        // Branch and noise scalars promoted to Real
        template <class Real>
        struct Scalars
        {
            Real bd, bg, bf, c, P, G, bt2, va, vo, ve, s2;

            Scalars(const BranchParams &b, const NoiseModel &n)
                : bd(b.beta_d), bg(b.beta_g), bf(b.beta_f), c(std::cos(Real(b.phi))),
                  va(n.v_a), vo(n.v_o), ve(n.v_e)
            {
                P = std::sqrt(bf * (Real(1) - bf) * (Real(1) - bg));
                G = Real(1) - bg * bf + Real(2) * P * c;
                bt2 = Real(1) - bg + bg * bf - Real(2) * P * c;
                s2 = ve * ve - Real(1);
            }

            Real vout(AncillaCase k) const
            {
                if (k == AncillaCase::Direct)
                    return (Real(1) - bd) * va + bd * ve;
                if (k == AncillaCase::AliceRis)
                    return (Real(1) - bg) * va + bg * ve;
                return (Real(1) - bf) * bg * va + bt2 * ve;
            }

            Real vb(AncillaCase k) const
            {
                return k == AncillaCase::Direct ? bd * va + (Real(1) - bd) * ve : bg * bf * va + G * ve;
            }
        };
    }

    template <class Real>
    SymplecticPairT<Real> unconditional_eigs(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const detail::Scalars<Real> k(b, n);
        const Real one(1), half(0.5), four(4);
        if (c == AncillaCase::RisBob)
        {
            const Real vout = k.vout(c);
            const Real nabla = vout * vout + k.ve * k.ve - Real(2) * k.bt2 * k.s2;
            const Real sum = vout + k.ve;
            const Real root = std::sqrt(checked_radicand(sum * sum - four * k.bt2 * k.s2, sum * sum, "unconditional f"));
            const Real big = std::sqrt(half * (nabla + std::abs(vout - k.ve) * root));
            return {big, ((one - k.bf) * k.bg * k.va * k.ve + k.bt2) / big};
        }

        const Real beta = (c == AncillaCase::Direct) ? k.bd : k.bg;
        const Real t = one - beta;
        const Real nabla = t * t * (k.va * k.va + k.ve * k.ve) + Real(2) * beta * (one + t * k.va * k.ve);
        const Real sum = t * k.va + (one + beta) * k.ve;
        const Real root = std::sqrt(checked_radicand(sum * sum - four * beta * k.s2, sum * sum, "unconditional"));
        const Real big = std::sqrt(half * (nabla + std::abs(t * (k.va - k.ve)) * root));
        return {big, (t * k.va * k.ve + beta) / big};
    }

    // nabla-tilde and determinant of Eve's conditional state in closed form
    template <class Real>
    std::pair<Real, Real> conditional_invariants(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const detail::Scalars<Real> k(b, n);
        const Real one(1), two(2);
        const Real vb = k.vb(c), vout = k.vout(c);
        if (!(vb > Real(0)))
            throw NumericError("conditional state: zero conditioning variance");
        const Real va = k.va, ve = k.ve, s2 = k.s2, bg = k.bg, bf = k.bf, pc = k.P * k.c;

        if (c == AncillaCase::Direct)
        {
            const Real bd = k.bd, t = one - bd;
            return {(va * ve * vout + ve * (t + bd * va * ve) - two * bd * s2 * va) / vb,
                    (t * va * ve + bd) * va / vb};
        }
        if (c == AncillaCase::AliceRis)
        {
            const Real ax = one - bg + bg * bf + two * pc;
            const Real xblock = bg * bf * ax * va +
                                (one - bg + bg * bg * bf * (one - bf) + two * (two - bg) * pc + Real(4) * pc * pc) * ve;
            return {(ax * va * ve * vout + ve * (k.G + bg * bf * va * ve) - two * bg * (bf + pc) * s2 * va) / vb,
                    ((one - bg) * va * ve + bg) * va * xblock / (vb * vb)};
        }
        return {(bg * va * ve * vout + ve * (bg * bf * va * ve + k.G) - two * bg * (bf - pc) * s2 * va) / vb,
                (bg * va / vb) * ((one - bf) * bg * va * ve + k.bt2)};
    }

    template <class Real>
    SymplecticPairT<Real> conditional_eigs(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const auto [nabla, det] = conditional_invariants<Real>(c, b, n);
        if (c != AncillaCase::Direct)
            return symplectic_roots(nabla, det);

        const detail::Scalars<Real> k(b, n);
        const Real t = Real(1) - k.bd, va = k.va, ve = k.ve;
        const Real big2 = (t * (va * va + Real(1)) * ve + Real(2) * k.bd * va + t * ve * (va * va - Real(1))) /
                          (Real(2) * k.vb(c));
        const Real big = std::sqrt(big2);
        return {big, std::sqrt(checked_radicand(det, big2, "conditional d")) / big};
    }

    inline SymplecticPair symplectic_eigs_unconditional(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const auto r = unconditional_eigs<double>(c, b, n);
        return {r.first, r.second};
    }

    inline ConditionalCov conditional_cov(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const double va = n.v_a, ve = n.v_e, s2 = ve * ve - 1.0, s = std::sqrt(s2);
        const detail::Scalars<double> k(b, n);
        const double vb = k.vb(c), vout = k.vout(c);

        ConditionalCov out;
        std::tie(out.nabla_tilde, out.det_value) = conditional_invariants<double>(c, b, n);
        if (c == AncillaCase::Direct)
        {
            const double bd = b.beta_d;
            out.a_block = {va * ve / vb, vout};
            out.b_block = {(1.0 - bd + bd * va * ve) / vb, ve};
            out.c_block = {va * std::sqrt(bd * s2) / vb, -std::sqrt(bd * s2)};
            return out;
        }

        const double bg = b.beta_g, bf = b.beta_f;
        const double bx = (k.G + bg * bf * va * ve) / vb;
        if (c == AncillaCase::AliceRis)
        {
            const cdouble cx = (bf + k.P * std::polar(1.0, -b.phi)) * std::sqrt(bg * s2) * va / vb;
            out.a_block = {(1.0 - bg + bg * bf + 2.0 * k.P * k.c) * va * ve / vb, vout};
            out.b_block = {bx, ve};
            out.c_block = {cx, -std::sqrt(bg * s2)};
            return out;
        }
        out.a_block = {bg * va * ve / vb, vout};
        out.b_block = {bx, ve};
        out.c_block = {bg * std::sqrt(bf) * s * va / vb, -b.beta_f_tilde * s};
        return out;
    }

    // Invariants recomputed from the blocks: det A + det B + 2 Re(c_x c_p) and the block determinant
    inline std::pair<double, double> block_invariants(const ConditionalCov &k)
    {
        const double ax = k.a_block[0].real(), ap = k.a_block[1].real();
        const double bx = k.b_block[0].real(), bp = k.b_block[1].real();
        const double nabla = ax * ap + bx * bp + 2.0 * std::real(k.c_block[0] * k.c_block[1]);
        const double det = (ax * bx - std::norm(k.c_block[0])) * (ap * bp - std::norm(k.c_block[1]));
        return {nabla, det};
    }

    inline SymplecticPair symplectic_eigs_conditional(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const auto r = conditional_eigs<double>(c, b, n);
        return {r.first, r.second};
    }

    // ------------------------------------------------------------- entropy

    template <class Real>
    Real holevo_h(Real lambda)
    {
        if (!(lambda > Real(1)))
            return Real(0);
        const Real eps = lambda - Real(1);
        const Real ln2 = std::log(Real(2));
        if (eps < Real(1e-8))
        {
            const Real x = Real(0.5) * eps;
            return (x + Real(0.5) * x * x - x * std::log(x)) / ln2;
        }
        const Real a = Real(0.5) * (lambda + Real(1)), m = Real(0.5) * eps;
        return a * std::log2(a) - m * std::log2(m);
    }

    inline double holevo_h(double lambda) { return holevo_h<double>(lambda); }

    namespace detail
    {
        // u log2 u - v log2 v for u, v >= 0, accurate when u ~ v
        template <class Real>
        Real xlogx_diff(Real u, Real v)
        {
            if (u == v)
                return Real(0);
            if (v == Real(0))
                return u * std::log2(u);
            if (u == Real(0))
                return -v * std::log2(v);
            return (u - v) * std::log2(u) + v * std::log1p((u - v) / v) / std::log(Real(2));
        }
    }

    // h(a) - h(b) without cancellation between two large entropies
    template <class Real>
    Real holevo_h_diff(Real a, Real b)
    {
        const Real one(1), half(0.5);
        a = std::max(a, one);
        b = std::max(b, one);
        if (a - one < Real(1e-8) || b - one < Real(1e-8))
            return holevo_h(a) - holevo_h(b);
        return detail::xlogx_diff(half * (a + one), half * (b + one)) - detail::xlogx_diff(half * (a - one), half * (b - one));
    }

    inline double holevo_h_diff(double a, double b) { return holevo_h_diff<double>(a, b); }

    inline double mutual_info_ab(BobPath p, const BranchParams &b, const NoiseModel &n)
    {
        using R = long double;
        const detail::Scalars<R> k(b, n);
        const R gain = (p == BobPath::Direct) ? k.bd : k.bg * k.bf;
        if (gain == R(0))
            return 0.0;
        const R cond = (p == BobPath::Direct) ? k.bd * k.vo + (R(1) - k.bd) * k.ve : gain * k.vo + k.G * k.ve;
        return double(R(0.5) * std::log1p(gain * (k.va - k.vo) / cond) / std::log(R(2)));
    }

    struct HolevoTerms
    {
        std::array<double, 4> lambda;
        double holevo;
        int sub_vacuum;
    };

    // Spectrum and entropies evaluated in extended precision
    inline HolevoTerms holevo_terms(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        using R = long double;
        const auto u = unconditional_eigs<R>(c, b, n);
        const auto k = conditional_eigs<R>(c, b, n);
        HolevoTerms t;
        t.lambda = {double(u.first), double(u.second), double(k.first), double(k.second)};
        t.sub_vacuum = 0;
        for (R l : {u.first, u.second, k.first, k.second})
            if (l < R(1) - R(vacuum_tolerance))
                ++t.sub_vacuum;
        t.holevo = double(holevo_h_diff(u.first, k.first) + holevo_h_diff(u.second, k.second));
        return t;
    }

    inline double holevo_info(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        return holevo_terms(c, b, n).holevo;
    }

    // ----------------------------------------------------------- key rate

    inline BranchRecord branch_skr(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        BranchRecord r;
        r.index = b.branch_index;
        r.i_ab_direct = mutual_info_ab(BobPath::Direct, b, n);
        r.i_ab_ris = mutual_info_ab(BobPath::Ris, b, n);
        const auto t = holevo_terms(c, b, n);
        r.lambda = t.lambda;
        r.holevo = t.holevo;
        r.sub_vacuum = t.sub_vacuum;
        r.skr = r.i_ab_direct + r.i_ab_ris - r.holevo;
        return r;
    }

    inline SkrReport total_skr(AncillaCase c, const std::vector<BranchParams> &branches, const NoiseModel &n)
    {
        SkrReport rep;
        rep.ancilla_case = c;
        rep.branches.reserve(branches.size());
        for (const auto &b : branches)
        {
            rep.branches.push_back(branch_skr(c, b, n));
            const auto &r = rep.branches.back();
            rep.total_skr += r.skr;
            rep.warnings.sub_vacuum_count += r.sub_vacuum;
            if (r.skr < 0.0)
                ++rep.warnings.negative_branches;
        }
        return rep;
    }

    inline SkrReport total_skr(AncillaCase c, const BranchSet &set, const NoiseModel &n)
    {
        SkrReport rep = total_skr(c, set.branches, n);
        rep.warnings.clamp_count = set.clamp_count;
        return rep;
    }
}

#endif
