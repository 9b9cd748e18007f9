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

#ifndef THZQKD_ORACLE_HPP
#define THZQKD_ORACLE_HPP

#include "gaussian_qkd.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>

namespace thzqkd::oracle
{
    using Matrix6cd = Eigen::Matrix<cdouble, 6, 6>;

    // Covariance over (x, p) of the modes Q_b, e_out, e_qm, ordered
    // (Qb_x, Qb_p, eout_x, eout_p, eqm_x, eqm_p)
    struct JointCov
    {
        Matrix6cd k;

        Eigen::Matrix4cd eve() const { return k.bottomRightCorner<4, 4>(); }
        double bob_variance() const { return k(0, 0).real(); }
    };

    inline Eigen::Matrix4cd omega4()
    {
        Eigen::Matrix4cd w = Eigen::Matrix4cd::Zero();
        w(0, 1) = w(2, 3) = 1.0;
        w(1, 0) = w(3, 2) = -1.0;
        return w;
    }

    // Linear relations of each mode in the inputs (a, e_in, e_qm)
    inline std::array<Eigen::Vector3cd, 3> mode_relations(AncillaCase c, const BranchParams &b)
    {
        const cdouble e = std::polar(1.0, b.phi);
        const cdouble alpha = std::sqrt(b.beta_g * b.beta_f) * e;
        const cdouble gamma = std::sqrt(1.0 - b.beta_f) + std::sqrt(b.beta_f * (1.0 - b.beta_g)) * e;
        const cdouble btilde = std::sqrt(b.beta_f) - std::sqrt((1.0 - b.beta_g) * (1.0 - b.beta_f)) * e;

        Eigen::Vector3cd qb, eout, eqm(0.0, 0.0, 1.0);
        switch (c)
        {
        case AncillaCase::Direct:
            qb << std::sqrt(b.beta_d), std::sqrt(1.0 - b.beta_d), 0.0;
            eout << -std::sqrt(1.0 - b.beta_d), std::sqrt(b.beta_d), 0.0;
            break;
        case AncillaCase::AliceRis:
            qb << alpha, gamma, 0.0;
            eout << -std::sqrt(1.0 - b.beta_g), std::sqrt(b.beta_g), 0.0;
            break;
        case AncillaCase::RisBob:
            qb << alpha, gamma, 0.0;
            eout << -std::sqrt((1.0 - b.beta_f) * b.beta_g) * e, btilde, 0.0;
            break;
        }
        return {qb, eout, eqm};
    }

    inline JointCov joint_cov(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const auto modes = mode_relations(c, b);
        const double s = std::sqrt(n.v_e * n.v_e - 1.0);
        JointCov j;
        j.k.setZero();
        for (int q = 0; q < 2; ++q)
        {
            const double sign = q == 0 ? 1.0 : -1.0;
            Eigen::Matrix3cd in;
            in << n.v_a, 0.0, 0.0,
                0.0, n.v_e, sign * s,
                0.0, sign * s, n.v_e;
            for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v)
                    j.k(2 * u + q, 2 * v + q) = modes[u].transpose() * in * modes[v].conjugate();
        }
        return j;
    }

    // |eig(j Omega K)| folded into the two symplectic eigenvalues, descending
    inline SymplecticPair numeric_symplectic_eigs(const Eigen::Matrix4cd &k)
    {
        const Eigen::Matrix4cd m = cdouble(0.0, 1.0) * omega4() * k;
        Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, false);
        if (es.info() != Eigen::Success)
            throw NumericError("numeric_symplectic_eigs: eigen solver failed");
        std::array<double, 4> mag;
        for (int i = 0; i < 4; ++i)
            mag[i] = std::abs(es.eigenvalues()[i]);
        std::sort(mag.begin(), mag.end(), std::greater<>());

        // Magnitudes come in pairs {l1, l1, l2, l2}
        constexpr double dedup_tol = 1e-7;
        if (std::abs(mag[0] - mag[1]) > dedup_tol * mag[0] || std::abs(mag[2] - mag[3]) > dedup_tol * std::max(mag[2], 1e-300))
            throw NumericError("numeric_symplectic_eigs: eigenvalue magnitudes are not paired");
        return {0.5 * (mag[0] + mag[1]), 0.5 * (mag[2] + mag[3])};
    }

    // Same spectrum via the Hermitian matrix K^{1/2} (j Omega) K^{1/2}; needs K positive definite
    inline SymplecticPair hermitian_symplectic_eigs(const Eigen::Matrix4cd &k)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ek(k);
        if (ek.info() != Eigen::Success || ek.eigenvalues().minCoeff() <= 0.0)
            throw NumericError("hermitian_symplectic_eigs: covariance not positive definite");
        const Eigen::Matrix4cd root = ek.operatorSqrt();
        const Eigen::Matrix4cd m = root * (cdouble(0.0, 1.0) * omega4()) * root;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericError("hermitian_symplectic_eigs: eigen solver failed");
        const auto &ev = es.eigenvalues(); // ascending: -l1, -l2, l2, l1
        return {0.5 * (ev[3] - ev[0]), 0.5 * (ev[2] - ev[1])};
    }

    // Schur complement of Q_b's x-quadrature in the joint covariance
    inline Eigen::Matrix4cd conditional_cov_oracle(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        const JointCov j = joint_cov(c, b, n);
        const double vb = j.bob_variance();
        if (!(vb > 0.0))
            throw NumericError("conditional_cov_oracle: zero conditioning variance");
        const Eigen::Vector4cd w = j.k.block<4, 1>(2, 0);
        return j.eve() - w * w.adjoint() / vb;
    }

    struct OracleSpectrum
    {
        SymplecticPair unconditional;
        SymplecticPair conditional;
    };

    inline OracleSpectrum oracle_spectrum(AncillaCase c, const BranchParams &b, const NoiseModel &n)
    {
        return {numeric_symplectic_eigs(joint_cov(c, b, n).eve()),
                numeric_symplectic_eigs(conditional_cov_oracle(c, b, n))};
    }
}

#endif
