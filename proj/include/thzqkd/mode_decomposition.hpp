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

#ifndef THZQKD_MODE_DECOMPOSITION_HPP
#define THZQKD_MODE_DECOMPOSITION_HPP

#include "channel_model.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <vector>

namespace thzqkd
{
    // Thin SVD of one link: H = u * diag(sv) * v^H. u and v have min(R,T) orthonormal columns.
    struct SvdBundle
    {
        CMatrix u;
        Eigen::VectorXd sv;   // singular values, descending
        CMatrix v;
        Eigen::VectorXd s;    // residual diagonal: sqrt(1 - beta_i) for i < rank, 1 after
        Eigen::VectorXd beta; // squared singular values, descending
        int rank = 0;

        Eigen::MatrixXd d() const { return sv.asDiagonal(); }
    };

    struct BranchParams
    {
        double beta_d = 0.0;
        double beta_g = 0.0;
        double beta_f = 0.0;
        double phi = 0.0;
        cdouble alpha;
        cdouble gamma;
        cdouble beta_f_tilde;
        int branch_index = 1;
    };

    enum class ClampPolicy
    {
        Clamp,
        Strict
    };

    struct BranchSet
    {
        std::vector<BranchParams> branches;
        int clamp_count = 0;
    };

    inline constexpr double rank_threshold = 1e-12;

    inline SvdBundle decompose_one(const CMatrix &h)
    {
        if (!h.allFinite())
            throw InvalidInput("decompose: channel matrix has non-finite entries");

        Eigen::BDCSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success)
            throw NumericError("decompose: SVD did not converge");

        SvdBundle b;
        b.u = svd.matrixU();
        b.v = svd.matrixV();
        b.sv = svd.singularValues();
        b.beta = b.sv.array().square();

        const double top = b.sv.size() ? b.sv[0] : 0.0;
        for (Eigen::Index i = 0; i < b.sv.size(); ++i)
            if (b.sv[i] > 0.0 && b.sv[i] > rank_threshold * top)
                ++b.rank;

        b.s = Eigen::VectorXd::Ones(b.sv.size());
        for (int i = 0; i < b.rank; ++i)
            b.s[i] = std::sqrt(std::max(0.0, 1.0 - b.beta[i]));
        return b;
    }

    inline std::array<SvdBundle, 3> decompose(const ChannelTriple &t)
    {
        return {decompose_one(t.h_d), decompose_one(t.h_g), decompose_one(t.h_f)};
    }

    // Per-branch coefficients of the cascaded beamsplitter model for given transmissivities
    inline BranchParams make_branch(double beta_d, double beta_g, double beta_f, double phi, int index = 1)
    {
        BranchParams b;
        b.beta_d = beta_d;
        b.beta_g = beta_g;
        b.beta_f = beta_f;
        b.phi = phi;
        b.branch_index = index;
        const cdouble e = std::polar(1.0, phi);
        b.alpha = std::sqrt(beta_g * beta_f) * e;
        b.gamma = std::sqrt(1.0 - beta_f) + std::sqrt(beta_f * (1.0 - beta_g)) * e;
        b.beta_f_tilde = std::sqrt(beta_f) - std::sqrt((1.0 - beta_g) * (1.0 - beta_f)) * e;
        return b;
    }

    // Number of parallel branches: the direct link, or the RIS cascade where both hops carry the mode.
    inline int branch_count(const std::array<SvdBundle, 3> &b)
    {
        return std::max(b[0].rank, std::min(b[1].rank, b[2].rank));
    }

    inline BranchSet branch_params(const std::array<SvdBundle, 3> &bundles, const RisGeometry &ris,
                                   ClampPolicy policy = ClampPolicy::Clamp)
    {
        BranchSet out;
        const int r = branch_count(bundles);
        const double phi = fold_phase(ris.common_phase);
        out.branches.reserve(r);

        auto pick = [&](const SvdBundle &sb, int i) -> double
        {
            if (i >= sb.rank)
                return 0.0;
            double beta = sb.beta[i];
            if (beta > 1.0)
            {
                if (policy == ClampPolicy::Strict)
                    throw PhysicalityError("branch_params: transmissivity " + std::to_string(beta) + " exceeds 1");
                ++out.clamp_count;
                beta = 1.0;
            }
            return beta;
        };

        for (int i = 0; i < r; ++i)
        {
            const double bd = pick(bundles[0], i);
            const double bg = pick(bundles[1], i);
            const double bf = pick(bundles[2], i);
            out.branches.push_back(make_branch(bd, bg, bf, phi, i + 1));
        }
        return out;
    }
}

#endif
