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

#ifndef THZQKD_VERIFY_HPP
#define THZQKD_VERIFY_HPP

#include "oracle.hpp"

#include <random>
#include <string>
#include <vector>

namespace thzqkd
{
    struct VerifyOptions
    {
        int draws = 1000;
        std::uint64_t seed = 42;
        double tolerance = 1e-8;
        bool inject_fault = false; // flips the sign of cos(phi) in the closed forms
        double frequency = 10e12;
        double temperature = 300.0;
    };

    struct VerifyCheck
    {
        std::string name;
        double max_deviation = 0.0;
        bool passed = true;
    };

    struct VerifyReport
    {
        std::vector<VerifyCheck> checks;
        int draws = 0;
        bool passed() const
        {
            for (const auto &c : checks)
                if (!c.passed)
                    return false;
            return true;
        }
    };

    struct RandomDraw
    {
        BranchParams branch;
        NoiseModel noise;
    };

    // beta in [0,1]^3, phi in [0, 2pi), V_s in [1, 2000], V_e in [1, 20]
    class DrawGenerator
    {
    public:
        DrawGenerator(std::uint64_t seed, double f_c = 10e12, double t_e = 300.0)
            : rng_(seed), f_c_(f_c), t_e_(t_e) {}

        RandomDraw next()
        {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double bd = unit(rng_), bg = unit(rng_), bf = unit(rng_);
            const double phi = constants::two_pi * unit(rng_);
            const double vs = 1.0 + 1999.0 * unit(rng_);
            const double ve = 1.0 + 19.0 * unit(rng_);
            return {make_branch(bd, bg, bf, phi), make_noise_model(f_c_, t_e_, vs, ve)};
        }

    private:
        std::mt19937_64 rng_;
        double f_c_, t_e_;
    };

    inline double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

    inline double matrix_dev(const Eigen::Matrix4cd &a, const Eigen::Matrix4cd &b)
    {
        return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
    }

    // Closed forms against the brute-force oracle on seeded random draws
    inline VerifyReport run_verification(const VerifyOptions &opt)
    {
        VerifyReport rep;
        rep.draws = std::max(opt.draws, 0);
        if (rep.draws == 0)
            return rep;

        const AncillaCase cases[3] = {AncillaCase::Direct, AncillaCase::AliceRis, AncillaCase::RisBob};
        std::vector<VerifyCheck> checks;
        for (AncillaCase c : cases)
        {
            checks.push_back({std::string("unconditional_eigs_") + case_tag(c)});
            checks.push_back({std::string("conditional_eigs_") + case_tag(c)});
            checks.push_back({std::string("conditional_blocks_") + case_tag(c)});
        }

        DrawGenerator gen(opt.seed, opt.frequency, opt.temperature);
        for (int i = 0; i < rep.draws; ++i)
        {
            const RandomDraw d = gen.next();
            BranchParams closed = d.branch;
            if (opt.inject_fault)
                closed = make_branch(closed.beta_d, closed.beta_g, closed.beta_f, constants::pi - closed.phi);

            for (int ci = 0; ci < 3; ++ci)
            {
                const AncillaCase c = cases[ci];
                const auto o = oracle::oracle_spectrum(c, d.branch, d.noise);
                const auto u = symplectic_eigs_unconditional(c, closed, d.noise);
                const auto k = symplectic_eigs_conditional(c, closed, d.noise);
                const Eigen::Matrix4cd sc = oracle::conditional_cov_oracle(c, d.branch, d.noise);

                auto &cu = checks[3 * ci], &ck = checks[3 * ci + 1], &cb = checks[3 * ci + 2];
                cu.max_deviation = std::max({cu.max_deviation, rel_dev(u.first, o.unconditional.first),
                                             rel_dev(u.second, o.unconditional.second)});
                ck.max_deviation = std::max({ck.max_deviation, rel_dev(k.first, o.conditional.first),
                                             rel_dev(k.second, o.conditional.second)});
                cb.max_deviation =
                    std::max(cb.max_deviation, matrix_dev(conditional_cov(c, closed, d.noise).realize(), sc));
            }
        }
        for (auto &c : checks)
            c.passed = c.max_deviation <= opt.tolerance;
        rep.checks = std::move(checks);
        return rep;
    }
}

#endif
