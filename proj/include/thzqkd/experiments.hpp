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

#ifndef THZQKD_EXPERIMENTS_HPP
#define THZQKD_EXPERIMENTS_HPP

#include "config.hpp"
#include "gaussian_qkd.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace thzqkd
{
    enum class SweepVariable
    {
        DistanceAB,       // meters
        RisElements,      // K
        RisPhase,         // radians
        CarrierFrequency, // hertz
        AntennaCount      // N_TX = N_RX
    };

    inline const char *variable_column(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::DistanceAB:
            return "distance_ab_m";
        case SweepVariable::RisElements:
            return "ris_elements";
        case SweepVariable::RisPhase:
            return "ris_phase_rad";
        case SweepVariable::CarrierFrequency:
            return "frequency_hz";
        default:
            return "antenna_count";
        }
    }

    // Evaluation knobs shared by sweeps and searches
    struct EvalOptions
    {
        ClampPolicy clamp = ClampPolicy::Clamp;
        bool remove_ris = false;                   // zero H_f
        std::function<void(BranchSet &)> branch_hook; // applied after decomposition
    };

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::DistanceAB;
        std::vector<double> grid;
        Scenario base = default_scenario();
        std::vector<AncillaCase> cases{AncillaCase::Direct, AncillaCase::AliceRis, AncillaCase::RisBob};
        bool geometry_rule = true; // d_AR = 0.4 d_AB, d_RB = 0.7 d_AB
        EvalOptions options;
    };

    struct SweepRow
    {
        double value = 0.0;
        std::vector<SkrReport> reports; // one per case, in SweepSpec::cases order
        std::string error;              // empty when the point evaluated cleanly
    };

    struct SweepResult
    {
        SweepVariable variable = SweepVariable::DistanceAB;
        std::vector<AncillaCase> cases;
        std::vector<SweepRow> rows;
        std::string scenario_hash;
        std::string timestamp; // left empty unless the caller stamps it
        int clamp_warnings = 0;
        int sub_vacuum_warnings = 0;
        int error_rows = 0;
    };

    // FNV-1a over the serialized scenario
    inline std::string scenario_hash(const Scenario &s)
    {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : serialize_scenario(s))
        {
            h ^= c;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    // Change the carrier keeping array and RIS spacings fixed in wavelengths
    inline void set_carrier_frequency(Scenario &s, double f)
    {
        if (!(f > 0.0))
            throw InvalidInput("carrier frequency must be > 0");
        const double ratio = s.carrier_frequency / f;
        s.carrier_frequency = f;
        s.tx.element_spacing *= ratio;
        s.rx.element_spacing *= ratio;
        s.ris.spacing_x *= ratio;
        s.ris.spacing_y *= ratio;
    }

    inline void set_ris_elements(Scenario &s, double value)
    {
        const long k = std::lround(value);
        if (k < 1 || std::abs(value - double(k)) > 1e-9)
            throw InvalidInput("RIS element count must be a positive integer");
        const long side = std::lround(std::sqrt(double(k)));
        if (side * side == k)
            s.ris.k_x = s.ris.k_y = int(side);
        else
        {
            s.ris.k_x = int(k);
            s.ris.k_y = 1;
        }
    }

    inline void apply_variable(Scenario &s, SweepVariable v, double value, bool geometry_rule = true)
    {
        switch (v)
        {
        case SweepVariable::DistanceAB:
            if (geometry_rule)
                apply_geometry_rule(s, value);
            else
            {
                if (!(value > 0.0))
                    throw InvalidInput("distance must be > 0");
                const double ratio = value / s.d_alice_bob;
                for (auto &p : s.multipaths_d)
                {
                    p.path_length *= ratio;
                    p.delay = p.path_length / constants::speed_of_light;
                }
                s.d_alice_bob = value;
            }
            break;
        case SweepVariable::RisElements:
            set_ris_elements(s, value);
            break;
        case SweepVariable::RisPhase:
            s.ris.common_phase = fold_phase(value);
            break;
        case SweepVariable::CarrierFrequency:
            set_carrier_frequency(s, value);
            break;
        case SweepVariable::AntennaCount:
        {
            const long n = std::lround(value);
            if (n < 1 || std::abs(value - double(n)) > 1e-9)
                throw InvalidInput("antenna count must be a positive integer");
            s.tx.element_count = s.rx.element_count = int(n);
            break;
        }
        }
    }

    // Channel -> decomposition -> branches
    inline BranchSet scenario_branches(const Scenario &s, const EvalOptions &opt = {})
    {
        ChannelTriple t = build_channels(s);
        if (opt.remove_ris)
            t.h_f.setZero();
        BranchSet set = branch_params(decompose(t), s.ris, opt.clamp);
        if (opt.branch_hook)
            opt.branch_hook(set);
        return set;
    }

    inline SkrReport evaluate_scenario(const Scenario &s, AncillaCase c, const EvalOptions &opt = {})
    {
        return total_skr(c, scenario_branches(s, opt), make_noise_model(s));
    }

    inline SweepResult run_sweep(const SweepSpec &spec)
    {
        if (spec.grid.empty())
            throw InvalidInput("run_sweep: empty grid");
        for (std::size_t i = 1; i < spec.grid.size(); ++i)
            if (!(spec.grid[i] > spec.grid[i - 1]))
                throw InvalidInput("run_sweep: grid must be strictly increasing");

        SweepResult res;
        res.variable = spec.variable;
        res.cases = spec.cases;
        res.scenario_hash = scenario_hash(spec.base);
        res.rows.resize(spec.grid.size());

        for (std::size_t i = 0; i < spec.grid.size(); ++i)
        {
            SweepRow &row = res.rows[i];
            row.value = spec.grid[i];
            try
            {
                Scenario s = spec.base;
                apply_variable(s, spec.variable, row.value, spec.geometry_rule);
                const BranchSet set = scenario_branches(s, spec.options);
                const NoiseModel n = make_noise_model(s);
                for (AncillaCase c : spec.cases)
                    row.reports.push_back(total_skr(c, set, n));
            }
            catch (const std::exception &e)
            {
                row.reports.clear();
                row.error = e.what();
            }
        }

        for (const auto &row : res.rows)
        {
            if (!row.error.empty())
                ++res.error_rows;
            if (!row.reports.empty())
                res.clamp_warnings += row.reports.front().warnings.clamp_count;
            for (const auto &r : row.reports)
                res.sub_vacuum_warnings += r.warnings.sub_vacuum_count;
        }
        return res;
    }

    inline std::vector<double> linspace(double a, double b, int count)
    {
        if (count < 1)
            throw InvalidInput("linspace: count must be >= 1");
        std::vector<double> g(count);
        for (int i = 0; i < count; ++i)
            g[i] = count == 1 ? a : a + (b - a) * double(i) / double(count - 1);
        return g;
    }

    // ------------------------------------------------------- phase search

    struct PhaseOptimum
    {
        double phi_star = 0.0;
        double skr_star = 0.0;
    };

    inline BranchSet with_phase(BranchSet set, double phi)
    {
        for (auto &b : set.branches)
            b = make_branch(b.beta_d, b.beta_g, b.beta_f, phi, b.branch_index);
        return set;
    }

    // Grid search on [0, pi] followed by golden-section refinement of the best bracket
    inline PhaseOptimum optimal_phase(const Scenario &base, AncillaCase c, double resolution,
                                      const EvalOptions &opt = {})
    {
        if (!(resolution > 0.0))
            throw InvalidInput("optimal_phase: resolution must be > 0");
        const BranchSet set = scenario_branches(base, opt);
        const NoiseModel n = make_noise_model(base);
        auto total = [&](double phi) { return total_skr(c, with_phase(set, phi), n).total_skr; };
        // The direct-path information does not depend on phi; leaving it out keeps
        // small phase-dependent terms from being absorbed by rounding.
        auto f = [&](double phi) {
            double v = 0.0;
            for (const auto &r : total_skr(c, with_phase(set, phi), n).branches)
                v += r.i_ab_ris - r.holevo;
            return v;
        };

        const int count = int(std::ceil(constants::pi / resolution)) + 1;
        const auto grid = linspace(0.0, constants::pi, count);
        int best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < count; ++i)
        {
            const double v = f(grid[i]);
            if (v > best_val)
            {
                best_val = v;
                best = i;
            }
        }
        if (count < 3)
            return {grid[best], total(grid[best])};

        const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = grid[std::max(best - 1, 0)], b = grid[std::min(best + 1, count - 1)];
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = f(x1), f2 = f(x2);
        while (b - a > 1e-10)
        {
            if (f1 > f2)
            {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = f(x1);
            }
            else
            {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = f(x2);
            }
        }
        const double x = 0.5 * (a + b);
        const double phi_star = f(x) > best_val ? x : grid[best];
        return {phi_star, total(phi_star)};
    }

    // ------------------------------------------------ maximum secure distance

    struct DistanceSearch
    {
        double lower = 0.1;   // m
        double upper = 1000.0; // m
        int scan_points = 400; // log-spaced
    };

    // Largest distance at which the key rate changes sign from positive to non-positive.
    // Returns 0 if no probe is positive and the upper bound if every probe is positive.
    inline double max_secure_distance(const Scenario &base, AncillaCase c, double tolerance,
                                      const EvalOptions &opt = {}, const DistanceSearch &range = {})
    {
        if (!(tolerance > 0.0) || !(range.lower > 0.0) || !(range.upper > range.lower) || range.scan_points < 2)
            throw InvalidInput("max_secure_distance: invalid search settings");

        auto f = [&](double d)
        {
            Scenario s = base;
            apply_geometry_rule(s, d);
            return evaluate_scenario(s, c, opt).total_skr;
        };

        const double ratio = std::log(range.upper / range.lower);
        std::vector<double> grid(range.scan_points), val(range.scan_points);
        for (int i = 0; i < range.scan_points; ++i)
        {
            grid[i] = range.lower * std::exp(ratio * double(i) / double(range.scan_points - 1));
            val[i] = f(grid[i]);
        }

        int last_pos = -1;
        for (int i = 0; i < range.scan_points; ++i)
            if (val[i] > 0.0)
                last_pos = i;
        if (last_pos < 0)
            return 0.0;
        if (last_pos == range.scan_points - 1)
            return range.upper;

        double lo = grid[last_pos], hi = grid[last_pos + 1];
        while (hi - lo > tolerance)
        {
            const double mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    // --------------------------------------------------------- baseline

    inline SweepResult no_ris_baseline(SweepSpec spec)
    {
        spec.cases = {AncillaCase::Direct};
        spec.options.remove_ris = true;
        return run_sweep(spec);
    }

    // Distance sweep 1..100 m
    inline SweepResult no_ris_baseline(const Scenario &base)
    {
        SweepSpec spec;
        spec.base = base;
        spec.grid = linspace(1.0, 100.0, 100);
        return no_ris_baseline(spec);
    }
}

#endif
