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

// Command line front end: skr, sweep, optimize-phase, max-distance, baseline, verify.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numeric or physicality error, 3 I/O error.

#include <thzqkd.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace thzqkd;

namespace
{
    struct Options
    {
        std::string config;
        std::string output;
        std::vector<std::string> overrides;
        std::uint64_t seed = 42;
        std::string cases = "d,g,f";
        std::string grid;
        bool strict = false;

        std::string variable = "distance";
        double resolution_deg = 0.5;
        double tolerance_m = 0.01;
        int draws = 1000;
        bool inject_fault = false;
        double verify_tolerance = 1e-8;
    };

    std::vector<AncillaCase> parse_cases(const std::string &s)
    {
        std::vector<AncillaCase> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ','))
        {
            const auto c = parse_case(tok);
            if (std::find(out.begin(), out.end(), c) != out.end())
                throw InvalidInput("case '" + tok + "' listed twice");
            out.push_back(c);
        }
        if (out.empty())
            throw InvalidInput("--cases needs at least one of d, g, f");
        return out;
    }

    std::vector<double> parse_grid(const std::string &s)
    {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ':'))
            parts.push_back(tok);
        if (parts.size() != 3)
            throw InvalidInput("--grid expects start:stop:count, got '" + s + "'");
        const double a = detail::parse_double("--grid start", parts[0]);
        const double b = detail::parse_double("--grid stop", parts[1]);
        const int n = detail::parse_int("--grid count", parts[2]);
        if (n < 1 || (n > 1 && !(b > a)))
            throw InvalidInput("--grid needs count >= 1 and stop > start");
        return linspace(a, b, n);
    }

    SweepVariable parse_variable(const std::string &s)
    {
        if (s == "distance")
            return SweepVariable::DistanceAB;
        if (s == "ris-elements")
            return SweepVariable::RisElements;
        if (s == "phase")
            return SweepVariable::RisPhase;
        if (s == "frequency")
            return SweepVariable::CarrierFrequency;
        if (s == "antennas")
            return SweepVariable::AntennaCount;
        throw InvalidInput("unknown sweep variable '" + s + "' (distance, ris-elements, phase, frequency, antennas)");
    }

    Scenario scenario(const Options &o)
    {
        if (o.config.empty())
            return parse_scenario("", o.overrides);
        return load_scenario(o.config, o.overrides);
    }

    EvalOptions eval_options(const Options &o)
    {
        EvalOptions e;
        e.clamp = o.strict ? ClampPolicy::Strict : ClampPolicy::Clamp;
        return e;
    }

    void write_text(const Options &o, const std::string &text)
    {
        if (o.output.empty())
        {
            std::cout << text;
            return;
        }
        std::ofstream out(o.output, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text) || !out.flush())
            throw IoError("cannot write '" + o.output + "'");
    }

    void report_warnings(int clamp, int sub_vacuum, int errors = 0)
    {
        if (clamp > 0)
            std::cerr << "warning: " << clamp << " transmissivities above 1 clamped to 1\n";
        if (sub_vacuum > 0)
            std::cerr << "warning: " << sub_vacuum << " symplectic eigenvalues below 1, entropy set to 0\n";
        if (errors > 0)
            std::cerr << "warning: " << errors << " grid points failed, see the error column\n";
    }

    int cmd_skr(const Options &o)
    {
        const Scenario s = scenario(o);
        const BranchSet set = scenario_branches(s, eval_options(o));
        const NoiseModel n = make_noise_model(s);
        std::string csv = "case,branch,beta_d,beta_g,beta_f,i_ab_direct,i_ab_ris,holevo,lambda1,lambda2,lambda3,lambda4,skr\n";
        int sub = 0;
        for (AncillaCase c : parse_cases(o.cases))
        {
            const SkrReport rep = total_skr(c, set, n);
            sub += rep.warnings.sub_vacuum_count;
            for (std::size_t i = 0; i < rep.branches.size(); ++i)
            {
                const auto &r = rep.branches[i];
                const auto &b = set.branches[i];
                csv += std::string(case_tag(c)) + "," + std::to_string(r.index);
                for (double x : {b.beta_d, b.beta_g, b.beta_f, r.i_ab_direct, r.i_ab_ris, r.holevo, r.lambda[0],
                                 r.lambda[1], r.lambda[2], r.lambda[3], r.skr})
                    csv += "," + csv_number(x);
                csv += "\n";
            }
            csv += std::string(case_tag(c)) + ",total" + std::string(10, ',') + "," + csv_number(rep.total_skr) + "\n";
        }
        write_text(o, csv);
        report_warnings(set.clamp_count, sub);
        return 0;
    }

    int cmd_sweep(const Options &o)
    {
        SweepSpec spec;
        spec.base = scenario(o);
        spec.variable = parse_variable(o.variable);
        spec.grid = parse_grid(o.grid.empty() ? "1:100:100" : o.grid);
        spec.cases = parse_cases(o.cases);
        spec.options = eval_options(o);
        const SweepResult r = run_sweep(spec);
        write_text(o, to_csv(r));
        report_warnings(r.clamp_warnings, r.sub_vacuum_warnings, r.error_rows);
        return 0;
    }

    int cmd_baseline(const Options &o)
    {
        SweepSpec spec;
        spec.base = scenario(o);
        spec.grid = parse_grid(o.grid.empty() ? "1:100:100" : o.grid);
        spec.options = eval_options(o);
        const SweepResult r = no_ris_baseline(spec);
        write_text(o, to_csv(r));
        report_warnings(r.clamp_warnings, r.sub_vacuum_warnings, r.error_rows);
        return 0;
    }

    int cmd_optimize_phase(const Options &o)
    {
        const Scenario s = scenario(o);
        std::string csv = "case,phi_star_rad,phi_star_deg,skr_star\n";
        for (AncillaCase c : parse_cases(o.cases))
        {
            const auto p = optimal_phase(s, c, o.resolution_deg * constants::pi / 180.0, eval_options(o));
            csv += std::string(case_tag(c)) + "," + csv_number(p.phi_star) + "," +
                   csv_number(p.phi_star * 180.0 / constants::pi) + "," + csv_number(p.skr_star) + "\n";
        }
        write_text(o, csv);
        return 0;
    }

    int cmd_max_distance(const Options &o)
    {
        const Scenario s = scenario(o);
        const auto cases = parse_cases(o.cases);
        const auto grid = parse_grid(o.grid.empty() ? "1e12:15e12:29" : o.grid);
        std::string csv = "frequency_hz";
        for (AncillaCase c : cases)
            csv += std::string(",max_distance_m_") + case_tag(c);
        csv += "\n";
        for (double f : grid)
        {
            Scenario sf = s;
            set_carrier_frequency(sf, f);
            csv += csv_number(f);
            for (AncillaCase c : cases)
                csv += "," + csv_number(max_secure_distance(sf, c, o.tolerance_m, eval_options(o)));
            csv += "\n";
        }
        write_text(o, csv);
        return 0;
    }

    int cmd_verify(const Options &o)
    {
        VerifyOptions v;
        v.draws = o.draws;
        v.seed = o.seed;
        v.inject_fault = o.inject_fault;
        v.tolerance = o.verify_tolerance;
        const VerifyReport r = run_verification(v);
        if (r.checks.empty())
        {
            std::cout << "warning: no checks run (0 draws)\n";
            return 0;
        }
        std::printf("seed %llu, %d draws, tolerance %.1e\n", static_cast<unsigned long long>(v.seed), r.draws, v.tolerance);
        for (const auto &c : r.checks)
            std::printf("%-24s max deviation %.3e  %s\n", c.name.c_str(), c.max_deviation, c.passed ? "ok" : "FAILED");
        return r.passed() ? 0 : 2;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Secret key rate of RIS-assisted THz MIMO CV-QKD links"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--config", o.config, "Scenario file (key = value)");
    app.add_option("--output", o.output, "Output CSV path (stdout if omitted)");
    app.add_option("--set", o.overrides, "Override a config key, key=value (repeatable)");
    app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
    app.add_option("--cases", o.cases, "Ancilla cases, comma separated subset of d,g,f")->capture_default_str();
    app.add_option("--grid", o.grid, "Sweep grid start:stop:count");
    app.add_flag("--strict", o.strict, "Fail on transmissivities above 1 instead of clamping");

    auto *skr = app.add_subcommand("skr", "Per-branch and total key rate of one scenario");
    auto *sweep = app.add_subcommand("sweep", "Key rate over a parameter grid");
    sweep->add_option("--variable", o.variable, "distance, ris-elements, phase, frequency or antennas")->capture_default_str();
    auto *opt = app.add_subcommand("optimize-phase", "Optimal common RIS phase per case");
    opt->add_option("--resolution-deg", o.resolution_deg, "Grid resolution before refinement")->capture_default_str();
    auto *maxd = app.add_subcommand("max-distance", "Maximum secure distance over a carrier frequency grid (Hz)");
    maxd->add_option("--tolerance-m", o.tolerance_m, "Bisection tolerance")->capture_default_str();
    auto *base = app.add_subcommand("baseline", "Key rate without the RIS path over a distance grid");
    auto *ver = app.add_subcommand("verify", "Closed forms against the numeric oracle");
    ver->add_option("--draws", o.draws, "Number of random draws")->capture_default_str();
    ver->add_option("--tolerance", o.verify_tolerance, "Relative tolerance")->capture_default_str();
    ver->add_flag("--inject-fault", o.inject_fault, "Flip the sign of cos(phi) in the closed forms");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    try
    {
        if (*skr)
            return cmd_skr(o);
        if (*sweep)
            return cmd_sweep(o);
        if (*opt)
            return cmd_optimize_phase(o);
        if (*maxd)
            return cmd_max_distance(o);
        if (*base)
            return cmd_baseline(o);
        return cmd_verify(o);
    }
    catch (const InvalidInput &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const IoError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
