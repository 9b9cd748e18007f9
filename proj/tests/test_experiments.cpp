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

#include <thzqkd/experiments.hpp>

#include <gtest/gtest.h>

using namespace thzqkd;

TEST(Grid, Linspace)
{
    const auto g = linspace(1.0, 100.0, 100);
    ASSERT_EQ(g.size(), 100u);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_EQ(g.back(), 100.0);
    EXPECT_DOUBLE_EQ(g[1], 2.0);
    EXPECT_EQ(linspace(3.0, 4.0, 1).size(), 1u);
}

TEST(Variables, RisElementLayout)
{
    Scenario s = default_scenario();
    set_ris_elements(s, 400);
    EXPECT_EQ(s.ris.k_x, 20);
    EXPECT_EQ(s.ris.k_y, 20);
    set_ris_elements(s, 7);
    EXPECT_EQ(s.ris.k_x, 7);
    EXPECT_EQ(s.ris.k_y, 1);
    EXPECT_THROW(set_ris_elements(s, 0), InvalidInput);
}

TEST(Variables, FrequencyKeepsSpacingInWavelengths)
{
    Scenario s = default_scenario();
    set_carrier_frequency(s, 2e12);
    EXPECT_NEAR(s.tx.element_spacing / s.wavelength(), 0.5, 1e-12);
    EXPECT_NEAR(s.ris.spacing_x / s.wavelength(), 0.5, 1e-12);
}

TEST(Variables, AntennaCountMustBeInteger)
{
    Scenario s = default_scenario();
    apply_variable(s, SweepVariable::AntennaCount, 64);
    EXPECT_EQ(s.tx.element_count, 64);
    EXPECT_THROW(apply_variable(s, SweepVariable::AntennaCount, 2.5), InvalidInput);
}

TEST(Sweep, DistanceRowsAndTrend)
{
    SweepSpec spec;
    spec.grid = linspace(1.0, 40.0, 14);
    const SweepResult r = run_sweep(spec);
    ASSERT_EQ(r.rows.size(), 14u);
    EXPECT_EQ(r.error_rows, 0);
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        for (std::size_t c = 0; c < 3; ++c)
            EXPECT_LE(r.rows[i].reports[c].total_skr, r.rows[i - 1].reports[c].total_skr);
}

TEST(Sweep, BadPointBecomesErrorRow)
{
    SweepSpec spec;
    spec.grid = {-1.0, 5.0, 6.0};
    const SweepResult r = run_sweep(spec);
    EXPECT_EQ(r.error_rows, 1);
    EXPECT_FALSE(r.rows[0].error.empty());
    EXPECT_TRUE(r.rows[1].error.empty());
    spec.grid = {5.0, 4.0};
    EXPECT_THROW(run_sweep(spec), InvalidInput);
}

TEST(Sweep, HashTracksScenario)
{
    Scenario a = default_scenario(), b = default_scenario();
    EXPECT_EQ(scenario_hash(a), scenario_hash(b));
    apply_geometry_rule(b, 12.0);
    EXPECT_NE(scenario_hash(a), scenario_hash(b));
}

TEST(Phase, DirectCasePrefersOppositePhase)
{
    Scenario s = default_scenario();
    apply_geometry_rule(s, 5.0);
    const PhaseOptimum d = optimal_phase(s, AncillaCase::Direct, constants::pi / 64.0);
    const PhaseOptimum g = optimal_phase(s, AncillaCase::AliceRis, constants::pi / 64.0);
    EXPECT_NEAR(d.phi_star, constants::pi, constants::pi / 64.0);
    EXPECT_NEAR(g.phi_star, 0.0, constants::pi / 64.0);
}

TEST(Phase, RisBobOptimumSitsAtVacuumEdge)
{
    Scenario s = default_scenario();
    s.tx.element_count = s.rx.element_count = 16;
    apply_geometry_rule(s, 50.0);
    const PhaseOptimum f = optimal_phase(s, AncillaCase::RisBob, 0.25 * constants::pi / 180.0);
    EXPECT_NEAR(f.phi_star * 180.0 / constants::pi, 85.74, 0.05);
    Scenario at = s;
    at.ris.common_phase = f.phi_star;
    EXPECT_DOUBLE_EQ(f.skr_star, evaluate_scenario(at, AncillaCase::RisBob).total_skr);
    EXPECT_THROW(optimal_phase(s, AncillaCase::RisBob, 0.0), InvalidInput);
}

TEST(Distance, SaturatesAndVanishes)
{
    const Scenario s = default_scenario();
    DistanceSearch range;
    range.upper = 200.0;
    range.scan_points = 40;
    EXPECT_EQ(max_secure_distance(s, AncillaCase::Direct, 0.01, {}, range), 200.0);

    EvalOptions dark;
    dark.branch_hook = [](BranchSet &set)
    {
        for (auto &b : set.branches)
            b = make_branch(0.0, 0.0, 0.0, b.phi, b.branch_index);
    };
    EXPECT_EQ(max_secure_distance(s, AncillaCase::Direct, 0.01, dark, range), 0.0);
    EXPECT_THROW(max_secure_distance(s, AncillaCase::Direct, 0.0, {}, range), InvalidInput);
}

TEST(Baseline, NeverAboveRisAssisted)
{
    SweepSpec spec;
    spec.grid = linspace(1.0, 100.0, 12);
    spec.cases = {AncillaCase::Direct};
    const SweepResult ris = run_sweep(spec);
    const SweepResult base = no_ris_baseline(spec);
    ASSERT_EQ(base.rows.size(), ris.rows.size());
    for (std::size_t i = 0; i < ris.rows.size(); ++i)
        EXPECT_LE(base.rows[i].reports[0].total_skr, ris.rows[i].reports[0].total_skr);
}
