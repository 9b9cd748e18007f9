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

#include <thzqkd/channel_model.hpp>
#include <thzqkd/mode_decomposition.hpp>

#include <gtest/gtest.h>

using namespace thzqkd;

namespace
{
    Scenario half_wave(double f = 10e12)
    {
        Scenario s = default_scenario();
        s.carrier_frequency = f;
        const double l = s.wavelength();
        s.tx.element_spacing = s.rx.element_spacing = 0.5 * l;
        s.ris.spacing_x = s.ris.spacing_y = 0.5 * l;
        return s;
    }
}

TEST(ArrayResponse, QuarterTurnSteps)
{
    const double lambda = 3e-5;
    const CVector a = array_response(4, constants::pi / 6.0, 0.5 * lambda, lambda);
    const cdouble expect[4] = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(std::abs(a[i] - expect[i]), 0.0, 1e-15);
}

TEST(ArrayResponse, UnitNorm)
{
    for (int n : {1, 7, 32, 256})
        EXPECT_NEAR(array_response(n, 0.37, 1.3e-5, 3e-5).norm(), 1.0, 1e-13);
}

TEST(ArrayResponse, RejectsBadInput)
{
    EXPECT_THROW(array_response(0, 0.1, 1e-5, 3e-5), InvalidInput);
    EXPECT_THROW(array_response(4, std::nan(""), 1e-5, 3e-5), InvalidInput);
    EXPECT_THROW(array_response(4, 0.1, 1e-5, 0.0), InvalidInput);
}

TEST(RisResponse, TwoByTwoValues)
{
    RisGeometry ris;
    ris.k_x = ris.k_y = 2;
    const double lambda = 3e-5;
    ris.spacing_x = ris.spacing_y = 0.5 * lambda;
    const CVector a = ris_response(ris, constants::pi / 4.0, constants::pi / 3.0, lambda);
    ASSERT_EQ(a.size(), 4);
    const cdouble e10(-0.17287052217438971328, 0.4691649843745309116);
    const cdouble e11(-0.38046313025261533775, -0.32441918333905819719);
    EXPECT_NEAR(std::abs(a[0] - cdouble(0.5, 0.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a[1] - e10), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a[2] - e10), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a[3] - e11), 0.0, 1e-14);
}

TEST(PathLoss, LineOfSightValue)
{
    const Scenario s = half_wave();
    const PathSpec p = los_path(10.0);
    const double delta = path_loss(p, s, endpoint_gains(s, Link::AliceBob));
    EXPECT_NEAR(delta / 5.8280280649148932815e-6, 1.0, 1e-12);
}

TEST(PathLoss, NlosAddsFresnelAndRoughness)
{
    Scenario s = half_wave();
    s.roughness = 0.8;
    PathSpec p = los_path(10.0);
    const auto g = endpoint_gains(s, Link::AliceBob);
    const double los = path_loss(p, s, g);
    p.is_los = false;
    p.fresnel_coeff = 0.5;
    EXPECT_NEAR(path_loss(p, s, g) / los, 0.4, 1e-12);
}

TEST(PathLoss, RejectsNonPositiveLength)
{
    const Scenario s = half_wave();
    EXPECT_THROW(path_loss(los_path(0.0), s, endpoint_gains(s, Link::AliceBob)), InvalidInput);
}

TEST(Channels, ShapesFollowLinks)
{
    Scenario s = half_wave();
    s.ris.k_x = 3;
    s.ris.k_y = 5;
    s.tx.element_count = 4;
    s.rx.element_count = 6;
    const ChannelTriple t = build_channels(s);
    EXPECT_EQ(t.h_d.rows(), 6);
    EXPECT_EQ(t.h_d.cols(), 4);
    EXPECT_EQ(t.h_g.rows(), 15);
    EXPECT_EQ(t.h_g.cols(), 4);
    EXPECT_EQ(t.h_f.rows(), 6);
    EXPECT_EQ(t.h_f.cols(), 15);
}

TEST(Channels, CompositeAddsReflectedPath)
{
    Scenario s = half_wave();
    s.tx.element_count = s.rx.element_count = 4;
    s.ris.k_x = s.ris.k_y = 2;
    s.ris.common_phase = 1.1;
    const ChannelTriple t = build_channels(s);
    const CMatrix h = composite_channel(t, s.ris);
    const CMatrix expect = t.h_d + std::polar(1.0, 1.1) * t.h_f * t.h_g;
    EXPECT_LT((h - expect).norm(), 1e-15 * expect.norm());
}

TEST(Channels, EmptyPathListRejected)
{
    Scenario s = half_wave();
    s.multipaths_g.clear();
    EXPECT_THROW(build_channels(s), InvalidInput);
}

TEST(Geometry, RuleScalesAllLinks)
{
    Scenario s = half_wave();
    apply_geometry_rule(s, 20.0);
    EXPECT_DOUBLE_EQ(s.link_distance(Link::AliceBob), 20.0);
    EXPECT_DOUBLE_EQ(s.link_distance(Link::AliceRis), 8.0);
    EXPECT_DOUBLE_EQ(s.link_distance(Link::RisBob), 14.0);
    EXPECT_DOUBLE_EQ(s.multipaths_d[0].delay, 20.0 / constants::speed_of_light);
    EXPECT_THROW(apply_geometry_rule(s, -1.0), InvalidInput);
}

TEST(Geometry, UniformNlosReachesFullRank)
{
    Scenario s = half_wave();
    add_uniform_nlos(s, 31);
    EXPECT_EQ(s.multipaths_d.size(), 32u);
    const auto b = decompose(build_channels(s));
    EXPECT_EQ(b[0].rank, 32);
    EXPECT_EQ(branch_count(b), 32);
    // Common elevation of pi/4 on a square grid: the RIS response depends on p + q only
    EXPECT_EQ(b[1].rank, s.ris.k_x + s.ris.k_y - 1);
    EXPECT_EQ(b[2].rank, s.ris.k_x + s.ris.k_y - 1);
}
