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

#include <thzqkd/config.hpp>
#include <thzqkd/csv.hpp>
#include <thzqkd/experiments.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace thzqkd;

namespace
{
    std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    std::string default_text() { return slurp(std::string(THZQKD_CONFIG_DIR) + "/los_10thz.cfg"); }
}

TEST(Config, FileMatchesDefaults)
{
    const Scenario s = parse_scenario(default_text());
    EXPECT_EQ(serialize_scenario(s), serialize_scenario(default_scenario()));
}

TEST(Config, OverridesApply)
{
    const Scenario s = parse_scenario(default_text(), {"distance_ab_m=20", "ris_kx=4"});
    EXPECT_DOUBLE_EQ(s.d_alice_bob, 20.0);
    EXPECT_DOUBLE_EQ(s.link_distance(Link::AliceRis), 8.0);
    EXPECT_EQ(s.ris.k_x, 4);
    EXPECT_THROW(parse_override("no_equals_sign"), InvalidInput);
}

TEST(Config, UnknownKeyListsValidKeys)
{
    try
    {
        parse_scenario("distance_ab_m = 3\nbogus = 1\n");
        FAIL() << "expected InvalidInput";
    }
    catch (const InvalidInput &e)
    {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("bogus"), std::string::npos);
        EXPECT_NE(msg.find("frequency_hz"), std::string::npos);
    }
}

TEST(Config, UnitSuffixMismatch)
{
    EXPECT_THROW(parse_scenario("frequency_thz = 10\n"), InvalidInput);
}

TEST(Config, DuplicateKeyRejected)
{
    EXPECT_THROW(parse_scenario("temperature_k = 300\ntemperature_k = 290\n"), InvalidInput);
}

TEST(Config, BadNumberRejected)
{
    EXPECT_THROW(parse_scenario("temperature_k = warm\n"), InvalidInput);
    EXPECT_THROW(parse_scenario("tx_elements = 3.5\n"), InvalidInput);
}

TEST(Config, RoundTrip)
{
    Scenario s = parse_scenario(default_text(), {"nlos_uniform_count=3", "frequency_hz=1.3e12"});
    const std::string text = serialize_scenario(s);
    EXPECT_EQ(serialize_scenario(parse_scenario(text)), text);
}

TEST(Config, MissingFileIsIoError)
{
    EXPECT_THROW(load_scenario("/nonexistent/none.cfg"), IoError);
}

TEST(Csv, NumberFormat)
{
    EXPECT_EQ(csv_number(0.1), "0.1");
    EXPECT_EQ(csv_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(csv_number(-2.5e-17), "-2.5e-17");
    EXPECT_EQ(csv_text("a,b"), "\"a,b\"");
}

TEST(Csv, HeaderColumns)
{
    SweepResult r;
    r.cases = {AncillaCase::Direct, AncillaCase::RisBob};
    EXPECT_EQ(csv_header(r), "distance_ab_m,skr_d,skr_f,holevo_d,holevo_f,clamp_warnings,sub_vacuum_warnings,error\n");
}

TEST(Csv, UnwritablePathIsIoError)
{
    EXPECT_THROW(emit_csv(SweepResult{}, "/nonexistent_dir/x.csv"), IoError);
}

TEST(Csv, DefaultSweepMatchesGolden)
{
    SweepSpec spec;
    spec.base = parse_scenario(default_text());
    spec.grid = linspace(1.0, 100.0, 100);
    EXPECT_EQ(to_csv(run_sweep(spec)), slurp(std::string(THZQKD_GOLDEN_DIR) + "/los_10thz_sweep.csv"));
}
