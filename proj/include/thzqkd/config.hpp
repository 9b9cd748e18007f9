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

#ifndef THZQKD_CONFIG_HPP
#define THZQKD_CONFIG_HPP

#include "channel_model.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace thzqkd
{
    // Configuration keys. Units are part of the key name.
    //
    //   frequency_hz, absorption_db_per_km, roughness, temperature_k,
    //   modulation_variance_snu, eve_variance_snu,
    //   tx_elements, rx_elements, tx_spacing_m, rx_spacing_m, tx_gain_dbi, rx_gain_dbi,
    //   ris_kx, ris_ky, ris_spacing_x_m, ris_spacing_y_m, ris_phase_rad,
    //   distance_ab_m, distance_ar_m, distance_rb_m,
    //   los_{d,g,f}_aod_rad, los_{d,g,f}_aoa_rad, los_{d,g,f}_elevation_rad,
    //   nlos_uniform_count, nlos_uniform_excess, nlos_uniform_fresnel,
    //   nlos_{d,g,f}_<i> = "length_m aod_rad aoa_rad elevation_rad fresnel"
    //
    // Spacings default to half a wavelength, distance_ar_m / distance_rb_m to 0.4 / 0.7 of
    // distance_ab_m. Uniform NLoS paths are expanded at load time into explicit nlos_ entries.
    inline const std::vector<std::string> &config_keys()
    {
        static const std::vector<std::string> keys = {
            "frequency_hz", "absorption_db_per_km", "roughness", "temperature_k",
            "modulation_variance_snu", "eve_variance_snu",
            "tx_elements", "rx_elements", "tx_spacing_m", "rx_spacing_m", "tx_gain_dbi", "rx_gain_dbi",
            "ris_kx", "ris_ky", "ris_spacing_x_m", "ris_spacing_y_m", "ris_phase_rad",
            "distance_ab_m", "distance_ar_m", "distance_rb_m",
            "los_d_aod_rad", "los_d_aoa_rad", "los_d_elevation_rad",
            "los_g_aod_rad", "los_g_aoa_rad", "los_g_elevation_rad",
            "los_f_aod_rad", "los_f_aoa_rad", "los_f_elevation_rad",
            "nlos_uniform_count", "nlos_uniform_excess", "nlos_uniform_fresnel"};
        return keys;
    }

    namespace detail
    {
        inline std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return std::string(s.substr(b, e - b + 1));
        }

        inline double parse_double(const std::string &key, const std::string &v)
        {
            double x = 0.0;
            const char *first = v.data(), *last = v.data() + v.size();
            if (!v.empty() && *first == '+')
                ++first;
            auto [p, ec] = std::from_chars(first, last, x);
            if (ec != std::errc() || p != last || !std::isfinite(x))
                throw InvalidInput("config: '" + key + "' expects a finite number, got '" + v + "'");
            return x;
        }

        inline int parse_int(const std::string &key, const std::string &v)
        {
            int x = 0;
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc() || p != v.data() + v.size())
                throw InvalidInput("config: '" + key + "' expects an integer, got '" + v + "'");
            return x;
        }

        inline std::string fmt(double x)
        {
            char buf[64];
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
            return std::string(buf, p);
        }

        inline bool is_nlos_key(const std::string &k, char &link, int &index)
        {
            if (k.size() < 8 || k.compare(0, 5, "nlos_") != 0 || k[6] != '_')
                return false;
            link = k[5];
            if (link != 'd' && link != 'g' && link != 'f')
                return false;
            const std::string tail = k.substr(7);
            auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), index);
            return ec == std::errc() && p == tail.data() + tail.size() && index >= 1;
        }

        inline std::string strip_unit(const std::string &k)
        {
            static const char *units[] = {"_db_per_km", "_hz", "_k", "_snu", "_m", "_dbi", "_rad",
                                          "_thz", "_ghz", "_km", "_cm", "_mm", "_deg", "_db"};
            for (const char *u : units)
            {
                const std::string_view us(u);
                if (k.size() > us.size() && k.compare(k.size() - us.size(), us.size(), us) == 0)
                    return k.substr(0, k.size() - us.size());
            }
            return k;
        }

        [[noreturn]] inline void unknown_key(const std::string &key)
        {
            const std::string base = strip_unit(key);
            if (base != key)
                for (const auto &k : config_keys())
                    if (strip_unit(k) == base && k != base)
                        throw InvalidInput("config: unit suffix mismatch in '" + key + "', expected '" + k + "'");
            std::string msg = "config: unknown key '" + key + "'. Valid keys:";
            for (const auto &k : config_keys())
                msg += " " + k;
            msg += " nlos_{d,g,f}_<i>";
            throw InvalidInput(msg);
        }

        inline char link_tag(Link l) { return l == Link::AliceBob ? 'd' : (l == Link::AliceRis ? 'g' : 'f'); }
    }

    using KeyValues = std::vector<std::pair<std::string, std::string>>;

    inline KeyValues parse_key_values(std::istream &in)
    {
        KeyValues kv;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            const std::string t = detail::trim(line);
            if (t.empty())
                continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw InvalidInput("config: line " + std::to_string(lineno) + " is not key = value");
            kv.emplace_back(detail::trim(t.substr(0, eq)), detail::trim(t.substr(eq + 1)));
        }
        return kv;
    }

    inline std::pair<std::string, std::string> parse_override(const std::string &s)
    {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("override '" + s + "' is not key=value");
        return {detail::trim(s.substr(0, eq)), detail::trim(s.substr(eq + 1))};
    }

    // Builds a Scenario from file entries followed by overrides (later entries win over earlier ones
    // for overrides only; a key repeated inside the file is an error).
    inline Scenario scenario_from_key_values(const KeyValues &file, const KeyValues &overrides = {})
    {
        std::map<std::string, std::string> v;
        for (const auto &[k, val] : file)
            if (!v.emplace(k, val).second)
                throw InvalidInput("config: duplicate key '" + k + "'");
        for (const auto &[k, val] : overrides)
            v[k] = val;

        struct Nlos
        {
            char link;
            int index;
            PathSpec p;
        };
        std::vector<Nlos> explicit_paths;
        const auto &known = config_keys();
        for (const auto &[k, val] : v)
        {
            char link;
            int index;
            if (detail::is_nlos_key(k, link, index))
            {
                std::istringstream ss(val);
                ss.imbue(std::locale::classic());
                std::string tok;
                std::vector<double> nums;
                while (ss >> tok)
                    nums.push_back(detail::parse_double(k, tok));
                if (nums.size() != 5)
                    throw InvalidInput("config: '" + k + "' expects 5 numbers: length_m aod_rad aoa_rad elevation_rad fresnel");
                PathSpec p = los_path(nums[0], nums[1], nums[2], nums[3]);
                p.is_los = false;
                p.fresnel_coeff = nums[4];
                explicit_paths.push_back({link, index, p});
                continue;
            }
            if (std::find(known.begin(), known.end(), k) == known.end())
                detail::unknown_key(k);
        }

        auto num = [&](const char *k, double def)
        { auto it = v.find(k); return it == v.end() ? def : detail::parse_double(k, it->second); };
        auto integer = [&](const char *k, int def)
        { auto it = v.find(k); return it == v.end() ? def : detail::parse_int(k, it->second); };

        Scenario s;
        s.carrier_frequency = num("frequency_hz", 10e12);
        if (!(s.carrier_frequency > 0.0))
            throw InvalidInput("config: frequency_hz must be > 0");
        const double half = 0.5 * s.wavelength();
        s.absorption = num("absorption_db_per_km", 1000.0);
        s.roughness = num("roughness", 1.0);
        s.temperature = num("temperature_k", 300.0);
        s.modulation_variance = num("modulation_variance_snu", 1000.0);
        s.eve_variance = num("eve_variance_snu", 1.0);
        s.tx = {integer("tx_elements", 32), num("tx_spacing_m", half), num("tx_gain_dbi", 30.0)};
        s.rx = {integer("rx_elements", 32), num("rx_spacing_m", half), num("rx_gain_dbi", 30.0)};
        s.ris.k_x = integer("ris_kx", 10);
        s.ris.k_y = integer("ris_ky", 10);
        s.ris.spacing_x = num("ris_spacing_x_m", half);
        s.ris.spacing_y = num("ris_spacing_y_m", half);
        s.ris.common_phase = fold_phase(num("ris_phase_rad", constants::pi / 4.0));
        s.d_alice_bob = num("distance_ab_m", 10.0);
        s.d_alice_ris = num("distance_ar_m", 0.4 * s.d_alice_bob);
        s.d_ris_bob = num("distance_rb_m", 0.7 * s.d_alice_bob);

        if (s.tx.element_count < 1 || s.rx.element_count < 1 || s.ris.k_x < 1 || s.ris.k_y < 1)
            throw InvalidInput("config: element counts must be >= 1");
        if (!(s.tx.element_spacing > 0.0) || !(s.rx.element_spacing > 0.0) || !(s.ris.spacing_x > 0.0) ||
            !(s.ris.spacing_y > 0.0))
            throw InvalidInput("config: spacings must be > 0");
        if (!(s.modulation_variance > 0.0))
            throw InvalidInput("config: modulation_variance_snu must be > 0");
        if (!(s.eve_variance >= 1.0))
            throw InvalidInput("config: eve_variance_snu must be >= 1");
        if (!(s.temperature > 0.0))
            throw InvalidInput("config: temperature_k must be > 0");
        if (!(s.d_alice_bob > 0.0) || !(s.d_alice_ris > 0.0) || !(s.d_ris_bob > 0.0))
            throw InvalidInput("config: distances must be > 0");
        if (s.absorption < 0.0 || s.roughness < 0.0)
            throw InvalidInput("config: absorption and roughness must be >= 0");

        const Link links[3] = {Link::AliceBob, Link::AliceRis, Link::RisBob};
        for (Link l : links)
        {
            const std::string pre = std::string("los_") + detail::link_tag(l) + "_";
            s.paths(l) = {los_path(s.link_distance(l), num((pre + "aod_rad").c_str(), 0.0),
                                   num((pre + "aoa_rad").c_str(), 0.0), num((pre + "elevation_rad").c_str(), 0.0))};
        }

        std::sort(explicit_paths.begin(), explicit_paths.end(),
                  [](const Nlos &a, const Nlos &b) { return a.link != b.link ? a.link < b.link : a.index < b.index; });
        for (Link l : links)
        {
            int expect = 1;
            for (const auto &e : explicit_paths)
                if (e.link == detail::link_tag(l))
                {
                    if (e.index != expect++)
                        throw InvalidInput(std::string("config: nlos_") + e.link + "_<i> indices must run 1, 2, ...");
                    if (!(e.p.path_length > 0.0) || e.p.fresnel_coeff < 0.0 || e.p.fresnel_coeff > 1.0)
                        throw InvalidInput(std::string("config: nlos_") + e.link + " path needs length > 0 and fresnel in [0,1]");
                    s.paths(l).push_back(e.p);
                }
        }

        const int uniform = integer("nlos_uniform_count", 0);
        const double fresnel = num("nlos_uniform_fresnel", 0.5);
        if (fresnel < 0.0 || fresnel > 1.0)
            throw InvalidInput("config: nlos_uniform_fresnel must lie in [0,1]");
        if (uniform > 0)
            add_uniform_nlos(s, uniform, num("nlos_uniform_excess", 1.2), fresnel);
        else if (uniform < 0)
            throw InvalidInput("config: nlos_uniform_count must be >= 0");
        return s;
    }

    inline Scenario parse_scenario(const std::string &text, const std::vector<std::string> &overrides = {})
    {
        std::istringstream in(text);
        KeyValues ov;
        for (const auto &o : overrides)
            ov.push_back(parse_override(o));
        return scenario_from_key_values(parse_key_values(in), ov);
    }

    inline Scenario load_scenario(const std::string &path, const std::vector<std::string> &overrides = {})
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot read config file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_scenario(ss.str(), overrides);
    }

    // Shortest round-trip representation of every value; loading the output reproduces the Scenario.
    inline std::string serialize_scenario(const Scenario &s)
    {
        using detail::fmt;
        std::string o;
        auto put = [&](const std::string &k, const std::string &v) { o += k + " = " + v + "\n"; };
        put("frequency_hz", fmt(s.carrier_frequency));
        put("absorption_db_per_km", fmt(s.absorption));
        put("roughness", fmt(s.roughness));
        put("temperature_k", fmt(s.temperature));
        put("modulation_variance_snu", fmt(s.modulation_variance));
        put("eve_variance_snu", fmt(s.eve_variance));
        put("tx_elements", std::to_string(s.tx.element_count));
        put("rx_elements", std::to_string(s.rx.element_count));
        put("tx_spacing_m", fmt(s.tx.element_spacing));
        put("rx_spacing_m", fmt(s.rx.element_spacing));
        put("tx_gain_dbi", fmt(s.tx.gain_per_element_dbi));
        put("rx_gain_dbi", fmt(s.rx.gain_per_element_dbi));
        put("ris_kx", std::to_string(s.ris.k_x));
        put("ris_ky", std::to_string(s.ris.k_y));
        put("ris_spacing_x_m", fmt(s.ris.spacing_x));
        put("ris_spacing_y_m", fmt(s.ris.spacing_y));
        put("ris_phase_rad", fmt(s.ris.common_phase));
        put("distance_ab_m", fmt(s.d_alice_bob));
        put("distance_ar_m", fmt(s.d_alice_ris));
        put("distance_rb_m", fmt(s.d_ris_bob));

        const Link links[3] = {Link::AliceBob, Link::AliceRis, Link::RisBob};
        for (Link l : links)
        {
            const std::string pre = std::string("los_") + detail::link_tag(l) + "_";
            const auto &ps = s.paths(l);
            const PathSpec los = ps.empty() ? PathSpec{} : ps.front();
            put(pre + "aod_rad", fmt(los.aod));
            put(pre + "aoa_rad", fmt(los.aoa));
            put(pre + "elevation_rad", fmt(los.elevation));
        }
        for (Link l : links)
        {
            const auto &ps = s.paths(l);
            for (std::size_t i = 1; i < ps.size(); ++i)
                put(std::string("nlos_") + detail::link_tag(l) + "_" + std::to_string(i),
                    fmt(ps[i].path_length) + " " + fmt(ps[i].aod) + " " + fmt(ps[i].aoa) + " " +
                        fmt(ps[i].elevation) + " " + fmt(ps[i].fresnel_coeff));
        }
        return o;
    }
}

#endif
