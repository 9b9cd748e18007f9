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

#ifndef THZQKD_CHANNEL_MODEL_HPP
#define THZQKD_CHANNEL_MODEL_HPP

#include "common.hpp"

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace thzqkd
{
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    struct ArrayGeometry
    {
        int element_count = 32;
        double element_spacing = 0.0;      // meters
        double gain_per_element_dbi = 30.0; // dBi
    };

    struct RisGeometry
    {
        int k_x = 10;
        int k_y = 10;
        double spacing_x = 0.0; // meters
        double spacing_y = 0.0; // meters
        double common_phase = constants::pi / 4.0;

        int element_count() const { return k_x * k_y; }
    };

    struct PathSpec
    {
        double path_length = 1.0;  // meters
        double aod = 0.0;          // radians
        double aoa = 0.0;          // radians
        double elevation = 0.0;    // radians, only used when the RIS is an endpoint
        double delay = 0.0;        // seconds
        double fresnel_coeff = 0.5;
        bool is_los = true;
    };

    enum class Link
    {
        AliceBob, // H_d
        AliceRis, // H_g
        RisBob    // H_f
    };

    struct Scenario
    {
        ArrayGeometry tx;
        ArrayGeometry rx;
        RisGeometry ris;
        double carrier_frequency = 10e12; // Hz
        double absorption = 1000.0;       // dB/km
        double roughness = 1.0;
        double temperature = 300.0;       // K
        double modulation_variance = 1000.0;
        double eve_variance = 1.0;
        double d_alice_bob = 10.0; // m
        double d_alice_ris = 4.0;  // m
        double d_ris_bob = 7.0;    // m
        std::vector<PathSpec> multipaths_d;
        std::vector<PathSpec> multipaths_g;
        std::vector<PathSpec> multipaths_f;

        double wavelength() const { return constants::speed_of_light / carrier_frequency; }

        const std::vector<PathSpec> &paths(Link l) const
        {
            return l == Link::AliceBob ? multipaths_d : (l == Link::AliceRis ? multipaths_g : multipaths_f);
        }
        std::vector<PathSpec> &paths(Link l)
        {
            return l == Link::AliceBob ? multipaths_d : (l == Link::AliceRis ? multipaths_g : multipaths_f);
        }
        double link_distance(Link l) const
        {
            return l == Link::AliceBob ? d_alice_bob : (l == Link::AliceRis ? d_alice_ris : d_ris_bob);
        }
    };

    struct ChannelTriple
    {
        CMatrix h_d; // N_RX x N_TX
        CMatrix h_g; // K x N_TX
        CMatrix h_f; // N_RX x K
    };

    inline double db_to_linear(double db) { return std::pow(10.0, 0.1 * db); }

    inline CVector array_response(int n, double theta, double spacing, double wavelength)
    {
        if (n < 1)
            throw InvalidInput("array_response: element count must be >= 1");
        if (!std::isfinite(theta) || !std::isfinite(spacing))
            throw InvalidInput("array_response: non-finite angle or spacing");
        if (!(wavelength > 0.0))
            throw InvalidInput("array_response: wavelength must be > 0");

        const double step = constants::two_pi * spacing * std::sin(theta) / wavelength;
        const double amp = 1.0 / std::sqrt(double(n));
        CVector a(n);
        for (int p = 0; p < n; ++p)
            a[p] = std::polar(amp, step * double(p));
        return a;
    }

    // Element (p,q) of the K_X x K_Y grid is stored at index q * k_x + p.
    inline CVector ris_response(const RisGeometry &ris, double elevation, double theta, double wavelength)
    {
        if (ris.k_x < 1 || ris.k_y < 1)
            throw InvalidInput("ris_response: k_x and k_y must be >= 1");
        if (!std::isfinite(theta) || !std::isfinite(elevation))
            throw InvalidInput("ris_response: non-finite angle");
        if (!(wavelength > 0.0))
            throw InvalidInput("ris_response: wavelength must be > 0");

        const double vx = ris.spacing_x * std::cos(elevation) * std::sin(theta);
        const double vy = ris.spacing_y * std::sin(elevation) * std::sin(theta);
        const double k0 = constants::two_pi / wavelength;
        const int K = ris.element_count();
        const double amp = 1.0 / std::sqrt(double(K));
        CVector a(K);
        for (int q = 0; q < ris.k_y; ++q)
            for (int p = 0; p < ris.k_x; ++p)
                a[q * ris.k_x + p] = std::polar(amp, k0 * (double(p) * vx + double(q) * vy));
        return a;
    }

    // Linear gains of the two link endpoints (transmit side first)
    inline std::pair<double, double> endpoint_gains(const Scenario &s, Link l)
    {
        const double g_tx = s.tx.element_count * db_to_linear(s.tx.gain_per_element_dbi);
        const double g_rx = s.rx.element_count * db_to_linear(s.rx.gain_per_element_dbi);
        const double g_ris = s.ris.element_count();
        switch (l)
        {
        case Link::AliceBob:
            return {g_tx, g_rx};
        case Link::AliceRis:
            return {g_tx, g_ris};
        default:
            return {g_ris, g_rx};
        }
    }

    inline double path_loss(const PathSpec &spec, const Scenario &s, std::pair<double, double> gains)
    {
        if (!(spec.path_length > 0.0))
            throw InvalidInput("path_loss: path length must be > 0");
        if (!(gains.first > 0.0) || !(gains.second > 0.0))
            throw InvalidInput("path_loss: endpoint gains must be > 0");

        const double spread = s.wavelength() / (2.0 * constants::two_pi * spec.path_length);
        const double absorb = std::pow(10.0, -0.1 * s.absorption * spec.path_length * 1e-3);
        double delta = spread * spread * gains.first * gains.second * absorb;
        if (!spec.is_los)
            delta *= s.roughness * spec.fresnel_coeff;
        return delta;
    }

    inline CMatrix build_link(const Scenario &s, Link l)
    {
        const auto &ps = s.paths(l);
        if (ps.empty())
            throw InvalidInput("build_channels: every link needs at least one path");

        const double lambda = s.wavelength();
        const auto gains = endpoint_gains(s, l);
        const int n_tx = s.tx.element_count, n_rx = s.rx.element_count, K = s.ris.element_count();
        const int rows = (l == Link::AliceRis) ? K : n_rx;
        const int cols = (l == Link::RisBob) ? K : n_tx;

        CMatrix h = CMatrix::Zero(rows, cols);
        for (const auto &p : ps)
        {
            const cdouble w = std::sqrt(path_loss(p, s, gains)) *
                              std::exp(cdouble(0.0, constants::two_pi * s.carrier_frequency * p.delay));
            CVector out, in;
            switch (l)
            {
            case Link::AliceBob:
                out = array_response(n_rx, p.aoa, s.rx.element_spacing, lambda);
                in = array_response(n_tx, p.aod, s.tx.element_spacing, lambda);
                break;
            case Link::AliceRis:
                out = ris_response(s.ris, p.elevation, p.aoa, lambda);
                in = array_response(n_tx, p.aod, s.tx.element_spacing, lambda);
                break;
            case Link::RisBob:
                out = array_response(n_rx, p.aoa, s.rx.element_spacing, lambda);
                in = ris_response(s.ris, p.elevation, p.aod, lambda);
                break;
            }
            h.noalias() += w * out * in.adjoint();
        }
        return h;
    }

    inline ChannelTriple build_channels(const Scenario &s)
    {
        return {build_link(s, Link::AliceBob), build_link(s, Link::AliceRis), build_link(s, Link::RisBob)};
    }

    // All RIS elements share the common phase, so diag(e^{j phi}) is a scalar.
    inline CMatrix composite_channel(const ChannelTriple &t, const RisGeometry &ris)
    {
        if (t.h_f.cols() != t.h_g.rows() || t.h_f.rows() != t.h_d.rows() || t.h_g.cols() != t.h_d.cols())
            throw InvalidInput("composite_channel: inconsistent dimensions");
        const cdouble e = std::polar(1.0, ris.common_phase);
        return t.h_d + e * (t.h_f * t.h_g);
    }

    // Line-of-sight path with delay d/c
    inline PathSpec los_path(double length, double aod = 0.0, double aoa = 0.0, double elevation = 0.0)
    {
        PathSpec p;
        p.path_length = length;
        p.aod = aod;
        p.aoa = aoa;
        p.elevation = elevation;
        p.delay = length / constants::speed_of_light;
        p.fresnel_coeff = 1.0;
        p.is_los = true;
        return p;
    }

    // Applies d_AR = 0.4 d_AB and d_RB = 0.7 d_AB, rescaling every path of a link
    // by the ratio of its new and old link distance. Delays follow as length / c.
    inline void apply_geometry_rule(Scenario &s, double d_ab)
    {
        if (!(d_ab > 0.0))
            throw InvalidInput("distance must be > 0");
        const double target[3] = {d_ab, 0.4 * d_ab, 0.7 * d_ab};
        const Link links[3] = {Link::AliceBob, Link::AliceRis, Link::RisBob};
        for (int i = 0; i < 3; ++i)
        {
            const double ratio = target[i] / s.link_distance(links[i]);
            for (auto &p : s.paths(links[i]))
            {
                p.path_length *= ratio;
                p.delay = p.path_length / constants::speed_of_light;
            }
        }
        s.d_alice_bob = target[0];
        s.d_alice_ris = target[1];
        s.d_ris_bob = target[2];
    }

    // Adds `count` NLoS paths per link with sin(angle) spread uniformly over (-1, 1)
    // and path length `excess` times the link distance.
    inline void add_uniform_nlos(Scenario &s, int count, double excess = 1.2, double fresnel = 0.5)
    {
        if (count < 0 || !(excess >= 1.0))
            throw InvalidInput("add_uniform_nlos: count must be >= 0 and excess >= 1");
        const Link links[3] = {Link::AliceBob, Link::AliceRis, Link::RisBob};
        for (Link l : links)
        {
            for (int i = 0; i < count; ++i)
            {
                const double u = -1.0 + 2.0 * (i + 0.25) / count;
                const double v = -1.0 + 2.0 * std::fmod((i + 0.5) * 0.6180339887498949 + 0.25, 1.0);
                PathSpec p = los_path(excess * s.link_distance(l), std::asin(u), std::asin(v), 0.25 * constants::pi);
                p.is_los = false;
                p.fresnel_coeff = fresnel;
                s.paths(l).push_back(p);
            }
        }
    }

    // Default scenario: 32x32 arrays, 10x10 RIS, half-wavelength spacing, pure LoS at d_AB = 10 m.
    inline Scenario default_scenario()
    {
        Scenario s;
        const double lambda = s.wavelength();
        s.tx.element_spacing = 0.5 * lambda;
        s.rx.element_spacing = 0.5 * lambda;
        s.ris.spacing_x = 0.5 * lambda;
        s.ris.spacing_y = 0.5 * lambda;
        s.multipaths_d = {los_path(s.d_alice_bob)};
        s.multipaths_g = {los_path(s.d_alice_ris)};
        s.multipaths_f = {los_path(s.d_ris_bob)};
        return s;
    }
}

#endif
