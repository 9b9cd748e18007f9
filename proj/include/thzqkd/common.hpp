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

#ifndef THZQKD_COMMON_HPP
#define THZQKD_COMMON_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thzqkd
{
    using cdouble = std::complex<double>;

    namespace constants
    {
        inline constexpr double speed_of_light = 299792458.0; // m/s
        inline constexpr double planck = 6.62607015e-34;      // J s
        inline constexpr double boltzmann = 1.380649e-23;     // J/K
        inline constexpr double pi = std::numbers::pi;
        inline constexpr double two_pi = 2.0 * std::numbers::pi;
    }

    // Bad argument or malformed configuration
    class InvalidInput : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Solver failure or a radicand / determinant far outside its valid domain
    class NumericError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Transmissivity outside [0,1] under the strict clamp policy
    class PhysicalityError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Fold an angle into [0, 2pi)
    inline double fold_phase(double phi)
    {
        double r = std::fmod(phi, constants::two_pi);
        if (r < 0.0)
            r += constants::two_pi;
        if (r >= constants::two_pi)
            r = 0.0;
        return r;
    }
}

#endif
