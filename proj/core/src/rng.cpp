// SPDX-License-Identifier: Apache-2.0
//
// xlmimo: near-field XL-MIMO channel simulation and degrees-of-freedom analysis
// Copyright (C) 2026 the xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "xlmimo/rng.hpp"

#include <cmath>
#include <numbers>

namespace xlmimo::rng
{
    namespace
    {
        // distinct sub-stream tags for the two Box-Muller inputs
        constexpr std::uint64_t tag_u1 = 0x243f6a8885a308d3ULL;
        constexpr std::uint64_t tag_u2 = 0x13198a2e03707344ULL;
    }

    std::complex<double> complex_gaussian(std::uint64_t k)
    {
        const double u1 = uniform_open(mix64(k ^ tag_u1));
        const double u2 = uniform_open(mix64(k ^ tag_u2));
        // unit total variance: each quadrature component has variance 1/2
        const double mag = std::sqrt(-std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        return {mag * std::cos(ang), mag * std::sin(ang)};
    }

    double gaussian(std::uint64_t k)
    {
        const double u1 = uniform_open(mix64(k ^ tag_u1));
        const double u2 = uniform_open(mix64(k ^ tag_u2));
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
}
