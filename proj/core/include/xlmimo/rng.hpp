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

#ifndef XLMIMO_RNG_HPP
#define XLMIMO_RNG_HPP

#include <complex>
#include <cstdint>

namespace xlmimo::rng
{
    // Counter-based draws: every variate is a pure function of (seed, indices),
    // so parallel generation is order-independent and reproducible.

    /// SplitMix64 finalizer (public-domain mixing constants).
    inline std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Collapse a (seed, 4 lattice indices) key into one 64-bit state.
    inline std::uint64_t key(std::uint64_t seed, std::int64_t a, std::int64_t b,
                             std::int64_t c, std::int64_t d)
    {
        std::uint64_t h = mix64(seed);
        h = mix64(h ^ static_cast<std::uint64_t>(a));
        h = mix64(h ^ static_cast<std::uint64_t>(b));
        h = mix64(h ^ static_cast<std::uint64_t>(c));
        h = mix64(h ^ static_cast<std::uint64_t>(d));
        return h;
    }

    /// Uniform double in (0, 1], suitable as a log() argument.
    inline double uniform_open(std::uint64_t bits)
    {
        return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard circularly-symmetric complex Gaussian (unit total variance)
    /// for the given key, via Box-Muller on two counter outputs.
    std::complex<double> complex_gaussian(std::uint64_t k);

    /// Standard real Gaussian for the given key.
    double gaussian(std::uint64_t k);
}

#endif
