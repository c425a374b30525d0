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

#ifndef XLMIMO_ERRORS_HPP
#define XLMIMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xlmimo
{
    // Precondition violations throw std::invalid_argument. The types below
    // mark conditions that are only detectable while computing.

    /// Field kernel evaluated at coincident source/observation points.
    class singularity_error : public std::runtime_error
    {
      public:
        explicit singularity_error(const std::string &what) : std::runtime_error(what) {}
    };

    /// Plane-wave lattice cannot be formed (aperture below one wavelength).
    class degenerate_spectrum_error : public std::runtime_error
    {
      public:
        explicit degenerate_spectrum_error(const std::string &what) : std::runtime_error(what) {}
    };

    /// Neumann series is not contractive (estimated spectral radius >= 1).
    class divergence_error : public std::runtime_error
    {
      public:
        explicit divergence_error(const std::string &what) : std::runtime_error(what) {}
    };

    /// Gram matrix of the channel is numerically singular.
    class singular_gram_error : public std::runtime_error
    {
      public:
        explicit singular_gram_error(const std::string &what) : std::runtime_error(what) {}
    };

    /// Metric is undefined for the given input (e.g. EDoF of the zero matrix).
    class undefined_metric_error : public std::runtime_error
    {
      public:
        explicit undefined_metric_error(const std::string &what) : std::runtime_error(what) {}
    };

    /// Scenario configuration is invalid; raised before any computation starts.
    class config_error : public std::runtime_error
    {
      public:
        explicit config_error(const std::string &what) : std::runtime_error(what) {}
    };
}

#endif
