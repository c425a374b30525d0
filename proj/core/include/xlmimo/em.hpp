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

#ifndef XLMIMO_EM_HPP
#define XLMIMO_EM_HPP

#include <complex>

#include "xlmimo/geometry.hpp"

namespace xlmimo
{
    // Free-space kernels under the e^{+j omega t} time convention: outgoing
    // waves carry e^{-j k0 R}. All derived metrics are invariant to the
    // conjugate choice; this one is fixed project-wide.

    struct WaveParams
    {
        double lambda0 = 1.0;

        double wavenumber() const { return 2.0 * arma::datum::pi / lambda0; }
    };

    enum class FieldRegion
    {
        radiative_near_field, // non-uniform spherical wave: exact amplitude and phase
        fresnel,              // uniform spherical wave: center amplitude, exact phase
        far_field             // uniform plane wave: center amplitude, planar phase
    };

    const char *to_string(FieldRegion region);

    /// e^{-j k0 R} / (4 pi R) with R = |r - s|.
    std::complex<double> scalar_green(const Point3 &r, const Point3 &s, const WaveParams &w);

    /// Full-polarization 3x3 kernel
    ///   G = g(R) [ (1 - j/(k0 R) - 1/(k0 R)^2) I - (1 - 3j/(k0 R) - 3/(k0 R)^2) Rhat Rhat^T ].
    arma::cx_mat33 dyadic_green(const Point3 &r, const Point3 &s, const WaveParams &w);

    /// Rayleigh (Fraunhofer) distance 2 D^2 / lambda0.
    double rayleigh_distance(double aperture, const WaveParams &w);

    /// Lower Fresnel-zone boundary 0.62 sqrt(D^3 / lambda0).
    double fresnel_distance(double aperture, const WaveParams &w);

    /// Partition of (0, inf) into the three regions; boundary distances are
    /// assigned to the farther region.
    FieldRegion classify_region(double aperture, double dist, const WaveParams &w);

    /// Complex channel response of one receive element for a point transmitter,
    /// under the wave model of the given region.
    std::complex<double> response_model(const Point3 &tx, const Point3 &rx_element,
                                        const Point3 &rx_center, FieldRegion region,
                                        const WaveParams &w);

    /// Kernels averaged over patch faces with a QxQ midpoint rule per patch.
    /// The node lists are local-frame offsets (see quadrature_offsets); point
    /// elements pass a single zero offset.
    std::complex<double> scalar_green_avg(const Point3 &r, const std::vector<Point3> &r_nodes,
                                          const arma::mat33 &r_frame, const Point3 &s,
                                          const std::vector<Point3> &s_nodes,
                                          const arma::mat33 &s_frame, const WaveParams &w);

    arma::cx_mat33 dyadic_green_avg(const Point3 &r, const std::vector<Point3> &r_nodes,
                                    const arma::mat33 &r_frame, const Point3 &s,
                                    const std::vector<Point3> &s_nodes,
                                    const arma::mat33 &s_frame, const WaveParams &w);
}

#endif
