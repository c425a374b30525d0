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

#ifndef XLMIMO_CHANNEL_HPP
#define XLMIMO_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "xlmimo/em.hpp"
#include "xlmimo/geometry.hpp"

namespace xlmimo
{
    enum class Provenance
    {
        los,
        nlos,
        hybrid
    };

    /// Dense complex channel matrix. Rows/cols are element-major with pol
    /// consecutive rows (cols) per receive (transmit) element in x,y,z
    /// polarization order when pol == 3.
    struct ChannelMatrix
    {
        arma::cx_mat entries;
        int rx_pol = 1; // polarization multiplicity per receive element (1 or 3)
        int tx_pol = 1;
        Provenance provenance = Provenance::los;
    };

    /// Angular power profile over the plane-wave lattices of two planar
    /// apertures. Indices (l,m) satisfy (l lambda0/L_x)^2 + (m lambda0/L_y)^2 <= 1;
    /// grazing points with gamma <= 1e-6 stay in the lattice but carry zero
    /// weight. The per-quadruple variance is separable: sigma^2(i,j) =
    /// rx_weight[i] * tx_weight[j], normalized so the weights on each side sum
    /// to 1 (unit mean entry power).
    struct ScatteringSpectrum
    {
        struct LatticePoint
        {
            int l = 0, m = 0;
            double k_x = 0.0, k_y = 0.0, k_z = 0.0; // wavevector components
            double weight = 1.0;                    // per-side variance share
        };

        std::vector<LatticePoint> rx_lattice, tx_lattice;
        double rx_len_x = 0.0, rx_len_y = 0.0; // aperture side lengths, lambda0
        double tx_len_x = 0.0, tx_len_y = 0.0;

        /// Isotropic profile: weight(l,m) proportional to 1/gamma(l,m) with
        /// gamma = sqrt(k0^2 - k_x^2 - k_y^2)/k0.
        static ScatteringSpectrum isotropic(double rx_lx, double rx_ly, double tx_lx,
                                            double tx_ly, const WaveParams &w);
    };

    struct Path
    {
        enum class Regime
        {
            near_field, // spherical phases from exact element-scatterer distances
            far_field   // planar phases from AoA/AoD only
        };

        std::complex<double> gain{1.0, 0.0};
        Regime regime = Regime::far_field;
        Point3 scatterer;          // near_field: scatterer position
        Point3 aoa{0.0, 0.0, 1.0}; // far_field: unit vector, rx center -> scatterer
        Point3 aod{0.0, 0.0, 1.0}; // far_field: unit vector, tx center -> scatterer
    };

    using PathSet = std::vector<Path>;

    struct HybridSpec
    {
        enum class Normalization
        {
            unit_power, // scale each component to ||H||_F^2 = rows*cols
            raw         // combine the inputs as given
        };

        double rician_k = 1.0;
        Normalization mode = Normalization::unit_power;
    };

    /// Worker threads used by the dense assembly loops (1 = serial). The
    /// assembled matrices are identical for any setting.
    void set_assembly_threads(unsigned n);
    unsigned assembly_threads();

    /// Entry (i,j) = scalar_green(rx_i, tx_j); patch elements use the QxQ
    /// midpoint quadrature average.
    ChannelMatrix los_channel_scalar(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                     const WaveParams &w, int quadrature_order = 3);

    /// 3x3 block (i,j) = dyadic_green(rx_i, tx_j), full polarization.
    ChannelMatrix los_channel_dyadic(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                     const WaveParams &w, int quadrature_order = 3);

    /// 4D Fourier plane-wave synthesis over the spectrum lattices with
    /// counter-based CN(0, sigma^2) coefficients; deterministic in seed.
    ChannelMatrix nlos_fourier_planewave(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                         const ScatteringSpectrum &spectrum,
                                         std::uint64_t seed, const WaveParams &w);

    /// Gain-weighted superposition of per-path array response vectors.
    ChannelMatrix nlos_array_response(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                      const PathSet &paths, const WaveParams &w);

    /// H = sqrt(K/(K+1)) Hlos + sqrt(1/(K+1)) Hnlos over (optionally)
    /// power-normalized components.
    ChannelMatrix hybrid_channel(const ChannelMatrix &h_los, const ChannelMatrix &h_nlos,
                                 const HybridSpec &spec);
}

#endif
