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

#include "xlmimo/channel.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "xlmimo/errors.hpp"
#include "xlmimo/rng.hpp"

namespace xlmimo
{
    namespace
    {
        std::atomic<unsigned> g_assembly_threads{1};

        constexpr double grazing_gamma = 1e-6; // lattice points below this are dropped

        /// Run fn(begin, end) over [0, n) on the configured worker count.
        /// The partition is fixed by (n, threads), so results never depend on
        /// scheduling order.
        template <typename Fn>
        void parallel_for(std::size_t n, Fn &&fn)
        {
            const unsigned t = assembly_threads();
            if (t <= 1 || n < 2 * static_cast<std::size_t>(t))
            {
                fn(std::size_t{0}, n);
                return;
            }

            std::vector<std::thread> pool;
            std::exception_ptr first_error;
            std::mutex error_mutex;
            const std::size_t chunk = (n + t - 1) / t;
            for (unsigned i = 0; i < t; i++)
            {
                const std::size_t b = std::min<std::size_t>(i * chunk, n);
                const std::size_t e = std::min<std::size_t>(b + chunk, n);
                if (b == e)
                    continue;
                pool.emplace_back([&, b, e]() {
                    try
                    {
                        fn(b, e);
                    }
                    catch (...)
                    {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error)
                            first_error = std::current_exception();
                    }
                });
            }
            for (auto &th : pool)
                th.join();
            if (first_error)
                std::rethrow_exception(first_error);
        }

        void check_disjoint(const ArrayGeometry &tx, const ArrayGeometry &rx, const char *who)
        {
            for (std::size_t i = 0; i < rx.elements.size(); i++)
                for (std::size_t j = 0; j < tx.elements.size(); j++)
                    if (!(distance(rx.elements[i], tx.elements[j]) > 0.0))
                        throw singularity_error(std::string(who) + ": rx element " +
                                                std::to_string(i) + " coincides with tx element " +
                                                std::to_string(j));
        }

        /// Local (u,v,w) coordinates, requiring w ~ 0 (planar aperture).
        std::vector<Point3> planar_local_coordinates(const ArrayGeometry &g, const char *who)
        {
            auto local = local_coordinates(g);
            double extent = 0.0;
            for (const auto &p : local)
                extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
            for (const auto &p : local)
                if (std::abs(p.z) > 1e-9 * (1.0 + extent))
                    throw std::invalid_argument(std::string(who) +
                                                ": geometry is not planar in its own frame");
            return local;
        }

        arma::cx_mat steering_matrix(const std::vector<Point3> &local,
                                     const std::vector<ScatteringSpectrum::LatticePoint> &lattice)
        {
            arma::cx_mat a(local.size(), lattice.size());
            for (std::size_t c = 0; c < lattice.size(); c++)
            {
                const auto &lp = lattice[c];
                for (std::size_t r = 0; r < local.size(); r++)
                {
                    const double phase =
                        lp.k_x * local[r].x + lp.k_y * local[r].y + lp.k_z * local[r].z;
                    a(r, c) = std::polar(1.0, phase);
                }
            }
            return a;
        }
    }

    void set_assembly_threads(unsigned n)
    {
        g_assembly_threads.store(n == 0 ? std::max(1u, std::thread::hardware_concurrency()) : n);
    }

    unsigned assembly_threads() { return g_assembly_threads.load(); }

    ScatteringSpectrum ScatteringSpectrum::isotropic(double rx_lx, double rx_ly, double tx_lx,
                                                     double tx_ly, const WaveParams &w)
    {
        const double lam = w.lambda0;
        for (double side : {rx_lx, rx_ly, tx_lx, tx_ly})
            if (!(side >= lam))
                throw degenerate_spectrum_error(
                    "ScatteringSpectrum::isotropic: aperture side " + std::to_string(side) +
                    " is below one wavelength; the plane-wave lattice degenerates");

        const double k0 = w.wavenumber();
        auto build_side = [&](double lx, double ly) {
            std::vector<LatticePoint> pts;
            const int lmax = static_cast<int>(std::floor(lx / lam));
            const int mmax = static_cast<int>(std::floor(ly / lam));
            double total = 0.0;
            for (int l = -lmax; l <= lmax; l++)
                for (int m = -mmax; m <= mmax; m++)
                {
                    const double el = l * lam / lx, em = m * lam / ly;
                    if (el * el + em * em > 1.0)
                        continue;
                    LatticePoint p;
                    p.l = l;
                    p.m = m;
                    p.k_x = 2.0 * arma::datum::pi * l / lx;
                    p.k_y = 2.0 * arma::datum::pi * m / ly;
                    const double g2 = k0 * k0 - p.k_x * p.k_x - p.k_y * p.k_y;
                    const double gamma = std::sqrt(std::max(g2, 0.0)) / k0;
                    // grazing points stay in the lattice but carry no power,
                    // otherwise 1/gamma blows up the variance
                    p.k_z = gamma * k0;
                    p.weight = (gamma <= grazing_gamma) ? 0.0 : 1.0 / gamma;
                    total += p.weight;
                    pts.push_back(p);
                }
            for (auto &p : pts)
                p.weight /= total;
            return pts;
        };

        ScatteringSpectrum s;
        s.rx_lattice = build_side(rx_lx, rx_ly);
        s.tx_lattice = build_side(tx_lx, tx_ly);
        s.rx_len_x = rx_lx;
        s.rx_len_y = rx_ly;
        s.tx_len_x = tx_lx;
        s.tx_len_y = tx_ly;
        return s;
    }

    ChannelMatrix los_channel_scalar(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                     const WaveParams &w, int quadrature_order)
    {
        check_disjoint(tx, rx, "los_channel_scalar");
        const auto rx_nodes = quadrature_offsets(rx, quadrature_order);
        const auto tx_nodes = quadrature_offsets(tx, quadrature_order);
        const std::size_t nr = rx.elements.size(), nt = tx.elements.size();

        ChannelMatrix h;
        h.provenance = Provenance::los;
        h.entries.set_size(nr, nt);
        parallel_for(nt, [&](std::size_t jb, std::size_t je) {
            for (std::size_t j = jb; j < je; j++)
                for (std::size_t i = 0; i < nr; i++)
                    h.entries(i, j) = scalar_green_avg(rx.elements[i], rx_nodes, rx.orientation,
                                                       tx.elements[j], tx_nodes, tx.orientation, w);
        });
        return h;
    }

    ChannelMatrix los_channel_dyadic(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                     const WaveParams &w, int quadrature_order)
    {
        check_disjoint(tx, rx, "los_channel_dyadic");
        const auto rx_nodes = quadrature_offsets(rx, quadrature_order);
        const auto tx_nodes = quadrature_offsets(tx, quadrature_order);
        const std::size_t nr = rx.elements.size(), nt = tx.elements.size();

        ChannelMatrix h;
        h.provenance = Provenance::los;
        h.rx_pol = 3;
        h.tx_pol = 3;
        h.entries.set_size(3 * nr, 3 * nt);
        parallel_for(nt, [&](std::size_t jb, std::size_t je) {
            for (std::size_t j = jb; j < je; j++)
                for (std::size_t i = 0; i < nr; i++)
                {
                    const arma::cx_mat33 block =
                        dyadic_green_avg(rx.elements[i], rx_nodes, rx.orientation, tx.elements[j],
                                         tx_nodes, tx.orientation, w);
                    for (int a = 0; a < 3; a++)
                        for (int b = 0; b < 3; b++)
                            h.entries(3 * i + a, 3 * j + b) = block(a, b);
                }
        });
        return h;
    }

    ChannelMatrix nlos_fourier_planewave(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                         const ScatteringSpectrum &spectrum, std::uint64_t seed,
                                         const WaveParams &w)
    {
        (void)w;
        if (spectrum.rx_lattice.empty() || spectrum.tx_lattice.empty())
            throw degenerate_spectrum_error("nlos_fourier_planewave: empty plane-wave lattice");
        auto check_side = [](const std::vector<ScatteringSpectrum::LatticePoint> &side,
                             const char *name) {
            double total = 0.0;
            for (const auto &p : side)
            {
                if (!(p.weight >= 0.0) || !std::isfinite(p.weight))
                    throw std::invalid_argument(std::string("nlos_fourier_planewave: invalid ") +
                                                name + " variance profile");
                total += p.weight;
            }
            if (!(total > 0.0))
                throw std::invalid_argument(std::string("nlos_fourier_planewave: all-zero ") +
                                            name + " variance profile");
        };
        check_side(spectrum.rx_lattice, "rx");
        check_side(spectrum.tx_lattice, "tx");

        const auto rx_local = planar_local_coordinates(rx, "nlos_fourier_planewave(rx)");
        const auto tx_local = planar_local_coordinates(tx, "nlos_fourier_planewave(tx)");

        const arma::cx_mat a_r = steering_matrix(rx_local, spectrum.rx_lattice);
        const arma::cx_mat a_t = steering_matrix(tx_local, spectrum.tx_lattice);

        // counter-based coefficients: c(i,j) is a pure function of
        // (seed, l_i, m_i, p_j, q_j), independent of evaluation order
        const std::size_t lr = spectrum.rx_lattice.size(), lt = spectrum.tx_lattice.size();
        arma::cx_mat coeff(lr, lt);
        parallel_for(lr, [&](std::size_t ib, std::size_t ie) {
            for (std::size_t i = ib; i < ie; i++)
            {
                const auto &rp = spectrum.rx_lattice[i];
                for (std::size_t j = 0; j < lt; j++)
                {
                    const auto &tp = spectrum.tx_lattice[j];
                    const double sigma = std::sqrt(rp.weight * tp.weight);
                    coeff(i, j) =
                        sigma * rng::complex_gaussian(rng::key(seed, rp.l, rp.m, tp.l, tp.m));
                }
            }
        });

        ChannelMatrix h;
        h.provenance = Provenance::nlos;
        h.entries = a_r * coeff * a_t.t();
        return h;
    }

    ChannelMatrix nlos_array_response(const ArrayGeometry &tx, const ArrayGeometry &rx,
                                      const PathSet &paths, const WaveParams &w)
    {
        if (paths.empty())
            throw std::invalid_argument("nlos_array_response: empty path set");

        const double k0 = w.wavenumber();
        const std::size_t nr = rx.elements.size(), nt = tx.elements.size();

        auto response_vector = [&](const ArrayGeometry &g, const Path &path, bool rx_side) {
            arma::cx_vec a(g.elements.size());
            if (path.regime == Path::Regime::far_field)
            {
                const Point3 &dir = rx_side ? path.aoa : path.aod;
                if (std::abs(norm(dir) - 1.0) > 1e-9)
                    throw std::invalid_argument("nlos_array_response: AoA/AoD must be unit vectors");
                for (std::size_t i = 0; i < g.elements.size(); i++)
                    a(i) = std::polar(1.0, k0 * dot(dir, g.elements[i] - g.center));
            }
            else
            {
                const double d_center = distance(g.center, path.scatterer);
                if (!(d_center > 0.0))
                    throw singularity_error("nlos_array_response: scatterer at array center");
                for (std::size_t i = 0; i < g.elements.size(); i++)
                {
                    const double d = distance(g.elements[i], path.scatterer);
                    if (!(d > 0.0))
                        throw singularity_error("nlos_array_response: scatterer coincides with " +
                                                std::string(rx_side ? "rx" : "tx") + " element " +
                                                std::to_string(i));
                    a(i) = std::polar(1.0, -k0 * (d - d_center));
                }
            }
            return a;
        };

        ChannelMatrix h;
        h.provenance = Provenance::nlos;
        h.entries.zeros(nr, nt);
        for (const auto &path : paths)
        {
            if (!std::isfinite(path.gain.real()) || !std::isfinite(path.gain.imag()))
                throw std::invalid_argument("nlos_array_response: non-finite path gain");
            const arma::cx_vec a_r = response_vector(rx, path, true);
            const arma::cx_vec a_t = response_vector(tx, path, false);
            h.entries += path.gain * a_r * a_t.t();
        }
        return h;
    }

    ChannelMatrix hybrid_channel(const ChannelMatrix &h_los, const ChannelMatrix &h_nlos,
                                 const HybridSpec &spec)
    {
        if (h_los.entries.n_rows != h_nlos.entries.n_rows ||
            h_los.entries.n_cols != h_nlos.entries.n_cols)
            throw std::invalid_argument("hybrid_channel: dimension mismatch");
        if (h_los.rx_pol != h_nlos.rx_pol || h_los.tx_pol != h_nlos.tx_pol)
            throw std::invalid_argument("hybrid_channel: polarization layouts differ");
        if (!(spec.rician_k >= 0.0))
            throw std::invalid_argument("hybrid_channel: Rician factor must be >= 0");

        auto normalized = [&](const arma::cx_mat &m) -> arma::cx_mat {
            if (spec.mode == HybridSpec::Normalization::raw)
                return m;
            const double f = arma::norm(m, "fro");
            if (!(f > 0.0))
                throw std::invalid_argument("hybrid_channel: zero component cannot be power-normalized");
            const double target = std::sqrt(static_cast<double>(m.n_rows) * m.n_cols);
            return m * (target / f);
        };

        const double k = spec.rician_k;
        const double w_los = std::sqrt(k / (k + 1.0));
        const double w_nlos = std::sqrt(1.0 / (k + 1.0));

        ChannelMatrix h;
        h.provenance = Provenance::hybrid;
        h.rx_pol = h_los.rx_pol;
        h.tx_pol = h_los.tx_pol;
        h.entries = w_los * normalized(h_los.entries) + w_nlos * normalized(h_nlos.entries);
        return h;
    }
}
