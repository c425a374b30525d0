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

#include "xlmimo/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xlmimo
{
    namespace
    {
        constexpr double unit_axis_tol = 1e-9;

        void check_unit_axis(const Point3 &axis, const char *who)
        {
            if (!is_finite(axis) || std::abs(norm(axis) - 1.0) > unit_axis_tol)
                throw std::invalid_argument(std::string(who) + ": axis must be a unit vector");
        }
    }

    arma::mat33 axis_angle_rotation(const Point3 &axis, double angle)
    {
        check_unit_axis(axis, "axis_angle_rotation");
        const double c = std::cos(angle), s = std::sin(angle);
        const double ux = axis.x, uy = axis.y, uz = axis.z;

        arma::mat33 r;
        r(0, 0) = c + ux * ux * (1.0 - c);
        r(0, 1) = ux * uy * (1.0 - c) - uz * s;
        r(0, 2) = ux * uz * (1.0 - c) + uy * s;
        r(1, 0) = uy * ux * (1.0 - c) + uz * s;
        r(1, 1) = c + uy * uy * (1.0 - c);
        r(1, 2) = uy * uz * (1.0 - c) - ux * s;
        r(2, 0) = uz * ux * (1.0 - c) - uy * s;
        r(2, 1) = uz * uy * (1.0 - c) + ux * s;
        r(2, 2) = c + uz * uz * (1.0 - c);
        return r;
    }

    ArrayGeometry build_ula(int n, double spacing, const Point3 &center, const Point3 &axis)
    {
        if (n < 1)
            throw std::invalid_argument("build_ula: n must be >= 1");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::invalid_argument("build_ula: spacing must be positive");
        if (!is_finite(center))
            throw std::invalid_argument("build_ula: center must be finite");
        check_unit_axis(axis, "build_ula");

        ArrayGeometry g;
        g.center = center;
        g.elements.reserve(static_cast<std::size_t>(n));
        const double mid = 0.5 * static_cast<double>(n - 1);
        for (int i = 0; i < n; i++)
            g.elements.push_back(center + (static_cast<double>(i) - mid) * spacing * axis);
        return g;
    }

    ArrayGeometry build_upa(const SurfaceSpec &spec, ElementKind kind, double patch_side)
    {
        if (spec.n_x < 1 || spec.n_y < 1)
            throw std::invalid_argument("build_upa: n_x and n_y must be >= 1");
        if (!(spec.spacing > 0.0) || !std::isfinite(spec.spacing))
            throw std::invalid_argument("build_upa: spacing must be positive");
        if (!is_finite(spec.center) || !std::isfinite(spec.rotation_angle))
            throw std::invalid_argument("build_upa: center and angle must be finite");
        check_unit_axis(spec.rotation_axis, "build_upa");
        if (kind == ElementKind::patch && !(patch_side > 0.0 && patch_side <= spec.spacing))
            throw std::invalid_argument("build_upa: patch side must be in (0, spacing]");

        const arma::mat33 rot = axis_angle_rotation(spec.rotation_axis, spec.rotation_angle);

        ArrayGeometry g;
        g.kind = kind;
        g.patch_side = (kind == ElementKind::patch) ? patch_side : 0.0;
        g.center = spec.center;
        g.orientation = rot;
        g.elements.reserve(static_cast<std::size_t>(spec.n_x) * spec.n_y);

        // row-major from the most-negative local (x,y) corner, x fastest
        const double mx = 0.5 * static_cast<double>(spec.n_x - 1);
        const double my = 0.5 * static_cast<double>(spec.n_y - 1);
        for (int iy = 0; iy < spec.n_y; iy++)
            for (int ix = 0; ix < spec.n_x; ix++)
            {
                const double lx = (static_cast<double>(ix) - mx) * spec.spacing;
                const double ly = (static_cast<double>(iy) - my) * spec.spacing;
                Point3 p;
                p.x = spec.center.x + rot(0, 0) * lx + rot(0, 1) * ly;
                p.y = spec.center.y + rot(1, 0) * lx + rot(1, 1) * ly;
                p.z = spec.center.z + rot(2, 0) * lx + rot(2, 1) * ly;
                g.elements.push_back(p);
            }
        return g;
    }

    ArrayGeometry rotate_surface(const ArrayGeometry &g, const Point3 &axis, double angle)
    {
        check_unit_axis(axis, "rotate_surface");
        const arma::mat33 rot = axis_angle_rotation(axis, angle);

        ArrayGeometry out = g;
        out.orientation = rot * g.orientation;
        for (auto &p : out.elements)
        {
            const Point3 d = p - g.center;
            p.x = g.center.x + rot(0, 0) * d.x + rot(0, 1) * d.y + rot(0, 2) * d.z;
            p.y = g.center.y + rot(1, 0) * d.x + rot(1, 1) * d.y + rot(1, 2) * d.z;
            p.z = g.center.z + rot(2, 0) * d.x + rot(2, 1) * d.y + rot(2, 2) * d.z;
        }
        return out;
    }

    ArrayGeometry cap_as_dense_upa(double side, double max_spacing)
    {
        if (!(side > 0.0))
            throw std::invalid_argument("cap_as_dense_upa: side must be positive");
        if (!(max_spacing > 0.0) || max_spacing > 0.25)
            throw std::invalid_argument(
                "cap_as_dense_upa: max_spacing must be in (0, lambda0/4] to sample a "
                "continuous aperture");

        const int intervals = static_cast<int>(std::ceil(side / max_spacing));
        SurfaceSpec spec;
        spec.n_x = intervals + 1;
        spec.n_y = intervals + 1;
        spec.spacing = side / static_cast<double>(intervals);
        return build_upa(spec, ElementKind::point);
    }

    double aperture_diameter(const ArrayGeometry &g)
    {
        double best = 0.0;
        for (std::size_t i = 0; i + 1 < g.elements.size(); i++)
            for (std::size_t j = i + 1; j < g.elements.size(); j++)
                best = std::max(best, distance(g.elements[i], g.elements[j]));
        if (g.kind == ElementKind::patch)
            best += g.patch_side * std::sqrt(2.0); // corners of the outermost patches
        return best;
    }

    std::vector<Point3> local_coordinates(const ArrayGeometry &g)
    {
        std::vector<Point3> out;
        out.reserve(g.elements.size());
        const arma::mat33 &r = g.orientation;
        for (const auto &p : g.elements)
        {
            const Point3 d = p - g.center;
            out.push_back({r(0, 0) * d.x + r(1, 0) * d.y + r(2, 0) * d.z,
                           r(0, 1) * d.x + r(1, 1) * d.y + r(2, 1) * d.z,
                           r(0, 2) * d.x + r(1, 2) * d.y + r(2, 2) * d.z});
        }
        return out;
    }

    std::vector<Point3> quadrature_offsets(const ArrayGeometry &g, int order)
    {
        if (order < 1)
            throw std::invalid_argument("quadrature_offsets: order must be >= 1");
        if (g.kind == ElementKind::point)
            return {Point3{0.0, 0.0, 0.0}};

        std::vector<Point3> nodes;
        nodes.reserve(static_cast<std::size_t>(order) * order);
        for (int a = 0; a < order; a++)
            for (int b = 0; b < order; b++)
            {
                const double u = ((a + 0.5) / order - 0.5) * g.patch_side;
                const double v = ((b + 0.5) / order - 0.5) * g.patch_side;
                nodes.push_back({u, v, 0.0});
            }
        return nodes;
    }
}
