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

#ifndef XLMIMO_GEOMETRY_HPP
#define XLMIMO_GEOMETRY_HPP

#include <armadillo>
#include <cmath>
#include <vector>

namespace xlmimo
{
    // All lengths are in units of the free-space wavelength lambda0 (= 1 internally).

    struct Point3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        Point3() = default;
        Point3(double px, double py, double pz) : x(px), y(py), z(pz) {}
    };

    inline Point3 operator+(const Point3 &a, const Point3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    inline Point3 operator-(const Point3 &a, const Point3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    inline Point3 operator*(double s, const Point3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    inline double dot(const Point3 &a, const Point3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    inline Point3 cross(const Point3 &a, const Point3 &b)
    {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    inline double norm(const Point3 &a) { return std::sqrt(dot(a, a)); }
    inline double distance(const Point3 &a, const Point3 &b) { return norm(a - b); }
    inline bool is_finite(const Point3 &a)
    {
        return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
    }

    enum class ElementKind
    {
        point, // sizeless point antenna
        patch  // square patch antenna, side length in lambda0
    };

    /// Ordered antenna element positions with a local polarization frame.
    /// For planar builders, elements are ordered row-major starting at the
    /// most-negative local (x,y) corner; the local x axis varies fastest.
    struct ArrayGeometry
    {
        std::vector<Point3> elements;
        ElementKind kind = ElementKind::point;
        double patch_side = 0.0;  // only meaningful for kind == patch
        arma::mat33 orientation;  // maps local frame to global, det +1
        Point3 center;

        ArrayGeometry() { orientation.eye(); }

        std::size_t size() const { return elements.size(); }
    };

    /// Planar surface description used by the UPA builder and scenario configs.
    struct SurfaceSpec
    {
        int n_x = 1, n_y = 1;
        double spacing = 0.5;
        Point3 center;
        Point3 rotation_axis{1.0, 0.0, 0.0};
        double rotation_angle = 0.0; // radians, about rotation_axis through center
    };

    /// Rodrigues rotation matrix about a unit axis.
    arma::mat33 axis_angle_rotation(const Point3 &axis, double angle);

    ArrayGeometry build_ula(int n, double spacing, const Point3 &center, const Point3 &axis);

    ArrayGeometry build_upa(const SurfaceSpec &spec, ElementKind kind = ElementKind::point,
                            double patch_side = 0.0);

    /// Rigid rotation of a geometry about an axis through its own center.
    ArrayGeometry rotate_surface(const ArrayGeometry &g, const Point3 &axis, double angle);

    /// Continuous-aperture surface approximated by a dense point-antenna UPA.
    /// max_spacing must not exceed lambda0/4 so the aperture stays well sampled.
    ArrayGeometry cap_as_dense_upa(double side, double max_spacing);

    /// Largest pairwise element distance; the aperture diameter D used by the
    /// field-region classifier.
    double aperture_diameter(const ArrayGeometry &g);

    /// Element positions in the local frame: orientation^T * (p - center).
    std::vector<Point3> local_coordinates(const ArrayGeometry &g);

    /// Local-frame offsets of the quadrature nodes covering one element:
    /// a single zero offset for point elements, an order x order midpoint grid
    /// over the patch for patch elements.
    std::vector<Point3> quadrature_offsets(const ArrayGeometry &g, int order);
}

#endif
