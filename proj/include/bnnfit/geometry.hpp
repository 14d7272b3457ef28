#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bnnfit {

using Point = std::vector<double>;

/// Coordinates at or above this value count as inside a simplex.
inline constexpr double kInsideTolerance = -1e-12;

/// Relative determinant threshold used to reject degenerate simplices.
inline constexpr double kSingularityTolerance = 1e-10;

/// A d-simplex in R^d given by d+1 affinely independent vertices.
///
/// Construction validates the vertex count, the vertex dimensions and the
/// general-position condition; a Simplex that exists is always usable for
/// barycentric_coords().
class Simplex {
public:
    explicit Simplex(std::vector<Point> vertices);

    std::size_t dimension() const noexcept { return vertices_.size() - 1; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const Point& vertex(std::size_t i) const { return vertices_.at(i); }

private:
    std::vector<Point> vertices_;
};

struct BarycentricCoordinates {
    std::vector<double> t;
    /// Set by the producer: every coordinate >= kInsideTolerance for the
    /// general solve, a <= x <= b for interval_coords().
    bool inside = false;

    /// True when every coordinate lies in [0, 1] with no tolerance.
    bool strictly_inside() const noexcept;
    std::size_t size() const noexcept { return t.size(); }
    double operator[](std::size_t i) const { return t[i]; }
};

/// Closed interval [a, b] with a < b; the 1-simplex of the 1-D networks.
struct Interval {
    double a;
    double b;

    Interval(double a, double b);
    double length() const noexcept { return b - a; }
    bool contains(double x) const noexcept { return a <= x && x <= b; }
};

/// Solves the augmented (d+1)x(d+1) system [v_0 .. v_d; 1 .. 1] t = [p; 1]
/// by Gaussian elimination with partial pivoting.
BarycentricCoordinates barycentric_coords(const Simplex& simplex, std::span<const double> p);

/// Coordinates (1 - t, t) of x relative to [a, b], t = (x - a) / (b - a).
BarycentricCoordinates interval_coords(const Interval& iv, double x);

/// Determinant of the augmented vertex matrix (used for the general-position check).
double augmented_determinant(const std::vector<Point>& vertices);

}  // namespace bnnfit
