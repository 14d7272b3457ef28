#include "bnnfit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bnnfit/errors.hpp"

namespace bnnfit {

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix augmented_matrix(const std::vector<Point>& vertices) {
    const std::size_t n = vertices.size();
    Matrix m(n, std::vector<double>(n, 1.0));
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t row = 0; row + 1 < n; ++row) {
            m[row][col] = vertices[col][row];
        }
    }
    return m;
}

// Forward elimination with partial pivoting. Applies the same row operations
// to rhs when given. Returns the determinant of the input matrix.
double eliminate(Matrix& m, std::vector<double>* rhs) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(m[r][k]) > std::abs(m[pivot][k])) pivot = r;
        }
        if (m[pivot][k] == 0.0) return 0.0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            if (rhs) std::swap((*rhs)[pivot], (*rhs)[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = m[r][k] / m[k][k];
            if (factor == 0.0) continue;
            for (std::size_t c = k; c < n; ++c) m[r][c] -= factor * m[k][c];
            if (rhs) (*rhs)[r] -= factor * (*rhs)[k];
        }
    }
    return det;
}

}  // namespace

double augmented_determinant(const std::vector<Point>& vertices) {
    Matrix m = augmented_matrix(vertices);
    return eliminate(m, nullptr);
}

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) {
        throw InvalidArgument("simplex needs at least 2 vertices");
    }
    const std::size_t d = vertices_.size() - 1;
    double scale = 0.0;
    for (const auto& v : vertices_) {
        if (v.size() != d) {
            throw DimensionMismatch("simplex vertex of dimension " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(d));
        }
        for (double c : v) scale = std::max(scale, std::abs(c));
    }
    const double det = augmented_determinant(vertices_);
    const double threshold = kSingularityTolerance * std::pow(scale, static_cast<double>(d));
    if (!(std::abs(det) > threshold)) {
        throw SingularSimplex("vertices are not affinely independent (|det| = " +
                              std::to_string(std::abs(det)) + ")");
    }
}

bool BarycentricCoordinates::strictly_inside() const noexcept {
    return std::all_of(t.begin(), t.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
    if (!(lo < hi)) throw InvalidArgument("interval requires a < b");
}

BarycentricCoordinates barycentric_coords(const Simplex& simplex, std::span<const double> p) {
    const std::size_t d = simplex.dimension();
    if (p.size() != d) {
        throw DimensionMismatch("point of dimension " + std::to_string(p.size()) +
                                " for a " + std::to_string(d) + "-simplex");
    }
    Matrix m = augmented_matrix(simplex.vertices());
    std::vector<double> rhs(p.begin(), p.end());
    rhs.push_back(1.0);
    if (eliminate(m, &rhs) == 0.0) throw SingularSimplex("singular augmented matrix");

    const std::size_t n = d + 1;
    std::vector<double> t(n);
    for (std::size_t k = n; k-- > 0;) {
        double acc = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) acc -= m[k][c] * t[c];
        t[k] = acc / m[k][k];
    }
    const bool inside =
        std::all_of(t.begin(), t.end(), [](double v) { return v >= kInsideTolerance; });
    return BarycentricCoordinates{std::move(t), inside};
}

BarycentricCoordinates interval_coords(const Interval& iv, double x) {
    const double t = (x - iv.a) / (iv.b - iv.a);
    return BarycentricCoordinates{{1.0 - t, t}, iv.contains(x)};
}

}  // namespace bnnfit
