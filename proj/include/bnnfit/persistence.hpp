#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace bnnfit {

/// Sampled 1-D function {(x_i, y_i)} kept in canonical form: sorted by x,
/// duplicate abscissas collapsed. Equal x with unequal y is rejected.
class PointCloudFunction {
public:
    PointCloudFunction() = default;
    PointCloudFunction(std::vector<double> xs, std::vector<double> ys);
    explicit PointCloudFunction(std::vector<std::pair<double, double>> points);

    const std::vector<double>& xs() const noexcept { return xs_; }
    const std::vector<double>& ys() const noexcept { return ys_; }
    std::size_t size() const noexcept { return xs_.size(); }
    bool empty() const noexcept { return xs_.empty(); }
    double lower() const { return xs_.front(); }
    double upper() const { return xs_.back(); }

    bool operator==(const PointCloudFunction&) const = default;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
};

struct PersistenceBar {
    double birth;
    double death;
    std::size_t birth_index;  ///< vertex of the local minimum
    std::size_t death_index;  ///< vertex of the merging maximum, or the global argmax
    bool essential;

    double length() const noexcept { return death - birth; }
};

struct Barcode {
    std::vector<PersistenceBar> bars;

    std::size_t size() const noexcept { return bars.size(); }
    bool empty() const noexcept { return bars.empty(); }
    std::vector<double> lengths() const;
    const PersistenceBar& essential() const;
};

/// 0-dimensional lower-star persistence of the path graph over `values`
/// (vertex i adjacent to i +/- 1).
///
/// Vertices enter in (value, index) order; on a merge the component with the
/// younger minimum dies (elder rule). Pairs of zero persistence, which only
/// arise from plateaus under the index tie-break, are discarded. The
/// surviving component is reported once as the essential bar
/// [min, max) with death_index at the last vertex of the sweep.
Barcode lower_star_barcode(std::span<const double> values);
Barcode lower_star_barcode(const PointCloudFunction& pcf);

/// The k longest bars, ties broken by lower birth_index; the original bar
/// order is kept. k >= size() returns the barcode unchanged.
Barcode filter_top_k(const Barcode& bc, std::size_t k);

/// -sum p_i ln p_i with p_i = l_i / L. Throws DegenerateBarcode when L = 0.
double persistent_entropy(std::span<const double> lengths);
double persistent_entropy(const Barcode& bc);

/// -sum l_i ln p_i with p_i = l_i / L. Throws DegenerateBarcode when L = 0.
double lwpe(std::span<const double> lengths);
double lwpe(const Barcode& bc);

}  // namespace bnnfit
