#include "bnnfit/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bnnfit/errors.hpp"

namespace bnnfit {

namespace {

std::vector<std::pair<double, double>> zip(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) {
        throw DimensionMismatch("point cloud has " + std::to_string(xs.size()) + " x values and " +
                                std::to_string(ys.size()) + " y values");
    }
    std::vector<std::pair<double, double>> points(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) points[i] = {xs[i], ys[i]};
    return points;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void attach(std::size_t child_root, std::size_t parent_root) { parent_[child_root] = parent_root; }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

PointCloudFunction::PointCloudFunction(std::vector<double> xs, std::vector<double> ys)
    : PointCloudFunction(zip(xs, ys)) {}

PointCloudFunction::PointCloudFunction(std::vector<std::pair<double, double>> points) {
    for (const auto& [x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y)) throw InvalidArgument("non-finite sample");
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    xs_.reserve(points.size());
    ys_.reserve(points.size());
    for (const auto& [x, y] : points) {
        if (!xs_.empty() && xs_.back() == x) {
            if (ys_.back() != y) {
                throw FunctionConsistencyViolation("x = " + std::to_string(x) +
                                                   " has two values: " + std::to_string(ys_.back()) +
                                                   " and " + std::to_string(y));
            }
            continue;
        }
        xs_.push_back(x);
        ys_.push_back(y);
    }
}

std::vector<double> Barcode::lengths() const {
    std::vector<double> out(bars.size());
    std::transform(bars.begin(), bars.end(), out.begin(), [](const auto& b) { return b.length(); });
    return out;
}

const PersistenceBar& Barcode::essential() const {
    const auto it = std::find_if(bars.begin(), bars.end(), [](const auto& b) { return b.essential; });
    if (it == bars.end()) throw InvalidArgument("barcode has no essential bar");
    return *it;
}

Barcode lower_star_barcode(std::span<const double> values) {
    const std::size_t m = values.size();
    if (m == 0) throw EmptyInput("lower-star persistence of an empty function");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b] || (values[a] == values[b] && a < b);
    });
    // rank[v] is the position of v in the sweep; lower rank = elder minimum.
    std::vector<std::size_t> rank(m);
    for (std::size_t r = 0; r < m; ++r) rank[order[r]] = r;

    UnionFind uf(m);
    std::vector<std::size_t> birth_of(m);  // indexed by component root
    std::vector<bool> entered(m, false);
    Barcode bc;

    for (std::size_t v : order) {
        entered[v] = true;
        birth_of[v] = v;
        std::size_t root = v;
        bool joined = false;
        for (std::size_t u : {v - 1, v + 1}) {
            if (u >= m || !entered[u]) continue;  // v - 1 wraps for v == 0
            const std::size_t other = uf.find(u);
            if (!joined) {
                uf.attach(root, other);
                root = other;
                joined = true;
                continue;
            }
            if (other == root) continue;
            std::size_t elder = root;
            std::size_t younger = other;
            if (rank[birth_of[younger]] < rank[birth_of[elder]]) std::swap(elder, younger);
            const std::size_t b = birth_of[younger];
            if (values[v] > values[b]) {
                bc.bars.push_back({values[b], values[v], b, v, false});
            }
            uf.attach(younger, elder);
            root = elder;
        }
    }

    const std::size_t argmin = order.front();
    const std::size_t argmax = order.back();
    bc.bars.push_back({values[argmin], values[argmax], argmin, argmax, true});
    return bc;
}

Barcode lower_star_barcode(const PointCloudFunction& pcf) {
    return lower_star_barcode(std::span<const double>(pcf.ys()));
}

Barcode filter_top_k(const Barcode& bc, std::size_t k) {
    if (k == 0) throw InvalidArgument("top-k filtering needs k >= 1");
    if (k >= bc.size()) return bc;
    std::vector<std::size_t> idx(bc.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ba = bc.bars[a];
        const auto& bb = bc.bars[b];
        if (ba.length() != bb.length()) return ba.length() > bb.length();
        return ba.birth_index < bb.birth_index;
    });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    Barcode out;
    out.bars.reserve(k);
    for (std::size_t i : idx) out.bars.push_back(bc.bars[i]);
    return out;
}

namespace {

double total_length(std::span<const double> lengths) {
    const double total = std::accumulate(lengths.begin(), lengths.end(), 0.0);
    if (!(total > 0.0)) throw DegenerateBarcode();
    return total;
}

}  // namespace

double persistent_entropy(std::span<const double> lengths) {
    const double total = total_length(lengths);
    double pe = 0.0;
    for (double l : lengths) {
        if (l <= 0.0) continue;
        const double p = l / total;
        pe -= p * std::log(p);
    }
    return pe;
}

double persistent_entropy(const Barcode& bc) {
    const auto lengths = bc.lengths();
    return persistent_entropy(std::span<const double>(lengths));
}

double lwpe(std::span<const double> lengths) {
    const double total = total_length(lengths);
    double out = 0.0;
    for (double l : lengths) {
        if (l <= 0.0) continue;
        out -= l * std::log(l / total);
    }
    return out;
}

double lwpe(const Barcode& bc) {
    const auto lengths = bc.lengths();
    return lwpe(std::span<const double>(lengths));
}

}  // namespace bnnfit
