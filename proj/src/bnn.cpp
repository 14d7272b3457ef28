#include "bnnfit/bnn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bnnfit/errors.hpp"

namespace bnnfit {

LocalBNN::LocalBNN(Simplex simplex, std::vector<double> values)
    : simplex_(std::move(simplex)), values_(std::move(values)) {
    if (values_.size() != simplex_.vertices().size()) {
        throw DimensionMismatch("local network has " + std::to_string(values_.size()) +
                                " values for " + std::to_string(simplex_.vertices().size()) +
                                " vertices");
    }
}

BarycentricCoordinates LocalBNN::coordinates(std::span<const double> p) const {
    if (dimension() != 1) return barycentric_coords(simplex_, p);
    if (p.size() != 1) throw DimensionMismatch("expected a 1-D point");
    const double v0 = simplex_.vertex(0)[0];
    const double v1 = simplex_.vertex(1)[0];
    if (v0 < v1) return interval_coords(Interval(v0, v1), p[0]);
    auto c = interval_coords(Interval(v1, v0), p[0]);
    std::swap(c.t[0], c.t[1]);
    return c;
}

double outside_penalty(const BarycentricCoordinates& coords) {
    double penalty = 0.0;
    for (double t : coords.t) penalty += step_star(-t) + step_star(t - 1.0);
    return penalty;
}

double eval_local(const LocalBNN& net, const BarycentricCoordinates& coords) {
    const auto& g = net.values();
    if (coords.size() != g.size()) {
        throw DimensionMismatch("coordinate count " + std::to_string(coords.size()) +
                                " does not match vertex count " + std::to_string(g.size()));
    }
    const double penalty = outside_penalty(coords);
    double out = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        out += relu(1.0 - relu(1.0 - coords[i]) - penalty) * g[i];
    }
    return out;
}

BaseConfiguration::BaseConfiguration(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size()) {
        throw InvalidArgument("base configuration has " + std::to_string(xs_.size()) +
                              " abscissas but " + std::to_string(ys_.size()) + " values");
    }
    if (xs_.size() < 2) throw InvalidArgument("base configuration needs at least 2 points");
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
            throw InvalidArgument("non-finite base point at index " + std::to_string(i));
        }
        if (i > 0 && !(xs_[i - 1] < xs_[i])) {
            throw InvalidArgument("base abscissas must be strictly increasing (index " +
                                  std::to_string(i) + ")");
        }
    }
}

std::size_t BaseConfiguration::segment_of(double x) const {
    if (x < lower() || x > upper()) {
        throw SampleOutOfDomain("x = " + std::to_string(x) + " outside [" +
                                std::to_string(lower()) + ", " + std::to_string(upper()) + "]");
    }
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const auto k = static_cast<std::size_t>(it - xs_.begin());
    return std::min(k, xs_.size() - 1) - 1;
}

double BaseConfiguration::interpolate(double x) const {
    if (x < lower() || x > upper()) return 0.0;
    const std::size_t k = segment_of(x);
    const double t = (x - xs_[k]) / (xs_[k + 1] - xs_[k]);
    return (1.0 - t) * ys_[k] + t * ys_[k + 1];
}

GlobalBNN::GlobalBNN(std::vector<LocalBNN> locals) : locals_(std::move(locals)) {
    if (locals_.empty()) throw InvalidArgument("global network needs at least one simplex");
    const std::size_t d = locals_.front().dimension();
    for (const auto& local : locals_) {
        if (local.dimension() != d) throw DimensionMismatch("mixed simplex dimensions");
    }
}

double GlobalBNN::evaluate(std::span<const double> p, EvalPath path) const {
    if (path == EvalPath::Auto && base_) {
        if (p.size() != 1) throw DimensionMismatch("expected a 1-D point");
        return base_->interpolate(p[0]);
    }
    double sum = 0.0;
    std::size_t active = 0;
    for (const auto& local : locals_) {
        const auto coords = local.coordinates(p);
        sum += eval_local(local, coords);
        if (outside_penalty(coords) == 0.0) ++active;
    }
    return active == 0 ? 0.0 : sum / static_cast<double>(active);
}

double GlobalBNN::evaluate(double x, EvalPath path) const {
    return evaluate(std::span<const double>(&x, 1), path);
}

double eval_global(const GlobalBNN& net, std::span<const double> p, EvalPath path) {
    return net.evaluate(p, path);
}

double eval_global(const GlobalBNN& net, double x, EvalPath path) {
    return net.evaluate(x, path);
}

GlobalBNN from_base_config(const BaseConfiguration& cfg) {
    std::vector<LocalBNN> locals;
    locals.reserve(cfg.segment_count());
    const auto& xs = cfg.xs();
    const auto& ys = cfg.ys();
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        locals.emplace_back(Simplex({{xs[k]}, {xs[k + 1]}}), std::vector<double>{ys[k], ys[k + 1]});
    }
    GlobalBNN net(std::move(locals));
    net.base_ = cfg;
    return net;
}

std::vector<CplfSegment> to_segments(const BaseConfiguration& cfg) {
    const auto& xs = cfg.xs();
    const auto& ys = cfg.ys();
    std::vector<CplfSegment> out;
    out.reserve(cfg.segment_count());
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double slope = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]);
        out.push_back({xs[k], xs[k + 1], slope, ys[k] - slope * xs[k]});
    }
    return out;
}

double cplf_max_error(std::span<const CplfSegment> segments, std::span<const double> xs,
                      std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DimensionMismatch("sample x/y length mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto seg = std::find_if(segments.begin(), segments.end(), [&](const CplfSegment& s) {
            return s.a <= xs[i] && xs[i] <= s.b;
        });
        if (seg == segments.end()) {
            throw SampleOutOfDomain("sample x = " + std::to_string(xs[i]) + " outside the segments");
        }
        worst = std::max(worst, std::abs(ys[i] - (*seg)(xs[i])));
    }
    return worst;
}

}  // namespace bnnfit
