#include "bnnfit/losses.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bnnfit/errors.hpp"

namespace bnnfit {

namespace {

double sign(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double log_cosh(double r) noexcept {
    const double a = std::abs(r);
    if (a < 20.0) return std::log(std::cosh(r));
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

std::vector<double> residuals(std::span<const double> pred, const PointCloudFunction& ref) {
    if (pred.size() != ref.size()) {
        throw DimensionMismatch("prediction has " + std::to_string(pred.size()) +
                                " samples, reference has " + std::to_string(ref.size()));
    }
    std::vector<double> r(pred.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = pred[i] - ref.ys()[i];
    return r;
}

double classical_value(std::span<const double> r, LossKind kind) {
    if (r.empty()) throw EmptyInput("loss of an empty point cloud");
    const double n = static_cast<double>(r.size());
    double acc = 0.0;
    switch (kind) {
        case LossKind::Mse:
        case LossKind::Rmse:
            for (double v : r) acc += v * v;
            return kind == LossKind::Mse ? acc / n : std::sqrt(acc / n);
        case LossKind::Mae:
            for (double v : r) acc += std::abs(v);
            return acc / n;
        case LossKind::LogCosh:
            for (double v : r) acc += log_cosh(v);
            return acc / n;
        default:
            throw InvalidArgument(std::string(to_string(kind)) + " is not a classical loss");
    }
}

double descriptor(std::span<const double> lengths, LossKind kind) {
    return kind == LossKind::Pe ? persistent_entropy(lengths) : lwpe(lengths);
}

void require_topological(LossKind kind) {
    if (!is_topological(kind)) {
        throw InvalidArgument(std::string(to_string(kind)) + " is not a topological loss");
    }
}

}  // namespace

std::string_view to_string(LossKind kind) noexcept {
    switch (kind) {
        case LossKind::Mse: return "mse";
        case LossKind::Rmse: return "rmse";
        case LossKind::Mae: return "mae";
        case LossKind::LogCosh: return "logcosh";
        case LossKind::Pe: return "pe";
        case LossKind::Lwpe: return "lwpe";
    }
    return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
    for (LossKind k : kAllLossKinds) {
        if (to_string(k) == name) return k;
    }
    throw InvalidArgument("unknown loss '" + std::string(name) +
                          "' (expected mse, rmse, mae, logcosh, pe or lwpe)");
}

bool is_topological(LossKind kind) noexcept { return kind == LossKind::Pe || kind == LossKind::Lwpe; }

PointCloudFunction predict_cloud(const BaseConfiguration& cfg, const PointCloudFunction& ref) {
    const GlobalBNN net = from_base_config(cfg);
    std::vector<double> ys(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double x = ref.xs()[i];
        if (x < cfg.lower() || x > cfg.upper()) {
            throw SampleOutOfDomain("reference x = " + std::to_string(x) + " outside [" +
                                    std::to_string(cfg.lower()) + ", " +
                                    std::to_string(cfg.upper()) + "]");
        }
        ys[i] = net.evaluate(x);
    }
    return PointCloudFunction(ref.xs(), std::move(ys));
}

double classical_loss(const PointCloudFunction& pred, const PointCloudFunction& ref, LossKind kind) {
    if (pred.xs() != ref.xs()) throw DimensionMismatch("prediction and reference abscissas differ");
    const auto r = residuals(pred.ys(), ref);
    return classical_value(r, kind);
}

double topo_loss(const PointCloudFunction& pred, const PointCloudFunction& ref, LossKind kind) {
    require_topological(kind);
    const auto ref_len = lower_star_barcode(ref).lengths();
    const auto pred_len = lower_star_barcode(pred).lengths();
    return std::abs(descriptor(ref_len, kind) - descriptor(pred_len, kind));
}

std::vector<double> lwpe_length_gradient(std::span<const double> lengths) {
    double total = 0.0;
    for (double l : lengths) total += l;
    if (!(total > 0.0)) throw DegenerateBarcode();
    std::vector<double> g(lengths.size(), 0.0);
    for (std::size_t j = 0; j < lengths.size(); ++j) {
        if (lengths[j] > 0.0) g[j] = -std::log(lengths[j] / total);
    }
    return g;
}

std::vector<double> pe_length_gradient(std::span<const double> lengths) {
    const double pe = persistent_entropy(lengths);
    double total = 0.0;
    for (double l : lengths) total += l;
    std::vector<double> g(lengths.size(), 0.0);
    for (std::size_t j = 0; j < lengths.size(); ++j) {
        if (lengths[j] > 0.0) g[j] = (-std::log(lengths[j] / total) - pe) / total;
    }
    return g;
}

LossEvaluator::LossEvaluator(PointCloudFunction ref, LossKind kind) : ref_(std::move(ref)), kind_(kind) {
    if (ref_.empty()) throw EmptyInput("empty reference cloud");
    if (is_topological(kind_)) {
        const auto lengths = lower_star_barcode(ref_).lengths();
        ref_descriptor_ = descriptor(lengths, kind_);
    }
}

double LossEvaluator::prediction_gradient(std::span<const double> pred, std::vector<double>& grad) const {
    const std::size_t n = pred.size();
    grad.assign(n, 0.0);
    const double count = static_cast<double>(n);

    if (!is_topological(kind_)) {
        const auto r = residuals(pred, ref_);
        const double value = classical_value(r, kind_);
        for (std::size_t i = 0; i < n; ++i) {
            switch (kind_) {
                case LossKind::Mse: grad[i] = 2.0 * r[i] / count; break;
                case LossKind::Rmse: grad[i] = value > 0.0 ? r[i] / (count * value) : 0.0; break;
                case LossKind::Mae: grad[i] = sign(r[i]) / count; break;
                case LossKind::LogCosh: grad[i] = std::tanh(r[i]) / count; break;
                default: break;
            }
        }
        return value;
    }

    const Barcode bc = lower_star_barcode(pred);
    const auto lengths = bc.lengths();
    const double pred_descriptor = descriptor(lengths, kind_);
    const auto dlen = kind_ == LossKind::Pe ? pe_length_gradient(lengths) : lwpe_length_gradient(lengths);
    // d|ref - pred| / d pred_descriptor
    const double outer = -sign(ref_descriptor_ - pred_descriptor);
    for (std::size_t j = 0; j < bc.size(); ++j) {
        const auto& bar = bc.bars[j];
        grad[bar.death_index] += outer * dlen[j];
        grad[bar.birth_index] -= outer * dlen[j];
    }
    return std::abs(ref_descriptor_ - pred_descriptor);
}

double LossEvaluator::value(const BaseConfiguration& cfg) const {
    const auto pred = predict_cloud(cfg, ref_);
    if (is_topological(kind_)) {
        const auto lengths = lower_star_barcode(pred).lengths();
        return std::abs(ref_descriptor_ - descriptor(lengths, kind_));
    }
    return classical_value(residuals(pred.ys(), ref_), kind_);
}

LossReport LossEvaluator::evaluate(const BaseConfiguration& cfg) const {
    const auto pred = predict_cloud(cfg, ref_);
    std::vector<double> dpred;
    LossReport report;
    report.value = prediction_gradient(pred.ys(), dpred);
    report.gradient_xs.assign(cfg.size(), 0.0);
    report.gradient_ys.assign(cfg.size(), 0.0);

    const auto& a = cfg.xs();
    const auto& y = cfg.ys();
    for (std::size_t i = 0; i < ref_.size(); ++i) {
        if (dpred[i] == 0.0) continue;
        const double x = ref_.xs()[i];
        const std::size_t k = cfg.segment_of(x);
        const double h = a[k + 1] - a[k];
        const double t = (x - a[k]) / h;
        const double rise = y[k + 1] - y[k];
        report.gradient_ys[k] += dpred[i] * (1.0 - t);
        report.gradient_ys[k + 1] += dpred[i] * t;
        report.gradient_xs[k] += dpred[i] * rise * (x - a[k + 1]) / (h * h);
        report.gradient_xs[k + 1] -= dpred[i] * rise * (x - a[k]) / (h * h);
    }
    return report;
}

LossReport loss_gradient(const BaseConfiguration& cfg, const PointCloudFunction& ref, LossKind kind) {
    return LossEvaluator(ref, kind).evaluate(cfg);
}

}  // namespace bnnfit
