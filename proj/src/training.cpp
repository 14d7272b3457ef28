#include "bnnfit/training.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bnnfit/errors.hpp"

namespace bnnfit {

double TrainConfig::resolved_min_gap(double lower, double upper) const {
    return min_gap.value_or(kDefaultMinGapFraction * (upper - lower));
}

void TrainConfig::validate(double lower, double upper) const {
    if (n_base_points < 2) throw InvalidArgument("need at least 2 base points");
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw InvalidArgument("learning rate must be positive");
    }
    if (!train_x && !train_y) throw InvalidArgument("at least one of train_x / train_y must be set");
    if (!(lower < upper)) throw InvalidArgument("reference domain must have lower < upper");
    const double gap = resolved_min_gap(lower, upper);
    if (!(gap > 0.0)) throw InvalidArgument("min_gap must be positive");
    if (!(gap * static_cast<double>(n_base_points - 1) < upper - lower)) {
        throw InvalidArgument("min_gap " + std::to_string(gap) + " is infeasible for " +
                              std::to_string(n_base_points) + " base points on [" +
                              std::to_string(lower) + ", " + std::to_string(upper) + "]");
    }
}

std::optional<std::size_t> TrainTrace::epochs_to_half_initial_mse() const {
    if (records.empty()) return std::nullopt;
    const double target = 0.5 * records.front().mse;
    for (const auto& r : records) {
        if (r.mse <= target) return r.epoch;
    }
    return std::nullopt;
}

std::vector<double> project_abscissas(std::vector<double> xs, double min_gap) {
    const std::size_t n = xs.size();
    if (n < 2) return xs;
    const double lower = xs.front();
    const double upper = xs.back();
    std::sort(xs.begin() + 1, xs.end() - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) xs[i] = std::max(xs[i], xs[i - 1] + min_gap);
    for (std::size_t i = n - 1; i-- > 1;) xs[i] = std::min(xs[i], xs[i + 1] - min_gap);
    xs.front() = lower;
    xs.back() = upper;
    return xs;
}

BaseConfiguration init_base_points(const PointCloudFunction& ref, const TrainConfig& tc) {
    if (ref.empty()) throw EmptyInput("cannot initialise from an empty reference");
    const double lower = ref.lower();
    const double upper = ref.upper();
    tc.validate(lower, upper);

    std::mt19937_64 rng(tc.seed);
    std::uniform_real_distribution<double> along(lower, upper);
    std::vector<double> xs;
    xs.reserve(tc.n_base_points);
    xs.push_back(lower);
    for (std::size_t i = 2; i < tc.n_base_points; ++i) xs.push_back(along(rng));
    xs.push_back(upper);
    xs = project_abscissas(std::move(xs), tc.resolved_min_gap(lower, upper));

    const auto [lo, hi] = std::minmax_element(ref.ys().begin(), ref.ys().end());
    std::vector<double> ys(tc.n_base_points, *lo);
    if (*lo < *hi) {
        std::uniform_real_distribution<double> value(*lo, *hi);
        for (auto& y : ys) y = value(rng);
    }
    return BaseConfiguration(std::move(xs), std::move(ys));
}

BaseConfiguration sgd_step(const BaseConfiguration& cfg, const LossEvaluator& loss, const TrainConfig& tc) {
    const LossReport report = loss.evaluate(cfg);
    std::vector<double> xs = cfg.xs();
    std::vector<double> ys = cfg.ys();
    if (tc.train_x) {
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) xs[i] -= tc.learning_rate * report.gradient_xs[i];
    }
    if (tc.train_y) {
        for (std::size_t i = 0; i < ys.size(); ++i) ys[i] -= tc.learning_rate * report.gradient_ys[i];
    }
    xs = project_abscissas(std::move(xs), tc.resolved_min_gap(cfg.lower(), cfg.upper()));
    return BaseConfiguration(std::move(xs), std::move(ys));
}

BaseConfiguration sgd_step(const BaseConfiguration& cfg, const PointCloudFunction& ref, const TrainConfig& tc) {
    return sgd_step(cfg, LossEvaluator(ref, tc.loss), tc);
}

EpochRecord measure(const BaseConfiguration& cfg, const LossEvaluator& driving, std::size_t epoch) {
    const auto& ref = driving.reference();
    const auto pred = predict_cloud(cfg, ref);
    EpochRecord rec;
    rec.epoch = epoch;
    rec.mse = classical_loss(pred, ref, LossKind::Mse);
    rec.rmse = classical_loss(pred, ref, LossKind::Rmse);
    rec.mae = classical_loss(pred, ref, LossKind::Mae);
    rec.logcosh = classical_loss(pred, ref, LossKind::LogCosh);
    switch (driving.kind()) {
        case LossKind::Mse: rec.loss = rec.mse; break;
        case LossKind::Rmse: rec.loss = rec.rmse; break;
        case LossKind::Mae: rec.loss = rec.mae; break;
        case LossKind::LogCosh: rec.loss = rec.logcosh; break;
        default: rec.loss = driving.value(cfg); break;
    }
    return rec;
}

TrainResult train_from(const BaseConfiguration& start, const PointCloudFunction& ref, const TrainConfig& tc,
                       bool keep_snapshots) {
    tc.validate(ref.lower(), ref.upper());
    if (start.lower() != ref.lower() || start.upper() != ref.upper()) {
        throw InvalidArgument("base configuration endpoints must match the reference domain");
    }
    const LossEvaluator loss(ref, tc.loss);
    TrainResult result{start, {}};
    result.trace.records.reserve(tc.epochs + 1);

    auto record = [&](std::size_t epoch) {
        EpochRecord rec = measure(result.model, loss, epoch);
        if (keep_snapshots) rec.snapshot = result.model;
        result.trace.records.push_back(std::move(rec));
    };
    record(0);
    for (std::size_t epoch = 1; epoch <= tc.epochs; ++epoch) {
        result.model = sgd_step(result.model, loss, tc);
        record(epoch);
    }
    return result;
}

TrainResult train(const PointCloudFunction& ref, const TrainConfig& tc, bool keep_snapshots) {
    return train_from(init_base_points(ref, tc), ref, tc, keep_snapshots);
}

}  // namespace bnnfit
