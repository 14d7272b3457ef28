#pragma once

// Central finite-difference check of LossEvaluator::evaluate against
// LossEvaluator::value, with detection of the configurations where the
// loss is not differentiable at the chosen step.

#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <tuple>

#include "bnnfit/losses.hpp"
#include "oracles.hpp"

namespace gradcheck {

using namespace bnnfit;

inline constexpr double kStep = 1e-5;

inline PointCloudFunction smooth_reference(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> amp(0.5, 2.0);
    std::uniform_real_distribution<double> freq(0.3, 1.5);
    std::uniform_real_distribution<double> phase(0.0, 6.0);
    const double a1 = amp(rng), w1 = freq(rng), p1 = phase(rng);
    const double a2 = amp(rng) * 0.5, w2 = freq(rng) * 2.0, p2 = phase(rng);
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        ys[i] = a1 * std::sin(w1 * xs[i] + p1) + a2 * std::cos(w2 * xs[i] + p2);
    }
    return PointCloudFunction(xs, ys);
}

inline BaseConfiguration random_config(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> along(lo, hi);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    std::vector<double> xs{lo};
    for (std::size_t i = 2; i < n; ++i) xs.push_back(along(rng));
    xs.push_back(hi);
    std::sort(xs.begin() + 1, xs.end() - 1);
    std::vector<double> ys(n);
    for (auto& y : ys) y = value(rng);
    return BaseConfiguration(xs, ys);
}

// (birth_index, death_index) pairs of the prediction barcode.
inline std::set<std::pair<std::size_t, std::size_t>> pairing(const BaseConfiguration& cfg,
                                                            const PointCloudFunction& ref) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (const auto& b : lower_star_barcode(predict_cloud(cfg, ref)).bars) out.emplace(b.birth_index, b.death_index);
    return out;
}

inline std::optional<BaseConfiguration> perturbed(const BaseConfiguration& cfg, bool along_x, std::size_t i,
                                                  double delta) {
    auto xs = cfg.xs();
    auto ys = cfg.ys();
    (along_x ? xs : ys)[i] += delta;
    try {
        return BaseConfiguration(xs, ys);
    } catch (const InvalidArgument&) {
        return std::nullopt;
    }
}

/// Returns false when the configuration sits too close to a kink of the
/// loss for a central difference with step kStep to be meaningful.
inline bool differentiable_here(const BaseConfiguration& cfg, const LossEvaluator& loss) {
    const auto& ref = loss.reference();
    const double margin = 10.0 * kStep;
    for (std::size_t i = 1; i + 1 < cfg.size(); ++i) {
        for (double x : ref.xs()) {
            if (std::abs(x - cfg.xs()[i]) < margin) return false;  // segment membership would change
        }
        if (cfg.xs()[i] - cfg.xs()[i - 1] < margin) return false;
    }
    const auto pred = predict_cloud(cfg, ref);
    if (loss.kind() == LossKind::Mae) {
        for (std::size_t i = 0; i < ref.size(); ++i) {
            if (std::abs(pred.ys()[i] - ref.ys()[i]) < margin * 10.0) return false;
        }
    }
    if (is_topological(loss.kind())) {
        // |D_ref - D_pred| has a kink where the descriptors meet.
        if (loss.value(cfg) < 1e-3) return false;
        const auto base = pairing(cfg, ref);
        for (bool along_x : {false, true}) {
            for (std::size_t i = 0; i < cfg.size(); ++i) {
                if (along_x && (i == 0 || i + 1 == cfg.size())) continue;
                for (double delta : {kStep, -kStep}) {
                    const auto moved = perturbed(cfg, along_x, i, delta);
                    if (!moved || pairing(*moved, ref) != base) return false;
                }
            }
        }
    }
    return true;
}

struct Result {
    double relative_error = 0.0;
    double gradient_norm = 0.0;
};

/// ||analytic - fd|| / ||fd|| over all ordinates and interior abscissas.
inline Result compare(const BaseConfiguration& cfg, const LossEvaluator& loss) {
    const auto report = loss.evaluate(cfg);
    const std::size_t n = cfg.size();
    auto value_of = [&](bool along_x) {
        return [&, along_x](const std::vector<double>& v) {
            return loss.value(along_x ? BaseConfiguration(v, cfg.ys()) : BaseConfiguration(cfg.xs(), v));
        };
    };
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fd = oracle::central_difference(value_of(false), cfg.ys(), i, kStep);
        diff2 += (report.gradient_ys[i] - fd) * (report.gradient_ys[i] - fd);
        ref2 += fd * fd;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double fd = oracle::central_difference(value_of(true), cfg.xs(), i, kStep);
        diff2 += (report.gradient_xs[i] - fd) * (report.gradient_xs[i] - fd);
        ref2 += fd * fd;
    }
    const double norm = std::sqrt(ref2);
    return {std::sqrt(diff2) / std::max(norm, 1e-300), norm};
}

}  // namespace gradcheck
