#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bnnfit/bnn.hpp"
#include "bnnfit/losses.hpp"
#include "bnnfit/persistence.hpp"

namespace bnnfit {

/// Default minimum abscissa separation as a fraction of the domain width.
inline constexpr double kDefaultMinGapFraction = 1e-3;

struct TrainConfig {
    std::size_t n_base_points = 8;
    std::size_t epochs = 50;
    double learning_rate = 0.1;
    std::uint64_t seed = 0;
    LossKind loss = LossKind::Lwpe;
    bool train_x = true;
    bool train_y = true;
    /// Unset means kDefaultMinGapFraction * (B - A).
    std::optional<double> min_gap;

    double resolved_min_gap(double lower, double upper) const;
    /// Throws InvalidArgument unless the configuration is usable on [lower, upper].
    void validate(double lower, double upper) const;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double loss = 0.0;  ///< value of the loss driving the updates
    double mse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    double logcosh = 0.0;
    std::optional<BaseConfiguration> snapshot;
};

struct TrainTrace {
    std::vector<EpochRecord> records;

    /// First epoch whose MSE is at most half of the epoch-0 MSE.
    std::optional<std::size_t> epochs_to_half_initial_mse() const;
};

struct TrainResult {
    BaseConfiguration model;
    TrainTrace trace;
};

/// Endpoints at {A, B}, n - 2 uniform interior abscissas, values uniform on
/// [min y, max y] of the reference. Deterministic in tc.seed.
BaseConfiguration init_base_points(const PointCloudFunction& ref, const TrainConfig& tc);

/// Pins both endpoints, sorts the interior and enforces min_gap by a
/// left-to-right clamp followed by a right-to-left clamp against B.
std::vector<double> project_abscissas(std::vector<double> xs, double min_gap);

/// One full-batch gradient step followed by projection.
BaseConfiguration sgd_step(const BaseConfiguration& cfg, const LossEvaluator& loss, const TrainConfig& tc);
BaseConfiguration sgd_step(const BaseConfiguration& cfg, const PointCloudFunction& ref, const TrainConfig& tc);

/// Metrics of cfg against ref; loss holds the value of `driving`.
EpochRecord measure(const BaseConfiguration& cfg, const LossEvaluator& driving, std::size_t epoch);

TrainResult train(const PointCloudFunction& ref, const TrainConfig& tc, bool keep_snapshots = false);

/// Training from a given starting configuration instead of init_base_points().
TrainResult train_from(const BaseConfiguration& start, const PointCloudFunction& ref, const TrainConfig& tc,
                       bool keep_snapshots = false);

}  // namespace bnnfit
