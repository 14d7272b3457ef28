#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnnfit/bnn.hpp"
#include "bnnfit/persistence.hpp"

namespace bnnfit {

enum class LossKind { Mse, Rmse, Mae, LogCosh, Pe, Lwpe };

inline constexpr LossKind kAllLossKinds[] = {LossKind::Mse,     LossKind::Rmse, LossKind::Mae,
                                             LossKind::LogCosh, LossKind::Pe,   LossKind::Lwpe};

/// CLI spelling: "mse", "rmse", "mae", "logcosh", "pe", "lwpe".
std::string_view to_string(LossKind kind) noexcept;
LossKind parse_loss_kind(std::string_view name);
bool is_topological(LossKind kind) noexcept;

struct LossReport {
    double value = 0.0;
    std::vector<double> gradient_xs;  ///< d loss / d x_i of the base points
    std::vector<double> gradient_ys;  ///< d loss / d y_i of the base points
};

/// Evaluates the network at every reference abscissa.
PointCloudFunction predict_cloud(const BaseConfiguration& cfg, const PointCloudFunction& ref);

/// MSE, RMSE, MAE or LogCosh of pred against ref; abscissas must match.
double classical_loss(const PointCloudFunction& pred, const PointCloudFunction& ref, LossKind kind);

/// |D(ref) - D(pred)| with D = persistent entropy (Pe) or LWPE (Lwpe) of the
/// lower-star barcode.
double topo_loss(const PointCloudFunction& pred, const PointCloudFunction& ref, LossKind kind);

/// d descriptor / d l_j for each bar length.
std::vector<double> pe_length_gradient(std::span<const double> lengths);
std::vector<double> lwpe_length_gradient(std::span<const double> lengths);

/// Loss and analytic gradient with respect to the base points for a fixed
/// reference cloud. The reference descriptor of the topological losses is
/// computed once at construction.
///
/// Differentiation contract: the persistence pairing of the prediction and
/// the segment holding each reference sample are treated as locally
/// constant; ReLU'(0) = 0, step*' = 0 and sign(0) = 0.
class LossEvaluator {
public:
    LossEvaluator(PointCloudFunction ref, LossKind kind);

    LossKind kind() const noexcept { return kind_; }
    const PointCloudFunction& reference() const noexcept { return ref_; }
    double reference_descriptor() const noexcept { return ref_descriptor_; }

    double value(const BaseConfiguration& cfg) const;
    LossReport evaluate(const BaseConfiguration& cfg) const;

private:
    // d loss / d pred_i for every reference sample, plus the loss value.
    double prediction_gradient(std::span<const double> pred, std::vector<double>& grad) const;

    PointCloudFunction ref_;
    LossKind kind_;
    double ref_descriptor_ = 0.0;
};

LossReport loss_gradient(const BaseConfiguration& cfg, const PointCloudFunction& ref, LossKind kind);

}  // namespace bnnfit
