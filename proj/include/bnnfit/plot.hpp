#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bnnfit/bnn.hpp"
#include "bnnfit/persistence.hpp"
#include "bnnfit/training.hpp"

namespace bnnfit {

// Standalone SVG documents. Coordinates are printed with fixed precision so
// identical input gives identical bytes.

/// One polyline per trace column: loss, mse, rmse, mae, logcosh.
std::string svg_trace(const TrainTrace& trace, std::string_view title);

/// Reference cloud as a polyline; optional model drawn as a second polyline
/// with its base points marked.
std::string svg_cloud(const PointCloudFunction& cloud, const std::optional<BaseConfiguration>& model,
                      std::string_view title);

/// One horizontal bar per barcode entry.
std::string svg_barcode(const Barcode& bc, std::string_view title);

/// Panels for mse, rmse, mae and logcosh with one polyline per named run.
std::string svg_learning_curves(const std::vector<std::pair<std::string, TrainTrace>>& runs);

void emit_plot(const TrainTrace& trace, const std::filesystem::path& path);
void emit_plot(const PointCloudFunction& cloud, const std::filesystem::path& path);
void emit_plot(const Barcode& bc, const std::filesystem::path& path);

}  // namespace bnnfit
