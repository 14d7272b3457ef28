#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bnnfit/losses.hpp"
#include "bnnfit/persistence.hpp"
#include "bnnfit/training.hpp"

namespace bnnfit {

struct SineSource {
    double a = -10.0;
    double b = 10.0;
    std::size_t n_points = 250;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
};

struct CsvSource {
    std::filesystem::path path;
    std::string x_column = "x";
    std::string y_column = "y";
};

struct DataSource {
    std::optional<SineSource> sine;
    std::optional<CsvSource> csv;
};

struct ExperimentSpec {
    DataSource source;
    TrainConfig train;
    std::vector<LossKind> losses;
    std::filesystem::path out_dir;
    std::optional<std::size_t> top_k;
};

struct LossSummary {
    LossKind loss{};
    EpochRecord final_record;
    double wall_seconds = 0.0;
    std::optional<std::size_t> epochs_to_half_initial_mse;
};

struct RunSummary {
    std::vector<LossSummary> runs;
    std::uint64_t seed = 0;
    ExperimentSpec spec;
};

PointCloudFunction load_source(const DataSource& source);

/// Base points at equally spaced abscissas with values interpolated from the cloud.
BaseConfiguration equidistant_base_points(const PointCloudFunction& cloud, std::size_t n);

/// Trains one network per requested loss from a shared initialization and
/// writes, under spec.out_dir:
///   reference.csv, reference_barcode.csv, reference_barcode.svg
///   [reference_barcode_top<k>.csv]
///   <loss>/trace.csv, <loss>/model.json, <loss>/prediction_barcode.csv,
///   <loss>/fit.svg, <loss>/trace.svg
///   learning_curves.svg, summary.json
/// Files created by a failed run are removed before the error propagates.
RunSummary run_compare(const ExperimentSpec& spec);

std::string summary_to_json(const RunSummary& summary);

}  // namespace bnnfit
