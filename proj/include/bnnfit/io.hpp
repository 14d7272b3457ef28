#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "bnnfit/bnn.hpp"
#include "bnnfit/persistence.hpp"
#include "bnnfit/training.hpp"

namespace bnnfit {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Reads a header + comma-separated file and returns the canonical cloud of
/// the two named columns. ParseError carries the 1-based line number.
PointCloudFunction load_csv(const std::filesystem::path& path, std::string_view x_column,
                            std::string_view y_column);
PointCloudFunction parse_csv(std::istream& in, std::string_view x_column, std::string_view y_column);

/// n equispaced samples of sin(x) on [a, b] plus N(0, sigma) noise.
PointCloudFunction gen_sine(std::size_t n_points, double a, double b, double noise_sigma, std::uint64_t seed);

void write_cloud_csv(std::ostream& out, const PointCloudFunction& cloud);

/// Header "epoch,loss,mse,rmse,mae,logcosh".
void write_trace_csv(std::ostream& out, const TrainTrace& trace);
TrainTrace read_trace_csv(std::istream& in);

/// Header "birth,death,essential".
void write_barcode_csv(std::ostream& out, const Barcode& bc);
/// Critical indices are not stored and come back as 0.
Barcode read_barcode_csv(std::istream& in);

/// {"xs": [...], "ys": [...]}
std::string model_to_json(const BaseConfiguration& cfg);
BaseConfiguration model_from_json(std::string_view text);

void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace bnnfit
