#include "bnnfit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bnnfit/errors.hpp"

namespace bnnfit {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool blank(std::string_view line) { return trim(line).empty(); }

std::size_t column_index(const std::vector<std::string>& header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ParseError("missing column '" + std::string(name) + "'", 1);
}

// Reads the header line and every data line, keeping the 1-based line numbers.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

CsvTable read_table(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (blank(line)) continue;
        if (!have_header) {
            table.header = split_row(line);
            have_header = true;
        } else {
            table.rows.emplace_back(line_no, split_row(line));
        }
    }
    if (!have_header) throw ParseError("missing header row", 1);
    return table;
}

double parse_cell(const std::vector<std::string>& cells, std::size_t col, std::size_t line_no) {
    if (col >= cells.size()) throw ParseError("too few columns", line_no);
    try {
        return parse_double(cells[col]);
    } catch (const InvalidArgument&) {
        throw ParseError("non-numeric cell '" + std::string(cells[col]) + "'", line_no);
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw InvalidArgument("not a finite number: '" + std::string(text) + "'");
    }
    return v;
}

PointCloudFunction parse_csv(std::istream& in, std::string_view x_column, std::string_view y_column) {
    const CsvTable table = read_table(in);
    const std::size_t xi = column_index(table.header, x_column);
    const std::size_t yi = column_index(table.header, y_column);
    std::vector<std::pair<double, double>> points;
    points.reserve(table.rows.size());
    for (const auto& [line_no, cells] : table.rows) {
        points.emplace_back(parse_cell(cells, xi, line_no), parse_cell(cells, yi, line_no));
    }
    if (points.empty()) throw EmptyInput("CSV has no data rows");
    return PointCloudFunction(std::move(points));
}

PointCloudFunction load_csv(const std::filesystem::path& path, std::string_view x_column,
                            std::string_view y_column) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_csv(in, x_column, y_column);
}

PointCloudFunction gen_sine(std::size_t n_points, double a, double b, double noise_sigma, std::uint64_t seed) {
    if (n_points < 2) throw InvalidArgument("sine generator needs at least 2 points");
    if (!(a < b)) throw InvalidArgument("sine generator needs a < b");
    if (!(noise_sigma >= 0.0)) throw InvalidArgument("noise sigma must be non-negative");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_sigma > 0.0 ? noise_sigma : 1.0);
    const double step = (b - a) / static_cast<double>(n_points - 1);
    std::vector<double> xs(n_points);
    std::vector<double> ys(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        xs[i] = i + 1 == n_points ? b : a + step * static_cast<double>(i);
        ys[i] = std::sin(xs[i]);
        if (noise_sigma > 0.0) ys[i] += noise(rng);
    }
    return PointCloudFunction(std::move(xs), std::move(ys));
}

void write_cloud_csv(std::ostream& out, const PointCloudFunction& cloud) {
    out << "x,y\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        out << format_double(cloud.xs()[i]) << ',' << format_double(cloud.ys()[i]) << '\n';
    }
}

void write_trace_csv(std::ostream& out, const TrainTrace& trace) {
    out << "epoch,loss,mse,rmse,mae,logcosh\n";
    for (const auto& r : trace.records) {
        out << r.epoch << ',' << format_double(r.loss) << ',' << format_double(r.mse) << ','
            << format_double(r.rmse) << ',' << format_double(r.mae) << ',' << format_double(r.logcosh) << '\n';
    }
}

TrainTrace read_trace_csv(std::istream& in) {
    const CsvTable table = read_table(in);
    const char* names[] = {"epoch", "loss", "mse", "rmse", "mae", "logcosh"};
    std::size_t cols[6];
    for (int i = 0; i < 6; ++i) cols[i] = column_index(table.header, names[i]);
    TrainTrace trace;
    for (const auto& [line_no, cells] : table.rows) {
        EpochRecord r;
        r.epoch = static_cast<std::size_t>(parse_cell(cells, cols[0], line_no));
        r.loss = parse_cell(cells, cols[1], line_no);
        r.mse = parse_cell(cells, cols[2], line_no);
        r.rmse = parse_cell(cells, cols[3], line_no);
        r.mae = parse_cell(cells, cols[4], line_no);
        r.logcosh = parse_cell(cells, cols[5], line_no);
        trace.records.push_back(std::move(r));
    }
    return trace;
}

void write_barcode_csv(std::ostream& out, const Barcode& bc) {
    out << "birth,death,essential\n";
    for (const auto& bar : bc.bars) {
        out << format_double(bar.birth) << ',' << format_double(bar.death) << ',' << (bar.essential ? 1 : 0)
            << '\n';
    }
}

Barcode read_barcode_csv(std::istream& in) {
    const CsvTable table = read_table(in);
    const std::size_t bi = column_index(table.header, "birth");
    const std::size_t di = column_index(table.header, "death");
    const std::size_t ei = column_index(table.header, "essential");
    Barcode bc;
    for (const auto& [line_no, cells] : table.rows) {
        const double essential = parse_cell(cells, ei, line_no);
        bc.bars.push_back({parse_cell(cells, bi, line_no), parse_cell(cells, di, line_no), 0, 0, essential != 0.0});
    }
    return bc;
}

std::string model_to_json(const BaseConfiguration& cfg) {
    nlohmann::ordered_json j;
    j["xs"] = cfg.xs();
    j["ys"] = cfg.ys();
    return j.dump(2) + "\n";
}

BaseConfiguration model_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        return BaseConfiguration(j.at("xs").get<std::vector<double>>(), j.at("ys").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid model JSON: ") + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << contents;
    if (!out) throw Error("write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace bnnfit
