#include "bnnfit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bnnfit/errors.hpp"
#include "bnnfit/io.hpp"

namespace bnnfit {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    bool unset = true;

    void cover(double v) {
        if (!std::isfinite(v)) return;
        if (unset) {
            lo = hi = v;
            unset = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void pad() {
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

// Maps data coordinates into a rectangle of the document.
struct Panel {
    double left, top, width, height;
    Range x, y;

    double px(double v) const { return left + (v - x.lo) / (x.hi - x.lo) * width; }
    double py(double v) const { return top + height - (v - y.lo) / (y.hi - y.lo) * height; }

    void frame(std::ostringstream& out, std::string_view title) const {
        out << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(width)
            << "\" height=\"" << fixed(height) << "\" fill=\"none\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << fixed(left + width / 2) << "\" y=\"" << fixed(top - 8)
            << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(title) << "</text>\n";
        out << "<text x=\"" << fixed(left - 4) << "\" y=\"" << fixed(top + 10)
            << "\" text-anchor=\"end\" font-size=\"10\">" << label(y.hi) << "</text>\n";
        out << "<text x=\"" << fixed(left - 4) << "\" y=\"" << fixed(top + height)
            << "\" text-anchor=\"end\" font-size=\"10\">" << label(y.lo) << "</text>\n";
        out << "<text x=\"" << fixed(left) << "\" y=\"" << fixed(top + height + 14)
            << "\" font-size=\"10\">" << label(x.lo) << "</text>\n";
        out << "<text x=\"" << fixed(left + width) << "\" y=\"" << fixed(top + height + 14)
            << "\" text-anchor=\"end\" font-size=\"10\">" << label(x.hi) << "</text>\n";
    }

    void polyline(std::ostringstream& out, const std::vector<double>& xs, const std::vector<double>& ys,
                  std::string_view colour, std::string_view name) const {
        out << "<polyline class=\"series\" data-name=\"" << escape(name) << "\" fill=\"none\" stroke=\""
            << colour << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out << ' ';
            out << fixed(px(xs[i])) << ',' << fixed(py(ys[i]));
        }
        out << "\"/>\n";
    }
};

void open_doc(std::ostringstream& out, double width, double height) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width) << "\" height=\"" << fixed(height)
        << "\" viewBox=\"0 0 " << fixed(width) << ' ' << fixed(height) << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void legend(std::ostringstream& out, double x, double y, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        const double row = y + 14.0 * static_cast<double>(i);
        out << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(row - 4) << "\" x2=\"" << fixed(x + 16)
            << "\" y2=\"" << fixed(row - 4) << "\" stroke=\"" << kPalette[i % std::size(kPalette)]
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fixed(x + 20) << "\" y=\"" << fixed(row) << "\" font-size=\"11\">" << escape(names[i])
            << "</text>\n";
    }
}

using Column = double EpochRecord::*;

struct NamedColumn {
    const char* name;
    Column member;
};

constexpr NamedColumn kTraceColumns[] = {{"loss", &EpochRecord::loss},
                                         {"mse", &EpochRecord::mse},
                                         {"rmse", &EpochRecord::rmse},
                                         {"mae", &EpochRecord::mae},
                                         {"logcosh", &EpochRecord::logcosh}};

std::vector<double> epochs_of(const TrainTrace& trace) {
    std::vector<double> out;
    for (const auto& r : trace.records) out.push_back(static_cast<double>(r.epoch));
    return out;
}

std::vector<double> column_of(const TrainTrace& trace, Column member) {
    std::vector<double> out;
    for (const auto& r : trace.records) out.push_back(r.*member);
    return out;
}

}  // namespace

std::string svg_trace(const TrainTrace& trace, std::string_view title) {
    if (trace.records.empty()) throw EmptyInput("cannot plot an empty trace");
    Panel panel{60, 40, 560, 300, {}, {}};
    for (const auto& r : trace.records) {
        panel.x.cover(static_cast<double>(r.epoch));
        for (const auto& c : kTraceColumns) panel.y.cover(r.*c.member);
    }
    panel.x.pad();
    panel.y.pad();

    std::ostringstream out;
    open_doc(out, 760, 380);
    panel.frame(out, title);
    const auto xs = epochs_of(trace);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < std::size(kTraceColumns); ++i) {
        panel.polyline(out, xs, column_of(trace, kTraceColumns[i].member), kPalette[i], kTraceColumns[i].name);
        names.emplace_back(kTraceColumns[i].name);
    }
    legend(out, 640, 60, names);
    out << "</svg>\n";
    return out.str();
}

std::string svg_cloud(const PointCloudFunction& cloud, const std::optional<BaseConfiguration>& model,
                      std::string_view title) {
    if (cloud.empty()) throw EmptyInput("cannot plot an empty point cloud");
    Panel panel{60, 40, 560, 300, {}, {}};
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        panel.x.cover(cloud.xs()[i]);
        panel.y.cover(cloud.ys()[i]);
    }
    if (model) {
        for (std::size_t i = 0; i < model->size(); ++i) {
            panel.x.cover(model->xs()[i]);
            panel.y.cover(model->ys()[i]);
        }
    }
    panel.x.pad();
    panel.y.pad();

    std::ostringstream out;
    open_doc(out, 760, 380);
    panel.frame(out, title);
    panel.polyline(out, cloud.xs(), cloud.ys(), kPalette[0], "reference");
    std::vector<std::string> names{"reference"};
    if (model) {
        panel.polyline(out, model->xs(), model->ys(), kPalette[1], "bnn");
        for (std::size_t i = 0; i < model->size(); ++i) {
            out << "<circle class=\"base-point\" cx=\"" << fixed(panel.px(model->xs()[i])) << "\" cy=\""
                << fixed(panel.py(model->ys()[i])) << "\" r=\"3.5\" fill=\"" << kPalette[1] << "\"/>\n";
        }
        names.emplace_back("bnn");
    }
    legend(out, 640, 60, names);
    out << "</svg>\n";
    return out.str();
}

std::string svg_barcode(const Barcode& bc, std::string_view title) {
    if (bc.empty()) throw EmptyInput("cannot plot an empty barcode");
    Panel panel{60, 40, 560, 0, {}, {}};
    for (const auto& bar : bc.bars) {
        panel.x.cover(bar.birth);
        panel.x.cover(bar.death);
    }
    panel.x.pad();
    const double row = 14.0;
    panel.height = row * static_cast<double>(bc.size()) + 10.0;
    panel.y = Range{0.0, 1.0, false};

    std::ostringstream out;
    open_doc(out, 680, panel.height + 80);
    panel.frame(out, title);
    for (std::size_t i = 0; i < bc.size(); ++i) {
        const auto& bar = bc.bars[i];
        const double x0 = panel.px(bar.birth);
        const double width = std::max(panel.px(bar.death) - x0, 1.0);
        out << "<rect class=\"bar\" x=\"" << fixed(x0) << "\" y=\"" << fixed(panel.top + 5 + row * static_cast<double>(i))
            << "\" width=\"" << fixed(width) << "\" height=\"" << fixed(row - 4) << "\" fill=\""
            << (bar.essential ? kPalette[3] : kPalette[0]) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_learning_curves(const std::vector<std::pair<std::string, TrainTrace>>& runs) {
    if (runs.empty()) throw EmptyInput("no runs to plot");
    std::ostringstream out;
    const double panel_w = 360;
    const double panel_h = 220;
    open_doc(out, 2 * (panel_w + 90) + 120, 2 * (panel_h + 70) + 20);
    // Skip the "loss" column: panels compare the shared metrics.
    for (std::size_t m = 1; m < std::size(kTraceColumns); ++m) {
        const std::size_t cell = m - 1;
        Panel panel{70 + static_cast<double>(cell % 2) * (panel_w + 90),
                    40 + static_cast<double>(cell / 2) * (panel_h + 70), panel_w, panel_h, {}, {}};
        for (const auto& [name, trace] : runs) {
            for (const auto& r : trace.records) {
                panel.x.cover(static_cast<double>(r.epoch));
                panel.y.cover(r.*kTraceColumns[m].member);
            }
        }
        panel.x.pad();
        panel.y.pad();
        panel.frame(out, kTraceColumns[m].name);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto& trace = runs[i].second;
            panel.polyline(out, epochs_of(trace), column_of(trace, kTraceColumns[m].member),
                           kPalette[i % std::size(kPalette)], runs[i].first);
        }
    }
    std::vector<std::string> names;
    for (const auto& run : runs) names.push_back("trained with " + run.first);
    legend(out, 2 * (panel_w + 90) + 10, 60, names);
    out << "</svg>\n";
    return out.str();
}

void emit_plot(const TrainTrace& trace, const std::filesystem::path& path) {
    write_text_file(path, svg_trace(trace, path.stem().string()));
}

void emit_plot(const PointCloudFunction& cloud, const std::filesystem::path& path) {
    write_text_file(path, svg_cloud(cloud, std::nullopt, path.stem().string()));
}

void emit_plot(const Barcode& bc, const std::filesystem::path& path) {
    write_text_file(path, svg_barcode(bc, path.stem().string()));
}

}  // namespace bnnfit
