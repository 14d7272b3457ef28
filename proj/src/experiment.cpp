#include "bnnfit/experiment.hpp"

#include <chrono>
#include <future>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "bnnfit/errors.hpp"
#include "bnnfit/io.hpp"
#include "bnnfit/plot.hpp"

namespace bnnfit {

namespace fs = std::filesystem;

namespace {

struct RunOutput {
    LossKind loss;
    TrainResult result;
    double seconds;
};

// Records every path it writes so a failed experiment leaves nothing behind.
class OutputTracker {
public:
    explicit OutputTracker(fs::path root) : root_(std::move(root)) {
        std::error_code ec;
        created_root_ = !fs::exists(root_, ec);
        fs::create_directories(root_);
    }

    fs::path dir(const std::string& name) {
        const auto p = root_ / name;
        if (!fs::exists(p)) {
            fs::create_directories(p);
            paths_.push_back(p);
        }
        return p;
    }

    void write(const fs::path& path, const std::string& contents) {
        paths_.push_back(path);
        write_text_file(path, contents);
    }

    void commit() { committed_ = true; }

    ~OutputTracker() {
        if (committed_) return;
        std::error_code ec;
        if (created_root_) {
            fs::remove_all(root_, ec);
            return;
        }
        for (auto it = paths_.rbegin(); it != paths_.rend(); ++it) fs::remove_all(*it, ec);
    }

private:
    fs::path root_;
    bool created_root_ = false;
    bool committed_ = false;
    std::vector<fs::path> paths_;
};

template <typename Writer>
std::string render(Writer&& writer) {
    std::ostringstream out;
    writer(out);
    return out.str();
}

nlohmann::ordered_json record_json(const EpochRecord& r) {
    nlohmann::ordered_json j;
    j["epoch"] = r.epoch;
    j["loss"] = r.loss;
    j["mse"] = r.mse;
    j["rmse"] = r.rmse;
    j["mae"] = r.mae;
    j["logcosh"] = r.logcosh;
    return j;
}

nlohmann::ordered_json spec_json(const ExperimentSpec& spec) {
    nlohmann::ordered_json j;
    if (spec.source.sine) {
        const auto& s = *spec.source.sine;
        j["source"] = {{"kind", "sine"}, {"a", s.a}, {"b", s.b}, {"n_points", s.n_points},
                       {"noise_sigma", s.noise_sigma}, {"seed", s.seed}};
    } else if (spec.source.csv) {
        const auto& c = *spec.source.csv;
        j["source"] = {{"kind", "csv"}, {"path", c.path.string()}, {"x_column", c.x_column},
                       {"y_column", c.y_column}};
    }
    const auto& t = spec.train;
    j["n_base_points"] = t.n_base_points;
    j["epochs"] = t.epochs;
    j["learning_rate"] = t.learning_rate;
    j["seed"] = t.seed;
    j["train_x"] = t.train_x;
    j["train_y"] = t.train_y;
    j["min_gap"] = t.min_gap ? nlohmann::ordered_json(*t.min_gap) : nlohmann::ordered_json(nullptr);
    std::vector<std::string> losses;
    for (auto k : spec.losses) losses.emplace_back(to_string(k));
    j["losses"] = losses;
    j["top_k"] = spec.top_k ? nlohmann::ordered_json(*spec.top_k) : nlohmann::ordered_json(nullptr);
    j["out_dir"] = spec.out_dir.string();
    return j;
}

}  // namespace

PointCloudFunction load_source(const DataSource& source) {
    if (source.sine && source.csv) throw InvalidArgument("choose either a sine generator or a CSV file");
    if (source.sine) {
        const auto& s = *source.sine;
        return gen_sine(s.n_points, s.a, s.b, s.noise_sigma, s.seed);
    }
    if (source.csv) return load_csv(source.csv->path, source.csv->x_column, source.csv->y_column);
    throw InvalidArgument("no data source given (use --sine or --csv)");
}

BaseConfiguration equidistant_base_points(const PointCloudFunction& cloud, std::size_t n) {
    if (cloud.size() < 2) throw InvalidArgument("need at least 2 samples to place base points");
    if (n < 2) throw InvalidArgument("need at least 2 base points");
    const BaseConfiguration through_samples(cloud.xs(), cloud.ys());
    const double lower = cloud.lower();
    const double upper = cloud.upper();
    const double step = (upper - lower) / static_cast<double>(n - 1);
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = i + 1 == n ? upper : lower + step * static_cast<double>(i);
        ys[i] = through_samples.interpolate(xs[i]);
    }
    return BaseConfiguration(std::move(xs), std::move(ys));
}

RunSummary run_compare(const ExperimentSpec& spec) {
    if (spec.losses.empty()) throw InvalidArgument("at least one loss is required");
    if (spec.out_dir.empty()) throw InvalidArgument("an output directory is required");
    if (spec.top_k && *spec.top_k == 0) throw InvalidArgument("--top-k must be >= 1");

    const PointCloudFunction ref = load_source(spec.source);
    const BaseConfiguration start = init_base_points(ref, spec.train);
    const Barcode ref_barcode = lower_star_barcode(ref);

    // Each run is sequential; runs share nothing but the immutable inputs.
    std::vector<std::future<RunOutput>> jobs;
    for (LossKind loss : spec.losses) {
        jobs.push_back(std::async(std::launch::async, [&ref, &start, &spec, loss] {
            TrainConfig tc = spec.train;
            tc.loss = loss;
            const auto t0 = std::chrono::steady_clock::now();
            TrainResult result = train_from(start, ref, tc);
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            return RunOutput{loss, std::move(result), dt.count()};
        }));
    }
    std::vector<RunOutput> outputs;
    std::exception_ptr failure;
    for (auto& job : jobs) {
        try {
            outputs.push_back(job.get());
        } catch (...) {
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    RunSummary summary;
    summary.seed = spec.train.seed;
    summary.spec = spec;

    OutputTracker out(spec.out_dir);
    out.write(spec.out_dir / "reference.csv", render([&](auto& s) { write_cloud_csv(s, ref); }));
    out.write(spec.out_dir / "reference_barcode.csv", render([&](auto& s) { write_barcode_csv(s, ref_barcode); }));
    out.write(spec.out_dir / "reference_barcode.svg", svg_barcode(ref_barcode, "reference barcode"));
    if (spec.top_k) {
        const Barcode top = filter_top_k(ref_barcode, *spec.top_k);
        const std::string stem = "reference_barcode_top" + std::to_string(*spec.top_k);
        out.write(spec.out_dir / (stem + ".csv"), render([&](auto& s) { write_barcode_csv(s, top); }));
        out.write(spec.out_dir / (stem + ".svg"), svg_barcode(top, stem));
    }

    std::vector<std::pair<std::string, TrainTrace>> curves;
    for (const auto& run : outputs) {
        const std::string name(to_string(run.loss));
        const fs::path dir = out.dir(name);
        const auto& model = run.result.model;
        const auto& trace = run.result.trace;
        out.write(dir / "trace.csv", render([&](auto& s) { write_trace_csv(s, trace); }));
        out.write(dir / "model.json", model_to_json(model));
        const PointCloudFunction pred = predict_cloud(model, ref);
        out.write(dir / "prediction_barcode.csv",
                  render([&](auto& s) { write_barcode_csv(s, lower_star_barcode(pred)); }));
        out.write(dir / "fit.svg", svg_cloud(ref, model, "final model trained with " + name));
        out.write(dir / "trace.svg", svg_trace(trace, "trained with " + name));
        curves.emplace_back(name, trace);
        summary.runs.push_back({run.loss, trace.records.back(), run.seconds, trace.epochs_to_half_initial_mse()});
    }
    out.write(spec.out_dir / "learning_curves.svg", svg_learning_curves(curves));
    out.write(spec.out_dir / "summary.json", summary_to_json(summary));
    out.commit();
    return summary;
}

std::string summary_to_json(const RunSummary& summary) {
    nlohmann::ordered_json j;
    j["seed"] = summary.seed;
    auto runs = nlohmann::ordered_json::array();
    for (const auto& run : summary.runs) {
        nlohmann::ordered_json r;
        r["loss"] = std::string(to_string(run.loss));
        r["final"] = record_json(run.final_record);
        r["wall_seconds"] = run.wall_seconds;
        r["epochs_to_half_initial_mse"] = run.epochs_to_half_initial_mse
                                              ? nlohmann::ordered_json(*run.epochs_to_half_initial_mse)
                                              : nlohmann::ordered_json(nullptr);
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);
    j["spec"] = spec_json(summary.spec);
    return j.dump(2) + "\n";
}

}  // namespace bnnfit
