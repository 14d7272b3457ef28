// bnnfit: barycentric network fitting with topological losses.
//
//   bnnfit represent --sine -10 10 250 0 --points 150
//   bnnfit entropy   --csv prices.csv --x-col day --y-col close --top-k 4
//   bnnfit train     --sine -10 10 250 0.1 --loss lwpe --out runs/lwpe
//   bnnfit compare   --sine -10 10 250 0 --loss pe,lwpe --out runs/fig3
//
// Exit codes: 0 success, 2 input error, 3 numerical failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnnfit/bnn.hpp"
#include "bnnfit/errors.hpp"
#include "bnnfit/experiment.hpp"
#include "bnnfit/io.hpp"
#include "bnnfit/persistence.hpp"
#include "bnnfit/plot.hpp"
#include "bnnfit/training.hpp"

namespace fs = std::filesystem;
using namespace bnnfit;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Options {
    std::vector<double> sine;
    std::optional<std::uint64_t> data_seed;
    std::string csv;
    std::string x_col = "x";
    std::string y_col = "y";
    std::size_t points = 8;
    std::size_t epochs = 50;
    double lr = 0.1;
    std::uint64_t seed = 0;
    std::optional<double> min_gap;
    bool fixed_x = false;
    bool fixed_y = false;
    std::vector<std::string> losses;
    std::string out;
    std::optional<std::size_t> top_k;

    DataSource source() const {
        DataSource src;
        if (!sine.empty()) {
            if (sine[2] < 2 || sine[2] != static_cast<double>(static_cast<std::size_t>(sine[2]))) {
                throw InvalidArgument("--sine N must be an integer >= 2");
            }
            src.sine = SineSource{sine[0], sine[1], static_cast<std::size_t>(sine[2]), sine[3],
                                  data_seed.value_or(seed)};
        }
        if (!csv.empty()) src.csv = CsvSource{csv, x_col, y_col};
        return src;
    }

    TrainConfig train_config() const {
        TrainConfig tc;
        tc.n_base_points = points;
        tc.epochs = epochs;
        tc.learning_rate = lr;
        tc.seed = seed;
        tc.min_gap = min_gap;
        tc.train_x = !fixed_x;
        tc.train_y = !fixed_y;
        if (!losses.empty()) tc.loss = parse_loss_kind(losses.front());
        return tc;
    }
};

void add_source_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--sine", o.sine, "Sine generator: A B N SIGMA")->expected(4);
    cmd->add_option("--data-seed", o.data_seed, "Noise seed for --sine (defaults to --seed)");
    cmd->add_option("--csv", o.csv, "Input CSV with a header row");
    cmd->add_option("--x-col", o.x_col, "CSV column holding x")->capture_default_str();
    cmd->add_option("--y-col", o.y_col, "CSV column holding y")->capture_default_str();
}

void add_train_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--points", o.points, "Number of base points")->capture_default_str();
    cmd->add_option("--epochs", o.epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--lr", o.lr, "Learning rate")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Initialization seed")->capture_default_str();
    cmd->add_option("--min-gap", o.min_gap, "Minimum base point separation (default 1e-3 of the domain)");
    cmd->add_flag("--fixed-x", o.fixed_x, "Do not train base point abscissas");
    cmd->add_flag("--fixed-y", o.fixed_y, "Do not train base point values");
}

void print_record(std::ostream& os, const EpochRecord& r) {
    os << "epoch " << r.epoch << "  loss " << format_double(r.loss) << "  mse " << format_double(r.mse)
       << "  rmse " << format_double(r.rmse) << "  mae " << format_double(r.mae) << "  logcosh "
       << format_double(r.logcosh) << '\n';
}

void print_barcode(std::ostream& os, const Barcode& bc, std::string_view title) {
    os << title << ": " << bc.size() << " bars\n";
    os << "  PE   " << format_double(persistent_entropy(bc)) << '\n';
    os << "  LWPE " << format_double(lwpe(bc)) << '\n';
    for (const auto& bar : bc.bars) {
        os << "  [" << format_double(bar.birth) << ", " << format_double(bar.death) << ")"
           << (bar.essential ? "  essential" : "") << '\n';
    }
}

int cmd_represent(const Options& o) {
    const auto cloud = load_source(o.source());
    const auto cfg = equidistant_base_points(cloud, o.points);
    const auto segments = to_segments(cfg);
    const auto net = from_base_config(cfg);
    double bnn_vs_cplf = 0.0;
    for (double x : cloud.xs()) {
        const auto seg = segments[cfg.segment_of(x)];
        bnn_vs_cplf = std::max(bnn_vs_cplf, std::abs(net.evaluate(x, EvalPath::AllLocals) - seg(x)));
    }
    std::cout << "base points         " << cfg.size() << '\n'
              << "samples             " << cloud.size() << '\n'
              << "max |f - h|         " << format_double(cplf_max_error(segments, cloud.xs(), cloud.ys())) << '\n'
              << "max |BNN - h|       " << format_double(bnn_vs_cplf) << '\n';
    if (!o.out.empty()) {
        fs::create_directories(o.out);
        write_text_file(fs::path(o.out) / "model.json", model_to_json(cfg));
        write_text_file(fs::path(o.out) / "fit.svg", svg_cloud(cloud, cfg, "equidistant base points"));
    }
    return 0;
}

int cmd_entropy(const Options& o) {
    const auto cloud = load_source(o.source());
    const auto bc = lower_star_barcode(cloud);
    print_barcode(std::cout, bc, "barcode");
    std::optional<Barcode> top;
    if (o.top_k) {
        top = filter_top_k(bc, *o.top_k);
        print_barcode(std::cout, *top, "top-" + std::to_string(*o.top_k) + " barcode");
    }
    if (!o.out.empty()) {
        const fs::path dir(o.out);
        fs::create_directories(dir);
        std::ostringstream csv;
        write_barcode_csv(csv, bc);
        write_text_file(dir / "barcode.csv", csv.str());
        emit_plot(bc, dir / "barcode.svg");
        if (top) {
            std::ostringstream tcsv;
            write_barcode_csv(tcsv, *top);
            write_text_file(dir / "barcode_top.csv", tcsv.str());
            emit_plot(*top, dir / "barcode_top.svg");
        }
    }
    return 0;
}

int cmd_train(const Options& o) {
    const TrainConfig tc = o.train_config();
    if (!o.out.empty()) {
        ExperimentSpec spec{o.source(), tc, {tc.loss}, o.out, o.top_k};
        const auto summary = run_compare(spec);
        print_record(std::cout, summary.runs.front().final_record);
        return 0;
    }
    const auto cloud = load_source(o.source());
    const auto result = train(cloud, tc);
    print_record(std::cout, result.trace.records.front());
    print_record(std::cout, result.trace.records.back());
    std::cout << model_to_json(result.model);
    return 0;
}

int cmd_compare(const Options& o) {
    if (o.out.empty()) throw InvalidArgument("compare needs --out DIR");
    ExperimentSpec spec{o.source(), o.train_config(), {}, o.out, o.top_k};
    if (o.losses.empty()) {
        spec.losses.assign(std::begin(kAllLossKinds), std::end(kAllLossKinds));
    } else {
        for (const auto& name : o.losses) spec.losses.push_back(parse_loss_kind(name));
    }
    const auto summary = run_compare(spec);
    for (const auto& run : summary.runs) {
        std::cout << to_string(run.loss) << ": ";
        print_record(std::cout, run.final_record);
    }
    std::cout << "outputs in " << o.out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Barycentric neural network fitting with persistent-entropy losses"};
    app.require_subcommand(1);
    Options o;

    auto* represent = app.add_subcommand("represent", "Exact CPLF representation with equidistant base points");
    add_source_options(represent, o);
    represent->add_option("--points", o.points, "Number of base points")->capture_default_str();
    represent->add_option("--out", o.out, "Output directory");

    auto* entropy = app.add_subcommand("entropy", "Barcode, PE and LWPE of a point cloud");
    add_source_options(entropy, o);
    entropy->add_option("--top-k", o.top_k, "Also report the k longest bars");
    entropy->add_option("--out", o.out, "Output directory");

    auto* train_cmd = app.add_subcommand("train", "Train a network with one loss");
    add_source_options(train_cmd, o);
    add_train_options(train_cmd, o);
    train_cmd->add_option("--loss", o.losses, "mse, rmse, mae, logcosh, pe or lwpe")->expected(1);
    train_cmd->add_option("--out", o.out, "Output directory");
    train_cmd->add_option("--top-k", o.top_k, "Also write the k longest reference bars");

    auto* compare = app.add_subcommand("compare", "Train one network per loss from a shared initialization");
    add_source_options(compare, o);
    add_train_options(compare, o);
    compare->add_option("--loss", o.losses, "Losses to compare (comma separated, default all)")->delimiter(',');
    compare->add_option("--out", o.out, "Output directory")->required();
    compare->add_option("--top-k", o.top_k, "Also write the k longest reference bars");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*represent) return cmd_represent(o);
        if (*entropy) return cmd_entropy(o);
        if (*train_cmd) return cmd_train(o);
        if (*compare) return cmd_compare(o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
