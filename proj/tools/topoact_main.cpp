#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "topoact/activation.hpp"
#include "topoact/data.hpp"
#include "topoact/experiment.hpp"
#include "topoact/network.hpp"
#include "topoact/util.hpp"

namespace {

using namespace topoact;

constexpr double kGradcheckTolerance = 1e-5;
constexpr double kGradcheckH = 1e-5;

struct GenerateOptions {
    std::string dataset;
    std::size_t n = 1000;
    double noise = 0.05;
    double radius_ratio = 0.5;
    double major_radius = 2.0;
    double minor_radius = 1.0;
    double phase = std::numbers::pi;
    std::uint64_t seed = 0;
    std::string out;
};

struct TrainCliOptions {
    std::string dataset;
    std::string activation = "relu";
    std::size_t depth = 1;
    std::size_t width = 4;
    std::size_t epochs = 100;
    double lr = 0.05;
    std::size_t batch_size = 32;
    double split_ratio = 0.7;
    double clip = 0.0;
    bool standardize = false;
    std::uint64_t seed = 0;
    std::size_t n = 1000;
    double noise = 0.05;
    double radius_ratio = 0.5;
    double major_radius = 2.0;
    double minor_radius = 1.0;
    double phase = std::numbers::pi;
    std::string data_path = "data/wdbc.csv";
    std::string out;
};

struct GridOptions {
    std::string config;
    std::size_t parallelism = 1;
    std::string out_dir = ".";
};

struct GradcheckOptions {
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    bool inject_error = false;
};

struct TransformOptions {
    std::string in;
    std::string activation;
    std::vector<std::string> params;
    std::string out;
};

struct ReportOptions {
    std::string records;
    std::string format = "markdown";
    std::string out;
};

// Input problems are the caller's to fix; rethrow them as validation errors
// so they map to exit code 1 rather than 2.
template <typename F>
auto as_validation(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

int run_generate(const GenerateOptions& o) {
    Rng rng(o.seed);
    Dataset d;
    if (o.dataset == "circles") {
        d = gen_circles(o.n, o.noise, o.radius_ratio, rng);
    } else if (o.dataset == "torus") {
        d = gen_curves_on_torus(o.n, o.major_radius, o.minor_radius, o.phase, o.noise, rng);
    } else {
        throw std::invalid_argument("unknown dataset '" + o.dataset +
                                    "' (valid: circles, torus)");
    }
    save_dataset_csv(d, o.out);
    std::cout << "wrote " << d.size() << " samples to " << o.out << "\n";
    return 0;
}

DatasetConfig dataset_config_from_flags(const std::string& name, const TrainCliOptions& o) {
    DatasetConfig cfg;
    cfg.kind = parse_dataset_kind(name);
    cfg.n = o.n;
    cfg.noise_sigma = o.noise;
    cfg.radius_ratio = o.radius_ratio;
    cfg.major_radius = o.major_radius;
    cfg.minor_radius = o.minor_radius;
    cfg.phase = o.phase;
    cfg.path = o.data_path;
    return cfg;
}

int run_train(const TrainCliOptions& o) {
    RunSpec spec;
    spec.dataset = as_validation([&] { return dataset_config_from_flags(o.dataset, o); });
    spec.activation = as_validation([&] { return parse_activation(o.activation); });
    spec.depth = o.depth;
    spec.width = o.width;
    spec.epochs = o.epochs;
    spec.lr = o.lr;
    spec.batch_size = o.batch_size;
    spec.split_ratio = o.split_ratio;
    spec.clip = o.clip;
    spec.standardize = o.standardize;
    spec.seed = o.seed;
    spec.base_seed = o.seed;
    if (spec.dataset.kind == DatasetKind::BreastCancer &&
        !std::filesystem::exists(spec.dataset.path)) {
        throw std::invalid_argument("no such data file: " + spec.dataset.path);
    }

    const SingleRunResult result = run_single(spec);
    for (std::size_t i = 0; i < result.report.train_loss.size(); ++i) {
        std::cout << "epoch " << i + 1 << " train_loss "
                  << format_double(result.report.train_loss[i]) << " val_loss "
                  << format_double(result.report.val_loss[i]) << "\n";
    }
    std::cout << "final val_loss " << format_double(result.record.final_val_loss)
              << " val_accuracy " << format_double(result.record.final_val_accuracy) << "\n";

    if (!o.out.empty()) {
        std::string csv = "epoch,train_loss,val_loss\n";
        for (std::size_t i = 0; i < result.report.train_loss.size(); ++i) {
            csv += std::to_string(i + 1);
            csv += ',';
            csv += format_double(result.report.train_loss[i]);
            csv += ',';
            csv += format_double(result.report.val_loss[i]);
            csv += '\n';
        }
        write_text_file(o.out, csv);
    }
    return 0;
}

int run_grid_cmd(const GridOptions& o) {
    const GridConfig cfg = as_validation([&] { return load_grid_config(o.config); });

    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + o.out_dir);

    const GridResult result = run_grid(cfg, o.parallelism);
    const std::vector<AggregateRecord> aggregates = aggregate(result.records);

    const std::filesystem::path dir(o.out_dir);
    write_text_file((dir / "records.csv").string(), format_records_csv(result.records));
    write_text_file((dir / "aggregates.csv").string(), format_aggregates_csv(aggregates));
    const std::string markdown = format_markdown_report(aggregates);
    write_text_file((dir / "report.md").string(), markdown);

    std::cout << markdown;
    std::cerr << result.records.size() << " runs completed, " << result.failures.size()
              << " failed\n";
    if (!result.failures.empty()) {
        for (const RunFailure& f : result.failures) {
            std::cerr << "  " << f.cell << ": " << f.message << "\n";
        }
        return 2;
    }
    return 0;
}

std::vector<double> admissible_points(const ActivationState& state, std::size_t count, Rng& rng) {
    const std::vector<double> boundaries = activation_boundaries(state);
    std::vector<double> points;
    points.reserve(count);
    while (points.size() < count) {
        const double x = rng.uniform(-3.0, 3.0);
        bool ok = true;
        for (const double b : boundaries) {
            if (std::abs(x - b) < 2e-3) {
                ok = false;
                break;
            }
        }
        if (ok) points.push_back(x);
    }
    return points;
}

// Deliberately corrupted derivative fed through the same comparison the real
// check uses; the detector has to flag it.
double injected_fault_error(Rng& rng) {
    const ActivationState state = make_activation(ActivationKind::SmoothSplit, {0.3, 0.7});
    const std::vector<double> points = admissible_points(state, 100, rng);
    const std::vector<double> ones(points.size(), 1.0);
    ActivationGrads grads = activation_backward(state, points, ones);
    for (double& d : grads.d_input) d += 0.1;

    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double numeric = (activation_apply(state, points[i] + kGradcheckH) -
                                activation_apply(state, points[i] - kGradcheckH)) /
                               (2.0 * kGradcheckH);
        const double err =
            std::abs(grads.d_input[i] - numeric) / std::max(1.0, std::abs(grads.d_input[i]));
        worst = std::max(worst, err);
    }
    return worst;
}

int run_gradcheck(const GradcheckOptions& o) {
    Rng rng(o.seed);

    double max_activation_err = 0.0;
    for (const ActivationKind kind : kAllActivationKinds) {
        double kind_err = 0.0;
        for (std::size_t trial = 0; trial < o.trials; ++trial) {
            const ActivationState state = init_activation(kind, rng);
            const std::vector<double> points = admissible_points(state, 100, rng);
            kind_err = std::max(kind_err, finite_diff_check(state, points, kGradcheckH));
        }
        std::cout << activation_name(kind) << ": activation max rel err "
                  << format_double(kind_err) << " (" << o.trials << " draws x 100 points)\n";
        max_activation_err = std::max(max_activation_err, kind_err);
    }

    double max_network_err = 0.0;
    for (const ActivationKind kind : kAllActivationKinds) {
        double kind_err = 0.0;
        for (std::size_t trial = 0; trial < 3; ++trial) {
            bool checked = false;
            for (std::size_t attempt = 0; attempt < 50 && !checked; ++attempt) {
                NetworkSpec spec;
                spec.input_dim = 2 + rng.uniform_index(2);
                spec.hidden_width = 2 + rng.uniform_index(3);
                spec.hidden_depth = 1 + rng.uniform_index(2);
                spec.candidate_activation = kind;
                Network net = build_network(spec, rng);

                const std::size_t batch_rows = 4 + rng.uniform_index(5);
                Matrix batch(batch_rows, spec.input_dim);
                for (double& v : batch.data()) v = rng.uniform(-2.0, 2.0);
                std::vector<int> labels(batch_rows);
                for (int& y : labels) y = static_cast<int>(rng.uniform_index(2));

                if (!gradcheck_admissible(net, batch)) continue;
                kind_err =
                    std::max(kind_err, network_finite_diff_check(net, batch, labels, kGradcheckH));
                checked = true;
            }
            if (!checked) {
                throw std::runtime_error("gradcheck: no admissible network configuration found");
            }
        }
        std::cout << activation_name(kind) << ": network max rel err " << format_double(kind_err)
                  << " (3 nets)\n";
        max_network_err = std::max(max_network_err, kind_err);
    }

    double injected_err = 0.0;
    if (o.inject_error) {
        injected_err = injected_fault_error(rng);
        std::cout << "injected-fault rel err " << format_double(injected_err)
                  << " (a correct checker must flag this)\n";
    }

    std::cout << "max activation rel err: " << format_double(max_activation_err) << "\n";
    std::cout << "max network rel err: " << format_double(max_network_err) << "\n";

    const bool pass = max_activation_err <= kGradcheckTolerance &&
                      max_network_err <= kGradcheckTolerance &&
                      (!o.inject_error || injected_err <= kGradcheckTolerance);
    std::cout << "gradcheck: " << (pass ? "PASS" : "FAIL") << " (tolerance "
              << format_double(kGradcheckTolerance) << ")\n";
    return pass ? 0 : 2;
}

ActivationState activation_from_cli(const std::string& name,
                                    const std::vector<std::string>& params) {
    const ActivationKind kind = parse_activation(name);
    const std::vector<std::string_view> names = activation_param_names(kind);

    std::vector<std::pair<std::string, double>> given;
    for (const std::string& token : params) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("malformed --params entry '" + token +
                                        "' (expected name=value)");
        }
        given.emplace_back(token.substr(0, eq), parse_double(token.substr(eq + 1)));
    }
    for (const auto& [key, value] : given) {
        if (std::find(names.begin(), names.end(), key) == names.end()) {
            std::string valid;
            for (const auto n : names) {
                if (!valid.empty()) valid += ", ";
                valid += n;
            }
            throw std::invalid_argument("activation '" + name + "' has no parameter '" + key +
                                        "'" + (valid.empty() ? "" : " (valid: " + valid + ")"));
        }
    }

    std::vector<double> values;
    for (const auto role : names) {
        const auto it = std::find_if(given.begin(), given.end(),
                                     [&](const auto& kv) { return kv.first == role; });
        if (it == given.end()) {
            throw std::invalid_argument("missing parameter '" + std::string(role) +
                                        "' for activation '" + name + "'");
        }
        values.push_back(it->second);
    }
    return make_activation(kind, std::move(values));
}

int run_transform(const TransformOptions& o) {
    const ActivationState state =
        as_validation([&] { return activation_from_cli(o.activation, o.params); });
    const Dataset input = as_validation([&] { return load_dataset_csv(o.in); });
    const Dataset output = transform_pointcloud(input, state);
    save_dataset_csv(output, o.out);
    std::cout << "wrote " << output.size() << " transformed samples to " << o.out << "\n";
    return 0;
}

int run_report(const ReportOptions& o) {
    const std::vector<RunRecord> records = as_validation([&] { return read_records_csv(o.records); });
    if (records.empty()) throw std::invalid_argument(o.records + ": no records");

    const std::vector<AggregateRecord> aggregates = aggregate(records);
    const std::string text = o.format == "csv" ? format_aggregates_csv(aggregates)
                                               : format_markdown_report(aggregates);
    std::cout << text;
    if (!o.out.empty()) write_text_file(o.out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"training engine and experiment harness for topology-aware activations"};
    app.set_version_flag("--version", "topoact 0.1.0");
    app.require_subcommand(1);

    GenerateOptions gen;
    CLI::App* cmd_generate = app.add_subcommand("generate", "write a synthetic dataset CSV");
    cmd_generate->add_option("--dataset", gen.dataset, "circles or torus")->required();
    cmd_generate->add_option("--n", gen.n, "sample count")->check(CLI::PositiveNumber);
    cmd_generate->add_option("--noise", gen.noise, "gaussian noise sigma")
        ->check(CLI::NonNegativeNumber);
    cmd_generate->add_option("--radius-ratio", gen.radius_ratio, "inner/outer radius (circles)");
    cmd_generate->add_option("--major-radius", gen.major_radius, "torus major radius");
    cmd_generate->add_option("--minor-radius", gen.minor_radius, "torus minor radius");
    cmd_generate->add_option("--phase", gen.phase, "minor-angle offset of the second curve");
    cmd_generate->add_option("--seed", gen.seed, "rng seed");
    cmd_generate->add_option("--out", gen.out, "output CSV path")->required();

    TrainCliOptions tr;
    CLI::App* cmd_train = app.add_subcommand("train", "train a single network and print losses");
    cmd_train->add_option("--dataset", tr.dataset, "circles, torus, or breastcancer")->required();
    cmd_train->add_option("--activation", tr.activation, "hidden-layer activation");
    cmd_train->add_option("--depth", tr.depth, "hidden layers")->check(CLI::PositiveNumber);
    cmd_train->add_option("--width", tr.width, "hidden width")->check(CLI::PositiveNumber);
    cmd_train->add_option("--epochs", tr.epochs, "training epochs")->check(CLI::PositiveNumber);
    cmd_train->add_option("--lr", tr.lr, "learning rate")->check(CLI::NonNegativeNumber);
    cmd_train->add_option("--batch-size", tr.batch_size, "minibatch size")
        ->check(CLI::PositiveNumber);
    cmd_train->add_option("--split-ratio", tr.split_ratio, "train fraction");
    cmd_train->add_option("--clip", tr.clip, "per-parameter gradient clip (0 disables)");
    cmd_train->add_flag("--standardize", tr.standardize, "zero-mean unit-variance features");
    cmd_train->add_option("--seed", tr.seed, "run seed");
    cmd_train->add_option("--n", tr.n, "sample count (synthetic)")->check(CLI::PositiveNumber);
    cmd_train->add_option("--noise", tr.noise, "noise sigma (synthetic)")
        ->check(CLI::NonNegativeNumber);
    cmd_train->add_option("--radius-ratio", tr.radius_ratio, "inner/outer radius (circles)");
    cmd_train->add_option("--major-radius", tr.major_radius, "torus major radius");
    cmd_train->add_option("--minor-radius", tr.minor_radius, "torus minor radius");
    cmd_train->add_option("--phase", tr.phase, "minor-angle offset of the second curve");
    cmd_train->add_option("--data", tr.data_path, "breastcancer CSV path");
    cmd_train->add_option("--out", tr.out, "optional per-epoch loss CSV");

    GridOptions gr;
    CLI::App* cmd_grid = app.add_subcommand("grid", "run an experiment grid from a config file");
    cmd_grid->add_option("--config", gr.config, "grid config JSON")->required();
    cmd_grid->add_option("--parallelism", gr.parallelism, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd_grid->add_option("--out-dir", gr.out_dir, "directory for records/aggregates/report")
        ->envname("TOPOACT_OUT_DIR");

    GradcheckOptions gc;
    CLI::App* cmd_gradcheck =
        app.add_subcommand("gradcheck", "compare analytic gradients to finite differences");
    cmd_gradcheck->add_option("--trials", gc.trials, "parameter draws per activation kind")
        ->check(CLI::PositiveNumber);
    cmd_gradcheck->add_option("--seed", gc.seed, "rng seed");
    cmd_gradcheck->add_flag("--inject-error", gc.inject_error)->group("");

    TransformOptions tf;
    CLI::App* cmd_transform =
        app.add_subcommand("transform", "apply an activation to a dataset CSV pointwise");
    cmd_transform->add_option("--in", tf.in, "input dataset CSV")->required();
    cmd_transform->add_option("--activation", tf.activation, "activation name")->required();
    cmd_transform->add_option("--params", tf.params,
                              "activation parameters as name=value pairs");
    cmd_transform->add_option("--out", tf.out, "output CSV path")->required();

    ReportOptions rp;
    CLI::App* cmd_report =
        app.add_subcommand("report", "re-aggregate a records CSV into a table");
    cmd_report->add_option("--records", rp.records, "records CSV from `grid`")->required();
    cmd_report->add_option("--format", rp.format, "markdown or csv")
        ->check(CLI::IsMember({"markdown", "csv"}));
    cmd_report->add_option("--out", rp.out, "optional output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(cmd_generate)) return run_generate(gen);
        if (app.got_subcommand(cmd_train)) return run_train(tr);
        if (app.got_subcommand(cmd_grid)) return run_grid_cmd(gr);
        if (app.got_subcommand(cmd_gradcheck)) return run_gradcheck(gc);
        if (app.got_subcommand(cmd_transform)) return run_transform(tf);
        if (app.got_subcommand(cmd_report)) return run_report(rp);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
