#include "topoact/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "topoact/util.hpp"

namespace topoact {

namespace {

using nlohmann::json;

// Distinct salts keep the data draw, the split, and the training stream of a
// single run decorrelated from one another.
constexpr std::uint64_t kDataSalt = 0x89f0d16348c152a7ULL;
constexpr std::uint64_t kSplitSalt = 0x3c79ac492ba7b653ULL;
constexpr std::uint64_t kTrainSalt = 0x1c69b3f74ac4fb91ULL;

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

template <typename T>
bool contains(const std::vector<T>& v, const T& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

void require_known_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                        const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw std::invalid_argument(where + ": unknown key '" + item.key() + "'");
        }
    }
}

std::size_t as_count(const json& v, const std::string& where) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
        throw std::invalid_argument(where + ": expected a positive integer");
    }
    return v.get<std::size_t>();
}

double as_real(const json& v, const std::string& where) {
    if (!v.is_number()) throw std::invalid_argument(where + ": expected a number");
    return v.get<double>();
}

bool as_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) throw std::invalid_argument(where + ": expected a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw std::invalid_argument(where + ": expected a string");
    return v.get<std::string>();
}

std::vector<std::size_t> as_count_list(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) {
        throw std::invalid_argument(where + ": expected a non-empty array of positive integers");
    }
    std::vector<std::size_t> out;
    for (const json& item : v) out.push_back(as_count(item, where));
    return out;
}

DatasetConfig parse_dataset_config(const json& j, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
    if (!j.contains("name")) throw std::invalid_argument(where + ": missing 'name'");
    if (!j.contains("widths")) throw std::invalid_argument(where + ": missing 'widths'");

    DatasetConfig cfg;
    cfg.kind = parse_dataset_kind(as_string(j.at("name"), where + ".name"));
    cfg.widths = as_count_list(j.at("widths"), where + ".widths");

    switch (cfg.kind) {
    case DatasetKind::Circles:
        require_known_keys(j, {"name", "widths", "n", "noise", "radius_ratio"}, where);
        if (j.contains("n")) cfg.n = as_count(j.at("n"), where + ".n");
        if (j.contains("noise")) cfg.noise_sigma = as_real(j.at("noise"), where + ".noise");
        if (j.contains("radius_ratio")) {
            cfg.radius_ratio = as_real(j.at("radius_ratio"), where + ".radius_ratio");
        }
        break;
    case DatasetKind::Torus:
        require_known_keys(j, {"name", "widths", "n", "noise", "major_radius", "minor_radius",
                               "phase"},
                           where);
        if (j.contains("n")) cfg.n = as_count(j.at("n"), where + ".n");
        if (j.contains("noise")) cfg.noise_sigma = as_real(j.at("noise"), where + ".noise");
        if (j.contains("major_radius")) {
            cfg.major_radius = as_real(j.at("major_radius"), where + ".major_radius");
        }
        if (j.contains("minor_radius")) {
            cfg.minor_radius = as_real(j.at("minor_radius"), where + ".minor_radius");
        }
        if (j.contains("phase")) cfg.phase = as_real(j.at("phase"), where + ".phase");
        break;
    case DatasetKind::BreastCancer:
        require_known_keys(j, {"name", "widths", "path"}, where);
        if (!j.contains("path")) throw std::invalid_argument(where + ": missing 'path'");
        cfg.path = as_string(j.at("path"), where + ".path");
        break;
    }
    return cfg;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(seed ^ salt);
}

}  // namespace

std::string_view dataset_kind_name(DatasetKind kind) {
    switch (kind) {
    case DatasetKind::Circles: return "circles";
    case DatasetKind::Torus: return "torus";
    case DatasetKind::BreastCancer: return "breastcancer";
    }
    return "";
}

DatasetKind parse_dataset_kind(std::string_view name) {
    if (name == "circles") return DatasetKind::Circles;
    if (name == "torus") return DatasetKind::Torus;
    if (name == "breastcancer") return DatasetKind::BreastCancer;
    throw std::invalid_argument("unknown dataset '" + std::string(name) +
                                "' (valid: circles, torus, breastcancer)");
}

GridConfig published_protocol_grid(const std::string& wdbc_path) {
    GridConfig cfg;
    cfg.activations = {ActivationKind::Tanh, ActivationKind::Relu, ActivationKind::PRelu,
                       ActivationKind::SmoothSplit, ActivationKind::ParametricSplit};

    DatasetConfig circles;
    circles.kind = DatasetKind::Circles;
    circles.widths = {2, 3, 4};

    DatasetConfig torus;
    torus.kind = DatasetKind::Torus;
    torus.widths = {3, 4, 5, 6, 7};

    DatasetConfig wdbc;
    wdbc.kind = DatasetKind::BreastCancer;
    wdbc.widths = {30, 40, 80, 100};
    wdbc.path = wdbc_path;

    cfg.datasets = {std::move(circles), std::move(torus), std::move(wdbc)};
    return cfg;
}

void validate_grid_config(const GridConfig& cfg) {
    if (cfg.datasets.empty()) throw std::invalid_argument("grid config: no datasets");
    for (const DatasetConfig& d : cfg.datasets) {
        if (d.widths.empty()) throw std::invalid_argument("grid config: dataset without widths");
        for (std::size_t w : d.widths) {
            if (w == 0) throw std::invalid_argument("grid config: width must be positive");
        }
        if (d.kind == DatasetKind::BreastCancer && d.path.empty()) {
            throw std::invalid_argument("grid config: breastcancer dataset needs a path");
        }
    }
    if (cfg.activations.empty()) throw std::invalid_argument("grid config: no activations");
    if (cfg.depths.empty()) throw std::invalid_argument("grid config: no depths");
    for (std::size_t d : cfg.depths) {
        if (d == 0) throw std::invalid_argument("grid config: depth must be positive");
    }
    if (cfg.runs == 0) throw std::invalid_argument("grid config: runs must be positive");
    if (cfg.epochs == 0) throw std::invalid_argument("grid config: epochs must be positive");
    if (cfg.batch_size == 0) throw std::invalid_argument("grid config: batch_size must be positive");
    if (!(cfg.lr >= 0.0)) throw std::invalid_argument("grid config: lr must be non-negative");
    if (!(cfg.split_ratio > 0.0 && cfg.split_ratio < 1.0)) {
        throw std::invalid_argument("grid config: split_ratio must lie in (0, 1)");
    }
}

GridConfig load_grid_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open config: " + path);

    json root;
    try {
        root = json::parse(file);
    } catch (const json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument(path + ": expected a JSON object");
    require_known_keys(root,
                       {"datasets", "activations", "depths", "runs", "epochs", "lr", "batch_size",
                        "split_ratio", "base_seed", "clip", "standardize", "fix_sample"},
                       path);
    if (!root.contains("datasets")) throw std::invalid_argument(path + ": missing 'datasets'");
    if (!root.at("datasets").is_array() || root.at("datasets").empty()) {
        throw std::invalid_argument(path + ".datasets: expected a non-empty array");
    }

    GridConfig cfg;
    cfg.activations = {ActivationKind::Tanh, ActivationKind::Relu, ActivationKind::PRelu,
                       ActivationKind::SmoothSplit, ActivationKind::ParametricSplit};
    std::size_t index = 0;
    for (const json& item : root.at("datasets")) {
        cfg.datasets.push_back(
            parse_dataset_config(item, path + ".datasets[" + std::to_string(index) + "]"));
        ++index;
    }
    if (root.contains("activations")) {
        const json& acts = root.at("activations");
        if (!acts.is_array() || acts.empty()) {
            throw std::invalid_argument(path + ".activations: expected a non-empty array");
        }
        cfg.activations.clear();
        for (const json& item : acts) {
            cfg.activations.push_back(parse_activation(as_string(item, path + ".activations")));
        }
    }
    if (root.contains("depths")) cfg.depths = as_count_list(root.at("depths"), path + ".depths");
    if (root.contains("runs")) cfg.runs = as_count(root.at("runs"), path + ".runs");
    if (root.contains("epochs")) cfg.epochs = as_count(root.at("epochs"), path + ".epochs");
    if (root.contains("lr")) cfg.lr = as_real(root.at("lr"), path + ".lr");
    if (root.contains("batch_size")) {
        cfg.batch_size = as_count(root.at("batch_size"), path + ".batch_size");
    }
    if (root.contains("split_ratio")) {
        cfg.split_ratio = as_real(root.at("split_ratio"), path + ".split_ratio");
    }
    if (root.contains("base_seed")) {
        const json& seed = root.at("base_seed");
        if (!seed.is_number_unsigned()) {
            throw std::invalid_argument(path + ".base_seed: expected an unsigned integer");
        }
        cfg.base_seed = seed.get<std::uint64_t>();
    }
    if (root.contains("clip")) cfg.clip = as_real(root.at("clip"), path + ".clip");
    if (root.contains("standardize")) {
        cfg.standardize = as_bool(root.at("standardize"), path + ".standardize");
    }
    if (root.contains("fix_sample")) {
        cfg.fix_sample = as_bool(root.at("fix_sample"), path + ".fix_sample");
    }

    validate_grid_config(cfg);
    return cfg;
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t cell_index,
                              std::size_t run_index) {
    const std::uint64_t packed =
        (static_cast<std::uint64_t>(cell_index) << 32) | static_cast<std::uint64_t>(run_index);
    return splitmix64(base_seed ^ splitmix64(packed));
}

std::string cell_label(const RunSpec& spec) {
    std::string label(dataset_kind_name(spec.dataset.kind));
    label += '/';
    label += activation_name(spec.activation);
    label += "/depth" + std::to_string(spec.depth);
    label += "/width" + std::to_string(spec.width);
    label += "/run" + std::to_string(spec.run_index);
    return label;
}

std::vector<RunSpec> expand_grid(const GridConfig& cfg) {
    validate_grid_config(cfg);
    std::vector<RunSpec> specs;
    std::size_t cell_index = 0;
    for (const DatasetConfig& dataset : cfg.datasets) {
        for (const ActivationKind activation : cfg.activations) {
            for (const std::size_t depth : cfg.depths) {
                for (const std::size_t width : dataset.widths) {
                    for (std::size_t run = 0; run < cfg.runs; ++run) {
                        RunSpec spec;
                        spec.spec_index = specs.size();
                        spec.cell_index = cell_index;
                        spec.run_index = run;
                        spec.seed = derive_run_seed(cfg.base_seed, cell_index, run);
                        spec.dataset = dataset;
                        spec.activation = activation;
                        spec.depth = depth;
                        spec.width = width;
                        spec.epochs = cfg.epochs;
                        spec.lr = cfg.lr;
                        spec.batch_size = cfg.batch_size;
                        spec.split_ratio = cfg.split_ratio;
                        spec.clip = cfg.clip;
                        spec.standardize = cfg.standardize;
                        spec.fix_sample = cfg.fix_sample;
                        spec.base_seed = cfg.base_seed;
                        specs.push_back(std::move(spec));
                    }
                    ++cell_index;
                }
            }
        }
    }
    return specs;
}

SingleRunResult run_single(const RunSpec& spec, const Dataset* breastcancer) {
    const auto start = std::chrono::steady_clock::now();

    Dataset data;
    const std::uint64_t sample_seed = spec.fix_sample ? spec.base_seed : spec.seed;
    switch (spec.dataset.kind) {
    case DatasetKind::Circles: {
        Rng data_rng(stream_seed(sample_seed, kDataSalt));
        data = gen_circles(spec.dataset.n, spec.dataset.noise_sigma, spec.dataset.radius_ratio,
                           data_rng);
        break;
    }
    case DatasetKind::Torus: {
        Rng data_rng(stream_seed(sample_seed, kDataSalt));
        data = gen_curves_on_torus(spec.dataset.n, spec.dataset.major_radius,
                                   spec.dataset.minor_radius, spec.dataset.phase,
                                   spec.dataset.noise_sigma, data_rng);
        break;
    }
    case DatasetKind::BreastCancer:
        data = breastcancer ? *breastcancer : load_wdbc(spec.dataset.path);
        break;
    }
    if (spec.standardize) data = standardize(data).first;

    Rng split_rng(stream_seed(spec.seed, kSplitSalt));
    const SplitDataset parts = split(data, spec.split_ratio, split_rng);

    NetworkSpec net_spec;
    net_spec.input_dim = data.dim();
    net_spec.hidden_width = spec.width;
    net_spec.hidden_depth = spec.depth;
    net_spec.candidate_activation = spec.activation;
    net_spec.seed = spec.seed;

    TrainOptions opts;
    opts.epochs = spec.epochs;
    opts.lr = spec.lr;
    opts.batch_size = spec.batch_size;
    opts.clip = spec.clip;

    Rng train_rng(stream_seed(spec.seed, kTrainSalt));
    TrainResult result = train(net_spec, parts, opts, train_rng);
    const Evaluation eval = evaluate(result.net, parts.test.features, parts.test.labels);

    SingleRunResult out;
    out.record.dataset = std::string(dataset_kind_name(spec.dataset.kind));
    out.record.activation = spec.activation;
    out.record.depth = spec.depth;
    out.record.width = spec.width;
    out.record.run_index = spec.run_index;
    out.record.seed = spec.seed;
    out.record.final_val_loss = result.report.final_val_loss;
    out.record.final_val_accuracy = eval.accuracy;
    out.record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.report = std::move(result.report);
    return out;
}

RunRecord run_one(const RunSpec& spec, const Dataset* breastcancer) {
    return run_single(spec, breastcancer).record;
}

GridResult run_grid(const GridConfig& cfg, std::size_t parallelism) {
    if (parallelism == 0) throw std::invalid_argument("run_grid: parallelism must be positive");
    const std::vector<RunSpec> specs = expand_grid(cfg);

    std::unordered_map<std::string, Dataset> preloaded;
    for (const DatasetConfig& d : cfg.datasets) {
        if (d.kind != DatasetKind::BreastCancer || preloaded.count(d.path) != 0) continue;
        try {
            preloaded.emplace(d.path, load_wdbc(d.path));
        } catch (const std::exception&) {
            // surfaces per run below, so one bad path cannot abort the grid
        }
    }

    std::vector<std::optional<RunRecord>> slots(specs.size());
    std::vector<std::optional<RunFailure>> failures(specs.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) return;
            const RunSpec& spec = specs[i];
            const Dataset* bc = nullptr;
            if (spec.dataset.kind == DatasetKind::BreastCancer) {
                const auto it = preloaded.find(spec.dataset.path);
                if (it != preloaded.end()) bc = &it->second;
            }
            try {
                slots[i] = run_one(spec, bc);
            } catch (const std::exception& e) {
                failures[i] = RunFailure{i, cell_label(spec), e.what()};
            }
        }
    };

    const std::size_t workers = std::min(parallelism, specs.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    GridResult result;
    for (auto& slot : slots) {
        if (slot) result.records.push_back(std::move(*slot));
    }
    for (auto& failure : failures) {
        if (failure) result.failures.push_back(std::move(*failure));
    }
    return result;
}

std::vector<AggregateRecord> aggregate(const std::vector<RunRecord>& records) {
    std::vector<AggregateRecord> aggs;
    std::vector<std::vector<double>> losses;
    for (const RunRecord& r : records) {
        std::size_t idx = aggs.size();
        for (std::size_t i = 0; i < aggs.size(); ++i) {
            const AggregateRecord& a = aggs[i];
            if (a.dataset == r.dataset && a.activation == r.activation && a.depth == r.depth &&
                a.width == r.width) {
                idx = i;
                break;
            }
        }
        if (idx == aggs.size()) {
            AggregateRecord a;
            a.dataset = r.dataset;
            a.activation = r.activation;
            a.depth = r.depth;
            a.width = r.width;
            aggs.push_back(std::move(a));
            losses.emplace_back();
        }
        losses[idx].push_back(r.final_val_loss);
    }
    for (std::size_t i = 0; i < aggs.size(); ++i) {
        const std::vector<double>& v = losses[i];
        // Welford: exact mean and zero deviation when every value is equal.
        double mean = 0.0;
        double m2 = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double delta = v[k] - mean;
            mean += delta / static_cast<double>(k + 1);
            m2 += delta * (v[k] - mean);
        }
        aggs[i].mean_loss = mean;
        aggs[i].std_loss =
            v.size() > 1 ? std::sqrt(m2 / static_cast<double>(v.size() - 1)) : 0.0;
        aggs[i].runs = v.size();
    }
    return aggs;
}

std::string format_records_csv(const std::vector<RunRecord>& records) {
    std::string out = "dataset,activation,depth,width,run,seed,val_loss,val_accuracy\n";
    for (const RunRecord& r : records) {
        out += r.dataset;
        out += ',';
        out += activation_name(r.activation);
        out += ',';
        out += std::to_string(r.depth);
        out += ',';
        out += std::to_string(r.width);
        out += ',';
        out += std::to_string(r.run_index);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += format_double(r.final_val_loss);
        out += ',';
        out += format_double(r.final_val_accuracy);
        out += '\n';
    }
    return out;
}

std::vector<RunRecord> read_records_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open file: " + path);

    const std::string expected_header = "dataset,activation,depth,width,run,seed,val_loss,val_accuracy";
    std::string line;
    if (!std::getline(file, line)) throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header) {
        throw std::runtime_error(path + ": unexpected header '" + line + "'");
    }

    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t begin = 0;
        for (;;) {
            const std::size_t comma = line.find(',', begin);
            fields.push_back(line.substr(begin, comma - begin));
            if (comma == std::string::npos) break;
            begin = comma + 1;
        }
        if (fields.size() != 8) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": expected 8 fields, got " + std::to_string(fields.size()));
        }
        try {
            RunRecord r;
            r.dataset = fields[0];
            r.activation = parse_activation(fields[1]);
            r.depth = static_cast<std::size_t>(parse_uint64(fields[2]));
            r.width = static_cast<std::size_t>(parse_uint64(fields[3]));
            r.run_index = static_cast<std::size_t>(parse_uint64(fields[4]));
            r.seed = parse_uint64(fields[5]);
            r.final_val_loss = parse_double(fields[6]);
            r.final_val_accuracy = parse_double(fields[7]);
            records.push_back(std::move(r));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::string format_aggregates_csv(const std::vector<AggregateRecord>& aggregates) {
    std::string out = "dataset,activation,depth,width,mean_loss,std_loss,runs\n";
    for (const AggregateRecord& a : aggregates) {
        out += a.dataset;
        out += ',';
        out += activation_name(a.activation);
        out += ',';
        out += std::to_string(a.depth);
        out += ',';
        out += std::to_string(a.width);
        out += ',';
        out += format_double(a.mean_loss);
        out += ',';
        out += format_double(a.std_loss);
        out += ',';
        out += std::to_string(a.runs);
        out += '\n';
    }
    return out;
}

std::string format_markdown_report(const std::vector<AggregateRecord>& aggregates) {
    std::vector<std::string> datasets;
    for (const AggregateRecord& a : aggregates) {
        if (!contains(datasets, a.dataset)) datasets.push_back(a.dataset);
    }

    std::string out;
    for (const std::string& dataset : datasets) {
        out += "## " + dataset + "\n";

        std::vector<std::size_t> depths;
        std::vector<std::size_t> widths;
        std::vector<ActivationKind> activations;
        for (const AggregateRecord& a : aggregates) {
            if (a.dataset != dataset) continue;
            if (!contains(depths, a.depth)) depths.push_back(a.depth);
            if (!contains(widths, a.width)) widths.push_back(a.width);
            if (!contains(activations, a.activation)) activations.push_back(a.activation);
        }

        const auto find_cell = [&](ActivationKind act, std::size_t depth,
                                   std::size_t width) -> const AggregateRecord* {
            for (const AggregateRecord& a : aggregates) {
                if (a.dataset == dataset && a.activation == act && a.depth == depth &&
                    a.width == width) {
                    return &a;
                }
            }
            return nullptr;
        };

        for (const std::size_t depth : depths) {
            out += "\n### " + std::to_string(depth) +
                   (depth == 1 ? " hidden layer\n\n" : " hidden layers\n\n");
            out += "| activation |";
            for (const std::size_t w : widths) out += " width " + std::to_string(w) + " |";
            out += "\n| --- |";
            for (std::size_t i = 0; i < widths.size(); ++i) out += " --- |";
            out += "\n";

            std::vector<double> column_min(widths.size(), 0.0);
            std::vector<bool> column_has(widths.size(), false);
            for (std::size_t c = 0; c < widths.size(); ++c) {
                for (const ActivationKind act : activations) {
                    const AggregateRecord* cell = find_cell(act, depth, widths[c]);
                    if (!cell) continue;
                    if (!column_has[c] || cell->mean_loss < column_min[c]) {
                        column_min[c] = cell->mean_loss;
                        column_has[c] = true;
                    }
                }
            }

            for (const ActivationKind act : activations) {
                out += "| ";
                out += activation_name(act);
                out += " |";
                for (std::size_t c = 0; c < widths.size(); ++c) {
                    const AggregateRecord* cell = find_cell(act, depth, widths[c]);
                    if (!cell) {
                        out += "  |";
                        continue;
                    }
                    const std::string text =
                        fixed3(cell->mean_loss) + " (±" + fixed3(cell->std_loss) + ")";
                    const bool best = column_has[c] && cell->mean_loss == column_min[c];
                    out += best ? " **" + text + "** |" : " " + text + " |";
                }
                out += "\n";
            }
        }
        out += "\n";
    }
    return out;
}

void write_report(const std::vector<AggregateRecord>& aggregates, ReportFormat format,
                  const std::string& path) {
    switch (format) {
    case ReportFormat::Csv: write_text_file(path, format_aggregates_csv(aggregates)); return;
    case ReportFormat::Markdown: write_text_file(path, format_markdown_report(aggregates)); return;
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write file: " + path);
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.flush();
    if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace topoact
