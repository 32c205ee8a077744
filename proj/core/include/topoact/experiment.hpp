#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "topoact/activation.hpp"
#include "topoact/data.hpp"
#include "topoact/network.hpp"

namespace topoact {

enum class DatasetKind { Circles, Torus, BreastCancer };

std::string_view dataset_kind_name(DatasetKind kind);

// Accepts "circles", "torus", "breastcancer"; throws std::invalid_argument
// listing the valid names otherwise.
DatasetKind parse_dataset_kind(std::string_view name);

struct DatasetConfig {
    DatasetKind kind = DatasetKind::Circles;
    std::vector<std::size_t> widths;

    // generator parameters (circles, torus)
    std::size_t n = 1000;
    double noise_sigma = 0.05;
    double radius_ratio = 0.5;  // circles
    double major_radius = 2.0;  // torus
    double minor_radius = 1.0;
    double phase = std::numbers::pi;

    std::string path;  // breastcancer source file
};

struct GridConfig {
    std::vector<DatasetConfig> datasets;
    std::vector<ActivationKind> activations;
    std::vector<std::size_t> depths{1, 2, 3};
    std::size_t runs = 10;
    std::size_t epochs = 100;
    double lr = 0.05;
    std::size_t batch_size = 32;
    double split_ratio = 0.7;
    std::uint64_t base_seed = 0;
    double clip = 0.0;        // <= 0: no clipping
    bool standardize = false;
    bool fix_sample = false;  // one dataset draw shared by all runs instead of one per run
};

// The full published protocol: widths {2,3,4} on circles, {3,4,5,6,7} on
// torus, {30,40,80,100} on breastcancer; activations tanh, relu, prelu,
// smoothsplit, parametricsplit; depths {1,2,3}; 10 runs of 100 epochs at
// lr 0.05, batch 32, 70/30 split.
GridConfig published_protocol_grid(const std::string& wdbc_path);

// Throws std::invalid_argument on an unusable configuration.
void validate_grid_config(const GridConfig& cfg);

// Strict JSON schema; unknown keys, wrong types, and keys that do not apply
// to a dataset's kind are rejected with std::invalid_argument. A missing file
// raises std::runtime_error instead.
GridConfig load_grid_config(const std::string& path);

// Collision-free mixing of (base_seed, cell, run): injective over all
// cell < 2^32, run < 2^32 for a fixed base seed, so extending a grid never
// perturbs existing cells' streams.
std::uint64_t derive_run_seed(std::uint64_t base_seed, std::size_t cell_index,
                              std::size_t run_index);

struct RunSpec {
    std::size_t spec_index = 0;  // position in the expanded list
    std::size_t cell_index = 0;  // (dataset, activation, depth, width) cell
    std::size_t run_index = 0;
    std::uint64_t seed = 0;

    DatasetConfig dataset;
    ActivationKind activation = ActivationKind::Relu;
    std::size_t depth = 1;
    std::size_t width = 1;

    std::size_t epochs = 100;
    double lr = 0.05;
    std::size_t batch_size = 32;
    double split_ratio = 0.7;
    double clip = 0.0;
    bool standardize = false;
    bool fix_sample = false;
    std::uint64_t base_seed = 0;
};

// "circles/tanh/depth1/width2/run3", for logs and failure reports.
std::string cell_label(const RunSpec& spec);

// Cartesian product in lexicographic order: datasets, then activations,
// depths, widths, with run indices innermost. Deterministic for a given
// config.
std::vector<RunSpec> expand_grid(const GridConfig& cfg);

struct RunRecord {
    std::string dataset;
    ActivationKind activation = ActivationKind::Relu;
    std::size_t depth = 1;
    std::size_t width = 1;
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    double final_val_loss = 0.0;
    double final_val_accuracy = 0.0;
    double wall_time_seconds = 0.0;  // in-memory only; never serialized, so
                                     // records files stay byte-stable
};

struct SingleRunResult {
    RunRecord record;
    TrainReport report;
};

// One seeded run: draw or load the dataset, split, build, train, evaluate.
// Separate decorrelated streams for data, split, and training are derived
// from the run seed. `breastcancer` short-circuits file loading when the
// caller already holds the dataset.
SingleRunResult run_single(const RunSpec& spec, const Dataset* breastcancer = nullptr);
RunRecord run_one(const RunSpec& spec, const Dataset* breastcancer = nullptr);

struct RunFailure {
    std::size_t spec_index = 0;
    std::string cell;
    std::string message;
};

struct GridResult {
    std::vector<RunRecord> records;  // successes, in spec order
    std::vector<RunFailure> failures;
};

// Executes every spec on up to `parallelism` workers. Results and failures
// are ordered by spec index, identical for every parallelism level; a failing
// run never aborts the others.
GridResult run_grid(const GridConfig& cfg, std::size_t parallelism);

struct AggregateRecord {
    std::string dataset;
    ActivationKind activation = ActivationKind::Relu;
    std::size_t depth = 1;
    std::size_t width = 1;
    double mean_loss = 0.0;
    double std_loss = 0.0;  // sample convention, n-1 denominator; 0 for a single run
    std::size_t runs = 0;
};

// Groups by (dataset, activation, depth, width) in first-appearance order.
std::vector<AggregateRecord> aggregate(const std::vector<RunRecord>& records);

// Header dataset,activation,depth,width,run,seed,val_loss,val_accuracy.
// Doubles are written in shortest round-trip form, LF endings.
std::string format_records_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(const std::string& path);

// Header dataset,activation,depth,width,mean_loss,std_loss,runs.
std::string format_aggregates_csv(const std::vector<AggregateRecord>& aggregates);

// One table per dataset and depth: activation rows, width columns, cells
// "mean (±std)" at 3 decimals, every per-column minimum mean bolded (ties all
// bold).
std::string format_markdown_report(const std::vector<AggregateRecord>& aggregates);

enum class ReportFormat { Csv, Markdown };

void write_report(const std::vector<AggregateRecord>& aggregates, ReportFormat format,
                  const std::string& path);

// Throws std::runtime_error when the file cannot be created or fully written.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace topoact
