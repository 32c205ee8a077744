#include "topoact/data.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "topoact/util.hpp"

namespace topoact {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

void check_labels(const Dataset& d) {
    bool has0 = false;
    bool has1 = false;
    for (int label : d.labels) {
        if (label == 0) has0 = true;
        else if (label == 1) has1 = true;
        else throw std::invalid_argument("labels must be 0 or 1");
    }
    if (!has0 || !has1) throw std::invalid_argument("both classes must be non-empty");
}

}  // namespace

Dataset gen_circles(std::size_t n, double noise_sigma, double radius_ratio, Rng& rng) {
    if (n < 4) throw std::invalid_argument("gen_circles: n must be at least 4");
    if (!(radius_ratio > 0.0 && radius_ratio < 1.0)) {
        throw std::invalid_argument("gen_circles: radius_ratio must lie in (0, 1)");
    }
    const std::size_t outer = (n + 1) / 2;
    Dataset d;
    d.name = "circles";
    d.features = Matrix(n, 2);
    d.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool inner = i >= outer;
        const double radius = inner ? radius_ratio : 1.0;
        const double angle = rng.uniform(0.0, kTwoPi);
        d.features.at(i, 0) = radius * std::cos(angle) + noise_sigma * rng.normal();
        d.features.at(i, 1) = radius * std::sin(angle) + noise_sigma * rng.normal();
        d.labels[i] = inner ? 1 : 0;
    }
    return d;
}

Dataset gen_curves_on_torus(std::size_t n, double major_radius, double minor_radius, double phase,
                            double noise_sigma, Rng& rng) {
    if (!(major_radius > minor_radius && minor_radius > 0.0)) {
        throw std::invalid_argument("gen_curves_on_torus: requires major_radius > minor_radius > 0");
    }
    if (n < 2) throw std::invalid_argument("gen_curves_on_torus: n must be at least 2");
    const std::size_t first = (n + 1) / 2;
    Dataset d;
    d.name = "torus";
    d.features = Matrix(n, 3);
    d.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int k = i >= first ? 1 : 0;
        const double t = rng.uniform(0.0, kTwoPi);
        const double minor_angle = t + k * phase;
        const double ring = major_radius + minor_radius * std::cos(minor_angle);
        d.features.at(i, 0) = ring * std::cos(t) + noise_sigma * rng.normal();
        d.features.at(i, 1) = ring * std::sin(t) + noise_sigma * rng.normal();
        d.features.at(i, 2) = minor_radius * std::sin(minor_angle) + noise_sigma * rng.normal();
        d.labels[i] = k;
    }
    return d;
}

Dataset load_wdbc(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open file: " + path);

    constexpr std::size_t kFeatures = 30;
    std::vector<double> values;
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != kFeatures + 2) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(kFeatures + 2) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        int label = 0;
        if (fields[1] == "M") label = 1;
        else if (fields[1] == "B") label = 0;
        else {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": unknown diagnosis code '" + fields[1] + "'");
        }
        labels.push_back(label);
        for (std::size_t j = 0; j < kFeatures; ++j) {
            try {
                values.push_back(parse_double(fields[j + 2]));
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    if (labels.empty()) throw std::runtime_error(path + ": no data rows");

    Dataset d;
    d.name = "breastcancer";
    d.features = Matrix(labels.size(), kFeatures);
    d.features.data() = std::move(values);
    d.labels = std::move(labels);
    check_labels(d);
    return d;
}

std::pair<Dataset, Standardization> standardize(const Dataset& d) {
    const std::size_t n = d.size();
    const std::size_t dim = d.dim();
    Standardization stats;
    stats.mean.assign(dim, 0.0);
    stats.stddev.assign(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) stats.mean[j] += d.features.at(i, j);
    }
    for (std::size_t j = 0; j < dim; ++j) stats.mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const double delta = d.features.at(i, j) - stats.mean[j];
            stats.stddev[j] += delta * delta;
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        stats.stddev[j] = std::sqrt(stats.stddev[j] / static_cast<double>(n));
    }

    Dataset out = d;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            out.features.at(i, j) = stats.stddev[j] > 0.0
                                        ? (d.features.at(i, j) - stats.mean[j]) / stats.stddev[j]
                                        : 0.0;
        }
    }
    return {std::move(out), std::move(stats)};
}

SplitDataset split(const Dataset& d, double ratio, Rng& rng) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("split: ratio must lie in (0, 1)");
    const std::size_t n = d.size();
    const std::size_t train_size =
        static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
    if (train_size == 0 || train_size == n) {
        throw std::invalid_argument("split: both sides must be non-empty");
    }

    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    rng.shuffle(indices);

    const auto gather = [&](std::size_t begin, std::size_t end) {
        Dataset part;
        part.name = d.name;
        part.features = Matrix(end - begin, d.dim());
        part.labels.resize(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            const std::size_t src = indices[i];
            for (std::size_t j = 0; j < d.dim(); ++j) {
                part.features.at(i - begin, j) = d.features.at(src, j);
            }
            part.labels[i - begin] = d.labels[src];
        }
        return part;
    };

    SplitDataset result;
    result.train = gather(0, train_size);
    result.test = gather(train_size, n);
    result.ratio = ratio;
    return result;
}

Dataset transform_pointcloud(const Dataset& d, const ActivationState& state) {
    Dataset out = d;
    for (double& v : out.features.data()) v = activation_apply(state, v);
    return out;
}

void save_dataset_csv(const Dataset& d, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write file: " + path);
    for (std::size_t j = 0; j < d.dim(); ++j) file << "x" << j << ",";
    file << "label\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.dim(); ++j) {
            file << format_double(d.features.at(i, j)) << ",";
        }
        file << d.labels[i] << "\n";
    }
    if (!file) throw std::runtime_error("write failed: " + path);
}

Dataset load_dataset_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open file: " + path);

    std::string line;
    if (!std::getline(file, line)) throw std::runtime_error(path + ": empty file");
    strip_cr(line);
    const std::vector<std::string> header = split_fields(line);
    if (header.size() < 2 || header.back() != "label") {
        throw std::runtime_error(path + ": expected header 'x0,...,label'");
    }
    const std::size_t dim = header.size() - 1;

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != dim + 1) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(dim + 1) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        try {
            for (std::size_t j = 0; j < dim; ++j) values.push_back(parse_double(fields[j]));
            const long long label = parse_int(fields[dim]);
            if (label != 0 && label != 1) {
                throw std::invalid_argument("label must be 0 or 1, got " + std::to_string(label));
            }
            labels.push_back(static_cast<int>(label));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (labels.empty()) throw std::runtime_error(path + ": no data rows");

    Dataset d;
    d.name = path;
    d.features = Matrix(labels.size(), dim);
    d.features.data() = std::move(values);
    d.labels = std::move(labels);
    return d;
}

}  // namespace topoact
