#pragma once

#include <string>
#include <utility>
#include <vector>

#include "topoact/activation.hpp"
#include "topoact/matrix.hpp"
#include "topoact/rng.hpp"

namespace topoact {

// Binary-labeled point cloud. Labels are 0/1 and both classes are non-empty
// for every dataset produced by this module.
struct Dataset {
    std::string name;
    Matrix features;          // n x d
    std::vector<int> labels;  // n entries, each 0 or 1

    std::size_t size() const { return labels.size(); }
    std::size_t dim() const { return features.cols(); }
};

struct SplitDataset {
    Dataset train;
    Dataset test;
    double ratio = 0.7;
};

// Two concentric circles: ceil(n/2) points on the unit circle (label 0) and
// floor(n/2) on the circle of radius radius_ratio (label 1), random uniform
// angles, isotropic Gaussian noise of the given sigma on both coordinates.
// Requires n >= 4 and 0 < radius_ratio < 1.
Dataset gen_circles(std::size_t n, double noise_sigma, double radius_ratio, Rng& rng);

// Two (1,1)-curves on the torus of radii (major_radius, minor_radius), the
// second phase-shifted along the minor angle; interlinked closed loops in R^3.
// Class k point at parameter t ~ U(0, 2pi):
//   ((R + r*cos(t + k*phase))*cos t, (R + r*cos(t + k*phase))*sin t, r*sin(t + k*phase))
// plus isotropic Gaussian noise. Requires major_radius > minor_radius > 0 and n >= 2.
Dataset gen_curves_on_torus(std::size_t n, double major_radius, double minor_radius, double phase,
                            double noise_sigma, Rng& rng);

// Reads the standard comma-separated layout: id, diagnosis in {M, B}, then 30
// real features per row. The id column is dropped, row order is preserved, and
// the label is 1 for M, 0 for B. Malformed rows raise std::runtime_error
// naming the 1-based line; a missing file raises a distinct std::runtime_error.
Dataset load_wdbc(const std::string& path);

struct Standardization {
    std::vector<double> mean;
    std::vector<double> stddev;  // population convention (n denominator)
};

// Per-feature zero mean, unit variance copy; constant features map to zero.
std::pair<Dataset, Standardization> standardize(const Dataset& d);

// Uniform random partition without replacement; train size = round(ratio * n).
// Throws std::invalid_argument when ratio is outside (0, 1) or either side
// would be empty.
SplitDataset split(const Dataset& d, double ratio, Rng& rng);

// Applies the activation elementwise to every coordinate; labels unchanged.
Dataset transform_pointcloud(const Dataset& d, const ActivationState& state);

// CSV with header "x0,...,x{d-1},label", '.' decimal separator, LF endings.
void save_dataset_csv(const Dataset& d, const std::string& path);
Dataset load_dataset_csv(const std::string& path);

}  // namespace topoact
