#pragma once

// Desk-scale experiment protocols: data generators, SNR and ROC metrics,
// and the support-recovery, denoising, timing and classification runs.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gtf/graph.hpp"
#include "gtf/io.hpp"
#include "gtf/spectral.hpp"
#include "gtf/types.hpp"

namespace gtf {

/// 10 log10(||Y*||_F / (sigma2 n d)). Throws ZeroSignal for Y* = 0 and
/// InvalidArgument for sigma2 <= 0.
double input_snr_db(const SignalMatrix& y_star, double sigma2, int n, int d);
double input_snr_db(const SignalMatrix& y_star, double sigma2);
/// Inverse of input_snr_db.
double sigma2_for_snr(const SignalMatrix& y_star, double snr_db);

/// 10 log10(||Y*||_F / ||B - Y*||_F); +infinity when B == Y*.
double recon_snr_db(const SignalMatrix& y_star, const Matrix& b);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  ///< from (0,0) to (1,1), FPR nondecreasing
  double auc = 0.0;
};

/// Thresholds at every distinct score (tied scores enter together);
/// trapezoidal AUC. Throws DegenerateTruth without both classes.
RocCurve roc_curve(std::span<const double> scores, const std::vector<bool>& truth);

std::vector<double> log_grid(double lo, double hi, int count);

/// Per-edge persistence: the largest lambda in the grid at which the edge
/// crosses clusters in the screened spectral solution, 0 if it never does.
std::vector<double> persistence_scores(const SignalMatrix& y, const Graph& g,
                                       std::span<const double> lambdas, int k_max,
                                       const SpectralOptions& options = {});

double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

/// Fraction of positions where the labels differ.
double misclassification(std::span<const int> predicted, std::span<const int> truth);

struct PlantedSignal {
  PlantedPartition planted;
  Matrix y_star;  ///< n x d, row i is values[label_i] in every column
  Matrix y;       ///< y_star plus N(0, sigma2) noise
  double sigma2 = 0.0;
};

PlantedSignal make_planted_signal(std::span<const int> sizes, double p, double q,
                                  std::span<const double> values, int d, double snr_db,
                                  std::uint64_t seed);

/// Adds i.i.d. N(0, sigma2) noise.
Matrix add_noise(const Matrix& y_star, double sigma2, std::uint64_t seed);

struct BlobData {
  Matrix features;
  std::vector<int> labels;
};

/// Isotropic Gaussian blobs with centres evenly spaced on a circle of
/// radius `separation` in the first two coordinates.
BlobData make_blobs(int classes, int per_class, int dim, double separation, double spread,
                    std::uint64_t seed);

struct ExperimentReport {
  std::string experiment;
  Json config;
  std::map<std::string, double> metrics;
  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  std::uint64_t seed = 0;

  Json to_json() const;
};

/// Throws ConfigError when the JSON does not have the report shape:
/// {experiment, config, metrics{name: finite}, curves{name: [[x, y]...]}, seed}.
void validate_report(const Json& report);

/// Merges user settings over the experiment defaults. Unknown keys and
/// mistyped values throw ConfigError.
Json resolve_config(const std::string& experiment, const Json& user);

ExperimentReport run_support_recovery(const Json& config);
ExperimentReport run_denoise(const Json& config);
ExperimentReport run_timing(const Json& config);
ExperimentReport run_ssl(const Json& config);

ExperimentReport run_experiment(const std::string& experiment, const Json& config);

}  // namespace gtf
