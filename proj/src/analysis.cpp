#include "weaksup/analysis.hpp"

#include <cfenv>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace weaksup {

ClassPrior ClassPrior::of(std::vector<double> probabilities) {
  if (probabilities.size() < 2) {
    throw Error(ErrorKind::OutOfRange, "prior needs at least two classes");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw Error(ErrorKind::NegativeEntry, "prior entries must be non-negative");
    }
    sum += p;
  }
  if (sum <= 0.0) {
    throw Error(ErrorKind::NotStochastic, "prior must have positive mass");
  }
  for (double& p : probabilities) p /= sum;
  return ClassPrior{std::move(probabilities)};
}

ClassPrior ClassPrior::uniform(int k) {
  return ClassPrior::of(std::vector<double>(static_cast<std::size_t>(k), 1.0));
}

std::vector<double> ReconstructionMatrix::apply(
    const std::vector<double>& weak_dist) const {
  if (weak_dist.size() != weak_rows) {
    throw Error(ErrorKind::ShapeMismatch, "weak distribution length mismatch");
  }
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    double sum = 0.0;
    for (std::size_t r = 0; r < weak_rows; ++r) sum += at(i, r) * weak_dist[r];
    out[static_cast<std::size_t>(i)] = sum;
  }
  return out;
}

MixingMatrix estimate_mixing(
    const std::vector<std::pair<CleanLabel, WeakLabel>>& pairs,
    const WeakLabelSpace& weak_space, double smoothing) {
  if (smoothing < 0.0) {
    throw Error(ErrorKind::OutOfRange, "smoothing must be non-negative");
  }
  const int k = weak_space.num_classes();
  const std::uint64_t rows64 = space_cardinality(weak_space);
  const std::size_t rows = static_cast<std::size_t>(rows64);

  std::vector<std::vector<std::uint64_t>> counts(
      rows, std::vector<std::uint64_t>(static_cast<std::size_t>(k), 0));
  std::vector<std::uint64_t> totals(static_cast<std::size_t>(k), 0);
  for (const auto& [clean, weak] : pairs) {
    if (clean.class_index < 0 || clean.class_index >= k) {
      throw Error(ErrorKind::LabelOutOfRange, "clean label out of range");
    }
    std::size_t r = weak_label_row(weak, weak_space);
    ++counts[r][static_cast<std::size_t>(clean.class_index)];
    ++totals[static_cast<std::size_t>(clean.class_index)];
  }

  std::vector<std::vector<double>> entries(
      rows, std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int c = 0; c < k; ++c) {
    double denom = static_cast<double>(totals[static_cast<std::size_t>(c)]) +
                   smoothing * static_cast<double>(rows);
    if (denom <= 0.0) {
      throw Error(ErrorKind::EmptyColumn,
                  "no examples for class " + std::to_string(c) +
                      " and smoothing is 0");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      entries[r][static_cast<std::size_t>(c)] =
          (static_cast<double>(counts[r][static_cast<std::size_t>(c)]) + smoothing) /
          denom;
    }
  }
  return MixingMatrix::from_dense(std::move(entries), weak_space);
}

ClassPrior estimate_prior(const std::vector<int>& labels, int k) {
  if (labels.empty()) throw Error(ErrorKind::EmptyDataset, "no labels");
  std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
  for (int y : labels) {
    if (y < 0 || y >= k) {
      throw Error(ErrorKind::LabelOutOfRange, "label outside [0, k)");
    }
    counts[static_cast<std::size_t>(y)] += 1.0;
  }
  return ClassPrior::of(std::move(counts));
}

std::vector<double> clean_posterior(const MixingMatrix& matrix,
                                    const ClassPrior& prior,
                                    const WeakLabel& weak) {
  const int k = matrix.num_classes();
  if (prior.num_classes() != k) {
    throw Error(ErrorKind::ShapeMismatch, "prior length does not match k");
  }
  std::size_t row = weak_label_row(weak, matrix.weak_space());
  std::vector<double> posterior(static_cast<std::size_t>(k), 0.0);
  double evidence = 0.0;
  for (int i = 0; i < k; ++i) {
    double joint = matrix.at(row, i) * prior.probabilities[static_cast<std::size_t>(i)];
    posterior[static_cast<std::size_t>(i)] = joint;
    evidence += joint;
  }
  if (evidence <= 0.0) {
    throw Error(ErrorKind::ZeroEvidence,
                "weak label has probability 0 under (T, prior)");
  }
  for (double& p : posterior) p /= evidence;
  return posterior;
}

ReconstructionMatrix reconstruction_matrix(const MixingMatrix& matrix) {
  const int k = matrix.num_classes();
  const std::size_t rows = matrix.rows();
  Eigen::MatrixXd t(static_cast<Eigen::Index>(rows), k);
  for (std::size_t r = 0; r < rows; ++r) {
    for (int c = 0; c < k; ++c) t(static_cast<Eigen::Index>(r), c) = matrix.at(r, c);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  double cutoff = sigma(0) * 1e-10;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++rank;
  }
  if (rank < k) {
    throw Error(ErrorKind::RankDeficient,
                "numerical rank " + std::to_string(rank) + " < k = " +
                    std::to_string(k));
  }
  Eigen::MatrixXd pinv =
      svd.matrixV() * sigma.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

  ReconstructionMatrix out;
  out.k = k;
  out.weak_rows = rows;
  out.entries.resize(static_cast<std::size_t>(k) * rows);
  for (int i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < rows; ++r) {
      out.entries[static_cast<std::size_t>(i) * rows + r] =
          pinv(i, static_cast<Eigen::Index>(r));
    }
  }
  return out;
}

TwoBagLlp pu_to_llp(long long positives, long long unlabelled, double alpha_u) {
  if (positives < 1 || unlabelled < 1) {
    throw Error(ErrorKind::OutOfRange, "both counts must be >= 1");
  }
  if (!(alpha_u >= 0.0 && alpha_u <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "alpha_u must lie in [0, 1]");
  }
  // nearbyint under the default rounding mode is round-half-to-even.
  long long pos_in_u = static_cast<long long>(
      std::nearbyint(alpha_u * static_cast<double>(unlabelled)));
  return TwoBagLlp{{positives, 0}, {pos_in_u, unlabelled - pos_in_u}};
}

double compare_matrices(const MixingMatrix& a, const MixingMatrix& b) {
  if (a.rows() != b.rows() || a.num_classes() != b.num_classes()) {
    throw Error(ErrorKind::ShapeMismatch, "matrices differ in shape");
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.num_classes(); ++c) {
      worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
    }
  }
  return worst;
}

}  // namespace weaksup
