#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "weaksup/label_space.hpp"
#include "weaksup/mixing.hpp"

namespace weaksup {

struct ClassPrior {
  std::vector<double> probabilities;

  // Validates non-negativity and normalizes; rejects an all-zero vector.
  static ClassPrior of(std::vector<double> probabilities);
  static ClassPrior uniform(int k);

  int num_classes() const { return static_cast<int>(probabilities.size()); }
};

// Left inverse R with R T = I_k for the matrix it was built from.
struct ReconstructionMatrix {
  std::vector<double> entries;  // row-major, k x rows
  int k = 0;
  std::size_t weak_rows = 0;

  double at(int row, std::size_t col) const {
    return entries[static_cast<std::size_t>(row) * weak_rows + col];
  }
  // R applied to a weak-observation distribution vector.
  std::vector<double> apply(const std::vector<double>& weak_dist) const;
};

// Frequency estimator over (clean, weak) pairs with optional additive
// smoothing; columns sum to 1 by construction.
MixingMatrix estimate_mixing(const std::vector<std::pair<CleanLabel, WeakLabel>>& pairs,
                             const WeakLabelSpace& weak_space, double smoothing = 0.0);

ClassPrior estimate_prior(const std::vector<int>& labels, int k);

// P(Y = i | weak = w) by Bayes inversion of the matrix column.
std::vector<double> clean_posterior(const MixingMatrix& matrix,
                                    const ClassPrior& prior, const WeakLabel& weak);

ReconstructionMatrix reconstruction_matrix(const MixingMatrix& matrix);

// PU data as a two-bag LLP instance: a pure positive bag and the unlabelled
// bag split by the known positive fraction (rounding half-to-even).
struct TwoBagLlp {
  std::vector<long long> positive_bag;   // [positives, 0]
  std::vector<long long> unlabelled_bag;  // [round(alpha * u), u - round(alpha * u)]
};

TwoBagLlp pu_to_llp(long long positives, long long unlabelled, double alpha_u);

double compare_matrices(const MixingMatrix& a, const MixingMatrix& b);

}  // namespace weaksup
