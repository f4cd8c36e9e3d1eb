#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "weaksup/label_space.hpp"

namespace weaksup {

// Per-column absolute tolerance on stochasticity. Constructors silently
// renormalize only when the deviation is within kRenormTolerance.
inline constexpr double kStochasticTolerance = 1e-9;
inline constexpr double kRenormTolerance = 1e-12;

// Non-negative column-stochastic matrix mapping k clean classes to the rows
// of a finite weak observation space, in canonical row order.
class MixingMatrix {
 public:
  static MixingMatrix from_dense(std::vector<std::vector<double>> entries,
                                 WeakLabelSpace weak_space);

  std::size_t rows() const { return rows_; }
  int num_classes() const { return k_; }
  const WeakLabelSpace& weak_space() const { return weak_space_; }

  double at(std::size_t row, int col) const {
    return entries_[row * static_cast<std::size_t>(k_) + static_cast<std::size_t>(col)];
  }

  std::vector<double> column(int col) const;
  const std::vector<double>& data() const { return entries_; }

 private:
  MixingMatrix(std::vector<double> entries, std::size_t rows, int k,
               WeakLabelSpace weak_space)
      : entries_(std::move(entries)), rows_(rows), k_(k),
        weak_space_(std::move(weak_space)) {}

  std::vector<double> entries_;  // row-major, rows_ x k_
  std::size_t rows_;
  int k_;
  WeakLabelSpace weak_space_;
};

// One mixing matrix per annotator, shared weak space and class count.
struct AnnotatorPool {
  std::vector<MixingMatrix> matrices;

  static AnnotatorPool of(std::vector<MixingMatrix> matrices);
  int num_annotators() const { return static_cast<int>(matrices.size()); }
};

enum class NoiseClass { Symmetric, Asymmetric };

enum class Setting {
  NoisyLabels,
  PartialLabels,
  Superset,
  SemiSupervised,
  PositiveUnlabelled,
  MultipleAnnotators,
  Unified,
};

const char* to_string(NoiseClass value);
const char* to_string(Setting value);

// Binary flipping noise: [[1-g0, g1], [g0, 1-g1]].
MixingMatrix template_flip_binary(double gamma0, double gamma1);

// k x k, diagonal 1-rho, every off-diagonal rho/(k-1).
MixingMatrix template_flip_symmetric(int k, double rho);

// (k+1) x k: diagonal 1-gamma_i, abstain row gamma_i.
MixingMatrix template_ssl(int k, const std::vector<double>& gammas);

// SSL with gamma1 = 1: negatives are never labelled.
MixingMatrix template_pu(double gamma0);

// Column i puts p_exact on the singleton {i} and spreads the rest uniformly
// over the other proper subsets covering i.
MixingMatrix template_superset_uniform(int k, double p_exact);

NoiseClass classify_noise(const MixingMatrix& matrix, double tol = 1e-9);

// Structural classification from weak space and zero pattern; falls back to
// the space's generic setting name.
Setting recognize_setting(const MixingMatrix& matrix);

}  // namespace weaksup
