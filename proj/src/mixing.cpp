#include "weaksup/mixing.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace weaksup {

namespace {

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorKind::OutOfRange,
                std::string(name) + " must lie in [0, 1], got " +
                    std::to_string(value));
  }
}

}  // namespace

const char* to_string(NoiseClass value) {
  return value == NoiseClass::Symmetric ? "symmetric" : "asymmetric";
}

const char* to_string(Setting value) {
  switch (value) {
    case Setting::NoisyLabels: return "NoisyLabels";
    case Setting::PartialLabels: return "PartialLabels";
    case Setting::Superset: return "SupersetLearning";
    case Setting::SemiSupervised: return "SemiSupervised";
    case Setting::PositiveUnlabelled: return "PositiveUnlabelled";
    case Setting::MultipleAnnotators: return "MultipleAnnotators";
    case Setting::Unified: return "Unified";
  }
  return "?";
}

MixingMatrix MixingMatrix::from_dense(std::vector<std::vector<double>> entries,
                                      WeakLabelSpace weak_space) {
  const std::uint64_t expected_rows = space_cardinality(weak_space);
  const int k = weak_space.num_classes();
  if (entries.size() != expected_rows) {
    throw Error(ErrorKind::ShapeMismatch,
                "expected " + std::to_string(expected_rows) + " rows, got " +
                    std::to_string(entries.size()));
  }
  const std::size_t rows = entries.size();
  std::vector<double> flat(rows * static_cast<std::size_t>(k));
  for (std::size_t r = 0; r < rows; ++r) {
    if (entries[r].size() != static_cast<std::size_t>(k)) {
      throw Error(ErrorKind::ShapeMismatch,
                  "row " + std::to_string(r) + " has " +
                      std::to_string(entries[r].size()) + " entries, expected " +
                      std::to_string(k));
    }
    for (int c = 0; c < k; ++c) {
      double v = entries[r][static_cast<std::size_t>(c)];
      if (v < 0.0 || !std::isfinite(v)) {
        throw Error(ErrorKind::NegativeEntry,
                    "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                        ") = " + std::to_string(v));
      }
      flat[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)] = v;
    }
  }

  // Column stochasticity, worst column reported.
  double worst_dev = 0.0;
  int worst_col = -1;
  std::vector<double> sums(static_cast<std::size_t>(k), 0.0);
  for (int c = 0; c < k; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      sum += flat[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)];
    }
    sums[static_cast<std::size_t>(c)] = sum;
    double dev = std::abs(sum - 1.0);
    if (dev > worst_dev) {
      worst_dev = dev;
      worst_col = c;
    }
  }
  if (worst_dev > kStochasticTolerance) {
    throw Error(ErrorKind::NotStochastic,
                "column " + std::to_string(worst_col) + " sums to " +
                    std::to_string(sums[static_cast<std::size_t>(worst_col)]) +
                    " (deviation " + std::to_string(worst_dev) + ")");
  }
  if (worst_dev > 0.0 && worst_dev <= kRenormTolerance) {
    for (int c = 0; c < k; ++c) {
      double sum = sums[static_cast<std::size_t>(c)];
      if (sum == 1.0 || sum == 0.0) continue;
      for (std::size_t r = 0; r < rows; ++r) {
        flat[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)] /= sum;
      }
    }
  }

  // Support constraints.
  using Kind = WeakLabelSpace::Kind;
  if (weak_space.kind() == Kind::SupersetSet) {
    for (std::size_t r = 0; r < rows; ++r) {
      ClassMask mask = row_to_subset(r, k);
      for (int c = 0; c < k; ++c) {
        if (((mask >> c) & 1u) == 0 &&
            flat[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(c)] != 0.0) {
          throw Error(ErrorKind::SupportViolation,
                      "set row " + std::to_string(r) + " (" +
                          subset_display_string(mask, k) +
                          ") carries mass for uncovered class " + std::to_string(c));
        }
      }
    }
  }
  if (weak_space.kind() == Kind::PU) {
    // Row for the negative class identically 0; column "-" all mass on abstain.
    if (flat[1 * 2 + 0] != 0.0 || flat[1 * 2 + 1] != 0.0) {
      throw Error(ErrorKind::SupportViolation,
                  "PU negative-class row must be identically zero");
    }
    if (flat[0 * 2 + 1] != 0.0 || flat[2 * 2 + 1] != 1.0) {
      throw Error(ErrorKind::SupportViolation,
                  "PU negative column must place all mass on abstain");
    }
  }

  return MixingMatrix(std::move(flat), rows, k, std::move(weak_space));
}

std::vector<double> MixingMatrix::column(int col) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, col);
  return out;
}

AnnotatorPool AnnotatorPool::of(std::vector<MixingMatrix> matrices) {
  if (matrices.empty()) {
    throw Error(ErrorKind::OutOfRange, "annotator pool must be non-empty");
  }
  for (const MixingMatrix& m : matrices) {
    if (m.rows() != matrices.front().rows() ||
        m.num_classes() != matrices.front().num_classes() ||
        !(m.weak_space() == matrices.front().weak_space())) {
      throw Error(ErrorKind::ShapeMismatch,
                  "annotator matrices must share shape and weak space");
    }
  }
  return AnnotatorPool{std::move(matrices)};
}

MixingMatrix template_flip_binary(double gamma0, double gamma1) {
  check_probability(gamma0, "gamma0");
  check_probability(gamma1, "gamma1");
  return MixingMatrix::from_dense({{1.0 - gamma0, gamma1}, {gamma0, 1.0 - gamma1}},
                                  WeakLabelSpace::multiclass(2));
}

MixingMatrix template_flip_symmetric(int k, double rho) {
  check_probability(rho, "rho");
  double off = rho / static_cast<double>(k - 1);
  std::vector<std::vector<double>> entries(
      static_cast<std::size_t>(k),
      std::vector<double>(static_cast<std::size_t>(k), off));
  for (int i = 0; i < k; ++i) {
    entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0 - rho;
  }
  return MixingMatrix::from_dense(std::move(entries), WeakLabelSpace::multiclass(k));
}

MixingMatrix template_ssl(int k, const std::vector<double>& gammas) {
  if (gammas.size() != static_cast<std::size_t>(k)) {
    throw Error(ErrorKind::ShapeMismatch,
                "expected " + std::to_string(k) + " abstention rates, got " +
                    std::to_string(gammas.size()));
  }
  for (double g : gammas) check_probability(g, "gamma");
  std::vector<std::vector<double>> entries(
      static_cast<std::size_t>(k) + 1u,
      std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int i = 0; i < k; ++i) {
    entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        1.0 - gammas[static_cast<std::size_t>(i)];
    entries[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
        gammas[static_cast<std::size_t>(i)];
  }
  return MixingMatrix::from_dense(std::move(entries), WeakLabelSpace::semi_sup(k));
}

MixingMatrix template_pu(double gamma0) {
  check_probability(gamma0, "gamma0");
  return MixingMatrix::from_dense(
      {{1.0 - gamma0, 0.0}, {0.0, 0.0}, {gamma0, 1.0}}, WeakLabelSpace::pu());
}

MixingMatrix template_superset_uniform(int k, double p_exact) {
  if (!(p_exact > 0.0 && p_exact <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "p_exact must lie in (0, 1]");
  }
  if (k == 2 && p_exact < 1.0) {
    throw Error(ErrorKind::Degenerate,
                "for k = 2 the only covering proper set is the singleton; "
                "p_exact must be 1");
  }
  WeakLabelSpace space = WeakLabelSpace::superset_set(k);
  const std::size_t rows = space_cardinality(space);
  // Proper subsets containing a fixed class: 2^(k-1) - 1.
  const std::uint64_t covering = (static_cast<std::uint64_t>(1) << (k - 1)) - 1u;
  const double rest =
      covering > 1 ? (1.0 - p_exact) / static_cast<double>(covering - 1) : 0.0;
  std::vector<std::vector<double>> entries(
      rows, std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      ClassMask mask = row_to_subset(r, k);
      if (((mask >> c) & 1u) == 0) continue;
      entries[r][static_cast<std::size_t>(c)] =
          mask == (static_cast<ClassMask>(1u) << c) ? p_exact : rest;
    }
  }
  return MixingMatrix::from_dense(std::move(entries), std::move(space));
}

NoiseClass classify_noise(const MixingMatrix& matrix, double tol) {
  if (matrix.weak_space().kind() != WeakLabelSpace::Kind::Multiclass) {
    throw Error(ErrorKind::NotSquare,
                "symmetry is defined for square noisy-label matrices only");
  }
  // Symmetric noise has a single flip rate: every incorrect outcome is
  // equally likely regardless of the clean class, so all off-diagonal
  // entries must agree (and with them the diagonal ones).
  const int k = matrix.num_classes();
  double lo = 1.0, hi = 0.0;
  for (int c = 0; c < k; ++c) {
    for (int u = 0; u < k; ++u) {
      if (u == c) continue;
      double value = matrix.at(static_cast<std::size_t>(u), c);
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
  }
  return hi - lo > tol ? NoiseClass::Asymmetric : NoiseClass::Symmetric;
}

namespace {

bool has_superset_support(const MixingMatrix& matrix) {
  const int k = matrix.num_classes();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    ClassMask mask = row_to_subset(r, k);
    for (int c = 0; c < k; ++c) {
      if (((mask >> c) & 1u) == 0 && matrix.at(r, c) != 0.0) return false;
    }
  }
  return true;
}

bool has_pu_pattern(const MixingMatrix& matrix) {
  if (matrix.num_classes() != 2 || matrix.rows() != 3) return false;
  return matrix.at(1, 0) == 0.0 && matrix.at(1, 1) == 0.0 &&
         matrix.at(0, 1) == 0.0 && matrix.at(2, 1) == 1.0;
}

}  // namespace

Setting recognize_setting(const MixingMatrix& matrix) {
  using Kind = WeakLabelSpace::Kind;
  switch (matrix.weak_space().kind()) {
    case Kind::Multiclass:
      return Setting::NoisyLabels;
    case Kind::PartialSet:
      return has_superset_support(matrix) ? Setting::Superset
                                          : Setting::PartialLabels;
    case Kind::SupersetSet:
      return Setting::Superset;
    case Kind::PU:
      return Setting::PositiveUnlabelled;
    case Kind::SemiSup:
      return has_pu_pattern(matrix) ? Setting::PositiveUnlabelled
                                    : Setting::SemiSupervised;
    case Kind::MultiAnnotator:
      return Setting::MultipleAnnotators;
    case Kind::Unified:
      return Setting::Unified;
  }
  throw Error(ErrorKind::OutOfRange, "bad space kind");
}

}  // namespace weaksup
