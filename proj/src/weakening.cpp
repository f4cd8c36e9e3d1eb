#include "weaksup/weakening.hpp"

#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace weaksup {

namespace {

// Per-column inverse CDF in canonical row order. Compensated summation, last
// cumulative value forced to 1 so the top row is always reachable.
struct ColumnCdf {
  std::vector<double> cum;

  static ColumnCdf of(const MixingMatrix& matrix, int col) {
    ColumnCdf out;
    out.cum.resize(matrix.rows());
    double sum = 0.0, comp = 0.0;
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      double y = matrix.at(r, col) - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      out.cum[r] = sum;
    }
    out.cum.back() = 1.0;
    return out;
  }

  std::size_t draw(double u) const {
    for (std::size_t r = 0; r < cum.size(); ++r) {
      if (cum[r] > u) return r;
    }
    return cum.size() - 1;
  }
};

struct PreparedMatrix {
  const MixingMatrix* matrix;
  std::vector<ColumnCdf> cdfs;

  static PreparedMatrix of(const MixingMatrix& matrix) {
    PreparedMatrix out{&matrix, {}};
    out.cdfs.reserve(static_cast<std::size_t>(matrix.num_classes()));
    for (int c = 0; c < matrix.num_classes(); ++c) {
      out.cdfs.push_back(ColumnCdf::of(matrix, c));
    }
    return out;
  }

  WeakLabel sample(CleanLabel y, RngKey key) const {
    double u = key.stream().next_unit();
    std::size_t row = cdfs[static_cast<std::size_t>(y.class_index)].draw(u);
    return row_weak_label(row, matrix->weak_space());
  }
};

RegionPredicate::Op parse_op(const std::string& op) {
  if (op == "<") return RegionPredicate::Op::Lt;
  if (op == "<=") return RegionPredicate::Op::Le;
  if (op == ">") return RegionPredicate::Op::Gt;
  if (op == ">=") return RegionPredicate::Op::Ge;
  throw Error(ErrorKind::SchemaError, "unknown comparison operator '" + op + "'");
}

bool clause_holds(double value, RegionPredicate::Op op, double threshold) {
  switch (op) {
    case RegionPredicate::Op::Lt: return value < threshold;
    case RegionPredicate::Op::Le: return value <= threshold;
    case RegionPredicate::Op::Gt: return value > threshold;
    case RegionPredicate::Op::Ge: return value >= threshold;
  }
  return false;
}

void check_shared_shape(const std::vector<MixingMatrix>& matrices) {
  if (matrices.empty()) {
    throw Error(ErrorKind::SchemaError, "spec needs at least one matrix");
  }
  for (const MixingMatrix& m : matrices) {
    if (m.num_classes() != matrices.front().num_classes() ||
        !(m.weak_space() == matrices.front().weak_space())) {
      throw Error(ErrorKind::ShapeMismatch,
                  "all matrices in a spec must share k and weak space");
    }
  }
}

}  // namespace

WeakLabel sample_weak(const MixingMatrix& matrix, CleanLabel y, RngKey key) {
  if (y.class_index < 0 || y.class_index >= matrix.num_classes()) {
    throw Error(ErrorKind::LabelOutOfRange,
                "clean class " + std::to_string(y.class_index) +
                    " out of range for k = " + std::to_string(matrix.num_classes()));
  }
  double u = key.stream().next_unit();
  return row_weak_label(ColumnCdf::of(matrix, y.class_index).draw(u),
                        matrix.weak_space());
}

WeakeningSpec WeakeningSpec::iin(MixingMatrix matrix, std::uint64_t seed) {
  WeakeningSpec spec;
  spec.mode = Mode::IIN;
  spec.seed = seed;
  spec.matrices.push_back(std::move(matrix));
  return spec;
}

WeakeningSpec WeakeningSpec::idn(
    std::vector<std::pair<RegionPredicate, MixingMatrix>> regions,
    std::uint64_t seed) {
  WeakeningSpec spec;
  spec.mode = Mode::IDN;
  spec.seed = seed;
  for (auto& [predicate, matrix] : regions) {
    spec.regions.push_back(std::move(predicate));
    spec.matrices.push_back(std::move(matrix));
  }
  check_shared_shape(spec.matrices);
  if (!spec.regions.back().catch_all()) {
    throw Error(ErrorKind::SchemaError, "IDN region list must end with a catch-all");
  }
  return spec;
}

WeakeningSpec WeakeningSpec::multi_annotator(AnnotatorPool pool, std::uint64_t seed) {
  WeakeningSpec spec;
  spec.mode = Mode::MultiAnnotator;
  spec.seed = seed;
  spec.matrices = std::move(pool.matrices);
  return spec;
}

WeakeningSpec spec_from_plan(const RunPlan& plan) {
  if (plan.mode == "iin") {
    if (plan.matrices.size() != 1) {
      throw Error(ErrorKind::SchemaError, "iin mode takes exactly one matrix");
    }
    return WeakeningSpec::iin(plan.matrices.front(), plan.seed);
  }
  if (plan.mode == "idn") {
    std::vector<std::pair<RegionPredicate, MixingMatrix>> regions;
    for (std::size_t i = 0; i < plan.matrices.size(); ++i) {
      RegionPredicate predicate;
      for (const RunPlan::Clause& clause : plan.regions[i]) {
        predicate.clauses.push_back(
            {clause.column, parse_op(clause.op), clause.threshold});
      }
      regions.emplace_back(std::move(predicate), plan.matrices[i]);
    }
    return WeakeningSpec::idn(std::move(regions), plan.seed);
  }
  if (plan.mode == "multi_annotator") {
    return WeakeningSpec::multi_annotator(AnnotatorPool::of(plan.matrices),
                                          plan.seed);
  }
  throw Error(ErrorKind::SchemaError, "unknown mode '" + plan.mode + "'");
}

namespace {

Dataset weaken_impl(const Dataset& data, const WeakeningSpec& spec, bool parallel) {
  check_shared_shape(spec.matrices);
  const int k = spec.matrices.front().num_classes();
  const int label_col = data.require_column("label");
  const std::size_t n = data.size();

  std::vector<PreparedMatrix> prepared;
  prepared.reserve(spec.matrices.size());
  for (const MixingMatrix& m : spec.matrices) prepared.push_back(PreparedMatrix::of(m));

  // Resolve IDN clause columns once.
  std::vector<std::vector<std::pair<int, RegionPredicate::Clause>>> region_clauses;
  if (spec.mode == WeakeningSpec::Mode::IDN) {
    for (const RegionPredicate& predicate : spec.regions) {
      std::vector<std::pair<int, RegionPredicate::Clause>> resolved;
      for (const RegionPredicate::Clause& clause : predicate.clauses) {
        resolved.emplace_back(data.require_column(clause.column), clause);
      }
      region_clauses.push_back(std::move(resolved));
    }
  }

  const int annotators = spec.mode == WeakeningSpec::Mode::MultiAnnotator
                             ? static_cast<int>(spec.matrices.size())
                             : 1;

  std::vector<std::vector<std::string>> weak_cells(
      n, std::vector<std::string>(static_cast<std::size_t>(annotators)));

  auto process_row = [&](std::size_t i) {
    CleanLabel y = data.clean_label_at(i, label_col, k);
    if (spec.mode == WeakeningSpec::Mode::MultiAnnotator) {
      for (int j = 0; j < annotators; ++j) {
        WeakLabel w = prepared[static_cast<std::size_t>(j)].sample(
            y, RngKey{spec.seed, i, static_cast<std::uint64_t>(j)});
        weak_cells[i][static_cast<std::size_t>(j)] = format_weak_label(w);
      }
      return;
    }
    std::size_t which = 0;
    if (spec.mode == WeakeningSpec::Mode::IDN) {
      bool matched = false;
      for (std::size_t g = 0; g < region_clauses.size(); ++g) {
        bool hit = true;
        for (const auto& [col, clause] : region_clauses[g]) {
          if (!clause_holds(data.numeric_at(i, col), clause.op, clause.threshold)) {
            hit = false;
            break;
          }
        }
        if (hit) {
          which = g;
          matched = true;
          break;
        }
      }
      if (!matched) {
        throw Error(ErrorKind::UnmatchedRegion,
                    "row " + std::to_string(i) + " matched no region");
      }
    }
    WeakLabel w = prepared[which].sample(y, RngKey{spec.seed, i, 0});
    weak_cells[i][0] = format_weak_label(w);
  };

  if (parallel) {
    // Row errors cannot unwind out of the parallel region; remember the
    // first one and rethrow after the loop.
    std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        process_row(static_cast<std::size_t>(i));
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical(weaksup_weaken_error)
#endif
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    for (std::size_t i = 0; i < n; ++i) process_row(i);
  }

  Dataset out;
  out.columns = data.columns;
  if (annotators == 1) {
    out.columns.push_back("weak_label");
  } else {
    for (int j = 0; j < annotators; ++j) {
      out.columns.push_back("weak_" + std::to_string(j));
    }
  }
  out.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> row = data.rows[i];
    for (std::string& cell : weak_cells[i]) row.push_back(std::move(cell));
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Dataset weaken_dataset(const Dataset& data, const WeakeningSpec& spec) {
  return weaken_impl(data, spec, true);
}

Dataset weaken_dataset_serial(const Dataset& data, const WeakeningSpec& spec) {
  return weaken_impl(data, spec, false);
}

}  // namespace weaksup
