#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weaksup/dataset_io.hpp"
#include "weaksup/label_space.hpp"
#include "weaksup/mixing.hpp"
#include "weaksup/rng.hpp"

namespace weaksup {

// One draw from Cat(T y): inverse CDF over canonical row order with a single
// uniform variate from the key's stream.
WeakLabel sample_weak(const MixingMatrix& matrix, CleanLabel y, RngKey key);

// Conjunction of threshold comparisons on numeric feature columns. An empty
// conjunction matches everything (the required trailing catch-all).
struct RegionPredicate {
  enum class Op { Lt, Le, Gt, Ge };
  struct Clause {
    std::string column;
    Op op = Op::Lt;
    double threshold = 0.0;
  };
  std::vector<Clause> clauses;

  bool catch_all() const { return clauses.empty(); }
};

struct WeakeningSpec {
  enum class Mode { IIN, IDN, MultiAnnotator };

  Mode mode = Mode::IIN;
  std::uint64_t seed = 0;
  // IIN: exactly one matrix. IDN: one per region. MultiAnnotator: the pool.
  std::vector<MixingMatrix> matrices;
  std::vector<RegionPredicate> regions;  // IDN only, parallel to matrices

  static WeakeningSpec iin(MixingMatrix matrix, std::uint64_t seed);
  static WeakeningSpec idn(std::vector<std::pair<RegionPredicate, MixingMatrix>> regions,
                           std::uint64_t seed);
  static WeakeningSpec multi_annotator(AnnotatorPool pool, std::uint64_t seed);
};

WeakeningSpec spec_from_plan(const RunPlan& plan);

// Appends weak_label (or weak_0..weak_{n-1}) columns to a copy of the input.
// The result is a pure function of (data, spec); the parallel and serial
// paths produce identical output.
Dataset weaken_dataset(const Dataset& data, const WeakeningSpec& spec);

// Serial reference path, kept for testing the parallel kernel against.
Dataset weaken_dataset_serial(const Dataset& data, const WeakeningSpec& spec);

}  // namespace weaksup
