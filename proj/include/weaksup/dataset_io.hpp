#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "weaksup/label_space.hpp"
#include "weaksup/mixing.hpp"

namespace weaksup {

// Rectangular table of string cells. Numeric parsing happens on access so
// that non-feature columns can hold arbitrary text.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t size() const { return rows.size(); }
  int column_index(const std::string& name) const;
  // Throws SchemaError when the column does not exist.
  int require_column(const std::string& name) const;

  double numeric_at(std::size_t row, int col) const;
  CleanLabel clean_label_at(std::size_t row, int label_col, int k) const;
};

Dataset read_csv(const std::string& path);
// Validates that the `label` column holds class indices in [0, k).
Dataset read_clean_csv(const std::string& path, int k);
void write_csv(const std::string& path, const Dataset& dataset);
std::string csv_to_string(const Dataset& dataset);

// Decimal serialization that survives a round trip exactly.
std::string format_double(double value);

void write_matrix_json(const std::string& path, const MixingMatrix& matrix);
MixingMatrix read_matrix_json(const std::string& path);
std::string matrix_to_json_string(const MixingMatrix& matrix);
MixingMatrix matrix_from_json_string(const std::string& text);

// Parses a tagged weak-space descriptor, e.g. {"kind":"multiclass","k":3}.
WeakLabelSpace space_from_json_string(const std::string& text);

// Run plan parsed from the generation config.
struct RunPlan {
  std::uint64_t seed = 0;
  std::string mode;  // "iin", "idn", "multi_annotator"
  std::vector<MixingMatrix> matrices;
  // IDN regions, parallel to matrices: conjunction of threshold clauses,
  // empty conjunction = catch-all.
  struct Clause {
    std::string column;
    std::string op;  // "<", "<=", ">", ">="
    double threshold = 0.0;
  };
  std::vector<std::vector<Clause>> regions;

  bool has_aggregation = false;
  struct Aggregation {
    std::string strategy;  // "random_partition", "contiguous", "by_key"
    std::uint64_t bag_size = 0;
    std::uint64_t bag_seed = 0;
    std::string key_column;
    std::string g;  // "mil", "gmil", "llp"
    int positive_class = 0;
    std::uint64_t threshold = 1;
    int num_classes = 0;
    bool normalized = false;
  } aggregation;
};

RunPlan read_config(const std::string& path);
RunPlan config_from_json_string(const std::string& text);

}  // namespace weaksup
