#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weaksup/dataset_io.hpp"
#include "weaksup/label_space.hpp"

namespace weaksup {

// Partition of instances into bags. bag_of[i] is the bag holding instance i;
// bags[b] lists its members in order.
struct BagAssignment {
  std::vector<std::size_t> bag_of;
  std::vector<std::vector<std::size_t>> bags;

  std::size_t num_bags() const { return bags.size(); }
};

struct BagLabel {
  enum class Kind { Binary, Counts, Proportions };

  Kind kind = Kind::Binary;
  int binary = 0;
  std::vector<double> values;  // per-class counts or fractions

  static BagLabel binary_of(int value) { return {Kind::Binary, value, {}}; }
  static BagLabel counts_of(std::vector<double> counts) {
    return {Kind::Counts, 0, std::move(counts)};
  }
  static BagLabel proportions_of(std::vector<double> fractions) {
    return {Kind::Proportions, 0, std::move(fractions)};
  }

  std::string to_cell() const;
};

struct BagStrategy {
  enum class Kind { RandomPartition, Contiguous, ByKey };

  Kind kind = Kind::Contiguous;
  std::size_t bag_size = 1;
  std::uint64_t seed = 0;
  std::string key_column;

  static BagStrategy random_partition(std::size_t bag_size, std::uint64_t seed) {
    return {Kind::RandomPartition, bag_size, seed, {}};
  }
  static BagStrategy contiguous(std::size_t bag_size) {
    return {Kind::Contiguous, bag_size, 0, {}};
  }
  static BagStrategy by_key(std::string column) {
    return {Kind::ByKey, 0, 0, std::move(column)};
  }
};

// ByKey groups rows sharing the column value, bag ids in order of first
// appearance. The data argument is only consulted for ByKey.
BagAssignment assign_bags(std::size_t n, const BagStrategy& strategy,
                          const Dataset* data = nullptr);

// Bag-level aggregation g({y_i : i in bag}).
BagLabel aggregate_mil(std::span<const int> labels, int positive_class);
BagLabel aggregate_gmil(std::span<const int> labels, int positive_class,
                        std::uint64_t r);
BagLabel aggregate_llp(std::span<const int> labels, int k, bool normalized);

struct AggregationChoice {
  enum class Kind { Mil, Gmil, Llp };

  Kind kind = Kind::Llp;
  int positive_class = 0;
  std::uint64_t threshold = 1;
  int num_classes = 0;
  bool normalized = false;
};

std::vector<BagLabel> aggregate_dataset(const std::vector<int>& labels,
                                        const BagAssignment& assignment,
                                        const AggregationChoice& g);

// Instance-level view: the bag label repeated per member, n entries.
std::vector<BagLabel> expand_to_instances(const std::vector<BagLabel>& bag_labels,
                                          const BagAssignment& assignment);

}  // namespace weaksup
