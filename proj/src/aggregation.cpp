#include "weaksup/aggregation.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "weaksup/rng.hpp"

namespace weaksup {

std::string BagLabel::to_cell() const {
  if (kind == Kind::Binary) return std::to_string(binary);
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += '|';
    if (kind == Kind::Counts) {
      out += std::to_string(static_cast<long long>(v));
    } else {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += buf;
    }
  }
  return out;
}

BagAssignment assign_bags(std::size_t n, const BagStrategy& strategy,
                          const Dataset* data) {
  if (n == 0) throw Error(ErrorKind::EmptyDataset, "cannot bag an empty dataset");

  BagAssignment out;
  out.bag_of.resize(n);

  switch (strategy.kind) {
    case BagStrategy::Kind::Contiguous:
    case BagStrategy::Kind::RandomPartition: {
      if (strategy.bag_size < 1) {
        throw Error(ErrorKind::OutOfRange, "bag_size must be >= 1");
      }
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0u);
      if (strategy.kind == BagStrategy::Kind::RandomPartition) {
        // Fisher-Yates with the seeded stream; deterministic in the seed.
        SplitMix64 rng(strategy.seed);
        for (std::size_t i = n - 1; i > 0; --i) {
          std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
          std::swap(order[i], order[j]);
        }
      }
      for (std::size_t start = 0; start < n; start += strategy.bag_size) {
        std::size_t stop = std::min(n, start + strategy.bag_size);
        std::vector<std::size_t> bag(order.begin() + static_cast<std::ptrdiff_t>(start),
                                     order.begin() + static_cast<std::ptrdiff_t>(stop));
        for (std::size_t i : bag) out.bag_of[i] = out.bags.size();
        out.bags.push_back(std::move(bag));
      }
      break;
    }
    case BagStrategy::Kind::ByKey: {
      if (data == nullptr) {
        throw Error(ErrorKind::SchemaError, "by_key bagging needs the dataset");
      }
      if (data->size() != n) {
        throw Error(ErrorKind::ShapeMismatch, "dataset size does not match n");
      }
      int col = data->require_column(strategy.key_column);
      std::unordered_map<std::string, std::size_t> bag_ids;
      for (std::size_t i = 0; i < n; ++i) {
        const std::string& key = data->rows[i][static_cast<std::size_t>(col)];
        auto [it, fresh] = bag_ids.emplace(key, out.bags.size());
        if (fresh) out.bags.emplace_back();
        out.bag_of[i] = it->second;
        out.bags[it->second].push_back(i);
      }
      break;
    }
  }
  return out;
}

BagLabel aggregate_mil(std::span<const int> labels, int positive_class) {
  if (labels.empty()) throw Error(ErrorKind::EmptyBag, "MIL over an empty bag");
  bool any = std::any_of(labels.begin(), labels.end(),
                         [&](int y) { return y == positive_class; });
  return BagLabel::binary_of(any ? 1 : 0);
}

BagLabel aggregate_gmil(std::span<const int> labels, int positive_class,
                        std::uint64_t r) {
  if (labels.empty()) throw Error(ErrorKind::EmptyBag, "GMIL over an empty bag");
  if (r < 1) throw Error(ErrorKind::InvalidThreshold, "r must be >= 1");
  std::uint64_t count = static_cast<std::uint64_t>(
      std::count(labels.begin(), labels.end(), positive_class));
  return BagLabel::binary_of(count >= r ? 1 : 0);
}

BagLabel aggregate_llp(std::span<const int> labels, int k, bool normalized) {
  if (labels.empty()) throw Error(ErrorKind::EmptyBag, "LLP over an empty bag");
  std::vector<double> counts(static_cast<std::size_t>(k), 0.0);
  for (int y : labels) {
    if (y < 0 || y >= k) {
      throw Error(ErrorKind::LabelOutOfRange,
                  "label " + std::to_string(y) + " outside [0, k)");
    }
    counts[static_cast<std::size_t>(y)] += 1.0;
  }
  if (!normalized) return BagLabel::counts_of(std::move(counts));
  for (double& c : counts) c /= static_cast<double>(labels.size());
  return BagLabel::proportions_of(std::move(counts));
}

std::vector<BagLabel> aggregate_dataset(const std::vector<int>& labels,
                                        const BagAssignment& assignment,
                                        const AggregationChoice& g) {
  if (assignment.bag_of.size() != labels.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "assignment does not cover every instance");
  }
  std::vector<BagLabel> out;
  out.reserve(assignment.num_bags());
  for (std::size_t b = 0; b < assignment.num_bags(); ++b) {
    std::vector<int> bag_labels;
    bag_labels.reserve(assignment.bags[b].size());
    for (std::size_t i : assignment.bags[b]) bag_labels.push_back(labels[i]);
    try {
      switch (g.kind) {
        case AggregationChoice::Kind::Mil:
          out.push_back(aggregate_mil(bag_labels, g.positive_class));
          break;
        case AggregationChoice::Kind::Gmil:
          out.push_back(aggregate_gmil(bag_labels, g.positive_class, g.threshold));
          break;
        case AggregationChoice::Kind::Llp:
          out.push_back(aggregate_llp(bag_labels, g.num_classes, g.normalized));
          break;
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "bag " + std::to_string(b) + ": " + e.what());
    }
  }
  return out;
}

std::vector<BagLabel> expand_to_instances(const std::vector<BagLabel>& bag_labels,
                                          const BagAssignment& assignment) {
  std::vector<BagLabel> out;
  out.reserve(assignment.bag_of.size());
  for (std::size_t bag : assignment.bag_of) out.push_back(bag_labels[bag]);
  return out;
}

}  // namespace weaksup
