#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weaksup/error.hpp"

namespace weaksup {

// Class subsets are bitmasks with bit c = class index c. k stays small (the
// set-valued spaces have 2^k - 2 rows), so 32 bits are plenty.
using ClassMask = std::uint32_t;

constexpr int kMaxClasses = 30;

struct CleanLabel {
  int class_index = 0;

  friend bool operator==(const CleanLabel&, const CleanLabel&) = default;
};

// A clean annotation covering between 1 and m classes.
struct MultiCleanLabel {
  ClassMask class_set = 0;

  friend bool operator==(const MultiCleanLabel&, const MultiCleanLabel&) = default;
};

class WeakLabel {
 public:
  struct ClassSet {
    ClassMask mask = 0;
    friend bool operator==(const ClassSet&, const ClassSet&) = default;
  };
  struct Abstain {
    friend bool operator==(const Abstain&, const Abstain&) = default;
  };
  using AnnotatorTuple = std::vector<WeakLabel>;

  static WeakLabel single(int class_index) {
    return WeakLabel(ClassSet{static_cast<ClassMask>(1u) << class_index});
  }
  static WeakLabel class_set(ClassMask mask) { return WeakLabel(ClassSet{mask}); }
  static WeakLabel abstain() { return WeakLabel(Abstain{}); }
  // Entries must themselves be ClassSet or Abstain (nesting depth 1).
  static WeakLabel annotator_tuple(AnnotatorTuple entries);

  bool is_class_set() const { return std::holds_alternative<ClassSet>(value_); }
  bool is_abstain() const { return std::holds_alternative<Abstain>(value_); }
  bool is_tuple() const { return std::holds_alternative<AnnotatorTuple>(value_); }

  ClassMask mask() const { return std::get<ClassSet>(value_).mask; }
  const AnnotatorTuple& annotators() const { return std::get<AnnotatorTuple>(value_); }

  friend bool operator==(const WeakLabel&, const WeakLabel&) = default;

 private:
  explicit WeakLabel(ClassSet s) : value_(s) {}
  explicit WeakLabel(Abstain a) : value_(a) {}
  explicit WeakLabel(AnnotatorTuple t) : value_(std::move(t)) {}

  std::variant<ClassSet, Abstain, AnnotatorTuple> value_;
};

// Descriptor of the observation space a mixing matrix targets.
class WeakLabelSpace {
 public:
  enum class Kind {
    Multiclass,
    PartialSet,
    SupersetSet,
    SemiSup,
    PU,
    MultiAnnotator,
    Unified,
  };

  static WeakLabelSpace multiclass(int k);
  // m defaults to k - 1 when not given.
  static WeakLabelSpace partial_set(int k, int m = -1);
  static WeakLabelSpace superset_set(int k, int m = -1);
  static WeakLabelSpace semi_sup(int k);
  static WeakLabelSpace pu();
  static WeakLabelSpace multi_annotator(int n, WeakLabelSpace inner);
  static WeakLabelSpace unified(int n, int k, int m, bool allow_abstain);

  Kind kind() const { return kind_; }
  int num_classes() const { return k_; }
  int max_candidates() const { return m_; }
  int num_annotators() const { return n_; }
  bool allow_abstain() const { return allow_abstain_; }
  const WeakLabelSpace& inner() const { return *inner_; }

  std::uint64_t cardinality() const;
  std::string name() const;

  friend bool operator==(const WeakLabelSpace& a, const WeakLabelSpace& b);

 private:
  WeakLabelSpace(Kind kind, int k, int m, int n, bool allow_abstain)
      : kind_(kind), k_(k), m_(m), n_(n), allow_abstain_(allow_abstain) {}

  Kind kind_;
  int k_;
  int m_;
  int n_ = 1;
  bool allow_abstain_ = false;
  std::shared_ptr<const WeakLabelSpace> inner_;
};

// Canonical bijection between proper non-empty class subsets and matrix row
// indices: row = bitmask - 1, ascending bitmask order.
std::uint64_t subset_to_row(ClassMask mask, int k);
ClassMask row_to_subset(std::uint64_t row, int k);

std::uint64_t space_cardinality(const WeakLabelSpace& space);

// Maps a weak label to its row in the space's canonical order, and back.
// Tuple labels have no flat row; OutOfSpace is raised for them.
std::uint64_t weak_label_row(const WeakLabel& label, const WeakLabelSpace& space);
WeakLabel row_weak_label(std::uint64_t row, const WeakLabelSpace& space);

bool validate_membership(const WeakLabel& label, const WeakLabelSpace& space,
                         std::optional<CleanLabel> true_label = std::nullopt);
bool validate_membership(const CleanLabel& label, const WeakLabelSpace& space);

WeakLabel parse_weak_label(std::string_view text, const WeakLabelSpace& space);
std::string format_weak_label(const WeakLabel& label);

// Row permutation for display: singletons and small sets first, the storage
// order stays canonical-bitmask.
std::vector<std::uint64_t> display_row_order(int k);
std::string subset_display_string(ClassMask mask, int k);

}  // namespace weaksup
