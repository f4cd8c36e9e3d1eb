#include "weaksup/label_space.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <sstream>

namespace weaksup {

namespace {

void check_k(int k) {
  if (k < 2 || k > kMaxClasses) {
    throw Error(ErrorKind::OutOfRange,
                "class count k must be in [2, " + std::to_string(kMaxClasses) +
                    "], got " + std::to_string(k));
  }
}

ClassMask full_mask(int k) { return (static_cast<ClassMask>(1u) << k) - 1u; }

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base) {
      throw Error(ErrorKind::Overflow, "space cardinality exceeds 64 bits");
    }
    out *= base;
  }
  return out;
}

std::uint64_t binomial(int n, int r) {
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / i;
  return out;
}

// Count of per-annotator outcomes in the unified space: all proper non-empty
// subsets of size <= m, plus the empty annotation when allowed.
std::uint64_t unified_inner_count(int k, int m, bool allow_abstain) {
  int cap = std::min(m, k - 1);
  std::uint64_t total = allow_abstain ? 1 : 0;
  for (int size = 1; size <= cap; ++size) total += binomial(k, size);
  return total;
}

}  // namespace

WeakLabel WeakLabel::annotator_tuple(AnnotatorTuple entries) {
  if (entries.empty()) {
    throw Error(ErrorKind::OutOfRange, "annotator tuple must be non-empty");
  }
  for (const WeakLabel& entry : entries) {
    if (entry.is_tuple()) {
      throw Error(ErrorKind::OutOfRange, "annotator tuples cannot nest");
    }
  }
  return WeakLabel(std::move(entries));
}

WeakLabelSpace WeakLabelSpace::multiclass(int k) {
  check_k(k);
  return WeakLabelSpace(Kind::Multiclass, k, 1, 1, false);
}

WeakLabelSpace WeakLabelSpace::partial_set(int k, int m) {
  check_k(k);
  if (m < 0) m = k - 1;
  if (m < 1 || m > k) {
    throw Error(ErrorKind::OutOfRange, "m must be in [1, k]");
  }
  return WeakLabelSpace(Kind::PartialSet, k, m, 1, false);
}

WeakLabelSpace WeakLabelSpace::superset_set(int k, int m) {
  WeakLabelSpace space = partial_set(k, m);
  space.kind_ = Kind::SupersetSet;
  return space;
}

WeakLabelSpace WeakLabelSpace::semi_sup(int k) {
  check_k(k);
  return WeakLabelSpace(Kind::SemiSup, k, 1, 1, true);
}

WeakLabelSpace WeakLabelSpace::pu() {
  return WeakLabelSpace(Kind::PU, 2, 1, 1, true);
}

WeakLabelSpace WeakLabelSpace::multi_annotator(int n, WeakLabelSpace inner) {
  if (n < 1) throw Error(ErrorKind::OutOfRange, "annotator count must be >= 1");
  if (inner.kind() == Kind::MultiAnnotator || inner.kind() == Kind::Unified) {
    throw Error(ErrorKind::OutOfRange, "multi-annotator inner space must be flat");
  }
  WeakLabelSpace space(Kind::MultiAnnotator, inner.num_classes(),
                       inner.max_candidates(), n, inner.allow_abstain());
  space.inner_ = std::make_shared<const WeakLabelSpace>(std::move(inner));
  return space;
}

WeakLabelSpace WeakLabelSpace::unified(int n, int k, int m, bool allow_abstain) {
  check_k(k);
  if (n < 1) throw Error(ErrorKind::OutOfRange, "annotator count must be >= 1");
  if (m < 1 || m > k) throw Error(ErrorKind::OutOfRange, "m must be in [1, k]");
  return WeakLabelSpace(Kind::Unified, k, m, n, allow_abstain);
}

std::uint64_t WeakLabelSpace::cardinality() const { return space_cardinality(*this); }

std::string WeakLabelSpace::name() const {
  switch (kind_) {
    case Kind::Multiclass: return "multiclass";
    case Kind::PartialSet: return "partial_set";
    case Kind::SupersetSet: return "superset_set";
    case Kind::SemiSup: return "semi_sup";
    case Kind::PU: return "pu";
    case Kind::MultiAnnotator: return "multi_annotator";
    case Kind::Unified: return "unified";
  }
  return "?";
}

bool operator==(const WeakLabelSpace& a, const WeakLabelSpace& b) {
  if (a.kind_ != b.kind_ || a.k_ != b.k_ || a.m_ != b.m_ || a.n_ != b.n_ ||
      a.allow_abstain_ != b.allow_abstain_) {
    return false;
  }
  if (a.kind_ == WeakLabelSpace::Kind::MultiAnnotator) {
    return *a.inner_ == *b.inner_;
  }
  return true;
}

std::uint64_t subset_to_row(ClassMask mask, int k) {
  check_k(k);
  if (mask == 0 || mask >= full_mask(k)) {
    throw Error(ErrorKind::OutOfSpace,
                "subset mask " + std::to_string(mask) +
                    " outside [1, 2^k - 2] for k = " + std::to_string(k));
  }
  return mask - 1u;
}

ClassMask row_to_subset(std::uint64_t row, int k) {
  check_k(k);
  if (row >= full_mask(k) - 1u) {
    throw Error(ErrorKind::OutOfSpace,
                "row " + std::to_string(row) + " outside [0, 2^k - 3]");
  }
  return static_cast<ClassMask>(row + 1u);
}

std::uint64_t space_cardinality(const WeakLabelSpace& space) {
  using Kind = WeakLabelSpace::Kind;
  const int k = space.num_classes();
  switch (space.kind()) {
    case Kind::Multiclass:
      return static_cast<std::uint64_t>(k);
    case Kind::PartialSet:
    case Kind::SupersetSet:
      return (static_cast<std::uint64_t>(1) << k) - 2u;
    case Kind::SemiSup:
      return static_cast<std::uint64_t>(k) + 1u;
    case Kind::PU:
      return 3;
    case Kind::MultiAnnotator:
      return checked_pow(space_cardinality(space.inner()), space.num_annotators());
    case Kind::Unified:
      return checked_pow(
          unified_inner_count(k, space.max_candidates(), space.allow_abstain()),
          space.num_annotators());
  }
  throw Error(ErrorKind::OutOfRange, "bad space kind");
}

std::uint64_t weak_label_row(const WeakLabel& label, const WeakLabelSpace& space) {
  using Kind = WeakLabelSpace::Kind;
  const int k = space.num_classes();
  switch (space.kind()) {
    case Kind::Multiclass: {
      if (!label.is_class_set() || std::popcount(label.mask()) != 1) {
        throw Error(ErrorKind::OutOfSpace, "multiclass rows are single classes");
      }
      int c = std::countr_zero(label.mask());
      if (c >= k) throw Error(ErrorKind::OutOfSpace, "class index out of range");
      return static_cast<std::uint64_t>(c);
    }
    case Kind::PartialSet:
    case Kind::SupersetSet: {
      if (!label.is_class_set()) {
        throw Error(ErrorKind::OutOfSpace, "set-valued space expects a class set");
      }
      return subset_to_row(label.mask(), k);
    }
    case Kind::SemiSup:
    case Kind::PU: {
      if (label.is_abstain()) return static_cast<std::uint64_t>(k);
      if (!label.is_class_set() || std::popcount(label.mask()) != 1) {
        throw Error(ErrorKind::OutOfSpace, "semi-supervised rows are classes or abstain");
      }
      int c = std::countr_zero(label.mask());
      if (c >= k) throw Error(ErrorKind::OutOfSpace, "class index out of range");
      return static_cast<std::uint64_t>(c);
    }
    case Kind::MultiAnnotator:
    case Kind::Unified:
      throw Error(ErrorKind::OutOfSpace, "tuple spaces have no flat row index");
  }
  throw Error(ErrorKind::OutOfRange, "bad space kind");
}

WeakLabel row_weak_label(std::uint64_t row, const WeakLabelSpace& space) {
  using Kind = WeakLabelSpace::Kind;
  const int k = space.num_classes();
  switch (space.kind()) {
    case Kind::Multiclass: {
      if (row >= static_cast<std::uint64_t>(k)) {
        throw Error(ErrorKind::OutOfSpace, "row out of range");
      }
      return WeakLabel::single(static_cast<int>(row));
    }
    case Kind::PartialSet:
    case Kind::SupersetSet:
      return WeakLabel::class_set(row_to_subset(row, k));
    case Kind::SemiSup:
    case Kind::PU: {
      if (row == static_cast<std::uint64_t>(k)) return WeakLabel::abstain();
      if (row > static_cast<std::uint64_t>(k)) {
        throw Error(ErrorKind::OutOfSpace, "row out of range");
      }
      return WeakLabel::single(static_cast<int>(row));
    }
    case Kind::MultiAnnotator:
    case Kind::Unified:
      throw Error(ErrorKind::OutOfSpace, "tuple spaces have no flat row index");
  }
  throw Error(ErrorKind::OutOfRange, "bad space kind");
}

namespace {

bool valid_class_set(ClassMask mask, int k, int m) {
  if (mask == 0 || (mask & ~full_mask(k)) != 0) return false;
  int size = std::popcount(mask);
  return size >= 1 && size <= std::min(m, k - 1);
}

bool member_flat(const WeakLabel& label, const WeakLabelSpace& space,
                 const std::optional<CleanLabel>& true_label) {
  using Kind = WeakLabelSpace::Kind;
  const int k = space.num_classes();
  switch (space.kind()) {
    case Kind::Multiclass:
      return label.is_class_set() && valid_class_set(label.mask(), k, 1);
    case Kind::PartialSet:
      return label.is_class_set() &&
             valid_class_set(label.mask(), k, space.max_candidates());
    case Kind::SupersetSet: {
      if (!label.is_class_set() ||
          !valid_class_set(label.mask(), k, space.max_candidates())) {
        return false;
      }
      if (!true_label) {
        throw Error(ErrorKind::MissingTrueLabel,
                    "superset membership needs the clean label");
      }
      if (true_label->class_index < 0 || true_label->class_index >= k) {
        throw Error(ErrorKind::LabelOutOfRange, "clean label out of range");
      }
      return (label.mask() >> true_label->class_index) & 1u;
    }
    case Kind::SemiSup:
    case Kind::PU:
      if (label.is_abstain()) return true;
      return label.is_class_set() && valid_class_set(label.mask(), k, 1);
    default:
      return false;
  }
}

}  // namespace

bool validate_membership(const WeakLabel& label, const WeakLabelSpace& space,
                         std::optional<CleanLabel> true_label) {
  using Kind = WeakLabelSpace::Kind;
  switch (space.kind()) {
    case Kind::MultiAnnotator: {
      if (!label.is_tuple()) return false;
      const auto& entries = label.annotators();
      if (static_cast<int>(entries.size()) != space.num_annotators()) return false;
      return std::all_of(entries.begin(), entries.end(), [&](const WeakLabel& e) {
        return member_flat(e, space.inner(), true_label);
      });
    }
    case Kind::Unified: {
      if (!label.is_tuple()) return false;
      const auto& entries = label.annotators();
      if (static_cast<int>(entries.size()) != space.num_annotators()) return false;
      const int k = space.num_classes();
      const int m = space.max_candidates();
      return std::all_of(entries.begin(), entries.end(), [&](const WeakLabel& e) {
        if (e.is_abstain()) return space.allow_abstain();
        return e.is_class_set() && valid_class_set(e.mask(), k, m);
      });
    }
    default:
      return member_flat(label, space, true_label);
  }
}

bool validate_membership(const CleanLabel& label, const WeakLabelSpace& space) {
  return label.class_index >= 0 && label.class_index < space.num_classes();
}

namespace {

WeakLabel parse_flat_label(std::string_view text, std::size_t base_offset) {
  if (text == "-") return WeakLabel::abstain();
  ClassMask mask = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('|', pos);
    if (end == std::string_view::npos) end = text.size();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end || value < 0 ||
        value >= kMaxClasses) {
      throw Error(ErrorKind::ParseError,
                  "bad class index at byte offset " +
                      std::to_string(base_offset + pos));
    }
    mask |= static_cast<ClassMask>(1u) << value;
    pos = end + 1;
    if (pos == text.size() + 1) break;
    if (end == text.size()) break;
  }
  if (text.empty() || text.back() == '|') {
    throw Error(ErrorKind::ParseError,
                "empty class list component at byte offset " +
                    std::to_string(base_offset + text.size()));
  }
  return WeakLabel::class_set(mask);
}

}  // namespace

WeakLabel parse_weak_label(std::string_view text, const WeakLabelSpace& space) {
  using Kind = WeakLabelSpace::Kind;
  WeakLabel label = WeakLabel::abstain();
  if (space.kind() == Kind::MultiAnnotator || space.kind() == Kind::Unified) {
    WeakLabel::AnnotatorTuple entries;
    std::size_t pos = 0;
    while (true) {
      std::size_t end = text.find(';', pos);
      std::string_view part = text.substr(pos, end == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : end - pos);
      entries.push_back(parse_flat_label(part, pos));
      if (end == std::string_view::npos) break;
      pos = end + 1;
    }
    label = WeakLabel::annotator_tuple(std::move(entries));
  } else {
    label = parse_flat_label(text, 0);
  }
  // Coverage against a clean label is not checkable here; superset parsing
  // validates the structural constraints only.
  bool ok = space.kind() == Kind::SupersetSet
                ? validate_membership(
                      label, WeakLabelSpace::partial_set(space.num_classes(),
                                                         space.max_candidates()))
                : validate_membership(label, space);
  if (!ok) {
    throw Error(ErrorKind::OutOfSpace,
                "label '" + std::string(text) + "' not a member of space " +
                    space.name());
  }
  return label;
}

std::string format_weak_label(const WeakLabel& label) {
  if (label.is_abstain()) return "-";
  if (label.is_class_set()) {
    std::string out;
    ClassMask mask = label.mask();
    for (int c = 0; mask != 0; ++c, mask >>= 1) {
      if (mask & 1u) {
        if (!out.empty()) out += '|';
        out += std::to_string(c);
      }
    }
    return out;
  }
  std::string out;
  for (const WeakLabel& entry : label.annotators()) {
    if (!out.empty()) out += ';';
    out += format_weak_label(entry);
  }
  return out;
}

std::vector<std::uint64_t> display_row_order(int k) {
  check_k(k);
  std::vector<std::uint64_t> rows(full_mask(k) - 1u);
  std::iota(rows.begin(), rows.end(), 0u);
  std::stable_sort(rows.begin(), rows.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(static_cast<ClassMask>(a + 1)) <
           std::popcount(static_cast<ClassMask>(b + 1));
  });
  return rows;
}

std::string subset_display_string(ClassMask mask, int k) {
  std::string out(static_cast<std::size_t>(k), '0');
  for (int c = 0; c < k; ++c) {
    if ((mask >> c) & 1u) out[static_cast<std::size_t>(c)] = '1';
  }
  return out;
}

}  // namespace weaksup
