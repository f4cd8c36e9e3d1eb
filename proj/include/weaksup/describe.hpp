#pragma once

#include <string>
#include <vector>

#include "weaksup/mixing.hpp"

namespace weaksup {

// Answers to the nine framework dimensions.
struct FrameworkDescriptor {
  int num_classes = 2;
  bool multi_label = false;
  bool unsupervised = false;
  bool soft_labels = false;
  int num_annotators = 1;
  bool candidate_classes_gt1 = false;
  bool aggregation = false;
  bool class_dependent = false;
  bool instance_dependent = false;
};

struct DatasheetReport {
  FrameworkDescriptor descriptor;
  std::vector<std::string> settings;  // matching named settings
  std::string weak_space_kind;
  std::uint64_t weak_space_cardinality = 0;
  std::string matrix_shape;  // e.g. "6x3", "n matrices of kxk"
  std::vector<std::string> notes;

  std::string to_text() const;
  std::string to_json() const;
};

// Rejects incompatible dimension combinations with IncompatibleDimensions.
DatasheetReport describe(const FrameworkDescriptor& descriptor);

}  // namespace weaksup
