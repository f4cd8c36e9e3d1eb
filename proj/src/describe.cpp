#include "weaksup/describe.hpp"

#include <sstream>

#include <json.hpp>

#include "weaksup/label_space.hpp"

namespace weaksup {

namespace {

std::string yes_no(bool value) { return value ? "yes" : "no"; }

}  // namespace

DatasheetReport describe(const FrameworkDescriptor& d) {
  if (d.num_classes < 2) {
    throw Error(ErrorKind::OutOfRange, "the task needs at least two classes");
  }
  if (d.num_annotators < 1) {
    throw Error(ErrorKind::OutOfRange, "annotator count must be >= 1");
  }
  if (d.aggregation && d.candidate_classes_gt1) {
    throw Error(ErrorKind::IncompatibleDimensions,
                "aggregation=yes conflicts with candidate classes > 1: bag "
                "labels aggregate single-class instance labels");
  }
  if (d.aggregation && d.soft_labels) {
    throw Error(ErrorKind::IncompatibleDimensions,
                "aggregation=yes conflicts with soft labels");
  }

  DatasheetReport report;
  report.descriptor = d;
  const int k = d.num_classes;
  const bool binary = k == 2;

  if (d.aggregation) {
    if (binary) {
      report.settings.push_back("MultipleInstanceLearning");
      report.settings.push_back("GeneralizedMultipleInstanceLearning");
    }
    report.settings.push_back("LearningFromLabelProportions");
    report.weak_space_kind = "bag-level labels";
    report.weak_space_cardinality = 0;
    report.matrix_shape = "none (aggregate setting, t_j = g({y_i : i in bag}))";
  } else if (d.candidate_classes_gt1) {
    report.settings.push_back(to_string(Setting::Superset));
    report.settings.push_back(to_string(Setting::PartialLabels));
    WeakLabelSpace space = WeakLabelSpace::partial_set(k);
    report.weak_space_kind = space.name();
    report.weak_space_cardinality = space.cardinality();
    report.matrix_shape =
        std::to_string(space.cardinality()) + "x" + std::to_string(k);
    if (d.num_annotators > 1) {
      report.settings.push_back(to_string(Setting::Unified));
      report.matrix_shape = std::to_string(d.num_annotators) + " matrices of " +
                            report.matrix_shape;
    }
  } else if (d.unsupervised) {
    if (binary) report.settings.push_back(to_string(Setting::PositiveUnlabelled));
    report.settings.push_back(to_string(Setting::SemiSupervised));
    WeakLabelSpace space = WeakLabelSpace::semi_sup(k);
    report.weak_space_kind = space.name();
    report.weak_space_cardinality = space.cardinality();
    report.matrix_shape = std::to_string(k + 1) + "x" + std::to_string(k);
    if (d.num_annotators > 1) {
      report.matrix_shape = std::to_string(d.num_annotators) + " matrices of " +
                            report.matrix_shape;
    }
  } else if (d.num_annotators > 1) {
    report.settings.push_back(to_string(Setting::MultipleAnnotators));
    WeakLabelSpace space = WeakLabelSpace::multi_annotator(
        d.num_annotators, WeakLabelSpace::multiclass(k));
    report.weak_space_kind = space.name();
    report.weak_space_cardinality = space.cardinality();
    report.matrix_shape = std::to_string(d.num_annotators) + " matrices of " +
                          std::to_string(k) + "x" + std::to_string(k);
  } else {
    report.settings.push_back(to_string(Setting::NoisyLabels));
    WeakLabelSpace space = WeakLabelSpace::multiclass(k);
    report.weak_space_kind = space.name();
    report.weak_space_cardinality = space.cardinality();
    report.matrix_shape = std::to_string(k) + "x" + std::to_string(k);
  }

  if (d.soft_labels) {
    report.notes.push_back(
        "soft labels: metadata only, generation unsupported");
  }
  if (d.multi_label) {
    report.notes.push_back(
        "multi-label true space: instances may carry up to m classes");
  }
  if (d.instance_dependent) {
    report.notes.push_back(
        d.aggregation
            ? "instance dependence: bag creation follows intra-bag similarity"
            : "instance-dependent noise: the mixing matrix varies with x");
  }
  if (d.class_dependent && !d.aggregation) {
    report.notes.push_back("class-dependent (asymmetric) noise");
  }
  return report;
}

std::string DatasheetReport::to_text() const {
  const FrameworkDescriptor& d = descriptor;
  std::ostringstream out;
  out << "Dimensions\n";
  out << "  number of classes:     " << (d.num_classes == 2 ? "binary" : "multi-class")
      << " (k = " << d.num_classes << ")\n";
  out << "  multi-label:           " << yes_no(d.multi_label) << "\n";
  out << "  unsupervised:          " << yes_no(d.unsupervised) << "\n";
  out << "  soft labels:           " << yes_no(d.soft_labels) << "\n";
  out << "  number of annotators:  " << d.num_annotators << "\n";
  out << "  candidate classes > 1: " << yes_no(d.candidate_classes_gt1) << "\n";
  out << "  aggregation:           " << yes_no(d.aggregation) << "\n";
  out << "  class dependent:       " << yes_no(d.class_dependent) << "\n";
  out << "  instance dependent:    " << yes_no(d.instance_dependent) << "\n";
  out << "Matching settings\n";
  for (const std::string& s : settings) out << "  " << s << "\n";
  out << "Weak label space\n";
  out << "  kind:        " << weak_space_kind << "\n";
  if (weak_space_cardinality > 0) {
    out << "  cardinality: " << weak_space_cardinality << "\n";
  }
  out << "  mixing matrix: " << matrix_shape << "\n";
  for (const std::string& note : notes) out << "note: " << note << "\n";
  return out.str();
}

std::string DatasheetReport::to_json() const {
  const FrameworkDescriptor& d = descriptor;
  nlohmann::json out;
  out["dimensions"] = {
      {"num_classes", d.num_classes},
      {"multi_label", d.multi_label},
      {"unsupervised", d.unsupervised},
      {"soft_labels", d.soft_labels},
      {"num_annotators", d.num_annotators},
      {"candidate_classes_gt1", d.candidate_classes_gt1},
      {"aggregation", d.aggregation},
      {"class_dependent", d.class_dependent},
      {"instance_dependent", d.instance_dependent},
  };
  out["settings"] = settings;
  out["weak_space"] = {{"kind", weak_space_kind},
                       {"cardinality", weak_space_cardinality}};
  out["matrix_shape"] = matrix_shape;
  out["notes"] = notes;
  return out.dump(2) + "\n";
}

}  // namespace weaksup
