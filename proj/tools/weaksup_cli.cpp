#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weaksup/aggregation.hpp"
#include "weaksup/analysis.hpp"
#include "weaksup/dataset_io.hpp"
#include "weaksup/describe.hpp"
#include "weaksup/weakening.hpp"

namespace {

using namespace weaksup;

int clean_label_bound(const RunPlan& plan) {
  if (!plan.matrices.empty()) return plan.matrices.front().num_classes();
  if (plan.has_aggregation && plan.aggregation.g == "llp") {
    return plan.aggregation.num_classes;
  }
  return kMaxClasses;
}

std::vector<int> read_label_column(const Dataset& data, int k) {
  int label_col = data.require_column("label");
  std::vector<int> labels;
  labels.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    labels.push_back(data.clean_label_at(i, label_col, k).class_index);
  }
  return labels;
}

ClassPrior parse_prior(const std::string& text, int k) {
  if (text == "uniform") return ClassPrior::uniform(k);
  std::vector<double> values;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    try {
      values.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad prior component '" + part + "'");
    }
  }
  if (static_cast<int>(values.size()) != k) {
    throw Error(ErrorKind::ShapeMismatch,
                "prior has " + std::to_string(values.size()) +
                    " components, expected " + std::to_string(k));
  }
  return ClassPrior::of(std::move(values));
}

int run_validate(const std::string& matrix_path) {
  MixingMatrix matrix = read_matrix_json(matrix_path);
  std::cerr << "valid: " << matrix.rows() << "x" << matrix.num_classes()
            << " matrix over space '" << matrix.weak_space().name() << "', setting "
            << to_string(recognize_setting(matrix)) << "\n";
  return 0;
}

int run_weaken(const std::string& config_path, const std::string& in_path,
               const std::string& out_path, bool serial) {
  RunPlan plan = read_config(config_path);
  WeakeningSpec spec = spec_from_plan(plan);
  Dataset data = read_clean_csv(in_path, spec.matrices.front().num_classes());
  Dataset weak = serial ? weaken_dataset_serial(data, spec)
                        : weaken_dataset(data, spec);
  write_csv(out_path, weak);
  return 0;
}

int run_aggregate(const std::string& config_path, const std::string& in_path,
                  const std::string& bags_path, const std::string& labels_path) {
  RunPlan plan = read_config(config_path);
  if (!plan.has_aggregation) {
    throw Error(ErrorKind::SchemaError, "config has no 'aggregation' block");
  }
  int k = clean_label_bound(plan);
  Dataset data = read_clean_csv(in_path, k);
  std::vector<int> labels = read_label_column(data, k);

  BagStrategy strategy;
  if (plan.aggregation.strategy == "contiguous") {
    strategy = BagStrategy::contiguous(plan.aggregation.bag_size);
  } else if (plan.aggregation.strategy == "random_partition") {
    strategy = BagStrategy::random_partition(plan.aggregation.bag_size,
                                             plan.aggregation.bag_seed);
  } else {
    strategy = BagStrategy::by_key(plan.aggregation.key_column);
  }
  BagAssignment assignment = assign_bags(data.size(), strategy, &data);

  AggregationChoice g;
  if (plan.aggregation.g == "mil") {
    g.kind = AggregationChoice::Kind::Mil;
    g.positive_class = plan.aggregation.positive_class;
  } else if (plan.aggregation.g == "gmil") {
    g.kind = AggregationChoice::Kind::Gmil;
    g.positive_class = plan.aggregation.positive_class;
    g.threshold = plan.aggregation.threshold;
  } else {
    g.kind = AggregationChoice::Kind::Llp;
    g.num_classes = plan.aggregation.num_classes;
    g.normalized = plan.aggregation.normalized;
  }
  std::vector<BagLabel> bag_labels = aggregate_dataset(labels, assignment, g);

  Dataset bags;
  bags.columns = {"instance_index", "bag_id"};
  for (std::size_t i = 0; i < assignment.bag_of.size(); ++i) {
    bags.rows.push_back({std::to_string(i), std::to_string(assignment.bag_of[i])});
  }
  write_csv(bags_path, bags);

  Dataset labels_out;
  labels_out.columns = {"bag_id", "label"};
  for (std::size_t b = 0; b < bag_labels.size(); ++b) {
    labels_out.rows.push_back({std::to_string(b), bag_labels[b].to_cell()});
  }
  write_csv(labels_path, labels_out);
  return 0;
}

int run_estimate_space(const std::string& clean_path, const std::string& weak_path,
                       const std::string& out_path, const WeakLabelSpace& space,
                       double smoothing) {
  Dataset clean = read_clean_csv(clean_path, space.num_classes());
  Dataset weak = read_csv(weak_path);
  if (clean.size() != weak.size()) {
    throw Error(ErrorKind::ShapeMismatch,
                "clean and weak datasets have different row counts");
  }
  int label_col = clean.require_column("label");
  int weak_col = weak.require_column("weak_label");
  std::vector<std::pair<CleanLabel, WeakLabel>> pairs;
  pairs.reserve(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) {
    pairs.emplace_back(
        clean.clean_label_at(i, label_col, space.num_classes()),
        parse_weak_label(weak.rows[i][static_cast<std::size_t>(weak_col)], space));
  }
  MixingMatrix estimated = estimate_mixing(pairs, space, smoothing);
  write_matrix_json(out_path, estimated);
  std::cerr << "estimated " << estimated.rows() << "x" << estimated.num_classes()
            << " matrix from " << pairs.size() << " pairs\n";
  return 0;
}

int run_posterior(const std::string& matrix_path, const std::string& prior_text,
                  const std::string& weak_text) {
  MixingMatrix matrix = read_matrix_json(matrix_path);
  ClassPrior prior = parse_prior(prior_text, matrix.num_classes());
  WeakLabel weak = parse_weak_label(weak_text, matrix.weak_space());
  std::vector<double> posterior = clean_posterior(matrix, prior, weak);
  std::string out;
  for (double p : posterior) {
    if (!out.empty()) out += ',';
    out += format_double(p);
  }
  std::cout << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak supervision dataset synthesis and analysis toolkit"};
  app.require_subcommand(1);

  std::string matrix_path, config_path, in_path, out_path, bags_path,
      labels_path, clean_path, weak_path, space_json, prior_text = "uniform",
      weak_text;
  double smoothing = 0.0;
  bool serial = false;
  bool as_json = false;

  auto* validate_cmd = app.add_subcommand("validate", "Validate a mixing matrix file");
  validate_cmd->add_option("matrix", matrix_path, "matrix JSON")->required();

  auto* weaken_cmd =
      app.add_subcommand("weaken", "Sample weak labels for a clean dataset");
  weaken_cmd->add_option("config", config_path, "generation config JSON")->required();
  weaken_cmd->add_option("input", in_path, "clean CSV")->required();
  weaken_cmd->add_option("output", out_path, "weak CSV")->required();
  weaken_cmd->add_flag("--serial", serial, "disable the parallel kernel");

  auto* aggregate_cmd =
      app.add_subcommand("aggregate", "Assign bags and compute bag labels");
  aggregate_cmd->add_option("config", config_path, "config JSON with an 'aggregation' block")
      ->required();
  aggregate_cmd->add_option("input", in_path, "clean CSV")->required();
  aggregate_cmd->add_option("bags", bags_path, "output bags.csv")->required();
  aggregate_cmd->add_option("bag_labels", labels_path, "output bag_labels.csv")
      ->required();

  auto* estimate_cmd = app.add_subcommand(
      "estimate", "Estimate the mixing matrix from paired clean/weak data");
  estimate_cmd->add_option("clean", clean_path, "clean CSV")->required();
  estimate_cmd->add_option("weak", weak_path, "weak CSV (column weak_label)")
      ->required();
  estimate_cmd->add_option("output", out_path, "output matrix JSON")->required();
  estimate_cmd
      ->add_option("--space", space_json,
                   "weak space descriptor JSON, e.g. '{\"kind\":\"multiclass\",\"k\":3}'")
      ->required();
  estimate_cmd->add_option("--smoothing", smoothing, "additive smoothing constant");

  auto* posterior_cmd = app.add_subcommand(
      "posterior", "Clean-class posterior for one weak label");
  posterior_cmd->add_option("matrix", matrix_path, "matrix JSON")->required();
  posterior_cmd->add_option("weak_label", weak_text, "weak label, e.g. '1|2' or '-'")
      ->required();
  posterior_cmd->add_option("--prior", prior_text,
                            "'uniform' or comma-separated decimals");

  FrameworkDescriptor descriptor;
  auto* describe_cmd = app.add_subcommand(
      "describe", "Datasheet report for a weak supervision setting");
  describe_cmd->add_option("--k", descriptor.num_classes, "number of classes");
  describe_cmd->add_flag("--multi-label", descriptor.multi_label);
  describe_cmd->add_flag("--unsupervised", descriptor.unsupervised);
  describe_cmd->add_flag("--soft-labels", descriptor.soft_labels);
  describe_cmd->add_option("--annotators", descriptor.num_annotators);
  describe_cmd->add_flag("--candidate-sets", descriptor.candidate_classes_gt1);
  describe_cmd->add_flag("--aggregation", descriptor.aggregation);
  describe_cmd->add_flag("--class-dependent", descriptor.class_dependent);
  describe_cmd->add_flag("--instance-dependent", descriptor.instance_dependent);
  describe_cmd->add_flag("--json", as_json, "emit the machine-readable form");
  describe_cmd->footer(
      "Rejected combinations: --aggregation with --candidate-sets, "
      "--aggregation with --soft-labels.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return run_validate(matrix_path);
    if (*weaken_cmd) return run_weaken(config_path, in_path, out_path, serial);
    if (*aggregate_cmd) {
      return run_aggregate(config_path, in_path, bags_path, labels_path);
    }
    if (*estimate_cmd) {
      WeakLabelSpace space = space_from_json_string(space_json);
      if (space.kind() == WeakLabelSpace::Kind::MultiAnnotator ||
          space.kind() == WeakLabelSpace::Kind::Unified) {
        throw Error(ErrorKind::SchemaError,
                    "estimate supports flat spaces only; estimate annotators "
                    "one at a time");
      }
      return run_estimate_space(clean_path, weak_path, out_path, space, smoothing);
    }
    if (*posterior_cmd) return run_posterior(matrix_path, prior_text, weak_text);
    if (*describe_cmd) {
      DatasheetReport report = describe(descriptor);
      std::cout << (as_json ? report.to_json() : report.to_text());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
