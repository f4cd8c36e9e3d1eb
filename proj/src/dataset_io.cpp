#include "weaksup/dataset_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace weaksup {

using nlohmann::json;

int Dataset::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

int Dataset::require_column(const std::string& name) const {
  int idx = column_index(name);
  if (idx < 0) {
    throw Error(ErrorKind::SchemaError, "missing column '" + name + "'");
  }
  return idx;
}

double Dataset::numeric_at(std::size_t row, int col) const {
  const std::string& cell = rows[row][static_cast<std::size_t>(col)];
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw Error(ErrorKind::ParseError,
                "row " + std::to_string(row) + ", column '" +
                    columns[static_cast<std::size_t>(col)] +
                    "': '" + cell + "' is not numeric");
  }
  return value;
}

CleanLabel Dataset::clean_label_at(std::size_t row, int label_col, int k) const {
  const std::string& cell = rows[row][static_cast<std::size_t>(label_col)];
  int value = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw Error(ErrorKind::ParseError,
                "row " + std::to_string(row) + ": label '" + cell +
                    "' is not a class index");
  }
  if (value < 0 || value >= k) {
    throw Error(ErrorKind::LabelOutOfRange,
                "row " + std::to_string(row) + ": class " + std::to_string(value) +
                    " outside [0, " + std::to_string(k) + ")");
  }
  return CleanLabel{value};
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(pos));
      break;
    }
    cells.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return cells;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

}  // namespace

Dataset read_csv(const std::string& path) {
  std::string content = read_file(path);
  Dataset out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    std::string line = content.substr(
        pos, nl == std::string::npos ? std::string::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (nl == std::string::npos && line.empty()) break;
    ++line_no;
    std::vector<std::string> cells = split_line(line);
    if (line_no == 1) {
      out.columns = std::move(cells);
    } else {
      if (cells.size() != out.columns.size()) {
        throw Error(ErrorKind::ParseError,
                    path + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(out.columns.size()) + " cells, got " +
                        std::to_string(cells.size()));
      }
      out.rows.push_back(std::move(cells));
    }
    if (nl == std::string::npos) break;
    pos = nl + 1;
  }
  if (out.columns.empty()) {
    throw Error(ErrorKind::ParseError, path + ": missing header row");
  }
  return out;
}

Dataset read_clean_csv(const std::string& path, int k) {
  Dataset out = read_csv(path);
  int label_col = out.require_column("label");
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.clean_label_at(i, label_col, k);
  }
  return out;
}

std::string csv_to_string(const Dataset& dataset) {
  std::string out;
  for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
    if (c) out += ',';
    out += dataset.columns[c];
  }
  out += '\n';
  for (const auto& row : dataset.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const Dataset& dataset) {
  write_file(path, csv_to_string(dataset));
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

json space_to_json(const WeakLabelSpace& space) {
  using Kind = WeakLabelSpace::Kind;
  json out;
  out["kind"] = space.name();
  switch (space.kind()) {
    case Kind::Multiclass:
    case Kind::SemiSup:
      out["k"] = space.num_classes();
      break;
    case Kind::PartialSet:
    case Kind::SupersetSet:
      out["k"] = space.num_classes();
      out["m"] = space.max_candidates();
      break;
    case Kind::PU:
      break;
    case Kind::MultiAnnotator:
      out["n"] = space.num_annotators();
      out["inner"] = space_to_json(space.inner());
      break;
    case Kind::Unified:
      out["n"] = space.num_annotators();
      out["k"] = space.num_classes();
      out["m"] = space.max_candidates();
      out["allow_abstain"] = space.allow_abstain();
      break;
  }
  return out;
}

template <typename T>
T require_key(const json& obj, const std::string& key) {
  if (!obj.contains(key)) {
    throw Error(ErrorKind::SchemaError, "missing key '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::SchemaError, "key '" + key + "' has the wrong type");
  }
}

WeakLabelSpace space_from_json(const json& obj) {
  std::string kind = require_key<std::string>(obj, "kind");
  if (kind == "multiclass") {
    return WeakLabelSpace::multiclass(require_key<int>(obj, "k"));
  }
  if (kind == "partial_set") {
    return WeakLabelSpace::partial_set(require_key<int>(obj, "k"),
                                       obj.value("m", -1));
  }
  if (kind == "superset_set") {
    return WeakLabelSpace::superset_set(require_key<int>(obj, "k"),
                                        obj.value("m", -1));
  }
  if (kind == "semi_sup") {
    return WeakLabelSpace::semi_sup(require_key<int>(obj, "k"));
  }
  if (kind == "pu") return WeakLabelSpace::pu();
  if (kind == "multi_annotator") {
    return WeakLabelSpace::multi_annotator(
        require_key<int>(obj, "n"),
        space_from_json(obj.contains("inner")
                            ? obj.at("inner")
                            : throw Error(ErrorKind::SchemaError,
                                          "missing key 'inner'")));
  }
  if (kind == "unified") {
    return WeakLabelSpace::unified(require_key<int>(obj, "n"),
                                   require_key<int>(obj, "k"),
                                   require_key<int>(obj, "m"),
                                   require_key<bool>(obj, "allow_abstain"));
  }
  throw Error(ErrorKind::SchemaError, "unknown space kind '" + kind + "'");
}

const char* expected_row_order(const WeakLabelSpace& space) {
  using Kind = WeakLabelSpace::Kind;
  switch (space.kind()) {
    case Kind::PartialSet:
    case Kind::SupersetSet:
      return "canonical-bitmask";
    default:
      return "classes-then-abstain";
  }
}

json matrix_to_json(const MixingMatrix& matrix) {
  json out;
  out["k"] = matrix.num_classes();
  out["weak_space"] = space_to_json(matrix.weak_space());
  out["row_order"] = expected_row_order(matrix.weak_space());
  json entries = json::array();
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < matrix.num_classes(); ++c) row.push_back(matrix.at(r, c));
    entries.push_back(std::move(row));
  }
  out["entries"] = std::move(entries);
  return out;
}

MixingMatrix matrix_from_json(const json& obj) {
  WeakLabelSpace space = space_from_json(
      obj.contains("weak_space")
          ? obj.at("weak_space")
          : throw Error(ErrorKind::SchemaError, "missing key 'weak_space'"));
  int k = require_key<int>(obj, "k");
  if (k != space.num_classes()) {
    throw Error(ErrorKind::SchemaError, "'k' disagrees with the weak space");
  }
  std::string row_order = require_key<std::string>(obj, "row_order");
  if (row_order != "canonical-bitmask" && row_order != "classes-then-abstain") {
    throw Error(ErrorKind::SchemaError, "unknown row_order '" + row_order + "'");
  }
  if (row_order != expected_row_order(space)) {
    throw Error(ErrorKind::SchemaError,
                "row_order '" + row_order + "' does not match space '" +
                    space.name() + "'");
  }
  std::vector<std::vector<double>> entries;
  if (!obj.contains("entries") || !obj.at("entries").is_array()) {
    throw Error(ErrorKind::SchemaError, "missing key 'entries'");
  }
  for (const json& row : obj.at("entries")) {
    if (!row.is_array()) {
      throw Error(ErrorKind::SchemaError, "'entries' must be an array of arrays");
    }
    std::vector<double> cells;
    for (const json& cell : row) {
      if (!cell.is_number()) {
        throw Error(ErrorKind::SchemaError, "matrix entries must be numbers");
      }
      cells.push_back(cell.get<double>());
    }
    entries.push_back(std::move(cells));
  }
  return MixingMatrix::from_dense(std::move(entries), std::move(space));
}

json parse_json(const std::string& text) {
  json obj = json::parse(text, nullptr, false);
  if (obj.is_discarded()) {
    throw Error(ErrorKind::ParseError, "invalid JSON");
  }
  return obj;
}

}  // namespace

std::string matrix_to_json_string(const MixingMatrix& matrix) {
  return matrix_to_json(matrix).dump(2) + "\n";
}

MixingMatrix matrix_from_json_string(const std::string& text) {
  return matrix_from_json(parse_json(text));
}

WeakLabelSpace space_from_json_string(const std::string& text) {
  return space_from_json(parse_json(text));
}

void write_matrix_json(const std::string& path, const MixingMatrix& matrix) {
  write_file(path, matrix_to_json_string(matrix));
}

MixingMatrix read_matrix_json(const std::string& path) {
  return matrix_from_json_string(read_file(path));
}

RunPlan config_from_json_string(const std::string& text) {
  json obj = parse_json(text);
  RunPlan plan;
  plan.seed = require_key<std::uint64_t>(obj, "seed");
  plan.mode = require_key<std::string>(obj, "mode");
  if (plan.mode == "iin") {
    if (!obj.contains("matrix")) {
      throw Error(ErrorKind::SchemaError, "missing key 'matrix'");
    }
    plan.matrices.push_back(matrix_from_json(obj.at("matrix")));
  } else if (plan.mode == "idn") {
    if (!obj.contains("regions") || !obj.at("regions").is_array() ||
        obj.at("regions").empty()) {
      throw Error(ErrorKind::SchemaError, "'regions' must be a non-empty array");
    }
    for (const json& region : obj.at("regions")) {
      std::vector<RunPlan::Clause> clauses;
      if (region.contains("where")) {
        if (!region.at("where").is_array()) {
          throw Error(ErrorKind::SchemaError, "'where' must be an array");
        }
        for (const json& clause : region.at("where")) {
          clauses.push_back({require_key<std::string>(clause, "column"),
                             require_key<std::string>(clause, "op"),
                             require_key<double>(clause, "value")});
        }
      }
      if (!region.contains("matrix")) {
        throw Error(ErrorKind::SchemaError, "region missing key 'matrix'");
      }
      plan.regions.push_back(std::move(clauses));
      plan.matrices.push_back(matrix_from_json(region.at("matrix")));
    }
  } else if (plan.mode == "multi_annotator") {
    if (!obj.contains("annotators") || !obj.at("annotators").is_array() ||
        obj.at("annotators").empty()) {
      throw Error(ErrorKind::SchemaError, "'annotators' must be a non-empty array");
    }
    for (const json& m : obj.at("annotators")) {
      plan.matrices.push_back(matrix_from_json(m));
    }
  } else {
    throw Error(ErrorKind::SchemaError, "unknown mode '" + plan.mode + "'");
  }

  if (obj.contains("aggregation")) {
    const json& agg = obj.at("aggregation");
    plan.has_aggregation = true;
    const json& strategy = agg.contains("strategy")
                               ? agg.at("strategy")
                               : throw Error(ErrorKind::SchemaError,
                                             "aggregation missing 'strategy'");
    plan.aggregation.strategy = require_key<std::string>(strategy, "kind");
    if (plan.aggregation.strategy == "contiguous" ||
        plan.aggregation.strategy == "random_partition") {
      plan.aggregation.bag_size = require_key<std::uint64_t>(strategy, "bag_size");
      if (plan.aggregation.strategy == "random_partition") {
        plan.aggregation.bag_seed = require_key<std::uint64_t>(strategy, "seed");
      }
    } else if (plan.aggregation.strategy == "by_key") {
      plan.aggregation.key_column = require_key<std::string>(strategy, "column");
    } else {
      throw Error(ErrorKind::SchemaError,
                  "unknown bag strategy '" + plan.aggregation.strategy + "'");
    }
    const json& g = agg.contains("g")
                        ? agg.at("g")
                        : throw Error(ErrorKind::SchemaError,
                                      "aggregation missing 'g'");
    plan.aggregation.g = require_key<std::string>(g, "kind");
    if (plan.aggregation.g == "mil") {
      plan.aggregation.positive_class = require_key<int>(g, "positive_class");
    } else if (plan.aggregation.g == "gmil") {
      plan.aggregation.positive_class = require_key<int>(g, "positive_class");
      plan.aggregation.threshold = require_key<std::uint64_t>(g, "r");
    } else if (plan.aggregation.g == "llp") {
      plan.aggregation.num_classes = require_key<int>(g, "k");
      plan.aggregation.normalized = g.value("normalized", false);
    } else {
      throw Error(ErrorKind::SchemaError,
                  "unknown aggregation '" + plan.aggregation.g + "'");
    }
  }
  return plan;
}

RunPlan read_config(const std::string& path) {
  return config_from_json_string(read_file(path));
}

}  // namespace weaksup
