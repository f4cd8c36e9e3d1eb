#include <doctest.h>

#include <map>

#include "weaksup/dataset_io.hpp"
#include "weaksup/mixing.hpp"
#include "weaksup/weakening.hpp"

using namespace weaksup;

namespace {

MixingMatrix identity3() {
  return MixingMatrix::from_dense(
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, WeakLabelSpace::multiclass(3));
}

Dataset make_dataset(const std::vector<double>& features,
                     const std::vector<int>& labels) {
  Dataset data;
  data.columns = {"f0", "label"};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    data.rows.push_back({format_double(features[i]), std::to_string(labels[i])});
  }
  return data;
}

}  // namespace

TEST_CASE("deterministic columns sample deterministically") {
  for (std::uint64_t seed : {0ull, 42ull, 99ull}) {
    CHECK(sample_weak(identity3(), CleanLabel{1}, RngKey{seed, 17, 0}) ==
          WeakLabel::single(1));
    CHECK(sample_weak(template_flip_binary(1.0, 0.0), CleanLabel{0},
                      RngKey{seed, 3, 0}) == WeakLabel::single(1));
  }
}

TEST_CASE("empirical frequencies match the matrix column") {
  MixingMatrix t = template_flip_binary(0.1, 0.2);
  int count1 = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    WeakLabel w = sample_weak(t, CleanLabel{0},
                              RngKey{7, static_cast<std::uint64_t>(i), 0});
    if (w == WeakLabel::single(1)) ++count1;
  }
  double freq = static_cast<double>(count1) / n;
  CHECK(freq == doctest::Approx(0.1).epsilon(0.1));
  CHECK(std::abs(freq - 0.1) < 0.01);
}

TEST_CASE("sampling rejects out-of-range clean labels") {
  CHECK_THROWS_AS(sample_weak(identity3(), CleanLabel{3}, RngKey{0, 0, 0}), Error);
}

TEST_CASE("weakening with the identity preserves labels") {
  Dataset data = make_dataset({0.1, -0.2, 0.3, 0.4}, {0, 2, 1, 0});
  WeakeningSpec spec = WeakeningSpec::iin(identity3(), 5);
  Dataset weak = weaken_dataset(data, spec);
  int weak_col = weak.require_column("weak_label");
  int label_col = weak.require_column("label");
  for (std::size_t i = 0; i < weak.size(); ++i) {
    CHECK(weak.rows[i][static_cast<std::size_t>(weak_col)] ==
          weak.rows[i][static_cast<std::size_t>(label_col)]);
  }
}

TEST_CASE("parallel and serial paths agree byte for byte") {
  std::vector<double> features;
  std::vector<int> labels;
  for (int i = 0; i < 5000; ++i) {
    features.push_back(i % 7 - 3.0);
    labels.push_back(i % 3);
  }
  Dataset data = make_dataset(features, labels);
  WeakeningSpec spec = WeakeningSpec::iin(template_flip_symmetric(3, 0.4), 11);
  CHECK(csv_to_string(weaken_dataset(data, spec)) ==
        csv_to_string(weaken_dataset_serial(data, spec)));
  // And re-running is reproducible.
  CHECK(csv_to_string(weaken_dataset(data, spec)) ==
        csv_to_string(weaken_dataset(data, spec)));
}

TEST_CASE("IDN picks the first matching region") {
  std::vector<double> features;
  std::vector<int> labels;
  const int per_region = 10000;
  for (int i = 0; i < 2 * per_region; ++i) {
    features.push_back(i < per_region ? -1.0 : 1.0);
    labels.push_back(0);
  }
  Dataset data = make_dataset(features, labels);

  RegionPredicate negative;
  negative.clauses.push_back({"f0", RegionPredicate::Op::Lt, 0.0});
  WeakeningSpec spec = WeakeningSpec::idn(
      {{negative, template_flip_binary(0.5, 0.5)},
       {RegionPredicate{}, template_flip_binary(0.0, 0.0)}},
      21);

  Dataset weak = weaken_dataset(data, spec);
  int weak_col = weak.require_column("weak_label");
  int flipped_neg = 0, flipped_pos = 0;
  for (int i = 0; i < per_region; ++i) {
    if (weak.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(weak_col)] == "1") ++flipped_neg;
  }
  for (int i = per_region; i < 2 * per_region; ++i) {
    if (weak.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(weak_col)] == "1") ++flipped_pos;
  }
  CHECK(std::abs(flipped_neg / static_cast<double>(per_region) - 0.5) < 0.02);
  CHECK(flipped_pos == 0);
}

TEST_CASE("IDN requires a trailing catch-all") {
  RegionPredicate narrow;
  narrow.clauses.push_back({"f0", RegionPredicate::Op::Lt, 0.0});
  CHECK_THROWS_AS(
      WeakeningSpec::idn({{narrow, template_flip_binary(0.1, 0.1)}}, 0), Error);
}

TEST_CASE("multi-annotator output columns and independence") {
  std::vector<double> features(100000, 0.0);
  std::vector<int> labels(100000, 0);
  Dataset data = make_dataset(features, labels);
  AnnotatorPool pool = AnnotatorPool::of(
      {template_flip_binary(0.3, 0.1), template_flip_binary(0.2, 0.4)});
  WeakeningSpec spec = WeakeningSpec::multi_annotator(pool, 9);
  Dataset weak = weaken_dataset(data, spec);
  int c0 = weak.require_column("weak_0");
  int c1 = weak.require_column("weak_1");

  // Joint over annotator pairs factorizes into the marginals.
  std::map<std::pair<std::string, std::string>, int> joint;
  std::map<std::string, int> m0, m1;
  for (const auto& row : weak.rows) {
    const std::string& a = row[static_cast<std::size_t>(c0)];
    const std::string& b = row[static_cast<std::size_t>(c1)];
    ++joint[{a, b}];
    ++m0[a];
    ++m1[b];
  }
  double n = static_cast<double>(weak.size());
  for (const auto& [pair, count] : joint) {
    double expected = (m0[pair.first] / n) * (m1[pair.second] / n);
    CHECK(std::abs(count / n - expected) < 0.02);
  }
  // Annotator 0 flips class 0 at rate 0.3.
  CHECK(std::abs(m0["1"] / n - 0.3) < 0.01);
  CHECK(std::abs(m1["1"] / n - 0.2) < 0.01);
}

TEST_CASE("superset sampling always covers the clean label") {
  MixingMatrix t = template_superset_uniform(3, 0.4);
  for (int i = 0; i < 2000; ++i) {
    for (int y = 0; y < 3; ++y) {
      WeakLabel w = sample_weak(t, CleanLabel{y},
                                RngKey{3, static_cast<std::uint64_t>(i), 0});
      CHECK(((w.mask() >> y) & 1u) == 1u);
    }
  }
}

TEST_CASE("spec construction from a run plan") {
  RunPlan plan;
  plan.seed = 4;
  plan.mode = "iin";
  plan.matrices.push_back(template_flip_binary(0.1, 0.2));
  WeakeningSpec spec = spec_from_plan(plan);
  CHECK(spec.mode == WeakeningSpec::Mode::IIN);
  CHECK(spec.seed == 4);

  plan.mode = "nonsense";
  CHECK_THROWS_AS(spec_from_plan(plan), Error);
}
