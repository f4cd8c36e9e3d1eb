#include <doctest.h>

#include <cmath>

#include "weaksup/mixing.hpp"

using namespace weaksup;

namespace {

double column_sum(const MixingMatrix& m, int col) {
  double sum = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) sum += m.at(r, col);
  return sum;
}

}  // namespace

TEST_CASE("binary flip template") {
  MixingMatrix t = template_flip_binary(0.1, 0.2);
  CHECK(t.at(0, 0) == doctest::Approx(0.9));
  CHECK(t.at(0, 1) == doctest::Approx(0.2));
  CHECK(t.at(1, 0) == doctest::Approx(0.1));
  CHECK(t.at(1, 1) == doctest::Approx(0.8));

  MixingMatrix identity = template_flip_binary(0.0, 0.0);
  CHECK(identity.at(0, 0) == 1.0);
  CHECK(identity.at(1, 0) == 0.0);

  CHECK_THROWS_AS(template_flip_binary(1.2, 0.0), Error);
}

TEST_CASE("symmetric flip template") {
  MixingMatrix t = template_flip_symmetric(3, 0.3);
  CHECK(t.at(0, 0) == doctest::Approx(0.7));
  CHECK(t.at(1, 0) == doctest::Approx(0.15));
  CHECK(t.at(2, 1) == doctest::Approx(0.15));
  for (int k = 2; k <= 6; ++k) {
    for (double rho : {0.0, 0.2, 0.5, 0.9}) {
      CHECK(classify_noise(template_flip_symmetric(k, rho)) ==
            NoiseClass::Symmetric);
    }
  }
}

TEST_CASE("ssl template") {
  MixingMatrix t = template_ssl(2, {0.4, 0.7});
  CHECK(t.at(0, 0) == doctest::Approx(0.6));
  CHECK(t.at(1, 1) == doctest::Approx(0.3));
  CHECK(t.at(2, 0) == doctest::Approx(0.4));
  CHECK(t.at(2, 1) == doctest::Approx(0.7));
  CHECK(t.at(0, 1) == 0.0);

  for (int c = 0; c < 2; ++c) CHECK(column_sum(t, c) == doctest::Approx(1.0));
  CHECK_THROWS_AS(template_ssl(3, {0.1, 0.2}), Error);
}

TEST_CASE("pu template equals ssl with gamma1 = 1") {
  for (double g : {0.0, 0.3, 0.5, 1.0}) {
    MixingMatrix pu = template_pu(g);
    MixingMatrix ssl = template_ssl(2, {g, 1.0});
    REQUIRE(pu.rows() == ssl.rows());
    for (std::size_t r = 0; r < pu.rows(); ++r) {
      for (int c = 0; c < 2; ++c) CHECK(pu.at(r, c) == ssl.at(r, c));
    }
  }
  MixingMatrix t = template_pu(0.4);
  CHECK(t.at(0, 0) == doctest::Approx(0.6));
  CHECK(t.at(1, 0) == 0.0);
  CHECK(t.at(2, 1) == 1.0);
}

TEST_CASE("uniform superset template") {
  MixingMatrix exact = template_superset_uniform(3, 1.0);
  for (int c = 0; c < 3; ++c) {
    CHECK(exact.at(static_cast<std::size_t>((1 << c) - 1), c) == 1.0);
  }

  MixingMatrix t = template_superset_uniform(3, 0.4);
  // Covering pairs of class 0 are {0,1} (row 2) and {0,2} (row 4).
  CHECK(t.at(2, 0) == doctest::Approx(0.3));
  CHECK(t.at(4, 0) == doctest::Approx(0.3));
  // Sets not covering the clean class carry no mass.
  CHECK(template_superset_uniform(3, 0.5).at(2, 2) == 0.0);

  CHECK_THROWS_AS(template_superset_uniform(3, 0.0), Error);
  try {
    template_superset_uniform(2, 0.5);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
  CHECK(template_superset_uniform(2, 1.0).at(0, 0) == 1.0);
}

TEST_CASE("templates stay column stochastic over a parameter grid") {
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (double a : grid) {
    for (double b : grid) {
      MixingMatrix t = template_flip_binary(a, b);
      for (int c = 0; c < 2; ++c) CHECK(column_sum(t, c) == doctest::Approx(1.0));
    }
    for (int k = 2; k <= 5; ++k) {
      MixingMatrix t = template_flip_symmetric(k, a);
      for (int c = 0; c < k; ++c) CHECK(column_sum(t, c) == doctest::Approx(1.0));
    }
    if (a > 0.0) {
      MixingMatrix t = template_superset_uniform(4, a);
      for (int c = 0; c < 4; ++c) CHECK(column_sum(t, c) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("from_dense rejects malformed matrices with the right kind") {
  auto expect_kind = [](auto fn, ErrorKind kind) {
    try {
      fn();
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
    }
  };

  expect_kind(
      [] {
        MixingMatrix::from_dense({{1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}},
                                 WeakLabelSpace::multiclass(2));
      },
      ErrorKind::ShapeMismatch);
  expect_kind(
      [] {
        MixingMatrix::from_dense({{1.1, 0.0}, {-0.1, 1.0}},
                                 WeakLabelSpace::multiclass(2));
      },
      ErrorKind::NegativeEntry);
  expect_kind(
      [] {
        MixingMatrix::from_dense({{0.98, 0.0}, {0.0, 1.0}},
                                 WeakLabelSpace::multiclass(2));
      },
      ErrorKind::NotStochastic);
  expect_kind(
      [] {
        // Mass at ({0,1}, column 2) breaks the covering support.
        MixingMatrix::from_dense({{0.5, 0.0, 0.0},
                                  {0.0, 0.5, 0.0},
                                  {0.5, 0.0, 0.5},
                                  {0.0, 0.0, 0.0},
                                  {0.0, 0.5, 0.0},
                                  {0.0, 0.0, 0.5}},
                                 WeakLabelSpace::superset_set(3));
      },
      ErrorKind::SupportViolation);
}

TEST_CASE("a partial matrix may ignore the covering constraint") {
  // Same zero pattern violation is fine under PartialSet.
  std::vector<std::vector<double>> entries = {{0.5, 0.0, 0.0}, {0.0, 0.5, 0.0},
                                              {0.5, 0.0, 0.5}, {0.0, 0.0, 0.0},
                                              {0.0, 0.5, 0.0}, {0.0, 0.0, 0.5}};
  MixingMatrix t = MixingMatrix::from_dense(entries, WeakLabelSpace::partial_set(3));
  CHECK(recognize_setting(t) == Setting::PartialLabels);
}

TEST_CASE("renormalization only absorbs float round-off") {
  MixingMatrix t = MixingMatrix::from_dense(
      {{1.0 - 1e-13, 0.0}, {0.0, 1.0}}, WeakLabelSpace::multiclass(2));
  double sum = t.at(0, 0) + t.at(1, 0);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("the paper's free-parameter superset matrix validates") {
  double a0 = 0.5, a1 = 0.2, b0 = 0.6, b1 = 0.1, g0 = 0.3, g1 = 0.4;
  // Canonical rows for k=3: {0},{1},{0,1},{2},{0,2},{1,2}.
  std::vector<std::vector<double>> entries = {
      {a0, 0.0, 0.0},
      {0.0, b0, 0.0},
      {a1, b1, 0.0},
      {0.0, 0.0, g0},
      {1.0 - a0 - a1, 0.0, g1},
      {0.0, 1.0 - b0 - b1, 1.0 - g0 - g1},
  };
  MixingMatrix t =
      MixingMatrix::from_dense(entries, WeakLabelSpace::superset_set(3));
  CHECK(recognize_setting(t) == Setting::Superset);

  // Moving mass onto ({0,1}, column 2) breaks the covering support.
  entries[2][2] = g0;
  entries[3][2] = 0.0;
  try {
    MixingMatrix::from_dense(entries, WeakLabelSpace::superset_set(3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SupportViolation);
  }
}

TEST_CASE("noise classification") {
  CHECK(classify_noise(template_flip_binary(0.3, 0.3)) == NoiseClass::Symmetric);
  CHECK(classify_noise(template_flip_binary(0.1, 0.2)) == NoiseClass::Asymmetric);
  CHECK(classify_noise(template_flip_binary(0.0, 0.0)) == NoiseClass::Symmetric);
  CHECK_THROWS_AS(classify_noise(template_ssl(2, {0.1, 0.2})), Error);

  // Off-diagonal gap of exactly the tolerance still counts as symmetric.
  double eps = 1e-9;
  MixingMatrix boundary = MixingMatrix::from_dense(
      {{1.0 - eps, 0.0, eps}, {0.0, 1.0 - eps, 0.0}, {eps, eps, 1.0 - eps}},
      WeakLabelSpace::multiclass(3));
  CHECK(classify_noise(boundary) == NoiseClass::Symmetric);
  // One bit past the tolerance flips the verdict.
  double above = std::nextafter(eps, 1.0);
  MixingMatrix past = MixingMatrix::from_dense(
      {{1.0 - above, 0.0, above}, {0.0, 1.0 - above, 0.0},
       {above, above, 1.0 - above}},
      WeakLabelSpace::multiclass(3));
  CHECK(classify_noise(past) == NoiseClass::Asymmetric);
}

TEST_CASE("setting recognition by zero pattern") {
  CHECK(recognize_setting(template_pu(0.4)) == Setting::PositiveUnlabelled);
  CHECK(recognize_setting(template_ssl(2, {0.4, 0.7})) == Setting::SemiSupervised);
  CHECK(recognize_setting(template_ssl(2, {0.4, 1.0})) ==
        Setting::PositiveUnlabelled);
  CHECK(recognize_setting(template_flip_binary(0.1, 0.2)) == Setting::NoisyLabels);
  CHECK(recognize_setting(template_superset_uniform(3, 0.5)) == Setting::Superset);

  // A partial-space matrix that happens to satisfy the covering constraint is
  // recognized as the more specific superset setting.
  std::vector<std::vector<double>> entries(6, std::vector<double>(3, 0.0));
  MixingMatrix sup = template_superset_uniform(3, 0.6);
  for (std::size_t r = 0; r < 6; ++r) {
    for (int c = 0; c < 3; ++c) entries[r][static_cast<std::size_t>(c)] = sup.at(r, c);
  }
  MixingMatrix partial =
      MixingMatrix::from_dense(entries, WeakLabelSpace::partial_set(3));
  CHECK(recognize_setting(partial) == Setting::Superset);
}

TEST_CASE("annotator pools share shape") {
  AnnotatorPool pool = AnnotatorPool::of(
      {template_flip_binary(0.1, 0.2), template_flip_binary(0.3, 0.0)});
  CHECK(pool.num_annotators() == 2);
  CHECK_THROWS_AS(AnnotatorPool::of({template_flip_binary(0.1, 0.2),
                                     template_flip_symmetric(3, 0.1)}),
                  Error);
  CHECK_THROWS_AS(AnnotatorPool::of({}), Error);
}
