#include <doctest.h>

#include <bit>

#include "weaksup/label_space.hpp"

using namespace weaksup;

TEST_CASE("subset/row bijection on canonical order") {
  CHECK(subset_to_row(0b001, 3) == 0);
  CHECK(subset_to_row(0b101, 3) == 4);
  CHECK(subset_to_row(0b110, 3) == 5);
  CHECK(row_to_subset(0, 3) == 0b001);
  CHECK(row_to_subset(5, 3) == 0b110);

  // Exhaustive round trip for every supported k.
  for (int k = 2; k <= 12; ++k) {
    std::uint64_t rows = (1u << k) - 2u;
    for (std::uint64_t r = 0; r < rows; ++r) {
      CHECK(subset_to_row(row_to_subset(r, k), k) == r);
    }
  }
}

TEST_CASE("subset/row rejects empty, full set, and bad rows") {
  CHECK_THROWS_WITH_AS(subset_to_row(0, 3), doctest::Contains("OutOfSpace"), Error);
  CHECK_THROWS_AS(subset_to_row(0b111, 3), Error);
  CHECK_THROWS_AS(row_to_subset(6, 3), Error);
  CHECK(row_to_subset(5, 3) == 0b110);
}

TEST_CASE("space cardinalities match the settings table") {
  CHECK(space_cardinality(WeakLabelSpace::multiclass(5)) == 5);
  CHECK(space_cardinality(WeakLabelSpace::partial_set(3)) == 6);
  CHECK(space_cardinality(WeakLabelSpace::superset_set(4)) == 14);
  CHECK(space_cardinality(WeakLabelSpace::semi_sup(2)) == 3);
  CHECK(space_cardinality(WeakLabelSpace::pu()) == 3);
  CHECK(space_cardinality(WeakLabelSpace::multi_annotator(
            2, WeakLabelSpace::multiclass(3))) == 9);
  CHECK(space_cardinality(WeakLabelSpace::unified(2, 3, 2, true)) == 49);
}

TEST_CASE("k = 1 is rejected everywhere") {
  CHECK_THROWS_AS(WeakLabelSpace::multiclass(1), Error);
  CHECK_THROWS_AS(WeakLabelSpace::partial_set(1), Error);
  CHECK_THROWS_AS(WeakLabelSpace::semi_sup(1), Error);
}

TEST_CASE("superset membership needs and uses the clean label") {
  WeakLabelSpace space = WeakLabelSpace::superset_set(3, 2);
  CHECK_FALSE(validate_membership(WeakLabel::class_set(0b011), space, CleanLabel{2}));
  CHECK(validate_membership(WeakLabel::class_set(0b110), space, CleanLabel{2}));
  CHECK_THROWS_AS(validate_membership(WeakLabel::class_set(0b110), space), Error);
  try {
    validate_membership(WeakLabel::class_set(0b110), space);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingTrueLabel);
  }
}

TEST_CASE("abstain is a member of semi-supervised spaces") {
  CHECK(validate_membership(WeakLabel::abstain(), WeakLabelSpace::semi_sup(5)));
  CHECK_FALSE(validate_membership(WeakLabel::abstain(), WeakLabelSpace::multiclass(5)));
}

TEST_CASE("PU membership coincides with SemiSup k=2") {
  WeakLabelSpace pu = WeakLabelSpace::pu();
  WeakLabelSpace ssl2 = WeakLabelSpace::semi_sup(2);
  std::vector<WeakLabel> candidates = {WeakLabel::single(0), WeakLabel::single(1),
                                       WeakLabel::abstain(),
                                       WeakLabel::class_set(0b11)};
  for (const WeakLabel& w : candidates) {
    CHECK(validate_membership(w, pu) == validate_membership(w, ssl2));
  }
}

TEST_CASE("superset membership implies partial membership") {
  WeakLabelSpace sup = WeakLabelSpace::superset_set(4);
  WeakLabelSpace part = WeakLabelSpace::partial_set(4);
  for (ClassMask mask = 0; mask < 16; ++mask) {
    WeakLabel w = mask ? WeakLabel::class_set(mask) : WeakLabel::abstain();
    for (int z = 0; z < 4; ++z) {
      if (validate_membership(w, sup, CleanLabel{z})) {
        CHECK(validate_membership(w, part));
      }
    }
  }
}

TEST_CASE("cardinality equals brute-force member count") {
  // Enumerate every candidate flat label and count members.
  auto count_members = [](const WeakLabelSpace& space) {
    int k = space.num_classes();
    std::uint64_t count = 0;
    for (ClassMask mask = 1; mask < (1u << k); ++mask) {
      if (validate_membership(WeakLabel::class_set(mask), space,
                              CleanLabel{0})) {
        ++count;
      }
    }
    if (validate_membership(WeakLabel::abstain(), space)) ++count;
    return count;
  };
  CHECK(count_members(WeakLabelSpace::multiclass(4)) == 4);
  CHECK(count_members(WeakLabelSpace::partial_set(4)) == 14);
  CHECK(count_members(WeakLabelSpace::semi_sup(4)) == 5);
  CHECK(count_members(WeakLabelSpace::pu()) == 3);
}

TEST_CASE("parse and format round trip") {
  WeakLabelSpace part3 = WeakLabelSpace::partial_set(3);
  CHECK(parse_weak_label("1|2", part3) == WeakLabel::class_set(0b110));
  CHECK(parse_weak_label("-", WeakLabelSpace::semi_sup(3)) == WeakLabel::abstain());

  WeakLabelSpace tuple_space =
      WeakLabelSpace::multi_annotator(2, WeakLabelSpace::semi_sup(3));
  WeakLabel expected = WeakLabel::annotator_tuple(
      {WeakLabel::single(0), WeakLabel::abstain()});
  CHECK(parse_weak_label("0;-", tuple_space) == expected);
  CHECK(format_weak_label(expected) == "0;-");

  for (ClassMask mask = 1; mask < 7; ++mask) {
    WeakLabel w = WeakLabel::class_set(mask);
    CHECK(parse_weak_label(format_weak_label(w), part3) == w);
  }
}

TEST_CASE("parse errors carry offsets and space checks") {
  WeakLabelSpace part3 = WeakLabelSpace::partial_set(3);
  CHECK_THROWS_AS(parse_weak_label("1|x", part3), Error);
  try {
    parse_weak_label("0|1|2", part3);  // full set excluded
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfSpace);
  }
  try {
    parse_weak_label("-", WeakLabelSpace::multiclass(3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfSpace);
  }
}

TEST_CASE("weak label row mapping round trips") {
  for (const WeakLabelSpace& space :
       {WeakLabelSpace::multiclass(4), WeakLabelSpace::partial_set(4),
        WeakLabelSpace::semi_sup(3), WeakLabelSpace::pu()}) {
    for (std::uint64_t r = 0; r < space_cardinality(space); ++r) {
      CHECK(weak_label_row(row_weak_label(r, space), space) == r);
    }
  }
}

TEST_CASE("display order lists smaller sets first") {
  auto order = display_row_order(3);
  REQUIRE(order.size() == 6);
  // Singletons occupy the first three display slots.
  for (int i = 0; i < 3; ++i) {
    ClassMask mask = row_to_subset(order[static_cast<std::size_t>(i)], 3);
    CHECK(std::popcount(mask) == 1);
  }
  CHECK(subset_display_string(0b101, 3) == "101");
}
