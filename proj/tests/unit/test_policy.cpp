#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "contest/errors.hpp"
#include "contest/policy.hpp"

using namespace contest;

namespace {

ErrorKind kind_of(const std::vector<double>& v) {
  try {
    make_policy(v);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::parse;
}

ErrorKind parse_kind(const std::string& text, int n) {
  try {
    parse_policy(text, n);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::domain;
}

}  // namespace

TEST_CASE("make_policy accepts ordered normalized vectors") {
  const Policy p = make_policy({0.5, 0.3, 0.2, 0.0});
  CHECK(p.n() == 4);
  CHECK(p.top() == 0.5);
  CHECK(p.last() == 0.0);
  CHECK(p[1] == 0.3);
}

TEST_CASE("make_policy reports the violated constraint") {
  CHECK(kind_of({0.2, 0.3, 0.5}) == ErrorKind::order_violation);
  CHECK(kind_of({0.5, 0.3, 0.3}) == ErrorKind::normalization_violation);
  CHECK(kind_of({1.1, -0.1}) == ErrorKind::domain);
  CHECK(kind_of({0.5, std::nan("")}) == ErrorKind::domain);
  CHECK(kind_of({1.0}) == ErrorKind::domain);
}

TEST_CASE("named policies") {
  CHECK(hm(4).values() == std::vector<double>{1, 0, 0, 0});
  const Policy u = uni(5);
  for (int i = 0; i < 4; ++i) CHECK(u[i] == doctest::Approx(0.25));
  CHECK(u.last() == 0.0);
  const Policy t = two_level(5, 0.4);
  CHECK(t[0] == doctest::Approx(0.4));
  for (int i = 1; i < 4; ++i) CHECK(t[i] == doctest::Approx(0.2));
  CHECK(t[4] == 0.0);
  CHECK(two_level(5, 1.0).values() == hm(5).values());
  CHECK_THROWS_AS(two_level(2, 0.7), Error);
}

TEST_CASE("nontriviality") {
  CHECK(is_nontrivial(hm(3)));
  CHECK_FALSE(is_nontrivial(make_policy({0.25, 0.25, 0.25, 0.25})));
}

TEST_CASE("classify_structure") {
  CHECK(classify_structure(hm(5)).tag == StructureTag::hm);
  CHECK(classify_structure(uni(5)).tag == StructureTag::uni);
  const auto two = classify_structure(two_level(5, 0.55));
  CHECK(two.tag == StructureTag::two_level);
  CHECK(two.p1 == doctest::Approx(0.55));
  CHECK(classify_structure(make_policy({0.5, 0.3, 0.2, 0.0})).tag == StructureTag::other);
  CHECK(classify_structure(make_policy({0.4, 0.2, 0.2, 0.2})).tag == StructureTag::other);
  // Lattice-rounded UNI is accepted at a coarse tolerance.
  const Policy rounded = make_policy({0.26, 0.26, 0.24, 0.24, 0.0});
  CHECK(classify_structure(rounded).tag == StructureTag::other);
  CHECK(classify_structure(rounded, 0.01).tag == StructureTag::uni);
  CHECK(classify_structure(make_policy({0.28, 0.24, 0.24, 0.24, 0.0}), 0.01).tag == StructureTag::two_level);
}

TEST_CASE("parse_policy") {
  CHECK(parse_policy("hm", 3).values() == hm(3).values());
  CHECK(parse_policy("uni", 5).values() == uni(5).values());
  CHECK(parse_policy("uniform", 4).values() == std::vector<double>(4, 0.25));
  CHECK(parse_policy("two:0.4", 5).values() == two_level(5, 0.4).values());
  CHECK(parse_policy(" 0.4, 0.2,0.2,0.2,0 ", 0).n() == 5);
  CHECK(parse_kind("0.2,0.3,0.5", 0) == ErrorKind::order_violation);
  CHECK(parse_kind("0.5,0.5", 3) == ErrorKind::parse);
  CHECK(parse_kind("two:abc", 5) == ErrorKind::parse);
  try {
    parse_policy("0.5,0.2x,0.3", 0);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
}

TEST_CASE("format_policy round trips") {
  const Policy p = make_policy({0.5, 0.25, 0.25, 0.0});
  CHECK(format_policy(p) == "0.5,0.25,0.25,0");
  CHECK(parse_policy(format_policy(p), 4).values() == p.values());
}
