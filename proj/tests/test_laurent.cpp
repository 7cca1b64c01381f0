#include <random>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "langdual/error.hpp"
#include "langdual/laurent.hpp"

using namespace langdual;

namespace {

LaurentPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-4, 4), c(-5, 5), n(0, 4);
  LaurentPoly p;
  for (int i = n(rng); i > 0; --i) p += LaurentPoly::monomial(e(rng), c(rng));
  return p;
}

}  // namespace

TEST_CASE("Laurent text form") {
  auto p = LaurentPoly::monomial(-2) + 3 + LaurentPoly::monomial(4);
  CHECK(p.to_string() == "v^-2 + 3 + v^4");
  CHECK(LaurentPoly::parse("v^-2 + 3 + v^4") == p);
  CHECK(LaurentPoly::q_diff().to_string() == "-v^-1 + v");
  CHECK(LaurentPoly::monomial(3, -2).to_string() == "-2v^3");
  CHECK(LaurentPoly().to_string() == "0");
  CHECK(LaurentPoly::parse("0").is_zero());
  CHECK(LaurentPoly::parse("v + v").to_string() == "2v");
  CHECK_THROWS_AS(LaurentPoly::parse("v^"), Error);
  CHECK_THROWS_AS(LaurentPoly::parse("3v3"), Error);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto q = random_poly(rng);
    CHECK(LaurentPoly::parse(q.to_string()) == q);
    CHECK(laurent_from_json(to_json(q)) == q);
  }
}

TEST_CASE("Laurent ring axioms and bar") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == LaurentPoly());
    CHECK(a * LaurentPoly(1) == a);
    CHECK(a.bar().bar() == a);
    CHECK((a * b).bar() == a.bar() * b.bar());
    for (const auto& t : a.terms()) CHECK(t.second != 0);
  }
  CHECK(LaurentPoly::monomial(5).bar() == LaurentPoly::monomial(-5));
}

TEST_CASE("Laurent exact division") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng), d = random_poly(rng);
    if (d.is_zero()) continue;
    LaurentPoly q;
    REQUIRE((a * d).divide_exact(d, q));
    CHECK(q == a);
  }
  LaurentPoly q;
  CHECK_FALSE(LaurentPoly(1).divide_exact(LaurentPoly::v() + 1, q));
  CHECK_FALSE(LaurentPoly(3).divide_exact(LaurentPoly(2), q));
  auto vv = LaurentPoly::v() + LaurentPoly::v_inv();
  CHECK((vv * vv).divide_exact(vv, q));
  CHECK(q == vv);
}

TEST_CASE("Laurent overflow is reported") {
  auto big = LaurentPoly(INT64_MAX);
  CHECK_THROWS_AS(big + 1, Error);
  CHECK_THROWS_AS(big * 2, Error);
  CHECK_THROWS_AS(LaurentPoly::monomial(INT32_MAX).shifted(1), Error);
}
