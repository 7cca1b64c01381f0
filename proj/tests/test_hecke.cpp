#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "doctest.h"
#include "langdual/error.hpp"
#include "langdual/hecke.hpp"

using namespace langdual;
using namespace langdual::hecke;
using rootsys::Isogeny;

namespace {

struct Fixture {
  coxeter::AffineWeylGroup group;
  HeckeAlgebra algebra;
  KLTable table;
  Fixture(const char* name, std::size_t cap = 24, Isogeny iso = Isogeny::SimplyConnected,
          std::optional<std::string> journal = std::nullopt)
      : group(rootsys::standard_types(name, iso)), algebra(group), table(algebra, cap, std::move(journal)) {}
  AffineElement w(const char* word) const { return group.parse_word(word); }
  HeckeElement t(const char* word, LaurentPoly c = 1) const { return algebra.t(w(word), c); }
};

const LaurentPoly v = LaurentPoly::v(), vi = LaurentPoly::v_inv(), qd = LaurentPoly::q_diff();

HeckeElement random_element(const Fixture& f, const std::vector<AffineElement>& ball, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), n(1, 3);
  HeckeElement h(f.algebra.root_system());
  for (int i = n(rng); i > 0; --i) h.add(ball[pick(rng)], LaurentPoly::monomial(e(rng), c(rng)));
  return h;
}

}  // namespace

TEST_CASE("quadratic relation and length additivity") {
  Fixture f("A1");
  auto ts = f.t("s1");
  CHECK(f.algebra.multiply(ts, ts) == f.t("s1", qd) + f.t("1"));
  CHECK(f.algebra.multiply(f.t("1"), f.t("s0 s1 s0")) == f.t("s0 s1 s0"));
  CHECK(f.algebra.multiply(f.t("s0 s1"), f.t("s0")) == f.t("s0 s1 s0"));
  CHECK(f.algebra.multiply(f.t("s0 s1"), f.t("s1")) == f.t("s0") + f.t("s0 s1", qd));
}

TEST_CASE("dominant translations commute") {
  // Adjoint datum: Y has the fundamental coweight basis.
  Fixture f("A2", 24, Isogeny::Adjoint);
  const auto& g = f.group;
  std::vector<rootsys::Vec> dom = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
  for (const auto& y1 : dom)
    for (const auto& y2 : dom) {
      auto a = f.algebra.t(g.translation(y1)), b = f.algebra.t(g.translation(y2));
      rootsys::Vec sum = {y1[0] + y2[0], y1[1] + y2[1]};
      auto expect = f.algebra.t(g.translation(sum));
      CHECK(f.algebra.multiply(a, b) == expect);
      CHECK(f.algebra.multiply(b, a) == expect);
    }
}

TEST_CASE("extended group: T_omega is length additive") {
  Fixture f("A2", 24, Isogeny::Adjoint);
  const auto& om = f.group.omega();
  REQUIRE(om.size() == 3);
  auto x = f.w("s1 s2 s0");
  auto a = f.algebra.t(om[1]), b = f.algebra.t(x);
  CHECK(f.algebra.multiply(a, b) == f.algebra.t(f.group.multiply(om[1], x)));
  CHECK(f.algebra.multiply(b, a) == f.algebra.t(f.group.multiply(x, om[1])));
  auto c = f.table.c(f.group.multiply(om[2], x));
  CHECK(c == f.algebra.multiply(f.algebra.t(om[2]), f.table.c(x)));
}

TEST_CASE("mixed root systems are rejected") {
  Fixture a("A1"), b("A2");
  CHECK_THROWS_AS(a.algebra.multiply(a.t("s1"), b.t("s1")), Error);
  try {
    auto sum = a.t("s1") + b.t("s1");
    FAIL("sum of mixed elements accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MixedRootSystems);
  }
}

TEST_CASE("bar involution") {
  Fixture f("A2");
  CHECK(f.algebra.bar(f.t("1")) == f.t("1"));
  CHECK(f.algebra.bar(f.t("s1")) == f.t("s1") - f.t("1", qd));
  // bar is a ring homomorphism
  auto ball = f.group.ball(4);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 25; ++i) {
    auto a = random_element(f, ball, rng), b = random_element(f, ball, rng);
    CHECK(f.algebra.bar(f.algebra.bar(a)) == a);
    CHECK(f.algebra.bar(f.algebra.multiply(a, b)) == f.algebra.multiply(f.algebra.bar(a), f.algebra.bar(b)));
  }
}

TEST_CASE("dagger involution") {
  Fixture f("B2");
  CHECK(f.algebra.dagger(f.t("1")) == f.t("1"));
  CHECK(f.algebra.dagger(f.t("s1")) == f.t("s1", -1) + f.t("1", qd));
  CHECK(f.algebra.dagger(f.t("s0")) == f.t("s0", -1) + f.t("1", qd));
  auto ball = f.group.ball(4);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 25; ++i) {
    auto a = random_element(f, ball, rng), b = random_element(f, ball, rng);
    CHECK(f.algebra.dagger(f.algebra.dagger(a)) == a);
    CHECK(f.algebra.dagger(f.algebra.multiply(a, b)) == f.algebra.multiply(f.algebra.dagger(a), f.algebra.dagger(b)));
  }
}

TEST_CASE("associativity on random triples") {
  for (const char* name : {"A2", "B2", "G2", "A1xA1"}) {
    Fixture f(name);
    auto ball = f.group.ball(4);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
      auto a = random_element(f, ball, rng), b = random_element(f, ball, rng), c = random_element(f, ball, rng);
      CHECK(f.algebra.multiply(f.algebra.multiply(a, b), c) == f.algebra.multiply(a, f.algebra.multiply(b, c)));
    }
  }
}

TEST_CASE("KL basis: small elements") {
  Fixture f("A1");
  CHECK(f.table.c(f.w("1")) == f.t("1"));
  CHECK(f.table.c(f.w("s1")) == f.t("s1") + f.t("1", vi));
  CHECK(f.table.c(f.w("s0")) == f.t("s0") + f.t("1", vi));
  CHECK(f.table.verify_bar_invariant(f.w("s1")));
}

TEST_CASE("KL basis: infinite dihedral polynomials are monomials") {
  Fixture f("A1");
  auto ball = f.group.ball(8);
  std::size_t entries = 0;
  for (const auto& z : ball) {
    const auto& cz = f.table.c(z);
    entries += cz.size();
    for (const auto& w : ball)
      if (f.group.bruhat_leq(w, z)) {
        int d = static_cast<int>(f.group.length(z)) - static_cast<int>(f.group.length(w));
        CHECK(cz.coeff(w) == LaurentPoly::monomial(-d));
      } else {
        CHECK(cz.coeff(w).is_zero());
      }
  }
  CHECK(entries == 145);
}

TEST_CASE("KL basis: affine A2 against the affine-permutation oracle") {
  Fixture f("A2");
  auto ball = f.group.ball(6);
  REQUIRE(ball.size() == 64);
  std::size_t entries = 0, nonmonomial = 0;
  for (const auto& z : ball) {
    const auto& cz = f.table.c(z);
    entries += cz.size();
    for (const auto& [w, p] : cz.terms()) nonmonomial += p.terms().size() > 1;
    CHECK(f.table.verify_shape(z));
    CHECK(f.table.verify_bar_invariant(z));
  }
  CHECK(entries == 1099);
  CHECK(nonmonomial == 174);
  auto p1 = LaurentPoly::monomial(-4) + LaurentPoly::monomial(-2);
  auto p2 = LaurentPoly::monomial(-3) + LaurentPoly::monomial(-1);
  CHECK(f.table.p(f.w("1"), f.w("s0 s1 s2 s0")) == p1);
  CHECK(f.table.p(f.w("s0"), f.w("s0 s1 s2 s0")) == p2);
  CHECK(f.table.p(f.w("s2"), f.w("s2 s1 s0 s2")) == p2);
}

TEST_CASE("KL basis: finite A3 parabolic polynomial") {
  // P_{s2, s2 s1 s3 s2} = 1 + q in the finite Weyl group of A3.
  Fixture f("A3");
  auto z = f.w("s2 s1 s3 s2");
  CHECK(f.table.p(f.w("s2"), z) == LaurentPoly::monomial(-3) + LaurentPoly::monomial(-1));
  CHECK(f.table.p(f.w("1"), z) == LaurentPoly::monomial(-4) + LaurentPoly::monomial(-2));
  CHECK(f.table.mu(f.w("s2"), z) == 1);
}

TEST_CASE("KL shape and bar invariance across types") {
  for (auto [name, iso, L] : {std::tuple{"B2", Isogeny::SimplyConnected, 7}, {"G2", Isogeny::SimplyConnected, 7},
                              {"B2", Isogeny::Adjoint, 6}, {"A1xA1", Isogeny::Adjoint, 5}}) {
    Fixture f(name, 24, iso);
    for (const auto& z : f.group.ball(L)) {
      CHECK(f.table.verify_shape(z));
      CHECK(f.table.verify_bar_invariant(z));
    }
  }
}

TEST_CASE("KL table cap") {
  Fixture f("A1", 3);
  CHECK_NOTHROW(f.table.c(f.w("s0 s1 s0")));
  try {
    f.table.c(f.w("s0 s1 s0 s1"));
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BallTooLarge);
  }
  try {
    f.table.h(f.w("s0 s1"), f.w("s0 s1"), f.w("1"));
    FAIL("escape ignored");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SupportEscapesBall);
  }
}

TEST_CASE("parallel fill matches serial fill") {
  Fixture serial("A2"), parallel("A2");
  auto ball = serial.group.ball(7);
  serial.table.fill(ball, 1);
  parallel.table.fill(ball, 4);
  for (const auto& z : ball) CHECK(serial.table.c(z) == parallel.table.c(z));
}

TEST_CASE("structure constants") {
  Fixture f("A1");
  auto s = f.w("s1");
  CHECK(f.table.h(s, s, s) == v + vi);
  CHECK(f.table.expand(f.table.c_product(s, s)).size() == 1);
  auto ball = f.group.ball(4);
  for (const auto& y : ball)
    for (const auto& z : ball) CHECK(f.table.h(f.w("1"), y, z) == LaurentPoly(y == z ? 1 : 0));
}

TEST_CASE("unit law and inverse symmetry") {
  for (const char* name : {"A1", "A2", "B2"}) {
    Fixture f(name);
    const auto& g = f.group;
    auto ball = g.ball(3);
    for (const auto& z : ball) CHECK(f.table.c_product(g.identity(), z) == f.table.c(z));
    for (const auto& x : ball)
      for (const auto& y : ball) {
        auto lhs = f.table.expand(f.table.c_product(x, y));
        auto rhs = f.table.expand(f.table.c_product(g.inverse(y), g.inverse(x)));
        REQUIRE(lhs.size() == rhs.size());
        for (const auto& [z, p] : lhs) CHECK(rhs.at(g.inverse(z)) == p);
      }
  }
}

TEST_CASE("a-function windows") {
  Fixture f("A1", 24);
  auto one = a_function_window(f.w("1"), f.table, 4);
  CHECK(one.bound == 0);
  CHECK(one.certified);
  CHECK(one.certificate == "window");
  auto s = a_function_window(f.w("s1"), f.table, 2);
  CHECK(s.bound == 1);
  CHECK(s.certified);
  CHECK(s.certificate == "cap");
  for (const auto& z : f.group.ball(8)) {
    if (z == f.group.identity()) continue;
    auto a = a_function_window(z, f.table, 8);
    CHECK(a.bound == 1);
    CHECK(a.certified);
    CHECK(a.certificate == "cap");
  }
}

TEST_CASE("gamma constants") {
  Fixture f("A1", 24);
  auto s = f.w("s1");
  CHECK(gamma_constant(s, s, s, f.table, 2) == 1);
  CHECK(gamma_constant(f.w("1"), f.w("1"), f.w("1"), f.table, 2) == 1);
  CHECK(gamma_constant(f.w("1"), s, s, f.table, 2) == 0);
  // gamma_{x,y,z} = gamma_{y,z,x} for certified triples
  const auto& g = f.group;
  auto ball = g.ball(3);
  std::map<AffineElement, int> a;
  for (const auto& z : ball) {
    auto r = a_function_window(z, f.table, 4);
    REQUIRE(r.certified);
    a[z] = r.bound;
  }
  auto gamma = [&](const AffineElement& x, const AffineElement& y, const AffineElement& z) {
    auto zi = g.inverse(z);
    return f.table.h(x, y, zi).coeff(a.at(zi));
  };
  for (const auto& x : ball)
    for (const auto& y : ball)
      for (const auto& z : ball) CHECK(gamma(x, y, z) == gamma(y, z, x));
}

TEST_CASE("a-function on affine A2 matches the cell structure") {
  Fixture f("A2", 24);
  CHECK(a_function_window(f.w("s1"), f.table, 2).bound == 1);
  CHECK(a_function_window(f.w("s0 s2 s1 s0"), f.table, 4, 1).bound == 1);
  auto low = a_function_window(f.w("s1 s2 s1"), f.table, 3);
  CHECK(low.bound == 3);
  CHECK(low.certificate == "cap");
  auto low2 = a_function_window(f.w("s0 s1 s2 s1"), f.table, 4, 1);
  CHECK(low2.bound == 3);
  CHECK(low2.certified);
  CHECK_THROWS_AS(a_function_window(f.w("s0 s1 s2 s1"), f.table, 3), Error);
}

TEST_CASE("two-sided cells in a ball") {
  SUBCASE("affine A1") {
    Fixture f("A1", 24);
    auto cells = cells_in_ball(f.table, 10);
    REQUIRE(cells.classes.size() == 2);
    CHECK(cells.classes[0] == std::vector<AffineElement>{f.group.identity()});
    CHECK(cells.classes[1].size() == 20);
    CHECK(cells.certified[0]);
    CHECK(cells.certified[1]);
  }
  SUBCASE("affine A2") {
    Fixture f("A2", 24);
    auto cells = cells_in_ball(f.table, 12);
    REQUIRE(cells.classes.size() == 3);
    CHECK(cells.classes[0] == std::vector<AffineElement>{f.group.identity()});
    std::size_t total = 0;
    for (const auto& c : cells.classes) total += c.size();
    CHECK(total == f.group.ball(12).size());
    for (bool c : cells.certified) CHECK(c);
    CHECK(cells.class_of(f.w("s1")) == cells.class_of(f.w("s0")));
  }
  SUBCASE("boundary fragments stay uncertified") {
    // At odd radius the length-L shell of the lowest cell splits off and
    // only merges back once the ball grows.
    Fixture f("A2", 24);
    auto cells = cells_in_ball(f.table, 7);
    CHECK(cells.classes.size() > 3);
    std::size_t certified = 0;
    for (bool c : cells.certified) certified += c;
    CHECK(certified == 2);
    CHECK_THROWS_AS(cells_in_ball(f.table, 7, 200000, 1, 0), Error);
  }
  SUBCASE("identity and Omega form the lowest-length cell") {
    Fixture f("A2", 24, Isogeny::Adjoint);
    auto cells = cells_in_ball(f.table, 4);
    CHECK(cells.classes[cells.class_of(f.group.identity())].size() == 3);
  }
}

TEST_CASE("KL journal round trip and corruption") {
  const std::string path = "kl_journal_test.jsonl";
  std::remove(path.c_str());
  std::vector<HeckeElement> reference;
  {
    Fixture f("A2", 24, Isogeny::SimplyConnected, path);
    for (const auto& z : f.group.ball(4)) reference.push_back(f.table.c(z));
    CHECK(f.table.stats().misses == f.group.ball(4).size());
  }
  {
    Fixture f("A2", 24, Isogeny::SimplyConnected, path);
    auto ball = f.group.ball(4);
    for (std::size_t i = 0; i < ball.size(); ++i) CHECK(f.table.c(ball[i]) == reference[i]);
    CHECK(f.table.stats().hits == ball.size());
    CHECK(f.table.stats().misses == 0);
  }
  {
    // another root system ignores the journal
    Fixture f("B2", 24, Isogeny::SimplyConnected, path);
    f.table.c(f.w("s1 s2"));
    CHECK(f.table.stats().hits == 0);
  }
  // Corrupt one coefficient without touching the checksum.
  std::ifstream in(path);
  std::string all, line;
  int n = 0;
  while (std::getline(in, line)) {
    if (n++ == 5) {
      auto pos = line.find("\"p\":[[");
      REQUIRE(pos != std::string::npos);
      line.insert(pos + 6, "-");
    }
    all += line + "\n";
  }
  in.close();
  std::ofstream(path) << all << "{not json\n";
  {
    Fixture f("A2", 24, Isogeny::SimplyConnected, path);
    auto ball = f.group.ball(4);
    for (std::size_t i = 0; i < ball.size(); ++i) CHECK(f.table.c(ball[i]) == reference[i]);
    CHECK(f.table.stats().rejected >= 2);
    CHECK(f.table.stats().misses >= 1);
  }
  std::remove(path.c_str());
}
