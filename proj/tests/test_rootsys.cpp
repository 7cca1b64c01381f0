#include <functional>
#include <set>
#include <nlohmann/json.hpp>
#include "doctest.h"
#include "langdual/error.hpp"
#include "langdual/rootsys.hpp"

using namespace langdual;
using namespace langdual::rootsys;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::BadInput;
}

}  // namespace

TEST_CASE("validation certificates") {
  auto a1 = standard_types("A1", Isogeny::SimplyConnected);
  CHECK(validate(a1).c == std::vector<std::int64_t>{1});
  auto g2 = standard_types("G2", Isogeny::SimplyConnected);
  CHECK(g2.cartan() == std::vector<std::vector<std::int64_t>>{{2, -1}, {-3, 2}});
  auto c = validate(g2).c;
  // c_i A_ij symmetric: the long simple root carries the larger weight.
  CHECK(c == std::vector<std::int64_t>{3, 1});
  auto a = g2.cartan();
  // The right-hand symmetrizer is (1, 3).
  CHECK(a[0][1] * 3 == a[1][0] * 1);
}

TEST_CASE("validation failures") {
  auto affine = from_cartan({{2, -2}, {-2, 2}}, Isogeny::SimplyConnected, IntMatrix::identity(2));
  CHECK(code_of([&] { validate(affine); }) == Errc::NotPositiveDefinite);
  auto diag = from_cartan({{3}}, Isogeny::SimplyConnected, IntMatrix::identity(1));
  CHECK(code_of([&] { validate(diag); }) == Errc::DiagonalNotTwo);
  auto pos = from_cartan({{2, 1}, {1, 2}}, Isogeny::SimplyConnected, IntMatrix::identity(2));
  CHECK(code_of([&] { validate(pos); }) == Errc::OffDiagonalPositive);
  auto nonsym = from_cartan({{2, -1}, {0, 2}}, Isogeny::SimplyConnected, IntMatrix::identity(2));
  CHECK(code_of([&] { validate(nonsym); }) == Errc::NotSymmetrizable);
  auto cyc = from_cartan({{2, -1, -1}, {-2, 2, -1}, {-1, -1, 2}}, Isogeny::SimplyConnected,
                         IntMatrix::identity(3));
  CHECK(code_of([&] { validate(cyc); }) == Errc::NotSymmetrizable);
  RootSystem bad_gram = standard_types("A1", Isogeny::SimplyConnected);
  bad_gram.gram = IntMatrix{{2}};
  CHECK(code_of([&] { validate(bad_gram); }) == Errc::PairingNotPerfect);
}

TEST_CASE("standard types") {
  CHECK(standard_types("A1", Isogeny::SimplyConnected).cartan() == std::vector<std::vector<std::int64_t>>{{2}});
  auto e8 = standard_types("E8", Isogeny::SimplyConnected);
  CHECK(e8.cartan_matrix().determinant() == 1);
  CHECK(standard_types("E7", Isogeny::SimplyConnected).cartan_matrix().determinant() == 2);
  CHECK(standard_types("E6", Isogeny::SimplyConnected).cartan_matrix().determinant() == 3);
  for (const char* name : {"A1", "A4", "B3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"}) {
    for (auto iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      auto rs = standard_types(name, iso);
      CHECK_NOTHROW(validate(rs));
      CHECK(identify_type(rs.cartan()) == std::string(name));
    }
  }
  CHECK(code_of([] { standard_types("H3", Isogeny::SimplyConnected); }) == Errc::UnknownType);
  CHECK(code_of([] { standard_types("D3", Isogeny::SimplyConnected); }) == Errc::UnknownType);
  CHECK(code_of([] { standard_types("E9", Isogeny::SimplyConnected); }) == Errc::UnknownType);
}

TEST_CASE("dual root systems") {
  auto a1 = standard_types("A1", Isogeny::SimplyConnected);
  auto d = dual(a1);
  auto f = classify_flags(d);
  CHECK(f.adjoint);
  CHECK_FALSE(f.simply_connected);
  auto b2 = standard_types("B2", Isogeny::SimplyConnected);
  auto db2 = dual(b2);
  CHECK(db2.cartan() == standard_cartan('C', 2));
  auto g2 = standard_types("G2", Isogeny::SimplyConnected);
  CHECK(dual(dual(g2)) == g2);
  RootSystem skew = from_cartan(standard_cartan('B', 3), Isogeny::SimplyConnected,
                                IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 2, 1}});
  CHECK_NOTHROW(validate(skew));
  CHECK(dual(dual(skew)) == skew);
  CHECK(dual(skew).cartan_matrix() == skew.cartan_matrix().transpose());
}

TEST_CASE("root enumeration counts") {
  struct Case {
    const char* name;
    std::size_t count;
  } cases[] = {{"A1", 2},  {"A2", 6},  {"A3", 12}, {"B2", 8},  {"B3", 18},  {"C3", 18},
               {"D4", 24}, {"G2", 12}, {"F4", 48}, {"E6", 72}, {"E7", 126}, {"E8", 240}};
  for (const auto& c : cases) {
    auto rd = enumerate_roots(standard_types(c.name, Isogeny::SimplyConnected));
    CHECK(rd.size() == c.count);
    CHECK(rd.npos * 2 == rd.size());
  }
  auto rd = enumerate_roots(standard_types("G2", Isogeny::SimplyConnected));
  CHECK(rd.coords[rd.highest[0]] == Vec{2, 3});
  auto e8 = enumerate_roots(standard_types("E8", Isogeny::SimplyConnected));
  CHECK(e8.coords[e8.highest[0]] == Vec{2, 3, 4, 6, 5, 4, 3, 2});
}

TEST_CASE("minimal roots") {
  auto a1 = standard_types("A1", Isogeny::SimplyConnected);
  auto rd = enumerate_roots(a1);
  REQUIRE(rd.r_min.size() == 1);
  CHECK(rd.coords[rd.r_min[0]] == Vec{-1});
  auto a2 = enumerate_roots(standard_types("A2", Isogeny::SimplyConnected));
  REQUIRE(a2.r_min.size() == 1);
  CHECK(a2.coords[a2.r_min[0]] == Vec{-1, -1});
  auto a1a1 = enumerate_roots(standard_types("A1xA1", Isogeny::SimplyConnected));
  CHECK(a1a1.r_min.size() == 2);
}

TEST_CASE("reflections permute roots and respect the coroot bijection") {
  for (const char* name : {"A1", "A2", "B2", "G2", "A3", "B3", "C3", "A1xA1", "D4", "F4", "B2xA1"}) {
    auto rs = standard_types(name, Isogeny::SimplyConnected);
    auto rd = enumerate_roots(rs);
    for (std::size_t i = 0; i < rs.nsimple(); ++i) {
      std::set<std::size_t> img;
      for (std::size_t k = 0; k < rd.size(); ++k) {
        std::size_t t = rd.reflection[i][k];
        img.insert(t);
        CHECK(rd.roots[t] == rs.reflect_x(i, rd.roots[k]));
        CHECK(rd.coroots[t] == rs.reflect_y(i, rd.coroots[k]));
        CHECK(rs.pair(rd.coroots[k], rd.roots[k]) == 2);
        if (rd.is_positive(k) && k != rd.simple[i]) CHECK(rd.is_positive(t));
      }
      CHECK(img.size() == rd.size());
    }
  }
}

TEST_CASE("dominance order") {
  auto a1 = standard_types("A1", Isogeny::SimplyConnected);
  CHECK(dominance_leq(a1, {3}, {3}));
  CHECK(dominance_leq(a1, {0}, {2}));
  CHECK_FALSE(dominance_leq(a1, {0}, {1}));
  auto a2 = standard_types("A2", Isogeny::SimplyConnected);
  Vec w1 = weight_from_dynkin(a2, {1, 0}), w2 = weight_from_dynkin(a2, {0, 1});
  CHECK_FALSE(dominance_leq(a2, w1, w2));
  CHECK_FALSE(dominance_leq(a2, w2, w1));
  CHECK(dominance_leq(a2, {0, 0}, weight_from_dynkin(a2, {1, 1})));
}

TEST_CASE("dominant weights dominate their orbits") {
  for (const char* name : {"A2", "B2", "G2", "A3"}) {
    auto rs = standard_types(name, Isogeny::SimplyConnected);
    std::size_t n = rs.nsimple();
    std::vector<Vec> box;
    std::function<void(Vec)> gen = [&](Vec v) {
      if (v.size() == n) {
        box.push_back(v);
        return;
      }
      for (int k = 0; k <= 2; ++k) {
        Vec w = v;
        w.push_back(k);
        gen(w);
      }
    };
    gen({});
    for (const auto& labels : box) {
      Vec lam = weight_from_dynkin(rs, labels);
      CHECK(is_dominant(rs, lam));
      std::set<Vec> orbit{lam};
      std::vector<Vec> stack{lam};
      while (!stack.empty()) {
        Vec x = stack.back();
        stack.pop_back();
        CHECK(dominance_leq(rs, x, lam));
        for (std::size_t i = 0; i < n; ++i) {
          Vec y = rs.reflect_x(i, x);
          if (orbit.insert(y).second) stack.push_back(y);
        }
      }
      for (const auto& x : orbit) CHECK(dominant_representative(rs, x) == lam);
    }
  }
}

TEST_CASE("flags") {
  auto a1 = standard_types("A1", Isogeny::SimplyConnected);
  CHECK(classify_flags(a1).simply_connected);
  CHECK(classify_flags(a1).irreducible);
  CHECK(classify_flags(standard_types("A1", Isogeny::Adjoint)).adjoint);
  CHECK_FALSE(classify_flags(standard_types("A1xA1", Isogeny::SimplyConnected)).irreducible);
  auto e8 = standard_types("E8", Isogeny::SimplyConnected);
  auto f = classify_flags(e8);
  CHECK(f.simply_connected);
  CHECK(f.adjoint);
  // Extra central rank: one simple root in rank 2.
  RootSystem gl2;
  gl2.rank = 2;
  gl2.gram = IntMatrix::identity(2);
  gl2.coroots = {{1, -1}};
  gl2.roots = {{1, -1}};
  CHECK_NOTHROW(validate(gl2));
  CHECK_FALSE(classify_flags(gl2).semisimple);
  CHECK(enumerate_roots(gl2).size() == 2);
}

TEST_CASE("type identification and isomorphism") {
  CHECK(identify_type(standard_cartan('C', 3)) == "C3");
  CHECK(identify_type({{2, -1}, {-2, 2}}) == "B2");
  CHECK(identify_type({{2, -2}, {-1, 2}}) == "B2");
  CHECK(identify_type({{2, -3}, {-1, 2}}) == "G2");
  CHECK(cartan_isomorphic({{2, -3}, {-1, 2}}, standard_cartan('G', 2)));
  CHECK_FALSE(cartan_isomorphic(standard_cartan('B', 3), standard_cartan('C', 3)));
  auto e = standard_cartan('E', 6);
  std::vector<std::vector<std::int64_t>> perm(6, std::vector<std::int64_t>(6));
  std::vector<int> p{5, 3, 1, 0, 2, 4};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) perm[p[i]][p[j]] = e[i][j];
  CHECK(cartan_isomorphic(perm, e));
  CHECK(identify_type(perm) == "E6");
}

TEST_CASE("json input") {
  auto rs = from_json(nlohmann::json::parse(R"({"type":"G2","isogeny":"sc"})"));
  CHECK(rs.cartan() == standard_cartan('G', 2));
  auto rs2 = from_json(nlohmann::json::parse(R"({"cartan":[[2,-1],[-1,2]],"isogeny":"ad"})"));
  CHECK(classify_flags(rs2).adjoint);
  CHECK(code_of([] { from_json(nlohmann::json::parse(R"({"cartan":[[2,-2],[-2,2]]})")); }) ==
        Errc::NotPositiveDefinite);
  CHECK(code_of([] { from_json(nlohmann::json::parse(R"({"cartan":[[2]],"gram":[[3]]})")); }) ==
        Errc::PairingNotPerfect);
  CHECK(code_of([] { from_json(nlohmann::json::parse(R"([1,2])")); }) == Errc::BadInput);
}

TEST_CASE("explicit json round trip") {
  for (const char* t : {"B2", "G2", "A3"})
    for (auto iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
      auto rs = standard_types(t, iso);
      CHECK(from_json(to_json(rs)) == rs);
    }
  // Only two of the three pieces.
  CHECK(code_of([] { from_json(nlohmann::json::parse(R"({"roots":[[2]],"coroots":[[1]]})")); }) ==
        Errc::BadInput);
  CHECK(code_of([] {
          from_json(nlohmann::json::parse(R"({"gram":[[1]],"roots":[[2]],"coroots":[[1,0]]})"));
        }) == Errc::BadInput);
  // <coroot, root> = 1 is not a Cartan matrix.
  CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"gram":[[1]],"roots":[[1]],"coroots":[[1]]})")), Error);
}
