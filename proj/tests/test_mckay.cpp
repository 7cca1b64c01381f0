#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "langdual/error.hpp"
#include "langdual/mckay.hpp"

using namespace langdual;
using namespace langdual::mckay;

namespace {

BigRat rat(long a, long b) {
  BigRat q{BigInt(a), BigInt(b)};
  q.canonicalize();
  return q;
}

struct Case {
  char family;
  std::size_t n;
};

std::vector<Case> all_small_cases() {
  std::vector<Case> out;
  for (char f : {'a', 'b', 'f', 'g'})
    for (std::size_t n = 2; n <= 4; ++n) out.push_back({f, n});
  for (char f : {'c', 'd', 'e', 'h', 'i'}) out.push_back({f, 0});
  return out;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  const std::size_t N = 12;
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(9) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
  Cyclotomic z = Cyclotomic::zeta(N, 1);
  Cyclotomic p = Cyclotomic(N, 1);
  for (int k = 0; k < 12; ++k) p = p * z;
  CHECK(p == Cyclotomic(N, 1));
  // 1 + z3 + z3^2 = 0
  Cyclotomic w = Cyclotomic::zeta(N, 4);
  CHECK((Cyclotomic(N, 1) + w + w * w).is_zero());
  CHECK((z * z.conj()) == Cyclotomic(N, 1));
  // i^2 = -1 and sqrt(3) = z12 + z12^-1 squares to 3
  Cyclotomic i = Cyclotomic::zeta(N, 3);
  CHECK(i * i == Cyclotomic(N, -1));
  Cyclotomic s3 = z + z.conj();
  CHECK(s3 * s3 == Cyclotomic(N, 3));
  CHECK(s3.galois(5) == -s3);
  CHECK(w.embed(60) == Cyclotomic::zeta(60, 20));
  CHECK((z * rat(1, 2) + z * rat(1, 2)) == z);
  CHECK_THROWS_AS(z.galois(2), Error);
  CHECK_THROWS_AS(z + Cyclotomic::zeta(24, 1), Error);
  CHECK(cyclotomic_from_json(N, to_json(s3 * rat(-3, 7))) == s3 * rat(-3, 7));
}

TEST_CASE("quaternion matrices multiply like quaternions") {
  const std::size_t N = 4;
  Cyclotomic o(N, 1), z(N);
  Matrix2 i = Matrix2::quaternion(z, o, z, z), j = Matrix2::quaternion(z, z, o, z), k = Matrix2::quaternion(z, z, z, o);
  CHECK(i * j == k);
  CHECK(j * k == i);
  CHECK(i * i == Matrix2::quaternion(-o, z, z, z));
  CHECK(i.det() == o);
  CHECK(i * i.inverse_sl2() == Matrix2::identity(N));
  CHECK_THROWS_AS(Matrix2::quaternion(Cyclotomic(3, 1), Cyclotomic(3), Cyclotomic(3), Cyclotomic(3)), Error);
}

TEST_CASE("embedded character data is checksummed") {
  const auto& d = character_data();
  CHECK(d.at("version") == 1);
  CHECK(d.at("groups").size() == 3);
  nlohmann::json bad = d;
  bad["groups"]["2T"]["order"] = 25;
  CHECK_THROWS_AS(parse_character_data(bad.dump()), Error);
  nlohmann::json wrong = d;
  wrong["format"] = "something-else";
  CHECK_THROWS_AS(parse_character_data(wrong.dump()), Error);
  CHECK_THROWS_AS(parse_character_data("not json"), Error);
  CHECK(parse_character_data(d.dump()) == d);
}

TEST_CASE("build_pair orders and parameter checks") {
  auto p = build_pair('a', 2);
  CHECK(p.gamma.order() == 2);
  CHECK(p.gamma.contains(Matrix2::diag(Cyclotomic(2, -1), Cyclotomic(2, -1))));
  CHECK(!p.g_prime);

  auto f = build_pair('f', 2);
  CHECK(f.gamma.order() == 4);
  CHECK(f.gamma_prime.order() == 8);
  CHECK(f.gamma_prime.name == "BD8");
  CHECK(f.quotient_order == 2);
  REQUIRE(f.g_prime);
  CHECK(!f.gamma.contains(f.gamma_prime.elements[*f.g_prime]));

  CHECK(build_pair('e', 0).gamma.order() == 120);
  CHECK(build_pair('h', 0).quotient_order == 2);
  CHECK(build_pair('i', 0).quotient_order == 3);

  CHECK_THROWS_AS(build_pair('a', 1), Error);
  CHECK_THROWS_AS(build_pair('f', 1), Error);
  CHECK_THROWS_AS(build_pair('j', 2), Error);
  try {
    build_pair('g', 0);
    FAIL("expected BadParameter");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadParameter);
  }

  for (auto [fam, n] : all_small_cases()) {
    CAPTURE(fam);
    CAPTURE(n);
    auto q = build_pair(fam, n);
    auto [og, ogp] = expected_orders(fam, n);
    CHECK(q.gamma.order() == og);
    CHECK(q.gamma_prime.order() == ogp);
    for (const auto& x : q.gamma_prime.elements) CHECK(x.det() == Cyclotomic(q.conductor, 1));
  }
}

TEST_CASE("character tables") {
  auto z3 = build_pair('a', 3);
  auto t3 = gamma_character_table(z3);
  REQUIRE(t3.chars.size() == 3);
  // the generator a = diag(z3, z3^-1) takes values 1, z3, z3^2
  const std::size_t ca = t3.class_of[1];
  std::vector<Cyclotomic> at_a;
  for (const auto& chi : t3.chars) at_a.push_back(chi[ca]);
  std::sort(at_a.begin(), at_a.end());
  std::vector<Cyclotomic> want{Cyclotomic(3, 1), Cyclotomic::zeta(3, 1), Cyclotomic::zeta(3, 2)};
  std::sort(want.begin(), want.end());
  CHECK(at_a == want);

  auto q8 = build_pair('b', 2);
  auto tq = gamma_character_table(q8);
  std::vector<std::size_t> degs;
  for (std::size_t k = 0; k < tq.chars.size(); ++k) degs.push_back(tq.degree(k));
  std::sort(degs.begin(), degs.end());
  CHECK(degs == std::vector<std::size_t>{1, 1, 1, 1, 2});

  CHECK(gamma_character_table(build_pair('c', 0)).chars.size() == 7);
  CHECK(gamma_character_table(build_pair('d', 0)).chars.size() == 8);
  CHECK(gamma_character_table(build_pair('e', 0)).chars.size() == 9);

  // odd binary dihedral groups need i-valued linear characters
  auto bd12 = build_pair('b', 3);
  auto t12 = gamma_character_table(bd12);
  CHECK(t12.chars.size() == 6);

  // a perturbed table is rejected
  auto broken = tq;
  broken.chars[1][1] = -broken.chars[1][1];
  CHECK_THROWS_AS(verify_table(q8.gamma, broken), Error);
  auto swapped = tq;
  std::swap(swapped.chars[0], swapped.chars[1]);
  CHECK_THROWS_AS(verify_table(q8.gamma, swapped), Error);
}

TEST_CASE("Clifford orbits") {
  auto a4 = build_pair('a', 4);
  auto la = clifford_indecomposables(a4, gamma_character_table(a4));
  CHECK(la.size() == 4);
  CHECK(std::all_of(la.m.begin(), la.m.end(), [](auto m) { return m == 1; }));

  auto f2 = build_pair('f', 2);
  auto tf = gamma_character_table(f2);
  auto lf = clifford_indecomposables(f2, tf);
  CHECK(lf.size() == 3);
  std::vector<std::size_t> m = lf.m;
  std::sort(m.begin(), m.end());
  CHECK(m == std::vector<std::size_t>{1, 1, 2});
  CHECK(lf.i0 == 0);
  CHECK(lf.m[lf.i0] == 1);
  // the pair orbit is {chi, chi^3}: its sum is real on the generator
  for (std::size_t i = 0; i < lf.size(); ++i)
    if (lf.m[i] == 2) CHECK(lf.values[i][tf.class_of[1]].is_zero());

  auto e = build_pair('e', 0);
  CHECK(clifford_indecomposables(e, gamma_character_table(e)).size() == 9);
}

TEST_CASE("McKay matrices") {
  auto a2 = build_pair('a', 2);
  auto ta = gamma_character_table(a2);
  auto la = clifford_indecomposables(a2, ta);
  auto ma = mckay_matrix(a2, ta, la);
  CHECK(ma.c == std::vector<std::vector<std::int64_t>>{{0, 2}, {2, 0}});

  for (auto [fam, n] : all_small_cases()) {
    CAPTURE(fam);
    CAPTURE(n);
    auto p = build_pair(fam, n);
    auto t = gamma_character_table(p);
    auto l = clifford_indecomposables(p, t);
    auto mc = mckay_matrix(p, t, l);
    // row i0 lists sigma itself
    for (std::size_t j = 0; j < l.size(); ++j) {
      Cyclotomic ip = inner_product(p.gamma, t, mc.sigma, l.values[j]);
      CHECK(ip == Cyclotomic(p.conductor, mc.c[l.i0][j] * static_cast<long>(l.m[j])));
    }
    // sum_j c_ij dim rho_j = 2 dim rho_i
    for (std::size_t i = 0; i < l.size(); ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < l.size(); ++j) s += mc.c[i][j] * static_cast<std::int64_t>(l.dims[j]);
      CHECK(s == 2 * static_cast<std::int64_t>(l.dims[i]));
    }
    // rho_i are pairwise orthogonal with norm m_i
    for (std::size_t i = 0; i < l.size(); ++i)
      CHECK(inner_product(p.gamma, t, l.values[i], l.values[i]) == Cyclotomic(p.conductor, static_cast<long>(l.m[i])));
  }
}

TEST_CASE("families give the classified root systems") {
  for (auto [fam, n] : all_small_cases()) {
    CAPTURE(fam);
    CAPTURE(n);
    auto r = run_mckay(fam, n ? n : 2);
    const std::string want = expected_type(fam, n ? n : 2);
    CHECK(r.type == want);
    const char letter = want[0];
    const std::size_t rank = std::stoul(want.substr(1));
    CHECK(r.root_system.rank == rank);
    CHECK(rootsys::cartan_isomorphic(r.cartan, rootsys::standard_cartan(letter, rank)));
    auto flags = rootsys::classify_flags(r.root_system);
    CHECK(flags.simply_connected);
    CHECK(flags.irreducible);
    CHECK(r.form.ok());
    CHECK(r.form.samples >= 100);
  }
}

TEST_CASE("reference examples of the root system construction") {
  auto a2 = run_mckay('a', 2);
  CHECK(a2.cartan == std::vector<std::vector<std::int64_t>>{{2}});
  auto e8 = run_mckay('e', 0);
  CHECK(e8.cartan.size() == 8);
  CHECK(rootsys::cartan_isomorphic(e8.cartan, rootsys::standard_cartan('E', 8)));
  // affine E8: dims 1..6 with the regular-representation null vector
  std::vector<std::size_t> dims = e8.list.dims;
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{1, 2, 2, 3, 3, 4, 4, 5, 6});
  auto g2 = run_mckay('i', 0);
  auto gt = g2.cartan;
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < p; ++q) std::swap(gt[p][q], gt[q][p]);
  CHECK((rootsys::cartan_isomorphic(g2.cartan, rootsys::standard_cartan('G', 2)) ||
         rootsys::cartan_isomorphic(gt, rootsys::standard_cartan('G', 2))));
  // node order is deterministic
  CHECK(run_mckay('e', 0).order == e8.order);
  CHECK(to_json(e8).at("type") == "E8");
}

TEST_CASE("form certificate: symmetrized matrix and null vector") {
  auto f3 = run_mckay('f', 3);
  const auto& l = f3.list;
  const auto& c = f3.matrix.c;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l.size(); ++j)
      CHECK(((i == j ? 2 : 0) - c[i][j]) * static_cast<std::int64_t>(l.m[j]) ==
            ((i == j ? 2 : 0) - c[j][i]) * static_cast<std::int64_t>(l.m[i]));
  // (2 delta - c) kills the dimension vector on the right and dim/m on the left
  for (std::size_t i = 0; i < l.size(); ++i) {
    std::int64_t right = 0, left = 0;
    for (std::size_t j = 0; j < l.size(); ++j) {
      right += ((i == j ? 2 : 0) - c[i][j]) * static_cast<std::int64_t>(l.dims[j]);
      left += static_cast<std::int64_t>(l.dims[j] / l.m[j]) * ((i == j ? 2 : 0) - c[j][i]);
    }
    CHECK(right == 0);
    CHECK(left == 0);
  }
  // a broken matrix fails the report
  McKayMatrix bad = f3.matrix;
  bad.c[1][2] += 1;
  CHECK(!verify_form(bad, l).ok());
  // different seeds sample different vectors but agree on the verdict
  CHECK(verify_form(f3.matrix, l, 200, 7).ok());
}
