#include <random>
#include <set>

#include "doctest.h"
#include "langdual/error.hpp"
#include "langdual/lattice.hpp"

using namespace langdual;
using namespace langdual::lattice;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

IntMatrix random_small_det(std::mt19937_64& rng, std::size_t n, long max_det) {
  for (;;) {
    IntMatrix m = random_matrix(rng, n, 4);
    BigInt d = m.determinant();
    if (d != 0 && abs(d) <= max_det) return m;
  }
}

}  // namespace

TEST_CASE("smith form of small matrices") {
  auto one = smith_normal_form(IntMatrix{{1}});
  CHECK(one.D == IntMatrix{{1}});
  CHECK(one.U == IntMatrix{{1}});
  CHECK(one.V == IntMatrix{{1}});

  IntMatrix m{{2, 0}, {0, 3}};
  auto snf = smith_normal_form(m);
  CHECK(snf.D == IntMatrix{{1, 0}, {0, 6}});
  CHECK(verify_snf(snf, m));

  auto zero = smith_normal_form(IntMatrix(2, 2));
  CHECK(zero.D == IntMatrix(2, 2));
  CHECK(zero.rank == 0);
}

TEST_CASE("smith form round trip and determinism on random matrices") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng() % 13) - 6;
    auto a = smith_normal_form(m);
    CHECK(verify_snf(a, m));
    auto b = smith_normal_form(m);
    CHECK(a.U == b.U);
    CHECK(a.V == b.V);
    CHECK(a.D == b.D);
  }
}

TEST_CASE("determinant and adjugate") {
  IntMatrix m{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  CHECK(m.determinant() == 4);
  CHECK(m * m.adjugate() == IntMatrix::identity(3).scaled(4));
  IntMatrix big = IntMatrix::identity(3).scaled(BigInt("100000000000000000000"));
  CHECK(big.determinant() == BigInt("1000000000000000000000000000000000000000000000000000000000000"));
}

TEST_CASE("quotient groups") {
  CHECK(quotient_group(IntMatrix{{1}}).order() == 1);
  CHECK(quotient_group(IntMatrix{{1}}).ngens() == 0);
  auto z2 = quotient_group(IntMatrix{{2}});
  CHECK(z2.invariant_factors() == std::vector<BigInt>{2});
  auto z4 = quotient_group(IntMatrix{{-4}});
  CHECK(z4.invariant_factors() == std::vector<BigInt>{4});
  CHECK_THROWS_AS(quotient_group(IntMatrix{{1, 2}, {2, 4}}), Error);
  try {
    quotient_group(IntMatrix{{0}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularMatrix);
  }
}

TEST_CASE("group element normal forms") {
  auto g = quotient_group(IntMatrix{{2, 0}, {0, 6}});
  CHECK(g.order() == 12);
  auto elems = g.elements();
  CHECK(elems.size() == 12);
  for (const auto& e : elems) {
    CHECK(g.class_of(g.representative(e)) == e);
    CHECK(g.add(e, g.negate(e)) == g.zero());
  }
  auto other = quotient_group(IntMatrix{{3}});
  CHECK_THROWS_AS(g.add(g.zero(), other.zero()), Error);
}

TEST_CASE("transpose with respect to a pairing") {
  CHECK(transpose_wrt_pairing(IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}) == IntMatrix::identity(2));
  CHECK(transpose_wrt_pairing(IntMatrix{{2}}, IntMatrix{{1}}) == IntMatrix{{2}});
  CHECK(transpose_wrt_pairing(IntMatrix{{0, 1}, {1, 0}}, IntMatrix::identity(2)) == IntMatrix{{0, 1}, {1, 0}});
  try {
    transpose_wrt_pairing(IntMatrix{{1}}, IntMatrix{{2}});
    FAIL("expected NonPerfectPairing");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPerfectPairing);
  }
}

TEST_CASE("transpose is an involution for symmetric Gram matrices") {
  std::mt19937_64 rng(11);
  IntMatrix gram{{2, 1}, {1, 1}};
  for (int t = 0; t < 50; ++t) {
    IntMatrix a = random_matrix(rng, 2, 5);
    IntMatrix ap = transpose_wrt_pairing(a, gram);
    CHECK(transpose_wrt_pairing(ap, gram) == a);
    CHECK(ap.determinant() == a.determinant());
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        IntVector y{0, 0}, x{0, 0};
        y[i] = 1;
        x[j] = 1;
        auto lhs = y;
        auto gx = gram.apply(ap.apply(x));
        auto ay = a.apply(y);
        auto gx2 = gram.apply(x);
        BigInt l = lhs[0] * gx[0] + lhs[1] * gx[1];
        BigInt r = ay[0] * gx2[0] + ay[1] * gx2[1];
        CHECK(l == r);
      }
  }
}

TEST_CASE("quotient pairing values") {
  IntMatrix a{{2}};
  IntMatrix g{{1}};
  TorusPairing p(a, g);
  CHECK(p.pair(p.y_group().zero(), p.x_group().generator(0)).is_zero());
  CHECK(p.pair(p.y_group().generator(0), p.x_group().generator(0)) == QmodZ(1, 2));

  IntMatrix d{{2, 0}, {0, 3}};
  TorusPairing q(d, IntMatrix::identity(2));
  auto e1 = q.y_group().class_of({1, 0});
  auto e2 = q.x_group().class_of({0, 1});
  CHECK(q.pair(e1, e2).is_zero());
  CHECK(q.pair(e1, q.x_group().class_of({1, 0})) == QmodZ(1, 2));

  TorusPairing other(IntMatrix{{3}}, IntMatrix{{1}});
  CHECK_THROWS_AS(p.pair(other.y_group().zero(), p.x_group().zero()), Error);
}

TEST_CASE("dual characters") {
  TorusPairing p(IntMatrix{{2}}, IntMatrix{{1}});
  CHECK(p.dual_character({QmodZ()}) == p.x_group().zero());
  CHECK(p.dual_character({QmodZ(1, 2)}) == p.x_group().generator(0));
  try {
    p.dual_character({QmodZ(1, 3)});
    FAIL("expected InvalidCharacter");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidCharacter);
  }

  TorusPairing q(IntMatrix{{2, 0}, {0, 6}}, IntMatrix::identity(2));
  const auto& fac = q.y_group().invariant_factors();
  REQUIRE(fac.size() == 2);
  int count = 0;
  for (long a = 0; a < fac[0]; ++a)
    for (long b = 0; b < fac[1]; ++b) {
      Character theta{QmodZ(a, fac[0]), QmodZ(b, fac[1])};
      auto x = q.dual_character(theta);
      for (const auto& y : q.y_group().elements()) CHECK(q.pair(y, x) == q.evaluate(theta, y));
      CHECK(q.character_of(x) == theta);
      ++count;
    }
  CHECK(count == 12);
}

TEST_CASE("perfect pairing on random matrices") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + t % 3;
    IntMatrix a = random_small_det(rng, n, 200);
    IntMatrix gram = IntMatrix::identity(n);
    if (n == 2) gram = IntMatrix{{1, 1}, {0, 1}};
    TorusPairing p(a, gram);
    CHECK(p.y_group().order() == abs(a.determinant()));
    CHECK(p.x_group().order() == abs(a.determinant()));
    std::set<std::vector<std::string>> seen;
    for (const auto& x : p.x_group().elements()) {
      auto chi = p.character_of(x);
      std::vector<std::string> key;
      for (const auto& c : chi) key.push_back(c.to_string());
      seen.insert(key);
      for (const auto& y : p.y_group().elements()) CHECK(p.pair(y, x) == p.evaluate(chi, y));
      CHECK(p.dual_character(chi) == x);
    }
    CHECK(BigInt(static_cast<unsigned long>(seen.size())) == p.x_group().order());
  }
}

TEST_CASE("pairing is independent of representatives") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int t = 0; t < 10; ++t) {
    std::size_t n = 1 + t % 3;
    IntMatrix a = random_small_det(rng, n, 60);
    TorusPairing p(a, IntMatrix::identity(n));
    IntVector y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = d(rng);
      x[i] = d(rng);
    }
    QmodZ base = p.pair_vectors(y, x);
    for (int s = 0; s < 20; ++s) {
      IntVector u(n), w(n);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = d(rng);
        w[i] = d(rng);
      }
      IntVector au = a.apply(u), aw = p.a_prime().apply(w);
      IntVector y2 = y, x2 = x;
      for (std::size_t i = 0; i < n; ++i) {
        y2[i] += au[i];
        x2[i] += aw[i];
      }
      CHECK(p.pair_vectors(y2, x2) == base);
    }
  }
}

TEST_CASE("kernel points are killed by A") {
  TorusPairing p(IntMatrix{{3, 1}, {1, 2}}, IntMatrix::identity(2));
  for (const auto& y : p.y_group().elements()) {
    auto pt = p.y_kernel_point(y);
    for (std::size_t i = 0; i < 2; ++i) {
      QmodZ s;
      for (std::size_t j = 0; j < 2; ++j) s = s + pt[j].times(p.a()(i, j));
      CHECK(s.is_zero());
    }
  }
}

TEST_CASE("QmodZ text form") {
  CHECK(QmodZ(5, 3).to_string() == "2/3");
  CHECK(QmodZ(-1, 4).to_string() == "3/4");
  CHECK(QmodZ::parse("1/3") == QmodZ(1, 3));
  CHECK(QmodZ::parse("0").is_zero());
}
