#include "langdual/repchar.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "langdual/error.hpp"

namespace langdual::repchar {

using lattice::IntMatrix;
using rootsys::RootSystem;

namespace {

Vec add_scaled(Vec a, const Vec& b, std::int64_t k) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

// Shared data for weight computations in one root system.
struct Space {
  const RootSystem& rs;
  rootsys::RootDatum rd;
  std::vector<std::int64_t> c;  // (alpha_i, alpha_j) = c_i A_ij
  IntMatrix adj;
  BigInt det;

  explicit Space(const RootSystem& r) : rs(r) {
    if (rs.nsimple() != rs.rank) fail(Errc::NotSemisimple, "characters need a semisimple root system");
    c = rootsys::validate(rs).c;
    rd = rootsys::enumerate_roots(rs);
    IntMatrix a = rs.cartan_matrix();
    det = a.determinant();
    adj = a.adjugate();
  }

  // Simple-root coordinates of d, which must lie in the root lattice.
  Vec depth(const Vec& d) const {
    auto v = adj.apply(lattice::to_int_vector(rs.dynkin(d)));
    Vec out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!mpz_divisible_p(v[j].get_mpz_t(), det.get_mpz_t()))
        fail(Errc::BadInput, "weight difference is not in the root lattice");
      out[j] = BigInt(v[j] / det).get_si();
    }
    return out;
  }

  std::int64_t height(const Vec& d) const {
    auto n = depth(d);
    std::int64_t h = 0;
    for (auto x : n) h += x;
    return h;
  }

  // (mu, alpha_k) for a positive root k.
  BigInt pair_root(const Vec& labels, std::size_t k) const {
    BigInt s = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) s += BigInt(rd.coords[k][j]) * c[j] * labels[j];
    return s;
  }
};

WeightMap dominant_multiplicities(const Space& sp, const Vec& lambda) {
  const RootSystem& rs = sp.rs;
  dominant_weight(rs, lambda);
  // Dominant weights below lambda, reached by subtracting positive roots.
  std::set<Vec> seen{lambda};
  std::deque<Vec> queue{lambda};
  while (!queue.empty()) {
    Vec mu = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < sp.rd.npos; ++k) {
      Vec nu = add_scaled(mu, sp.rd.roots[k], -1);
      if (rootsys::is_dominant(rs, nu) && seen.insert(nu).second) queue.push_back(nu);
    }
  }
  std::vector<std::pair<std::int64_t, Vec>> order;
  for (const auto& mu : seen) order.emplace_back(sp.height(add_scaled(lambda, mu, -1)), mu);
  std::sort(order.begin(), order.end());

  WeightMap mult;
  const Vec lam_labels = rs.dynkin(lambda);
  auto lookup = [&](const Vec& nu) -> BigInt {
    auto it = mult.find(rootsys::dominant_representative(rs, nu));
    return it == mult.end() ? BigInt(0) : it->second;
  };
  for (const auto& [h, mu] : order) {
    if (h == 0) {
      mult[mu] = 1;
      continue;
    }
    // Freudenthal: ((lambda+rho)^2 - (mu+rho)^2) m(mu) = 2 sum_{a>0} sum_{k>=1} m(mu+ka) (mu+ka, a).
    BigInt num = 0;
    for (std::size_t k = 0; k < sp.rd.npos; ++k) {
      Vec nu = mu;
      for (;;) {
        nu = add_scaled(nu, sp.rd.roots[k], 1);
        BigInt m = lookup(nu);
        if (m == 0) break;  // root strings through weights are unbroken
        num += m * sp.pair_root(rs.dynkin(nu), k);
      }
    }
    num *= 2;
    const Vec n = sp.depth(add_scaled(lambda, mu, -1));
    const Vec mu_labels = rs.dynkin(mu);
    BigInt den = 0;
    for (std::size_t j = 0; j < n.size(); ++j) den += BigInt(n[j]) * sp.c[j] * (lam_labels[j] + mu_labels[j] + 2);
    if (den <= 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
      fail(Errc::NonIntegerMultiplicity, "Freudenthal recursion produced a non-integer multiplicity");
    BigInt m = num / den;
    if (m > 0) mult[mu] = m;
  }
  return mult;
}

std::vector<Vec> orbit(const RootSystem& rs, const Vec& mu) {
  std::set<Vec> seen{mu};
  std::deque<Vec> queue{mu};
  while (!queue.empty()) {
    Vec x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < rs.nsimple(); ++i) {
      Vec y = rs.reflect_x(i, x);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

CharacterMap character(const Space& sp, const Vec& lambda) {
  CharacterMap ch;
  ch.highest = lambda;
  ch.dominant = dominant_multiplicities(sp, lambda);
  for (const auto& [mu, m] : ch.dominant)
    for (const auto& x : orbit(sp.rs, mu)) ch.weights.emplace(x, m);
  return ch;
}

}  // namespace

DominantWeight dominant_weight(const RootSystem& rs, const Vec& x) {
  if (x.size() != rs.rank) fail(Errc::BadInput, "weight of wrong rank");
  DominantWeight d{x, rs.dynkin(x)};
  for (auto l : d.labels)
    if (l < 0) fail(Errc::NotDominant, "weight is not dominant");
  return d;
}

BigInt CharacterMap::dimension() const {
  BigInt s = 0;
  for (const auto& kv : weights) s += kv.second;
  return s;
}

CharacterMap full_character(const RootSystem& rs, const Vec& lambda) {
  Space sp(rs);
  return character(sp, lambda);
}

BigInt weight_multiplicity(const RootSystem& rs, const Vec& lambda, const Vec& mu) {
  Space sp(rs);
  auto mult = dominant_multiplicities(sp, lambda);
  auto it = mult.find(rootsys::dominant_representative(rs, mu));
  return it == mult.end() ? BigInt(0) : it->second;
}

BigInt weyl_dimension(const RootSystem& rs, const Vec& lambda) {
  dominant_weight(rs, lambda);
  Space sp(rs);
  const Vec labels = rs.dynkin(lambda);
  BigInt num = 1, den = 1;
  for (std::size_t k = 0; k < sp.rd.npos; ++k) {
    BigInt a = 0, b = 0;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      a += BigInt(sp.rd.coroot_coords[k][j]) * (labels[j] + 1);
      b += sp.rd.coroot_coords[k][j];
    }
    num *= a;
    den *= b;
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    fail(Errc::NonIntegerMultiplicity, "Weyl dimension formula is not an integer");
  return num / den;
}

WeightMap tensor_decomposition(const RootSystem& rs, const Vec& lambda, const Vec& lambda_prime) {
  dominant_weight(rs, lambda);
  Space sp(rs);
  const auto other = character(sp, lambda_prime);
  const auto A = rs.cartan();
  const std::size_t n = rs.nsimple();
  const Vec lam_labels = rs.dynkin(lambda);
  WeightMap out;
  for (const auto& [mu, m] : other.weights) {
    // nu = lambda + mu + rho in labels; x tracks w(nu) - rho in X.
    Vec nu = rs.dynkin(mu);
    for (std::size_t j = 0; j < n; ++j) nu[j] += lam_labels[j] + 1;
    Vec x = add_scaled(lambda, mu, 1);
    int sign = 1;
    for (bool moved = true; moved;) {
      moved = false;
      for (std::size_t i = 0; i < n; ++i)
        if (nu[i] < 0) {
          const std::int64_t k = nu[i];
          for (std::size_t j = 0; j < n; ++j) nu[j] -= k * A[j][i];
          x = add_scaled(x, rs.roots[i], -k);
          sign = -sign;
          moved = true;
          break;
        }
    }
    if (std::any_of(nu.begin(), nu.end(), [](auto v) { return v == 0; })) continue;
    auto& slot = out[x];
    slot += sign * m;
    if (slot == 0) out.erase(x);
  }
  for (const auto& kv : out)
    if (kv.second < 0) fail(Errc::TableInconsistent, "negative tensor multiplicity");
  return out;
}

WeightMap character_product(const WeightMap& a, const WeightMap& b) {
  WeightMap out;
  for (const auto& [x, m] : a)
    for (const auto& [y, k] : b) {
      auto& slot = out[add_scaled(x, y, 1)];
      slot += m * k;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

WeightMap tensor_decomposition_by_product(const RootSystem& rs, const Vec& lambda, const Vec& lambda_prime) {
  Space sp(rs);
  WeightMap rest = character_product(character(sp, lambda).weights, character(sp, lambda_prime).weights);
  const Vec top = add_scaled(lambda, lambda_prime, 1);
  WeightMap out;
  while (!rest.empty()) {
    const Vec* best = nullptr;
    std::int64_t best_h = 0;
    for (const auto& kv : rest) {
      std::int64_t h = sp.height(add_scaled(top, kv.first, -1));
      if (!best || h < best_h) {
        best = &kv.first;
        best_h = h;
      }
    }
    const Vec nu = *best;
    const BigInt m = rest.at(nu);
    if (m <= 0 || !rootsys::is_dominant(rs, nu))
      fail(Errc::TableInconsistent, "highest remaining weight is not a dominant positive term");
    out[nu] = m;
    for (const auto& [x, k] : character(sp, nu).weights) {
      auto& slot = rest[x];
      slot -= m * k;
      if (slot == 0) rest.erase(x);
    }
  }
  return out;
}

BigInt tensor_multiplicity(const RootSystem& rs, const Vec& lambda, const Vec& lambda_prime, const Vec& lambda_second) {
  dominant_weight(rs, lambda_second);
  auto dec = tensor_decomposition(rs, lambda, lambda_prime);
  auto it = dec.find(lambda_second);
  return it == dec.end() ? BigInt(0) : it->second;
}

bool is_w_invariant(const RootSystem& rs, const WeightMap& weights) {
  for (const auto& [x, m] : weights)
    for (std::size_t i = 0; i < rs.nsimple(); ++i) {
      auto it = weights.find(rs.reflect_x(i, x));
      if (it == weights.end() || it->second != m) return false;
    }
  return true;
}

}  // namespace langdual::repchar
