#include "langdual/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"

namespace langdual::rootsys {

using lattice::BigInt;
using lattice::BigRat;

namespace {

std::int64_t checked(const BigInt& b) {
  if (!b.fits_slong_p()) fail(Errc::Overflow, "value exceeds 64 bits");
  return b.get_si();
}

Vec add_scaled(Vec a, const Vec& b, std::int64_t k) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

lattice::IntVector big(const Vec& v) {
  lattice::IntVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

// Columns are the given vectors.
IntMatrix columns(const std::vector<Vec>& vs, std::size_t rows) {
  IntMatrix m(rows, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = static_cast<long>(vs[j][i]);
  return m;
}

std::vector<std::vector<std::size_t>> cartan_components(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  std::vector<int> seen(n, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] >= 0) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> q{s};
    seen[s] = static_cast<int>(comps.size());
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop_front();
      comp.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && seen[j] < 0 && (a[i][j] != 0 || a[j][i] != 0)) {
          seen[j] = static_cast<int>(comps.size());
          q.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace

// ---------------------------------------------------------------- RootSystem

std::int64_t RootSystem::pair(const Vec& y, const Vec& x) const {
  BigInt s = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < rank; ++j)
      if (x[j] != 0) s += BigInt(static_cast<long>(y[i])) * gram(i, j) * static_cast<long>(x[j]);
  }
  return checked(s);
}

std::vector<std::vector<std::int64_t>> RootSystem::cartan() const {
  const std::size_t n = nsimple();
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = pair(coroots[i], roots[j]);
  return a;
}

IntMatrix RootSystem::cartan_matrix() const { return IntMatrix::from_rows(cartan()); }

Vec RootSystem::dynkin(const Vec& x) const {
  Vec out(nsimple());
  for (std::size_t i = 0; i < nsimple(); ++i) out[i] = pair(coroots[i], x);
  return out;
}

Vec RootSystem::codynkin(const Vec& y) const {
  Vec out(nsimple());
  for (std::size_t i = 0; i < nsimple(); ++i) out[i] = pair(y, roots[i]);
  return out;
}

Vec RootSystem::reflect_x(std::size_t i, const Vec& x) const {
  return add_scaled(x, roots.at(i), -pair(coroots[i], x));
}

Vec RootSystem::reflect_y(std::size_t i, const Vec& y) const {
  return add_scaled(y, coroots.at(i), -pair(y, roots[i]));
}

std::uint64_t RootSystem::fingerprint() const {
  std::ostringstream os;
  os << rank << '|' << gram.to_string() << '|';
  for (const auto& v : coroots) {
    for (auto x : v) os << x << ',';
    os << ';';
  }
  os << '|';
  for (const auto& v : roots) {
    for (auto x : v) os << x << ',';
    os << ';';
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// ---------------------------------------------------------------- validate

ValidationCertificate validate(const RootSystem& rs) {
  const std::size_t n = rs.nsimple();
  if (rs.gram.rows() != rs.rank || rs.gram.cols() != rs.rank) fail(Errc::BadInput, "Gram matrix has wrong shape");
  if (rs.coroots.size() != n) fail(Errc::BadInput, "coroot and root counts differ");
  for (std::size_t i = 0; i < n; ++i)
    if (rs.coroots[i].size() != rs.rank || rs.roots[i].size() != rs.rank)
      fail(Errc::BadInput, "vector of wrong rank");
  if (n > rs.rank) fail(Errc::BadInput, "more simple roots than the rank");

  BigInt det = rs.gram.determinant();
  if (det != 1 && det != -1) fail(Errc::PairingNotPerfect, "|det G| = " + BigInt(abs(det)).get_str());

  auto a = rs.cartan();
  for (std::size_t i = 0; i < n; ++i)
    if (a[i][i] != 2) fail(Errc::DiagonalNotTwo, "<coroot_" + std::to_string(i + 1) + ", root_" +
                                                     std::to_string(i + 1) + "> = " + std::to_string(a[i][i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && a[i][j] > 0)
        fail(Errc::OffDiagonalPositive, "A[" + std::to_string(i) + "][" + std::to_string(j) + "] > 0");

  // c_i A_ij = c_j A_ji, propagated along the Cartan graph.
  std::vector<BigRat> c(n, BigRat(0));
  for (const auto& comp : cartan_components(a)) {
    c[comp.front()] = 1;
    std::deque<std::size_t> q{comp.front()};
    std::vector<bool> done(n, false);
    done[comp.front()] = true;
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || (a[i][j] == 0 && a[j][i] == 0)) continue;
        if (a[i][j] == 0 || a[j][i] == 0) fail(Errc::NotSymmetrizable, "A_ij = 0 but A_ji != 0");
        if (!done[j]) {
          BigRat ratio(BigInt(static_cast<long>(a[i][j])), BigInt(static_cast<long>(a[j][i])));
          ratio.canonicalize();
          c[j] = c[i] * ratio;
          c[j].canonicalize();
          done[j] = true;
          q.push_back(j);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] * a[i][j] != c[j] * a[j][i]) fail(Errc::NotSymmetrizable, "no symmetrizing vector exists");

  // Smallest integer representative on each component.
  std::vector<std::int64_t> ci(n);
  for (const auto& comp : cartan_components(a)) {
    BigInt l = 1;
    for (auto i : comp) l = lcm(l, c[i].get_den());
    BigInt g = 0;
    for (auto i : comp) g = gcd(g, BigInt(c[i].get_num() * (l / c[i].get_den())));
    for (auto i : comp) ci[i] = checked(BigInt(c[i].get_num() * (l / c[i].get_den()) / g));
  }

  IntMatrix sym(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym(i, j) = static_cast<long>(ci[i] * a[i][j]);
  auto minors = sym.leading_minors();
  for (std::size_t k = 0; k < minors.size(); ++k)
    if (minors[k] <= 0)
      fail(Errc::NotPositiveDefinite, "leading minor " + std::to_string(k + 1) + " = " + minors[k].get_str());
  return ValidationCertificate{ci};
}

RootSystem dual(const RootSystem& rs) {
  RootSystem d;
  d.rank = rs.rank;
  d.gram = rs.gram.transpose();
  d.coroots = rs.roots;
  d.roots = rs.coroots;
  if (!rs.label.empty()) d.label = rs.label + "*";
  return d;
}

// ---------------------------------------------------------------- roots

std::int64_t RootDatum::height(std::size_t k) const {
  std::int64_t h = 0;
  for (auto c : coords.at(k)) h += c;
  return h;
}

std::size_t RootDatum::index_of(const Vec& x) const {
  auto it = lookup_.find(x);
  if (it == lookup_.end()) fail(Errc::BadInput, "vector is not a root");
  return it->second;
}

RootDatum enumerate_roots(const RootSystem& rs, std::size_t cap) {
  const std::size_t n = rs.nsimple();
  const auto a = rs.cartan();
  RootDatum rd;
  rd.nsimple = n;

  // Parallel closure on (root coordinates, coroot coordinates).
  std::map<Vec, Vec> found;
  std::deque<Vec> queue;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    found.emplace(e, e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    Vec c = queue.front();
    queue.pop_front();
    const Vec d = found.at(c);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t ci = 0, di = 0;
      for (std::size_t j = 0; j < n; ++j) {
        ci += a[i][j] * c[j];
        di += d[j] * a[j][i];
      }
      Vec c2 = c, d2 = d;
      c2[i] -= ci;
      d2[i] -= di;
      auto it = found.find(c2);
      if (it == found.end()) {
        if (found.size() >= cap) fail(Errc::NonTermination, "root closure exceeded the iteration cap");
        found.emplace(c2, d2);
        queue.push_back(c2);
      } else if (it->second != d2) {
        fail(Errc::BadInput, "root/coroot bijection is not well defined");
      }
    }
  }

  std::vector<std::pair<Vec, Vec>> pos;
  for (const auto& [c, d] : found) {
    bool nonneg = std::all_of(c.begin(), c.end(), [](auto x) { return x >= 0; });
    bool nonpos = std::all_of(c.begin(), c.end(), [](auto x) { return x <= 0; });
    if (!nonneg && !nonpos) fail(Errc::BadInput, "root with mixed-sign coordinates");
    if (nonneg) pos.emplace_back(c, d);
  }
  if (pos.size() * 2 != found.size()) fail(Errc::BadInput, "R+ and R- have different sizes");
  std::sort(pos.begin(), pos.end(), [](const auto& l, const auto& r) {
    auto hl = std::accumulate(l.first.begin(), l.first.end(), std::int64_t{0});
    auto hr = std::accumulate(r.first.begin(), r.first.end(), std::int64_t{0});
    if (hl != hr) return hl < hr;
    return l.first > r.first;
  });
  rd.npos = pos.size();
  rd.coords.resize(2 * rd.npos);
  rd.coroot_coords.resize(2 * rd.npos);
  for (std::size_t k = 0; k < rd.npos; ++k) {
    rd.coords[k] = pos[k].first;
    rd.coroot_coords[k] = pos[k].second;
    Vec nc = pos[k].first, nd = pos[k].second;
    for (auto& x : nc) x = -x;
    for (auto& x : nd) x = -x;
    rd.coords[k + rd.npos] = nc;
    rd.coroot_coords[k + rd.npos] = nd;
  }
  for (std::size_t k = 0; k < rd.size(); ++k) {
    Vec x(rs.rank, 0), y(rs.rank, 0);
    for (std::size_t j = 0; j < n; ++j) {
      x = add_scaled(x, rs.roots[j], rd.coords[k][j]);
      y = add_scaled(y, rs.coroots[j], rd.coroot_coords[k][j]);
    }
    rd.roots.push_back(x);
    rd.coroots.push_back(y);
    rd.lookup_.emplace(x, k);
  }
  if (rd.lookup_.size() != rd.size()) fail(Errc::BadInput, "distinct roots collapse in X");

  std::map<Vec, std::size_t> by_coords;
  for (std::size_t k = 0; k < rd.size(); ++k) by_coords.emplace(rd.coords[k], k);
  rd.simple.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    rd.simple[i] = by_coords.at(e);
  }
  rd.reflection.assign(n, std::vector<std::size_t>(rd.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < rd.size(); ++k) {
      Vec c = rd.coords[k];
      std::int64_t ci = 0;
      for (std::size_t j = 0; j < n; ++j) ci += a[i][j] * c[j];
      c[i] -= ci;
      rd.reflection[i][k] = by_coords.at(c);
    }

  rd.components = cartan_components(a);
  rd.component_of.assign(n, 0);
  for (std::size_t ci = 0; ci < rd.components.size(); ++ci)
    for (auto i : rd.components[ci]) rd.component_of[i] = ci;
  for (const auto& comp : rd.components) {
    std::size_t best = rd.npos;
    std::int64_t best_h = -1;
    for (std::size_t k = 0; k < rd.npos; ++k) {
      bool inside = true;
      for (std::size_t j = 0; j < n; ++j)
        if (rd.coords[k][j] != 0 && std::find(comp.begin(), comp.end(), j) == comp.end()) inside = false;
      if (inside && rd.height(k) > best_h) {
        best_h = rd.height(k);
        best = k;
      }
    }
    rd.highest.push_back(best);
    rd.r_min.push_back(best + rd.npos);
  }
  // Minimality: nothing in R lies below an element of R_min.
  for (auto m : rd.r_min)
    for (std::size_t k = 0; k < rd.size(); ++k) {
      if (k == m) continue;
      bool below = true;
      for (std::size_t j = 0; j < n; ++j)
        if (rd.coords[m][j] - rd.coords[k][j] < 0) below = false;
      if (below) fail(Errc::BadInput, "R_min element is not minimal");
    }
  return rd;
}

bool root_coordinates(const RootSystem& rs, const Vec& x, Vec& out) {
  const std::size_t n = rs.nsimple();
  if (x.size() != rs.rank) fail(Errc::BadInput, "weight of wrong rank");
  IntMatrix a = rs.cartan_matrix();
  BigInt det = a.determinant();
  if (det == 0) fail(Errc::SingularMatrix, "Cartan matrix is singular");
  lattice::IntVector c = a.adjugate().apply(big(rs.dynkin(x)));
  out.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!mpz_divisible_p(c[j].get_mpz_t(), det.get_mpz_t())) return false;
    out[j] = checked(BigInt(c[j] / det));
  }
  Vec back(rs.rank, 0);
  for (std::size_t j = 0; j < n; ++j) back = add_scaled(back, rs.roots[j], out[j]);
  return back == x;
}

bool dominance_leq(const RootSystem& rs, const Vec& lambda, const Vec& lambda_prime) {
  Vec diff(rs.rank);
  for (std::size_t i = 0; i < rs.rank; ++i) diff[i] = lambda_prime[i] - lambda[i];
  Vec c;
  if (!root_coordinates(rs, diff, c)) return false;
  return std::all_of(c.begin(), c.end(), [](auto v) { return v >= 0; });
}

Flags classify_flags(const RootSystem& rs) {
  Flags f;
  const std::size_t n = rs.nsimple();
  f.semisimple = n == rs.rank;
  if (f.semisimple) {
    BigInt dc = columns(rs.coroots, rs.rank).determinant();
    BigInt dr = columns(rs.roots, rs.rank).determinant();
    f.simply_connected = dc == 1 || dc == -1;
    f.adjoint = dr == 1 || dr == -1;
  }
  f.irreducible = n > 0 && cartan_components(rs.cartan()).size() == 1;
  return f;
}

// ---------------------------------------------------------------- fixtures

std::vector<std::vector<std::int64_t>> standard_cartan(char letter, std::size_t n) {
  auto bad = [&] { fail(Errc::UnknownType, std::string(1, letter) + std::to_string(n)); };
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  auto chain = [&](std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      a[i][i] = 2;
      if (i + 1 < len) a[i][i + 1] = a[i + 1][i] = -1;
    }
  };
  switch (letter) {
    case 'A':
      if (n < 1) bad();
      chain(n);
      break;
    case 'B':
      if (n < 2) bad();
      chain(n);
      a[n - 1][n - 2] = -2;
      break;
    case 'C':
      if (n < 2) bad();
      chain(n);
      a[n - 2][n - 1] = -2;
      break;
    case 'D':
      if (n < 4) bad();
      chain(n - 1);
      a[n - 1][n - 1] = 2;
      a[n - 2][n - 3] = a[n - 3][n - 2] = -1;
      a[n - 1][n - 3] = a[n - 3][n - 1] = -1;
      a[n - 2][n - 1] = a[n - 1][n - 2] = 0;
      break;
    case 'E': {
      if (n < 6 || n > 8) bad();
      // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
      for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
      auto link = [&](std::size_t i, std::size_t j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (std::size_t i = 4; i < n; ++i) link(i, i + 1);
      break;
    }
    case 'F':
      if (n != 4) bad();
      a = {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
      break;
    case 'G':
      if (n != 2) bad();
      a = {{2, -1}, {-3, 2}};
      break;
    default:
      bad();
  }
  return a;
}

RootSystem from_cartan(const std::vector<std::vector<std::int64_t>>& cartan, Isogeny isogeny,
                       const IntMatrix& gram) {
  const std::size_t n = cartan.size();
  if (gram.rows() != n || gram.cols() != n) fail(Errc::BadInput, "Gram matrix must match the Cartan size");
  RootSystem rs;
  rs.rank = n;
  rs.gram = gram;
  IntMatrix a = IntMatrix::from_rows(cartan);
  IntMatrix ginv = lattice::inverse_unimodular(gram);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    if (isogeny == Isogeny::SimplyConnected) {
      rs.coroots.push_back(e);
    } else {
      rs.roots.push_back(e);
    }
  }
  if (isogeny == Isogeny::SimplyConnected) {
    // e_i^T G alpha_j = A_ij, so alpha_j = G^{-1} A e_j.
    IntMatrix r = ginv * a;
    for (std::size_t j = 0; j < n; ++j) {
      Vec col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = checked(r(i, j));
      rs.roots.push_back(col);
    }
  } else {
    // coroot_i^T G e_j = A_ij, so coroot_i = G^{-T} A^T e_i.
    IntMatrix r = ginv.transpose() * a.transpose();
    for (std::size_t i = 0; i < n; ++i) {
      Vec col(n);
      for (std::size_t k = 0; k < n; ++k) col[k] = checked(r(k, i));
      rs.coroots.push_back(col);
    }
  }
  return rs;
}

RootSystem direct_sum(const RootSystem& a, const RootSystem& b) {
  RootSystem s;
  s.rank = a.rank + b.rank;
  s.gram = IntMatrix(s.rank, s.rank);
  for (std::size_t i = 0; i < a.rank; ++i)
    for (std::size_t j = 0; j < a.rank; ++j) s.gram(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < b.rank; ++i)
    for (std::size_t j = 0; j < b.rank; ++j) s.gram(a.rank + i, a.rank + j) = b.gram(i, j);
  auto pad = [&](const Vec& v, bool first) {
    Vec out(s.rank, 0);
    for (std::size_t i = 0; i < v.size(); ++i) out[(first ? 0 : a.rank) + i] = v[i];
    return out;
  };
  for (std::size_t i = 0; i < a.nsimple(); ++i) {
    s.coroots.push_back(pad(a.coroots[i], true));
    s.roots.push_back(pad(a.roots[i], true));
  }
  for (std::size_t i = 0; i < b.nsimple(); ++i) {
    s.coroots.push_back(pad(b.coroots[i], false));
    s.roots.push_back(pad(b.roots[i], false));
  }
  s.label = a.label + "x" + b.label;
  return s;
}

RootSystem standard_type(char letter, std::size_t n, Isogeny isogeny) {
  RootSystem rs = from_cartan(standard_cartan(letter, n), isogeny, IntMatrix::identity(n));
  rs.label = std::string(1, letter) + std::to_string(n);
  return rs;
}

RootSystem standard_types(const std::string& name, Isogeny isogeny) {
  static const std::regex part(R"(([A-Ga-g])_?([0-9]+))");
  RootSystem out;
  bool first = true;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t stop = name.find_first_of("xX*", start);
    if (stop == std::string::npos) stop = name.size();
    std::string piece = name.substr(start, stop - start);
    std::smatch m;
    if (!std::regex_match(piece, m, part)) fail(Errc::UnknownType, "cannot parse type '" + name + "'");
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
    std::size_t n = std::stoul(m[2].str());
    RootSystem rs = standard_type(letter, n, isogeny);
    out = first ? rs : direct_sum(out, rs);
    first = false;
    start = stop + 1;
  }
  return out;
}

// ---------------------------------------------------------------- types

namespace {

std::string identify_component(const std::vector<std::vector<std::int64_t>>& a,
                               const std::vector<std::size_t>& comp) {
  const std::size_t n = comp.size();
  auto bond = [&](std::size_t i, std::size_t j) { return a[comp[i]][comp[j]] * a[comp[j]][comp[i]]; };
  std::vector<std::size_t> degree(n, 0);
  std::size_t edges = 0, doubles = 0, triples = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto b = bond(i, j);
      if (b == 0) continue;
      if (b > 3) fail(Errc::UnknownType, "bond of multiplicity > 3");
      ++degree[i];
      ++degree[j];
      ++edges;
      if (b == 2) ++doubles;
      if (b == 3) ++triples;
    }
  if (edges + 1 != n) fail(Errc::UnknownType, "Dynkin graph is not a tree");
  std::size_t max_deg = n == 0 ? 0 : *std::max_element(degree.begin(), degree.end());
  if (triples) {
    if (n != 2) fail(Errc::UnknownType, "triple bond outside G2");
    return "G2";
  }
  if (doubles) {
    if (doubles > 1 || max_deg > 2) fail(Errc::UnknownType, "unrecognized non-simply-laced graph");
    if (n == 2) return "B2";
    for (std::size_t l = 0; l < n; ++l) {
      if (degree[l] != 1) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (k != l && bond(l, k) == 2) {
          // A_{lk} = -2 means the end node l carries the short root.
          return std::string(a[comp[l]][comp[k]] == -2 ? "B" : "C") + std::to_string(n);
        }
    }
    if (n == 4) return "F4";
    fail(Errc::UnknownType, "double bond in the middle of a long chain");
  }
  if (max_deg <= 2) return "A" + std::to_string(n);
  if (max_deg > 3) fail(Errc::UnknownType, "node of degree > 3");
  std::size_t center = 0;
  std::size_t branch_nodes = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] == 3) {
      center = i;
      ++branch_nodes;
    }
  if (branch_nodes != 1) fail(Errc::UnknownType, "more than one branch node");
  std::vector<std::size_t> arms;
  for (std::size_t s = 0; s < n; ++s) {
    if (s == center || bond(center, s) == 0) continue;
    std::size_t len = 1, prev = center, cur = s;
    for (;;) {
      std::size_t next = n;
      for (std::size_t t = 0; t < n; ++t)
        if (t != prev && t != cur && bond(cur, t) != 0) next = t;
      if (next == n) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return "E" + std::to_string(n);
  fail(Errc::UnknownType, "unrecognized simply-laced graph");
}

}  // namespace

std::string identify_type(const std::vector<std::vector<std::int64_t>>& cartan) {
  std::string out;
  for (const auto& comp : cartan_components(cartan)) {
    if (!out.empty()) out += "x";
    out += identify_component(cartan, comp);
  }
  return out;
}

bool cartan_isomorphic(const std::vector<std::vector<std::int64_t>>& a,
                       const std::vector<std::vector<std::int64_t>>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return false;
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      bool ok = a[i][i] == b[t][t];
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = a[i][k] == b[t][perm[k]] && a[k][i] == b[perm[k]][t];
      if (!ok) continue;
      used[t] = true;
      perm[i] = t;
      if (extend(i + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  return extend(0);
}

// ---------------------------------------------------------------- weights

Vec weight_from_dynkin(const RootSystem& rs, const Vec& labels) {
  const std::size_t n = rs.nsimple();
  if (labels.size() != n) fail(Errc::BadInput, "expected " + std::to_string(n) + " Dynkin labels");
  // M x = labels with M = C^T G, solved through the Smith form of M.
  IntMatrix m = columns(rs.coroots, rs.rank).transpose() * rs.gram;
  auto snf = lattice::smith_normal_form(m);
  lattice::IntVector ub = snf.U.apply(big(labels));
  lattice::IntVector z(rs.rank, BigInt(0));
  for (std::size_t p = 0; p < n; ++p) {
    const BigInt& d = snf.D(p, p);
    if (d == 0 || !mpz_divisible_p(ub[p].get_mpz_t(), d.get_mpz_t()))
      fail(Errc::BadInput, "labels are not attained by an element of X");
    z[p] = ub[p] / d;
  }
  lattice::IntVector x = snf.V.apply(z);
  Vec out(rs.rank);
  for (std::size_t i = 0; i < rs.rank; ++i) out[i] = checked(x[i]);
  return out;
}

bool is_dominant(const RootSystem& rs, const Vec& x) {
  auto d = rs.dynkin(x);
  return std::all_of(d.begin(), d.end(), [](auto v) { return v >= 0; });
}

Vec dominant_representative(const RootSystem& rs, const Vec& x, std::size_t* steps) {
  Vec cur = x;
  std::size_t count = 0;
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < rs.nsimple(); ++i)
      if (rs.pair(rs.coroots[i], cur) < 0) {
        cur = rs.reflect_x(i, cur);
        ++count;
        moved = true;
        break;
      }
    if (!moved) break;
  }
  if (steps) *steps = count;
  return cur;
}

Vec dominant_representative_y(const RootSystem& rs, const Vec& y) {
  Vec cur = y;
  for (;;) {
    bool moved = false;
    for (std::size_t i = 0; i < rs.nsimple(); ++i)
      if (rs.pair(cur, rs.roots[i]) < 0) {
        cur = rs.reflect_y(i, cur);
        moved = true;
        break;
      }
    if (!moved) return cur;
  }
}

// ---------------------------------------------------------------- JSON

RootSystem from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(Errc::BadInput, "root system JSON must be an object");
  Isogeny iso = Isogeny::SimplyConnected;
  if (j.contains("isogeny")) {
    if (!j["isogeny"].is_string()) fail(Errc::BadInput, "isogeny must be \"sc\" or \"ad\"");
    auto s = j["isogeny"].get<std::string>();
    if (s == "sc") iso = Isogeny::SimplyConnected;
    else if (s == "ad") iso = Isogeny::Adjoint;
    else fail(Errc::BadInput, "isogeny must be \"sc\" or \"ad\"");
  }
  if (j.contains("type")) {
    if (!j["type"].is_string()) fail(Errc::BadInput, "type must be a string");
    return standard_types(j["type"].get<std::string>(), iso);
  }
  if (j.contains("roots") || j.contains("coroots")) {
    // Explicit coordinates, the shape to_json writes.
    if (!j.contains("roots") || !j.contains("coroots") || !j.contains("gram"))
      fail(Errc::BadInput, "explicit input needs \"gram\", \"roots\" and \"coroots\"");
    RootSystem rs;
    rs.gram = lattice::matrix_from_json(j["gram"]);
    if (!rs.gram.is_square()) fail(Errc::BadInput, "Gram matrix must be square");
    BigInt d = rs.gram.determinant();
    if (d != 1 && d != -1) fail(Errc::PairingNotPerfect, "|det G| must be 1");
    rs.rank = rs.gram.rows();
    auto vecs = [&](const char* key) {
      const auto& a = j[key];
      if (!a.is_array()) fail(Errc::BadInput, std::string(key) + " must be an array of vectors");
      std::vector<Vec> out;
      for (const auto& v : a) {
        if (!v.is_array() || v.size() != rs.rank) fail(Errc::BadInput, std::string(key) + ": vector of wrong length");
        Vec x;
        for (const auto& e : v) {
          if (!e.is_number_integer()) fail(Errc::BadInput, std::string(key) + ": entries must be integers");
          x.push_back(e.get<std::int64_t>());
        }
        out.push_back(std::move(x));
      }
      return out;
    };
    rs.roots = vecs("roots");
    rs.coroots = vecs("coroots");
    if (rs.roots.size() != rs.coroots.size()) fail(Errc::BadInput, "roots and coroots differ in number");
    if (j.contains("label") && j["label"].is_string()) rs.label = j["label"].get<std::string>();
    validate(rs);
    return rs;
  }
  if (!j.contains("cartan")) fail(Errc::BadInput, "need \"type\", \"cartan\" or explicit roots");
  IntMatrix a = lattice::matrix_from_json(j["cartan"]);
  if (!a.is_square()) fail(Errc::BadInput, "Cartan matrix must be square");
  IntMatrix g = j.contains("gram") ? lattice::matrix_from_json(j["gram"]) : IntMatrix::identity(a.rows());
  BigInt d = g.determinant();
  if (d != 1 && d != -1) fail(Errc::PairingNotPerfect, "|det G| must be 1");
  RootSystem rs = from_cartan(a.to_int64(), iso, g);
  validate(rs);
  return rs;
}

nlohmann::json to_json(const RootSystem& rs) {
  nlohmann::json j;
  if (!rs.label.empty()) j["label"] = rs.label;
  j["rank"] = rs.rank;
  j["gram"] = lattice::to_json(rs.gram);
  j["coroots"] = rs.coroots;
  j["roots"] = rs.roots;
  j["cartan"] = rs.cartan();
  return j;
}

nlohmann::json to_json(const RootDatum& rd) {
  nlohmann::json j;
  j["count"] = rd.size();
  j["positive"] = rd.npos;
  nlohmann::json pos = nlohmann::json::array();
  for (std::size_t k = 0; k < rd.npos; ++k)
    pos.push_back({{"root", rd.roots[k]}, {"coroot", rd.coroots[k]}, {"coords", rd.coords[k]}});
  j["positive_roots"] = pos;
  nlohmann::json rmin = nlohmann::json::array();
  for (auto k : rd.r_min) rmin.push_back(rd.roots[k]);
  j["r_min"] = rmin;
  return j;
}

}  // namespace langdual::rootsys
