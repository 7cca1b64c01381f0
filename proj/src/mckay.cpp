#include "langdual/mckay.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include "langdual/error.hpp"
#include "langdual_character_data.hpp"

namespace langdual::mckay {

namespace {

constexpr const char* kDataFormat = "langdual-binary-polyhedral-characters";
constexpr int kDataVersion = 1;

std::size_t lcm(std::size_t a, std::size_t b) { return a / std::gcd(a, b) * b; }

Cyclotomic one(std::size_t N) { return Cyclotomic(N, 1); }

Matrix2 a_matrix(std::size_t N, std::size_t order) {
  const long k = static_cast<long>(N / order);
  return Matrix2::diag(Cyclotomic::zeta(N, k), Cyclotomic::zeta(N, -k));
}

Matrix2 j_matrix(std::size_t N) {
  Cyclotomic z(N);
  return Matrix2{{z, one(N), -one(N), z}};
}

// Group from an explicit element list; verifies distinctness, det = 1 and
// closure under right multiplication by the generators.
MatrixGroup from_list(std::string name, std::size_t N, std::vector<Matrix2> gens, std::vector<Matrix2> elems) {
  MatrixGroup g;
  g.name = std::move(name);
  g.conductor = N;
  g.generators = std::move(gens);
  g.elements = std::move(elems);
  if (g.elements.empty() || !(g.elements[0] == Matrix2::identity(N))) fail(Errc::BadInput, "group must start with the identity");
  for (std::size_t k = 0; k < g.elements.size(); ++k) {
    if (!g.index.emplace(g.elements[k], k).second) fail(Errc::BadInput, "repeated group element");
    if (g.elements[k].det() != one(N)) fail(Errc::BadInput, "group element with determinant != 1");
  }
  for (const auto& x : g.elements)
    for (const auto& s : g.generators)
      if (!g.contains(x * s)) fail(Errc::BadInput, "element list not closed under multiplication");
  return g;
}

struct ClassData {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
};

// Conjugacy classes as orbits under conjugation by the generators.
ClassData conjugacy_classes(const MatrixGroup& g) {
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  ClassData d;
  d.class_of.assign(g.order(), none);
  std::vector<Matrix2> inv;
  for (const auto& s : g.generators) inv.push_back(s.inverse_sl2());
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (d.class_of[x] != none) continue;
    const std::size_t c = d.classes.size();
    d.classes.push_back({x});
    d.class_of[x] = c;
    for (std::size_t q = 0; q < d.classes[c].size(); ++q) {
      const Matrix2 y = g.elements[d.classes[c][q]];
      for (std::size_t s = 0; s < g.generators.size(); ++s) {
        std::size_t z = g.find(g.generators[s] * y * inv[s]);
        if (d.class_of[z] == none) {
          d.class_of[z] = c;
          d.classes[c].push_back(z);
        }
      }
    }
    std::sort(d.classes[c].begin(), d.classes[c].end());
  }
  return d;
}

MatrixGroup cyclic_group(std::size_t m, std::size_t N, std::vector<std::pair<std::size_t, bool>>* words) {
  Matrix2 a = a_matrix(N, m);
  std::vector<Matrix2> elems;
  Matrix2 x = Matrix2::identity(N);
  for (std::size_t e = 0; e < m; ++e) {
    elems.push_back(x);
    if (words) words->emplace_back(e, false);
    x = x * a;
  }
  return from_list("Z" + std::to_string(m), N, {a}, elems);
}

// Binary dihedral group of order 4k: a of order 2k, j with j^2 = a^k = -1.
MatrixGroup binary_dihedral(std::size_t k, std::size_t N, std::vector<std::pair<std::size_t, bool>>* words) {
  Matrix2 a = a_matrix(N, 2 * k), j = j_matrix(N);
  std::vector<Matrix2> elems;
  Matrix2 x = Matrix2::identity(N);
  for (std::size_t e = 0; e < 2 * k; ++e, x = x * a) {
    elems.push_back(x);
    if (words) words->emplace_back(e, false);
  }
  for (std::size_t e = 0; e < 2 * k; ++e) {
    elems.push_back(elems[e] * j);  // a^e j
    if (words) words->emplace_back(e, true);
  }
  return from_list("BD" + std::to_string(4 * k), N, {a, j}, elems);
}

Matrix2 quaternion_from_json(const nlohmann::json& q, std::size_t M, std::size_t N) {
  if (!q.is_array() || q.size() != 4) fail(Errc::BadInput, "quaternion must have four coordinates");
  std::array<Cyclotomic, 4> c;
  for (std::size_t k = 0; k < 4; ++k) c[k] = cyclotomic_from_json(M, q[k]).embed(N);
  return Matrix2::quaternion(c[0], c[1], c[2], c[3]);
}

const nlohmann::json& exceptional_entry(const std::string& name) {
  const auto& groups = character_data().at("groups");
  if (!groups.contains(name)) fail(Errc::BadInput, "no character data for " + name);
  return groups.at(name);
}

MatrixGroup exceptional_group(const std::string& name, std::size_t N) {
  const auto& e = exceptional_entry(name);
  const std::size_t M = e.at("conductor").get<std::size_t>();
  if (N % M) fail(Errc::BadParameter, "conductor does not contain the data field");
  std::vector<Matrix2> gens;
  for (const auto& q : e.at("generators")) gens.push_back(quaternion_from_json(q, M, N));
  return generate_group(name, N, gens);
}

void check_subgroup(const MatrixGroup& sub, const MatrixGroup& g) {
  for (const auto& x : sub.elements)
    if (!g.contains(x)) fail(Errc::BadInput, sub.name + " is not contained in " + g.name);
}

// Domain of the parameter: every family with n needs n >= 2.
bool has_parameter(char family) { return family == 'a' || family == 'b' || family == 'f' || family == 'g'; }

void check_family(char family, std::size_t n) {
  if (family < 'a' || family > 'i') fail(Errc::BadParameter, std::string("unknown family '") + family + "'");
  if (has_parameter(family) && n < 2) fail(Errc::BadParameter, "family parameter must be n >= 2");
  if (has_parameter(family) && n > 512) fail(Errc::BadParameter, "family parameter too large");
}

std::vector<Cyclotomic> class_values(const CharacterTable& t, const std::vector<Cyclotomic>& per_element) {
  std::vector<Cyclotomic> out;
  for (const auto& cls : t.classes) {
    for (auto x : cls)
      if (per_element[x] != per_element[cls[0]]) fail(Errc::TableInconsistent, "closed-form character is not a class function");
    out.push_back(per_element[cls[0]]);
  }
  return out;
}

bool is_trivial(const std::vector<Cyclotomic>& chi) {
  return std::all_of(chi.begin(), chi.end(), [&](const Cyclotomic& x) { return x == one(x.conductor()); });
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::size_t MatrixGroup::find(const Matrix2& g) const {
  auto it = index.find(g);
  if (it == index.end()) fail(Errc::BadInput, "matrix is not an element of " + name);
  return it->second;
}

MatrixGroup generate_group(std::string name, std::size_t conductor, const std::vector<Matrix2>& generators,
                           std::size_t max_order) {
  std::vector<Matrix2> elems{Matrix2::identity(conductor)};
  std::set<Matrix2> seen(elems.begin(), elems.end());
  for (const auto& s : generators)
    if (s.det() != one(conductor)) fail(Errc::BadInput, "generator with determinant != 1");
  for (std::size_t q = 0; q < elems.size(); ++q)
    for (const auto& s : generators) {
      Matrix2 y = elems[q] * s;
      if (seen.insert(y).second) {
        elems.push_back(y);
        if (elems.size() > max_order) fail(Errc::BadParameter, "generated group exceeds the order limit");
      }
    }
  return from_list(std::move(name), conductor, generators, std::move(elems));
}

std::pair<std::size_t, std::size_t> expected_orders(char family, std::size_t n) {
  check_family(family, n);
  switch (family) {
    case 'a': return {n, n};
    case 'b': return {4 * n, 4 * n};
    case 'c': return {24, 24};
    case 'd': return {48, 48};
    case 'e': return {120, 120};
    case 'f': return {2 * n, 4 * n};
    case 'g': return {4 * n, 8 * n};
    case 'h': return {24, 48};
    default: return {8, 24};
  }
}

std::string expected_type(char family, std::size_t n) {
  check_family(family, n);
  switch (family) {
    case 'a': return "A" + std::to_string(n - 1);
    case 'b': return "D" + std::to_string(n + 2);
    case 'c': return "E6";
    case 'd': return "E7";
    case 'e': return "E8";
    case 'f': return (n == 2 ? "B" : "C") + std::to_string(n);
    case 'g': return "B" + std::to_string(n + 1);
    case 'h': return "F4";
    default: return "G2";
  }
}

FiniteSubgroupPair build_pair(char family, std::size_t n) {
  check_family(family, n);
  FiniteSubgroupPair p;
  p.family = family;
  p.n = has_parameter(family) ? n : 0;
  switch (family) {
    case 'a':
      p.conductor = n;
      p.kind = GammaKind::Cyclic;
      p.kind_param = n;
      p.gamma = cyclic_group(n, n, &p.words);
      p.gamma_prime = p.gamma;
      break;
    case 'b':
      p.conductor = lcm(2 * n, 4);
      p.kind = GammaKind::BinaryDihedral;
      p.kind_param = n;
      p.gamma = binary_dihedral(n, p.conductor, &p.words);
      p.gamma_prime = p.gamma;
      break;
    case 'c':
    case 'd':
    case 'e': {
      const std::string name = family == 'c' ? "2T" : family == 'd' ? "2O" : "2I";
      p.conductor = family == 'c' ? 12 : family == 'd' ? 24 : 60;
      p.kind = GammaKind::Exceptional;
      p.gamma = exceptional_group(name, p.conductor);
      p.gamma_prime = p.gamma;
      break;
    }
    case 'f':
      p.conductor = lcm(2 * n, 4);
      p.kind = GammaKind::Cyclic;
      p.kind_param = 2 * n;
      p.gamma = cyclic_group(2 * n, p.conductor, &p.words);
      p.gamma_prime = binary_dihedral(n, p.conductor, nullptr);
      break;
    case 'g':
      p.conductor = 4 * n;
      p.kind = GammaKind::BinaryDihedral;
      p.kind_param = n;
      p.gamma = binary_dihedral(n, p.conductor, &p.words);
      p.gamma_prime = binary_dihedral(2 * n, p.conductor, nullptr);
      break;
    case 'h':
      p.conductor = 24;
      p.kind = GammaKind::Exceptional;
      p.gamma = exceptional_group("2T", 24);
      p.gamma_prime = exceptional_group("2O", 24);
      break;
    default:
      p.conductor = 12;
      p.kind = GammaKind::BinaryDihedral;
      p.kind_param = 2;
      p.gamma = binary_dihedral(2, 12, &p.words);
      p.gamma_prime = exceptional_group("2T", 12);
      break;
  }
  const auto [og, ogp] = expected_orders(family, n);
  if (p.gamma.order() != og || p.gamma_prime.order() != ogp)
    fail(Errc::BadInput, "group orders do not match the family's order formula");
  check_subgroup(p.gamma, p.gamma_prime);
  // Normality: conjugation by generators of Gamma' preserves Gamma.
  for (const auto& s : p.gamma_prime.generators) {
    const Matrix2 si = s.inverse_sl2();
    for (const auto& x : p.gamma.elements)
      if (!p.gamma.contains(s * x * si)) fail(Errc::BadInput, p.gamma.name + " is not normal in " + p.gamma_prime.name);
  }
  p.quotient_order = ogp / og;
  if (p.quotient_order > 1) {
    // Cyclic quotient: some g' has coset order equal to the index.
    for (std::size_t k = 0; k < p.gamma_prime.order() && !p.g_prime; ++k) {
      const Matrix2& g = p.gamma_prime.elements[k];
      Matrix2 x = g;
      std::size_t e = 1;
      while (!p.gamma.contains(x)) {
        x = x * g;
        ++e;
      }
      if (e == p.quotient_order) p.g_prime = k;
    }
    if (!p.g_prime) fail(Errc::BadInput, "quotient " + p.gamma_prime.name + "/" + p.gamma.name + " is not cyclic");
  }
  return p;
}

std::size_t CharacterTable::degree(std::size_t k) const {
  const Cyclotomic& d = chars.at(k).at(class_of.at(0));
  const BigRat q = d.rational();
  if (q.get_den() != 1 || q <= 0) fail(Errc::TableInconsistent, "character degree is not a positive integer");
  return q.get_num().get_ui();
}

Cyclotomic inner_product(const MatrixGroup& group, const CharacterTable& table, const std::vector<Cyclotomic>& f,
                         const std::vector<Cyclotomic>& g) {
  Cyclotomic s(group.conductor);
  for (std::size_t c = 0; c < table.classes.size(); ++c)
    s += f[c] * g[c].conj() * BigRat(BigInt(static_cast<unsigned long>(table.classes[c].size())));
  BigRat inv(BigInt(1), BigInt(static_cast<unsigned long>(group.order())));
  inv.canonicalize();
  return s * inv;
}

void verify_table(const MatrixGroup& group, const CharacterTable& t) {
  const std::size_t N = group.conductor;
  const std::size_t h = t.classes.size();
  if (t.chars.size() != h) fail(Errc::TableInconsistent, "number of characters differs from number of classes");
  if (h == 0 || !is_trivial(t.chars[0])) fail(Errc::TableInconsistent, "first character is not trivial");
  std::size_t squares = 0;
  for (std::size_t k = 0; k < h; ++k) {
    if (t.chars[k].size() != h) fail(Errc::TableInconsistent, "character row of wrong length");
    const std::size_t d = t.degree(k);
    squares += d * d;
  }
  if (squares != group.order()) fail(Errc::TableInconsistent, "sum of squared degrees differs from the group order");
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i; j < h; ++j)
      if (inner_product(group, t, t.chars[i], t.chars[j]) != Cyclotomic(N, i == j ? 1 : 0))
        fail(Errc::TableInconsistent, "first orthogonality relation fails");
  for (std::size_t a = 0; a < h; ++a)
    for (std::size_t b = a; b < h; ++b) {
      Cyclotomic s(N);
      for (std::size_t k = 0; k < h; ++k) s += t.chars[k][a] * t.chars[k][b].conj();
      BigRat want(0);
      if (a == b) {
        want = BigRat(BigInt(static_cast<unsigned long>(group.order())),
                      BigInt(static_cast<unsigned long>(t.classes[a].size())));
        want.canonicalize();
      }
      if (s != Cyclotomic(N, want)) fail(Errc::TableInconsistent, "second orthogonality relation fails");
    }
}

CharacterTable gamma_character_table(const FiniteSubgroupPair& pair) {
  const MatrixGroup& g = pair.gamma;
  const std::size_t N = pair.conductor;
  CharacterTable t;
  ClassData cd = conjugacy_classes(g);
  t.classes = std::move(cd.classes);
  t.class_of = std::move(cd.class_of);

  if (pair.kind == GammaKind::Cyclic) {
    const std::size_t m = pair.kind_param;
    const long step = static_cast<long>(N / m);
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Cyclotomic> v;
      for (const auto& [e, _] : pair.words) v.push_back(Cyclotomic::zeta(N, step * static_cast<long>(k * e)));
      t.chars.push_back(class_values(t, v));
    }
  } else if (pair.kind == GammaKind::BinaryDihedral) {
    const std::size_t k = pair.kind_param;
    const long step = static_cast<long>(N / (2 * k));
    const Cyclotomic i = Cyclotomic::zeta(N, static_cast<long>(N / 4));
    // Linear characters: chi(a) = eps, chi(j) = eta with eta^2 = eps^k.
    for (int eps : {1, -1}) {
      const bool odd = eps < 0 && k % 2 == 1;
      for (int sign : {1, -1}) {
        const Cyclotomic eta = (odd ? i : one(N)) * BigRat(sign);
        std::vector<Cyclotomic> v;
        for (const auto& [e, has_j] : pair.words) {
          Cyclotomic x = Cyclotomic(N, (eps < 0 && e % 2) ? -1 : 1);
          v.push_back(has_j ? x * eta : x);
        }
        t.chars.push_back(class_values(t, v));
      }
    }
    for (std::size_t h = 1; h < k; ++h) {
      std::vector<Cyclotomic> v;
      for (const auto& [e, has_j] : pair.words) {
        const long x = step * static_cast<long>(h * e);
        v.push_back(has_j ? Cyclotomic(N) : Cyclotomic::zeta(N, x) + Cyclotomic::zeta(N, -x));
      }
      t.chars.push_back(class_values(t, v));
    }
  } else {
    const auto& e = exceptional_entry(g.name);
    const std::size_t M = e.at("conductor").get<std::size_t>();
    const auto& cls = e.at("classes");
    if (cls.size() != t.classes.size()) fail(Errc::TableInconsistent, "class count differs from the data");
    std::vector<std::size_t> data_to_class;
    std::set<std::size_t> hit;
    for (const auto& c : cls) {
      const std::size_t x = g.find(quaternion_from_json(c.at("rep"), M, N));
      const std::size_t k = t.class_of[x];
      if (t.classes[k].size() != c.at("size").get<std::size_t>() || !hit.insert(k).second)
        fail(Errc::TableInconsistent, "data class representatives do not match the group");
      data_to_class.push_back(k);
    }
    for (const auto& ch : e.at("characters")) {
      const auto& vals = ch.at("values");
      if (vals.size() != cls.size()) fail(Errc::TableInconsistent, "character row of wrong length");
      std::vector<Cyclotomic> row(t.classes.size());
      for (std::size_t c = 0; c < vals.size(); ++c) row[data_to_class[c]] = cyclotomic_from_json(M, vals[c]).embed(N);
      if (row[t.class_of[0]] != Cyclotomic(N, ch.at("degree").get<long>()))
        fail(Errc::TableInconsistent, "character degree differs from its value at 1");
      t.chars.push_back(std::move(row));
    }
  }
  auto triv = std::find_if(t.chars.begin(), t.chars.end(), is_trivial);
  if (triv == t.chars.end()) fail(Errc::TableInconsistent, "no trivial character");
  std::rotate(t.chars.begin(), triv, triv + 1);
  verify_table(g, t);
  return t;
}

IndecomposableList clifford_indecomposables(const FiniteSubgroupPair& pair, const CharacterTable& t) {
  const std::size_t h = t.chars.size();
  std::vector<std::size_t> perm(h);
  std::iota(perm.begin(), perm.end(), 0);
  if (pair.g_prime) {
    const Matrix2& g = pair.gamma_prime.elements[*pair.g_prime];
    const Matrix2 gi = g.inverse_sl2();
    // chi^{g'}(x) = chi(g' x g'^-1), evaluated on class representatives
    std::vector<std::size_t> cls(t.classes.size());
    for (std::size_t c = 0; c < cls.size(); ++c)
      cls[c] = t.class_of[pair.gamma.find(g * pair.gamma.elements[t.classes[c][0]] * gi)];
    for (std::size_t k = 0; k < h; ++k) {
      std::vector<Cyclotomic> conj;
      for (std::size_t c = 0; c < cls.size(); ++c) conj.push_back(t.chars[k][cls[c]]);
      auto it = std::find(t.chars.begin(), t.chars.end(), conj);
      if (it == t.chars.end()) fail(Errc::TableInconsistent, "conjugate character missing from the table");
      perm[k] = static_cast<std::size_t>(it - t.chars.begin());
    }
  }
  IndecomposableList out;
  std::vector<bool> used(h, false);
  for (std::size_t k = 0; k < h; ++k) {
    if (used[k]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t x = k; !used[x]; x = perm[x]) {
      used[x] = true;
      orbit.push_back(x);
    }
    std::sort(orbit.begin(), orbit.end());
    std::vector<Cyclotomic> sum(t.classes.size(), Cyclotomic(pair.conductor));
    for (auto x : orbit)
      for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += t.chars[x][c];
    out.dims.push_back(t.degree(orbit[0]) * orbit.size());
    for (auto x : orbit)
      if (t.degree(x) != t.degree(orbit[0])) fail(Errc::TableInconsistent, "orbit members of different degree");
    out.m.push_back(orbit.size());
    out.members.push_back(std::move(orbit));
    out.values.push_back(std::move(sum));
  }
  out.i0 = 0;  // the trivial character is chars[0] and is fixed
  if (out.m[0] != 1) fail(Errc::TableInconsistent, "trivial character is not fixed by conjugation");
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i; j < out.size(); ++j)
      if (inner_product(pair.gamma, t, out.values[i], out.values[j]) !=
          Cyclotomic(pair.conductor, i == j ? static_cast<long>(out.m[i]) : 0))
        fail(Errc::TableInconsistent, "orbit sums are not orthogonal");
  return out;
}

McKayMatrix mckay_matrix(const FiniteSubgroupPair& pair, const CharacterTable& t, const IndecomposableList& list) {
  McKayMatrix mat;
  for (const auto& cls : t.classes) mat.sigma.push_back(pair.gamma.elements[cls[0]].trace());
  const std::size_t r = list.size();
  mat.c.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Cyclotomic> prod;
    for (std::size_t c = 0; c < mat.sigma.size(); ++c) prod.push_back(list.values[i][c] * mat.sigma[c]);
    std::vector<Cyclotomic> rebuilt(prod.size(), Cyclotomic(pair.conductor));
    for (std::size_t j = 0; j < r; ++j) {
      const Cyclotomic ip = inner_product(pair.gamma, t, prod, list.values[j]);
      if (!ip.is_rational()) fail(Errc::NonIntegerMultiplicity, "McKay multiplicity is not rational");
      BigRat q = ip.rational() / BigRat(BigInt(static_cast<unsigned long>(list.m[j])));
      if (q.get_den() != 1 || q < 0) fail(Errc::NonIntegerMultiplicity, "McKay multiplicity is not a natural number");
      mat.c[i][j] = q.get_num().get_si();
      for (std::size_t c = 0; c < prod.size(); ++c) rebuilt[c] += list.values[j][c] * q;
    }
    if (rebuilt != prod) fail(Errc::TableInconsistent, "rho_i (x) sigma is not the sum of its McKay terms");
  }
  return mat;
}

std::vector<std::size_t> node_order(const McKayMatrix& mat, const IndecomposableList& list) {
  const std::size_t r = list.size();
  std::vector<bool> seen(r, false);
  std::deque<std::size_t> queue{list.i0};
  seen[list.i0] = true;
  std::vector<std::size_t> order;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (x != list.i0) order.push_back(x);
    for (std::size_t y = 0; y < r; ++y)
      if (!seen[y] && (mat.c[x][y] > 0 || mat.c[y][x] > 0)) {
        seen[y] = true;
        queue.push_back(y);
      }
  }
  if (order.size() + 1 != r) fail(Errc::TableInconsistent, "McKay graph is not connected");
  return order;
}

std::vector<std::vector<std::int64_t>> cartan_from_mckay(const McKayMatrix& mat, const IndecomposableList& list) {
  const auto order = node_order(mat, list);
  std::vector<std::vector<std::int64_t>> a(order.size(), std::vector<std::int64_t>(order.size()));
  for (std::size_t p = 0; p < order.size(); ++p)
    for (std::size_t q = 0; q < order.size(); ++q) a[p][q] = (p == q ? 2 : 0) - mat.c[order[p]][order[q]];
  return a;
}

rootsys::RootSystem to_root_system(const McKayMatrix& mat, const IndecomposableList& list) {
  const auto order = node_order(mat, list);
  const auto a = cartan_from_mckay(mat, list);
  const std::size_t r = a.size();
  // (A_pq m_q) must be symmetric positive definite.
  lattice::IntMatrix s(r, r);
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t q = 0; q < r; ++q) s(p, q) = BigInt(static_cast<long>(a[p][q])) * static_cast<unsigned long>(list.m[order[q]]);
  if (s != s.transpose()) fail(Errc::NotSymmetrizable, "(A_ij m_j) is not symmetric");
  for (const auto& d : s.leading_minors())
    if (d <= 0) fail(Errc::NotPositiveDefinite, "(A_ij m_j) is not positive definite");
  auto rs = rootsys::from_cartan(a, rootsys::Isogeny::SimplyConnected, lattice::IntMatrix::identity(r));
  rootsys::validate(rs);
  rs.label = rootsys::identify_type(a);
  return rs;
}

FormReport verify_form(const McKayMatrix& mat, const IndecomposableList& list, std::size_t trials, std::uint64_t seed,
                       std::int64_t bound) {
  const std::size_t r = list.size();
  FormReport rep;
  std::vector<std::vector<std::int64_t>> b(r, std::vector<std::int64_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      b[i][j] = ((i == j ? 2 : 0) - mat.c[i][j]) * static_cast<std::int64_t>(list.m[j]);
  rep.symmetric = true;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rep.symmetric = rep.symmetric && b[i][j] == b[j][i];

  std::int64_t g = 0;
  for (std::size_t i = 0; i < r; ++i) {
    rep.null.push_back(static_cast<std::int64_t>(list.dims[i] / list.m[i]));
    g = std::gcd(g, rep.null.back());
  }
  for (auto& x : rep.null) x /= g;
  // r^T (2 delta - c) = 0, equivalently [i, r] = 0 for all i.
  rep.null_vector = true;
  for (std::size_t j = 0; j < r; ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < r; ++i) s += rep.null[i] * ((i == j ? 2 : 0) - mat.c[i][j]);
    rep.null_vector = rep.null_vector && s == 0;
  }

  auto form = [&](const std::vector<std::int64_t>& x) {
    std::int64_t q = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) q += x[i] * b[i][j] * x[j];
    return q;
  };
  auto proportional = [&](const std::vector<std::int64_t>& x) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (x[i] * rep.null[j] != x[j] * rep.null[i]) return false;
    return true;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  std::vector<std::vector<std::int64_t>> samples;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::int64_t> x(r);
    for (auto& v : x) v = dist(rng);
    if (t % 2) x[list.i0] = 0;  // half the samples live on I
    samples.push_back(std::move(x));
  }
  for (std::int64_t k = -2; k <= 2; ++k) {
    std::vector<std::int64_t> x = rep.null;
    for (auto& v : x) v *= k;
    samples.push_back(x);
    x[list.i0] += 1;
    samples.push_back(std::move(x));
  }
  rep.samples_nonnegative = rep.radical_ok = true;
  for (const auto& x : samples) {
    const std::int64_t q = form(x);
    ++rep.samples;
    if (q < 0) rep.samples_nonnegative = false;
    if (q == 0) {
      ++rep.zeros;
      if (!proportional(x)) rep.radical_ok = false;
      if (x[list.i0] == 0 && std::any_of(x.begin(), x.end(), [](auto v) { return v != 0; })) rep.radical_ok = false;
    }
  }
  return rep;
}

McKayResult run_mckay(char family, std::size_t n, std::uint64_t seed) {
  McKayResult r;
  r.pair = build_pair(family, n);
  r.table = gamma_character_table(r.pair);
  r.list = clifford_indecomposables(r.pair, r.table);
  r.matrix = mckay_matrix(r.pair, r.table, r.list);
  r.order = node_order(r.matrix, r.list);
  r.cartan = cartan_from_mckay(r.matrix, r.list);
  r.root_system = to_root_system(r.matrix, r.list);
  r.type = r.root_system.label;
  r.form = verify_form(r.matrix, r.list, 100, seed);
  return r;
}

nlohmann::json to_json(const McKayResult& r) {
  nlohmann::json j;
  j["family"] = std::string(1, r.pair.family);
  if (r.pair.n) j["n"] = r.pair.n;
  j["gamma"] = {{"name", r.pair.gamma.name}, {"order", r.pair.gamma.order()}};
  j["gamma_prime"] = {{"name", r.pair.gamma_prime.name}, {"order", r.pair.gamma_prime.order()}};
  j["conductor"] = r.pair.conductor;
  j["classes"] = r.table.classes.size();
  nlohmann::json ind = nlohmann::json::array();
  for (std::size_t i = 0; i < r.list.size(); ++i)
    ind.push_back({{"members", r.list.members[i]}, {"m", r.list.m[i]}, {"dim", r.list.dims[i]}});
  j["indecomposables"] = ind;
  j["i0"] = r.list.i0;
  j["mckay"] = r.matrix.c;
  j["node_order"] = r.order;
  j["cartan"] = r.cartan;
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t p = 0; p < r.cartan.size(); ++p)
    for (std::size_t q = p + 1; q < r.cartan.size(); ++q)
      if (r.cartan[p][q] != 0) edges.push_back({{"i", p}, {"j", q}, {"a_ij", r.cartan[p][q]}, {"a_ji", r.cartan[q][p]}});
  j["diagram"] = {{"nodes", r.cartan.size()}, {"edges", edges}};
  j["type"] = r.type;
  j["expected_type"] = expected_type(r.pair.family, r.pair.n ? r.pair.n : 2);
  j["form"] = {{"symmetric", r.form.symmetric},
               {"null_vector", r.form.null_vector},
               {"null", r.form.null},
               {"samples", r.form.samples},
               {"zeros", r.form.zeros},
               {"samples_nonnegative", r.form.samples_nonnegative},
               {"radical_ok", r.form.radical_ok}};
  j["root_system"] = rootsys::to_json(r.root_system);
  return j;
}

std::string data_checksum(const nlohmann::json& groups) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : groups.dump()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return hex64(h);
}

nlohmann::json parse_character_data(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail(Errc::BadInput, "character data is not a JSON object");
  if (j.value("format", "") != kDataFormat) fail(Errc::BadInput, "character data has the wrong format tag");
  if (!j.contains("version") || j["version"] != kDataVersion) fail(Errc::BadInput, "unsupported character data version");
  if (!j.contains("groups") || !j["groups"].is_object()) fail(Errc::BadInput, "character data has no groups");
  if (j.value("checksum", "") != data_checksum(j["groups"])) fail(Errc::TableInconsistent, "character data checksum mismatch");
  return j;
}

const nlohmann::json& character_data() {
  static const nlohmann::json data = parse_character_data(kCharacterDataJson);
  return data;
}

}  // namespace langdual::mckay
