#include "langdual/bridges.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"
#include "langdual/repchar.hpp"

namespace langdual::bridges {

using coxeter::Generator;
using lattice::IntMatrix;
using lattice::QmodZ;

namespace {

std::vector<std::size_t> finite_generators(const AffineWeylGroup& g) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < g.generators().size(); ++s)
    if (g.generators()[s].kind == Generator::Kind::Finite) out.push_back(s);
  return out;
}

AffineElement climb(const AffineWeylGroup& g, AffineElement cur, const std::vector<std::size_t>& fin) {
  for (bool moved = true; moved;) {
    moved = false;
    const std::size_t l = g.length(cur);
    for (auto s : fin) {
      AffineElement a = g.left_mul(s, cur), b = g.right_mul(cur, s);
      if (g.length(a) > l) {
        cur = a;
        moved = true;
        break;
      }
      if (g.length(b) > l) {
        cur = b;
        moved = true;
        break;
      }
    }
  }
  return cur;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

IntMatrix weyl_matrix_x(const coxeter::WeylGroup& weyl, const rootsys::RootSystem& rs, std::uint32_t w) {
  IntMatrix m(rs.rank, rs.rank);
  for (std::size_t k = 0; k < rs.rank; ++k) {
    Vec e(rs.rank, 0);
    e[k] = 1;
    Vec col = weyl.act_x(w, e);
    for (std::size_t i = 0; i < rs.rank; ++i) m(i, k) = BigInt(static_cast<long>(col[i]));
  }
  return m;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nlohmann::json vec_json(const Vec& v) { return nlohmann::json(v); }

}  // namespace

AffineElement max_double_coset(const AffineWeylGroup& g, const Vec& lambda) {
  const auto& rs = g.root_system();
  if (lambda.size() != rs.rank) fail(Errc::BadInput, "translation of wrong rank");
  for (auto l : rs.codynkin(lambda))
    if (l < 0) fail(Errc::NotDominant, "translation is not dominant");
  const auto fin = finite_generators(g);
  const AffineElement t = g.translation(lambda);
  const AffineElement top = climb(g, t, fin);
  const std::size_t l = g.length(top);
  for (auto s : fin)
    if (g.length(g.left_mul(s, top)) >= l || g.length(g.right_mul(top, s)) >= l)
      fail(Errc::BadInput, "ascent stopped at a non-maximal element");
  const AffineElement other = climb(g, g.multiply(g.finite(g.weyl().longest()), t), fin);
  if (other != top) fail(Errc::BadInput, "double coset maximum is not unique");
  return top;
}

LaurentPoly poincare_P(KLTable& table) {
  const auto& g = table.group();
  const AffineElement m0 = max_double_coset(g, Vec(g.rank(), 0));
  const auto exp = table.expand(table.c_product(m0, m0));
  if (exp.size() != 1 || exp.begin()->first != m0)
    fail(Errc::UnexpectedSupport, "c_{M_0} c_{M_0} is not a multiple of c_{M_0}");
  const LaurentPoly P = exp.begin()->second;
  if (P.bar() != P) fail(Errc::UnexpectedSupport, "P is not bar-invariant");
  return P;
}

std::size_t spherical_budget(const AffineWeylGroup& g, const Vec& lambda, const Vec& lambda_prime, std::size_t slack) {
  return g.length(max_double_coset(g, lambda)) + g.length(max_double_coset(g, lambda_prime)) + slack;
}

SphericalReport spherical_struct(KLTable& table, const rootsys::RootSystem& primal, const Vec& lambda,
                                 const Vec& lambda_prime) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& g = table.group();
  SphericalReport rep;
  rep.lambda = lambda;
  rep.lambda_prime = lambda_prime;
  rep.ball_radius = table.max_length();
  rep.P = poincare_P(table);
  const AffineElement m = max_double_coset(g, lambda), mp = max_double_coset(g, lambda_prime);
  const auto exp = table.expand(table.c_product(m, mp));
  for (const auto& [z, coeff] : exp) {
    SphericalEntry e;
    e.lambda2 = rootsys::dominant_representative(primal, g.translation_part(z));
    e.element = z;
    if (max_double_coset(g, e.lambda2) != z)
      fail(Errc::UnexpectedSupport, "c-basis term " + g.word_string(z) + " is not of the form M_lambda");
    if (!coeff.divide_exact(rep.P, e.mtilde)) fail(Errc::DivisionInexact, "coefficient is not divisible by P");
    e.constant = e.mtilde.is_constant();
    rep.entries.push_back(std::move(e));
  }
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const SphericalEntry& a, const SphericalEntry& b) { return a.lambda2 < b.lambda2; });
  rep.kl_entries = table.size();
  rep.seconds = seconds_since(t0);
  return rep;
}

BridgeContext::BridgeContext(const rootsys::RootSystem& rs, std::size_t cap, std::optional<std::string> journal)
    : primal_(rs) {
  if (!rootsys::classify_flags(rs).simply_connected)
    fail(Errc::NotSimplyConnected, "tensor multiplicity bridge needs a simply connected root system");
  group_ = std::make_unique<AffineWeylGroup>(rootsys::dual(rs));
  algebra_ = std::make_unique<hecke::HeckeAlgebra>(*group_);
  table_ = std::make_unique<KLTable>(*algebra_, cap, std::move(journal));
}

BridgeReport verify_bridge_x(BridgeContext& ctx, const Vec& lambda, const Vec& lambda_prime) {
  const auto& rs = ctx.primal();
  repchar::dominant_weight(rs, lambda);
  repchar::dominant_weight(rs, lambda_prime);
  BridgeReport rep;
  rep.spherical = spherical_struct(ctx.table(), rs, lambda, lambda_prime);
  const auto oracle = repchar::tensor_decomposition(rs, lambda, lambda_prime);

  rep.tensor_equal = rep.constancy = true;
  BigInt total = 0;
  std::set<Vec> seen;
  for (auto& e : rep.spherical.entries) {
    auto it = oracle.find(e.lambda2);
    e.oracle = it == oracle.end() ? BigInt(0) : it->second;
    e.equal = e.constant && BigInt(static_cast<long>(e.mtilde.coeff(0))) == *e.oracle;
    rep.tensor_equal = rep.tensor_equal && e.equal;
    rep.constancy = rep.constancy && e.constant;
    if (e.constant) total += BigInt(static_cast<long>(e.mtilde.coeff(0))) * repchar::weyl_dimension(rs, e.lambda2);
    seen.insert(e.lambda2);
  }
  for (const auto& [nu, m] : oracle)
    if (!seen.count(nu)) rep.missing.push_back(nu);
  rep.tensor_equal = rep.tensor_equal && rep.missing.empty();
  rep.dimension_ok = rep.constancy && total == repchar::weyl_dimension(rs, lambda) * repchar::weyl_dimension(rs, lambda_prime);

  const auto& g = ctx.dual_group();
  const auto ch = repchar::full_character(rs, lambda);
  std::set<Vec> mus;
  for (const auto& kv : ch.dominant) mus.insert(kv.first);
  mus.insert(lambda_prime);
  const AffineElement top = max_double_coset(g, lambda);
  rep.weights_equal = true;
  for (const auto& mu : mus) {
    WeightCheck w;
    w.mu = mu;
    auto it = ch.dominant.find(mu);
    w.multiplicity = it == ch.dominant.end() ? BigInt(0) : it->second;
    w.kl_at_one = ctx.table().p(max_double_coset(g, mu), top).at_one();
    w.equal = BigInt(static_cast<long>(w.kl_at_one)) == w.multiplicity;
    rep.weights_equal = rep.weights_equal && w.equal;
    rep.weights.push_back(std::move(w));
  }
  return rep;
}

BridgeReport verify_bridge_x(const rootsys::RootSystem& rs, const Vec& lambda, const Vec& lambda_prime,
                             std::size_t slack) {
  repchar::dominant_weight(rs, lambda);
  repchar::dominant_weight(rs, lambda_prime);
  std::size_t cap;
  {
    if (!rootsys::classify_flags(rs).simply_connected)
      fail(Errc::NotSimplyConnected, "tensor multiplicity bridge needs a simply connected root system");
    AffineWeylGroup probe(rootsys::dual(rs));
    cap = spherical_budget(probe, lambda, lambda_prime, slack);
  }
  BridgeContext ctx(rs, cap);
  return verify_bridge_x(ctx, lambda, lambda_prime);
}

std::uint64_t partition_count(std::size_t n) {
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (std::size_t part = 1; part <= n; ++part)
    for (std::size_t k = part; k <= n; ++k) p[k] += p[k - part];
  return p[n];
}

CellCountReport cell_count_check(std::size_t n, std::size_t L, std::size_t threads, std::optional<std::string> journal,
                                 std::size_t window, std::size_t ball_cap) {
  if (n < 2) fail(Errc::BadParameter, "affine type A_{n-1} needs n >= 2");
  AffineWeylGroup group(rootsys::standard_type('A', n - 1, rootsys::Isogeny::SimplyConnected));
  hecke::HeckeAlgebra algebra(group);
  KLTable table(algebra, L + window, std::move(journal));
  const auto cells = hecke::cells_in_ball(table, L, ball_cap, threads, window);
  CellCountReport rep;
  rep.n = n;
  rep.radius = L;
  rep.window = window;
  rep.cells = cells.classes.size();
  for (const auto& c : cells.classes) rep.sizes.push_back(c.size());
  rep.certified = cells.certified;
  rep.partitions = partition_count(n);
  rep.counts_match = rep.cells == rep.partitions;
  rep.all_certified = std::all_of(rep.certified.begin(), rep.certified.end(), [](bool b) { return b; });
  rep.verdict = !rep.all_certified ? "uncertified" : rep.counts_match ? "pass" : "fail";
  rep.cache = table.stats();
  return rep;
}

IntMatrix weyl_matrix_y(const coxeter::WeylGroup& weyl, const rootsys::RootSystem& rs, std::uint32_t w) {
  IntMatrix m(rs.rank, rs.rank);
  for (std::size_t k = 0; k < rs.rank; ++k) {
    Vec e(rs.rank, 0);
    e[k] = 1;
    Vec col = weyl.act_y(w, e);
    for (std::size_t i = 0; i < rs.rank; ++i) m(i, k) = BigInt(static_cast<long>(col[i]));
  }
  return m;
}

std::vector<QmodZ> weyl_act_x(const coxeter::WeylGroup& weyl, const rootsys::RootSystem& rs, std::uint32_t u,
                              const std::vector<QmodZ>& point) {
  const IntMatrix m = weyl_matrix_x(weyl, rs, u);
  std::vector<QmodZ> out(rs.rank);
  for (std::size_t i = 0; i < rs.rank; ++i)
    for (std::size_t k = 0; k < rs.rank; ++k) out[i] = out[i] + point[k].times(m(i, k));
  return out;
}

std::uint32_t parse_weyl_word(const coxeter::WeylGroup& weyl, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::uint32_t w = weyl.identity();
  while (in >> tok) {
    if (tok == "1" || tok == "e") continue;
    std::size_t i = 0;
    if (tok == "s" && weyl.nsimple() == 1) {
      i = 0;
    } else if (tok.size() > 1 && tok[0] == 's' && std::all_of(tok.begin() + 1, tok.end(), ::isdigit)) {
      i = std::stoul(tok.substr(1));
      if (i == 0 || i > weyl.nsimple()) fail(Errc::BadInput, "simple reflection index out of range: " + tok);
      --i;
    } else {
      fail(Errc::BadInput, "bad Weyl word token '" + tok + "'");
    }
    w = weyl.right(w, i);
  }
  return w;
}

long prime_of_prime_power(long q) {
  if (q < 2) fail(Errc::BadParameter, "q must be a prime power >= 2");
  long p = 2;
  while (q % p) ++p;
  long r = q;
  while (r % p == 0) r /= p;
  if (r != 1) fail(Errc::BadParameter, "q = " + std::to_string(q) + " is not a prime power");
  return p;
}

TransportSetup transport_setup(const rootsys::RootSystem& rs, const coxeter::WeylGroup& weyl, std::uint32_t w, long q) {
  prime_of_prime_power(q);
  TransportSetup s;
  s.a = weyl_matrix_y(weyl, rs, w).scaled(BigInt(q)) - IntMatrix::identity(rs.rank);
  s.a_prime = weyl_matrix_x(weyl, rs, weyl.inverse(w)).scaled(BigInt(q)) - IntMatrix::identity(rs.rank);
  if (lattice::transpose_wrt_pairing(s.a, rs.gram) != s.a_prime)
    fail(Errc::BadInput, "q w^-1 - 1 is not the adjoint of q w - 1");
  s.pairing = std::make_unique<lattice::TorusPairing>(s.a, rs.gram);
  return s;
}

DualTorusPoint transport_character(const rootsys::RootSystem& rs, const coxeter::WeylGroup& weyl, std::uint32_t w,
                                   long q, const lattice::Character& theta) {
  const long p = prime_of_prime_power(q);
  auto s = transport_setup(rs, weyl, w, q);
  s.pairing->check_character(theta);
  const BigInt ord = s.pairing->character_order(theta);
  if (ord % p == 0) fail(Errc::CharacteristicDividesOrder, "character order is divisible by the characteristic");
  DualTorusPoint out;
  out.coords = s.pairing->x_kernel_point(s.pairing->dual_character(theta));
  out.w = w;
  out.q = q;
  out.a = s.a;
  out.a_prime = s.a_prime;
  BigInt o = 1;
  for (const auto& c : out.coords) o = lcm(o, c.order());
  out.order = o;
  for (std::size_t i = 0; i < rs.rank; ++i) {
    QmodZ v;
    for (std::size_t k = 0; k < rs.rank; ++k) v = v + out.coords[k].times(out.a_prime(i, k));
    if (!v.is_zero()) fail(Errc::BadInput, "transported point is not killed by A'");
  }
  if (o != ord) fail(Errc::BadInput, "transport changed the character order");
  return out;
}

lattice::Character conjugate_character(const rootsys::RootSystem& rs, const coxeter::WeylGroup& weyl, std::uint32_t w,
                                       std::uint32_t u, long q, const lattice::Character& theta) {
  auto old = transport_setup(rs, weyl, w, q);
  old.pairing->check_character(theta);
  const std::uint32_t wp = weyl.multiply(weyl.multiply(u, w), weyl.inverse(u));
  auto fresh = transport_setup(rs, weyl, wp, q);
  const IntMatrix ui = weyl_matrix_y(weyl, rs, weyl.inverse(u));
  const auto& yg = fresh.pairing->y_group();
  lattice::Character out;
  for (std::size_t j = 0; j < yg.ngens(); ++j) {
    const auto y = ui.apply(yg.representative(yg.generator(j)));
    out.push_back(old.pairing->evaluate(theta, old.pairing->y_group().class_of(y)));
  }
  return out;
}

nlohmann::json to_json(const SphericalReport& r, const AffineWeylGroup& group) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json j{{"lambda2", vec_json(e.lambda2)},
                     {"element", group.word_string(e.element)},
                     {"mtilde", e.mtilde.to_string()},
                     {"constant", e.constant}};
    if (e.oracle) {
      j["oracle"] = lattice::to_json(*e.oracle);
      j["equal"] = e.equal;
    }
    items.push_back(std::move(j));
  }
  return {{"lambda", vec_json(r.lambda)},
          {"mu", vec_json(r.lambda_prime)},
          {"P", r.P.to_string()},
          {"ball_radius", r.ball_radius},
          {"kl_entries", r.kl_entries},
          {"seconds", r.seconds},
          {"terms", items}};
}

nlohmann::json to_json(const BridgeReport& r, const AffineWeylGroup& group) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& c : r.weights)
    w.push_back({{"mu", vec_json(c.mu)}, {"multiplicity", lattice::to_json(c.multiplicity)}, {"kl_at_one", c.kl_at_one}, {"equal", c.equal}});
  nlohmann::json missing = nlohmann::json::array();
  for (const auto& m : r.missing) missing.push_back(vec_json(m));
  return {{"pass", r.pass()},
          {"spherical", to_json(r.spherical, group)},
          {"missing", missing},
          {"tensor_equal", r.tensor_equal},
          {"constancy", r.constancy},
          {"dimension_ok", r.dimension_ok},
          {"weights", w},
          {"weights_equal", r.weights_equal}};
}

nlohmann::json to_json(const CellCountReport& r) {
  return {{"pass", r.verdict == "pass"},
          {"verdict", r.verdict},
          {"n", r.n},
          {"ball", r.radius},
          {"window", r.window},
          {"cells", r.cells},
          {"sizes", r.sizes},
          {"certified", r.certified},
          {"partitions", r.partitions},
          {"counts_match", r.counts_match},
          {"all_certified", r.all_certified}};
}

nlohmann::json to_json(const DualTorusPoint& p) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : p.coords) c.push_back(x.to_string());
  return {{"point", c},
          {"order", lattice::to_json(p.order)},
          {"q", p.q},
          {"A", lattice::to_json(p.a)},
          {"A_prime", lattice::to_json(p.a_prime)}};
}

}  // namespace langdual::bridges
