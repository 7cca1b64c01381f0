#include "langdual/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "langdual/bridges.hpp"
#include "langdual/error.hpp"
#include "langdual/hecke.hpp"
#include "langdual/lattice.hpp"
#include "langdual/mckay.hpp"
#include "langdual/rootsys.hpp"

namespace langdual::acceptance {

namespace {

using Clock = std::chrono::steady_clock;
using coxeter::AffineElement;
using coxeter::AffineElementHash;
using coxeter::AffineWeylGroup;
using lattice::BigInt;
using lattice::IntMatrix;
using lattice::QmodZ;
using rootsys::Isogeny;
using rootsys::Vec;

// Wall-clock budgets, in seconds, one per criterion.
constexpr double kBridgeBudget = 300;
constexpr double kMcKayBudget = 120;
constexpr double kCellsBudget = 600;
constexpr double kTorusBudget = 120;
constexpr double kPropertyBudget = 300;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

nlohmann::json vec_json(const Vec& v) { return nlohmann::json(v); }

void finish(CriterionResult& r, Clock::time_point t0) {
  r.seconds = since(t0);
  if (r.seconds > r.budget_seconds) {
    r.pass = false;
    r.summary += "; over the time budget";
  }
}

CriterionResult failed(int id, std::string name, double budget, const std::exception& e) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.budget_seconds = budget;
  r.pass = false;
  r.summary = std::string("error: ") + e.what();
  r.details = {{"error", e.what()}};
  return r;
}

// ---------------------------------------------------------------------------
// Criteria 1-3

struct BoxCase {
  const char* type;
  std::vector<Vec> labels;  // Dynkin labels of the box weights
};

}  // namespace

std::vector<CriterionResult> bridge_criteria(const Options& opt) {
  const auto t0 = Clock::now();
  std::vector<CriterionResult> out(3);
  out[0].id = 1;
  out[0].name = "bridge-x-equality";
  out[1].id = 2;
  out[1].name = "constancy";
  out[2].id = 3;
  out[2].name = "kl-weight-identity";
  for (auto& r : out) r.budget_seconds = kBridgeBudget;

  const std::vector<BoxCase> cases = {{"A1", {{1}, {2}, {3}}}, {"A2", {{1, 0}, {0, 1}, {1, 1}}}};
  std::size_t pairs = 0, terms = 0, terms_equal = 0, terms_constant = 0, weight_checks = 0, weights_equal = 0;
  bool equal_ok = true, constant_ok = true, weights_ok = true;
  nlohmann::json items = nlohmann::json::array();
  try {
    for (const auto& bc : cases) {
      auto rs = rootsys::standard_types(bc.type, Isogeny::SimplyConnected);
      std::vector<Vec> box;
      for (const auto& l : bc.labels) box.push_back(rootsys::weight_from_dynkin(rs, l));
      std::size_t cap = 0;
      {
        AffineWeylGroup probe(rootsys::dual(rs));
        for (const auto& l : box)
          for (const auto& m : box) cap = std::max(cap, bridges::spherical_budget(probe, l, m));
      }
      bridges::BridgeContext ctx(rs, cap, opt.journal);
      for (const auto& l : box)
        for (const auto& m : box) {
          auto rep = bridges::verify_bridge_x(ctx, l, m);
          ++pairs;
          for (const auto& e : rep.spherical.entries) {
            ++terms;
            terms_equal += e.equal;
            terms_constant += e.constant;
          }
          for (const auto& w : rep.weights) {
            ++weight_checks;
            weights_equal += w.equal;
          }
          equal_ok = equal_ok && rep.tensor_equal && rep.missing.empty() && rep.dimension_ok;
          constant_ok = constant_ok && rep.constancy;
          weights_ok = weights_ok && rep.weights_equal;
          nlohmann::json decomposition = nlohmann::json::array();
          for (const auto& e : rep.spherical.entries)
            decomposition.push_back({{"mu", vec_json(rs.dynkin(e.lambda2))},
                                     {"mtilde", e.mtilde.to_string()},
                                     {"mult", e.oracle ? lattice::to_json(*e.oracle) : nlohmann::json()}});
          items.push_back({{"type", bc.type},
                           {"lambda", vec_json(rs.dynkin(l))},
                           {"mu", vec_json(rs.dynkin(m))},
                           {"decomposition", decomposition},
                           {"tensor_equal", rep.tensor_equal},
                           {"constancy", rep.constancy},
                           {"weights_equal", rep.weights_equal}});
        }
    }
  } catch (const std::exception& e) {
    std::vector<CriterionResult> bad;
    for (const auto& r : out) bad.push_back(failed(r.id, r.name, r.budget_seconds, e));
    return bad;
  }
  out[0].pass = equal_ok && pairs == 18 && terms > 0 && terms_equal == terms;
  out[0].summary = std::to_string(pairs) + " pairs, " + std::to_string(terms_equal) + "/" + std::to_string(terms) +
                   " structure constants equal the tensor multiplicities";
  out[0].details = {{"pairs", items}};
  out[1].pass = constant_ok && terms > 0 && terms_constant == terms;
  out[1].summary = std::to_string(terms_constant) + "/" + std::to_string(terms) + " structure constants are constants";
  out[1].details = {{"terms", terms}, {"constant", terms_constant}};
  out[2].pass = weights_ok && weight_checks > 0 && weights_equal == weight_checks;
  out[2].summary = std::to_string(weights_equal) + "/" + std::to_string(weight_checks) +
                   " weight multiplicities equal p(1)";
  out[2].details = {{"checks", weight_checks}, {"equal", weights_equal}};
  for (auto& r : out) finish(r, t0);
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4

CriterionResult mckay_criterion(const Options& opt) {
  const auto t0 = Clock::now();
  CriterionResult r;
  r.id = 4;
  r.name = "mckay-construction";
  r.budget_seconds = kMcKayBudget;
  const std::vector<std::pair<char, std::size_t>> runs = {
      {'a', 2}, {'a', 3}, {'a', 4}, {'a', 5}, {'b', 2}, {'c', 0}, {'d', 0}, {'e', 0},
      {'f', 2}, {'f', 3}, {'g', 2}, {'g', 3}, {'h', 0}, {'i', 0}};
  constexpr std::size_t kTrials = 100;
  bool ok = true;
  std::size_t good = 0;
  nlohmann::json items = nlohmann::json::array();
  for (const auto& [family, n] : runs) {
    nlohmann::json item{{"family", std::string(1, family)}, {"n", n}};
    try {
      auto res = mckay::run_mckay(family, n, opt.seed);
      const auto expected = mckay::expected_type(family, n);
      const auto flags = rootsys::classify_flags(res.root_system);
      rootsys::validate(res.root_system);
      const bool type_ok = rootsys::cartan_isomorphic(
          res.cartan, rootsys::standard_types(expected, Isogeny::SimplyConnected).cartan());
      const bool sample_count = res.form.samples >= kTrials;
      const bool pass = type_ok && flags.simply_connected && flags.irreducible && res.form.ok() && sample_count;
      item["type"] = res.type;
      item["expected_type"] = expected;
      item["simply_connected"] = flags.simply_connected;
      item["irreducible"] = flags.irreducible;
      item["samples"] = res.form.samples;
      item["zeros"] = res.form.zeros;
      item["radical"] = res.form.null;
      item["form_ok"] = res.form.ok();
      item["pass"] = pass;
      good += pass;
      ok = ok && pass;
    } catch (const std::exception& e) {
      item["error"] = e.what();
      item["pass"] = false;
      ok = false;
    }
    items.push_back(std::move(item));
  }
  r.pass = ok;
  r.summary = std::to_string(good) + "/" + std::to_string(runs.size()) +
              " pairs give the classified root system with a semidefinite form";
  r.details = {{"runs", items}};
  finish(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 5

CriterionResult cells_criterion(const Options& opt) {
  const auto t0 = Clock::now();
  CriterionResult r;
  r.id = 5;
  r.name = "cell-counting";
  r.budget_seconds = kCellsBudget;
  try {
    auto a1 = bridges::cell_count_check(2, 10, opt.threads, opt.journal, opt.window);
    auto a2 = bridges::cell_count_check(3, 12, opt.threads, opt.journal, opt.window);
    const bool ok1 = a1.cells == 2 && a1.partitions == 2 && a1.all_certified && a1.verdict == "pass";
    const bool ok2 = a2.cells == 3 && a2.partitions == 3 && a2.all_certified && a2.verdict == "pass";
    r.pass = ok1 && ok2;
    std::ostringstream s;
    s << "A1~ ball 10: " << a1.cells << " cells (" << a1.verdict << "), p(2) = " << a1.partitions
      << "; A2~ ball 12: " << a2.cells << " cells (" << a2.verdict << "), p(3) = " << a2.partitions;
    r.summary = s.str();
    r.details = {{"A1~", bridges::to_json(a1)}, {"A2~", bridges::to_json(a2)}};
  } catch (const std::exception& e) {
    return failed(5, "cell-counting", kCellsBudget, e);
  }
  finish(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 6

namespace {

bool killed_by(const IntMatrix& m, const std::vector<QmodZ>& point) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    QmodZ v;
    for (std::size_t k = 0; k < m.cols(); ++k) v = v + point[k].times(m(i, k));
    if (!v.is_zero()) return false;
  }
  return true;
}

BigInt point_order(const std::vector<QmodZ>& point) {
  BigInt o = 1;
  for (const auto& c : point) {
    BigInt g;
    mpz_lcm(g.get_mpz_t(), o.get_mpz_t(), c.order().get_mpz_t());
    o = g;
  }
  return o;
}

std::string point_key(const std::vector<QmodZ>& p) {
  std::string s;
  for (const auto& c : p) s += c.to_string() + ",";
  return s;
}

std::string character_key(const lattice::Character& t) { return point_key(t); }

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  IntMatrix g = IntMatrix::identity(n);
  if (n < 2) return g;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int step = 0; step < 4; ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const BigInt c = coeff(rng);
    for (std::size_t k = 0; k < n; ++k) g(i, k) += c * g(j, k);
  }
  return g;
}

struct PairingCheck {
  bool perfect = true;
  bool transport_ok = true;
  std::size_t characters = 0;
};

// Exhaustive over X/A'X: the character map is injective and inverted by
// dual_character, orders agree, kernel points are killed by A' and A.
PairingCheck check_pairing(const lattice::TorusPairing& tp, const BigInt& det) {
  PairingCheck c;
  const auto& xg = tp.x_group();
  const auto& yg = tp.y_group();
  if (xg.order() != det || yg.order() != det) c.perfect = false;
  std::set<std::string> seen;
  for (const auto& x : xg.elements(1u << 12)) {
    auto theta = tp.character_of(x);
    tp.check_character(theta);
    ++c.characters;
    if (!seen.insert(character_key(theta)).second) c.perfect = false;
    if (tp.dual_character(theta) != x) c.perfect = false;
    const BigInt ord = tp.character_order(theta);
    if (ord != xg.element_order(x)) c.perfect = false;
    const auto point = tp.x_kernel_point(tp.dual_character(theta));
    if (!killed_by(tp.a_prime(), point) || point_order(point) != ord) c.transport_ok = false;
  }
  for (const auto& y : yg.elements(1u << 12)) {
    const auto point = tp.y_kernel_point(y);
    if (!killed_by(tp.a(), point) || point_order(point) != yg.element_order(y)) c.transport_ok = false;
  }
  if (BigInt(seen.size()) != xg.order()) c.perfect = false;
  return c;
}

}  // namespace

CriterionResult torus_criterion(const Options& opt) {
  const auto t0 = Clock::now();
  CriterionResult r;
  r.id = 6;
  r.name = "torus-duality";
  r.budget_seconds = kTorusBudget;
  constexpr std::size_t kMatrices = 50;
  constexpr long kMaxDet = 200;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> rank_dist(1, 3), entry(-6, 6);
  std::size_t perfect = 0, transported = 0, characters = 0;
  nlohmann::json items = nlohmann::json::array();
  try {
    while (items.size() < kMatrices) {
      const std::size_t n = static_cast<std::size_t>(rank_dist(rng));
      IntMatrix a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
      const BigInt det = abs(a.determinant());
      if (det == 0 || det > kMaxDet) continue;
      const IntMatrix gram = items.size() % 2 ? random_unimodular(n, rng) : IntMatrix::identity(n);
      lattice::TorusPairing tp(a, gram);
      auto c = check_pairing(tp, det);
      perfect += c.perfect;
      transported += c.transport_ok;
      characters += c.characters;
      items.push_back({{"a", lattice::to_json(a)}, {"gram", lattice::to_json(gram)}, {"order", lattice::to_json(det)},
                       {"perfect", c.perfect}, {"kernel_and_order", c.transport_ok}});
    }
    // transport_character on Frobenius-twisted tori A = q w - 1.
    std::size_t tori = 0, tori_ok = 0;
    for (const char* name : {"A1", "A2", "B2", "G2"}) {
      auto rs = rootsys::standard_types(name, Isogeny::SimplyConnected);
      auto rd = rootsys::enumerate_roots(rs);
      coxeter::WeylGroup weyl(rs, rd);
      for (std::uint32_t w = 0; w < weyl.size(); ++w)
        for (long q : {2L, 3L, 4L, 5L}) {
          auto setup = bridges::transport_setup(rs, weyl, w, q);
          const auto& xg = setup.pairing->x_group();
          if (xg.order() > kMaxDet) continue;
          ++tori;
          bool ok = true;
          std::set<std::string> points;
          for (const auto& x : xg.elements()) {
            auto theta = setup.pairing->character_of(x);
            auto pt = bridges::transport_character(rs, weyl, w, q, theta);
            ok = ok && pt.order == setup.pairing->character_order(theta) && killed_by(setup.a_prime, pt.coords);
            points.insert(point_key(pt.coords));
          }
          ok = ok && BigInt(points.size()) == xg.order();
          tori_ok += ok;
        }
    }
    r.pass = perfect == kMatrices && transported == kMatrices && tori == tori_ok && tori > 0;
    r.summary = std::to_string(perfect) + "/" + std::to_string(kMatrices) + " random pairings perfect, " +
                std::to_string(transported) + "/" + std::to_string(kMatrices) + " transports order-preserving in the kernel (" +
                std::to_string(characters) + " characters); " + std::to_string(tori_ok) + "/" + std::to_string(tori) +
                " q w - 1 tori transported bijectively";
    r.details = {{"matrices", items}, {"tori", tori}, {"tori_ok", tori_ok}, {"characters", characters}};
  } catch (const std::exception& e) {
    return failed(6, "torus-duality", kTorusBudget, e);
  }
  finish(r, t0);
  return r;
}

// ---------------------------------------------------------------------------
// Criterion 7

namespace {

// Word length in the generators S and Omega (Omega steps cost 0), by 0-1 BFS
// up to radius L. Returns false unless it reproduces ball(L) with lengths.
bool word_length_matches(const AffineWeylGroup& g, std::size_t L, std::size_t& checked) {
  std::unordered_map<AffineElement, std::size_t, AffineElementHash> dist;
  std::deque<AffineElement> queue{g.identity()};
  dist[g.identity()] = 0;
  while (!queue.empty()) {
    const AffineElement x = queue.front();
    queue.pop_front();
    const std::size_t d = dist.at(x);
    for (const auto& om : g.omega()) {
      const auto y = g.multiply(x, om);
      auto it = dist.find(y);
      if (it == dist.end() || it->second > d) {
        dist[y] = d;
        queue.push_front(y);
      }
    }
    if (d == L) continue;
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      const auto y = g.right_mul(x, s);
      auto it = dist.find(y);
      if (it == dist.end() || it->second > d + 1) {
        dist[y] = d + 1;
        queue.push_back(y);
      }
    }
  }
  const auto ball = g.ball(L);
  if (ball.size() != dist.size()) return false;
  for (const auto& e : ball) {
    auto it = dist.find(e);
    if (it == dist.end() || it->second != g.length(e)) return false;
    ++checked;
  }
  return true;
}

hecke::HeckeElement random_element(const hecke::HeckeAlgebra& alg, const std::vector<AffineElement>& ball,
                                   std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3), n(1, 3);
  hecke::HeckeElement h(alg.root_system());
  for (int i = n(rng); i > 0; --i) h.add(ball[pick(rng)], LaurentPoly::monomial(e(rng), c(rng)));
  return h;
}

}  // namespace

CriterionResult property_criterion(const Options& opt) {
  const auto t0 = Clock::now();
  CriterionResult r;
  r.id = 7;
  r.name = "hecke-coxeter-properties";
  r.budget_seconds = kPropertyBudget;
  nlohmann::json details;
  try {
    // IM length against word length, rank <= 2, L = 8.
    std::size_t length_checked = 0;
    bool lengths = true;
    for (const char* name : {"A1", "A2", "B2", "G2", "A1xA1"})
      for (auto iso : {Isogeny::SimplyConnected, Isogeny::Adjoint}) {
        AffineWeylGroup g(rootsys::standard_types(name, iso));
        lengths = word_length_matches(g, 8, length_checked) && lengths;
      }
    details["length"] = {{"pass", lengths}, {"elements", length_checked}};

    // Bar invariance, degree bound and support of every cached c_z.
    std::size_t cached = 0;
    bool kl = true;
    struct KLCase {
      const char* name;
      Isogeny iso;
      std::size_t L;
    };
    for (const auto& kc : {KLCase{"A1", Isogeny::SimplyConnected, 10}, KLCase{"A2", Isogeny::SimplyConnected, 7},
                           KLCase{"B2", Isogeny::SimplyConnected, 7}, KLCase{"G2", Isogeny::SimplyConnected, 7},
                           KLCase{"A2", Isogeny::Adjoint, 6}, KLCase{"A1xA1", Isogeny::Adjoint, 5}}) {
      AffineWeylGroup g(rootsys::standard_types(kc.name, kc.iso));
      hecke::HeckeAlgebra alg(g);
      hecke::KLTable table(alg, kc.L);
      table.fill(g.ball(kc.L), opt.threads);
      for (const auto& z : table.elements()) {
        kl = table.verify_bar_invariant(z) && table.verify_shape(z) && kl;
        ++cached;
      }
    }
    details["kl"] = {{"pass", kl}, {"entries", cached}};

    // l(a^{y1} a^{y2}) = l(a^{y1}) + l(a^{y2}) for dominant y1, y2.
    std::size_t dominant_pairs = 0;
    bool additive = true;
    for (const char* name : {"A2", "B2", "G2", "A3", "B3"}) {
      auto rs = rootsys::standard_types(name, Isogeny::SimplyConnected);
      AffineWeylGroup g(rs);
      std::vector<Vec> dom;
      Vec c(rs.rank, 0);
      for (;;) {
        const auto labels = rs.codynkin(c);
        if (std::all_of(labels.begin(), labels.end(), [](auto v) { return v >= 0; })) dom.push_back(c);
        std::size_t i = 0;
        while (i < rs.rank && ++c[i] > 3) c[i++] = 0;
        if (i == rs.rank) break;
      }
      for (const auto& a : dom)
        for (const auto& b : dom) {
          auto ta = g.translation(a), tb = g.translation(b);
          additive = additive && g.length(g.multiply(ta, tb)) == g.length(ta) + g.length(tb);
          ++dominant_pairs;
        }
    }
    details["dominant_additivity"] = {{"pass", additive}, {"pairs", dominant_pairs}};

    // (h1 h2) h3 = h1 (h2 h3) for random elements supported in ball(4).
    std::size_t triples = 0;
    bool assoc = true;
    std::mt19937_64 rng(opt.seed);
    for (const char* name : {"A1", "A2", "B2", "G2", "A1xA1"}) {
      AffineWeylGroup g(rootsys::standard_types(name, Isogeny::SimplyConnected));
      hecke::HeckeAlgebra alg(g);
      const auto ball = g.ball(4);
      for (int i = 0; i < 50; ++i) {
        auto a = random_element(alg, ball, rng), b = random_element(alg, ball, rng), c = random_element(alg, ball, rng);
        assoc = assoc && alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c));
        ++triples;
      }
    }
    details["associativity"] = {{"pass", assoc}, {"triples", triples}};

    r.pass = lengths && kl && additive && assoc;
    r.summary = "length on " + std::to_string(length_checked) + " elements, " + std::to_string(cached) +
                " KL entries, " + std::to_string(dominant_pairs) + " dominant pairs, " + std::to_string(triples) +
                " associativity triples";
    r.details = details;
  } catch (const std::exception& e) {
    return failed(7, "hecke-coxeter-properties", kPropertyBudget, e);
  }
  finish(r, t0);
  return r;
}

std::vector<CriterionResult> run_primary(const Options& opt,
                                         const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  auto emit = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  for (auto& r : bridge_criteria(opt)) emit(std::move(r));
  emit(mckay_criterion(opt));
  emit(cells_criterion(opt));
  emit(torus_criterion(opt));
  emit(property_criterion(opt));
  return out;
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id},
          {"name", r.name},
          {"pass", r.pass},
          {"seconds", r.seconds},
          {"budget_seconds", r.budget_seconds},
          {"summary", r.summary},
          {"details", r.details}};
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << (r.pass ? "PASS" : "FAIL") << ' ' << r.id << ' ' << r.name << ": " << r.summary << " [" << r.seconds
    << " s, budget " << r.budget_seconds << " s]";
  return s.str();
}

}  // namespace langdual::acceptance
