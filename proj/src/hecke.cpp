#include "langdual/hecke.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <iomanip>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"

namespace langdual::hecke {

using nlohmann::json;

// ---------------------------------------------------------------------------
// HeckeElement

HeckeElement HeckeElement::basis(std::uint64_t rs, const AffineElement& w, LaurentPoly coeff) {
  HeckeElement h(rs);
  h.add(w, coeff);
  return h;
}

LaurentPoly HeckeElement::coeff(const AffineElement& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void HeckeElement::add(const AffineElement& w, const LaurentPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, p);
  if (inserted) return;
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

std::vector<AffineElement> HeckeElement::support() const {
  std::vector<AffineElement> out;
  out.reserve(terms_.size());
  for (const auto& kv : terms_) out.push_back(kv.first);
  std::sort(out.begin(), out.end());
  return out;
}

void HeckeElement::check_same(const HeckeElement& o) const {
  if (rs_ != 0 && o.rs_ != 0 && rs_ != o.rs_) fail(Errc::MixedRootSystems, "Hecke elements over different root systems");
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  check_same(o);
  if (rs_ == 0) rs_ = o.rs_;
  for (const auto& [w, p] : o.terms_) add(w, p);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  check_same(o);
  if (rs_ == 0) rs_ = o.rs_;
  for (const auto& [w, p] : o.terms_) add(w, -p);
  return *this;
}

HeckeElement HeckeElement::operator+(const HeckeElement& o) const {
  HeckeElement r = *this;
  return r += o;
}

HeckeElement HeckeElement::operator-(const HeckeElement& o) const {
  HeckeElement r = *this;
  return r -= o;
}

HeckeElement HeckeElement::operator*(const LaurentPoly& p) const {
  HeckeElement r(rs_);
  if (p.is_zero()) return r;
  for (const auto& [w, q] : terms_) r.terms_.emplace(w, q * p);
  return r;
}

bool HeckeElement::operator==(const HeckeElement& o) const {
  check_same(o);
  return terms_ == o.terms_;
}

// ---------------------------------------------------------------------------
// HeckeAlgebra

HeckeAlgebra::HeckeAlgebra(const AffineWeylGroup& group) : group_(group) {}

HeckeElement HeckeAlgebra::t(const AffineElement& w, LaurentPoly coeff) const {
  return HeckeElement::basis(root_system(), w, std::move(coeff));
}

const std::pair<std::vector<std::size_t>, AffineElement>& HeckeAlgebra::word(const AffineElement& w) const {
  {
    std::shared_lock lock(mutex_);
    auto it = words_.find(w);
    if (it != words_.end()) return it->second;
  }
  auto rw = group_.reduced_word(w);
  std::unique_lock lock(mutex_);
  return words_.emplace(w, std::move(rw)).first->second;
}

HeckeElement HeckeAlgebra::right_generator(const HeckeElement& h, std::size_t s) const {
  HeckeElement out(root_system());
  const LaurentPoly q = LaurentPoly::q_diff();
  for (const auto& [x, p] : h.terms()) {
    AffineElement xs = group_.right_mul(x, s);
    out.add(xs, p);
    if (group_.length(xs) < group_.length(x)) out.add(x, p * q);
  }
  return out;
}

HeckeElement HeckeAlgebra::left_generator(std::size_t s, const HeckeElement& h) const {
  HeckeElement out(root_system());
  const LaurentPoly q = LaurentPoly::q_diff();
  for (const auto& [x, p] : h.terms()) {
    AffineElement sx = group_.left_mul(s, x);
    out.add(sx, p);
    if (group_.length(sx) < group_.length(x)) out.add(x, p * q);
  }
  return out;
}

HeckeElement HeckeAlgebra::right_t(const HeckeElement& h, const AffineElement& w) const {
  const auto& [letters, om] = word(w);
  HeckeElement cur = h;
  for (auto s : letters) cur = right_generator(cur, s);
  if (om == group_.identity()) return cur;
  HeckeElement out(root_system());
  for (const auto& [x, p] : cur.terms()) out.add(group_.multiply(x, om), p);
  return out;
}

HeckeElement HeckeAlgebra::left_t(const AffineElement& w, const HeckeElement& h) const {
  const auto& [letters, om] = word(w);
  HeckeElement cur(root_system());
  if (om == group_.identity()) {
    cur = h;
  } else {
    for (const auto& [x, p] : h.terms()) cur.add(group_.multiply(om, x), p);
  }
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) cur = left_generator(*it, cur);
  return cur;
}

HeckeElement HeckeAlgebra::multiply(const HeckeElement& a, const HeckeElement& b) const {
  if (a.root_system() != root_system() || b.root_system() != root_system())
    fail(Errc::MixedRootSystems, "Hecke element does not belong to this algebra");
  HeckeElement out(root_system());
  for (const auto& [w, p] : b.terms()) out += right_t(a, w) * p;
  return out;
}

const HeckeElement& HeckeAlgebra::bar_t(const AffineElement& w) const {
  {
    std::shared_lock lock(mutex_);
    auto it = bar_memo_.find(w);
    if (it != bar_memo_.end()) return *it->second;
  }
  HeckeElement value(root_system());
  if (group_.length(w) == 0) {
    value = t(w);
  } else {
    // w = w' s with s a right descent; bar(T_w) = bar(T_w') (T_s - (v - v^-1)).
    std::size_t s = 0;
    while (!group_.right_descent(w, s)) ++s;
    const HeckeElement& prev = bar_t(group_.right_mul(w, s));
    value = right_generator(prev, s) - prev * LaurentPoly::q_diff();
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = bar_memo_.try_emplace(w, nullptr);
  if (inserted) it->second = std::make_unique<HeckeElement>(std::move(value));
  return *it->second;
}

HeckeElement HeckeAlgebra::bar(const HeckeElement& h) const {
  HeckeElement out(root_system());
  for (const auto& [w, p] : h.terms()) out += bar_t(w) * p.bar();
  return out;
}

HeckeElement HeckeAlgebra::dagger(const HeckeElement& h) const {
  HeckeElement out(root_system());
  for (const auto& [w, p] : h.terms()) out += bar_t(w) * (group_.length(w) % 2 ? -p : p);
  return out;
}

HeckeElement HeckeAlgebra::flip(const HeckeElement& h) const {
  HeckeElement out(root_system());
  for (const auto& [w, p] : h.terms()) out.add(group_.inverse(w), p);
  return out;
}

// ---------------------------------------------------------------------------
// KLTable

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << x;
  return out.str();
}

}  // namespace

std::optional<std::string> journal_path(const std::optional<std::string>& fallback) {
  if (const char* env = std::getenv("LANGDUAL_KL_CACHE"); env && *env) return std::string(env);
  return fallback;
}

KLTable::KLTable(const HeckeAlgebra& algebra, std::size_t max_length, std::optional<std::string> journal)
    : algebra_(algebra), max_length_(max_length), journal_(std::move(journal)) {
  if (journal_) load_journal();
}

void KLTable::load_journal() {
  std::ifstream in(*journal_);
  if (!in) return;
  const std::string rs = hex(algebra_.root_system());
  const auto& g = group();
  struct Group {
    HeckeElement element;
    std::size_t expected = 0;
    bool ok = true;
  };
  std::unordered_map<AffineElement, Group, AffineElementHash> groups;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception&) {
      ++rejected_;
      continue;
    }
    if (!rec.is_object() || !rec.contains("k") || !rec.contains("rs")) {
      ++rejected_;
      continue;
    }
    if (rec["rs"] != rs) continue;  // another root system: not ours to judge
    try {
      const std::string k = rec["k"].get<std::string>();
      json body = rec;
      body.erase("k");
      AffineElement z = g.from_json(rec.at("z"));
      auto& grp = groups.try_emplace(z, Group{HeckeElement(algebra_.root_system())}).first->second;
      if (k != hex(fnv1a(body.dump())) || rec.at("v").get<int>() != kFormatVersion) {
        grp.ok = false;
        continue;
      }
      AffineElement w = g.from_json(rec.at("w"));
      LaurentPoly p = laurent_from_json(rec.at("p"));
      std::size_t n = rec.at("n").get<std::size_t>();
      if (grp.expected != 0 && grp.expected != n) grp.ok = false;
      grp.expected = n;
      LaurentPoly old = grp.element.coeff(w);
      if (!old.is_zero()) {
        if (old != p) grp.ok = false;
        continue;
      }
      grp.element.add(w, p);
    } catch (const std::exception&) {
      ++rejected_;
    }
  }
  for (auto& [z, grp] : groups) {
    bool ok = grp.ok && grp.element.size() == grp.expected && grp.element.coeff(z) == LaurentPoly(1) &&
              g.length(z) <= max_length_;
    if (ok)
      for (const auto& [w, p] : grp.element.terms())
        if (w != z && (p.is_zero() || p.max_degree() > -1 || g.length(w) >= g.length(z))) ok = false;
    if (!ok) {
      ++rejected_;
      continue;
    }
    loaded_.emplace(z, Loaded{std::move(grp.element), true});
  }
}

void KLTable::append_journal(const AffineElement& z, const HeckeElement& c) {
  const auto& g = group();
  std::ostringstream buf;
  const json zj = g.to_json(z);
  for (const auto& w : c.support()) {
    json rec;
    rec["v"] = kFormatVersion;
    rec["rs"] = hex(algebra_.root_system());
    rec["z"] = zj;
    rec["w"] = g.to_json(w);
    rec["p"] = to_json(c.coeff(w));
    rec["n"] = c.size();
    rec["k"] = hex(fnv1a(rec.dump()));
    buf << rec.dump() << '\n';
  }
  std::lock_guard lock(journal_mutex_);
  std::ofstream out(*journal_, std::ios::app);
  out << buf.str();
}

const HeckeElement* KLTable::find(const AffineElement& z) const {
  std::shared_lock lock(mutex_);
  auto it = memo_.find(z);
  return it == memo_.end() ? nullptr : it->second.get();
}

const HeckeElement& KLTable::publish(const AffineElement& z, HeckeElement value, bool from_journal) {
  bool inserted;
  const HeckeElement* stored;
  {
    std::unique_lock lock(mutex_);
    auto [it, ins] = memo_.try_emplace(z, nullptr);
    inserted = ins;
    if (ins) it->second = std::make_unique<const HeckeElement>(std::move(value));
    stored = it->second.get();
  }
  if (inserted && !from_journal && journal_) append_journal(z, *stored);
  return *stored;
}

HeckeElement KLTable::compute(const AffineElement& z) {
  const auto& g = group();
  const std::size_t len = g.length(z);
  if (len > max_length_)
    fail(Errc::BallTooLarge, "c_z of length " + std::to_string(len) + " exceeds the table cap " + std::to_string(max_length_));
  if (len == 0) return algebra_.t(z);
  std::size_t s = 0;
  while (!g.left_descent(s, z)) ++s;
  const AffineElement zp = g.left_mul(s, z);
  const HeckeElement& cp = c(zp);
  // c_s c_{z'} = c_z + sum over y < z' with sy < y of mu(y, z') c_y.
  HeckeElement r = algebra_.left_generator(s, cp) + cp * LaurentPoly::v_inv();
  for (const auto& y : cp.support()) {
    if (y == zp || !g.left_descent(s, y)) continue;
    std::int64_t m = cp.coeff(y).coeff(-1);
    if (m != 0) r -= c(y) * LaurentPoly(m);
  }
  return r;
}

const HeckeElement& KLTable::c(const AffineElement& z) {
  if (const auto* hit = find(z)) return *hit;
  auto it = loaded_.find(z);
  if (it != loaded_.end()) {
    ++hits_;
    return publish(z, it->second.element, true);
  }
  ++misses_;
  return publish(z, compute(z), false);
}

LaurentPoly KLTable::p(const AffineElement& w, const AffineElement& z) { return c(z).coeff(w); }

std::int64_t KLTable::mu(const AffineElement& w, const AffineElement& z) { return p(w, z).coeff(-1); }

bool KLTable::completed(const AffineElement& z) const { return find(z) != nullptr; }

std::size_t KLTable::size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

std::vector<AffineElement> KLTable::elements() const {
  std::vector<AffineElement> out;
  {
    std::shared_lock lock(mutex_);
    for (const auto& kv : memo_) out.push_back(kv.first);
  }
  std::sort(out.begin(), out.end(), [this](const AffineElement& a, const AffineElement& b) {
    auto la = group().length(a), lb = group().length(b);
    return la != lb ? la < lb : a < b;
  });
  return out;
}

void KLTable::fill(const std::vector<AffineElement>& elements, std::size_t threads) {
  std::map<std::size_t, std::vector<AffineElement>> layers;
  for (const auto& z : elements) layers[group().length(z)].push_back(z);
  threads = std::max<std::size_t>(1, threads);
  for (auto& [len, layer] : layers) {
    if (threads == 1 || layer.size() < 2) {
      for (const auto& z : layer) c(z);
      continue;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i; (i = next++) < layer.size();) c(layer[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
}

bool KLTable::verify_bar_invariant(const AffineElement& z) {
  const HeckeElement& cz = c(z);
  return algebra_.bar(cz) == cz;
}

bool KLTable::verify_shape(const AffineElement& z) {
  const auto& g = group();
  const HeckeElement& cz = c(z);
  if (cz.coeff(z) != LaurentPoly(1)) return false;
  for (const auto& [w, p] : cz.terms()) {
    if (w == z) continue;
    if (p.max_degree() > -1 || !g.bruhat_leq(w, z)) return false;
    for (const auto& term : p.terms())
      if (term.second < 0) return false;
  }
  return true;
}

std::map<AffineElement, LaurentPoly> KLTable::expand(const HeckeElement& h) {
  const auto& g = group();
  std::map<AffineElement, LaurentPoly> out;
  HeckeElement work = h;
  while (!work.is_zero()) {
    // A term of maximal length is maximal in Bruhat order, so its
    // T-coefficient is its c-coefficient.
    const AffineElement* top = nullptr;
    std::size_t top_len = 0;
    for (const auto& kv : work.terms()) {
      std::size_t l = g.length(kv.first);
      if (!top || l > top_len || (l == top_len && *top < kv.first)) {
        top = &kv.first;
        top_len = l;
      }
    }
    if (top_len > max_length_)
      fail(Errc::SupportEscapesBall,
           "support reaches length " + std::to_string(top_len) + " beyond the table cap " + std::to_string(max_length_));
    const AffineElement z = *top;
    const LaurentPoly a = work.coeff(z);
    out.emplace(z, a);
    work -= c(z) * a;
  }
  return out;
}

HeckeElement KLTable::c_product(const AffineElement& x, const AffineElement& y) {
  return algebra_.multiply(c(x), c(y));
}

LaurentPoly KLTable::h(const AffineElement& x, const AffineElement& y, const AffineElement& z) {
  auto coords = expand(c_product(x, y));
  auto it = coords.find(z);
  return it == coords.end() ? LaurentPoly() : it->second;
}

CacheStats KLTable::stats() const { return CacheStats{hits_.load(), misses_.load(), rejected_}; }

// ---------------------------------------------------------------------------
// a-function and gamma

namespace {

// Highest v-degree of h_{x,y,z} over x, y in ball(R), for every z that occurs.
std::unordered_map<AffineElement, int, AffineElementHash> degree_bounds(KLTable& table, std::size_t R) {
  auto ball = table.group().ball(R);
  std::unordered_map<AffineElement, int, AffineElementHash> out;
  for (const auto& x : ball)
    for (const auto& y : ball)
      for (const auto& [z, p] : table.expand(table.c_product(x, y))) {
        auto [it, inserted] = out.try_emplace(z, p.max_degree());
        if (!inserted) it->second = std::max(it->second, p.max_degree());
      }
  return out;
}

}  // namespace

ABound a_function_window(const AffineElement& z, KLTable& table, std::size_t L, std::size_t window) {
  const auto& g = table.group();
  if (g.length(z) > L) fail(Errc::BadInput, "z lies outside ball(" + std::to_string(L) + ")");
  const int cap = static_cast<int>(g.weyl().length(g.weyl().longest()));
  auto first = degree_bounds(table, L);
  ABound out;
  out.bound = first.at(z);
  out.radius = L;
  if (out.bound == cap) {
    out.certified = true;
    out.certificate = "cap";
    return out;
  }
  auto second = degree_bounds(table, L + window);
  out.radius = L + window;
  const int wider = second.at(z);
  if (wider == cap) {
    out.bound = wider;
    out.certified = true;
    out.certificate = "cap";
  } else if (wider == out.bound) {
    out.certified = true;
    out.certificate = "window";
  } else {
    out.bound = wider;
  }
  return out;
}

std::int64_t gamma_constant(const AffineElement& x, const AffineElement& y, const AffineElement& z, KLTable& table,
                            std::size_t L, std::size_t window) {
  const AffineElement zi = table.group().inverse(z);
  ABound a = a_function_window(zi, table, L, window);
  if (!a.certified) fail(Errc::NotCertified, "a-function value is only a lower bound");
  return table.h(x, y, zi).coeff(a.bound);
}

// ---------------------------------------------------------------------------
// Cells

std::size_t CellPartition::class_of(const AffineElement& g) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::binary_search(classes[i].begin(), classes[i].end(), g)) return i;
  fail(Errc::BadInput, "element outside the partitioned ball");
}

namespace {

// Tarjan's algorithm, iterative; restricted to vertices with keep[v].
std::vector<std::size_t> scc(const std::vector<std::vector<std::size_t>>& adj, const std::vector<bool>& keep) {
  const std::size_t n = adj.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0, ncomp = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (!keep[root] || index[root] != kNone) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge < adj[v].size()) {
        std::size_t w = adj[v][edge++];
        if (!keep[w]) continue;
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

}  // namespace

namespace {

// Preorder graph on ball (sorted by length): descent moves, Omega and mu-links.
std::vector<std::vector<std::size_t>> preorder_graph(KLTable& table, const std::vector<AffineElement>& ball) {
  const auto& g = table.group();
  std::unordered_map<AffineElement, std::size_t, AffineElementHash> idx;
  for (std::size_t i = 0; i < ball.size(); ++i) idx.emplace(ball[i], i);
  const std::size_t ngen = g.generators().size();
  std::vector<std::vector<std::size_t>> adj(ball.size());
  auto link = [&](std::size_t from, const AffineElement& to) {
    auto it = idx.find(to);
    if (it != idx.end() && it->second != from) adj[from].push_back(it->second);
  };
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const AffineElement& y = ball[i];
    const std::size_t ly = g.length(y);
    for (std::size_t s = 0; s < ngen; ++s) {
      AffineElement sy = g.left_mul(s, y), ys = g.right_mul(y, s);
      if (g.length(sy) > ly) link(i, sy);
      if (g.length(ys) > ly) link(i, ys);
    }
    for (const auto& om : g.omega()) {
      link(i, g.multiply(om, y));
      link(i, g.multiply(y, om));
    }
    for (const auto& [z, p] : table.c(y).terms()) {
      if (z == y || p.coeff(-1) == 0) continue;
      bool left = false, right = false;
      for (std::size_t s = 0; s < ngen && !(left && right); ++s) {
        left = left || (g.left_descent(s, z) && !g.left_descent(s, y));
        right = right || (g.right_descent(z, s) && !g.right_descent(y, s));
      }
      if (left || right) link(i, z);
    }
  }
  return adj;
}

}  // namespace

CellPartition cells_in_ball(KLTable& table, std::size_t L, std::size_t ball_cap, std::size_t threads,
                            std::size_t window) {
  if (window < 1) fail(Errc::BadParameter, "certification window must be >= 1");
  const auto& g = table.group();
  const auto wide = g.ball(L + window, ball_cap);
  table.fill(wide, threads);
  // Balls are listed by length, so ball(L) is a prefix of ball(L + window).
  std::size_t n = 0;
  while (n < wide.size() && g.length(wide[n]) <= L) ++n;
  const std::vector<AffineElement> ball(wide.begin(), wide.begin() + static_cast<std::ptrdiff_t>(n));

  auto comp = scc(preorder_graph(table, ball), std::vector<bool>(n, true));
  auto wide_comp = scc(preorder_graph(table, wide), std::vector<bool>(wide.size(), true));

  std::map<std::size_t, std::vector<std::size_t>> members, wide_members;
  for (std::size_t i = 0; i < n; ++i) {
    members[comp[i]].push_back(i);
    wide_members[wide_comp[i]].push_back(i);
  }
  std::vector<std::vector<std::size_t>> groups;
  for (auto& kv : members) groups.push_back(std::move(kv.second));
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });

  CellPartition out;
  out.radius = L;
  out.window = window;
  for (const auto& grp : groups) {
    std::vector<AffineElement> cls;
    bool inner = false;
    for (auto i : grp) {
      cls.push_back(ball[i]);
      inner = inner || (L > 0 && g.length(ball[i]) + 1 <= L);
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
    // Stable when growing the ball by `window` merges nothing into the class.
    out.certified.push_back(inner && wide_members.at(wide_comp[grp.front()]) == grp);
  }
  return out;
}

}  // namespace langdual::hecke
