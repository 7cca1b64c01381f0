#include "langdual/coxeter.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"

namespace langdual::coxeter {

namespace {

std::string key_of(const std::vector<std::uint16_t>& perm, const std::vector<std::size_t>& simple) {
  std::string k;
  k.reserve(simple.size() * 2);
  for (auto s : simple) {
    k.push_back(static_cast<char>(perm[s] & 0xff));
    k.push_back(static_cast<char>(perm[s] >> 8));
  }
  return k;
}

std::int32_t narrow(std::int64_t v) {
  if (v > INT32_MAX || v < INT32_MIN) fail(Errc::Overflow, "translation coordinate exceeds 32 bits");
  return static_cast<std::int32_t>(v);
}

}  // namespace

// ---------------------------------------------------------------- WeylGroup

WeylGroup::WeylGroup(const rootsys::RootSystem& rs, const rootsys::RootDatum& rd, std::size_t cap)
    : rank_(rs.rank), nsimple_(rs.nsimple()), nroots_(rd.size()), npos_(rd.npos) {
  if (nroots_ > UINT16_MAX) fail(Errc::BadInput, "too many roots for the permutation encoding");
  const std::size_t r2 = rank_ * rank_;

  // Simple reflections as matrices on X and on Y.
  std::vector<std::vector<std::int64_t>> sx(nsimple_, std::vector<std::int64_t>(r2));
  std::vector<std::vector<std::int64_t>> sy(nsimple_, std::vector<std::int64_t>(r2));
  for (std::size_t i = 0; i < nsimple_; ++i) {
    Vec u(rank_), v(rank_);  // <coroot_i, x> = u . x and <y, root_i> = v . y
    for (std::size_t c = 0; c < rank_; ++c) {
      for (std::size_t r = 0; r < rank_; ++r) {
        u[c] += rs.coroots[i][r] * rs.gram(r, c).get_si();
        v[c] += rs.gram(c, r).get_si() * rs.roots[i][r];
      }
    }
    for (std::size_t r = 0; r < rank_; ++r)
      for (std::size_t c = 0; c < rank_; ++c) {
        sx[i][r * rank_ + c] = (r == c) - rs.roots[i][r] * u[c];
        sy[i][r * rank_ + c] = (r == c) - rs.coroots[i][r] * v[c];
      }
  }
  std::vector<std::size_t> simple = rd.simple;

  auto add = [&](std::vector<std::uint16_t> perm, const std::int64_t* mx, const std::int64_t* my,
                 std::uint32_t len, std::vector<std::uint8_t> word) {
    if (length_.size() >= cap) fail(Errc::BallTooLarge, "Weyl group exceeds the enumeration cap");
    auto id = static_cast<std::uint32_t>(length_.size());
    by_key_.emplace(key_of(perm, simple), id);
    perm_.insert(perm_.end(), perm.begin(), perm.end());
    mat_x_.insert(mat_x_.end(), mx, mx + r2);
    mat_y_.insert(mat_y_.end(), my, my + r2);
    length_.push_back(len);
    word_.push_back(std::move(word));
    return id;
  };

  std::vector<std::uint16_t> idperm(nroots_);
  for (std::size_t k = 0; k < nroots_; ++k) idperm[k] = static_cast<std::uint16_t>(k);
  std::vector<std::int64_t> idm(r2, 0);
  for (std::size_t r = 0; r < rank_; ++r) idm[r * rank_ + r] = 1;
  add(idperm, idm.data(), idm.data(), 0, {});

  right_.assign(nsimple_, {});
  std::vector<std::int64_t> mx(r2), my(r2);
  for (std::uint32_t w = 0; w < length_.size(); ++w) {
    for (std::size_t i = 0; i < nsimple_; ++i) {
      std::vector<std::uint16_t> p(nroots_);
      for (std::size_t k = 0; k < nroots_; ++k) p[k] = perm_[w * nroots_ + rd.reflection[i][k]];
      auto it = by_key_.find(key_of(p, simple));
      std::uint32_t target;
      if (it != by_key_.end()) {
        target = it->second;
      } else {
        for (std::size_t r = 0; r < rank_; ++r)
          for (std::size_t c = 0; c < rank_; ++c) {
            std::int64_t a = 0, b = 0;
            for (std::size_t t = 0; t < rank_; ++t) {
              a += mat_x_[w * r2 + r * rank_ + t] * sx[i][t * rank_ + c];
              b += mat_y_[w * r2 + r * rank_ + t] * sy[i][t * rank_ + c];
            }
            mx[r * rank_ + c] = a;
            my[r * rank_ + c] = b;
          }
        auto word = word_[w];
        word.push_back(static_cast<std::uint8_t>(i));
        target = add(std::move(p), mx.data(), my.data(), length_[w] + 1, std::move(word));
      }
      if (right_[i].size() <= w) right_[i].resize(w + 1);
      right_[i][w] = target;
    }
  }

  const std::size_t n = size();
  left_.assign(nsimple_, std::vector<std::uint32_t>(n));
  inverse_.resize(n);
  for (std::uint32_t w = 0; w < n; ++w) {
    for (std::size_t i = 0; i < nsimple_; ++i) {
      std::vector<std::uint16_t> p(nroots_);
      for (std::size_t k = 0; k < nroots_; ++k) p[k] = static_cast<std::uint16_t>(rd.reflection[i][perm_[w * nroots_ + k]]);
      left_[i][w] = by_key_.at(key_of(p, simple));
    }
    std::vector<std::uint16_t> p(nroots_);
    for (std::size_t k = 0; k < nroots_; ++k) p[perm_[w * nroots_ + k]] = static_cast<std::uint16_t>(k);
    inverse_[w] = by_key_.at(key_of(p, simple));
    if (length_[w] > length_[longest_]) longest_ = w;
  }
}

std::uint32_t WeylGroup::multiply(std::uint32_t a, std::uint32_t b) const {
  for (auto i : word_[b]) a = right_[i][a];
  return a;
}

std::vector<std::uint16_t> WeylGroup::permutation(std::uint32_t w) const {
  return std::vector<std::uint16_t>(perm_.begin() + static_cast<std::ptrdiff_t>(w * nroots_),
                                    perm_.begin() + static_cast<std::ptrdiff_t>((w + 1) * nroots_));
}

std::uint32_t WeylGroup::from_permutation(const std::vector<std::uint16_t>& perm) const {
  if (perm.size() != nroots_) fail(Errc::BadInput, "permutation has the wrong size");
  for (std::uint32_t w = 0; w < size(); ++w)
    if (std::equal(perm.begin(), perm.end(), perm_.begin() + static_cast<std::ptrdiff_t>(w * nroots_))) return w;
  fail(Errc::BadInput, "permutation is not induced by a Weyl group element");
}

Vec WeylGroup::act_x(std::uint32_t w, const Vec& x) const {
  Vec out(rank_, 0);
  const std::size_t r2 = rank_ * rank_;
  for (std::size_t r = 0; r < rank_; ++r)
    for (std::size_t c = 0; c < rank_; ++c) out[r] += mat_x_[w * r2 + r * rank_ + c] * x[c];
  return out;
}

Vec WeylGroup::act_y(std::uint32_t w, const Vec& y) const {
  Vec out(rank_, 0);
  const std::size_t r2 = rank_ * rank_;
  for (std::size_t r = 0; r < rank_; ++r)
    for (std::size_t c = 0; c < rank_; ++c) out[r] += mat_y_[w * r2 + r * rank_ + c] * y[c];
  return out;
}

std::size_t WeylGroup::inversions(std::uint32_t w) const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < npos_; ++k)
    if (perm_[w * nroots_ + k] >= npos_) ++n;
  return n;
}

// ---------------------------------------------------------------- affine group

AffineWeylGroup::AffineWeylGroup(rootsys::RootSystem rs, std::size_t weyl_cap) : rs_(std::move(rs)) {
  rootsys::validate(rs_);
  if (rs_.rank > kMaxRank) fail(Errc::BadInput, "rank above " + std::to_string(kMaxRank));
  if (!rootsys::classify_flags(rs_).semisimple) fail(Errc::NotSemisimple, "extended affine Weyl group needs a semisimple datum");
  rd_ = rootsys::enumerate_roots(rs_);
  weyl_ = std::make_unique<WeylGroup>(rs_, rd_, weyl_cap);
  fingerprint_ = rs_.fingerprint();

  for (std::size_t k = 0; k < rd_.npos; ++k) {
    Vec g(rs_.rank, 0);
    for (std::size_t r = 0; r < rs_.rank; ++r)
      for (std::size_t c = 0; c < rs_.rank; ++c) g[r] += rs_.gram(r, c).get_si() * rd_.roots[k][c];
    g_alpha_.push_back(g);
  }

  for (std::size_t i = 0; i < rs_.nsimple(); ++i) {
    Generator g;
    g.kind = Generator::Kind::Finite;
    g.index = i;
    g.element = finite(weyl_->simple(i));
    g.label = "s" + std::to_string(i + 1);
    gens_.push_back(g);
  }
  for (std::size_t c = 0; c < rd_.r_min.size(); ++c) {
    const std::size_t a = rd_.r_min[c];
    // Reflection in alpha, as a permutation of the roots.
    std::vector<std::uint16_t> perm(rd_.size());
    for (std::size_t k = 0; k < rd_.size(); ++k) {
      Vec x = rd_.roots[k];
      std::int64_t t = rs_.pair(rd_.coroots[a], x);
      for (std::size_t r = 0; r < rs_.rank; ++r) x[r] -= t * rd_.roots[a][r];
      perm[k] = static_cast<std::uint16_t>(rd_.index_of(x));
    }
    Generator g;
    g.kind = Generator::Kind::Affine;
    g.index = c;
    g.element = finite(weyl_->from_permutation(perm));
    for (std::size_t r = 0; r < rs_.rank; ++r) g.element.y[r] = narrow(rd_.coroots[a][r]);
    g.label = rd_.r_min.size() == 1 ? "s0" : "s0@component" + std::to_string(c);
    gens_.push_back(g);
  }
  for (const auto& g : gens_) {
    if (multiply(g.element, g.element) != identity()) fail(Errc::BadInput, g.label + " is not an involution");
    if (length(g.element) != 1) fail(Errc::BadInput, g.label + " does not have length 1");
  }

  lattice::IntMatrix cor(rs_.rank, rs_.rank);
  for (std::size_t j = 0; j < rs_.nsimple(); ++j)
    for (std::size_t r = 0; r < rs_.rank; ++r) cor(r, j) = static_cast<long>(rs_.coroots[j][r]);
  coroot_quotient_ = lattice::quotient_group(cor);
  auto residue_key = [](const lattice::GroupElement& e) {
    std::string k;
    for (const auto& r : e.residues) k += r.get_str() + ",";
    return k;
  };
  for (const auto& cls : coroot_quotient_.elements()) {
    lattice::IntVector rep = coroot_quotient_.representative(cls);
    Vec y(rs_.rank);
    for (std::size_t r = 0; r < rs_.rank; ++r) y[r] = rep[r].get_si();
    AffineElement g = translation(y);
    for (bool moved = true; moved;) {
      moved = false;
      for (std::size_t s = 0; s < gens_.size(); ++s)
        if (left_descent(s, g)) {
          g = left_mul(s, g);
          moved = true;
          break;
        }
    }
    if (length(g) != 0) fail(Errc::BadInput, "descent reduction did not reach a length-zero element");
    omega_by_class_.emplace(residue_key(cls), omega_.size());
    omega_.push_back(g);
  }
  if (omega_.empty() || omega_[0] != identity()) fail(Errc::BadInput, "Omega must start with the identity");
  std::set<AffineElement> distinct(omega_.begin(), omega_.end());
  if (distinct.size() != omega_.size() || lattice::BigInt(static_cast<unsigned long>(omega_.size())) != coroot_quotient_.order())
    fail(Errc::BadInput, "|Omega| differs from the index of the coroot lattice");
}

AffineElement AffineWeylGroup::translation(const Vec& y) const {
  if (y.size() != rs_.rank) fail(Errc::BadInput, "translation of wrong rank");
  AffineElement g;
  for (std::size_t r = 0; r < y.size(); ++r) g.y[r] = narrow(y[r]);
  return g;
}

AffineElement AffineWeylGroup::finite(std::uint32_t w) const {
  AffineElement g;
  g.w = w;
  return g;
}

Vec AffineWeylGroup::translation_part(const AffineElement& g) const {
  return Vec(g.y.begin(), g.y.begin() + static_cast<std::ptrdiff_t>(rs_.rank));
}

AffineElement AffineWeylGroup::multiply(const AffineElement& a, const AffineElement& b) const {
  // (w a^y)(w' a^y') = w w' a^{w'^{-1}(y) + y'}
  AffineElement out;
  out.w = weyl_->multiply(a.w, b.w);
  Vec moved = weyl_->act_y(weyl_->inverse(b.w), translation_part(a));
  for (std::size_t r = 0; r < rs_.rank; ++r) out.y[r] = narrow(moved[r] + b.y[r]);
  return out;
}

AffineElement AffineWeylGroup::inverse(const AffineElement& a) const {
  AffineElement out;
  out.w = weyl_->inverse(a.w);
  Vec moved = weyl_->act_y(a.w, translation_part(a));
  for (std::size_t r = 0; r < rs_.rank; ++r) out.y[r] = narrow(-moved[r]);
  return out;
}

std::size_t AffineWeylGroup::length(const AffineElement& g) const {
  std::size_t total = 0;
  const std::size_t n = rs_.rank;
  for (std::size_t k = 0; k < rd_.npos; ++k) {
    std::int64_t t = 0;
    for (std::size_t r = 0; r < n; ++r) t += static_cast<std::int64_t>(g.y[r]) * g_alpha_[k][r];
    if (weyl_->act_root(g.w, k) >= rd_.npos) t += 1;
    total += static_cast<std::size_t>(t < 0 ? -t : t);
  }
  return total;
}

std::size_t AffineWeylGroup::omega_index(const AffineElement& g) const {
  auto cls = coroot_quotient_.class_of(lattice::to_int_vector(translation_part(g)));
  std::string k;
  for (const auto& r : cls.residues) k += r.get_str() + ",";
  return omega_by_class_.at(k);
}

std::pair<std::vector<std::size_t>, AffineElement> AffineWeylGroup::reduced_word(const AffineElement& g) const {
  std::vector<std::size_t> word;
  AffineElement cur = g;
  std::size_t len = length(cur);
  while (len > 0) {
    bool found = false;
    for (std::size_t s = 0; s < gens_.size(); ++s) {
      AffineElement next = left_mul(s, cur);
      std::size_t l2 = length(next);
      if (l2 < len) {
        word.push_back(s);
        cur = next;
        len = l2;
        found = true;
        break;
      }
    }
    if (!found) fail(Errc::BadInput, "element of positive length without a left descent");
  }
  return {word, cur};
}

AffineElement AffineWeylGroup::from_word(const std::vector<std::size_t>& word) const {
  AffineElement g = identity();
  for (auto s : word) g = multiply(g, gens_.at(s).element);
  return g;
}

AffineElement AffineWeylGroup::parse_word(const std::string& text) const {
  std::istringstream in(text);
  std::string tok;
  AffineElement g = identity();
  while (in >> tok) {
    if (tok == "1" || tok == "e") continue;
    bool matched = false;
    for (const auto& gen : gens_)
      if (gen.label == tok || (gen.kind == Generator::Kind::Affine && tok == "s0@component" + std::to_string(gen.index))) {
        g = multiply(g, gen.element);
        matched = true;
        break;
      }
    if (!matched && tok.size() > 1 && tok[0] == 'o') {
      std::size_t k = std::strtoul(tok.c_str() + 1, nullptr, 10);
      if (k < omega_.size()) {
        g = multiply(g, omega_[k]);
        matched = true;
      }
    }
    if (!matched) fail(Errc::BadInput, "unknown generator '" + tok + "'");
  }
  return g;
}

std::string AffineWeylGroup::word_string(const AffineElement& g) const {
  auto [word, om] = reduced_word(g);
  std::string out;
  for (auto s : word) {
    if (!out.empty()) out += ' ';
    out += gens_[s].label;
  }
  std::size_t k = omega_index(om);
  if (k != 0) {
    if (!out.empty()) out += ' ';
    out += "o" + std::to_string(k);
  }
  return out.empty() ? "1" : out;
}

bool AffineWeylGroup::bruhat_leq(const AffineElement& x, const AffineElement& z) const {
  if (omega_index(x) != omega_index(z)) return false;
  return bruhat_rec(x, z);
}

bool AffineWeylGroup::bruhat_rec(const AffineElement& x, const AffineElement& z) const {
  const std::size_t lx = length(x), lz = length(z);
  if (lx > lz) return false;
  if (lx == lz) return x == z;
  auto key = std::make_pair(x, z);
  {
    std::shared_lock lock(bruhat_mutex_);
    auto it = bruhat_memo_.find(key);
    if (it != bruhat_memo_.end()) return it->second;
  }
  bool result = false;
  for (std::size_t s = 0; s < gens_.size(); ++s) {
    AffineElement sz = left_mul(s, z);
    if (length(sz) >= lz) continue;
    AffineElement sx = left_mul(s, x);
    result = bruhat_rec(length(sx) < lx ? sx : x, sz);
    break;
  }
  std::unique_lock lock(bruhat_mutex_);
  bruhat_memo_.emplace(key, result);
  return result;
}

std::vector<AffineElement> AffineWeylGroup::ball(std::size_t L, std::size_t cap) const {
  std::unordered_set<AffineElement, AffineElementHash> seen(omega_.begin(), omega_.end());
  std::vector<std::vector<AffineElement>> layers{omega_};
  if (seen.size() > cap) fail(Errc::BallTooLarge, "ball exceeds cap");
  for (std::size_t k = 0; k < L; ++k) {
    std::vector<AffineElement> next;
    for (const auto& g : layers[k])
      for (std::size_t s = 0; s < gens_.size(); ++s) {
        AffineElement h = right_mul(g, s);
        if (length(h) != k + 1 || seen.count(h)) continue;
        seen.insert(h);
        next.push_back(h);
        if (seen.size() > cap) fail(Errc::BallTooLarge, "ball of radius " + std::to_string(L) + " exceeds cap " + std::to_string(cap));
      }
    layers.push_back(std::move(next));
  }
  std::vector<AffineElement> out;
  for (auto& layer : layers) {
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

nlohmann::json AffineWeylGroup::to_json(const AffineElement& g) const {
  nlohmann::json j;
  j["w"] = weyl_->permutation(g.w);
  j["y"] = translation_part(g);
  j["omega"] = omega_index(g);
  return j;
}

AffineElement AffineWeylGroup::from_json(const nlohmann::json& j) const {
  if (!j.is_object() || !j.contains("w") || !j.contains("y")) fail(Errc::BadInput, "element needs \"w\" and \"y\"");
  AffineElement g = translation(j["y"].get<Vec>());
  g.w = weyl_->from_permutation(j["w"].get<std::vector<std::uint16_t>>());
  if (j.contains("omega") && j["omega"].get<std::size_t>() != omega_index(g))
    fail(Errc::BadInput, "omega index does not match the element");
  return g;
}

}  // namespace langdual::coxeter
