#pragma once

// Finite Weyl group tables and the extended affine Weyl group W.Y with the
// Iwahori-Matsumoto length, simple affine reflections S, the length-zero
// subgroup Omega, reduced words, Bruhat order and length balls.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "langdual/rootsys.hpp"

namespace langdual::coxeter {

using rootsys::Vec;

constexpr std::size_t kMaxRank = 8;

class WeylGroup {
 public:
  WeylGroup(const rootsys::RootSystem& rs, const rootsys::RootDatum& rd, std::size_t cap = 200000);

  std::size_t size() const noexcept { return length_.size(); }
  std::size_t nsimple() const noexcept { return nsimple_; }
  std::uint32_t identity() const noexcept { return 0; }
  std::uint32_t simple(std::size_t i) const { return right_.at(i)[0]; }
  std::uint32_t right(std::uint32_t w, std::size_t i) const { return right_[i][w]; }  // w s_i
  std::uint32_t left(std::size_t i, std::uint32_t w) const { return left_[i][w]; }    // s_i w
  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inverse(std::uint32_t w) const { return inverse_[w]; }
  std::uint32_t longest() const noexcept { return longest_; }
  std::size_t length(std::uint32_t w) const { return length_[w]; }
  int sign(std::uint32_t w) const { return length_[w] % 2 ? -1 : 1; }
  // A reduced word s_{i1} ... s_{ik} = w.
  const std::vector<std::uint8_t>& word(std::uint32_t w) const { return word_[w]; }
  // Image of root k under w.
  std::size_t act_root(std::uint32_t w, std::size_t k) const { return perm_[w * nroots_ + k]; }
  std::vector<std::uint16_t> permutation(std::uint32_t w) const;
  std::uint32_t from_permutation(const std::vector<std::uint16_t>& perm) const;
  Vec act_x(std::uint32_t w, const Vec& x) const;
  Vec act_y(std::uint32_t w, const Vec& y) const;
  // Number of positive roots sent to negative roots.
  std::size_t inversions(std::uint32_t w) const;

 private:
  std::size_t rank_ = 0;
  std::size_t nsimple_ = 0;
  std::size_t nroots_ = 0;
  std::size_t npos_ = 0;
  std::vector<std::uint16_t> perm_;
  std::vector<std::int64_t> mat_x_;  // rank x rank per element
  std::vector<std::int64_t> mat_y_;
  std::vector<std::uint32_t> length_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::vector<std::uint32_t>> right_;
  std::vector<std::vector<std::uint32_t>> left_;
  std::vector<std::vector<std::uint8_t>> word_;
  std::unordered_map<std::string, std::uint32_t> by_key_;
  std::uint32_t longest_ = 0;
};

// w a^y with w an index into the Weyl table.
struct AffineElement {
  std::uint32_t w = 0;
  std::array<std::int32_t, kMaxRank> y{};

  bool operator==(const AffineElement& o) const noexcept { return w == o.w && y == o.y; }
  bool operator!=(const AffineElement& o) const noexcept { return !(*this == o); }
  bool operator<(const AffineElement& o) const noexcept {
    return w != o.w ? w < o.w : y < o.y;
  }
};

struct AffineElementHash {
  std::size_t operator()(const AffineElement& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ e.w;
    for (auto c : e.y) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(c)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct Generator {
  enum class Kind { Finite, Affine };
  Kind kind = Kind::Finite;
  std::size_t index = 0;  // simple index, or component index
  AffineElement element;
  std::string label;
};

class AffineWeylGroup {
 public:
  explicit AffineWeylGroup(rootsys::RootSystem rs, std::size_t weyl_cap = 200000);

  const rootsys::RootSystem& root_system() const noexcept { return rs_; }
  const rootsys::RootDatum& datum() const noexcept { return rd_; }
  const WeylGroup& weyl() const noexcept { return *weyl_; }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }
  std::size_t rank() const noexcept { return rs_.rank; }

  AffineElement identity() const { return AffineElement{}; }
  AffineElement translation(const Vec& y) const;
  AffineElement finite(std::uint32_t w) const;
  Vec translation_part(const AffineElement& g) const;

  AffineElement multiply(const AffineElement& a, const AffineElement& b) const;
  AffineElement inverse(const AffineElement& a) const;
  std::size_t length(const AffineElement& g) const;

  const std::vector<Generator>& generators() const noexcept { return gens_; }
  // Omega, with omega()[0] the identity.
  const std::vector<AffineElement>& omega() const noexcept { return omega_; }
  // Index of the Omega element in the coset of g modulo the subgroup generated by S.
  std::size_t omega_index(const AffineElement& g) const;

  AffineElement left_mul(std::size_t s, const AffineElement& g) const { return multiply(gens_[s].element, g); }
  AffineElement right_mul(const AffineElement& g, std::size_t s) const { return multiply(g, gens_[s].element); }
  bool left_descent(std::size_t s, const AffineElement& g) const { return length(left_mul(s, g)) < length(g); }
  bool right_descent(const AffineElement& g, std::size_t s) const { return length(right_mul(g, s)) < length(g); }

  // g = s_{i1} ... s_{ik} * omega with k = l(g).
  std::pair<std::vector<std::size_t>, AffineElement> reduced_word(const AffineElement& g) const;
  AffineElement from_word(const std::vector<std::size_t>& word) const;
  // Space-separated generator labels; "o<k>" names the k-th Omega element.
  AffineElement parse_word(const std::string& text) const;
  std::string word_string(const AffineElement& g) const;

  bool bruhat_leq(const AffineElement& x, const AffineElement& z) const;

  // All elements of length <= L, sorted by (length, canonical order).
  std::vector<AffineElement> ball(std::size_t L, std::size_t cap = 200000) const;

  nlohmann::json to_json(const AffineElement& g) const;
  AffineElement from_json(const nlohmann::json& j) const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<AffineElement, AffineElement>& p) const noexcept {
      AffineElementHash h;
      return h(p.first) * 31 + h(p.second);
    }
  };

  bool bruhat_rec(const AffineElement& x, const AffineElement& z) const;

  rootsys::RootSystem rs_;
  rootsys::RootDatum rd_;
  std::unique_ptr<WeylGroup> weyl_;
  std::uint64_t fingerprint_ = 0;
  std::vector<Vec> g_alpha_;  // G alpha for each positive root, so <y, alpha> = y . g_alpha
  std::vector<Generator> gens_;
  std::vector<AffineElement> omega_;
  lattice::FiniteAbelianGroup coroot_quotient_;
  std::unordered_map<std::string, std::size_t> omega_by_class_;

  mutable std::shared_mutex bruhat_mutex_;
  mutable std::unordered_map<std::pair<AffineElement, AffineElement>, bool, PairHash> bruhat_memo_;
};

}  // namespace langdual::coxeter
