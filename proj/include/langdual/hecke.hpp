#pragma once

// Hecke algebra of the extended affine Weyl group over Z[v, v^-1]: T-basis
// arithmetic, bar and dagger involutions, the KL basis c_z with a persistent
// journal, structure constants h_{x,y,z}, a-function windows, gamma
// constants and two-sided cells in a length ball.

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "langdual/coxeter.hpp"
#include "langdual/laurent.hpp"

namespace langdual::hecke {

using coxeter::AffineElement;
using coxeter::AffineElementHash;
using coxeter::AffineWeylGroup;

class HeckeElement {
 public:
  using Map = std::unordered_map<AffineElement, LaurentPoly, AffineElementHash>;

  explicit HeckeElement(std::uint64_t rs = 0) : rs_(rs) {}
  static HeckeElement basis(std::uint64_t rs, const AffineElement& w, LaurentPoly coeff = 1);

  std::uint64_t root_system() const noexcept { return rs_; }
  const Map& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  LaurentPoly coeff(const AffineElement& w) const;
  void add(const AffineElement& w, const LaurentPoly& p);
  // Support in canonical order.
  std::vector<AffineElement> support() const;

  HeckeElement operator+(const HeckeElement& o) const;
  HeckeElement operator-(const HeckeElement& o) const;
  HeckeElement operator*(const LaurentPoly& p) const;
  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  bool operator==(const HeckeElement& o) const;
  bool operator!=(const HeckeElement& o) const { return !(*this == o); }

 private:
  void check_same(const HeckeElement& o) const;
  std::uint64_t rs_;
  Map terms_;
};

// T-basis arithmetic over a fixed extended affine Weyl group.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const AffineWeylGroup& group);

  const AffineWeylGroup& group() const noexcept { return group_; }
  std::uint64_t root_system() const noexcept { return group_.fingerprint(); }

  HeckeElement t(const AffineElement& w, LaurentPoly coeff = 1) const;
  HeckeElement one() const { return t(group_.identity()); }

  HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const;
  // h T_s and T_s h for a generator index s.
  HeckeElement right_generator(const HeckeElement& h, std::size_t s) const;
  HeckeElement left_generator(std::size_t s, const HeckeElement& h) const;
  // h T_w and T_w h.
  HeckeElement right_t(const HeckeElement& h, const AffineElement& w) const;
  HeckeElement left_t(const AffineElement& w, const HeckeElement& h) const;

  // bar(T_w) = T_{w^-1}^{-1}, coefficients bar'ed.
  HeckeElement bar(const HeckeElement& h) const;
  const HeckeElement& bar_t(const AffineElement& w) const;
  // T_w -> (-1)^{l(w)} T_{w^-1}^{-1}, coefficients fixed.
  HeckeElement dagger(const HeckeElement& h) const;
  // Anti-automorphism T_w -> T_{w^-1}.
  HeckeElement flip(const HeckeElement& h) const;

 private:
  const std::pair<std::vector<std::size_t>, AffineElement>& word(const AffineElement& w) const;

  const AffineWeylGroup& group_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<AffineElement, std::pair<std::vector<std::size_t>, AffineElement>, AffineElementHash> words_;
  mutable std::unordered_map<AffineElement, std::unique_ptr<HeckeElement>, AffineElementHash> bar_memo_;
};

struct CacheStats {
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t rejected = 0;  // journal entries dropped as corrupt or mismatched
};

// Memo of the KL basis. Entries are computed on demand, immutable once
// published, and optionally appended to a JSON-lines journal.
class KLTable {
 public:
  static constexpr int kFormatVersion = 1;

  // max_length bounds the region in which c-basis expansions are trusted.
  KLTable(const HeckeAlgebra& algebra, std::size_t max_length, std::optional<std::string> journal = std::nullopt);

  const HeckeAlgebra& algebra() const noexcept { return algebra_; }
  const AffineWeylGroup& group() const noexcept { return algebra_.group(); }
  std::size_t max_length() const noexcept { return max_length_; }

  const HeckeElement& c(const AffineElement& z);
  LaurentPoly p(const AffineElement& w, const AffineElement& z);
  std::int64_t mu(const AffineElement& w, const AffineElement& z);
  bool completed(const AffineElement& z) const;
  std::size_t size() const;
  // Every published element in canonical order.
  std::vector<AffineElement> elements() const;

  // Computes c_z for all given elements, layer by layer in length.
  void fill(const std::vector<AffineElement>& elements, std::size_t threads);

  bool verify_bar_invariant(const AffineElement& z);
  // Degree bound, p_{z,z} = 1, Bruhat support, nonnegativity.
  bool verify_shape(const AffineElement& z);

  // T-basis element written in the c-basis.
  std::map<AffineElement, LaurentPoly> expand(const HeckeElement& h);
  HeckeElement c_product(const AffineElement& x, const AffineElement& y);
  LaurentPoly h(const AffineElement& x, const AffineElement& y, const AffineElement& z);

  CacheStats stats() const;

 private:
  struct Loaded {
    HeckeElement element;
    bool ok = true;
  };

  HeckeElement compute(const AffineElement& z);
  const HeckeElement* find(const AffineElement& z) const;
  const HeckeElement& publish(const AffineElement& z, HeckeElement value, bool from_journal);
  void load_journal();
  void append_journal(const AffineElement& z, const HeckeElement& c);

  const HeckeAlgebra& algebra_;
  std::size_t max_length_;
  std::optional<std::string> journal_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<AffineElement, std::unique_ptr<const HeckeElement>, AffineElementHash> memo_;
  std::unordered_map<AffineElement, Loaded, AffineElementHash> loaded_;
  std::mutex journal_mutex_;
  std::atomic<std::size_t> hits_{0}, misses_{0};
  std::size_t rejected_ = 0;
};

// Path of the KL journal: the LANGDUAL_KL_CACHE environment variable when
// set, otherwise the fallback.
std::optional<std::string> journal_path(const std::optional<std::string>& fallback);

struct ABound {
  int bound = 0;
  bool certified = false;
  std::string certificate;  // "cap", "window" or empty
  std::size_t radius = 0;   // largest radius scanned
};

// a(z) from the degrees of h_{x,y,z} over x, y in ball(L); the table must
// cover length 2(L + window).
ABound a_function_window(const AffineElement& z, KLTable& table, std::size_t L, std::size_t window = 2);

// gamma_{x,y,z}: coefficient of v^{a(z^-1)} in h_{x,y,z^-1}.
std::int64_t gamma_constant(const AffineElement& x, const AffineElement& y, const AffineElement& z, KLTable& table,
                            std::size_t L, std::size_t window = 2);

struct CellPartition {
  std::size_t radius = 0;
  std::vector<std::vector<AffineElement>> classes;  // each sorted, ordered by first element
  std::size_t window = 0;
  std::vector<bool> certified;
  std::size_t class_of(const AffineElement& g) const;
};

// Strongly connected components of the left/right preorder graph in ball(L).
// A class is certified when it meets ball(L-1) and the partition of
// ball(L + window) restricts to it unchanged. The table must cover L + window.
CellPartition cells_in_ball(KLTable& table, std::size_t L, std::size_t ball_cap = 200000, std::size_t threads = 1,
                            std::size_t window = 2);

}  // namespace langdual::hecke
