#pragma once

// Sparse Laurent polynomials in v with 64-bit integer coefficients. Every
// operation is overflow-checked and throws Overflow instead of wrapping.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace langdual {

class LaurentPoly {
 public:
  using Term = std::pair<int, std::int64_t>;  // (exponent, coefficient)

  LaurentPoly() = default;
  LaurentPoly(std::int64_t constant);  // NOLINT: implicit on purpose
  static LaurentPoly monomial(int exponent, std::int64_t coeff = 1);
  static LaurentPoly v() { return monomial(1); }
  static LaurentPoly v_inv() { return monomial(-1); }
  // v - v^{-1}
  static LaurentPoly q_diff();

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  int max_degree() const;  // requires non-zero
  int min_degree() const;
  std::int64_t coeff(int exponent) const;
  std::int64_t at_one() const;  // value at v = 1

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly shifted(int k) const;  // times v^k
  LaurentPoly bar() const;           // v -> v^{-1}

  // Exact division; returns false when a nonzero remainder is left.
  bool divide_exact(const LaurentPoly& d, LaurentPoly& quotient) const;

  bool operator==(const LaurentPoly& o) const noexcept { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const noexcept { return !(*this == o); }

  // "v^-2 + 3 + v^4", ascending exponents.
  std::string to_string() const;
  static LaurentPoly parse(const std::string& text);

 private:
  std::vector<Term> terms_;  // sorted by exponent, no zero coefficients
};

nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j);

}  // namespace langdual
