#pragma once

// Exact arithmetic in Q(zeta_N): rational coordinates on the power basis
// 1, zeta, ..., zeta^{phi(N)-1}, reduced modulo the cyclotomic polynomial.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "langdual/lattice.hpp"

namespace langdual::mckay {

using lattice::BigInt;
using lattice::BigRat;

// Coefficients of Phi_N, constant term first.
const std::vector<long>& cyclotomic_polynomial(std::size_t N);

class Cyclotomic {
 public:
  explicit Cyclotomic(std::size_t N = 1, const BigRat& q = 0);
  static Cyclotomic zeta(std::size_t N, long k);
  // sum of coeff * zeta_N^k over arbitrary exponents
  static Cyclotomic from_terms(std::size_t N, const std::vector<std::pair<long, BigRat>>& terms);

  std::size_t conductor() const noexcept { return N_; }
  const std::vector<BigRat>& coefficients() const noexcept { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  BigRat rational() const;  // requires is_rational()

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const BigRat& q) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  // zeta -> zeta^r, r coprime to N
  Cyclotomic galois(long r) const;
  Cyclotomic conj() const { return galois(-1); }
  // Same number in Q(zeta_M) for a multiple M of N.
  Cyclotomic embed(std::size_t M) const;

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
  bool operator<(const Cyclotomic& o) const;

  std::string to_string() const;

 private:
  void check(const Cyclotomic& o) const;
  std::size_t N_;
  std::vector<BigRat> c_;
};

nlohmann::json to_json(const Cyclotomic& x);
// [[k, "p/q"], ...] meaning sum (p/q) zeta_N^k.
Cyclotomic cyclotomic_from_json(std::size_t N, const nlohmann::json& j);

struct Matrix2 {
  std::array<Cyclotomic, 4> e;  // row-major

  Matrix2 operator*(const Matrix2& o) const;
  Matrix2 inverse_sl2() const;  // adjugate; exact inverse when det = 1
  Cyclotomic trace() const { return e[0] + e[3]; }
  Cyclotomic det() const { return e[0] * e[3] - e[1] * e[2]; }
  bool operator==(const Matrix2& o) const { return e == o.e; }
  bool operator<(const Matrix2& o) const { return e < o.e; }

  static Matrix2 identity(std::size_t N);
  static Matrix2 diag(const Cyclotomic& a, const Cyclotomic& d);
  // a + bi + cj + dk -> [[a + bi, c + di], [-c + di, a - bi]]; needs 4 | N.
  static Matrix2 quaternion(const Cyclotomic& a, const Cyclotomic& b, const Cyclotomic& c, const Cyclotomic& d);
};

}  // namespace langdual::mckay
