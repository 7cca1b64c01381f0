#pragma once

// Exact integer linear algebra: matrices over Z, Smith normal form, finite
// abelian quotients Y/AY, and the Q/Z-valued pairing between Y/AY and X/A'X.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace langdual::lattice {

using BigInt = mpz_class;
using BigRat = mpq_class;
using IntVector = std::vector<BigInt>;

IntVector to_int_vector(const std::vector<std::int64_t>& v);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static IntMatrix diagonal(const std::vector<long>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  // Bounds-checked access.
  BigInt& at(std::size_t i, std::size_t j);
  const BigInt& at(std::size_t i, std::size_t j) const;
  BigInt& operator()(std::size_t i, std::size_t j) { return at(i, j); }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return at(i, j); }

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix scaled(const BigInt& k) const;
  IntVector apply(const IntVector& v) const;

  // Exact determinant by fraction-free (Bareiss) elimination.
  BigInt determinant() const;
  // adj(M) with M * adj(M) = det(M) * I.
  IntMatrix adjugate() const;
  // Leading principal minors det(M[0..k, 0..k]) for k = 1..n.
  std::vector<BigInt> leading_minors() const;

  bool operator==(const IntMatrix& other) const;
  bool operator!=(const IntMatrix& other) const { return !(*this == other); }

  std::vector<std::vector<std::int64_t>> to_int64() const;
  std::string to_string() const;
  std::uint64_t fingerprint() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

// Inverse of a matrix with determinant +-1; throws NonPerfectPairing otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  // d_1 | d_2 | ... | d_r followed by zeros, length min(rows, cols).
  std::vector<BigInt> diagonal() const;
};

// U * M * V = D with U, V unimodular. The pivot is always the entry of least
// nonzero absolute value in the active block, ties broken row-major, so the
// output is a deterministic function of M.
SnfDecomposition smith_normal_form(const IntMatrix& m);

// Re-checks U*M*V == D, |det U| = |det V| = 1, and the divisibility chain.
bool verify_snf(const SnfDecomposition& snf, const IntMatrix& m);

// An element of Q/Z in lowest terms, 0 <= num < den.
class QmodZ {
 public:
  QmodZ() : value_(0) {}
  QmodZ(const BigInt& num, const BigInt& den);
  explicit QmodZ(const BigRat& q);
  static QmodZ parse(const std::string& text);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  const BigRat& value() const noexcept { return value_; }
  // Order in Q/Z, which is the reduced denominator.
  BigInt order() const { return den(); }
  bool is_zero() const { return value_ == 0; }

  QmodZ operator+(const QmodZ& o) const { return QmodZ(BigRat(value_ + o.value_)); }
  QmodZ operator-(const QmodZ& o) const { return QmodZ(BigRat(value_ - o.value_)); }
  QmodZ operator-() const { return QmodZ(BigRat(-value_)); }
  QmodZ times(const BigInt& k) const { return QmodZ(BigRat(value_ * k)); }
  bool operator==(const QmodZ& o) const { return value_ == o.value_; }
  bool operator!=(const QmodZ& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void reduce();
  BigRat value_;
};

struct GroupElement {
  std::uint64_t group = 0;  // fingerprint of the relation matrix
  std::vector<BigInt> residues;

  bool operator==(const GroupElement& o) const {
    return group == o.group && residues == o.residues;
  }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

// The finite group Z^n / A Z^n for square nonsingular A, presented through
// the Smith form: y maps to (U y)_p mod d_p on the positions p with d_p >= 2.
class FiniteAbelianGroup {
 public:
  static FiniteAbelianGroup quotient(const IntMatrix& relations);

  const IntMatrix& relations() const noexcept { return relations_; }
  const SnfDecomposition& snf() const noexcept { return snf_; }
  const std::vector<BigInt>& invariant_factors() const noexcept { return factors_; }
  // SNF diagonal position of cyclic factor j.
  std::size_t position(std::size_t j) const { return positions_.at(j); }
  std::size_t ngens() const noexcept { return factors_.size(); }
  std::size_t ambient_rank() const noexcept { return relations_.rows(); }
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }
  BigInt order() const;

  GroupElement zero() const;
  GroupElement generator(std::size_t j) const;
  GroupElement class_of(const IntVector& ambient) const;
  IntVector representative(const GroupElement& g) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement multiple(const GroupElement& a, const BigInt& k) const;
  BigInt element_order(const GroupElement& a) const;
  bool contains(const GroupElement& a) const;

  // All elements in lexicographic residue order; refuses beyond `cap`.
  std::vector<GroupElement> elements(std::size_t cap = 1u << 20) const;

 private:
  IntMatrix relations_;
  SnfDecomposition snf_;
  IntMatrix u_inverse_;
  std::vector<BigInt> factors_;
  std::vector<std::size_t> positions_;
  std::uint64_t fingerprint_ = 0;
};

// A' with <y, A'x> = <Ay, x> for the pairing <y,x> = y^T G x, i.e.
// A' = G^{-1} A^T G. Requires |det G| = 1.
IntMatrix transpose_wrt_pairing(const IntMatrix& a, const IntMatrix& gram);

// A character of a finite abelian group, by its values on the SNF generators.
using Character = std::vector<QmodZ>;

// The perfect pairing Y/AY x X/A'X -> Q/Z, (y, x) = <A^{-1} y, x> mod Z.
class TorusPairing {
 public:
  TorusPairing(IntMatrix a, IntMatrix gram);

  const IntMatrix& a() const noexcept { return a_; }
  const IntMatrix& a_prime() const noexcept { return a_prime_; }
  const IntMatrix& gram() const noexcept { return gram_; }
  const FiniteAbelianGroup& y_group() const noexcept { return y_group_; }
  const FiniteAbelianGroup& x_group() const noexcept { return x_group_; }

  QmodZ pair(const GroupElement& y_class, const GroupElement& x_class) const;
  QmodZ pair_vectors(const IntVector& y, const IntVector& x) const;

  // theta(g_j) must have order dividing d_j; throws InvalidCharacter.
  void check_character(const Character& theta) const;
  QmodZ evaluate(const Character& theta, const GroupElement& y_class) const;
  BigInt character_order(const Character& theta) const;

  // The unique x class with (y, x) = theta(y) for all y.
  GroupElement dual_character(const Character& theta) const;
  // Inverse of dual_character: y |-> (y, x) on the generators.
  Character character_of(const GroupElement& x_class) const;

  // Image of A^{-1} y (resp. A'^{-1} x) in Q/Z (x) Y (resp. X): the points of
  // the torsion torus killed by A (resp. A').
  std::vector<QmodZ> y_kernel_point(const GroupElement& y_class) const;
  std::vector<QmodZ> x_kernel_point(const GroupElement& x_class) const;

 private:
  IntMatrix a_;
  IntMatrix gram_;
  IntMatrix a_prime_;
  IntMatrix gram_inverse_;
  BigInt det_;
  IntMatrix adj_a_;
  IntMatrix adj_a_prime_;
  FiniteAbelianGroup y_group_;
  FiniteAbelianGroup x_group_;
  IntMatrix vt_gram_;            // V^T G, V from the SNF of A
  IntMatrix vt_gram_inverse_;    // (V^T G)^{-1}
};

// Free-function forms of the quotient operations.
FiniteAbelianGroup quotient_group(const IntMatrix& a);
QmodZ quotient_pairing(const GroupElement& y_class, const GroupElement& x_class,
                       const IntMatrix& a, const IntMatrix& gram);
GroupElement dual_character(const Character& theta, const IntMatrix& a, const IntMatrix& gram);

nlohmann::json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BigInt& v);

}  // namespace langdual::lattice
