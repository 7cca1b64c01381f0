#include "langdual/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"

namespace langdual::lattice {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// floor-mod into [0, d)
BigInt mod_pos(const BigInt& a, const BigInt& d) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return r;
}

}  // namespace

IntVector to_int_vector(const std::vector<std::int64_t>& v) {
  IntVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(Errc::BadInput, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMatrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows.front().size();
  m.data_.reserve(m.rows_ * m.cols_);
  for (const auto& r : rows) {
    if (r.size() != m.cols_) fail(Errc::BadInput, "ragged matrix");
    for (auto x : r) m.data_.emplace_back(static_cast<long>(x));
  }
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<long>& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

BigInt& IntMatrix::at(std::size_t i, std::size_t j) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix index");
  return data_[i * cols_ + j];
}

const BigInt& IntMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix index");
  return data_[i * cols_ + j];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) fail(Errc::BadInput, "matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = data_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out.data_[i * rhs.cols_ + j] += a * rhs.data_[k * rhs.cols_ + j];
    }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) fail(Errc::BadInput, "matrix sum shape mismatch");
  IntMatrix out(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += rhs.data_[k];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) fail(Errc::BadInput, "matrix difference shape mismatch");
  IntMatrix out(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= rhs.data_[k];
  return out;
}

IntMatrix IntMatrix::scaled(const BigInt& k) const {
  IntMatrix out(*this);
  for (auto& x : out.data_) x *= k;
  return out;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) fail(Errc::BadInput, "matrix-vector shape mismatch");
  IntVector out(rows_, BigInt(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += data_[i * cols_ + j] * v[j];
  return out;
}

BigInt IntMatrix::determinant() const {
  if (!is_square()) fail(Errc::BadInput, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  std::vector<BigInt> a = data_;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (a[i * n + k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap_row * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = t;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

IntMatrix IntMatrix::adjugate() const {
  if (!is_square()) fail(Errc::BadInput, "adjugate of non-square matrix");
  const std::size_t n = rows_;
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = at(r, c);
          ++cc;
        }
        ++rr;
      }
      BigInt cof = minor.determinant();
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;
    }
  return adj;
}

std::vector<BigInt> IntMatrix::leading_minors() const {
  if (!is_square()) fail(Errc::BadInput, "leading minors of non-square matrix");
  std::vector<BigInt> out;
  for (std::size_t k = 1; k <= rows_; ++k) {
    IntMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = at(i, j);
    out.push_back(sub.determinant());
  }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_int64() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const BigInt& x = at(i, j);
      if (!x.fits_slong_p()) fail(Errc::Overflow, "matrix entry exceeds 64 bits");
      out[i][j] = x.get_si();
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << at(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::uint64_t IntMatrix::fingerprint() const { return fnv1a(0xcbf29ce484222325ull, to_string()); }

IntMatrix inverse_unimodular(const IntMatrix& m) {
  BigInt det = m.determinant();
  if (det != 1 && det != -1) fail(Errc::NonPerfectPairing, "matrix is not unimodular, det = " + det.get_str());
  IntMatrix adj = m.adjugate();
  return det == 1 ? adj : adj.scaled(-1);
}

// ---------------------------------------------------------------- Smith form

std::vector<BigInt> SnfDecomposition::diagonal() const {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

namespace {

struct SnfWork {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d(a, j), d(b, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d(i, a), d(i, b));
    for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
  }
  // row[target] += k * row[src]
  void add_row(std::size_t target, std::size_t src, const BigInt& k) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(target, j) += k * d(src, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(target, j) += k * u(src, j);
  }
  // col[target] += k * col[src]
  void add_col(std::size_t target, std::size_t src, const BigInt& k) {
    for (std::size_t i = 0; i < d.rows(); ++i) d(i, target) += k * d(i, src);
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, target) += k * v(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(r, j) = -d(r, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
  }

  // Smallest nonzero |entry| in the block [t.., t..], row-major tie-break.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < d.rows(); ++i)
      for (std::size_t j = t; j < d.cols(); ++j) {
        const BigInt& x = d(i, j);
        if (x == 0) continue;
        BigInt ax = abs_big(x);
        if (!found || ax < best) {
          best = ax;
          pi = i;
          pj = j;
          found = true;
        }
      }
    return found;
  }
};

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& m) {
  SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!w.find_pivot(t, pi, pj)) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (w.d(i, t) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(i, t).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_row(i, t, BigInt(-q));
        if (w.d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (w.d(t, j) == 0) continue;
        BigInt q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(t, j).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_col(j, t, BigInt(-q));
        if (w.d(t, j) != 0) clean = false;
      }
      if (clean) {
        // Divisibility: every remaining entry must be a multiple of the pivot.
        for (std::size_t i = t + 1; i < r && clean; ++i)
          for (std::size_t j = t + 1; j < c; ++j) {
            BigInt rem;
            mpz_tdiv_r(rem.get_mpz_t(), w.d(i, j).get_mpz_t(), w.d(t, t).get_mpz_t());
            if (rem != 0) {
              w.add_row(t, i, BigInt(1));
              clean = false;
              break;
            }
          }
        if (clean) break;
      }
      w.find_pivot(t, pi, pj);
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
    }
    if (w.d(t, t) < 0) w.negate_row(t);
  }
  return SnfDecomposition{std::move(w.u), std::move(w.d), std::move(w.v), t};
}

bool verify_snf(const SnfDecomposition& snf, const IntMatrix& m) {
  if (snf.U * m * snf.V != snf.D) return false;
  BigInt du = snf.U.determinant();
  BigInt dv = snf.V.determinant();
  if ((du != 1 && du != -1) || (dv != 1 && dv != -1)) return false;
  for (std::size_t i = 0; i < snf.D.rows(); ++i)
    for (std::size_t j = 0; j < snf.D.cols(); ++j)
      if (i != j && snf.D(i, j) != 0) return false;
  auto diag = snf.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (i < snf.rank) {
      if (diag[i] < 1) return false;
      if (i + 1 < snf.rank && !mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t())) return false;
    } else if (diag[i] != 0) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- QmodZ

QmodZ::QmodZ(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(Errc::BadInput, "zero denominator");
  value_ = BigRat(num, den);
  value_.canonicalize();
  reduce();
}

QmodZ::QmodZ(const BigRat& q) : value_(q) {
  value_.canonicalize();
  reduce();
}

void QmodZ::reduce() {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  value_ -= fl;
  value_.canonicalize();
}

QmodZ QmodZ::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return QmodZ(BigInt(text), BigInt(1));
    return QmodZ(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    fail(Errc::BadInput, "cannot parse Q/Z value '" + text + "'");
  }
}

std::string QmodZ::to_string() const { return num().get_str() + "/" + den().get_str(); }

// ---------------------------------------------------------------- groups

FiniteAbelianGroup FiniteAbelianGroup::quotient(const IntMatrix& relations) {
  if (!relations.is_square()) fail(Errc::BadInput, "quotient needs a square matrix");
  if (relations.determinant() == 0) fail(Errc::SingularMatrix, "det = 0, quotient is infinite");
  FiniteAbelianGroup g;
  g.relations_ = relations;
  g.snf_ = smith_normal_form(relations);
  g.u_inverse_ = inverse_unimodular(g.snf_.U);
  auto diag = g.snf_.diagonal();
  for (std::size_t p = 0; p < diag.size(); ++p)
    if (diag[p] >= 2) {
      g.factors_.push_back(diag[p]);
      g.positions_.push_back(p);
    }
  g.fingerprint_ = relations.fingerprint();
  return g;
}

BigInt FiniteAbelianGroup::order() const {
  BigInt o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement{fingerprint_, std::vector<BigInt>(factors_.size(), BigInt(0))};
}

GroupElement FiniteAbelianGroup::generator(std::size_t j) const {
  GroupElement g = zero();
  g.residues.at(j) = 1;
  return g;
}

GroupElement FiniteAbelianGroup::class_of(const IntVector& ambient) const {
  if (ambient.size() != ambient_rank()) fail(Errc::BadInput, "ambient vector has wrong rank");
  IntVector u = snf_.U.apply(ambient);
  GroupElement g = zero();
  for (std::size_t j = 0; j < factors_.size(); ++j) g.residues[j] = mod_pos(u[positions_[j]], factors_[j]);
  return g;
}

IntVector FiniteAbelianGroup::representative(const GroupElement& g) const {
  if (!contains(g)) fail(Errc::MismatchedGroups, "element does not belong to this group");
  IntVector t(ambient_rank(), BigInt(0));
  for (std::size_t j = 0; j < factors_.size(); ++j) t[positions_[j]] = g.residues[j];
  return u_inverse_.apply(t);
}

bool FiniteAbelianGroup::contains(const GroupElement& a) const {
  if (a.group != fingerprint_ || a.residues.size() != factors_.size()) return false;
  for (std::size_t j = 0; j < factors_.size(); ++j)
    if (a.residues[j] < 0 || a.residues[j] >= factors_[j]) return false;
  return true;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  if (!contains(a) || !contains(b)) fail(Errc::MismatchedGroups, "add across groups");
  GroupElement out = zero();
  for (std::size_t j = 0; j < factors_.size(); ++j)
    out.residues[j] = mod_pos(a.residues[j] + b.residues[j], factors_[j]);
  return out;
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const { return multiple(a, BigInt(-1)); }

GroupElement FiniteAbelianGroup::multiple(const GroupElement& a, const BigInt& k) const {
  if (!contains(a)) fail(Errc::MismatchedGroups, "multiple across groups");
  GroupElement out = zero();
  for (std::size_t j = 0; j < factors_.size(); ++j) out.residues[j] = mod_pos(a.residues[j] * k, factors_[j]);
  return out;
}

BigInt FiniteAbelianGroup::element_order(const GroupElement& a) const {
  if (!contains(a)) fail(Errc::MismatchedGroups, "order across groups");
  BigInt o = 1;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    BigInt g = gcd(a.residues[j], factors_[j]);
    BigInt oj = factors_[j] / g;
    o = lcm(o, oj);
  }
  return o;
}

std::vector<GroupElement> FiniteAbelianGroup::elements(std::size_t cap) const {
  BigInt n = order();
  if (n > cap) fail(Errc::BallTooLarge, "group of order " + n.get_str() + " exceeds enumeration cap");
  std::vector<GroupElement> out;
  out.reserve(n.get_ui());
  GroupElement cur = zero();
  for (;;) {
    out.push_back(cur);
    std::size_t j = factors_.size();
    while (j > 0) {
      --j;
      cur.residues[j] += 1;
      if (cur.residues[j] < factors_[j]) break;
      cur.residues[j] = 0;
      if (j == 0) return out;
    }
    if (factors_.empty()) return out;
  }
}

FiniteAbelianGroup quotient_group(const IntMatrix& a) { return FiniteAbelianGroup::quotient(a); }

// ---------------------------------------------------------------- pairing

IntMatrix transpose_wrt_pairing(const IntMatrix& a, const IntMatrix& gram) {
  if (!a.is_square() || !gram.is_square() || a.rows() != gram.rows())
    fail(Errc::BadInput, "transpose_wrt_pairing shape mismatch");
  BigInt d = gram.determinant();
  if (d != 1 && d != -1) fail(Errc::NonPerfectPairing, "|det G| = " + abs_big(d).get_str());
  return inverse_unimodular(gram) * a.transpose() * gram;
}

TorusPairing::TorusPairing(IntMatrix a, IntMatrix gram)
    : a_(std::move(a)), gram_(std::move(gram)) {
  a_prime_ = transpose_wrt_pairing(a_, gram_);
  gram_inverse_ = inverse_unimodular(gram_);
  det_ = a_.determinant();
  if (det_ == 0) fail(Errc::SingularMatrix, "det A = 0");
  adj_a_ = a_.adjugate();
  adj_a_prime_ = a_prime_.adjugate();
  y_group_ = FiniteAbelianGroup::quotient(a_);
  x_group_ = FiniteAbelianGroup::quotient(a_prime_);
  vt_gram_ = y_group_.snf().V.transpose() * gram_;
  vt_gram_inverse_ = inverse_unimodular(vt_gram_);
}

QmodZ TorusPairing::pair_vectors(const IntVector& y, const IntVector& x) const {
  // <A^{-1} y, x> = (adj(A) y)^T G x / det(A)
  IntVector ay = adj_a_.apply(y);
  IntVector gx = gram_.apply(x);
  BigInt s = 0;
  for (std::size_t i = 0; i < ay.size(); ++i) s += ay[i] * gx[i];
  return QmodZ(s, det_);
}

QmodZ TorusPairing::pair(const GroupElement& y_class, const GroupElement& x_class) const {
  if (!y_group_.contains(y_class) || !x_group_.contains(x_class))
    fail(Errc::MismatchedGroups, "classes do not come from Y/AY and X/A'X of this pairing");
  return pair_vectors(y_group_.representative(y_class), x_group_.representative(x_class));
}

void TorusPairing::check_character(const Character& theta) const {
  if (theta.size() != y_group_.ngens())
    fail(Errc::InvalidCharacter, "expected " + std::to_string(y_group_.ngens()) + " generator values");
  for (std::size_t j = 0; j < theta.size(); ++j)
    if (!mpz_divisible_p(y_group_.invariant_factors()[j].get_mpz_t(), theta[j].den().get_mpz_t()))
      fail(Errc::InvalidCharacter, "value " + theta[j].to_string() + " has order not dividing " +
                                       y_group_.invariant_factors()[j].get_str());
}

QmodZ TorusPairing::evaluate(const Character& theta, const GroupElement& y_class) const {
  check_character(theta);
  if (!y_group_.contains(y_class)) fail(Errc::MismatchedGroups, "class not in Y/AY");
  QmodZ out;
  for (std::size_t j = 0; j < theta.size(); ++j) out = out + theta[j].times(y_class.residues[j]);
  return out;
}

BigInt TorusPairing::character_order(const Character& theta) const {
  BigInt o = 1;
  for (const auto& t : theta) o = lcm(o, t.order());
  return o;
}

GroupElement TorusPairing::dual_character(const Character& theta) const {
  check_character(theta);
  // (g_j, x) = (V^T G x)_p / d_p, so x = (V^T G)^{-1} t with t_p = theta_j * d_p.
  IntVector t(a_.rows(), BigInt(0));
  for (std::size_t j = 0; j < theta.size(); ++j) {
    BigInt d = y_group_.invariant_factors()[j];
    BigRat scaled = theta[j].value() * d;
    t[y_group_.position(j)] = scaled.get_num();
  }
  return x_group_.class_of(vt_gram_inverse_.apply(t));
}

Character TorusPairing::character_of(const GroupElement& x_class) const {
  if (!x_group_.contains(x_class)) fail(Errc::MismatchedGroups, "class not in X/A'X");
  IntVector s = vt_gram_.apply(x_group_.representative(x_class));
  Character out;
  for (std::size_t j = 0; j < y_group_.ngens(); ++j)
    out.emplace_back(s[y_group_.position(j)], y_group_.invariant_factors()[j]);
  return out;
}

std::vector<QmodZ> TorusPairing::y_kernel_point(const GroupElement& y_class) const {
  IntVector v = adj_a_.apply(y_group_.representative(y_class));
  std::vector<QmodZ> out;
  for (const auto& c : v) out.emplace_back(c, det_);
  return out;
}

std::vector<QmodZ> TorusPairing::x_kernel_point(const GroupElement& x_class) const {
  BigInt det_prime = a_prime_.determinant();
  IntVector v = adj_a_prime_.apply(x_group_.representative(x_class));
  std::vector<QmodZ> out;
  for (const auto& c : v) out.emplace_back(c, det_prime);
  return out;
}

QmodZ quotient_pairing(const GroupElement& y_class, const GroupElement& x_class, const IntMatrix& a,
                       const IntMatrix& gram) {
  return TorusPairing(a, gram).pair(y_class, x_class);
}

GroupElement dual_character(const Character& theta, const IntMatrix& a, const IntMatrix& gram) {
  return TorusPairing(a, gram).dual_character(theta);
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const BigInt& v) {
  if (v.fits_slong_p()) return nlohmann::json(v.get_si());
  return nlohmann::json(v.get_str());
}

nlohmann::json to_json(const IntMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(Errc::BadInput, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(Errc::BadInput, "matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = j[r][c];
      if (e.is_number_integer()) {
        m(r, c) = static_cast<long>(e.get<std::int64_t>());
      } else if (e.is_string()) {
        try {
          m(r, c) = BigInt(e.get<std::string>());
        } catch (const std::invalid_argument&) {
          fail(Errc::BadInput, "bad integer string in matrix");
        }
      } else {
        fail(Errc::BadInput, "matrix entries must be integers");
      }
    }
  }
  return m;
}

}  // namespace langdual::lattice
