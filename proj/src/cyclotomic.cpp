#include "langdual/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"

namespace langdual::mckay {

namespace {

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  // both monic, constant term first
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    long a = num[k];
    q[k - dn] = a;
    for (std::size_t t = 0; t <= dn; ++t) num[k - dn + t] -= a * den[t];
  }
  for (std::size_t k = 0; k < dn; ++k)
    if (num[k] != 0) fail(Errc::BadInput, "cyclotomic division not exact");
  return q;
}

std::size_t totient_from(const std::vector<long>& p) { return p.size() - 1; }

}  // namespace

const std::vector<long>& cyclotomic_polynomial(std::size_t N) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<long>> cache;
  if (N == 0) fail(Errc::BadParameter, "conductor must be positive");
  std::lock_guard lock(mutex);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d
  std::vector<long> p(N + 1, 0);
  p[0] = -1;
  p[N] = 1;
  for (std::size_t d = 1; d < N; ++d) {
    if (N % d) continue;
    std::vector<long> phid;
    auto jt = cache.find(d);
    if (jt == cache.end()) {
      // compute without recursion into the locked function
      std::vector<long> q(d + 1, 0);
      q[0] = -1;
      q[d] = 1;
      for (std::size_t e = 1; e < d; ++e)
        if (d % e == 0) q = poly_div_exact(q, cache.at(e));
      jt = cache.emplace(d, q).first;
    }
    p = poly_div_exact(p, jt->second);
  }
  return cache.emplace(N, p).first->second;
}

Cyclotomic::Cyclotomic(std::size_t N, const BigRat& q) : N_(N) {
  c_.assign(totient_from(cyclotomic_polynomial(N)), BigRat(0));
  c_[0] = q;
}

Cyclotomic Cyclotomic::from_terms(std::size_t N, const std::vector<std::pair<long, BigRat>>& terms) {
  const auto& phi = cyclotomic_polynomial(N);
  const std::size_t d = totient_from(phi);
  std::vector<BigRat> full(N, BigRat(0));
  for (const auto& [k, q] : terms) {
    long r = k % static_cast<long>(N);
    if (r < 0) r += static_cast<long>(N);
    full[r] += q;
  }
  for (std::size_t k = N; k-- > d;) {
    if (full[k] == 0) continue;
    BigRat a = full[k];
    for (std::size_t t = 0; t <= d; ++t) full[k - d + t] -= a * phi[t];
  }
  Cyclotomic x(N);
  for (std::size_t k = 0; k < d; ++k) x.c_[k] = full[k];
  return x;
}

Cyclotomic Cyclotomic::zeta(std::size_t N, long k) { return from_terms(N, {{k, BigRat(1)}}); }

bool Cyclotomic::is_zero() const {
  for (const auto& a : c_)
    if (a != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return false;
  return true;
}

BigRat Cyclotomic::rational() const {
  if (!is_rational()) fail(Errc::BadInput, "cyclotomic number is not rational");
  return c_[0];
}

void Cyclotomic::check(const Cyclotomic& o) const {
  if (N_ != o.N_) fail(Errc::BadInput, "cyclotomic conductors differ");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  check(o);
  Cyclotomic r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  check(o);
  Cyclotomic r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

Cyclotomic Cyclotomic::operator*(const BigRat& q) const {
  Cyclotomic r = *this;
  for (auto& a : r.c_) a *= q;
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  check(o);
  const auto& phi = cyclotomic_polynomial(N_);
  const std::size_t d = c_.size();
  std::vector<BigRat> full(2 * d, BigRat(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (o.c_[j] != 0) full[i + j] += c_[i] * o.c_[j];
  }
  for (std::size_t k = full.size(); k-- > d;) {
    if (full[k] == 0) continue;
    BigRat a = full[k];
    for (std::size_t t = 0; t <= d; ++t) full[k - d + t] -= a * phi[t];
  }
  Cyclotomic r(N_);
  for (std::size_t k = 0; k < d; ++k) r.c_[k] = full[k];
  return r;
}

Cyclotomic Cyclotomic::galois(long r) const {
  if (std::gcd(std::abs(r), static_cast<long>(N_)) != 1) fail(Errc::BadParameter, "Galois exponent not coprime to conductor");
  std::vector<std::pair<long, BigRat>> terms;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) terms.emplace_back(static_cast<long>(k) * r, c_[k]);
  return from_terms(N_, terms);
}

Cyclotomic Cyclotomic::embed(std::size_t M) const {
  if (M % N_ != 0) fail(Errc::BadParameter, "embedding needs a multiple of the conductor");
  const long step = static_cast<long>(M / N_);
  std::vector<std::pair<long, BigRat>> terms;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) terms.emplace_back(static_cast<long>(k) * step, c_[k]);
  return from_terms(M, terms);
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return N_ == o.N_ && c_ == o.c_; }

bool Cyclotomic::operator<(const Cyclotomic& o) const {
  if (N_ != o.N_) return N_ < o.N_;
  return c_ < o.c_;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[k].get_str() + ")";
    if (k) out += "*z" + std::to_string(N_) + "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

nlohmann::json to_json(const Cyclotomic& x) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t k = 0; k < x.coefficients().size(); ++k)
    if (x.coefficients()[k] != 0) j.push_back({k, x.coefficients()[k].get_str()});
  return j;
}

Cyclotomic cyclotomic_from_json(std::size_t N, const nlohmann::json& j) {
  if (!j.is_array()) fail(Errc::BadInput, "cyclotomic JSON must be a list of [k, \"p/q\"]");
  std::vector<std::pair<long, BigRat>> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string())
      fail(Errc::BadInput, "cyclotomic term must be [k, \"p/q\"]");
    BigRat q;
    if (q.set_str(t[1].get<std::string>(), 10) != 0) fail(Errc::BadInput, "bad rational in cyclotomic term");
    q.canonicalize();
    terms.emplace_back(t[0].get<long>(), q);
  }
  return Cyclotomic::from_terms(N, terms);
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return Matrix2{{e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3], e[2] * o.e[0] + e[3] * o.e[2],
                  e[2] * o.e[1] + e[3] * o.e[3]}};
}

Matrix2 Matrix2::inverse_sl2() const { return Matrix2{{e[3], -e[1], -e[2], e[0]}}; }

Matrix2 Matrix2::identity(std::size_t N) { return diag(Cyclotomic(N, 1), Cyclotomic(N, 1)); }

Matrix2 Matrix2::diag(const Cyclotomic& a, const Cyclotomic& d) {
  Cyclotomic z(a.conductor());
  return Matrix2{{a, z, z, d}};
}

Matrix2 Matrix2::quaternion(const Cyclotomic& a, const Cyclotomic& b, const Cyclotomic& c, const Cyclotomic& d) {
  const std::size_t N = a.conductor();
  if (N % 4 != 0) fail(Errc::BadParameter, "quaternion matrices need i in the coefficient field");
  Cyclotomic i = Cyclotomic::zeta(N, static_cast<long>(N / 4));
  return Matrix2{{a + b * i, c + d * i, -c + d * i, a - b * i}};
}

}  // namespace langdual::mckay
