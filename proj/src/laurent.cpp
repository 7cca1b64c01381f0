#include "langdual/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <nlohmann/json.hpp>

#include "langdual/error.hpp"

namespace langdual {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "Laurent coefficient overflow");
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "Laurent coefficient overflow");
  return r;
}

int exp_checked(int a, int b) {
  int r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "Laurent exponent overflow");
  return r;
}

}  // namespace

LaurentPoly::LaurentPoly(std::int64_t constant) {
  if (constant != 0) terms_.emplace_back(0, constant);
}

LaurentPoly LaurentPoly::monomial(int exponent, std::int64_t coeff) {
  LaurentPoly p;
  if (coeff != 0) p.terms_.emplace_back(exponent, coeff);
  return p;
}

LaurentPoly LaurentPoly::q_diff() {
  LaurentPoly p;
  p.terms_ = {{-1, -1}, {1, 1}};
  return p;
}

int LaurentPoly::max_degree() const {
  if (terms_.empty()) fail(Errc::BadInput, "degree of the zero polynomial");
  return terms_.back().first;
}

int LaurentPoly::min_degree() const {
  if (terms_.empty()) fail(Errc::BadInput, "degree of the zero polynomial");
  return terms_.front().first;
}

std::int64_t LaurentPoly::coeff(int exponent) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                             [](const Term& t, int e) { return t.first < e; });
  return it != terms_.end() && it->first == exponent ? it->second : 0;
}

std::int64_t LaurentPoly::at_one() const {
  std::int64_t s = 0;
  for (const auto& t : terms_) s = add_checked(s, t.second);
  return s;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      std::int64_t c = add_checked(terms_[i].second, o.terms_[j].second);
      if (c != 0) r.terms_.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = mul_checked(t.second, -1);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.terms_.size() == 1 && o.terms_[0].second == 1) return shifted(o.terms_[0].first);
  if (terms_.size() == 1 && terms_[0].second == 1) return o.shifted(terms_[0].first);
  std::map<int, std::int64_t> acc;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto& slot = acc[exp_checked(a.first, b.first)];
      slot = add_checked(slot, mul_checked(a.second, b.second));
    }
  LaurentPoly r;
  for (const auto& [e, c] : acc)
    if (c != 0) r.terms_.emplace_back(e, c);
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.first = exp_checked(t.first, k);
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  r.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
  return r;
}

bool LaurentPoly::divide_exact(const LaurentPoly& d, LaurentPoly& quotient) const {
  if (d.is_zero()) fail(Errc::DivisionInexact, "division by zero");
  quotient = LaurentPoly();
  LaurentPoly rem = *this;
  const int dtop = d.max_degree();
  const std::int64_t lead = d.terms_.back().second;
  // Each step removes the top term; a remainder narrower than the divisor
  // cannot be divisible.
  while (!rem.is_zero()) {
    const int rtop = rem.max_degree();
    if (rtop - dtop < rem.min_degree() - d.min_degree()) return false;
    const std::int64_t c = rem.terms_.back().second;
    if (c % lead != 0) return false;
    LaurentPoly q = monomial(rtop - dtop, c / lead);
    quotient += q;
    rem -= q * d;
  }
  return true;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += "v";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(Errc::BadInput, "empty polynomial");
  if (s == "0") return {};
  LaurentPoly r;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail(Errc::BadInput, "expected sign in '" + text + "'");
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::int64_t coeff = start == i ? 1 : std::stoll(s.substr(start, i - start));
    int exponent = 0;
    if (i < s.size() && s[i] == 'v') {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t es = i;
        if (i < s.size() && s[i] == '-') ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (es == i) fail(Errc::BadInput, "missing exponent in '" + text + "'");
        exponent = std::stoi(s.substr(es, i - es));
      }
    } else if (start == i) {
      fail(Errc::BadInput, "cannot parse polynomial '" + text + "'");
    }
    r += monomial(exponent, sign * coeff);
  }
  return r;
}

nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) j.push_back({e, c});
  return j;
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(Errc::BadInput, "polynomial JSON must be [[exp, coeff], ...]");
  LaurentPoly p;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number_integer())
      fail(Errc::BadInput, "polynomial term must be [exp, coeff]");
    p += LaurentPoly::monomial(t[0].get<int>(), t[1].get<std::int64_t>());
  }
  return p;
}

}  // namespace langdual
