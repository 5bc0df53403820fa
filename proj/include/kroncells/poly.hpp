#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace kroncells {

// Polynomial in two commuting variables with big-integer coefficients; exponents (a, b).
class Poly2 {
 public:
  using Exponent = std::pair<int, int>;

  Poly2() = default;
  static Poly2 constant(long c) {
    Poly2 p;
    p.add({0, 0}, mpz_class(c));
    return p;
  }
  static Poly2 monomial(int a, int b, long c = 1) {
    Poly2 p;
    p.add({a, b}, mpz_class(c));
    return p;
  }

  const std::map<Exponent, mpz_class>& terms() const& { return terms_; }
  std::map<Exponent, mpz_class> terms() && { return std::move(terms_); }
  mpz_class coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? mpz_class(0) : it->second;
  }
  bool is_zero() const { return terms_.empty(); }

  void add(Exponent e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly2& operator+=(const Poly2& o) {
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  Poly2& operator-=(const Poly2& o) {
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return p;
  }
  Poly2 pow(int k) const {
    Poly2 r = constant(1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }
  friend bool operator==(const Poly2&, const Poly2&) = default;

  mpz_class total() const {
    mpz_class s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  std::string str(const std::string& x = "y1", const std::string& y = "y2") const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      mpz_class a = abs(c);
      bool bare = e.first == 0 && e.second == 0;
      if (a != 1 || bare) s += a.get_str();
      auto var = [&](const std::string& v, int k) {
        if (k == 0) return;
        s += v;
        if (k > 1) s += "^" + std::to_string(k);
      };
      var(x, e.first);
      var(y, e.second);
    }
    return s;
  }

 private:
  std::map<Exponent, mpz_class> terms_;
};

// Laurent polynomial in q with coefficients in Z/2^64. Used where the final coefficients are
// known to be nonnegative and below 2^64, so wrapping intermediate values is harmless.
struct QPoly {
  int low = 0;
  std::vector<std::uint64_t> coeff;

  bool empty() const { return coeff.empty(); }
  int high() const { return low + int(coeff.size()) - 1; }
  std::uint64_t at(int e) const {
    if (coeff.empty() || e < low || e > high()) return 0;
    return coeff[std::size_t(e - low)];
  }

  static QPoly monomial(int e, std::uint64_t c = 1) { return QPoly{e, {c}}; }

  void trim() {
    std::size_t b = 0, e = coeff.size();
    while (b < e && coeff[b] == 0) ++b;
    while (e > b && coeff[e - 1] == 0) --e;
    if (b == e) {
      coeff.clear();
      low = 0;
      return;
    }
    coeff = std::vector<std::uint64_t>(coeff.begin() + std::ptrdiff_t(b), coeff.begin() + std::ptrdiff_t(e));
    low += int(b);
  }

  // this += sign * a * b * q^shift
  void add_product(const QPoly& a, const QPoly& b, int shift, bool negate = false) {
    if (a.empty() || b.empty()) return;
    int lo = a.low + b.low + shift, hi = a.high() + b.high() + shift;
    reserve(lo, hi);
    std::uint64_t* out = coeff.data() + (lo - low);
    for (std::size_t i = 0; i < a.coeff.size(); ++i) {
      std::uint64_t x = negate ? std::uint64_t(0) - a.coeff[i] : a.coeff[i];
      if (x == 0) continue;
      std::uint64_t* row = out + i;
      for (std::size_t j = 0; j < b.coeff.size(); ++j) row[j] += x * b.coeff[j];
    }
  }
  void add(const QPoly& a, bool negate = false) {
    if (a.empty()) return;
    reserve(a.low, a.high());
    for (std::size_t i = 0; i < a.coeff.size(); ++i) {
      std::uint64_t& c = coeff[std::size_t(a.low - low) + i];
      c = negate ? c - a.coeff[i] : c + a.coeff[i];
    }
  }

  std::uint64_t value_at_one() const {
    std::uint64_t s = 0;
    for (auto c : coeff) s += c;
    return s;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) {
    int lo = std::min(a.empty() ? 0 : a.low, b.empty() ? 0 : b.low);
    int hi = std::max(a.empty() ? 0 : a.high(), b.empty() ? 0 : b.high());
    for (int e = lo; e <= hi; ++e)
      if (a.at(e) != b.at(e)) return false;
    return true;
  }

 private:
  void reserve(int lo, int hi) {
    if (coeff.empty()) {
      low = lo;
      coeff.assign(std::size_t(hi - lo + 1), 0);
      return;
    }
    if (lo < low) {
      coeff.insert(coeff.begin(), std::size_t(low - lo), 0);
      low = lo;
    }
    if (hi > high()) coeff.resize(std::size_t(hi - low + 1), 0);
  }
};

// Polynomial in q with big-integer coefficients (exponent = index).
struct CountingPolynomial {
  std::vector<mpz_class> coeff;

  static CountingPolynomial from(const QPoly& p) {
    require(p.empty() || p.low >= 0, "negative exponent in a counting polynomial");
    CountingPolynomial c;
    for (int e = 0; !p.empty() && e <= p.high(); ++e) c.coeff.push_back(mpz_class(std::to_string(p.at(e))));
    return c;
  }
  void add_term(std::size_t e, const mpz_class& c = 1) {
    if (coeff.size() <= e) coeff.resize(e + 1, 0);
    coeff[e] += c;
  }
  mpz_class eval(long q) const {
    mpz_class s = 0, pw = 1;
    for (const auto& c : coeff) {
      s += c * pw;
      pw *= q;
    }
    return s;
  }
  void trim() {
    while (!coeff.empty() && coeff.back() == 0) coeff.pop_back();
  }
  friend bool operator==(CountingPolynomial a, CountingPolynomial b) {
    a.trim();
    b.trim();
    return a.coeff == b.coeff;
  }
  std::string str() const {
    std::string s;
    for (std::size_t e = coeff.size(); e-- > 0;) {
      if (coeff[e] == 0) continue;
      if (!s.empty()) s += " + ";
      if (coeff[e] != 1 || e == 0) s += coeff[e].get_str();
      if (e >= 1) s += "q";
      if (e >= 2) s += "^" + std::to_string(e);
    }
    return s.empty() ? "0" : s;
  }
};

inline json to_json_value(const CountingPolynomial& p) {
  json a = json::array();
  for (const auto& c : p.coeff) a.push_back(c.get_str());
  return a;
}

}  // namespace kroncells
