#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace kroncells {

using json = nlohmann::json;

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Element of the free group on the arrows of K(n). Letter +i is the arrow
// alpha_i, -i its inverse. Always stored reduced.
class Word {
 public:
  Word() = default;
  explicit Word(const std::vector<int>& letters) {
    for (int x : letters) push(x);
  }

  static Word generator(int i, int sign = 1) { return Word({sign * i}); }

  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const {
    Word w;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
    return w;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word w = a;
    for (int x : b.letters_) w.push(x);
    return w;
  }

  // exponent vector in Z^n
  std::vector<int> abelianize(int n) const {
    std::vector<int> chi(n, 0);
    for (int x : letters_) chi.at(std::abs(x) - 1) += x > 0 ? 1 : -1;
    return chi;
  }

  // the automorphism alpha_i -> alpha_i^{-1}
  Word flipped() const {
    Word w;
    for (int x : letters_) w.letters_.push_back(-x);
    return w;
  }

  std::string str() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (int x : letters_) {
      s += "a" + std::to_string(std::abs(x));
      if (x < 0) s += "^-1";
    }
    return s;
  }

  // shortlex order: by length, then letters
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    return a.letters_ <=> b.letters_;
  }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  void push(int x) {
    if (x == 0) throw InvalidArgument("word letter 0");
    if (!letters_.empty() && letters_.back() == -x)
      letters_.pop_back();
    else
      letters_.push_back(x);
  }
  std::vector<int> letters_;
};

inline Word word_mul(const Word& a, const Word& b) { return a * b; }

inline void to_json(json& j, const Word& w) { j = w.letters(); }
inline void from_json(const json& j, Word& w) { w = Word(j.get<std::vector<int>>()); }

// Vertex (layer, word) of the universal cover; arrows run (2,w) -> (1, w alpha_i).
struct CoverVertex {
  int layer = 1;
  Word word;

  friend std::strong_ordering operator<=>(const CoverVertex& a, const CoverVertex& b) {
    if (auto c = a.layer <=> b.layer; c != 0) return c;
    return a.word <=> b.word;
  }
  friend bool operator==(const CoverVertex&, const CoverVertex&) = default;

  std::string str() const { return "(" + std::to_string(layer) + "," + word.str() + ")"; }
};

inline CoverVertex translate(const Word& g, const CoverVertex& v) { return {v.layer, g * v.word}; }

inline void to_json(json& j, const CoverVertex& v) { j = json{{"layer", v.layer}, {"word", v.word}}; }
inline void from_json(const json& j, CoverVertex& v) {
  v.layer = j.at("layer").get<int>();
  v.word = j.at("word").get<Word>();
}

// Finitely supported nonnegative integer vector indexed by vertex ids.
class DimVector {
 public:
  DimVector() = default;
  DimVector(std::initializer_list<std::pair<const int, std::int64_t>> init) {
    for (auto [k, v] : init) set(k, v);
  }

  std::int64_t operator[](int v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? 0 : it->second;
  }
  void set(int v, std::int64_t x) {
    if (x < 0) throw InvalidArgument("negative dimension entry");
    if (x == 0)
      entries_.erase(v);
    else
      entries_[v] = x;
  }
  const std::map<int, std::int64_t>& entries() const& { return entries_; }
  std::map<int, std::int64_t> entries() && { return std::move(entries_); }

  DimVector& operator+=(const DimVector& o) {
    for (auto [k, v] : o.entries_) set(k, (*this)[k] + v);
    return *this;
  }
  DimVector& operator-=(const DimVector& o) {
    for (auto [k, v] : o.entries_) {
      if ((*this)[k] < v) throw InvalidArgument("dimension vector subtraction went negative");
      set(k, (*this)[k] - v);
    }
    return *this;
  }
  friend DimVector operator+(DimVector a, const DimVector& b) { return a += b; }
  friend DimVector operator-(DimVector a, const DimVector& b) { return a -= b; }
  friend bool operator==(const DimVector&, const DimVector&) = default;

 private:
  std::map<int, std::int64_t> entries_;
};

// Dimension vector of a K(n)-representation: vertex 1 is the sink, vertex 2 the source.
struct KronDim {
  std::int64_t sink = 0;
  std::int64_t source = 0;

  friend KronDim operator+(KronDim a, KronDim b) { return {a.sink + b.sink, a.source + b.source}; }
  friend KronDim operator-(KronDim a, KronDim b) { return {a.sink - b.sink, a.source - b.source}; }
  friend KronDim operator*(std::int64_t c, KronDim a) { return {c * a.sink, c * a.source}; }
  friend auto operator<=>(const KronDim&, const KronDim&) = default;

  bool nonnegative() const { return sink >= 0 && source >= 0; }
  bool fits_in(KronDim d) const { return nonnegative() && sink <= d.sink && source <= d.source; }
  DimVector as_dim_vector() const {
    DimVector d;
    d.set(1, sink);
    d.set(2, source);
    return d;
  }
  std::string str() const { return "(" + std::to_string(sink) + "," + std::to_string(source) + ")"; }
};

inline void to_json(json& j, const KronDim& d) { j = json::array({d.sink, d.source}); }

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<int> vertices, std::vector<std::pair<int, int>> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::sort(vertices_.begin(), vertices_.end());
    for (auto [s, t] : arrows_)
      if (!has_vertex(s) || !has_vertex(t)) throw InvalidArgument("arrow endpoint not a vertex");
    if (!acyclic()) throw InvalidArgument("quiver has an oriented cycle");
  }

  static Quiver kronecker(int n) {
    return Quiver({1, 2}, std::vector<std::pair<int, int>>(n, {2, 1}));
  }

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
  bool has_vertex(int v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

 private:
  bool acyclic() const {
    std::map<int, int> indeg;
    for (int v : vertices_) indeg[v] = 0;
    for (auto [s, t] : arrows_) ++indeg[t];
    std::vector<int> ready;
    for (auto [v, d] : indeg)
      if (d == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
      int v = ready.back();
      ready.pop_back();
      ++seen;
      for (auto [s, t] : arrows_)
        if (s == v && --indeg[t] == 0) ready.push_back(t);
    }
    return seen == vertices_.size();
  }

  std::vector<int> vertices_;
  std::vector<std::pair<int, int>> arrows_;
};

inline std::int64_t euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
  for (const DimVector* d : {&a, &b})
    for (auto [k, v] : d->entries())
      if (!q.has_vertex(k)) throw InvalidArgument("dimension vector off the quiver");
  std::int64_t s = 0;
  for (int v : q.vertices()) s += a[v] * b[v];
  for (auto [src, tgt] : q.arrows()) s -= a[src] * b[tgt];
  return s;
}

inline std::int64_t euler_form(int n, KronDim a, KronDim b) {
  return a.sink * b.sink + a.source * b.source - n * a.source * b.sink;
}

// u_0 = 0, u_1 = 1, u_{k+1} = n u_k - u_{k-1}; defined for k >= -1 (u_{-1} = -1).
inline std::int64_t chebyshev(int n, int k) {
  if (k < -1) throw InvalidArgument("chebyshev index below -1");
  if (k == -1) return -1;
  std::int64_t a = 0, b = 1;
  if (k == 0) return 0;
  for (int i = 1; i < k; ++i) {
    std::int64_t c = n * b - a;
    a = b;
    b = c;
  }
  return b;
}

inline KronDim preprojective_dim(int n, int m) {
  if (m < 0) throw InvalidArgument("preprojective index must be >= 0");
  return {chebyshev(n, m), chebyshev(n, m - 1) < 0 ? 0 : chebyshev(n, m - 1)};
}

inline KronDim preinjective_dim(int n, int m) {
  KronDim p = preprojective_dim(n, m);
  return {p.source, p.sink};
}

// dimension vector of the truncated preprojective obtained from P_{m+1} by removing r copies of P_m
inline KronDim truncated_dim(int n, int m, int r) {
  return preprojective_dim(n, m + 1) - r * preprojective_dim(n, m);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace kroncells
