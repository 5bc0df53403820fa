#pragma once

#include <map>
#include <set>
#include <vector>

#include "core.hpp"
#include "kronrep.hpp"
#include "linalg.hpp"

namespace kroncells {

// Finitely supported dimension function on the universal cover.
class CoveringDims {
 public:
  CoveringDims() = default;

  std::int64_t operator[](const CoverVertex& v) const {
    auto it = dims_.find(v);
    return it == dims_.end() ? 0 : it->second;
  }
  void add(const CoverVertex& v, std::int64_t x) {
    std::int64_t y = (*this)[v] + x;
    if (y < 0) throw std::logic_error("covering dimension went negative at " + v.str());
    if (y == 0)
      dims_.erase(v);
    else
      dims_[v] = y;
  }
  const std::map<CoverVertex, std::int64_t>& entries() const& { return dims_; }
  std::map<CoverVertex, std::int64_t> entries() && { return std::move(dims_); }
  bool empty() const { return dims_.empty(); }

  CoveringDims& operator+=(const CoveringDims& o) {
    for (const auto& [v, d] : o.dims_) add(v, d);
    return *this;
  }
  CoveringDims& operator-=(const CoveringDims& o) {
    for (const auto& [v, d] : o.dims_) add(v, -d);
    return *this;
  }
  friend CoveringDims operator+(CoveringDims a, const CoveringDims& b) { return a += b; }
  friend CoveringDims operator-(CoveringDims a, const CoveringDims& b) { return a -= b; }
  friend bool operator==(const CoveringDims&, const CoveringDims&) = default;
  friend auto operator<=>(const CoveringDims& a, const CoveringDims& b) { return a.dims_ <=> b.dims_; }

  CoveringDims translated(const Word& g) const {
    CoveringDims t;
    for (const auto& [v, d] : dims_) t.add(translate(g, v), d);
    return t;
  }

  bool fits_in(const CoveringDims& o) const {
    for (const auto& [v, d] : dims_)
      if (d > o[v]) return false;
    return true;
  }

  // the push-down G on dimension vectors
  KronDim pushdown() const {
    KronDim k;
    for (const auto& [v, d] : dims_) (v.layer == 1 ? k.sink : k.source) += d;
    return k;
  }

  std::int64_t total() const {
    std::int64_t s = 0;
    for (const auto& [v, d] : dims_) s += d;
    return s;
  }

 private:
  std::map<CoverVertex, std::int64_t> dims_;
};

inline void to_json(json& j, const CoveringDims& c) {
  j = json::array();
  for (const auto& [v, d] : c.entries()) j.push_back(json{{"layer", v.layer}, {"word", v.word}, {"dim", d}});
}
inline void from_json(const json& j, CoveringDims& c) {
  c = CoveringDims();
  for (const auto& e : j) c.add(CoverVertex{e.at("layer").get<int>(), e.at("word").get<Word>()}, e.at("dim").get<std::int64_t>());
}

// Lifted preprojectives of odd index translate by alpha_j, even index by alpha_j^{-1}.
inline int translation_sign(int m) { return m % 2 == 1 ? 1 : -1; }

inline Word copy_shift(int m, int j) { return Word::generator(j, translation_sign(m)); }

inline CoveringDims lifted_preprojective_dims(int n, int m) {
  require(n >= 2, "n >= 2");
  require(m >= 0, "lifted preprojective index must be >= 0");
  CoveringDims prev, cur;
  if (m == 0) return prev;
  prev.add({1, Word()}, 1);
  if (m == 1) return prev;
  // P_2: the source (2,e) over its n sinks
  cur.add({2, Word()}, 1);
  for (int i = 1; i <= n; ++i) cur.add({1, Word::generator(i)}, 1);
  for (int k = 2; k < m; ++k) {
    CoveringDims next;
    for (int j = 1; j <= n; ++j) next += cur.translated(copy_shift(k, j));
    next -= prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// the translate of the lifted P_m by the j-th shift
inline CoveringDims shifted_lift_dims(int n, int m, int j) { return lifted_preprojective_dims(n, m).translated(copy_shift(m, j)); }

// indices removed in the fixed lift of the truncated preprojective P_{m+1}^{[r]}
inline std::vector<int> fixed_lift_indices(int n, int m, int r) {
  std::vector<int> idx;
  for (int t = 0; t < r; ++t) idx.push_back(m % 2 == 1 ? n - t : t + 1);
  return idx;
}

inline CoveringDims truncated_lift_dims(int n, int m, int r) {
  require(0 <= r && r <= n - 1, "truncation rank must satisfy 0 <= r <= n-1");
  CoveringDims d = lifted_preprojective_dims(n, m + 1);
  if (r > 0) {
    CoveringDims sub = lifted_preprojective_dims(n, m);
    for (int i : fixed_lift_indices(n, m, r)) d -= sub.translated(copy_shift(m, i));
  }
  return d;
}

inline std::int64_t euler_form_covering(int n, const CoveringDims& a, const CoveringDims& b) {
  std::int64_t s = 0;
  for (const auto& [v, d] : a.entries()) {
    s += d * b[v];
    if (v.layer == 2)
      for (int i = 1; i <= n; ++i) s -= d * b[CoverVertex{1, v.word * Word::generator(i)}];
  }
  return s;
}

struct DegreeFunction {
  std::map<CoverVertex, std::int64_t> degree;
  std::vector<std::int64_t> weight;  // c_{alpha_l}, l = 1..n
};

// Degrees from abelianized exponents: c_1 = 1, c_l = 2(K+1) sum_{k<l} c_k.
inline DegreeFunction degree_function(int n, const std::set<CoverVertex>& support) {
  std::int64_t bound = 0;
  for (const auto& v : support)
    for (int x : v.word.abelianize(n)) bound = std::max<std::int64_t>(bound, std::abs(x));
  DegreeFunction f;
  std::int64_t sum = 0;
  for (int l = 0; l < n; ++l) {
    std::int64_t c = l == 0 ? 1 : 2 * (bound + 1) * sum;
    f.weight.push_back(c);
    sum += c;
  }
  for (const auto& v : support) {
    auto chi = v.word.abelianize(n);
    std::int64_t d = 0;
    for (int l = 0; l < n; ++l) d += chi[l] * f.weight[l];
    f.degree[v] = d;
  }
  return f;
}

inline std::set<CoverVertex> support_of(const CoveringDims& d) {
  std::set<CoverVertex> s;
  for (const auto& [v, x] : d.entries()) s.insert(v);
  return s;
}

// Representation of the cover on a finite support; arrows keyed by (source word, generator).
template <class T>
struct CoveringRep {
  int n = 0;
  std::map<CoverVertex, std::size_t> dims;
  std::map<std::pair<Word, int>, Matrix<T>> arrows;  // (2,w) -> (1, w alpha_i)

  std::size_t dim_at(const CoverVertex& v) const {
    auto it = dims.find(v);
    return it == dims.end() ? 0 : it->second;
  }

  CoveringDims dimension() const {
    CoveringDims d;
    for (const auto& [v, x] : dims) d.add(v, std::int64_t(x));
    return d;
  }

  // the push-down G: X_1 = sum over layer-1 vertices, likewise X_2
  KronRep<T> pushdown() const {
    std::map<CoverVertex, std::size_t> offset;
    std::size_t d1 = 0, d2 = 0;
    for (const auto& [v, x] : dims) {
      offset[v] = v.layer == 1 ? d1 : d2;
      (v.layer == 1 ? d1 : d2) += x;
    }
    KronRep<T> k(n, d1, d2);
    for (const auto& [key, m] : arrows) {
      CoverVertex s{2, key.first}, t{1, key.first * Word::generator(key.second)};
      k.mats[key.second - 1].set_block(offset.at(t), offset.at(s), m);
    }
    return k;
  }
};

// Sigma_2 at every layer-2 vertex next to the support, then the swap (1,u) <-> (2, flip u).
template <class T>
CoveringRep<T> reflect_covering(const CoveringRep<T>& x) {
  std::set<Word> heads;
  for (const auto& [v, d] : x.dims)
    if (v.layer == 1)
      for (int i = 1; i <= x.n; ++i) heads.insert(v.word * Word::generator(i, -1));
  CoveringRep<T> y;
  y.n = x.n;
  for (const Word& w : heads) {
    std::size_t src = x.dim_at({2, w});
    std::vector<std::size_t> tdim(x.n + 1), toff(x.n + 1);
    std::size_t total = 0;
    for (int i = 1; i <= x.n; ++i) {
      tdim[i] = x.dim_at({1, w * Word::generator(i)});
      toff[i] = total;
      total += tdim[i];
    }
    Matrix<T> c(total, src);
    for (int i = 1; i <= x.n; ++i) {
      auto it = x.arrows.find({w, i});
      if (it != x.arrows.end()) c.set_block(toff[i], 0, it->second);
    }
    Matrix<T> pi = left_nullspace(c);
    if (pi.rows() == 0) continue;
    // cokernel at (2,w) becomes the layer-1 vertex (1, flip w)
    Word fw = w.flipped();
    y.dims[{1, fw}] = pi.rows();
    for (int i = 1; i <= x.n; ++i) {
      if (tdim[i] == 0) continue;
      // (1, w alpha_i) becomes (2, flip(w alpha_i)) = (2, fw alpha_i^{-1}); its arrow i lands at (1, fw)
      Word src_word = fw * Word::generator(i, -1);
      y.dims[{2, src_word}] = tdim[i];
      y.arrows[{src_word, i}] = pi.block(0, toff[i], pi.rows(), tdim[i]);
    }
  }
  for (const auto& [v, d] : x.dims)
    if (v.layer == 1) y.dims[{2, v.word.flipped()}] = d;
  return y;
}

template <class T>
CoveringRep<T> build_lifted_rep(int n, int m) {
  require(n == 3 && m >= 1 && m <= 4, "lifted representations are supported for n = 3, m <= 4");
  CoveringRep<T> x;
  x.n = n;
  x.dims[{1, Word()}] = 1;
  for (int k = 2; k <= m; ++k) x = reflect_covering(x);
  return x;
}

// Hom between covering representations on finite supports, by the d map on the union.
template <class T>
std::size_t covering_hom_dim(const CoveringRep<T>& x, const CoveringRep<T>& y) {
  std::map<CoverVertex, std::size_t> col;
  std::size_t ncols = 0;
  for (const auto& [v, dx] : x.dims) {
    std::size_t dy = y.dim_at(v);
    if (dy == 0) continue;
    col[v] = ncols;
    ncols += dx * dy;
  }
  std::vector<std::vector<std::pair<std::size_t, T>>> rows;
  for (const auto& [v, dx] : x.dims) {
    if (v.layer != 2) continue;
    for (int i = 1; i <= x.n; ++i) {
      CoverVertex t{1, v.word * Word::generator(i)};
      std::size_t dyt = y.dim_at(t);
      if (dyt == 0) continue;
      // (f_t X_a - Y_a f_s) : X_s -> Y_t
      Matrix<T> xa(x.dim_at(t), dx), ya(dyt, y.dim_at(v));
      if (auto it = x.arrows.find({v.word, i}); it != x.arrows.end()) xa = it->second;
      if (auto it = y.arrows.find({v.word, i}); it != y.arrows.end()) ya = it->second;
      for (std::size_t a = 0; a < dyt; ++a)
        for (std::size_t b = 0; b < dx; ++b) {
          std::vector<std::pair<std::size_t, T>> row;
          if (col.count(t))
            for (std::size_t c = 0; c < x.dim_at(t); ++c)
              if (!is_zero(xa(c, b))) row.push_back({col[t] + a * x.dim_at(t) + c, xa(c, b)});
          if (col.count(v))
            for (std::size_t e = 0; e < y.dim_at(v); ++e)
              if (!is_zero(ya(a, e))) row.push_back({col[v] + e * dx + b, -ya(a, e)});
          rows.push_back(std::move(row));
        }
    }
  }
  Matrix<T> d(rows.size(), ncols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, val] : rows[r]) d(r, c) += val;
  return ncols - rank(d);
}

}  // namespace kroncells
