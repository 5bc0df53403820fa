#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "covering.hpp"
#include "kronrep.hpp"
#include "linalg.hpp"

namespace kroncells {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// number of b-dimensional subspaces of F_q^a
inline mpz_class gaussian_binomial(long a, long b, long q) {
  require(q >= 2, "q must be >= 2");
  if (b < 0 || b > a) return 0;
  mpz_class num = 1, den = 1, qa, qb;
  for (long i = 0; i < b; ++i) {
    mpz_ui_pow_ui(qa.get_mpz_t(), q, a - i);
    mpz_ui_pow_ui(qb.get_mpz_t(), q, i + 1);
    num *= qa - 1;
    den *= qb - 1;
  }
  return num / den;
}

// Each k-dimensional subspace of F_P^dim once, as the k x dim reduced echelon basis.
template <std::uint32_t P>
void for_each_subspace(std::size_t dim, std::size_t k, const std::function<void(const Matrix<Fp<P>>&)>& visit) {
  if (k > dim) return;
  std::vector<std::size_t> piv(k);
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    std::vector<bool> is_piv(dim, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = piv[i] + 1; j < dim; ++j)
        if (!is_piv[j]) free.push_back({i, j});
    Matrix<Fp<P>> b(k, dim);
    for (std::size_t i = 0; i < k; ++i) b(i, piv[i]) = Fp<P>(1);
    std::vector<std::uint32_t> digit(free.size(), 0);
    while (true) {
      visit(b);
      std::size_t d = 0;
      while (d < digit.size() && digit[d] == P - 1) {
        digit[d] = 0;
        b(free[d].first, free[d].second) = Fp<P>(0);
        ++d;
      }
      if (d == digit.size()) break;
      ++digit[d];
      b(free[d].first, free[d].second) = Fp<P>(digit[d]);
    }
    // next pivot pattern
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == dim - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

// Points of Gr_e(X): only the layer-2 subspace is enumerated, the layer-1 choice is a
// Gaussian binomial over the quotient by the image.
template <std::uint32_t P>
mpz_class count_points_kron(const KronRep<Fp<P>>& x, KronDim e) {
  x.validate();
  require(e.fits_in(x.dim()), "dimension vector exceeds the representation");
  mpz_class total = 0;
  const std::size_t k = std::size_t(e.source);
  for_each_subspace<P>(x.d2, k, [&](const Matrix<Fp<P>>& u) {
    Matrix<Fp<P>> cols = u.transpose();
    std::vector<Matrix<Fp<P>>> images;
    for (const auto& m : x.mats) images.push_back(m * cols);
    std::size_t w = rank(Matrix<Fp<P>>::hstack(images, x.d1));
    if (std::int64_t(w) <= e.sink) total += gaussian_binomial(long(x.d1 - w), long(e.sink - std::int64_t(w)), P);
  });
  return total;
}

// Representation of a bipartite quiver: arrows run from sources to sinks, parallel arrows allowed.
template <class T>
struct BipartiteRep {
  struct Arrow {
    std::size_t source, sink;
    Matrix<T> map;  // sink dim x source dim
  };
  std::vector<std::size_t> sink_dims, source_dims;
  std::vector<Arrow> arrows;
};

template <class T>
BipartiteRep<T> bipartite_from_kron(const KronRep<T>& x) {
  BipartiteRep<T> b;
  b.sink_dims = {x.d1};
  b.source_dims = {x.d2};
  for (const auto& m : x.mats) b.arrows.push_back({0, 0, m});
  return b;
}

template <class T>
struct CoveringLayout {
  BipartiteRep<T> rep;
  std::vector<CoverVertex> sinks, sources;
};

template <class T>
CoveringLayout<T> bipartite_from_covering(const CoveringRep<T>& x) {
  CoveringLayout<T> out;
  std::map<CoverVertex, std::size_t> index;
  for (const auto& [v, d] : x.dims) {
    auto& list = v.layer == 1 ? out.sinks : out.sources;
    auto& dims = v.layer == 1 ? out.rep.sink_dims : out.rep.source_dims;
    index[v] = list.size();
    list.push_back(v);
    dims.push_back(d);
  }
  for (const auto& [key, m] : x.arrows) {
    CoverVertex s{2, key.first}, t{1, key.first * Word::generator(key.second)};
    if (!index.count(s) || !index.count(t)) continue;
    out.rep.arrows.push_back({index[s], index[t], m});
  }
  return out;
}

namespace detail {

// row-echelon basis kept incrementally; insert reports whether the span grew
template <class T>
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t dim = 0) : dim_(dim) {}
  std::size_t rank() const { return rows_.size(); }
  bool insert(std::vector<T> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      T c = v[lead_[r]];
      if (is_zero(c)) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= c * rows_[r][j];
    }
    std::size_t lead = 0;
    while (lead < dim_ && is_zero(v[lead])) ++lead;
    if (lead == dim_) return false;
    T inv = T(1) / v[lead];
    for (auto& x : v) x *= inv;
    // keep rows reduced against the new one
    for (auto& row : rows_) {
      T c = row[lead];
      if (is_zero(c)) continue;
      for (std::size_t j = 0; j < dim_; ++j) row[j] -= c * v[j];
    }
    rows_.push_back(std::move(v));
    lead_.push_back(lead);
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> lead_;
};

}  // namespace detail

// Subrepresentations with prescribed dimensions: sources are enumerated, each sink then
// contributes the subspaces containing the image.
template <std::uint32_t P>
mpz_class count_points_generic(const BipartiteRep<Fp<P>>& x, const std::vector<std::size_t>& sink_e,
                               const std::vector<std::size_t>& source_e, double budget = 1e8) {
  using F = Fp<P>;
  require(sink_e.size() == x.sink_dims.size() && source_e.size() == x.source_dims.size(), "dimension vector shape mismatch");
  for (std::size_t i = 0; i < sink_e.size(); ++i) require(sink_e[i] <= x.sink_dims[i], "dimension vector exceeds the representation");
  for (std::size_t i = 0; i < source_e.size(); ++i) require(source_e[i] <= x.source_dims[i], "dimension vector exceeds the representation");
  double space = 1;
  for (std::size_t s = 0; s < source_e.size(); ++s) space *= gaussian_binomial(long(x.source_dims[s]), long(source_e[s]), P).get_d();
  if (space > budget) throw BudgetExceeded("search space exceeds the budget");

  std::vector<std::vector<const typename BipartiteRep<F>::Arrow*>> out(x.source_dims.size());
  for (const auto& a : x.arrows) out[a.source].push_back(&a);
  std::vector<detail::SpanBasis<F>> spans;
  for (auto d : x.sink_dims) spans.emplace_back(d);
  mpz_class total = 0;

  std::function<void(std::size_t)> dfs = [&](std::size_t s) {
    if (s == x.source_dims.size()) {
      mpz_class c = 1;
      for (std::size_t t = 0; t < spans.size(); ++t) c *= gaussian_binomial(long(x.sink_dims[t] - spans[t].rank()), long(sink_e[t] - spans[t].rank()), P);
      total += c;
      return;
    }
    for_each_subspace<P>(x.source_dims[s], source_e[s], [&](const Matrix<F>& u) {
      auto saved = spans;
      bool ok = true;
      for (const auto* a : out[s]) {
        for (std::size_t i = 0; i < u.rows() && ok; ++i) {
          std::vector<F> img(a->map.rows(), F(0));
          for (std::size_t r = 0; r < a->map.rows(); ++r)
            for (std::size_t c = 0; c < a->map.cols(); ++c) img[r] += a->map(r, c) * u(i, c);
          spans[a->sink].insert(std::move(img));
          ok = spans[a->sink].rank() <= sink_e[a->sink];
        }
        if (!ok) break;
      }
      if (ok) dfs(s + 1);
      spans = std::move(saved);
    });
  };
  dfs(0);
  return total;
}

template <std::uint32_t P>
mpz_class count_points_covering(const CoveringRep<Fp<P>>& x, const CoveringDims& tbfe, double budget = 1e8) {
  auto lay = bipartite_from_covering(x);
  for (const auto& [v, d] : tbfe.entries())
    if (x.dim_at(v) < std::size_t(d)) return 0;
  std::vector<std::size_t> se, te;
  for (const auto& v : lay.sinks) se.push_back(std::size_t(tbfe[v]));
  for (const auto& v : lay.sources) te.push_back(std::size_t(tbfe[v]));
  return count_points_generic<P>(lay.rep, se, te, budget);
}

// Calls f.template operator()<P>() for the runtime prime q.
template <class Fn>
decltype(auto) with_prime(long q, Fn&& f) {
  switch (q) {
    case 2: return f.template operator()<2>();
    case 3: return f.template operator()<3>();
    case 5: return f.template operator()<5>();
    case 7: return f.template operator()<7>();
    case 11: return f.template operator()<11>();
    case 13: return f.template operator()<13>();
    case 101: return f.template operator()<101>();
  }
  throw InvalidArgument("unsupported prime " + std::to_string(q) + " (use 2, 3, 5, 7, 11, 13 or 101)");
}

// Points of Gr_e(P_{m+1}^{[r]}) over F_q, with V the first r coordinate directions.
inline mpz_class count_points_truncated(int n, int m, int r, KronDim e, long q) {
  return with_prime(q, [&]<std::uint32_t P>() {
    auto data = preprojective_data<Fp<P>>(n, m);
    return count_points_kron<P>(data.truncated(std::size_t(r)), e);
  });
}

}  // namespace kroncells
