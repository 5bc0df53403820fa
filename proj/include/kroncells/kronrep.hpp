#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"

namespace kroncells {

// Representation of K(n): n matrices of shape d1 x d2, one per arrow 2 -> 1.
template <class T>
struct KronRep {
  int n = 0;
  std::size_t d1 = 0, d2 = 0;
  std::vector<Matrix<T>> mats;

  KronRep() = default;
  KronRep(int arrows, std::size_t sink_dim, std::size_t source_dim)
      : n(arrows), d1(sink_dim), d2(source_dim), mats(arrows, Matrix<T>(sink_dim, source_dim)) {}

  KronDim dim() const { return {std::int64_t(d1), std::int64_t(d2)}; }

  void validate() const {
    require(int(mats.size()) == n, "KronRep needs one matrix per arrow");
    for (const auto& m : mats) require(m.rows() == d1 && m.cols() == d2, "KronRep matrix shape mismatch");
  }

  // [M_1 ... M_n] : X_2^n -> X_1
  Matrix<T> combined_out() const {
    Matrix<T> c(d1, n * d2);
    for (int i = 0; i < n; ++i) c.set_block(0, i * d2, mats[i]);
    return c;
  }
  // [M_1; ...; M_n] : X_2 -> X_1^n
  Matrix<T> stacked() const {
    Matrix<T> c(n * d1, d2);
    for (int i = 0; i < n; ++i) c.set_block(i * d1, 0, mats[i]);
    return c;
  }
};

template <class T>
json rep_to_json(const KronRep<T>& x) {
  json mats = json::array();
  for (const auto& m : x.mats) mats.push_back(matrix_to_json(m));
  return json{{"n", x.n}, {"d1", x.d1}, {"d2", x.d2}, {"field", FieldTraits<T>::name()}, {"mats", mats}};
}

template <class T>
KronRep<T> rep_from_json(const json& j) {
  KronRep<T> x(j.at("n").get<int>(), j.at("d1").get<std::size_t>(), j.at("d2").get<std::size_t>());
  for (int i = 0; i < x.n; ++i) x.mats[i] = matrix_from_json<T>(j.at("mats").at(i), x.d1, x.d2);
  return x;
}

template <class T>
KronRep<T> simple_rep(int n, int vertex) {
  require(vertex == 1 || vertex == 2, "K(n) vertices are 1 and 2");
  return vertex == 1 ? KronRep<T>(n, 1, 0) : KronRep<T>(n, 0, 1);
}

// Sigma_2 followed by the vertex swap: the new sink carries coker(X_2 -> X_1^n).
template <class T>
KronRep<T> reflect_at_source(const KronRep<T>& x) {
  Matrix<T> pi = left_nullspace(x.stacked());
  KronRep<T> y(x.n, pi.rows(), x.d1);
  for (int i = 0; i < x.n; ++i) y.mats[i] = pi.block(0, i * x.d1, pi.rows(), x.d1);
  return y;
}

// Sigma_1 followed by the vertex swap: the new source carries ker(X_2^n -> X_1).
template <class T>
KronRep<T> reflect_at_sink(const KronRep<T>& x) {
  Matrix<T> k = nullspace(x.combined_out());
  KronRep<T> y(x.n, x.d2, k.cols());
  for (int i = 0; i < x.n; ++i) y.mats[i] = k.block(i * x.d2, 0, x.d2, k.cols());
  return y;
}

template <class T>
KronRep<T> reflect(const KronRep<T>& x, int vertex) {
  require(vertex == 1 || vertex == 2, "K(n) vertices are 1 and 2");
  return vertex == 2 ? reflect_at_source(x) : reflect_at_sink(x);
}

template <class T>
KronRep<T> build_preprojective(int n, int m) {
  require(n >= 3, "representation modules need n >= 3");
  require(m >= 1, "preprojective index starts at 1");
  KronRep<T> p = simple_rep<T>(n, 1);
  for (int k = 2; k <= m; ++k) p = reflect_at_source(p);
  return p;
}

// duality plus the vertex swap
template <class T>
KronRep<T> dual_rep(const KronRep<T>& x) {
  KronRep<T> y(x.n, x.d2, x.d1);
  for (int i = 0; i < x.n; ++i) y.mats[i] = x.mats[i].transpose();
  return y;
}

template <class T>
KronRep<T> build_preinjective(int n, int m) {
  return dual_rep(build_preprojective<T>(n, m));
}

template <class T>
struct Morphism {
  Matrix<T> f1;  // X_1 -> Y_1
  Matrix<T> f2;  // X_2 -> Y_2
};

template <class T>
bool is_morphism(const KronRep<T>& x, const KronRep<T>& y, const Morphism<T>& f) {
  for (int i = 0; i < x.n; ++i)
    if (!(f.f1 * x.mats[i] == y.mats[i] * f.f2)) return false;
  return true;
}

template <class T>
struct HomData {
  std::size_t hom = 0;
  std::size_t ext = 0;
  std::vector<Morphism<T>> basis;
};

namespace detail {

// The full map d_{X,Y}: (f1, f2) -> (f1 X_i - Y_i f2)_i.
template <class T>
Matrix<T> hom_ext_map(const KronRep<T>& x, const KronRep<T>& y) {
  std::size_t c1 = y.d1 * x.d1, c2 = y.d2 * x.d2;
  Matrix<T> d(x.n * y.d1 * x.d2, c1 + c2);
  for (int i = 0; i < x.n; ++i)
    for (std::size_t a = 0; a < y.d1; ++a)
      for (std::size_t b = 0; b < x.d2; ++b) {
        std::size_t row = (i * y.d1 + a) * x.d2 + b;
        for (std::size_t c = 0; c < x.d1; ++c) d(row, a * x.d1 + c) += x.mats[i](c, b);
        for (std::size_t e = 0; e < y.d2; ++e) d(row, c1 + e * x.d2 + b) -= y.mats[i](a, e);
      }
  return d;
}

// When X_1 is spanned by the images of the arrows, a morphism is determined by f2 and the
// conditions come from the relations K among generators: sum_i Y_i f2 z_i = 0 for z in K.
template <class T>
struct GeneratedHom {
  const KronRep<T>* x;
  const KronRep<T>* y;
  Matrix<T> relations;  // columns: kernel of combined_out(X)
  std::vector<std::size_t> gen_cols;  // combined_out columns forming a basis of X_1

  std::size_t unknowns() const { return y->d2 * x->d2; }
  std::size_t equations() const { return relations.cols() * y->d1; }

  template <class U, class Conv>
  Matrix<U> system(Conv conv) const {
    std::size_t k = relations.cols();
    std::vector<Matrix<U>> ym(x->n, Matrix<U>(y->d1, y->d2));
    for (int i = 0; i < x->n; ++i)
      for (std::size_t a = 0; a < y->d1; ++a)
        for (std::size_t e = 0; e < y->d2; ++e) ym[i](a, e) = conv(y->mats[i](a, e));
    Matrix<U> kz(relations.rows(), k);
    for (std::size_t r = 0; r < relations.rows(); ++r)
      for (std::size_t t = 0; t < k; ++t) kz(r, t) = conv(relations(r, t));
    Matrix<U> l(k * y->d1, unknowns());
    for (int i = 0; i < x->n; ++i)
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t b = 0; b < x->d2; ++b) {
          const U& z = kz(i * x->d2 + b, t);
          if (is_zero(z)) continue;
          for (std::size_t a = 0; a < y->d1; ++a)
            for (std::size_t e = 0; e < y->d2; ++e) {
              const U& w = ym[i](a, e);
              if (!is_zero(w)) l(t * y->d1 + a, e * x->d2 + b) += w * z;
            }
        }
    return l;
  }

  Matrix<T> f2_of(const Matrix<T>& kernel, std::size_t col) const {
    Matrix<T> f2(y->d2, x->d2);
    for (std::size_t e = 0; e < y->d2; ++e)
      for (std::size_t b = 0; b < x->d2; ++b) f2(e, b) = kernel(e * x->d2 + b, col);
    return f2;
  }

  bool solves(const Matrix<T>& f2) const {
    for (std::size_t t = 0; t < relations.cols(); ++t) {
      Matrix<T> acc(y->d1, 1);
      for (int i = 0; i < x->n; ++i) {
        Matrix<T> z(x->d2, 1);
        for (std::size_t b = 0; b < x->d2; ++b) z(b, 0) = relations(i * x->d2 + b, t);
        if (z.is_zero_matrix()) continue;
        Matrix<T> img = y->mats[i] * (f2 * z);
        for (std::size_t a = 0; a < y->d1; ++a) acc(a, 0) += img(a, 0);
      }
      if (!acc.is_zero_matrix()) return false;
    }
    return true;
  }

  Morphism<T> complete(const Matrix<T>& f2) const {
    // f1 C = D where C collects generator columns of X and D their images in Y
    std::size_t d1 = x->d1;
    Matrix<T> c(d1, d1), dmat(y->d1, d1);
    for (std::size_t g = 0; g < d1; ++g) {
      std::size_t i = gen_cols[g] / x->d2, b = gen_cols[g] % x->d2;
      for (std::size_t r = 0; r < d1; ++r) c(r, g) = x->mats[i](r, b);
      Matrix<T> z(x->d2, 1);
      z(b, 0) = T(1);
      Matrix<T> img = y->mats[i] * (f2 * z);
      for (std::size_t a = 0; a < y->d1; ++a) dmat(a, g) = img(a, 0);
    }
    // solve via [C^T | D^T]
    Matrix<T> aug(d1, d1 + y->d1);
    aug.set_block(0, 0, c.transpose());
    aug.set_block(0, d1, dmat.transpose());
    Echelon<T> e = rref(aug);
    Matrix<T> f1t = e.reduced.block(0, d1, d1, y->d1);
    return {f1t.transpose(), f2};
  }
};

template <class T>
std::optional<GeneratedHom<T>> generated_form(const KronRep<T>& x, const KronRep<T>& y) {
  Matrix<T> c = x.combined_out();
  Echelon<T> e = rref(c);
  if (e.rank() != x.d1) return std::nullopt;
  GeneratedHom<T> g{&x, &y, nullspace_from(e, c.cols()), e.pivots};
  return g;
}

inline constexpr std::uint32_t kCertPrimes[] = {2147483629u, 2147483587u, 2147483579u, 2147483563u,
                                                 2147483549u, 2147483543u};

template <std::uint32_t P>
struct ModKernel {
  std::vector<std::size_t> pivots;
  Matrix<Fp<P>> kernel;
};

template <std::uint32_t P>
std::optional<ModKernel<P>> mod_kernel(const GeneratedHom<Rational>& g) {
  bool ok = true;
  auto conv = [&](const Rational& q) {
    auto r = reduce_mod<P>(q);
    if (!r) {
      ok = false;
      return Fp<P>(0);
    }
    return *r;
  };
  Matrix<Fp<P>> l = g.system<Fp<P>>(conv);
  if (!ok) return std::nullopt;
  Echelon<Fp<P>> e = rref(std::move(l));
  std::size_t cols = g.unknowns();
  return ModKernel<P>{e.pivots, nullspace_from(e, cols)};
}

// Exact rational kernel certified by reconstruction: hom_Q <= hom_p always, and every
// reconstructed vector is checked to be an exact solution, giving hom_Q >= hom_p.
template <std::size_t I = 0>
std::optional<Matrix<Rational>> certified_kernel(const GeneratedHom<Rational>& g, std::vector<BigInt>* residues,
                                                 BigInt* modulus, std::vector<std::size_t>* pivots,
                                                 std::size_t* nullity) {
  if constexpr (I >= std::size(kCertPrimes)) {
    return std::nullopt;
  } else {
    constexpr std::uint32_t P = kCertPrimes[I];
    auto mk = mod_kernel<P>(g);
    if (mk) {
      std::size_t h = mk->kernel.cols(), cols = g.unknowns();
      if (*modulus == 0 || mk->pivots.size() > pivots->size() ||
          (mk->pivots.size() == pivots->size() && mk->pivots != *pivots)) {
        *pivots = mk->pivots;
        *nullity = h;
        *modulus = 1;
        residues->assign(cols * h, BigInt(0));
      }
      if (mk->pivots == *pivots) {
        BigInt newmod = *modulus * P;
        for (std::size_t idx = 0; idx < cols * h; ++idx) {
          BigInt r = mk->kernel(idx / h, idx % h).value();
          BigInt& old = (*residues)[idx];
          // CRT: old mod M, r mod P
          BigInt inv, mm = *modulus % P;
          mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), BigInt(P).get_mpz_t());
          BigInt t = ((r - old) % P + P) % P * inv % P;
          old += *modulus * t;
        }
        *modulus = newmod;
        Matrix<Rational> cand(cols, h);
        bool good = true;
        for (std::size_t idx = 0; idx < cols * h && good; ++idx) {
          auto q = rational_reconstruct((*residues)[idx], *modulus);
          if (!q)
            good = false;
          else
            cand(idx / h, idx % h) = *q;
        }
        for (std::size_t c = 0; c < h && good; ++c) good = g.solves(g.f2_of(cand, c));
        if (good) return cand;
      }
    }
    return certified_kernel<I + 1>(g, residues, modulus, pivots, nullity);
  }
}

template <class T>
Matrix<T> generated_kernel(const GeneratedHom<T>& g) {
  auto direct = [&] {
    return nullspace(g.template system<T>([](const T& v) { return v; }));
  };
  if constexpr (std::is_same_v<T, Rational>) {
    if (g.unknowns() * g.equations() > 40000) {
      std::vector<BigInt> residues;
      BigInt modulus = 0;
      std::vector<std::size_t> pivots;
      std::size_t nullity = 0;
      if (auto k = certified_kernel(g, &residues, &modulus, &pivots, &nullity)) return *k;
    }
  }
  return direct();
}

}  // namespace detail

template <class T>
HomData<T> hom_data(const KronRep<T>& x, const KronRep<T>& y, bool want_basis = true) {
  require(x.n == y.n, "representations have different arrow counts");
  x.validate();
  y.validate();
  std::int64_t chi = euler_form(x.n, x.dim(), y.dim());
  HomData<T> out;
  if (auto g = detail::generated_form(x, y)) {
    Matrix<T> k = detail::generated_kernel(*g);
    out.hom = k.cols();
    if (want_basis)
      for (std::size_t c = 0; c < k.cols(); ++c) out.basis.push_back(g->complete(g->f2_of(k, c)));
  } else {
    Matrix<T> d = detail::hom_ext_map(x, y);
    Echelon<T> e = rref(d);
    out.hom = d.cols() - e.rank();
    if (want_basis) {
      Matrix<T> k = nullspace_from(e, d.cols());
      for (std::size_t c = 0; c < k.cols(); ++c) {
        Morphism<T> f{Matrix<T>(y.d1, x.d1), Matrix<T>(y.d2, x.d2)};
        for (std::size_t a = 0; a < y.d1; ++a)
          for (std::size_t b = 0; b < x.d1; ++b) f.f1(a, b) = k(a * x.d1 + b, c);
        for (std::size_t a = 0; a < y.d2; ++a)
          for (std::size_t b = 0; b < x.d2; ++b) f.f2(a, b) = k(y.d1 * x.d1 + a * x.d2 + b, c);
        out.basis.push_back(std::move(f));
      }
    }
  }
  std::int64_t ext = std::int64_t(out.hom) - chi;
  if (ext < 0) throw std::logic_error("negative ext dimension");
  out.ext = std::size_t(ext);
  return out;
}

// Reference computation straight from d_{X,Y}, without the generator shortcut.
template <class T>
std::pair<std::size_t, std::size_t> hom_ext_dims_direct(const KronRep<T>& x, const KronRep<T>& y) {
  Matrix<T> d = detail::hom_ext_map(x, y);
  std::size_t r = rank(d);
  return {d.cols() - r, d.rows() - r};
}

template <class T>
std::pair<std::size_t, std::size_t> hom_ext_dims(const KronRep<T>& x, const KronRep<T>& y) {
  HomData<T> h = hom_data(x, y, false);
  return {h.hom, h.ext};
}

template <class T>
std::vector<Morphism<T>> hom_basis(const KronRep<T>& x, const KronRep<T>& y) {
  return hom_data(x, y, true).basis;
}

// Cokernel of ev_V : P_prev (x) V -> P, where the rows of v are coordinates in the hom basis.
template <class T>
KronRep<T> truncate(const KronRep<T>& p, const Matrix<T>& v, const KronRep<T>& p_prev,
                    const std::vector<Morphism<T>>& basis) {
  require(v.cols() == basis.size(), "V coordinates must match the hom basis size");
  std::size_t r = v.rows();
  if (r == 0) return p;
  require(rank(v) == r, "V must be linearly independent");
  std::vector<Morphism<T>> phi;
  for (std::size_t t = 0; t < r; ++t) {
    Morphism<T> f{Matrix<T>(p.d1, p_prev.d1), Matrix<T>(p.d2, p_prev.d2)};
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (is_zero(v(t, j))) continue;
      for (std::size_t a = 0; a < p.d1; ++a)
        for (std::size_t b = 0; b < p_prev.d1; ++b) f.f1(a, b) += v(t, j) * basis[j].f1(a, b);
      for (std::size_t a = 0; a < p.d2; ++a)
        for (std::size_t b = 0; b < p_prev.d2; ++b) f.f2(a, b) += v(t, j) * basis[j].f2(a, b);
    }
    phi.push_back(std::move(f));
  }
  std::vector<Matrix<T>> parts1, parts2;
  for (auto& f : phi) {
    parts1.push_back(f.f1);
    parts2.push_back(f.f2);
  }
  Matrix<T> ev1 = Matrix<T>::hstack(parts1, p.d1), ev2 = Matrix<T>::hstack(parts2, p.d2);
  if (rank(ev1) != ev1.cols() || rank(ev2) != ev2.cols())
    throw std::logic_error("evaluation map is not injective");
  Matrix<T> pi1 = left_nullspace(ev1), pi2 = left_nullspace(ev2);
  Matrix<T> s2 = section_of_echelon(pi2);
  KronRep<T> q(p.n, pi1.rows(), pi2.rows());
  for (int i = 0; i < p.n; ++i) q.mats[i] = pi1 * (p.mats[i] * s2);
  return q;
}

// Coordinate subspace spanned by the first r basis vectors of an n-dimensional space.
template <class T>
Matrix<T> coordinate_subspace(std::size_t r, std::size_t n) {
  Matrix<T> v(r, n);
  for (std::size_t i = 0; i < r; ++i) v(i, i) = T(1);
  return v;
}

// The chain P_1, ..., P_{m+1} with the hom basis of H_m, ready for truncation.
template <class T>
struct PreprojectiveData {
  KronRep<T> prev;   // P_m
  KronRep<T> top;    // P_{m+1}
  std::vector<Morphism<T>> basis;  // H_m = Hom(P_m, P_{m+1})

  KronRep<T> truncated(const Matrix<T>& v) const { return truncate(top, v, prev, basis); }
  KronRep<T> truncated(std::size_t r) const { return truncated(coordinate_subspace<T>(r, basis.size())); }
};

template <class T>
PreprojectiveData<T> preprojective_data(int n, int m) {
  KronRep<T> prev = build_preprojective<T>(n, m);
  KronRep<T> top = reflect_at_source(prev);
  auto basis = hom_basis(prev, top);
  return {std::move(prev), std::move(top), std::move(basis)};
}

}  // namespace kroncells
