#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covering.hpp"
#include "dyck.hpp"
#include "layout.hpp"
#include "poly.hpp"
#include "twoquiver.hpp"

namespace kroncells {

// ---------------------------------------------------------------------------
// Generating functions over the block tree. A policy supplies the value of a single
// edge in each state plus concatenation; the recursion subtracts, for every ordinary
// copy, the configurations where everything after it is full and its target is empty.

namespace detail {

template <class Policy>
class BlockDp {
 public:
  using Value = typename Policy::Value;

  BlockDp(int n, Policy policy = {}) : n_(n), pol_(std::move(policy)) {}

  Value shape(int level, int removed) {
    if (auto it = memo_.find({level, removed}); it != memo_.end()) return it->second;
    Block b = make_layout(n_, level, removed);
    std::string steps = layout_steps(b);
    Value v = table(b, steps);
    memo_.emplace(std::make_pair(level, removed), v);
    return v;
  }

 private:
  Value h_free() { return pol_.plus(pol_.h_in(), pol_.h_out()); }

  Value fold(const std::string& steps, std::size_t from, std::size_t to, bool full) {
    Value v = pol_.empty();
    for (std::size_t p = from; p < to; ++p) {
      bool h = steps[p] == 'H';
      v = pol_.concat(v, h ? (full ? pol_.h_out() : pol_.h_in()) : (full ? pol_.v_in() : pol_.v_out()));
    }
    return v;
  }

  Value table(const Block& b, const std::string& steps) {
    if (b.level == 1) return h_free();
    if (b.level == 2) {
      std::size_t sinks = b.size() - 1;
      Value some = pol_.empty(), none = pol_.empty();
      for (std::size_t i = 0; i < sinks; ++i) {
        some = pol_.concat(some, h_free());
        none = pol_.concat(none, pol_.h_out());
      }
      return pol_.plus(pol_.concat(some, pol_.v_out()), pol_.concat(none, pol_.v_in()));
    }
    const Block& last = b.children.back();
    Value cur = shape(last.level, last.removed);
    for (std::size_t a = b.ordinary_count(); a-- > 0;) {
      const Block& c = b.children[a];
      Value keep = pol_.concat(shape(c.level, c.removed), cur);
      Value drop = pol_.concat(avoid(c, steps), fold(steps, c.end, b.end, true));
      cur = pol_.minus(keep, drop);
    }
    return cur;
  }

  // configurations of an ordinary copy with its target entirely outside
  Value avoid(const Block& c, const std::string& steps) {
    std::size_t peel = 0;
    if (c.level >= 3) {
      const Block& tc = c.children.back();
      if (tc.level == 2) {
        peel = c.target_begin - tc.begin;
      } else {
        while (tc.children[peel].begin != c.target_begin) ++peel;
      }
    }
    if (auto it = avoid_memo_.find({c.level, peel}); it != avoid_memo_.end()) return it->second;
    Value v = pol_.empty();
    if (c.level == 2) {
      for (std::size_t i = 0; i + 2 < c.size(); ++i) v = pol_.concat(v, h_free());
    } else if (c.level >= 3) {
      for (std::size_t a = 0; a < c.ordinary_count(); ++a) v = pol_.concat(v, shape(c.children[a].level, c.children[a].removed));
      const Block& tc = c.children.back();
      for (std::size_t a = 0; a < peel; ++a)
        v = pol_.concat(v, tc.level == 2 ? h_free() : shape(tc.children[a].level, tc.children[a].removed));
    }
    v = pol_.concat(v, fold(steps, c.target_begin, c.end, false));
    avoid_memo_.emplace(std::make_pair(c.level, peel), v);
    return v;
  }

  int n_;
  Policy pol_;
  std::map<std::pair<int, int>, Value> memo_;
  std::map<std::pair<int, std::size_t>, Value> avoid_memo_;
};

// y1^{#layer-1 vertices in beta} y2^{#layer-2 vertices in beta}
struct SubrepPolicy {
  using Value = Poly2;
  Value empty() const { return Poly2::constant(1); }
  Value h_in() const { return Poly2::constant(1); }
  Value h_out() const { return Poly2::monomial(1, 0); }
  Value v_in() const { return Poly2::monomial(0, 1); }
  Value v_out() const { return Poly2::constant(1); }
  Value concat(const Value& a, const Value& b) const { return a * b; }
  Value plus(const Value& a, const Value& b) const { return a + b; }
  Value minus(const Value& a, const Value& b) const { return a - b; }
};

// s^{|S_H|} t^{|S_V|}
struct PairPolicy {
  using Value = Poly2;
  Value empty() const { return Poly2::constant(1); }
  Value h_in() const { return Poly2::monomial(1, 0); }
  Value h_out() const { return Poly2::constant(1); }
  Value v_in() const { return Poly2::monomial(0, 1); }
  Value v_out() const { return Poly2::constant(1); }
  Value concat(const Value& a, const Value& b) const { return a * b; }
  Value plus(const Value& a, const Value& b) const { return a + b; }
  Value minus(const Value& a, const Value& b) const { return a - b; }
};

}  // namespace detail

// Sum of q^{gamma} per (|S_H|, |S_V|) over the compatible pairs of a path segment.
struct GammaTable {
  int n = 0;
  std::size_t h = 0, v = 0;  // edge counts of the segment
  std::vector<QPoly> cells;  // index sh * (v + 1) + sv

  const QPoly& at(std::size_t sh, std::size_t sv) const { return cells.at(sh * (v + 1) + sv); }
  QPoly& at(std::size_t sh, std::size_t sv) { return cells.at(sh * (v + 1) + sv); }

  static GammaTable blank(int n, std::size_t h, std::size_t v) { return GammaTable{n, h, v, std::vector<QPoly>((h + 1) * (v + 1))}; }
};

namespace detail {

struct GammaPolicy {
  using Value = GammaTable;
  int n = 3;

  Value single(std::size_t h, std::size_t v, std::size_t sh, std::size_t sv) const {
    GammaTable t = GammaTable::blank(n, h, v);
    t.at(sh, sv) = QPoly::monomial(0);
    return t;
  }
  Value empty() const { return single(0, 0, 0, 0); }
  Value h_in() const { return single(1, 0, 1, 0); }
  Value h_out() const { return single(1, 0, 0, 0); }
  Value v_in() const { return single(0, 1, 0, 1); }
  Value v_out() const { return single(0, 1, 0, 0); }

  // pairs e < e' split across the two segments contribute the cross term
  Value concat(const Value& a, const Value& b) const {
    GammaTable t = GammaTable::blank(n, a.h + b.h, a.v + b.v);
    const std::int64_t nn = n;
    for (std::size_t sa = 0; sa <= a.h; ++sa)
      for (std::size_t va = 0; va <= a.v; ++va) {
        const QPoly& pa = a.at(sa, va);
        if (pa.empty()) continue;
        for (std::size_t sb = 0; sb <= b.h; ++sb)
          for (std::size_t vb = 0; vb <= b.v; ++vb) {
            const QPoly& pb = b.at(sb, vb);
            if (pb.empty()) continue;
            std::int64_t cross = -nn * std::int64_t(sa * vb) + std::int64_t(sa * (b.h - sb)) + std::int64_t((a.v - va) * vb);
            t.at(sa + sb, va + vb).add_product(pa, pb, int(cross));
          }
      }
    for (auto& c : t.cells) c.trim();
    return t;
  }
  Value combine(const Value& a, const Value& b, bool negate) const {
    require(a.h == b.h && a.v == b.v, "gamma tables of different segments");
    GammaTable t = a;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
      t.cells[i].add(b.cells[i], negate);
      t.cells[i].trim();
    }
    return t;
  }
  Value plus(const Value& a, const Value& b) const { return combine(a, b, false); }
  Value minus(const Value& a, const Value& b) const { return combine(a, b, true); }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// F-polynomials and Euler characteristics

// generating function of subrepresentation dimension types of the shape Q_k^{[r]}; k = 0 gives 1
inline Poly2 shape_f_polynomial(int n, int k, int r) {
  if (k <= 0) return Poly2::constant(1);
  return detail::BlockDp<detail::SubrepPolicy>(n).shape(k, r);
}

// F-polynomial of P_{m+1}^{[r]}: coefficient at (e1, e2) is the Euler characteristic of Gr_e
inline Poly2 f_polynomial(int n, int m, int r) {
  require(n >= 2, "n must be >= 2");
  require(m >= 0, "m must be >= 0");
  require(r >= 0 && r <= n - 1, "r must satisfy 0 <= r <= n-1");
  require(m >= 1 || r == 0, "P_1 admits no truncation");
  return shape_f_polynomial(n, m + 1, r);
}

inline mpz_class euler_char(int n, int m, int r, KronDim e) { return f_polynomial(n, m, r).coeff(int(e.sink), int(e.source)); }

// s^{|S_H|} t^{|S_V|} summed over compatible pairs of D_{m+1}^{[r]}
inline Poly2 compatible_pair_counts(int n, int m, int r) {
  require(r >= 0 && r <= n - 1, "r must satisfy 0 <= r <= n-1");
  return detail::BlockDp<detail::PairPolicy>(n).shape(m + 1, r);
}

inline json to_json_value(const Poly2& f) {
  json j = json::object();
  for (const auto& [e, c] : f.terms()) {
    std::string key = "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
    if (c.fits_ulong_p())
      j[key] = c.get_ui();
    else
      j[key] = c.get_str();
  }
  return j;
}

struct FRecursionReport {
  bool holds = false;          // F_{d(m,r)} = F_{d(m,r+1)} F_{P_m} - y^{d(m,r+1)} F_{P_{m-1}}^{n-1} F_{P_{m-2}}^r
  bool literal_holds = false;  // correction term y^{d(m,r)} F_{d(m-2,r)}
  Poly2 lhs, rhs, literal_rhs;
  std::string discrepancy;
};

inline FRecursionReport check_f_recursion(int n, int m, int r) {
  require(m >= 1, "m must be >= 1");
  require(r >= 0 && r <= n - 2, "r must satisfy 0 <= r <= n-2");
  FRecursionReport rep;
  rep.lhs = shape_f_polynomial(n, m + 1, r);
  Poly2 product = shape_f_polynomial(n, m + 1, r + 1) * shape_f_polynomial(n, m, 0);
  KronDim next = truncated_dim(n, m, r + 1), here = truncated_dim(n, m, r);
  Poly2 correction = Poly2::monomial(int(next.sink), int(next.source)) * shape_f_polynomial(n, m - 1, 0).pow(n - 1) *
                     shape_f_polynomial(n, m - 2, 0).pow(r);
  rep.rhs = product - correction;
  rep.literal_rhs = product - Poly2::monomial(int(here.sink), int(here.source)) * shape_f_polynomial(n, m - 1, r);
  rep.holds = rep.lhs == rep.rhs;
  rep.literal_holds = rep.lhs == rep.literal_rhs;
  if (!rep.holds) rep.discrepancy = "lhs - rhs = " + (rep.lhs - rep.rhs).str();
  return rep;
}

// ---------------------------------------------------------------------------
// The bijection between SSC subsets and compatible pairs

inline EdgePair ssc_to_pair(const TwoQuiver& tq, const DyckPath& path, const VertexSet& beta) {
  require(tq.size() == path.size(), "2-quiver and Dyck path do not match");
  require(is_ssc(tq, beta), "subset is not strong successor closed");
  EdgePair e;
  for (std::size_t p = 0; p < path.size(); ++p) {
    if (path.is_h(p) && !beta[p]) e.sh.push_back(path.sub_index(p));
    if (!path.is_h(p) && beta[p]) e.sv.push_back(path.sub_index(p));
  }
  return e;
}

inline VertexSet pair_to_ssc(const DyckPath& path, const EdgePair& pair) {
  VertexSet beta(path.size(), 0);
  for (std::size_t p = 0; p < path.size(); ++p)
    if (path.is_h(p)) beta[p] = 1;
  for (auto i : pair.sh) beta.at(path.h_position(i)) = 0;
  for (auto j : pair.sv) beta.at(path.v_position(j)) = 1;
  return beta;
}

// ---------------------------------------------------------------------------
// gamma statistic

inline std::int64_t gamma_stat(const DyckPath& path, const EdgePair& pair) {
  auto mark = edge_marks(path, pair);
  std::int64_t g = 0, sel_h = 0, unsel_v = 0, n = path.n();
  for (std::size_t p = 0; p < path.size(); ++p) {
    if (path.is_h(p)) {
      if (mark[p])
        ++sel_h;
      else
        g += sel_h;
    } else {
      if (mark[p])
        g += -n * sel_h + unsel_v;
      else
        ++unsel_v;
    }
  }
  return g;
}

inline GammaTable gamma_table(int n, int m, int r) {
  require(r >= 0 && r <= n - 1, "r must satisfy 0 <= r <= n-1");
  return detail::BlockDp<detail::GammaPolicy>(n, detail::GammaPolicy{n}).shape(m + 1, r);
}

// sum of q^{gamma} over compatible pairs of D_{m+1}^{[r]} with |S_H| = #H - e1, |S_V| = e2
inline QPoly gamma_counting_qpoly(const GammaTable& t, KronDim e) {
  if (e.sink < 0 || e.source < 0 || std::size_t(e.sink) > t.h || std::size_t(e.source) > t.v) return {};
  return t.at(t.h - std::size_t(e.sink), std::size_t(e.source));
}

inline CountingPolynomial counting_polynomial_gamma(int n, int m, int r, KronDim e) {
  return CountingPolynomial::from(gamma_counting_qpoly(gamma_table(n, m, r), e));
}

// ---------------------------------------------------------------------------
// cell dimensions of the lifted Grassmannians

class LiftedCells {
 public:
  LiftedCells(int n, int m, int r) : n_(n), tq_(reduce(build_two_quiver(n, m, r))), layout_(make_layout(n, m + 1, r)) {
    const std::size_t N = tq_.size();
    links_.resize(N);
    // <e_x, e_y> on the cover: +1 for equal tags, -1 for an arrow tag(x) -> tag(y)
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y) {
        const auto& a = tq_.tags[x];
        const auto& b = tq_.tags[y];
        int k = a == b ? 1 : 0;
        if (a.layer == 2 && b.layer == 1)
          for (int i = 1; i <= n; ++i)
            if (a.word * Word::generator(i) == b.word) --k;
        if (k != 0) links_[x].push_back({y, k});
      }
  }

  const TwoQuiver& two_quiver() const { return tq_; }

  std::int64_t dimension(const VertexSet& beta) const {
    require(is_ssc(tq_, beta), "subset is not strong successor closed");
    std::int64_t d = block_dim(layout_, 0, beta);
    if (d < 0) throw std::logic_error("negative cell dimension");
    return d;
  }

 private:
  // the part of block b left after peeling its first i children
  std::int64_t block_dim(const Block& b, std::size_t i, const VertexSet& beta) const {
    if (b.level <= 2) return 0;
    if (i + 1 == b.children.size()) return block_dim(b.children.back(), 0, beta);
    const Block& c = b.children[i];
    std::int64_t d = block_dim(c, 0, beta) + block_dim(b, i + 1, beta);
    // <tbfe(beta in the rest), tags(c) - tbfe(beta in c)>
    for (std::size_t x = c.end; x < b.end; ++x) {
      if (!beta[x]) continue;
      for (auto [y, k] : links_[x])
        if (y >= c.begin && y < c.end && !beta[y]) d += k;
    }
    return d;
  }

  int n_;
  TwoQuiver tq_;
  Block layout_;
  std::vector<std::vector<std::pair<std::size_t, int>>> links_;
};

inline std::int64_t cell_dim_lifted(int n, int m, int r, const VertexSet& beta) { return LiftedCells(n, m, r).dimension(beta); }

inline CountingPolynomial counting_polynomial_lifted(int n, int m, int r, const CoveringDims& tbfe) {
  LiftedCells cells(n, m, r);
  CountingPolynomial p;
  for_each_ssc(cells.two_quiver(), SscFilter{std::nullopt, tbfe},
               [&](const VertexSet& beta) { p.add_term(std::size_t(cells.dimension(beta))); });
  return p;
}

// Cell-by-cell comparison of gamma with the lifted recursion under the bijection.
inline json cell_comparison_report(int n, int m, int r) {
  LiftedCells cells(n, m, r);
  DyckPath path(n, m + 1, r);
  std::uint64_t total = 0, equal = 0;
  std::int64_t min_gamma = 0;
  std::map<std::pair<std::int64_t, std::int64_t>, CountingPolynomial> by_bfe_gamma, by_bfe_lifted;
  for_each_ssc(cells.two_quiver(), {}, [&](const VertexSet& beta) {
    EdgePair pair = ssc_to_pair(cells.two_quiver(), path, beta);
    std::int64_t g = gamma_stat(path, pair), d = cells.dimension(beta);
    KronDim e = dim_type(cells.two_quiver(), beta).bfe;
    ++total;
    equal += g == d;
    min_gamma = std::min(min_gamma, g);
    if (g >= 0) by_bfe_gamma[{e.sink, e.source}].add_term(std::size_t(g));
    by_bfe_lifted[{e.sink, e.source}].add_term(std::size_t(d));
  });
  std::uint64_t same_poly = 0;
  for (auto& [e, p] : by_bfe_lifted) same_poly += by_bfe_gamma[e] == p;
  return {{"n", n},
          {"m", m},
          {"r", r},
          {"cells", total},
          {"cells_with_equal_dimension", equal},
          {"min_gamma", min_gamma},
          {"dimension_types", by_bfe_lifted.size()},
          {"dimension_types_with_equal_polynomial", same_poly}};
}

}  // namespace kroncells
