#pragma once

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "covering.hpp"
#include "layout.hpp"

namespace kroncells {

struct TwoArrow {
  std::vector<std::size_t> gamma1, gamma2;  // sorted vertex ids
  friend auto operator<=>(const TwoArrow&, const TwoArrow&) = default;
};

// Vertex ids follow the matching Dyck path positions: layer-1 vertices are the horizontal
// edges, layer-2 vertices the vertical ones.
struct TwoQuiver {
  int n = 0;
  std::vector<CoverVertex> tags;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (source, target)
  std::vector<TwoArrow> two_arrows;
  std::vector<std::pair<std::size_t, std::size_t>> components;  // top-level copies, truncated last

  std::size_t size() const { return tags.size(); }
  int layer(std::size_t v) const { return tags[v].layer; }
  Quiver quiver() const {
    std::vector<int> vs(size());
    std::iota(vs.begin(), vs.end(), 0);
    std::vector<std::pair<int, int>> as;
    for (auto [s, t] : arrows) as.push_back({int(s), int(t)});
    return Quiver(vs, as);
  }
};

namespace detail {

class TwoQuiverBuilder {
 public:
  explicit TwoQuiverBuilder(int n) : n_(n) {}

  struct Piece {
    std::vector<CoverVertex> tags;
    std::vector<std::pair<std::size_t, std::size_t>> arrows;
    std::vector<TwoArrow> two;
    std::vector<std::size_t> child_begin;  // start of each child (or each sink at level 2)
    std::vector<std::size_t> target;       // for an ordinary copy: its terminal target

    // vertices left after peeling the first h children
    std::vector<std::size_t> suffix(std::size_t h) const {
      std::size_t from = child_begin.empty() ? 0 : child_begin.at(h);
      std::vector<std::size_t> s;
      for (std::size_t v = from; v < tags.size(); ++v) s.push_back(v);
      return s;
    }
  };

  // The lift of the copy with the indices in `hist` removed; peeling starts with `pre`,
  // the truncated child is `last` when given, and that child peels `child_pre` first.
  Piece node(int k, const std::vector<int>& hist, const std::vector<int>& pre, std::optional<int> last,
             const std::vector<int>& child_pre) const {
    Piece q;
    if (k == 1) {
      q.tags.push_back({1, Word()});
      q.target = {0};
      return q;
    }
    std::vector<int> order = pre, rest;
    auto contains = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    for (int i = 1; i <= n_; ++i)
      if (!contains(hist, i) && !contains(pre, i) && (!last || i != *last)) rest.push_back(i);
    order.insert(order.end(), rest.begin(), rest.end());
    if (last) order.push_back(*last);
    if (k == 2) {
      for (std::size_t a = 0; a < order.size(); ++a) {
        q.tags.push_back({1, Word::generator(order[a])});
        q.child_begin.push_back(a);
      }
      std::size_t src = q.tags.size();
      q.tags.push_back({2, Word()});
      for (std::size_t a = 0; a < order.size(); ++a) q.arrows.push_back({src, a});
      if (last) q.target = {src - 1, src};
      return q;
    }
    const int child = k - 1;
    const int t = order.back();
    std::vector<Piece> parts;
    std::vector<int> need = hist;
    for (std::size_t a = 0; a + 1 < order.size(); ++a) {
      std::vector<int> cp;
      for (int x : need)
        if (x != order[a]) cp.push_back(x);
      parts.push_back(translated(node(child, {}, {}, order[a], cp), copy_shift(child, order[a])));
      need.push_back(order[a]);
    }
    Piece tc = node(child, {t}, child_pre, std::nullopt, {});
    parts.push_back(translated(tc, copy_shift(child, t)));
    assemble(q, parts);
    if (last) {
      for (auto v : tc.suffix(child_pre.size())) q.target.push_back(q.child_begin.back() + v);
    }
    return q;
  }

  TwoQuiver top(int k, int r) const {
    TwoQuiver tq;
    tq.n = n_;
    Piece q;
    if (k == 1) {
      q = node(1, {}, {}, std::nullopt, {});
    } else {
      std::vector<int> hist, pre;
      if ((k - 1) % 2 == 0) {
        for (int i = 1; i <= r; ++i) hist.push_back(i);
      } else {
        for (int i = n_; i > n_ - r; --i) hist.push_back(i);
        for (int i = n_ - r; i >= 2; --i) pre.push_back(i);
      }
      q = node(k, hist, pre, std::nullopt, {});
    }
    if (k == 2) {
      // the star, written with 2-arrows only
      std::size_t src = q.tags.size() - 1;
      q.arrows.clear();
      q.two.push_back({{src}, {src - 1}});
      for (std::size_t a = 0; a + 1 < src; ++a) {
        TwoArrow ar;
        for (std::size_t v = a + 1; v <= src; ++v) ar.gamma1.push_back(v);
        ar.gamma2 = {a};
        q.two.push_back(ar);
      }
    }
    tq.tags = q.tags;
    tq.arrows = q.arrows;
    tq.two_arrows = q.two;
    if (k >= 3)
      for (std::size_t c = 0; c < q.child_begin.size(); ++c)
        tq.components.push_back({q.child_begin[c], c + 1 < q.child_begin.size() ? q.child_begin[c + 1] : q.tags.size()});
    return tq;
  }

 private:
  static Piece translated(Piece p, const Word& g) {
    for (auto& v : p.tags) v = translate(g, v);
    return p;
  }

  static void assemble(Piece& q, const std::vector<Piece>& parts) {
    std::vector<std::size_t> offset;
    for (const auto& c : parts) {
      std::size_t off = q.tags.size();
      offset.push_back(off);
      q.child_begin.push_back(off);
      q.tags.insert(q.tags.end(), c.tags.begin(), c.tags.end());
      for (auto [s, t] : c.arrows) q.arrows.push_back({s + off, t + off});
      for (const auto& a : c.two) {
        TwoArrow b;
        for (auto v : a.gamma1) b.gamma1.push_back(v + off);
        for (auto v : a.gamma2) b.gamma2.push_back(v + off);
        q.two.push_back(b);
      }
    }
    // each ordinary copy: everything after it => its target
    for (std::size_t a = 0; a + 1 < parts.size(); ++a) {
      TwoArrow ar;
      for (std::size_t v = offset[a + 1]; v < q.tags.size(); ++v) ar.gamma1.push_back(v);
      for (auto v : parts[a].target) ar.gamma2.push_back(v + offset[a]);
      q.two.push_back(ar);
    }
  }

  int n_;
};

}  // namespace detail

// Q_k^{[r]} as built, 2-arrows not yet reduced.
inline TwoQuiver build_two_quiver(int n, int m, int r) {
  require(n >= 3, "n must be >= 3");
  require(m >= 0, "m must be >= 0");
  require(r >= 0 && r <= n - 1, "r must satisfy 0 <= r <= n-1");
  require(m >= 1 || r == 0, "Q_1 admits no truncation");
  return detail::TwoQuiverBuilder(n).top(m + 1, r);
}

namespace detail {

inline std::vector<std::size_t> sources_within(const TwoQuiver& tq, const std::vector<std::size_t>& set) {
  std::set<std::size_t> in(set.begin(), set.end()), hit;
  for (auto [s, t] : tq.arrows)
    if (in.count(s) && in.count(t)) hit.insert(t);
  std::vector<std::size_t> out;
  for (auto v : set)
    if (!hit.count(v)) out.push_back(v);
  return out;
}

inline std::vector<std::size_t> sinks_within(const TwoQuiver& tq, const std::vector<std::size_t>& set) {
  std::set<std::size_t> in(set.begin(), set.end()), hit;
  for (auto [s, t] : tq.arrows)
    if (in.count(s) && in.count(t)) hit.insert(s);
  std::vector<std::size_t> out;
  for (auto v : set)
    if (!hit.count(v)) out.push_back(v);
  return out;
}

// one move on the first 2-arrow where any applies
inline bool reduce_step(TwoQuiver& tq) {
  for (std::size_t i = 0; i < tq.two_arrows.size(); ++i) {
    TwoArrow& a = tq.two_arrows[i];
    if (a.gamma1.size() > 1) {
      auto src = sources_within(tq, a.gamma1);
      if (src.size() == 1) {
        a.gamma1 = src;
        return true;
      }
    }
    if (a.gamma2.size() > 1) {
      auto snk = sinks_within(tq, a.gamma2);
      if (snk.size() == 1) {
        a.gamma2 = snk;
        return true;
      }
    }
    if (a.gamma1.size() == 1 && a.gamma2.size() == 1) {
      std::pair<std::size_t, std::size_t> arrow{a.gamma1[0], a.gamma2[0]};
      if (std::find(tq.arrows.begin(), tq.arrows.end(), arrow) == tq.arrows.end()) tq.arrows.push_back(arrow);
      tq.two_arrows.erase(tq.two_arrows.begin() + std::ptrdiff_t(i));
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline TwoQuiver reduce(TwoQuiver tq) {
  while (detail::reduce_step(tq)) {
  }
  std::sort(tq.arrows.begin(), tq.arrows.end());
  return tq;
}

using VertexSet = std::vector<char>;  // membership flags indexed by vertex id

inline VertexSet vertex_set(std::size_t size, const std::vector<std::size_t>& ids) {
  VertexSet s(size, 0);
  for (auto v : ids) {
    require(v < size, "vertex id out of range");
    s[v] = 1;
  }
  return s;
}

inline std::vector<std::size_t> vertex_ids(const VertexSet& s) {
  std::vector<std::size_t> ids;
  for (std::size_t v = 0; v < s.size(); ++v)
    if (s[v]) ids.push_back(v);
  return ids;
}

inline bool is_ssc(const TwoQuiver& tq, const VertexSet& beta) {
  require(beta.size() == tq.size(), "subset size does not match the 2-quiver");
  for (auto [s, t] : tq.arrows)
    if (beta[s] && !beta[t]) return false;
  for (const auto& a : tq.two_arrows) {
    bool inside = std::all_of(a.gamma1.begin(), a.gamma1.end(), [&](auto v) { return beta[v]; });
    if (!inside) continue;
    if (std::none_of(a.gamma2.begin(), a.gamma2.end(), [&](auto v) { return beta[v]; })) return false;
  }
  return true;
}

struct DimType {
  CoveringDims tbfe;
  KronDim bfe;
};

inline DimType dim_type(const TwoQuiver& tq, const VertexSet& beta) {
  require(beta.size() == tq.size(), "subset size does not match the 2-quiver");
  DimType d;
  for (std::size_t v = 0; v < tq.size(); ++v)
    if (beta[v]) d.tbfe.add(tq.tags[v], 1);
  d.bfe = d.tbfe.pushdown();
  return d;
}

inline CoveringDims total_tags(const TwoQuiver& tq) { return dim_type(tq, VertexSet(tq.size(), 1)).tbfe; }

struct SscFilter {
  std::optional<KronDim> bfe;
  std::optional<CoveringDims> tbfe;
};

// Visit SSC subsets. Vertices are decided in an order where successors come first, so
// successor closure is checked on inclusion and each 2-arrow once its last vertex is decided.
inline void for_each_ssc(const TwoQuiver& tq, const SscFilter& filter, const std::function<void(const VertexSet&)>& visit) {
  const std::size_t N = tq.size();
  std::vector<std::vector<std::size_t>> succ(N), pred(N);
  for (auto [s, t] : tq.arrows) {
    succ[s].push_back(t);
    pred[t].push_back(s);
  }
  // topological order with successors first
  std::vector<std::size_t> order, outdeg(N);
  for (std::size_t v = 0; v < N; ++v) outdeg[v] = succ[v].size();
  std::vector<std::size_t> ready;
  for (std::size_t v = N; v-- > 0;)
    if (outdeg[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (auto p : pred[v])
      if (--outdeg[p] == 0) ready.push_back(p);
  }
  require(order.size() == N, "2-quiver has an oriented cycle");
  std::vector<std::size_t> rank(N);
  for (std::size_t i = 0; i < N; ++i) rank[order[i]] = i;
  std::vector<std::vector<std::size_t>> due(N);
  for (std::size_t i = 0; i < tq.two_arrows.size(); ++i) {
    std::size_t last = 0;
    for (const auto* g : {&tq.two_arrows[i].gamma1, &tq.two_arrows[i].gamma2})
      for (auto v : *g) last = std::max(last, rank[v]);
    due[last].push_back(i);
  }
  // remaining layer capacities for pruning against the filter
  std::vector<std::int64_t> left1(N + 1, 0), left2(N + 1, 0);
  for (std::size_t i = N; i-- > 0;) {
    left1[i] = left1[i + 1] + (tq.layer(order[i]) == 1);
    left2[i] = left2[i + 1] + (tq.layer(order[i]) == 2);
  }
  VertexSet beta(N, 0);
  std::int64_t c1 = 0, c2 = 0;
  auto two_ok = [&](std::size_t i) {
    for (auto idx : due[i]) {
      const auto& a = tq.two_arrows[idx];
      bool inside = std::all_of(a.gamma1.begin(), a.gamma1.end(), [&](auto v) { return beta[v]; });
      if (inside && std::none_of(a.gamma2.begin(), a.gamma2.end(), [&](auto v) { return beta[v]; })) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (filter.bfe) {
      if (c1 > filter.bfe->sink || c2 > filter.bfe->source) return;
      if (c1 + left1[i] < filter.bfe->sink || c2 + left2[i] < filter.bfe->source) return;
    }
    if (i == N) {
      if (filter.tbfe && !(dim_type(tq, beta).tbfe == *filter.tbfe)) return;
      visit(beta);
      return;
    }
    std::size_t v = order[i];
    if (two_ok(i)) dfs(i + 1);
    bool closed = std::all_of(succ[v].begin(), succ[v].end(), [&](auto t) { return beta[t]; });
    if (filter.tbfe && (*filter.tbfe)[tq.tags[v]] == 0) closed = false;
    if (!closed) return;
    beta[v] = 1;
    (tq.layer(v) == 1 ? c1 : c2) += 1;
    if (two_ok(i)) dfs(i + 1);
    beta[v] = 0;
    (tq.layer(v) == 1 ? c1 : c2) -= 1;
  };
  dfs(0);
}

// all SSC subsets matching the filter, ordered by their bitmask read with vertex 0 lowest
inline std::vector<VertexSet> enumerate_ssc(const TwoQuiver& tq, const SscFilter& filter = {}) {
  std::vector<VertexSet> out;
  for_each_ssc(tq, filter, [&](const VertexSet& b) { out.push_back(b); });
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
    for (std::size_t v = a.size(); v-- > 0;)
      if (a[v] != b[v]) return a[v] < b[v];
    return false;
  });
  return out;
}

inline json to_json_value(const TwoQuiver& tq) {
  json verts = json::array(), arrows = json::array(), two = json::array(), comps = json::array();
  for (std::size_t v = 0; v < tq.size(); ++v) verts.push_back({{"id", v}, {"layer", tq.tags[v].layer}, {"word", tq.tags[v].word}});
  for (auto [s, t] : tq.arrows) arrows.push_back({s, t});
  for (const auto& a : tq.two_arrows) two.push_back({{"gamma1", a.gamma1}, {"gamma2", a.gamma2}});
  for (auto [b, e] : tq.components) {
    json c = json::array();
    for (auto v = b; v < e; ++v) c.push_back(v);
    comps.push_back(c);
  }
  return {{"n", tq.n}, {"vertices", verts}, {"arrows", arrows}, {"two_arrows", two}, {"components", comps}};
}

inline std::string to_dot(const TwoQuiver& tq) {
  std::ostringstream os;
  os << "digraph Q {\n";
  for (std::size_t v = 0; v < tq.size(); ++v) os << "  v" << v << " [label=\"" << tq.tags[v].str() << "\"];\n";
  for (auto [s, t] : tq.arrows) os << "  v" << s << " -> v" << t << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace kroncells
