#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "layout.hpp"

namespace kroncells {

// The path D_k^{[r]}. Edges are indexed by position 0..size-1; horizontal and vertical
// edges additionally carry their own sub-indices (h_1.. and v_1.., stored 0-based).
class DyckPath {
 public:
  DyckPath(int n, int level, int removed) : n_(n), layout_(make_layout(n, level, removed)) {
    steps_ = layout_steps(layout_);
    sub_.resize(steps_.size());
    for (std::size_t p = 0; p < steps_.size(); ++p) {
      auto& list = steps_[p] == 'H' ? h_pos_ : v_pos_;
      sub_[p] = list.size();
      list.push_back(p);
    }
    pre_v_.assign(steps_.size() + 1, 0);
    for (std::size_t p = 0; p < steps_.size(); ++p) pre_v_[p + 1] = pre_v_[p] + (steps_[p] == 'V');
  }

  int n() const { return n_; }
  int level() const { return layout_.level; }
  int removed() const { return layout_.removed; }
  const Block& layout() const { return layout_; }
  const std::string& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  std::size_t h_count() const { return h_pos_.size(); }
  std::size_t v_count() const { return v_pos_.size(); }
  bool is_h(std::size_t p) const { return steps_[p] == 'H'; }
  std::size_t h_position(std::size_t i) const { return h_pos_.at(i); }
  std::size_t v_position(std::size_t j) const { return v_pos_.at(j); }
  std::size_t sub_index(std::size_t p) const { return sub_[p]; }
  // number of vertical edges among positions [a, b]
  std::size_t v_between(std::size_t a, std::size_t b) const { return pre_v_[b + 1] - pre_v_[a]; }
  std::size_t h_between(std::size_t a, std::size_t b) const { return b + 1 - a - v_between(a, b); }

  // position ranges of the copies; the last one is the truncated copy
  std::vector<std::pair<std::size_t, std::size_t>> components() const {
    std::vector<std::pair<std::size_t, std::size_t>> c;
    for (const auto& b : layout_.children) c.push_back({b.begin, b.end});
    return c;
  }

 private:
  int n_;
  Block layout_;
  std::string steps_;
  std::vector<std::size_t> h_pos_, v_pos_, sub_, pre_v_;
};

inline DyckPath build_dyck(int n, int m) {
  require(n >= 2, "n must be >= 2");
  require(m >= 1, "m must be >= 1");
  return DyckPath(n, m, 0);
}

// Remove the first r copies of D_{k-1} from D_k.
inline DyckPath truncate_dyck(const DyckPath& path, int r) {
  require(path.removed() == 0, "truncate_dyck expects an untruncated path");
  require(r >= 0 && r <= path.n() - 1, "r must satisfy 0 <= r <= n-1");
  require(path.level() >= 2 || r == 0, "D_1 has no copies to remove");
  return DyckPath(path.n(), path.level(), r);
}

inline void to_json(json& j, const DyckPath& p) { j = p.steps(); }

struct EdgePair {
  std::vector<std::size_t> sh;  // horizontal sub-indices, sorted
  std::vector<std::size_t> sv;  // vertical sub-indices, sorted
  friend auto operator<=>(const EdgePair&, const EdgePair&) = default;
};

inline void to_json(json& j, const EdgePair& e) {
  auto one_based = [](const std::vector<std::size_t>& v) {
    std::vector<std::size_t> o;
    for (auto x : v) o.push_back(x + 1);
    return o;
  };
  j = json{{"SH", one_based(e.sh)}, {"SV", one_based(e.sv)}};
}
inline void from_json(const json& j, EdgePair& e) {
  e = EdgePair{};
  for (std::size_t x : j.at("SH").get<std::vector<std::size_t>>()) e.sh.push_back(x - 1);
  for (std::size_t x : j.at("SV").get<std::vector<std::size_t>>()) e.sv.push_back(x - 1);
  std::sort(e.sh.begin(), e.sh.end());
  std::sort(e.sv.begin(), e.sv.end());
}

// Per-position membership: an H position is marked iff in S_H, a V position iff in S_V.
inline std::vector<char> edge_marks(const DyckPath& path, const EdgePair& pair) {
  std::vector<char> mark(path.size(), 0);
  for (auto i : pair.sh) {
    require(i < path.h_count(), "horizontal edge index out of range");
    mark[path.h_position(i)] = 1;
  }
  for (auto j : pair.sv) {
    require(j < path.v_count(), "vertical edge index out of range");
    mark[path.v_position(j)] = 1;
  }
  return mark;
}

namespace detail {

inline std::optional<std::size_t> shadow_end(const DyckPath& path, std::size_t pos, const std::vector<char>& mark) {
  std::size_t vert = 0, sel = 0;
  for (std::size_t e = pos; e < path.size(); ++e) {
    if (path.is_h(e))
      sel += mark[e];
    else
      ++vert;
    if (vert == std::size_t(path.n()) * sel) return e;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> shadow_start(const DyckPath& path, std::size_t pos, const std::vector<char>& mark) {
  std::size_t hor = 0, sel = 0;
  for (std::size_t e = pos + 1; e-- > 0;) {
    if (path.is_h(e))
      ++hor;
    else
      sel += mark[e];
    if (hor == std::size_t(path.n()) * sel) return e;
  }
  return std::nullopt;
}

}  // namespace detail

// End position of the local shadow path of h_i; nullopt for the fallback h_i v_last.
inline std::optional<std::size_t> shadow_h(const DyckPath& path, std::size_t i, const std::vector<std::size_t>& sh) {
  return detail::shadow_end(path, path.h_position(i), edge_marks(path, {sh, {}}));
}

// Start position of the local shadow path of v_j; nullopt for the fallback h_1 v_j.
inline std::optional<std::size_t> shadow_v(const DyckPath& path, std::size_t j, const std::vector<std::size_t>& sv) {
  return detail::shadow_start(path, path.v_position(j), edge_marks(path, {{}, sv}));
}

// Direct check: every h in S_H left of v in S_V needs some e in [h, v] balancing
// either [h, e] (e != v) or [e, v] (e != h).
inline bool is_compatible(const DyckPath& path, const EdgePair& pair) {
  auto mark = edge_marks(path, pair);
  const std::size_t n = path.n();
  std::vector<std::size_t> pre_sh(path.size() + 1, 0), pre_sv(path.size() + 1, 0);
  for (std::size_t p = 0; p < path.size(); ++p) {
    pre_sh[p + 1] = pre_sh[p] + (path.is_h(p) && mark[p]);
    pre_sv[p + 1] = pre_sv[p] + (!path.is_h(p) && mark[p]);
  }
  for (auto i : pair.sh)
    for (auto j : pair.sv) {
      std::size_t h = path.h_position(i), v = path.v_position(j);
      if (h > v) continue;
      bool ok = false;
      for (std::size_t e = h; e <= v && !ok; ++e) {
        if (e != v && path.v_between(h, e) == n * (pre_sh[e + 1] - pre_sh[h])) ok = true;
        if (e != h && path.h_between(e, v) == n * (pre_sv[v + 1] - pre_sv[e])) ok = true;
      }
      if (!ok) return false;
    }
  return true;
}

// Rightmost h in S_H whose shadow runs to the last vertical edge (balanced there or not).
inline std::optional<std::size_t> blocking_edge(const DyckPath& path, const std::vector<std::size_t>& sh) {
  auto mark = edge_marks(path, {sh, {}});
  for (std::size_t i = path.h_count(); i-- > 0;) {
    std::size_t p = path.h_position(i);
    if (!mark[p]) continue;
    auto end = detail::shadow_end(path, p, mark);
    if (!end || *end + 1 == path.size()) return i;
  }
  return std::nullopt;
}

namespace detail {

inline bool block_compatible(const DyckPath& path, const Block& b, const std::vector<char>& mark) {
  if (b.level == 1) return true;
  if (b.level == 2) {
    if (!mark[b.end - 1]) return true;
    for (std::size_t p = b.begin; p + 1 < b.end; ++p)
      if (mark[p]) return false;
    return true;
  }
  for (const auto& c : b.children)
    if (!block_compatible(path, c, mark)) return false;
  // piecewise compatible: without a blocking edge inside this block nothing can fail
  bool blocked = false;
  for (std::size_t p = b.begin; p < b.end && !blocked; ++p) {
    if (!path.is_h(p) || !mark[p]) continue;
    std::size_t vert = 0, sel = 0;
    blocked = true;
    for (std::size_t e = p; e < b.end; ++e) {
      if (path.is_h(e))
        sel += mark[e];
      else
        ++vert;
      if (vert == std::size_t(path.n()) * sel) {
        blocked = e + 1 == b.end;
        break;
      }
    }
  }
  if (!blocked) return true;
  // the copies after child a all lie in the subrepresentation while the target of a has none of it
  auto full = [&](std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p)
      if (path.is_h(p) == bool(mark[p])) return false;
    return true;
  };
  auto all_h_marked = [&](std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p)
      if (path.is_h(p) && !mark[p]) return false;
    return true;
  };
  for (std::size_t a = 0; a < b.ordinary_count(); ++a) {
    const Block& c = b.children[a];
    if (full(c.end, b.end) && all_h_marked(c.target_begin, c.end)) return false;
  }
  return true;
}

}  // namespace detail

// Structural criterion: copies first, then the blocking-edge shortcut and the per-copy conditions.
inline bool is_compatible_fast(const DyckPath& path, const EdgePair& pair) {
  if (pair.sv.empty()) return true;
  return detail::block_compatible(path, path.layout(), edge_marks(path, pair));
}

// V edges preceded by exactly n-1 horizontal edges
inline std::size_t short_hook_count(const DyckPath& path) {
  std::size_t run = 0, count = 0;
  for (char c : path.steps()) {
    if (c == 'H') {
      ++run;
    } else {
      count += run == std::size_t(path.n() - 1);
      run = 0;
    }
  }
  return count;
}

inline std::vector<std::size_t> hook_lengths(const DyckPath& path) {
  std::vector<std::size_t> out;
  std::size_t run = 0;
  for (char c : path.steps()) {
    if (c == 'H') {
      ++run;
    } else {
      out.push_back(run);
      run = 0;
    }
  }
  return out;
}

// never strictly above the diagonal of the bounding rectangle
inline bool below_diagonal(const DyckPath& path) {
  std::int64_t x = 0, y = 0, w = path.h_count(), h = path.v_count();
  for (char c : path.steps()) {
    (c == 'H' ? x : y) += 1;
    if (y * w > x * h) return false;
  }
  return true;
}

// Visit compatible pairs with |S_H| = sh and |S_V| = sv (negative means any size).
// S_V runs over subsets; horizontals are decided right to left so that each chosen h
// already sees its whole shadow.
inline void for_each_compatible(const DyckPath& path, int sh, int sv,
                                const std::function<void(const EdgePair&)>& visit) {
  const std::size_t H = path.h_count(), V = path.v_count(), n = path.n();
  constexpr std::size_t kNone = std::size_t(-1);
  require(sh <= int(H) && sv <= int(V), "pair sizes exceed edge counts");
  require(V < 63, "too many vertical edges to enumerate");
  std::vector<char> mark(path.size(), 0);
  EdgePair pair;
  for (std::uint64_t vmask = 0; vmask < (std::uint64_t(1) << V); ++vmask) {
    if (sv >= 0 && std::popcount(vmask) != sv) continue;
    std::fill(mark.begin(), mark.end(), 0);
    pair.sv.clear();
    for (std::size_t j = 0; j < V; ++j)
      if (vmask >> j & 1) {
        mark[path.v_position(j)] = 1;
        pair.sv.push_back(j);
      }
    // limit[p]: first selected v right of p whose shadow contains p
    std::vector<std::size_t> limit(path.size(), kNone);
    for (auto j : pair.sv) {
      std::size_t v = path.v_position(j);
      auto s = detail::shadow_start(path, v, mark);
      // h inside the shadow of v get no help from the v side
      for (std::size_t p = s ? *s : 0; p < v; ++p) limit[p] = std::min(limit[p], v);
    }
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t i, std::size_t left) {
      // i: number of horizontals still undecided (indices 0..i-1); left: how many still to choose
      if (sh >= 0 && left > i) return;
      if (i == 0) {
        if (sh >= 0 && left != 0) return;
        pair.sh.assign(chosen.rbegin(), chosen.rend());
        visit(pair);
        return;
      }
      std::size_t h = i - 1, p = path.h_position(h);
      dfs(i - 1, left);
      if (sh >= 0 && left == 0) return;
      mark[p] = 1;
      std::size_t vert = 0, sel = 0, end = kNone;
      for (std::size_t e = p; e < path.size(); ++e) {
        if (path.is_h(e))
          sel += mark[e];
        else
          ++vert;
        if (vert == n * sel) {
          end = e;
          break;
        }
      }
      if (limit[p] == kNone || (end != kNone && end < limit[p])) {
        chosen.push_back(h);
        dfs(i - 1, left - (sh >= 0));
        chosen.pop_back();
      }
      mark[p] = 0;
    };
    dfs(H, sh >= 0 ? std::size_t(sh) : 0);
  }
}

struct CompatibleResult {
  std::uint64_t count = 0;
  std::vector<EdgePair> pairs;
};

inline CompatibleResult enumerate_compatible(const DyckPath& path, int sh, int sv, bool materialize = true) {
  CompatibleResult r;
  for_each_compatible(path, sh, sv, [&](const EdgePair& p) {
    ++r.count;
    if (materialize) r.pairs.push_back(p);
  });
  std::sort(r.pairs.begin(), r.pairs.end());
  return r;
}

}  // namespace kroncells
