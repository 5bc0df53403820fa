#pragma once

#include <string>
#include <vector>

#include "core.hpp"

namespace kroncells {

// Shared recursive shape of D_k^{[r]} and of the 2-quiver Q_k^{[r]}: positions are Dyck
// edges, equivalently 2-quiver vertices (H <-> layer 1, V <-> layer 2).
//   level 1: a single H
//   level 2: n - r sinks H followed by the source V
//   level k >= 3: n - 1 - r full level-(k-1) copies, then a level-(k-1) copy with one removed
struct Block {
  int level = 1;
  int removed = 0;
  std::size_t begin = 0, end = 0;
  std::vector<Block> children;  // empty for level <= 2
  // For an ordinary child: where its terminal target starts (the target runs to `end`).
  std::size_t target_begin = 0;

  std::size_t size() const { return end - begin; }
  std::size_t ordinary_count() const { return children.empty() ? 0 : children.size() - 1; }
};

inline Block make_layout(int n, int level, int removed, std::size_t begin = 0) {
  require(n >= 2, "n >= 2");
  require(level >= 1, "level >= 1");
  require(removed >= 0 && removed <= n - 1, "removed copies must lie in 0..n-1");
  Block b{level, removed, begin, begin, {}, 0};
  if (level == 1) {
    b.end = begin + 1;
    return b;
  }
  if (level == 2) {
    b.end = begin + std::size_t(n - removed) + 1;
    return b;
  }
  std::size_t pos = begin;
  for (int a = 0; a < n - 1 - removed; ++a) {
    b.children.push_back(make_layout(n, level - 1, 0, pos));
    pos = b.children.back().end;
  }
  b.children.push_back(make_layout(n, level - 1, 1, pos));
  b.end = b.children.back().end;
  for (int a = 0; a + 1 < int(b.children.size()); ++a) {
    Block& c = b.children[a];
    std::size_t peel = std::size_t(removed + a);
    if (c.level == 2) {
      c.target_begin = c.end - 2;
    } else {
      const Block& tc = c.children.back();
      c.target_begin = tc.level == 2 ? tc.begin + peel : tc.children.at(peel).begin;
    }
  }
  return b;
}

inline void write_steps(const Block& b, std::string& out) {
  if (b.level == 1) {
    out += 'H';
  } else if (b.level == 2) {
    out.append(b.size() - 1, 'H');
    out += 'V';
  } else {
    for (const auto& c : b.children) write_steps(c, out);
  }
}

inline std::string layout_steps(const Block& b) {
  std::string s;
  write_steps(b, s);
  return s;
}

}  // namespace kroncells
