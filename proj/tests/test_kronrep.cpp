#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kroncells/kronrep.hpp"

using namespace kroncells;
using Q = Rational;

TEST_CASE("hom and ext dimensions") {
  auto p2 = build_preprojective<Q>(3, 2), p3 = build_preprojective<Q>(3, 3);
  CHECK(hom_ext_dims(p2, p2) == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(hom_ext_dims(p2, p3) == std::pair<std::size_t, std::size_t>{3, 0});
  for (int n = 3; n <= 4; ++n) {
    // arrows run 2 -> 1, so the n extensions go from S_2 to S_1
    CHECK(hom_ext_dims(simple_rep<Q>(n, 2), simple_rep<Q>(n, 1)) == std::pair<std::size_t, std::size_t>{0, std::size_t(n)});
    CHECK(hom_ext_dims(simple_rep<Q>(n, 1), simple_rep<Q>(n, 2)) == std::pair<std::size_t, std::size_t>{0, 0});
  }
}

TEST_CASE("hom minus ext is the euler form") {
  for (int n = 3; n <= 4; ++n)
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        auto x = build_preprojective<Q>(n, a), y = build_preprojective<Q>(n, b);
        auto [h, e] = hom_ext_dims(x, y);
        CHECK(std::int64_t(h) - std::int64_t(e) == euler_form(n, x.dim(), y.dim()));
        CHECK(hom_ext_dims_direct(x, y) == std::pair{h, e});
      }
}

TEST_CASE("reflections") {
  auto s1 = simple_rep<Q>(3, 1);
  CHECK(reflect(s1, 2).dim() == KronDim{3, 1});
  auto p2 = build_preprojective<Q>(3, 2);
  auto back = reflect(reflect(p2, 2), 1);
  CHECK(back.dim() == p2.dim());
  CHECK(hom_ext_dims(back, p2).first == 1);
  CHECK(hom_ext_dims(p2, back).first == 1);
  auto p3 = build_preprojective<Q>(3, 3);
  CHECK(reflect(p3, 2).dim().sink == 3 * p3.d1 - p3.d2);
}

TEST_CASE("preprojectives") {
  CHECK(build_preprojective<Q>(3, 1).dim() == KronDim{1, 0});
  CHECK(build_preprojective<Q>(3, 3).dim() == KronDim{8, 3});
  CHECK(build_preprojective<Q>(4, 4).dim() == KronDim{56, 15});
  for (int n = 3; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      auto p = build_preprojective<Q>(n, m);
      CHECK(p.dim() == preprojective_dim(n, m));
      CHECK(hom_ext_dims(p, p) == std::pair<std::size_t, std::size_t>{1, 0});
    }
  CHECK_THROWS_AS(build_preprojective<Q>(2, 2), InvalidArgument);
}

TEST_CASE("AR dimension identity") {
  for (int n = 3; n <= 4; ++n)
    for (int m = 2; m <= 6; ++m) CHECK(preprojective_dim(n, m - 1) + preprojective_dim(n, m + 1) == n * preprojective_dim(n, m));
}

TEST_CASE("hom bases") {
  for (int n = 3; n <= 4; ++n)
    for (int m = 1; m <= (n == 3 ? 5 : 4); ++m) {
      auto x = build_preprojective<Q>(n, m), y = build_preprojective<Q>(n, m + 1);
      auto basis = hom_basis(x, y);
      CHECK(basis.size() == std::size_t(n));
      for (const auto& f : basis) CHECK(is_morphism(x, y, f));
    }
  CHECK(hom_basis(build_preprojective<Q>(3, 2), build_preprojective<Q>(3, 1)).empty());
  auto p3 = build_preprojective<Q>(3, 3);
  CHECK(hom_basis(p3, p3).size() == 1);
}

TEST_CASE("truncated preprojectives") {
  auto d = preprojective_data<Q>(3, 2);
  auto t0 = d.truncated(0);
  CHECK(t0.dim() == d.top.dim());
  CHECK(d.truncated(1).dim() == KronDim{5, 2});
  for (int n = 3; n <= 4; ++n)
    for (int m = 1; m <= 3; ++m) {
      auto data = preprojective_data<Q>(n, m);
      for (int r = 0; r < n; ++r) {
        auto t = data.truncated(std::size_t(r));
        CHECK(t.dim() == truncated_dim(n, m, r));
        CHECK(hom_ext_dims(data.prev, t) == std::pair<std::size_t, std::size_t>{std::size_t(n - r), 0});
        CHECK(hom_ext_dims(data.top, t) == std::pair<std::size_t, std::size_t>{1, 0});
      }
    }
  Matrix<Q> dependent(2, 3);
  dependent(0, 0) = dependent(1, 0) = 1;
  CHECK_THROWS_AS(d.truncated(dependent), InvalidArgument);
}

TEST_CASE("nested truncations") {
  for (int n = 3; n <= 4; ++n)
    for (int m = 1; m <= 3; ++m) {
      auto data = preprojective_data<Q>(n, m);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          auto w = data.truncated(std::size_t(s)), v = data.truncated(std::size_t(r));
          CHECK(hom_ext_dims(w, v) == std::pair<std::size_t, std::size_t>{1, std::size_t(s * (n - r))});
        }
      // W spanned by the last basis vector is not inside V = first coordinate
      Matrix<Q> last(1, std::size_t(n));
      last(0, std::size_t(n - 1)) = 1;
      CHECK(hom_ext_dims(data.truncated(last), data.truncated(1)).first == 0);
    }
}

TEST_CASE("codimension one truncation matches the previous level") {
  for (int n = 3; n <= 4; ++n)
    for (int m = 2; m <= 3; ++m) {
      auto a = preprojective_data<Q>(n, m).truncated(std::size_t(n - 1));
      auto b = preprojective_data<Q>(n, m - 1).truncated(1);
      CHECK(a.dim() == b.dim());
      CHECK(hom_ext_dims(a, a).first == 1);
      CHECK(hom_ext_dims(b, b).first == 1);
    }
}

TEST_CASE("hom dimensions agree over Q and F_101") {
  for (int n = 3; n <= 4; ++n)
    for (int a = 1; a <= 4; ++a)
      for (int b = a; b <= std::min(a + 1, 4); ++b)
        CHECK(hom_ext_dims(build_preprojective<Q>(n, a), build_preprojective<Q>(n, b)) ==
              hom_ext_dims(build_preprojective<Fp<101>>(n, a), build_preprojective<Fp<101>>(n, b)));
}

TEST_CASE("preinjectives by duality") {
  auto i3 = build_preinjective<Q>(3, 3);
  CHECK(i3.dim() == preinjective_dim(3, 3));
  CHECK(hom_ext_dims(i3, i3) == std::pair<std::size_t, std::size_t>{1, 0});
}

TEST_CASE("representations round-trip through json") {
  auto p = build_preprojective<Q>(3, 3);
  json j = rep_to_json(p);
  auto back = rep_from_json<Q>(j);
  CHECK(back.dim() == p.dim());
  for (int i = 0; i < 3; ++i) CHECK(back.mats[i] == p.mats[i]);
}

template <class T>
std::vector<std::pair<std::size_t, std::size_t>> truncation_fingerprint(int n, int m) {
  auto d = preprojective_data<T>(n, m);
  std::vector<KronRep<T>> tr;
  for (int r = 0; r < n; ++r) tr.push_back(d.truncated(std::size_t(r)));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& a : tr) {
    out.push_back(hom_ext_dims(d.prev, a));
    out.push_back(hom_ext_dims(d.top, a));
    for (const auto& b : tr) out.push_back(hom_ext_dims(a, b));
  }
  return out;
}

TEST_CASE("truncation hom/ext dimensions agree over Q, F_2 and F_3") {
  for (int n = 3; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      auto q = truncation_fingerprint<Q>(n, m);
      CHECK(truncation_fingerprint<Fp<2>>(n, m) == q);
      CHECK(truncation_fingerprint<Fp<3>>(n, m) == q);
    }
}
