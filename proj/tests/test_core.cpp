#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kroncells/core.hpp"

using namespace kroncells;

TEST_CASE("word multiplication reduces") {
  CHECK(word_mul(Word({1}), Word({-1})).empty());
  CHECK(word_mul(Word({1}), Word({-2})).letters() == std::vector<int>{1, -2});
  CHECK(word_mul(Word({1, -2}), Word({2, 3})).letters() == std::vector<int>{1, 3});
  CHECK(Word({2, 1, -1, 3}).letters() == std::vector<int>{2, 3});
  CHECK_THROWS_AS(Word({0}), InvalidArgument);
}

TEST_CASE("random words cancel against their inverse") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> gen(1, 4), sign(0, 1), len(0, 12);
  for (int t = 0; t < 2000; ++t) {
    std::vector<int> l;
    for (int k = len(rng); k > 0; --k) l.push_back(gen(rng) * (sign(rng) ? 1 : -1));
    Word w(l), u({gen(rng)}), v({-gen(rng), gen(rng)});
    CHECK(word_mul(w, w.inverse()).empty());
    CHECK(word_mul(w.inverse(), w).empty());
    CHECK((w * u) * v == w * (u * v));
    for (std::size_t i = 0; i + 1 < w.length(); ++i) CHECK(w.letters()[i] != -w.letters()[i + 1]);
  }
}

TEST_CASE("words serialize as signed letters") {
  json j = Word({1, -2});
  CHECK(j.dump() == "[1,-2]");
  CHECK(j.get<Word>() == Word({1, -2}));
  CoverVertex v{2, Word({-3})};
  CHECK(json(v).get<CoverVertex>() == v);
}

TEST_CASE("euler form on K(3)") {
  Quiver k3 = Quiver::kronecker(3);
  auto dv = [](std::int64_t a, std::int64_t b) { return KronDim{a, b}.as_dim_vector(); };
  CHECK(euler_form(k3, dv(1, 0), dv(3, 1)) == 3);
  CHECK(euler_form(k3, dv(3, 1), dv(3, 1)) == 1);
  CHECK(euler_form(k3, dv(3, 1), dv(8, 3)) == 3);
  CHECK(euler_form(3, {3, 1}, {8, 3}) == 3);
}

TEST_CASE("euler form is bilinear") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::int64_t> d(0, 20);
  for (int n = 2; n <= 5; ++n) {
    Quiver q = Quiver::kronecker(n);
    for (int t = 0; t < 200; ++t) {
      KronDim a{d(rng), d(rng)}, a2{d(rng), d(rng)}, b{d(rng), d(rng)};
      CHECK(euler_form(q, (a + a2).as_dim_vector(), b.as_dim_vector()) ==
            euler_form(q, a.as_dim_vector(), b.as_dim_vector()) + euler_form(q, a2.as_dim_vector(), b.as_dim_vector()));
      CHECK(euler_form(n, a, b + a2) == euler_form(n, a, b) + euler_form(n, a, a2));
    }
  }
}

TEST_CASE("preprojective dimension vectors are exceptional") {
  for (int n = 2; n <= 5; ++n)
    for (int m = 1; m <= 6; ++m) CHECK(euler_form(n, preprojective_dim(n, m), preprojective_dim(n, m)) == 1);
}

TEST_CASE("chebyshev numbers") {
  CHECK(chebyshev(3, 0) == 0);
  CHECK(chebyshev(3, 1) == 1);
  CHECK(chebyshev(3, 4) == 21);
  CHECK(chebyshev(4, 4) == 56);
  CHECK(chebyshev(2, 4) == 4);
  CHECK(preprojective_dim(4, 4) == KronDim{56, 15});
  CHECK(truncated_dim(3, 2, 1) == KronDim{5, 2});
}

TEST_CASE("dimension vectors stay nonnegative") {
  DimVector a{{1, 2}, {2, 1}}, b{{1, 3}};
  CHECK((a + b)[1] == 5);
  CHECK_THROWS_AS(a - b, InvalidArgument);
  CHECK_THROWS_AS(DimVector({{1, -1}}), InvalidArgument);
  CHECK((a - DimVector{{2, 1}}).entries().size() == 1);
}

TEST_CASE("quivers reject cycles and stray arrows") {
  CHECK_THROWS_AS(Quiver({1, 2}, {{1, 2}, {2, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Quiver({1, 2}, {{1, 3}}), InvalidArgument);
  CHECK_THROWS_AS(euler_form(Quiver::kronecker(3), DimVector{{5, 1}}, DimVector{}), InvalidArgument);
}
