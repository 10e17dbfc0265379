#include <doctest.h>

#include <set>

#include "field_linalg.hpp"

using namespace hall2p;

TEST_SUITE_BEGIN("field_linalg");

TEST_CASE("field constructor accepts primes in range and rejects the rest") {
  CHECK_NOTHROW(PrimeField(2));
  CHECK_NOTHROW(PrimeField(251));
  CHECK_THROWS_AS(PrimeField(1), UsageError);
  CHECK_THROWS_AS(PrimeField(4), UsageError);
  CHECK_THROWS_AS(PrimeField(257), UsageError);
}

TEST_CASE("field arithmetic round trips") {
  PrimeField F(7);
  for (uint32_t a = 1; a < 7; ++a) {
    CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.add(a, F.neg(a)) == 0);
  }
  CHECK(F.pow(3, 6) == 1);
  uint32_t g = F.primitive_root();
  std::set<uint32_t> seen;
  uint32_t x = 1;
  for (int i = 0; i < 6; ++i) {
    seen.insert(x);
    x = F.mul(x, g);
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("there are exactly 6 invertible 2x2 matrices over F_2") {
  PrimeField F(2);
  int count = 0;
  for (int bits = 0; bits < 16; ++bits) {
    Mat m(2, 2);
    for (int k = 0; k < 4; ++k) m.a[k] = uint8_t((bits >> k) & 1);
    if (is_invertible(F, m)) ++count;
  }
  CHECK(count == 6);
}

TEST_CASE("rank plus kernel dimension equals column count") {
  PrimeField F(5);
  Mat m(3, 4);
  uint8_t vals[12] = {1, 2, 0, 4, 2, 4, 0, 3, 0, 0, 1, 1};
  for (int k = 0; k < 12; ++k) m.a[k] = vals[k];
  auto ker = kernel_basis(F, m);
  CHECK(rank(F, m) + int(ker.size()) == m.cols);
  for (const auto& v : ker) {
    Vec img = mat_vec(F, m, v);
    for (auto e : img) CHECK(e == 0);
  }
}

TEST_CASE("kernel basis is column reduced with unit pivots at free columns") {
  PrimeField F(3);
  // One relation between columns: rank 1, kernel dimension 2.
  Mat m(1, 3);
  m.a = {1, 1, 2};
  auto ker = kernel_basis(F, m);
  REQUIRE(ker.size() == 2);
  // Free columns are 1 and 2 (column 0 is the pivot).
  CHECK(ker[0][1] == 1);
  CHECK(ker[0][2] == 0);
  CHECK(ker[1][1] == 0);
  CHECK(ker[1][2] == 1);
}

TEST_CASE("solve_affine reports no solution exactly when rhs leaves the span") {
  PrimeField F(5);
  Mat m(2, 2);
  m.a = {1, 2, 2, 4};  // rank 1
  Vec off_span = {1, 0};  // columns span {(t, 2t)}
  CHECK_FALSE(solve_affine(F, m, off_span).has_value());
  Vec ok = {1, 2};
  auto sol = solve_affine(F, m, ok);
  REQUIRE(sol.has_value());
  Vec check = mat_vec(F, m, sol->first);
  CHECK(check == ok);
  CHECK(sol->second.size() == 1);
  Vec wrong_len = {1, 2, 3};
  CHECK_THROWS_AS(solve_affine(F, m, wrong_len), UsageError);
}

TEST_CASE("matrix inverse agrees with multiplication") {
  PrimeField F(7);
  Mat m(3, 3);
  m.a = {2, 1, 0, 0, 3, 1, 1, 0, 5};
  auto inv = mat_inverse(F, m);
  REQUIRE(inv.has_value());
  CHECK(mat_mul(F, m, *inv) == Mat::identity(3));
  CHECK(mat_mul(F, *inv, m) == Mat::identity(3));
  Mat sing(2, 2);
  sing.a = {1, 2, 2, 4};
  CHECK_FALSE(mat_inverse(F, sing).has_value());
}

TEST_CASE("span enumeration emits p^k distinct points in lexicographic order") {
  PrimeField F(3);
  std::vector<Vec> basis = {{1, 0, 0}, {0, 1, 1}};
  auto pts = enumerate_space(F, basis, 3, 1 << 20);
  REQUIRE(pts.size() == 9);
  std::set<Vec> uniq(pts.begin(), pts.end());
  CHECK(uniq.size() == 9);
  // Index 0 is the origin; index 1 is the second basis vector (last
  // coefficient varies fastest).
  CHECK(pts[0] == Vec{0, 0, 0});
  CHECK(pts[1] == Vec{0, 1, 1});
  CHECK(pts[3] == Vec{1, 0, 0});
}

TEST_CASE("span enumeration refuses to exceed the cap") {
  PrimeField F(5);
  std::vector<Vec> basis(12, Vec(12, 0));
  for (int i = 0; i < 12; ++i) basis[i][i] = 1;
  CHECK_THROWS_AS(enumerate_space(F, basis, 12, 1000), CapacityError);
}

TEST_SUITE_END();
