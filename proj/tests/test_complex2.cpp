#include <doctest.h>

#include <algorithm>

#include "complex2.hpp"

using namespace hall2p;

namespace {

const char* kA1p3 = R"(field 3
vertex 1
)";

const char* kA1p2 = R"(field 2
vertex 1
)";

const char* kA2p3 = R"(field 3
vertex 1 2
arrow a 1 2
)";

const char* kA2p2 = R"(field 2
vertex 1 2
arrow a 1 2
)";

Mat mk(int rows, int cols, std::initializer_list<int> vals) {
  Mat m(rows, cols);
  size_t k = 0;
  for (int v : vals) m.a[k++] = uint8_t(v);
  return m;
}

ChainMap cm(std::vector<Mat> f1, std::vector<Mat> f0) {
  ChainMap f;
  f.f1.f = std::move(f1);
  f.f0.f = std::move(f0);
  return f;
}

// One projective in each degree over the one-vertex algebra, with scalar
// differentials (x, y).
Complex2 a1_pair(const Algebra& A, int x, int y) {
  RepMap d1{{mk(1, 1, {x})}};
  RepMap d0{{mk(1, 1, {y})}};
  return mk_complex(A, {1}, {1}, d1, d0);
}

// The simple at vertex 1 of the A2 quiver, presented as P2 -> P1 with the
// reverse differential zero.
Complex2 a2_top_simple(const Algebra& A) {
  RepMap d1{{Mat(1, 0), mk(1, 1, {1})}};
  RepMap d0{{Mat(0, 1), mk(1, 1, {0})}};
  return mk_complex(A, {0, 1}, {1, 0}, d1, d0);
}

// P concentrated in one degree (degree1 ? (P,0) : (0,P)) over any algebra.
Complex2 one_sided(const Algebra& A, int vertex, bool degree1) {
  std::vector<int> e(A.num_vertices(), 0), z(A.num_vertices(), 0);
  e[vertex] = 1;
  const std::vector<int>& e1 = degree1 ? e : z;
  const std::vector<int>& e0 = degree1 ? z : e;
  ProjSum p1 = A.proj_sum(e1), p0 = A.proj_sum(e0);
  RepMap d1, d0;
  for (int v = 0; v < A.num_vertices(); ++v) {
    d1.f.push_back(Mat(p0.rep.dims[v], p1.rep.dims[v]));
    d0.f.push_back(Mat(p1.rep.dims[v], p0.rep.dims[v]));
  }
  return mk_complex(A, e1, e0, d1, d0);
}

}  // namespace

TEST_SUITE("complex2") {

TEST_CASE("shift is an involution and swaps the contractible kinds") {
  Algebra A = Algebra::parse(kA2p3);
  Complex2 X = a2_top_simple(A);
  CHECK(complexes_equal(shift(A, shift(A, X)), X));

  Complex2 kp = contractible_on(A, 0, false);
  Complex2 kps = contractible_on(A, 0, true);
  Complex2 sh = shift(A, kp);
  CHECK_FALSE(complexes_equal(sh, kps));  // sign flips over F_3
  CHECK(is_isomorphic(A, sh, kps).has_value());
  CHECK(complexes_equal(shift(A, shift(A, kp)), kp));
}

TEST_CASE("serialization round-trips and rejects malformed ids") {
  Algebra A = Algebra::parse(kA2p3);
  Complex2 X = a2_top_simple(A);
  Complex2 Y = parse_complex(A, serialize_complex(X));
  CHECK(complexes_equal(X, Y));

  Complex2 Z = contractible_on(A, 1, true);
  CHECK(complexes_equal(parse_complex(A, serialize_complex(Z)), Z));

  CHECK_THROWS_AS(parse_complex(A, "e1=[1];e0=[1];d1=[];d0=[]"), UsageError);
  CHECK_THROWS_AS(parse_complex(A, "nonsense"), UsageError);
  CHECK_THROWS_AS(
      parse_complex(A, "e1=[0,1];e0=[1,0];d1=[|5];d0=[|0]"), UsageError);
}

TEST_CASE("structural hom bases and coordinates are mutually inverse") {
  Algebra A = Algebra::parse(kA2p3);
  ProjSum src = A.proj_sum({1, 2});
  ProjSum dst = A.proj_sum({2, 1});
  for (bool radical : {false, true}) {
    std::vector<RepMap> basis = module_hom_basis(A, src, dst, radical);
    for (size_t k = 0; k < basis.size(); ++k) {
      CHECK(is_module_map(A.field(), A.quiver(), src.rep, dst.rep, basis[k]));
      Vec c = module_hom_coords(A, src, dst, basis[k], radical);
      for (size_t j = 0; j < c.size(); ++j)
        CHECK(c[j] == (j == k ? 1 : 0));
    }
  }
  // Radical basis drops every degree-zero slot pairing of like type:
  // 1 for the single P1 copy plus 2x2 for the P2 copies.
  size_t full = module_hom_basis(A, src, src, false).size();
  size_t rad = module_hom_basis(A, src, src, true).size();
  CHECK(full - rad == 5);
}

TEST_CASE("hom and homotopy dimensions on the one-vertex algebra") {
  Algebra A = Algebra::parse(kA1p3);
  Complex2 X = a1_pair(A, 0, 0);
  Complex2 kp = contractible_on(A, 0, false);

  CHECK(hom_dim_c2(A, X, X) == 2);
  CHECK(htp_dim(A, X, X) == 0);
  CHECK(hom_dim_k2(A, X, X) == 2);

  // Contractibles become zero objects in the homotopy category.
  CHECK(hom_dim_c2(A, kp, kp) == 1);
  CHECK(htp_dim(A, kp, kp) == 1);
  CHECK(hom_dim_k2(A, kp, kp) == 0);
  CHECK(hom_dim_k2(A, kp, X) == 0);
  CHECK(hom_dim_k2(A, X, kp) == 0);

  // Every null-homotopic endomorphism of kp is a scalar; spot check one.
  std::vector<ChainMap> null = homotopy_space(A, kp, kp);
  REQUIRE(null.size() == 1);
  CHECK(is_chain_map(A, kp, kp, null[0]));
  CHECK(is_null_homotopic(A, kp, kp, null[0]));

  for (const ChainMap& f : chain_hom_basis(A, X, X))
    CHECK(is_chain_map(A, X, X, f));
  for (const ChainMap& f : k2_hom(A, X, X))
    CHECK_FALSE(is_null_homotopic(A, X, X, f));
}

TEST_CASE("stable homs across the standard triangle over A2") {
  Algebra A = Algebra::parse(kA2p3);
  Complex2 s1 = a2_top_simple(A);
  Complex2 s2 = one_sided(A, 1, false);  // simple projective in degree 0
  CHECK(hom_dim_k2(A, s1, s1) == 1);
  CHECK(hom_dim_k2(A, s2, s2) == 1);
  CHECK(hom_dim_k2(A, s1, shift(A, s2)) == 1);
  CHECK(hom_dim_k2(A, s2, shift(A, s1)) == 0);
}

TEST_CASE("cone of the zero map is the direct sum") {
  Algebra A = Algebra::parse(kA1p3);
  Complex2 X = a1_pair(A, 0, 0);
  Complex2 Y = contractible_on(A, 0, false);
  ChainMap zero = cm({Mat(1, 1)}, {Mat(1, 1)});
  ConeResult c = cone_of(A, X, Y, zero);
  CHECK(complexes_equal(c.Z, direct_sum_complex(A, X, Y).sum));
  CHECK(is_chain_map(A, Y, c.Z, c.iota));
  CHECK(is_chain_map(A, c.Z, X, c.pi));
}

TEST_CASE("cone of a degree map between one-sided complexes is contractible") {
  Algebra A = Algebra::parse(kA1p3);
  Complex2 X = one_sided(A, 0, true);   // (P, 0)
  Complex2 Y = one_sided(A, 0, false);  // (0, P)
  // A map X -> Y* is a scalar P -> P in the upper degree.
  ChainMap h = cm({mk(1, 1, {2})}, {Mat(0, 0)});
  ConeResult c = cone_of(A, X, Y, h);
  CHECK(complexes_equal(c.Z, contractible_on(A, 0, false)));

  ChainMap h2 = cm({mk(1, 1, {1})}, {Mat(0, 0)});
  ConeResult c2 = cone_of(A, X, Y, h2);
  CHECK_FALSE(complexes_equal(c2.Z, contractible_on(A, 0, false)));
  CHECK(is_isomorphic(A, c2.Z, contractible_on(A, 0, false)).has_value());

  // Non-chain-map candidates are rejected.
  Complex2 kp = contractible_on(A, 0, false);
  ChainMap bad = cm({mk(1, 1, {1})}, {mk(1, 1, {1})});
  CHECK_THROWS_AS(cone_of(A, kp, kp, bad), UsageError);
}

TEST_CASE("cone over A2 splits as middle term plus a contractible") {
  Algebra A = Algebra::parse(kA2p3);
  Complex2 X = a2_top_simple(A);
  Complex2 Y = one_sided(A, 1, false);  // (0, P2)
  // h: X -> Y* is a scalar P2 -> P2 in the upper degree; pick a unit.
  ChainMap h = cm({Mat(0, 0), mk(1, 1, {1})}, {Mat(0, 1), Mat(0, 1)});
  ConeResult c = cone_of(A, X, Y, h);
  CHECK(is_chain_map(A, Y, c.Z, c.iota));
  CHECK(is_chain_map(A, c.Z, X, c.pi));

  RadicalSplit d = decompose(A, c.Z);
  CHECK(d.plus_mult == std::vector<int>{0, 1});
  CHECK(d.minus_mult == std::vector<int>{0, 0});
  CHECK(d.radical.c1.mult == std::vector<int>{0, 0});
  CHECK(d.radical.c0.mult == std::vector<int>{1, 0});
  CHECK(is_radical_complex(A, d.radical));

  // With the zero class instead, nothing splits off.
  ChainMap h0 = cm({Mat(0, 0), mk(1, 1, {0})}, {Mat(0, 1), Mat(0, 1)});
  RadicalSplit d0 = decompose(A, cone_of(A, X, Y, h0).Z);
  CHECK(d0.plus_mult == std::vector<int>{0, 0});
  CHECK(d0.minus_mult == std::vector<int>{0, 0});
}

TEST_CASE("decompose strips contractibles and certifies the witness") {
  Algebra A = Algebra::parse(kA1p3);
  RepMap d1{{mk(2, 2, {1, 0, 0, 0})}};
  RepMap d0{{mk(2, 2, {0, 0, 0, 1})}};
  Complex2 X = mk_complex(A, {2}, {2}, d1, d0);

  RadicalSplit d = decompose(A, X);
  CHECK(d.plus_mult == std::vector<int>{1});
  CHECK(d.minus_mult == std::vector<int>{1});
  CHECK(d.radical.is_zero());

  Complex2 shape = contractible_shape(A, d.plus_mult, d.minus_mult);
  Complex2 target = direct_sum_complex(A, d.radical, shape).sum;
  CHECK(is_chain_iso(A, X, target, d.witness));

  // Radical input: nothing to strip, witness is the identity.
  Complex2 R = a1_pair(A, 0, 0);
  RadicalSplit dr = decompose(A, R);
  CHECK(complexes_equal(dr.radical, R));
  CHECK(chain_equal(dr.witness, chain_identity(R)));
  CHECK(is_radical_complex(A, R));
  CHECK_FALSE(is_radical_complex(A, X));
}

TEST_CASE("contractible kinds are homotopy equivalent but never isomorphic") {
  Algebra A = Algebra::parse(kA1p3);
  Complex2 kp = contractible_on(A, 0, false);
  Complex2 kps = contractible_on(A, 0, true);
  CHECK_FALSE(is_isomorphic(A, kp, kps).has_value());
  CHECK(is_homotopy_equivalent(A, kp, kps));
  CHECK(is_homotopy_equivalent(A, kp, zero_complex(A)));
  CHECK_FALSE(is_homotopy_equivalent(A, kp, a1_pair(A, 0, 0)));

  auto w = is_isomorphic(A, kp, kp);
  REQUIRE(w.has_value());
  CHECK(is_chain_iso(A, kp, kp, *w));
}

TEST_CASE("automorphism counts on the one-vertex algebra") {
  Algebra A3 = Algebra::parse(kA1p3);
  Algebra A2 = Algebra::parse(kA1p2);

  // One copy of P in the upper degree only: units of the ground field.
  AutOrders one = aut_orders(A2, one_sided(A2, 0, true));
  CHECK(one.aut_c2 == 1);
  CHECK(one.aut_k2 == 1);

  // Two copies of P in degree zero: the full 2x2 linear group.
  RepMap d1{{Mat(2, 0)}};
  RepMap d0{{Mat(0, 2)}};
  Complex2 ss = mk_complex(A2, {0}, {2}, d1, d0);
  CHECK(aut_orders(A2, ss).aut_c2 == 6);

  // A contractible has unit group of size p-1 and is stably trivial.
  AutOrders kp = aut_orders(A3, contractible_on(A3, 0, false));
  CHECK(kp.aut_c2 == 2);
  CHECK(kp.htp_self == 1);
  CHECK(kp.aut_k2 == 1);

  // The split pair (P,P,0,0): independent unit scalars in each degree.
  AutOrders pair = aut_orders(A3, a1_pair(A3, 0, 0));
  CHECK(pair.aut_c2 == 4);
  CHECK(pair.htp_self == 0);
  CHECK(pair.aut_k2 == 4);

  // Contractible pair from the decompose fixture: (p-1)^2 p^2 in total.
  RepMap e1{{mk(2, 2, {1, 0, 0, 0})}};
  RepMap e0{{mk(2, 2, {0, 0, 0, 1})}};
  Complex2 X = mk_complex(A3, {2}, {2}, e1, e0);
  AutOrders ax = aut_orders(A3, X);
  CHECK(ax.aut_c2 == 36);
  CHECK(ax.aut_k2 == 1);
}

TEST_CASE("stable automorphisms factor the p-power homotopy layer") {
  Algebra A = Algebra::parse(kA2p3);
  Complex2 s1 = a2_top_simple(A);
  AutOrders o = aut_orders(A, s1);
  CHECK(o.aut_c2 == 2);
  CHECK(o.htp_self == 0);
  CHECK(o.aut_k2 == 2);
  uint64_t layer = 1;
  for (int k = 0; k < o.htp_self; ++k) layer *= A.field().p;
  CHECK(o.aut_c2 == o.aut_k2 * layer);
}

TEST_CASE("indecomposability on small cases") {
  Algebra A1 = Algebra::parse(kA1p3);
  Algebra A2 = Algebra::parse(kA2p3);

  CHECK_FALSE(is_indecomposable(A1, zero_complex(A1)));
  CHECK_FALSE(is_indecomposable(A1, contractible_on(A1, 0, false)));
  CHECK_FALSE(is_indecomposable(A1, a1_pair(A1, 0, 0)));
  CHECK(is_indecomposable(A1, one_sided(A1, 0, true)));
  CHECK(is_indecomposable(A2, a2_top_simple(A2)));

  SumLayout two = direct_sum_complex(A2, a2_top_simple(A2), a2_top_simple(A2));
  CHECK_FALSE(is_indecomposable(A2, two.sum));
}

TEST_CASE("class scan over the one-vertex window matches hand counts") {
  Algebra A = Algebra::parse(kA1p3);
  std::vector<ScanClass> all = enumerate_all(A, {1}, {1});
  REQUIRE(all.size() == 3);

  CHECK(all[0].rep.d1.f[0].is_zero());
  CHECK(all[0].rep.d0.f[0].is_zero());
  CHECK(all[0].orbit_size == 1);
  CHECK(all[0].aut_c2 == 4);

  CHECK(complexes_equal(all[1].rep, contractible_on(A, 0, true)));
  CHECK(all[1].orbit_size == 2);
  CHECK(all[1].aut_c2 == 2);

  CHECK(complexes_equal(all[2].rep, contractible_on(A, 0, false)));
  CHECK(all[2].orbit_size == 2);
  CHECK(all[2].aut_c2 == 2);

  std::vector<ScanClass> rad = enumerate_radical(A, {1}, {1});
  REQUIRE(rad.size() == 1);
  CHECK(rad[0].orbit_size == 1);
  CHECK(rad[0].aut_c2 == 4);

  CHECK_THROWS_AS(enumerate_all(A, {2}, {2}, 10), CapacityError);
}

TEST_CASE("radical scan over the A2 window finds the top simple") {
  Algebra A = Algebra::parse(kA2p3);
  std::vector<ScanClass> rad = enumerate_radical(A, {0, 1}, {1, 0});
  REQUIRE(rad.size() == 2);
  CHECK(rad[0].orbit_size == 1);
  CHECK(rad[0].aut_c2 == 4);
  CHECK(rad[1].orbit_size == 2);
  CHECK(rad[1].aut_c2 == 2);
  CHECK(is_isomorphic(A, rad[1].rep, a2_top_simple(A)).has_value());
  CHECK(is_indecomposable(A, rad[1].rep));
  CHECK_FALSE(is_indecomposable(A, rad[0].rep));
}

TEST_CASE("scan automorphism orders agree with direct unit counts") {
  Algebra A = Algebra::parse(kA2p2);
  for (const ScanClass& cls : enumerate_all(A, {1, 1}, {1, 1})) {
    AutOrders o = aut_orders(A, cls.rep);
    CHECK(u128(o.aut_c2) == cls.aut_c2);
    // Stabilizer times orbit recovers the ambient group order.
    CHECK(cls.aut_c2 * u128(cls.orbit_size) ==
          proj_sum_aut_order(A, {1, 1}) * proj_sum_aut_order(A, {1, 1}));
  }
}

TEST_CASE("scan classes are pairwise non-isomorphic and reachable") {
  Algebra A = Algebra::parse(kA2p2);
  std::vector<ScanClass> all = enumerate_all(A, {1, 1}, {1, 1});
  uint64_t total = 0;
  for (const ScanClass& cls : all) total += cls.orbit_size;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      CHECK_FALSE(is_isomorphic(A, all[i].rep, all[j].rep).has_value());
  CHECK(total > 0);

  std::vector<ScanClass> rad = enumerate_radical(A, {1, 1}, {1, 1});
  CHECK(rad.size() == 4);
  for (const ScanClass& cls : rad) CHECK(is_radical_complex(A, cls.rep));
}

TEST_CASE("group order of a projective sum matches the unit sweep") {
  Algebra A = Algebra::parse(kA2p3);
  // End(P1 + P2) has one radical parameter; units are (u, v, rad).
  CHECK(proj_sum_aut_order(A, {1, 1}) == u128(2 * 2 * 3));
  CHECK(proj_sum_aut_order(A, {1, 0}) == u128(2));
  CHECK(proj_sum_aut_order(A, {0, 2}) == u128(48));  // |GL_2(F_3)|
  CHECK(proj_sum_aut_order(A, {0, 0}) == u128(1));
}

}  // TEST_SUITE
