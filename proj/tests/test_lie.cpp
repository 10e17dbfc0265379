#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "lie.hpp"

using namespace hall2p;

namespace {

const char* kA1p5 = R"(field 5
vertex 1
)";

const char* kA1p7 = R"(field 7
vertex 1
)";

const char* kA2p5 = R"(field 5
vertex 1 2
arrow a 1 2
)";

const char* kA3RelP3 = R"(field 3
vertex 1 2 3
arrow a 1 2
arrow b 2 3
relation 1*a.b
)";

const char* kKroneckerP3 = R"(field 3
vertex 1 2
arrow a 1 2
arrow b 1 2
)";

Mat mk(int rows, int cols, std::initializer_list<int> vals) {
  Mat m(rows, cols);
  size_t k = 0;
  for (int v : vals) m.a[k++] = uint8_t(v);
  return m;
}

// Complex with zero differentials on the given multiplicity vectors.
Complex2 stalks(const Algebra& A, std::vector<int> e1, std::vector<int> e0) {
  ProjSum c1 = A.proj_sum(e1), c0 = A.proj_sum(e0);
  RepMap d1, d0;
  for (int v = 0; v < A.num_vertices(); ++v) {
    d1.f.emplace_back(c0.rep.dims[v], c1.rep.dims[v]);
    d0.f.emplace_back(c1.rep.dims[v], c0.rep.dims[v]);
  }
  return mk_complex(A, e1, e0, std::move(d1), std::move(d0));
}

// P2 -> P1 along the arrow: the complex presenting the top simple of A2.
Complex2 a2_top_simple(const Algebra& A) {
  RepMap d1, d0;
  d1.f = {Mat(1, 0), mk(1, 1, {1})};
  d0.f = {Mat(0, 1), Mat(1, 1)};
  return mk_complex(A, {0, 1}, {1, 0}, std::move(d1), std::move(d0));
}

std::string label_of(const Algebra& A, const Complex2& C) {
  return classify_middle(A, C).zr_label;
}

// Index of the class of C in the basis of t; fails the test when absent.
int root_of(const LieTable& t, const Algebra& A, const Complex2& C) {
  int i = t.index_of(label_of(A, C));
  REQUIRE(i >= 0);
  return i;
}

std::vector<std::pair<int, int64_t>> entry(int k, int64_t c) { return {{k, c}}; }

// Every coefficient must respect the grading: a root target splits the sum
// of the argument classes, a Cartan target needs the sum to vanish, and a
// Cartan argument scales the other argument in place.
void check_grading(const LieTable& t) {
  auto kc = [&](int b) -> std::vector<int> {
    if (b < t.num_roots) return t.root_kclass[b];
    return std::vector<int>(t.num_cartan, 0);
  };
  for (const auto& [ij, es] : t.brackets) {
    auto [i, j] = ij;
    bool cartan_arg = i >= t.num_roots || j >= t.num_roots;
    std::vector<int> sum = kc(i);
    for (int v = 0; v < t.num_cartan; ++v) sum[v] += kc(j)[v];
    for (const auto& [tgt, c] : es) {
      CHECK(c != 0);
      if (cartan_arg) {
        CHECK(tgt == std::min(i, j));
      } else if (tgt < t.num_roots) {
        CHECK(t.root_kclass[tgt] == sum);
      } else {
        CHECK(sum == std::vector<int>(t.num_cartan, 0));
      }
    }
  }
}

}  // namespace

TEST_SUITE("lie") {

TEST_CASE("classes in the grothendieck group") {
  Algebra A = Algebra::parse(kA2p5);
  Complex2 cs1 = a2_top_simple(A);
  CHECK(kclass(cs1) == std::vector<int>{1, 0});
  CHECK(kclass(shift(A, cs1)) == std::vector<int>{-1, 0});
  CHECK(kclass(stalks(A, {0, 0}, {1, 0})) == std::vector<int>{1, 1});
  CHECK(kclass(stalks(A, {0, 0}, {0, 1})) == std::vector<int>{0, 1});
  CHECK(kclass(contractible_on(A, 0, false)) == std::vector<int>{0, 0});
}

TEST_CASE("symmetric form on unit classes") {
  Algebra A = Algebra::parse(kA2p5);
  Complex2 cs1 = a2_top_simple(A);
  Complex2 cp2 = stalks(A, {0, 0}, {0, 1});
  CHECK(sym_form_pair(A, cs1, cp2) == -1);
  CHECK(sym_form_pair(A, cs1, cs1) == 2);

  Catalog cat = build_catalog(A, {1, 1}, {1, 1});
  SymForm f = build_sym_form(A, cat);
  CHECK(f.gram == std::vector<std::vector<long>>{{2, -1}, {-1, 2}});
  CHECK(f.pair({1, 0}, {0, 1}) == -1);
  CHECK(f.pair({1, 1}, {1, 1}) == 2);  // bilinearity: 2-1-1+2

  Algebra A1 = Algebra::parse(kA1p5);
  Complex2 cs = stalks(A1, {0}, {1});
  CHECK(sym_form_pair(A1, cs, cs) == 2);

  // No window representative hits a unit class here; the Euler form fills in.
  Algebra K = Algebra::parse(kKroneckerP3);
  SymForm fk = build_sym_form(K, build_catalog(K, {1, 1}, {1, 1}));
  CHECK(fk.gram == std::vector<std::vector<long>>{{2, -2}, {-2, 2}});
}

TEST_CASE("one-vertex table is sl2") {
  Algebra A = Algebra::parse(kA1p7);
  for (LieSide side : {LieSide::exact, LieSide::triangulated}) {
    LieTable t = build_lie_table(A, {1}, {1}, side);
    CHECK(t.modulus == 6);
    CHECK(t.num_roots == 2);
    CHECK(t.num_cartan == 1);
    CHECK(t.truncated.empty());

    int up = root_of(t, A, stalks(A, {1}, {0}));
    int dn = root_of(t, A, stalks(A, {0}, {1}));
    int h1 = t.num_roots;
    CHECK(t.bracket(up, dn) == entry(h1, 1));
    CHECK(t.bracket(dn, up) == entry(h1, 5));
    CHECK(t.bracket(h1, dn) == entry(dn, 2));
    CHECK(t.bracket(h1, up) == entry(up, 4));
    CHECK(t.bracket(up, up).empty());
    check_grading(t);

    JacobiReport jr = jacobi_check(t);
    CHECK(jr.pass);
    CHECK(jr.checked == 1);
    CHECK(jr.skipped == 0);

    ChevalleyReport cr = chevalley_compare(t, "A1");
    CHECK(cr.pass);
    CHECK(cr.dictionary.size() == 3);
  }

  LieTable ex = build_lie_table(A, {1}, {1}, LieSide::exact);
  LieTable tr = build_lie_table(A, {1}, {1}, LieSide::triangulated);
  CompareReport cmp = compare_tables(ex, tr);
  CHECK(cmp.pass);
  CHECK(cmp.checked == 3);
}

TEST_CASE("two-vertex table is sl3") {
  Algebra A = Algebra::parse(kA2p5);
  Complex2 cs1 = a2_top_simple(A);
  Complex2 cp1 = stalks(A, {0, 0}, {1, 0});
  Complex2 cp2 = stalks(A, {0, 0}, {0, 1});

  LieTable ex = build_lie_table(A, {1, 1}, {1, 1}, LieSide::exact);
  LieTable tr = build_lie_table(A, {1, 1}, {1, 1}, LieSide::triangulated);
  for (const LieTable& t : {ex, tr}) {
    CHECK(t.modulus == 4);
    CHECK(t.num_roots == 6);
    CHECK(t.num_cartan == 2);
    CHECK(t.truncated.empty());

    int s1 = root_of(t, A, cs1);
    int p1 = root_of(t, A, cp1);
    int p2 = root_of(t, A, cp2);
    int s1s = root_of(t, A, shift(A, cs1));
    int h1 = t.num_roots, h2 = t.num_roots + 1;

    CHECK(t.bracket(s1, p2) == entry(p1, 1));
    CHECK(t.bracket(p2, s1) == entry(p1, 3));
    CHECK(t.bracket(s1, p1).empty());
    CHECK(t.bracket(s1, s1s) == entry(h1, 3));
    CHECK(t.bracket(p1, root_of(t, A, shift(A, cp1))) ==
          std::vector<std::pair<int, int64_t>>{{h1, 3}, {h2, 3}});
    CHECK(t.bracket(h1, s1) == entry(s1, 2));
    CHECK(t.bracket(h2, s1) == entry(s1, 3));
    CHECK(t.bracket(h1, p2) == entry(p2, 3));
    CHECK(t.bracket(h1, h2).empty());
    check_grading(t);

    JacobiReport jr = jacobi_check(t);
    CHECK(jr.pass);
    CHECK(jr.checked == 56);
    CHECK(jr.skipped == 0);

    ChevalleyReport cr = chevalley_compare(t, "A2");
    CHECK(cr.pass);
    CHECK(cr.dictionary.size() == 8);
  }

  CompareReport cmp = compare_tables(ex, tr);
  CHECK(cmp.pass);
  CHECK(cmp.checked == 28);
}

TEST_CASE("jacobi holds at another field size") {
  Algebra A = Algebra::parse(Algebra::source_with_field(kA2p5, 7));
  CHECK(A.field().p == 7);
  for (LieSide side : {LieSide::exact, LieSide::triangulated}) {
    LieTable t = build_lie_table(A, {1, 1}, {1, 1}, side);
    CHECK(t.modulus == 6);
    JacobiReport jr = jacobi_check(t);
    CHECK(jr.pass);
    CHECK(jr.skipped == 0);
    CHECK(chevalley_compare(t, "A2").pass);
  }
}

TEST_CASE("classical tables over several primes") {
  std::vector<uint32_t> primes{2, 3, 5};
  for (LieSide side : {LieSide::exact, LieSide::triangulated}) {
    LieTable t = classical_lie_table(kA1p5, {1}, {1}, side, primes);
    CHECK(t.modulus == 0);
    CHECK(t.q == 0);
    Algebra A = Algebra::parse(Algebra::source_with_field(kA1p5, 2));
    int up = root_of(t, A, stalks(A, {1}, {0}));
    int dn = root_of(t, A, stalks(A, {0}, {1}));
    int h1 = t.num_roots;
    CHECK(t.bracket(up, dn) == entry(h1, 1));
    CHECK(t.bracket(h1, up) == entry(up, -2));
    CHECK(t.bracket(h1, dn) == entry(dn, 2));
    CHECK(jacobi_check(t).pass);
    CHECK(chevalley_compare(t, "A1").pass);
  }

  LieTable ex = classical_lie_table(kA2p5, {1, 1}, {1, 1}, LieSide::exact, primes);
  LieTable tr =
      classical_lie_table(kA2p5, {1, 1}, {1, 1}, LieSide::triangulated, primes);
  CHECK(compare_tables(ex, tr).pass);
  CHECK(jacobi_check(ex).pass);
  CHECK(chevalley_compare(ex, "A2").pass);
  CHECK(ex.bracket(0, 1) == tr.bracket(0, 1));
  CHECK_THROWS_AS(
      classical_lie_table(kA1p5, {1}, {1}, LieSide::exact, {2, 3}),
      UsageError);
}

TEST_CASE("relation algebra window agrees on both sides") {
  Algebra A = Algebra::parse(kA3RelP3);
  std::vector<int> cap1{0, 1, 1}, cap0{1, 1, 0};
  LieTable ex = build_lie_table(A, cap1, cap0, LieSide::exact);
  LieTable tr = build_lie_table(A, cap1, cap0, LieSide::triangulated);
  CHECK(ex.num_roots == 6);
  CHECK(ex.truncated.empty());
  CHECK(compare_tables(ex, tr).pass);

  // P3 -> P2 along b: the complex presenting the middle simple.
  RepMap d1, d0;
  d1.f = {Mat(0, 0), Mat(1, 0), mk(1, 1, {1})};
  d0.f = {Mat(0, 0), Mat(0, 1), Mat(1, 1)};
  Complex2 cs2 = mk_complex(A, {0, 0, 1}, {0, 1, 0}, std::move(d1), std::move(d0));

  RepMap e1, e0;
  e1.f = {Mat(1, 0), mk(1, 1, {1}), Mat(0, 1)};
  e0.f = {Mat(0, 1), Mat(1, 1), Mat(1, 0)};
  Complex2 cs1 = mk_complex(A, {0, 1, 0}, {1, 0, 0}, std::move(e1), std::move(e0));

  for (const LieTable& t : {ex, tr}) {
    int s1 = root_of(t, A, cs1);
    int s2 = root_of(t, A, cs2);
    int p1 = root_of(t, A, stalks(A, {0, 0, 0}, {1, 0, 0}));
    int p2s = root_of(t, A, stalks(A, {0, 1, 0}, {0, 0, 0}));
    // The only nonsplit middles of this pair are decomposable; their nets
    // vanish mod q-1 and the bracket is empty.
    CHECK(t.bracket(s1, s2).empty());
    CHECK(t.bracket(p2s, p1) == entry(s1, 1));
    check_grading(t);
  }
}

TEST_CASE("narrow window flags truncated brackets") {
  Algebra A = Algebra::parse(kKroneckerP3);
  LieTable t = build_lie_table(A, {1, 1}, {1, 1}, LieSide::exact);
  CHECK(t.num_roots == 12);  // stalk pair, pencil line, and their shifts
  // Pairing a pencil class or its shift against the length-one stalk of
  // either orientation yields a rank-two middle over one projective, which
  // leaves the window: four families of four pencil classes each.
  CHECK(t.truncated.size() == 16);
  JacobiReport jr = jacobi_check(t);
  CHECK(jr.skipped > 0);
  CHECK(jr.checked + jr.skipped == 364);
  CHECK(jr.failures == 0);

  ChevalleyReport cr = chevalley_compare(t, "A2");
  CHECK_FALSE(cr.pass);
  CHECK(cr.reason.find("truncates") != std::string::npos);
}

TEST_CASE("chevalley comparison rejects wrong shapes") {
  Algebra A1 = Algebra::parse(kA1p7);
  LieTable t = build_lie_table(A1, {1}, {1}, LieSide::exact);
  ChevalleyReport cr = chevalley_compare(t, "A2");
  CHECK_FALSE(cr.pass);
  CHECK(cr.reason.find("Cartan") != std::string::npos);
  CHECK_THROWS_AS(chevalley_compare(t, "B2"), UsageError);
}

TEST_CASE("table text round trip") {
  Algebra A = Algebra::parse(kA2p5);
  LieTable t = build_lie_table(A, {1, 1}, {1, 1}, LieSide::exact);
  std::string text = serialize_lie_table(t);
  LieTable u = parse_lie_table(text);
  CHECK(u.modulus == t.modulus);
  CHECK(u.q == t.q);
  CHECK(u.side == t.side);
  CHECK(u.algebra_hash == t.algebra_hash);
  CHECK(u.cap1 == t.cap1);
  CHECK(u.cap0 == t.cap0);
  CHECK(u.basis == t.basis);
  CHECK(u.root_kclass == t.root_kclass);
  CHECK(u.brackets == t.brackets);
  CHECK(u.truncated == t.truncated);
  CHECK(serialize_lie_table(u) == text);

  CHECK_THROWS_AS(parse_lie_table("modulus 4\nbasis a b\n"), ParseError);
  CHECK_THROWS_AS(parse_lie_table("# hall2p-lie side=exact q=5 roots=1 "
                                  "cartan=1 cap1=1 cap0=1 algebra=x\n"
                                  "modulus 4\nbasis a h1\nkclasses 1\n"
                                  "bracket 0 1 : nonsense\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_lie_table("# hall2p-lie side=exact q=5 roots=1 "
                                  "cartan=1 cap1=1 cap0=1 algebra=x\n"
                                  "modulus 4\nbasis a h1\nkclasses 1\n"
                                  "bracket 0 1 : 7*0\n"),
                  ParseError);
}

TEST_CASE("comparison rejects mismatched tables") {
  Algebra a5 = Algebra::parse(kA1p5);
  Algebra a7 = Algebra::parse(kA1p7);
  LieTable t5 = build_lie_table(a5, {1}, {1}, LieSide::exact);
  LieTable t7 = build_lie_table(a7, {1}, {1}, LieSide::triangulated);
  CHECK_THROWS_AS(compare_tables(t5, t7), UsageError);
}

}  // TEST_SUITE
