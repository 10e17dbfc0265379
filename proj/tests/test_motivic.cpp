#include <doctest.h>

#include <string>
#include <vector>

#include "../src/lie.hpp"
#include "../src/motivic.hpp"

using namespace hall2p;

namespace {

const char* kA1 = "field 5\nvertex 1\n";
const char* kA2 = "field 5\nvertex 1 2\narrow a 1 2\n";

Mat mk(int rows, int cols, std::vector<int> vals) {
  Mat m(rows, cols);
  for (size_t k = 0; k < vals.size(); ++k) m.a[k] = uint8_t(vals[k]);
  return m;
}

Complex2 stalks(const Algebra& A, std::vector<int> e1, std::vector<int> e0) {
  RepMap d1, d0;
  for (int v = 0; v < A.num_vertices(); ++v) {
    ProjSum p1 = A.proj_sum(e1), p0 = A.proj_sum(e0);
    d1.f.push_back(Mat(p0.rep.dims[v], p1.rep.dims[v]));
    d0.f.push_back(Mat(p1.rep.dims[v], p0.rep.dims[v]));
  }
  return mk_complex(A, e1, e0, d1, d0);
}

// P2 -> P1 covering the top of P1; the two-vertex analogue of a simple.
Complex2 a2_top_simple(const Algebra& A) {
  RepMap d1, d0;
  d1.f = {Mat(1, 0), mk(1, 1, {1})};
  d0.f = {Mat(0, 1), Mat(1, 1)};
  return mk_complex(A, {0, 1}, {1, 0}, d1, d0);
}

std::vector<uint32_t> five_primes() { return {2, 3, 5, 7, 11}; }

}  // namespace

TEST_SUITE("motivic") {
  TEST_CASE("counts over several primes") {
    std::vector<uint32_t> ps = {2, 3, 5};

    CountSeries hom = count_series(kA2, "hom_a", {"1,0", "1,0"}, ps);
    CHECK(hom.values == std::vector<long long>{2, 3, 5});
    CHECK(hom.context == "hom_a(1,0; 1,0)");

    Algebra A1 = Algebra::parse(kA1);
    std::string cs = serialize_complex(stalks(A1, {1}, {0}));
    CHECK(count_series(kA1, "aut_c2", {cs}, ps).values ==
          std::vector<long long>{1, 2, 4});

    std::string cs_star = serialize_complex(stalks(A1, {0}, {1}));
    CHECK(count_series(kA1, "ext1", {cs, cs_star}, ps).values ==
          std::vector<long long>{2, 3, 5});
    CHECK(count_series(kA1, "hom_k2", {cs, cs}, ps).values ==
          std::vector<long long>{2, 3, 5});

    CHECK(count_series(kA2, "stratum", {"0,1", "1,0"}, ps).values ==
          std::vector<long long>{2, 3, 5});
    CHECK(count_series(kA1, "stratum", {"1", "1"}, ps).values ==
          std::vector<long long>{1, 1, 1});

    CHECK_THROWS_AS(count_series(kA1, "volume", {}, ps), UsageError);
    CHECK_THROWS_AS(count_series(kA1, "hom_a", {"1"}, ps), UsageError);
    CHECK_THROWS_AS(count_series(kA1, "hom_a", {"1", "1"}, {3, 2}),
                    UsageError);
    // An entry only defined over larger fields cannot be counted at p = 2.
    CHECK_THROWS_AS(
        count_series(kA1, "aut_c2", {"e1=[1];e0=[1];d1=[2];d0=[0]"}, ps),
        UsageError);
  }

  TEST_CASE("interpolation with a held-out prime") {
    std::vector<uint32_t> ps = {2, 3, 5};

    QPolynomial lin = interpolate(count_series(kA2, "hom_a", {"1,0", "1,0"}, ps), 1);
    CHECK(lin.verified);
    CHECK(lin.coeffs == std::vector<long long>{0, 1});
    CHECK(lin.holdout_prime == 5);
    CHECK(lin.str() == "q");

    Algebra A1 = Algebra::parse(kA1);
    std::string cs = serialize_complex(stalks(A1, {1}, {0}));
    QPolynomial aut = interpolate(count_series(kA1, "aut_c2", {cs}, ps), 1);
    CHECK(aut.verified);
    CHECK(aut.coeffs == std::vector<long long>{-1, 1});
    CHECK(aut.str() == "q - 1");

    QPolynomial one = interpolate(count_series(kA1, "stratum", {"1", "1"}, ps), 1);
    CHECK(one.verified);
    CHECK(one.coeffs == std::vector<long long>{1});

    CHECK_THROWS_AS(interpolate(CountSeries{"", {2, 3}, {1, 2}}, 1),
                    UsageError);
    CHECK_THROWS_AS(interpolate(CountSeries{"", {2, 3, 5}, {1, 2}}, 1),
                    UsageError);
  }

  TEST_CASE("failing fits are kept and flagged") {
    QPolynomial miss = interpolate(CountSeries{"", {2, 3, 5}, {1, 2, 5}}, 1);
    CHECK_FALSE(miss.verified);
    CHECK(miss.note == "held-out prime disagrees with the fit");
    CHECK(miss.coeffs == std::vector<long long>{-1, 1});

    QPolynomial frac = interpolate(CountSeries{"", {2, 5, 7}, {1, 2, 7}}, 1);
    CHECK_FALSE(frac.verified);
    CHECK(frac.note == "fit has fractional coefficients");
    CHECK(frac.coeffs.empty());

    QPolynomial deg =
        interpolate(CountSeries{"", {2, 3, 5, 7}, {4, 9, 25, 49}}, 1);
    CHECK_FALSE(deg.verified);
    CHECK(deg.note == "fit degree exceeds the bound");
    CHECK(deg.coeffs == std::vector<long long>{0, 0, 1});

    TPolynomial bad = to_t(miss);
    CHECK(bad.poisoned);
    CHECK(tp_mul(bad, tp_const(2)).poisoned);
    CHECK_THROWS_AS(classical_limit(bad), UsageError);
  }

  TEST_CASE("substitution into t") {
    QPolynomial q = interpolate(CountSeries{"", {2, 3, 5}, {2, 3, 5}}, 1);
    CHECK(to_t(q).coeffs == std::vector<long long>{0, 0, 1});
    CHECK(to_t(q).str() == "t^2");

    QPolynomial qm1 = interpolate(CountSeries{"", {2, 3, 5}, {1, 2, 4}}, 1);
    CHECK(to_t(qm1).coeffs == std::vector<long long>{-1, 0, 1});
    CHECK_FALSE(to_t(qm1).poisoned);

    QPolynomial one = interpolate(CountSeries{"", {2, 3, 5}, {1, 1, 1}}, 1);
    CHECK(to_t(one).coeffs == std::vector<long long>{1});
  }

  TEST_CASE("automorphism polynomials factor as torus times radical") {
    // A single contractible block has automorphism count q - 1.
    Algebra A = Algebra::parse(kA2);
    std::string kp1 = serialize_complex(contractible_shape(A, {1, 0}, {0, 0}));
    TPolynomial single =
        to_t(interpolate(count_series(kA2, "aut_c2", {kp1}, {2, 3, 5}), 1));
    CHECK(single.coeffs == std::vector<long long>{-1, 0, 1});

    // Two distinct blocks: (q-1)^2 q, whose t-form is (t^2-1)^2 t^2.
    std::string kpq = serialize_complex(contractible_shape(A, {1, 1}, {0, 0}));
    QPolynomial both =
        interpolate(count_series(kA2, "aut_c2", {kpq}, five_primes()), 3);
    CHECK(both.verified);
    CHECK(both.coeffs == std::vector<long long>{0, 1, -2, 1});
    TPolynomial expect = tp_mul(tp_mul(single, single), to_t(interpolate(
        CountSeries{"", {2, 3, 5}, {2, 3, 5}}, 1)));
    CHECK(tp_equal(to_t(both), expect));

    // Verified even polynomials take their q = 1 value at t = -1.
    CHECK(classical_limit(to_t(both)) == both.eval(1));
    CHECK(classical_limit(single) == 0);
  }

  TEST_CASE("twist exponents from projective homs") {
    Algebra A1 = Algebra::parse(kA1);
    CHECK(twist_exponent(A1, {1}, {1}, {1}, {1}) == 2);
    CHECK(twist_exponent(A1, {0}, {0}, {1}, {1}) == 0);

    Algebra A2 = Algebra::parse(kA2);
    Complex2 top = a2_top_simple(A2);
    CHECK(twist_exponent(A2, top.e1(), top.e0(), top.e1(), top.e0()) == 2);
    CHECK_THROWS_AS(twist_exponent(A2, {1}, {1}, {1}, {1}), UsageError);
  }

  TEST_CASE("exact division and the classical limit") {
    TPolynomial t2m1{{-1, 0, 1}, false};
    TPolynomial neg_t_m1{{-1, -1}, false};
    auto h = divide_exact(t2m1, neg_t_m1);
    REQUIRE(h);
    CHECK(h->coeffs == std::vector<long long>{1, -1});
    CHECK(classical_limit(*h) == 2);

    CHECK_FALSE(divide_exact(TPolynomial{{0, 0, 1}, false},
                             TPolynomial{{1, 1}, false}));
    CHECK_THROWS_AS(divide_exact(t2m1, TPolynomial{}), UsageError);

    CHECK(classical_limit(t2m1) == 0);
    CHECK(classical_limit(TPolynomial{{0, 0, 1}, false}) == 1);

    // Geometric sums hand the exponent back at t = -1.
    for (long e : {1L, 2L, 3L, 5L}) {
      auto g = divide_exact(
          tp_sub(tp_times_minus_t(tp_const(1), e), tp_const(1)), neg_t_m1);
      REQUIRE(g);
      CHECK(classical_limit(*g) == e);
    }
  }

  TEST_CASE("one-vertex commutation") {
    Algebra A = Algebra::parse(kA1);
    std::string cs = serialize_complex(stalks(A, {1}, {0}));
    std::string cs_star = serialize_complex(stalks(A, {0}, {1}));

    BCommutationReport up = b_commutation_check(kA1, {1}, cs, five_primes());
    CHECK(up.pass);
    CHECK(up.exponent == -2);
    CHECK_FALSE(up.lines.empty());

    BCommutationReport down =
        b_commutation_check(kA1, {-1}, cs, five_primes());
    CHECK(down.pass);
    CHECK(down.exponent == 2);

    BCommutationReport star =
        b_commutation_check(kA1, {1}, cs_star, five_primes());
    CHECK(star.pass);
    CHECK(star.exponent == 2);

    BCommutationReport none = b_commutation_check(kA1, {0}, cs, five_primes());
    CHECK(none.pass);
    CHECK(none.exponent == 0);

    std::string kp =
        serialize_complex(contractible_shape(A, {1}, {0}));
    CHECK_THROWS_AS(b_commutation_check(kA1, {1}, kp, five_primes()),
                    UsageError);
    std::string pair = serialize_complex(stalks(A, {2}, {0}));
    CHECK_THROWS_AS(b_commutation_check(kA1, {1}, pair, five_primes()),
                    UsageError);
    CHECK_THROWS_AS(b_commutation_check(kA1, {1, 0}, cs, five_primes()),
                    UsageError);
    CHECK_THROWS_AS(b_commutation_check(kA1, {1}, cs, {2, 3}), UsageError);
  }

  TEST_CASE("two-vertex commutation matches the Cartan rows") {
    Algebra A = Algebra::parse(kA2);
    std::string top = serialize_complex(a2_top_simple(A));
    std::string p2stalk = serialize_complex(stalks(A, {0, 0}, {0, 1}));

    BCommutationReport r1 =
        b_commutation_check(kA2, {1, -1}, top, five_primes());
    CHECK(r1.pass);
    CHECK(r1.exponent == 2);
    bool composed = false;
    for (const std::string& line : r1.lines)
      composed = composed || line == "contractible blocks compose";
    CHECK(composed);

    BCommutationReport r2 =
        b_commutation_check(kA2, {1, -1}, p2stalk, five_primes());
    CHECK(r2.pass);
    CHECK(r2.exponent == -1);

    // The exponents are the classical Cartan coefficients on these classes.
    LieTable ct = classical_lie_table(kA2, {1, 1}, {1, 1}, LieSide::exact,
                                      {2, 3, 5});
    int i_top = ct.index_of(serialize_complex(a2_top_simple(A)));
    int i_p2 = ct.index_of(serialize_complex(stalks(A, {0, 0}, {0, 1})));
    int h1 = ct.num_roots;  // first Cartan slot
    auto row_top = ct.bracket(h1, i_top);
    auto row_p2 = ct.bracket(h1, i_p2);
    REQUIRE(row_top.size() == 1);
    REQUIRE(row_p2.size() == 1);
    CHECK(row_top[0].second == r1.exponent);
    CHECK(row_p2[0].second == r2.exponent);
  }

  TEST_CASE("split middles have classical weight zero") {
    Algebra A = Algebra::parse(kA2);
    Complex2 X = a2_top_simple(A);
    Complex2 Y = stalks(A, {0, 0}, {0, 1});
    std::string xs = serialize_complex(X);
    std::string ys = serialize_complex(Y);
    std::string zs = serialize_complex(direct_sum_complex(A, X, Y).sum);

    std::vector<uint32_t> ps = five_primes();
    int bound = int(ps.size()) - 2;
    auto tfit = [&](const char* counter, std::vector<std::string> args) {
      QPolynomial f = interpolate(count_series(kA2, counter, args, ps), bound);
      REQUIRE(f.verified);
      return to_t(f);
    };

    TPolynomial aut_x = tfit("aut_c2", {xs});
    TPolynomial aut_y = tfit("aut_c2", {ys});
    TPolynomial aut_z = tfit("aut_c2", {zs});
    TPolynomial n_f = tfit("ext1_z", {xs, ys, zs});
    TPolynomial n_r = tfit("ext1_z", {ys, xs, zs});
    CHECK(tp_equal(n_f, tp_const(1)));
    CHECK(tp_equal(n_r, tp_const(1)));

    // hom_{C2}(X, Y) is zero-dimensional, hom_{C2}(Y, X) is a line.
    TPolynomial hom_xy = tfit("hom_c2", {xs, ys});
    TPolynomial hom_yx = tfit("hom_c2", {ys, xs});
    CHECK(tp_equal(hom_xy, tp_const(1)));
    CHECK(tp_equal(hom_yx, TPolynomial{{0, 0, 1}, false}));

    auto c_f = divide_exact(tp_mul(n_f, aut_z),
                            tp_mul(tp_mul(aut_x, aut_y), hom_xy));
    auto c_r = divide_exact(tp_mul(n_r, aut_z),
                            tp_mul(tp_mul(aut_y, aut_x), hom_yx));
    REQUIRE(c_f);
    REQUIRE(c_r);
    CHECK(tp_equal(*c_f, TPolynomial{{0, 0, 1}, false}));
    CHECK(tp_equal(*c_r, tp_const(1)));

    TPolynomial net = tp_sub(*c_f, *c_r);
    CHECK(tp_equal(net, TPolynomial{{-1, 0, 1}, false}));
    CHECK(classical_limit(net) == 0);
  }

  TEST_CASE("interpolated constants meet the classical table") {
    Algebra A = Algebra::parse(kA2);
    Complex2 X = a2_top_simple(A);
    Complex2 Y = stalks(A, {0, 0}, {0, 1});

    // The middle of any nonzero extension of the pair: radical stalk plus a
    // contractible block.  Built over F_2 so that the negated entries of the
    // cone stay definable over every prime.
    Algebra A2 = Algebra::parse(Algebra::source_with_field(kA2, 2));
    ChainMap h;
    h.f1 = RepMap{{Mat(0, 0), mk(1, 1, {1})}};
    h.f0 = RepMap{{Mat(0, 1), Mat(0, 1)}};
    Complex2 Z = cone_of(A2, a2_top_simple(A2), stalks(A2, {0, 0}, {0, 1}), h).Z;
    std::string zs = serialize_complex(Z);
    std::string stalk1 = serialize_complex(stalks(A, {0, 0}, {1, 0}));

    std::vector<uint32_t> ps = five_primes();
    int bound = int(ps.size()) - 2;
    auto tfit = [&](const char* counter, std::vector<std::string> args) {
      QPolynomial f = interpolate(count_series(kA2, counter, args, ps), bound);
      REQUIRE(f.verified);
      return to_t(f);
    };

    std::string xs = serialize_complex(X);
    std::string ys = serialize_complex(Y);
    TPolynomial n_f = tfit("ext1_z", {xs, ys, zs});
    TPolynomial n_r = tfit("ext1_z", {ys, xs, zs});
    CHECK(tp_equal(n_f, TPolynomial{{-1, 0, 1}, false}));
    CHECK(n_r.is_zero());

    TPolynomial aut_zr = tfit("aut_c2", {stalk1});
    TPolynomial aut_x = tfit("aut_c2", {xs});
    TPolynomial aut_y = tfit("aut_c2", {ys});
    TPolynomial hom_xy = tfit("hom_c2", {xs, ys});
    auto c = divide_exact(tp_mul(n_f, aut_zr),
                          tp_mul(tp_mul(aut_x, aut_y), hom_xy));
    REQUIRE(c);
    CHECK(tp_equal(*c, tp_const(1)));

    LieTable ct = classical_lie_table(kA2, {1, 1}, {1, 1}, LieSide::exact,
                                      {2, 3, 5});
    auto cell = ct.bracket(ct.index_of(serialize_complex(X)),
                           ct.index_of(serialize_complex(Y)));
    REQUIRE(cell.size() == 1);
    CHECK(cell[0].first == ct.index_of(stalk1));
    CHECK(cell[0].second == classical_limit(*c));
  }
}
