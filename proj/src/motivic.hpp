#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace hall2p {

// Exact point counts of one construction, taken over several ground primes.
// The construction itself is named field-independently, so the same count
// can be repeated over any prime where its data stays definable.
struct CountSeries {
  std::string context;            // what was counted
  std::vector<uint32_t> primes;   // strictly ascending
  std::vector<long long> values;  // one count per prime, each >= 0
};

// Registered counters.  Complexes are passed in serialized form and parsed
// over every requested prime (entries that do not reduce consistently are a
// UsageError); projectives are per-vertex multiplicity lists, comma-joined.
//   hom_a   m n      |Hom_A(P(m), P(n))|
//   hom_c2  X Y      |Hom_{C2}(X, Y)|
//   hom_k2  X Y      |Hom_{K2}(X, Y)|
//   ext1    X Y      |Ext^1_{C2}(X, Y)|
//   ext1_z  X Y Z    extension classes in Ext^1_{C2}(X, Y) with middle Z
//   aut_c2  X        |Aut_{C2}(X)|
//   aut_k2  X        |Aut_{K2}(X)|
//   stratum m n      radical differential pairs on (P(m), P(n))
CountSeries count_series(const std::string& algebra_text,
                         const std::string& counter,
                         const std::vector<std::string>& args,
                         const std::vector<uint32_t>& primes,
                         uint64_t max_enum = kDefaultMaxEnum);

// Integer polynomial in q fitted through a count series.  The fit runs
// through every prime except the largest, which is held out to validate it.
// A fit with fractional coefficients, a degree above the bound, or a missed
// held-out value is recorded as unverified instead of being discarded.
struct QPolynomial {
  std::vector<long long> coeffs;  // coeffs[k] multiplies q^k, trimmed
  int degree_bound = 0;
  uint32_t holdout_prime = 0;
  bool verified = false;
  std::string note;  // empty exactly when verified

  long long eval(long long q) const;
  std::string str() const;
};

// Needs at least degree_bound + 2 primes (one spare for the holdout).
QPolynomial interpolate(const CountSeries& s, int degree_bound);

// Integer polynomial in t.  Even powers arrive through q = t^2, odd ones
// through explicit (-t) twists.  `poisoned` marks values descended from an
// unverified fit; arithmetic propagates the flag and the classical limit
// refuses to evaluate it.
struct TPolynomial {
  std::vector<long long> coeffs;  // coeffs[k] multiplies t^k, trimmed
  bool poisoned = false;

  bool is_zero() const;
  long long eval(long long t) const;
  std::string str() const;
};

TPolynomial to_t(const QPolynomial& p);
TPolynomial tp_const(long long c);
TPolynomial tp_add(const TPolynomial& a, const TPolynomial& b);
TPolynomial tp_sub(const TPolynomial& a, const TPolynomial& b);
TPolynomial tp_mul(const TPolynomial& a, const TPolynomial& b);
TPolynomial tp_times_minus_t(const TPolynomial& a, long k);  // k >= 0
bool tp_equal(const TPolynomial& a, const TPolynomial& b);

// Quotient in Z[t] when the division is exact; nullopt on a nonzero
// remainder or a fractional coefficient along the way.
std::optional<TPolynomial> divide_exact(const TPolynomial& num,
                                        const TPolynomial& den);

// Value at t = -1 (q = 1).  UsageError on poisoned input.
long long classical_limit(const TPolynomial& p);

// Exponent twisting the product of classes with the given degreewise
// projective multiplicities:
//   dim Hom_A(P(a1), P(b1)) + dim Hom_A(P(a0), P(b0)).
long twist_exponent(const Algebra& A, const std::vector<int>& a1,
                    const std::vector<int>& a0, const std::vector<int>& b1,
                    const std::vector<int>& b0);

// Commutation law of the unit class alpha = [P] - [Q] against an
// indecomposable radical complex X, rebuilt from interpolated counts: both
// twisted products with the contractible complex on each of P, Q land on one
// class and differ by (-t) raised to the symmetrized pairing of the side
// with [X^0] - [X^1].  When both P and Q are nonzero the product of their
// contractible classes is also recomposed from counts, and the reported
// exponent is cross-checked against the symmetrized Euler form and realized
// at t = -1 through the geometric-sum quotient.
struct BCommutationReport {
  bool pass = false;
  long exponent = 0;  // (alpha, [X^0] - [X^1])
  std::vector<std::string> lines;
};

BCommutationReport b_commutation_check(const std::string& algebra_text,
                                       const std::vector<int>& alpha,
                                       const std::string& x_text,
                                       const std::vector<uint32_t>& primes,
                                       uint64_t max_enum = kDefaultMaxEnum);

}  // namespace hall2p
