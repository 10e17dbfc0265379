#pragma once

#include "catalog.hpp"

namespace hall2p {

// One isomorphism class of extension middles for a fixed pair (X, Y):
// ext_count tallies the extension classes in Ext^1(X, Y) whose middle term
// lies in this class, hom_count the homotopy classes h in Hom_{K2}(X, Y*)
// whose cone does.  The rotation Y -> Z -> X -> Y* matches the two sides
// class by class, so the tallies agree whenever either is nonzero, and they
// sum to |Hom_{K2}(X, Y*)| over all strata.
struct ExtStratum {
  MiddleClass middle;
  u128 ext_count = 0;
  u128 hom_count = 0;
};

std::vector<ExtStratum> ext1_stratified(const Algebra& A, const Complex2& X,
                                        const Complex2& Y,
                                        uint64_t max_enum = kDefaultMaxEnum);

// |{Z' <= Z : Z' ~ Y and Z/Z' ~ X}|, counted among subcomplexes of Z inside
// the category of two-periodic complexes of modules: graded subspaces closed
// under the arrow action and both differentials.
uint64_t hall_number_brute(const Algebra& A, const Complex2& X,
                           const Complex2& Y, const Complex2& Z,
                           uint64_t max_enum = kDefaultMaxEnum);

// The same count via
//   |Ext^1(X,Y)_Z| * |Aut Z| / (|Hom(X,Y)| * |Aut X| * |Aut Y|)
// in exact integer arithmetic; throws InternalError when the division does
// not come out exact.
u128 hall_number_rp(const Algebra& A, const Complex2& X, const Complex2& Y,
                    const Complex2& Z, uint64_t max_enum = kDefaultMaxEnum);

// Whether (f, g, h) is a distinguished triangle Y -f-> Z -g-> X -h-> Y*:
// some homotopy equivalence lambda: Z -> cone(h) must satisfy
// lambda f ~ iota and pi lambda ~ g against the triangle attached to h.
// The maps must be chain maps of the stated shapes (UsageError otherwise);
// any representatives of their homotopy classes give the same answer.
bool is_distinguished(const Algebra& A, const Complex2& X, const Complex2& Y,
                      const Complex2& Z, const ChainMap& f, const ChainMap& g,
                      const ChainMap& h, uint64_t max_enum = kDefaultMaxEnum);

// F^Z_{XY}: distinguished triples in
//   Hom_{K2}(Y,Z) x Hom_{K2}(Z,X) x Hom_{K2}(X,Y*)
// counted up to the action (a,b).(f,g,h) = (f b^{-1}, a g, b* h a^{-1}) of
// Aut_{K2}(X) x Aut_{K2}(Y).  Depends only on the homotopy classes of the
// three complexes; contractible summands are split off first.
u128 triangle_count_brute(const Algebra& A, const Complex2& X,
                          const Complex2& Y, const Complex2& Z,
                          uint64_t max_enum = kDefaultMaxEnum);

// F^Z_{XY} mod (q-1) via the coset form
//   |Hom_{K2}(X,Y*)_{Z}| * |Aut_{K2} Z| / (|Aut_{K2} X| * |Aut_{K2} Y|),
// where the subscript restricts to classes whose cone is homotopy equivalent
// to Z.  Requires X and Y indecomposable in K2 (UsageError otherwise); the
// quotient is taken in exact integers and a failed division is an
// InternalError, which does occur for middles that are zero in K2.
uint32_t triangle_count_residue(const Algebra& A, const Complex2& X,
                                const Complex2& Y, const Complex2& Z,
                                uint64_t max_enum = kDefaultMaxEnum);

// One line of a congruence sweep.  The middle key names a full isomorphism
// class (radical label plus contractible multiplicities); g is the
// subcomplex count on that middle, both brute-force and in the closed form,
// which must agree exactly; f is the triangle count of the middle's
// homotopy class reduced mod q-1.  Rows whose middle carries contractible
// padding sit outside the congruence theorem and are recorded without being
// enforced.
struct SweepTriple {
  std::string x_label, y_label, z_key;
  uint64_t g = 0;
  uint32_t f = 0;
  bool f_by_residue = false;
  bool padded = false;
  bool congruent = false;  // g = f mod (q-1)
};

struct SweepReport {
  uint32_t q = 0;
  uint32_t modulus = 0;  // q - 1
  std::vector<SweepTriple> triples;
  int hard_checked = 0;   // padding-free rows, congruence enforced
  int informational = 0;  // padded rows, recorded only
  std::vector<int> violations;  // triple indices failing a hard check
  bool pass = false;
};

// Runs X, Y over the indecomposable radical classes of the window and the
// middle over every (radical class, contractible shape) combination whose
// graded multiplicities match the pair.
SweepReport congruence_sweep(const Algebra& A, const std::vector<int>& cap1,
                             const std::vector<int>& cap0,
                             uint64_t max_enum = kDefaultMaxEnum);

}  // namespace hall2p
