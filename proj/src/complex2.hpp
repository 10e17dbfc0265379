#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace hall2p {

// Two-periodic complex of projectives X = (X^1, X^0, d^1, d^0):
// d1: X^1 -> X^0 and d0: X^0 -> X^1 are module maps with both composites
// zero.  Components carry the fixed slot layout of ProjSum, so a complex is
// determined by the two multiplicity vectors and the two differentials.
struct Complex2 {
  ProjSum c1, c0;
  RepMap d1, d0;

  const std::vector<int>& e1() const { return c1.mult; }
  const std::vector<int>& e0() const { return c0.mult; }
  bool is_zero() const;
};

// Degree-shifting pair of module maps; a chain map X -> Y when
// f0 d1_X = d1_Y f1 and f1 d0_X = d0_Y f0.
struct ChainMap {
  RepMap f1, f0;
};

Complex2 mk_complex(const Algebra& A, const std::vector<int>& e1,
                    const std::vector<int>& e0, RepMap d1, RepMap d0);
Complex2 zero_complex(const Algebra& A);
// K_P at a vertex: (P, P, 1, 0); the starred form is (P, P, 0, 1).
Complex2 contractible_on(const Algebra& A, int vertex, bool starred);
// Ordered sum of K_{P_i}^{plus_i} then (K_{P_i}*)^{minus_i}.
Complex2 contractible_shape(const Algebra& A, const std::vector<int>& plus,
                            const std::vector<int>& minus);

Complex2 shift(const Algebra& A, const Complex2& X);
bool complexes_equal(const Complex2& X, const Complex2& Y);

// The differential entries in serialization order (d1 blocks then d0 blocks,
// vertex-ascending, row-major); used for canonical representatives.
std::vector<uint8_t> entry_key(const Complex2& X);

std::string serialize_complex(const Complex2& X);
Complex2 parse_complex(const Algebra& A, const std::string& text);

// ---- hom spaces ----

// Structural basis of Hom_A(P(src) -> P(dst)): one element per (source slot,
// target slot, path) with slots ordered (type asc, copy asc) and paths in
// (length, lex) order; source slot is the most significant index.  The
// radical variant keeps only non-identity paths and distinct-type pairs.
std::vector<RepMap> module_hom_basis(const Algebra& A, const ProjSum& src,
                                     const ProjSum& dst, bool radical_only);
// Coordinates of a module map P(src)->P(dst) in the structural basis (same
// order and filter as module_hom_basis).
Vec module_hom_coords(const Algebra& A, const ProjSum& src, const ProjSum& dst,
                      const RepMap& f, bool radical_only);

bool is_chain_map(const Algebra& A, const Complex2& X, const Complex2& Y,
                  const ChainMap& f);
bool is_chain_iso(const Algebra& A, const Complex2& X, const Complex2& Y,
                  const ChainMap& f);
ChainMap chain_identity(const Complex2& X);
ChainMap chain_compose(const PrimeField& F, const ChainMap& g,
                       const ChainMap& f);
ChainMap chain_sub(const PrimeField& F, const ChainMap& f, const ChainMap& g);
bool chain_equal(const ChainMap& f, const ChainMap& g);
// Degreewise matrix inverse; nullopt when any component is singular.  The
// inverse of a chain isomorphism is again a chain map.
std::optional<ChainMap> chain_inverse(const PrimeField& F, const ChainMap& f);

std::vector<ChainMap> chain_hom_basis(const Algebra& A, const Complex2& X,
                                      const Complex2& Y);
// Null-homotopic chain maps d_Y s + s d_X; returned as an independent basis.
std::vector<ChainMap> homotopy_space(const Algebra& A, const Complex2& X,
                                     const Complex2& Y);
// Chain maps spanning a complement of the null-homotopic subspace inside all
// chain maps: every homotopy class has exactly one representative in the
// span of the returned maps.
std::vector<ChainMap> k2_hom(const Algebra& A, const Complex2& X,
                             const Complex2& Y);
int hom_dim_c2(const Algebra& A, const Complex2& X, const Complex2& Y);
int htp_dim(const Algebra& A, const Complex2& X, const Complex2& Y);
int hom_dim_k2(const Algebra& A, const Complex2& X, const Complex2& Y);
bool is_null_homotopic(const Algebra& A, const Complex2& X, const Complex2& Y,
                       const ChainMap& f);

// ---- direct sums and cones ----

struct SumLayout {
  Complex2 sum;
  ChainMap injX, injY;  // X -> sum, Y -> sum
  ChainMap prjX, prjY;  // sum -> X, sum -> Y
};
SumLayout direct_sum_complex(const Algebra& A, const Complex2& X,
                             const Complex2& Y);

// Middle term of the extension classified by h in Hom_{K2}(X, Y*): given a
// chain-map representative h: X -> shift(Y), builds Z with
// d1_Z = [[d1_X, 0], [-h1, d1_Y]], d0_Z = [[d0_X, 0], [-h0, d0_Y]] and the
// attached triangle maps iota: Y -> Z, pi: Z -> X.
struct ConeResult {
  Complex2 Z;
  ChainMap iota, pi;
};
ConeResult cone_of(const Algebra& A, const Complex2& X, const Complex2& Y,
                   const ChainMap& h);

// ---- splitting ----

// If C is a direct summand of X, returns the complement in standard
// coordinates plus a chain isomorphism X -> C (+) rest; nullopt otherwise.
// C must be indecomposable for the unit-product criterion to be sound.
struct SplitOff {
  Complex2 rest;
  ChainMap witness;
};
std::optional<SplitOff> split_off(const Algebra& A, const Complex2& X,
                                  const Complex2& C);

// Contractible/radical splitting X ~ X_r (+) shape (unique by the structure
// theory); the witness maps X onto the ordered sum radical-then-shape.
struct RadicalSplit {
  Complex2 radical;
  std::vector<int> plus_mult, minus_mult;
  ChainMap witness;
};
RadicalSplit decompose(const Algebra& A, const Complex2& X);
bool is_radical_complex(const Algebra& A, const Complex2& X);

// ---- isomorphism and automorphisms ----

// Invariant pruning first, then a capped sweep over Hom_{C2}(X,Y) looking
// for a degreewise invertible chain map.
std::optional<ChainMap> is_isomorphic(const Algebra& A, const Complex2& X,
                                      const Complex2& Y,
                                      uint64_t max_enum = kDefaultMaxEnum);
bool is_homotopy_equivalent(const Algebra& A, const Complex2& X,
                            const Complex2& Y,
                            uint64_t max_enum = kDefaultMaxEnum);

struct AutOrders {
  uint64_t aut_c2 = 0;  // invertible endomorphisms of X itself
  uint64_t aut_k2 = 0;  // of the homotopy class (computed on the radical part)
  int htp_self = 0;     // dim Htp(X, X)
};
AutOrders aut_orders(const Algebra& A, const Complex2& X,
                     uint64_t max_enum = kDefaultMaxEnum);

// True when every endomorphism of the radical part is nilpotent or
// invertible; contractibles and zero count as decomposable by convention.
// Falls back to Fitting splits along an End basis above the cap.
bool is_indecomposable(const Algebra& A, const Complex2& X,
                       uint64_t max_enum = kDefaultMaxEnum);

// ---- enumeration ----

struct ScanClass {
  Complex2 rep;  // entry-lexicographically least point of the orbit
  uint64_t orbit_size = 0;
  u128 aut_c2 = 0;  // stabilizer order |G| / orbit
};

// Isomorphism classes of complexes with the given multiplicity vectors,
// scanning differentials over the radical (resp. full) hom space and merging
// by the base-change group orbit.
std::vector<ScanClass> enumerate_radical(const Algebra& A,
                                         const std::vector<int>& e1,
                                         const std::vector<int>& e0,
                                         uint64_t max_enum = kDefaultMaxEnum);
std::vector<ScanClass> enumerate_all(const Algebra& A,
                                     const std::vector<int>& e1,
                                     const std::vector<int>& e0,
                                     uint64_t max_enum = kDefaultMaxEnum);

// Canonical class data of one radical complex, found by walking its
// base-change orbit from the given point.  Costs O(orbit * generators), so it
// stays cheap even when the full stratum is too large to scan.
ScanClass canonicalize_radical(const Algebra& A, const Complex2& Xr,
                               uint64_t max_enum = kDefaultMaxEnum);

// |Aut_A(P(mult))| = p^{dim rad End} * prod_i |GL_{m_i}(F_p)|.
u128 proj_sum_aut_order(const Algebra& A, const std::vector<int>& mult);

}  // namespace hall2p
