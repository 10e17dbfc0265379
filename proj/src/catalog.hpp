#pragma once

#include <map>
#include <string>
#include <vector>

#include "complex2.hpp"

namespace hall2p {

// One isomorphism class of radical complexes.  For scanned strata the label
// is the serialization of the canonical (entry-lex least) representative; for
// composed strata it is the " + "-join of the part labels.
struct RadicalClass {
  std::string label;
  Complex2 rep;
  std::vector<int> e1, e0;  // multiplicity vectors of the stratum
  u128 orbit_size = 0;
  u128 aut_c2 = 0;
  u128 aut_k2 = 0;
  int htp_self = 0;         // dim of the null-homotopic self-map space
  std::vector<int> kclass;  // degree-0 minus degree-1 dimension vector
  bool indecomposable = false;
  bool composed = false;    // listed as a direct sum instead of scanned
  std::vector<int> parts;   // class ids of the summands when composed
};

struct Stratum {
  std::vector<int> e1, e0;
  bool scanned = false;
  std::vector<int> class_ids;
};

struct Catalog {
  std::vector<int> cap1, cap0;
  std::vector<RadicalClass> classes;
  std::vector<Stratum> strata;  // ascending total multiplicity, then lex
  std::vector<int> indec_ids;
  std::map<std::string, int> by_label;

  const RadicalClass* find(const std::string& label) const;
};

// All radical isomorphism classes with multiplicities bounded componentwise
// by the caps.  Strata whose differential space fits under max_enum are
// scanned; larger ones are listed as direct sums of the indecomposables found
// so far (unique by Krull-Schmidt), with automorphism orders from the
// matrix-ring formula over each part's residue field.  A composed stratum can
// only miss classes containing an indecomposable that lives in an unscanned
// stratum; the scanned/composed flag records which tier produced each list.
Catalog build_catalog(const Algebra& A, const std::vector<int>& cap1,
                      const std::vector<int>& cap0,
                      uint64_t max_enum = kDefaultMaxEnum);

// Degree s of the residue field F_{p^s} = End/rad of a point with local
// endomorphism ring, solved from |Aut| = p^{dim End - s} (p^s - 1).
int residue_field_degree(uint32_t p, int dim_end, u128 aut);

// |Aut(⊕_i C_i^{n_i})| for pairwise non-isomorphic C_i with local
// endomorphism rings: p^{dim rad End} * prod_i |GL_{n_i}(F_{p^{s_i}})|,
// where hom[i][j] = dim Hom(C_i, C_j) over F_p.
u128 ks_aut_order(uint32_t p, const std::vector<int>& n,
                  const std::vector<int>& s,
                  const std::vector<std::vector<int>>& hom);

// Iso-class of an arbitrary complex: canonical label of the radical part
// plus the contractible multiplicities split off from it.
struct MiddleClass {
  std::string zr_label;
  Complex2 zr_rep;
  std::vector<int> plus, minus;
  u128 aut_c2_zr = 0;
};

MiddleClass classify_middle(const Algebra& A, const Complex2& Z,
                            uint64_t max_enum = kDefaultMaxEnum);

// Text key naming a MiddleClass; equals zr_label when no contractibles.
std::string middle_key(const MiddleClass& mc);

}  // namespace hall2p
