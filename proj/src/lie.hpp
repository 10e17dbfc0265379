#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hall.hpp"

namespace hall2p {

// Class of X in the Grothendieck group of the module category, written in
// the simple basis: dimension vector of degree 0 minus that of degree 1.
std::vector<int> kclass(const Complex2& X);

// (d | d') evaluated on concrete representatives X, Y of the classes:
//   dim Hom(X,Y) - dim Hom(X,Y*) + dim Hom(Y,X) - dim Hom(Y,X*)
// with all four spaces taken in the homotopy category.  The value depends
// only on the classes of X and Y.
long sym_form_pair(const Algebra& A, const Complex2& X, const Complex2& Y);

// Gram matrix of the pairing on the unit classes.  An entry comes from
// window representatives when the catalog contains classes hitting both unit
// vectors, and from the symmetrized Euler form otherwise; where both sources
// apply they must agree (InternalError).  A unit class with neither source
// available is a UsageError.
struct SymForm {
  std::vector<std::vector<long>> gram;

  long pair(const std::vector<int>& d, const std::vector<int>& e) const;
};

SymForm build_sym_form(const Algebra& A, const Catalog& cat);

enum class LieSide { exact, triangulated };

// Structure constants of the bracket on the span of the root vectors u_C,
// one per indecomposable class C of the window, and the Cartan vectors
// h_1 .. h_n, one per vertex.  Coefficients are canonical residues mod
// (q - 1), or plain integers when modulus == 0 (classical table).  Only
// ordered pairs (i, j) with i < j are stored; the reverse bracket is the
// negation, [b, b] = 0, and absent pairs are zero.  A pair some of whose
// middles are indecomposable but fall outside the window is flagged as
// truncated and those coefficients are dropped.
struct LieTable {
  uint64_t modulus = 0;
  uint32_t q = 0;  // field size the constants were computed over; 0 classical
  std::string side;  // "exact" or "triangulated"
  std::string algebra_hash;
  std::vector<int> cap1, cap0;
  int num_roots = 0;
  int num_cartan = 0;
  std::vector<std::string> basis;             // root labels, then h1..hn
  std::vector<std::vector<int>> root_kclass;  // indexed like the roots
  std::map<std::pair<int, int>, std::vector<std::pair<int, int64_t>>> brackets;
  std::set<std::pair<int, int>> truncated;

  int size() const { return num_roots + num_cartan; }
  int index_of(const std::string& label) const;  // -1 when absent
  std::vector<std::pair<int, int64_t>> bracket(int i, int j) const;
  bool is_truncated(int i, int j) const;
};

LieTable build_lie_table(const Algebra& A, const std::vector<int>& cap1,
                         const std::vector<int>& cap0, LieSide side,
                         uint64_t max_enum = kDefaultMaxEnum);

// Classical table: builds the integer constants over each listed prime
// (at least three) and requires the window labels and every constant to
// agree across all of them; a field-dependent constant or a field-dependent
// window is an InternalError naming the offending cell.
LieTable classical_lie_table(const std::string& algebra_text,
                             const std::vector<int>& cap1,
                             const std::vector<int>& cap0, LieSide side,
                             const std::vector<uint32_t>& primes,
                             uint64_t max_enum = kDefaultMaxEnum);

std::string serialize_lie_table(const LieTable& t);
LieTable parse_lie_table(const std::string& text);

// Residuals of [[x,y],z] + [[y,z],x] + [[z,x],y] over all basis triples.
// Triples that would read a truncated pair are skipped and counted.
struct JacobiReport {
  u128 checked = 0;
  u128 skipped = 0;
  u128 failures = 0;
  std::vector<std::string> details;  // first few failing triples
  bool pass = false;
};

JacobiReport jacobi_check(const LieTable& t);

// Entrywise comparison of two tables built over the same algebra, window
// and modulus (UsageError otherwise; the basis label lists must agree
// position by position since both sides draw them from the same catalog).
struct CompareReport {
  u128 checked = 0;
  std::vector<std::string> mismatches;
  bool pass = false;
};

CompareReport compare_tables(const LieTable& exact_side,
                             const LieTable& triangulated_side);

// Signed dictionary between the table and the split simple Lie algebra of
// the given type ("A1" or "A2"), realized on traceless 2x2 or 3x3 integer
// matrices.  Root classes are matched to matrix units through their kclass
// coordinates, h_i maps to E_ii - E_{i+1,i+1}, and the signs of the root
// vectors are searched exhaustively; every stored bracket must then agree
// with the matrix bracket modulo the table's modulus.
struct ChevalleyReport {
  bool pass = false;
  std::string reason;                   // filled on failure
  std::vector<std::string> dictionary;  // "label -> -E12" lines on success
};

ChevalleyReport chevalley_compare(const LieTable& t, const std::string& type);

}  // namespace hall2p
