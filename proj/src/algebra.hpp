#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "field_linalg.hpp"

namespace hall2p {

struct ParseError : UsageError {
  ParseError(int line_no, const std::string& msg)
      : UsageError("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
  int line;
};

struct Arrow {
  std::string name;
  int src = -1;
  int dst = -1;
};

struct Quiver {
  std::vector<std::string> vertices;  // declaration order is the fixed order
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;
  bool is_cyclic() const;
};

struct RelTerm {
  uint32_t coeff = 0;            // nonzero mod p
  std::vector<int> arrows;       // traversal order: arrows[0] is applied first
};

struct Relation {
  int src = -1, dst = -1;        // common endpoints of all terms
  std::vector<RelTerm> terms;
};

// A module presented as a representation: one matrix per arrow, mapping the
// source vertex space into the target vertex space (x_h has shape
// dims[dst] x dims[src]).  A path "a.b" (a then b) acts as x_b · x_a.
struct Rep {
  std::vector<int> dims;
  std::vector<Mat> x;

  int total_dim() const;
  bool operator==(const Rep&) const = default;
};

// Module morphism M -> N: one matrix per vertex, N.dims[v] x M.dims[v],
// intertwining the arrow actions.
struct RepMap {
  std::vector<Mat> f;
  bool operator==(const RepMap&) const = default;
};

// Subrepresentation given by per-vertex column-echelon inclusion matrices.
struct SubRep {
  Rep sub;
  std::vector<Mat> incl;  // M.dims[v] x sub.dims[v], full column rank
};

// Direct sum of indecomposable projectives with fixed slot layout: at each
// vertex v the coordinates run over (projective index i, copy c, path basis
// of (P_i)_v), i ascending, then c ascending.
struct ProjSum {
  std::vector<int> mult;
  Rep rep;
  // block_start[v][i]: first coordinate of the copies of P_i at vertex v;
  // consecutive copies are spaced by dim (P_i)_v.
  std::vector<std::vector<int>> block_start;
};

class Algebra {
 public:
  // Parses the line-based algebra description:
  //   field <p>
  //   pathcap <N>          (optional; required when the quiver has a cycle)
  //   vertex <name> ...
  //   arrow <name> <src> <dst>
  //   relation <c>*<path> [+ <c>*<path>] ...   with <path> = arrow(.arrow)*
  // '#' starts a comment.  Throws ParseError with a line number on bad input.
  static Algebra parse(const std::string& text);

  // The same description over another prime: the 'field' line is replaced
  // (or prepended when missing).  Everything else is kept byte for byte.
  static std::string source_with_field(const std::string& text, uint32_t p);

  const Quiver& quiver() const { return quiver_; }
  const PrimeField& field() const { return field_; }
  int num_vertices() const { return int(quiver_.vertices.size()); }
  const std::vector<Relation>& relations() const { return relations_; }
  std::optional<int> pathcap() const { return pathcap_; }
  const std::string& source_text() const { return source_; }
  // Stable content hash of the parsed description (hex).
  std::string hash() const;

  const Rep& projective(int i) const { return proj_[i].rep; }
  Rep simple(int i) const;
  // Basis paths of (P_i)_v as arrow sequences, in (length, lex) order.
  const std::vector<std::vector<int>>& projective_paths(int i, int v) const {
    return proj_[i].basis_paths[v];
  }

  // Morphism P_i -> M determined by the image of the length-zero path, a
  // vector in M_i.
  RepMap hom_from_projective(int i, const Rep& M, const Vec& gen_value) const;

  std::vector<RepMap> hom_basis(const Rep& M, const Rep& N) const;
  int hom_dim(const Rep& M, const Rep& N) const;

  SubRep radical(const Rep& M) const;
  std::vector<int> top_dims(const Rep& M) const;

  ProjSum proj_sum(const std::vector<int>& mult) const;
  // Morphism P(mult) -> N from generator images: gens[i][c] in N_i.
  RepMap proj_sum_map(const ProjSum& src, const Rep& N,
                      const std::vector<std::vector<Vec>>& gens) const;
  // Projective cover P(top dims) ->> M; throws InternalError if the lift
  // fails to be surjective.
  std::pair<ProjSum, RepMap> projective_cover(const Rep& M) const;

  // dim Hom(P_i, P_j), i.e. the Cartan entry C[i][j] = dim (P_j)_i.
  int proj_hom_dim(int i, int j) const { return cartan_[i][j]; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  // Euler form on integer classes in the simple basis; derived from
  // dim Hom(P_i, P_j) by bilinearity.  Throws UsageError if the Cartan
  // matrix is not unimodular.
  long euler_form(const std::vector<long>& a, const std::vector<long>& b) const;
  long sym_euler_form(const std::vector<long>& a,
                      const std::vector<long>& b) const;
  // Inverse Cartan matrix (integer; exists by the unimodularity check).
  const std::vector<std::vector<long>>& cartan_inverse() const;

  // Longest minimal projective resolution of a simple, up to `cap` steps.
  // Throws UsageError if some simple is unresolved after cap steps.
  int gldim_probe(int cap) const;

 private:
  struct ProjInfo {
    Rep rep;
    std::vector<std::vector<std::vector<int>>> basis_paths;  // [v][k] = path
  };

  void build_projectives();
  void build_cartan();

  Quiver quiver_;
  std::vector<Relation> relations_;
  PrimeField field_;
  std::optional<int> pathcap_;
  std::string source_;
  std::vector<ProjInfo> proj_;
  std::vector<std::vector<int>> cartan_;
  mutable std::optional<std::vector<std::vector<long>>> cartan_inv_;
};

// ---- generic representation utilities ----

// Solve U X = B where U has full column rank; throws InternalError when a
// column of B falls outside the span of U.
Mat solve_full_col(const PrimeField& F, const Mat& U, const Mat& B);

Rep direct_sum(const Rep& A, const Rep& B);

// Composition g∘f of module maps (f: M->N, g: N->L).
RepMap compose(const PrimeField& F, const RepMap& g, const RepMap& f);
RepMap identity_map(const Rep& M);
bool is_zero_map(const RepMap& f);

// Checks the intertwiner equations f_{t(h)} x_h = x'_h f_{s(h)}.
bool is_module_map(const PrimeField& F, const Quiver& Q, const Rep& M,
                   const Rep& N, const RepMap& f);

// Subrepresentation spanned by the given per-vertex column sets, closed under
// the arrow action.
SubRep span_subrep(const PrimeField& F, const Quiver& Q, const Rep& M,
                   const std::vector<Mat>& spans);

// Sub/quotient along a closed subspace tuple.  `incl` must be full column
// rank and arrow-closed; throws InternalError otherwise.
Rep sub_rep(const PrimeField& F, const Quiver& Q, const Rep& M,
            const std::vector<Mat>& incl);
Rep quotient_rep(const PrimeField& F, const Quiver& Q, const Rep& M,
                 const std::vector<Mat>& incl, std::vector<Mat>* proj_out);

// Kernel of a module map as a subrepresentation.
SubRep kernel_subrep(const PrimeField& F, const Quiver& Q, const Rep& M,
                     const Rep& N, const RepMap& f);

}  // namespace hall2p
