#include "complex2.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace hall2p {

namespace {

RepMap zero_map(const Rep& src, const Rep& dst) {
  RepMap f;
  for (size_t v = 0; v < src.dims.size(); ++v)
    f.f.push_back(Mat(dst.dims[v], src.dims[v]));
  return f;
}

RepMap repmap_add(const PrimeField& F, const RepMap& a, const RepMap& b) {
  RepMap out = a;
  for (size_t v = 0; v < out.f.size(); ++v)
    out.f[v] = mat_add(F, out.f[v], b.f[v]);
  return out;
}

RepMap repmap_sub(const PrimeField& F, const RepMap& a, const RepMap& b) {
  RepMap out = a;
  for (size_t v = 0; v < out.f.size(); ++v)
    out.f[v] = mat_sub(F, out.f[v], b.f[v]);
  return out;
}

RepMap repmap_axpy(const PrimeField& F, const RepMap& a, uint32_t c,
                   const RepMap& b) {
  RepMap out = a;
  if (c == 0) return out;
  for (size_t v = 0; v < out.f.size(); ++v)
    out.f[v] = mat_add(F, out.f[v], mat_scale(F, c, b.f[v]));
  return out;
}

RepMap repmap_neg(const PrimeField& F, const RepMap& a) {
  RepMap out = a;
  for (size_t v = 0; v < out.f.size(); ++v) out.f[v] = mat_neg(F, out.f[v]);
  return out;
}

std::optional<RepMap> repmap_inverse(const PrimeField& F, const RepMap& a) {
  RepMap out;
  for (const Mat& m : a.f) {
    if (m.rows != m.cols) return std::nullopt;
    auto inv = mat_inverse(F, m);
    if (!inv) return std::nullopt;
    out.f.push_back(std::move(*inv));
  }
  return out;
}

bool repmap_invertible(const PrimeField& F, const RepMap& a) {
  for (const Mat& m : a.f)
    if (m.rows != m.cols || !is_invertible(F, m)) return false;
  return true;
}

// Shared iteration for the structural hom basis: visits (source slot, target
// slot, path) in the documented order.
template <typename Visit>
void for_each_hom_slot(const Algebra& A, const ProjSum& src,
                       const ProjSum& dst, bool radical_only, Visit visit) {
  int n = A.num_vertices();
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < src.mult[i]; ++c)
      for (int j = 0; j < n; ++j)
        for (int c2 = 0; c2 < dst.mult[j]; ++c2) {
          const auto& paths = A.projective_paths(j, i);
          for (size_t k = 0; k < paths.size(); ++k) {
            if (radical_only && i == j && paths[k].empty()) continue;
            visit(i, c, j, c2, int(k));
          }
        }
}

// Column index of the degree-zero generator of copy (i, c) inside P(src).
int gen_col(const Algebra& A, const ProjSum& src, int i, int c) {
  return src.block_start[i][i] + c * A.projective(i).dims[i];
}

Vec concat(const Vec& a, const Vec& b) {
  Vec out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Mat cols_to_mat(const std::vector<Vec>& cols, int rows) {
  Mat m(rows, int(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < rows; ++r) m.at(r, int(c)) = cols[c][r];
  return m;
}

}  // namespace

bool Complex2::is_zero() const {
  return c1.rep.total_dim() == 0 && c0.rep.total_dim() == 0;
}

Complex2 mk_complex(const Algebra& A, const std::vector<int>& e1,
                    const std::vector<int>& e0, RepMap d1, RepMap d0) {
  Complex2 X;
  X.c1 = A.proj_sum(e1);
  X.c0 = A.proj_sum(e0);
  int n = A.num_vertices();
  if (int(d1.f.size()) != n || int(d0.f.size()) != n)
    throw UsageError("differential has the wrong number of vertex blocks");
  for (int v = 0; v < n; ++v) {
    if (d1.f[v].rows != X.c0.rep.dims[v] || d1.f[v].cols != X.c1.rep.dims[v] ||
        d0.f[v].rows != X.c1.rep.dims[v] || d0.f[v].cols != X.c0.rep.dims[v])
      throw UsageError("differential block has the wrong shape at vertex " +
                       A.quiver().vertices[v]);
  }
  if (!is_module_map(A.field(), A.quiver(), X.c1.rep, X.c0.rep, d1) ||
      !is_module_map(A.field(), A.quiver(), X.c0.rep, X.c1.rep, d0))
    throw UsageError("differential is not a module map");
  for (int v = 0; v < n; ++v) {
    if (!mat_mul(A.field(), d0.f[v], d1.f[v]).is_zero() ||
        !mat_mul(A.field(), d1.f[v], d0.f[v]).is_zero())
      throw UsageError("differential does not square to zero");
  }
  X.d1 = std::move(d1);
  X.d0 = std::move(d0);
  return X;
}

Complex2 zero_complex(const Algebra& A) {
  std::vector<int> z(A.num_vertices(), 0);
  ProjSum ps = A.proj_sum(z);
  return mk_complex(A, z, z, zero_map(ps.rep, ps.rep),
                    zero_map(ps.rep, ps.rep));
}

Complex2 contractible_on(const Algebra& A, int vertex, bool starred) {
  std::vector<int> e(A.num_vertices(), 0);
  e[vertex] = 1;
  ProjSum ps = A.proj_sum(e);
  RepMap id = identity_map(ps.rep);
  RepMap zero = zero_map(ps.rep, ps.rep);
  if (starred) return mk_complex(A, e, e, zero, id);
  return mk_complex(A, e, e, id, zero);
}

Complex2 contractible_shape(const Algebra& A, const std::vector<int>& plus,
                            const std::vector<int>& minus) {
  Complex2 acc = zero_complex(A);
  for (int i = 0; i < A.num_vertices(); ++i)
    for (int c = 0; c < plus[i]; ++c)
      acc = direct_sum_complex(A, acc, contractible_on(A, i, false)).sum;
  for (int i = 0; i < A.num_vertices(); ++i)
    for (int c = 0; c < minus[i]; ++c)
      acc = direct_sum_complex(A, acc, contractible_on(A, i, true)).sum;
  return acc;
}

Complex2 shift(const Algebra& A, const Complex2& X) {
  return mk_complex(A, X.e0(), X.e1(), repmap_neg(A.field(), X.d0),
                    repmap_neg(A.field(), X.d1));
}

bool complexes_equal(const Complex2& X, const Complex2& Y) {
  return X.c1.mult == Y.c1.mult && X.c0.mult == Y.c0.mult && X.d1 == Y.d1 &&
         X.d0 == Y.d0;
}

std::vector<uint8_t> entry_key(const Complex2& X) {
  std::vector<uint8_t> key;
  for (const Mat& m : X.d1.f) key.insert(key.end(), m.a.begin(), m.a.end());
  for (const Mat& m : X.d0.f) key.insert(key.end(), m.a.begin(), m.a.end());
  return key;
}

std::string serialize_complex(const Complex2& X) {
  std::ostringstream out;
  auto ints = [&out](const std::vector<int>& v) {
    out << '[';
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) out << ',';
      out << v[i];
    }
    out << ']';
  };
  auto blocks = [&out](const RepMap& d) {
    out << '[';
    for (size_t v = 0; v < d.f.size(); ++v) {
      if (v) out << '|';
      const Mat& m = d.f[v];
      for (size_t k = 0; k < m.a.size(); ++k) {
        if (k) out << ',';
        out << int(m.a[k]);
      }
    }
    out << ']';
  };
  out << "e1=";
  ints(X.c1.mult);
  out << ";e0=";
  ints(X.c0.mult);
  out << ";d1=";
  blocks(X.d1);
  out << ";d0=";
  blocks(X.d0);
  return out.str();
}

Complex2 parse_complex(const Algebra& A, const std::string& text) {
  auto fail = [](const std::string& why) -> void {
    throw UsageError("bad complex id: " + why);
  };
  std::vector<std::string> parts;
  {
    std::istringstream in(text);
    std::string piece;
    while (std::getline(in, piece, ';')) parts.push_back(piece);
  }
  if (parts.size() != 4) fail("expected four ;-separated fields");
  const char* names[4] = {"e1", "e0", "d1", "d0"};
  std::vector<std::string> bodies(4);
  for (int k = 0; k < 4; ++k) {
    const std::string& s = parts[k];
    std::string prefix = std::string(names[k]) + "=[";
    if (s.size() < prefix.size() + 1 || s.compare(0, prefix.size(), prefix) ||
        s.back() != ']')
      fail("field " + std::to_string(k) + " must look like " +
           std::string(names[k]) + "=[..]");
    bodies[k] = s.substr(prefix.size(), s.size() - prefix.size() - 1);
  }
  auto parse_ints = [&](const std::string& s) {
    std::vector<long> out;
    if (s.empty()) return out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        out.push_back(v);
      } catch (...) {
        fail("bad integer '" + tok + "'");
      }
    }
    return out;
  };
  int n = A.num_vertices();
  std::vector<long> e1l = parse_ints(bodies[0]), e0l = parse_ints(bodies[1]);
  if (int(e1l.size()) != n || int(e0l.size()) != n)
    fail("multiplicity vectors must have one entry per vertex");
  std::vector<int> e1(e1l.begin(), e1l.end()), e0(e0l.begin(), e0l.end());
  for (int v : e1)
    if (v < 0) fail("negative multiplicity");
  for (int v : e0)
    if (v < 0) fail("negative multiplicity");
  ProjSum p1 = A.proj_sum(e1), p0 = A.proj_sum(e0);

  auto parse_blocks = [&](const std::string& s, const ProjSum& src,
                          const ProjSum& dst) {
    std::vector<std::string> blocks;
    std::string cur;
    for (char ch : s) {
      if (ch == '|') {
        blocks.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    blocks.push_back(cur);
    if (int(blocks.size()) != n) fail("wrong number of | blocks");
    RepMap d;
    for (int v = 0; v < n; ++v) {
      std::vector<long> ent = parse_ints(blocks[v]);
      Mat m(dst.rep.dims[v], src.rep.dims[v]);
      if (int(ent.size()) != int(m.a.size()))
        fail("block at vertex " + A.quiver().vertices[v] +
             " has the wrong entry count");
      for (size_t k = 0; k < ent.size(); ++k) {
        if (ent[k] < 0 || ent[k] >= long(A.field().p))
          fail("entry out of field range");
        m.a[k] = uint8_t(ent[k]);
      }
      d.f.push_back(std::move(m));
    }
    return d;
  };
  RepMap d1 = parse_blocks(bodies[2], p1, p0);
  RepMap d0 = parse_blocks(bodies[3], p0, p1);
  return mk_complex(A, e1, e0, std::move(d1), std::move(d0));
}

std::vector<RepMap> module_hom_basis(const Algebra& A, const ProjSum& src,
                                     const ProjSum& dst, bool radical_only) {
  std::vector<RepMap> out;
  int n = A.num_vertices();
  for_each_hom_slot(A, src, dst, radical_only,
                    [&](int i, int c, int j, int c2, int k) {
                      std::vector<std::vector<Vec>> gens(n);
                      for (int ii = 0; ii < n; ++ii)
                        gens[ii].assign(src.mult[ii],
                                        Vec(dst.rep.dims[ii], 0));
                      int pos = dst.block_start[i][j] +
                                c2 * A.projective(j).dims[i] + k;
                      gens[i][c][pos] = 1;
                      out.push_back(A.proj_sum_map(src, dst.rep, gens));
                    });
  return out;
}

Vec module_hom_coords(const Algebra& A, const ProjSum& src, const ProjSum& dst,
                      const RepMap& f, bool radical_only) {
  Vec out;
  for_each_hom_slot(A, src, dst, radical_only,
                    [&](int i, int c, int j, int c2, int k) {
                      int col = gen_col(A, src, i, c);
                      int row = dst.block_start[i][j] +
                                c2 * A.projective(j).dims[i] + k;
                      out.push_back(f.f[i].at(row, col));
                    });
  return out;
}

bool is_chain_map(const Algebra& A, const Complex2& X, const Complex2& Y,
                  const ChainMap& f) {
  const PrimeField& F = A.field();
  for (size_t v = 0; v < f.f1.f.size(); ++v) {
    if (mat_mul(F, f.f0.f[v], X.d1.f[v]) != mat_mul(F, Y.d1.f[v], f.f1.f[v]))
      return false;
    if (mat_mul(F, f.f1.f[v], X.d0.f[v]) != mat_mul(F, Y.d0.f[v], f.f0.f[v]))
      return false;
  }
  return true;
}

bool is_chain_iso(const Algebra& A, const Complex2& X, const Complex2& Y,
                  const ChainMap& f) {
  return is_chain_map(A, X, Y, f) && repmap_invertible(A.field(), f.f1) &&
         repmap_invertible(A.field(), f.f0);
}

ChainMap chain_identity(const Complex2& X) {
  return {identity_map(X.c1.rep), identity_map(X.c0.rep)};
}

ChainMap chain_compose(const PrimeField& F, const ChainMap& g,
                       const ChainMap& f) {
  return {compose(F, g.f1, f.f1), compose(F, g.f0, f.f0)};
}

ChainMap chain_sub(const PrimeField& F, const ChainMap& f, const ChainMap& g) {
  return {repmap_sub(F, f.f1, g.f1), repmap_sub(F, f.f0, g.f0)};
}

std::optional<ChainMap> chain_inverse(const PrimeField& F, const ChainMap& f) {
  ChainMap inv;
  for (const Mat& m : f.f1.f) {
    auto mi = mat_inverse(F, m);
    if (!mi) return std::nullopt;
    inv.f1.f.push_back(std::move(*mi));
  }
  for (const Mat& m : f.f0.f) {
    auto mi = mat_inverse(F, m);
    if (!mi) return std::nullopt;
    inv.f0.f.push_back(std::move(*mi));
  }
  return inv;
}

bool chain_equal(const ChainMap& f, const ChainMap& g) {
  return f.f1 == g.f1 && f.f0 == g.f0;
}

namespace {

// Shared workspace for the hom-space computations between two complexes.
struct HomSpace {
  std::vector<RepMap> B11, B00;  // chain-map coordinates
  std::vector<RepMap> B10, B01;  // homotopy coordinates
  std::vector<Vec> chain_coeffs;  // kernel basis: chain maps over (B11|B00)
  Mat null_cols;                  // null-homotopic image, one column per s
  int dim11 = 0, dim00 = 0;

  ChainMap assemble(const PrimeField& F, const Complex2& X, const Complex2& Y,
                    const Vec& coeff) const {
    RepMap f1 = zero_map(X.c1.rep, Y.c1.rep);
    RepMap f0 = zero_map(X.c0.rep, Y.c0.rep);
    for (int k = 0; k < dim11; ++k) f1 = repmap_axpy(F, f1, coeff[k], B11[k]);
    for (int k = 0; k < dim00; ++k)
      f0 = repmap_axpy(F, f0, coeff[dim11 + k], B00[k]);
    return {f1, f0};
  }
};

HomSpace build_hom_space(const Algebra& A, const Complex2& X,
                         const Complex2& Y) {
  const PrimeField& F = A.field();
  HomSpace H;
  H.B11 = module_hom_basis(A, X.c1, Y.c1, false);
  H.B00 = module_hom_basis(A, X.c0, Y.c0, false);
  H.dim11 = int(H.B11.size());
  H.dim00 = int(H.B00.size());
  int rows10 = 0, rows01 = 0;
  {
    // Equation coordinates live in Hom(X^1, Y^0) and Hom(X^0, Y^1).
    Vec probe10 = module_hom_coords(A, X.c1, Y.c0,
                                    zero_map(X.c1.rep, Y.c0.rep), false);
    Vec probe01 = module_hom_coords(A, X.c0, Y.c1,
                                    zero_map(X.c0.rep, Y.c1.rep), false);
    rows10 = int(probe10.size());
    rows01 = int(probe01.size());
  }
  Mat sys(rows10 + rows01, H.dim11 + H.dim00);
  for (int k = 0; k < H.dim11; ++k) {
    RepMap eq1 = repmap_neg(F, compose(F, Y.d1, H.B11[k]));
    RepMap eq2 = compose(F, H.B11[k], X.d0);
    Vec c1 = module_hom_coords(A, X.c1, Y.c0, eq1, false);
    Vec c2 = module_hom_coords(A, X.c0, Y.c1, eq2, false);
    for (int r = 0; r < rows10; ++r) sys.at(r, k) = c1[r];
    for (int r = 0; r < rows01; ++r) sys.at(rows10 + r, k) = c2[r];
  }
  for (int k = 0; k < H.dim00; ++k) {
    RepMap eq1 = compose(F, H.B00[k], X.d1);
    RepMap eq2 = repmap_neg(F, compose(F, Y.d0, H.B00[k]));
    Vec c1 = module_hom_coords(A, X.c1, Y.c0, eq1, false);
    Vec c2 = module_hom_coords(A, X.c0, Y.c1, eq2, false);
    for (int r = 0; r < rows10; ++r) sys.at(r, H.dim11 + k) = c1[r];
    for (int r = 0; r < rows01; ++r) sys.at(rows10 + r, H.dim11 + k) = c2[r];
  }
  H.chain_coeffs = kernel_basis(F, sys);

  // Null-homotopic image: s1: X^1->Y^0 and s0: X^0->Y^1 map to
  // (d0_Y s1 + s0 d1_X, d1_Y s0 + s1 d0_X).
  H.B10 = module_hom_basis(A, X.c1, Y.c0, false);
  H.B01 = module_hom_basis(A, X.c0, Y.c1, false);
  std::vector<Vec> cols;
  for (const RepMap& s1 : H.B10) {
    Vec f1c = module_hom_coords(A, X.c1, Y.c1, compose(F, Y.d0, s1), false);
    Vec f0c = module_hom_coords(A, X.c0, Y.c0, compose(F, s1, X.d0), false);
    cols.push_back(concat(f1c, f0c));
  }
  for (const RepMap& s0 : H.B01) {
    Vec f1c = module_hom_coords(A, X.c1, Y.c1, compose(F, s0, X.d1), false);
    Vec f0c = module_hom_coords(A, X.c0, Y.c0, compose(F, Y.d1, s0), false);
    cols.push_back(concat(f1c, f0c));
  }
  H.null_cols = cols_to_mat(cols, H.dim11 + H.dim00);
  return H;
}

}  // namespace

std::vector<ChainMap> chain_hom_basis(const Algebra& A, const Complex2& X,
                                      const Complex2& Y) {
  HomSpace H = build_hom_space(A, X, Y);
  std::vector<ChainMap> out;
  for (const Vec& c : H.chain_coeffs)
    out.push_back(H.assemble(A.field(), X, Y, c));
  return out;
}

std::vector<ChainMap> homotopy_space(const Algebra& A, const Complex2& X,
                                     const Complex2& Y) {
  HomSpace H = build_hom_space(A, X, Y);
  Mat T = transpose(H.null_cols);
  std::vector<int> pivots = row_reduce(A.field(), T);
  std::vector<ChainMap> out;
  for (size_t r = 0; r < pivots.size(); ++r) {
    Vec c(T.cols);
    for (int j = 0; j < T.cols; ++j) c[j] = T.at(int(r), j);
    out.push_back(H.assemble(A.field(), X, Y, c));
  }
  return out;
}

std::vector<ChainMap> k2_hom(const Algebra& A, const Complex2& X,
                             const Complex2& Y) {
  HomSpace H = build_hom_space(A, X, Y);
  const PrimeField& F = A.field();
  int dim = H.dim11 + H.dim00;
  // Echelon of the null space first, then grow with chain-basis residues.
  std::vector<Vec> rows;
  Mat T = transpose(H.null_cols);
  std::vector<int> npiv = row_reduce(F, T);
  for (size_t r = 0; r < npiv.size(); ++r) {
    Vec c(dim);
    for (int j = 0; j < dim; ++j) c[j] = T.at(int(r), j);
    rows.push_back(c);
  }
  std::vector<ChainMap> out;
  for (const Vec& cand : H.chain_coeffs) {
    // Reduce cand against the accumulated echelon rows.
    Vec v = cand;
    for (const Vec& r : rows) {
      int lead = -1;
      for (int j = 0; j < dim; ++j)
        if (r[j]) {
          lead = j;
          break;
        }
      if (lead < 0) continue;
      uint32_t coef = F.mul(v[lead], F.inv(r[lead]));
      if (!coef) continue;
      for (int j = 0; j < dim; ++j) v[j] = uint8_t(F.sub(v[j], F.mul(coef, r[j])));
    }
    bool zero = true;
    for (uint8_t x : v)
      if (x) {
        zero = false;
        break;
      }
    if (zero) continue;
    rows.push_back(v);
    out.push_back(H.assemble(F, X, Y, v));
  }
  return out;
}

int hom_dim_c2(const Algebra& A, const Complex2& X, const Complex2& Y) {
  HomSpace H = build_hom_space(A, X, Y);
  return int(H.chain_coeffs.size());
}

int htp_dim(const Algebra& A, const Complex2& X, const Complex2& Y) {
  HomSpace H = build_hom_space(A, X, Y);
  return rank(A.field(), H.null_cols);
}

int hom_dim_k2(const Algebra& A, const Complex2& X, const Complex2& Y) {
  HomSpace H = build_hom_space(A, X, Y);
  return int(H.chain_coeffs.size()) - rank(A.field(), H.null_cols);
}

bool is_null_homotopic(const Algebra& A, const Complex2& X, const Complex2& Y,
                       const ChainMap& f) {
  HomSpace H = build_hom_space(A, X, Y);
  Vec c1 = module_hom_coords(A, X.c1, Y.c1, f.f1, false);
  Vec c0 = module_hom_coords(A, X.c0, Y.c0, f.f0, false);
  return solve_affine(A.field(), H.null_cols, concat(c1, c0)).has_value();
}

SumLayout direct_sum_complex(const Algebra& A, const Complex2& X,
                             const Complex2& Y) {
  const PrimeField& F = A.field();
  int n = A.num_vertices();
  SumLayout out;
  std::vector<int> e1(n), e0(n);
  for (int i = 0; i < n; ++i) {
    e1[i] = X.c1.mult[i] + Y.c1.mult[i];
    e0[i] = X.c0.mult[i] + Y.c0.mult[i];
  }
  ProjSum p1 = A.proj_sum(e1), p0 = A.proj_sum(e0);

  // Slot embeddings: X copies first within each type, then Y copies.
  auto embed = [&](const ProjSum& part, const ProjSum& whole,
                   const std::vector<int>& offset) {
    RepMap inj;
    for (int v = 0; v < n; ++v) {
      Mat m(whole.rep.dims[v], part.rep.dims[v]);
      for (int i = 0; i < n; ++i) {
        int d = A.projective(i).dims[v];
        for (int c = 0; c < part.mult[i]; ++c)
          for (int r = 0; r < d; ++r)
            m.at(whole.block_start[v][i] + (offset[i] + c) * d + r,
                 part.block_start[v][i] + c * d + r) = 1;
      }
      inj.f.push_back(std::move(m));
    }
    return inj;
  };
  std::vector<int> zero_off(n, 0);
  RepMap i1x = embed(X.c1, p1, zero_off), i0x = embed(X.c0, p0, zero_off);
  RepMap i1y = embed(Y.c1, p1, X.c1.mult), i0y = embed(Y.c0, p0, X.c0.mult);
  auto tr = [&](const RepMap& m) {
    RepMap t;
    for (const Mat& mm : m.f) t.f.push_back(transpose(mm));
    return t;
  };
  RepMap p1x = tr(i1x), p0x = tr(i0x), p1y = tr(i1y), p0y = tr(i0y);

  RepMap d1 = repmap_add(
      F, compose(F, i0x, compose(F, X.d1, p1x)),
      compose(F, i0y, compose(F, Y.d1, p1y)));
  RepMap d0 = repmap_add(
      F, compose(F, i1x, compose(F, X.d0, p0x)),
      compose(F, i1y, compose(F, Y.d0, p0y)));
  out.sum = mk_complex(A, e1, e0, std::move(d1), std::move(d0));
  out.injX = {i1x, i0x};
  out.injY = {i1y, i0y};
  out.prjX = {p1x, p0x};
  out.prjY = {p1y, p0y};
  return out;
}

ConeResult cone_of(const Algebra& A, const Complex2& X, const Complex2& Y,
                   const ChainMap& h) {
  const PrimeField& F = A.field();
  Complex2 Ystar = shift(A, Y);
  if (!is_chain_map(A, X, Ystar, h))
    throw UsageError("representative fails the chain-map equations");
  SumLayout SL = direct_sum_complex(A, X, Y);
  // Z has the split differential minus the h-blocks.
  RepMap d1 = repmap_sub(
      F, SL.sum.d1,
      compose(F, SL.injY.f0, compose(F, h.f1, SL.prjX.f1)));
  RepMap d0 = repmap_sub(
      F, SL.sum.d0,
      compose(F, SL.injY.f1, compose(F, h.f0, SL.prjX.f0)));
  ConeResult out;
  out.Z = mk_complex(A, SL.sum.e1(), SL.sum.e0(), std::move(d1),
                     std::move(d0));
  out.iota = SL.injY;
  out.pi = SL.prjX;
  return out;
}

std::optional<SplitOff> split_off(const Algebra& A, const Complex2& X,
                                  const Complex2& C) {
  const PrimeField& F = A.field();
  if (C.is_zero()) return std::nullopt;
  std::vector<ChainMap> fs = chain_hom_basis(A, C, X);
  std::vector<ChainMap> gs = chain_hom_basis(A, X, C);
  for (const ChainMap& g : gs) {
    for (const ChainMap& f : fs) {
      ChainMap u = chain_compose(F, g, f);
      if (!repmap_invertible(F, u.f1) || !repmap_invertible(F, u.f0))
        continue;
      RepMap u1inv = *repmap_inverse(F, u.f1);
      RepMap u0inv = *repmap_inverse(F, u.f0);
      // Idempotent e = f u^{-1} g with image the C-summand.
      RepMap e1 = compose(F, f.f1, compose(F, u1inv, g.f1));
      RepMap e0 = compose(F, f.f0, compose(F, u0inv, g.f0));

      // Complement: kernel of e per degree, re-coordinatized projectively.
      auto complement = [&](const Rep& comp, const RepMap& e)
          -> std::pair<ProjSum, RepMap> {
        SubRep K = kernel_subrep(F, A.quiver(), comp, comp, e);
        auto [ps, q] = A.projective_cover(K.sub);
        if (ps.rep.dims != K.sub.dims)
          throw InternalError(
              "summand complement failed to be projective");
        RepMap jmap;
        for (size_t v = 0; v < K.incl.size(); ++v)
          jmap.f.push_back(mat_mul(F, K.incl[v], q.f[v]));
        return {ps, jmap};
      };
      auto [ps1, j1] = complement(X.c1.rep, e1);
      auto [ps0, j0] = complement(X.c0.rep, e0);
      RepMap d1r, d0r;
      for (size_t v = 0; v < j1.f.size(); ++v) {
        d1r.f.push_back(
            solve_full_col(F, j0.f[v], mat_mul(F, X.d1.f[v], j1.f[v])));
        d0r.f.push_back(
            solve_full_col(F, j1.f[v], mat_mul(F, X.d0.f[v], j0.f[v])));
      }
      Complex2 rest = mk_complex(A, ps1.mult, ps0.mult, d1r, d0r);

      // Witness X -> C (+) rest: invert (f | j) assembled into sum layout.
      SumLayout SL = direct_sum_complex(A, C, rest);
      RepMap psi1 = repmap_add(F, compose(F, f.f1, SL.prjX.f1),
                               compose(F, j1, SL.prjY.f1));
      RepMap psi0 = repmap_add(F, compose(F, f.f0, SL.prjX.f0),
                               compose(F, j0, SL.prjY.f0));
      auto phi1 = repmap_inverse(F, psi1);
      auto phi0 = repmap_inverse(F, psi0);
      if (!phi1 || !phi0)
        throw InternalError("summand witness failed to invert");
      SplitOff out;
      out.rest = std::move(rest);
      out.witness = {std::move(*phi1), std::move(*phi0)};
      return out;
    }
  }
  return std::nullopt;
}

namespace {

struct MultiSum {
  Complex2 sum;
  std::vector<ChainMap> inj, prj;
};

MultiSum multi_sum(const Algebra& A, const std::vector<const Complex2*>& parts) {
  const PrimeField& F = A.field();
  MultiSum out;
  out.sum = zero_complex(A);
  for (const Complex2* part : parts) {
    SumLayout SL = direct_sum_complex(A, out.sum, *part);
    for (size_t k = 0; k < out.inj.size(); ++k) {
      out.inj[k] = chain_compose(F, SL.injX, out.inj[k]);
      out.prj[k] = chain_compose(F, out.prj[k], SL.prjX);
    }
    out.inj.push_back(SL.injY);
    out.prj.push_back(SL.prjY);
    out.sum = SL.sum;
  }
  return out;
}

ChainMap chain_add(const PrimeField& F, const ChainMap& a, const ChainMap& b) {
  return {repmap_add(F, a.f1, b.f1), repmap_add(F, a.f0, b.f0)};
}

}  // namespace

RadicalSplit decompose(const Algebra& A, const Complex2& X) {
  const PrimeField& F = A.field();
  int n = A.num_vertices();
  RadicalSplit out;
  out.plus_mult.assign(n, 0);
  out.minus_mult.assign(n, 0);

  Complex2 R = X;
  std::vector<Complex2> shape_parts;
  // Witness chain: X -> multi_sum(R, shape parts...).
  ChainMap W = chain_identity(X);
  bool have_w = false;

  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      Complex2 C = contractible_on(A, i, pass == 1);
      while (true) {
        auto so = split_off(A, R, C);
        if (!so) break;
        if (pass == 0)
          out.plus_mult[i]++;
        else
          out.minus_mult[i]++;
        // Current target: (R, S...) -> rebuild as (R', S..., C).
        std::vector<const Complex2*> old_parts, mid_parts, new_parts;
        old_parts.push_back(&R);
        for (const Complex2& s : shape_parts) old_parts.push_back(&s);
        SumLayout duoL = direct_sum_complex(A, C, so->rest);
        const Complex2& duo = duoL.sum;
        mid_parts.push_back(&duo);
        for (const Complex2& s : shape_parts) mid_parts.push_back(&s);
        new_parts.push_back(&so->rest);
        for (const Complex2& s : shape_parts) new_parts.push_back(&s);
        new_parts.push_back(&C);

        MultiSum oldS = multi_sum(A, old_parts);
        MultiSum midS = multi_sum(A, mid_parts);
        MultiSum newS = multi_sum(A, new_parts);
        // Lambda: apply the split witness on the R-slot.
        ChainMap lam = chain_compose(
            F, midS.inj[0], chain_compose(F, so->witness, oldS.prj[0]));
        for (size_t k = 1; k < old_parts.size(); ++k)
          lam = chain_add(F, lam,
                          chain_compose(F, midS.inj[k], oldS.prj[k]));
        // Rho: reorder (C+rest, S...) into (rest, S..., C).
        ChainMap rho = chain_compose(
            F, newS.inj[0],
            chain_compose(F, duoL.prjY, midS.prj[0]));
        rho = chain_add(
            F, rho,
            chain_compose(F, newS.inj.back(),
                          chain_compose(F, duoL.prjX, midS.prj[0])));
        for (size_t k = 1; k < mid_parts.size(); ++k)
          rho = chain_add(F, rho,
                          chain_compose(F, newS.inj[k], midS.prj[k]));
        ChainMap step = chain_compose(F, rho, lam);
        W = have_w ? chain_compose(F, step, W) : step;
        have_w = true;
        R = so->rest;
        shape_parts.push_back(C);
      }
    }
  }
  out.radical = R;
  if (!have_w) {
    out.witness = chain_identity(X);
  } else {
    out.witness = W;
  }
  return out;
}

bool is_radical_complex(const Algebra& A, const Complex2& X) {
  // A map between projective sums is radical exactly when the induced map on
  // tops vanishes: the generator-to-generator coefficients are zero.
  auto top_zero = [&](const ProjSum& src, const ProjSum& dst, const RepMap& f) {
    for (int i = 0; i < A.num_vertices(); ++i) {
      for (int c = 0; c < src.mult[i]; ++c) {
        int col = gen_col(A, src, i, c);
        for (int c2 = 0; c2 < dst.mult[i]; ++c2) {
          int row = gen_col(A, dst, i, c2);
          if (f.f[i].at(row, col) != 0) return false;
        }
      }
    }
    return true;
  };
  return top_zero(X.c1, X.c0, X.d1) && top_zero(X.c0, X.c1, X.d0);
}

std::optional<ChainMap> is_isomorphic(const Algebra& A, const Complex2& X,
                                      const Complex2& Y, uint64_t max_enum) {
  const PrimeField& F = A.field();
  if (X.c1.mult != Y.c1.mult || X.c0.mult != Y.c0.mult) return std::nullopt;
  if (X.is_zero() && Y.is_zero()) return chain_identity(X);
  if (hom_dim_c2(A, X, X) != hom_dim_c2(A, Y, Y)) return std::nullopt;
  if (htp_dim(A, X, X) != htp_dim(A, Y, Y)) return std::nullopt;
  std::vector<ChainMap> B = chain_hom_basis(A, X, Y);
  if (B.empty()) return std::nullopt;
  auto pts = checked_pow(F.p, B.size(), max_enum);
  if (!pts)
    throw CapacityError("isomorphism search space p^" +
                        std::to_string(B.size()) +
                        " exceeds the enumeration cap");
  // Odometer over coefficient tuples; one axpy per step.
  std::vector<uint8_t> coef(B.size(), 0);
  ChainMap f = {zero_map(X.c1.rep, Y.c1.rep), zero_map(X.c0.rep, Y.c0.rep)};
  for (uint64_t it = 1; it < *pts; ++it) {
    size_t k = 0;
    while (true) {
      coef[k]++;
      f.f1 = repmap_add(F, f.f1, B[k].f1);
      f.f0 = repmap_add(F, f.f0, B[k].f0);
      if (coef[k] < F.p) break;
      coef[k] = 0;
      ++k;
      if (k == B.size()) break;
    }
    if (k == B.size()) break;
    if (repmap_invertible(F, f.f1) && repmap_invertible(F, f.f0)) return f;
  }
  return std::nullopt;
}

bool is_homotopy_equivalent(const Algebra& A, const Complex2& X,
                            const Complex2& Y, uint64_t max_enum) {
  Complex2 Xr = decompose(A, X).radical;
  Complex2 Yr = decompose(A, Y).radical;
  return is_isomorphic(A, Xr, Yr, max_enum).has_value();
}

AutOrders aut_orders(const Algebra& A, const Complex2& X, uint64_t max_enum) {
  const PrimeField& F = A.field();
  auto count_units = [&](const Complex2& C) -> uint64_t {
    std::vector<ChainMap> B = chain_hom_basis(A, C, C);
    auto pts = checked_pow(F.p, B.size(), max_enum);
    if (!pts)
      throw CapacityError("endomorphism sweep p^" + std::to_string(B.size()) +
                          " exceeds the enumeration cap");
    if (C.is_zero()) return 1;
    uint64_t units = 0;
    std::vector<uint8_t> coef(B.size(), 0);
    ChainMap f = {zero_map(C.c1.rep, C.c1.rep), zero_map(C.c0.rep, C.c0.rep)};
    for (uint64_t it = 1; it < *pts; ++it) {
      size_t k = 0;
      while (true) {
        coef[k]++;
        f.f1 = repmap_add(F, f.f1, B[k].f1);
        f.f0 = repmap_add(F, f.f0, B[k].f0);
        if (coef[k] < F.p) break;
        coef[k] = 0;
        ++k;
        if (k == B.size()) break;
      }
      if (k == B.size()) break;
      if (repmap_invertible(F, f.f1) && repmap_invertible(F, f.f0)) ++units;
    }
    return units;
  };
  AutOrders out;
  out.aut_c2 = count_units(X);
  out.htp_self = htp_dim(A, X, X);
  RadicalSplit D = decompose(A, X);
  uint64_t aut_r = complexes_equal(D.radical, X) ? out.aut_c2
                                                 : count_units(D.radical);
  int htp_r = complexes_equal(D.radical, X)
                  ? out.htp_self
                  : htp_dim(A, D.radical, D.radical);
  uint64_t dv = 1;
  for (int k = 0; k < htp_r; ++k) dv *= F.p;
  if (aut_r % dv != 0)
    throw InternalError("automorphism count not divisible by p^htp");
  out.aut_k2 = aut_r / dv;
  return out;
}

bool is_indecomposable(const Algebra& A, const Complex2& X,
                       uint64_t max_enum) {
  const PrimeField& F = A.field();
  Complex2 R = decompose(A, X).radical;
  if (R.is_zero()) return false;
  std::vector<ChainMap> B = chain_hom_basis(A, R, R);
  int D = R.c1.rep.total_dim() + R.c0.rep.total_dim();
  auto nilpotent = [&](ChainMap f) {
    int steps = 1;
    while (steps < 2 * D) {
      if (is_zero_map(f.f1) && is_zero_map(f.f0)) return true;
      f = chain_compose(F, f, f);
      steps *= 2;
    }
    return is_zero_map(f.f1) && is_zero_map(f.f0);
  };
  auto pts = checked_pow(F.p, B.size(), max_enum);
  if (pts) {
    std::vector<uint8_t> coef(B.size(), 0);
    ChainMap f = {zero_map(R.c1.rep, R.c1.rep), zero_map(R.c0.rep, R.c0.rep)};
    for (uint64_t it = 1; it < *pts; ++it) {
      size_t k = 0;
      while (true) {
        coef[k]++;
        f.f1 = repmap_add(F, f.f1, B[k].f1);
        f.f0 = repmap_add(F, f.f0, B[k].f0);
        if (coef[k] < F.p) break;
        coef[k] = 0;
        ++k;
        if (k == B.size()) break;
      }
      if (k == B.size()) break;
      if (repmap_invertible(F, f.f1) && repmap_invertible(F, f.f0)) continue;
      if (!nilpotent(f)) return false;
    }
    return true;
  }
  // Fitting fallback along the basis: any basis element that is neither
  // nilpotent nor invertible splits the complex.
  for (const ChainMap& b : B) {
    ChainMap f = b;
    int steps = 1;
    while (steps < 2 * D) {
      f = chain_compose(F, f, f);
      steps *= 2;
    }
    bool zero = is_zero_map(f.f1) && is_zero_map(f.f0);
    bool unit = repmap_invertible(F, f.f1) && repmap_invertible(F, f.f0);
    if (!zero && !unit) return false;
  }
  return true;
}

u128 proj_sum_aut_order(const Algebra& A, const std::vector<int>& mult) {
  uint32_t p = A.field().p;
  long dim_end = 0;
  long dim_ss = 0;
  int n = A.num_vertices();
  for (int i = 0; i < n; ++i) {
    dim_ss += long(mult[i]) * mult[i];
    for (int j = 0; j < n; ++j)
      dim_end += long(mult[i]) * mult[j] * A.proj_hom_dim(i, j);
  }
  long rad = dim_end - dim_ss;
  if (rad < 0) throw InternalError("negative radical dimension");
  u128 order = 1;
  for (long k = 0; k < rad; ++k) order *= p;
  for (int i = 0; i < n; ++i) {
    int m = mult[i];
    u128 pm = 1;
    for (int k = 0; k < m; ++k) pm *= p;
    u128 pk = 1;
    for (int k = 0; k < m; ++k) {
      order *= (pm - pk);
      pk *= p;
    }
  }
  return order;
}

namespace {

struct ScanSpace {
  std::vector<RepMap> B10, B01;
  std::vector<std::vector<uint8_t>> entry10, entry01;  // serialization entries
  int K10 = 0, K01 = 0;
  ProjSum p1, p0;
};

ScanSpace build_scan_space(const Algebra& A, const std::vector<int>& e1,
                           const std::vector<int>& e0, bool radical_only) {
  ScanSpace S;
  S.p1 = A.proj_sum(e1);
  S.p0 = A.proj_sum(e0);
  S.B10 = module_hom_basis(A, S.p1, S.p0, radical_only);
  S.B01 = module_hom_basis(A, S.p0, S.p1, radical_only);
  S.K10 = int(S.B10.size());
  S.K01 = int(S.B01.size());
  for (const RepMap& b : S.B10) {
    std::vector<uint8_t> e;
    for (const Mat& m : b.f) e.insert(e.end(), m.a.begin(), m.a.end());
    S.entry10.push_back(std::move(e));
  }
  for (const RepMap& b : S.B01) {
    std::vector<uint8_t> e;
    for (const Mat& m : b.f) e.insert(e.end(), m.a.begin(), m.a.end());
    S.entry01.push_back(std::move(e));
  }
  return S;
}

struct ScanContext {
  ScanSpace S;
  std::vector<Mat> actions;  // generator actions on stacked coordinates
  u128 group_order = 1;
  int K = 0;
};

ScanContext build_scan_context(const Algebra& A, const std::vector<int>& e1,
                               const std::vector<int>& e0, bool radical_only) {
  const PrimeField& F = A.field();
  uint32_t p = F.p;
  ScanContext ctx;
  ctx.S = build_scan_space(A, e1, e0, radical_only);
  ScanSpace& S = ctx.S;
  ctx.K = S.K10 + S.K01;
  const int K = ctx.K;
  std::vector<Mat>& actions = ctx.actions;
  auto coords10 = [&](const RepMap& f) {
    return module_hom_coords(A, S.p1, S.p0, f, radical_only);
  };
  auto coords01 = [&](const RepMap& f) {
    return module_hom_coords(A, S.p0, S.p1, f, radical_only);
  };
  auto add_generator = [&](bool degree1, const RepMap& g, const RepMap& ginv) {
    Mat act(K, K);
    for (int k = 0; k < S.K10; ++k) {
      RepMap img = degree1 ? compose(F, S.B10[k], ginv)
                           : compose(F, g, S.B10[k]);
      Vec c = coords10(img);
      for (int r = 0; r < S.K10; ++r) act.at(r, k) = c[r];
    }
    for (int k = 0; k < S.K01; ++k) {
      RepMap img = degree1 ? compose(F, g, S.B01[k])
                           : compose(F, S.B01[k], ginv);
      Vec c = coords01(img);
      for (int r = 0; r < S.K01; ++r) act.at(S.K10 + r, S.K10 + k) = c[r];
    }
    actions.push_back(std::move(act));
  };
  auto gens_for = [&](const ProjSum& ps, bool degree1) {
    // Transvections 1 + (basis element with a nontrivial slot move or a
    // radical loop), plus a primitive-root scaling of each slot.
    std::vector<RepMap> endb = module_hom_basis(A, ps, ps, false);
    size_t idx = 0;
    for_each_hom_slot(A, ps, ps, false,
                      [&](int i, int c, int j, int c2, int k) {
                        const RepMap& phi = endb[idx++];
                        bool ident = (i == j && c == c2 &&
                                      A.projective_paths(j, i)[k].empty());
                        if (ident) return;
                        RepMap g = repmap_add(F, identity_map(ps.rep), phi);
                        auto gi = repmap_inverse(F, g);
                        if (!gi)
                          throw InternalError("transvection not invertible");
                        add_generator(degree1, g, *gi);
                      });
    if (p > 2) {
      uint32_t rho = F.primitive_root();
      for (int i = 0; i < A.num_vertices(); ++i) {
        for (int c = 0; c < ps.mult[i]; ++c) {
          RepMap g = identity_map(ps.rep);
          for (int v = 0; v < A.num_vertices(); ++v) {
            int d = A.projective(i).dims[v];
            int base = ps.block_start[v][i] + c * d;
            for (int r = 0; r < d; ++r)
              for (int cc = 0; cc < ps.rep.dims[v]; ++cc)
                g.f[v].at(base + r, cc) =
                    uint8_t(F.mul(g.f[v].at(base + r, cc), rho));
          }
          auto gi = repmap_inverse(F, g);
          add_generator(degree1, g, *gi);
        }
      }
    }
  };
  gens_for(S.p1, true);
  gens_for(S.p0, false);
  ctx.group_order = proj_sum_aut_order(A, e1) * proj_sum_aut_order(A, e0);
  return ctx;
}

bool square_zero_coords(const Algebra& A, const ScanSpace& S, const Vec& c) {
  const PrimeField& F = A.field();
  RepMap d1 = zero_map(S.p1.rep, S.p0.rep);
  RepMap d0 = zero_map(S.p0.rep, S.p1.rep);
  for (int k = 0; k < S.K10; ++k) d1 = repmap_axpy(F, d1, c[k], S.B10[k]);
  for (int k = 0; k < S.K01; ++k)
    d0 = repmap_axpy(F, d0, c[S.K10 + k], S.B01[k]);
  for (size_t v = 0; v < d1.f.size(); ++v) {
    if (!mat_mul(F, d0.f[v], d1.f[v]).is_zero()) return false;
    if (!mat_mul(F, d1.f[v], d0.f[v]).is_zero()) return false;
  }
  return true;
}

// Serialization entries of the named differential pair, d1 block before d0.
std::vector<uint8_t> scan_key(const PrimeField& F, const ScanSpace& S,
                              const Vec& c) {
  size_t len10 = S.entry10.empty() ? 0 : S.entry10[0].size();
  size_t len01 = S.entry01.empty() ? 0 : S.entry01[0].size();
  std::vector<uint8_t> key(len10 + len01, 0);
  for (int k = 0; k < S.K10; ++k) {
    if (!c[k]) continue;
    for (size_t t = 0; t < len10; ++t)
      key[t] = uint8_t(F.add(key[t], F.mul(c[k], S.entry10[k][t])));
  }
  for (int k = 0; k < S.K01; ++k) {
    if (!c[S.K10 + k]) continue;
    for (size_t t = 0; t < len01; ++t)
      key[len10 + t] =
          uint8_t(F.add(key[len10 + t], F.mul(c[S.K10 + k], S.entry01[k][t])));
  }
  return key;
}

Complex2 complex_from_coords(const Algebra& A, const ScanSpace& S,
                             const std::vector<int>& e1,
                             const std::vector<int>& e0, const Vec& c) {
  const PrimeField& F = A.field();
  RepMap d1 = zero_map(S.p1.rep, S.p0.rep);
  RepMap d0 = zero_map(S.p0.rep, S.p1.rep);
  for (int k = 0; k < S.K10; ++k) d1 = repmap_axpy(F, d1, c[k], S.B10[k]);
  for (int k = 0; k < S.K01; ++k)
    d0 = repmap_axpy(F, d0, c[S.K10 + k], S.B01[k]);
  return mk_complex(A, e1, e0, std::move(d1), std::move(d0));
}

std::vector<ScanClass> scan_classes(const Algebra& A,
                                    const std::vector<int>& e1,
                                    const std::vector<int>& e0,
                                    bool radical_only, uint64_t max_enum) {
  const PrimeField& F = A.field();
  uint32_t p = F.p;
  ScanContext ctx = build_scan_context(A, e1, e0, radical_only);
  const ScanSpace& S = ctx.S;
  const int K = ctx.K;
  auto pts = checked_pow(p, K, max_enum);
  if (!pts)
    throw CapacityError("differential space p^" + std::to_string(K) +
                        " exceeds the enumeration cap");
  uint64_t npts = *pts;

  auto unpack = [&](uint64_t idx) {
    Vec c(K);
    for (int k = K - 1; k >= 0; --k) {
      c[k] = uint8_t(idx % p);
      idx /= p;
    }
    return c;
  };
  auto pack = [&](const Vec& c) {
    uint64_t idx = 0;
    for (int k = 0; k < K; ++k) idx = idx * p + c[k];
    return idx;
  };

  std::vector<bool> visited(npts, false);
  std::vector<ScanClass> out;
  std::vector<uint64_t> queue;
  for (uint64_t base = 0; base < npts; ++base) {
    if (visited[base]) continue;
    Vec c0 = unpack(base);
    if (!square_zero_coords(A, S, c0)) {
      visited[base] = true;
      continue;
    }
    visited[base] = true;
    queue.clear();
    queue.push_back(base);
    uint64_t orbit = 0;
    std::vector<uint8_t> best_key = scan_key(F, S, c0);
    Vec best = c0;
    size_t head = 0;
    while (head < queue.size()) {
      uint64_t idx = queue[head++];
      ++orbit;
      Vec c = unpack(idx);
      if (idx != base) {
        std::vector<uint8_t> key = scan_key(F, S, c);
        if (key < best_key) {
          best_key = std::move(key);
          best = c;
        }
      }
      for (const Mat& act : ctx.actions) {
        Vec nc = mat_vec(F, act, c);
        uint64_t nidx = pack(nc);
        if (!visited[nidx]) {
          visited[nidx] = true;
          queue.push_back(nidx);
        }
      }
    }
    ScanClass cls;
    cls.rep = complex_from_coords(A, S, e1, e0, best);
    cls.orbit_size = orbit;
    if (ctx.group_order % orbit != 0)
      throw InternalError("orbit size does not divide the group order");
    cls.aut_c2 = ctx.group_order / orbit;
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

std::vector<ScanClass> enumerate_radical(const Algebra& A,
                                         const std::vector<int>& e1,
                                         const std::vector<int>& e0,
                                         uint64_t max_enum) {
  return scan_classes(A, e1, e0, true, max_enum);
}

std::vector<ScanClass> enumerate_all(const Algebra& A,
                                     const std::vector<int>& e1,
                                     const std::vector<int>& e0,
                                     uint64_t max_enum) {
  return scan_classes(A, e1, e0, false, max_enum);
}

ScanClass canonicalize_radical(const Algebra& A, const Complex2& Xr,
                               uint64_t max_enum) {
  if (!is_radical_complex(A, Xr))
    throw UsageError("canonical labels are defined for radical complexes only");
  const PrimeField& F = A.field();
  ScanContext ctx = build_scan_context(A, Xr.c1.mult, Xr.c0.mult, true);
  const ScanSpace& S = ctx.S;
  Vec start = module_hom_coords(A, S.p1, S.p0, Xr.d1, true);
  Vec c01 = module_hom_coords(A, S.p0, S.p1, Xr.d0, true);
  start.insert(start.end(), c01.begin(), c01.end());

  // Walk only the orbit of the given point; cost scales with the orbit, not
  // with the ambient coordinate space.
  std::set<Vec> visited{start};
  std::vector<Vec> queue{start};
  std::vector<uint8_t> best_key = scan_key(F, S, start);
  Vec best = start;
  size_t head = 0;
  while (head < queue.size()) {
    Vec c = queue[head++];
    for (const Mat& act : ctx.actions) {
      Vec nc = mat_vec(F, act, c);
      if (!visited.insert(nc).second) continue;
      if (visited.size() > max_enum)
        throw CapacityError("orbit size exceeds the enumeration cap");
      std::vector<uint8_t> key = scan_key(F, S, nc);
      if (key < best_key) {
        best_key = std::move(key);
        best = nc;
      }
      queue.push_back(nc);
    }
  }
  ScanClass cls;
  cls.rep = complex_from_coords(A, S, Xr.c1.mult, Xr.c0.mult, best);
  cls.orbit_size = visited.size();
  if (ctx.group_order % cls.orbit_size != 0)
    throw InternalError("orbit size does not divide the group order");
  cls.aut_c2 = ctx.group_order / cls.orbit_size;
  return cls;
}

}  // namespace hall2p
