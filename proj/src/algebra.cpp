#include "algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

namespace hall2p {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool parse_long(const std::string& s, long& out) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  errno = 0;
  char* end = nullptr;
  long v = std::strtol(s.c_str(), &end, 10);
  if (errno != 0 || *end != '\0') return false;
  out = v;
  return true;
}

Mat hcat(const Mat& A, const Mat& B) {
  if (A.cols == 0) return B;
  if (B.cols == 0) return A;
  Mat C(A.rows, A.cols + B.cols);
  for (int r = 0; r < A.rows; ++r) {
    for (int c = 0; c < A.cols; ++c) C.at(r, c) = A.at(r, c);
    for (int c = 0; c < B.cols; ++c) C.at(r, A.cols + c) = B.at(r, c);
  }
  return C;
}

void place_block(Mat& dest, int r0, int c0, const Mat& src) {
  for (int r = 0; r < src.rows; ++r)
    for (int c = 0; c < src.cols; ++c) dest.at(r0 + r, c0 + c) = src.at(r, c);
}

// Column echelon form (deterministic): nonzero columns spanning the same
// space, plus the leading row of each column.
struct ColEchelon {
  Mat U;
  std::vector<int> lead_rows;
};

ColEchelon col_echelon(const PrimeField& F, const Mat& A) {
  Mat T = transpose(A);
  std::vector<int> pivots = row_reduce(F, T);
  ColEchelon out;
  out.U = Mat(A.rows, int(pivots.size()));
  out.lead_rows = pivots;
  for (size_t k = 0; k < pivots.size(); ++k)
    for (int r = 0; r < A.rows; ++r) out.U.at(r, int(k)) = T.at(int(k), r);
  return out;
}

}  // namespace

Mat solve_full_col(const PrimeField& F, const Mat& U, const Mat& B) {
  Mat aug = hcat(U, B);
  std::vector<int> pivots = row_reduce(F, aug);
  std::vector<int> pivot_of_col(U.cols, -1);
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= U.cols)
      throw InternalError("subspace is not closed under the arrow action");
    pivot_of_col[pivots[r]] = int(r);
  }
  if (int(pivots.size()) != U.cols)
    throw InternalError("inclusion matrix does not have full column rank");
  Mat X(U.cols, B.cols);
  for (int c = 0; c < U.cols; ++c)
    for (int j = 0; j < B.cols; ++j)
      X.at(c, j) = aug.at(pivot_of_col[c], U.cols + j);
  return X;
}

namespace {

Vec apply_path(const PrimeField& F, const Rep& M, const std::vector<int>& path,
               Vec v) {
  for (int h : path) v = mat_vec(F, M.x[h], v);
  return v;
}

// Materialized path window from one start vertex: all composable arrow
// sequences of length <= L, grouped by end vertex in (length, lex) order.
std::vector<std::vector<std::vector<int>>> enumerate_paths(const Quiver& Q,
                                                           int start, int L) {
  int n = int(Q.vertices.size());
  std::vector<std::vector<std::vector<int>>> by_end(n);
  std::vector<std::pair<std::vector<int>, int>> level;
  level.push_back({{}, start});
  by_end[start].push_back({});
  size_t total = 1;
  for (int len = 1; len <= L; ++len) {
    std::vector<std::pair<std::vector<int>, int>> next;
    for (const auto& [p, v] : level) {
      for (int h = 0; h < int(Q.arrows.size()); ++h) {
        if (Q.arrows[h].src != v) continue;
        std::vector<int> np = p;
        np.push_back(h);
        by_end[Q.arrows[h].dst].push_back(np);
        next.push_back({std::move(np), Q.arrows[h].dst});
        if (++total > 200000)
          throw CapacityError("path enumeration exceeded 200000 paths; lower "
                              "the pathcap or simplify the quiver");
      }
    }
    level = std::move(next);
    if (level.empty()) break;
  }
  return by_end;
}

int longest_acyclic_path(const Quiver& Q) {
  int n = int(Q.vertices.size());
  std::vector<int> indeg(n, 0);
  for (const auto& a : Q.arrows) indeg[a.dst]++;
  std::vector<int> order, depth(n, 0);
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (size_t k = 0; k < order.size(); ++k) {
    int v = order[k];
    for (const auto& a : Q.arrows) {
      if (a.src != v) continue;
      depth[a.dst] = std::max(depth[a.dst], depth[v] + 1);
      if (--indeg[a.dst] == 0) order.push_back(a.dst);
    }
  }
  if (int(order.size()) != n)
    throw InternalError("acyclic longest-path called on a cyclic quiver");
  return *std::max_element(depth.begin(), depth.end());
}

// Quotient of one path window by the materialized relation ideal; keeps the
// reduction data so arrow actions can be expressed in the surviving basis.
struct PathSpace {
  std::vector<std::vector<int>> paths;
  std::map<std::vector<int>, int> index;
  Mat R;                    // rref rows over length-reversed coordinates
  std::vector<int> pivots;  // reversed-coordinate pivot columns
  std::vector<int> basis;   // surviving original indices, ascending
  std::vector<int> basis_pos;

  int n() const { return int(paths.size()); }

  Vec reduce(const PrimeField& F, const Vec& full) const {
    Vec rev(full.size());
    for (int j = 0; j < n(); ++j) rev[n() - 1 - j] = full[j];
    for (size_t r = 0; r < pivots.size(); ++r) {
      uint32_t coef = rev[pivots[r]];
      if (!coef) continue;
      for (int j = 0; j < n(); ++j)
        rev[j] = uint8_t(F.sub(rev[j], F.mul(coef, R.at(int(r), j))));
    }
    Vec out(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) out[k] = rev[n() - 1 - basis[k]];
    return out;
  }
};

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

long det_int(std::vector<std::vector<long>> m) {
  // Bareiss fraction-free elimination; every division below is exact.
  int n = int(m.size());
  if (n == 0) return 1;
  long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

int Quiver::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return int(i);
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return int(i);
  return -1;
}

bool Quiver::is_cyclic() const {
  int n = int(vertices.size());
  std::vector<int> color(n, 0);
  std::function<bool(int)> dfs = [&](int v) {
    color[v] = 1;
    for (const auto& a : arrows) {
      if (a.src != v) continue;
      if (color[a.dst] == 1) return true;
      if (color[a.dst] == 0 && dfs(a.dst)) return true;
    }
    color[v] = 2;
    return false;
  };
  for (int v = 0; v < n; ++v)
    if (color[v] == 0 && dfs(v)) return true;
  return false;
}

int Rep::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

Algebra Algebra::parse(const std::string& text) {
  Algebra A;
  A.source_ = text;

  struct RawArrow {
    std::string name, src, dst;
    int line;
  };
  struct RawTerm {
    long coeff;
    std::vector<std::string> names;
  };
  struct RawRel {
    std::vector<RawTerm> terms;
    int line;
  };

  std::optional<uint32_t> field_p;
  int field_line = 0;
  std::vector<RawArrow> raw_arrows;
  std::vector<RawRel> raw_rels;

  std::istringstream in(text);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    if (head == "field") {
      if (field_p) throw ParseError(ln, "duplicate 'field' line");
      long v;
      if (toks.size() != 2 || !parse_long(toks[1], v) || v < 0)
        throw ParseError(ln, "expected 'field <prime>'");
      field_p = uint32_t(v);
      field_line = ln;
    } else if (head == "pathcap") {
      if (A.pathcap_) throw ParseError(ln, "duplicate 'pathcap' line");
      long v;
      if (toks.size() != 2 || !parse_long(toks[1], v) || v < 1)
        throw ParseError(ln, "expected 'pathcap <positive integer>'");
      A.pathcap_ = int(v);
    } else if (head == "vertex") {
      if (toks.size() < 2)
        throw ParseError(ln, "expected 'vertex <name> ...'");
      for (size_t k = 1; k < toks.size(); ++k) {
        if (!valid_name(toks[k]))
          throw ParseError(ln, "bad vertex name '" + toks[k] +
                                   "' (use letters, digits, underscore)");
        if (A.quiver_.vertex_index(toks[k]) >= 0)
          throw ParseError(ln, "duplicate vertex '" + toks[k] + "'");
        A.quiver_.vertices.push_back(toks[k]);
      }
    } else if (head == "arrow") {
      if (toks.size() != 4)
        throw ParseError(ln, "expected 'arrow <name> <src> <dst>'");
      if (!valid_name(toks[1]))
        throw ParseError(ln, "bad arrow name '" + toks[1] + "'");
      for (const auto& ra : raw_arrows)
        if (ra.name == toks[1])
          throw ParseError(ln, "duplicate arrow '" + toks[1] + "'");
      raw_arrows.push_back({toks[1], toks[2], toks[3], ln});
    } else if (head == "relation") {
      std::string rest;
      for (size_t k = 1; k < toks.size(); ++k) {
        if (k > 1) rest += " ";
        rest += toks[k];
      }
      if (rest.empty()) throw ParseError(ln, "empty relation");
      RawRel rel;
      rel.line = ln;
      std::string piece;
      std::istringstream terms(rest);
      while (std::getline(terms, piece, '+')) {
        piece = trim(piece);
        if (piece.empty())
          throw ParseError(ln, "empty term in relation");
        size_t star = piece.find('*');
        if (star == std::string::npos ||
            piece.find('*', star + 1) != std::string::npos)
          throw ParseError(ln, "relation term must look like <coeff>*<path>");
        RawTerm term;
        if (!parse_long(trim(piece.substr(0, star)), term.coeff))
          throw ParseError(ln, "bad coefficient in relation term '" + piece +
                                   "'");
        std::string pathstr = trim(piece.substr(star + 1));
        std::istringstream pq(pathstr);
        std::string nm;
        while (std::getline(pq, nm, '.')) {
          if (!valid_name(nm))
            throw ParseError(ln,
                             "bad arrow name '" + nm + "' in relation path");
          term.names.push_back(nm);
        }
        if (term.names.empty())
          throw ParseError(ln, "empty path in relation term");
        rel.terms.push_back(std::move(term));
      }
      raw_rels.push_back(rel);
    } else {
      throw ParseError(ln, "unknown directive '" + head + "'");
    }
  }

  if (!field_p) throw UsageError("missing 'field' line");
  try {
    A.field_ = PrimeField(*field_p);
  } catch (const UsageError& e) {
    throw ParseError(field_line, e.what());
  }
  if (A.quiver_.vertices.empty())
    throw UsageError("no vertices declared");

  for (const auto& ra : raw_arrows) {
    int s = A.quiver_.vertex_index(ra.src);
    int d = A.quiver_.vertex_index(ra.dst);
    if (s < 0)
      throw ParseError(ra.line, "unknown vertex '" + ra.src + "'");
    if (d < 0)
      throw ParseError(ra.line, "unknown vertex '" + ra.dst + "'");
    A.quiver_.arrows.push_back({ra.name, s, d});
  }

  for (const auto& rr : raw_rels) {
    Relation rel;
    for (const auto& rt : rr.terms) {
      RelTerm term;
      for (const auto& nm : rt.names) {
        int h = A.quiver_.arrow_index(nm);
        if (h < 0)
          throw ParseError(rr.line, "unknown arrow '" + nm + "' in relation");
        term.arrows.push_back(h);
      }
      if (term.arrows.size() < 2)
        throw ParseError(rr.line, "relation path needs at least two arrows");
      for (size_t k = 0; k + 1 < term.arrows.size(); ++k)
        if (A.quiver_.arrows[term.arrows[k]].dst !=
            A.quiver_.arrows[term.arrows[k + 1]].src)
          throw ParseError(rr.line, "relation path is not composable");
      long c = rt.coeff % long(A.field_.p);
      if (c < 0) c += A.field_.p;
      if (c == 0)
        throw ParseError(rr.line, "relation coefficient vanishes in the field");
      term.coeff = uint32_t(c);
      int s = A.quiver_.arrows[term.arrows.front()].src;
      int d = A.quiver_.arrows[term.arrows.back()].dst;
      if (rel.src < 0) {
        rel.src = s;
        rel.dst = d;
      } else if (rel.src != s || rel.dst != d) {
        throw ParseError(rr.line, "relation terms are not parallel paths");
      }
      rel.terms.push_back(term);
    }
    A.relations_.push_back(rel);
  }

  if (A.quiver_.is_cyclic() && !A.pathcap_)
    throw UsageError("cyclic quiver requires a 'pathcap' line");

  A.build_projectives();
  A.build_cartan();
  return A;
}

std::string Algebra::source_with_field(const std::string& text, uint32_t p) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  bool replaced = false;
  while (std::getline(in, line)) {
    std::string code = line.substr(0, line.find('#'));
    std::vector<std::string> toks = split_ws(code);
    if (!replaced && !toks.empty() && toks[0] == "field") {
      out << "field " << p << "\n";
      replaced = true;
    } else {
      out << line << "\n";
    }
  }
  if (!replaced) return "field " + std::to_string(p) + "\n" + out.str();
  return out.str();
}

void Algebra::build_projectives() {
  const Quiver& Q = quiver_;
  const PrimeField& F = field_;
  int n = num_vertices();
  int L = pathcap_ ? *pathcap_ : longest_acyclic_path(Q);

  // Path windows from every vertex (suffix windows are needed for the ideal
  // generators as well as the projectives themselves).
  std::vector<std::vector<std::vector<std::vector<int>>>> win(n);
  for (int v = 0; v < n; ++v) win[v] = enumerate_paths(Q, v, L);

  proj_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    std::vector<PathSpace> spaces(n);
    for (int v = 0; v < n; ++v) {
      PathSpace& ps = spaces[v];
      ps.paths = win[i][v];
      for (int k = 0; k < ps.n(); ++k) ps.index[ps.paths[k]] = k;

      // Ideal generators landing in this window: prefix * relation * suffix.
      std::vector<Vec> gens;
      for (const auto& rel : relations_) {
        for (const auto& pre : win[i][rel.src]) {
          for (const auto& suf : win[rel.dst][v]) {
            Vec g(ps.paths.size(), 0);
            bool nonzero = false;
            for (const auto& term : rel.terms) {
              if (int(pre.size() + term.arrows.size() + suf.size()) > L)
                continue;  // beyond the window: already treated as zero
              std::vector<int> full = pre;
              full.insert(full.end(), term.arrows.begin(), term.arrows.end());
              full.insert(full.end(), suf.begin(), suf.end());
              auto it = ps.index.find(full);
              if (it == ps.index.end())
                throw InternalError("composable path missing from window");
              g[it->second] = uint8_t(F.add(g[it->second], term.coeff));
              nonzero = true;
            }
            if (nonzero) gens.push_back(std::move(g));
          }
        }
      }

      // Reduce with the longest paths as pivots so the surviving basis
      // prefers short paths; realized by reversing the coordinate order.
      Mat G(int(gens.size()), ps.n());
      for (size_t r = 0; r < gens.size(); ++r)
        for (int j = 0; j < ps.n(); ++j)
          G.at(int(r), ps.n() - 1 - j) = gens[r][j];
      ps.pivots = row_reduce(F, G);
      ps.R = std::move(G);
      std::vector<char> is_pivot(ps.n(), 0);
      for (int c : ps.pivots) is_pivot[c] = 1;
      ps.basis_pos.assign(ps.n(), -1);
      for (int j = 0; j < ps.n(); ++j) {
        if (is_pivot[ps.n() - 1 - j]) continue;
        ps.basis_pos[j] = int(ps.basis.size());
        ps.basis.push_back(j);
      }
    }

    // Window stability: a surviving path of maximal materialized length with
    // an extendable endpoint means the quotient may not have settled.
    for (int v = 0; v < n; ++v) {
      for (int k : spaces[v].basis) {
        if (int(spaces[v].paths[k].size()) != L) continue;
        for (const auto& a : Q.arrows)
          if (a.src == v)
            throw CapacityError(
                "pathcap exhausted before the path space stabilizes");
      }
    }

    ProjInfo info;
    info.rep.dims.resize(n);
    info.basis_paths.resize(n);
    for (int v = 0; v < n; ++v) {
      info.rep.dims[v] = int(spaces[v].basis.size());
      for (int k : spaces[v].basis)
        info.basis_paths[v].push_back(spaces[v].paths[k]);
    }
    info.rep.x.resize(Q.arrows.size());
    for (size_t h = 0; h < Q.arrows.size(); ++h) {
      int s = Q.arrows[h].src, t = Q.arrows[h].dst;
      Mat xh(info.rep.dims[t], info.rep.dims[s]);
      for (int col = 0; col < info.rep.dims[s]; ++col) {
        std::vector<int> ext = info.basis_paths[s][col];
        ext.push_back(int(h));
        auto it = spaces[t].index.find(ext);
        if (it == spaces[t].index.end())
          throw InternalError("extended path missing from window");
        Vec full(spaces[t].n(), 0);
        full[it->second] = 1;
        Vec red = spaces[t].reduce(F, full);
        for (size_t r = 0; r < red.size(); ++r) xh.at(int(r), col) = red[r];
      }
      info.rep.x[size_t(h)] = std::move(xh);
    }
    proj_[i] = std::move(info);
  }
}

void Algebra::build_cartan() {
  int n = num_vertices();
  cartan_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cartan_[i][j] = proj_[j].rep.dims[i];
}

std::string Algebra::hash() const {
  std::string canon;
  std::istringstream in(source_);
  std::string line;
  while (std::getline(in, line)) {
    size_t h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    for (size_t k = 0; k < toks.size(); ++k) {
      if (k) canon += ' ';
      canon += toks[k];
    }
    canon += '\n';
  }
  uint64_t h64 = fnv1a(canon);
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h64);
  return buf;
}

Rep Algebra::simple(int i) const {
  Rep S;
  S.dims.assign(num_vertices(), 0);
  S.dims[i] = 1;
  for (const auto& a : quiver_.arrows)
    S.x.push_back(Mat(S.dims[a.dst], S.dims[a.src]));
  return S;
}

RepMap Algebra::hom_from_projective(int i, const Rep& M,
                                    const Vec& gen_value) const {
  if (int(gen_value.size()) != M.dims[i])
    throw UsageError("generator image has the wrong length");
  RepMap f;
  f.f.resize(num_vertices());
  for (int v = 0; v < num_vertices(); ++v) {
    const auto& paths = proj_[i].basis_paths[v];
    Mat fv(M.dims[v], int(paths.size()));
    for (size_t k = 0; k < paths.size(); ++k) {
      Vec w = apply_path(field_, M, paths[k], gen_value);
      for (size_t r = 0; r < w.size(); ++r) fv.at(int(r), int(k)) = w[r];
    }
    f.f[v] = std::move(fv);
  }
  return f;
}

std::vector<RepMap> Algebra::hom_basis(const Rep& M, const Rep& N) const {
  int n = num_vertices();
  std::vector<int> off(n + 1, 0);
  for (int v = 0; v < n; ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
  int vars = off[n];
  int rows = 0;
  for (const auto& a : quiver_.arrows) rows += N.dims[a.dst] * M.dims[a.src];
  Mat A(rows, vars);
  int row = 0;
  for (size_t h = 0; h < quiver_.arrows.size(); ++h) {
    int s = quiver_.arrows[h].src, t = quiver_.arrows[h].dst;
    const Mat& xM = M.x[h];
    const Mat& xN = N.x[h];
    for (int r = 0; r < N.dims[t]; ++r) {
      for (int c = 0; c < M.dims[s]; ++c) {
        for (int a2 = 0; a2 < M.dims[t]; ++a2) {
          int var = off[t] + r * M.dims[t] + a2;
          A.at(row, var) = uint8_t(field_.add(A.at(row, var), xM.at(a2, c)));
        }
        for (int b = 0; b < N.dims[s]; ++b) {
          int var = off[s] + b * M.dims[s] + c;
          A.at(row, var) = uint8_t(field_.sub(A.at(row, var), xN.at(r, b)));
        }
        ++row;
      }
    }
  }
  std::vector<Vec> ker = kernel_basis(field_, A);
  std::vector<RepMap> out;
  for (const Vec& k : ker) {
    RepMap f;
    f.f.resize(n);
    for (int v = 0; v < n; ++v) {
      Mat fv(N.dims[v], M.dims[v]);
      for (int r = 0; r < N.dims[v]; ++r)
        for (int c = 0; c < M.dims[v]; ++c)
          fv.at(r, c) = k[off[v] + r * M.dims[v] + c];
      f.f[v] = std::move(fv);
    }
    out.push_back(std::move(f));
  }
  return out;
}

int Algebra::hom_dim(const Rep& M, const Rep& N) const {
  return int(hom_basis(M, N).size());
}

SubRep Algebra::radical(const Rep& M) const {
  int n = num_vertices();
  std::vector<Mat> spans(n);
  for (int v = 0; v < n; ++v) spans[v] = Mat(M.dims[v], 0);
  for (size_t h = 0; h < quiver_.arrows.size(); ++h)
    spans[quiver_.arrows[h].dst] =
        hcat(spans[quiver_.arrows[h].dst], M.x[h]);
  return span_subrep(field_, quiver_, M, spans);
}

std::vector<int> Algebra::top_dims(const Rep& M) const {
  SubRep r = radical(M);
  std::vector<int> out(num_vertices());
  for (int v = 0; v < num_vertices(); ++v)
    out[v] = M.dims[v] - r.sub.dims[v];
  return out;
}

ProjSum Algebra::proj_sum(const std::vector<int>& mult) const {
  int n = num_vertices();
  if (int(mult.size()) != n)
    throw UsageError("multiplicity vector has the wrong length");
  ProjSum ps;
  ps.mult = mult;
  ps.rep.dims.assign(n, 0);
  ps.block_start.assign(n, std::vector<int>(n, 0));
  for (int v = 0; v < n; ++v) {
    int at = 0;
    for (int i = 0; i < n; ++i) {
      ps.block_start[v][i] = at;
      at += mult[i] * proj_[i].rep.dims[v];
    }
    ps.rep.dims[v] = at;
  }
  ps.rep.x.resize(quiver_.arrows.size());
  for (size_t h = 0; h < quiver_.arrows.size(); ++h) {
    int s = quiver_.arrows[h].src, t = quiver_.arrows[h].dst;
    Mat xh(ps.rep.dims[t], ps.rep.dims[s]);
    for (int i = 0; i < n; ++i) {
      const Mat& blk = proj_[i].rep.x[h];
      for (int c = 0; c < mult[i]; ++c)
        place_block(xh, ps.block_start[t][i] + c * proj_[i].rep.dims[t],
                    ps.block_start[s][i] + c * proj_[i].rep.dims[s], blk);
    }
    ps.rep.x[h] = std::move(xh);
  }
  return ps;
}

RepMap Algebra::proj_sum_map(const ProjSum& src, const Rep& N,
                             const std::vector<std::vector<Vec>>& gens) const {
  int n = num_vertices();
  if (int(gens.size()) != n)
    throw UsageError("generator table has the wrong shape");
  for (int i = 0; i < n; ++i)
    if (int(gens[i].size()) != src.mult[i])
      throw UsageError("generator table has the wrong shape");
  RepMap f;
  f.f.resize(n);
  for (int v = 0; v < n; ++v) {
    Mat fv(N.dims[v], src.rep.dims[v]);
    for (int i = 0; i < n; ++i) {
      int dP = proj_[i].rep.dims[v];
      const auto& paths = proj_[i].basis_paths[v];
      for (int c = 0; c < src.mult[i]; ++c) {
        for (int k = 0; k < dP; ++k) {
          Vec w = apply_path(field_, N, paths[k], gens[i][c]);
          int col = src.block_start[v][i] + c * dP + k;
          for (size_t r = 0; r < w.size(); ++r) fv.at(int(r), col) = w[r];
        }
      }
    }
    f.f[v] = std::move(fv);
  }
  return f;
}

std::pair<ProjSum, RepMap> Algebra::projective_cover(const Rep& M) const {
  int n = num_vertices();
  SubRep rad = radical(M);
  std::vector<std::vector<Vec>> gens(n);
  std::vector<int> mult(n, 0);
  for (int v = 0; v < n; ++v) {
    ColEchelon ech = col_echelon(field_, rad.incl[v]);
    std::vector<char> is_lead(M.dims[v], 0);
    for (int r : ech.lead_rows) is_lead[r] = 1;
    for (int r = 0; r < M.dims[v]; ++r) {
      if (is_lead[r]) continue;
      Vec e(M.dims[v], 0);
      e[r] = 1;
      gens[v].push_back(std::move(e));
      ++mult[v];
    }
  }
  ProjSum ps = proj_sum(mult);
  RepMap f = proj_sum_map(ps, M, gens);
  for (int v = 0; v < n; ++v)
    if (rank(field_, f.f[v]) != M.dims[v])
      throw InternalError("projective cover lift is not surjective");
  return {std::move(ps), std::move(f)};
}

const std::vector<std::vector<long>>& Algebra::cartan_inverse() const {
  if (cartan_inv_) return *cartan_inv_;
  int n = num_vertices();
  std::vector<std::vector<long>> C(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) C[i][j] = cartan_[i][j];
  long det = det_int(C);
  if (det != 1 && det != -1)
    throw UsageError(
        "Cartan matrix is not unimodular; the Euler form is undefined on "
        "simple classes");
  // Adjugate / det, entry by entry via cofactors.
  std::vector<std::vector<long>> inv(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<long>> minor;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<long> row;
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(C[r][c]);
        minor.push_back(std::move(row));
      }
      long cof = minor.empty() ? 1 : det_int(minor);
      if ((i + j) % 2) cof = -cof;
      inv[i][j] = cof * det;  // det is ±1, so this is adj/det
    }
  }
  cartan_inv_ = std::move(inv);
  return *cartan_inv_;
}

long Algebra::euler_form(const std::vector<long>& a,
                         const std::vector<long>& b) const {
  int n = num_vertices();
  if (int(a.size()) != n || int(b.size()) != n)
    throw UsageError("class vector has the wrong length");
  const auto& Cinv = cartan_inverse();
  // <S_u, S_v> = (C^{-T})[u][v] = Cinv[v][u].
  long val = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) val += a[u] * Cinv[v][u] * b[v];
  return val;
}

long Algebra::sym_euler_form(const std::vector<long>& a,
                             const std::vector<long>& b) const {
  return euler_form(a, b) + euler_form(b, a);
}

int Algebra::gldim_probe(int cap) const {
  int best = 0;
  for (int i = 0; i < num_vertices(); ++i) {
    Rep M = simple(i);
    int steps = 0;
    while (M.total_dim() > 0) {
      if (steps >= cap)
        throw UsageError("projective resolution did not terminate within " +
                         std::to_string(cap) + " steps");
      auto [ps, f] = projective_cover(M);
      SubRep K = kernel_subrep(field_, quiver_, ps.rep, M, f);
      M = K.sub;
      ++steps;
    }
    best = std::max(best, steps > 0 ? steps - 1 : 0);
  }
  return best;
}

Rep direct_sum(const Rep& A, const Rep& B) {
  Rep C;
  C.dims.resize(A.dims.size());
  for (size_t v = 0; v < A.dims.size(); ++v) C.dims[v] = A.dims[v] + B.dims[v];
  C.x.resize(A.x.size());
  for (size_t h = 0; h < A.x.size(); ++h) {
    Mat m(A.x[h].rows + B.x[h].rows, A.x[h].cols + B.x[h].cols);
    place_block(m, 0, 0, A.x[h]);
    place_block(m, A.x[h].rows, A.x[h].cols, B.x[h]);
    C.x[h] = std::move(m);
  }
  return C;
}

RepMap compose(const PrimeField& F, const RepMap& g, const RepMap& f) {
  RepMap out;
  out.f.resize(f.f.size());
  for (size_t v = 0; v < f.f.size(); ++v)
    out.f[v] = mat_mul(F, g.f[v], f.f[v]);
  return out;
}

RepMap identity_map(const Rep& M) {
  RepMap out;
  for (int d : M.dims) out.f.push_back(Mat::identity(d));
  return out;
}

bool is_zero_map(const RepMap& f) {
  for (const auto& m : f.f)
    if (!m.is_zero()) return false;
  return true;
}

bool is_module_map(const PrimeField& F, const Quiver& Q, const Rep& M,
                   const Rep& N, const RepMap& f) {
  for (size_t h = 0; h < Q.arrows.size(); ++h) {
    int s = Q.arrows[h].src, t = Q.arrows[h].dst;
    if (mat_mul(F, f.f[t], M.x[h]) != mat_mul(F, N.x[h], f.f[s])) return false;
  }
  return true;
}

SubRep span_subrep(const PrimeField& F, const Quiver& Q, const Rep& M,
                   const std::vector<Mat>& spans) {
  int n = int(M.dims.size());
  std::vector<Mat> U(n);
  for (int v = 0; v < n; ++v) U[v] = col_echelon(F, spans[v]).U;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t h = 0; h < Q.arrows.size(); ++h) {
      int s = Q.arrows[h].src, t = Q.arrows[h].dst;
      if (U[s].cols == 0) continue;
      Mat img = mat_mul(F, M.x[h], U[s]);
      Mat cat = hcat(U[t], img);
      ColEchelon ech = col_echelon(F, cat);
      if (ech.U.cols != U[t].cols) {
        U[t] = ech.U;
        changed = true;
      }
    }
  }
  SubRep out;
  out.incl = U;
  out.sub = sub_rep(F, Q, M, U);
  return out;
}

Rep sub_rep(const PrimeField& F, const Quiver& Q, const Rep& M,
            const std::vector<Mat>& incl) {
  Rep S;
  S.dims.resize(M.dims.size());
  for (size_t v = 0; v < M.dims.size(); ++v) S.dims[v] = incl[v].cols;
  S.x.resize(Q.arrows.size());
  for (size_t h = 0; h < Q.arrows.size(); ++h) {
    int s = Q.arrows[h].src, t = Q.arrows[h].dst;
    S.x[h] = solve_full_col(F, incl[t], mat_mul(F, M.x[h], incl[s]));
  }
  return S;
}

Rep quotient_rep(const PrimeField& F, const Quiver& Q, const Rep& M,
                 const std::vector<Mat>& incl, std::vector<Mat>* proj_out) {
  int n = int(M.dims.size());
  std::vector<Mat> T(n), Tinv(n);
  std::vector<int> ksub(n), kq(n);
  std::vector<std::vector<int>> wrows(n);
  for (int v = 0; v < n; ++v) {
    ColEchelon ech = col_echelon(F, incl[v]);
    if (ech.U.cols != incl[v].cols)
      throw InternalError("inclusion matrix does not have full column rank");
    std::vector<char> is_lead(M.dims[v], 0);
    for (int r : ech.lead_rows) is_lead[r] = 1;
    ksub[v] = ech.U.cols;
    kq[v] = M.dims[v] - ksub[v];
    Mat t(M.dims[v], M.dims[v]);
    place_block(t, 0, 0, ech.U);
    int c = ksub[v];
    for (int r = 0; r < M.dims[v]; ++r) {
      if (is_lead[r]) continue;
      t.at(r, c) = 1;
      wrows[v].push_back(r);
      ++c;
    }
    auto ti = mat_inverse(F, t);
    if (!ti) throw InternalError("basis completion failed to be invertible");
    T[v] = std::move(t);
    Tinv[v] = std::move(*ti);
  }
  Rep Qr;
  Qr.dims.resize(n);
  for (int v = 0; v < n; ++v) Qr.dims[v] = kq[v];
  Qr.x.resize(Q.arrows.size());
  for (size_t h = 0; h < Q.arrows.size(); ++h) {
    int s = Q.arrows[h].src, t = Q.arrows[h].dst;
    Mat full = mat_mul(F, Tinv[t], mat_mul(F, M.x[h], T[s]));
    for (int r = 0; r < kq[t]; ++r)
      for (int c = 0; c < ksub[s]; ++c)
        if (full.at(ksub[t] + r, c) != 0)
          throw InternalError("subspace is not closed under the arrow action");
    Mat blk(kq[t], kq[s]);
    for (int r = 0; r < kq[t]; ++r)
      for (int c = 0; c < kq[s]; ++c)
        blk.at(r, c) = full.at(ksub[t] + r, ksub[s] + c);
    Qr.x[h] = std::move(blk);
  }
  if (proj_out) {
    proj_out->resize(n);
    for (int v = 0; v < n; ++v) {
      Mat pv(kq[v], M.dims[v]);
      for (int r = 0; r < kq[v]; ++r)
        for (int c = 0; c < M.dims[v]; ++c)
          pv.at(r, c) = Tinv[v].at(ksub[v] + r, c);
      (*proj_out)[v] = std::move(pv);
    }
  }
  return Qr;
}

SubRep kernel_subrep(const PrimeField& F, const Quiver& Q, const Rep& M,
                     const Rep& N, const RepMap& f) {
  (void)N;
  int n = int(M.dims.size());
  std::vector<Mat> U(n);
  for (int v = 0; v < n; ++v) {
    std::vector<Vec> ker = kernel_basis(F, f.f[v]);
    Mat uv(M.dims[v], int(ker.size()));
    for (size_t k = 0; k < ker.size(); ++k)
      for (int r = 0; r < M.dims[v]; ++r) uv.at(r, int(k)) = ker[k][r];
    U[v] = std::move(uv);
  }
  SubRep out;
  out.incl = U;
  out.sub = sub_rep(F, Q, M, U);
  return out;
}

}  // namespace hall2p
