#include "lie.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hall2p {

namespace {

u128 umul_checked(u128 a, u128 b) {
  if (a != 0 && b > ~u128(0) / a) throw CapacityError("product exceeds 128 bits");
  return a * b;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// Canonical residue in [0, m), or v itself when m == 0.
int64_t reduce_coef(int64_t v, uint64_t m) {
  if (m == 0) return v;
  int64_t r = v % int64_t(m);
  return r < 0 ? r + int64_t(m) : r;
}

int64_t mul_coef(int64_t a, int64_t b, uint64_t m) {
  if (m == 0) return a * b;
  i128 p = i128(a) * i128(b) % i128(m);
  return reduce_coef(int64_t(p), m);
}

// ext_count * |Aut Zr| / (|Aut X| * |Aut Y| * q^hom_dim), which is the
// coefficient of the middle's orbit function in the normalized product and
// must come out integral; a non-exact division is an InternalError because
// the automorphism factors of the contractible paddings are zero divisors
// mod q - 1 and cannot be cancelled after reduction.
int64_t exact_constant(u128 ext_count, u128 aut_zr, u128 aut_x, u128 aut_y,
                       uint32_t q, int hom_dim) {
  if (ext_count == 0) return 0;
  u128 num = umul_checked(ext_count, aut_zr);
  u128 den = umul_checked(aut_x, aut_y);
  for (int i = 0; i < hom_dim; ++i) den = umul_checked(den, q);
  u128 g = gcd128(num, den);
  num /= g;
  den /= g;
  if (den != 1)
    throw InternalError("structure constant " + u128_str(num) + "/" +
                        u128_str(den) + " is not an integer");
  if (num > u128(INT64_MAX)) throw CapacityError("coefficient exceeds 64 bits");
  return int64_t(num);
}

// F^Z_{XY}, exact when the brute-force budget allows and otherwise (only
// meaningful when the table is reduced) the mod q-1 residue.
int64_t triangle_count(const Algebra& A, const Complex2& X, const Complex2& Y,
                       const Complex2& Z, bool allow_residue,
                       uint64_t max_enum) {
  try {
    u128 n = triangle_count_brute(A, X, Y, Z, max_enum);
    if (n > u128(INT64_MAX))
      throw CapacityError("triangle count exceeds 64 bits");
    return int64_t(n);
  } catch (const CapacityError&) {
    if (!allow_residue) throw;
    return triangle_count_residue(A, X, Y, Z, max_enum);
  }
}

std::string render_entries(const std::vector<std::pair<int, int64_t>>& es) {
  if (es.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : es) {
    if (!s.empty()) s += " ";
    s += std::to_string(c) + "*" + std::to_string(k);
  }
  return s;
}

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// Structure constants over the algebra's own field.  With reduced set the
// coefficients are residues mod q-1 and triangle counts may fall back to the
// residue form; otherwise they are kept as plain integers and every count
// must fit the brute-force budget.
LieTable build_table(const Algebra& A, const Catalog& cat, LieSide side,
                     bool reduced, uint64_t max_enum) {
  LieTable t;
  t.q = A.field().p;
  t.modulus = reduced ? uint64_t(t.q) - 1 : 0;
  t.side = side == LieSide::exact ? "exact" : "triangulated";
  t.algebra_hash = A.hash();
  t.cap1 = cat.cap1;
  t.cap0 = cat.cap0;

  std::vector<int> roots;                 // catalog class ids
  std::map<std::string, int> root_index;  // label -> basis index
  for (int id : cat.indec_ids) {
    const RadicalClass& rc = cat.classes[id];
    if (rc.rep.is_zero()) continue;
    root_index[rc.label] = int(roots.size());
    roots.push_back(id);
  }
  t.num_roots = int(roots.size());
  t.num_cartan = A.num_vertices();
  for (int id : roots) {
    t.basis.push_back(cat.classes[id].label);
    t.root_kclass.push_back(cat.classes[id].kclass);
  }
  for (int v = 0; v < t.num_cartan; ++v)
    t.basis.push_back("h" + std::to_string(v + 1));

  SymForm form = build_sym_form(A, cat);
  uint64_t qm = uint64_t(t.q) - 1;  // decomposable nets vanish mod q-1 only

  auto put = [&](int i, int j, std::vector<std::pair<int, int64_t>> entries) {
    std::vector<std::pair<int, int64_t>> out;
    for (const auto& e : entries) {
      int64_t c = reduce_coef(e.second, t.modulus);
      if (c != 0) out.push_back({e.first, c});
    }
    std::sort(out.begin(), out.end());
    if (!out.empty()) t.brackets[{i, j}] = std::move(out);
  };

  for (int i = 0; i < t.num_roots; ++i) {
    const RadicalClass& X = cat.classes[roots[i]];
    for (int j = i + 1; j < t.num_roots; ++j) {
      const RadicalClass& Y = cat.classes[roots[j]];

      struct Agg {
        u128 fwd = 0, rev = 0;
        const MiddleClass* mc = nullptr;
      };
      std::map<std::string, Agg> agg;
      auto sxy = ext1_stratified(A, X.rep, Y.rep, max_enum);
      auto syx = ext1_stratified(A, Y.rep, X.rep, max_enum);
      for (const auto& st : sxy) {
        Agg& a = agg[st.middle.zr_label];
        a.fwd += st.ext_count;
        a.mc = &st.middle;
      }
      for (const auto& st : syx) {
        Agg& a = agg[st.middle.zr_label];
        a.rev += st.ext_count;
        if (!a.mc) a.mc = &st.middle;
      }

      int hom_xy = hom_dim_c2(A, X.rep, Y.rep);
      int hom_yx = hom_dim_c2(A, Y.rep, X.rep);
      std::vector<std::pair<int, int64_t>> entries;
      bool trunc = false;
      for (const auto& [label, a] : agg) {
        if (a.mc->zr_rep.is_zero()) continue;  // the Cartan term, added below
        int64_t cf = 0, cr = 0;
        if (side == LieSide::exact) {
          cf = exact_constant(a.fwd, a.mc->aut_c2_zr, X.aut_c2, Y.aut_c2, t.q,
                              hom_xy);
          cr = exact_constant(a.rev, a.mc->aut_c2_zr, Y.aut_c2, X.aut_c2, t.q,
                              hom_yx);
        } else {
          if (a.fwd)
            cf = triangle_count(A, X.rep, Y.rep, a.mc->zr_rep, reduced,
                                max_enum);
          if (a.rev)
            cr = triangle_count(A, Y.rep, X.rep, a.mc->zr_rep, reduced,
                                max_enum);
        }
        int64_t net = cf - cr;
        if (!is_indecomposable(A, a.mc->zr_rep, max_enum)) {
          if (reduce_coef(net, qm) != 0)
            throw InternalError("decomposable middle " + label +
                                " of [" + X.label + ", " + Y.label +
                                "] has net coefficient " +
                                std::to_string(net));
          continue;
        }
        auto it = root_index.find(label);
        if (it == root_index.end()) {
          trunc = true;
          continue;
        }
        entries.push_back({it->second, net});
      }

      if (is_isomorphic(A, X.rep, shift(A, Y.rep)))
        for (int v = 0; v < t.num_cartan; ++v)
          entries.push_back({t.num_roots + v, -int64_t(X.kclass[v])});

      if (trunc) t.truncated.insert({i, j});
      put(i, j, std::move(entries));
    }
  }

  // [u_X, h_v] = -(e_v | d(X)) u_X
  for (int i = 0; i < t.num_roots; ++i) {
    for (int v = 0; v < t.num_cartan; ++v) {
      long c = 0;
      for (int w = 0; w < t.num_cartan; ++w)
        c += form.gram[v][w] * t.root_kclass[i][w];
      put(i, t.num_roots + v, {{i, -c}});
    }
  }
  return t;
}

}  // namespace

std::vector<int> kclass(const Complex2& X) {
  std::vector<int> d = X.c0.rep.dims;
  for (size_t v = 0; v < d.size(); ++v) d[v] -= X.c1.rep.dims[v];
  return d;
}

long sym_form_pair(const Algebra& A, const Complex2& X, const Complex2& Y) {
  return long(hom_dim_k2(A, X, Y)) - hom_dim_k2(A, X, shift(A, Y)) +
         hom_dim_k2(A, Y, X) - hom_dim_k2(A, Y, shift(A, X));
}

long SymForm::pair(const std::vector<int>& d, const std::vector<int>& e) const {
  if (d.size() != gram.size() || e.size() != gram.size())
    throw UsageError("class vector length does not match the vertex count");
  long s = 0;
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = 0; j < e.size(); ++j) s += gram[i][j] * d[i] * e[j];
  return s;
}

SymForm build_sym_form(const Algebra& A, const Catalog& cat) {
  int n = A.num_vertices();
  std::vector<const RadicalClass*> rep(n, nullptr);
  for (const RadicalClass& rc : cat.classes) {
    for (int v = 0; v < n; ++v) {
      if (rep[v]) continue;
      bool unit = true;
      for (int w = 0; w < n; ++w)
        if (rc.kclass[w] != (w == v ? 1 : 0)) unit = false;
      if (unit) rep[v] = &rc;
    }
  }

  bool have_euler = true;
  std::vector<long> e0(n, 0);
  if (n > 0) e0[0] = 1;
  try {
    A.sym_euler_form(e0, e0);
  } catch (const UsageError&) {
    have_euler = false;
  }

  SymForm f;
  f.gram.assign(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::optional<long> by_reps, by_euler;
      if (rep[i] && rep[j])
        by_reps = sym_form_pair(A, rep[i]->rep, rep[j]->rep);
      if (have_euler) {
        std::vector<long> a(n, 0), b(n, 0);
        a[i] = 1;
        b[j] = 1;
        by_euler = A.sym_euler_form(a, b);
      }
      if (by_reps && by_euler && *by_reps != *by_euler)
        throw InternalError(
            "pairing of unit classes " + std::to_string(i + 1) + ", " +
            std::to_string(j + 1) + " disagrees with the Euler form: " +
            std::to_string(*by_reps) + " vs " + std::to_string(*by_euler));
      if (!by_reps && !by_euler)
        throw UsageError("no window representative for unit class " +
                         std::to_string((rep[i] ? j : i) + 1) +
                         " and the Cartan matrix is not invertible");
      f.gram[i][j] = by_reps ? *by_reps : *by_euler;
    }
  }
  return f;
}

int LieTable::index_of(const std::string& label) const {
  for (int i = 0; i < int(basis.size()); ++i)
    if (basis[i] == label) return i;
  return -1;
}

std::vector<std::pair<int, int64_t>> LieTable::bracket(int i, int j) const {
  if (i == j) return {};
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = brackets.find({i, j});
  if (it == brackets.end()) return {};
  if (!flip) return it->second;
  std::vector<std::pair<int, int64_t>> out = it->second;
  for (auto& e : out) e.second = reduce_coef(-e.second, modulus);
  return out;
}

bool LieTable::is_truncated(int i, int j) const {
  if (i > j) std::swap(i, j);
  return truncated.count({i, j}) != 0;
}

LieTable build_lie_table(const Algebra& A, const std::vector<int>& cap1,
                         const std::vector<int>& cap0, LieSide side,
                         uint64_t max_enum) {
  Catalog cat = build_catalog(A, cap1, cap0, max_enum);
  return build_table(A, cat, side, true, max_enum);
}

LieTable classical_lie_table(const std::string& algebra_text,
                             const std::vector<int>& cap1,
                             const std::vector<int>& cap0, LieSide side,
                             const std::vector<uint32_t>& primes,
                             uint64_t max_enum) {
  if (primes.size() < 3)
    throw UsageError("classical table needs at least three primes");
  std::vector<LieTable> tabs;
  for (uint32_t p : primes) {
    Algebra Ap = Algebra::parse(Algebra::source_with_field(algebra_text, p));
    Catalog cat = build_catalog(Ap, cap1, cap0, max_enum);
    tabs.push_back(build_table(Ap, cat, side, false, max_enum));
  }
  const LieTable& t0 = tabs[0];
  for (size_t k = 1; k < tabs.size(); ++k) {
    const LieTable& tk = tabs[k];
    std::string at = " between p=" + std::to_string(primes[0]) + " and p=" +
                     std::to_string(primes[k]);
    if (tk.basis != t0.basis)
      throw InternalError("window classes differ" + at);
    if (tk.truncated != t0.truncated)
      throw InternalError("truncation pattern differs" + at);
    if (tk.brackets != t0.brackets) {
      int n = t0.size();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (t0.bracket(i, j) != tk.bracket(i, j))
            throw InternalError(
                "constant of [" + t0.basis[i] + ", " + t0.basis[j] +
                "] differs" + at + ": " + render_entries(t0.bracket(i, j)) +
                " vs " + render_entries(tk.bracket(i, j)));
      throw InternalError("constants differ" + at);
    }
  }
  LieTable out = t0;
  out.q = 0;
  return out;
}

std::string serialize_lie_table(const LieTable& t) {
  std::ostringstream out;
  out << "# hall2p-lie side=" << t.side << " q=" << t.q << " roots="
      << t.num_roots << " cartan=" << t.num_cartan << " cap1="
      << join_ints(t.cap1, ',') << " cap0=" << join_ints(t.cap0, ',')
      << " algebra=" << t.algebra_hash << "\n";
  out << "modulus " << t.modulus << "\n";
  out << "basis";
  for (const std::string& l : t.basis) {
    if (l.find(' ') != std::string::npos)
      throw InternalError("basis label contains a space: " + l);
    out << " " << l;
  }
  out << "\n";
  if (t.num_roots > 0) {
    out << "kclasses";
    for (const auto& d : t.root_kclass) out << " " << join_ints(d, ',');
    out << "\n";
  }
  for (const auto& [ij, es] : t.brackets)
    out << "bracket " << ij.first << " " << ij.second << " : "
        << render_entries(es) << "\n";
  for (const auto& [i, j] : t.truncated) out << "truncated " << i << " " << j
                                             << "\n";
  return out.str();
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int64_t parse_int(const std::string& s, int ln, const char* what) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ln, std::string("bad ") + what + " '" + s + "'");
  }
}

std::vector<int> parse_int_list(const std::string& s, int ln,
                                const char* what) {
  std::vector<int> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ','))
    out.push_back(int(parse_int(cur, ln, what)));
  return out;
}

}  // namespace

LieTable parse_lie_table(const std::string& text) {
  LieTable t;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  bool saw_header = false, saw_modulus = false, saw_basis = false;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::vector<std::string> toks = split_tokens(line.substr(1));
      if (toks.empty() || toks[0] != "hall2p-lie")
        throw ParseError(ln, "not a lie table header");
      for (size_t i = 1; i < toks.size(); ++i) {
        size_t eq = toks[i].find('=');
        if (eq == std::string::npos)
          throw ParseError(ln, "bad header token '" + toks[i] + "'");
        std::string key = toks[i].substr(0, eq), val = toks[i].substr(eq + 1);
        if (key == "side") t.side = val;
        else if (key == "q") t.q = uint32_t(parse_int(val, ln, "field size"));
        else if (key == "roots") t.num_roots = int(parse_int(val, ln, "root count"));
        else if (key == "cartan") t.num_cartan = int(parse_int(val, ln, "cartan count"));
        else if (key == "cap1") t.cap1 = parse_int_list(val, ln, "cap entry");
        else if (key == "cap0") t.cap0 = parse_int_list(val, ln, "cap entry");
        else if (key == "algebra") t.algebra_hash = val;
        else throw ParseError(ln, "unknown header key '" + key + "'");
      }
      saw_header = true;
      continue;
    }
    std::vector<std::string> toks = split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0] == "modulus") {
      if (toks.size() != 2) throw ParseError(ln, "expected 'modulus <m>'");
      t.modulus = uint64_t(parse_int(toks[1], ln, "modulus"));
      saw_modulus = true;
    } else if (toks[0] == "basis") {
      t.basis.assign(toks.begin() + 1, toks.end());
      saw_basis = true;
    } else if (toks[0] == "kclasses") {
      for (size_t i = 1; i < toks.size(); ++i)
        t.root_kclass.push_back(parse_int_list(toks[i], ln, "class entry"));
    } else if (toks[0] == "bracket") {
      if (toks.size() < 5 || toks[3] != ":")
        throw ParseError(ln, "expected 'bracket <i> <j> : <coef>*<k> ...'");
      int i = int(parse_int(toks[1], ln, "basis index"));
      int j = int(parse_int(toks[2], ln, "basis index"));
      std::vector<std::pair<int, int64_t>> es;
      for (size_t k = 4; k < toks.size(); ++k) {
        size_t star = toks[k].find('*');
        if (star == std::string::npos)
          throw ParseError(ln, "bad term '" + toks[k] + "'");
        int64_t c = parse_int(toks[k].substr(0, star), ln, "coefficient");
        int tgt = int(parse_int(toks[k].substr(star + 1), ln, "basis index"));
        es.push_back({tgt, c});
      }
      if (!t.brackets.emplace(std::make_pair(i, j), std::move(es)).second)
        throw ParseError(ln, "duplicate bracket line");
    } else if (toks[0] == "truncated") {
      if (toks.size() != 3) throw ParseError(ln, "expected 'truncated <i> <j>'");
      t.truncated.insert({int(parse_int(toks[1], ln, "basis index")),
                          int(parse_int(toks[2], ln, "basis index"))});
    } else {
      throw ParseError(ln, "unknown line '" + toks[0] + "'");
    }
  }
  if (!saw_header || !saw_modulus || !saw_basis)
    throw ParseError(ln, "missing header, modulus or basis line");
  if (int(t.basis.size()) != t.num_roots + t.num_cartan)
    throw ParseError(ln, "basis length does not match the header counts");
  if (int(t.root_kclass.size()) != t.num_roots)
    throw ParseError(ln, "kclasses length does not match the root count");
  int n = t.num_roots + t.num_cartan;
  for (const auto& [ij, es] : t.brackets) {
    if (ij.first < 0 || ij.second <= ij.first || ij.second >= n)
      throw ParseError(ln, "bracket pair out of range");
    for (const auto& [tgt, c] : es) {
      if (tgt < 0 || tgt >= n) throw ParseError(ln, "bracket target out of range");
      if (t.modulus > 0 && (c < 0 || uint64_t(c) >= t.modulus))
        throw ParseError(ln, "coefficient not reduced");
    }
  }
  for (const auto& [i, j] : t.truncated)
    if (i < 0 || j <= i || j >= n) throw ParseError(ln, "truncated pair out of range");
  return t;
}

JacobiReport jacobi_check(const LieTable& t) {
  JacobiReport rep;
  int n = t.size();
  uint64_t m = t.modulus;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        std::map<int, int64_t> acc;
        bool ok = true;
        auto add = [&](int a, int b, int c) {  // [[a,b],c]
          if (t.is_truncated(a, b)) {
            ok = false;
            return;
          }
          for (const auto& [tgt, coef] : t.bracket(a, b)) {
            if (t.is_truncated(tgt, c)) {
              ok = false;
              return;
            }
            for (const auto& [tgt2, coef2] : t.bracket(tgt, c))
              acc[tgt2] =
                  reduce_coef(acc[tgt2] + mul_coef(coef, coef2, m), m);
          }
        };
        add(i, j, k);
        if (ok) add(j, k, i);
        if (ok) add(k, i, j);
        if (!ok) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        bool zero = true;
        for (const auto& [tgt, c] : acc)
          if (reduce_coef(c, m) != 0) zero = false;
        if (!zero) {
          ++rep.failures;
          if (rep.details.size() < 8)
            rep.details.push_back("(" + t.basis[i] + ", " + t.basis[j] +
                                  ", " + t.basis[k] + ")");
        }
      }
    }
  }
  rep.pass = rep.failures == 0;
  return rep;
}

CompareReport compare_tables(const LieTable& exact_side,
                             const LieTable& triangulated_side) {
  const LieTable& a = exact_side;
  const LieTable& b = triangulated_side;
  if (a.algebra_hash != b.algebra_hash || a.cap1 != b.cap1 ||
      a.cap0 != b.cap0 || a.modulus != b.modulus || a.q != b.q)
    throw UsageError("tables were built over different algebras, windows or moduli");
  if (a.basis != b.basis)
    throw UsageError("tables list different window classes");
  CompareReport rep;
  int n = a.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      ++rep.checked;
      if (a.is_truncated(i, j) != b.is_truncated(i, j)) {
        rep.mismatches.push_back("[" + a.basis[i] + ", " + a.basis[j] +
                                 "]: truncation flags differ");
        continue;
      }
      auto va = a.bracket(i, j), vb = b.bracket(i, j);
      if (va != vb)
        rep.mismatches.push_back("[" + a.basis[i] + ", " + a.basis[j] +
                                 "]: " + render_entries(va) + " vs " +
                                 render_entries(vb));
    }
  }
  rep.pass = rep.mismatches.empty();
  return rep;
}

ChevalleyReport chevalley_compare(const LieTable& t, const std::string& type) {
  int N = 0;
  if (type == "A1") N = 2;
  else if (type == "A2") N = 3;
  else throw UsageError("unknown type '" + type + "' (expected A1 or A2)");

  ChevalleyReport rep;
  int n = N - 1;
  if (t.num_cartan != n) {
    rep.reason = "expected " + std::to_string(n) + " Cartan generators, table has " +
                 std::to_string(t.num_cartan);
    return rep;
  }
  if (!t.truncated.empty()) {
    rep.reason = "the window truncates some brackets";
    return rep;
  }

  // Root coordinates in the simple basis -> matrix unit positions.
  std::map<std::vector<int>, std::pair<int, int>> units;
  for (int r = 0; r < N; ++r) {
    for (int s = 0; s < N; ++s) {
      if (r == s) continue;
      std::vector<int> coord(n, 0);
      for (int v = std::min(r, s); v < std::max(r, s); ++v)
        coord[v] = r < s ? 1 : -1;
      units[coord] = {r, s};
    }
  }
  if (t.num_roots != int(units.size())) {
    rep.reason = "expected " + std::to_string(units.size()) +
                 " root classes, table has " + std::to_string(t.num_roots);
    return rep;
  }
  std::vector<std::pair<int, int>> pos(t.num_roots);
  std::set<std::vector<int>> seen;
  for (int i = 0; i < t.num_roots; ++i) {
    auto it = units.find(t.root_kclass[i]);
    if (it == units.end()) {
      rep.reason = "class " + t.basis[i] + " sits at non-root coordinate (" +
                   join_ints(t.root_kclass[i], ',') + ")";
      return rep;
    }
    if (!seen.insert(t.root_kclass[i]).second) {
      rep.reason = "two classes share the root coordinate (" +
                   join_ints(t.root_kclass[i], ',') + ")";
      return rep;
    }
    pos[i] = it->second;
  }

  using M = std::vector<std::vector<int64_t>>;
  auto zero = M(N, std::vector<int64_t>(N, 0));
  auto mat_bracket = [&](const M& a, const M& b) {
    M c = zero;
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s)
        for (int u = 0; u < N; ++u)
          c[r][s] += a[r][u] * b[u][s] - b[r][u] * a[u][s];
    return c;
  };

  std::vector<M> base(t.size(), zero);
  for (int i = 0; i < t.num_roots; ++i) base[i][pos[i].first][pos[i].second] = 1;
  for (int v = 0; v < n; ++v) {
    base[t.num_roots + v][v][v] = 1;
    base[t.num_roots + v][v + 1][v + 1] = -1;
  }

  auto congruent = [&](const M& a, const M& b) {
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s) {
        int64_t d = a[r][s] - b[r][s];
        if (t.modulus ? (d % int64_t(t.modulus) != 0) : (d != 0)) return false;
      }
    return true;
  };

  for (uint32_t mask = 0; mask < (1u << t.num_roots); ++mask) {
    auto sign = [&](int b) {
      return b < t.num_roots && (mask >> b & 1) ? int64_t(-1) : int64_t(1);
    };
    bool ok = true;
    for (int i = 0; ok && i < t.size(); ++i) {
      for (int j = i + 1; ok && j < t.size(); ++j) {
        M lhs = mat_bracket(base[i], base[j]);
        for (auto& row : lhs)
          for (auto& x : row) x *= sign(i) * sign(j);
        M rhs = zero;
        for (const auto& [tgt, c] : t.bracket(i, j))
          for (int r = 0; r < N; ++r)
            for (int s = 0; s < N; ++s)
              rhs[r][s] += c * sign(tgt) * base[tgt][r][s];
        if (!congruent(lhs, rhs)) ok = false;
      }
    }
    if (ok) {
      rep.pass = true;
      for (int i = 0; i < t.num_roots; ++i)
        rep.dictionary.push_back(t.basis[i] + " -> " +
                                 (sign(i) < 0 ? "-" : "+") + "E" +
                                 std::to_string(pos[i].first + 1) +
                                 std::to_string(pos[i].second + 1));
      for (int v = 0; v < n; ++v)
        rep.dictionary.push_back("h" + std::to_string(v + 1) + " -> E" +
                                 std::to_string(v + 1) + std::to_string(v + 1) +
                                 "-E" + std::to_string(v + 2) +
                                 std::to_string(v + 2));
      return rep;
    }
  }
  rep.reason = "no sign assignment reproduces the structure constants";
  return rep;
}

}  // namespace hall2p
