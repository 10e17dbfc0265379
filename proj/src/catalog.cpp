#include "catalog.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>

namespace hall2p {

namespace {

u128 u128_pow(uint32_t p, int e) {
  u128 v = 1;
  for (int k = 0; k < e; ++k) v *= p;
  return v;
}

std::vector<int> kclass_of(const Complex2& X) {
  std::vector<int> d(X.c0.rep.dims.size());
  for (size_t v = 0; v < d.size(); ++v)
    d[v] = X.c0.rep.dims[v] - X.c1.rep.dims[v];
  return d;
}

// dim of the radical hom space between two projective sums.
long long rad_hom_dim(const Algebra& A, const std::vector<int>& src,
                      const std::vector<int>& dst) {
  long long total = 0;
  for (int i = 0; i < A.num_vertices(); ++i)
    for (int j = 0; j < A.num_vertices(); ++j)
      total += (long long)src[i] * dst[j] *
               (A.proj_hom_dim(i, j) - (i == j ? 1 : 0));
  return total;
}

u128 aut_k2_from(const Algebra& A, u128 aut_c2, int htp_self) {
  u128 q = u128_pow(A.field().p, htp_self);
  if (aut_c2 % q != 0)
    throw InternalError(
        "null-homotopy count does not divide the automorphism count");
  return aut_c2 / q;
}

}  // namespace

const RadicalClass* Catalog::find(const std::string& label) const {
  auto it = by_label.find(label);
  return it == by_label.end() ? nullptr : &classes[it->second];
}

int residue_field_degree(uint32_t p, int dim_end, u128 aut) {
  for (int s = 1; s <= dim_end; ++s) {
    if (u128_pow(p, dim_end - s) * (u128_pow(p, s) - 1) == aut) return s;
  }
  throw InternalError("automorphism count does not match a local ring");
}

u128 ks_aut_order(uint32_t p, const std::vector<int>& n,
                  const std::vector<int>& s,
                  const std::vector<std::vector<int>>& hom) {
  long long rad = 0;
  for (size_t i = 0; i < n.size(); ++i)
    for (size_t j = 0; j < n.size(); ++j)
      rad += (long long)n[i] * n[j] * hom[i][j];
  for (size_t i = 0; i < n.size(); ++i) rad -= (long long)n[i] * n[i] * s[i];
  if (rad < 0) throw InternalError("radical dimension came out negative");
  u128 order = u128_pow(p, int(rad));
  for (size_t i = 0; i < n.size(); ++i) {
    u128 q = u128_pow(p, s[i]);
    u128 qm = 1;
    for (int k = 0; k < n[i]; ++k) qm *= q;
    u128 qk = 1;
    for (int k = 0; k < n[i]; ++k) {
      order *= (qm - qk);
      qk *= q;
    }
  }
  return order;
}

Catalog build_catalog(const Algebra& A, const std::vector<int>& cap1,
                      const std::vector<int>& cap0, uint64_t max_enum) {
  const int nv = A.num_vertices();
  if (int(cap1.size()) != nv || int(cap0.size()) != nv)
    throw UsageError("cap vectors must have one entry per vertex");
  for (int c : cap1)
    if (c < 0) throw UsageError("cap entries must be nonnegative");
  for (int c : cap0)
    if (c < 0) throw UsageError("cap entries must be nonnegative");

  const PrimeField& F = A.field();
  const uint32_t p = F.p;

  Catalog cat;
  cat.cap1 = cap1;
  cat.cap0 = cap0;

  // Window of strata, ascending by total multiplicity so that the parts of
  // any direct sum are already catalogued when their stratum is reached.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> window;
  std::vector<int> digits(2 * nv, 0);
  for (;;) {
    std::vector<int> e1(digits.begin(), digits.begin() + nv);
    std::vector<int> e0(digits.begin() + nv, digits.end());
    window.emplace_back(std::move(e1), std::move(e0));
    int k = 2 * nv - 1;
    while (k >= 0) {
      int cap = k < nv ? cap1[k] : cap0[k - nv];
      if (digits[k] < cap) {
        ++digits[k];
        break;
      }
      digits[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  std::stable_sort(window.begin(), window.end(),
                   [](const auto& a, const auto& b) {
                     int sa = std::accumulate(a.first.begin(), a.first.end(), 0) +
                              std::accumulate(a.second.begin(), a.second.end(), 0);
                     int sb = std::accumulate(b.first.begin(), b.first.end(), 0) +
                              std::accumulate(b.second.begin(), b.second.end(), 0);
                     return sa < sb;
                   });

  auto add_class = [&](RadicalClass rc, Stratum& st) {
    int id = int(cat.classes.size());
    st.class_ids.push_back(id);
    if (rc.indecomposable) cat.indec_ids.push_back(id);
    cat.by_label.emplace(rc.label, id);
    cat.classes.push_back(std::move(rc));
  };

  for (auto& [e1, e0] : window) {
    Stratum st;
    st.e1 = e1;
    st.e0 = e0;
    long long K = rad_hom_dim(A, e1, e0) + rad_hom_dim(A, e0, e1);
    bool feasible =
        K <= 62 && checked_pow(p, uint64_t(K), max_enum).has_value();
    if (feasible) {
      st.scanned = true;
      for (ScanClass& sc : enumerate_radical(A, e1, e0, max_enum)) {
        RadicalClass rc;
        rc.label = serialize_complex(sc.rep);
        rc.e1 = e1;
        rc.e0 = e0;
        rc.orbit_size = sc.orbit_size;
        rc.aut_c2 = sc.aut_c2;
        rc.htp_self = htp_dim(A, sc.rep, sc.rep);
        rc.aut_k2 = aut_k2_from(A, rc.aut_c2, rc.htp_self);
        rc.kclass = kclass_of(sc.rep);
        rc.indecomposable = is_indecomposable(A, sc.rep, max_enum);
        rc.rep = std::move(sc.rep);
        add_class(std::move(rc), st);
      }
    } else {
      st.scanned = false;
      // Direct sums of known indecomposables filling the stratum exactly.
      std::vector<int> counts(cat.indec_ids.size(), 0);
      std::vector<int> r1 = e1, r0 = e0;
      auto emit = [&]() {
        RadicalClass rc;
        rc.e1 = e1;
        rc.e0 = e0;
        rc.composed = true;
        std::vector<int> pieces;          // distinct part ids, ascending
        std::vector<int> mult;            // copy counts
        for (size_t k = 0; k < counts.size(); ++k) {
          if (!counts[k]) continue;
          pieces.push_back(cat.indec_ids[k]);
          mult.push_back(counts[k]);
          for (int c = 0; c < counts[k]; ++c)
            rc.parts.push_back(cat.indec_ids[k]);
        }
        std::string label;
        Complex2 rep;
        bool first = true;
        for (int id : rc.parts) {
          const RadicalClass& part = cat.classes[id];
          if (first) {
            rep = part.rep;
            label = part.label;
            first = false;
          } else {
            rep = direct_sum_complex(A, rep, part.rep).sum;
            label += " + " + part.label;
          }
        }
        rc.label = std::move(label);
        std::vector<int> sdeg(pieces.size()), tdeg(pieces.size());
        std::vector<std::vector<int>> homc2(pieces.size()),
            homk2(pieces.size());
        for (size_t i = 0; i < pieces.size(); ++i) {
          const RadicalClass& ci = cat.classes[pieces[i]];
          homc2[i].resize(pieces.size());
          homk2[i].resize(pieces.size());
          for (size_t j = 0; j < pieces.size(); ++j) {
            const RadicalClass& cj = cat.classes[pieces[j]];
            homc2[i][j] = hom_dim_c2(A, ci.rep, cj.rep);
            homk2[i][j] = hom_dim_k2(A, ci.rep, cj.rep);
          }
          sdeg[i] = residue_field_degree(p, homc2[i][i], ci.aut_c2);
          tdeg[i] = residue_field_degree(p, homk2[i][i], ci.aut_k2);
        }
        rc.aut_c2 = ks_aut_order(p, mult, sdeg, homc2);
        rc.aut_k2 = ks_aut_order(p, mult, tdeg, homk2);
        rc.htp_self = htp_dim(A, rep, rep);
        if (aut_k2_from(A, rc.aut_c2, rc.htp_self) != rc.aut_k2)
          throw InternalError(
              "composed automorphism counts disagree across the quotient");
        u128 group =
            proj_sum_aut_order(A, e1) * proj_sum_aut_order(A, e0);
        if (group % rc.aut_c2 != 0)
          throw InternalError("orbit size does not divide the group order");
        rc.orbit_size = group / rc.aut_c2;
        rc.kclass = kclass_of(rep);
        rc.rep = std::move(rep);
        add_class(std::move(rc), st);
      };
      // Depth-first over indecomposable copy counts, largest id varying
      // fastest; emits in deterministic order.
      std::function<void(size_t)> walk = [&](size_t k) {
        bool done = std::all_of(r1.begin(), r1.end(), [](int v) { return !v; }) &&
                    std::all_of(r0.begin(), r0.end(), [](int v) { return !v; });
        if (done && k == counts.size()) {
          emit();
          return;
        }
        if (k == counts.size()) return;
        // Copies, not references: emit() grows cat.classes underneath us.
        std::vector<int> pe1 = cat.classes[cat.indec_ids[k]].e1;
        std::vector<int> pe0 = cat.classes[cat.indec_ids[k]].e0;
        int cmax = INT_MAX;
        for (int v = 0; v < nv; ++v) {
          if (pe1[v]) cmax = std::min(cmax, r1[v] / pe1[v]);
          if (pe0[v]) cmax = std::min(cmax, r0[v] / pe0[v]);
        }
        if (cmax == INT_MAX) cmax = 0;  // zero-stratum part cannot occur
        for (int c = 0; c <= cmax; ++c) {
          if (c) {
            for (int v = 0; v < nv; ++v) {
              r1[v] -= pe1[v];
              r0[v] -= pe0[v];
            }
          }
          counts[k] = c;
          walk(k + 1);
        }
        for (int v = 0; v < nv; ++v) {
          r1[v] += cmax * pe1[v];
          r0[v] += cmax * pe0[v];
        }
        counts[k] = 0;
      };
      walk(0);
    }
    cat.strata.push_back(std::move(st));
  }
  return cat;
}

MiddleClass classify_middle(const Algebra& A, const Complex2& Z,
                            uint64_t max_enum) {
  RadicalSplit rs = decompose(A, Z);
  ScanClass canon = canonicalize_radical(A, rs.radical, max_enum);
  MiddleClass mc;
  mc.zr_label = serialize_complex(canon.rep);
  mc.zr_rep = std::move(canon.rep);
  mc.plus = std::move(rs.plus_mult);
  mc.minus = std::move(rs.minus_mult);
  mc.aut_c2_zr = canon.aut_c2;
  return mc;
}

std::string middle_key(const MiddleClass& mc) {
  bool trivial = std::all_of(mc.plus.begin(), mc.plus.end(),
                             [](int v) { return !v; }) &&
                 std::all_of(mc.minus.begin(), mc.minus.end(),
                             [](int v) { return !v; });
  if (trivial) return mc.zr_label;
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s;
  };
  return mc.zr_label + " +k[" + join(mc.plus) + "] +k*[" + join(mc.minus) +
         "]";
}

}  // namespace hall2p
