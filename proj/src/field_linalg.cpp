#include "field_linalg.hpp"

namespace hall2p {

namespace {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

// In-place reduced row echelon form.  Returns the pivot column of each pivot
// row, in order.  Pivot choice: scan columns left to right, take the first
// row at or below the current one with a nonzero entry.
std::vector<int> row_reduce(const PrimeField& F, Mat& A) {
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int pr = -1;
    for (int i = r; i < A.rows; ++i)
      if (A.at(i, c) != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < A.cols; ++j) std::swap(A.at(pr, j), A.at(r, j));
    uint32_t inv = F.inv(A.at(r, c));
    for (int j = 0; j < A.cols; ++j)
      A.at(r, j) = uint8_t(F.mul(A.at(r, j), inv));
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || A.at(i, c) == 0) continue;
      uint32_t f = A.at(i, c);
      for (int j = 0; j < A.cols; ++j)
        A.at(i, j) = uint8_t(F.sub(A.at(i, j), F.mul(f, A.at(r, j))));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

std::string u128_str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s += char('0' + int(v % 10));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

std::string i128_str(i128 v) {
  if (v < 0) return "-" + u128_str(u128(-v));
  return u128_str(u128(v));
}

PrimeField::PrimeField(uint32_t prime) : p(prime) {
  if (p < 2 || p > 251 || !is_prime_u32(p))
    throw UsageError("field characteristic must be a prime in [2, 251], got " +
                     std::to_string(prime));
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint64_t base = a % p, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return uint32_t(acc);
}

uint32_t PrimeField::inv(uint32_t a) const {
  a %= p;
  if (a == 0) throw UsageError("division by zero in F_" + std::to_string(p));
  return pow(a, p - 2);
}

uint32_t PrimeField::primitive_root() const {
  if (p == 2) return 1;
  for (uint32_t g = 2; g < p; ++g) {
    // g generates iff g^((p-1)/q) != 1 for every prime q | p-1.
    uint32_t m = p - 1;
    bool ok = true;
    for (uint32_t q = 2; q * q <= m; ++q) {
      if (m % q) continue;
      if (pow(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
      while (m % q == 0) m /= q;
    }
    if (ok && m > 1 && pow(g, (p - 1) / m) == 1) ok = false;
    if (ok) return g;
  }
  throw InternalError("no primitive root found");
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat::is_zero() const {
  for (uint8_t x : a)
    if (x) return false;
  return true;
}

Mat mat_mul(const PrimeField& F, const Mat& A, const Mat& B) {
  if (A.cols != B.rows)
    throw UsageError("matrix product shape mismatch: " +
                     std::to_string(A.cols) + " vs " + std::to_string(B.rows));
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      uint32_t v = A.at(i, k);
      if (!v) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = uint8_t((C.at(i, j) + v * B.at(k, j)) % F.p);
    }
  return C;
}

Mat mat_add(const PrimeField& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw UsageError("matrix sum shape mismatch");
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i)
    C.a[i] = uint8_t(F.add(C.a[i], B.a[i]));
  return C;
}

Mat mat_sub(const PrimeField& F, const Mat& A, const Mat& B) {
  if (A.rows != B.rows || A.cols != B.cols)
    throw UsageError("matrix difference shape mismatch");
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i)
    C.a[i] = uint8_t(F.sub(C.a[i], B.a[i]));
  return C;
}

Mat mat_neg(const PrimeField& F, const Mat& A) {
  Mat C = A;
  for (auto& x : C.a) x = uint8_t(F.neg(x));
  return C;
}

Mat mat_scale(const PrimeField& F, uint32_t c, const Mat& A) {
  Mat C = A;
  for (auto& x : C.a) x = uint8_t(F.mul(c, x));
  return C;
}

Vec mat_vec(const PrimeField& F, const Mat& A, const Vec& v) {
  if (size_t(A.cols) != v.size()) throw UsageError("matrix/vector shape mismatch");
  Vec out(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    uint32_t acc = 0;
    for (int j = 0; j < A.cols; ++j) acc += uint32_t(A.at(i, j)) * v[j];
    out[i] = uint8_t(acc % F.p);
  }
  return out;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

int rank(const PrimeField& F, Mat A) { return int(row_reduce(F, A).size()); }

bool is_invertible(const PrimeField& F, const Mat& A) {
  if (A.rows != A.cols) return false;
  return rank(F, A) == A.rows;
}

std::optional<Mat> mat_inverse(const PrimeField& F, Mat A) {
  if (A.rows != A.cols) return std::nullopt;
  int n = A.rows;
  if (n == 0) return Mat(0, 0);
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = row_reduce(F, aug);
  if (int(pivots.size()) != n || pivots[n - 1] != n - 1) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::vector<Vec> kernel_basis(const PrimeField& F, Mat A) {
  int n = A.cols;
  auto pivots = row_reduce(F, A);
  std::vector<int> pivot_of_col(n, -1);
  for (size_t r = 0; r < pivots.size(); ++r) pivot_of_col[pivots[r]] = int(r);
  std::vector<Vec> basis;
  for (int c = 0; c < n; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    Vec v(n, 0);
    v[c] = 1;
    for (int j = 0; j < n; ++j)
      if (pivot_of_col[j] >= 0)
        v[j] = uint8_t(F.neg(A.at(pivot_of_col[j], c)));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::pair<Vec, std::vector<Vec>>> solve_affine(
    const PrimeField& F, const Mat& A, const Vec& b) {
  if (size_t(A.rows) != b.size())
    throw UsageError("solve_affine: rhs length " + std::to_string(b.size()) +
                     " does not match " + std::to_string(A.rows) + " rows");
  Mat aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  auto pivots = row_reduce(F, aug);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
  std::vector<int> pivot_of_col(A.cols, -1);
  for (size_t r = 0; r < pivots.size(); ++r) pivot_of_col[pivots[r]] = int(r);
  Vec x(A.cols, 0);
  for (int c = 0; c < A.cols; ++c)
    if (pivot_of_col[c] >= 0) x[c] = aug.at(pivot_of_col[c], A.cols);
  return std::make_pair(std::move(x), kernel_basis(F, A));
}

std::optional<uint64_t> checked_pow(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t acc = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (acc > cap / base) return std::nullopt;
    acc *= base;
  }
  return acc;
}

std::vector<Vec> enumerate_space(const PrimeField& F,
                                 const std::vector<Vec>& basis,
                                 size_t dim_ambient, uint64_t max_points) {
  auto total = checked_pow(F.p, basis.size(), max_points);
  if (!total)
    throw CapacityError("span enumeration of dimension " +
                        std::to_string(basis.size()) + " over F_" +
                        std::to_string(F.p) + " exceeds cap " +
                        std::to_string(max_points));
  SpanEnumerator e(F, basis, dim_ambient);
  std::vector<Vec> pts;
  pts.reserve(size_t(*total));
  for (uint64_t i = 0; i < *total; ++i) pts.push_back(e.at(i));
  return pts;
}

SpanEnumerator::SpanEnumerator(const PrimeField& F,
                               const std::vector<Vec>& basis,
                               size_t dim_ambient)
    : F_(F), basis_(basis), dim_(dim_ambient) {
  for (const auto& v : basis_)
    if (v.size() != dim_)
      throw UsageError("span basis vector has wrong ambient dimension");
}

std::optional<uint64_t> SpanEnumerator::size() const {
  return checked_pow(F_.p, basis_.size(), UINT64_MAX / 2);
}

Vec SpanEnumerator::at(uint64_t idx) const {
  Vec out(dim_, 0);
  // Mixed-radix digits of idx, first basis vector most significant.
  size_t k = basis_.size();
  for (size_t i = 0; i < k; ++i) {
    uint64_t place = 1;
    for (size_t j = i + 1; j < k; ++j) place *= F_.p;
    uint32_t coeff = uint32_t((idx / place) % F_.p);
    if (!coeff) continue;
    for (size_t d = 0; d < dim_; ++d)
      out[d] = uint8_t(F_.add(out[d], F_.mul(coeff, basis_[i][d])));
  }
  return out;
}

}  // namespace hall2p
