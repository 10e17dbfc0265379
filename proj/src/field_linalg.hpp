#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hall2p {

// Error taxonomy shared by all modules.  CapacityError means "legal request,
// too big for the configured enumeration budget"; UsageError means the input
// itself is malformed; InternalError means a computed invariant failed and the
// result cannot be trusted.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr uint64_t kDefaultMaxEnum = uint64_t(1) << 24;

// Wide integers for group orders and exact rational bookkeeping.
using u128 = unsigned __int128;
using i128 = __int128;

std::string u128_str(u128 v);
std::string i128_str(i128 v);

struct PrimeField {
  uint32_t p = 0;

  PrimeField() = default;
  explicit PrimeField(uint32_t prime);

  uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p; }
  uint32_t sub(uint32_t a, uint32_t b) const { return (a + p - b % p) % p; }
  uint32_t mul(uint32_t a, uint32_t b) const { return (a * b) % p; }
  uint32_t neg(uint32_t a) const { return (p - a % p) % p; }
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t inv(uint32_t a) const;
  // Smallest generator of the multiplicative group; used to build scaling
  // automorphisms during orbit enumeration.
  uint32_t primitive_root() const;
};

using Vec = std::vector<uint8_t>;

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> a;  // row-major

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), 0) {}

  static Mat identity(int n);

  uint8_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
  uint8_t at(int r, int c) const { return a[size_t(r) * cols + c]; }
  bool is_zero() const;
  bool operator==(const Mat& o) const = default;
};

Mat mat_mul(const PrimeField& F, const Mat& A, const Mat& B);
Mat mat_add(const PrimeField& F, const Mat& A, const Mat& B);
Mat mat_sub(const PrimeField& F, const Mat& A, const Mat& B);
Mat mat_neg(const PrimeField& F, const Mat& A);
Mat mat_scale(const PrimeField& F, uint32_t c, const Mat& A);
Vec mat_vec(const PrimeField& F, const Mat& A, const Vec& v);
Mat transpose(const Mat& A);

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<int> row_reduce(const PrimeField& F, Mat& A);

int rank(const PrimeField& F, Mat A);
bool is_invertible(const PrimeField& F, const Mat& A);
std::optional<Mat> mat_inverse(const PrimeField& F, Mat A);

// Basis of {v : A v = 0} in reduced column-echelon form: one vector per free
// column of the reduced row echelon form of A, emitted in increasing column
// order, each with a unit entry at its own free column and zeros at the
// others.  Pivots are always the first usable row/column, so the output is
// deterministic.
std::vector<Vec> kernel_basis(const PrimeField& F, Mat A);

// Solutions of A x = b as (particular point, kernel basis); nullopt when b is
// not in the column span.  Throws UsageError on dimension mismatch.
std::optional<std::pair<Vec, std::vector<Vec>>> solve_affine(
    const PrimeField& F, const Mat& A, const Vec& b);

// p^k, or nullopt on overflow past `cap`.
std::optional<uint64_t> checked_pow(uint64_t base, uint64_t exp, uint64_t cap);

// All p^k points of the span of `basis`, coefficient tuples in lexicographic
// order (first basis vector most significant).  Throws CapacityError when
// p^k exceeds max_points.
std::vector<Vec> enumerate_space(const PrimeField& F,
                                 const std::vector<Vec>& basis,
                                 size_t dim_ambient, uint64_t max_points);

// Streaming version of enumerate_space for callers that do not need to hold
// every point at once.
class SpanEnumerator {
 public:
  SpanEnumerator(const PrimeField& F, const std::vector<Vec>& basis,
                 size_t dim_ambient);
  // Total number of points, or nullopt if it does not fit in uint64.
  std::optional<uint64_t> size() const;
  // Point for the lexicographic index `idx` (0 = zero vector).
  Vec at(uint64_t idx) const;

 private:
  const PrimeField F_;
  std::vector<Vec> basis_;
  size_t dim_;
};

}  // namespace hall2p
