#pragma once

// Shared generators and independent oracles for the test binaries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sepred/bipartite.hpp"
#include "sepred/error.hpp"
#include "sepred/linalg.hpp"
#include "sepred/rng.hpp"

namespace testing {

using sepred::ComplexMatrix;
using sepred::cplx;

inline double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  const double d = sepred::max_abs_diff(a, b);
  return scale > 0.0 ? d / scale : d;
}

inline ComplexMatrix random_hermitian(sepred::Rng& rng, std::size_t n) {
  return sepred::hermitian_part(rng.ginibre(n, n));
}

inline ComplexMatrix random_psd(sepred::Rng& rng, std::size_t n) {
  const ComplexMatrix g = rng.ginibre(n, n);
  return sepred::hermitian_part(g * g.adjoint());
}

/// Returns the kind of sepred::Error thrown by f, or nothing.
inline std::optional<sepred::ErrorKind> thrown_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const sepred::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

/// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
/// Entries must be small enough that every intermediate fits in 128 bits;
/// with |a_ij| ≤ 72 and n ≤ 8 the Hadamard bound keeps them below 1e37.
inline std::size_t bareiss_rank(std::vector<std::vector<__int128>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  __int128 prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

/// An integer matrix rows x cols of rank ≤ r, built as a product of
/// integer factors with entries in [-3, 3].
struct IntMatrix {
  std::vector<std::vector<__int128>> exact;
  ComplexMatrix approx;
};

inline IntMatrix random_low_rank_int(sepred::Rng& rng, std::size_t rows, std::size_t cols,
                                     std::size_t r) {
  auto draw = [&] { return static_cast<long>(rng.uniform_int(0, 6)) - 3; };
  std::vector<std::vector<long>> left(rows, std::vector<long>(r)), right(r, std::vector<long>(cols));
  for (auto& row : left) for (auto& x : row) x = draw();
  for (auto& row : right) for (auto& x : row) x = draw();
  IntMatrix out{std::vector<std::vector<__int128>>(rows, std::vector<__int128>(cols, 0)),
                ComplexMatrix(rows, cols)};
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      long s = 0;
      for (std::size_t t = 0; t < r; ++t) s += left[i][t] * right[t][j];
      out.exact[i][j] = s;
      out.approx(i, j) = static_cast<double>(s);
    }
  return out;
}

}  // namespace testing
