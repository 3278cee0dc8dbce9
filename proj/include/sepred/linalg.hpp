#pragma once

// Dense complex matrix kernels. Nothing in here knows about tensor
// structure; see bipartite.hpp for that.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sepred {

using cplx = std::complex<double>;

inline constexpr double kEigTol = 1e-12;
inline constexpr double kRankTol = 1e-9;
inline constexpr double kFloorTol = 1e-12;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// n x 1 matrix holding `v`.
  static ComplexMatrix column(std::span<const cplx> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> entries() noexcept { return data_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cplx trace() const;
  /// Largest entry modulus.
  double max_abs() const noexcept;
  double frobenius() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

/// max_ij |a_ij - b_ij|; throws DimensionMismatch on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// (H + H*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& h);

/// ‖H − H*‖_max ≤ tol · ‖H‖_max.
bool is_hermitian(const ComplexMatrix& h, double tol);

struct EigResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unit columns
};

/// Cyclic complex Jacobi diagonalization. Throws NotHermitian when H fails
/// the Hermiticity test at `tol`, NoConvergence when the sweep budget runs out.
EigResult hermitian_eig(const ComplexMatrix& h, double tol = kEigTol);

/// V diag(λ) V*.
ComplexMatrix reconstruct(const EigResult& eig);

struct SvdResult {
  ComplexMatrix u;        // rows x p, orthonormal columns
  std::vector<double> s;  // p = min(rows, cols), descending
  ComplexMatrix v;        // cols x p, orthonormal columns
};

/// Thin SVD M = U diag(s) V* by one-sided (Hestenes) Jacobi.
SvdResult svd(const ComplexMatrix& m);

ComplexMatrix reconstruct(const SvdResult& svd);

/// Count of singular values above rank_tol · s_max; zero for the zero matrix.
std::size_t numerical_rank(const ComplexMatrix& m, double rank_tol = kRankTol);

/// X Hermitian positive definite with X H X = Id. Throws SingularMarginal if
/// λ_min ≤ floor_tol · λ_max.
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h, double floor_tol = kFloorTol);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

}  // namespace sepred
