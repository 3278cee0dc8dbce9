#pragma once

// Operators on C^dimA ⊗ C^dimB.
//
// Index convention, used by every function here: the composite index of
// (a, b) is a * dimB + b, zero-based, for rows and columns alike.

#include <cstddef>
#include <vector>

#include "sepred/linalg.hpp"

namespace sepred {

/// Square operator on C^dimA ⊗ C^dimB.
class BipartiteOperator {
 public:
  BipartiteOperator() = default;
  /// Throws DimensionMismatch unless `mat` is square with side dimA * dimB.
  BipartiteOperator(std::size_t dim_a, std::size_t dim_b, ComplexMatrix mat);

  static BipartiteOperator identity(std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t side() const noexcept { return dim_a_ * dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  /// Entry ((a,b),(a2,b2)).
  const cplx& at(std::size_t a, std::size_t b, std::size_t a2, std::size_t b2) const {
    return mat_(a * dim_b_ + b, a2 * dim_b_ + b2);
  }

  BipartiteOperator scaled(cplx s) const { return {dim_a_, dim_b_, mat_ * s}; }
  double trace() const { return mat_.trace().real(); }

 private:
  std::size_t dim_a_ = 0;
  std::size_t dim_b_ = 0;
  ComplexMatrix mat_;
};

/// Vector in C^dimA ⊗ C^dimB.
struct PureVector {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::vector<cplx> vec;

  PureVector() = default;
  /// Throws DimensionMismatch unless vec.size() == dimA * dimB.
  PureVector(std::size_t dim_a, std::size_t dim_b, std::vector<cplx> vec);

  double norm() const;
  /// The dimA x dimB matrix M with M(a, b) = v[(a, b)].
  ComplexMatrix reshape() const;
  /// v v*.
  BipartiteOperator projector() const;
};

/// v ⊗ w.
PureVector tensor(std::span<const cplx> v, std::span<const cplx> w);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Transpose on the second factor: (A⊗B)^Γ = A ⊗ B^t.
BipartiteOperator partial_transpose(const BipartiteOperator& op);

/// Realignment: R(δ)((i,j),(k,l)) = δ((i,k),(j,l)), rows indexed i*dimA + j
/// and columns k*dimB + l. With this convention R(Id) = uu^t and R(F) = F.
ComplexMatrix realign(const BipartiteOperator& op);

/// Realignment read back as an operator on C^n ⊗ C^n (requires dimA == dimB).
BipartiteOperator realign_square(const BipartiteOperator& op);

/// F(a ⊗ b) = b ⊗ a on C^n ⊗ C^n.
BipartiteOperator flip(std::size_t n);

/// F δ F, computed by index permutation. Requires dimA == dimB.
BipartiteOperator flip_conjugate(const BipartiteOperator& op);

ComplexMatrix marginal_a(const BipartiteOperator& op);
ComplexMatrix marginal_b(const BipartiteOperator& op);

/// (Id + F) / 2 and (Id − F) / 2 on C^n ⊗ C^n.
BipartiteOperator proj_sym(std::size_t n);
BipartiteOperator proj_anti(std::size_t n);

/// G_δ(X) = Σ tr(A_i X) B_i for δ = Σ A_i ⊗ B_i; X must have side dimA.
ComplexMatrix g_map(const BipartiteOperator& op, const ComplexMatrix& x);

/// Unnormalized u = Σ e_i ⊗ e_i.
PureVector max_ent_vec(std::size_t n);

/// (X ⊗ Y) δ (X ⊗ Y)*, contracted one index at a time.
BipartiteOperator local_filter(const BipartiteOperator& op, const ComplexMatrix& x,
                               const ComplexMatrix& y);

}  // namespace sepred
