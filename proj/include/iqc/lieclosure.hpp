#pragma once

// Real Lie algebras of skew-Hermitian matrices, treated as real vector spaces
// with the inner product <A, B> = Re Tr(A† B).

#include <span>
#include <vector>

#include "iqc/qalg.hpp"

namespace iqc {

/// Re Tr(A† B).
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Orthonormal basis of a real subspace of u(n).
///
/// Every element is skew-Hermitian. Bases of Lie algebras (closure output)
/// are also traceless; invariant spaces and trace images may contain i·1.
class LieBasis {
 public:
  LieBasis() = default;
  explicit LieBasis(Index matrix_dim) : matrix_dim_(matrix_dim) {}

  Index matrix_dim() const { return matrix_dim_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }

  /// Component of `m` orthogonal to the span (two Gram-Schmidt passes).
  ComplexMatrix residual(const ComplexMatrix& m) const;

  /// Orthogonal projection onto the span.
  ComplexMatrix project(const ComplexMatrix& m) const { return m - residual(m); }

  /// Append the normalized residual of `m` when its norm exceeds `threshold`.
  /// Returns whether a direction was added.
  bool try_add(const ComplexMatrix& m, double threshold);

 private:
  Index matrix_dim_ = 0;
  std::vector<ComplexMatrix> elements_;
};

/// Gram-Schmidt over the inputs; a vector whose residual is below
/// tol.rank times its own norm is dropped. Inputs must be skew-Hermitian and
/// traceless.
LieBasis orthonormalize(std::span<const ComplexMatrix> mats, const Tolerances& tol = {});

/// Smallest bracket-closed real subspace containing the generators.
///
/// Worklist sweep in fixed order: every basis element is bracketed against
/// all earlier ones, residuals above tol.rank are appended, and the sweep
/// ends when it reaches the end of the (growing) list or the dimension hits
/// n² - 1.
LieBasis closure(std::span<const ComplexMatrix> generators, const Tolerances& tol = {});

/// True iff the residual of `m` against the span is below tol.rank * ‖m‖.
bool contains(const LieBasis& basis, const ComplexMatrix& m, const Tolerances& tol = {});

/// Smallest subspace invariant under ad of every element of `algebra` and
/// containing `seed`. The seed may carry trace (states enter as iρ).
LieBasis invariant_space(const LieBasis& algebra, const ComplexMatrix& seed, const Tolerances& tol = {});

/// Orthonormal basis of {Tr_A(M) : M ∈ span(space)} inside u(2).
LieBasis trace_a_image(const LieBasis& space, const Tolerances& tol = {});

/// Normalized product basis of su(4): σ_j ⊗ 1, 1 ⊗ σ_k and iσ_j ⊗ σ_k.
LieBasis su4_basis();

/// su4_basis() plus i·1.
LieBasis u4_basis();

}  // namespace iqc
