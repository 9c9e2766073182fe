#pragma once

#include <span>
#include <vector>

#include "essmod/numeric/cmatrix.hpp"

namespace essmod::numeric {

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  CMatrix vectors;                  // unitary, column j belongs to eigenvalues[j]
};

/// ||a - a*||_max, zero for exactly hermitian input.
double hermitian_defect(const CMatrix& a);

/// Eigendecomposition of a hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues ascend; eigenvectors are phase-normalized (first
/// non-negligible entry real positive) and ties are ordered
/// lexicographically by eigenvector.
/// Throws NotHermitian if ||a - a*|| > tol, NoConvergence after 100 sweeps.
HermitianEigen herm_eig(const CMatrix& a, double tol = kDefaultTol);

/// Largest singular value.
double op_norm(const CMatrix& a);

/// Minimum eigenvalue >= -tol. Throws NotHermitian.
bool is_psd(const CMatrix& a, double tol = kDefaultTol);

// Subspace helpers. Vectors are columns; `tol` is relative to the largest
// input norm when deciding that a residual is zero.

/// Orthonormal basis (as columns, n x r) of span(vectors).
CMatrix orthonormal_basis(std::span<const std::vector<Complex>> vectors, std::size_t n,
                          double tol = 1e-9);
/// Orthonormal basis of the column space of m.
CMatrix column_space(const CMatrix& m, double tol = 1e-9);
/// Orthonormal basis of the orthogonal complement of the columns of q (q orthonormal).
CMatrix orthogonal_complement(const CMatrix& q);
/// Orthonormal basis of {x : m x = 0}.
CMatrix null_space(const CMatrix& m, double tol = 1e-9);
/// q q* for orthonormal q (n x r); the n x n zero matrix when r = 0.
CMatrix projector_onto(const CMatrix& q);
/// Distance from v to span of the orthonormal columns of q.
double residual_norm(const CMatrix& q, std::span<const Complex> v);

std::size_t rank(const CMatrix& m, double tol = 1e-9);

double vector_norm(std::span<const Complex> v);

}  // namespace essmod::numeric
