#pragma once

// Reference dense linear algebra: Hermitian spectra, singular values,
// Schmidt decomposition. These routines are the brute-force side of every
// closed-form check in the library.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qbell/matrix.hpp"

namespace qbell {

inline constexpr double kDefaultTol = 1e-10;

struct Spectrum {
    std::vector<double> eigenvalues;           // ascending
    std::optional<ComplexMatrix> eigenvectors;  // columns, orthonormal
};

struct SchmidtData {
    std::vector<double> coefficients;  // descending, >= 0
};

struct JacobiOptions {
    double tolerance = 1e-13;  // off-diagonal Frobenius norm relative to 1 + ||A||_F
    int max_sweeps = 100;
};

// Cyclic complex Jacobi. Throws NotHermitianError when max|A - A^dag| exceeds
// 1e-10 (1 + max|A|), ConvergenceError past the sweep cap.
Spectrum hermitian_eigen(const ComplexMatrix& a, bool want_vectors = false, const JacobiOptions& opts = {});

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    return hermitian_eigen(a, false).eigenvalues;
}

double min_eigenvalue(const ComplexMatrix& a);

// min eigenvalue >= -tol (1 + |Tr A|)
bool is_psd(const ComplexMatrix& a, double tol = kDefaultTol);

// Descending. Computed from the Hermitian dilation [[0, A], [A^dag, 0]].
std::vector<double> singular_values(const ComplexMatrix& a);

double trace_norm(const ComplexMatrix& a);

// psi has length d*d; Psi[i, j] = psi[i*d + j]. Throws on wrong length or
// when | |psi| - 1 | > 1e-10.
SchmidtData schmidt_coefficients(std::span<const Complex> psi, std::size_t d);

// Transpose on the second tensor factor of a d^2 x d^2 matrix:
// out[(i,l),(j,k)] = M[(i,k),(j,l)].
ComplexMatrix brute_partial_transpose(const ComplexMatrix& m, std::size_t d);

// Realignment with the index convention out[(i,k),(j,l)] = M[(k,l),(i,j)],
// which maps circulant blocks to R^(n)_{ij} = a^(j-i)_{i+n,i}. The map has
// order four; brute_realign_inverse undoes it.
ComplexMatrix brute_realign(const ComplexMatrix& m, std::size_t d);
ComplexMatrix brute_realign_inverse(const ComplexMatrix& m, std::size_t d);

}  // namespace qbell
