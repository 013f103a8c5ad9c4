#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qbell/matrix.hpp"

namespace qbell {

// All sampling goes through an explicitly seeded engine passed by reference;
// there is no global generator.
using Rng = std::mt19937_64;

Complex complex_gaussian(Rng& rng);
ComplexVector random_unit_vector(std::size_t n, Rng& rng);
// G with i.i.d. complex Gaussian entries.
ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
// (G + G^dag) / 2
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);
// Uniform on the probability simplex (normalized exponentials).
std::vector<double> random_simplex(std::size_t n, Rng& rng);

}  // namespace qbell
