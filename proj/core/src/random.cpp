#include "qbell/random.hpp"

#include <cmath>
#include <numeric>

namespace qbell {

Complex complex_gaussian(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ComplexVector random_unit_vector(std::size_t n, Rng& rng) {
    ComplexVector v(n);
    for (auto& z : v) z = complex_gaussian(rng);
    const double norm = vector_norm(v);
    for (auto& z : v) z /= norm;
    return v;
}

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (auto& z : g.entries()) z = complex_gaussian(rng);
    return g;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const auto g = random_gaussian_matrix(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

std::vector<double> random_simplex(std::size_t n, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(n);
    for (auto& x : p) x = expo(rng);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= total;
    return p;
}

}  // namespace qbell
