#include "qbell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "qbell/error.hpp"

namespace qbell {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary V = [[c, s], [-conj(u) s, conj(u) c]] acting
// on coordinates p, q, where a(p,q) = |a(p,q)| u. A <- V^dag A V, Q <- Q V.
void rotate(ComplexMatrix& a, ComplexMatrix* q, std::size_t p, std::size_t r) {
    const Complex apq = a(p, r);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex u = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(r, r).real();
    const double tau = (aqq - app) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex ub = std::conj(u);
    const std::size_t n = a.rows();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, r);
        a(k, p) = c * akp - ub * s * akq;
        a(k, r) = s * akp + ub * c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(r, k);
        a(p, k) = c * apk - u * s * aqk;
        a(r, k) = s * apk + u * c * aqk;
    }
    a(p, r) = 0.0;
    a(r, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(r, r) = a(r, r).real();

    if (q != nullptr) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex qkp = (*q)(k, p);
            const Complex qkq = (*q)(k, r);
            (*q)(k, p) = c * qkp - ub * s * qkq;
            (*q)(k, r) = s * qkp + ub * c * qkq;
        }
    }
}

void require_bipartite_square(const ComplexMatrix& m, std::size_t d, const char* what) {
    if (d == 0 || m.rows() != d * d || m.cols() != d * d) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(d * d) + "x" +
                             std::to_string(d * d) + " matrix, got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
    }
}

// Index permutation on the four tensor slots (i, k, j, l) of a d^2 x d^2 matrix.
template <typename SourceIndex>
ComplexMatrix reshuffle(const ComplexMatrix& m, std::size_t d, SourceIndex source) {
    ComplexMatrix out(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t l = 0; l < d; ++l) {
                    const auto [r, c] = source(i, k, j, l);
                    out(i * d + k, j * d + l) = m(r, c);
                }
    return out;
}

}  // namespace

Spectrum hermitian_eigen(const ComplexMatrix& a, bool want_vectors, const JacobiOptions& opts) {
    if (!a.is_square()) throw DimensionError("hermitian_eigen: matrix is not square");
    const double defect = hermiticity_defect(a);
    if (defect > 1e-10 * (1.0 + a.max_abs())) throw NotHermitianError(defect);

    const std::size_t n = a.rows();
    // Symmetrize so rotations act on an exactly Hermitian matrix.
    ComplexMatrix work(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) work(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    std::optional<ComplexMatrix> vectors;
    if (want_vectors) vectors = ComplexMatrix::identity(n);

    const double threshold = opts.tolerance * (1.0 + a.frobenius_norm());
    int sweep = 0;
    while (off_diagonal_norm(work) > threshold) {
        if (sweep++ >= opts.max_sweeps) {
            throw ConvergenceError("hermitian_eigen: no convergence after " + std::to_string(opts.max_sweeps) +
                                   " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(work, vectors ? &*vectors : nullptr, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return work(x, x).real() < work(y, y).real(); });

    Spectrum spec;
    spec.eigenvalues.reserve(n);
    for (auto idx : order) spec.eigenvalues.push_back(work(idx, idx).real());
    if (vectors) {
        ComplexMatrix sorted(n, n);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < n; ++r) sorted(r, c) = (*vectors)(r, order[c]);
        spec.eigenvectors = std::move(sorted);
    }
    return spec;
}

double min_eigenvalue(const ComplexMatrix& a) {
    const auto ev = hermitian_eigenvalues(a);
    return ev.empty() ? 0.0 : ev.front();
}

bool is_psd(const ComplexMatrix& a, double tol) {
    return min_eigenvalue(a) >= -tol * (1.0 + std::abs(a.trace()));
}

std::vector<double> singular_values(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    const std::size_t m = a.cols();
    ComplexMatrix dilation(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            dilation(i, n + j) = a(i, j);
            dilation(n + j, i) = std::conj(a(i, j));
        }
    auto ev = hermitian_eigenvalues(dilation);
    const std::size_t k = std::min(n, m);
    std::vector<double> sv;
    sv.reserve(k);
    for (std::size_t i = 0; i < k; ++i) sv.push_back(std::max(0.0, ev[ev.size() - 1 - i]));
    return sv;
}

double trace_norm(const ComplexMatrix& a) {
    const auto sv = singular_values(a);
    return std::accumulate(sv.begin(), sv.end(), 0.0);
}

SchmidtData schmidt_coefficients(std::span<const Complex> psi, std::size_t d) {
    if (d == 0 || psi.size() != d * d) {
        throw DimensionError("schmidt_coefficients: vector length " + std::to_string(psi.size()) +
                             " is not d^2 for d = " + std::to_string(d));
    }
    const double norm = vector_norm(psi);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw InvalidArgument("schmidt_coefficients: vector is not normalized (|psi| = " + std::to_string(norm) +
                              ")");
    }
    ComplexMatrix reshaped(d, d, std::vector<Complex>(psi.begin(), psi.end()));
    return {singular_values(reshaped)};
}

ComplexMatrix brute_partial_transpose(const ComplexMatrix& m, std::size_t d) {
    require_bipartite_square(m, d, "brute_partial_transpose");
    return reshuffle(m, d, [d](std::size_t i, std::size_t l, std::size_t j, std::size_t k) {
        return std::pair{i * d + k, j * d + l};
    });
}

ComplexMatrix brute_realign(const ComplexMatrix& m, std::size_t d) {
    require_bipartite_square(m, d, "brute_realign");
    return reshuffle(m, d, [d](std::size_t i, std::size_t k, std::size_t j, std::size_t l) {
        return std::pair{k * d + l, i * d + j};
    });
}

ComplexMatrix brute_realign_inverse(const ComplexMatrix& m, std::size_t d) {
    require_bipartite_square(m, d, "brute_realign_inverse");
    // If R[(i,k),(j,l)] = M[(k,l),(i,j)], then M[(a,b),(c,e)] = R[(c,a),(e,b)].
    return reshuffle(m, d, [d](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
        return std::pair{c * d + a, e * d + b};
    });
}

}  // namespace qbell
