#include "qbell/belldiag.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qbell/error.hpp"

namespace qbell::bell {

namespace {

void require_dimension(const BellProbabilities& bp, std::size_t d, const char* what) {
    if (bp.d() != d) {
        throw DimensionError(std::string(what) + ": requires d = " + std::to_string(d) + ", got " +
                             std::to_string(bp.d()));
    }
}

void require_index(std::size_t d, WeylIndex idx) {
    if (d == 0 || idx.m >= d || idx.n >= d) {
        throw InvalidArgument("Weyl index (" + std::to_string(idx.m) + ", " + std::to_string(idx.n) +
                              ") out of range for d = " + std::to_string(d));
    }
}

ComplexMatrix conjugate_by_shift(const ComplexMatrix& a, std::size_t k) {
    const std::size_t d = a.rows();
    ComplexMatrix out(d, d);
    // (S^k A S^-k)_{ij} = A_{i-k, j-k}
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out(i, j) = a((i + d - k % d) % d, (j + d - k % d) % d);
    return out;
}

}  // namespace

BellProbabilities::BellProbabilities(std::size_t d, std::vector<double> p) : d_(d), p_(std::move(p)) {
    if (d_ == 0) throw InvalidArgument("BellProbabilities: d must be positive");
    if (p_.size() != d_ * d_) {
        throw DimensionError("BellProbabilities: expected " + std::to_string(d_ * d_) + " weights, got " +
                             std::to_string(p_.size()));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_[i]) || p_[i] < -1e-12) {
            throw InvalidArgument("BellProbabilities: weight " + std::to_string(i) + " is negative or non-finite");
        }
        total += p_[i];
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidArgument("BellProbabilities: weights sum to " + std::to_string(total));
    }
}

BellProbabilities BellProbabilities::uniform(std::size_t d) {
    return {d, std::vector<double>(d * d, 1.0 / static_cast<double>(d * d))};
}

BellProbabilities BellProbabilities::pure(std::size_t d, WeylIndex idx) {
    require_index(d, idx);
    std::vector<double> p(d * d, 0.0);
    p[idx.m * d + idx.n] = 1.0;
    return {d, std::move(p)};
}

double BellProbabilities::max() const { return *std::max_element(p_.begin(), p_.end()); }

std::vector<Complex> roots_of_unity(std::size_t d) {
    std::vector<Complex> roots(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
        roots[k] = {std::cos(angle), std::sin(angle)};
    }
    // Exact values where the trig functions round.
    roots[0] = 1.0;
    if (d % 2 == 0) roots[d / 2] = -1.0;
    if (d % 4 == 0) {
        roots[d / 4] = Complex{0.0, 1.0};
        roots[3 * d / 4] = Complex{0.0, -1.0};
    }
    return roots;
}

ComplexMatrix weyl(std::size_t d, WeylIndex idx) {
    require_index(d, idx);
    const auto roots = roots_of_unity(d);
    ComplexMatrix u(d, d);
    for (std::size_t k = 0; k < d; ++k) u((k + idx.n) % d, k) = roots[(idx.m * k) % d];
    return u;
}

ComplexVector magic_vector(std::size_t d, WeylIndex idx) {
    require_index(d, idx);
    const auto roots = roots_of_unity(d);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexVector psi(d * d);
    for (std::size_t k = 0; k < d; ++k) psi[k * d + (k + idx.n) % d] = w * roots[(idx.m * k) % d];
    return psi;
}

ComplexMatrix bell_projector(std::size_t d, WeylIndex idx) { return ComplexMatrix::outer(magic_vector(d, idx)); }

ComplexMatrix sigma_projector(std::size_t d, std::size_t n) {
    ComplexMatrix pi(d * d, d * d);
    for (std::size_t m = 0; m < d; ++m) pi += bell_projector(d, {m, n});
    return pi;
}

ComplexMatrix fourier_matrix(std::size_t d) {
    const auto roots = roots_of_unity(d);
    const double w = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix h(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) h(k, l) = w * roots[(k * l) % d];
    return h;
}

ComplexMatrix projector_sum(const BellProbabilities& bp) {
    const std::size_t d = bp.d();
    ComplexMatrix rho(d * d, d * d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
            if (bp(m, n) != 0.0) rho += bell_projector(d, {m, n}) * bp(m, n);
    return rho;
}

circulant::CirculantState to_circulant(const BellProbabilities& bp) {
    const std::size_t d = bp.d();
    const ComplexMatrix h = fourier_matrix(d);
    const ComplexMatrix h_dag = h.adjoint();
    circulant::BlockSet blocks{d, {}};
    blocks.blocks.reserve(d);
    for (std::size_t n = 0; n < d; ++n) {
        std::vector<Complex> diag(d);
        for (std::size_t m = 0; m < d; ++m) diag[m] = bp(m, n);
        auto a = h * ComplexMatrix::diagonal(diag) * h_dag;
        for (std::size_t i = 0; i < d; ++i) {
            a(i, i) = a(i, i).real();
            for (std::size_t j = i + 1; j < d; ++j) a(j, i) = std::conj(a(i, j));
        }
        blocks.blocks.push_back(std::move(a));
    }
    return circulant::CirculantState(std::move(blocks));
}

BellProbabilities from_circulant(const circulant::CirculantState& cs) {
    const std::size_t d = cs.d();
    const auto roots = roots_of_unity(d);
    std::vector<double> p(d * d);
    for (std::size_t n = 0; n < d; ++n) {
        const auto& a = cs.block(n);
        for (std::size_t m = 0; m < d; ++m) {
            // <psi_mn| rho |psi_mn> = (1/d) sum_kl lambda^{m(l-k)} a^(n)_kl
            Complex s{};
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) s += roots[(m * (l + d - k)) % d] * a(k, l);
            const double value = s.real() / static_cast<double>(d);
            if (value < -1e-10) {
                throw NotBellDiagonalError(n, "weight p_" + std::to_string(m) + std::to_string(n) + " = " +
                                                  std::to_string(value) + " is negative");
            }
            p[m * d + n] = std::max(0.0, value);
        }
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& x : p) x /= total;
    BellProbabilities bp(d, std::move(p));

    const auto rebuilt = to_circulant(bp);
    for (std::size_t n = 0; n < d; ++n) {
        const double miss = max_abs_diff(rebuilt.block(n), cs.block(n));
        if (miss > 1e-10) {
            throw NotBellDiagonalError(n, "block is not a circulant matrix (reconstruction error " +
                                              std::to_string(miss) + ")");
        }
    }
    return bp;
}

double OrbitReport::max_deviation() const {
    return deviations.empty() ? 0.0 : *std::max_element(deviations.begin(), deviations.end());
}

OrbitReport tilde_orbit_check(const BellProbabilities& bp) {
    const std::size_t d = bp.d();
    const auto tilde = circulant::tilde_blocks(to_circulant(bp));
    OrbitReport report{d, {}};
    if (d % 2 == 1) {
        double dev = 0.0;
        for (std::size_t k = 0; k < d; ++k)
            dev = std::max(dev, max_abs_diff(tilde[(2 * k) % d], conjugate_by_shift(tilde[0], k)));
        report.deviations.push_back(dev);
    } else {
        double even = 0.0;
        double odd = 0.0;
        for (std::size_t k = 0; k < d / 2; ++k) {
            even = std::max(even, max_abs_diff(tilde[2 * k], conjugate_by_shift(tilde[0], k)));
            odd = std::max(odd, max_abs_diff(tilde[2 * k + 1], conjugate_by_shift(tilde[1], k)));
        }
        report.deviations = {even, odd};
    }
    return report;
}

bool is_ppt_bell(const BellProbabilities& bp, double tol) {
    const auto tilde = circulant::tilde_blocks(to_circulant(bp));
    if (!is_psd(tilde[0], tol)) return false;
    if (bp.d() % 2 == 0 && !is_psd(tilde[1], tol)) return false;
    return true;
}

bool ppt_d2(const BellProbabilities& bp, double tol) {
    require_dimension(bp, 2, "ppt_d2");
    std::array<double, 2> x{};
    std::array<double, 2> y{};
    for (std::size_t n = 0; n < 2; ++n) {
        x[n] = 0.5 * (bp(0, n) + bp(1, n));
        y[n] = 0.5 * (bp(0, n) - bp(1, n));
    }
    // x0^2 >= |y1|^2 and x1^2 >= |y0|^2, with x_n >= 0.
    return x[0] - std::abs(y[1]) >= -tol && x[1] - std::abs(y[0]) >= -tol;
}

ComplexMatrix tilde0_d3(const std::array<double, 3>& x, const std::array<Complex, 3>& z) {
    return ComplexMatrix{{x[0], z[2], std::conj(z[1])},
                         {std::conj(z[2]), x[1], z[0]},
                         {z[1], std::conj(z[0]), x[2]}};
}

D3Verdict ppt_d3(const BellProbabilities& bp, double tol) {
    require_dimension(bp, 3, "ppt_d3");
    const auto roots = roots_of_unity(3);
    D3Verdict v;
    for (std::size_t n = 0; n < 3; ++n) {
        v.x[n] = (bp(0, n) + bp(1, n) + bp(2, n)) / 3.0;
        v.z[n] = (bp(0, n) + roots[1] * bp(1, n) + roots[2] * bp(2, n)) / 3.0;
    }
    const auto& x = v.x;
    const auto& z = v.z;
    v.c1 = x[0] * x[1] - std::norm(z[2]) >= -tol;
    const double lhs = x[0] * x[1] * x[2] + 2.0 * (z[0] * z[1] * z[2]).real();
    const double rhs = x[0] * std::norm(z[0]) + x[1] * std::norm(z[1]) + x[2] * std::norm(z[2]);
    v.c2 = lhs - rhs >= -tol;
    v.eigen_psd = is_psd(tilde0_d3(x, z));
    v.consistent = (v.c1 && v.c2) == v.eigen_psd;
    return v;
}

std::array<ComplexMatrix, 2> tilde_d4(const BellProbabilities& bp) {
    require_dimension(bp, 4, "tilde_d4");
    const Complex i{0.0, 1.0};
    std::array<double, 4> x{};
    std::array<double, 4> y{};
    std::array<Complex, 4> z{};
    for (std::size_t n = 0; n < 4; ++n) {
        const double p0 = bp(0, n), p1 = bp(1, n), p2 = bp(2, n), p3 = bp(3, n);
        x[n] = (p0 + p1 + p2 + p3) / 4.0;
        y[n] = (p0 - p1 + p2 - p3) / 4.0;
        z[n] = (p0 + i * p1 - p2 - i * p3) / 4.0;
    }
    auto c = [](Complex w) { return std::conj(w); };
    // The upper-left off-diagonal coordinate of the first block is z_3.
    ComplexMatrix t0{{x[0], z[3], y[2], c(z[1])},
                     {c(z[3]), x[2], z[1], y[0]},
                     {y[2], c(z[1]), x[0], z[3]},
                     {z[1], y[0], c(z[3]), x[2]}};
    ComplexMatrix t1{{x[1], z[0], y[3], c(z[2])},
                     {c(z[0]), x[3], z[2], y[1]},
                     {y[3], c(z[2]), x[1], z[0]},
                     {z[2], y[1], c(z[0]), x[3]}};
    return {std::move(t0), std::move(t1)};
}

bool ppt_d4(const BellProbabilities& bp, double tol) {
    const auto blocks = tilde_d4(bp);
    return is_psd(blocks[0], tol) && is_psd(blocks[1], tol);
}

ComplexMatrix kraus_apply(const BellProbabilities& bp, const ComplexMatrix& x) {
    const std::size_t d = bp.d();
    if (x.rows() != d || x.cols() != d) throw DimensionError("kraus_apply: input must be d x d");
    ComplexMatrix out(d, d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) {
            if (bp(m, n) == 0.0) continue;
            const auto u = weyl(d, {m, n});
            out += (u * x * u.adjoint()) * bp(m, n);
        }
    return out;
}

BellProbabilities random_probabilities(std::size_t d, Rng& rng) {
    auto p = random_simplex(d * d, rng);
    // Exact unit sum for the 1e-12 validation.
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= total;
    return {d, std::move(p)};
}

}  // namespace qbell::bell
