#include "qbell/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qbell/circulant.hpp"
#include "qbell/families.hpp"
#include "qbell/linalg.hpp"
#include "qbell/random.hpp"

namespace qbell::witness {

namespace {

constexpr double kSpectralTol = 1e-12;

ComplexMatrix magic_basis_columns(std::size_t d, const std::vector<bell::WeylIndex>& order) {
    ComplexMatrix basis(d * d, d * d);
    for (std::size_t a = 0; a < order.size(); ++a) {
        const auto psi = bell::magic_vector(d, order[a]);
        for (std::size_t r = 0; r < d * d; ++r) basis(r, a) = psi[r];
    }
    return basis;
}

void require_nonnegative(std::initializer_list<double> values, const char* what) {
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + ": parameters must be >= 0");
    }
}

std::size_t bipartite_dimension(const ComplexMatrix& w) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(w.rows()))));
    if (!w.is_square() || d * d != w.rows()) throw DimensionError("witness is not d^2 x d^2");
    return d;
}

}  // namespace

std::vector<bell::WeylIndex> default_magic_order(std::size_t d) {
    std::vector<bell::WeylIndex> order;
    order.reserve(d * d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) order.push_back({m, n});
    return order;
}

SpectralWitness::SpectralWitness(std::size_t d, std::vector<double> lambdas, std::size_t negative_count,
                                 ComplexMatrix basis, std::vector<bell::WeylIndex> order)
    : d_(d), lambdas_(std::move(lambdas)), negative_count_(negative_count), basis_(std::move(basis)),
      order_(std::move(order)) {
    if (d_ == 0) throw InvalidArgument("SpectralWitness: d must be positive");
    if (lambdas_.size() != d_ * d_) {
        throw DimensionError("SpectralWitness: expected " + std::to_string(d_ * d_) + " eigenvalues");
    }
    if (negative_count_ > lambdas_.size()) throw InvalidArgument("SpectralWitness: negative part too large");
    for (std::size_t a = 0; a < lambdas_.size(); ++a) {
        if (!(lambdas_[a] >= 0.0) || !std::isfinite(lambdas_[a])) {
            throw WitnessConstraintError(a, "eigenvalue magnitude must be >= 0");
        }
    }
    if (basis_.rows() != d_ * d_ || basis_.cols() != d_ * d_) {
        throw DimensionError("SpectralWitness: basis must be d^2 x d^2");
    }
    const double defect = max_abs_diff(basis_.adjoint() * basis_, ComplexMatrix::identity(d_ * d_));
    if (defect > 1e-10) throw InvalidArgument("SpectralWitness: basis is not orthonormal");
}

SpectralWitness SpectralWitness::magic(std::size_t d, std::vector<double> lambdas, std::size_t negative_count,
                                       std::vector<bell::WeylIndex> order) {
    if (order.empty()) order = default_magic_order(d);
    if (order.size() != d * d) throw DimensionError("SpectralWitness: magic order must list d^2 indices");
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& x, const auto& y) { return std::pair{x.m, x.n} < std::pair{y.m, y.n}; });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("SpectralWitness: magic order repeats an index");
    }
    auto basis = magic_basis_columns(d, order);
    return {d, std::move(lambdas), negative_count, std::move(basis), std::move(order)};
}

SpectralWitness SpectralWitness::explicit_basis(std::size_t d, std::vector<double> lambdas,
                                                std::size_t negative_count, ComplexMatrix basis) {
    return {d, std::move(lambdas), negative_count, std::move(basis), {}};
}

double SpectralWitness::eigenvalue(std::size_t alpha) const {
    return alpha < negative_count_ ? -lambdas_[alpha] : lambdas_[alpha];
}

ComplexVector SpectralWitness::basis_vector(std::size_t alpha) const {
    ComplexVector v(d_ * d_);
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = basis_(r, alpha);
    return v;
}

double k_norm_sq(std::span<const Complex> psi, std::size_t d, std::size_t k) {
    if (k < 1 || k > d) throw InvalidArgument("k_norm_sq: k must lie in [1, d]");
    const auto schmidt = schmidt_coefficients(psi, d);
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += schmidt.coefficients[j] * schmidt.coefficients[j];
    return s;
}

std::optional<double> try_mu(std::size_t ell, const SpectralWitness& w) {
    double weighted = 0.0;
    double mass = 0.0;
    for (std::size_t a = 0; a < w.negative_count(); ++a) {
        const double norm = k_norm_sq(w.basis_vector(a), w.d(), ell);
        weighted += w.lambdas()[a] * norm;
        mass += norm;
    }
    const double denominator = 1.0 - mass;
    if (!(denominator > kSpectralTol)) return std::nullopt;
    return weighted / denominator;
}

double mu(std::size_t ell, const SpectralWitness& w) {
    if (auto value = try_mu(ell, w)) return *value;
    double mass = 0.0;
    for (std::size_t a = 0; a < w.negative_count(); ++a) mass += k_norm_sq(w.basis_vector(a), w.d(), ell);
    throw MuPreconditionError(ell, 1.0 - mass);
}

Theorem3Verdict theorem3_k_ew(const SpectralWitness& w, std::size_t k) {
    if (k < 1 || k > w.d()) throw InvalidArgument("theorem3_k_ew: k must lie in [1, d]");
    Theorem3Verdict v;
    v.k = k;
    v.has_negative_part = w.negative_count() > 0;
    const auto& lambdas = w.lambdas();
    const auto positive_begin = lambdas.begin() + static_cast<std::ptrdiff_t>(w.negative_count());
    const double min_positive =
        positive_begin == lambdas.end() ? std::numeric_limits<double>::infinity()
                                        : *std::min_element(positive_begin, lambdas.end());
    const double max_positive =
        positive_begin == lambdas.end() ? -std::numeric_limits<double>::infinity()
                                        : *std::max_element(positive_begin, lambdas.end());

    v.mu_k = try_mu(k, w);
    if (v.mu_k) v.is_k_ew_certified = min_positive >= *v.mu_k - kSpectralTol * (1.0 + std::abs(*v.mu_k));
    if (k + 1 <= w.d()) {
        v.mu_k_plus_1 = try_mu(k + 1, w);
        if (v.mu_k_plus_1) {
            v.not_k_plus_1 = v.is_k_ew_certified &&
                             *v.mu_k_plus_1 > max_positive + kSpectralTol * (1.0 + std::abs(*v.mu_k_plus_1));
        }
    }
    return v;
}

SpectralWitness corollary2_bell_witness(std::size_t d, std::size_t negative_count, std::vector<double> lambdas,
                                        std::vector<bell::WeylIndex> order) {
    if (negative_count >= d) {
        throw WitnessConstraintError(negative_count, "negative part must satisfy L < d");
    }
    if (lambdas.size() != d * d) throw DimensionError("corollary2_bell_witness: expected d^2 eigenvalues");
    for (std::size_t a = 0; a < lambdas.size(); ++a) {
        if (!(lambdas[a] >= 0.0)) throw WitnessConstraintError(a, "eigenvalue magnitude must be >= 0");
    }
    const double negative_sum =
        std::accumulate(lambdas.begin(), lambdas.begin() + static_cast<std::ptrdiff_t>(negative_count), 0.0);
    const double mu1 = negative_sum / static_cast<double>(d - negative_count);
    for (std::size_t a = negative_count; a < lambdas.size(); ++a) {
        if (lambdas[a] < mu1 - kSpectralTol * (1.0 + mu1)) {
            throw WitnessConstraintError(a, "lambda = " + std::to_string(lambdas[a]) + " < mu_1 = " +
                                                std::to_string(mu1));
        }
    }
    return SpectralWitness::magic(d, std::move(lambdas), negative_count, std::move(order));
}

ComplexMatrix assemble(const SpectralWitness& w) {
    const std::size_t dim = w.d() * w.d();
    ComplexMatrix out(dim, dim);
    for (std::size_t a = 0; a < dim; ++a) {
        const double ev = w.eigenvalue(a);
        if (ev == 0.0) continue;
        out += ComplexMatrix::outer(w.basis_vector(a)) * ev;
    }
    return out;
}

ComplexMatrix flip(std::size_t d) {
    ComplexMatrix f(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
    return f;
}

SpectralWitness flip_spectral() {
    return SpectralWitness::magic(2, {1.0, 1.0, 1.0, 1.0}, 1, {{1, 1}, {0, 0}, {0, 1}, {1, 0}});
}

ComplexMatrix choi_grid(double a, double b, double c) {
    const Complex m1{-1.0, 0.0};
    const Complex o{};
    return ComplexMatrix{
        {a, o, o, o, m1, o, o, o, m1},
        {o, b, o, o, o, o, o, o, o},
        {o, o, c, o, o, o, o, o, o},
        {o, o, o, c, o, o, o, o, o},
        {m1, o, o, o, a, o, o, o, m1},
        {o, o, o, o, o, b, o, o, o},
        {o, o, o, o, o, o, b, o, o},
        {o, o, o, o, o, o, o, c, o},
        {m1, o, o, o, m1, o, o, o, a},
    };
}

ComplexMatrix choi_spectral(double a, double b, double c) {
    using bell::bell_projector;
    using bell::sigma_projector;
    return bell_projector(3, {0, 0}) * (a - 2.0) + (bell_projector(3, {1, 0}) + bell_projector(3, {2, 0})) * (a + 1.0) +
           sigma_projector(3, 1) * b + sigma_projector(3, 2) * c;
}

ChoiVerdict choi_validity(double a, double b, double c) {
    ChoiVerdict v;
    v.a_in_range = a >= 0.0 && a < 2.0;
    v.sum_condition = a + b + c >= 2.0;
    v.product_condition = a > 1.0 || b * c >= (1.0 - a) * (1.0 - a);
    return v;
}

ChoiWitness choi_witness(double a, double b, double c) {
    require_nonnegative({a, b, c}, "choi_witness");
    return {choi_grid(a, b, c), choi_validity(a, b, c)};
}

ComplexMatrix w_lambda_mu_grid(double lambda, double mu) {
    const Complex m1{-1.0, 0.0};
    const Complex o{};
    const Complex one{1.0, 0.0};
    const Complex l{lambda, 0.0};
    const Complex u{mu, 0.0};
    const Complex pu{1.0 + mu, 0.0};
    return ComplexMatrix{
        {one, o, o, o, m1, o, o, o, m1},
        {o, pu, o, o, o, u, u, o, o},
        {o, o, l, l, o, o, o, l, o},
        {o, o, l, l, o, o, o, l, o},
        {m1, o, o, o, one, o, o, o, m1},
        {o, u, o, o, o, pu, u, o, o},
        {o, u, o, o, o, u, pu, o, o},
        {o, o, l, l, o, o, o, l, o},
        {m1, o, o, o, m1, o, o, o, one},
    };
}

ComplexMatrix w_lambda_mu_spectral(double lambda, double mu) {
    using bell::bell_projector;
    using bell::sigma_projector;
    return bell_projector(3, {0, 0}) * -3.0 + sigma_projector(3, 0) * 2.0 + sigma_projector(3, 1) +
           bell_projector(3, {0, 1}) * (3.0 * mu) + bell_projector(3, {0, 2}) * (3.0 * lambda);
}

ComplexMatrix w_lambda_mu(double lambda, double mu) {
    require_nonnegative({lambda, mu}, "w_lambda_mu");
    return w_lambda_mu_grid(lambda, mu);
}

SpectralWitness w_lambda_mu_witness(double lambda, double mu) {
    require_nonnegative({lambda, mu}, "w_lambda_mu");
    // Eigenvalues in the default magic order (m, n) = (0,0), (0,1), ..., (2,2).
    std::vector<double> lambdas{1.0, 1.0 + 3.0 * mu, 3.0 * lambda, 2.0, 1.0, 0.0, 2.0, 1.0, 0.0};
    return SpectralWitness::magic(3, std::move(lambdas), 1);
}

double lambda_bound(double gamma) { return (1.0 - gamma * gamma) / (2.0 + 1.0 / (gamma * gamma)); }

double mu_bound(double gamma, double lambda) {
    return (1.0 - gamma * gamma - lambda * (2.0 + 1.0 / (gamma * gamma))) / (2.0 + gamma * gamma);
}

WitnessVerdict evaluate(const ComplexMatrix& w, const ComplexMatrix& rho, std::string witness_id,
                        std::string state_id) {
    if (!w.is_square() || w.rows() != rho.rows() || w.cols() != rho.cols()) {
        throw DimensionError("evaluate: witness and state dimensions differ");
    }
    const Complex t = trace_of_product(w, rho);
    if (std::abs(t.imag()) > 1e-11) {
        throw InvalidArgument("evaluate: Tr(W rho) has imaginary part " + std::to_string(t.imag()));
    }
    return {t.real(), t.real() < kDetectionThreshold, std::move(witness_id), std::move(state_id)};
}

GammaDetection detects_rho_gamma(double lambda, double mu, double gamma) {
    const auto rho = circulant::assemble_dense(bell::to_circulant(families::rho_gamma(3, gamma)));
    GammaDetection out;
    out.verdict = evaluate(w_lambda_mu(lambda, mu), rho, "W_lambda_mu", "rho_gamma");
    out.inside_region = lambda < lambda_bound(gamma) && mu < mu_bound(gamma, lambda);
    return out;
}

ComplexMatrix reduction_witness(std::size_t d) {
    if (d < 2) throw InvalidArgument("reduction_witness: d must be at least 2");
    return ComplexMatrix::identity(d * d) * (1.0 / static_cast<double>(d)) - bell::bell_projector(d, {0, 0});
}

SpectralWitness reduction_spectral(std::size_t d) {
    if (d < 2) throw InvalidArgument("reduction_witness: d must be at least 2");
    const double inv = 1.0 / static_cast<double>(d);
    std::vector<double> lambdas(d * d, inv);
    lambdas[0] = 1.0 - inv;
    return SpectralWitness::magic(d, std::move(lambdas), 1);
}

ComplexMatrix w_dk_block(std::size_t d, std::size_t k) {
    ComplexMatrix w(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ComplexMatrix x(d, d);
            if (i == j) {
                x = ComplexMatrix::unit(d, i, i) * static_cast<double>(d - k - 1);
                for (std::size_t l = 1; l <= k; ++l) {
                    const auto s = circulant::shift_matrix(d, l);
                    x += s * ComplexMatrix::unit(d, i, i) * s.adjoint();
                }
            } else {
                x = ComplexMatrix::unit(d, i, j) * -1.0;
            }
            w += kron(ComplexMatrix::unit(d, i, j), x);
        }
    return w;
}

ComplexMatrix w_dk_spectral(std::size_t d, std::size_t k) {
    ComplexMatrix w = bell::sigma_projector(d, 0) * static_cast<double>(d - k);
    for (std::size_t l = 1; l <= k; ++l) w += bell::sigma_projector(d, l);
    w -= bell::bell_projector(d, {0, 0}) * static_cast<double>(d);
    return w;
}

ComplexMatrix w_dk(std::size_t d, std::size_t k) {
    if (d < 2 || k < 1 || k + 1 > d) throw InvalidArgument("w_dk: k must lie in [1, d-1]");
    return w_dk_block(d, k);
}

double block_positivity_sample(const ComplexMatrix& w, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw InvalidArgument("block_positivity_sample: trials must be >= 1");
    const std::size_t d = bipartite_dimension(w);
    Rng rng(seed);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        const auto x = random_unit_vector(d, rng);
        const auto y = random_unit_vector(d, rng);
        const auto xy = kron(x, y);
        best = std::min(best, expectation(w, xy, xy).real());
    }
    return best;
}

}  // namespace qbell::witness
