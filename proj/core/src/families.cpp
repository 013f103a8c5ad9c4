#include "qbell/families.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbell/circulant.hpp"
#include "qbell/error.hpp"

namespace qbell::families {

namespace {

void require_simplex(const std::vector<double>& v, std::size_t d, const char* what) {
    if (v.size() != d) {
        throw InvalidArgument(std::string(what) + ": expected " + std::to_string(d) + " weights, got " +
                              std::to_string(v.size()));
    }
    double total = 0.0;
    for (double x : v) {
        if (!std::isfinite(x) || x < -1e-12) throw InvalidArgument(std::string(what) + ": negative weight");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidArgument(std::string(what) + ": weights sum to " + std::to_string(total));
    }
}

bool is_uniform(const std::vector<double>& v, double tol = 1e-12) {
    const double target = 1.0 / static_cast<double>(v.size());
    return std::all_of(v.begin(), v.end(), [&](double x) { return std::abs(x - target) <= tol; });
}

SeparabilityEvidence evidence_for(const bell::BellProbabilities& bp, bool claimed, std::string note) {
    const auto cs = bell::to_circulant(bp);
    return {claimed, circulant::is_ppt(cs), circulant::ccnr_value(cs), std::move(note)};
}

}  // namespace

EpsilonFamily::EpsilonFamily(double e) : eps(e) {
    if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("rho_epsilon: eps must be positive");
}

double EpsilonFamily::normalization() const { return 1.0 / (1.0 + eps + 1.0 / eps); }

bell::BellProbabilities rho_epsilon(double eps) {
    const EpsilonFamily fam(eps);
    const double n = fam.normalization();
    std::vector<double> p(9, 0.0);
    p[0] = n;
    for (std::size_t m = 0; m < 3; ++m) {
        p[m * 3 + 1] = n * eps / 3.0;
        p[m * 3 + 2] = n / (3.0 * eps);
    }
    return {3, std::move(p)};
}

GammaFamily::GammaFamily(std::size_t dim, double g) : d(dim), gamma(g) {
    if (dim < 3) throw InvalidArgument("rho_gamma: d must be at least 3");
    if (!(g > 0.0) || !std::isfinite(g)) throw InvalidArgument("rho_gamma: gamma must be positive");
}

double GammaFamily::a() const { return (gamma * gamma + static_cast<double>(d) - 1.0) / static_cast<double>(d); }

double GammaFamily::b() const {
    return (1.0 / (gamma * gamma) + static_cast<double>(d) - 1.0) / static_cast<double>(d);
}

double GammaFamily::normalization() const {
    const double dd = static_cast<double>(d);
    return dd * dd - 2.0 + gamma * gamma + 1.0 / (gamma * gamma);
}

bell::BellProbabilities rho_gamma(std::size_t d, double gamma) {
    const GammaFamily fam(d, gamma);
    const double norm = fam.normalization();
    std::vector<double> p(d * d, 0.0);
    p[0] = static_cast<double>(d) / norm;
    for (std::size_t m = 0; m < d; ++m) {
        p[m * d + 1] = fam.a() / norm;
        for (std::size_t l = 2; l + 2 <= d; ++l) p[m * d + l] = 1.0 / norm;
        p[m * d + (d - 1)] = fam.b() / norm;
    }
    return {d, std::move(p)};
}

bell::BellProbabilities delta_distribution(std::size_t d, std::size_t k, const std::vector<double>& pi) {
    require_simplex(pi, d, "delta_distribution");
    if (k >= d) throw InvalidArgument("delta_distribution: row index out of range");
    std::vector<double> p(d * d, 0.0);
    for (std::size_t n = 0; n < d; ++n) p[k * d + n] = pi[n];
    return {d, std::move(p)};
}

SeparabilityEvidence classify_delta(std::size_t d, std::size_t k, const std::vector<double>& pi) {
    const auto bp = delta_distribution(d, k, pi);
    const bool uniform = is_uniform(pi);
    return evidence_for(bp, uniform,
                        uniform ? "delta distribution with uniform pi: separable"
                                : "delta distribution with non-uniform pi: entangled");
}

bell::BellProbabilities product_distribution(std::size_t d, const std::vector<double>& q,
                                             const std::vector<double>& p) {
    require_simplex(q, d, "product_distribution (q)");
    require_simplex(p, d, "product_distribution (p)");
    std::vector<double> w(d * d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) w[m * d + n] = q[m] * p[n];
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= total;
    return {d, std::move(w)};
}

SeparabilityEvidence classify_product(std::size_t d, const std::vector<double>& q, const std::vector<double>& p) {
    const auto bp = product_distribution(d, q, p);
    const bool uniform = is_uniform(p);
    if (!uniform && is_uniform(q)) {
        // a = I/d: every block is diagonal, so the state is diagonal in the product basis
        return evidence_for(bp, true, "product distribution with uniform q: diagonal in the product basis, separable");
    }
    return evidence_for(bp, uniform,
                        uniform ? "product distribution with uniform p: separable"
                                : "product distribution with non-uniform p: entangled");
}

ComplexMatrix product_block(std::size_t d, const std::vector<double>& q) {
    require_simplex(q, d, "product_block");
    const auto roots = bell::roots_of_unity(d);
    ComplexMatrix a(d, d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
            Complex s{};
            for (std::size_t m = 0; m < d; ++m) s += roots[(m * (k + d - l)) % d] * q[m];
            a(k, l) = s / static_cast<double>(d);
        }
    return a;
}

LatticeSubset::LatticeSubset(std::size_t d, std::size_t copies, std::vector<LatticePoint> members)
    : d_(d), copies_(copies), local_dim_(1), members_(std::move(members)) {
    if (d == 0 || copies == 0) throw InvalidArgument("LatticeSubset: d and N must be positive");
    for (std::size_t c = 0; c < copies; ++c) {
        if (local_dim_ > kLatticeMaxDim) break;
        local_dim_ *= d;
    }
    if (members_.empty()) throw InvalidArgument("LatticeSubset: empty subset");
    for (const auto& [m, n] : members_) {
        if (m.size() != copies || n.size() != copies) {
            throw InvalidArgument("LatticeSubset: point has wrong number of components");
        }
        const auto in_range = [d](std::size_t x) { return x < d; };
        if (!std::all_of(m.begin(), m.end(), in_range) || !std::all_of(n.begin(), n.end(), in_range)) {
            throw InvalidArgument("LatticeSubset: component out of range");
        }
    }
    std::set<LatticePoint> unique(members_.begin(), members_.end());
    if (unique.size() != members_.size()) throw InvalidArgument("LatticeSubset: duplicate members");
}

ComplexMatrix lattice_weyl(std::size_t d, const LatticePoint& point) {
    ComplexMatrix u = ComplexMatrix::identity(1);
    for (std::size_t c = 0; c < point.first.size(); ++c) u = kron(u, bell::weyl(d, {point.first[c], point.second[c]}));
    return u;
}

ComplexMatrix lattice_state(const LatticeSubset& subset) {
    const std::size_t dim = subset.local_dimension();
    if (dim * dim > kLatticeMaxDim) {
        throw InvalidArgument("lattice_state: D^2 = " + std::to_string(dim * dim) + " exceeds cap " +
                              std::to_string(kLatticeMaxDim));
    }
    // psi+_D = (1/sqrt D) sum_k e_k (x) e_k; psi_mn = (I (x) U_mn) psi+_D.
    const double w = 1.0 / std::sqrt(static_cast<double>(dim));
    ComplexMatrix rho(dim * dim, dim * dim);
    for (const auto& point : subset.members()) {
        const auto u = lattice_weyl(subset.d(), point);
        ComplexVector psi(dim * dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t r = 0; r < dim; ++r) psi[k * dim + r] = w * u(r, k);
        rho += ComplexMatrix::outer(psi);
    }
    rho *= 1.0 / static_cast<double>(subset.members().size());
    return rho;
}

}  // namespace qbell::families
