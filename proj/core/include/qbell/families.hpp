#pragma once

// Named Bell-diagonal families: the two-qutrit rho_eps family, the rho_gamma
// family on C^d (x) C^d, delta and product distributions, and generalized
// lattice states built from tensor products of Weyl operators.

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbell/belldiag.hpp"
#include "qbell/matrix.hpp"

namespace qbell::families {

struct EpsilonFamily {
    double eps;

    // Throws InvalidArgument for eps <= 0.
    explicit EpsilonFamily(double eps);
    // N = 1 / (1 + eps + 1/eps)
    double normalization() const;
};

// Two-qutrit family with p_00 = N, p_m1 = N eps / 3, p_m2 = N / (3 eps), the
// remaining weights of column 0 zero. This is the assignment whose Fourier
// coordinates are x = (N/3)(1, eps, 1/eps), z = (N/3, 0, 0).
bell::BellProbabilities rho_epsilon(double eps);

struct GammaFamily {
    std::size_t d;
    double gamma;

    // Throws InvalidArgument for d < 3 or gamma <= 0.
    GammaFamily(std::size_t d, double gamma);
    double a() const;  // (gamma^2 + d - 1) / d
    double b() const;  // (gamma^-2 + d - 1) / d
    double normalization() const;  // d^2 - 2 + gamma^2 + gamma^-2
};

// rho_gamma = (d P_00 + a Pi_1 + sum_{l=2}^{d-2} Pi_l + b Pi_{d-1}) / N
bell::BellProbabilities rho_gamma(std::size_t d, double gamma);

// Verdicts attached to a distribution whose separability is claimed by a
// closed-form statement. `claimed_separable` is that statement; the PPT and
// realignment values are numerical evidence only.
struct SeparabilityEvidence {
    bool claimed_separable = false;
    bool ppt = false;
    double ccnr = 0.0;
    std::string note;
};

// p_mn = delta_{mk} pi_n, i.e. rho = sum_n pi_n P_{kn}. Separable iff pi is uniform.
bell::BellProbabilities delta_distribution(std::size_t d, std::size_t k, const std::vector<double>& pi);
SeparabilityEvidence classify_delta(std::size_t d, std::size_t k, const std::vector<double>& pi);

// p_mn = q_m p_n; then a^(n) = p_n a with a_kl = (1/d) sum_m lambda^{m(k-l)} q_m.
// Separable iff p is uniform, except for uniform q where every block is diagonal.
bell::BellProbabilities product_distribution(std::size_t d, const std::vector<double>& q,
                                             const std::vector<double>& p);
SeparabilityEvidence classify_product(std::size_t d, const std::vector<double>& q, const std::vector<double>& p);
// The common block a of a product distribution.
ComplexMatrix product_block(std::size_t d, const std::vector<double>& q);

// Point (m-vector, n-vector) of the N-copy lattice.
using LatticePoint = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

class LatticeSubset {
public:
    // Throws InvalidArgument for an empty set, duplicates, wrong vector
    // lengths or components out of range.
    LatticeSubset(std::size_t d, std::size_t copies, std::vector<LatticePoint> members);

    std::size_t d() const noexcept { return d_; }
    std::size_t copies() const noexcept { return copies_; }
    // D = d^N
    std::size_t local_dimension() const noexcept { return local_dim_; }
    const std::vector<LatticePoint>& members() const noexcept { return members_; }

private:
    std::size_t d_;
    std::size_t copies_;
    std::size_t local_dim_;
    std::vector<LatticePoint> members_;
};

inline constexpr std::size_t kLatticeMaxDim = 256;  // cap on D^2

// U_{m n} = U_{m1 n1} (x) ... (x) U_{mN nN}
ComplexMatrix lattice_weyl(std::size_t d, const LatticePoint& point);

// rho_I = (1/|I|) sum_{(m,n) in I} P_{mn} on C^D (x) C^D. Throws
// InvalidArgument when D^2 exceeds kLatticeMaxDim.
ComplexMatrix lattice_state(const LatticeSubset& subset);

}  // namespace qbell::families
