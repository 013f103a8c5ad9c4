#pragma once

// Bell-diagonal entanglement witnesses.
//
// A spectral witness is W = W+ - W- with W- = sum_{a < L} lambda_a P_a and
// W+ = sum_{a >= L} lambda_a P_a over an orthonormal basis {psi_a} of
// C^d (x) C^d (by default the magic basis). Validity is certified through the
// Schmidt k-norms ||psi||_k^2 = s_1^2 + ... + s_k^2 of the basis vectors.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbell/belldiag.hpp"
#include "qbell/error.hpp"
#include "qbell/matrix.hpp"

namespace qbell::witness {

// A spectral condition that must hold before a witness can be built.
class WitnessConstraintError : public InvalidArgument {
public:
    WitnessConstraintError(std::size_t index, const std::string& why)
        : InvalidArgument("witness constraint violated at index " + std::to_string(index) + ": " + why),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

// mu_l is undefined because sum_{a < L} ||psi_a||_l^2 >= 1.
class MuPreconditionError : public InvalidArgument {
public:
    MuPreconditionError(std::size_t ell, double denominator)
        : InvalidArgument("mu_" + std::to_string(ell) + " undefined: 1 - sum ||psi||^2 = " +
                          std::to_string(denominator)),
          ell_(ell) {}
    std::size_t ell() const noexcept { return ell_; }

private:
    std::size_t ell_;
};

class SpectralWitness {
public:
    // Magic basis in the given order (default alpha = m d + n). `lambdas` are
    // the magnitudes, all >= 0; the first `negative_count` enter with a minus.
    static SpectralWitness magic(std::size_t d, std::vector<double> lambdas, std::size_t negative_count,
                                 std::vector<bell::WeylIndex> order = {});
    // Explicit orthonormal basis given as the columns of `basis` (d^2 x d^2).
    static SpectralWitness explicit_basis(std::size_t d, std::vector<double> lambdas, std::size_t negative_count,
                                          ComplexMatrix basis);

    std::size_t d() const noexcept { return d_; }
    std::size_t negative_count() const noexcept { return negative_count_; }
    const std::vector<double>& lambdas() const noexcept { return lambdas_; }
    // Signed eigenvalue of W on basis vector alpha.
    double eigenvalue(std::size_t alpha) const;
    ComplexVector basis_vector(std::size_t alpha) const;
    // Empty for an explicit basis.
    const std::vector<bell::WeylIndex>& magic_order() const noexcept { return order_; }

private:
    SpectralWitness(std::size_t d, std::vector<double> lambdas, std::size_t negative_count, ComplexMatrix basis,
                    std::vector<bell::WeylIndex> order);

    std::size_t d_;
    std::vector<double> lambdas_;
    std::size_t negative_count_;
    ComplexMatrix basis_;
    std::vector<bell::WeylIndex> order_;
};

std::vector<bell::WeylIndex> default_magic_order(std::size_t d);

// sum of the k largest squared Schmidt coefficients; 1 <= k <= d.
double k_norm_sq(std::span<const Complex> psi, std::size_t d, std::size_t k);

// mu_l = sum_{a<L} lambda_a ||psi_a||_l^2 / (1 - sum_{a<L} ||psi_a||_l^2).
// Throws MuPreconditionError when the denominator is not positive.
double mu(std::size_t ell, const SpectralWitness& w);
std::optional<double> try_mu(std::size_t ell, const SpectralWitness& w);

struct Theorem3Verdict {
    std::size_t k = 0;
    bool has_negative_part = false;
    std::optional<double> mu_k;          // empty when its precondition fails
    bool is_k_ew_certified = false;      // lambda_a >= mu_k on the positive part
    std::optional<double> mu_k_plus_1;   // empty when k = d or its precondition fails
    bool not_k_plus_1 = false;           // mu_{k+1} > lambda_a on the positive part
    bool is_witness() const { return has_negative_part && is_k_ew_certified; }
};

// Sufficient conditions only; a false verdict proves nothing.
Theorem3Verdict theorem3_k_ew(const SpectralWitness& w, std::size_t k);

// Magic-basis witness: requires L < d, lambda >= 0 and
// lambda_a >= mu_1 = (sum_{a<L} lambda_a) / (d - L) on the positive part.
SpectralWitness corollary2_bell_witness(std::size_t d, std::size_t negative_count, std::vector<double> lambdas,
                                        std::vector<bell::WeylIndex> order = {});

ComplexMatrix assemble(const SpectralWitness& w);

// Swap operator sum_ij e_ij (x) e_ji.
ComplexMatrix flip(std::size_t d);
SpectralWitness flip_spectral();  // d = 2, negative index (1,1) first

struct ChoiVerdict {
    bool a_in_range = false;    // 0 <= a < 2
    bool sum_condition = false; // a + b + c >= 2
    bool product_condition = false;  // a <= 1 implies bc >= (1 - a)^2
    bool valid() const { return a_in_range && sum_condition && product_condition; }
};

struct ChoiWitness {
    ComplexMatrix matrix;  // printed 9x9 grid
    ChoiVerdict verdict;
};

ComplexMatrix choi_grid(double a, double b, double c);
// (a-2) P00 + (a+1)(P10 + P20) + b Pi_1 + c Pi_2
ComplexMatrix choi_spectral(double a, double b, double c);
ChoiVerdict choi_validity(double a, double b, double c);
// Throws InvalidArgument for negative parameters.
ChoiWitness choi_witness(double a, double b, double c);

ComplexMatrix w_lambda_mu_grid(double lambda, double mu);
// -3 P00 + 2 Pi_0 + Pi_1 + 3 mu P01 + 3 lambda P02
ComplexMatrix w_lambda_mu_spectral(double lambda, double mu);
// Printed grid; throws InvalidArgument for negative parameters.
ComplexMatrix w_lambda_mu(double lambda, double mu);
SpectralWitness w_lambda_mu_witness(double lambda, double mu);

// Upper bounds on lambda and mu under which W_{lambda,mu} detects rho_gamma.
double lambda_bound(double gamma);
double mu_bound(double gamma, double lambda);

struct WitnessVerdict {
    double value = 0.0;  // Re Tr(W rho)
    bool detected = false;
    std::string witness_id;
    std::string state_id;
};

inline constexpr double kDetectionThreshold = -1e-12;

// Tr(W rho). Throws DimensionError on mismatch and InvalidArgument when
// |Im Tr(W rho)| > 1e-11.
WitnessVerdict evaluate(const ComplexMatrix& w, const ComplexMatrix& rho, std::string witness_id = {},
                        std::string state_id = {});

struct GammaDetection {
    WitnessVerdict verdict;
    bool inside_region = false;  // both bounds hold strictly
};

// Tr(W_{lambda,mu} rho_gamma) for d = 3.
GammaDetection detects_rho_gamma(double lambda, double mu, double gamma);

// (1/d) I (x) I - P+_d
ComplexMatrix reduction_witness(std::size_t d);
SpectralWitness reduction_spectral(std::size_t d);

// sum_ij e_ij (x) X_ij with X_ii = (d-k-1) e_ii + sum_{l=1}^k S^l e_ii S^-l, X_ij = -e_ij.
ComplexMatrix w_dk_block(std::size_t d, std::size_t k);
// (d-k) Pi_0 + sum_{l=1}^k Pi_l - d P00
ComplexMatrix w_dk_spectral(std::size_t d, std::size_t k);
// Block form; throws InvalidArgument unless 1 <= k <= d-1.
ComplexMatrix w_dk(std::size_t d, std::size_t k);

// min over `trials` random product vectors x (x) y of <x (x) y| W |x (x) y>.
double block_positivity_sample(const ComplexMatrix& w, std::size_t trials, std::uint64_t seed);

}  // namespace qbell::witness
