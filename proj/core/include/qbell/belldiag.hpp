#pragma once

// Generalized Bell-diagonal (magic simplex) states
//     rho = sum_{m,n} p_{mn} P_{mn},  P_{mn} = (I (x) U_{mn}) P+_d (I (x) U_{mn}^dag)
// with Weyl operators U_{mn} e_k = lambda^{mk} e_{k+n}, lambda = exp(2 pi i / d).
// Every such state is circulant with a^(n) = H D^(n) H^dag.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qbell/circulant.hpp"
#include "qbell/linalg.hpp"
#include "qbell/matrix.hpp"
#include "qbell/random.hpp"

namespace qbell::bell {

struct WeylIndex {
    std::size_t m = 0;  // phase
    std::size_t n = 0;  // shift

    friend bool operator==(const WeylIndex&, const WeylIndex&) = default;
};

// d x d probability matrix p_{mn}, row-major by m then n.
class BellProbabilities {
public:
    // Throws InvalidArgument unless p_mn >= -1e-12 and |sum - 1| <= 1e-12.
    BellProbabilities(std::size_t d, std::vector<double> p);

    static BellProbabilities uniform(std::size_t d);
    // p_00 = 1
    static BellProbabilities pure(std::size_t d, WeylIndex idx = {});

    std::size_t d() const noexcept { return d_; }
    double operator()(std::size_t m, std::size_t n) const { return p_[m * d_ + n]; }
    const std::vector<double>& values() const noexcept { return p_; }
    double max() const;

private:
    std::size_t d_;
    std::vector<double> p_;
};

// lambda^k for k = 0..d-1, each evaluated directly from the angle.
std::vector<Complex> roots_of_unity(std::size_t d);

ComplexMatrix weyl(std::size_t d, WeylIndex idx);

// psi_mn = (I (x) U_mn) psi+_d
ComplexVector magic_vector(std::size_t d, WeylIndex idx);
ComplexMatrix bell_projector(std::size_t d, WeylIndex idx);
// Pi_n = sum_m P_{mn}: projector onto Sigma_n.
ComplexMatrix sigma_projector(std::size_t d, std::size_t n);

// H_kl = lambda^{kl} / sqrt(d)
ComplexMatrix fourier_matrix(std::size_t d);

// sum_{mn} p_mn P_mn built from the projectors (reference construction).
ComplexMatrix projector_sum(const BellProbabilities& bp);

circulant::CirculantState to_circulant(const BellProbabilities& bp);
// p_mn = Tr(P_mn rho). Throws NotBellDiagonalError when a weight is below
// -1e-10 or the weights do not reproduce the blocks to 1e-10.
BellProbabilities from_circulant(const circulant::CirculantState& cs);

struct OrbitReport {
    std::size_t d = 0;
    // One entry per orbit: a single one for odd d, {even, odd} for even d.
    std::vector<double> deviations;
    double max_deviation() const;
};

// Checks the shift-conjugation structure of the tilde blocks:
//   odd d:  a~^(2k mod d) = S^k a~^(0) S^-k
//   even d: a~^(2k) = S^k a~^(0) S^-k,  a~^(2k+1) = S^k a~^(1) S^-k
OrbitReport tilde_orbit_check(const BellProbabilities& bp);

// PSD test of the orbit representatives: a~^(0) (odd d), a~^(0) and a~^(1) (even d).
bool is_ppt_bell(const BellProbabilities& bp, double tol = kDefaultTol);

// d = 2: x_n = (p_0n + p_1n)/2, y_n = (p_0n - p_1n)/2; PPT iff x_0 >= |y_1| and x_1 >= |y_0|.
bool ppt_d2(const BellProbabilities& bp, double tol = kDefaultTol);

struct D3Verdict {
    std::array<double, 3> x{};
    std::array<Complex, 3> z{};
    bool c1 = false;          // x0 x1 >= |z2|^2
    bool c2 = false;          // x0 x1 x2 + 2 Re z0 z1 z2 >= sum_n x_n |z_n|^2
    bool eigen_psd = false;   // a~^(0) >= 0 by eigenvalues
    bool consistent = false;  // (c1 && c2) == eigen_psd
};

// a~^(0) for d = 3 in the (x, z) coordinates
//   [[x0, z2, z1*], [z2*, x1, z0], [z1, z0*, x2]]
ComplexMatrix tilde0_d3(const std::array<double, 3>& x, const std::array<Complex, 3>& z);
D3Verdict ppt_d3(const BellProbabilities& bp, double tol = 1e-12);

// The two representative d = 4 blocks in (x, y, z) coordinates.
std::array<ComplexMatrix, 2> tilde_d4(const BellProbabilities& bp);
bool ppt_d4(const BellProbabilities& bp, double tol = kDefaultTol);

// Lambda(X) = sum p_mn U_mn X U_mn^dag
ComplexMatrix kraus_apply(const BellProbabilities& bp, const ComplexMatrix& x);

BellProbabilities random_probabilities(std::size_t d, Rng& rng);

}  // namespace qbell::bell
