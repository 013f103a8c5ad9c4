#pragma once

// Circulant bipartite states on C^d (x) C^d.
//
// A circulant operator is a_(n) blocks placed on the subspaces
// Sigma_n = span{e_i (x) e_{i+n}}:
//     rho = sum_{n,i,j} a^(n)_{ij} e_{ij} (x) e_{i+n,j+n}      (indices mod d)
// Its partial transpose lives on Sigma~_n = span{e_i (x) e_{n-i}} with blocks
//     a~^(n) = sum_m a^(n+m) o (Pi S^m),   Pi_{kl} = delta_{k,-l}
// and its realignment is again circulant with R^(n)_{ij} = a^(j-i)_{i+n,i}.

#include <cstddef>
#include <vector>

#include "qbell/linalg.hpp"
#include "qbell/matrix.hpp"
#include "qbell/random.hpp"

namespace qbell::circulant {

// d blocks of size d x d. No positivity or trace constraint; this is the
// shape of tilde blocks, realignment blocks and dual-channel blocks.
struct BlockSet {
    std::size_t d = 0;
    std::vector<ComplexMatrix> blocks;

    const ComplexMatrix& operator[](std::size_t n) const { return blocks[n]; }
};

using TildeBlocks = BlockSet;

// Validated circulant density matrix: every block Hermitian PSD and
// sum_n Tr a^(n) = 1, both to 1e-10.
class CirculantState {
public:
    // Throws InvalidArgument / DimensionError when the invariants fail.
    explicit CirculantState(BlockSet blocks);
    CirculantState(std::size_t d, std::vector<ComplexMatrix> blocks)
        : CirculantState(BlockSet{d, std::move(blocks)}) {}

    std::size_t d() const noexcept { return blocks_.d; }
    const ComplexMatrix& block(std::size_t n) const { return blocks_.blocks[n]; }
    const BlockSet& blocks() const noexcept { return blocks_; }

private:
    BlockSet blocks_;
};

// Shape check only: d blocks, each d x d.
void require_block_shape(const BlockSet& blocks);

// Places b^(n)_{ij} at ((i, i+n), (j, j+n)).
ComplexMatrix assemble_sigma(const BlockSet& blocks);
// Places b^(n)_{ij} at ((i, n-i), (j, n-j)).
ComplexMatrix assemble_sigma_tilde(const BlockSet& blocks);

ComplexMatrix assemble_dense(const CirculantState& cs);

// Reads blocks off the Sigma_n support. Throws NotCirculantError when an
// off-support entry exceeds `off_support_tol`.
BlockSet extract_blocks(const ComplexMatrix& m, std::size_t d, double off_support_tol = 1e-12);
CirculantState from_dense(const ComplexMatrix& m, std::size_t d, double off_support_tol = 1e-12);

// Shift S e_k = e_{k+1} and the reflection Pi_{kl} = delta_{k,-l}.
ComplexMatrix shift_matrix(std::size_t d, std::size_t power = 1);
ComplexMatrix reflection_matrix(std::size_t d);

TildeBlocks tilde_blocks(const BlockSet& blocks);
inline TildeBlocks tilde_blocks(const CirculantState& cs) { return tilde_blocks(cs.blocks()); }

// PPT iff every tilde block is PSD.
bool is_ppt(const CirculantState& cs, double tol = kDefaultTol);

BlockSet realign_blocks(const BlockSet& blocks);
inline BlockSet realign_blocks(const CirculantState& cs) { return realign_blocks(cs.blocks()); }

// Trace norm of the realigned state; > 1 certifies entanglement.
double ccnr_value(const CirculantState& cs);

// Lambda(e_kl) = d sum_n a^(n)_kl e_{k+n,l+n}, so that rho = (id (x) Lambda) P+_d.
ComplexMatrix channel_apply(const CirculantState& cs, const ComplexMatrix& x);
// Hilbert-Schmidt dual: Lambda#(e_kl) = d sum_n a^(n)_{l-n,k-n} e_{k-n,l-n}.
ComplexMatrix channel_dual_apply(const CirculantState& cs, const ComplexMatrix& x);
// Circulant state whose channel is Lambda#.
CirculantState dual_state(const CirculantState& cs);

// (id (x) Lambda)(P+_d) computed through channel_apply.
ComplexMatrix choi_state(const CirculantState& cs);

bool is_unital(const CirculantState& cs, double tol = kDefaultTol);
bool is_trace_preserving(const CirculantState& cs, double tol = kDefaultTol);

// Each block G^dag G with complex Gaussian G, total trace normalized.
CirculantState random_state(std::size_t d, Rng& rng);

// |P+_d><P+_d| as a circulant state (a^(0) = J/d, other blocks zero).
CirculantState maximally_entangled(std::size_t d);
CirculantState maximally_mixed(std::size_t d);

}  // namespace qbell::circulant
