#include "qbell/circulant.hpp"

#include <cmath>
#include <string>

#include "qbell/error.hpp"

namespace qbell::circulant {

namespace {

std::size_t mod(long long x, std::size_t d) {
    const auto dd = static_cast<long long>(d);
    return static_cast<std::size_t>(((x % dd) + dd) % dd);
}

void require_channel_input(const CirculantState& cs, const ComplexMatrix& x) {
    if (x.rows() != cs.d() || x.cols() != cs.d()) {
        throw DimensionError("circulant channel: expected " + std::to_string(cs.d()) + "x" +
                             std::to_string(cs.d()) + " input");
    }
}

}  // namespace

void require_block_shape(const BlockSet& blocks) {
    if (blocks.d == 0) throw DimensionError("circulant: dimension must be positive");
    if (blocks.blocks.size() != blocks.d) {
        throw DimensionError("circulant: expected " + std::to_string(blocks.d) + " blocks, got " +
                             std::to_string(blocks.blocks.size()));
    }
    for (const auto& b : blocks.blocks) {
        if (b.rows() != blocks.d || b.cols() != blocks.d) {
            throw DimensionError("circulant: block is not " + std::to_string(blocks.d) + "x" +
                                 std::to_string(blocks.d));
        }
    }
}

CirculantState::CirculantState(BlockSet blocks) : blocks_(std::move(blocks)) {
    require_block_shape(blocks_);
    Complex total{};
    for (std::size_t n = 0; n < blocks_.d; ++n) {
        const auto& b = blocks_.blocks[n];
        if (!b.all_finite()) throw InvalidArgument("circulant: block " + std::to_string(n) + " has non-finite entries");
        if (hermiticity_defect(b) > kDefaultTol) {
            throw InvalidArgument("circulant: block " + std::to_string(n) + " is not Hermitian");
        }
        if (!is_psd(b, kDefaultTol)) {
            throw InvalidArgument("circulant: block " + std::to_string(n) + " is not positive semidefinite");
        }
        total += b.trace();
    }
    if (std::abs(total - 1.0) > kDefaultTol) {
        throw InvalidArgument("circulant: total trace is " + std::to_string(total.real()) + ", expected 1");
    }
}

ComplexMatrix assemble_sigma(const BlockSet& blocks) {
    require_block_shape(blocks);
    const std::size_t d = blocks.d;
    ComplexMatrix m(d * d, d * d);
    for (std::size_t n = 0; n < d; ++n)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i * d + (i + n) % d, j * d + (j + n) % d) = blocks[n](i, j);
    return m;
}

ComplexMatrix assemble_sigma_tilde(const BlockSet& blocks) {
    require_block_shape(blocks);
    const std::size_t d = blocks.d;
    ComplexMatrix m(d * d, d * d);
    for (std::size_t n = 0; n < d; ++n)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const std::size_t ri = mod(static_cast<long long>(n) - static_cast<long long>(i), d);
                const std::size_t rj = mod(static_cast<long long>(n) - static_cast<long long>(j), d);
                m(i * d + ri, j * d + rj) = blocks[n](i, j);
            }
    return m;
}

ComplexMatrix assemble_dense(const CirculantState& cs) { return assemble_sigma(cs.blocks()); }

BlockSet extract_blocks(const ComplexMatrix& m, std::size_t d, double off_support_tol) {
    if (d == 0 || m.rows() != d * d || m.cols() != d * d) {
        throw DimensionError("from_dense: expected " + std::to_string(d * d) + "x" + std::to_string(d * d) +
                             " matrix");
    }
    // An entry ((i,k),(j,l)) is on the support iff k - i == l - j (mod d).
    double worst = 0.0;
    std::size_t worst_r = 0;
    std::size_t worst_c = 0;
    for (std::size_t r = 0; r < d * d; ++r)
        for (std::size_t c = 0; c < d * d; ++c) {
            const std::size_t i = r / d, k = r % d, j = c / d, l = c % d;
            if ((k + d - i) % d == (l + d - j) % d) continue;
            const double mag = std::abs(m(r, c));
            if (mag > worst) {
                worst = mag;
                worst_r = r;
                worst_c = c;
            }
        }
    if (worst > off_support_tol) throw NotCirculantError(worst_r, worst_c, worst);

    BlockSet out{d, std::vector<ComplexMatrix>(d, ComplexMatrix(d, d))};
    for (std::size_t n = 0; n < d; ++n)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out.blocks[n](i, j) = m(i * d + (i + n) % d, j * d + (j + n) % d);
    return out;
}

CirculantState from_dense(const ComplexMatrix& m, std::size_t d, double off_support_tol) {
    return CirculantState(extract_blocks(m, d, off_support_tol));
}

ComplexMatrix shift_matrix(std::size_t d, std::size_t power) {
    ComplexMatrix s(d, d);
    for (std::size_t k = 0; k < d; ++k) s((k + power) % d, k) = 1.0;
    return s;
}

ComplexMatrix reflection_matrix(std::size_t d) {
    ComplexMatrix pi(d, d);
    for (std::size_t l = 0; l < d; ++l) pi((d - l) % d, l) = 1.0;
    return pi;
}

TildeBlocks tilde_blocks(const BlockSet& blocks) {
    require_block_shape(blocks);
    const std::size_t d = blocks.d;
    const ComplexMatrix pi = reflection_matrix(d);
    std::vector<ComplexMatrix> masks;
    masks.reserve(d);
    for (std::size_t m = 0; m < d; ++m) masks.push_back(pi * shift_matrix(d, m));

    TildeBlocks out{d, {}};
    out.blocks.reserve(d);
    for (std::size_t n = 0; n < d; ++n) {
        ComplexMatrix t(d, d);
        for (std::size_t m = 0; m < d; ++m) t += hadamard(blocks[(n + m) % d], masks[m]);
        out.blocks.push_back(std::move(t));
    }
    return out;
}

bool is_ppt(const CirculantState& cs, double tol) {
    const auto tilde = tilde_blocks(cs);
    for (const auto& b : tilde.blocks)
        if (!is_psd(b, tol)) return false;
    return true;
}

BlockSet realign_blocks(const BlockSet& blocks) {
    require_block_shape(blocks);
    const std::size_t d = blocks.d;
    BlockSet out{d, std::vector<ComplexMatrix>(d, ComplexMatrix(d, d))};
    for (std::size_t n = 0; n < d; ++n)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out.blocks[n](i, j) = blocks[(j + d - i) % d]((i + n) % d, i);
    return out;
}

double ccnr_value(const CirculantState& cs) {
    // The realigned operator is a direct sum over Sigma_n.
    double total = 0.0;
    for (const auto& b : realign_blocks(cs).blocks) total += trace_norm(b);
    return total;
}

ComplexMatrix channel_apply(const CirculantState& cs, const ComplexMatrix& x) {
    require_channel_input(cs, x);
    const std::size_t d = cs.d();
    const double scale = static_cast<double>(d);
    ComplexMatrix out(d, d);
    for (std::size_t n = 0; n < d; ++n)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l)
                out((k + n) % d, (l + n) % d) += scale * cs.block(n)(k, l) * x(k, l);
    return out;
}

ComplexMatrix channel_dual_apply(const CirculantState& cs, const ComplexMatrix& x) {
    require_channel_input(cs, x);
    const std::size_t d = cs.d();
    const double scale = static_cast<double>(d);
    ComplexMatrix out(d, d);
    for (std::size_t n = 0; n < d; ++n)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) {
                const std::size_t kn = (k + d - n) % d;
                const std::size_t ln = (l + d - n) % d;
                out(kn, ln) += scale * cs.block(n)(ln, kn) * x(k, l);
            }
    return out;
}

CirculantState dual_state(const CirculantState& cs) {
    const std::size_t d = cs.d();
    // b^(n)_kl = a^(-n)_{l+n,k+n}
    BlockSet out{d, std::vector<ComplexMatrix>(d, ComplexMatrix(d, d))};
    for (std::size_t n = 0; n < d; ++n) {
        const auto& a = cs.block((d - n) % d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) out.blocks[n](k, l) = a((l + n) % d, (k + n) % d);
    }
    return CirculantState(std::move(out));
}

ComplexMatrix choi_state(const CirculantState& cs) {
    const std::size_t d = cs.d();
    ComplexMatrix out(d * d, d * d);
    const double w = 1.0 / static_cast<double>(d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
            out += kron(ComplexMatrix::unit(d, k, l), channel_apply(cs, ComplexMatrix::unit(d, k, l))) * w;
    return out;
}

bool is_unital(const CirculantState& cs, double tol) {
    const auto id = ComplexMatrix::identity(cs.d());
    return max_abs_diff(channel_apply(cs, id), id) <= tol;
}

bool is_trace_preserving(const CirculantState& cs, double tol) {
    const auto id = ComplexMatrix::identity(cs.d());
    return max_abs_diff(channel_dual_apply(cs, id), id) <= tol;
}

CirculantState random_state(std::size_t d, Rng& rng) {
    BlockSet blocks{d, {}};
    blocks.blocks.reserve(d);
    double total = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        const auto g = random_gaussian_matrix(d, d, rng);
        auto a = g.adjoint() * g;
        total += a.trace().real();
        blocks.blocks.push_back(std::move(a));
    }
    for (auto& b : blocks.blocks) {
        b *= 1.0 / total;
        // Exact Hermiticity after rounding.
        for (std::size_t i = 0; i < d; ++i) {
            b(i, i) = b(i, i).real();
            for (std::size_t j = i + 1; j < d; ++j) b(j, i) = std::conj(b(i, j));
        }
    }
    return CirculantState(std::move(blocks));
}

CirculantState maximally_entangled(std::size_t d) {
    BlockSet blocks{d, std::vector<ComplexMatrix>(d, ComplexMatrix(d, d))};
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) blocks.blocks[0](i, j) = 1.0 / static_cast<double>(d);
    return CirculantState(std::move(blocks));
}

CirculantState maximally_mixed(std::size_t d) {
    BlockSet blocks{d, {}};
    const double w = 1.0 / static_cast<double>(d * d);
    for (std::size_t n = 0; n < d; ++n) blocks.blocks.push_back(ComplexMatrix::identity(d) * w);
    return CirculantState(std::move(blocks));
}

}  // namespace qbell::circulant
