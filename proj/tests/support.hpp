#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qbell/belldiag.hpp"
#include "qbell/circulant.hpp"
#include "qbell/linalg.hpp"
#include "qbell/matrix.hpp"
#include "qbell/families.hpp"
#include "qbell/random.hpp"
#include "qbell/witness.hpp"

namespace testing {

using qbell::Complex;
using qbell::ComplexMatrix;

// Symbolic entry of block n at (i, j): a distinct complex tag, so that index
// bookkeeping can be compared label by label.
inline Complex tag(std::size_t n, std::size_t i, std::size_t j) {
    return {static_cast<double>(100 * (n + 1) + 10 * i + j), static_cast<double>(n + 1) * 0.5 + 0.01 * (i + 1)};
}

// Blocks a^(n)_{ij} = tag(n, i, j); not a state, only a layout probe.
inline qbell::circulant::BlockSet tagged_blocks(std::size_t d) {
    qbell::circulant::BlockSet bs{d, {}};
    for (std::size_t n = 0; n < d; ++n) {
        ComplexMatrix b(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) b(i, j) = tag(n, i, j);
        bs.blocks.push_back(b);
    }
    return bs;
}

// Printed label such as "b01": block letter a, b, c, ... then two digits.
inline Complex label(const std::string& s) {
    return tag(static_cast<std::size_t>(s[0] - 'a'), static_cast<std::size_t>(s[1] - '0'),
               static_cast<std::size_t>(s[2] - '0'));
}

// Matrix of printed labels; "." is zero.
inline ComplexMatrix from_labels(const std::vector<std::vector<std::string>>& rows) {
    ComplexMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c] == "." ? Complex{} : label(rows[r][c]);
    return m;
}

inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

inline ComplexMatrix maximally_entangled_dense(std::size_t d) {
    return qbell::circulant::assemble_dense(qbell::circulant::maximally_entangled(d));
}

inline std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testing
