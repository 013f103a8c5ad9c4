#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbell {

// Base of everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NotHermitianError : public Error {
public:
    explicit NotHermitianError(double deviation)
        : Error("matrix is not Hermitian (max |A - A^dag| = " + std::to_string(deviation) + ")"),
          deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Raised by circulant::from_dense; carries the worst off-support entry.
class NotCirculantError : public Error {
public:
    NotCirculantError(std::size_t row, std::size_t col, double magnitude)
        : Error("matrix has non-circulant entry at (" + std::to_string(row) + ", " + std::to_string(col) +
                "), |value| = " + std::to_string(magnitude)),
          row_(row), col_(col), magnitude_(magnitude) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    std::size_t row_;
    std::size_t col_;
    double magnitude_;
};

// Raised by belldiag::from_circulant with the offending block index.
class NotBellDiagonalError : public Error {
public:
    NotBellDiagonalError(std::size_t block, const std::string& why)
        : Error("state is not Bell diagonal (block " + std::to_string(block) + "): " + why), block_(block) {}
    std::size_t block() const noexcept { return block_; }

private:
    std::size_t block_;
};

}  // namespace qbell
