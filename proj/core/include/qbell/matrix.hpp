#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qbell {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix identity(std::size_t n);
    // Matrix unit e_{ij} of size n x n.
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    // |v><v|
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

// Hadamard (entrywise) product.
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

// (A (x) B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);

// max |A_ij - B_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max |A - A^dag|; throws DimensionError for non-square input.
double hermiticity_defect(const ComplexMatrix& a);

// Tr(A B) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

// <u|A|v>
Complex expectation(const ComplexMatrix& a, std::span<const Complex> u, std::span<const Complex> v);

double vector_norm(std::span<const Complex> v);

}  // namespace qbell
