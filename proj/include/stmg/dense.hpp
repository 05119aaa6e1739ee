#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stmg/core.hpp"

namespace stmg {

using cplx = std::complex<double>;

/// Row-major dense matrix; small sizes only (validation, harmonic blocks).
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, T value = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<T> data() { return data_; }
    std::span<const T> data() const { return data_; }

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> multiply(std::span<const T> x) const {
        if (x.size() != cols_) throw UsageError("dense multiply: dimension mismatch");
        std::vector<T> y(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i) {
            T acc{};
            for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) throw UsageError("dense product: dimension mismatch");
        DenseMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// LU factorization with partial pivoting.
template <class T>
class LuFactorization {
public:
    explicit LuFactorization(DenseMatrix<T> a);
    std::vector<T> solve(std::span<const T> b) const;
    std::size_t size() const { return lu_.rows(); }

private:
    DenseMatrix<T> lu_;
    std::vector<std::size_t> perm_;
};

extern template class LuFactorization<double>;
extern template class LuFactorization<cplx>;

/// Inverse via LU; meant for small validation matrices.
template <class T>
DenseMatrix<T> inverse(const DenseMatrix<T>& a);

extern template DenseMatrix<double> inverse(const DenseMatrix<double>&);
extern template DenseMatrix<cplx> inverse(const DenseMatrix<cplx>&);

/**
 * Eigenvalues of a general complex n x n matrix stored row-major in `a`
 * (overwritten). Householder reduction to Hessenberg form followed by
 * single-shift QR sweeps with Wilkinson shifts and deflation.
 */
std::vector<cplx> eigenvalues_in_place(std::span<cplx> a, std::size_t n);

std::vector<cplx> eigenvalues(DenseMatrix<cplx> a);
double spectral_radius(DenseMatrix<cplx> a);

/**
 * Largest eigenvalue modulus estimated by normalized power iteration,
 * ||A x_k|| with ||x_k|| = 1. `apply` maps x to A x.
 */
struct PowerIterationResult {
    double estimate = 0.0;
    std::size_t iterations = 0;
};
PowerIterationResult power_iteration(const std::function<void(std::span<const cplx>, std::span<cplx>)>& apply,
                                     std::size_t n, std::size_t iterations, unsigned seed = 1);

/**
 * 8x8 complex matrix acting on one space of harmonics. Components are
 * ordered by time companion (low, gamma4, gamma2, gamma2 o gamma4) for the
 * low spatial frequency, then the same four for the spatial companion.
 */
class HarmonicMatrix {
public:
    static constexpr std::size_t N = 8;

    HarmonicMatrix() { entries_.fill(cplx{}); }
    static HarmonicMatrix identity();
    static HarmonicMatrix diagonal(const std::array<cplx, N>& d);

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * N + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return entries_[i * N + j]; }

    std::array<cplx, N> multiply(const std::array<cplx, N>& x) const;
    friend HarmonicMatrix operator*(const HarmonicMatrix& a, const HarmonicMatrix& b);
    friend HarmonicMatrix operator-(const HarmonicMatrix& a, const HarmonicMatrix& b);

    bool all_finite() const;
    double max_abs_difference(const HarmonicMatrix& o) const;

    std::array<cplx, N> eigenvalues() const;
    double spectral_radius() const;

    DenseMatrix<cplx> to_dense() const;

private:
    std::array<cplx, N * N> entries_;
};

}  // namespace stmg
