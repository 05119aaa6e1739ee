#pragma once

// Reference constructions written directly from the stencil definitions.
// Nothing here calls into the library's symbol or transfer code.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXd;
constexpr double pi = std::numbers::pi;

// Unknown (n, j) -> row n * nx + j, n = 1..nt and j = 1..nx written 1-based.
inline Eigen::Index idx(std::size_t nx, std::size_t n1, std::size_t j1) {
    return static_cast<Eigen::Index>((n1 - 1) * nx + (j1 - 1));
}

/// All-at-once backward Euler matrix, Dirichlet in space, initial value in time.
inline Matrix heat_matrix(std::size_t nx, std::size_t nt, double sigma) {
    const auto N = static_cast<Eigen::Index>(nx * nt);
    Matrix L = Matrix::Zero(N, N);
    for (std::size_t n = 1; n <= nt; ++n)
        for (std::size_t j = 1; j <= nx; ++j) {
            const auto r = idx(nx, n, j);
            L(r, r) = 1.0 + 2.0 * sigma;
            if (j > 1) L(r, idx(nx, n, j - 1)) = -sigma;
            if (j < nx) L(r, idx(nx, n, j + 1)) = -sigma;
            if (n > 1) L(r, idx(nx, n - 1, j)) = -1.0;
        }
    return L;
}

/// Same stencil with wrap-around in both directions.
inline Matrix periodic_heat_matrix(std::size_t nx, std::size_t nt, double sigma) {
    const auto N = static_cast<Eigen::Index>(nx * nt);
    Matrix L = Matrix::Zero(N, N);
    for (std::size_t n = 1; n <= nt; ++n)
        for (std::size_t j = 1; j <= nx; ++j) {
            const auto r = idx(nx, n, j);
            const std::size_t jm = j == 1 ? nx : j - 1;
            const std::size_t jp = j == nx ? 1 : j + 1;
            const std::size_t nm = n == 1 ? nt : n - 1;
            L(r, r) += 1.0 + 2.0 * sigma;
            L(r, idx(nx, n, jm)) += -sigma;
            L(r, idx(nx, n, jp)) += -sigma;
            L(r, idx(nx, nm, j)) += -1.0;
        }
    return L;
}

/// Coarse count in space (odd interior count) or time (even step count).
inline std::size_t coarse_space(std::size_t nf, bool periodic) { return periodic ? nf / 2 : (nf + 1) / 2 - 1; }
inline std::size_t coarse_time(std::size_t nf) { return nf / 2; }

/// 1-D full weighting, coarse i (1-based) centred on fine 2i; zero outside.
inline Matrix fw_1d(std::size_t nf, std::size_t nc, bool periodic) {
    Matrix R = Matrix::Zero(static_cast<Eigen::Index>(nc), static_cast<Eigen::Index>(nf));
    for (std::size_t i = 1; i <= nc; ++i) {
        const long c = static_cast<long>(2 * i);
        for (long d : {-1L, 0L, 1L}) {
            long f = c + d;
            if (periodic) f = (f - 1 + static_cast<long>(nf)) % static_cast<long>(nf) + 1;
            if (f < 1 || f > static_cast<long>(nf)) continue;
            R(static_cast<Eigen::Index>(i - 1), f - 1) += d == 0 ? 0.5 : 0.25;
        }
    }
    return R;
}

/// 1-D linear interpolation from nc coarse values, written pointwise.
inline Matrix interp_1d(std::size_t nf, std::size_t nc, bool periodic) {
    Matrix P = Matrix::Zero(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nc));
    for (std::size_t f = 1; f <= nf; ++f) {
        if (f % 2 == 0) {
            P(static_cast<Eigen::Index>(f - 1), static_cast<Eigen::Index>(f / 2 - 1)) = 1.0;
            continue;
        }
        // midway between coarse f/2 and f/2 + 1 (integer division), which may be missing
        const long left = static_cast<long>(f / 2), right = left + 1;
        for (long c : {left, right}) {
            long cc = c;
            if (periodic) cc = (cc - 1 + static_cast<long>(nc)) % static_cast<long>(nc) + 1;
            if (cc < 1 || cc > static_cast<long>(nc)) continue;
            P(static_cast<Eigen::Index>(f - 1), cc - 1) += 0.5;
        }
    }
    return P;
}

/// Row-major unknown ordering: time index outer, so kron(T, X).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// time restriction oracle for mt in {1, 2, 4}
inline Matrix time_restriction(std::size_t nt, int mt, bool periodic) {
    Matrix r = Matrix::Identity(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(nt));
    std::size_t n = nt;
    for (int m = mt; m > 1; m /= 2) {
        r = fw_1d(n, n / 2, periodic) * r;
        n /= 2;
    }
    return r;
}

inline Matrix time_interpolation(std::size_t nt, int mt, bool periodic) {
    Matrix p = Matrix::Identity(static_cast<Eigen::Index>(nt), static_cast<Eigen::Index>(nt));
    std::size_t n = nt;
    for (int m = mt; m > 1; m /= 2) {
        p = p * interp_1d(n, n / 2, periodic);
        n /= 2;
    }
    return p;
}

inline Matrix space_restriction(std::size_t nx, int mx, bool periodic) {
    if (mx == 1) return Matrix::Identity(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx));
    return fw_1d(nx, coarse_space(nx, periodic), periodic);
}

inline Matrix space_interpolation(std::size_t nx, int mx, bool periodic) {
    if (mx == 1) return Matrix::Identity(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nx));
    return interp_1d(nx, coarse_space(nx, periodic), periodic);
}

/// Full space-time restriction and interpolation for factors (mt, mx).
inline Matrix restriction(std::size_t nx, std::size_t nt, int mt, int mx, bool periodic) {
    return kron(time_restriction(nt, mt, periodic), space_restriction(nx, mx, periodic));
}

inline Matrix interpolation(std::size_t nx, std::size_t nt, int mt, int mx, bool periodic) {
    return kron(time_interpolation(nt, mt, periodic), space_interpolation(nx, mx, periodic));
}

/// e^{i(theta_t n + theta_x j)} on 0-based indices, time-major.
inline std::vector<cplx> fourier_mode(std::size_t nx, std::size_t nt, double theta_t, double theta_x) {
    std::vector<cplx> v(nx * nt);
    for (std::size_t n = 0; n < nt; ++n)
        for (std::size_t j = 0; j < nx; ++j)
            v[n * nx + j] = std::polar(1.0, theta_t * static_cast<double>(n) + theta_x * static_cast<double>(j));
    return v;
}

/// Squared smoother modulus from its definition: 1 - w + w e^{-i t} / c(x).
inline double smoother_mod2(double omega, double sigma, double theta_t, double theta_x) {
    const double c = 1.0 + 2.0 * sigma * (1.0 - std::cos(theta_x));
    const cplx s = (1.0 - omega) + omega * std::polar(1.0, -theta_t) / c;
    return std::norm(s);
}

// Coarsening factors of the single-step strategies examined below.
struct Step {
    int mt;
    int mx;
};

inline bool high(Step s, double theta_t, double theta_x) {
    const bool t_low = s.mt == 1 || std::abs(theta_t) < pi / s.mt;
    const bool x_low = s.mx == 1 || std::abs(theta_x) < pi / s.mx;
    return !(t_low && x_low);
}

/// Angles -pi + k pi/256, k = 1..512.
inline std::vector<double> search_angles() {
    std::vector<double> a;
    for (int k = 1; k <= 512; ++k) a.push_back(-pi + k * pi / 256.0);
    return a;
}

/// Plain 2-D grid search of the smoothing factor.
inline double mu_grid_2d(Step s, double omega, double sigma) {
    const auto a = search_angles();
    double m = 0.0;
    for (double t : a)
        for (double x : a)
            if (high(s, t, x)) m = std::max(m, smoother_mod2(omega, sigma, t, x));
    return std::sqrt(m);
}

/**
 * Same search reduced per spatial column: |S|^2 is affine and nondecreasing
 * in cos(theta_t), so only the admissible theta_t with largest cosine counts.
 */
inline double mu_grid_columns(Step s, double omega, double sigma) {
    static const auto a = search_angles();
    double m = 0.0;
    for (double x : a) {
        const bool x_high = s.mx > 1 && std::abs(x) >= pi / s.mx;
        double cos_best;
        if (x_high) {
            cos_best = 1.0;
        } else if (s.mt > 1) {
            cos_best = std::cos(pi / s.mt);
        } else {
            continue;
        }
        const double c = 1.0 + 2.0 * sigma * (1.0 - std::cos(x));
        const double v = (1.0 - omega) * (1.0 - omega) + 2.0 * omega * (1.0 - omega) * cos_best / c + omega * omega / (c * c);
        m = std::max(m, v);
    }
    return std::sqrt(m);
}

/// argmin over omega = k * 1e-4, k = 1..10000; first minimum wins.
inline double brute_omega(Step s, double sigma) {
    double best = 2.0, arg = 0.0;
    for (int k = 1; k <= 10000; ++k) {
        const double w = k * 1e-4;
        const double mu = mu_grid_columns(s, w, sigma);
        if (mu < best) {
            best = mu;
            arg = w;
        }
    }
    return arg;
}

/// Columns of a linear map given on flat real vectors of length n.
inline Matrix assemble(std::size_t n, const std::function<std::vector<double>(const std::vector<double>&)>& apply) {
    Matrix m;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        e[i] = 1.0;
        const auto col = apply(e);
        if (i == 0) m.resize(static_cast<Eigen::Index>(col.size()), static_cast<Eigen::Index>(n));
        for (std::size_t r = 0; r < col.size(); ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = col[r];
        e[i] = 0.0;
    }
    return m;
}

inline double spectral_radius(const Matrix& m) {
    Eigen::EigenSolver<Matrix> es(m, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/**
 * Power iteration with Richardson extrapolation in 1/k. The ratio
 * ||A x_{k+1}|| / ||A x_k|| of a defective eigenvalue converges like 1/k;
 * the table removes the leading terms of that expansion.
 */
inline double power_richardson(const Matrix& a, std::size_t k0, int levels, unsigned seed = 7) {
    Eigen::VectorXd x(a.cols());
    std::uint64_t st = seed;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        st = st * 6364136223846793005ULL + 1442695040888963407ULL;
        x(i) = 0.5 + static_cast<double>(st >> 11) * 0x1.0p-53;
    }
    std::vector<double> est;
    std::size_t k = 0, target = k0;
    while (static_cast<int>(est.size()) < levels) {
        const double nx = x.norm();
        if (nx == 0.0) return 0.0;
        x /= nx;
        Eigen::VectorXd y = a * x;
        ++k;
        if (k == target) {
            est.push_back(y.norm());
            target *= 2;
        }
        x = y;
    }
    for (int j = 1; j < levels; ++j)
        for (int i = 0; i + j < levels; ++i) {
            const double f = std::ldexp(1.0, j);
            est[i] = (f * est[i + 1] - est[i]) / (f - 1.0);
        }
    return est[0];
}

}  // namespace oracle
