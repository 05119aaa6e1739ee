#include "stmg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace stmg {

template <class T>
LuFactorization<T>::LuFactorization(DenseMatrix<T> a) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    if (lu_.cols() != n) throw UsageError("LU needs a square matrix");
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                p = i;
            }
        }
        if (best == 0.0) throw UsageError("LU: matrix is singular");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
        }
        const T pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const T f = lu_(i, k) / pivot;
            lu_(i, k) = f;
            if (f == T{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

template <class T>
std::vector<T> LuFactorization<T>::solve(std::span<const T> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw UsageError("LU solve: dimension mismatch");
    std::vector<T> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
        T acc = x[i];
        for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * x[j];
        x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        T acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= lu_(i, j) * x[j];
        x[i] = acc / lu_(i, i);
    }
    return x;
}

template class LuFactorization<double>;
template class LuFactorization<cplx>;

template <class T>
DenseMatrix<T> inverse(const DenseMatrix<T>& a) {
    const std::size_t n = a.rows();
    LuFactorization<T> lu(a);
    DenseMatrix<T> inv(n, n);
    std::vector<T> e(n, T{});
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = T{1};
        const auto col = lu.solve(e);
        e[j] = T{};
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

template DenseMatrix<double> inverse(const DenseMatrix<double>&);
template DenseMatrix<cplx> inverse(const DenseMatrix<cplx>&);

namespace {

inline double abs1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

inline double modulus(cplx z) { return std::sqrt(std::norm(z)); }

void reduce_to_hessenberg(std::span<cplx> a, std::size_t n, std::span<cplx> v) {
    auto at = [&](std::size_t i, std::size_t j) -> cplx& { return a[i * n + j]; };
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(at(i, k));
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) continue;
        const cplx x0 = at(k + 1, k);
        const double ax0 = modulus(x0);
        const cplx phase = ax0 > 0.0 ? x0 / ax0 : cplx{1.0, 0.0};
        const cplx alpha = -phase * norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = at(i, k) - (i == k + 1 ? alpha : cplx{});
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double scale = 2.0 / vnorm2;
        // A <- (I - s v v^H) A
        for (std::size_t j = k; j < n; ++j) {
            cplx dot{};
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * at(i, j);
            dot *= scale;
            for (std::size_t i = k + 1; i < n; ++i) at(i, j) -= v[i] * dot;
        }
        // A <- A (I - s v v^H)
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{};
            for (std::size_t j = k + 1; j < n; ++j) dot += at(i, j) * v[j];
            dot *= scale;
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) at(i, k) = cplx{};
    }
}

std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d) {
    const cplx half_tr = 0.5 * (a + d);
    const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    return {half_tr + disc, half_tr - disc};
}

}  // namespace

namespace {

// eig and each work span hold n entries
void hessenberg_qr(std::span<cplx> a, std::size_t n, std::span<cplx> eig, std::span<cplx> v, std::span<cplx> gc,
                   std::span<cplx> gs) {
    if (n == 0) return;
    reduce_to_hessenberg(a, n, v);
    auto at = [&](std::size_t i, std::size_t j) -> cplx& { return a[i * n + j]; };

    const double eps = std::numeric_limits<double>::epsilon();
    std::size_t hi = n - 1;
    int iter = 0;
    int total_iter = 0;
    const int max_total = 100 * static_cast<int>(n) + 100;
    while (true) {
        // locate the start of the active unreduced block
        std::size_t lo = hi;
        while (lo > 0) {
            const double scale = abs1(at(lo, lo)) + abs1(at(lo - 1, lo - 1));
            if (abs1(at(lo, lo - 1)) <= eps * scale || abs1(at(lo, lo - 1)) < std::numeric_limits<double>::min()) {
                at(lo, lo - 1) = cplx{};
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig[hi] = at(hi, hi);
            if (hi == 0) break;
            --hi;
            iter = 0;
            continue;
        }
        if (lo + 1 == hi) {
            const auto [l1, l2] = eig2x2(at(lo, lo), at(lo, hi), at(hi, lo), at(hi, hi));
            eig[lo] = l1;
            eig[hi] = l2;
            if (lo == 0) break;
            hi = lo - 1;
            iter = 0;
            continue;
        }
        if (++total_iter > max_total) throw std::runtime_error("eigenvalues: QR iteration did not converge");
        ++iter;

        cplx shift;
        if (iter % 11 == 0) {
            // exceptional shift to break cycles
            shift = at(hi, hi) + cplx{0.75 * abs1(at(hi, hi - 1)), 0.0};
        } else {
            const auto [l1, l2] = eig2x2(at(hi - 1, hi - 1), at(hi - 1, hi), at(hi, hi - 1), at(hi, hi));
            shift = std::norm(l1 - at(hi, hi)) < std::norm(l2 - at(hi, hi)) ? l1 : l2;
        }

        for (std::size_t k = lo; k <= hi; ++k) at(k, k) -= shift;
        // H - shift I = QR by Givens rotations G_k = [[conj(c), conj(s)], [-s, c]]
        for (std::size_t k = lo; k < hi; ++k) {
            const cplx x = at(k, k);
            const cplx y = at(k + 1, k);
            const double r = std::sqrt(std::norm(x) + std::norm(y));
            cplx c{1.0, 0.0};
            cplx s{};
            if (r > 0.0) {
                c = x / r;
                s = y / r;
            }
            gc[k] = c;
            gs[k] = s;
            for (std::size_t j = k; j <= hi; ++j) {
                const cplx u = at(k, j);
                const cplx w = at(k + 1, j);
                at(k, j) = std::conj(c) * u + std::conj(s) * w;
                at(k + 1, j) = -s * u + c * w;
            }
            at(k + 1, k) = cplx{};
        }
        // RQ: apply G_k^H to columns k, k+1
        for (std::size_t k = lo; k < hi; ++k) {
            const cplx c = gc[k];
            const cplx s = gs[k];
            const std::size_t row_end = std::min(k + 2, hi);
            for (std::size_t i = lo; i <= row_end; ++i) {
                const cplx u = at(i, k);
                const cplx w = at(i, k + 1);
                at(i, k) = c * u + s * w;
                at(i, k + 1) = -std::conj(s) * u + std::conj(c) * w;
            }
        }
        for (std::size_t k = lo; k <= hi; ++k) at(k, k) += shift;
    }
}

}  // namespace

std::vector<cplx> eigenvalues_in_place(std::span<cplx> a, std::size_t n) {
    if (a.size() != n * n) throw UsageError("eigenvalues: storage does not match n");
    std::vector<cplx> eig(n), work(3 * n);
    std::span<cplx> w(work);
    hessenberg_qr(a, n, eig, w.subspan(0, n), w.subspan(n, n), w.subspan(2 * n, n));
    return eig;
}

std::vector<cplx> eigenvalues(DenseMatrix<cplx> a) {
    if (a.rows() != a.cols()) throw UsageError("eigenvalues need a square matrix");
    return eigenvalues_in_place(a.data(), a.rows());
}

double spectral_radius(DenseMatrix<cplx> a) {
    double r = 0.0;
    for (const cplx& z : eigenvalues(std::move(a))) r = std::max(r, std::abs(z));
    return r;
}

PowerIterationResult power_iteration(const std::function<void(std::span<const cplx>, std::span<cplx>)>& apply,
                                     std::size_t n, std::size_t iterations, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> x(n), y(n);
    double norm = 0.0;
    for (auto& v : x) {
        v = cplx{dist(gen), dist(gen)};
        norm += std::norm(v);
    }
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
    PowerIterationResult res;
    for (std::size_t it = 0; it < iterations; ++it) {
        apply(x, y);
        double ny = 0.0;
        for (const auto& v : y) ny += std::norm(v);
        ny = std::sqrt(ny);
        res.estimate = ny;
        res.iterations = it + 1;
        if (ny == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    }
    return res;
}

HarmonicMatrix HarmonicMatrix::identity() {
    HarmonicMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
}

HarmonicMatrix HarmonicMatrix::diagonal(const std::array<cplx, N>& d) {
    HarmonicMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
}

std::array<cplx, HarmonicMatrix::N> HarmonicMatrix::multiply(const std::array<cplx, N>& x) const {
    std::array<cplx, N> y{};
    for (std::size_t i = 0; i < N; ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < N; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

HarmonicMatrix operator*(const HarmonicMatrix& a, const HarmonicMatrix& b) {
    HarmonicMatrix c;
    for (std::size_t i = 0; i < HarmonicMatrix::N; ++i)
        for (std::size_t k = 0; k < HarmonicMatrix::N; ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < HarmonicMatrix::N; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

HarmonicMatrix operator-(const HarmonicMatrix& a, const HarmonicMatrix& b) {
    HarmonicMatrix c;
    for (std::size_t i = 0; i < HarmonicMatrix::N * HarmonicMatrix::N; ++i) c.entries_[i] = a.entries_[i] - b.entries_[i];
    return c;
}

bool HarmonicMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

double HarmonicMatrix::max_abs_difference(const HarmonicMatrix& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(entries_[i] - o.entries_[i]));
    return m;
}

std::array<cplx, HarmonicMatrix::N> HarmonicMatrix::eigenvalues() const {
    std::array<cplx, N * N> a = entries_;
    std::array<cplx, N> out{}, v{}, gc{}, gs{};
    hessenberg_qr(a, N, out, v, gc, gs);
    return out;
}

double HarmonicMatrix::spectral_radius() const {
    double r = 0.0;
    for (const cplx& z : eigenvalues()) r = std::max(r, std::norm(z));
    return std::sqrt(r);
}

DenseMatrix<cplx> HarmonicMatrix::to_dense() const {
    DenseMatrix<cplx> d(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) d(i, j) = (*this)(i, j);
    return d;
}

}  // namespace stmg
