#include "stmg/lfa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stmg/parallel.hpp"
#include "stmg/smoother.hpp"

namespace stmg {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double singular_tol = 1e-12;

double sign(double t) { return t > 0.0 ? 1.0 : -1.0; }

cplx ipow(cplx z, int p) {
    cplx r{1.0, 0.0};
    for (int k = 0; k < p; ++k) r *= z;
    return r;
}

}  // namespace

double gamma2(double theta) { return theta - sign(theta) * pi; }
double gamma4(double theta) { return theta - sign(theta) * pi / 2.0; }

bool is_low_frequency(Frequency f) {
    return f.theta_t > -pi / 4.0 && f.theta_t <= pi / 4.0 && f.theta_x > -pi / 2.0 && f.theta_x <= pi / 2.0;
}

HarmonicGroup harmonic_group(Frequency low) {
    if (!is_low_frequency(low)) throw UsageError("frequency is not in the low-frequency box");
    const double t = low.theta_t;
    const std::array<double, 4> times{t, gamma4(t), gamma2(t), gamma2(gamma4(t))};
    const std::array<double, 2> spaces{low.theta_x, gamma2(low.theta_x)};
    HarmonicGroup g;
    for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t k = 0; k < 4; ++k) g.modes[s * 4 + k] = Frequency{times[k], spaces[s]};
    return g;
}

void LfaConfig::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw UsageError("sigma must be positive");
    if (!(omega > 0.0 && omega <= 1.0)) throw UsageError("damping must lie in (0, 1]");
    if (nu1 < 0 || nu2 < 0 || eta1 < 0 || eta2 < 0) throw UsageError("sweep counts must be nonnegative");
    if (resolution < 16 || resolution % 2 != 0) throw UsageError("resolution must be even and at least 16");
}

cplx backward_euler(cplx z) { return 1.0 / (1.0 - z); }

cplx symbol_S(double omega, double sigma, Frequency f, StabilityFunction r) {
    const cplx z = 2.0 * sigma * (std::cos(f.theta_x) - 1.0);
    return (1.0 - omega) + omega * std::polar(1.0, -f.theta_t) * r(z);
}

cplx symbol_L(double sigma, Frequency f, int mt, int mx) {
    const bool ok = (mt == 1 && mx == 1) || (mt == 2 && mx == 2) || (mt == 4 && mx == 2);
    if (!ok) throw UsageError("unsupported operator scale");
    const double s = sigma * mt / static_cast<double>(mx * mx);
    return 1.0 - std::polar(1.0, -mt * f.theta_t) + 2.0 * s * (1.0 - std::cos(mx * f.theta_x));
}

double symbol_R(double theta) { return 0.5 * (1.0 + std::cos(theta)); }

Frequency optimal_modes(CoarseningStrategy strategy, double omega, double sigma) {
    const double c = 1.0 + 2.0 * sigma;
    switch (strategy) {
        case CoarseningStrategy::TimeSemi2: return {pi / 2.0, 0.0};
        case CoarseningStrategy::TimeSemi4: return {pi / 4.0, 0.0};
        case CoarseningStrategy::SpaceSemi: return {0.0, pi / 2.0};
        case CoarseningStrategy::Full:
        case CoarseningStrategy::Original:
            return omega <= full_branch(c) ? Frequency{0.0, pi / 2.0} : Frequency{pi / 2.0, 0.0};
        case CoarseningStrategy::New:
            return (c <= std::sqrt(2.0) && omega <= new_branch(c)) ? Frequency{0.0, pi / 2.0}
                                                                    : Frequency{pi / 4.0, 0.0};
    }
    return {};
}

double smoothing_factor(CoarseningStrategy strategy, double omega, double sigma) {
    return std::abs(symbol_S(omega, sigma, optimal_modes(strategy, omega, sigma)));
}

bool is_high_frequency(CoarseningStrategy strategy, Frequency f) {
    const double at = std::abs(f.theta_t), ax = std::abs(f.theta_x);
    switch (strategy) {
        case CoarseningStrategy::TimeSemi2: return at >= pi / 2.0;
        case CoarseningStrategy::TimeSemi4: return at >= pi / 4.0;
        case CoarseningStrategy::SpaceSemi: return ax >= pi / 2.0;
        case CoarseningStrategy::Full:
        case CoarseningStrategy::Original: return at >= pi / 2.0 || ax >= pi / 2.0;
        case CoarseningStrategy::New: return at >= pi / 4.0 || ax >= pi / 2.0;
    }
    return false;
}

namespace {

struct FineSymbols {
    HarmonicGroup group;
    std::array<cplx, 8> l;   // fine operator
    std::array<cplx, 8> s1;  // S^nu1
    std::array<cplx, 8> s2;  // S^nu2
};

FineSymbols fine_symbols(const LfaConfig& cfg, Frequency low) {
    FineSymbols f;
    f.group = harmonic_group(low);
    for (std::size_t k = 0; k < 8; ++k) {
        const Frequency m = f.group.modes[k];
        f.l[k] = symbol_L(cfg.sigma, m);
        const cplx s = symbol_S(cfg.omega, cfg.sigma, m);
        f.s1[k] = ipow(s, cfg.nu1);
        f.s2[k] = ipow(s, cfg.nu2);
    }
    return f;
}

// S2 [I - P K R L] S1 with P = p_scale R^T and K (rows x rows) given.
template <std::size_t Rows>
HarmonicMatrix assemble(const FineSymbols& f, const std::array<std::array<double, 8>, Rows>& r,
                        const std::array<std::array<cplx, Rows>, Rows>& k, double p_scale) {
    HarmonicMatrix m;
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            cplx corr{};
            for (std::size_t a = 0; a < Rows; ++a) {
                if (r[a][i] == 0.0) continue;
                for (std::size_t b = 0; b < Rows; ++b) corr += r[a][i] * k[a][b] * r[b][j];
            }
            const cplx inner = (i == j ? 1.0 : 0.0) - p_scale * corr * f.l[j];
            m(i, j) = f.s2[i] * inner * f.s1[j];
        }
    }
    return m;
}

}  // namespace

HarmonicEvaluation two_grid_matrix_new(const LfaConfig& cfg, Frequency low) {
    cfg.validate();
    const FineSymbols f = fine_symbols(cfg, low);
    const cplx lc = symbol_L(cfg.sigma, low, 4, 2);
    HarmonicEvaluation out;
    if (std::abs(lc) < singular_tol) {
        out.singular = true;
        return out;
    }
    std::array<std::array<double, 8>, 1> r{};
    for (std::size_t k = 0; k < 8; ++k) {
        const Frequency m = f.group.modes[k];
        r[0][k] = symbol_R(m.theta_t) * symbol_R(2.0 * m.theta_t) * symbol_R(m.theta_x);
    }
    const std::array<std::array<cplx, 1>, 1> kinv{{{1.0 / lc}}};
    out.matrix = assemble(f, r, kinv, 4.0);
    return out;
}

HarmonicEvaluation three_grid_matrix_original(const LfaConfig& cfg, Frequency low) {
    cfg.validate();
    const FineSymbols f = fine_symbols(cfg, low);
    HarmonicEvaluation out;

    // middle (2 tau, 2h) level: row 0 carries (low, gamma2) in time, row 1 (gamma4, gamma2 o gamma4)
    const std::array<Frequency, 2> mid{low, Frequency{gamma4(low.theta_t), low.theta_x}};
    std::array<cplx, 2> l2{}, s2a{}, s2b{};
    std::array<double, 2> r21{};
    for (std::size_t a = 0; a < 2; ++a) {
        l2[a] = symbol_L(cfg.sigma, mid[a], 2, 2);
        const cplx s = symbol_S(cfg.omega, cfg.sigma / 2.0, Frequency{2.0 * mid[a].theta_t, 2.0 * mid[a].theta_x});
        s2a[a] = ipow(s, cfg.eta1);
        s2b[a] = ipow(s, cfg.eta2);
        r21[a] = symbol_R(2.0 * mid[a].theta_t);
    }
    const cplx l4 = symbol_L(cfg.sigma, low, 4, 2);
    if (std::abs(l4) < singular_tol || std::abs(l2[0]) < singular_tol || std::abs(l2[1]) < singular_tol) {
        out.singular = true;
        return out;
    }

    // approximate inverse of the middle operator: (I - S2b [I - P21 L4^{-1} R21 L2] S2a) L2^{-1}
    std::array<std::array<cplx, 2>, 2> approx{};
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const cplx inner = (a == b ? 1.0 : 0.0) - 2.0 * r21[a] * r21[b] * l2[b] / l4;
            const cplx e = (a == b ? 1.0 : 0.0) - s2b[a] * inner * s2a[b];
            approx[a][b] = e / l2[b];
        }
    }

    std::array<std::array<double, 8>, 2> r22{};
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t k = 0; k < 4; ++k) {
            const std::size_t idx = s * 4 + k;
            const Frequency m = f.group.modes[idx];
            const std::size_t row = (k == 0 || k == 2) ? 0 : 1;
            r22[row][idx] = symbol_R(m.theta_t) * symbol_R(m.theta_x);
        }
    }
    out.matrix = assemble(f, r22, approx, 2.0);
    return out;
}

HarmonicEvaluation harmonic_matrix(CoarseningStrategy strategy, const LfaConfig& cfg, Frequency low) {
    if (strategy == CoarseningStrategy::New) return two_grid_matrix_new(cfg, low);
    if (strategy == CoarseningStrategy::Original) return three_grid_matrix_original(cfg, low);
    throw UsageError("harmonic matrices exist for the 'new' and 'original' strategies only");
}

std::optional<double> spectral_radius_at(CoarseningStrategy strategy, const LfaConfig& cfg, Frequency low) {
    const HarmonicEvaluation e = harmonic_matrix(strategy, cfg, low);
    if (e.singular) return std::nullopt;
    return e.matrix.spectral_radius();
}

double low_sample_t(std::size_t i, std::size_t resolution) {
    return -pi / 4.0 + (static_cast<double>(i) + 0.5) * (pi / 2.0) / static_cast<double>(resolution);
}

double low_sample_x(std::size_t j, std::size_t resolution) {
    return -pi / 2.0 + (static_cast<double>(j) + 0.5) * pi / static_cast<double>(resolution);
}

RhoBar spectral_radius_bar(CoarseningStrategy strategy, const LfaConfig& cfg, bool use_symmetry) {
    cfg.validate();
    const std::size_t res = cfg.resolution;
    const std::size_t rows = use_symmetry ? res / 2 : res;
    const std::size_t cols = use_symmetry ? res / 2 : res;

    std::vector<RhoBar> per_row(rows);
    parallel_for(0, rows, [&](std::size_t i) {
        RhoBar best;
        for (std::size_t j = 0; j < cols; ++j) {
            const Frequency low{low_sample_t(i, res), low_sample_x(j, res)};
            const auto rho = spectral_radius_at(strategy, cfg, low);
            if (!rho) {
                ++best.excluded;
                continue;
            }
            if (*rho > best.rho) {
                best.rho = *rho;
                best.argmax = low;
            }
        }
        per_row[i] = best;
    });

    RhoBar out;
    for (const auto& r : per_row) {
        out.excluded += r.excluded;
        if (r.rho > out.rho) {
            out.rho = r.rho;
            out.argmax = r.argmax;
        }
    }
    if (use_symmetry) out.excluded *= 4;
    return out;
}

OmegaOpt omega_opt_numeric(CoarseningStrategy strategy, const LfaConfig& cfg) {
    LfaConfig c = cfg;
    auto rho = [&](double w) {
        c.omega = w;
        return spectral_radius_bar(strategy, c).rho;
    };
    auto better = [](double wa, double ra, double wb, double rb) { return ra < rb || (ra == rb && wa < wb); };

    constexpr int scan = 64;
    std::vector<double> ws, rs;
    for (int i = 1; i <= scan; ++i) ws.push_back(static_cast<double>(i) / scan);
    ws.push_back(optimal_omega(strategy, cfg.sigma));
    for (double w : ws) rs.push_back(rho(w));

    std::size_t best = 0;
    for (std::size_t k = 1; k < ws.size(); ++k)
        if (better(ws[k], rs[k], ws[best], rs[best])) best = k;

    // refine around the best scan point (the extra candidate is refined on the scan lattice too)
    const double step = 1.0 / scan;
    double lo = std::max(ws[best] - step, 1e-6);
    double hi = std::min(ws[best] + step, 1.0);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = rho(x1), f2 = rho(x2);
    OmegaOpt out{ws[best], rs[best]};
    while (hi - lo > 1e-5) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = rho(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = rho(x2);
        }
    }
    if (better(x1, f1, out.omega, out.rho)) out = {x1, f1};
    if (better(x2, f2, out.omega, out.rho)) out = {x2, f2};
    return out;
}

ModeMap low_mode_action(const std::function<std::optional<HarmonicMatrix>(Frequency)>& matrix, std::size_t n) {
    if (n < 8 || n % 8 != 0) throw UsageError("mode map size must be a positive multiple of 8");
    ModeMap map;
    map.n = n;
    map.theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) map.theta[i] = -pi + (static_cast<double>(i) + 0.5) * 2.0 * pi / n;
    map.values.assign(n * n, 0.0);

    auto index_of = [&](double theta) {
        const double u = (theta + pi) * static_cast<double>(n) / (2.0 * pi) - 0.5;
        return static_cast<std::size_t>(std::lround(u));
    };
    // low box: theta_t in (-pi/4, pi/4] -> indices [3n/8, 5n/8); theta_x in (-pi/2, pi/2] -> [n/4, 3n/4)
    for (std::size_t it = 3 * n / 8; it < 5 * n / 8; ++it) {
        for (std::size_t ix = n / 4; ix < 3 * n / 4; ++ix) {
            const Frequency low{map.theta[it], map.theta[ix]};
            const auto m = matrix(low);
            if (!m) continue;
            const HarmonicGroup group = harmonic_group(low);
            for (std::size_t k = 0; k < 8; ++k) {
                const Frequency f = group.modes[k];
                map.values[index_of(f.theta_t) * n + index_of(f.theta_x)] = std::abs((*m)(k, 0));
            }
        }
    }
    return map;
}

ModeMap low_mode_action(CoarseningStrategy strategy, const LfaConfig& cfg, std::size_t n) {
    cfg.validate();
    return low_mode_action(
        [&](Frequency low) -> std::optional<HarmonicMatrix> {
            auto e = harmonic_matrix(strategy, cfg, low);
            if (e.singular) return std::nullopt;
            return e.matrix;
        },
        n);
}

}  // namespace stmg
