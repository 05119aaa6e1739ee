#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "stmg/dense.hpp"
#include "stmg/strategy.hpp"

namespace stmg {

struct Frequency {
    double theta_t = 0.0;
    double theta_x = 0.0;
};

/// theta - sign(theta) pi, with sign(0) = -1.
double gamma2(double theta);
/// theta - sign(theta) pi/2, with sign(0) = -1.
double gamma4(double theta);

/**
 * The eight frequencies aliasing to one (4 tau, 2h) coarse mode. Index
 * s * 4 + k: time component k in (low, gamma4, gamma2, gamma2 o gamma4),
 * space component s in (low, gamma2).
 */
struct HarmonicGroup {
    std::array<Frequency, 8> modes;
};

/// low must satisfy |theta_t| <= pi/4 and |theta_x| <= pi/2 (open at the left end).
HarmonicGroup harmonic_group(Frequency low);
bool is_low_frequency(Frequency f);

struct LfaConfig {
    double sigma = 1.0;
    double omega = 0.5;
    int nu1 = 3;
    int nu2 = 3;
    int eta1 = 3;
    int eta2 = 3;
    std::size_t resolution = 128;  // samples per axis of the low-frequency box

    void validate() const;
};

/// Stability function R(z) of the time integrator.
using StabilityFunction = cplx (*)(cplx);
cplx backward_euler(cplx z);

/// 1 - omega + omega e^{-i theta_t} R(2 sigma (cos theta_x - 1)).
cplx symbol_S(double omega, double sigma, Frequency f, StabilityFunction r = backward_euler);

/**
 * Rediscretized operator symbol on the (mt tau, mx h) grid, evaluated at the
 * fine frequency f: 1 - e^{-i mt theta_t} + 2 sigma mt / mx^2 (1 - cos mx theta_x).
 * (mt, mx) must be (1,1), (2,2) or (4,2).
 */
cplx symbol_L(double sigma, Frequency f, int mt = 1, int mx = 1);

/// (1 + cos theta) / 2
double symbol_R(double theta);

/// Argmax of |S| over the high frequencies of a single coarsening step.
Frequency optimal_modes(CoarseningStrategy strategy, double omega, double sigma);
double smoothing_factor(CoarseningStrategy strategy, double omega, double sigma);

/// Membership in the high-frequency set of a single coarsening step.
bool is_high_frequency(CoarseningStrategy strategy, Frequency f);

struct HarmonicEvaluation {
    HarmonicMatrix matrix;
    bool singular = false;  // some inverted coarse symbol vanished
};

HarmonicEvaluation two_grid_matrix_new(const LfaConfig& cfg, Frequency low);
HarmonicEvaluation three_grid_matrix_original(const LfaConfig& cfg, Frequency low);
HarmonicEvaluation harmonic_matrix(CoarseningStrategy strategy, const LfaConfig& cfg, Frequency low);

/// Spectral radius at one group; empty when the group is singular.
std::optional<double> spectral_radius_at(CoarseningStrategy strategy, const LfaConfig& cfg, Frequency low);

/// Sample theta_t (or theta_x) number i of the half-cell offset low grid.
double low_sample_t(std::size_t i, std::size_t resolution);
double low_sample_x(std::size_t j, std::size_t resolution);

struct RhoBar {
    double rho = 0.0;
    Frequency argmax;
    std::size_t excluded = 0;  // singular groups skipped
};

/**
 * Maximum spectral radius over resolution x resolution low-frequency samples.
 * With use_symmetry only one quadrant is evaluated; reflecting either angle
 * conjugates the harmonic matrix.
 */
RhoBar spectral_radius_bar(CoarseningStrategy strategy, const LfaConfig& cfg, bool use_symmetry = true);

struct OmegaOpt {
    double omega = 0.5;
    double rho = 1.0;
};

/**
 * argmin of rho-bar over omega in (0,1]: 64-point scan (plus the smoothing
 * optimum), golden-section refinement to a 1e-5 bracket, smallest omega on ties.
 */
OmegaOpt omega_opt_numeric(CoarseningStrategy strategy, const LfaConfig& cfg);

/// |coefficients| on the offset grid theta_i = -pi + (i + 1/2) 2 pi / n.
struct ModeMap {
    std::size_t n = 0;
    std::vector<double> theta;   // shared by both axes
    std::vector<double> values;  // values[it * n + ix]

    double at(std::size_t it, std::size_t ix) const { return values[it * n + ix]; }
};

/**
 * Applies the harmonic matrix of each low group to the low-mode input (unit
 * coefficient on the low component only) and scatters the moduli to the
 * grid positions of the eight companions. n must be a multiple of 8.
 */
ModeMap low_mode_action(const std::function<std::optional<HarmonicMatrix>(Frequency)>& matrix, std::size_t n);
ModeMap low_mode_action(CoarseningStrategy strategy, const LfaConfig& cfg, std::size_t n);

}  // namespace stmg
