#pragma once

// The Eisenstein-series (Maass) wave function on the modular surface in the
// log-coordinate yt = ln y. With the plane-wave amplitude
//
//   phi_p(x, yt) = e^{-ip yt} + S(p) e^{ip yt}
//                + 4/theta(1/2 - ip) sum_l tau_ip(l) K_ip(2 pi l e^yt) cos(2 pi l x),
//
// the wave function is psi_p = e^{yt/2} phi_p = E(z, 1/2 - ip), which is
// invariant under SL(2,Z) and solves -y^2 (d_xx + d_yy) psi = (p^2 + 1/4) psi.
// Also here: fundamental-domain geometry and the modular-invariance and
// Laplacian residual checks.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "artin/error.hpp"
#include "artin/scattering.hpp"
#include "artin/specfun.hpp"

namespace artin {

struct HalfPlanePoint {
    double x = 0.0;
    double y_tilde = 0.0;  // ln y

    double y() const { return std::exp(y_tilde); }

    static HalfPlanePoint from_xy(double x, double y) {
        if (!(y > 0.0)) {
            throw DomainError("HalfPlanePoint: need y > 0");
        }
        return {x, std::log(y)};
    }
};

struct TruncationSpec {
    double tail_tol = 1e-12;
    int l_min = 3;
    int l_max_cap = 4096;

    void validate() const {
        if (!(tail_tol > 0.0 && tail_tol < 1.0) || l_min < 1 || l_min > l_max_cap) {
            throw DomainError("TruncationSpec: need 0 < tail_tol < 1 and 1 <= l_min <= l_max_cap");
        }
    }
};

struct WavefunctionSample {
    HalfPlanePoint point;
    Complex psi;        // e^{yt/2} * amplitude
    Complex amplitude;  // plane-wave normalization, e^{-ip yt} + S e^{ip yt} + ...
    int modes_used = 0;
    double tail_bound = 0.0;
};

// Divisor factorizations n = a*b as (prime, exponent) pairs, trial division on
// a 2-3-5 wheel.
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> factors;
    auto strip = [&](std::uint64_t d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0) factors.emplace_back(d, e);
    };
    strip(2);
    strip(3);
    strip(5);
    static constexpr int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    std::uint64_t d = 7;
    for (int i = 0; d * d <= n; d += wheel[i], i = (i + 1) % 8) {
        strip(d);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

inline constexpr std::int64_t tau_max_argument = 1'000'000'000;

// tau_ip(n) = sum_{ab = n} (a/b)^{ip} = sum_{d | n} cos(p (2 ln d - ln n)).
// Real because (a, b) and (b, a) are conjugate terms.
inline double tau(double p, std::int64_t n) {
    if (n < 1) {
        throw DomainError("tau: need n >= 1");
    }
    if (n > tau_max_argument) {
        throw BudgetError("tau: n exceeds the trial-division budget");
    }
    std::vector<std::uint64_t> divisors{1};
    for (const auto& [prime, exponent] : factorize(static_cast<std::uint64_t>(n))) {
        const std::size_t base = divisors.size();
        std::uint64_t power = 1;
        for (int e = 1; e <= exponent; ++e) {
            power *= prime;
            for (std::size_t k = 0; k < base; ++k) divisors.push_back(divisors[k] * power);
        }
    }
    const double log_n = std::log(static_cast<double>(n));
    double sum = 0.0;
    for (const auto d : divisors) {
        sum += std::cos(p * (2.0 * std::log(static_cast<double>(d)) - log_n));
    }
    return sum;
}

// Wave function at fixed momentum. The point-independent pieces (S(p) and the
// 4/theta(1/2 - ip) prefactor) are computed once at construction, so one
// instance can be shared across a grid.
class EisensteinWave {
public:
    explicit EisensteinWave(double p, QuadratureSpec quadrature = {})
        : p_(p), quadrature_(quadrature) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw DomainError("wavefunction: need finite p > 0");
        }
        quadrature_.validate();
        reflection_ = s_matrix(p);
        prefactor_ = 4.0 / theta(Complex{0.5, -p});
        log_prefactor_ = std::log(std::max(1.0, std::abs(prefactor_)));
    }

    double momentum() const { return p_; }
    Complex reflection() const { return reflection_; }
    Complex prefactor() const { return prefactor_; }

    // Smallest l with 2 pi l y beyond ln(1/tol) + 10 + ln|prefactor|, at least l_min.
    int modes_needed(double y_tilde, const TruncationSpec& trunc) const {
        trunc.validate();
        const double threshold = std::log(1.0 / trunc.tail_tol) + 10.0 + log_prefactor_;
        const double per_mode = 2.0 * pi * std::exp(y_tilde);
        const double needed = std::floor(threshold / per_mode) + 1.0;
        if (!(needed <= static_cast<double>(trunc.l_max_cap))) {
            throw BudgetError("wavefunction: needs more than l_max_cap = " +
                              std::to_string(trunc.l_max_cap) + " modes");
        }
        return std::max(trunc.l_min, static_cast<int>(needed));
    }

    // min_modes forces at least that many Fourier modes (used to keep a finite
    // difference stencil on one smooth truncation).
    WavefunctionSample operator()(HalfPlanePoint point, const TruncationSpec& trunc = {},
                                  int min_modes = 0) const {
        if (!std::isfinite(point.x) || !std::isfinite(point.y_tilde)) {
            throw DomainError("wavefunction: point must be finite");
        }
        int modes = modes_needed(point.y_tilde, trunc);
        if (min_modes > modes) {
            if (min_modes > trunc.l_max_cap) {
                throw BudgetError("wavefunction: requested modes exceed l_max_cap");
            }
            modes = min_modes;
        }
        const double y = point.y();
        const double x = point.x - std::nearbyint(point.x);

        Complex series{0.0, 0.0};
        double mode_sum = 0.0;
        for (int l = 1; l <= modes; ++l) {
            const double arg = 2.0 * pi * l * y;
            mode_sum += tau(p_, l) * bessel_k_imag_order(p_, arg, quadrature_) *
                        std::cos(2.0 * pi * l * x);
        }
        series = prefactor_ * mode_sum;

        const Complex phase = std::exp(I * (p_ * point.y_tilde));
        const double root_y = std::exp(0.5 * point.y_tilde);
        WavefunctionSample sample;
        sample.point = point;
        sample.amplitude = std::conj(phase) + reflection_ * phase + series;
        sample.psi = root_y * sample.amplitude;
        sample.modes_used = modes;
        sample.tail_bound = root_y * std::abs(prefactor_) * std::exp(-2.0 * pi * (modes + 1) * y);
        return sample;
    }

private:
    double p_;
    QuadratureSpec quadrature_;
    Complex reflection_;
    Complex prefactor_;
    double log_prefactor_ = 0.0;
};

inline WavefunctionSample wavefunction(double p, HalfPlanePoint point,
                                       const TruncationSpec& trunc = {}) {
    return EisensteinWave(p)(point, trunc);
}

// Points where both z and -1/z are comfortably inside the convergence region.
struct InvarianceBand {
    double y_tilde_min = -0.14;
    double y_tilde_max = 2.0;
};

// max over the generators w = z + 1 and w = -1/z of |psi(w) - psi(z)| / |psi(z)|.
inline double modular_invariance_residual(const EisensteinWave& wave, HalfPlanePoint point,
                                          const TruncationSpec& trunc = {},
                                          const InvarianceBand& band = {}) {
    if (!(point.y_tilde >= band.y_tilde_min && point.y_tilde <= band.y_tilde_max)) {
        throw DomainError("modular_invariance_residual: point outside the band");
    }
    const double y = point.y();
    const Complex base = wave(point, trunc).psi;
    const double scale = std::max(std::abs(base), 1e-30);

    const Complex shifted = wave({point.x + 1.0, point.y_tilde}, trunc).psi;

    const double r2 = point.x * point.x + y * y;
    const HalfPlanePoint inverted{-point.x / r2, std::log(y / r2)};
    const Complex flipped = wave(inverted, trunc).psi;

    return std::max(std::abs(shifted - base), std::abs(flipped - base)) / scale;
}

inline double modular_invariance_residual(double p, HalfPlanePoint point,
                                          const TruncationSpec& trunc = {},
                                          const InvarianceBand& band = {}) {
    return modular_invariance_residual(EisensteinWave(p), point, trunc, band);
}

// |-y^2 Lap_h psi - E psi| / (E |psi|) with E = p^2 + 1/4 and the 5-point
// Laplacian in (x, y). All stencil points share the mode count of the lowest
// one, so the difference quotient sees a single smooth function.
inline double pde_residual(const EisensteinWave& wave, HalfPlanePoint point, double h = 1e-3,
                           const TruncationSpec& trunc = {}) {
    const double y = point.y();
    if (!(h > 0.0) || !(h < y)) {
        throw DomainError("pde_residual: need 0 < h < y");
    }
    const int modes = wave.modes_needed(std::log(y - h), trunc);
    auto at = [&](double x, double yy) {
        return wave(HalfPlanePoint::from_xy(x, yy), trunc, modes).psi;
    };
    const Complex center = at(point.x, y);
    const Complex laplacian = (at(point.x + h, y) + at(point.x - h, y) + at(point.x, y + h) +
                               at(point.x, y - h) - 4.0 * center) /
                              (h * h);
    const double energy = energy_from_momentum(wave.momentum());
    return std::abs(-y * y * laplacian - energy * center) /
           (energy * std::max(std::abs(center), 1e-300));
}

inline double pde_residual(double p, HalfPlanePoint point, double h = 1e-3,
                           const TruncationSpec& trunc = {}) {
    return pde_residual(EisensteinWave(p), point, h, trunc);
}

// Hyperbolic area of the fundamental domain below y0 = e^{yt0}: pi/3 - e^{-yt0}.
inline double area_below(double y_tilde_0) {
    if (!(y_tilde_0 >= 0.0)) {
        throw DomainError("area_below: ordinate must lie above the arc apex (y_tilde_0 >= 0)");
    }
    return pi / 3.0 - std::exp(-y_tilde_0);
}

// Hyperbolic length of the horizontal cross-section at yt0.
inline double horizontal_length(double y_tilde_0) { return std::exp(-y_tilde_0); }

// Translate into |x| <= 1/2, invert through the unit circle, repeat until stable.
inline HalfPlanePoint reduce_to_fundamental_domain(double x, double y, int max_iterations = 10000) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("reduce_to_fundamental_domain: need finite x and y > 0");
    }
    for (int iter = 0; iter < max_iterations; ++iter) {
        x -= std::nearbyint(x);
        const double r2 = x * x + y * y;
        if (r2 >= 1.0) {
            return HalfPlanePoint::from_xy(x, y);
        }
        x = -x / r2;
        y = y / r2;
    }
    throw ConvergenceError("reduce_to_fundamental_domain: iteration cap reached");
}

}  // namespace artin
