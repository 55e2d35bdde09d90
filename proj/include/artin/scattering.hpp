#pragma once

// Scattering data of the modular billiard: the completed-zeta factor
// theta(s) = pi^-s zeta(2s) Gamma(s), the unitary reflection amplitude
// S(p) = theta(1/2 + ip) / theta(1/2 - ip) = exp(2i delta), and the resonance
// spectrum sitting at the zeta zeros.
//
// Width convention: a resonance with energy E and width G has its S-matrix
// pole at E - iG on the second sheet. For the exact spectrum this gives
// E = u^2/4 + 3/16 and G = u/4.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/specfun.hpp"
#include "artin/zeros.hpp"

namespace artin {

inline Complex theta(Complex s) {
    if (s == Complex{0.5, 0.0}) {
        throw PoleError("theta: zeta(2s) has a pole at s = 1/2");
    }
    return std::exp(log_gamma(s) - s * std::log(pi)) * zeta(2.0 * s);
}

// d theta / ds. The logarithmic-derivative form is used unless zeta(2s) is
// nearly zero, where the product rule avoids 0/0.
inline Complex theta_prime(Complex s) {
    if (s == Complex{0.5, 0.0}) {
        throw PoleError("theta_prime: zeta(2s) has a pole at s = 1/2");
    }
    const Complex z = zeta(2.0 * s);
    const Complex dz = zeta_prime(2.0 * s);
    const Complex psi = digamma(s);
    const Complex front = std::exp(log_gamma(s) - s * std::log(pi));
    if (std::abs(z) >= 1e-6) {
        return front * z * (-std::log(pi) + psi + 2.0 * dz / z);
    }
    return front * (-std::log(pi) * z + 2.0 * dz + z * psi);
}

// S(p) for real p > 0. Gamma factors are combined in log form so that neither
// side underflows at large p.
inline Complex s_matrix(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw DomainError("s_matrix: need finite p > 0");
    }
    const Complex plus{0.5, p};
    const Complex minus{0.5, -p};
    const Complex gamma_ratio =
        std::exp(log_gamma(plus) - log_gamma(minus) - 2.0 * I * p * std::log(pi));
    return gamma_ratio * zeta(2.0 * plus) / zeta(2.0 * minus);
}

// Energy and momentum on the continuous spectrum: E = p^2 + 1/4.
inline double energy_from_momentum(double p) { return p * p + 0.25; }

enum class Sheet { physical, second };

// Branch of p = sqrt(E - 1/4) with the cut along real E >= 1/4. The physical
// sheet has Im p >= 0 (real E on the cut is read on its upper lip); the second
// sheet is the opposite branch, where the resonance poles live.
inline Complex momentum_from_energy(Complex energy, Sheet sheet) {
    const Complex shifted = energy - 0.25;
    if (shifted == Complex{0.0, 0.0}) {
        throw DomainError("momentum_from_energy: branch point at E = 1/4");
    }
    const Complex physical = I * std::sqrt(-shifted);
    return sheet == Sheet::physical ? physical : -physical;
}

struct PhaseSample {
    double energy = 0.0;
    double momentum = 0.0;
    Complex s_value;
    double delta = 0.0;  // unwrapped, S = exp(2i delta)
};

struct PhaseScanOptions {
    // Total sample budget including refinement points.
    int max_samples = 1 << 20;
};

// Samples on a uniform energy grid, with bisection wherever arg S moves by
// pi/2 or more between neighbours; delta is then unwrapped by continuity and
// anchored in (-pi/2, pi/2] at the first sample.
inline std::vector<PhaseSample> phase_scan(double e_min, double e_max, int samples,
                                           const PhaseScanOptions& options = {}) {
    if (!(e_min > 0.25) || !(e_max > e_min) || samples < 2 || !std::isfinite(e_max)) {
        throw DomainError("phase_scan: need 1/4 < e_min < e_max and samples >= 2");
    }
    auto make_sample = [](double energy) {
        PhaseSample sample;
        sample.momentum = std::sqrt(energy - 0.25);
        sample.energy = energy_from_momentum(sample.momentum);
        sample.s_value = s_matrix(sample.momentum);
        return sample;
    };
    auto wrap = [](double angle) { return std::remainder(angle, 2.0 * pi); };

    std::vector<PhaseSample> result;
    result.reserve(static_cast<std::size_t>(samples));
    result.push_back(make_sample(e_min));
    int budget = options.max_samples - samples;

    // Refine the interval between result.back() and `right`, appending points.
    std::vector<PhaseSample> pending;
    for (int i = 1; i < samples; ++i) {
        const double energy = i == samples - 1
                                  ? e_max
                                  : e_min + (e_max - e_min) * static_cast<double>(i) / (samples - 1);
        pending.push_back(make_sample(energy));
        while (!pending.empty()) {
            const PhaseSample& left = result.back();
            const PhaseSample& right = pending.back();
            const double jump = wrap(std::arg(right.s_value) - std::arg(left.s_value));
            if (std::abs(jump) < 0.5 * pi || right.energy <= left.energy) {
                result.push_back(right);
                pending.pop_back();
                continue;
            }
            if (--budget < 0) {
                throw BudgetError("phase_scan: refinement budget exhausted");
            }
            const double mid = 0.5 * (left.energy + right.energy);
            if (!(mid > left.energy && mid < right.energy)) {
                throw BudgetError("phase_scan: cannot refine below energy resolution");
            }
            pending.push_back(make_sample(mid));
        }
    }

    double unwrapped = std::arg(result.front().s_value);
    result.front().delta = 0.5 * unwrapped;
    for (std::size_t k = 1; k < result.size(); ++k) {
        unwrapped += wrap(std::arg(result[k].s_value) - std::arg(result[k - 1].s_value));
        result[k].delta = 0.5 * unwrapped;
    }
    return result;
}

enum class ResonanceMethod { exact, approx };

inline const char* to_string(ResonanceMethod method) {
    return method == ResonanceMethod::exact ? "exact" : "approx";
}

struct Resonance {
    int index = 0;
    double u = 0.0;
    double energy = 0.0;
    double width = 0.0;
    ResonanceMethod method = ResonanceMethod::exact;
    std::optional<double> phase_offset;  // approx only

    Complex pole() const { return {energy, -width}; }
};

inline double bump_energy(double u) { return 0.25 * u * u + 3.0 / 16.0; }

inline std::vector<Resonance> exact_resonances(std::span<const ZetaZero> zeros) {
    if (zeros.empty()) {
        throw DomainError("exact_resonances: need at least one zero");
    }
    std::vector<Resonance> out;
    out.reserve(zeros.size());
    for (const auto& zero : zeros) {
        out.push_back({zero.index, zero.u, bump_energy(zero.u), 0.25 * zero.u,
                       ResonanceMethod::exact, std::nullopt});
    }
    return out;
}

struct ApproxOptions {
    // Extra complex Newton steps on theta(1/2 - i sqrt(E - 1/4)) = 0 starting
    // from the one-step estimate. Zero reproduces the tabulated values.
    int newton_steps = 0;
};

namespace detail {

// d/dE theta(1/2 + sign*i*q) with q = sqrt(E - 1/4), from d theta/ds.
inline Complex theta_energy_derivative(Complex q, double sign) {
    const Complex s = 0.5 + sign * I * q;
    return theta_prime(s) * (sign * I / (2.0 * q));
}

}  // namespace detail

// Linearize theta(1/2 - i sqrt(E - 1/4)) in E at the bump energy
// E_n = u^2/4 + 3/16; its root E_n - theta/theta_E estimates the pole.
inline std::vector<Resonance> approx_resonances(std::span<const ZetaZero> zeros,
                                                const ApproxOptions& options = {}) {
    if (zeros.empty()) {
        throw DomainError("approx_resonances: need at least one zero");
    }
    if (options.newton_steps < 0) {
        throw DomainError("approx_resonances: newton_steps must be >= 0");
    }
    std::vector<Resonance> out;
    out.reserve(zeros.size());
    for (const auto& zero : zeros) {
        const double bump = bump_energy(zero.u);
        const Complex q{std::sqrt(bump - 0.25), 0.0};

        const Complex d_minus = detail::theta_energy_derivative(q, -1.0);
        const Complex d_plus = detail::theta_energy_derivative(q, +1.0);
        Complex pole = bump - theta(0.5 - I * q) / d_minus;

        for (int step = 0; step < options.newton_steps; ++step) {
            const Complex qk = std::sqrt(pole - 0.25);
            pole -= theta(0.5 - I * qk) / detail::theta_energy_derivative(qk, -1.0);
        }

        const double offset = 0.5 * std::arg(d_plus / d_minus);
        if (!std::isfinite(pole.real()) || !std::isfinite(pole.imag()) || !std::isfinite(offset)) {
            throw AccuracyError("approx_resonances: non-finite pole estimate for zero " +
                                std::to_string(zero.index));
        }
        out.push_back({zero.index, zero.u, pole.real(), -pole.imag(), ResonanceMethod::approx,
                       offset});
    }
    return out;
}

struct WidthRatio {
    double to_energy = 0.0;             // G_n / E_n
    std::optional<double> to_spacing;   // G_n / (E_{n+1} - E_n); absent for the last
};

inline std::vector<WidthRatio> width_ratios(std::span<const Resonance> resonances) {
    if (resonances.size() < 2) {
        throw DomainError("width_ratios: need at least two resonances");
    }
    for (std::size_t k = 0; k < resonances.size(); ++k) {
        if (resonances[k].method != ResonanceMethod::exact) {
            throw DomainError("width_ratios: needs exact-method resonances");
        }
        if (k > 0 && !(resonances[k].energy > resonances[k - 1].energy)) {
            throw DomainError("width_ratios: resonances must be sorted by energy");
        }
    }
    std::vector<WidthRatio> out;
    out.reserve(resonances.size());
    for (std::size_t k = 0; k < resonances.size(); ++k) {
        WidthRatio ratio;
        ratio.to_energy = resonances[k].width / resonances[k].energy;
        if (k + 1 < resonances.size()) {
            ratio.to_spacing =
                resonances[k].width / (resonances[k + 1].energy - resonances[k].energy);
        }
        out.push_back(ratio);
    }
    return out;
}

}  // namespace artin
