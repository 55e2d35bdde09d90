#pragma once

// Complex special-function kernel: log-gamma, digamma, Riemann zeta and its
// derivative (Euler-Maclaurin), the Hardy Z function, and the modified Bessel
// function K_{ip}(y) of imaginary order by direct quadrature.
//
// Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "artin/error.hpp"

namespace artin {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

// Controls the quadrature behind bessel_k_imag_order.
struct QuadratureSpec {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    int max_panels = 1 << 16;
    // Integration stops where y*cosh(t) exceeds this (exp(-745) underflows).
    double tail_cut_exponent = 745.0;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_panels < 4 || !(tail_cut_exponent > 0.0)) {
            throw DomainError("QuadratureSpec: need rel_tol > 0, abs_tol > 0, max_panels >= 4");
        }
    }
};

// Euler-Maclaurin parameters for zeta: N direct terms, M Bernoulli corrections.
struct SeriesSpec {
    int direct_terms = 20;
    int correction_terms = 8;

    // Bernoulli corrections beyond B_30 start to diverge before they help.
    static constexpr int max_corrections = 15;

    void validate() const {
        if (direct_terms < 10 || correction_terms < 1 || correction_terms > max_corrections) {
            throw DomainError("SeriesSpec: need N >= 10 and 1 <= M <= 15");
        }
    }

    // Default for |Im s| = height: N = max(20, ceil(1.3 |t|)), M = 8.
    static SeriesSpec for_height(double height) {
        const double n = std::ceil(1.3 * std::abs(height));
        return SeriesSpec{n > 20.0 ? static_cast<int>(n) : 20, 8};
    }
};

namespace detail {

// B_2, B_4, ..., B_32.
inline constexpr std::array<double, 16> bernoulli_even = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
};

inline bool is_nonpositive_integer(Complex s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

inline void check_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw AccuracyError(std::string(what) + ": result is not finite");
    }
}

// Shift z upward until the Stirling series is accurate.
inline bool needs_shift(Complex z) { return std::abs(z) < 10.0 || z.real() < 0.0; }

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
template <int N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[i] = -x;
            nodes[N - 1 - i] = x;
            weights[i] = weights[N - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre<16>& gauss_legendre_16() {
    static const GaussLegendre<16> rule;
    return rule;
}

}  // namespace detail

// Analytic continuation of log Gamma (branch cut on the negative real axis,
// real on the positive axis). Stirling series after an upward shift.
inline Complex log_gamma(Complex s) {
    if (detail::is_nonpositive_integer(s)) {
        throw PoleError("log_gamma: pole at non-positive integer");
    }
    Complex z = s;
    Complex shift{0.0, 0.0};
    while (detail::needs_shift(z)) {
        shift += std::log(z);
        z += 1.0;
    }
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex series{0.0, 0.0};
    Complex power = inv;
    for (int k = 1; k <= 10; ++k) {
        series += detail::bernoulli_even[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
        power *= inv2;
    }
    const Complex result =
        (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
    detail::check_finite(result, "log_gamma");
    return result;
}

inline Complex gamma(Complex s) { return std::exp(log_gamma(s)); }

inline Complex digamma(Complex s) {
    if (detail::is_nonpositive_integer(s)) {
        throw PoleError("digamma: pole at non-positive integer");
    }
    Complex z = s;
    Complex shift{0.0, 0.0};
    while (detail::needs_shift(z)) {
        shift += 1.0 / z;
        z += 1.0;
    }
    const Complex inv2 = 1.0 / (z * z);
    Complex series{0.0, 0.0};
    Complex power = inv2;
    for (int k = 1; k <= 10; ++k) {
        series += detail::bernoulli_even[k - 1] / (2.0 * k) * power;
        power *= inv2;
    }
    const Complex result = std::log(z) - 0.5 / z - series - shift;
    detail::check_finite(result, "digamma");
    return result;
}

namespace detail {

struct ZetaParts {
    Complex value;
    Complex derivative;
};

// Euler-Maclaurin summation of zeta(s) and, optionally, zeta'(s):
//   sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + sum_k B_2k/(2k)! (s)_{2k-1} N^(1-s-2k)
inline ZetaParts zeta_euler_maclaurin(Complex s, const SeriesSpec& spec, bool want_derivative) {
    spec.validate();
    if (s == Complex{1.0, 0.0}) {
        throw PoleError("zeta: pole at s = 1");
    }
    const int n_terms = spec.direct_terms;
    Complex sum{0.0, 0.0};
    Complex dsum{0.0, 0.0};
    for (int n = n_terms - 1; n >= 1; --n) {
        const double log_n = std::log(static_cast<double>(n));
        const Complex term = std::exp(-s * log_n);
        sum += term;
        if (want_derivative) dsum -= log_n * term;
    }

    const double big_n = static_cast<double>(n_terms);
    const double log_big_n = std::log(big_n);
    const Complex n_pow = std::exp(-s * log_big_n);  // N^-s
    const Complex sm1 = s - 1.0;

    sum += big_n * n_pow / sm1 + 0.5 * n_pow;
    if (want_derivative) {
        dsum += big_n * n_pow * (-log_big_n / sm1 - 1.0 / (sm1 * sm1));
        dsum += -0.5 * log_big_n * n_pow;
    }

    // poch = (s)_{2k-1}, dpoch its s-derivative; npow = N^(1-s-2k).
    Complex poch = s;
    Complex dpoch{1.0, 0.0};
    Complex npow = n_pow / big_n;
    double factorial = 2.0;  // (2k)!
    Complex last_term{0.0, 0.0};
    Complex last_dterm{0.0, 0.0};
    for (int k = 1; k <= spec.correction_terms + 1; ++k) {
        const double coef = bernoulli_even[k - 1] / factorial;
        const Complex term = coef * poch * npow;
        const Complex dterm = coef * (dpoch - log_big_n * poch) * npow;
        if (k <= spec.correction_terms) {
            sum += term;
            if (want_derivative) dsum += dterm;
        } else {
            last_term = term;
            last_dterm = dterm;
        }
        for (int j = 0; j < 2; ++j) {
            const Complex factor = s + static_cast<double>(2 * k - 1 + j);
            dpoch = dpoch * factor + poch;
            poch *= factor;
        }
        npow /= big_n * big_n;
        factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }

    // The first omitted correction bounds the truncation error.
    constexpr double tolerance = 1e-10;
    if (std::abs(last_term) > tolerance * std::max(1.0, std::abs(sum)) ||
        (want_derivative && std::abs(last_dterm) > tolerance * std::max(1.0, std::abs(dsum)))) {
        throw AccuracyError("zeta: Euler-Maclaurin spec too small for |Im s| = " +
                            std::to_string(std::abs(s.imag())));
    }
    check_finite(sum, "zeta");
    if (want_derivative) check_finite(dsum, "zeta_prime");
    return {sum, dsum};
}

}  // namespace detail

inline Complex zeta(Complex s, const SeriesSpec& spec) {
    return detail::zeta_euler_maclaurin(s, spec, false).value;
}

inline Complex zeta(Complex s) { return zeta(s, SeriesSpec::for_height(s.imag())); }

inline Complex zeta_prime(Complex s, const SeriesSpec& spec) {
    return detail::zeta_euler_maclaurin(s, spec, true).derivative;
}

inline Complex zeta_prime(Complex s) { return zeta_prime(s, SeriesSpec::for_height(s.imag())); }

// Riemann-Siegel theta from the exact complex log-gamma:
//   vartheta(t) = Im log Gamma(1/4 + it/2) - (t/2) ln pi
inline double riemann_siegel_theta(double t) {
    return log_gamma(Complex{0.25, 0.5 * t}).imag() - 0.5 * t * std::log(pi);
}

// Hardy Z(t) = exp(i vartheta(t)) zeta(1/2 + it), real on the critical line.
inline double hardy_z(double t, const SeriesSpec& spec) {
    if (!(t >= 0.0)) {
        throw DomainError("hardy_z: need t >= 0");
    }
    const Complex rotated = std::exp(I * riemann_siegel_theta(t)) * zeta(Complex{0.5, t}, spec);
    return rotated.real();
}

inline double hardy_z(double t) { return hardy_z(t, SeriesSpec::for_height(t)); }

namespace detail {

struct BesselQuadrature {
    double value;      // int_0^tmax e^{-y cosh t} cos(pt) dt
    double magnitude;  // int_0^tmax e^{-y cosh t} dt, i.e. K_0(y)
};

inline BesselQuadrature bessel_panels(double p, double y, double t_max, int panels) {
    const auto& rule = gauss_legendre_16();
    const double width = t_max / panels;
    double value = 0.0;
    double magnitude = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double mid = (k + 0.5) * width;
        double panel_value = 0.0;
        double panel_magnitude = 0.0;
        for (int j = 0; j < 16; ++j) {
            const double t = mid + 0.5 * width * rule.nodes[j];
            const double damp = std::exp(-y * std::cosh(t));
            panel_value += rule.weights[j] * damp * std::cos(p * t);
            panel_magnitude += rule.weights[j] * damp;
        }
        value += panel_value;
        magnitude += panel_magnitude;
    }
    return {0.5 * width * value, 0.5 * width * magnitude};
}

}  // namespace detail

// K_{ip}(y) = int_0^inf exp(-y cosh t) cos(p t) dt for y > 0, by composite
// 16-point Gauss-Legendre on [0, arccosh(cut / y)]. Even in p.
inline double bessel_k_imag_order(double p, double y, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(y > 0.0)) {
        throw DomainError("bessel_k_imag_order: need y > 0");
    }
    if (!std::isfinite(p)) {
        throw DomainError("bessel_k_imag_order: order must be finite");
    }
    p = std::abs(p);
    if (y >= spec.tail_cut_exponent) {
        return 0.0;  // below exp(-745): underflows in double precision
    }
    const double t_max = std::acosh(spec.tail_cut_exponent / y);
    const double panel_width = std::min(0.5, pi / (4.0 * std::max(p, 1.0)));
    int panels = std::max(1, static_cast<int>(std::ceil(t_max / panel_width)));

    auto coarse = detail::bessel_panels(p, y, t_max, panels);
    while (2 * panels <= spec.max_panels) {
        panels *= 2;
        const auto fine = detail::bessel_panels(p, y, t_max, panels);
        const double diff = std::abs(fine.value - coarse.value);
        const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * fine.magnitude;
        if (diff <= std::max({spec.abs_tol, spec.rel_tol * std::abs(fine.value), roundoff})) {
            return fine.value;
        }
        coarse = fine;
    }
    throw AccuracyError("bessel_k_imag_order: panel budget exhausted");
}

}  // namespace artin
