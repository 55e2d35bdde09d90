#pragma once

// Self-checks grouped by module. Each check reduces to one measured number and
// an admissible interval; `verify` on the command line runs every suite.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "artin/error.hpp"
#include "artin/maass.hpp"
#include "artin/reference_tables.hpp"
#include "artin/scattering.hpp"
#include "artin/specfun.hpp"
#include "artin/zeros.hpp"

namespace artin::verify {

struct Check {
    std::string suite;
    std::string name;
    double value = 0.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool passed = false;
    std::string detail;  // set when the check itself threw
};

// Runs `measure` and tests lo <= value <= hi; a thrown artin::Error fails the check.
inline Check measure(std::string suite, std::string name, double lo, double hi,
                     const std::function<double()>& measure_fn) {
    Check check{std::move(suite), std::move(name), 0.0, lo, hi, false, {}};
    try {
        check.value = measure_fn();
        check.passed = std::isfinite(check.value) && check.value >= lo && check.value <= hi;
    } catch (const Error& error) {
        check.value = std::numeric_limits<double>::quiet_NaN();
        check.detail = error.what();
    }
    return check;
}

inline Check at_most(std::string suite, std::string name, double limit,
                     const std::function<double()>& measure_fn) {
    return measure(std::move(suite), std::move(name), -std::numeric_limits<double>::infinity(),
                   limit, measure_fn);
}

inline std::string format(const Check& check) {
    char buffer[256];
    if (std::isfinite(check.lo)) {
        std::snprintf(buffer, sizeof buffer, "%s %s/%s: %.6g in [%.6g, %.6g]",
                      check.passed ? "PASS" : "FAIL", check.suite.c_str(), check.name.c_str(),
                      check.value, check.lo, check.hi);
    } else {
        std::snprintf(buffer, sizeof buffer, "%s %s/%s: %.6g <= %.6g", check.passed ? "PASS" : "FAIL",
                      check.suite.c_str(), check.name.c_str(), check.value, check.hi);
    }
    std::string line = buffer;
    if (!check.detail.empty()) line += " (" + check.detail + ")";
    return line;
}

namespace detail {

inline double rel_err(Complex a, Complex b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Off-pole sample grid for the Gamma identities.
inline std::vector<Complex> gamma_grid() {
    std::vector<Complex> out;
    for (double re : {-0.9, -0.4, 0.1, 0.35, 0.6, 1.1, 1.6}) {
        for (double im : {-8.0, -3.0, 0.5, 2.0, 7.0}) out.emplace_back(re, im);
    }
    return out;
}

inline std::vector<ZetaZero> first_ten_zeros() { return default_zero_cache().first(10); }

}  // namespace detail

// ---- specfun -----------------------------------------------------------------

inline Check zeta_functional_equation() {
    return at_most("specfun", "zeta_functional_equation", 1e-8, [] {
        double worst = 0.0;
        for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            for (double t : {-40.0, -12.5, 1.0, 6.0, 25.0, 50.0}) {
                const Complex s{sigma, t};
                const Complex rhs = std::pow(Complex{2.0, 0.0}, s) *
                                    std::pow(Complex{pi, 0.0}, s - 1.0) * std::sin(0.5 * pi * s) *
                                    gamma(1.0 - s) * zeta(1.0 - s);
                worst = std::max(worst, detail::rel_err(zeta(s), rhs));
            }
        }
        return worst;
    });
}

inline Check gamma_reflection() {
    return at_most("specfun", "gamma_reflection", 1e-9, [] {
        double worst = 0.0;
        for (Complex s : detail::gamma_grid()) {
            worst = std::max(worst, std::abs(gamma(s) * gamma(1.0 - s) * std::sin(pi * s) / pi - 1.0));
        }
        return worst;
    });
}

inline Check gamma_recurrence() {
    return at_most("specfun", "gamma_recurrence", 1e-10, [] {
        double worst = 0.0;
        for (Complex s : detail::gamma_grid()) {
            worst = std::max(worst, detail::rel_err(gamma(s + 1.0), s * gamma(s)));
        }
        return worst;
    });
}

inline Check conjugation_symmetry() {
    return at_most("specfun", "conjugation", 1e-10, [] {
        double worst = 0.0;
        for (double re : {-0.5, 0.25, 0.5, 1.2, 2.0}) {
            for (double im : {-55.0, -14.0, 3.0, 21.0, 60.0}) {
                const Complex s{re, im};
                worst = std::max(worst, std::abs(zeta(std::conj(s)) - std::conj(zeta(s))));
                worst = std::max(worst, std::abs(log_gamma(std::conj(s)) - std::conj(log_gamma(s))));
            }
        }
        return worst;
    });
}

inline Check zeta_prime_finite_difference() {
    return at_most("specfun", "zeta_prime_vs_difference", 1e-7, [] {
        double worst = 0.0;
        const double h = 1e-6;
        for (Complex s : {Complex{2.0, 0.0}, Complex{0.5, 21.0220}, Complex{0.8, -7.0}, Complex{1.5, 40.0}}) {
            const Complex difference = (zeta(s + h) - zeta(s - h)) / (2.0 * h);
            worst = std::max(worst, detail::rel_err(zeta_prime(s), difference));
        }
        return worst;
    });
}

inline Check theta_symmetry() {
    return at_most("specfun", "theta_symmetry", 1e-9, [] {
        double worst = 0.0;
        for (double re : {-0.3, 0.0, 0.2, 0.45, 0.8}) {
            for (double im : {-30.0, -10.0, -1.0, 3.0, 17.0, 29.0}) {
                const Complex s{re, im};
                worst = std::max(worst, detail::rel_err(theta(s), theta(0.5 - s)));
            }
        }
        return worst;
    });
}

// Residual of y^2 K'' + y K' - (y^2 - p^2) K by Richardson-extrapolated central
// differences, relative to (y^2 + p^2)|K| plus the roundoff floor of the
// second difference. Values <= 1 pass.
inline Check bessel_equation() {
    return at_most("specfun", "bessel_ode_residual", 1.0, [] {
        double worst = 0.0;
        const double h = 1e-3;
        for (double p : {0.0, 3.0, 7.06735, 12.0}) {
            for (double y : {0.8, 2.5, 9.0, 20.0}) {
                auto k = [&](double yy) { return bessel_k_imag_order(p, yy); };
                const double k0 = k(y);
                auto residual = [&](double step) {
                    const double d1 = (k(y + step) - k(y - step)) / (2.0 * step);
                    const double d2 = (k(y + step) - 2.0 * k0 + k(y - step)) / (step * step);
                    return y * y * d2 + y * d1 - (y * y - p * p) * k0;
                };
                const double extrapolated = (4.0 * residual(h) - residual(2.0 * h)) / 3.0;
                const double scale = 1e-6 * std::max(y * y + p * p, 1.0) * std::abs(k0) +
                                     16.0 * std::numeric_limits<double>::epsilon() *
                                         bessel_k_imag_order(0.0, y) * y * y / (h * h);
                worst = std::max(worst, std::abs(extrapolated) / scale);
            }
        }
        return worst;
    });
}

inline Check zeta_near_first_zero() {
    return at_most("specfun", "zeta_at_tabulated_first_zero", 1e-4,
                   [] { return std::abs(zeta({0.5, reference::exact_spectrum[0].u.value})); });
}

inline std::vector<Check> identity_suite() {
    return {zeta_functional_equation(), gamma_reflection(), gamma_recurrence(),
            theta_symmetry(), bessel_equation()};
}

inline std::vector<Check> specfun_suite() {
    auto checks = identity_suite();
    checks.push_back(conjugation_symmetry());
    checks.push_back(zeta_prime_finite_difference());
    checks.push_back(zeta_near_first_zero());
    return checks;
}

// ---- zeros -------------------------------------------------------------------

inline Check tabulated_ordinates() {
    return at_most("zeros", "first_ten_vs_table", 5e-4, [] {
        const auto zeros = first_n_zeros(10);
        double worst = 0.0;
        for (std::size_t k = 0; k < zeros.size(); ++k) {
            worst = std::max(worst, std::abs(zeros[k].u - reference::exact_spectrum[k].u.value));
        }
        return worst;
    });
}

inline Check zero_count() {
    return at_most("zeros", "count_vs_riemann_von_mangoldt", 1.0, [] {
        double worst = 0.0;
        for (double height : {30.0, 50.0, 100.0}) {
            const auto found = static_cast<double>(scan_brackets(0.0, height, 0.25).size());
            worst = std::max(worst, std::abs(found - zero_count_estimate(height)));
        }
        return worst;
    });
}

inline std::vector<Check> zeros_suite() { return {tabulated_ordinates(), zero_count()}; }

// ---- scattering --------------------------------------------------------------

inline Check unitarity() {
    return at_most("scattering", "unitarity", 1e-9, [] {
        // 200 momenta in (0.1, 60) from a fixed low-discrepancy sequence.
        double worst = 0.0;
        const double golden = 0.6180339887498949;
        for (int i = 1; i <= 200; ++i) {
            const double frac = std::fmod(0.5 + i * golden, 1.0);
            const double p = 0.1 + 59.9 * frac;
            worst = std::max(worst, std::abs(std::abs(s_matrix(p)) - 1.0));
        }
        return worst;
    });
}

inline Check pole_placement() {
    return at_most("scattering", "theta_at_second_sheet_poles", 1e-4, [] {
        double worst = 0.0;
        for (const auto& zero : detail::first_ten_zeros()) {
            const Complex p{0.5 * zero.u, -0.25};
            worst = std::max(worst, std::abs(theta(0.5 - I * p)));
        }
        return worst;
    });
}

// max |computed - printed| in units of the last printed digit.
inline Check exact_table() {
    return at_most("scattering", "exact_table_last_digit", 1.0, [] {
        const auto res = exact_resonances(detail::first_ten_zeros());
        double worst = 0.0;
        for (std::size_t k = 0; k < res.size(); ++k) {
            const auto& row = reference::exact_spectrum[k];
            worst = std::max(worst, std::abs(res[k].energy - row.energy.value) / row.energy.last_digit_unit());
            worst = std::max(worst, std::abs(res[k].width - row.width.value) / row.width.last_digit_unit());
        }
        return worst;
    });
}

inline Check approx_table() {
    return at_most("scattering", "approx_table_relative", 1e-3, [] {
        const auto res = approx_resonances(detail::first_ten_zeros());
        double worst = 0.0;
        for (std::size_t k = 0; k < res.size(); ++k) {
            const auto& row = reference::approx_spectrum[k];
            worst = std::max(worst, std::abs(res[k].energy / row.energy.value - 1.0));
            worst = std::max(worst, std::abs(res[k].width / row.width.value - 1.0));
        }
        return worst;
    });
}

inline Check approx_energy_deviation() {
    return at_most("scattering", "approx_vs_exact_energy", 0.03, [] {
        const auto exact = exact_resonances(detail::first_ten_zeros());
        const auto approx = approx_resonances(detail::first_ten_zeros());
        double worst = 0.0;
        for (std::size_t k = 0; k < exact.size(); ++k) {
            worst = std::max(worst, std::abs(approx[k].energy - exact[k].energy) / exact[k].energy);
        }
        return worst;
    });
}

// Rise of the unwrapped phase over E' +- 3 G' for each resonance, in units of pi.
inline std::vector<double> phase_rises() {
    std::vector<double> rises;
    for (const auto& r : approx_resonances(detail::first_ten_zeros())) {
        const auto scan = phase_scan(r.energy - 3.0 * r.width, r.energy + 3.0 * r.width, 200);
        rises.push_back((scan.back().delta - scan.front().delta) / pi);
    }
    return rises;
}

inline std::vector<Check> phase_rise_checks() {
    std::vector<double> rises;
    std::string failure;
    try {
        rises = phase_rises();
    } catch (const Error& error) {
        failure = error.what();
    }
    auto bound = [&](const char* name, bool lowest) {
        return measure("scattering", name, 0.7, 1.3, [&] {
            if (!failure.empty()) throw Error(failure);
            return lowest ? *std::min_element(rises.begin(), rises.end())
                          : *std::max_element(rises.begin(), rises.end());
        });
    };
    return {bound("phase_rise_min_over_pi", true), bound("phase_rise_max_over_pi", false)};
}

inline std::vector<Check> scattering_suite() {
    std::vector<Check> checks{unitarity(), pole_placement(), exact_table(), approx_table(),
                              approx_energy_deviation()};
    for (auto& c : phase_rise_checks()) checks.push_back(std::move(c));
    return checks;
}

// ---- maass -------------------------------------------------------------------

inline constexpr double invariance_momenta[3] = {7.0673625708673465, 10.511019819385777, 5.0};

inline Check modular_invariance_grid() {
    return at_most("maass", "modular_invariance_25x3", 1e-6, [] {
        double worst = 0.0;
        for (double p : invariance_momenta) {
            const EisensteinWave wave(p);
            for (double x : {-0.45, -0.2, 0.0, 0.15, 0.4}) {
                for (double yt : {-0.1, 0.05, 0.3, 0.9, 1.8}) {
                    worst = std::max(worst, modular_invariance_residual(wave, {x, yt}));
                }
            }
        }
        return worst;
    });
}

// Ratios r(2h)/r(h) of the Laplacian residual for h = 2e-3 at five points.
inline std::vector<double> pde_ratios() {
    const EisensteinWave wave(7.06735);
    std::vector<double> ratios;
    for (auto [x, y] : {std::pair{0.1, 1.2}, {0.3, 0.95}, {-0.2, 1.7}, {0.45, 1.05}, {0.0, 2.4}}) {
        const auto z = HalfPlanePoint::from_xy(x, y);
        ratios.push_back(pde_residual(wave, z, 4e-3) / pde_residual(wave, z, 2e-3));
    }
    return ratios;
}

inline std::vector<Check> pde_checks() {
    std::vector<double> ratios;
    std::string failure;
    try {
        ratios = pde_ratios();
    } catch (const Error& error) {
        failure = error.what();
    }
    auto bound = [&](const char* name, bool lowest) {
        return measure("maass", name, 3.5, 4.5, [&] {
            if (!failure.empty()) throw Error(failure);
            return lowest ? *std::min_element(ratios.begin(), ratios.end())
                          : *std::max_element(ratios.begin(), ratios.end());
        });
    };
    return {bound("pde_halving_ratio_min", true), bound("pde_halving_ratio_max", false)};
}

inline Check tau_multiplicativity() {
    return at_most("maass", "tau_multiplicative", 1e-10, [] {
        double worst = 0.0;
        for (int m = 1; m <= 100; m += 3) {
            for (int n = 1; n <= 100; n += 7) {
                if (std::gcd(m, n) != 1) continue;
                const double p = 0.37 * m + 0.11 * n;
                worst = std::max(worst, std::abs(tau(p, m) * tau(p, n) - tau(p, m * n)));
            }
        }
        return worst;
    });
}

// Composite Simpson over {|x| <= 1/2, sqrt(1 - x^2) <= y <= e} of dx dy / y^2.
inline double area_by_quadrature(double y_tilde_0, int n = 400) {
    const double y0 = std::exp(y_tilde_0);
    auto weight = [&](int i) { return (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    const double hx = 1.0 / n;
    double outer = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = -0.5 + i * hx;
        const double lo = std::sqrt(1.0 - x * x);
        const double hy = (y0 - lo) / n;
        double inner = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double y = lo + j * hy;
            inner += weight(j) / (y * y);
        }
        outer += weight(i) * inner * hy / 3.0;
    }
    return outer * hx / 3.0;
}

inline std::vector<Check> geometry_checks() {
    return {
        at_most("maass", "area_vs_quadrature", 1e-6,
                [] { return std::abs(area_by_quadrature(1.0) - area_below(1.0)); }),
        at_most("maass", "area_limit_pi_over_3", 0.0,
                [] { return std::abs(area_below(std::numeric_limits<double>::infinity()) - pi / 3.0); }),
    };
}

inline std::vector<Check> maass_suite() {
    std::vector<Check> checks{modular_invariance_grid()};
    for (auto& c : pde_checks()) checks.push_back(std::move(c));
    checks.push_back(tau_multiplicativity());
    for (auto& c : geometry_checks()) checks.push_back(std::move(c));
    return checks;
}

inline std::vector<Check> run_all() {
    std::vector<Check> all;
    for (auto suite : {specfun_suite, zeros_suite, scattering_suite, maass_suite}) {
        for (auto& c : suite()) all.push_back(std::move(c));
    }
    return all;
}

}  // namespace artin::verify
