#pragma once

// Nontrivial Riemann zeta zeros on the critical line: sign-change scan of the
// Hardy Z function followed by bracketed refinement.

#include <cmath>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "artin/error.hpp"
#include "artin/specfun.hpp"

namespace artin {

// zeta(1/2 + i u) = 0 with u > 0.
struct ZetaZero {
    int index = 0;
    double u = 0.0;
    double residual = 0.0;  // |Z(u)|
    double bracket_width = 0.0;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct ZeroSearchOptions {
    double step = 0.25;  // smallest gap among the first ten zeros is ~2.4
    double tolerance = 1e-8;
    double max_height = 150.0;
};

// Smooth Riemann-von Mangoldt count: floor((T/2pi) ln(T/2pi) - T/2pi + 7/8).
inline int zero_count_estimate(double height) {
    if (height <= 2.0 * pi) return 0;
    const double x = height / (2.0 * pi);
    return static_cast<int>(std::floor(x * std::log(x) - x + 0.875));
}

namespace detail {

inline bool sign_change(double a, double b) { return (a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0); }

}  // namespace detail

// Grid t_min, t_min + step, ... (last point clamped to t_max); one bracket per
// sign change of Z between neighbouring grid points.
inline std::vector<Bracket> scan_brackets(double t_min, double t_max, double step) {
    if (!(t_min >= 0.0) || !(t_max > t_min) || !(step > 0.0)) {
        throw DomainError("scan_brackets: need 0 <= t_min < t_max and step > 0");
    }
    std::vector<Bracket> brackets;
    const auto points = static_cast<long>(std::ceil((t_max - t_min) / step));
    double t_prev = t_min;
    double z_prev = hardy_z(t_prev);
    for (long i = 1; i <= points; ++i) {
        const double t = i == points ? t_max : t_min + static_cast<double>(i) * step;
        const double z = hardy_z(t);
        if (z_prev != 0.0 && detail::sign_change(z_prev, z)) {
            brackets.push_back({t_prev, t});
        }
        t_prev = t;
        z_prev = z;
    }
    return brackets;
}

// Alternating secant and bisection steps, so the bracket at least halves every
// two iterations.
inline ZetaZero refine_zero(Bracket bracket, double tol = 1e-8, int index = 1) {
    if (!(tol > 0.0) || !(bracket.hi > bracket.lo)) {
        throw DomainError("refine_zero: need tol > 0 and lo < hi");
    }
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = hardy_z(a);
    double fb = hardy_z(b);
    if (fa == 0.0) return {index, a, 0.0, 0.0};
    if (fb == 0.0) return {index, b, 0.0, 0.0};
    if (!detail::sign_change(fa, fb)) {
        throw DomainError("refine_zero: no sign change across bracket");
    }

    constexpr int max_iterations = 200;
    for (int iter = 0; iter < max_iterations && b - a > tol; ++iter) {
        double c = 0.5 * (a + b);
        if (iter % 2 == 0) {
            const double secant = b - fb * (b - a) / (fb - fa);
            if (secant > a && secant < b) c = secant;
        }
        const double fc = hardy_z(c);
        if (fc == 0.0) return {index, c, 0.0, 0.0};
        if (detail::sign_change(fa, fc)) {
            b = c;
            fb = fc;
        } else {
            a = c;
            fa = fc;
        }
    }
    if (b - a > tol) {
        throw ConvergenceError("refine_zero: iteration cap reached");
    }
    const bool take_a = std::abs(fa) <= std::abs(fb);
    return {index, take_a ? a : b, take_a ? std::abs(fa) : std::abs(fb), b - a};
}

// The first `count` zeros, found by scanning upward from t = 0. The number of
// sign changes seen is checked against the smooth zero-count estimate.
inline std::vector<ZetaZero> first_n_zeros(int count, const ZeroSearchOptions& options = {}) {
    if (count < 1 || count > 50) {
        throw DomainError("first_n_zeros: need 1 <= N <= 50");
    }
    if (!(options.step > 0.0) || !(options.tolerance > 0.0) || !(options.max_height > 0.0)) {
        throw DomainError("first_n_zeros: invalid search options");
    }

    std::vector<Bracket> brackets;
    double t_prev = 0.0;
    double z_prev = hardy_z(t_prev);
    long i = 0;
    while (static_cast<int>(brackets.size()) < count) {
        ++i;
        const double t = static_cast<double>(i) * options.step;
        if (t > options.max_height) {
            throw BudgetError("first_n_zeros: scan would exceed max height " +
                              std::to_string(options.max_height));
        }
        const double z = hardy_z(t);
        if (z_prev != 0.0 && detail::sign_change(z_prev, z)) {
            brackets.push_back({t_prev, t});
        }
        t_prev = t;
        z_prev = z;
    }

    const int expected = zero_count_estimate(t_prev);
    if (std::abs(expected - count) > 1) {
        throw ConvergenceError("first_n_zeros: found " + std::to_string(count) + " zeros below " +
                               std::to_string(t_prev) + ", count estimate is " +
                               std::to_string(expected));
    }

    std::vector<ZetaZero> zeros;
    zeros.reserve(brackets.size());
    for (std::size_t k = 0; k < brackets.size(); ++k) {
        zeros.push_back(refine_zero(brackets[k], options.tolerance, static_cast<int>(k) + 1));
    }
    return zeros;
}

// In-process cache of zeros computed with default options. Safe to share
// between threads.
class ZeroCache {
public:
    std::vector<ZetaZero> first(int count) {
        std::lock_guard lock(mutex_);
        if (static_cast<int>(zeros_.size()) < count) {
            zeros_ = first_n_zeros(count);
        }
        return {zeros_.begin(), zeros_.begin() + count};
    }

private:
    std::mutex mutex_;
    std::vector<ZetaZero> zeros_;
};

inline ZeroCache& default_zero_cache() {
    static ZeroCache cache;
    return cache;
}

}  // namespace artin
