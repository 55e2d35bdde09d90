#pragma once

// Test-only reference implementations that share no code path with the
// library: Borwein's accelerated eta series for zeta, and the trapezoidal rule
// on the whole line for K_ip (spectrally accurate for this integrand).

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// zeta(s) = eta(s) / (1 - 2^{1-s}), eta by Borwein's algorithm 2 with n terms.
inline Complex borwein_zeta(Complex s, int n = 80) {
    std::vector<long double> d(n + 1);
    long double term = 1.0L;  // n (n+i-1)! 4^i / ((n-i)! (2i)!), built incrementally
    long double acc = term;
    d[0] = acc;
    for (int i = 1; i <= n; ++i) {
        term *= static_cast<long double>(n + i - 1) * 4.0L * (n - i + 1) /
                (static_cast<long double>(2 * i - 1) * (2 * i));
        acc += term;
        d[i] = acc;
    }
    Complex sum{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double weight = static_cast<double>((d[k] - d[n]) / d[n]);
        sum += sign * weight * std::exp(-s * std::log(static_cast<double>(k + 1)));
    }
    const Complex eta = -sum;
    return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

// K_ip(y) = (1/2) int_R exp(-y cosh t) cos(pt) dt by the trapezoidal rule.
inline double bessel_k_trapezoid(double p, double y, double step = 0.005) {
    double sum = std::exp(-y);
    for (int k = 1;; ++k) {
        const double t = k * step;
        const double damp = std::exp(-y * std::cosh(t));
        if (damp < 1e-300) break;
        sum += 2.0 * damp * std::cos(p * t);
    }
    return 0.5 * step * sum;
}

}  // namespace oracle
