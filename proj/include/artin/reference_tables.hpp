#pragma once

// Published resonance tables for the first ten zeta zeros, with decimal commas
// normalized to points. Each entry keeps its number of printed decimals so a
// comparison can allow one unit in the last printed digit.

#include <array>
#include <cmath>

namespace artin::reference {

struct Printed {
    double value;
    int decimals;

    double last_digit_unit() const { return std::pow(10.0, -decimals); }
};

struct ExactRow {
    Printed u;
    Printed energy;
    Printed width;
};

struct ApproxRow {
    Printed energy;
    Printed width;
};

// u_n, E_n = u_n^2/4 + 3/16, Gamma_n = u_n/4.
inline constexpr std::array<ExactRow, 10> exact_spectrum = {{
    {{14.1347, 4}, {50.1351, 4}, {3.53368, 5}},
    {{21.0220, 4}, {110.669, 3}, {5.25551, 5}},
    {{25.0109, 4}, {156.573, 3}, {6.25271, 5}},
    {{30.4249, 4}, {231.606, 3}, {7.60622, 5}},
    {{32.9351, 4}, {271.367, 3}, {8.23377, 5}},
    {{37.5862, 4}, {353.368, 3}, {9.39654, 5}},
    {{40.9187, 4}, {418.773, 3}, {10.2297, 4}},
    {{43.3271, 4}, {469.496, 3}, {10.8318, 4}},
    {{48.0052, 4}, {576.311, 3}, {12.0013, 4}},
    {{49.7738, 4}, {619.546, 3}, {12.4435, 4}},
}};

// One-step linearization of theta at the bump energies.
inline constexpr std::array<ApproxRow, 10> approx_spectrum = {{
    {{51.2732, 4}, {3.05908, 5}},
    {{112.487, 3}, {4.32077, 5}},
    {{158.363, 3}, {5.42025, 5}},
    {{234.382, 3}, {5.79733, 5}},
    {{273.225, 3}, {7.20321, 5}},
    {{356.546, 3}, {7.5043, 4}},
    {{422.097, 3}, {7.99925, 5}},
    {{471.764, 3}, {9.44046, 5}},
    {{580.782, 3}, {8.29622, 5}},
    {{621.9, 1}, {10.4703, 4}},
}};

}  // namespace artin::reference
