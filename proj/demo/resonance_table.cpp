// Prints the first ten resonances, exact and one-step approximate, next to the
// published values, plus the width ratios that show the resonances narrowing.

#include <cstdio>

#include "artin/reference_tables.hpp"
#include "artin/scattering.hpp"
#include "artin/zeros.hpp"

int main() {
    try {
        const auto zeros = artin::first_n_zeros(10);
        const auto exact = artin::exact_resonances(zeros);
        const auto approx = artin::approx_resonances(zeros);
        const auto ratios = artin::width_ratios(exact);

        std::printf("%3s %10s %10s %9s %10s %9s %10s %9s\n", "n", "u", "E", "Gamma", "E'", "Gamma'",
                    "ref E'", "ref G'");
        for (std::size_t k = 0; k < exact.size(); ++k) {
            const auto& ref = artin::reference::approx_spectrum[k];
            std::printf("%3d %10.4f %10.4f %9.5f %10.4f %9.5f %10g %9g\n", exact[k].index, exact[k].u,
                        exact[k].energy, exact[k].width, approx[k].energy, approx[k].width,
                        ref.energy.value, ref.width.value);
        }

        std::printf("\n%3s %12s %14s\n", "n", "Gamma/E", "Gamma/spacing");
        for (std::size_t k = 0; k < ratios.size(); ++k) {
            if (ratios[k].to_spacing) {
                std::printf("%3zu %12.5f %14.5f\n", k + 1, ratios[k].to_energy, *ratios[k].to_spacing);
            } else {
                std::printf("%3zu %12.5f %14s\n", k + 1, ratios[k].to_energy, "-");
            }
        }
    } catch (const artin::Error& e) {
        std::fprintf(stderr, "resonance_table: %s\n", e.what());
        return 1;
    }
    return 0;
}
