#include "qcnt/gammafn.hpp"

#include <cmath>

namespace qcnt {

namespace {

constexpr int kG = 7;
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLanczos[kG + 2] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

Complex gamma_complex(Complex z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return kPi / (std::sin(kPi * z) * gamma_complex(1.0 - z));
    }
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < kG + 2; ++i) x += kLanczos[i] / (z + Complex(i, 0));
    Complex t = z + (kG + 0.5);
    return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace qcnt
