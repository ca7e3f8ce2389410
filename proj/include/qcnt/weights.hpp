#pragma once

#include <cmath>

namespace qcnt {

/// Even Gaussian weight family on the internal coordinate:
///   f_c(y) = exp(-pi c y^2),  Fourier dual  f_c^(eta) = c^(-1/2) exp(-pi eta^2 / c)
/// (kernel convention e^(-2 pi i x xi), so the pair is closed under duality).
struct WeightSpec {
    double c = 1.0;

    double f(double y) const { return std::exp(-M_PI * c * y * y); }
    double f0() const { return 1.0; }
    double f_dual(double eta) const {
        return std::exp(-M_PI * eta * eta / c) / std::sqrt(c);
    }
    double f_dual0() const { return 1.0 / std::sqrt(c); }

    /// |y| beyond which f_c(y) < 10^-digits.
    double support_radius(double digits = 19.0) const {
        return std::sqrt(digits * std::log(10.0) / (M_PI * c));
    }
    double dual_support_radius(double digits = 19.0) const {
        return std::sqrt((digits * std::log(10.0) + 0.5 * std::abs(std::log(c))) * c / M_PI);
    }
};

}  // namespace qcnt
