#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace pathint {

using Complex = std::complex<double>;

/// Complex amplitude tagged with its unit as a half-integer power of length.
/// A 1-D kernel value carries length^(-1/2) (half_length_power = -1), a 2-D
/// kernel carries length^(-1) (= -2), plain numbers carry 0. Multiplication
/// adds the tags; addition requires matching tags.
struct Amplitude {
    Complex value{0.0, 0.0};
    int half_length_power = 0;

    Amplitude() = default;
    Amplitude(Complex v, int hlp = 0) : value(v), half_length_power(hlp) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("Amplitude: non-finite component");
    }

    double abs() const { return std::abs(value); }
    double arg() const { return std::arg(value); }

    friend Amplitude operator*(const Amplitude& a, const Amplitude& b) {
        return {a.value * b.value, a.half_length_power + b.half_length_power};
    }
    friend Amplitude operator*(const Amplitude& a, Complex c) { return {a.value * c, a.half_length_power}; }
    friend Amplitude operator*(Complex c, const Amplitude& a) { return a * c; }
    friend Amplitude operator*(const Amplitude& a, double c) { return {a.value * c, a.half_length_power}; }
    friend Amplitude operator/(const Amplitude& a, const Amplitude& b) {
        return {a.value / b.value, a.half_length_power - b.half_length_power};
    }
    friend Amplitude operator+(const Amplitude& a, const Amplitude& b) {
        if (a.half_length_power != b.half_length_power)
            throw std::invalid_argument("Amplitude: adding mismatched units");
        return {a.value + b.value, a.half_length_power};
    }
    friend Amplitude operator-(const Amplitude& a, const Amplitude& b) {
        if (a.half_length_power != b.half_length_power)
            throw std::invalid_argument("Amplitude: subtracting mismatched units");
        return {a.value - b.value, a.half_length_power};
    }
};

inline double rel_diff(Complex a, Complex b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace pathint
