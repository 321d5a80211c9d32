#pragma once

#include <array>
#include <cstddef>

namespace maglev {

/// A signal written as a polynomial in the unknown constant eta,
/// sum_d coeff[d] * eta^d, whose coefficients are measurable signals.
///
/// Linear filters commute with the eta powers, so filtering acts coefficient-wise.
class EtaPoly {
public:
    static constexpr int kMaxDegree = 6;
    using Coeffs = std::array<double, kMaxDegree + 1>;

    EtaPoly() = default;
    /// Constant polynomial.
    explicit EtaPoly(double c0) { c_[0] = c0; }
    /// Polynomial of the given degree from the leading entries of `coeffs`.
    EtaPoly(const Coeffs& coeffs, int degree);

    int degree() const noexcept { return degree_; }
    double operator[](int d) const { return d <= degree_ ? c_[d] : 0.0; }
    double& coeff(int d);
    const Coeffs& coeffs() const noexcept { return c_; }

    double evaluate(double eta) const;

    EtaPoly& operator+=(const EtaPoly& rhs);
    EtaPoly& operator-=(const EtaPoly& rhs);
    EtaPoly& operator*=(double s);

    /// Multiplication by eta^n.
    EtaPoly shifted(int n) const;

private:
    Coeffs c_{};
    int degree_ = 0;
};

/// Coefficient convolution. Throws ConfigError when the degree bound is exceeded.
EtaPoly poly_mul(const EtaPoly& a, const EtaPoly& b);

inline EtaPoly operator+(EtaPoly a, const EtaPoly& b) { return a += b; }
inline EtaPoly operator-(EtaPoly a, const EtaPoly& b) { return a -= b; }
inline EtaPoly operator*(EtaPoly a, double s) { return a *= s; }
inline EtaPoly operator*(double s, EtaPoly a) { return a *= s; }
inline EtaPoly operator*(const EtaPoly& a, const EtaPoly& b) { return poly_mul(a, b); }

}  // namespace maglev
