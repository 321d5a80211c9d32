#include "maglev/eta_poly.hpp"

#include <algorithm>
#include <string>

#include "maglev/errors.hpp"

namespace maglev {

namespace {

void check_degree(int degree) {
    if (degree < 0 || degree > EtaPoly::kMaxDegree) {
        throw ConfigError("eta polynomial degree " + std::to_string(degree) +
                          " exceeds bound " + std::to_string(EtaPoly::kMaxDegree));
    }
}

}  // namespace

EtaPoly::EtaPoly(const Coeffs& coeffs, int degree) : degree_(degree) {
    check_degree(degree);
    std::copy_n(coeffs.begin(), degree + 1, c_.begin());
}

double& EtaPoly::coeff(int d) {
    check_degree(d);
    degree_ = std::max(degree_, d);
    return c_[d];
}

double EtaPoly::evaluate(double eta) const {
    double acc = 0.0;
    for (int d = degree_; d >= 0; --d) acc = acc * eta + c_[d];
    return acc;
}

EtaPoly& EtaPoly::operator+=(const EtaPoly& rhs) {
    degree_ = std::max(degree_, rhs.degree_);
    for (int d = 0; d <= rhs.degree_; ++d) c_[d] += rhs.c_[d];
    return *this;
}

EtaPoly& EtaPoly::operator-=(const EtaPoly& rhs) {
    degree_ = std::max(degree_, rhs.degree_);
    for (int d = 0; d <= rhs.degree_; ++d) c_[d] -= rhs.c_[d];
    return *this;
}

EtaPoly& EtaPoly::operator*=(double s) {
    for (int d = 0; d <= degree_; ++d) c_[d] *= s;
    return *this;
}

EtaPoly EtaPoly::shifted(int n) const {
    check_degree(degree_ + n);
    EtaPoly out;
    out.degree_ = degree_ + n;
    for (int d = 0; d <= degree_; ++d) out.c_[d + n] = c_[d];
    return out;
}

EtaPoly poly_mul(const EtaPoly& a, const EtaPoly& b) {
    const int degree = a.degree() + b.degree();
    check_degree(degree);
    EtaPoly::Coeffs out{};
    for (int i = 0; i <= a.degree(); ++i) {
        for (int j = 0; j <= b.degree(); ++j) out[i + j] += a[i] * b[j];
    }
    return EtaPoly(out, degree);
}

}  // namespace maglev
