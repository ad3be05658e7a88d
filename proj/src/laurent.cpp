#include "appint/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace appint {

LaurentPolynomial::LaurentPolynomial(int low, std::vector<Complex> coeffs, double trim_tol)
    : coeffs_(std::move(coeffs)), low_(low) {
    std::size_t begin = 0, end = coeffs_.size();
    while (begin < end && std::abs(coeffs_[begin]) <= trim_tol) ++begin;
    while (end > begin && std::abs(coeffs_[end - 1]) <= trim_tol) --end;
    if (begin == end) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    low_ += static_cast<int>(begin);
    coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(end), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(begin));
}

LaurentPolynomial::LaurentPolynomial(int low, const std::vector<double>& coeffs, double trim_tol)
    : LaurentPolynomial(low, std::vector<Complex>(coeffs.begin(), coeffs.end()), trim_tol) {}

LaurentPolynomial LaurentPolynomial::monomial(Complex c, int e) {
    return LaurentPolynomial(e, std::vector<Complex>{c});
}

Complex LaurentPolynomial::coeff(int e) const {
    if (is_zero() || e < low_ || e > high()) return Complex{0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(e - low_)];
}

double LaurentPolynomial::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

bool LaurentPolynomial::is_real(double tol) const {
    for (const Complex& c : coeffs_)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

LaurentPolynomial LaurentPolynomial::realified(double tol) const {
    std::vector<Complex> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (std::abs(coeffs_[i].imag()) > tol)
            throw DomainError("realified: imaginary part " + std::to_string(coeffs_[i].imag()) +
                              " exceeds tolerance");
        out[i] = Complex{coeffs_[i].real(), 0.0};
    }
    return LaurentPolynomial(low_, std::move(out));
}

LaurentPolynomial LaurentPolynomial::reflected() const {
    std::vector<Complex> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        int e = low_ + static_cast<int>(i);
        out[i] = (e % 2 == 0) ? coeffs_[i] : -coeffs_[i];
    }
    return LaurentPolynomial(low_, std::move(out));
}

LaurentPolynomial LaurentPolynomial::shifted(int e) const {
    if (is_zero()) return {};
    return LaurentPolynomial(low_ + e, coeffs_);
}

namespace {

Complex ipow(Complex z, int e) {
    if (e == 0) return Complex{1.0, 0.0};
    bool inv = e < 0;
    unsigned long n = inv ? -static_cast<long>(e) : static_cast<long>(e);
    Complex acc{1.0, 0.0};
    Complex base = z;
    while (n > 0) {
        if (n & 1u) acc *= base;
        base *= base;
        n >>= 1u;
    }
    return inv ? Complex{1.0, 0.0} / acc : acc;
}

} // namespace

Complex LaurentPolynomial::evaluate(Complex z, int r) const {
    if (r < 0) throw DomainError("evaluate: negative derivative order");
    if (is_zero()) return Complex{0.0, 0.0};
    if (z == Complex{0.0, 0.0} && low_ < 0)
        throw ZeroArgument("evaluate: z = 0 with negative exponents present");
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        int e = low_ + static_cast<int>(i);
        double ff = 1.0;
        for (int t = 0; t < r; ++t) ff *= static_cast<double>(e - t);
        if (ff == 0.0) continue;
        sum += coeffs_[i] * ff * ipow(z, e - r);
    }
    return sum;
}

LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Complex> out(p.coeffs_.size() + q.coeffs_.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs_.size(); ++j)
            out[i + j] += p.coeffs_[i] * q.coeffs_[j];
    return LaurentPolynomial(p.low_ + q.low_, std::move(out));
}

LaurentPolynomial operator*(Complex c, const LaurentPolynomial& p) {
    std::vector<Complex> out(p.coeffs_.size());
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i) out[i] = c * p.coeffs_[i];
    return LaurentPolynomial(p.low_, std::move(out));
}

LaurentPolynomial operator+(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    int low = std::min(p.low_, q.low_);
    int high = std::max(p.high(), q.high());
    std::vector<Complex> out(static_cast<std::size_t>(high - low + 1), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
        out[static_cast<std::size_t>(p.low_ - low) + i] += p.coeffs_[i];
    for (std::size_t i = 0; i < q.coeffs_.size(); ++i)
        out[static_cast<std::size_t>(q.low_ - low) + i] += q.coeffs_[i];
    return LaurentPolynomial(low, std::move(out));
}

LaurentPolynomial operator-(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    return p + Complex{-1.0, 0.0} * q;
}

SubSymbols sub_symbols(const LaurentPolynomial& p) {
    if (p.is_zero()) return {};
    // Exponent 2t goes to the even part at t, exponent 2t+1 to the odd part
    // at t. All index arithmetic is exact (no rounding), so recombination
    // holds exactly on stored coefficients.
    int lo = p.low(), hi = p.high();
    int even_lo = (lo % 2 == 0) ? lo / 2 : (lo + 1) / 2;
    int even_hi = (hi % 2 == 0) ? hi / 2 : (hi - 1) / 2;
    int odd_lo = (lo % 2 == 0) ? lo / 2 : (lo - 1) / 2;
    int odd_hi = (hi % 2 == 0) ? hi / 2 - 1 : (hi - 1) / 2;
    std::vector<Complex> even(even_hi >= even_lo ? static_cast<std::size_t>(even_hi - even_lo + 1) : 0);
    std::vector<Complex> odd(odd_hi >= odd_lo ? static_cast<std::size_t>(odd_hi - odd_lo + 1) : 0);
    for (int e = lo; e <= hi; ++e) {
        if (e % 2 == 0)
            even[static_cast<std::size_t>(e / 2 - even_lo)] = p.coeff(e);
        else
            odd[static_cast<std::size_t>((e - 1) / 2 - odd_lo)] = p.coeff(e);
    }
    return {LaurentPolynomial(even_lo, std::move(even), 0.0),
            LaurentPolynomial(odd_lo, std::move(odd), 0.0)};
}

InterpolationCheck is_interpolatory(const LaurentPolynomial& p, double tol) {
    if (tol <= 0) throw DomainError("is_interpolatory: tolerance must be positive");
    LaurentPolynomial r = p + p.reflected() - LaurentPolynomial::monomial(Complex{2.0, 0.0}, 0);
    double residual = r.max_abs_coeff();
    return {residual <= tol, residual};
}

std::pair<LaurentPolynomial, int> shift_normalize(const LaurentPolynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial("shift_normalize: zero polynomial");
    return {p.shifted(-p.low()), -p.low()};
}

double bezout_residual(const LaurentPolynomial& a_hat, const LaurentPolynomial& p,
                       int i, Star star) {
    LaurentPolynomial lhs = a_hat * p;
    LaurentPolynomial crossed = a_hat.reflected() * p.reflected();
    lhs = (star == Star::Plus) ? lhs + crossed : lhs - crossed;
    LaurentPolynomial rhs = LaurentPolynomial::monomial(Complex{2.0, 0.0}, 2 * i - ell_exponent(star));
    double num = (lhs - rhs).max_abs_coeff();
    double scale = std::max(1.0, a_hat.max_abs_coeff() * p.max_abs_coeff());
    return num / scale;
}

double max_coeff_distance(const LaurentPolynomial& p, const LaurentPolynomial& q) {
    return (p - q).max_abs_coeff();
}

} // namespace appint
