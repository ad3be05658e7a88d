#ifndef APPINT_LAURENT_HPP
#define APPINT_LAURENT_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "appint/errors.hpp"

namespace appint {

using Complex = std::complex<double>;

/// Sign variant of the cofactor equation
///   a(z) p(z) [star] a(-z) p(-z) = 2 z^(2i - ell),
/// with ell = 2 for Plus and ell = 1 for Minus.
enum class Star { Plus, Minus };

inline int ell_exponent(Star s) { return s == Star::Plus ? 2 : 1; }
inline char star_char(Star s) { return s == Star::Plus ? '+' : '-'; }

/// Laurent polynomial with dense complex coefficients.
///
/// Coefficient i of `coeffs()` multiplies z^(low()+i). Leading and trailing
/// coefficients below the trim threshold are removed on construction, so a
/// nonzero polynomial always has nonzero first and last stored coefficients.
/// The zero polynomial is represented by an empty coefficient list.
/// Values are immutable after construction; all operations are pure.
class LaurentPolynomial {
public:
    static constexpr double kTrimTol = 1e-13;

    LaurentPolynomial() = default;
    LaurentPolynomial(int low, std::vector<Complex> coeffs, double trim_tol = kTrimTol);
    LaurentPolynomial(int low, const std::vector<double>& coeffs, double trim_tol = kTrimTol);

    /// Monomial c * z^e.
    static LaurentPolynomial monomial(Complex c, int e);

    bool is_zero() const { return coeffs_.empty(); }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    /// Number of stored coefficients (0 for the zero polynomial).
    std::size_t size() const { return coeffs_.size(); }
    /// Degree of z^(-low) * p(z); -1 for the zero polynomial.
    int degree() const { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    /// Coefficient of z^e, zero outside the stored range.
    Complex coeff(int e) const;

    double max_abs_coeff() const;
    bool is_real(double tol = 1e-12) const;

    /// Drops imaginary parts below tol; errors if any exceeds it.
    LaurentPolynomial realified(double tol = 1e-12) const;

    /// p(-z).
    LaurentPolynomial reflected() const;
    /// z^e * p(z).
    LaurentPolynomial shifted(int e) const;

    /// r-th derivative evaluated at z (r = 0 gives the value), term by term
    /// with falling-factorial weights. z must be nonzero when low() < 0.
    Complex evaluate(Complex z, int r = 0) const;

    friend LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q);
    friend LaurentPolynomial operator*(Complex c, const LaurentPolynomial& p);
    friend LaurentPolynomial operator+(const LaurentPolynomial& p, const LaurentPolynomial& q);
    friend LaurentPolynomial operator-(const LaurentPolynomial& p, const LaurentPolynomial& q);

private:
    std::vector<Complex> coeffs_;
    int low_ = 0;
};

/// Even/odd coefficient split with a_even(z^2) + z * a_odd(z^2) = a(z).
struct SubSymbols {
    LaurentPolynomial even;
    LaurentPolynomial odd;
};
SubSymbols sub_symbols(const LaurentPolynomial& p);

struct InterpolationCheck {
    bool interpolatory;
    double residual;  // max coefficient magnitude of p(z) + p(-z) - 2
};
InterpolationCheck is_interpolatory(const LaurentPolynomial& p, double tol = 1e-9);

/// Shifts the lowest exponent to zero: returns (z^kappa * p(z), kappa).
std::pair<LaurentPolynomial, int> shift_normalize(const LaurentPolynomial& p);

/// Smallest over largest singular value of the resultant matrix of
/// (a_hat(z), a_hat(-z)). Near zero when the pair shares a root.
/// Requires low() == 0 and degree >= 1. Implemented in bezout_matrix.cpp.
double coprime_margin(const LaurentPolynomial& a_hat);

/// Relative residual of a(z)p(z) [star] a(-z)p(-z) - 2 z^(2i-ell), normalized
/// by max(1, |a|_inf * |p|_inf).
double bezout_residual(const LaurentPolynomial& a_hat, const LaurentPolynomial& p,
                       int i, Star star);

double max_coeff_distance(const LaurentPolynomial& p, const LaurentPolynomial& q);

} // namespace appint

#endif
