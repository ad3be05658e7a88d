#ifndef APPINT_BEZOUT_ROOTS_HPP
#define APPINT_BEZOUT_ROOTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "appint/laurent.hpp"

namespace appint {

/// Symbol in factored form: leading * prod (z - z_j)^(k_j).
/// Roots closer than the merge tolerance are combined on construction, so
/// stored roots are pairwise distinct.
class FactoredSymbol {
public:
    struct Root {
        Complex z;
        int multiplicity;
    };

    FactoredSymbol() = default;
    FactoredSymbol(Complex leading, std::vector<Root> roots, int kappa = 0,
                   double merge_tol = 1e-12);

    Complex leading() const { return leading_; }
    const std::vector<Root>& roots() const { return roots_; }
    int kappa() const { return kappa_; }
    int degree() const;

    /// Smallest |z_i + z_j| over all root pairs; zero margin means the
    /// symbol shares a root with its reflection.
    double reflection_separation() const;

    /// Smallest distance between distinct roots (infinity for one root).
    /// Partial-fraction solves lose accuracy when this clusters.
    double min_root_separation() const;

    /// Dense coefficient form, low = 0.
    LaurentPolynomial expand() const;

    /// Removes roots at the origin (the z^s shift factor), recording the
    /// shift in kappa. Errors if the multiplicity at 0 differs from `shift`.
    FactoredSymbol without_zero_roots(int shift) const;

private:
    Complex leading_{1.0, 0.0};
    std::vector<Root> roots_;
    int kappa_ = 0;
};

/// Interpolation data: values[i][j] = f^(j)(eta_i) for j = 0..h_i-1.
struct HermiteData {
    struct Node {
        Complex eta;
        int multiplicity;
    };
    std::vector<Node> nodes;
    std::vector<std::vector<Complex>> values;
};

/// Unique polynomial of degree <= sum(h_i) - 1 matching all prescribed
/// derivative values. Newton form with repeated nodes.
LaurentPolynomial hermite_lagrange(const HermiteData& data);

/// Coefficient table c[i][j] = (1/j!) d^j/dz^j [2 z^(2t-ell) / omega_i(z)]
/// at z = z_i, where omega_i collects every factor of a(z) a(-z) except
/// (z - z_i)^(k_i). Derivatives via logarithmic-derivative recursion on the
/// factored form.
std::vector<std::vector<Complex>> pfd_coefficients(const FactoredSymbol& f, int t, Star star);

enum class RootsBackend { Direct, IncompletePfd };

/// Root-path solution of the cofactor equation for (i, star); degree < n.
LaurentPolynomial solve_roots(const FactoredSymbol& f, int i, Star star,
                              RootsBackend backend = RootsBackend::Direct);

/// Cofactors of 1/(a(z) a(-z)) = h(z)/a(z) + k(z)/a(-z), both of degree < n.
/// k interpolates 1/a(z) on the zeros of a(-z); h is recovered symmetrically.
std::pair<LaurentPolynomial, LaurentPolynomial>
incomplete_pfd_cofactor(const FactoredSymbol& f);

/// Fast-path cofactor update when the symbol gains one linear factor:
/// for g(z) = scale * (z - root) * f(z), returns the k-cofactor of g as
/// k1 + f(-z) * psi with constant psi fixed by the condition at the new
/// node. Returns nullopt when the new root clusters with an existing one
/// (caller falls back to the direct computation).
std::optional<LaurentPolynomial>
extend_cofactor_linear(const FactoredSymbol& f, Complex scale, Complex root);

/// Solves the cofactor equation for the linear-factor extension of f using
/// extend_cofactor_linear; nullopt signals the caller to fall back.
std::optional<LaurentPolynomial>
solve_roots_linear_update(const FactoredSymbol& f, Complex scale, Complex root,
                          int i, Star star);

} // namespace appint

#endif
