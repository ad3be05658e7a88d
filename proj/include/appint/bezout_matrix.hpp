#ifndef APPINT_BEZOUT_MATRIX_HPP
#define APPINT_BEZOUT_MATRIX_HPP

#include <memory>

#include <Eigen/Dense>

#include "appint/laurent.hpp"

namespace appint {

/// Matrix-path solver state for the cofactor equation. Holds the full
/// resultant systems R^+/R^- of (a_hat(z), a_hat(-z)) and their half-size
/// reductions H^+/H^-. Immutable after reduce_half; solves are pure.
struct ResultantSystem {
    LaurentPolynomial a_hat;  // low = 0, degree n
    int n = 0;                // m + 1 = n throughout
    Star requested = Star::Minus;

    Eigen::MatrixXcd r_plus;   // [R_+ |  R_-], 2n x 2n
    Eigen::MatrixXcd r_minus;  // [R_+ | -R_-], 2n x 2n
    Eigen::MatrixXcd h_plus;   // n x n stencil, row r: a_hat[2r - c]
    Eigen::MatrixXcd h_minus;  // n x n stencil, row r: a_hat[2r + 1 - c]

    // One pivoted factorization per sign, shared across all column solves.
    mutable std::shared_ptr<Eigen::FullPivLU<Eigen::MatrixXcd>> lu_plus;
    mutable std::shared_ptr<Eigen::FullPivLU<Eigen::MatrixXcd>> lu_minus;
};

/// Builds R^+/R^- from the down-shifted extended coefficient vectors of
/// a_hat(z) and a_hat(-z). Requires low = 0 and degree n >= 1.
ResultantSystem build_resultant(const LaurentPolynomial& a_hat, Star star);

/// Fills H^+/H^- directly from their coefficient stencils.
void reduce_half(ResultantSystem& sys);

/// Max deviation of the perfect-shuffle block reductions
///   P R^- G^{-1} = H^- (+) H    and    P R^+ G^{-1} = H~ (anti+) H^+
/// from the assembled stencils, checking the zero blocks as well.
double verify_shuffle_reduction(const ResultantSystem& sys);

/// Solution of a_hat(z) p(z) [star] a_hat(-z) p(-z) = 2 z^(2i-ell) with
/// degree < n: the i-th column of (H^star)^{-1}, coefficients ascending.
LaurentPolynomial solve_matrix(const ResultantSystem& sys, int i, Star star);

/// Resultant matrix of (a_hat(z), a_hat(-z)) used for the coprimality margin.
Eigen::MatrixXcd resultant_matrix(const LaurentPolynomial& a_hat, Star star);

} // namespace appint

#endif
