#ifndef APPINT_APPINT_HPP
#define APPINT_APPINT_HPP

#include <string>
#include <vector>

#include "appint/laurent.hpp"
#include "appint/spectra.hpp"

namespace appint {

/// Which member of the cofactor family to construct at a level.
struct InterpolatorySelection {
    int i;
    Star star;
};

/// Centered choice: i = ceil(n/2) with the star picked by parity so the
/// divisor exponent 2i - ell lands at n - 1 (symmetric smallest support).
InterpolatorySelection default_selection(int n);

enum class SolverChoice { Matrix, Roots, Both };

std::string solver_name(SolverChoice s);

/// Per-level conversion record.
struct LevelRecord {
    int k = 0;
    LaurentPolynomial a_hat;  // shift-normalized approximating symbol
    int kappa = 0;            // shift applied during normalization
    double margin = 0.0;      // coprimality margin of (a_hat(z), a_hat(-z))
    InterpolatorySelection selection{1, Star::Minus};
    std::string solver;
    LaurentPolynomial cofactor;       // p solving the cofactor equation
    double equation_residual = 0.0;   // relative residual of that equation
    LaurentPolynomial m;              // interpolatory symbol
    double interpolation_residual = 0.0;
};

struct InterpolatorySequence {
    std::vector<LevelRecord> levels;
    std::vector<LaurentPolynomial> symbols() const;
};

/// Aborting failure: the level-k symbol shares a root with its reflection.
/// Carries the levels completed before the failure.
struct CoprimalityFailure : Error {
    CoprimalityFailure(int level, double margin, InterpolatorySequence partial);
    int level;
    double margin;
    InterpolatorySequence partial;
};

/// m = a_hat(z) p(z) / z^(2i - ell), which satisfies m(z) + m(-z) = 2 as
/// well as m(1) = 2, m(-1) = 0 whenever p solves the cofactor equation for
/// the given selection (checked; ResidualTooLarge otherwise).
LaurentPolynomial construct_interpolatory(const LaurentPolynomial& a_hat,
                                          const LaurentPolynomial& p,
                                          const InterpolatorySelection& sel,
                                          double tol = 1e-9);

/// Level-by-level conversion driver. `selections` may be empty (centered
/// default per level), hold one entry (broadcast), or one entry per level.
/// In Both mode the matrix and root solutions are cross-checked to 1e-9.
InterpolatorySequence run_appint(const SymbolProgram& program,
                                 const std::vector<InterpolatorySelection>& selections,
                                 int levels, SolverChoice solver,
                                 double coprime_threshold = 1e-8);

} // namespace appint

#endif
