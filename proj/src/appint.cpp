#include "appint/appint.hpp"

#include <cmath>

#include "appint/bezout_matrix.hpp"
#include "appint/bezout_roots.hpp"

namespace appint {

InterpolatorySelection default_selection(int n) {
    if (n % 2 == 0) return {n / 2, Star::Minus};
    return {(n + 1) / 2, Star::Plus};
}

std::string solver_name(SolverChoice s) {
    switch (s) {
        case SolverChoice::Matrix: return "matrix";
        case SolverChoice::Roots: return "roots";
        case SolverChoice::Both: return "both";
    }
    return "?";
}

std::vector<LaurentPolynomial> InterpolatorySequence::symbols() const {
    std::vector<LaurentPolynomial> out;
    out.reserve(levels.size());
    for (const LevelRecord& r : levels) out.push_back(r.m);
    return out;
}

CoprimalityFailure::CoprimalityFailure(int level, double margin, InterpolatorySequence partial)
    : Error("coprimality failure at level " + std::to_string(level) +
            " (margin " + std::to_string(margin) + ")"),
      level(level), margin(margin), partial(std::move(partial)) {}

LaurentPolynomial construct_interpolatory(const LaurentPolynomial& a_hat,
                                          const LaurentPolynomial& p,
                                          const InterpolatorySelection& sel,
                                          double tol) {
    double residual = bezout_residual(a_hat, p, sel.i, sel.star);
    if (residual > tol)
        throw ResidualTooLarge("construct_interpolatory: cofactor residual " +
                               std::to_string(residual) + " exceeds tolerance");
    return (a_hat * p).shifted(-(2 * sel.i - ell_exponent(sel.star)));
}

namespace {

LaurentPolynomial realify_if_close(const LaurentPolynomial& p, double tol = 1e-10) {
    return p.is_real(tol) ? p.realified(tol) : p;
}

} // namespace

InterpolatorySequence run_appint(const SymbolProgram& program,
                                 const std::vector<InterpolatorySelection>& selections,
                                 int levels, SolverChoice solver,
                                 double coprime_threshold) {
    if (levels < 1) throw DomainError("run_appint: need at least one level");
    if (levels > program.max_levels())
        throw ValidationError("run_appint: program supplies only " +
                              std::to_string(program.max_levels()) + " levels");
    if (selections.size() > 1 && selections.size() < static_cast<std::size_t>(levels))
        throw ValidationError("run_appint: selection list shorter than the level count");

    InterpolatorySequence seq;
    for (int k = 0; k < levels; ++k) {
        SymbolProgram::LevelSymbol ls = program.level_symbol(k);
        if (ls.dense.is_zero()) throw ZeroPolynomial("run_appint: zero symbol at level " + std::to_string(k));

        LevelRecord rec;
        rec.k = k;
        int low = ls.dense.low();
        auto [a_norm, kappa] = shift_normalize(ls.dense);
        rec.a_hat = realify_if_close(a_norm);
        rec.kappa = kappa;

        std::optional<FactoredSymbol> factored = ls.factored;
        if (factored) {
            if (low > 0)
                factored = factored->without_zero_roots(low);
            else if (low < 0)
                factored.reset();
        }

        rec.margin = coprime_margin(rec.a_hat);
        if (rec.margin < coprime_threshold)
            throw CoprimalityFailure(k, rec.margin, std::move(seq));

        int n = rec.a_hat.degree();
        if (n < 1) throw DegreeZero("run_appint: degree-zero symbol at level " + std::to_string(k));
        InterpolatorySelection sel =
            selections.empty() ? default_selection(n)
                               : (selections.size() == 1 ? selections[0]
                                                         : selections[static_cast<std::size_t>(k)]);
        if (sel.i < 1 || sel.i > n)
            throw SelectionOutOfRange("run_appint: selection i = " + std::to_string(sel.i) +
                                          " outside 1.." + std::to_string(n) + " at level " +
                                          std::to_string(k),
                                      k);
        rec.selection = sel;

        if (solver == SolverChoice::Roots && !factored)
            throw ValidationError("run_appint: roots solver requires a factored symbol (level " +
                                  std::to_string(k) + ")");
        // Partial-fraction solves degenerate once roots cluster (deep levels
        // drive every root toward -1), so the cross-check only runs where
        // the root path is trustworthy; the matrix path has no such limit.
        bool roots_reliable = factored && factored->min_root_separation() >= 0.2;
        bool want_matrix = solver != SolverChoice::Roots;
        bool cross_check = solver == SolverChoice::Both && roots_reliable;

        LaurentPolynomial p_matrix, p_roots;
        if (want_matrix) {
            ResultantSystem sys = build_resultant(rec.a_hat, sel.star);
            reduce_half(sys);
            p_matrix = solve_matrix(sys, sel.i, sel.star);
        }
        if (solver == SolverChoice::Roots || cross_check)
            p_roots = solve_roots(*factored, sel.i, sel.star);

        if (cross_check) {
            double diff = max_coeff_distance(p_matrix, p_roots);
            if (diff > 1e-9)
                throw SolverDisagreement("run_appint: matrix and root solutions differ by " +
                                             std::to_string(diff) + " at level " + std::to_string(k),
                                         k);
            rec.solver = "both";
        } else if (want_matrix) {
            rec.solver = "matrix";
        } else {
            rec.solver = "roots";
        }
        rec.cofactor = realify_if_close(want_matrix ? p_matrix : p_roots);

        rec.equation_residual = bezout_residual(rec.a_hat, rec.cofactor, sel.i, sel.star);
        rec.m = realify_if_close(construct_interpolatory(rec.a_hat, rec.cofactor, sel));
        rec.interpolation_residual = is_interpolatory(rec.m).residual;
        seq.levels.push_back(std::move(rec));
    }
    return seq;
}

} // namespace appint
