#ifndef APPINT_SUBDIVISION_HPP
#define APPINT_SUBDIVISION_HPP

#include <vector>

#include "appint/appint.hpp"
#include "appint/laurent.hpp"
#include "appint/spectra.hpp"

namespace appint {

/// Finitely supported real data attached to integer indices starting at
/// `offset`; conceptually zero outside the stored window.
struct DataSequence {
    std::vector<double> values;
    long offset = 0;

    long first() const { return offset; }
    long last() const { return offset + static_cast<long>(values.size()) - 1; }
    double at(long index) const {
        if (values.empty() || index < first() || index > last()) return 0.0;
        return values[static_cast<std::size_t>(index - offset)];
    }
};

/// Contiguous index range whose values are independent of how the data is
/// extended outside its window.
struct ValidInterval {
    long lo = 0;
    long hi = -1;
    bool empty() const { return hi < lo; }
    bool contains(long i) const { return i >= lo && i <= hi; }
};

/// One refinement step (S_a q)_i = sum_j a_(i-2j) q_j, computed through the
/// even/odd sub-symbol split. When the even sub-symbol is the unit within
/// 1e-9 (interpolatory mask), retained slots are copied with no arithmetic.
/// Large outputs are processed with OpenMP when available.
DataSequence refine(const LaurentPolynomial& mask, const DataSequence& data);

/// Reference implementation: the direct convolution above, single loop, no
/// sub-symbol split and no retained-slot shortcut. Kept for testing and as
/// the baseline of the refinement benchmark.
DataSequence refine_serial(const LaurentPolynomial& mask, const DataSequence& data);

/// Valid-interval image of one refine step with the given mask.
ValidInterval refine_valid(const LaurentPolynomial& mask, const ValidInterval& v);

/// Refinement cascade with per-level grids t_i = i / 2^k and valid-region
/// tracking. levels[k] holds the k-th data sequence.
struct RefinementRun {
    std::vector<DataSequence> levels;
    std::vector<ValidInterval> valid;

    int depth() const { return static_cast<int>(levels.size()) - 1; }
    static double grid_t(int level, long index) { return std::ldexp(static_cast<double>(index), -level); }
    /// Piecewise-linear interpolant of the deepest level.
    double sample_deepest(double t) const;
};

RefinementRun run_scheme(const std::vector<LaurentPolynomial>& symbols,
                         const DataSequence& data, int levels);

enum class ConditionMode { Generation, Reproduction };

/// Residuals of the zero/value/derivative conditions at the level-k spectrum
/// nodes z = e^(-theta/2^(k+1)). Reproduction mode checks m(z) = 2, m(-z) = 0
/// and vanishing derivatives at both; generation mode only the conditions
/// at -z. Reports, never throws.
struct ConditionReport {
    double value_residual = 0.0;       // |m(z) - 2|
    double zero_residual = 0.0;        // |m(-z)|
    double derivative_residual = 0.0;  // |d^r m|, r = 1..tau-1
    double max_residual = 0.0;
    bool passed(double tol) const { return max_residual <= tol; }
};

ConditionReport check_reproduction_conditions(const LaurentPolynomial& m,
                                              const SpectrumSpec& spectrum, int k,
                                              ConditionMode mode, double tol = 1e-9);

/// End-to-end check: samples the chosen basis function of the spectrum on
/// the integers in [-window, window], converts and refines for `levels`
/// steps, and returns the max deviation of inserted (odd-index) values from
/// exact samples inside the valid region.
double reproduction_residual(const SymbolProgram& program,
                             const std::vector<InterpolatorySelection>& selections,
                             const SpectrumSpec& spectrum, int basis_index, int levels,
                             long window = 8, SolverChoice solver = SolverChoice::Both);

} // namespace appint

#endif
