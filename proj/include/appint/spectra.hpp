#ifndef APPINT_SPECTRA_HPP
#define APPINT_SPECTRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "appint/bezout_roots.hpp"
#include "appint/laurent.hpp"

namespace appint {

struct SpectrumEntry {
    Complex theta;
    int tau;
};

/// Frequencies with multiplicities defining a space of exponential
/// polynomials span{x^r e^(theta x)}. Entries with coinciding theta are
/// merged on construction (multiplicities add), so stored frequencies are
/// pairwise distinct.
class SpectrumSpec {
public:
    SpectrumSpec() = default;
    explicit SpectrumSpec(std::vector<SpectrumEntry> entries, double merge_tol = 1e-12);

    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    /// Total order T = sum of multiplicities.
    int total_order() const;
    /// True when entries are closed under conjugation with matching
    /// multiplicities (real masks).
    bool is_conjugate_closed(double tol = 1e-12) const;

    /// Level-k zeros paired with multiplicities: z = e^(-theta / 2^(k+1)).
    std::vector<std::pair<Complex, int>> level_zeros(int k) const;

private:
    std::vector<SpectrumEntry> entries_;
};

/// One step of the tension recurrence v -> sqrt((v+1)/2). Requires v > -1;
/// the result is always positive and the iteration contracts toward 1.
double tension_update(double v);

/// Frequency theta with cosh(theta) = v (imaginary for v in (-1,1)).
Complex theta_from_tension(double v);

/// Level-k symbol 2 prod ((e^c z + 1)/(e^c + 1))^tau with c = theta/2^(k+1),
/// expanded to coefficients (low = 0, degree = total order). Realified when
/// the spectrum is conjugate closed.
LaurentPolynomial exp_bspline_symbol(const SpectrumSpec& spectrum, int k);
/// Same symbol in factored form: roots -e^(-c) with the entry multiplicity.
FactoredSymbol exp_bspline_factored(const SpectrumSpec& spectrum, int k);

/// (z+1)^2 (z^2 + 2vz + 1) / (4(v+1)) and its factored form.
LaurentPolynomial cubic_tension_symbol(double v);
FactoredSymbol cubic_tension_factored(double v);

/// Affine five-term combination: cubic symbol times
/// alpha + beta z + (1-2alpha-2beta) z^2 + beta z^3 + alpha z^4.
/// Assembled directly in coefficient form; value at z = 1 is 2.
LaurentPolynomial five_term_symbol(double alpha, double beta, double v);
/// Factored form via a z + 1/z reduction of the palindromic quartic.
FactoredSymbol five_term_factored(double alpha, double beta, double v);

struct FiveTermPreset {
    double alpha;
    double beta;
    SpectrumSpec space;  // the spectrum the derived interpolatory scheme reproduces
};

/// Parameter formulas for the five preset cases, with the advertised
/// reproduced spectrum built from theta = acosh(v). Cases 2, 4 and 5 exclude
/// v = 0 and case 4 additionally v = 1/2 (vanishing denominators).
FiveTermPreset preset_five_term(int case_id, double v);

/// The advertised spectrum alone; defined for every v > -1 (the parameter
/// exclusions above only concern the alpha/beta formulas).
SpectrumSpec preset_space(int case_id, double v);

/// One row per basis function x^r e^(theta x), r = 0..tau-1, entry order.
std::vector<std::vector<Complex>> sample_basis(const SpectrumSpec& spectrum,
                                               const std::vector<double>& grid);

/// Real-combination mode: conjugate pairs e^((a+ib)x), e^((a-ib)x) are
/// replaced by e^(ax)cos(bx), e^(ax)sin(bx). Requires a conjugate-closed
/// spectrum; rows are real.
std::vector<std::vector<double>> sample_basis_real(const SpectrumSpec& spectrum,
                                                   const std::vector<double>& grid);
std::vector<std::string> basis_labels_real(const SpectrumSpec& spectrum);

/// Tension state v^(k); one update per level.
struct ParameterState {
    double v;
    int k;
    ParameterState advanced() const { return {tension_update(v), k + 1}; }
};

/// Per-level source of approximating symbols.
class SymbolProgram {
public:
    enum class Family { ExpBspline, FiveTerm, Explicit };

    struct LevelSymbol {
        LaurentPolynomial dense;
        std::optional<FactoredSymbol> factored;
    };

    static SymbolProgram exponential_bspline(SpectrumSpec spectrum);
    static SymbolProgram five_term_preset_program(int case_id, double v_init);
    /// Schedules broadcast when they hold a single value.
    static SymbolProgram five_term_custom(std::vector<double> alpha,
                                          std::vector<double> beta, double v_init);
    static SymbolProgram explicit_symbols(std::vector<LaurentPolynomial> symbols);

    Family family() const { return family_; }
    double v_init() const { return v_init_; }
    int preset_case() const { return preset_case_; }
    const std::optional<SpectrumSpec>& spectrum() const { return spectrum_; }
    const std::vector<double>& alpha_schedule() const { return alpha_; }
    const std::vector<double>& beta_schedule() const { return beta_; }
    const std::vector<LaurentPolynomial>& symbols() const { return symbols_; }

    /// Largest usable level count (explicit lists are finite).
    int max_levels() const;
    /// v^(k): the initial tension advanced k+1 times.
    double tension_at(int k) const;
    LevelSymbol level_symbol(int k) const;

    /// Spectrum for verification when the family determines it.
    std::optional<SpectrumSpec> verification_spectrum() const;

private:
    Family family_ = Family::Explicit;
    double v_init_ = 1.0;
    int preset_case_ = 0;
    std::optional<SpectrumSpec> spectrum_;
    std::vector<double> alpha_, beta_;
    std::vector<LaurentPolynomial> symbols_;
};

} // namespace appint

#endif
