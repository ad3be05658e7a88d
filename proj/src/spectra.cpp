#include "appint/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace appint {

namespace {

// Roots of z^2 + 2wz + 1 (product 1, sum -2w).
std::pair<Complex, Complex> unit_quadratic_roots(Complex w) {
    Complex d = std::sqrt(w * w - Complex{1.0, 0.0});
    return {-w + d, -w - d};
}

double schedule_at(const std::vector<double>& sched, int k, const char* what) {
    if (sched.empty()) throw DomainError(std::string("empty ") + what + " schedule");
    if (sched.size() == 1) return sched[0];
    if (k < 0 || static_cast<std::size_t>(k) >= sched.size())
        throw DomainError(std::string(what) + " schedule has no entry for level " +
                          std::to_string(k), k);
    return sched[static_cast<std::size_t>(k)];
}

} // namespace

SpectrumSpec::SpectrumSpec(std::vector<SpectrumEntry> entries, double merge_tol) {
    for (const SpectrumEntry& e : entries) {
        if (e.tau < 1) throw ValidationError("spectrum multiplicity must be positive");
        bool merged = false;
        for (SpectrumEntry& have : entries_) {
            if (std::abs(have.theta - e.theta) <= merge_tol) {
                have.tau += e.tau;
                merged = true;
                break;
            }
        }
        if (!merged) entries_.push_back(e);
    }
}

int SpectrumSpec::total_order() const {
    int t = 0;
    for (const SpectrumEntry& e : entries_) t += e.tau;
    return t;
}

bool SpectrumSpec::is_conjugate_closed(double tol) const {
    for (const SpectrumEntry& e : entries_) {
        bool found = false;
        for (const SpectrumEntry& other : entries_) {
            if (std::abs(std::conj(e.theta) - other.theta) <= tol && other.tau == e.tau) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::vector<std::pair<Complex, int>> SpectrumSpec::level_zeros(int k) const {
    double scale = std::ldexp(1.0, -(k + 1));
    std::vector<std::pair<Complex, int>> out;
    for (const SpectrumEntry& e : entries_)
        out.emplace_back(std::exp(-e.theta * scale), e.tau);
    return out;
}

double tension_update(double v) {
    if (v <= -1.0) throw DomainError("tension_update: v must exceed -1");
    return std::sqrt((v + 1.0) / 2.0);
}

Complex theta_from_tension(double v) {
    return std::acosh(Complex{v, 0.0});
}

LaurentPolynomial exp_bspline_symbol(const SpectrumSpec& spectrum, int k) {
    if (k < 0) throw DomainError("exp_bspline_symbol: level must be nonnegative");
    double scale = std::ldexp(1.0, -(k + 1));
    LaurentPolynomial acc = LaurentPolynomial::monomial(Complex{2.0, 0.0}, 0);
    for (const SpectrumEntry& e : spectrum.entries()) {
        Complex g = std::exp(e.theta * scale);
        if (std::abs(g + Complex{1.0, 0.0}) < 1e-14)
            throw PoleAtMinusOne("exp_bspline_symbol: factor denominator vanishes");
        LaurentPolynomial factor(
            0, std::vector<Complex>{Complex{1.0, 0.0} / (g + 1.0), g / (g + 1.0)});
        for (int r = 0; r < e.tau; ++r) acc = acc * factor;
    }
    if (spectrum.is_conjugate_closed()) acc = acc.realified();
    return acc;
}

FactoredSymbol exp_bspline_factored(const SpectrumSpec& spectrum, int k) {
    if (k < 0) throw DomainError("exp_bspline_factored: level must be nonnegative");
    double scale = std::ldexp(1.0, -(k + 1));
    Complex leading{2.0, 0.0};
    std::vector<FactoredSymbol::Root> roots;
    for (const SpectrumEntry& e : spectrum.entries()) {
        Complex g = std::exp(e.theta * scale);
        if (std::abs(g + Complex{1.0, 0.0}) < 1e-14)
            throw PoleAtMinusOne("exp_bspline_factored: factor denominator vanishes");
        for (int r = 0; r < e.tau; ++r) leading *= g / (g + 1.0);
        roots.push_back({-Complex{1.0, 0.0} / g, e.tau});
    }
    return FactoredSymbol(leading, std::move(roots));
}

LaurentPolynomial cubic_tension_symbol(double v) {
    if (v <= -1.0) throw DomainError("cubic_tension_symbol: v must exceed -1");
    LaurentPolynomial sq(0, std::vector<double>{1.0, 2.0, 1.0});
    LaurentPolynomial quad(0, std::vector<double>{1.0, 2.0 * v, 1.0});
    return Complex{1.0 / (4.0 * (v + 1.0)), 0.0} * (sq * quad);
}

FactoredSymbol cubic_tension_factored(double v) {
    if (v <= -1.0) throw DomainError("cubic_tension_factored: v must exceed -1");
    auto [r1, r2] = unit_quadratic_roots(Complex{v, 0.0});
    std::vector<FactoredSymbol::Root> roots{{Complex{-1.0, 0.0}, 2}, {r1, 1}, {r2, 1}};
    return FactoredSymbol(Complex{1.0 / (4.0 * (v + 1.0)), 0.0}, std::move(roots));
}

LaurentPolynomial five_term_symbol(double alpha, double beta, double v) {
    LaurentPolynomial affine(
        0, std::vector<double>{alpha, beta, 1.0 - 2.0 * alpha - 2.0 * beta, beta, alpha});
    return cubic_tension_symbol(v) * affine;
}

FactoredSymbol five_term_factored(double alpha, double beta, double v) {
    FactoredSymbol cubic = cubic_tension_factored(v);
    std::vector<FactoredSymbol::Root> roots = cubic.roots();
    Complex leading = cubic.leading();
    if (alpha != 0.0) {
        // Palindromic quartic: substitute y = z + 1/z and split each
        // quadratic z^2 - y z + 1 with the root formula.
        Complex disc = std::sqrt(Complex{beta * beta - 4.0 * alpha * (1.0 - 4.0 * alpha - 2.0 * beta), 0.0});
        Complex y1 = (Complex{-beta, 0.0} + disc) / (2.0 * alpha);
        Complex y2 = (Complex{-beta, 0.0} - disc) / (2.0 * alpha);
        for (Complex y : {y1, y2}) {
            auto [r1, r2] = unit_quadratic_roots(-y / 2.0);
            roots.push_back({r1, 1});
            roots.push_back({r2, 1});
        }
        leading *= alpha;
    } else if (beta != 0.0) {
        // alpha = 0 drops the degree: z * beta * (z^2 + ((1-2beta)/beta) z + 1).
        roots.push_back({Complex{0.0, 0.0}, 1});
        auto [r1, r2] = unit_quadratic_roots(Complex{(1.0 - 2.0 * beta) / (2.0 * beta), 0.0});
        roots.push_back({r1, 1});
        roots.push_back({r2, 1});
        leading *= beta;
    } else {
        roots.push_back({Complex{0.0, 0.0}, 2});
    }
    return FactoredSymbol(leading, std::move(roots));
}

SpectrumSpec preset_space(int case_id, double v) {
    if (v <= -1.0) throw DomainError("preset_space: v must exceed -1");
    Complex theta = theta_from_tension(v);
    auto sym = [&](std::vector<std::pair<int, int>> multiples) {
        std::vector<SpectrumEntry> entries{{Complex{0.0, 0.0}, multiples[0].second}};
        for (std::size_t i = 1; i < multiples.size(); ++i) {
            Complex t = static_cast<double>(multiples[i].first) * theta;
            entries.push_back({t, multiples[i].second});
            entries.push_back({-t, multiples[i].second});
        }
        return SpectrumSpec(std::move(entries));
    };
    switch (case_id) {
        case 1: return sym({{0, 4}, {1, 1}});
        case 2: return sym({{0, 2}, {1, 1}, {2, 1}});
        case 3: return sym({{0, 2}, {1, 2}});
        case 4: return sym({{0, 2}, {1, 1}, {2, 1}, {3, 1}});
        case 5: return sym({{0, 2}, {1, 2}, {2, 1}});
        default: throw DomainError("preset_space: case must be 1..5");
    }
}

FiveTermPreset preset_five_term(int case_id, double v) {
    if (v <= -1.0) throw DomainError("preset_five_term: v must exceed -1");
    SpectrumSpec space = preset_space(case_id, v);
    switch (case_id) {
        case 1:
            return {0.0, 0.25, space};
        case 2:
            if (v == 0.0) throw DomainError("preset 2 is undefined at v = 0");
            return {0.0, 1.0 / (4.0 * v * v), space};
        case 3:
            return {0.0, 1.0 / (2.0 * (1.0 + v)), space};
        case 4: {
            if (v == 0.0 || v == 0.5)
                throw DomainError("preset 4 is undefined at v = 0 and v = 1/2");
            double w = 2.0 * v - 1.0;
            double alpha = 1.0 / (8.0 * v * v * (v + 1.0) * w * w);
            double beta = (4.0 * v * v - 2.0 * v - 1.0) / (4.0 * v * v * w * w);
            return {alpha, beta, space};
        }
        case 5: {
            if (v == 0.0) throw DomainError("preset 5 is undefined at v = 0");
            double alpha = 1.0 / (8.0 * v * v * (v + 1.0));
            double beta = (2.0 * v - 1.0) / (4.0 * v * v);
            return {alpha, beta, space};
        }
        default:
            throw DomainError("preset_five_term: case must be 1..5");
    }
}

std::vector<std::vector<Complex>> sample_basis(const SpectrumSpec& spectrum,
                                               const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("sample_basis: empty grid");
    std::vector<std::vector<Complex>> rows;
    for (const SpectrumEntry& e : spectrum.entries()) {
        for (int r = 0; r < e.tau; ++r) {
            std::vector<Complex> row(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double x = grid[i];
                row[i] = std::pow(x, r) * std::exp(e.theta * x);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<std::vector<double>> sample_basis_real(const SpectrumSpec& spectrum,
                                                   const std::vector<double>& grid) {
    if (grid.empty()) throw DomainError("sample_basis_real: empty grid");
    if (!spectrum.is_conjugate_closed())
        throw DomainError("sample_basis_real: spectrum is not conjugate closed");
    std::vector<std::vector<double>> rows;
    for (const SpectrumEntry& e : spectrum.entries()) {
        if (e.theta.imag() < -1e-14) continue;  // handled with the conjugate partner
        bool pair = e.theta.imag() > 1e-14;
        for (int r = 0; r < e.tau; ++r) {
            std::vector<double> row(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double x = grid[i];
                row[i] = std::pow(x, r) * std::exp(e.theta.real() * x) *
                         (pair ? std::cos(e.theta.imag() * x) : 1.0);
            }
            rows.push_back(std::move(row));
            if (pair) {
                std::vector<double> srow(grid.size());
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    double x = grid[i];
                    srow[i] = std::pow(x, r) * std::exp(e.theta.real() * x) *
                              std::sin(e.theta.imag() * x);
                }
                rows.push_back(std::move(srow));
            }
        }
    }
    return rows;
}

std::vector<std::string> basis_labels_real(const SpectrumSpec& spectrum) {
    std::vector<std::string> labels;
    auto power = [](int r) {
        return r == 0 ? std::string() : (r == 1 ? std::string("x*") : "x^" + std::to_string(r) + "*");
    };
    for (const SpectrumEntry& e : spectrum.entries()) {
        if (e.theta.imag() < -1e-14) continue;
        bool pair = e.theta.imag() > 1e-14;
        for (int r = 0; r < e.tau; ++r) {
            std::string mono = power(r);
            if (pair) {
                std::string freq = std::to_string(e.theta.imag());
                labels.push_back(mono + "cos(" + freq + "x)");
                labels.push_back(mono + "sin(" + freq + "x)");
            } else if (std::abs(e.theta.real()) < 1e-14) {
                labels.push_back(r == 0 ? "1" : (r == 1 ? "x" : "x^" + std::to_string(r)));
            } else {
                labels.push_back(mono + "exp(" + std::to_string(e.theta.real()) + "x)");
            }
        }
    }
    return labels;
}

SymbolProgram SymbolProgram::exponential_bspline(SpectrumSpec spectrum) {
    SymbolProgram p;
    p.family_ = Family::ExpBspline;
    p.spectrum_ = std::move(spectrum);
    return p;
}

SymbolProgram SymbolProgram::five_term_preset_program(int case_id, double v_init) {
    if (v_init <= -1.0) throw ValidationError("v_init must exceed -1");
    if (case_id < 1 || case_id > 5) throw ValidationError("preset case must be 1..5");
    SymbolProgram p;
    p.family_ = Family::FiveTerm;
    p.preset_case_ = case_id;
    p.v_init_ = v_init;
    return p;
}

SymbolProgram SymbolProgram::five_term_custom(std::vector<double> alpha,
                                              std::vector<double> beta, double v_init) {
    if (v_init <= -1.0) throw ValidationError("v_init must exceed -1");
    if (alpha.empty() || beta.empty())
        throw ValidationError("five_term schedules must not be empty");
    SymbolProgram p;
    p.family_ = Family::FiveTerm;
    p.v_init_ = v_init;
    p.alpha_ = std::move(alpha);
    p.beta_ = std::move(beta);
    return p;
}

SymbolProgram SymbolProgram::explicit_symbols(std::vector<LaurentPolynomial> symbols) {
    if (symbols.empty()) throw ValidationError("explicit program needs at least one symbol");
    SymbolProgram p;
    p.family_ = Family::Explicit;
    p.symbols_ = std::move(symbols);
    return p;
}

int SymbolProgram::max_levels() const {
    if (family_ == Family::Explicit) return static_cast<int>(symbols_.size());
    if (family_ == Family::FiveTerm && preset_case_ == 0) {
        // Single-value schedules broadcast; otherwise the shorter list bounds
        // the usable level count.
        std::size_t bound = std::numeric_limits<std::size_t>::max();
        if (alpha_.size() > 1) bound = std::min(bound, alpha_.size());
        if (beta_.size() > 1) bound = std::min(bound, beta_.size());
        if (bound != std::numeric_limits<std::size_t>::max()) return static_cast<int>(bound);
    }
    return std::numeric_limits<int>::max();
}

double SymbolProgram::tension_at(int k) const {
    ParameterState state{v_init_, -1};
    for (int j = 0; j <= k; ++j) state = state.advanced();
    return state.v;
}

SymbolProgram::LevelSymbol SymbolProgram::level_symbol(int k) const {
    if (k < 0) throw DomainError("level_symbol: level must be nonnegative");
    switch (family_) {
        case Family::ExpBspline:
            return {exp_bspline_symbol(*spectrum_, k), exp_bspline_factored(*spectrum_, k)};
        case Family::FiveTerm: {
            double v = tension_at(k);
            double alpha, beta;
            if (preset_case_ > 0) {
                try {
                    FiveTermPreset preset = preset_five_term(preset_case_, v);
                    alpha = preset.alpha;
                    beta = preset.beta;
                } catch (const DomainError& e) {
                    throw DomainError(std::string(e.what()) + " (level " + std::to_string(k) + ")", k);
                }
            } else {
                alpha = schedule_at(alpha_, k, "alpha");
                beta = schedule_at(beta_, k, "beta");
            }
            return {five_term_symbol(alpha, beta, v), five_term_factored(alpha, beta, v)};
        }
        case Family::Explicit: {
            if (static_cast<std::size_t>(k) >= symbols_.size())
                throw DomainError("explicit program has no symbol for level " + std::to_string(k), k);
            return {symbols_[static_cast<std::size_t>(k)], std::nullopt};
        }
    }
    throw DomainError("level_symbol: unknown family");
}

std::optional<SpectrumSpec> SymbolProgram::verification_spectrum() const {
    if (family_ == Family::ExpBspline) return spectrum_;
    if (family_ == Family::FiveTerm && preset_case_ > 0)
        return preset_space(preset_case_, v_init_);
    if (family_ == Family::FiveTerm && preset_case_ == 0) {
        // The degenerate all-zero schedule is the plain cubic symbol chain.
        bool cubic = alpha_.size() == 1 && beta_.size() == 1 && alpha_[0] == 0.0 && beta_[0] == 0.0;
        if (cubic) {
            Complex theta = theta_from_tension(v_init_);
            return SpectrumSpec({{Complex{0.0, 0.0}, 2}, {theta, 1}, {-theta, 1}});
        }
    }
    return std::nullopt;
}

} // namespace appint
