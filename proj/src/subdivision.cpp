#include "appint/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace appint {

namespace {

constexpr long kParallelCutoff = 4096;

struct MaskSplit {
    std::vector<double> even, odd;  // coefficients a_(2s), a_(2s+1)
    long even_lo = 0, odd_lo = 0;
    bool unit_even = false;  // even sub-symbol is 1 within 1e-9

    long even_hi() const { return even_lo + static_cast<long>(even.size()) - 1; }
    long odd_hi() const { return odd_lo + static_cast<long>(odd.size()) - 1; }
};

std::vector<double> real_coeffs(const LaurentPolynomial& p) {
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p.coeffs()[i].real();
    return out;
}

MaskSplit split_mask(const LaurentPolynomial& mask) {
    if (mask.is_zero()) throw ZeroPolynomial("refine: zero mask");
    if (!mask.is_real(1e-9)) throw DomainError("refine: mask has non-real coefficients");
    SubSymbols sub = sub_symbols(mask);
    MaskSplit split;
    split.even = real_coeffs(sub.even);
    split.even_lo = sub.even.low();
    split.odd = real_coeffs(sub.odd);
    split.odd_lo = sub.odd.low();
    LaurentPolynomial unit_dev = sub.even - LaurentPolynomial::monomial(Complex{1.0, 0.0}, 0);
    split.unit_even = unit_dev.max_abs_coeff() <= 1e-9;
    return split;
}

} // namespace

DataSequence refine(const LaurentPolynomial& mask, const DataSequence& data) {
    MaskSplit split = split_mask(mask);
    if (data.values.empty()) return {};

    long jmin = data.first(), jmax = data.last();
    long lo_out = 2 * jmin + mask.low();
    long hi_out = 2 * jmax + mask.high();
    DataSequence out;
    out.offset = lo_out;
    out.values.assign(static_cast<std::size_t>(hi_out - lo_out + 1), 0.0);

    const double* q = data.values.data();
    double* y = out.values.data();
    long len = static_cast<long>(data.values.size());

    if (split.unit_even) {
#pragma omp parallel for if (len > kParallelCutoff)
        for (long j = 0; j < len; ++j) y[2 * (jmin + j) - lo_out] = q[j];
    } else if (!split.even.empty()) {
        long rlo = jmin + split.even_lo, rhi = jmax + split.even_hi();
#pragma omp parallel for if (rhi - rlo > kParallelCutoff)
        for (long r = rlo; r <= rhi; ++r) {
            long slo = std::max(split.even_lo, r - jmax);
            long shi = std::min(split.even_hi(), r - jmin);
            double acc = 0.0;
            for (long s = slo; s <= shi; ++s)
                acc += split.even[static_cast<std::size_t>(s - split.even_lo)] *
                       q[r - s - jmin];
            y[2 * r - lo_out] = acc;
        }
    }
    if (!split.odd.empty()) {
        long rlo = jmin + split.odd_lo, rhi = jmax + split.odd_hi();
#pragma omp parallel for if (rhi - rlo > kParallelCutoff)
        for (long r = rlo; r <= rhi; ++r) {
            long slo = std::max(split.odd_lo, r - jmax);
            long shi = std::min(split.odd_hi(), r - jmin);
            double acc = 0.0;
            for (long s = slo; s <= shi; ++s)
                acc += split.odd[static_cast<std::size_t>(s - split.odd_lo)] *
                       q[r - s - jmin];
            y[2 * r + 1 - lo_out] = acc;
        }
    }
    return out;
}

DataSequence refine_serial(const LaurentPolynomial& mask, const DataSequence& data) {
    if (mask.is_zero()) throw ZeroPolynomial("refine_serial: zero mask");
    if (!mask.is_real(1e-9)) throw DomainError("refine_serial: mask has non-real coefficients");
    if (data.values.empty()) return {};
    std::vector<double> a = real_coeffs(mask);
    long alo = mask.low(), ahi = mask.high();
    long jmin = data.first(), jmax = data.last();
    long lo_out = 2 * jmin + alo;
    long hi_out = 2 * jmax + ahi;
    DataSequence out;
    out.offset = lo_out;
    out.values.assign(static_cast<std::size_t>(hi_out - lo_out + 1), 0.0);
    for (long i = lo_out; i <= hi_out; ++i) {
        // a_(i-2j) nonzero needs (i - ahi)/2 <= j <= (i - alo)/2
        long jlo = std::max(jmin, (i - ahi + 1) / 2 - 1);
        long jhi = std::min(jmax, (i - alo) / 2 + 1);
        double acc = 0.0;
        for (long j = jlo; j <= jhi; ++j) {
            long e = i - 2 * j;
            if (e < alo || e > ahi) continue;
            acc += a[static_cast<std::size_t>(e - alo)] * data.values[static_cast<std::size_t>(j - jmin)];
        }
        out.values[static_cast<std::size_t>(i - lo_out)] = acc;
    }
    return out;
}

ValidInterval refine_valid(const LaurentPolynomial& mask, const ValidInterval& v) {
    MaskSplit split = split_mask(mask);
    if (v.empty()) return {0, -1};
    long lo = std::numeric_limits<long>::min();
    long hi = std::numeric_limits<long>::max();
    if (split.unit_even) {
        lo = std::max(lo, 2 * v.lo);
        hi = std::min(hi, 2 * v.hi);
    } else if (!split.even.empty()) {
        lo = std::max(lo, 2 * (v.lo + split.even_hi()));
        hi = std::min(hi, 2 * (v.hi + split.even_lo));
    }
    if (!split.odd.empty()) {
        lo = std::max(lo, 2 * (v.lo + split.odd_hi()) + 1);
        hi = std::min(hi, 2 * (v.hi + split.odd_lo) + 1);
    }
    if (hi < lo) return {0, -1};
    return {lo, hi};
}

double RefinementRun::sample_deepest(double t) const {
    const DataSequence& deep = levels.back();
    int k = depth();
    double x = std::ldexp(t, k);  // fractional index at the deepest level
    double fl = std::floor(x);
    long i = static_cast<long>(fl);
    double w = x - fl;
    return (1.0 - w) * deep.at(i) + w * deep.at(i + 1);
}

RefinementRun run_scheme(const std::vector<LaurentPolynomial>& symbols,
                         const DataSequence& data, int levels) {
    if (levels < 0 || static_cast<std::size_t>(levels) > symbols.size())
        throw DomainError("run_scheme: level count exceeds the symbol list");
    RefinementRun run;
    run.levels.push_back(data);
    run.valid.push_back({data.first(), data.last()});
    for (int k = 0; k < levels; ++k) {
        run.levels.push_back(refine(symbols[static_cast<std::size_t>(k)], run.levels.back()));
        run.valid.push_back(refine_valid(symbols[static_cast<std::size_t>(k)], run.valid.back()));
    }
    return run;
}

ConditionReport check_reproduction_conditions(const LaurentPolynomial& m,
                                              const SpectrumSpec& spectrum, int k,
                                              ConditionMode mode, double tol) {
    (void)tol;
    ConditionReport report;
    for (const auto& [z, tau] : spectrum.level_zeros(k)) {
        report.zero_residual = std::max(report.zero_residual, std::abs(m.evaluate(-z)));
        if (mode == ConditionMode::Reproduction)
            report.value_residual =
                std::max(report.value_residual, std::abs(m.evaluate(z) - Complex{2.0, 0.0}));
        for (int r = 1; r < tau; ++r) {
            report.derivative_residual =
                std::max(report.derivative_residual, std::abs(m.evaluate(-z, r)));
            if (mode == ConditionMode::Reproduction)
                report.derivative_residual =
                    std::max(report.derivative_residual, std::abs(m.evaluate(z, r)));
        }
    }
    report.max_residual = std::max({report.value_residual, report.zero_residual,
                                    report.derivative_residual});
    return report;
}

double reproduction_residual(const SymbolProgram& program,
                             const std::vector<InterpolatorySelection>& selections,
                             const SpectrumSpec& spectrum, int basis_index, int levels,
                             long window, SolverChoice solver) {
    InterpolatorySequence seq = run_appint(program, selections, levels, solver);

    std::vector<double> grid;
    for (long i = -window; i <= window; ++i) grid.push_back(static_cast<double>(i));
    auto rows = sample_basis_real(spectrum, grid);
    if (basis_index < 0 || static_cast<std::size_t>(basis_index) >= rows.size())
        throw DomainError("reproduction_residual: basis index out of range");

    DataSequence data{rows[static_cast<std::size_t>(basis_index)], -window};
    RefinementRun run = run_scheme(seq.symbols(), data, levels);

    double max_dev = 0.0;
    for (int k = 1; k <= levels; ++k) {
        const DataSequence& level = run.levels[static_cast<std::size_t>(k)];
        const ValidInterval& valid = run.valid[static_cast<std::size_t>(k)];
        for (long i = level.first(); i <= level.last(); ++i) {
            if ((i % 2 + 2) % 2 != 1 || !valid.contains(i)) continue;
            double t = RefinementRun::grid_t(k, i);
            double exact = sample_basis_real(spectrum, {t})[static_cast<std::size_t>(basis_index)][0];
            max_dev = std::max(max_dev, std::abs(level.at(i) - exact));
        }
    }
    return max_dev;
}

} // namespace appint
