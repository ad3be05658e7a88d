#include "appint/bezout_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace appint {

namespace {

constexpr double kReflectionTol = 1e-10;

Complex ipow(Complex z, int e) {
    Complex acc{1.0, 0.0};
    for (int t = 0; t < e; ++t) acc *= z;
    return acc;
}

double falling(int e, int r) {
    double ff = 1.0;
    for (int t = 0; t < r; ++t) ff *= static_cast<double>(e - t);
    return ff;
}

std::vector<double> binomial_row(int s) {
    std::vector<double> row(static_cast<std::size_t>(s) + 1, 1.0);
    for (int l = 1; l <= s; ++l)
        row[static_cast<std::size_t>(l)] =
            row[static_cast<std::size_t>(l - 1)] * static_cast<double>(s - l + 1) / l;
    return row;
}

// Derivatives F^(j)(a), j = 0..order, of
//   F(z) = scale * z^q * prod (z - pole_t)^(-exp_t)
// at a regular point a, via F' = F * (F'/F) and Leibniz on the product.
struct PoleTerm {
    Complex pole;
    int exponent;  // positive: appears in the denominator
};

std::vector<Complex> rational_derivatives(Complex scale, int q,
                                          const std::vector<PoleTerm>& poles,
                                          Complex a, int order) {
    Complex f0 = scale * ipow(a, q);
    for (const PoleTerm& pt : poles) f0 /= ipow(a - pt.pole, pt.exponent);

    // g^(d)(a) with g = F'/F = q/z - sum exp_t/(z - pole_t).
    std::vector<Complex> g(static_cast<std::size_t>(std::max(order, 1)));
    double dfact = 1.0;
    for (int d = 0; d < order; ++d) {
        if (d > 0) dfact *= d;
        double sign = (d % 2 == 0) ? 1.0 : -1.0;
        Complex val = (q != 0) ? Complex{static_cast<double>(q), 0.0} / ipow(a, d + 1)
                               : Complex{0.0, 0.0};
        for (const PoleTerm& pt : poles)
            val -= Complex{static_cast<double>(pt.exponent), 0.0} / ipow(a - pt.pole, d + 1);
        g[static_cast<std::size_t>(d)] = sign * dfact * val;
    }

    std::vector<Complex> f(static_cast<std::size_t>(order) + 1);
    f[0] = f0;
    for (int s = 0; s < order; ++s) {
        auto binom = binomial_row(s);
        Complex acc{0.0, 0.0};
        for (int l = 0; l <= s; ++l)
            acc += binom[static_cast<std::size_t>(l)] * f[static_cast<std::size_t>(l)] *
                   g[static_cast<std::size_t>(s - l)];
        f[static_cast<std::size_t>(s) + 1] = acc;
    }
    return f;
}

void require_coprime(const FactoredSymbol& f) {
    if (f.reflection_separation() < kReflectionTol)
        throw CommonRoot("factored symbol shares a root with its reflection");
}

// (z + z0)^k as a polynomial.
LaurentPolynomial shifted_linear_power(Complex z0, int k) {
    LaurentPolynomial acc = LaurentPolynomial::monomial(Complex{1.0, 0.0}, 0);
    LaurentPolynomial lin(0, std::vector<Complex>{z0, Complex{1.0, 0.0}});
    for (int t = 0; t < k; ++t) acc = acc * lin;
    return acc;
}

HermiteData reflection_nodes(const FactoredSymbol& f) {
    HermiteData data;
    for (const auto& root : f.roots())
        data.nodes.push_back({-root.z, root.multiplicity});
    return data;
}

// Derivatives of 1/a at each node of `data`, where a is the expanded form
// of f; fills data.values.
void fill_reciprocal_values(const FactoredSymbol& f, HermiteData& data,
                            const std::vector<PoleTerm>& extra_poles = {},
                            Complex extra_scale = Complex{1.0, 0.0}) {
    std::vector<PoleTerm> poles;
    for (const auto& root : f.roots()) poles.push_back({root.z, root.multiplicity});
    for (const auto& pt : extra_poles) poles.push_back(pt);
    Complex scale = extra_scale / f.leading();
    data.values.clear();
    for (const auto& node : data.nodes)
        data.values.push_back(
            rational_derivatives(scale, 0, poles, node.eta, node.multiplicity - 1));
}

// Hermite data of z -> 2 z^q k(z) on the given nodes (Leibniz with the
// polynomial's exact derivatives).
HermiteData monomial_times_poly_values(int q, const LaurentPolynomial& k,
                                       const std::vector<HermiteData::Node>& nodes) {
    HermiteData data;
    data.nodes = nodes;
    for (const auto& node : nodes) {
        std::vector<Complex> vals(static_cast<std::size_t>(node.multiplicity));
        for (int d = 0; d < node.multiplicity; ++d) {
            auto binom = binomial_row(d);
            Complex acc{0.0, 0.0};
            for (int l = 0; l <= d; ++l) {
                double ff = falling(q, l);
                if (ff == 0.0) continue;
                acc += binom[static_cast<std::size_t>(l)] * 2.0 * ff * ipow(node.eta, q - l) *
                       k.evaluate(node.eta, d - l);
            }
            vals[static_cast<std::size_t>(d)] = acc;
        }
        data.values.push_back(std::move(vals));
    }
    return data;
}

LaurentPolynomial solve_roots_direct(const FactoredSymbol& f, int t, Star star) {
    auto c = pfd_coefficients(f, t, star);
    const auto& roots = f.roots();
    double sign_ell = (ell_exponent(star) % 2 == 0) ? 1.0 : -1.0;
    LaurentPolynomial sum;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        LaurentPolynomial others = LaurentPolynomial::monomial(Complex{1.0, 0.0}, 0);
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (j != i) others = others * shifted_linear_power(roots[j].z, roots[j].multiplicity);
        int ki = roots[i].multiplicity;
        for (int s = 1; s <= ki; ++s) {
            double sgn = (s % 2 == 0) ? 1.0 : -1.0;
            LaurentPolynomial term =
                others * shifted_linear_power(roots[i].z, ki - s);
            sum = sum + (sgn * c[i][static_cast<std::size_t>(ki - s)]) * term;
        }
    }
    return (sign_ell / f.leading()) * sum;
}

LaurentPolynomial solve_roots_ipfd(const FactoredSymbol& f, int t, Star star) {
    auto [k_poly, h_poly] = incomplete_pfd_cofactor(f);
    (void)h_poly;
    int q = 2 * t - ell_exponent(star);
    HermiteData nodes = reflection_nodes(f);
    HermiteData data = monomial_times_poly_values(q, k_poly, nodes.nodes);
    return hermite_lagrange(data);
}

} // namespace

FactoredSymbol::FactoredSymbol(Complex leading, std::vector<Root> roots, int kappa,
                               double merge_tol)
    : leading_(leading), kappa_(kappa) {
    for (const Root& r : roots) {
        bool merged = false;
        for (Root& have : roots_) {
            if (std::abs(have.z - r.z) <= merge_tol * std::max(1.0, std::abs(have.z))) {
                have.multiplicity += r.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) roots_.push_back(r);
    }
}

int FactoredSymbol::degree() const {
    int n = 0;
    for (const Root& r : roots_) n += r.multiplicity;
    return n;
}

double FactoredSymbol::reflection_separation() const {
    double sep = std::numeric_limits<double>::infinity();
    for (const Root& a : roots_)
        for (const Root& b : roots_) sep = std::min(sep, std::abs(a.z + b.z));
    return sep;
}

double FactoredSymbol::min_root_separation() const {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots_.size(); ++i)
        for (std::size_t j = i + 1; j < roots_.size(); ++j)
            sep = std::min(sep, std::abs(roots_[i].z - roots_[j].z));
    return sep;
}

LaurentPolynomial FactoredSymbol::expand() const {
    LaurentPolynomial acc = LaurentPolynomial::monomial(leading_, 0);
    for (const Root& r : roots_)
        acc = acc * shifted_linear_power(-r.z, r.multiplicity);
    return acc;
}

FactoredSymbol FactoredSymbol::without_zero_roots(int shift) const {
    std::vector<Root> kept;
    int at_zero = 0;
    for (const Root& r : roots_) {
        if (std::abs(r.z) <= 1e-12)
            at_zero += r.multiplicity;
        else
            kept.push_back(r);
    }
    if (at_zero != shift)
        throw DomainError("without_zero_roots: multiplicity at the origin (" +
                          std::to_string(at_zero) + ") does not match the shift (" +
                          std::to_string(shift) + ")");
    return FactoredSymbol(leading_, std::move(kept), kappa_ + shift);
}

namespace {
LaurentPolynomial newton_interpolant(const HermiteData& data);
}

LaurentPolynomial hermite_lagrange(const HermiteData& data) {
    LaurentPolynomial p = newton_interpolant(data);
    // One pass of iterative refinement on the derivative data.
    HermiteData residual = data;
    double scale = 0.0;
    for (std::size_t i = 0; i < data.nodes.size(); ++i)
        for (std::size_t j = 0; j < data.values[i].size(); ++j) {
            residual.values[i][j] = data.values[i][j] - p.evaluate(data.nodes[i].eta, static_cast<int>(j));
            scale = std::max(scale, std::abs(data.values[i][j]));
        }
    double worst = 0.0;
    for (const auto& vals : residual.values)
        for (const Complex& v : vals) worst = std::max(worst, std::abs(v));
    if (worst > 1e-15 * std::max(1.0, scale) && worst < 1e-4 * std::max(1.0, scale))
        p = p + newton_interpolant(residual);
    return p;
}

namespace {

LaurentPolynomial newton_interpolant(const HermiteData& data) {
    if (data.nodes.empty()) throw DomainError("hermite_lagrange: no nodes");
    if (data.values.size() != data.nodes.size())
        throw DomainError("hermite_lagrange: values do not match nodes");
    for (std::size_t i = 0; i < data.nodes.size(); ++i) {
        if (data.nodes[i].multiplicity < 1)
            throw DomainError("hermite_lagrange: multiplicity must be positive");
        if (data.values[i].size() != static_cast<std::size_t>(data.nodes[i].multiplicity))
            throw DomainError("hermite_lagrange: wrong number of derivative values");
        for (std::size_t j = i + 1; j < data.nodes.size(); ++j)
            if (std::abs(data.nodes[i].eta - data.nodes[j].eta) <= 1e-14)
                throw DuplicateNode("hermite_lagrange: repeated node");
    }

    // Leja ordering of the node groups keeps the Newton form well
    // conditioned; the interpolant itself is order independent.
    std::vector<std::size_t> order;
    {
        std::vector<bool> used(data.nodes.size(), false);
        std::size_t first = 0;
        for (std::size_t i = 1; i < data.nodes.size(); ++i)
            if (std::abs(data.nodes[i].eta) > std::abs(data.nodes[first].eta)) first = i;
        order.push_back(first);
        used[first] = true;
        while (order.size() < data.nodes.size()) {
            std::size_t best = 0;
            double best_score = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < data.nodes.size(); ++i) {
                if (used[i]) continue;
                double score = 0.0;
                for (std::size_t c : order)
                    score += data.nodes[c].multiplicity *
                             std::log(std::abs(data.nodes[i].eta - data.nodes[c].eta));
                if (score > best_score) {
                    best_score = score;
                    best = i;
                }
            }
            order.push_back(best);
            used[best] = true;
        }
    }

    // Expanded node sequence with node indices, repeated nodes grouped.
    std::vector<Complex> zs;
    std::vector<std::size_t> idx;
    for (std::size_t i : order)
        for (int r = 0; r < data.nodes[i].multiplicity; ++r) {
            zs.push_back(data.nodes[i].eta);
            idx.push_back(i);
        }
    std::size_t count = zs.size();

    // Confluent divided differences: a run of equal nodes of length j+1
    // contributes f^(j)(eta)/j!.
    std::vector<double> factorial(count, 1.0);
    for (std::size_t j = 1; j < count; ++j) factorial[j] = factorial[j - 1] * static_cast<double>(j);
    std::vector<std::vector<Complex>> dd(count);
    for (std::size_t i = 0; i < count; ++i) dd[i].resize(count - i);
    for (std::size_t i = 0; i < count; ++i) dd[i][0] = data.values[idx[i]][0];
    for (std::size_t j = 1; j < count; ++j) {
        for (std::size_t i = 0; i + j < count; ++i) {
            if (idx[i] == idx[i + j]) {
                dd[i][j] = data.values[idx[i]][j] / factorial[j];
            } else {
                dd[i][j] = (dd[i + 1][j - 1] - dd[i][j - 1]) / (zs[i + j] - zs[i]);
            }
        }
    }

    // Newton to monomial form by Horner expansion.
    LaurentPolynomial p = LaurentPolynomial::monomial(dd[0][count - 1], 0);
    for (std::size_t j = count - 1; j-- > 0;) {
        LaurentPolynomial lin(0, std::vector<Complex>{-zs[j], Complex{1.0, 0.0}});
        p = p * lin + LaurentPolynomial::monomial(dd[0][j], 0);
    }
    return p;
}

} // namespace

std::vector<std::vector<Complex>> pfd_coefficients(const FactoredSymbol& f, int t, Star star) {
    require_coprime(f);
    const auto& roots = f.roots();
    int q = 2 * t - ell_exponent(star);
    std::vector<std::vector<Complex>> c(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        std::vector<PoleTerm> poles;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j != i) poles.push_back({roots[j].z, roots[j].multiplicity});
            poles.push_back({-roots[j].z, roots[j].multiplicity});
        }
        int ki = roots[i].multiplicity;
        auto derivs = rational_derivatives(Complex{2.0, 0.0}, q, poles, roots[i].z, ki - 1);
        c[i].resize(static_cast<std::size_t>(ki));
        double jfact = 1.0;
        for (int j = 0; j < ki; ++j) {
            if (j > 0) jfact *= j;
            c[i][static_cast<std::size_t>(j)] = derivs[static_cast<std::size_t>(j)] / jfact;
        }
    }
    return c;
}

LaurentPolynomial solve_roots(const FactoredSymbol& f, int i, Star star, RootsBackend backend) {
    if (i < 1 || i > f.degree())
        throw DomainError("solve_roots: index i out of range 1..n");
    require_coprime(f);
    return backend == RootsBackend::Direct ? solve_roots_direct(f, i, star)
                                           : solve_roots_ipfd(f, i, star);
}

std::pair<LaurentPolynomial, LaurentPolynomial>
incomplete_pfd_cofactor(const FactoredSymbol& f) {
    require_coprime(f);
    HermiteData kdata = reflection_nodes(f);
    fill_reciprocal_values(f, kdata);
    LaurentPolynomial k_poly = hermite_lagrange(kdata);

    // h interpolates 1/a(-z) on the zeros of a(z); its derivative data are
    // the k-node values with alternating signs.
    HermiteData hdata;
    for (std::size_t i = 0; i < kdata.nodes.size(); ++i) {
        hdata.nodes.push_back({-kdata.nodes[i].eta, kdata.nodes[i].multiplicity});
        std::vector<Complex> vals(kdata.values[i].size());
        for (std::size_t d = 0; d < vals.size(); ++d)
            vals[d] = (d % 2 == 0) ? kdata.values[i][d] : -kdata.values[i][d];
        hdata.values.push_back(std::move(vals));
    }
    LaurentPolynomial h_poly = hermite_lagrange(hdata);
    return {k_poly, h_poly};
}

std::optional<LaurentPolynomial>
extend_cofactor_linear(const FactoredSymbol& f, Complex scale, Complex root) {
    for (const auto& r : f.roots())
        if (std::abs(r.z - root) < 1e-8 || std::abs(r.z + root) < kReflectionTol)
            return std::nullopt;
    if (std::abs(root) < kReflectionTol) return std::nullopt;

    // k1 interpolates 1/g on the old nodes only.
    HermiteData kdata = reflection_nodes(f);
    fill_reciprocal_values(f, kdata, {{root, 1}}, Complex{1.0, 0.0} / scale);
    LaurentPolynomial k1 = hermite_lagrange(kdata);

    // One remaining condition at the new node -root: value of 1/g there.
    LaurentPolynomial base = f.expand();
    Complex eta = -root;
    Complex g_eta = scale * (eta - root) * base.evaluate(eta);
    if (std::abs(g_eta) < 1e-14) return std::nullopt;
    LaurentPolynomial base_reflected = base.reflected();
    Complex denom = base_reflected.evaluate(eta);
    if (std::abs(denom) < 1e-12) return std::nullopt;
    Complex psi = (Complex{1.0, 0.0} / g_eta - k1.evaluate(eta)) / denom;
    return k1 + psi * base_reflected;
}

std::optional<LaurentPolynomial>
solve_roots_linear_update(const FactoredSymbol& f, Complex scale, Complex root,
                          int i, Star star) {
    auto k_g = extend_cofactor_linear(f, scale, root);
    if (!k_g) return std::nullopt;
    int q = 2 * i - ell_exponent(star);
    std::vector<HermiteData::Node> nodes;
    for (const auto& r : f.roots()) nodes.push_back({-r.z, r.multiplicity});
    nodes.push_back({-root, 1});
    HermiteData data = monomial_times_poly_values(q, *k_g, nodes);
    return hermite_lagrange(data);
}

} // namespace appint
