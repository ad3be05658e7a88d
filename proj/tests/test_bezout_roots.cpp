#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "appint/bezout_matrix.hpp"
#include "appint/bezout_roots.hpp"
#include "support/oracles.hpp"

using namespace appint;

namespace {

LaurentPolynomial poly(int low, std::vector<double> c) { return LaurentPolynomial(low, c); }

FactoredSymbol half_square() {
    // (1+z)^2 / 2: root -1 with multiplicity 2.
    return FactoredSymbol(Complex{0.5, 0.0}, {{Complex{-1.0, 0.0}, 2}});
}

double falling(int e, int r) {
    double ff = 1.0;
    for (int t = 0; t < r; ++t) ff *= e - t;
    return ff;
}

} // namespace

TEST_CASE("factored symbols merge coinciding roots and expand correctly") {
    FactoredSymbol f(Complex{2.0, 0.0},
                     {{Complex{-1.0, 0.0}, 2}, {Complex{-1.0, 0.0}, 1}, {Complex{0.5, 0.0}, 1}});
    CHECK(f.roots().size() == 2);
    CHECK(f.degree() == 4);
    LaurentPolynomial expanded = f.expand();
    CHECK(expanded.low() == 0);
    CHECK(expanded.degree() == 4);
    CHECK(std::abs(expanded.evaluate(Complex{-1.0, 0.0})) < 1e-14);
    CHECK(std::abs(expanded.evaluate(Complex{-1.0, 0.0}, 2)) < 1e-13);

    CHECK(half_square().reflection_separation() == doctest::Approx(2.0));
    FactoredSymbol shared(Complex{1.0, 0.0}, {{Complex{1.0, 0.0}, 1}, {Complex{-1.0, 0.0}, 1}});
    CHECK(shared.reflection_separation() == 0.0);
}

TEST_CASE("hermite_lagrange reproduces prescribed data") {
    // f = z^2 on nodes {1:2, -1:1}.
    HermiteData quad;
    quad.nodes = {{Complex{1, 0}, 2}, {Complex{-1, 0}, 1}};
    quad.values = {{Complex{1, 0}, Complex{2, 0}}, {Complex{1, 0}}};
    CHECK(max_coeff_distance(hermite_lagrange(quad), poly(0, {0, 0, 1})) < 1e-14);

    // f = 2/(1+z)^2 on node {1:2}: values 1/2, -1/2 -> 1 - z/2.
    HermiteData taylor;
    taylor.nodes = {{Complex{1, 0}, 2}};
    taylor.values = {{Complex{0.5, 0}, Complex{-0.5, 0}}};
    CHECK(max_coeff_distance(hermite_lagrange(taylor), poly(0, {1.0, -0.5})) < 1e-14);

    HermiteData single;
    single.nodes = {{Complex{0.3, 0.7}, 1}};
    single.values = {{Complex{-2.0, 1.0}}};
    CHECK(max_coeff_distance(hermite_lagrange(single),
                             LaurentPolynomial(0, std::vector<Complex>{Complex{-2.0, 1.0}})) == 0.0);

    HermiteData dup;
    dup.nodes = {{Complex{1, 0}, 1}, {Complex{1, 0}, 1}};
    dup.values = {{Complex{1, 0}}, {Complex{1, 0}}};
    CHECK_THROWS_AS(hermite_lagrange(dup), DuplicateNode);
}

TEST_CASE("hermite_lagrange reproduces random polynomials from their own data") {
    testing::SymbolSampler sampler(201);
    for (int trial = 0; trial < 25; ++trial) {
        int degree = sampler.uniform_int(1, 8);
        std::vector<Complex> coeffs;
        for (int i = 0; i <= degree; ++i)
            coeffs.push_back(Complex{sampler.uniform(-2, 2), sampler.uniform(-1, 1)});
        LaurentPolynomial target(0, coeffs);
        if (target.degree() != degree) continue;

        HermiteData data;
        int assigned = 0;
        while (assigned <= degree) {
            int mult = std::min(degree + 1 - assigned, sampler.uniform_int(1, 3));
            // Annulus nodes, the regime the solver actually feeds in
            // (reflected symbol roots near the unit circle).
            Complex eta = std::polar(sampler.uniform(0.5, 1.8), sampler.uniform(0.0, 2.0 * M_PI));
            bool clash = false;
            for (const auto& node : data.nodes)
                if (std::abs(node.eta - eta) < 0.4) clash = true;
            if (clash) continue;
            std::vector<Complex> vals;
            for (int r = 0; r < mult; ++r) vals.push_back(target.evaluate(eta, r));
            data.nodes.push_back({eta, mult});
            data.values.push_back(std::move(vals));
            assigned += mult;
        }
        LaurentPolynomial rebuilt = hermite_lagrange(data);
        CHECK(max_coeff_distance(rebuilt, target) <= 1e-11 * std::max(1.0, target.max_abs_coeff()));
    }
}

TEST_CASE("newton form agrees with the explicit interpolation formula") {
    testing::SymbolSampler sampler(202);
    for (int trial = 0; trial < 15; ++trial) {
        HermiteData data;
        int nodes = sampler.uniform_int(1, 3);
        for (int i = 0; i < nodes; ++i) {
            Complex eta{sampler.uniform(-2, 2), sampler.uniform(-1, 1)};
            bool clash = false;
            for (const auto& node : data.nodes)
                if (std::abs(node.eta - eta) < 0.2) clash = true;
            if (clash) { --i; continue; }
            int mult = sampler.uniform_int(1, 3);
            std::vector<Complex> vals;
            for (int r = 0; r < mult; ++r)
                vals.push_back(Complex{sampler.uniform(-2, 2), sampler.uniform(-2, 2)});
            data.nodes.push_back({eta, mult});
            data.values.push_back(std::move(vals));
        }
        LaurentPolynomial fast = hermite_lagrange(data);
        LaurentPolynomial slow = testing::hermite_lagrange_display(data);
        CHECK(max_coeff_distance(fast, slow) <= 1e-9 * std::max(1.0, fast.max_abs_coeff()));
    }
}

TEST_CASE("pfd coefficient table on the quadratic example") {
    auto c1 = pfd_coefficients(half_square(), 1, Star::Minus);
    REQUIRE(c1.size() == 1);
    REQUIRE(c1[0].size() == 2);
    CHECK(std::abs(c1[0][0] - Complex{-0.5, 0}) < 1e-14);
    CHECK(std::abs(c1[0][1]) < 1e-14);

    auto c2 = pfd_coefficients(half_square(), 2, Star::Minus);
    CHECK(std::abs(c2[0][0] - Complex{-0.5, 0}) < 1e-14);
    CHECK(std::abs(c2[0][1] - Complex{1.0, 0}) < 1e-14);

    FactoredSymbol shared(Complex{1.0, 0.0}, {{Complex{1.0, 0.0}, 1}, {Complex{-1.0, 0.0}, 1}});
    CHECK_THROWS_AS(pfd_coefficients(shared, 1, Star::Minus), CommonRoot);
}

TEST_CASE("pfd coefficients for simple roots reduce to direct evaluation") {
    testing::SymbolSampler sampler(203);
    for (int trial = 0; trial < 10; ++trial) {
        FactoredSymbol f = sampler.coprime_factored(2, 6);
        bool simple = true;
        for (const auto& r : f.roots()) simple = simple && r.multiplicity == 1;
        if (!simple) continue;
        int t = sampler.uniform_int(1, f.degree());
        auto c = pfd_coefficients(f, t, Star::Minus);
        int q = 2 * t - 1;
        for (std::size_t i = 0; i < f.roots().size(); ++i) {
            Complex zi = f.roots()[i].z;
            Complex omega{1.0, 0.0};
            for (std::size_t j = 0; j < f.roots().size(); ++j) {
                if (j != i) omega *= zi - f.roots()[j].z;
                omega *= zi + f.roots()[j].z;
            }
            Complex want = 2.0 * std::pow(zi, q) / omega;
            CHECK(std::abs(c[i][0] - want) <= 1e-11 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("pfd coefficients satisfy the Leibniz double-sum identity") {
    testing::SymbolSampler sampler(204);
    for (int trial = 0; trial < 12; ++trial) {
        FactoredSymbol f = sampler.coprime_factored(2, 7);
        int t = sampler.uniform_int(1, f.degree());
        for (Star star : {Star::Minus, Star::Plus}) {
            int q = 2 * t - ell_exponent(star);
            auto c = pfd_coefficients(f, t, star);
            for (std::size_t i = 0; i < f.roots().size(); ++i) {
                Complex zi = f.roots()[i].z;
                int ki = f.roots()[i].multiplicity;
                // omega_i as an expanded polynomial, reciprocated around z_i.
                LaurentPolynomial omega_i = LaurentPolynomial::monomial(Complex{1, 0}, 0);
                for (std::size_t j = 0; j < f.roots().size(); ++j) {
                    LaurentPolynomial plus(0, std::vector<Complex>{f.roots()[j].z, Complex{1, 0}});
                    for (int r = 0; r < f.roots()[j].multiplicity; ++r) omega_i = omega_i * plus;
                    if (j == i) continue;
                    LaurentPolynomial minus(0, std::vector<Complex>{-f.roots()[j].z, Complex{1, 0}});
                    for (int r = 0; r < f.roots()[j].multiplicity; ++r) omega_i = omega_i * minus;
                }
                auto recip = testing::reciprocal_series(omega_i, zi, ki - 1);
                double lfact = 1.0;
                for (int j = 0; j < ki; ++j) {
                    Complex sum{0.0, 0.0};
                    lfact = 1.0;
                    for (int l = 0; l <= j; ++l) {
                        if (l > 0) lfact *= l;
                        double ff = falling(q, l);
                        if (ff == 0.0) continue;
                        Complex fl = 2.0 * ff * std::pow(zi, q - l);
                        sum += fl / lfact * recip[static_cast<std::size_t>(j - l)];
                    }
                    CHECK(std::abs(c[i][static_cast<std::size_t>(j)] - sum) <=
                          1e-9 * std::max(1.0, std::abs(sum)));
                }
            }
        }
    }
}

TEST_CASE("solve_roots on the quadratic and cubic examples") {
    LaurentPolynomial p2 = solve_roots(half_square(), 2, Star::Minus);
    CHECK(max_coeff_distance(p2, poly(0, {-1.0, 2.0})) < 1e-13);

    for (double v : {0.3, 1.0, 2.7}) {
        // Cubic tension symbol assembled from its roots.
        Complex d = std::sqrt(Complex{v * v - 1.0, 0.0});
        FactoredSymbol b3(Complex{1.0 / (4.0 * (v + 1.0)), 0.0},
                          {{Complex{-1.0, 0.0}, 2}, {-v + d, 1}, {-v - d, 1}});
        LaurentPolynomial p = solve_roots(b3, 2, Star::Minus);
        LaurentPolynomial want =
            Complex{1.0 / (2.0 * v), 0.0} * poly(0, {-1.0, 2.0 * (v + 1.0), -1.0});
        CHECK(max_coeff_distance(p, want) <= 1e-12);
    }
}

TEST_CASE("root and matrix paths agree on random coprime symbols") {
    testing::SymbolSampler sampler(205);
    for (int trial = 0; trial < 20; ++trial) {
        FactoredSymbol f = sampler.coprime_factored(2, 10);
        LaurentPolynomial dense = f.expand();
        ResultantSystem sys = build_resultant(dense, Star::Minus);
        reduce_half(sys);
        for (Star star : {Star::Minus, Star::Plus}) {
            for (int i = 1; i <= f.degree(); ++i) {
                LaurentPolynomial from_roots = solve_roots(f, i, star);
                LaurentPolynomial from_matrix = solve_matrix(sys, i, star);
                CHECK(bezout_residual(dense, from_roots, i, star) <= 1e-10);
                CHECK(max_coeff_distance(from_roots, from_matrix) <=
                      1e-9 * std::max(1.0, from_matrix.max_abs_coeff()));
            }
        }
    }
}

TEST_CASE("incomplete partial fraction cofactors") {
    auto [k_poly, h_poly] = incomplete_pfd_cofactor(half_square());
    CHECK(max_coeff_distance(k_poly, poly(0, {1.0, -0.5})) < 1e-14);

    testing::SymbolSampler sampler(206);
    for (int trial = 0; trial < 12; ++trial) {
        FactoredSymbol f = sampler.coprime_factored(2, 8);
        LaurentPolynomial a = f.expand();
        auto [kp, hp] = incomplete_pfd_cofactor(f);
        CHECK(kp.degree() < f.degree());
        CHECK(hp.degree() < f.degree());
        // Defining identity at random points: 1/(a(z)a(-z)) = h/a + k/a(-z).
        for (int s = 0; s < 10; ++s) {
            Complex z{sampler.uniform(-2, 2), sampler.uniform(-2, 2)};
            Complex az = a.evaluate(z), arz = a.reflected().evaluate(z);
            if (std::abs(az) < 0.1 || std::abs(arz) < 0.1) continue;
            Complex lhs = Complex{1.0, 0.0} / (az * arz);
            Complex rhs = hp.evaluate(z) / az + kp.evaluate(z) / arz;
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("incomplete-pfd backend agrees with the direct backend") {
    testing::SymbolSampler sampler(207);
    for (int trial = 0; trial < 15; ++trial) {
        FactoredSymbol f = sampler.coprime_factored(2, 9);
        int i = sampler.uniform_int(1, f.degree());
        for (Star star : {Star::Minus, Star::Plus}) {
            LaurentPolynomial direct = solve_roots(f, i, star, RootsBackend::Direct);
            LaurentPolynomial ipfd = solve_roots(f, i, star, RootsBackend::IncompletePfd);
            CHECK(max_coeff_distance(direct, ipfd) <=
                  1e-9 * std::max(1.0, direct.max_abs_coeff()));
        }
    }
}

TEST_CASE("linear-factor cofactor update") {
    testing::SymbolSampler sampler(208);
    int accepted = 0;
    for (int trial = 0; trial < 25 && accepted < 10; ++trial) {
        FactoredSymbol f = sampler.coprime_factored(2, 6);
        Complex root{sampler.uniform(0.5, 2.0) * (sampler.uniform_int(0, 1) ? 1.0 : -1.0), 0.0};
        Complex scale{sampler.uniform(0.4, 1.5), 0.0};
        std::vector<FactoredSymbol::Root> roots = f.roots();
        roots.push_back({root, 1});
        FactoredSymbol g(scale * f.leading(), roots);
        if (g.reflection_separation() < 0.2 || g.degree() != f.degree() + 1) continue;

        auto updated = extend_cofactor_linear(f, scale, root);
        if (!updated) continue;
        ++accepted;
        auto [k_direct, h_direct] = incomplete_pfd_cofactor(g);
        CHECK(max_coeff_distance(*updated, k_direct) <=
              1e-8 * std::max(1.0, k_direct.max_abs_coeff()));

        int i = sampler.uniform_int(1, g.degree());
        auto p = solve_roots_linear_update(f, scale, root, i, Star::Minus);
        REQUIRE(p.has_value());
        CHECK(bezout_residual(g.expand(), *p, i, Star::Minus) <= 1e-9);
    }
    CHECK(accepted >= 5);
}
