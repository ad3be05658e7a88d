#include "appint/bezout_matrix.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace appint {

namespace {

void check_input(const LaurentPolynomial& a_hat) {
    if (a_hat.is_zero()) throw ZeroPolynomial("resultant: zero polynomial");
    if (a_hat.low() != 0)
        throw DomainError("resultant: symbol must be shift-normalized (low = 0)");
    if (a_hat.degree() < 1) throw DegreeZero("resultant: degree must be at least 1");
}

// Extended coefficient vectors of a(z) and a(-z) in the Laurent window
// [-kappa, kappa], padded with zeros to length 2n. The sign pattern of the
// reflected vector is (-1)^(s-kappa) on entry s.
void extended_vectors(const LaurentPolynomial& a_hat, int n, int kappa,
                      Eigen::VectorXcd& plus, Eigen::VectorXcd& minus) {
    plus = Eigen::VectorXcd::Zero(2 * n);
    minus = Eigen::VectorXcd::Zero(2 * n);
    for (int s = 0; s <= n; ++s) {
        Complex c = a_hat.coeff(s);
        plus(s) = c;
        minus(s) = ((s - kappa) % 2 == 0) ? c : -c;
    }
}

Eigen::MatrixXcd striped(const Eigen::VectorXcd& v, int n) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(2 * n, n);
    for (int j = 0; j < n; ++j)
        for (int s = 0; s + j < 2 * n; ++s) r(s + j, j) = v(s);
    return r;
}

const Eigen::FullPivLU<Eigen::MatrixXcd>& factorization(const ResultantSystem& sys, Star star) {
    auto& slot = (star == Star::Plus) ? sys.lu_plus : sys.lu_minus;
    if (!slot) {
        const Eigen::MatrixXcd& h = (star == Star::Plus) ? sys.h_plus : sys.h_minus;
        if (h.rows() == 0)
            throw DomainError("solve_matrix: call reduce_half before solving");
        slot = std::make_shared<Eigen::FullPivLU<Eigen::MatrixXcd>>(h);
    }
    return *slot;
}

} // namespace

ResultantSystem build_resultant(const LaurentPolynomial& a_hat, Star star) {
    check_input(a_hat);
    ResultantSystem sys;
    sys.a_hat = a_hat;
    sys.n = a_hat.degree();
    sys.requested = star;

    int kappa = (sys.n + 1) / 2;
    Eigen::VectorXcd vp, vm;
    extended_vectors(a_hat, sys.n, kappa, vp, vm);
    Eigen::MatrixXcd rp = striped(vp, sys.n);
    Eigen::MatrixXcd rm = striped(vm, sys.n);

    sys.r_plus.resize(2 * sys.n, 2 * sys.n);
    sys.r_plus << rp, rm;
    sys.r_minus.resize(2 * sys.n, 2 * sys.n);
    sys.r_minus << rp, -rm;
    return sys;
}

void reduce_half(ResultantSystem& sys) {
    int n = sys.n;
    sys.h_plus = Eigen::MatrixXcd::Zero(n, n);
    sys.h_minus = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            sys.h_plus(r, c) = sys.a_hat.coeff(2 * r - c);
            sys.h_minus(r, c) = sys.a_hat.coeff(2 * r + 1 - c);
        }
    }
    sys.lu_plus.reset();
    sys.lu_minus.reset();
}

double verify_shuffle_reduction(const ResultantSystem& sys) {
    int n = sys.n;
    int N = 2 * n;
    int kappa = (n + 1) / 2;

    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
    for (int j = 1; j <= N; ++j) {
        int sigma = (j % 2 == 1) ? (j + 1) / 2 + n : j / 2;
        P(sigma - 1, j - 1) = 1.0;
    }
    // The alternating diagonal has to flip globally with the parity of kappa
    // for the block structure to come out exact for every degree.
    double dsign = (kappa % 2 == 0) ? 1.0 : -1.0;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int j = 1; j <= n; ++j) D(j - 1, j - 1) = dsign * ((j % 2 == 0) ? 1.0 : -1.0);
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd G(N, N);
    G << I, -D, D, I;
    // G G^T = 2 I, so the inverse is G^T / 2.
    Eigen::MatrixXd Ginv = G.transpose() / 2.0;

    Eigen::MatrixXcd M_minus = P * sys.r_minus * Ginv;
    Eigen::MatrixXcd M_plus = P * sys.r_plus * Ginv;

    double dev = 0.0;
    auto blk = [&](const Eigen::MatrixXcd& M, int i, int j) {
        return M.block(i * n, j * n, n, n);
    };
    // P R^- G^{-1} = H^- (+) H : anti blocks vanish, leading block is H^-.
    dev = std::max(dev, blk(M_minus, 0, 1).cwiseAbs().maxCoeff());
    dev = std::max(dev, blk(M_minus, 1, 0).cwiseAbs().maxCoeff());
    dev = std::max(dev, (blk(M_minus, 0, 0) - sys.h_minus).cwiseAbs().maxCoeff());
    // P R^+ G^{-1} = H~ (anti+) H^+ : diagonal blocks vanish, trailing
    // anti-diagonal block (bottom-left) is H^+.
    dev = std::max(dev, blk(M_plus, 0, 0).cwiseAbs().maxCoeff());
    dev = std::max(dev, blk(M_plus, 1, 1).cwiseAbs().maxCoeff());
    dev = std::max(dev, (blk(M_plus, 1, 0) - sys.h_plus).cwiseAbs().maxCoeff());
    return dev;
}

LaurentPolynomial solve_matrix(const ResultantSystem& sys, int i, Star star) {
    if (i < 1 || i > sys.n)
        throw DomainError("solve_matrix: index i out of range 1..n");
    const auto& lu = factorization(sys, star);
    if (!lu.isInvertible())
        throw SingularSystem("solve_matrix: H is singular; symbol and its reflection share a root");
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(sys.n);
    e(i - 1) = Complex{1.0, 0.0};
    Eigen::VectorXcd x = lu.solve(e);
    std::vector<Complex> coeffs(static_cast<std::size_t>(sys.n));
    for (int j = 0; j < sys.n; ++j) coeffs[static_cast<std::size_t>(j)] = x(j);
    return LaurentPolynomial(0, std::move(coeffs));
}

Eigen::MatrixXcd resultant_matrix(const LaurentPolynomial& a_hat, Star star) {
    ResultantSystem sys = build_resultant(a_hat, star);
    return (star == Star::Plus) ? sys.r_plus : sys.r_minus;
}

double coprime_margin(const LaurentPolynomial& a_hat) {
    Eigen::MatrixXcd r = resultant_matrix(a_hat, Star::Minus);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r);
    const auto& sv = svd.singularValues();
    double largest = sv(0);
    if (largest == 0.0) return 0.0;
    return sv(sv.size() - 1) / largest;
}

} // namespace appint
