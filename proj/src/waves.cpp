#include "cnoidal/waves.hpp"

#include <cmath>
#include <string>

#include "cnoidal/numerics.hpp"

namespace cnoidal {

namespace {

constexpr double inv_sqrt2 = 0.7071067811865475244;

double branch_sign(Bsign s) { return s == Bsign::plus ? 1.0 : -1.0; }

}  // namespace

CnoidalWave::CnoidalWave(double b0, double b2, double L, Modulus k, double B)
    : b0_(b0), b2_(b2), L_(L), k_(k.value()), B_(B) {
    if (!(L > 0)) throw std::domain_error("CnoidalWave: L must be positive");
    lambda_ = 2.0 * complete_K(k) / L;
}

CnoidalWave::Point CnoidalWave::at(double x) const {
    EllipticTriple e = jacobi(lambda_ * x, Modulus(k_));
    const double s = e.sn, c = e.cn, d = e.dn;
    const double k2 = k_ * k_;
    const double l2 = lambda_ * lambda_;
    Point p;
    p.phi = b0_ + b2_ * c * c;
    p.dphi = -2.0 * lambda_ * b2_ * s * c * d;
    p.d2phi = -2.0 * l2 * b2_ * (c * c * d * d - s * s * d * d - k2 * s * s * c * c);
    p.d3phi = 8.0 * l2 * lambda_ * b2_ * s * c * d * (d * d + k2 * (c * c - s * s));
    return p;
}

CnoidalWave profile(const WaveCase1& w) {
    return CnoidalWave(w.b0, w.b2, w.L, Modulus(w.k), w.B);
}

CnoidalWave profile(const WaveCase2& w) {
    return CnoidalWave(w.b0, w.b2, w.L, Modulus(w.k), w.B);
}

WaveCase1 build_case1(double L, double b, double omega, Modulus k, Bsign s, bool allow_wide_k) {
    if (!(L > 0)) throw std::domain_error("build_case1: L must be positive");
    if (!(b > 0)) throw std::domain_error("build_case1: b must be positive");
    if (!(omega > -1.0 && omega < 1.0))
        throw std::domain_error("build_case1: omega must lie in (-1,1)");
    const double kk = k.value();
    if (!allow_wide_k && !(kk < inv_sqrt2))
        throw std::domain_error("build_case1: k must lie in (0, 1/sqrt(2)); "
                                "set the wide-k override to bypass");

    WaveCase1 w;
    w.L = L;
    w.b = b;
    w.omega = omega;
    w.k = kk;
    w.bsign = s;

    const double root = std::sqrt(omega * omega + 8.0);
    w.B = 0.5 * (-omega + branch_sign(s) * root);

    const double B = w.B, B2 = B * B, L2 = L * L, L4 = L2 * L2;
    const double K = complete_K(k), K2 = K * K, K4 = K2 * K2;
    const double k2 = kk * kk;
    const double g = B * omega - 1.0;
    if (!(g < 0)) throw std::domain_error("build_case1: B*omega must stay below 1");
    const double r = k2 * k2 - k2 + 1.0;
    const double so = std::pow(omega, 4) + omega * omega - 0.25;

    w.b2 = 48.0 * b * k2 * g * K2 / (B2 * L2);
    w.b0 = (-64.0 * g * g * b * (k2 - 0.5) * K2 +
            2.0 * ((omega * omega + 0.5) * B - 1.5 * omega) * B * L2) /
           (2.0 * B2 * L2 * g);
    w.A1 = -(B - omega) * (B - omega) * (-256.0 * b * b * r * K4 + L4) / (4.0 * B * L4);
    w.A2 = (1024.0 * b * b * r * std::pow(g, 4) * K4 -
            4.0 *
                (B2 * B * so + (-3.0 * std::pow(omega, 3) - 1.5 * omega) * B2 +
                 (2.75 * omega * omega + 1.0) * B - omega) *
                B * L4) /
           (8.0 * L4 * B2 * g * g);

    if (!(w.b0 < 0.0) || !(w.b0 + w.b2 < 0.0))
        throw std::domain_error("build_case1: profile is not negative for these parameters");
    return w;
}

WaveCase2 build_case2(double L, Modulus k, Bsign s) {
    if (!(L > 0)) throw std::domain_error("build_case2: L must be positive");

    WaveCase2 w;
    w.L = L;
    w.k = k.value();
    w.bsign = s;
    w.omega = 0.0;
    w.B = branch_sign(s) * std::sqrt(2.0);

    const double K = complete_K(k), K2 = K * K;
    const double k2 = w.k * w.k;
    const double r = k2 * k2 - k2 + 1.0;
    const double L2 = L * L;

    w.a = -L2 / (16.0 * K2 * std::sqrt(r));
    w.b = 1.0 / 6.0 - w.a;
    w.nu = 6.0 * w.a;
    w.b0 = -((32.0 * k2 - 16.0) * w.a * K2 + L2) / (2.0 * L2);
    w.b2 = 24.0 * K2 * w.a * k2 / L2;
    w.A1 = 0.0;
    w.A2 = 0.0;

    if (!(w.b0 < 0.0) || !(w.b2 < 0.0))
        throw std::domain_error("build_case2: profile is not negative for these parameters");
    return w;
}

namespace {

// residuals of the integrated traveling-wave system
//   -omega phi + psi + phi psi + a psi'' + b omega phi'' - A1 = 0
//   -omega psi + phi + psi^2/2 + c phi'' + d omega psi'' - A2 = 0
Residuals residual_generic(const CnoidalWave& wv, double a, double b, double c, double d,
                           double omega, double B, double A1, double A2, const VectorXd& x) {
    double scale1 = std::abs(A1), scale2 = std::abs(A2);
    double max1 = 0.0, max2 = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        CnoidalWave::Point p = wv.at(x[i]);
        const double phi = p.phi, pp = p.d2phi;
        const double t[5] = {-omega * phi, B * phi, B * phi * phi, a * B * pp, b * omega * pp};
        const double u[5] = {-omega * B * phi, phi, 0.5 * B * B * phi * phi, c * pp,
                             d * omega * B * pp};
        double r1 = -A1, r2 = -A2;
        for (double v : t) {
            r1 += v;
            scale1 = std::max(scale1, std::abs(v));
        }
        for (double v : u) {
            r2 += v;
            scale2 = std::max(scale2, std::abs(v));
        }
        max1 = std::max(max1, std::abs(r1));
        max2 = std::max(max2, std::abs(r2));
    }
    return {max1 / scale1, max2 / scale2};
}

}  // namespace

Residuals residual_system(const WaveCase1& w, const VectorXd& x) {
    return residual_generic(profile(w), -w.b, w.b, -w.b, w.b, w.omega, w.B, w.A1, w.A2, x);
}

Residuals residual_system(const WaveCase2& w, const VectorXd& x) {
    return residual_generic(profile(w), w.a, w.b, w.a, w.b, 0.0, w.B, 0.0, 0.0, x);
}

Conserved conserved_quantities(const VectorXd& eta, const VectorXd& u, double L, double a,
                               double b, double c) {
    const Eigen::Index N = eta.size();
    if (u.size() != N) throw std::invalid_argument("conserved_quantities: grid length mismatch");
    if (!(L > 0)) throw std::domain_error("conserved_quantities: L must be positive");
    MatrixXd D1 = fourier_d1(int(N), L);
    VectorXd etax = D1 * eta, ux = D1 * u;
    const double h = L / double(N);
    Conserved q{0, 0, 0, 0};
    for (Eigen::Index i = 0; i < N; ++i) {
        q.E += -c * etax[i] * etax[i] - a * ux[i] * ux[i] + eta[i] * eta[i] +
               (1.0 + eta[i]) * u[i] * u[i];
        q.F += eta[i] * u[i] + b * etax[i] * ux[i];
        q.M1 += eta[i];
        q.M2 += u[i];
    }
    q.E *= h;
    q.F *= h;
    q.M1 *= h;
    q.M2 *= h;
    return q;
}

namespace {

double norm2_phi_impl(double b0, double b2, double k, double L) {
    PeriodicIntegrals J = periodic_integrals(Modulus(k), L);
    return L * b0 * b0 + 2.0 * b0 * b2 * J.J1 + b2 * b2 * J.J2;
}

double norm2_dphi_impl(double b2, double k, double L) {
    PeriodicIntegrals J = periodic_integrals(Modulus(k), L);
    double K = complete_K(Modulus(k));
    return 16.0 * K * K * b2 * b2 * J.J3 / (L * L);
}

}  // namespace

double norm2_phi(const WaveCase1& w) { return norm2_phi_impl(w.b0, w.b2, w.k, w.L); }
double norm2_phi(const WaveCase2& w) { return norm2_phi_impl(w.b0, w.b2, w.k, w.L); }
double norm2_dphi(const WaveCase1& w) { return norm2_dphi_impl(w.b2, w.k, w.L); }
double norm2_dphi(const WaveCase2& w) { return norm2_dphi_impl(w.b2, w.k, w.L); }

}  // namespace cnoidal
