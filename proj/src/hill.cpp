#include "cnoidal/hill.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cnoidal {

HillOperator::HillOperator(double p, double q0, double q1, CnoidalWave wave)
    : p_(p), q0_(q0), q1_(q1), wave_(std::move(wave)) {
    if (!(p > 0)) throw std::domain_error("HillOperator: p must be positive");
}

double HillOperator::apply_to_dphi(double x) const {
    CnoidalWave::Point pt = wave_.at(x);
    return -p_ * pt.d3phi + (q0_ + q1_ * pt.phi) * pt.dphi;
}

HillOperator make_L1(const WaveCase1& w) {
    double l1 = (4.0 + 2.0 * w.B * w.omega) / (2.0 * w.b * (1.0 - w.omega * w.omega));
    return HillOperator(1.0, 1.0 / w.b, l1, profile(w));
}

HillOperator make_L2(const WaveCase1& w) {
    double l2 = (-2.0 + 2.0 * w.B * w.omega) / (2.0 * w.b * (1.0 - w.omega * w.omega));
    return HillOperator(1.0, 1.0 / w.b, l2, profile(w));
}

HillOperator make_L3(const WaveCase2& w) { return HillOperator(-w.a, 1.0, 2.0, profile(w)); }

HillOperator make_L4(const WaveCase2& w) { return HillOperator(-w.a, 1.0, -1.0, profile(w)); }

ThetaReport theta_constant(const HillOperator& op, const CnoidalWave& wave,
                           const ToleranceSpec& tol) {
    const double L = op.L();

    // the IVP encodes the second solution around phi'; op must annihilate phi'
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < 33; ++j) {
        double x = L * (j + 0.21) / 33.0;
        CnoidalWave::Point pt = wave.at(x);
        double lead = op.p() * pt.d3phi, pot = op.q(x) * pt.dphi;
        worst = std::max(worst, std::abs(-lead + pot));
        scale = std::max({scale, std::abs(lead), std::abs(pot)});
    }
    if (worst > 1e-8 * scale)
        throw std::invalid_argument("theta_constant: operator does not annihilate phi'");

    const double p = op.p();
    OdeRhs rhs = [&op, p](double x, const VectorXd& y, VectorXd& dy) {
        dy[0] = y[1];
        dy[1] = op.q(x) / p * y[0];
    };
    const double phi2 = wave.phi2_at_0();
    VectorXd y0(2);
    y0 << -1.0 / phi2, 0.0;
    IvpStats st;
    VectorXd yend = integrate_ivp(rhs, y0, 0.0, L, tol, &st);

    ThetaReport rep;
    rep.phi2_at_0 = phi2;
    rep.yL = yend[0];
    rep.ypL = yend[1];
    rep.theta = yend[1] / phi2;
    rep.steps = st.accepted;
    rep.max_scaled_error = st.max_scaled_error;
    return rep;
}

MatrixXd discretize(const HillOperator& op, int N) {
    MatrixXd M = -op.p() * fourier_d2(N, op.L());
    VectorXd x = periodic_grid(N, op.L());
    for (int j = 0; j < N; ++j) M(j, j) += op.q(x[j]);
    return M;
}

SpectrumReport spectrum(const HillOperator& op, int N, int m) {
    if (N < 64 || N % 2 != 0) throw std::invalid_argument("spectrum: N must be even and >= 64");
    if (m < 1 || m > N) throw std::invalid_argument("spectrum: m out of range");

    EigResult fine = eig_symmetric(discretize(op, 2 * N));
    EigResult base = eig_symmetric(discretize(op, N));

    double err = 0.0;
    for (int i = 0; i < m; ++i) err = std::max(err, std::abs(base.values[i] - fine.values[i]));
    const double tol_zero = std::max(1e-6, 10.0 * err);

    SpectrumReport rep;
    rep.N = N;
    rep.tol_zero = tol_zero;
    rep.eigenvalues = base.values.head(m);
    rep.n_count = 0;
    rep.z_count = 0;
    int zero_idx = 0;
    for (int i = 0; i < N; ++i) {
        if (base.values[i] < -tol_zero) rep.n_count++;
        if (std::abs(base.values[i]) <= tol_zero) rep.z_count++;
        if (std::abs(base.values[i]) < std::abs(base.values[zero_idx])) zero_idx = i;
    }

    VectorXd x = periodic_grid(N, op.L());
    VectorXd d(N);
    for (int j = 0; j < N; ++j) d[j] = op.wave().dphi(x[j]);
    double dn = d.norm();
    rep.zero_mode_alignment =
        dn > 0 ? std::abs(base.vectors.col(zero_idx).dot(d)) / dn : 0.0;
    return rep;
}

namespace {

LOperator assemble_generic(const CnoidalWave& wv, double a, double c, double b_omega,
                           double omega, int N) {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("assemble_L: N must be even");
    LOperator op;
    op.N = N;
    op.L = wv.L();
    op.x = periodic_grid(N, op.L);
    MatrixXd D2 = fourier_d2(N, op.L);
    op.M = MatrixXd::Zero(2 * N, 2 * N);

    op.M.topLeftCorner(N, N) = c * D2;
    op.M.bottomRightCorner(N, N) = a * D2;
    op.M.topRightCorner(N, N) = b_omega * D2;
    for (int j = 0; j < N; ++j) {
        double phi = wv.phi(op.x[j]);
        op.M(j, j) += 1.0;
        op.M(N + j, N + j) += 1.0 + phi;
        op.M(j, N + j) += wv.B() * phi - omega;
    }
    op.M.bottomLeftCorner(N, N) = op.M.topRightCorner(N, N);
    return op;
}

}  // namespace

LOperator assemble_L(const WaveCase1& w, int N) {
    return assemble_generic(profile(w), -w.b, -w.b, w.b * w.omega, w.omega, N);
}

LOperator assemble_L(const WaveCase2& w, int N) {
    return assemble_generic(profile(w), w.a, w.a, 0.0, 0.0, N);
}

Eigen::Matrix2d case1_transform(const WaveCase1& w) {
    const double b = w.b, om = w.omega, B = w.B;
    const double sm = std::sqrt(b * (1.0 - om)), sp = std::sqrt(b * (1.0 + om));

    Eigen::Matrix2d T;
    T << 1, 1, -1, 1;
    T *= 1.0 / std::sqrt(2.0);
    Eigen::Matrix2d S = Eigen::Vector2d(sm, sp).asDiagonal();

    // the scaled quadratic-form matrix whose eigenvalues are the potential
    // coefficients of L1 and L2
    Eigen::Matrix2d Nm;
    const double off = 1.0 / (2.0 * b * std::sqrt((1.0 - om) * (1.0 + om)));
    Nm << (B + 0.5) / (b * (1.0 - om)), off, off, (0.5 - B) / (b * (1.0 + om));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Nm);

    // ascending order pairs column 1 with l1 (l1 > l2 always)
    Eigen::Matrix2d V;
    V.col(0) = es.eigenvectors().col(1);
    V.col(1) = es.eigenvectors().col(0);
    return V.transpose() * S * T;
}

Eigen::Matrix2d case2_transform(Bsign s) {
    const double r3 = 1.0 / std::sqrt(3.0), r23 = std::sqrt(2.0 / 3.0);
    Eigen::Matrix2d Q;
    if (s == Bsign::plus)
        Q << r3, r23, -r23, r3;
    else
        Q << -r3, r23, r23, r3;
    return Q;
}

namespace {

double two_route_residual(const LOperator& direct, const Eigen::Matrix2d& P,
                          const HillOperator& opA, const HillOperator& opB, const VectorXd& f1,
                          const VectorXd& f2, bool transpose_back) {
    const int N = direct.N;
    if (std::abs(P.determinant()) < 1e-12)
        throw std::runtime_error("similarity_check: transform is singular");

    VectorXd f(2 * N);
    f << f1, f2;
    VectorXd route1 = direct.M * f;

    MatrixXd HA = discretize(opA, N), HB = discretize(opB, N);
    VectorXd g1 = P(0, 0) * f1 + P(0, 1) * f2;
    VectorXd g2 = P(1, 0) * f1 + P(1, 1) * f2;
    VectorXd h1 = HA * g1, h2 = HB * g2;
    Eigen::Matrix2d Back = transpose_back ? P.transpose() : Eigen::Matrix2d(P.inverse());
    VectorXd route2(2 * N);
    route2.head(N) = Back(0, 0) * h1 + Back(0, 1) * h2;
    route2.tail(N) = Back(1, 0) * h1 + Back(1, 1) * h2;

    double fmax = std::max(f1.cwiseAbs().maxCoeff(), f2.cwiseAbs().maxCoeff());
    if (fmax == 0.0) return 0.0;
    return (route1 - route2).cwiseAbs().maxCoeff() / fmax;
}

}  // namespace

double similarity_check(const WaveCase1& w, const VectorXd& f1, const VectorXd& f2) {
    if (f1.size() != f2.size()) throw std::invalid_argument("similarity_check: length mismatch");
    const int N = int(f1.size());
    return two_route_residual(assemble_L(w, N), case1_transform(w), make_L1(w), make_L2(w), f1,
                              f2, /*transpose_back=*/true);
}

double similarity_check(const WaveCase2& w, const VectorXd& f1, const VectorXd& f2) {
    if (f1.size() != f2.size()) throw std::invalid_argument("similarity_check: length mismatch");
    const int N = int(f1.size());
    Eigen::Matrix2d Q = case2_transform(w.bsign);
    double defect = (Q * Q.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
    if (defect > 1e-12)
        throw std::runtime_error("similarity_check: transform is not orthogonal");
    return two_route_residual(assemble_L(w, N), Q, make_L3(w), make_L4(w), f1, f2,
                              /*transpose_back=*/true);
}

namespace {

InertiaReport inertia_generic(const LOperator& direct, const CnoidalWave& wv,
                              const SpectrumReport& sA, const SpectrumReport& sB) {
    const int N = direct.N;
    const int hill_n = sA.n_count + sB.n_count;
    const int hill_z = sA.z_count + sB.z_count;

    EigResult eg = eig_symmetric(direct.M);
    const double tol_zero = std::max(sA.tol_zero, sB.tol_zero);
    int dn = 0, dz = 0, zero_idx = 0;
    for (int i = 0; i < 2 * N; ++i) {
        if (eg.values[i] < -tol_zero) dn++;
        if (std::abs(eg.values[i]) <= tol_zero) dz++;
        if (std::abs(eg.values[i]) < std::abs(eg.values[zero_idx])) zero_idx = i;
    }
    if (dn != hill_n || dz != hill_z) {
        std::ostringstream msg;
        msg << "inertia_of_L: Sylvester route (n=" << hill_n << ", z=" << hill_z
            << ") disagrees with direct route (n=" << dn << ", z=" << dz << ")";
        throw std::runtime_error(msg.str());
    }

    VectorXd kv(2 * N);
    for (int j = 0; j < N; ++j) {
        double dp = wv.dphi(direct.x[j]);
        kv[j] = dp;
        kv[N + j] = wv.B() * dp;
    }
    InertiaReport rep;
    rep.n = dn;
    rep.z = dz;
    rep.tol_zero = tol_zero;
    rep.alignment = std::abs(eg.vectors.col(zero_idx).dot(kv)) / kv.norm();
    rep.eigenvalues = eg.values.head(8);
    return rep;
}

}  // namespace

InertiaReport inertia_of_L(const WaveCase1& w, int N) {
    return inertia_generic(assemble_L(w, N), profile(w), spectrum(make_L1(w), N),
                           spectrum(make_L2(w), N));
}

InertiaReport inertia_of_L(const WaveCase2& w, int N) {
    return inertia_generic(assemble_L(w, N), profile(w), spectrum(make_L3(w), N),
                           spectrum(make_L4(w), N));
}

}  // namespace cnoidal
