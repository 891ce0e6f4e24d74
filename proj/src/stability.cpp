#include "cnoidal/stability.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/numerics.hpp"

namespace cnoidal {

namespace {

struct Case1Derivs {
    double dB, db0, db2, dA1, dA2, dF;
};

double richardson_of(double fp, double fm, double fp2, double fm2, double h) {
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp2 - fm2) / h;
    return (4.0 * d2 - d1) / 3.0;
}

Case1Derivs omega_derivs(const WaveCase1& w, double h) {
    if (std::abs(w.omega) + 2.0 * h >= 1.0)
        throw std::domain_error("omega_derivs: omega too close to +-1 for the requested step");

    const auto at = [&](double om) {
        return build_case1(w.L, w.b, om, Modulus(w.k), w.bsign);
    };
    const WaveCase1 wp = at(w.omega + h);
    const WaveCase1 wm = at(w.omega - h);
    const WaveCase1 wp2 = at(w.omega + 0.5 * h);
    const WaveCase1 wm2 = at(w.omega - 0.5 * h);

    const auto rich = [&](const auto& field) {
        return richardson_of(field(wp), field(wm), field(wp2), field(wm2), h);
    };

    Case1Derivs d;
    d.dB = rich([](const WaveCase1& v) { return v.B; });
    d.db0 = rich([](const WaveCase1& v) { return v.b0; });
    d.db2 = rich([](const WaveCase1& v) { return v.b2; });
    d.dA1 = rich([](const WaveCase1& v) { return v.A1; });
    d.dA2 = rich([](const WaveCase1& v) { return v.A2; });
    d.dF = rich([](const WaveCase1& v) {
        return v.B * (norm2_phi(v) + v.b * norm2_dphi(v));
    });

    const double s = (w.bsign == Bsign::plus) ? 1.0 : -1.0;
    const double dB_exact = -0.5 + s * w.omega / (2.0 * std::sqrt(w.omega * w.omega + 8.0));
    if (std::abs(d.dB - dB_exact) > 1e-8 * std::max(1.0, std::abs(dB_exact))) {
        std::ostringstream msg;
        msg << "omega_derivs: finite-difference dB/domega " << d.dB
            << " disagrees with the analytic value " << dB_exact;
        throw std::runtime_error(msg.str());
    }
    d.dB = dB_exact;
    return d;
}

// Grid samples of d/domega (phi, B phi) at fixed (L, b, k), Richardson in omega.
VectorXd variation_grid(const WaveCase1& w, const VectorXd& x, double h) {
    if (std::abs(w.omega) + 2.0 * h >= 1.0)
        throw std::domain_error("variation_grid: omega too close to +-1 for the requested step");

    const int N = static_cast<int>(x.size());
    const auto sample = [&](double om) {
        const WaveCase1 v = build_case1(w.L, w.b, om, Modulus(w.k), w.bsign);
        const CnoidalWave cw = profile(v);
        VectorXd g(2 * N);
        for (int j = 0; j < N; ++j) {
            const double p = cw.phi(x[j]);
            g[j] = p;
            g[N + j] = v.B * p;
        }
        return g;
    };
    const VectorXd gp = sample(w.omega + h);
    const VectorXd gm = sample(w.omega - h);
    const VectorXd gp2 = sample(w.omega + 0.5 * h);
    const VectorXd gm2 = sample(w.omega - 0.5 * h);

    const VectorXd d1 = (gp - gm) / (2.0 * h);
    const VectorXd d2 = (gp2 - gm2) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

double d_omega(const std::string& name, const WaveCase1& w, double h) {
    const Case1Derivs d = omega_derivs(w, h);
    if (name == "B") return d.dB;
    if (name == "b0") return d.db0;
    if (name == "b2") return d.db2;
    if (name == "A1") return d.dA1;
    if (name == "A2") return d.dA2;
    if (name == "F") return d.dF;
    throw std::invalid_argument("d_omega: unknown parameter '" + name + "'");
}

StabilityReportCase1 index_case1(const WaveCase1& w) {
    if (std::abs(w.omega) > 0.99)
        throw std::domain_error("index_case1: |omega| must not exceed 0.99");
    if (w.k < 0.005 || w.k > 0.705)
        throw std::domain_error("index_case1: k must lie in [0.005, 0.705]");

    const double h = 1e-4;
    const Case1Derivs d = omega_derivs(w, h);
    const PeriodicIntegrals pj = periodic_integrals(Modulus(w.k), w.L);
    const double J1 = pj.J1;
    const double L = w.L;

    StabilityReportCase1 rep;
    rep.dOmega = h;
    rep.I0 = d.dF;
    rep.I1 = d.dA2 * (L * d.db0 + J1 * d.db2);
    rep.I2 = d.dA1 * (L * w.B * d.db0 + L * w.b0 * d.dB + J1 * w.B * d.db2 + J1 * w.b2 * d.dB);
    const double I2_alt =
        d.dA1 * (L * w.b * d.db0 + L * w.b0 * d.dB + J1 * w.B * d.db2 + J1 * w.b2 * d.dB);
    rep.I = rep.I0 + rep.I1 + rep.I2;
    rep.I_alt = rep.I0 + rep.I1 + I2_alt;
    return rep;
}

double index_direct(const WaveCase1& w, int N) {
    const LOperator lop = assemble_L(w, N);
    const VectorXd Phi = variation_grid(w, lop.x, 1e-4);
    return (w.L / N) * Phi.dot(lop.M * Phi);
}

BstarResult find_bstar_detail(double L, const VectorXd& omegas, const VectorXd& ks, Bsign s) {
    BstarResult res;
    res.L = L;
    res.omegas = omegas;
    res.ks = ks;
    res.thresholds.resize(omegas.size(), ks.size());
    res.bstar = 0.0;

    const double lo = 1e-6 * L * L;
    const double hi = 100.0 * L * L;
    for (int i = 0; i < omegas.size(); ++i) {
        for (int j = 0; j < ks.size(); ++j) {
            const double om = omegas[i];
            const double k = ks[j];
            const auto f = [&](double b) {
                return index_case1(build_case1(L, b, om, Modulus(k), s)).I;
            };
            const double flo = f(lo);
            const double fhi = f(hi);
            if (flo * fhi > 0.0) {
                std::ostringstream msg;
                msg << "find_bstar: no sign change of the index on [" << lo << ", " << hi
                    << "] at omega=" << om << ", k=" << k << ": I(" << lo << ")=" << flo
                    << ", I(" << hi << ")=" << fhi;
                throw std::runtime_error(msg.str());
            }
            const double b = bisect(f, lo, hi, 1e-10 * L * L);
            res.thresholds(i, j) = b;
            if (b > res.bstar) res.bstar = b;
        }
    }
    return res;
}

double find_bstar(double L, const VectorXd& omegas, const VectorXd& ks, Bsign s) {
    return find_bstar_detail(L, omegas, ks, s).bstar;
}

double find_bstar(double L) {
    const VectorXd omegas = VectorXd::LinSpaced(21, -0.99, 0.99);
    const VectorXd ks = VectorXd::LinSpaced(15, 0.01, 0.70);
    return find_bstar(L, omegas, ks, Bsign::plus);
}

StabilityReportCase2 bound_case2(const WaveCase2& w) {
    if (1.0 - w.b0 <= 0.0)
        throw std::domain_error("bound_case2: requires 1 - b0 > 0");

    const double k = w.k;
    const double a = w.a;
    const double b = w.b;
    const Modulus mk(k);
    const double K = complete_K(mk);
    const double r = k * k * k * k - k * k + 1.0;
    const double da_dk = a * (-2.0 * dK_dk(mk) / K - (4.0 * k * k * k - 2.0 * k) / (2.0 * r));

    const double n0 = norm2_phi(w);
    const double n1 = norm2_dphi(w);

    const double h = std::min(1e-4, 0.45 * std::min(k, 1.0 - k));
    const auto at = [&](double kk) { return build_case2(w.L, Modulus(kk), w.bsign); };
    const WaveCase2 wp = at(k + h), wm = at(k - h), wp2 = at(k + 0.5 * h), wm2 = at(k - 0.5 * h);
    const double dn0 =
        richardson_of(norm2_phi(wp), norm2_phi(wm), norm2_phi(wp2), norm2_phi(wm2), h);
    const double dn1 =
        richardson_of(norm2_dphi(wp), norm2_dphi(wm), norm2_dphi(wp2), norm2_dphi(wm2), h);

    // (phi_a, phi) = (da/dk)^{-1} (1/2) d/dk ||phi||^2, and likewise with -1/2
    // for (phi_a, phi'') since (phi_a, phi'') = -(1/2) d/da ||phi'||^2.
    const double pap = 0.5 * dn0 / da_dk;
    const double papp = -0.5 * dn1 / da_dk;

    StabilityReportCase2 rep;
    rep.J1cal = (a + b) * pap - b * (a + b) * papp - n0 - b * n1;
    const double q = b / (2.0 * a);
    const double t = 1.0 + b / a;
    rep.J3cal = -(b * b) / (2.0 * a) * n1 + (t * t / (1.0 - w.b0) - (2.0 - q) * q) * n0;
    rep.bound = (8.0 / 3.0) * rep.J1cal + (1.0 / 3.0) * rep.J3cal;
    rep.alpha0_lower = 1.0 - w.b0;
    rep.inner = {
        {"phi_a,phi", pap},
        {"phi_a,phi_dd", papp},
        {"norm2_phi", n0},
        {"norm2_dphi", n1},
        {"da_dk", da_dk},
        {"dk_norm2_phi", dn0},
        {"dk_norm2_dphi", dn1},
    };
    return rep;
}

namespace {

VectorXd f0_grid(const WaveCase2& w, const VectorXd& x) {
    const CnoidalWave cw = profile(w);
    VectorXd f0(x.size());
    for (int j = 0; j < x.size(); ++j) {
        const auto p = cw.at(x[j]);
        f0[j] = p.phi - w.b * p.d2phi;
    }
    return f0;
}

}  // namespace

double J1cal_discrete(const WaveCase2& w, int N) {
    const HillOperator op = make_L3(w);
    const MatrixXd M = discretize(op, N);
    const VectorXd x = periodic_grid(N, w.L);
    const VectorXd f0 = f0_grid(w, x);

    const CnoidalWave cw = profile(w);
    VectorXd dphi(N);
    for (int j = 0; j < N; ++j) dphi[j] = cw.dphi(x[j]);
    dphi.normalize();

    // L3 phi' = 0: invert on the complement of the phi'-aligned mode only.
    const EigResult eg = eig_symmetric(M);
    int kidx = 0;
    double best = -1.0;
    for (int i = 0; i < N; ++i) {
        const double al = std::abs(eg.vectors.col(i).dot(dphi));
        if (al > best) {
            best = al;
            kidx = i;
        }
    }
    VectorXd z = VectorXd::Zero(N);
    for (int i = 0; i < N; ++i) {
        if (i == kidx) continue;
        z += eg.vectors.col(i) * (eg.vectors.col(i).dot(f0) / eg.values[i]);
    }
    return (w.L / N) * z.dot(f0);
}

double J2cal_discrete(const WaveCase2& w, int N) {
    const MatrixXd M = discretize(make_L4(w), N);
    const VectorXd x = periodic_grid(N, w.L);
    const VectorXd f0 = f0_grid(w, x);
    const VectorXd z = M.ldlt().solve(f0);
    return (w.L / N) * z.dot(f0);
}

namespace {

double kernel_residual_of(const MatrixXd& M, const VectorXd& v) {
    const VectorXd num = (M * v).cwiseAbs();
    const VectorXd den = M.cwiseAbs() * v.cwiseAbs();
    return num.maxCoeff() / den.maxCoeff();
}

double orth_residual_of(const VectorXd& u, const VectorXd& v) {
    const double num = std::abs(u.dot(v));
    const double den = u.cwiseProduct(v).cwiseAbs().sum();
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

H2Verdict check_H2(const WaveCase1& w) {
    const StabilityReportCase1 rep = index_case1(w);
    const int N = 256;
    const LOperator lop = assemble_L(w, N);
    const CnoidalWave cw = profile(w);

    VectorXd psip(2 * N);
    for (int j = 0; j < N; ++j) {
        const double dp = cw.dphi(lop.x[j]);
        psip[j] = dp;
        psip[N + j] = w.B * dp;
    }

    const VectorXd Phi = variation_grid(w, lop.x, 1e-4);
    const VectorXd LPhi = lop.M * Phi;

    const Case1Derivs d = omega_derivs(w, 1e-4);
    const PeriodicIntegrals pj = periodic_integrals(Modulus(w.k), w.L);
    const double F = w.B * (norm2_phi(w) + w.b * norm2_dphi(w));
    const double M1 = w.L * w.b0 + w.b2 * pj.J1;
    const double M2 = w.B * M1;
    const double h4 = 2.0 * F + d.dA2 * M1 + d.dA1 * M2;
    const double h4_scale = 2.0 * std::abs(F) + std::abs(d.dA2 * M1) + std::abs(d.dA1 * M2);

    H2Verdict v;
    v.I_or_bound = rep.I;
    v.sign = rep.I < 0.0 ? -1 : (rep.I > 0.0 ? 1 : 0);
    v.orth_residual = orth_residual_of(LPhi, psip);
    v.kernel_residual = kernel_residual_of(lop.M, psip);
    v.h4_value = h4;
    v.pass = rep.I < 0.0 && v.orth_residual <= 1e-8 && v.kernel_residual <= 1e-8 &&
             std::abs(h4) > 1e-10 * h4_scale;
    return v;
}

H2Verdict check_H2(const WaveCase2& w) {
    const StabilityReportCase2 rep = bound_case2(w);
    const int N = 256;
    const LOperator lop = assemble_L(w, N);
    const CnoidalWave cw = profile(w);

    VectorXd psip(2 * N);
    for (int j = 0; j < N; ++j) {
        const double dp = cw.dphi(lop.x[j]);
        psip[j] = dp;
        psip[N + j] = w.B * dp;
    }

    // L Phi = (B f0, f0) for the scaled variational direction, f0 = phi - b phi''.
    const VectorXd f0 = f0_grid(w, lop.x);
    VectorXd LPhi(2 * N);
    LPhi.head(N) = w.B * f0;
    LPhi.tail(N) = f0;

    const double F = w.B * (norm2_phi(w) + w.b * norm2_dphi(w));
    const double h4 = 2.0 * F;

    H2Verdict v;
    v.I_or_bound = rep.bound;
    v.sign = rep.bound < 0.0 ? -1 : (rep.bound > 0.0 ? 1 : 0);
    v.orth_residual = orth_residual_of(LPhi, psip);
    v.kernel_residual = kernel_residual_of(lop.M, psip);
    v.h4_value = h4;
    v.pass = rep.bound < 0.0 && v.orth_residual <= 1e-8 && v.kernel_residual <= 1e-8 &&
             std::abs(h4) > 0.0;
    return v;
}

}  // namespace cnoidal
