#pragma once

#include <map>
#include <string>

#include "cnoidal/hill.hpp"
#include "cnoidal/waves.hpp"

namespace cnoidal {

// Richardson-extrapolated central difference in omega of a derived Case-1
// parameter ("B", "b0", "b2", "A1", "A2"). For "B" the analytic derivative
// -1/2 +- omega/(2 sqrt(omega^2+8)) serves as an accuracy sentinel.
double d_omega(const std::string& name, const WaveCase1& w, double h = 1e-4);

struct StabilityReportCase1 {
    double I;        // I0 + I1 + I2
    double I0, I1, I2;
    double dOmega;   // omega step used for the derivatives
    double I_alt;    // variant keeping the printed first coefficient of the I2 bracket
};

StabilityReportCase1 index_case1(const WaveCase1& w);

// Direct grid evaluation of the defining inner product (L Phi, Phi) with
// Phi = d/domega (phi, psi) by finite differences.
double index_direct(const WaveCase1& w, int N = 256);

struct BstarResult {
    double L;
    double bstar;                 // supremum of the per-point thresholds
    VectorXd omegas, ks;
    Eigen::MatrixXd thresholds;   // omegas.size() x ks.size()
};

BstarResult find_bstar_detail(double L, const VectorXd& omegas, const VectorXd& ks, Bsign s);
double find_bstar(double L, const VectorXd& omegas, const VectorXd& ks, Bsign s);
double find_bstar(double L);  // default grids, B > 0

struct StabilityReportCase2 {
    double bound;         // (8/3) J1cal + (1/3) J3cal
    double J1cal, J3cal;
    double alpha0_lower;  // 1 - b0
    std::map<std::string, double> inner;
};

StabilityReportCase2 bound_case2(const WaveCase2& w);

// Discretized cross-checks: (L3^+ f0, f0) with the phi'-kernel removed, and
// the (L4^{-1} f0, f0) solve, f0 = phi - b phi''.
double J1cal_discrete(const WaveCase2& w, int N = 256);
double J2cal_discrete(const WaveCase2& w, int N = 256);

struct H2Verdict {
    double I_or_bound;
    int sign;                // -1, 0, +1
    double orth_residual;    // (L Phi, Psi') as a cancellation-scaled residual
    double kernel_residual;  // L applied to (phi', B phi'), same scaling
    double h4_value;         // the scalar nondegeneracy quantity; must be nonzero
    bool pass;
};

H2Verdict check_H2(const WaveCase1& w);
H2Verdict check_H2(const WaveCase2& w);

}  // namespace cnoidal
