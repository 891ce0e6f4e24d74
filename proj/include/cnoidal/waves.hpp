#pragma once

#include <Eigen/Dense>

#include "cnoidal/elliptic.hpp"

namespace cnoidal {

using Eigen::VectorXd;

enum class Bsign { plus, minus };

// Case 1: a = c = -b, d = b, free (L, b, omega, k) and the B branch.
struct WaveCase1 {
    double L, b, omega, k;
    Bsign bsign;
    double B, b0, b2, A1, A2;
};

// Case 2: a = c given by the a(k) relation, b = d = 1/6 - a, omega = 0, B = +-sqrt(2).
struct WaveCase2 {
    double L, k;
    Bsign bsign;
    double a, b, omega, B, b0, b2, A1, A2, nu;
};

// phi(x) = b0 + b2 cn^2(lambda x, k), lambda = 2K(k)/L; psi = B phi.
class CnoidalWave {
  public:
    CnoidalWave(double b0, double b2, double L, Modulus k, double B);

    struct Point {
        double phi, dphi, d2phi, d3phi;
    };
    Point at(double x) const;

    double phi(double x) const { return at(x).phi; }
    double dphi(double x) const { return at(x).dphi; }
    double d2phi(double x) const { return at(x).d2phi; }
    double d3phi(double x) const { return at(x).d3phi; }
    double psi(double x) const { return B_ * at(x).phi; }

    double phi2_at_0() const { return -2.0 * lambda_ * lambda_ * b2_; }
    double b0() const { return b0_; }
    double b2() const { return b2_; }
    double L() const { return L_; }
    double k() const { return k_; }
    double B() const { return B_; }
    double lambda() const { return lambda_; }

  private:
    double b0_, b2_, L_, k_, B_, lambda_;
};

CnoidalWave profile(const WaveCase1& w);
CnoidalWave profile(const WaveCase2& w);

WaveCase1 build_case1(double L, double b, double omega, Modulus k, Bsign s,
                      bool allow_wide_k = false);
WaveCase2 build_case2(double L, Modulus k, Bsign s);

struct Residuals {
    double r1, r2;  // max |equation residual| / max |term|, per equation
};
Residuals residual_system(const WaveCase1& w, const VectorXd& x);
Residuals residual_system(const WaveCase2& w, const VectorXd& x);

struct Conserved {
    double E, F, M1, M2;
};

// eta, u sampled on the uniform periodic grid x_j = j L / N.
Conserved conserved_quantities(const VectorXd& eta, const VectorXd& u, double L, double a,
                               double b, double c);

double norm2_phi(const WaveCase1& w);   // int_0^L phi^2
double norm2_phi(const WaveCase2& w);
double norm2_dphi(const WaveCase1& w);  // int_0^L phi'^2
double norm2_dphi(const WaveCase2& w);

}  // namespace cnoidal
