#pragma once

#include <Eigen/Dense>

#include "cnoidal/numerics.hpp"
#include "cnoidal/waves.hpp"

namespace cnoidal {

// Scalar Hill operator -p y'' + (q0 + q1 phi(x)) y with the L-periodic potential
// carried by a CnoidalWave.
class HillOperator {
  public:
    HillOperator(double p, double q0, double q1, CnoidalWave wave);

    double p() const { return p_; }
    double q0() const { return q0_; }
    double q1() const { return q1_; }
    double q(double x) const { return q0_ + q1_ * wave_.phi(x); }
    double L() const { return wave_.L(); }
    const CnoidalWave& wave() const { return wave_; }

    // op applied to phi', using analytic derivatives of the profile
    double apply_to_dphi(double x) const;

  private:
    double p_, q0_, q1_;
    CnoidalWave wave_;
};

HillOperator make_L1(const WaveCase1& w);
HillOperator make_L2(const WaveCase1& w);
HillOperator make_L3(const WaveCase2& w);
HillOperator make_L4(const WaveCase2& w);

struct ThetaReport {
    double theta;
    double phi2_at_0;
    double yL, ypL;        // y(L), y'(L)
    long steps;            // accepted integrator steps
    double max_scaled_error;
};

// Integrates -p y'' + q y = 0 from y(0) = -1/phi''(0), y'(0) = 0 and returns
// Theta = y'(L)/phi''(0). Requires op to annihilate phi'.
ThetaReport theta_constant(const HillOperator& op, const CnoidalWave& wave,
                           const ToleranceSpec& tol = {});

// Symmetric Fourier collocation matrix of op on N points.
MatrixXd discretize(const HillOperator& op, int N);

struct SpectrumReport {
    VectorXd eigenvalues;  // lowest m at grid size N
    int n_count, z_count;
    double zero_mode_alignment;
    int N;
    double tol_zero;
};

SpectrumReport spectrum(const HillOperator& op, int N = 256, int m = 8);

struct LOperator {
    MatrixXd M;   // 2N x 2N symmetric collocation matrix, blocks of size N
    VectorXd x;   // collocation grid
    int N;
    double L;
};

LOperator assemble_L(const WaveCase1& w, int N = 256);
LOperator assemble_L(const WaveCase2& w, int N = 256);

// 2x2 transforms diagonalizing the quadratic form of the 2x2 operator.
// Case 1 is a congruence (P^T diag(L1,L2) P); Case 2 is orthogonal.
Eigen::Matrix2d case1_transform(const WaveCase1& w);
Eigen::Matrix2d case2_transform(Bsign s);

// Max-norm residual between the direct application of the 2x2 operator and the
// transform route, relative to the input magnitude.
double similarity_check(const WaveCase1& w, const VectorXd& f1, const VectorXd& f2);
double similarity_check(const WaveCase2& w, const VectorXd& f1, const VectorXd& f2);

struct InertiaReport {
    int n, z;
    double alignment;       // |<v0, (phi',B phi')>| for the near-zero mode of the 2x2 operator
    double tol_zero;
    VectorXd eigenvalues;   // lowest eigenvalues of the assembled 2x2 operator
};

InertiaReport inertia_of_L(const WaveCase1& w, int N = 256);
InertiaReport inertia_of_L(const WaveCase2& w, int N = 256);

}  // namespace cnoidal
