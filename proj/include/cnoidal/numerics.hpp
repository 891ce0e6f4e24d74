#pragma once

#include <Eigen/Dense>
#include <functional>

namespace cnoidal {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ToleranceSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    long max_steps = 2000000;
};

struct IvpStats {
    long accepted = 0;
    long rejected = 0;
    double max_scaled_error = 0.0;  // largest accepted local error, scaled by tol
};

using OdeRhs = std::function<void(double, const VectorXd&, VectorXd&)>;

// Adaptive Dormand-Prince 5(4) over [x0, x1], x1 >= x0. Returns y(x1).
VectorXd integrate_ivp(const OdeRhs& rhs, VectorXd y0, double x0, double x1,
                       const ToleranceSpec& tol = {}, IvpStats* stats = nullptr);

struct EigResult {
    VectorXd values;   // ascending
    MatrixXd vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

EigResult eig_symmetric(const MatrixXd& M);

// Adaptive Simpson; tol is an absolute error target.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12);

// Requires f(lo), f(hi) of opposite sign; tol is an absolute bracket width.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 1e-10);

// Two-level Richardson extrapolation of central differences.
double richardson_diff(const std::function<double(double)>& f, double x, double h = 1e-5);

// Collocation grid x_j = j L / N, j = 0..N-1.
VectorXd periodic_grid(int N, double L);

// Fourier differentiation matrices on the periodic_grid points (N even).
MatrixXd fourier_d1(int N, double L);
MatrixXd fourier_d2(int N, double L);

}  // namespace cnoidal
