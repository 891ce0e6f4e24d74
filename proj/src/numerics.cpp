#include "cnoidal/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnoidal {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

VectorXd integrate_ivp(const OdeRhs& rhs, VectorXd y0, double x0, double x1,
                       const ToleranceSpec& tol, IvpStats* stats) {
    if (!(tol.abs_tol > 0) || !(tol.rel_tol > 0) || tol.max_steps < 1)
        throw std::invalid_argument("integrate_ivp: invalid ToleranceSpec");
    if (x1 < x0) throw std::invalid_argument("integrate_ivp: span must be forward");

    const Eigen::Index n = y0.size();
    const double span = x1 - x0;
    VectorXd y = std::move(y0);
    if (span == 0.0) return y;

    VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n), err(n);
    double x = x0;
    rhs(x, y, k1);

    double h = span / 100.0;
    double facold = 1e-4;
    bool rejected = false;
    IvpStats st;

    while (x < x1) {
        if (st.accepted + st.rejected >= tol.max_steps)
            throw std::runtime_error("integrate_ivp: max_steps exceeded");
        if (!(h > span * 1e-15))
            throw std::runtime_error("integrate_ivp: step size underflow");
        if (x + h > x1) h = x1 - x;

        yt = y + h * (a21 * k1);
        rhs(x + c2 * h, yt, k2);
        yt = y + h * (a31 * k1 + a32 * k2);
        rhs(x + c3 * h, yt, k3);
        yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(x + c4 * h, yt, k4);
        yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(x + c5 * h, yt, k5);
        yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(x + h, yt, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(x + h, ynew, k7);
        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double errnorm = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double sc = tol.abs_tol + tol.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double r = err[i] / sc;
            errnorm += r * r;
        }
        errnorm = std::sqrt(errnorm / double(n));

        double fac11 = std::pow(std::max(errnorm, 1e-20), 0.17);
        double fac = fac11 / std::pow(facold, 0.04);
        fac = std::max(0.2, std::min(5.0, 0.9 / fac));

        if (errnorm <= 1.0) {
            st.accepted++;
            st.max_scaled_error = std::max(st.max_scaled_error, errnorm);
            facold = std::max(errnorm, 1e-4);
            x += h;
            y.swap(ynew);
            k1.swap(k7);
            if (rejected) fac = std::min(fac, 1.0);
            rejected = false;
        } else {
            st.rejected++;
            rejected = true;
            fac = std::min(fac, 1.0);
        }
        h *= fac;
    }
    if (stats) *stats = st;
    return y;
}

EigResult eig_symmetric(const MatrixXd& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("eig_symmetric: matrix not square");
    if (!M.allFinite()) throw std::invalid_argument("eig_symmetric: non-finite entries");
    MatrixXd A = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(A);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_symmetric: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

double simpson_panel(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0) throw std::runtime_error("adaptive_quadrature: recursion depth exceeded");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_panel(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_panel(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol) {
    if (!(tol > 0)) throw std::invalid_argument("adaptive_quadrature: tol must be positive");
    if (a == b) return 0.0;
    // seed with 8 panels so periodic integrands cannot fool the first estimate
    const int P = 8;
    double total = 0.0;
    double w = (b - a) / P;
    for (int i = 0; i < P; ++i) {
        double x0 = a + i * w, x1 = x0 + w, xm = 0.5 * (x0 + x1);
        double f0 = f(x0), f1 = f(x1), fm = f(xm);
        double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson_panel(f, x0, f0, x1, f1, xm, fm, whole, tol / P, 60);
    }
    return total;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(hi > lo)) throw std::invalid_argument("bisect: bracket must satisfy lo < hi");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::invalid_argument("bisect: no sign change in bracket");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double richardson_diff(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0)) throw std::invalid_argument("richardson_diff: h must be positive");
    double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

VectorXd periodic_grid(int N, double L) {
    if (N < 1) throw std::invalid_argument("periodic_grid: N must be positive");
    if (!(L > 0)) throw std::invalid_argument("periodic_grid: L must be positive");
    VectorXd x(N);
    for (int j = 0; j < N; ++j) x[j] = L * double(j) / double(N);
    return x;
}

namespace {

void check_fourier_args(int N, double L, const char* who) {
    if (N < 2 || N % 2 != 0) throw std::invalid_argument(std::string(who) + ": N must be even and >= 2");
    if (!(L > 0)) throw std::invalid_argument(std::string(who) + ": L must be positive");
}

}  // namespace

MatrixXd fourier_d1(int N, double L) {
    check_fourier_args(N, L, "fourier_d1");
    const double h = 2.0 * M_PI / N;
    const double scale = 2.0 * M_PI / L;
    VectorXd col(N);
    col[0] = 0.0;
    // fill half the column and mirror so the matrix is antisymmetric to the bit
    for (int m = 1; m < N / 2; ++m) {
        double s = (m % 2 == 0) ? 0.5 : -0.5;
        col[m] = s / std::tan(0.5 * m * h);
        col[N - m] = -col[m];
    }
    col[N / 2] = 0.0;
    MatrixXd D(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) D(i, j) = scale * col[(i - j + N) % N];
    return D;
}

MatrixXd fourier_d2(int N, double L) {
    check_fourier_args(N, L, "fourier_d2");
    const double h = 2.0 * M_PI / N;
    const double scale = std::pow(2.0 * M_PI / L, 2);
    VectorXd col(N);
    col[0] = -M_PI * M_PI / (3.0 * h * h) - 1.0 / 6.0;
    // fill half the column and mirror so the matrix is symmetric to the bit
    for (int m = 1; m <= N / 2; ++m) {
        double s = std::sin(0.5 * m * h);
        double sign = (m % 2 == 0) ? -1.0 : 1.0;
        col[m] = sign * 0.5 / (s * s);
        if (m < N / 2) col[N - m] = col[m];
    }
    MatrixXd D(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) D(i, j) = scale * col[(i - j + N) % N];
    return D;
}

}  // namespace cnoidal
