// Acceptance harness: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Failing entries are listed individually so
// deviations from the reference data are auditable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/hill.hpp"
#include "cnoidal/numerics.hpp"
#include "cnoidal/reference_data.hpp"
#include "cnoidal/stability.hpp"
#include "cnoidal/waves.hpp"

using namespace cnoidal;

namespace {

constexpr double kTwoPi = 6.283185307179586477;
constexpr double kPi = 3.141592653589793238;

int failures = 0;

void line(int n, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s - %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++failures;
}

void note(const std::string& s) { std::printf("  %s\n", s.c_str()); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double theta1(double L, double b, double om, double k, Bsign s) {
    const WaveCase1 w = build_case1(L, b, om, Modulus(k), s);
    return theta_constant(make_L1(w), profile(w)).theta;
}

double theta2(double L, double k) {
    const WaveCase2 w = build_case2(L, Modulus(k), Bsign::plus);
    return theta_constant(make_L3(w), profile(w)).theta;
}

struct TableEntry {
    int table;
    double L, k, om, b, got, ref;
    double dev() const { return (got - ref) / std::abs(ref); }
    bool ok() const { return got * ref > 0.0 && std::abs(dev()) <= 0.02; }
    std::string describe() const {
        std::ostringstream os;
        os << "table " << table << " (L=" << fmt(L) << ", k=" << fmt(k);
        if (table <= 3) os << ", omega=" << fmt(om) << ", b=" << fmt(b);
        os << "): computed " << fmt(got) << ", reference " << fmt(ref) << ", deviation "
           << fmt(100.0 * dev()) << "%";
        return os.str();
    }
};

std::vector<TableEntry> compute_tables() {
    std::vector<TableEntry> out;
    const refdata::Case1Block* tabs[3] = {refdata::table1, refdata::table2, refdata::table3};
    for (int t = 0; t < 3; ++t) {
        const double L = (t == 0) ? 1.0 : kTwoPi;
        const Bsign s = (t == 2) ? Bsign::minus : Bsign::plus;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 7; ++c) {
                const double b = refdata::case1_bs[c];
                const auto& blk = tabs[t][r];
                out.push_back({t + 1, L, blk.k, blk.omega, b,
                               theta1(L, b, blk.omega, blk.k, s), blk.theta[c]});
            }
        }
    }
    for (int r = 0; r < 4; ++r) {
        const double L = refdata::case2_Ls[r];
        for (int c = 0; c < 7; ++c) {
            const double k = refdata::case2_ks[c];
            out.push_back({4, L, k, 0.0, 0.0, theta2(L, k), refdata::table4[r][c]});
        }
    }
    return out;
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;

    // 1: every reference table entry reproduced in sign and to 2 percent
    const auto t0 = clock::now();
    const std::vector<TableEntry> entries = compute_tables();
    const double elapsed = std::chrono::duration<double>(clock::now() - t0).count();
    {
        int bad = 0;
        for (const auto& e : entries) {
            if (!e.ok()) {
                ++bad;
                note(e.describe());
            }
        }
        std::ostringstream os;
        os << (entries.size() - bad) << " of " << entries.size()
           << " entries sign-consistent and within 2%, computed in " << fmt(elapsed) << " s";
        if (bad) os << "; " << bad << " reference entries deviate beyond 2%";
        line(1, bad == 0 && elapsed <= 60.0, os.str());
    }

    // 2: the case-2 column specifically
    {
        int bad = 0;
        for (const auto& e : entries) {
            if (e.table == 4 && !e.ok()) ++bad;
        }
        std::ostringstream os;
        os << (28 - bad) << " of 28 case-2 entries sign-consistent and within 2%";
        if (bad) os << "; the " << bad << " deviating entries are listed under criterion 1";
        line(2, bad == 0, os.str());
    }

    // 3: inertia (1,1) with aligned kernel mode; L2 and L4 stay positive
    {
        // below k ~ 0.05 the potential is O(k^2) small and the translation mode's
        // partner eigenvalue splits from zero only at O(k^4), under the zero
        //-classification tolerance; draw moduli where the count is resolvable
        std::mt19937 gen(20260822);
        std::uniform_real_distribution<double> dL(0.5, 10.0), db(0.1, 8.0), dom(-0.9, 0.9),
            dk(0.08, 0.68), dL2(0.5, 30.0), dk2(0.15, 0.95);
        bool ok = true;
        std::string first;
        for (int i = 0; i < 20; ++i) {
            const Bsign s = (i % 2 == 0) ? Bsign::plus : Bsign::minus;
            const WaveCase1 w = build_case1(dL(gen), db(gen), dom(gen), Modulus(dk(gen)), s);
            const InertiaReport r = inertia_of_L(w);
            const SpectrumReport s2 = spectrum(make_L2(w));
            if (r.n != 1 || r.z != 1 || r.alignment < 0.999 || s2.n_count != 0 ||
                s2.z_count != 0 || s2.eigenvalues[0] <= 0.0) {
                ok = false;
                std::ostringstream os;
                os << "case-1 draw " << i << " (L=" << fmt(w.L) << ", b=" << fmt(w.b)
                   << ", omega=" << fmt(w.omega) << ", k=" << fmt(w.k) << "): n=" << r.n
                   << " z=" << r.z << " alignment=" << fmt(r.alignment);
                if (first.empty()) first = os.str();
                note(os.str());
            }
        }
        for (int i = 0; i < 10; ++i) {
            const Bsign s = (i % 2 == 0) ? Bsign::plus : Bsign::minus;
            const WaveCase2 w = build_case2(dL2(gen), Modulus(dk2(gen)), s);
            const InertiaReport r = inertia_of_L(w);
            const SpectrumReport s4 = spectrum(make_L4(w));
            if (r.n != 1 || r.z != 1 || r.alignment < 0.999 || s4.n_count != 0 ||
                s4.z_count != 0 || s4.eigenvalues[0] < 1.0 - 1e-9) {
                ok = false;
                std::ostringstream os;
                os << "case-2 draw " << i << " (L=" << fmt(w.L) << ", k=" << fmt(w.k)
                   << "): n=" << r.n << " z=" << r.z << " alignment=" << fmt(r.alignment);
                note(os.str());
            }
        }
        line(3, ok,
             ok ? "all 30 draws have inertia (n,z)=(1,1), aligned kernel mode, and positive "
                  "L2/L4"
                : "at least one draw violates the expected inertia");
    }

    // 4: threshold parameter at L=1 and its period scaling
    {
        const double b1 = find_bstar(1.0);
        const double b2pi = find_bstar(kTwoPi);
        const double ratio = b2pi / b1;
        const double target = kTwoPi * kTwoPi;
        const bool in_range = b1 >= 0.00160 && b1 <= 0.00178;
        const bool scaling = std::abs(ratio - target) <= 0.05 * target;
        std::ostringstream os;
        os << "bstar(1)=" << fmt(b1) << " (expected in [0.00160, 0.00178]), "
           << "bstar(2pi)/bstar(1)=" << fmt(ratio) << " vs (2pi)^2=" << fmt(target);
        line(4, in_range && scaling, os.str());
    }

    // 5: negative index on the four case-1 sweeps; negative bound on the case-2 sweeps
    {
        const struct {
            int id;
            double L, b;
            Bsign s;
        } figs[] = {{2, 1.0, 0.002, Bsign::plus},
                    {3, kTwoPi, 0.07, Bsign::plus},
                    {4, 50.0, 4.23, Bsign::plus},
                    {5, kTwoPi, 0.07, Bsign::minus}};
        bool ok = true;
        for (const auto& f : figs) {
            int bad = 0;
            double worst = 0.0, worst_om = 0.0, worst_k = 0.0;
            for (int i = 0; i < 21; ++i) {
                const double om = -0.99 + 2.0 * 0.99 * i / 20.0;
                for (int j = 0; j < 15; ++j) {
                    const double k = 0.01 + (0.70 - 0.01) * j / 14.0;
                    const double I =
                        index_case1(build_case1(f.L, f.b, om, Modulus(k), f.s)).I;
                    if (I >= 0.0) {
                        ++bad;
                        if (I > worst) {
                            worst = I;
                            worst_om = om;
                            worst_k = k;
                        }
                    }
                }
            }
            if (bad) {
                ok = false;
                std::ostringstream os;
                os << "sweep " << f.id << " (L=" << fmt(f.L) << ", b=" << fmt(f.b)
                   << "): " << bad << " of 315 points non-negative, worst I=" << fmt(worst)
                   << " at omega=" << fmt(worst_om) << ", k=" << fmt(worst_k);
                note(os.str());
            }
        }
        int bad2_rows = 0;
        for (double L : {1.0, kTwoPi, 50.0, 100.0}) {
            int bad = 0;
            double worst = 0.0, worst_k = 0.0;
            for (int j = 0; j < 19; ++j) {
                const double k = 0.05 + (0.95 - 0.05) * j / 18.0;
                const double bd = bound_case2(build_case2(L, Modulus(k), Bsign::plus)).bound;
                if (bd >= 0.0) {
                    ++bad;
                    if (bd > worst) {
                        worst = bd;
                        worst_k = k;
                    }
                }
            }
            if (bad) {
                ok = false;
                ++bad2_rows;
                std::ostringstream os;
                os << "case-2 sweep at L=" << fmt(L) << ": " << bad
                   << " of 19 bounds non-negative, worst " << fmt(worst) << " at k="
                   << fmt(worst_k);
                note(os.str());
            }
        }
        std::ostringstream os;
        if (ok) {
            os << "index negative on all four case-1 sweeps and bound negative on all four "
                  "case-2 periods";
        } else {
            os << "non-negative values found; see the entries above";
        }
        line(5, ok, os.str());
    }

    // 6: constructed waves satisfy the traveling-wave system to 1e-9
    {
        std::mt19937 gen(987654321);
        std::uniform_real_distribution<double> dL(0.2, 20.0), db(0.02, 15.0), dom(-0.97, 0.97),
            dk(0.02, 0.69), dk2(0.02, 0.97);
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < 120; ++i) {
            const double L = dL(gen);
            const Bsign s = (i % 2 == 0) ? Bsign::plus : Bsign::minus;
            const WaveCase1 w = build_case1(L, db(gen), dom(gen), Modulus(dk(gen)), s);
            const Residuals r = residual_system(w, periodic_grid(64, L));
            worst = std::max({worst, r.r1, r.r2});
            if (std::max(r.r1, r.r2) > 1e-9) {
                ok = false;
                note("case-1 draw " + std::to_string(i) + ": residual " +
                     fmt(std::max(r.r1, r.r2)));
            }
        }
        for (int i = 0; i < 80; ++i) {
            const double L = dL(gen);
            const Bsign s = (i % 2 == 0) ? Bsign::plus : Bsign::minus;
            const WaveCase2 w = build_case2(L, Modulus(dk2(gen)), s);
            const Residuals r = residual_system(w, periodic_grid(64, L));
            worst = std::max({worst, r.r1, r.r2});
            if (std::max(r.r1, r.r2) > 1e-9 || std::abs(w.A1) > 1e-10 ||
                std::abs(w.A2) > 1e-10) {
                ok = false;
                note("case-2 draw " + std::to_string(i) + ": residual " +
                     fmt(std::max(r.r1, r.r2)) + ", A1 " + fmt(w.A1) + ", A2 " + fmt(w.A2));
            }
        }
        line(6, ok, "200 random draws, worst scaled residual " + fmt(worst));
    }

    // 7: the transform route reproduces the direct operator; case-2 transform orthogonal
    {
        bool ok = true;
        double worst = 0.0;
        const WaveCase1 ws[] = {
            build_case1(kTwoPi, 2.0, 0.5, Modulus(0.3), Bsign::plus),
            build_case1(1.0, 0.5, -0.8, Modulus(0.15), Bsign::minus),
            build_case1(12.0, 6.0, 0.0, Modulus(0.65), Bsign::plus),
        };
        for (const auto& w : ws) {
            const int N = 128;
            const VectorXd x = periodic_grid(N, w.L);
            const CnoidalWave cw = profile(w);
            VectorXd f1(N), f2(N), g1(N), g2(N);
            for (int j = 0; j < N; ++j) {
                f1[j] = std::sin(2.0 * kPi * x[j] / w.L);
                f2[j] = std::cos(4.0 * kPi * x[j] / w.L) + 0.2;
                g1[j] = cw.dphi(x[j]);
                g2[j] = w.B * g1[j];
            }
            worst = std::max({worst, similarity_check(w, f1, f2), similarity_check(w, g1, g2)});
        }
        const WaveCase2 vs[] = {
            build_case2(1.0, Modulus(0.5), Bsign::plus),
            build_case2(kTwoPi, Modulus(0.85), Bsign::minus),
        };
        for (const auto& w : vs) {
            const int N = 128;
            const VectorXd x = periodic_grid(N, w.L);
            VectorXd f1(N), f2(N);
            for (int j = 0; j < N; ++j) {
                f1[j] = std::sin(2.0 * kPi * x[j] / w.L) - 0.4;
                f2[j] = std::cos(2.0 * kPi * x[j] / w.L);
            }
            worst = std::max(worst, similarity_check(w, f1, f2));
        }
        if (worst > 1e-9) ok = false;
        double orth = 0.0;
        for (Bsign s : {Bsign::plus, Bsign::minus}) {
            const Eigen::Matrix2d Q = case2_transform(s);
            orth = std::max(orth,
                            (Q * Q.transpose() - Eigen::Matrix2d::Identity())
                                .cwiseAbs()
                                .maxCoeff());
        }
        if (orth > 1e-12) ok = false;
        line(7, ok,
             "worst two-route residual " + fmt(worst) + ", case-2 transform orthogonality "
                 "defect " + fmt(orth));
    }

    // 8: closed-form index against the direct quadratic form; closed J1 against the
    // kernel-aware discrete solve
    {
        bool ok = true;
        double worstI = 0.0;
        const double bs[] = {0.02, 0.1, 0.5, 2.0, 10.0};
        const double oms[] = {-0.9, -0.4, 0.0, 0.4, 0.9};
        const double ks[] = {0.05, 0.2, 0.35, 0.5, 0.65};
        for (double b : bs) {
            for (double om : oms) {
                for (double k : ks) {
                    const WaveCase1 w = build_case1(kTwoPi, b, om, Modulus(k), Bsign::plus);
                    const double I = index_case1(w).I;
                    const double Id = index_direct(w);
                    const double err = std::abs(I - Id) / std::max(1.0, std::abs(I));
                    worstI = std::max(worstI, err);
                    if (err > 1e-6) {
                        ok = false;
                        note("index mismatch at b=" + fmt(b) + ", omega=" + fmt(om) +
                             ", k=" + fmt(k) + ": closed " + fmt(I) + ", direct " + fmt(Id));
                    }
                }
            }
        }
        double worstJ = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double k = 0.30 + (0.90 - 0.30) * i / 9.0;
            const WaveCase2 w = build_case2(kTwoPi, Modulus(k), Bsign::plus);
            const double closed = bound_case2(w).J1cal;
            const double err = std::abs(closed - J1cal_discrete(w)) /
                               std::max(1.0, std::abs(closed));
            worstJ = std::max(worstJ, err);
            if (err > 1e-5) {
                ok = false;
                note("J1 mismatch at k=" + fmt(k) + ": " + fmt(err));
            }
        }
        line(8, ok,
             "worst index deviation " + fmt(worstI) + " (tol 1e-6), worst J1 deviation " +
                 fmt(worstJ) + " (tol 1e-5)");
    }

    // 9: elliptic layer gates
    {
        bool ok = true;
        const struct {
            double k, K, E;
        } ke[] = {
            {0.10, 1.5747455615173560, 1.5668619420216683},
            {0.25, 1.5962422221317835, 1.5459572561054650},
            {0.50, 1.6857503548125960, 1.4674622093394272},
            {0.7071067811865475, 1.8540746773013719, 1.3506438810476755},
            {0.90, 2.2805491384227702, 1.1716970527816141},
            {0.99, 3.3566005233611924, 1.0284758090288040},
        };
        double worst_ke = 0.0;
        for (const auto& r : ke) {
            const Modulus m(r.k);
            worst_ke = std::max(worst_ke, std::abs(complete_K(m) - r.K) / r.K);
            worst_ke = std::max(worst_ke, std::abs(complete_E(m) - r.E) / r.E);
        }
        if (worst_ke > 1e-14) {
            ok = false;
            note("complete integral deviation " + fmt(worst_ke));
        }

        double worst_leg = 0.0;
        for (double k : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
            const double kp = std::sqrt(1.0 - k * k);
            const double K = complete_K(Modulus(k)), E = complete_E(Modulus(k));
            const double Kp = complete_K(Modulus(kp)), Ep = complete_E(Modulus(kp));
            worst_leg = std::max(worst_leg, std::abs(E * Kp + Ep * K - K * Kp - kPi / 2.0));
        }
        if (worst_leg > 1e-12) {
            ok = false;
            note("Legendre relation defect " + fmt(worst_leg));
        }

        std::mt19937 gen(11235813);
        std::uniform_real_distribution<double> du(-25.0, 25.0), dk(0.01, 0.99);
        double worst_inv = 0.0, worst_per = 0.0;
        for (int i = 0; i < 500; ++i) {
            const double k = dk(gen);
            const Modulus m(k);
            const double u = du(gen);
            const EllipticTriple t = jacobi(u, m);
            worst_inv = std::max(worst_inv, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
            worst_inv =
                std::max(worst_inv, std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0));
            const EllipticTriple t2 = jacobi(u + 2.0 * complete_K(m), m);
            worst_per = std::max(worst_per, std::abs(t2.cn + t.cn));
            worst_per = std::max(worst_per, std::abs(t2.sn + t.sn));
            worst_per = std::max(worst_per, std::abs(t2.dn - t.dn));
        }
        if (worst_inv > 1e-12) {
            ok = false;
            note("jacobi invariant defect " + fmt(worst_inv));
        }
        if (worst_per > 1e-12) {
            ok = false;
            note("half-period translation defect " + fmt(worst_per));
        }

        double worst_j = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double k = 0.01 + (0.99 - 0.01) * i / 19.0;
            const Modulus m(k);
            const double L = 2.5;
            const double lam = 2.0 * complete_K(m) / L;
            const PeriodicIntegrals J = periodic_integrals(m, L);
            const double q1 = adaptive_quadrature(
                [&](double x) {
                    const double c = jacobi(lam * x, m).cn;
                    return c * c;
                },
                0.0, L, 1e-13);
            const double q2 = adaptive_quadrature(
                [&](double x) {
                    const double c = jacobi(lam * x, m).cn;
                    return c * c * c * c;
                },
                0.0, L, 1e-13);
            const double q3 = adaptive_quadrature(
                [&](double x) {
                    const EllipticTriple t = jacobi(lam * x, m);
                    const double p = t.sn * t.cn * t.dn;
                    return p * p;
                },
                0.0, L, 1e-13);
            worst_j = std::max({worst_j, std::abs(J.J1 - q1), std::abs(J.J2 - q2),
                                std::abs(J.J3 - q3)});
        }
        if (worst_j > 1e-10) {
            ok = false;
            note("periodic integral vs quadrature defect " + fmt(worst_j));
        }
        std::ostringstream os;
        os << "complete integrals to " << fmt(worst_ke) << ", Legendre to " << fmt(worst_leg)
           << ", invariants to " << fmt(worst_inv) << ", moments vs quadrature to "
           << fmt(worst_j);
        line(9, ok, os.str());
    }

    return failures == 0 ? 0 : 1;
}
