#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cnoidal/elliptic.hpp"
#include "cnoidal/hill.hpp"
#include "cnoidal/numerics.hpp"
#include "cnoidal/reference_data.hpp"
#include "cnoidal/stability.hpp"
#include "cnoidal/waves.hpp"

using nlohmann::json;
using namespace cnoidal;

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string bsign_str(Bsign s) { return s == Bsign::plus ? "+" : "-"; }

Bsign parse_bsign(const std::string& s) {
    if (s == "+" || s == "plus") return Bsign::plus;
    return Bsign::minus;
}

int emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open output file: " << path << "\n";
        return 1;
    }
    f << text;
    return 0;
}

// Deterministic row-parallel evaluation: results land in input order.
void run_rows(int n, int threads, const std::function<std::string(int)>& fn,
              std::vector<std::string>& rows) {
    rows.assign(n, {});
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) rows[i] = fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex mu;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    rows[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

VectorXd linspace(double lo, double hi, int n) { return VectorXd::LinSpaced(n, lo, hi); }

struct WaveArgs {
    int cs = 1;
    double L = kTwoPi, b = 1.0, omega = 0.0, k = 0.5;
    std::string bsign = "+";
    bool wide_k = false;
};

json wave_json(const WaveCase1& w) {
    return json{{"case", 1},     {"L", w.L},   {"b", w.b},   {"a", -w.b},
                {"omega", w.omega}, {"k", w.k},   {"Bsign", bsign_str(w.bsign)},
                {"B", w.B},      {"b0", w.b0}, {"b2", w.b2}, {"A1", w.A1},
                {"A2", w.A2}};
}

json wave_json(const WaveCase2& w) {
    return json{{"case", 2},     {"L", w.L},   {"b", w.b},   {"a", w.a},
                {"omega", w.omega}, {"k", w.k},   {"Bsign", bsign_str(w.bsign)},
                {"B", w.B},      {"b0", w.b0}, {"b2", w.b2}, {"A1", w.A1},
                {"A2", w.A2}};
}

int run_wave(const WaveArgs& a, int n, const std::string& out, const std::string& profile_out) {
    try {
        json j;
        CnoidalWave cw = [&] {
            if (a.cs == 1) {
                WaveCase1 w =
                    build_case1(a.L, a.b, a.omega, Modulus(a.k), parse_bsign(a.bsign), a.wide_k);
                const Residuals r = residual_system(w, periodic_grid(n, a.L));
                if (std::max(r.r1, r.r2) > 1e-9) {
                    std::cerr << "residual check failed: r1=" << r.r1 << " r2=" << r.r2 << "\n";
                    std::exit(3);
                }
                j = wave_json(w);
                return profile(w);
            }
            WaveCase2 w = build_case2(a.L, Modulus(a.k), parse_bsign(a.bsign));
            const Residuals r = residual_system(w, periodic_grid(n, a.L));
            if (std::max(r.r1, r.r2) > 1e-9) {
                std::cerr << "residual check failed: r1=" << r.r1 << " r2=" << r.r2 << "\n";
                std::exit(3);
            }
            j = wave_json(w);
            return profile(w);
        }();

        int rc = emit(out, j.dump(2) + "\n");
        if (rc) return rc;
        if (!profile_out.empty()) {
            const VectorXd x = periodic_grid(n, a.L);
            std::string csv = "x,phi\n";
            for (int i = 0; i < n; ++i) csv += num(x[i]) + "," + num(cw.phi(x[i])) + "\n";
            rc = emit(profile_out, csv);
        }
        return rc;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    }
}

double theta_case1(double L, double b, double omega, double k, Bsign s) {
    const WaveCase1 w = build_case1(L, b, omega, Modulus(k), s);
    return theta_constant(make_L1(w), profile(w)).theta;
}

double theta_case2(double L, double k) {
    const WaveCase2 w = build_case2(L, Modulus(k), Bsign::plus);
    return theta_constant(make_L3(w), profile(w)).theta;
}

int run_theta_table(int table, const std::string& out, int threads) {
    try {
        std::string csv = "case,L,Bsign,k,omega,b,theta,reference,rel_dev\n";
        std::vector<std::string> rows;
        bool sign_mismatch = false;
        std::mutex mu;

        if (table <= 3) {
            const refdata::Case1Block* blocks =
                table == 1 ? refdata::table1 : (table == 2 ? refdata::table2 : refdata::table3);
            const double L = table == 1 ? 1.0 : kTwoPi;
            const Bsign s = table == 3 ? Bsign::minus : Bsign::plus;
            run_rows(28, threads, [&](int r) {
                const auto& blk = blocks[r / 7];
                const double b = refdata::case1_bs[r % 7];
                const double th = theta_case1(L, b, blk.omega, blk.k, s);
                const double ref = blk.theta[r % 7];
                if (th * ref <= 0.0) {
                    std::lock_guard<std::mutex> g(mu);
                    sign_mismatch = true;
                }
                return "1," + num(L) + "," + bsign_str(s) + "," + num(blk.k) + "," +
                       num(blk.omega) + "," + num(b) + "," + num(th) + "," + num(ref) + "," +
                       num((th - ref) / std::abs(ref)) + "\n";
            }, rows);
        } else {
            run_rows(28, threads, [&](int r) {
                const double L = refdata::case2_Ls[r / 7];
                const double k = refdata::case2_ks[r % 7];
                const WaveCase2 w = build_case2(L, Modulus(k), Bsign::plus);
                const double th = theta_constant(make_L3(w), profile(w)).theta;
                const double ref = refdata::table4[r / 7][r % 7];
                if (th * ref <= 0.0) {
                    std::lock_guard<std::mutex> g(mu);
                    sign_mismatch = true;
                }
                return "2," + num(L) + ",+," + num(k) + "," + num(0.0) + "," + num(w.b) + "," +
                       num(th) + "," + num(ref) + "," + num((th - ref) / std::abs(ref)) + "\n";
            }, rows);
        }

        for (const auto& r : rows) csv += r;
        const int rc = emit(out, csv);
        if (rc) return rc;
        if (sign_mismatch) {
            std::cerr << "theta sign disagrees with a reference entry\n";
            return 4;
        }
        return 0;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    }
}

int run_spectrum(const WaveArgs& a, int N, int m, const std::string& out) {
    try {
        InertiaReport rep;
        if (a.cs == 1) {
            rep = inertia_of_L(build_case1(a.L, a.b, a.omega, Modulus(a.k), parse_bsign(a.bsign)),
                               N);
        } else {
            rep = inertia_of_L(build_case2(a.L, Modulus(a.k), parse_bsign(a.bsign)), N);
        }
        const int keep = std::min<int>(m, static_cast<int>(rep.eigenvalues.size()));
        json j = {{"eigenvalues", std::vector<double>(rep.eigenvalues.data(),
                                                      rep.eigenvalues.data() + keep)},
                  {"n", rep.n},
                  {"z", rep.z},
                  {"alignment", rep.alignment},
                  {"N", N}};
        return emit(out, j.dump(2) + "\n");
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "spectrum error: " << e.what() << "\n";
        return 5;
    }
}

int run_stability(int cs, double L, double b, const std::vector<double>& omegas,
                  const std::vector<double>& ks, const std::string& bsign, const std::string& out,
                  const std::string& detail, int threads) {
    try {
        const Bsign s = parse_bsign(bsign);
        std::vector<std::pair<double, double>> pts;
        for (double om : omegas)
            for (double k : ks) pts.emplace_back(om, k);

        std::vector<std::string> rows;
        std::vector<json> details(pts.size());
        std::atomic<bool> any_fail{false};
        run_rows(static_cast<int>(pts.size()), threads, [&](int i) {
            const auto [om, k] = pts[i];
            std::string row;
            if (cs == 1) {
                const WaveCase1 w = build_case1(L, b, om, Modulus(k), s);
                const StabilityReportCase1 rep = index_case1(w);
                const H2Verdict v = check_H2(w);
                if (!v.pass) any_fail = true;
                row = "1," + num(L) + "," + num(b) + "," + num(om) + "," + num(k) + "," +
                      bsign_str(s) + "," + num(rep.I) + "," + (v.pass ? "pass" : "fail") + "\n";
                details[i] = {{"I", rep.I},     {"I0", rep.I0},         {"I1", rep.I1},
                              {"I2", rep.I2},   {"I_alt", rep.I_alt},   {"dOmega", rep.dOmega},
                              {"I_direct", index_direct(w)}, {"h4", v.h4_value}};
            } else {
                const WaveCase2 w = build_case2(L, Modulus(k), s);
                const StabilityReportCase2 rep = bound_case2(w);
                const H2Verdict v = check_H2(w);
                if (!v.pass) any_fail = true;
                row = "2," + num(L) + "," + num(w.b) + "," + num(0.0) + "," + num(k) + "," +
                      bsign_str(s) + "," + num(rep.bound) + "," + (v.pass ? "pass" : "fail") +
                      "\n";
                details[i] = {{"bound", rep.bound},
                              {"J1cal", rep.J1cal},
                              {"J3cal", rep.J3cal},
                              {"alpha0_lower", rep.alpha0_lower},
                              {"inner", rep.inner},
                              {"h4", v.h4_value}};
            }
            return row;
        }, rows);

        std::string csv = "case,L,b,omega,k,Bsign,I_or_bound,verdict\n";
        for (const auto& r : rows) csv += r;
        int rc = emit(out, csv);
        if (rc) return rc;
        if (!detail.empty()) {
            json j = details.size() == 1 ? details[0] : json(details);
            rc = emit(detail, j.dump(2) + "\n");
            if (rc) return rc;
        }
        return any_fail ? 6 : 0;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "stability error: " << e.what() << "\n";
        return 6;
    }
}

int run_bstar(double L, std::vector<double> omegas, std::vector<double> ks,
              const std::string& bsign, const std::string& out) {
    try {
        VectorXd om, kk;
        if (omegas.empty()) {
            om = linspace(-0.99, 0.99, 21);
        } else {
            om = Eigen::Map<const VectorXd>(omegas.data(), static_cast<long>(omegas.size()));
        }
        if (ks.empty()) {
            kk = linspace(0.01, 0.70, 15);
        } else {
            kk = Eigen::Map<const VectorXd>(ks.data(), static_cast<long>(ks.size()));
        }
        const BstarResult res = find_bstar_detail(L, om, kk, parse_bsign(bsign));
        std::vector<std::vector<double>> thr;
        for (int i = 0; i < res.thresholds.rows(); ++i) {
            std::vector<double> row(res.thresholds.cols());
            for (int j = 0; j < res.thresholds.cols(); ++j) row[j] = res.thresholds(i, j);
            thr.push_back(std::move(row));
        }
        json j = {{"L", res.L},
                  {"bstar", res.bstar},
                  {"grid",
                   {{"omegas", std::vector<double>(res.omegas.data(),
                                                   res.omegas.data() + res.omegas.size())},
                    {"ks", std::vector<double>(res.ks.data(), res.ks.data() + res.ks.size())}}},
                  {"per_point_thresholds", thr}};
        return emit(out, j.dump(2) + "\n");
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "bstar error: " << e.what() << "\n";
        return 7;
    }
}

int run_figures(int id, double L6, const std::string& out, int threads) {
    try {
        std::string csv = "case,L,b,omega,k,Bsign,I_or_bound,verdict\n";
        std::vector<std::string> rows;
        if (id <= 5) {
            double L = 0.0, b = 0.0;
            Bsign s = Bsign::plus;
            switch (id) {
                case 2: L = 1.0; b = 0.002; break;
                case 3: L = kTwoPi; b = 0.07; break;
                case 4: L = 50.0; b = 4.23; break;
                default: L = kTwoPi; b = 0.07; s = Bsign::minus; break;
            }
            const VectorXd om = linspace(-0.99, 0.99, 21);
            const VectorXd kk = linspace(0.01, 0.70, 15);
            run_rows(static_cast<int>(om.size() * kk.size()), threads, [&](int r) {
                const double omega = om[r / kk.size()];
                const double k = kk[r % kk.size()];
                const WaveCase1 w = build_case1(L, b, omega, Modulus(k), s);
                const double I = index_case1(w).I;
                return "1," + num(L) + "," + num(b) + "," + num(omega) + "," + num(k) + "," +
                       bsign_str(s) + "," + num(I) + "," + (I < 0 ? "stable" : "unstable") +
                       "\n";
            }, rows);
        } else {
            const VectorXd kk = linspace(0.05, 0.95, 19);
            run_rows(static_cast<int>(kk.size()), threads, [&](int r) {
                const WaveCase2 w = build_case2(L6, Modulus(kk[r]), Bsign::plus);
                const double bd = bound_case2(w).bound;
                return "2," + num(L6) + "," + num(w.b) + "," + num(0.0) + "," + num(kk[r]) +
                       ",+," + num(bd) + "," + (bd < 0 ? "stable" : "unstable") + "\n";
            }, rows);
        }
        for (const auto& r : rows) csv += r;
        return emit(out, csv);
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Cnoidal periodic traveling waves of an abcd Boussinesq system: explicit "
        "construction, Hill-operator spectra, and orbital-stability indices."};
    app.require_subcommand(1);

    WaveArgs wa;
    int wave_n = 512;
    std::string wave_out, wave_profile_out;
    auto* wave = app.add_subcommand("wave", "Construct a wave and report its parameters as JSON");
    wave->add_option("--case", wa.cs, "family: 1 (a=c=-b, d=b) or 2 (a=c<0, b=d=1/6-a)")
        ->check(CLI::Range(1, 2))
        ->required();
    wave->add_option("--L", wa.L, "period, L > 0")->check(CLI::PositiveNumber)->required();
    wave->add_option("--b", wa.b, "model parameter b > 0 (case 1 only)")
        ->check(CLI::PositiveNumber);
    wave->add_option("--omega", wa.omega, "wave speed in (-1, 1) (case 1 only)")
        ->check(CLI::Range(-1.0, 1.0));
    wave->add_option("--k", wa.k,
                     "elliptic modulus in (0, 1); case 1 requires k < 0.7071 unless "
                     "--allow-wide-k")
        ->check(CLI::Range(0.0, 1.0))
        ->required();
    wave->add_option("--Bsign", wa.bsign, "branch of B: + or -")
        ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    wave->add_flag("--allow-wide-k", wa.wide_k,
                   "permit k >= 0.7071 in case 1 (profile positivity is then not guaranteed)");
    wave->add_option("--n", wave_n, "grid size for the residual check and profile output")
        ->check(CLI::Range(16, 1 << 20));
    wave->add_option("--out", wave_out, "JSON output path (stdout when omitted)");
    wave->add_option("--profile-out", wave_profile_out, "CSV profile output path (x,phi)");

    int tt_table = 1, tt_threads = 1;
    std::string tt_out;
    auto* tt = app.add_subcommand("theta-table",
                                  "Recompute a published theta table and report deviations");
    tt->add_option("--table", tt_table,
                   "1: L=1, B>0; 2: L=2pi, B>0; 3: L=2pi, B<0; 4: case-2 family")
        ->check(CLI::Range(1, 4))
        ->required();
    tt->add_option("--out", tt_out, "CSV output path (stdout when omitted)");
    tt->add_option("--threads", tt_threads, "worker threads, >= 1; output is order-stable")
        ->check(CLI::Range(1, 256));

    WaveArgs sa;
    int sp_N = 256, sp_m = 8;
    std::string sp_out;
    auto* sp = app.add_subcommand("spectrum",
                                  "Inertia of the linearized 2x2 operator at a wave (JSON)");
    sp->add_option("--case", sa.cs, "family: 1 or 2")->check(CLI::Range(1, 2))->required();
    sp->add_option("--L", sa.L, "period, L > 0")->check(CLI::PositiveNumber)->required();
    sp->add_option("--b", sa.b, "model parameter b > 0 (case 1 only)")
        ->check(CLI::PositiveNumber);
    sp->add_option("--omega", sa.omega, "wave speed in (-1, 1) (case 1 only)")
        ->check(CLI::Range(-1.0, 1.0));
    sp->add_option("--k", sa.k, "elliptic modulus in (0, 1)")
        ->check(CLI::Range(0.0, 1.0))
        ->required();
    sp->add_option("--Bsign", sa.bsign, "branch of B: + or -")
        ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    sp->add_option("--N", sp_N, "collocation size, even, >= 64")->check(CLI::Range(64, 4096));
    sp->add_option("--m", sp_m, "number of low eigenvalues to report (<= 8)")
        ->check(CLI::Range(1, 8));
    sp->add_option("--out", sp_out, "JSON output path (stdout when omitted)");

    int st_case = 1, st_threads = 1;
    double st_L = kTwoPi, st_b = 1.0;
    std::vector<double> st_omegas{0.0}, st_ks;
    std::string st_bsign = "+", st_out, st_detail;
    auto* st = app.add_subcommand("stability",
                                  "Stability index (case 1) or lower bound (case 2) over a "
                                  "point or grid, CSV with an H2 verdict per point");
    st->add_option("--case", st_case, "family: 1 or 2")->check(CLI::Range(1, 2))->required();
    st->add_option("--L", st_L, "period, L > 0")->check(CLI::PositiveNumber)->required();
    st->add_option("--b", st_b, "model parameter b > 0 (case 1 only)")
        ->check(CLI::PositiveNumber);
    st->add_option("--omega", st_omegas,
                   "wave speeds, each in [-0.99, 0.99] (case 1 only; comma separated)")
        ->delimiter(',');
    st->add_option("--k", st_ks, "elliptic moduli, each in [0.005, 0.705] for case 1 "
                                 "(comma separated)")
        ->delimiter(',')
        ->required();
    st->add_option("--Bsign", st_bsign, "branch of B: + or -")
        ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    st->add_option("--out", st_out, "CSV output path (stdout when omitted)");
    st->add_option("--detail", st_detail, "JSON path for the index/bound decomposition");
    st->add_option("--threads", st_threads, "worker threads, >= 1; output is order-stable")
        ->check(CLI::Range(1, 256));

    double bs_L = 1.0;
    std::vector<double> bs_omegas, bs_ks;
    std::string bs_bsign = "+", bs_out;
    auto* bs = app.add_subcommand("bstar",
                                  "Smallest b making the case-1 index negative across a "
                                  "parameter grid (JSON)");
    bs->add_option("--L", bs_L, "period, L > 0")->check(CLI::PositiveNumber)->required();
    bs->add_option("--omegas", bs_omegas,
                   "grid of wave speeds (comma separated; default 21 points on [-0.99, 0.99])")
        ->delimiter(',');
    bs->add_option("--ks", bs_ks,
                   "grid of moduli (comma separated; default 15 points on [0.01, 0.70])")
        ->delimiter(',');
    bs->add_option("--Bsign", bs_bsign, "branch of B: + or -")
        ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    bs->add_option("--out", bs_out, "JSON output path (stdout when omitted)");

    int fg_id = 2, fg_threads = 1;
    double fg_L = 1.0;
    std::string fg_out;
    auto* fg = app.add_subcommand("figures", "Reproduce a stability-region data set as CSV");
    fg->add_option("--id", fg_id,
                   "2: L=1, b=0.002, B>0; 3: L=2pi, b=0.07, B>0; 4: L=50, b=4.23, B>0; "
                   "5: L=2pi, b=0.07, B<0; 6: case-2 bound versus k")
        ->check(CLI::Range(2, 6))
        ->required();
    fg->add_option("--L", fg_L, "period for --id 6, L > 0 (default 1)")
        ->check(CLI::PositiveNumber);
    fg->add_option("--out", fg_out, "CSV output path (stdout when omitted)");
    fg->add_option("--threads", fg_threads, "worker threads, >= 1; output is order-stable")
        ->check(CLI::Range(1, 256));

    CLI11_PARSE(app, argc, argv);

    if (wave->parsed()) return run_wave(wa, wave_n, wave_out, wave_profile_out);
    if (tt->parsed()) return run_theta_table(tt_table, tt_out, tt_threads);
    if (sp->parsed()) return run_spectrum(sa, sp_N, sp_m, sp_out);
    if (st->parsed())
        return run_stability(st_case, st_L, st_b, st_omegas, st_ks, st_bsign, st_out, st_detail,
                             st_threads);
    if (bs->parsed()) return run_bstar(bs_L, bs_omegas, bs_ks, bs_bsign, bs_out);
    if (fg->parsed()) return run_figures(fg_id, fg_L, fg_out, fg_threads);
    return 0;
}
