#include "cnoidal/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cnoidal {

namespace {

struct AgmTable {
    std::array<double, 32> a{}, c{};
    int n = 0;
};

AgmTable agm(double k) {
    AgmTable t;
    double a = 1.0, b = std::sqrt((1.0 - k) * (1.0 + k)), c = k;
    t.a[0] = a;
    t.c[0] = c;
    int i = 0;
    while (std::abs(c) > 1e-17 * a && i < 30) {
        double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        ++i;
        t.a[i] = a;
        t.c[i] = c;
    }
    t.n = i;
    return t;
}

}  // namespace

double complete_K(Modulus k) {
    AgmTable t = agm(k.value());
    return M_PI / (2.0 * t.a[t.n]);
}

double complete_E(Modulus k) {
    AgmTable t = agm(k.value());
    double sum = 0.0, p = 0.5;
    for (int i = 0; i <= t.n; ++i) {
        sum += p * t.c[i] * t.c[i];
        p *= 2.0;
    }
    return M_PI / (2.0 * t.a[t.n]) * (1.0 - sum);
}

double dK_dk(Modulus k) {
    double kk = k.value();
    double K = complete_K(k), E = complete_E(k);
    return (E - (1.0 - kk * kk) * K) / (kk * (1.0 - kk * kk));
}

double dE_dk(Modulus k) {
    double kk = k.value();
    return (complete_E(k) - complete_K(k)) / kk;
}

EllipticTriple jacobi(double u, Modulus k) {
    const double kk = k.value();
    AgmTable t = agm(kk);
    const double K = M_PI / (2.0 * t.a[t.n]);

    // reduce to [0, K] by periodicity and reflection so the symmetries
    // sn(u+2K) = -sn(u), cn(u+2K) = -cn(u), cn(2K-u) = -cn(u) hold exactly
    double v = std::fmod(u, 4.0 * K);
    if (v < 0) v += 4.0 * K;
    double s_sn = 1.0, s_cn = 1.0;
    if (v >= 2.0 * K) {
        v -= 2.0 * K;
        s_sn = -1.0;
        s_cn = -1.0;
    }
    if (v > K) {
        v = 2.0 * K - v;
        s_sn *= 1.0;
        s_cn *= -1.0;
    }

    // descending Landen recursion seeded by the AGM sequence
    double phi = std::ldexp(t.a[t.n] * v, t.n);
    for (int i = t.n; i >= 1; --i) {
        double s = std::clamp(t.c[i] / t.a[i] * std::sin(phi), -1.0, 1.0);
        phi = 0.5 * (phi + std::asin(s));
    }
    double sn = std::sin(phi), cn = std::cos(phi);
    double dn = std::sqrt(1.0 - kk * kk * sn * sn);
    return {s_sn * sn, s_cn * cn, dn};
}

PeriodicIntegrals periodic_integrals(Modulus k, double L) {
    if (!(L > 0)) throw std::domain_error("periodic_integrals: L must be positive");
    const double m = k.value(), m2 = m * m, m4 = m2 * m2;
    if (m2 < 0.04) {
        // the closed forms below divide O(m2^2) differences of K and E by m2^2
        // and cancel catastrophically as k -> 0; switch to exact series in k^2
        // (all coefficients are dyadic rationals, truncation < 1e-17 here)
        static const double c2s[12] = {
            1.0 / 2, -1.0 / 16, -1.0 / 32, -41.0 / 2048, -59.0 / 4096, -727.0 / 65536,
            -1171.0 / 131072, -498409.0 / 67108864, -848479.0 / 134217728,
            -11768921.0 / 2147483648.0, -20705249.0 / 4294967296.0,
            -2359256231.0 / 549755813888.0};
        static const double c4s[12] = {
            3.0 / 8, -1.0 / 16, -29.0 / 1024, -35.0 / 2048, -387.0 / 32768, -579.0 / 65536,
            -233565.0 / 33554432, -381719.0 / 67108864, -5127469.0 / 1073741824.0,
            -8790145.0 / 2147483648.0, -980429171.0 / 274877906944.0,
            -1731617957.0 / 549755813888.0};
        static const double ss[12] = {
            1.0 / 8, -1.0 / 16, -7.0 / 1024, -7.0 / 2048, -73.0 / 32768, -107.0 / 65536,
            -42887.0 / 33554432, -70051.0 / 67108864, -942823.0 / 1073741824.0,
            -1621249.0 / 2147483648.0, -181455209.0 / 274877906944.0,
            -321613489.0 / 549755813888.0};
        const auto horner = [m2](const double* c) {
            double v = 0.0;
            for (int i = 11; i >= 0; --i) v = v * m2 + c[i];
            return v;
        };
        return {L * horner(c2s), L * horner(c4s), L * horner(ss)};
    }
    const double K = complete_K(k), E = complete_E(k);
    // quarter-period moments C_{2n} = (1/K) int_0^K cn^{2n}
    const double C2 = (E - (1.0 - m2) * K) / (m2 * K);
    const double C4 =
        (2.0 * (2.0 * m2 - 1.0) * E + (2.0 - 3.0 * m2) * (1.0 - m2) * K) / (3.0 * m4 * K);
    const double C6 = (3.0 * (1.0 - m2) * C2 - 4.0 * (1.0 - 2.0 * m2) * C4) / (5.0 * m2);
    // sn^2 cn^2 dn^2 = (1-m^2) cn^2 + (2m^2-1) cn^4 - m^2 cn^6
    const double S = (1.0 - m2) * C2 + (2.0 * m2 - 1.0) * C4 - m2 * C6;
    return {L * C2, L * C4, L * S};
}

}  // namespace cnoidal
