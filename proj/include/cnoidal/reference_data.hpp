#pragma once

// Published reference values for the theta tables and the Case-2 index
// column. Deviations of recomputed values from these entries are reported by
// the theta-table CLI and checked by the acceptance harness.

namespace cnoidal::refdata {

inline constexpr double case1_bs[7] = {1.0, 2.0, 3.0, 4.0, 5.0, 10.0, 20.0};

struct Case1Block {
    double k;
    double omega;  // generating speed (table 3 rows are labelled with -omega)
    double theta[7];
};

// table 1: L = 1, B > 0
inline constexpr Case1Block table1[4] = {
    {0.5, 0.0, {-1.37e-5, -3.43e-6, -1.52e-6, -8.57e-7, -5.49e-7, -1.37e-7, -3.43e-8}},
    {0.3, 0.5, {-4.05e-5, -1.01e-5, -4.50e-6, -2.53e-6, -1.62e-6, -4.05e-7, -1.01e-7}},
    {0.7, -0.5, {-8.67e-6, -2.16e-6, -9.63e-7, -5.42e-7, -3.46e-7, -8.67e-8, -2.16e-8}},
    {0.1, 0.9, {-8.05e-4, -2.01e-4, -8.95e-5, -5.03e-5, -3.22e-5, -8.06e-6, -2.01e-6}},
};

// table 2: L = 2 pi, B > 0
inline constexpr Case1Block table2[4] = {
    {0.5, 0.0, {-5.3074, -1.3268, -0.5897, -0.3317, -0.2122, -0.0530, -0.0132}},
    {0.3, 0.5, {-15.6703, -3.9175, -1.7411, -0.9793, -0.6268, -0.1567, -0.0391}},
    {0.7, -0.5, {-3.3537, -0.8384, -0.3726, -0.2096, -0.1341, -0.0335, -0.0083}},
    {0.1, 0.9, {-311.4599, -77.8617, -34.6085, -19.4654, -12.4579, -3.1145, -0.7786}},
};

// table 3: L = 2 pi, B < 0. Row labels carry the wave speed -omega; the
// stored omega below is the generating value for the B < 0 branch.
inline constexpr Case1Block table3[4] = {
    {0.5, 0.0, {-5.3074, -1.3268, -0.5897, -0.3317, -0.2122, -0.0530, -0.0132}},
    {0.3, -0.5, {-15.6703, -3.9175, -1.7411, -0.9793, -0.6268, -0.1567, -0.0391}},
    {0.7, 0.5, {-3.3537, -0.8384, -0.3726, -0.2096, -0.1341, -0.0335, -0.0083}},
    {0.1, -0.9, {-311.4599, -77.8617, -34.6085, -19.4654, -12.4579, -3.1145, -0.7786}},
};

inline constexpr double case2_ks[7] = {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
inline constexpr double case2_Ls[4] = {1.0, 6.283185307179586, 50.0, 100.0};

// table 4: Case-2 stability index by period (rows follow case2_Ls, columns
// follow case2_ks).
inline constexpr double table4[4][7] = {
    {-0.0507, -0.0211, -0.0213, -0.0230, -0.0324, -0.1227, -3.6893},
    {-10.0817, -5.2367, -5.2873, -5.7201, -8.0607, -30.4458, -915.132},
    {-2.96e3, -2.63e3, -2.66e3, -2.88e3, -4.06e3, -1.53e4, -4.60e5},
    {-2.97e3, -2.11e3, -2.13e3, -2.30e3, -3.24e4, -1.22e5, -3.68e6},
};

}  // namespace cnoidal::refdata
