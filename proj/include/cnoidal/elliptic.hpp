#pragma once

#include <stdexcept>

namespace cnoidal {

// Elliptic modulus k in the open interval (0,1); the formulas degenerate at the
// endpoints, so values within 1e-12 of 0 or 1 are rejected rather than clamped.
class Modulus {
  public:
    explicit Modulus(double k) : k_(k) {
        if (!(k > guard && k < 1.0 - guard))
            throw std::domain_error("Modulus: k must lie strictly inside (0,1)");
    }
    double value() const { return k_; }
    static constexpr double guard = 1e-12;

  private:
    double k_;
};

struct EllipticTriple {
    double sn, cn, dn;
};

double complete_K(Modulus k);
double complete_E(Modulus k);
double dK_dk(Modulus k);
double dE_dk(Modulus k);

EllipticTriple jacobi(double u, Modulus k);

struct PeriodicIntegrals {
    double J1, J2, J3;
};

// J1 = int_0^L cn^2(2Kx/L), J2 = int_0^L cn^4, J3 = int_0^L sn^2 cn^2 dn^2,
// all through the closed-form quarter-period moments of cn^2, cn^4, cn^6.
PeriodicIntegrals periodic_integrals(Modulus k, double L);

}  // namespace cnoidal
