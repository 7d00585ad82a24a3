#pragma once

#include <complex>

#include "qceq/circuit.hpp"
#include "qceq/semantics.hpp"

namespace qceq {

// |z| or |z'| at or below this value selects a degenerate case.
inline constexpr double kEpsCase = 1e-10;

// Parameters of GPHASE(beta0) P(beta1) RX(beta2) P(beta3), applied left to right.
// beta0, beta1, beta3 lie in [0, 2pi), beta2 in [0, pi], and beta3 = 0 when beta2 is 0 or pi.
struct NormalFormParams {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
};

enum class EulerTag { ZPRIME_ZERO, Z_ZERO, GENERIC };

const char* euler_tag_name(EulerTag t);

struct EulerCase {
  EulerTag tag = EulerTag::GENERIC;
  cplx z;
  cplx zp;
};

struct EulerResult {
  NormalFormParams beta;
  EulerCase kase;
};

// RX(a1) P(a2) RX(a3) rewritten into normal form.
EulerResult euler_e(double a1, double a2, double a3);
// RX(a1) H RX(a3) rewritten into normal form.
EulerResult euler_eprime(double a1, double a3);

NormalFormParams nf_from_unitary(const Matrix& u);
Matrix nf_matrix(const NormalFormParams& p);
Circuit nf_circuit(const NormalFormParams& p);
bool nf_valid(const NormalFormParams& p, double eps = kEpsAngle);

struct BValues {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
};

// Closed forms relating (E) inputs to the outputs beta1..beta3 away from the degenerate
// lines. Throws DomainError when some ai is a multiple of pi.
BValues b_funcs(double a1, double a2, double a3);
// Partial derivatives of b1, b2, b3 with respect to a2.
BValues b_derivs_alpha2(double a1, double a2, double a3);

}  // namespace qceq
