#include "qceq/euler.hpp"

#include <algorithm>
#include <cmath>

namespace qceq {

const char* euler_tag_name(EulerTag t) {
  switch (t) {
    case EulerTag::ZPRIME_ZERO: return "ZPRIME_ZERO";
    case EulerTag::Z_ZERO: return "Z_ZERO";
    case EulerTag::GENERIC: return "GENERIC";
  }
  return "?";
}

namespace {

// Reduces raw angles and enforces the beta3 = 0 convention at the ends of [0, pi].
NormalFormParams finish(double b0, double b1, double b2, double b3) {
  NormalFormParams p;
  b2 = std::clamp(b2, 0.0, kPi);
  if (std::abs(std::sin(b2 / 2)) < 1e-8) {
    b1 += b3;
    b3 = 0.0;
    if (b2 <= kEpsAngle) b2 = 0.0;
  } else if (kPi - b2 <= kEpsAngle) {
    b0 += b3;
    b1 -= b3;
    b3 = 0.0;
    b2 = kPi;
  }
  p.beta0 = wrap_2pi(b0);
  p.beta1 = wrap_2pi(b1);
  p.beta2 = b2;
  p.beta3 = wrap_2pi(b3);
  return p;
}

EulerResult from_z(double offset, cplx z, cplx zp) {
  EulerResult r;
  r.kase.z = z;
  r.kase.zp = zp;
  if (std::abs(zp) <= kEpsCase) {
    r.kase.tag = EulerTag::ZPRIME_ZERO;
    r.beta = finish(offset - std::arg(z), 2 * std::arg(z), 0.0, 0.0);
  } else if (std::abs(z) <= kEpsCase) {
    r.kase.tag = EulerTag::Z_ZERO;
    r.beta = finish(offset - std::arg(zp), 2 * std::arg(zp), kPi, 0.0);
  } else {
    r.kase.tag = EulerTag::GENERIC;
    const double b2 = 2 * std::arg(cplx(std::abs(z / zp), 1.0));
    r.beta = finish(offset - std::arg(z), std::arg(z) + std::arg(zp), b2, std::arg(z) - std::arg(zp));
  }
  return r;
}

bool near_pi_multiple(double a) { return circ_dist(a, 0.0, kPi) <= kEpsAngle; }

void check_domain(double a1, double a2, double a3) {
  if (near_pi_multiple(a1) || near_pi_multiple(a2) || near_pi_multiple(a3))
    throw Error(ErrorCode::DomainError, "b-functions are undefined when an angle is a multiple of pi");
}

double cot(double a) { return std::cos(a) / std::sin(a); }

double b2_arg(double a1, double a2, double a3) {
  return std::cos(a1) * std::cos(a3) - std::sin(a1) * std::cos(a2) * std::sin(a3);
}

}  // namespace

EulerResult euler_e(double a1, double a2, double a3) {
  const double c2 = std::cos(a2 / 2), s2 = std::sin(a2 / 2);
  const double sum = (a1 + a3) / 2, diff = (a1 - a3) / 2;
  const cplx z(c2 * std::cos(sum), s2 * std::cos(diff));
  const cplx zp(c2 * std::sin(sum), -s2 * std::sin(diff));
  return from_z(a2 / 2, z, zp);
}

EulerResult euler_eprime(double a1, double a3) {
  const double sum = (a1 + a3) / 2, diff = (a1 - a3) / 2;
  const cplx z(-std::sin(sum), std::cos(diff));
  const cplx zp(std::cos(sum), -std::sin(diff));
  return from_z(kPi / 2, z, zp);
}

NormalFormParams nf_from_unitary(const Matrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-9))
    throw Error(ErrorCode::NotUnitary, "expected a 2x2 unitary matrix");
  const double c = std::clamp((std::abs(u(0, 0)) + std::abs(u(1, 1))) / 2, 0.0, 1.0);
  const double s = std::clamp((std::abs(u(0, 1)) + std::abs(u(1, 0))) / 2, 0.0, 1.0);
  const double b2 = 2 * std::atan2(s, c);
  const cplx i(0.0, 1.0);
  if (s < 1e-8) return finish(std::arg(u(0, 0)), std::arg(u(1, 1)) - std::arg(u(0, 0)), 0.0, 0.0);
  if (c <= kEpsAngle) return finish(std::arg(u(1, 0)) + kPi / 2, std::arg(u(0, 1)) - std::arg(u(1, 0)), kPi, 0.0);
  return finish(std::arg(u(0, 0)), std::arg(u(0, 1) * i / u(0, 0)), b2, std::arg(u(1, 0) * i / u(0, 0)));
}

Matrix nf_matrix(const NormalFormParams& p) {
  const double c = std::cos(p.beta2 / 2), s = std::sin(p.beta2 / 2);
  const cplx mi(0.0, -1.0);
  Matrix m(2, 2);
  m << c, mi * std::polar(s, p.beta1), mi * std::polar(s, p.beta3), std::polar(c, p.beta1 + p.beta3);
  return std::polar(1.0, p.beta0) * m;
}

Circuit nf_circuit(const NormalFormParams& p) {
  Circuit c(1);
  c.add(gates::gphase(p.beta0)).add(gates::p(p.beta1, 0)).add(gates::rx(p.beta2, 0)).add(gates::p(p.beta3, 0));
  return c;
}

bool nf_valid(const NormalFormParams& p, double eps) {
  auto in_turn = [](double a) { return a >= 0.0 && a < kTwoPi; };
  if (!in_turn(p.beta0) || !in_turn(p.beta1) || !in_turn(p.beta3)) return false;
  if (p.beta2 < 0.0 || p.beta2 > kPi) return false;
  if ((p.beta2 <= eps || kPi - p.beta2 <= eps) && p.beta3 != 0.0) return false;
  return true;
}

BValues b_funcs(double a1, double a2, double a3) {
  check_domain(a1, a2, a3);
  BValues b;
  b.b1 = -std::atan(std::cos(a1) * cot(a2) + std::sin(a1) * cot(a3) / std::sin(a2));
  b.b2 = std::acos(std::clamp(b2_arg(a1, a2, a3), -1.0, 1.0));
  b.b3 = -std::atan(std::cos(a3) * cot(a2) + std::sin(a3) * cot(a1) / std::sin(a2));
  return b;
}

BValues b_derivs_alpha2(double a1, double a2, double a3) {
  check_domain(a1, a2, a3);
  const double s2 = std::sin(a2), c2 = std::cos(a2);
  auto outer = [&](double x, double y) {
    const double t = std::cos(x) * c2 + std::sin(x) * cot(y);
    return (std::cos(x) + std::sin(x) * c2 * cot(y)) / (s2 * s2 + t * t);
  };
  const double x = b2_arg(a1, a2, a3);
  const double root = std::sqrt(std::max(0.0, 1.0 - x * x));
  if (root < 1e-15) throw Error(ErrorCode::DomainError, "b2 is not differentiable here");
  BValues d;
  d.b1 = outer(a1, a3);
  d.b2 = -std::sin(a1) * s2 * std::sin(a3) / root;
  d.b3 = outer(a3, a1);
  return d;
}

}  // namespace qceq
