#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qceq/circuit.hpp"

namespace qceq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Maximum running width accepted by eval_matrix. Defaults to 10, overridable through
// the QCEQ_WIRE_CAP environment variable.
int wire_cap();

// Dense semantics. Wire 0 is the most significant bit of the basis index.
Matrix eval_matrix(const Circuit& c);

double max_abs_diff(const Matrix& a, const Matrix& b);
bool equal_matrices(const Matrix& a, const Matrix& b, double tol);
// Unit-modulus lambda with a ~= lambda * b, read off the largest entry of b.
cplx phase_between(const Matrix& a, const Matrix& b);
bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol);
bool is_isometry(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);
// arg det of the semantics, in [0, 2pi).
double det_arg(const Circuit& c);

namespace mat {
Matrix h();
Matrix p(double phi);
Matrix rx(double theta);
Matrix cnot();
Matrix swap();
Matrix kron(const Matrix& a, const Matrix& b);
}  // namespace mat

}  // namespace qceq
