#include "qceq/semantics.hpp"

#include <cstdlib>
#include <string>

namespace qceq {

int wire_cap() {
  if (const char* env = std::getenv("QCEQ_WIRE_CAP")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 10;
}

namespace {

using Index = Eigen::Index;

Index bit_of(int width, int wire) { return Index{1} << (width - 1 - wire); }

void apply_1q(Matrix& m, int width, int wire, const Eigen::Matrix2cd& u) {
  const Index b = bit_of(width, wire);
  for (Index i = 0; i < m.rows(); ++i) {
    if (i & b) continue;
    Eigen::RowVectorXcd r0 = m.row(i), r1 = m.row(i | b);
    m.row(i) = u(0, 0) * r0 + u(0, 1) * r1;
    m.row(i | b) = u(1, 0) * r0 + u(1, 1) * r1;
  }
}

Index insert_zero(Index j, int bit) {
  const Index low = j & ((Index{1} << bit) - 1);
  return ((j >> bit) << (bit + 1)) | low;
}

void apply(Matrix& m, int& width, const Gate& g) {
  switch (g.kind) {
    case Kind::GPHASE: m *= std::polar(1.0, g.params[0]); return;
    case Kind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      Eigen::Matrix2cd u;
      u << s, s, s, -s;
      apply_1q(m, width, g.wires[0], u);
      return;
    }
    case Kind::P: {
      Eigen::Matrix2cd u;
      u << 1, 0, 0, std::polar(1.0, g.params[0]);
      apply_1q(m, width, g.wires[0], u);
      return;
    }
    case Kind::CNOT: {
      const Index bc = bit_of(width, g.wires[0]), bt = bit_of(width, g.wires[1]);
      for (Index i = 0; i < m.rows(); ++i)
        if ((i & bc) && !(i & bt)) m.row(i).swap(m.row(i | bt));
      return;
    }
    case Kind::SWAP: {
      const Index ba = bit_of(width, g.wires[0]), bb = bit_of(width, g.wires[1]);
      for (Index i = 0; i < m.rows(); ++i)
        if ((i & ba) && !(i & bb)) m.row(i).swap(m.row(i ^ ba ^ bb));
      return;
    }
    case Kind::INIT: {
      const int bit = width - g.wires[0];
      Matrix r = Matrix::Zero(m.rows() * 2, m.cols());
      for (Index j = 0; j < m.rows(); ++j) r.row(insert_zero(j, bit)) = m.row(j);
      m = std::move(r);
      ++width;
      return;
    }
    case Kind::DEST: {
      const int bit = width - 1 - g.wires[0];
      Matrix r(m.rows() / 2, m.cols());
      for (Index j = 0; j < r.rows(); ++j) r.row(j) = m.row(insert_zero(j, bit));
      m = std::move(r);
      --width;
      return;
    }
    default: throw Error(ErrorCode::UnsupportedGate, "macro reached evaluation: " + describe(g));
  }
}

}  // namespace

Matrix eval_matrix(const Circuit& c) {
  validate(c);
  if (c.max_width() > wire_cap())
    throw Error(ErrorCode::WireCapExceeded,
                "circuit reaches " + std::to_string(c.max_width()) + " wires, cap is " + std::to_string(wire_cap()));
  std::vector<Gate> prim;
  for (const auto& g : c.gates) expand_gate(g, prim);
  Matrix m = Matrix::Identity(Index{1} << c.n_in, Index{1} << c.n_in);
  int width = c.n_in;
  for (const auto& g : prim) apply(m, width, g);
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "matrices have different shapes");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool equal_matrices(const Matrix& a, const Matrix& b, double tol) { return max_abs_diff(a, b) <= tol; }

cplx phase_between(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "matrices have different shapes");
  Index bi = 0, bj = 0;
  if (b.size() == 0 || b.cwiseAbs().maxCoeff(&bi, &bj) < 1e-12)
    throw Error(ErrorCode::DegenerateMatrix, "reference matrix is numerically zero");
  const cplx ratio = a(bi, bj) / b(bi, bj);
  const double mag = std::abs(ratio);
  if (mag < 1e-12) return cplx(1.0, 0.0);
  return ratio / mag;
}

bool equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
  const cplx lambda = phase_between(a, b);
  return max_abs_diff(a, lambda * b) <= tol;
}

bool is_isometry(const Matrix& m, double tol) {
  const Matrix g = m.adjoint() * m;
  return max_abs_diff(g, Matrix::Identity(g.rows(), g.cols())) <= tol;
}

bool is_unitary(const Matrix& m, double tol) { return m.rows() == m.cols() && is_isometry(m, tol); }

double det_arg(const Circuit& c) {
  if (c.n_in != c.n_out) throw Error(ErrorCode::InvalidCircuit, "det_arg needs a square circuit");
  const cplx d = eval_matrix(c).determinant();
  return wrap_2pi(std::arg(d));
}

namespace mat {
Matrix h() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}
Matrix p(double phi) {
  Matrix m(2, 2);
  m << 1, 0, 0, std::polar(1.0, phi);
  return m;
}
Matrix rx(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << c, cplx(0, -s), cplx(0, -s), c;
  return m;
}
Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}
Matrix swap() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}
}  // namespace mat

}  // namespace qceq
