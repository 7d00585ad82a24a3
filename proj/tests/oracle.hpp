#pragma once

// Independent reference matrices built from the action on basis states. Wire 0 is the
// most significant bit.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline int bit(std::size_t x, int n, int w) { return static_cast<int>((x >> (n - 1 - w)) & 1u); }
inline std::size_t flip(std::size_t x, int n, int w) { return x ^ (std::size_t{1} << (n - 1 - w)); }

// A 2x2 matrix u acting on wire w of n wires.
inline Mat one(int n, int w, const Mat& u) {
  const std::size_t d = std::size_t{1} << n;
  Mat m = Mat::Zero(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    const int b = bit(x, n, w);
    for (int a = 0; a < 2; ++a) {
      const std::size_t y = a == b ? x : flip(x, n, w);
      m(y, x) += u(a, b);
    }
  }
  return m;
}

inline Mat perm(int n, const std::function<std::size_t(std::size_t)>& f) {
  const std::size_t d = std::size_t{1} << n;
  Mat m = Mat::Zero(d, d);
  for (std::size_t x = 0; x < d; ++x) m(f(x), x) = 1.0;
  return m;
}

inline Mat cnot(int n, int c, int t) {
  return perm(n, [=](std::size_t x) { return bit(x, n, c) ? flip(x, n, t) : x; });
}

inline Mat swap(int n, int a, int b) {
  return perm(n, [=](std::size_t x) { return bit(x, n, a) != bit(x, n, b) ? flip(flip(x, n, a), n, b) : x; });
}

inline Mat h() {
  Mat m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

inline Mat p(double phi) {
  Mat m = Mat::Identity(2, 2);
  m(1, 1) = std::polar(1.0, phi);
  return m;
}

inline Mat rx(double t) {
  Mat m(2, 2);
  const cplx c = std::cos(t / 2), s = cplx(0, -std::sin(t / 2));
  m << c, s, s, c;
  return m;
}

inline Mat x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

// Phase e^{i phi} on the basis state where every listed wire is 1.
inline Mat mcp(int n, const std::vector<int>& wires, double phi) {
  const std::size_t d = std::size_t{1} << n;
  Mat m = Mat::Identity(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    bool all = true;
    for (int w : wires) all = all && bit(x, n, w);
    if (all) m(x, x) = std::polar(1.0, phi);
  }
  return m;
}

// u on `target` when every control matches its pattern bit.
inline Mat controlled(int n, const std::vector<int>& controls, const std::vector<int>& pattern, int target,
                      const Mat& u) {
  const std::size_t d = std::size_t{1} << n;
  Mat m = Mat::Zero(d, d);
  for (std::size_t x = 0; x < d; ++x) {
    bool on = true;
    for (std::size_t i = 0; i < controls.size(); ++i) on = on && bit(x, n, controls[i]) == pattern[i];
    if (!on) {
      m(x, x) = 1.0;
      continue;
    }
    const int b = bit(x, n, target);
    for (int a = 0; a < 2; ++a) m(a == b ? x : flip(x, n, target), x) += u(a, b);
  }
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return m;
}

inline double max_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace oracle
