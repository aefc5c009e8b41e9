#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;

// Tight tolerance for single-matrix algebra; looser one for circuit-vs-oracle
// comparisons where error accumulates over many gates.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kCircuitTol = 1e-10;

// Dense state vectors are capped at 2^24 amplitudes. Full unitaries are only
// materialized below 2^13.
inline constexpr std::size_t kMaxStateDim = std::size_t{1} << 24;
inline constexpr std::size_t kMaxUnitaryDim = std::size_t{1} << 13;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Invalid parameters, malformed structures, domain violations.
struct DomainError : Error {
  using Error::Error;
};
// A dimension cap was exceeded.
struct CapError : Error {
  using Error::Error;
};

inline bool is_power_of(std::size_t x, std::size_t base) {
  if (x == 0) return false;
  while (x % base == 0) x /= base;
  return x == 1;
}

inline int ceil_log2(std::size_t x) {
  int k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

inline std::size_t gray_code(std::size_t x) { return x ^ (x >> 1); }

// An ordered list of qudit dimensions. Wire 0 is the most significant digit
// of every basis label.
struct Register {
  std::vector<int> radices;

  Register() = default;
  explicit Register(std::vector<int> r) : radices(std::move(r)) {
    for (std::size_t w = 0; w < radices.size(); ++w)
      if (radices[w] < 2)
        throw DomainError("register: radix " + std::to_string(radices[w]) +
                          " at wire " + std::to_string(w) + " is below 2");
  }
  static Register qubits(int n) { return Register(std::vector<int>(n, 2)); }
  static Register qutrits(int n) { return Register(std::vector<int>(n, 3)); }

  int wires() const { return static_cast<int>(radices.size()); }

  std::size_t dim() const {
    std::size_t d = 1;
    for (int r : radices) d *= static_cast<std::size_t>(r);
    return d;
  }

  // stride of wire w: how much one unit of its digit moves the flat index
  std::size_t stride(int w) const {
    std::size_t s = 1;
    for (int u = wires() - 1; u > w; --u) s *= static_cast<std::size_t>(radices[u]);
    return s;
  }

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(radices.size());
    std::size_t acc = 1;
    for (int w = wires() - 1; w >= 0; --w) {
      s[w] = acc;
      acc *= static_cast<std::size_t>(radices[w]);
    }
    return s;
  }

  std::size_t index_of(const std::vector<int>& digits) const {
    if (static_cast<int>(digits.size()) != wires())
      throw DomainError("label has " + std::to_string(digits.size()) +
                        " digits, register has " + std::to_string(wires()) + " wires");
    std::size_t idx = 0;
    for (int w = 0; w < wires(); ++w) {
      if (digits[w] < 0 || digits[w] >= radices[w])
        throw DomainError("digit " + std::to_string(digits[w]) + " at wire " +
                          std::to_string(w) + " exceeds radix " +
                          std::to_string(radices[w]));
      idx = idx * static_cast<std::size_t>(radices[w]) + static_cast<std::size_t>(digits[w]);
    }
    return idx;
  }

  std::vector<int> digits_of(std::size_t index) const {
    std::vector<int> d(radices.size());
    for (int w = wires() - 1; w >= 0; --w) {
      d[w] = static_cast<int>(index % static_cast<std::size_t>(radices[w]));
      index /= static_cast<std::size_t>(radices[w]);
    }
    return d;
  }

  int digit_at(std::size_t index, int w) const {
    return static_cast<int>((index / stride(w)) % static_cast<std::size_t>(radices[w]));
  }

  std::vector<int> parse_label(const std::string& label) const {
    if (static_cast<int>(label.size()) != wires())
      throw DomainError("label \"" + label + "\" has " + std::to_string(label.size()) +
                        " digits, register has " + std::to_string(wires()) + " wires");
    std::vector<int> d(label.size());
    for (std::size_t w = 0; w < label.size(); ++w) {
      if (label[w] < '0' || label[w] > '9')
        throw DomainError("label \"" + label + "\" has a non-digit at wire " +
                          std::to_string(w));
      d[w] = label[w] - '0';
    }
    return d;
  }

  bool operator==(const Register& o) const { return radices == o.radices; }
  bool operator!=(const Register& o) const { return !(*this == o); }
};

// Small dense complex matrix, row major.
struct Matrix {
  std::size_t n = 0;
  std::vector<cplx> a;

  Matrix() = default;
  explicit Matrix(std::size_t size) : n(size), a(size * size, cplx{0.0, 0.0}) {}
  Matrix(std::size_t size, std::vector<cplx> entries) : n(size), a(std::move(entries)) {
    if (a.size() != n * n) throw DomainError("matrix storage size mismatch");
  }

  static Matrix identity(std::size_t size) {
    Matrix m(size);
    for (std::size_t i = 0; i < size; ++i) m.at(i, i) = 1.0;
    return m;
  }

  cplx& at(std::size_t r, std::size_t c) { return a[r * n + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return a[r * n + c]; }

  Matrix dagger() const {
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m.at(r, c) = std::conj(at(c, r));
    return m;
  }

  Matrix operator*(const Matrix& o) const {
    if (n != o.n) throw DomainError("matrix product dimension mismatch");
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const cplx f = at(r, k);
        if (f == cplx{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) += f * o.at(k, c);
      }
    return m;
  }

  Matrix operator*(cplx f) const {
    Matrix m = *this;
    for (auto& x : m.a) x *= f;
    return m;
  }

  std::vector<cplx> apply(const std::vector<cplx>& v) const {
    if (v.size() != n) throw DomainError("matrix-vector dimension mismatch");
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out[r] += at(r, c) * v[c];
    return out;
  }

  static Matrix kron(const Matrix& x, const Matrix& y) {
    Matrix m(x.n * y.n);
    for (std::size_t r1 = 0; r1 < x.n; ++r1)
      for (std::size_t c1 = 0; c1 < x.n; ++c1)
        for (std::size_t r2 = 0; r2 < y.n; ++r2)
          for (std::size_t c2 = 0; c2 < y.n; ++c2)
            m.at(r1 * y.n + r2, c1 * y.n + c2) = x.at(r1, c1) * y.at(r2, c2);
    return m;
  }

  double max_abs_diff(const Matrix& o) const {
    if (n != o.n) throw DomainError("matrix comparison dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
    return m;
  }

  bool is_unitary(double tol) const {
    const Matrix p = dagger() * (*this);
    return p.max_abs_diff(identity(n)) <= tol;
  }

  // Interprets the matrix as a permutation; empty result when it is not one.
  std::vector<int> as_permutation(double tol) const {
    std::vector<int> perm(n, -1);
    for (std::size_t c = 0; c < n; ++c) {
      int hit = -1;
      for (std::size_t r = 0; r < n; ++r) {
        const double v = std::abs(at(r, c));
        if (std::abs(v - 1.0) <= tol) {
          if (hit >= 0 || std::abs(at(r, c) - cplx{1.0, 0.0}) > tol) return {};
          hit = static_cast<int>(r);
        } else if (v > tol) {
          return {};
        }
      }
      if (hit < 0) return {};
      perm[c] = hit;
    }
    return perm;
  }
};

}  // namespace qwalk
