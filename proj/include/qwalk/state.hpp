#pragma once

#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "core.hpp"
#include "gate.hpp"

namespace qwalk {

namespace detail {

inline int env_thread_count() {
  static const int n = [] {
    const char* s = std::getenv("QWALK_THREADS");
    if (!s) return 1;
    const int v = std::atoi(s);
    return v > 0 ? v : 1;
  }();
  return n;
}

template <typename Fn>
void parallel_chunks(std::size_t count, Fn&& fn) {
  const int threads = env_thread_count();
  if (threads <= 1 || count < 4096) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::size_t per = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = std::min(count, per * static_cast<std::size_t>(t));
    const std::size_t hi = std::min(count, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

struct StateVector {
  Register reg;
  std::vector<cplx> amp;

  StateVector() = default;
  explicit StateVector(Register r) : reg(std::move(r)) {
    const std::size_t d = reg.dim();
    if (d > kMaxStateDim)
      throw CapError("state dimension " + std::to_string(d) +
                     " exceeds the simulation cap");
    amp.assign(d, cplx{0.0, 0.0});
  }

  std::size_t dim() const { return amp.size(); }

  double norm() const {
    double s = 0.0;
    for (const cplx& x : amp) s += std::norm(x);
    return std::sqrt(s);
  }
};

inline StateVector new_basis_state(const Register& reg, const std::vector<int>& digits) {
  StateVector st(reg);
  st.amp[reg.index_of(digits)] = 1.0;
  return st;
}

inline StateVector new_basis_state(const Register& reg, const std::string& label) {
  return new_basis_state(reg, reg.parse_label(label));
}

inline StateVector new_basis_state(const Register& reg, std::size_t index) {
  StateVector st(reg);
  if (index >= st.dim()) throw DomainError("basis index out of range");
  st.amp[index] = 1.0;
  return st;
}

// Applies a controlled local unitary in place. Amplitudes of basis labels
// whose control digits mismatch are left untouched.
inline void apply_gate_in_place(StateVector& st, const Gate& g) {
  const Register& reg = st.reg;
  g.validate_for(reg);

  const std::size_t m = g.payload.n;
  const std::vector<std::size_t> stride = reg.strides();

  // offset of each payload index within the flat amplitude index
  std::vector<std::size_t> toff(m, 0);
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t rest = r;
    for (int i = static_cast<int>(g.targets.size()) - 1; i >= 0; --i) {
      const int w = g.targets[i];
      const std::size_t radix = static_cast<std::size_t>(reg.radices[w]);
      toff[r] += (rest % radix) * stride[w];
      rest /= radix;
    }
  }

  // wires outside the target set, most significant first
  std::vector<int> outer;
  outer.reserve(reg.wires());
  for (int w = 0; w < reg.wires(); ++w)
    if (std::find(g.targets.begin(), g.targets.end(), w) == g.targets.end())
      outer.push_back(w);

  std::size_t outer_count = 1;
  for (int w : outer) outer_count *= static_cast<std::size_t>(reg.radices[w]);

  // control positions within the outer wire list
  std::vector<std::pair<int, int>> ctl;  // (outer position, required digit)
  for (const Control& c : g.controls) {
    const auto it = std::find(outer.begin(), outer.end(), c.wire);
    ctl.emplace_back(static_cast<int>(it - outer.begin()), c.value);
  }

  cplx* amp = st.amp.data();
  detail::parallel_chunks(outer_count, [&](std::size_t lo, std::size_t hi) {
    std::vector<int> digit(outer.size(), 0);
    std::vector<cplx> in(m), out(m);
    for (std::size_t o = lo; o < hi; ++o) {
      std::size_t rest = o;
      std::size_t base = 0;
      for (int i = static_cast<int>(outer.size()) - 1; i >= 0; --i) {
        const std::size_t radix = static_cast<std::size_t>(reg.radices[outer[i]]);
        digit[i] = static_cast<int>(rest % radix);
        rest /= radix;
        base += static_cast<std::size_t>(digit[i]) * stride[outer[i]];
      }
      bool match = true;
      for (const auto& [pos, val] : ctl)
        if (digit[pos] != val) {
          match = false;
          break;
        }
      if (!match) continue;
      for (std::size_t r = 0; r < m; ++r) in[r] = amp[base + toff[r]];
      for (std::size_t r = 0; r < m; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t c = 0; c < m; ++c) acc += g.payload.at(r, c) * in[c];
        out[r] = acc;
      }
      for (std::size_t r = 0; r < m; ++r) amp[base + toff[r]] = out[r];
    }
  });
}

inline StateVector apply_gate(const StateVector& st, const Gate& g) {
  StateVector out = st;
  apply_gate_in_place(out, g);
  return out;
}

}  // namespace qwalk
