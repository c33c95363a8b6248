#pragma once

// Independent root-isolation oracle: Descartes' rule of signs with
// bisection on the square-free part, bracket refinement by exact sign
// changes. Shares no code with the Sturm-based isolator.

#include <gmpxx.h>

#include <algorithm>
#include <utility>
#include <vector>

namespace specm::oracle {

using Q = mpq_class;
using Coeffs = std::vector<Q>;  // ascending degree

inline void trim(Coeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Q horner(const Coeffs& p, const Q& x) {
  Q v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

inline int sgn(const Q& q) { return q > 0 ? 1 : q < 0 ? -1 : 0; }

inline Coeffs rem(Coeffs a, const Coeffs& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Q f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Coeffs quo(Coeffs a, const Coeffs& b) {
  if (a.size() < b.size()) return {};
  Coeffs q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    Q f = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    a.pop_back();
  }
  return q;
}

inline Coeffs squarefree(const Coeffs& p) {
  Coeffs d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  if (d.empty()) return p;
  Coeffs a = p, b = d;
  while (!b.empty()) {
    Coeffs r = rem(a, b);
    a = b;
    b = r;
  }
  return quo(p, a);
}

/// Sign variations of (1+x)^n p((lo + hi x)/(1 + x)): an upper bound on the
/// roots in (lo, hi) with the same parity.
inline int descartes_bound(const Coeffs& p, const Q& lo, const Q& hi) {
  size_t n = p.size() - 1;
  // q(x) = sum p_i (lo + hi x)^i (1 + x)^(n - i)
  Coeffs q(n + 1, Q(0));
  for (size_t i = 0; i <= n; ++i) {
    Coeffs t{Q(1)};
    for (size_t k = 0; k < i; ++k) {
      Coeffs u(t.size() + 1, Q(0));
      for (size_t j = 0; j < t.size(); ++j) {
        u[j] += t[j] * lo;
        u[j + 1] += t[j] * hi;
      }
      t = u;
    }
    for (size_t k = 0; k < n - i; ++k) {
      Coeffs u(t.size() + 1, Q(0));
      for (size_t j = 0; j < t.size(); ++j) {
        u[j] += t[j];
        u[j + 1] += t[j];
      }
      t = u;
    }
    for (size_t j = 0; j < t.size(); ++j) q[j] += p[i] * t[j];
  }
  int v = 0, last = 0;
  for (const auto& c : q) {
    int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// Brackets [lo, hi] of width at most `width`, one per real root of p in
/// the closed window, ascending. Exact roots come back as [r, r].
inline std::vector<std::pair<Q, Q>> isolate(Coeffs p, const Q& window_lo, const Q& window_hi, const Q& width) {
  trim(p);
  Coeffs s = squarefree(p);
  std::vector<std::pair<Q, Q>> out;
  if (s.size() <= 1) return out;
  std::vector<std::pair<Q, Q>> stack{{window_lo, window_hi}};
  if (horner(s, window_lo) == 0) out.push_back({window_lo, window_lo});
  if (horner(s, window_hi) == 0) out.push_back({window_hi, window_hi});
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int v = descartes_bound(s, a, b);
    if (v == 0) continue;
    if (v == 1 && horner(s, a) != 0 && horner(s, b) != 0) {
      // One simple root in the open interval: bisect on the sign change.
      Q lo = a, hi = b;
      int slo = sgn(horner(s, lo));
      while (hi - lo > width) {
        Q mid = (lo + hi) / 2;
        int sm = sgn(horner(s, mid));
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == slo) lo = mid;
        else hi = mid;
      }
      out.push_back({lo, hi});
      continue;
    }
    Q mid = (a + b) / 2;
    if (horner(s, mid) == 0) out.push_back({mid, mid});
    stack.push_back({a, mid});
    stack.push_back({mid, b});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Cauchy bound: every real root lies in (-B, B).
inline Q cauchy_bound(Coeffs p) {
  trim(p);
  Q m = 0;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Q r = abs(p[i] / p.back());
    if (r > m) m = r;
  }
  return m + 1;
}

}  // namespace specm::oracle
