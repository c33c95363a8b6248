#include "specm/poly.hpp"

#include <algorithm>

#include "specm/error.hpp"

namespace specm {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
Poly Poly::x() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

Poly Poly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::linear_root(const Rational& r) { return Poly(std::vector<Rational>{Rational(-r), Rational(1)}); }

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

Rational Poly::lead() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Poly::sign_at(const Rational& x) const { return sgn(eval(x)); }

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Rational l = c_.back();
  std::vector<Rational> v(c_);
  for (auto& q : v) q /= l;
  return Poly(std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Rational> v(c_);
  for (auto& q : v) q = -q;
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) {
    if (i < a.c_.size()) v[i] += a.c_[i];
    if (i < b.c_.size()) v[i] += b.c_[i];
  }
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly operator*(const Rational& s, const Poly& p) {
  if (s == 0) return Poly();
  std::vector<Rational> v(p.c_);
  for (auto& q : v) q *= s;
  return Poly(std::move(v));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs_of(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (i == 0) {
      out += specm::to_string(mag);
      continue;
    }
    if (mag != 1) out += specm::to_string(mag) + "*";
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  std::vector<Rational> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> quo(static_cast<size_t>(a.degree() - db) + 1);
  Rational lb = b.lead();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[static_cast<size_t>(i)] / lb;
    quo[static_cast<size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b.coeffs()[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) return p;
  if (p.degree() == 0) return Poly::constant(1);
  Poly g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

std::vector<Poly> sturm_sequence(const Poly& p) {
  std::vector<Poly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  Poly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const Poly& a = chain[chain.size() - 2];
    const Poly& b = chain.back();
    Poly r = divmod(a, b).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps signs and tames coefficient growth.
    Rational l = abs_of(r.lead());
    chain.push_back((Rational(-1) / l) * r);
  }
  return chain;
}

int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
  int prev = 0, count = 0;
  for (const auto& p : chain) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

std::pair<Rational, Rational> poly_range_bound(const Poly& p, const Rational& lo, const Rational& hi) {
  Rational a = 0, b = 0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    // [a,b] * [lo,hi]
    Rational p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
    a = std::min({p1, p2, p3, p4});
    b = std::max({p1, p2, p3, p4});
    a += *it;
    b += *it;
  }
  return {a, b};
}

}  // namespace specm
