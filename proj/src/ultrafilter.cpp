#include "specm/ultrafilter.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "specm/error.hpp"

namespace specm {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

uint64_t ring_size(int modulus, size_t arity) {
  uint64_t n = 1;
  for (size_t i = 0; i < arity; ++i) {
    n *= static_cast<uint64_t>(modulus);
    if (n > 1000000) fail(ErrorCode::TooLarge, "(Z/m)^n has more than 10^6 elements");
  }
  return n;
}

void check_labels(const std::vector<std::string>& labels, size_t n) {
  if (labels.size() != n) fail(ErrorCode::InvalidArgument, "one value per index label is required");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) fail(ErrorCode::InvalidArgument, "index labels must be distinct");
}

}  // namespace

SigmaFn SigmaFn::primes(std::vector<std::string> labels, std::vector<std::vector<int>> primes) {
  check_labels(labels, primes.size());
  bool blank = true;
  for (auto& ps : primes) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (int p : ps)
      if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (!ps.empty()) blank = false;
  }
  if (blank) fail(ErrorCode::InvalidArgument, "the blank function carries no ultrafilter");
  return SigmaFn{Mode::Primes, std::move(labels), std::move(primes)};
}

SigmaFn SigmaFn::bits(std::vector<std::string> labels, std::vector<int> bits) {
  check_labels(labels, bits.size());
  std::vector<std::vector<int>> values;
  for (int b : bits) {
    if (b != 0 && b != 1) fail(ErrorCode::InvalidArgument, "bits must be 0 or 1");
    values.push_back(b ? std::vector<int>{1} : std::vector<int>{});
  }
  if (std::count(bits.begin(), bits.end(), 1) == 0)
    fail(ErrorCode::InvalidArgument, "the blank function carries no ultrafilter");
  return SigmaFn{Mode::Bits, std::move(labels), std::move(values)};
}

std::vector<SigmaFn::Atom> SigmaFn::atoms() const {
  std::vector<Atom> out;
  for (size_t i = 0; i < values.size(); ++i)
    for (int p : values[i]) out.push_back(Atom{i, mode == Mode::Primes ? p : 0});
  return out;
}

std::string SigmaFn::render(uint32_t mask) const {
  auto at = atoms();
  std::string s = "{";
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) s += ", ";
    s += labels[i] + ": ";
    std::vector<std::string> parts;
    for (size_t k = 0; k < at.size(); ++k)
      if (at[k].index == i && (mask >> k & 1)) parts.push_back(std::to_string(mode == Mode::Primes ? at[k].prime : 1));
    if (mode == Mode::Bits) {
      s += parts.empty() ? "0" : "1";
      continue;
    }
    s += "{";
    for (size_t k = 0; k < parts.size(); ++k) s += (k ? "," : "") + parts[k];
    s += "}";
  }
  return s + "}";
}

bool UltraFilter::contains(uint32_t mask) const { return std::binary_search(members.begin(), members.end(), mask); }

std::string UltraFilter::to_string() const {
  // Ultrafilters on finite sigma are principal; show the generator.
  uint32_t meet = base.full_mask();
  for (uint32_t m : members) meet &= m;
  return "ultrafilter generated by " + base.render(meet);
}

bool is_ultrafilter(const UltraFilter& f) {
  uint32_t full = f.base.full_mask();
  if (f.contains(0) || !f.contains(full)) return false;
  for (uint32_t a : f.members) {
    if ((a & ~full) != 0) return false;
    for (uint32_t b : f.members)
      if (!f.contains(a & b)) return false;
  }
  for (uint32_t rho = 0; rho <= full; ++rho)
    if (!f.contains(rho) && !f.contains(full & ~rho)) return false;
  return true;
}

std::vector<UltraFilter> enumerate_ultrafilters(const SigmaFn& sigma) {
  size_t n = sigma.atoms().size();
  if (sigma.labels.size() > 6 || n > 12) fail(ErrorCode::TooLarge, "at most 6 indices and 12 atoms");
  uint32_t full = sigma.full_mask();
  // A filter is determined by the meet of its members; keep every up-set
  // that satisfies the axioms.
  std::vector<UltraFilter> out;
  for (uint32_t gen = 1; gen <= full; ++gen) {
    UltraFilter f{sigma, {}};
    for (uint32_t m = 0; m <= full; ++m)
      if ((m & gen) == gen) f.members.push_back(m);
    if (is_ultrafilter(f)) out.push_back(std::move(f));
  }
  return out;
}

namespace {

void decode_into(uint32_t code, int modulus, std::vector<int>& a) {
  for (auto& v : a) {
    v = static_cast<int>(code % static_cast<uint32_t>(modulus));
    code /= static_cast<uint32_t>(modulus);
  }
}

}  // namespace

std::vector<int> decode(uint32_t code, int modulus, size_t arity) {
  std::vector<int> a(arity);
  decode_into(code, modulus, a);
  return a;
}

uint32_t encode(const std::vector<int>& a, int modulus) {
  uint32_t code = 0;
  for (size_t i = a.size(); i-- > 0;) code = code * static_cast<uint32_t>(modulus) + static_cast<uint32_t>(a[i]);
  return code;
}

bool FiniteIdeal::contains(const std::vector<int>& a) const {
  return std::binary_search(elements.begin(), elements.end(), encode(a, modulus));
}

std::string FiniteIdeal::to_string() const {
  // Ideals of a finite product ring are products of coordinate ideals d_i Z/m.
  std::string s;
  for (size_t i = 0; i < arity; ++i) {
    int g = modulus;
    for (uint32_t c : elements) g = std::gcd(g, decode(c, modulus, arity)[i]);
    s += (i ? " x " : "") + std::to_string(g) + "Z/" + std::to_string(modulus);
  }
  return s;
}

bool is_maximal(const FiniteIdeal& j) {
  uint64_t size = ring_size(j.modulus, j.arity);
  if (j.elements.empty()) return false;
  // Projections to each coordinate; the ideal must be their product.
  std::vector<int> gens(j.arity, j.modulus);
  std::vector<int> a(j.arity);
  for (uint32_t c : j.elements) {
    decode_into(c, j.modulus, a);
    for (size_t i = 0; i < j.arity; ++i) gens[i] = std::gcd(gens[i], a[i]);
  }
  uint64_t product = 1;
  for (int g : gens) product *= static_cast<uint64_t>(j.modulus / g);
  if (product != j.elements.size()) return false;
  for (uint32_t c : j.elements) {
    decode_into(c, j.modulus, a);
    for (size_t i = 0; i < j.arity; ++i)
      if (a[i] % gens[i] != 0) return false;
  }
  (void)size;
  // Exactly one proper coordinate, and that one of prime index.
  int proper = 0;
  for (int g : gens) {
    if (g == 1) continue;
    ++proper;
    if (!is_prime(g)) return false;
  }
  return proper == 1;
}

std::vector<FiniteIdeal> brute_force_maximal_ideals(int modulus, size_t arity) {
  if (modulus < 1) fail(ErrorCode::BadModulus, "modulus must be positive");
  uint64_t size = ring_size(modulus, arity);
  const uint32_t m = static_cast<uint32_t>(modulus);
  std::vector<uint32_t> pw(arity + 1, 1);
  for (size_t i = 1; i <= arity; ++i) pw[i] = pw[i - 1] * m;
  // Principal ideal aR for every a, as a bitmap; deduplicated.
  std::vector<std::vector<uint64_t>> ideals;
  std::set<std::vector<uint64_t>> seen;
  size_t words = (size + 63) / 64;
  std::vector<uint32_t> codes;
  codes.reserve(size);
  for (uint32_t a = 0; a < size; ++a) {
    std::vector<uint64_t> bits(words, 0);
    auto av = decode(a, modulus, arity);
    // Codes of a*r for every r, built coordinate by coordinate.
    codes.assign(1, 0);
    for (size_t i = 0; i < arity; ++i) {
      size_t n = codes.size();
      for (uint32_t r = 1; r < m; ++r) {
        uint32_t t = static_cast<uint32_t>(av[i]) * r % m * pw[i];
        for (size_t k = 0; k < n; ++k) codes.push_back(codes[k] + t);
      }
    }
    for (uint32_t c : codes) bits[c / 64] |= uint64_t(1) << (c % 64);
    if (seen.insert(bits).second) ideals.push_back(std::move(bits));
  }
  auto count = [](const std::vector<uint64_t>& b) {
    size_t c = 0;
    for (uint64_t w : b) c += static_cast<size_t>(__builtin_popcountll(w));
    return c;
  };
  auto subset = [](const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if ((a[i] & ~b[i]) != 0) return false;
    return true;
  };
  std::vector<FiniteIdeal> out;
  for (const auto& j : ideals) {
    size_t cj = count(j);
    if (cj == size) continue;
    bool maximal = true;
    for (const auto& k : ideals) {
      size_t ck = count(k);
      if (ck > cj && ck < size && subset(j, k)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    FiniteIdeal f{modulus, arity, {}};
    for (uint32_t c = 0; c < size; ++c)
      if (j[c / 64] >> (c % 64) & 1) f.elements.push_back(c);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const FiniteIdeal& a, const FiniteIdeal& b) { return a.elements < b.elements; });
  return out;
}

namespace {

/// rho_a as a mask over sigma's atoms.
uint32_t rho(const SigmaFn& sigma, const std::vector<SigmaFn::Atom>& atoms, const std::vector<int>& a, int modulus) {
  uint32_t mask = 0;
  for (size_t k = 0; k < atoms.size(); ++k) {
    int v = a[atoms[k].index];
    bool hit = sigma.mode == SigmaFn::Mode::Primes ? v % atoms[k].prime == 0 : v % modulus == 0;
    if (hit) mask |= uint32_t(1) << k;
  }
  return mask;
}

void check_modulus(const SigmaFn& sigma, int modulus) {
  if (modulus < 2) fail(ErrorCode::BadModulus, "modulus must be at least 2");
  if (sigma.mode == SigmaFn::Mode::Bits) {
    if (!is_prime(modulus)) fail(ErrorCode::BadModulus, "the bit model needs a prime modulus");
    return;
  }
  for (const auto& a : sigma.atoms())
    if (modulus % a.prime != 0)
      fail(ErrorCode::BadModulus, std::to_string(a.prime) + " does not divide " + std::to_string(modulus));
}

}  // namespace

FiniteIdeal uf_to_ideal(const UltraFilter& f, int modulus) {
  check_modulus(f.base, modulus);
  size_t arity = f.base.labels.size();
  uint64_t size = ring_size(modulus, arity);
  auto atoms = f.base.atoms();
  FiniteIdeal j{modulus, arity, {}};
  std::vector<int> a(arity);
  for (uint32_t c = 0; c < size; ++c) {
    decode_into(c, modulus, a);
    if (f.contains(rho(f.base, atoms, a, modulus))) j.elements.push_back(c);
  }
  if (!is_maximal(j)) fail(ErrorCode::InvalidArgument, "the preimage is not a maximal ideal");
  return j;
}

UltraFilter ideal_to_uf(const FiniteIdeal& j, const SigmaFn& sigma) {
  if (j.arity != sigma.labels.size()) fail(ErrorCode::InvalidArgument, "ideal and sigma differ in arity");
  check_modulus(sigma, j.modulus);
  if (!is_maximal(j)) fail(ErrorCode::NotMaximal, j.to_string() + " is not maximal");
  auto atoms = sigma.atoms();
  std::set<uint32_t> masks;
  std::vector<int> a(j.arity);
  for (uint32_t c : j.elements) {
    decode_into(c, j.modulus, a);
    masks.insert(rho(sigma, atoms, a, j.modulus));
  }
  UltraFilter f{sigma, std::vector<uint32_t>(masks.begin(), masks.end())};
  if (!is_ultrafilter(f)) fail(ErrorCode::InvalidArgument, j.to_string() + " does not lie over sigma");
  return f;
}

}  // namespace specm
