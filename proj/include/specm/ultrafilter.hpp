#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace specm {

/// Finite sigma-function: each index carries a finite set of primes
/// (Primes mode) or a single bit (Bits mode, the real-valued analogue).
/// Sub-functions rho <= sigma are bitmasks over the flattened atoms.
struct SigmaFn {
  enum class Mode { Primes, Bits };
  Mode mode = Mode::Primes;
  std::vector<std::string> labels;
  /// Primes mode: ascending primes per index. Bits mode: {} or {1}.
  std::vector<std::vector<int>> values;

  /// Throws InvalidArgument for the blank function, repeated labels,
  /// non-primes, or arity mismatch.
  static SigmaFn primes(std::vector<std::string> labels, std::vector<std::vector<int>> primes);
  static SigmaFn bits(std::vector<std::string> labels, std::vector<int> bits);

  struct Atom {
    size_t index;
    int prime;  ///< 0 in Bits mode
  };
  std::vector<Atom> atoms() const;
  uint32_t full_mask() const { return (uint32_t(1) << atoms().size()) - 1; }
  /// "{i1: {2,3}, i2: {2}}" style rendering of a sub-function.
  std::string render(uint32_t mask) const;
};

struct UltraFilter {
  SigmaFn base;
  std::vector<uint32_t> members;  ///< ascending masks

  bool contains(uint32_t mask) const;
  std::string to_string() const;
};

/// Axioms: the blank function is out and sigma is in; closed under meets;
/// every rho <= sigma has rho or its complement inside.
bool is_ultrafilter(const UltraFilter& f);

/// All ultrafilters on sigma. Throws TooLarge beyond 6 indices or 12 atoms.
std::vector<UltraFilter> enumerate_ultrafilters(const SigmaFn& sigma);

/// Ideal of (Z/m)^n, elements encoded in mixed radix m (coordinate 0 lowest).
struct FiniteIdeal {
  int modulus = 1;
  size_t arity = 0;
  std::vector<uint32_t> elements;  ///< ascending codes

  bool contains(const std::vector<int>& a) const;
  std::string to_string() const;
  friend bool operator==(const FiniteIdeal& a, const FiniteIdeal& b) {
    return a.modulus == b.modulus && a.arity == b.arity && a.elements == b.elements;
  }
};

std::vector<int> decode(uint32_t code, int modulus, size_t arity);
uint32_t encode(const std::vector<int>& a, int modulus);

/// Exact maximality test through the coordinate decomposition of ideals of
/// a finite product ring.
bool is_maximal(const FiniteIdeal& j);

/// Every maximal ideal of (Z/m)^n by exhaustive enumeration: all principal
/// ideals aR (every ideal here is principal), then the maximal ones under
/// inclusion. Independent of is_maximal. Throws TooLarge past 10^6 elements.
std::vector<FiniteIdeal> brute_force_maximal_ideals(int modulus, size_t arity);

/// {a : rho_a in F}. Throws BadModulus when a prime of sigma does not divide
/// m (Bits mode: m must be prime), TooLarge past 10^6 elements.
FiniteIdeal uf_to_ideal(const UltraFilter& f, int modulus);
/// {rho_a : a in J}. Throws NotMaximal, and InvalidArgument when the image
/// is not an ultrafilter on sigma.
UltraFilter ideal_to_uf(const FiniteIdeal& j, const SigmaFn& sigma);

}  // namespace specm
