#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qavg/errors.hpp"

namespace qavg {

using Complex = std::complex<double>;

/// Element of F_q, identified by its index in the field's canonical
/// enumeration: idx = c_0 + c_1 p + ... + c_{n-1} p^{n-1} for the
/// polynomial-basis coordinates (c_0, ..., c_{n-1}). For n = 1 the index is
/// the residue itself.
struct Elem {
  std::uint16_t idx = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Arithmetic in F_q for an odd prime power q = p^n, together with the
/// canonical additive character chi(x) = exp(2 pi i Tr(x)/p), the quadratic
/// character eta, and Gauss sums. Immutable after construction; safe to share
/// across workers.
class Field {
 public:
  std::uint32_t p() const { return p_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t q() const { return q_; }

  Elem zero() const { return {0}; }
  Elem one() const { return {1}; }
  /// Smallest element (in enumeration order) of multiplicative order q - 1.
  Elem generator() const { return gen_; }
  /// Monic modulus coefficients, little-endian; empty for n = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem element(std::uint32_t index) const {
    if (index >= q_) throw RangeError("element index out of range");
    return {std::uint16_t(index)};
  }
  /// v mod p embedded as a constant; -1 means p - 1.
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(std::span<const std::int64_t> c) const;
  std::vector<std::uint32_t> coeffs(Elem a) const;

  Elem add(Elem a, Elem b) const {
    if (!add_table_.empty()) return {add_table_[std::size_t(a.idx) * q_ + b.idx]};
    return {std::uint16_t((std::uint32_t(a.idx) + b.idx) % p_)};
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return {neg_table_[a.idx]}; }
  Elem mul(Elem a, Elem b) const {
    if (!mul_table_.empty()) return {mul_table_[std::size_t(a.idx) * q_ + b.idx]};
    return {std::uint16_t((std::uint64_t(a.idx) * b.idx) % p_)};
  }
  Elem inv(Elem a) const {
    if (a.idx == 0) throw ZeroInversionError("inversion of zero");
    return {inv_table_[a.idx]};
  }
  Elem pow(Elem a, std::uint64_t e) const;

  /// Tr(x) = x + x^p + ... + x^{p^{n-1}}, as a residue in [0, p).
  std::uint32_t trace(Elem a) const { return trace_[a.idx]; }

  /// chi(x) = exp(2 pi i Tr(x)/p); |chi| = 1 and chi(x+y) = chi(x) chi(y).
  Complex chi(Elem a) const { return unit_roots_[trace_[a.idx]]; }

  /// Quadratic character: +1 on nonzero squares, -1 on non-squares, 0 at 0.
  int eta(Elem a) const { return eta_[a.idx]; }

  /// G_t = sum_{s != 0} eta(s) chi(t s).
  Complex gauss_sum(Elem t) const;

  /// Per-element index map e -> G e (digitwise, G the Gram matrix of the
  /// trace pairing in the polynomial basis). Bijective whenever the pairing
  /// is nondegenerate; the tensor transform gathers through it.
  const std::vector<std::uint16_t>& gram_perm() const { return gram_perm_; }
  bool gram_perm_is_bijection() const { return gram_perm_ok_; }

  friend FieldPtr make_field(std::uint32_t p, std::uint32_t n,
                             std::optional<std::vector<std::int64_t>> modulus);

 private:
  Field() = default;

  std::uint32_t p_ = 0, n_ = 0, q_ = 0;
  Elem gen_{0};
  std::vector<std::uint32_t> modulus_;       // monic, little-endian, size n+1
  std::vector<std::uint16_t> add_table_;     // q*q when tabulated
  std::vector<std::uint16_t> mul_table_;     // q*q when tabulated
  std::vector<std::uint16_t> neg_table_;     // q
  std::vector<std::uint16_t> inv_table_;     // q (entry 0 unused)
  std::vector<std::uint32_t> trace_;         // q
  std::vector<std::int8_t> eta_;             // q
  std::vector<Complex> unit_roots_;          // p
  std::vector<std::uint16_t> gram_perm_;     // q
  bool gram_perm_ok_ = false;
};

/// Builds F_p (n = 1) or F_{p^n} from a monic irreducible modulus over F_p;
/// for q in {9, 25, 27, 49, 81} a built-in table supplies the modulus when
/// omitted. Throws NonPrimeError, EvenCharacteristicError,
/// ReducibleModulusError, or FieldRangeError.
FieldPtr make_field(std::uint32_t p, std::uint32_t n = 1,
                    std::optional<std::vector<std::int64_t>> modulus = std::nullopt);

/// Splits q into (p, n) with p prime; throws NonPrimeError when q is not a
/// prime power.
std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q);

/// Convenience: make_field from q alone.
FieldPtr make_field_q(std::uint64_t q);

/// Whether two fields have identical construction (same p, n, modulus).
bool same_field(const Field& a, const Field& b);

}  // namespace qavg
