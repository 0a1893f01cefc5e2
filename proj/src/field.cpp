#include "qavg/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace qavg {
namespace {

constexpr std::uint32_t kMaxFieldSize = 1u << 15;   // element index fits uint16_t
constexpr std::uint32_t kMaxTabulated = 256;        // q*q op tables below this

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t f = 2; f * f <= x; ++f)
    if (x % f == 0) return false;
  return true;
}

// Little-endian coefficient vectors over Z/p; the modulus is monic.
using Poly = std::vector<std::uint32_t>;

std::uint32_t poly_eval(const Poly& f, std::uint32_t x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % p;
  return std::uint32_t(acc);
}

// Remainder of f by a monic divisor.
Poly poly_mod(Poly f, const Poly& div, std::uint32_t p) {
  const std::size_t dd = div.size() - 1;
  while (f.size() > dd) {
    const std::uint64_t c = f.back();
    const std::size_t shift = f.size() - 1 - dd;
    if (c != 0)
      for (std::size_t j = 0; j < dd; ++j)
        f[shift + j] = std::uint32_t((f[shift + j] + c * (p - div[j])) % p);
    f.pop_back();
  }
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

// Exhaustive root test plus trial division by monic factors of degree
// 2..deg/2; adequate for the small degrees in scope.
bool poly_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  for (std::uint32_t x = 0; x < p; ++x)
    if (poly_eval(f, x, p) == 0) return false;
  if (deg == 1) return true;
  for (std::size_t k = 2; 2 * k <= deg; ++k) {
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= p;
    for (std::uint64_t c = 0; c < combos; ++c) {
      Poly div(k + 1, 0);
      std::uint64_t rest = c;
      for (std::size_t i = 0; i < k; ++i) {
        div[i] = std::uint32_t(rest % p);
        rest /= p;
      }
      div[k] = 1;
      if (poly_mod(f, div, p).empty()) return false;
    }
  }
  return true;
}

const std::map<std::uint32_t, Poly>& builtin_moduli() {
  // q -> monic irreducible modulus, little-endian coefficients.
  static const std::map<std::uint32_t, Poly> table = {
      {9, {1, 0, 1}},        // t^2 + 1 over F_3
      {25, {2, 0, 1}},       // t^2 + 2 over F_5
      {27, {1, 2, 0, 1}},    // t^3 + 2t + 1 over F_3
      {49, {1, 0, 1}},       // t^2 + 1 over F_7
      {81, {2, 1, 0, 0, 1}}, // t^4 + t + 2 over F_3
  };
  return table;
}

void decode_digits(std::uint32_t e, std::uint32_t p, std::uint32_t n,
                   std::uint32_t* out) {
  for (std::uint32_t i = 0; i < n; ++i) {
    out[i] = e % p;
    e /= p;
  }
}

std::uint32_t encode_digits(const std::uint32_t* c, std::uint32_t p,
                            std::uint32_t n) {
  std::uint32_t e = 0;
  for (std::uint32_t i = n; i-- > 0;) e = e * p + c[i];
  return e;
}

// Polynomial-basis product reduced by the monic modulus.
std::uint32_t elem_mul_poly(std::uint32_t a, std::uint32_t b, std::uint32_t p,
                            std::uint32_t n, const Poly& modulus) {
  std::uint32_t da[16], db[16];
  decode_digits(a, p, n, da);
  decode_digits(b, p, n, db);
  std::uint64_t prod[32] = {0};
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      prod[i + j] += std::uint64_t(da[i]) * db[j];
  for (std::uint32_t i = 2 * n - 2; i >= n && i < 32; --i) {
    const std::uint64_t c = prod[i] % p;
    prod[i] = 0;
    if (c != 0)
      for (std::uint32_t j = 0; j < n; ++j)
        prod[i - n + j] += c * (p - modulus[j]);
  }
  std::uint32_t out[16];
  for (std::uint32_t i = 0; i < n; ++i) out[i] = std::uint32_t(prod[i] % p);
  return encode_digits(out, p, n);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= x; ++f)
    if (x % f == 0) {
      out.push_back(f);
      while (x % f == 0) x /= f;
    }
  if (x > 1) out.push_back(x);
  return out;
}

}  // namespace

Elem Field::from_int(std::int64_t v) const {
  std::int64_t r = v % std::int64_t(p_);
  if (r < 0) r += p_;
  return {std::uint16_t(r)};
}

Elem Field::from_coeffs(std::span<const std::int64_t> c) const {
  if (c.size() > n_) throw RangeError("too many coordinates for this field");
  std::uint32_t digits[16] = {0};
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t r = c[i] % std::int64_t(p_);
    if (r < 0) r += p_;
    digits[i] = std::uint32_t(r);
  }
  return {std::uint16_t(encode_digits(digits, p_, n_))};
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::uint32_t digits[16];
  decode_digits(a.idx, p_, n_, digits);
  return std::vector<std::uint32_t>(digits, digits + n_);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem acc = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

Complex Field::gauss_sum(Elem t) const {
  Complex acc = 0.0;
  for (std::uint32_t s = 1; s < q_; ++s)
    acc += double(eta_[s]) * chi(mul(t, {std::uint16_t(s)}));
  return acc;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t n,
                    std::optional<std::vector<std::int64_t>> modulus) {
  if (p == 2) throw EvenCharacteristicError("even characteristic");
  if (!is_prime(p)) throw NonPrimeError("p = " + std::to_string(p) + " is not prime");
  if (n < 1 || n > 15) throw FieldRangeError("extension degree out of range");

  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    q64 *= p;
    if (q64 > kMaxFieldSize) throw FieldRangeError("field size out of supported range");
  }
  const auto q = std::uint32_t(q64);
  if (n > 1 && q > kMaxTabulated)
    throw FieldRangeError("extension field size out of supported range");

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->n_ = n;
  f->q_ = q;

  if (n > 1) {
    Poly mod;
    if (modulus.has_value()) {
      if (modulus->size() != n + 1)
        throw ReducibleModulusError("modulus must have degree n");
      mod.resize(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        std::int64_t r = (*modulus)[i] % std::int64_t(p);
        if (r < 0) r += p;
        mod[i] = std::uint32_t(r);
      }
      if (mod[n] != 1) throw ReducibleModulusError("modulus must be monic");
    } else {
      auto it = builtin_moduli().find(q);
      if (it == builtin_moduli().end())
        throw FieldRangeError("no built-in modulus for q = " + std::to_string(q));
      mod = it->second;
    }
    if (!poly_irreducible(mod, p))
      throw ReducibleModulusError("modulus is reducible over F_p");
    f->modulus_ = mod;
  }

  // Negation and addition.
  f->neg_table_.resize(q);
  std::uint32_t digits[16], digits2[16], sum[16];
  for (std::uint32_t e = 0; e < q; ++e) {
    decode_digits(e, p, n, digits);
    for (std::uint32_t i = 0; i < n; ++i) digits[i] = (p - digits[i]) % p;
    f->neg_table_[e] = std::uint16_t(encode_digits(digits, p, n));
  }
  if (q <= kMaxTabulated) {
    f->add_table_.resize(std::size_t(q) * q);
    for (std::uint32_t a = 0; a < q; ++a) {
      decode_digits(a, p, n, digits);
      for (std::uint32_t b = 0; b < q; ++b) {
        decode_digits(b, p, n, digits2);
        for (std::uint32_t i = 0; i < n; ++i) sum[i] = (digits[i] + digits2[i]) % p;
        f->add_table_[std::size_t(a) * q + b] = std::uint16_t(encode_digits(sum, p, n));
      }
    }
    f->mul_table_.resize(std::size_t(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = a; b < q; ++b) {
        const std::uint32_t m = (n == 1) ? (a * b) % p
                                         : elem_mul_poly(a, b, p, n, f->modulus_);
        f->mul_table_[std::size_t(a) * q + b] = std::uint16_t(m);
        f->mul_table_[std::size_t(b) * q + a] = std::uint16_t(m);
      }
  }

  // Inverses via a^(q-2).
  f->inv_table_.assign(q, 0);
  for (std::uint32_t a = 1; a < q; ++a)
    f->inv_table_[a] = f->pow({std::uint16_t(a)}, q - 2).idx;
  for (std::uint32_t a = 1; a < q; ++a)
    if (f->mul({std::uint16_t(a)}, {f->inv_table_[a]}).idx != 1)
      throw InternalConsistencyError("inverse table inconsistent");

  // Trace, characters, quadratic character.
  f->trace_.resize(q);
  for (std::uint32_t e = 0; e < q; ++e) {
    Elem acc{std::uint16_t(e)};
    Elem frob{std::uint16_t(e)};
    for (std::uint32_t i = 1; i < n; ++i) {
      frob = f->pow(frob, p);
      acc = f->add(acc, frob);
    }
    if (acc.idx >= p) throw InternalConsistencyError("trace not in prime subfield");
    f->trace_[e] = acc.idx;
  }
  f->unit_roots_.resize(p);
  for (std::uint32_t r = 0; r < p; ++r) {
    const double ang = 2.0 * std::numbers::pi * double(r) / double(p);
    f->unit_roots_[r] = Complex(std::cos(ang), std::sin(ang));
  }
  f->eta_.assign(q, -1);
  f->eta_[0] = 0;
  for (std::uint32_t s = 1; s < q; ++s)
    f->eta_[f->mul({std::uint16_t(s)}, {std::uint16_t(s)}).idx] = 1;
  std::size_t squares = 0;
  for (std::uint32_t s = 1; s < q; ++s) squares += f->eta_[s] == 1;
  if (squares != (q - 1) / 2)
    throw InternalConsistencyError("square count is not (q-1)/2");

  // Smallest generator, tested by prime factors of q - 1.
  const auto factors = prime_factors(q - 1);
  for (std::uint32_t g = 1; g < q; ++g) {
    bool full = true;
    for (auto ell : factors)
      if (f->pow({std::uint16_t(g)}, (q - 1) / ell).idx == 1) {
        full = false;
        break;
      }
    if (full) {
      f->gen_ = {std::uint16_t(g)};
      break;
    }
  }
  if (f->gen_.idx == 0) throw InternalConsistencyError("no generator found");

  // Gram permutation e -> G e for the trace pairing; identity when n = 1.
  f->gram_perm_.resize(q);
  if (n == 1) {
    for (std::uint32_t e = 0; e < q; ++e) f->gram_perm_[e] = std::uint16_t(e);
    f->gram_perm_ok_ = true;
  } else {
    std::vector<std::vector<std::uint32_t>> gram(n, std::vector<std::uint32_t>(n));
    Elem t = f->element(p);  // the basis element t has index p
    for (std::uint32_t j = 0; j < n; ++j)
      for (std::uint32_t k = 0; k < n; ++k)
        gram[j][k] = f->trace(f->pow(t, j + k));
    std::vector<bool> seen(q, false);
    bool ok = true;
    for (std::uint32_t e = 0; e < q; ++e) {
      decode_digits(e, p, n, digits);
      std::uint32_t u[16];
      for (std::uint32_t j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (std::uint32_t k = 0; k < n; ++k)
          acc += std::uint64_t(gram[j][k]) * digits[k];
        u[j] = std::uint32_t(acc % p);
      }
      const std::uint32_t img = encode_digits(u, p, n);
      f->gram_perm_[e] = std::uint16_t(img);
      if (seen[img]) ok = false;
      seen[img] = true;
    }
    f->gram_perm_ok_ = ok;
  }

  return f;
}

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint64_t q) {
  if (q < 2) throw NonPrimeError("q must be at least 2");
  std::uint64_t p = q;
  for (std::uint64_t f = 2; f * f <= q; ++f)
    if (q % f == 0) {
      p = f;
      break;
    }
  std::uint32_t n = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1)
    throw NonPrimeError("q = " + std::to_string(q) + " is not a prime power");
  return {std::uint32_t(p), n};
}

FieldPtr make_field_q(std::uint64_t q) {
  auto [p, n] = factor_prime_power(q);
  return make_field(p, n);
}

bool same_field(const Field& a, const Field& b) {
  return a.p() == b.p() && a.n() == b.n() && a.modulus() == b.modulus();
}

}  // namespace qavg
