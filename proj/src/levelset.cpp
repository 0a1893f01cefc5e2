#include "qavg/levelset.hpp"

#include <cmath>
#include <map>

namespace qavg {

LevelDecomposition level_decompose(const GridFunction& f, double p, int k_max) {
  if (!(p >= 1.0)) throw RangeError("level decomposition requires p >= 1");
  const std::size_t n = f.size();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v = f[i];
    if (v.imag() != 0.0 || v.real() < 0.0)
      throw NegativeValueError("level decomposition expects f >= 0");
    if (v.real() > 0.0) norm += std::pow(v.real(), p);
  }
  if (norm == 0.0) throw ZeroFunctionError("level decomposition of the zero function");

  const double scale = std::pow(norm, 1.0 / p);
  LevelDecomposition dec;
  dec.p = p;
  dec.normalization = norm;

  std::map<int, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = f[i].real() / scale;
    if (g == 0.0) continue;
    // k with 2^{-k} <= g < 2^{-k+1}
    int e;
    std::frexp(g, &e);
    const int k = std::max(0, 1 - e);
    if (k > k_max) {
      dec.dropped_mass += std::pow(g, p);
      continue;
    }
    buckets[k].push_back(i);
  }
  for (auto& [k, idx] : buckets) {
    dec.levels.push_back(k);
    dec.sets.push_back(
        indicator_from_indices(f.field_ptr(), f.dim(), f.side(), idx));
  }
  return dec;
}

GridFunction reconstruct(const LevelDecomposition& dec) {
  if (dec.sets.empty()) throw EmptySetError("empty level decomposition");
  GridFunction out(dec.sets.front().field_ptr(), dec.sets.front().dim(),
                   dec.sets.front().side());
  for (std::size_t t = 0; t < dec.sets.size(); ++t)
    out.values() += std::pow(2.0, -dec.levels[t]) * dec.sets[t].values();
  return out;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::J1: return "J1";
    case Regime::J2: return "J2";
    default: return "J3";
  }
}

namespace {

std::uint64_t upow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Regime regime_classify(int d, std::uint32_t q, std::uint64_t size) {
  if (d % 2 != 0 || d < 2)
    throw UnsupportedError("size regimes are defined for even d");
  const std::uint64_t total = upow(q, d);
  if (size < 1 || size > total) throw RangeError("set size out of range");
  if (size <= upow(q, (d - 2) / 2)) return Regime::J1;
  if (size <= upow(q, d / 2)) return Regime::J2;
  return Regime::J3;
}

std::pair<std::uint64_t, std::uint64_t> regime_range(int d, std::uint32_t q,
                                                     Regime r) {
  if (d % 2 != 0 || d < 2)
    throw UnsupportedError("size regimes are defined for even d");
  const std::uint64_t lo_mid = upow(q, (d - 2) / 2);
  const std::uint64_t hi_mid = upow(q, d / 2);
  switch (r) {
    case Regime::J1: return {1, lo_mid};
    case Regime::J2: return {lo_mid + 1, hi_mid};
    default: return {hi_mid + 1, upow(q, d)};
  }
}

}  // namespace qavg
