#pragma once

#include "qavg/grid.hpp"

namespace qavg {

/// Dyadic level-set decomposition of a nonnegative function normalized to
/// sum |f|^p = 1 (counting sum): E_k collects the points whose normalized
/// value lies in [2^{-k}, 2^{-k+1}), so the reconstruction sum 2^{-k} E_k
/// sandwiches f/2 <= f~ <= f on the support. Values below 2^{-k_max} are
/// dropped and their p-mass reported.
struct LevelDecomposition {
  double p = 1.0;
  double normalization = 0.0;  // sum |f|^p before scaling
  double dropped_mass = 0.0;   // p-mass below the floor
  std::vector<int> levels;     // k values, ascending
  std::vector<GridFunction> sets;
};

LevelDecomposition level_decompose(const GridFunction& f, double p,
                                   int k_max = 60);

/// sum_k 2^{-k} E_k.
GridFunction reconstruct(const LevelDecomposition& dec);

/// Size regimes of the kernel-norm lemma: J1 for |E| <= q^{(d-2)/2}, J2 up
/// to q^{d/2}, J3 beyond. Even d.
enum class Regime { J1, J2, J3 };
const char* regime_name(Regime r);

Regime regime_classify(int d, std::uint32_t q, std::uint64_t size);

/// Inclusive size range [lo, hi] of a regime (even d).
std::pair<std::uint64_t, std::uint64_t> regime_range(int d, std::uint32_t q,
                                                     Regime r);

}  // namespace qavg
