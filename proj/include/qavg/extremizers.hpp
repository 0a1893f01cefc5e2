#pragma once

#include <optional>
#include <string>

#include "qavg/bounds.hpp"
#include "qavg/rng.hpp"

namespace qavg {

/// Test-function families for strong-type probing: the point mass, the
/// isotropic subspace, random sets, dyadic sums of random disjoint sets, and
/// sublevel sets of the quadratic form.
enum class FamilyKind { Delta, Subspace, RandomSet, DyadicRandom, Sublevel };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Delta;
  std::uint64_t param = 0;  // size / levels / value-count, family-dependent
};

/// Parses "delta", "subspace", "random_set:SIZE", "dyadic_random:LEVELS",
/// "sublevel:COUNT".
FamilySpec parse_family(const std::string& text);
std::string family_name(const FamilySpec& spec);

/// Builds the family member. Random families draw from a DetRng seeded with
/// `seed`, so equal (spec, seed) pairs give identical grids. Subspace needs
/// the isotropic subspace of a hyperbolic surface.
GridFunction make_extremizer(const FamilySpec& spec, const SurfaceData& sd,
                             const std::optional<IsotropicSubspace>& subspace,
                             std::uint64_t seed);

/// Construct-mode subspace when the coefficient pattern pairs up, otherwise
/// echelon search; nullopt when S has no d/2-dimensional subspace.
std::optional<IsotropicSubspace> find_isotropic_subspace(
    const QuadraticSurface& s);

struct SharpnessRow {
  std::uint32_t q = 0;
  double ratio_subspace = 0.0;
  double ratio_delta = 0.0;
};

struct SharpnessReport {
  RatPoint point;
  std::vector<SharpnessRow> rows;
  double slope_subspace = 0.0;
  double slope_delta = 0.0;
};

/// Measures the averaging ratio at an exponent pair outside the hyperbolic
/// region for f = subspace indicator and f = delta across q_list, and fits
/// the log_q growth slope. Throws ProbeMeaninglessError for points inside
/// the region (where no growth is expected).
SharpnessReport sharpness_probe(int d, std::span<const std::int64_t> pattern,
                                const RatPoint& point,
                                std::span<const std::uint32_t> q_list);

}  // namespace qavg
