#pragma once

#include <functional>
#include <optional>

#include "qavg/grid.hpp"
#include "qavg/rational.hpp"

namespace qavg {

/// Diagonal nondegenerate quadratic surface S = {x : a_1 x_1^2 + ... +
/// a_d x_d^2 = 0} with all a_j nonzero.
struct QuadraticSurface {
  FieldPtr field;
  int d = 0;
  std::vector<Elem> coeffs;
};

/// Coefficients given as signed integers reduced mod p (-1 means p - 1).
QuadraticSurface make_surface(FieldPtr field,
                              std::span<const std::int64_t> signed_coeffs);
QuadraticSurface make_surface_elems(FieldPtr field, std::vector<Elem> coeffs);

/// Q(x) = sum a_j x_j^2.
Elem eval_form(const QuadraticSurface& s, std::span<const Elem> x);

/// Dual form value m_1^2/a_1 + ... + m_d^2/a_d.
Elem eval_dual_form(const QuadraticSurface& s, std::span<const Elem> m);

struct SurfaceEnumeration {
  GridFunction indicator;  // SpaceDx, {0,1}-valued
  std::uint64_t count;
};
SurfaceEnumeration enumerate_surface(const QuadraticSurface& s);

/// |S| = q^{d-1} + G_1^d (1 - q^{-1}) eta(a_1...a_d), even d only; the
/// complex expression is checked to be a near-integer and rounded.
std::uint64_t count_points_closed_form(const QuadraticSurface& s);

/// Surface with inverted coefficients; carries the dual form's zero set.
QuadraticSurface dual_surface(const QuadraticSurface& s);

/// True iff S contains a d/2-dimensional linear subspace (even d).
/// Realized as the discriminant criterion eta((-1)^{d/2} a_1...a_d) == +1;
/// the tests validate the criterion against exhaustive subspace search.
bool hyperbolicity_test(const QuadraticSurface& s);

struct IsotropicSubspace {
  std::vector<std::vector<Elem>> basis;  // dim() vectors of length d
  int dim() const { return int(basis.size()); }
};

enum class SubspaceMode { Construct, Search };

/// Construct mode pairs coordinates with opposite coefficients (the paired
/// basis t -> t(e_i + e_j)); search mode walks row-reduced echelon bases in
/// enumeration order and returns the first subspace that verifies, or
/// nullopt. Every returned subspace passes verify_isotropic.
std::optional<IsotropicSubspace> isotropic_subspace(const QuadraticSurface& s,
                                                    SubspaceMode mode);

/// Exhaustive check: basis is independent and all q^k combinations lie in S.
bool verify_isotropic(const QuadraticSurface& s, const IsotropicSubspace& h);

/// Indicator grid of the subspace (mass q^{dim}).
GridFunction subspace_indicator(const QuadraticSurface& s,
                                const IsotropicSubspace& h);

/// Visits every k-dimensional subspace of F_q^d exactly once via row-reduced
/// echelon bases; the visitor returns true to stop early. Returns the number
/// of subspaces visited.
std::uint64_t for_each_subspace(
    const Field& f, int d, int k,
    const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit);

// ----- exponent-region geometry (exact rational arithmetic) -----

struct RatPoint {
  Rational x, y;
  friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

/// Closed halfplane a*x + b*y <= c.
struct Halfplane {
  Rational a, b, c;
};

struct ExponentRegion {
  std::vector<RatPoint> vertices;    // as specified
  std::vector<RatPoint> hull;        // CCW convex hull
  std::vector<Halfplane> halfplanes; // derived from hull edges
};

ExponentRegion make_region(std::vector<RatPoint> vertices);

/// hyperbolic: the five-vertex hull for even-d surfaces containing a
/// d/2-dimensional subspace; otherwise the general four-vertex hull.
ExponentRegion region_for(int d, bool hyperbolic);

enum class RegionLocation { Vertex, Boundary, Inside, Outside };
const char* location_name(RegionLocation loc);

RegionLocation region_classify(const ExponentRegion& r, const RatPoint& pt);
/// Membership in the closed hull.
bool region_contains(const ExponentRegion& r, const RatPoint& pt);

}  // namespace qavg
