#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>

#include "qavg/field.hpp"

namespace qavg {

inline constexpr std::uint64_t kDefaultGridBudget = std::uint64_t(1) << 22;

/// Process-wide cap on q^d. The CLI sets it from config / QAVG_GRID_BUDGET.
std::uint64_t grid_budget();
void set_grid_budget(std::uint64_t budget);

/// Which measure convention a grid lives under: SpaceDx carries the
/// normalized counting measure dx, FreqDm the counting measure dm on the
/// dual side. Norms and transforms dispatch on this tag.
enum class Side { SpaceDx, FreqDm };
const char* side_name(Side s);

using CVec = Eigen::VectorXcd;

/// q^d, checked against the active grid budget.
std::size_t grid_size_checked(const Field& f, int d);

/// Dense complex-valued function on F_q^d. A point x = (x_0, ..., x_{d-1})
/// lives at flat index sum_i idx(x_i) q^i (little-endian in the coordinates).
class GridFunction {
 public:
  GridFunction(FieldPtr field, int d, Side side);

  static GridFunction constant(FieldPtr field, int d, Side side, Complex value);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int dim() const { return d_; }
  Side side() const { return side_; }
  std::size_t size() const { return std::size_t(values_.size()); }

  CVec& values() { return values_; }
  const CVec& values() const { return values_; }

  Complex operator[](std::size_t i) const { return values_[Eigen::Index(i)]; }
  Complex& operator[](std::size_t i) { return values_[Eigen::Index(i)]; }

  Complex at(std::span<const Elem> x) const;
  void set(std::span<const Elem> x, Complex v);

  /// Copy carrying the other measure tag (for operations that move a grid
  /// across the pairing without transforming it).
  GridFunction retagged(Side side) const;

 private:
  FieldPtr field_;
  int d_;
  Side side_;
  CVec values_;
};

std::size_t encode_point(const Field& f, std::span<const Elem> x);
void decode_point(const Field& f, int d, std::size_t index, std::span<Elem> out);

/// Throws SideMismatchError unless both grids share field, dimension, side.
void require_compatible(const GridFunction& a, const GridFunction& b);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Complex c, const GridFunction& g);

/// Pointwise product (same side both; used for Fourier multipliers).
GridFunction pointwise(const GridFunction& a, const GridFunction& b);

/// q^{-d} sum_x f(x); requires the dx side.
Complex mean_value(const GridFunction& f);

GridFunction indicator_from_indices(FieldPtr field, int d, Side side,
                                    std::span<const std::size_t> indices);

/// CSV dump: index, x_coords (semicolon-joined), re, im; floats at 17
/// significant digits.
void dump_csv(const GridFunction& g, std::ostream& os);

}  // namespace qavg
