#include "qavg/grid.hpp"

#include <atomic>
#include <cstdio>
#include <ostream>

namespace qavg {
namespace {

std::atomic<std::uint64_t> g_budget{kDefaultGridBudget};

}  // namespace

std::uint64_t grid_budget() { return g_budget.load(); }
void set_grid_budget(std::uint64_t budget) { g_budget.store(budget); }

const char* side_name(Side s) {
  return s == Side::SpaceDx ? "SpaceDx" : "FreqDm";
}

std::size_t grid_size_checked(const Field& f, int d) {
  if (d < 1) throw RangeError("dimension must be at least 1");
  const std::uint64_t budget = grid_budget();
  std::uint64_t size = 1;
  for (int i = 0; i < d; ++i) {
    size *= f.q();
    if (size > budget) throw GridBudgetError("grid budget exceeded");
  }
  return std::size_t(size);
}

GridFunction::GridFunction(FieldPtr field, int d, Side side)
    : field_(std::move(field)), d_(d), side_(side) {
  values_ = CVec::Zero(Eigen::Index(grid_size_checked(*field_, d_)));
}

GridFunction GridFunction::constant(FieldPtr field, int d, Side side,
                                    Complex value) {
  GridFunction g(std::move(field), d, side);
  g.values_.setConstant(value);
  return g;
}

Complex GridFunction::at(std::span<const Elem> x) const {
  return values_[Eigen::Index(encode_point(*field_, x))];
}

void GridFunction::set(std::span<const Elem> x, Complex v) {
  values_[Eigen::Index(encode_point(*field_, x))] = v;
}

GridFunction GridFunction::retagged(Side side) const {
  GridFunction g(field_, d_, side);
  g.values_ = values_;
  return g;
}

std::size_t encode_point(const Field& f, std::span<const Elem> x) {
  std::size_t idx = 0;
  for (std::size_t i = x.size(); i-- > 0;) idx = idx * f.q() + x[i].idx;
  return idx;
}

void decode_point(const Field& f, int d, std::size_t index,
                  std::span<Elem> out) {
  for (int i = 0; i < d; ++i) {
    out[i] = {std::uint16_t(index % f.q())};
    index /= f.q();
  }
}

void require_compatible(const GridFunction& a, const GridFunction& b) {
  if (!same_field(a.field(), b.field()) || a.dim() != b.dim())
    throw SideMismatchError("grids live on different spaces");
  if (a.side() != b.side())
    throw SideMismatchError("mixing dx-side and dm-side grids");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_compatible(a, b);
  GridFunction out = a;
  out.values() += b.values();
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_compatible(a, b);
  GridFunction out = a;
  out.values() -= b.values();
  return out;
}

GridFunction operator*(Complex c, const GridFunction& g) {
  GridFunction out = g;
  out.values() *= c;
  return out;
}

GridFunction pointwise(const GridFunction& a, const GridFunction& b) {
  require_compatible(a, b);
  GridFunction out = a;
  out.values() = a.values().cwiseProduct(b.values());
  return out;
}

Complex mean_value(const GridFunction& f) {
  if (f.side() != Side::SpaceDx)
    throw SideMismatchError("mean_value expects a dx-side grid");
  return f.values().sum() / double(f.size());
}

GridFunction indicator_from_indices(FieldPtr field, int d, Side side,
                                    std::span<const std::size_t> indices) {
  GridFunction g(std::move(field), d, side);
  for (std::size_t i : indices) {
    if (i >= g.size()) throw RangeError("indicator index out of range");
    g[i] = 1.0;
  }
  return g;
}

void dump_csv(const GridFunction& g, std::ostream& os) {
  os << "index,x_coords,re,im\n";
  const int d = g.dim();
  std::vector<Elem> pt(d);
  char buf[64];
  for (std::size_t i = 0; i < g.size(); ++i) {
    decode_point(g.field(), d, i, pt);
    os << i << ',';
    for (int k = 0; k < d; ++k) {
      if (k) os << ';';
      os << pt[k].idx;
    }
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g", g[i].real(), g[i].imag());
    os << buf << '\n';
  }
}

}  // namespace qavg
