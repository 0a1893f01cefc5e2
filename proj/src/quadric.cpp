#include "qavg/quadric.hpp"

#include <algorithm>
#include <cmath>

namespace qavg {

QuadraticSurface make_surface(FieldPtr field,
                              std::span<const std::int64_t> signed_coeffs) {
  std::vector<Elem> coeffs;
  coeffs.reserve(signed_coeffs.size());
  for (std::int64_t c : signed_coeffs) coeffs.push_back(field->from_int(c));
  return make_surface_elems(std::move(field), std::move(coeffs));
}

QuadraticSurface make_surface_elems(FieldPtr field, std::vector<Elem> coeffs) {
  const int d = int(coeffs.size());
  if (d < 2) throw RangeError("surface dimension must be at least 2");
  for (Elem c : coeffs)
    if (c.idx == 0) throw DegenerateFormError("degenerate form: zero coefficient");
  grid_size_checked(*field, d);
  return QuadraticSurface{std::move(field), d, std::move(coeffs)};
}

Elem eval_form(const QuadraticSurface& s, std::span<const Elem> x) {
  const Field& f = *s.field;
  Elem acc = f.zero();
  for (int j = 0; j < s.d; ++j)
    acc = f.add(acc, f.mul(s.coeffs[j], f.mul(x[j], x[j])));
  return acc;
}

Elem eval_dual_form(const QuadraticSurface& s, std::span<const Elem> m) {
  const Field& f = *s.field;
  Elem acc = f.zero();
  for (int j = 0; j < s.d; ++j)
    acc = f.add(acc, f.mul(f.inv(s.coeffs[j]), f.mul(m[j], m[j])));
  return acc;
}

SurfaceEnumeration enumerate_surface(const QuadraticSurface& s) {
  GridFunction ind(s.field, s.d, Side::SpaceDx);
  const Field& f = *s.field;
  std::vector<Elem> pt(s.d);
  std::uint64_t count = 0;
  for (std::size_t idx = 0; idx < ind.size(); ++idx) {
    decode_point(f, s.d, idx, pt);
    if (eval_form(s, pt).idx == 0) {
      ind[idx] = 1.0;
      ++count;
    }
  }
  return {std::move(ind), count};
}

std::uint64_t count_points_closed_form(const QuadraticSurface& s) {
  if (s.d % 2 != 0)
    throw UnsupportedError("closed-form point count requires even d");
  const Field& f = *s.field;
  Complex g1d = 1.0;
  const Complex g1 = f.gauss_sum(f.one());
  for (int i = 0; i < s.d; ++i) g1d *= g1;
  Elem prod = f.one();
  for (Elem c : s.coeffs) prod = f.mul(prod, c);
  const double qd1 = std::pow(double(f.q()), s.d - 1);
  const Complex val =
      qd1 + g1d * (1.0 - 1.0 / double(f.q())) * double(f.eta(prod));
  const double scale = std::max(1.0, std::abs(val));
  const double rounded = std::round(val.real());
  if (std::abs(val.imag()) > 1e-6 * scale ||
      std::abs(val.real() - rounded) > 1e-6 * scale)
    throw InternalConsistencyError("closed-form point count is not an integer");
  return std::uint64_t(rounded);
}

QuadraticSurface dual_surface(const QuadraticSurface& s) {
  std::vector<Elem> inv_coeffs;
  inv_coeffs.reserve(s.coeffs.size());
  for (Elem c : s.coeffs) inv_coeffs.push_back(s.field->inv(c));
  return make_surface_elems(s.field, std::move(inv_coeffs));
}

bool hyperbolicity_test(const QuadraticSurface& s) {
  if (s.d % 2 != 0)
    throw UnsupportedError("hyperbolicity test requires even d");
  const Field& f = *s.field;
  Elem disc = f.one();
  for (Elem c : s.coeffs) disc = f.mul(disc, c);
  if ((s.d / 2) % 2 != 0) disc = f.neg(disc);
  return f.eta(disc) == 1;
}

namespace {

// All q^k combinations of the basis vectors lie on S.
bool all_combinations_on_surface(const QuadraticSurface& s,
                                 const std::vector<std::vector<Elem>>& basis) {
  const Field& f = *s.field;
  const int k = int(basis.size());
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= f.q();
  std::vector<Elem> pt(s.d);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t rest = c;
    std::fill(pt.begin(), pt.end(), f.zero());
    for (int i = 0; i < k; ++i) {
      const Elem coeff{std::uint16_t(rest % f.q())};
      rest /= f.q();
      if (coeff.idx != 0)
        for (int j = 0; j < s.d; ++j)
          pt[j] = f.add(pt[j], f.mul(coeff, basis[i][j]));
    }
    if (eval_form(s, pt).idx != 0) return false;
  }
  return true;
}

int matrix_rank(const Field& f, std::vector<std::vector<Elem>> rows, int d) {
  int rank = 0;
  for (int col = 0; col < d && rank < int(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[r][col].idx != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const Elem scale = f.inv(rows[rank][col]);
    for (int j = 0; j < d; ++j) rows[rank][j] = f.mul(rows[rank][j], scale);
    for (int r = 0; r < int(rows.size()); ++r)
      if (r != rank && rows[r][col].idx != 0) {
        const Elem factor = rows[r][col];
        for (int j = 0; j < d; ++j)
          rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
      }
    ++rank;
  }
  return rank;
}

constexpr std::uint64_t kSubspaceSearchCap = 10'000'000;

}  // namespace

std::uint64_t for_each_subspace(
    const Field& f, int d, int k,
    const std::function<bool(const std::vector<std::vector<Elem>>&)>& visit) {
  if (k < 1 || k > d) throw RangeError("subspace dimension out of range");
  const std::uint32_t q = f.q();
  std::vector<int> pivots(k);
  for (int i = 0; i < k; ++i) pivots[i] = i;
  std::uint64_t visited = 0;
  bool stop = false;
  while (!stop) {
    std::vector<bool> is_pivot(d, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int j = pivots[i] + 1; j < d; ++j)
        if (!is_pivot[j]) free_pos.emplace_back(i, j);

    std::vector<std::uint16_t> assign(free_pos.size(), 0);
    std::vector<std::vector<Elem>> basis(k, std::vector<Elem>(d, f.zero()));
    while (true) {
      for (int i = 0; i < k; ++i) {
        std::fill(basis[i].begin(), basis[i].end(), f.zero());
        basis[i][pivots[i]] = f.one();
      }
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        basis[free_pos[t].first][free_pos[t].second] = {assign[t]};
      ++visited;
      if (visited > kSubspaceSearchCap)
        throw GridBudgetError("subspace search budget exceeded");
      if (visit(basis)) {
        stop = true;
        break;
      }
      std::size_t pos = 0;
      while (pos < assign.size()) {
        if (++assign[pos] == q) {
          assign[pos] = 0;
          ++pos;
        } else {
          break;
        }
      }
      if (pos == assign.size()) break;
    }
    if (stop) break;

    // next pivot combination
    int i = k - 1;
    while (i >= 0 && pivots[i] == d - k + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return visited;
}

std::optional<IsotropicSubspace> isotropic_subspace(const QuadraticSurface& s,
                                                    SubspaceMode mode) {
  if (s.d % 2 != 0)
    throw UnsupportedError("isotropic subspace requires even d");
  const Field& f = *s.field;
  const int k = s.d / 2;

  if (mode == SubspaceMode::Construct) {
    std::vector<int> partner(s.d, -1);
    for (int i = 0; i < s.d; ++i) {
      if (partner[i] >= 0) continue;
      const Elem want = f.neg(s.coeffs[i]);
      for (int j = i + 1; j < s.d; ++j)
        if (partner[j] < 0 && s.coeffs[j] == want) {
          partner[i] = j;
          partner[j] = i;
          break;
        }
      if (partner[i] < 0)
        throw NoConstructivePatternError("no constructive pattern; use search");
    }
    IsotropicSubspace h;
    for (int i = 0; i < s.d; ++i)
      if (partner[i] > i) {
        std::vector<Elem> v(s.d, f.zero());
        v[i] = f.one();
        v[partner[i]] = f.one();
        h.basis.push_back(std::move(v));
      }
    if (!verify_isotropic(s, h))
      throw InternalConsistencyError("constructed subspace fails verification");
    return h;
  }

  std::optional<IsotropicSubspace> found;
  for_each_subspace(f, s.d, k,
                    [&](const std::vector<std::vector<Elem>>& basis) {
                      if (!all_combinations_on_surface(s, basis)) return false;
                      found = IsotropicSubspace{basis};
                      return true;
                    });
  return found;
}

bool verify_isotropic(const QuadraticSurface& s, const IsotropicSubspace& h) {
  if (h.basis.empty()) return false;
  for (const auto& v : h.basis)
    if (int(v.size()) != s.d) return false;
  if (matrix_rank(*s.field, h.basis, s.d) != h.dim()) return false;
  return all_combinations_on_surface(s, h.basis);
}

GridFunction subspace_indicator(const QuadraticSurface& s,
                                const IsotropicSubspace& h) {
  const Field& f = *s.field;
  GridFunction g(s.field, s.d, Side::SpaceDx);
  const int k = h.dim();
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) total *= f.q();
  std::vector<Elem> pt(s.d);
  for (std::uint64_t c = 0; c < total; ++c) {
    std::uint64_t rest = c;
    std::fill(pt.begin(), pt.end(), f.zero());
    for (int i = 0; i < k; ++i) {
      const Elem coeff{std::uint16_t(rest % f.q())};
      rest /= f.q();
      if (coeff.idx != 0)
        for (int j = 0; j < s.d; ++j)
          pt[j] = f.add(pt[j], f.mul(coeff, h.basis[i][j]));
    }
    g.set(pt, 1.0);
  }
  return g;
}

// ----- exponent-region geometry -----

namespace {

Rational cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool lex_less(const RatPoint& a, const RatPoint& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

}  // namespace

ExponentRegion make_region(std::vector<RatPoint> vertices) {
  if (vertices.empty()) throw RangeError("region needs at least one vertex");
  ExponentRegion r;
  r.vertices = vertices;

  std::sort(vertices.begin(), vertices.end(), lex_less);
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  // Andrew monotone chain; hull comes out counterclockwise.
  std::vector<RatPoint> hull;
  if (vertices.size() <= 2) {
    hull = vertices;
  } else {
    std::vector<RatPoint> h(2 * vertices.size());
    std::size_t k = 0;
    for (const auto& pt : vertices) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], pt).sign() <= 0) --k;
      h[k++] = pt;
    }
    const std::size_t lower = k + 1;
    for (auto it = vertices.rbegin() + 1; it != vertices.rend(); ++it) {
      while (k >= lower && cross(h[k - 2], h[k - 1], *it).sign() <= 0) --k;
      h[k++] = *it;
    }
    h.resize(k - 1);
    hull = std::move(h);
  }
  r.hull = hull;

  const std::size_t edges =
      hull.size() >= 3 ? hull.size() : (hull.size() == 2 ? 1 : 0);
  for (std::size_t i = 0; i < edges; ++i) {
    const RatPoint& v1 = hull[i];
    const RatPoint& v2 = hull[(i + 1) % hull.size()];
    const Rational a = v2.y - v1.y;
    const Rational b = -(v2.x - v1.x);
    r.halfplanes.push_back({a, b, a * v1.x + b * v1.y});
  }
  return r;
}

ExponentRegion region_for(int d, bool hyperbolic) {
  if (d < 2) throw RangeError("region is defined for d >= 2");
  const std::int64_t dd = d;
  std::vector<RatPoint> v = {{Rational(0), Rational(0)},
                             {Rational(0), Rational(1)},
                             {Rational(1), Rational(1)}};
  if (hyperbolic) {
    v.push_back({Rational(dd * dd - 2 * dd + 2, dd * (dd - 1)), Rational(1, dd - 1)});
    v.push_back({Rational(dd - 2, dd - 1), Rational(dd - 2, dd * (dd - 1))});
  } else {
    v.push_back({Rational(dd, dd + 1), Rational(1, dd + 1)});
  }
  return make_region(std::move(v));
}

const char* location_name(RegionLocation loc) {
  switch (loc) {
    case RegionLocation::Vertex: return "vertex";
    case RegionLocation::Boundary: return "boundary";
    case RegionLocation::Inside: return "inside";
    default: return "outside";
  }
}

RegionLocation region_classify(const ExponentRegion& r, const RatPoint& pt) {
  for (const auto& v : r.hull)
    if (v == pt) return RegionLocation::Vertex;
  const std::size_t n = r.hull.size();
  if (n == 1) return RegionLocation::Outside;
  if (n == 2) {
    const Rational c = cross(r.hull[0], r.hull[1], pt);
    if (c.sign() != 0) return RegionLocation::Outside;
    const bool within =
        !lex_less(pt, std::min(r.hull[0], r.hull[1], lex_less)) &&
        !lex_less(std::max(r.hull[0], r.hull[1], lex_less), pt);
    return within ? RegionLocation::Boundary : RegionLocation::Outside;
  }
  bool on_edge = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational c = cross(r.hull[i], r.hull[(i + 1) % n], pt);
    if (c.sign() < 0) return RegionLocation::Outside;
    if (c.sign() == 0) on_edge = true;
  }
  return on_edge ? RegionLocation::Boundary : RegionLocation::Inside;
}

bool region_contains(const ExponentRegion& r, const RatPoint& pt) {
  return region_classify(r, pt) != RegionLocation::Outside;
}

}  // namespace qavg
