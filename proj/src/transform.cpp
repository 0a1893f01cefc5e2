#include "qavg/transform.hpp"

#include <cmath>
#include <numbers>

namespace qavg {
namespace detail {

CVec char_transform(const Field& f, int d, const CVec& v, int sign) {
  if (!f.gram_perm_is_bijection()) return naive_char_transform(f, d, v, sign);

  const std::uint32_t p = f.p();
  const std::uint32_t q = f.q();
  const int nd = int(f.n()) * d;
  const auto N = std::size_t(v.size());

  Eigen::MatrixXcd w(p, p);
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b) {
      const double ang =
          sign * 2.0 * std::numbers::pi * double((a * b) % p) / double(p);
      w(a, b) = Complex(std::cos(ang), std::sin(ang));
    }

  CVec t = v;
  std::size_t inner = 1;
  for (int axis = 0; axis < nd; ++axis) {
    const std::size_t block = inner * p;
    for (std::size_t off = 0; off < N; off += block) {
      Eigen::Map<Eigen::MatrixXcd> m(t.data() + off, Eigen::Index(inner),
                                     Eigen::Index(p));
      m = (m * w).eval();
    }
    inner = block;
  }
  if (f.n() == 1) return t;

  const auto& eperm = f.gram_perm();
  CVec out(static_cast<Eigen::Index>(N));
  for (std::size_t idx = 0; idx < N; ++idx) {
    std::size_t rest = idx, src = 0, scale = 1;
    for (int i = 0; i < d; ++i) {
      src += std::size_t(eperm[rest % q]) * scale;
      rest /= q;
      scale *= q;
    }
    out[Eigen::Index(idx)] = t[Eigen::Index(src)];
  }
  return out;
}

CVec naive_char_transform(const Field& f, int d, const CVec& v, int sign) {
  const std::uint32_t q = f.q();
  const auto N = std::size_t(v.size());

  std::vector<std::uint16_t> digits(N * std::size_t(d));
  for (std::size_t idx = 0; idx < N; ++idx) {
    std::size_t rest = idx;
    for (int i = 0; i < d; ++i) {
      digits[idx * d + i] = std::uint16_t(rest % q);
      rest /= q;
    }
  }

  CVec out(static_cast<Eigen::Index>(N));
  for (std::size_t m = 0; m < N; ++m) {
    const std::uint16_t* md = &digits[m * d];
    Complex acc = 0.0;
    for (std::size_t x = 0; x < N; ++x) {
      const std::uint16_t* xd = &digits[x * d];
      Elem dot{0};
      for (int i = 0; i < d; ++i)
        dot = f.add(dot, f.mul({xd[i]}, {md[i]}));
      const Complex c = f.chi(dot);
      acc += v[Eigen::Index(x)] * (sign < 0 ? std::conj(c) : c);
    }
    out[Eigen::Index(m)] = acc;
  }
  return out;
}

}  // namespace detail

GridFunction forward_transform(const GridFunction& f) {
  if (f.side() != Side::SpaceDx)
    throw SideMismatchError("forward_transform expects a dx-side grid");
  GridFunction out(f.field_ptr(), f.dim(), Side::FreqDm);
  out.values() =
      detail::char_transform(f.field(), f.dim(), f.values(), -1) / double(f.size());
  return out;
}

GridFunction inverse_transform(const GridFunction& g) {
  if (g.side() != Side::FreqDm)
    throw SideMismatchError("inverse_transform expects a dm-side grid");
  GridFunction out(g.field_ptr(), g.dim(), Side::SpaceDx);
  out.values() = detail::char_transform(g.field(), g.dim(), g.values(), +1);
  return out;
}

GridFunction naive_forward_transform(const GridFunction& f) {
  if (f.side() != Side::SpaceDx)
    throw SideMismatchError("forward_transform expects a dx-side grid");
  GridFunction out(f.field_ptr(), f.dim(), Side::FreqDm);
  out.values() =
      detail::naive_char_transform(f.field(), f.dim(), f.values(), -1) /
      double(f.size());
  return out;
}

GridFunction naive_inverse_transform(const GridFunction& g) {
  if (g.side() != Side::FreqDm)
    throw SideMismatchError("inverse_transform expects a dm-side grid");
  GridFunction out(g.field_ptr(), g.dim(), Side::SpaceDx);
  out.values() = detail::naive_char_transform(g.field(), g.dim(), g.values(), +1);
  return out;
}

}  // namespace qavg
