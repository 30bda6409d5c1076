#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "auxsym/errors.hpp"

namespace auxsym {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Mat2i = Eigen::Matrix2i;

/// Two independent translations spanning the pattern. Positions elsewhere in
/// the pattern are fractional coordinates with respect to this basis.
struct Lattice {
  Vec2 a1{1.0, 0.0};
  Vec2 a2{0.0, 1.0};

  Mat2 basis() const {
    Mat2 b;
    b.col(0) = a1;
    b.col(1) = a2;
    return b;
  }

  double det() const { return a1.x() * a2.y() - a1.y() * a2.x(); }
  double cell_area() const { return std::abs(det()); }
  double shortest_vector_length() const { return std::min(a1.norm(), a2.norm()); }

  Vec2 to_cartesian(const Vec2& frac) const { return frac.x() * a1 + frac.y() * a2; }
  Vec2 to_fractional(const Vec2& cart) const {
    const double d = det();
    return Vec2((cart.x() * a2.y() - cart.y() * a2.x()) / d,
                (a1.x() * cart.y() - a1.y() * cart.x()) / d);
  }

  /// Lagrange condition: a1 no longer than a2 and |2 a1.a2| <= a1.a1.
  bool is_reduced(double slack = 1e-12) const {
    const double n1 = a1.squaredNorm();
    const double n2 = a2.squaredNorm();
    return n1 <= n2 * (1.0 + slack) &&
           std::abs(2.0 * a1.dot(a2)) <= n1 * (1.0 + slack);
  }
};

struct LabeledPoint {
  Vec2 position;  // fractional
  std::string label;
};

struct Segment {
  Vec2 p, q;  // fractional endpoints
};

struct Polygon {
  std::vector<Vec2> vertices;  // fractional, in traversal order
};

struct Circle {
  Vec2 center;    // fractional
  double radius;  // absolute length
};

using Primitive = std::variant<LabeledPoint, Segment, Polygon, Circle>;

struct Motif {
  std::vector<Primitive> primitives;
};

namespace detail {

inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // guard against -1e-18 -> 1.0
  return r;
}

inline Vec2 wrap_unit(const Vec2& v) { return Vec2(wrap_unit(v.x()), wrap_unit(v.y())); }

inline Vec2 primitive_anchor(const Primitive& prim) {
  if (const auto* p = std::get_if<LabeledPoint>(&prim)) return p->position;
  if (const auto* s = std::get_if<Segment>(&prim)) return s->p;
  if (const auto* poly = std::get_if<Polygon>(&prim)) return poly->vertices.front();
  return std::get<Circle>(prim).center;
}

inline Primitive translated(const Primitive& prim, const Vec2& t) {
  Primitive out = prim;
  if (auto* p = std::get_if<LabeledPoint>(&out)) p->position += t;
  else if (auto* s = std::get_if<Segment>(&out)) { s->p += t; s->q += t; }
  else if (auto* poly = std::get_if<Polygon>(&out))
    for (auto& v : poly->vertices) v += t;
  else std::get<Circle>(out).center += t;
  return out;
}

/// Applies a fractional-space affine map f -> M f + t to a primitive.
inline Primitive mapped(const Primitive& prim, const Mat2& m, const Vec2& t) {
  Primitive out = prim;
  auto apply = [&](Vec2& v) { v = m * v + t; };
  if (auto* p = std::get_if<LabeledPoint>(&out)) apply(p->position);
  else if (auto* s = std::get_if<Segment>(&out)) { apply(s->p); apply(s->q); }
  else if (auto* poly = std::get_if<Polygon>(&out))
    for (auto& v : poly->vertices) apply(v);
  else apply(std::get<Circle>(out).center);
  return out;
}

}  // namespace detail

/// A lattice, a motif of geometric primitives in fractional coordinates, and
/// a relative tolerance (fraction of the shortest lattice vector) used by
/// every geometric comparison.
struct PeriodicPattern {
  Lattice lattice;
  Motif motif;
  double tolerance = 1e-9;

  double abs_tolerance() const {
    return tolerance * lattice.shortest_vector_length();
  }

  /// Translates each primitive by a whole lattice vector so its anchor lands
  /// in [0,1)^2. Primitives keep their shape; only the representative copy
  /// changes.
  void canonicalize_motif() {
    for (auto& prim : motif.primitives) {
      const Vec2 a = detail::primitive_anchor(prim);
      const Vec2 shift = detail::wrap_unit(a) - a;
      if (shift.squaredNorm() > 0) prim = detail::translated(prim, shift);
    }
  }

  void validate() const {
    if (lattice.cell_area() <= tolerance * lattice.shortest_vector_length() *
                                   std::max(lattice.a1.norm(), lattice.a2.norm()))
      throw Error(ErrorCode::DegenerateLattice, "lattice basis is (near) dependent");
    if (motif.primitives.empty())
      throw Error(ErrorCode::InvalidPattern, "motif is empty");
    if (!(tolerance > 0.0) || !(tolerance < 0.01))
      throw Error(ErrorCode::InvalidPattern,
                  "tolerance must lie in (0, 0.01), got " + std::to_string(tolerance));
    for (const auto& prim : motif.primitives) {
      if (const auto* s = std::get_if<Segment>(&prim)) {
        if (lattice.to_cartesian(s->q - s->p).norm() <= abs_tolerance())
          throw Error(ErrorCode::InvalidPattern, "zero-length segment in motif");
      } else if (const auto* poly = std::get_if<Polygon>(&prim)) {
        if (poly->vertices.size() < 3)
          throw Error(ErrorCode::InvalidPattern, "polygon with fewer than 3 vertices");
      } else if (const auto* c = std::get_if<Circle>(&prim)) {
        if (c->radius <= 0.0)
          throw Error(ErrorCode::InvalidPattern, "circle with non-positive radius");
      }
    }
  }

  /// Same pattern over the basis (a1, a2) * U for a unimodular integer U.
  PeriodicPattern with_basis_change(const Mat2i& u) const {
    const int det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    if (det != 1 && det != -1)
      throw Error(ErrorCode::InvalidPattern, "basis change must be unimodular");
    PeriodicPattern out = *this;
    const Mat2 ud = u.cast<double>();
    out.lattice.a1 = lattice.basis() * ud.col(0);
    out.lattice.a2 = lattice.basis() * ud.col(1);
    // fractional coordinates transform by U^{-1}
    Mat2 uinv;
    uinv << u(1, 1), -u(0, 1), -u(1, 0), u(0, 0);
    uinv /= static_cast<double>(det);
    out.motif.primitives.clear();
    for (const auto& prim : motif.primitives)
      out.motif.primitives.push_back(detail::mapped(prim, uinv, Vec2::Zero()));
    out.canonicalize_motif();
    return out;
  }

  /// Rigidly moves the whole pattern: x -> R(angle) x + shift in Cartesian
  /// space. Fractional motif coordinates shift by the pulled-back offset.
  PeriodicPattern rigidly_moved(double angle, const Vec2& shift) const {
    Mat2 r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    PeriodicPattern out = *this;
    out.lattice.a1 = r * lattice.a1;
    out.lattice.a2 = r * lattice.a2;
    const Vec2 frac_shift = out.lattice.to_fractional(shift);
    out.motif.primitives.clear();
    for (const auto& prim : motif.primitives)
      out.motif.primitives.push_back(detail::mapped(prim, Mat2::Identity(), frac_shift));
    out.canonicalize_motif();
    return out;
  }

  PeriodicPattern scaled(double factor) const {
    if (!(factor > 0.0))
      throw Error(ErrorCode::InvalidPattern, "scale factor must be positive");
    PeriodicPattern out = *this;
    out.lattice.a1 *= factor;
    out.lattice.a2 *= factor;
    for (auto& prim : out.motif.primitives)
      if (auto* c = std::get_if<Circle>(&prim)) c->radius *= factor;
    return out;
  }
};

struct LatticeReduction {
  Lattice reduced;
  Mat2i change;  // reduced basis = old basis * change
};

/// Lagrange (Gauss) reduction to the two shortest basis vectors, keeping the
/// orientation positive.
inline LatticeReduction reduce_lattice_basis(const Lattice& lat, double rel_tol = 1e-12) {
  const double scale = std::max(lat.a1.norm(), lat.a2.norm());
  if (lat.cell_area() <= rel_tol * scale * scale)
    throw Error(ErrorCode::DegenerateLattice, "lattice basis is (near) dependent");

  Vec2 b1 = lat.a1, b2 = lat.a2;
  Eigen::Vector2i c1(1, 0), c2(0, 1);  // integer coords of b1, b2 in the old basis
  if (b1.squaredNorm() > b2.squaredNorm()) {
    std::swap(b1, b2);
    std::swap(c1, c2);
  }
  for (int iter = 0; iter < 64; ++iter) {
    const long long k = std::llround(b1.dot(b2) / b1.squaredNorm());
    if (k != 0) {
      b2 -= static_cast<double>(k) * b1;
      c2 -= static_cast<int>(k) * c1;
    }
    if (b2.squaredNorm() >= b1.squaredNorm()) break;
    std::swap(b1, b2);
    std::swap(c1, c2);
  }
  // normalize to a right-handed basis
  if (b1.x() * b2.y() - b1.y() * b2.x() < 0) {
    b2 = -b2;
    c2 = -c2;
  }
  LatticeReduction out;
  out.reduced = Lattice{b1, b2};
  out.change << c1.x(), c2.x(), c1.y(), c2.y();
  return out;
}

/// Reduces the lattice and re-expresses the motif over the new basis.
inline PeriodicPattern reduce_lattice(const PeriodicPattern& pat) {
  const LatticeReduction red = reduce_lattice_basis(pat.lattice, pat.tolerance);
  PeriodicPattern out = pat.with_basis_change(red.change);
  return out;
}

enum class IsometryKind { Translation, Rotation, Mirror, Glide };

/// Plane isometry x -> linear x + translation, in Cartesian coordinates.
struct Isometry {
  Mat2 linear = Mat2::Identity();
  Vec2 translation = Vec2::Zero();

  Vec2 apply(const Vec2& x) const { return linear * x + translation; }
  bool orientation_reversing() const { return linear.determinant() < 0.0; }

  static Isometry rotation_about(double angle, const Vec2& center) {
    Mat2 r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return Isometry{r, center - r * center};
  }

  static Isometry reflection_across(const Vec2& point, const Vec2& direction) {
    const Vec2 d = direction.normalized();
    Mat2 m;  // householder: 2 d d^T - I
    m << 2 * d.x() * d.x() - 1, 2 * d.x() * d.y(),
         2 * d.x() * d.y(),     2 * d.y() * d.y() - 1;
    return Isometry{m, point - m * point};
  }

  static Isometry glide(const Vec2& point, const Vec2& direction, double shift) {
    Isometry iso = reflection_across(point, direction);
    iso.translation += shift * direction.normalized();
    return iso;
  }

  static Isometry translation_by(const Vec2& t) { return Isometry{Mat2::Identity(), t}; }
};

/// A family of parallel symmetry lines, one representative per lattice
/// period. `point` lies on the representative line, `direction` is a unit
/// vector along it, `shift` is the glide translation (0 for mirrors).
struct SymmetryLine {
  Vec2 point;
  Vec2 direction;
  double shift = 0.0;
};

struct RotationCenter {
  Vec2 center;  // fractional coordinates in [0,1)^2
  int order;    // maximal order at this center
};

/// Everything the classifier needs: deduplicated rotation centers, mirror
/// and (non-trivial) glide lines, all modulo lattice translations, over the
/// reduced lattice.
struct SymmetryInventory {
  Lattice lattice;  // reduced lattice the entries refer to
  std::vector<RotationCenter> rotation_centers;
  std::vector<SymmetryLine> mirror_lines;
  std::vector<SymmetryLine> glide_lines;
  int highest_rotation_order = 1;
  int mirror_direction_count = 0;
};

}  // namespace auxsym
