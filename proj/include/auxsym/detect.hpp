#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "auxsym/geometry.hpp"

namespace auxsym {
namespace detail {

// ---- congruence of primitives modulo lattice translations ----------------

/// Returns the integer lattice vector k with a = b + k within tol (Cartesian
/// residual), if any. Coordinates are fractional.
inline std::optional<Eigen::Vector2i> lattice_offset(const Lattice& lat, const Vec2& a,
                                                     const Vec2& b, double abs_tol) {
  const Vec2 d = a - b;
  const Eigen::Vector2i k(static_cast<int>(std::lround(d.x())),
                          static_cast<int>(std::lround(d.y())));
  const Vec2 resid = lat.to_cartesian(d - k.cast<double>());
  if (resid.norm() <= abs_tol) return k;
  return std::nullopt;
}

inline bool matches_with_offset(const Lattice& lat, const Vec2& a, const Vec2& b,
                                const Eigen::Vector2i& k, double abs_tol) {
  const Vec2 resid = lat.to_cartesian(a - b - k.cast<double>());
  return resid.norm() <= abs_tol;
}

/// True iff a equals b translated by a single whole lattice vector, within
/// tol. Segments match in either endpoint order; polygons up to cyclic
/// rotation and reversal; labels must match exactly.
inline bool primitive_congruent(const Lattice& lat, const Primitive& a,
                                const Primitive& b, double abs_tol) {
  if (a.index() != b.index()) return false;
  if (const auto* pa = std::get_if<LabeledPoint>(&a)) {
    const auto& pb = std::get<LabeledPoint>(b);
    return pa->label == pb.label &&
           lattice_offset(lat, pa->position, pb.position, abs_tol).has_value();
  }
  if (const auto* sa = std::get_if<Segment>(&a)) {
    const auto& sb = std::get<Segment>(b);
    if (auto k = lattice_offset(lat, sa->p, sb.p, abs_tol))
      if (matches_with_offset(lat, sa->q, sb.q, *k, abs_tol)) return true;
    if (auto k = lattice_offset(lat, sa->p, sb.q, abs_tol))
      if (matches_with_offset(lat, sa->q, sb.p, *k, abs_tol)) return true;
    return false;
  }
  if (const auto* ca = std::get_if<Circle>(&a)) {
    const auto& cb = std::get<Circle>(b);
    return std::abs(ca->radius - cb.radius) <= abs_tol &&
           lattice_offset(lat, ca->center, cb.center, abs_tol).has_value();
  }
  const auto& va = std::get<Polygon>(a).vertices;
  const auto& vb = std::get<Polygon>(b).vertices;
  const int n = static_cast<int>(va.size());
  if (n != static_cast<int>(vb.size())) return false;
  for (int m = 0; m < n; ++m) {
    for (int dir : {1, -1}) {
      auto k = lattice_offset(lat, va[0], vb[m], abs_tol);
      if (!k) continue;
      bool ok = true;
      for (int i = 1; i < n && ok; ++i) {
        const int j = ((m + dir * i) % n + n) % n;
        ok = matches_with_offset(lat, va[i], vb[j], *k, abs_tol);
      }
      if (ok) return true;
    }
  }
  return false;
}

/// Fractional-space affine symmetry candidate: f -> map * f + shift, where
/// map = B^{-1} Q B for the Cartesian linear part Q and basis B.
struct FracMap {
  Mat2i map;
  Vec2 shift;
};

inline bool motif_invariant(const PeriodicPattern& pat, const FracMap& fm) {
  const double abs_tol = pat.abs_tolerance();
  const Mat2 md = fm.map.cast<double>();
  for (const auto& prim : pat.motif.primitives) {
    const Primitive moved = mapped(prim, md, fm.shift);
    bool found = false;
    for (const auto& target : pat.motif.primitives) {
      if (primitive_congruent(pat.lattice, moved, target, abs_tol)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Candidate fractional translations for a symmetry with integer linear part
/// `map`: ways of sending the first motif primitive onto any primitive of
/// the same kind. Complete because a symmetry must map the probe somewhere.
inline std::vector<Vec2> candidate_shifts(const PeriodicPattern& pat, const Mat2i& map) {
  const Mat2 md = map.cast<double>();
  const Primitive& probe = pat.motif.primitives.front();
  std::vector<Vec2> anchors_probe;  // images of probe anchor points under map
  std::vector<Vec2> anchors_target;

  auto add_targets = [&](const Primitive& target) {
    if (target.index() != probe.index()) return;
    if (const auto* p = std::get_if<LabeledPoint>(&target)) {
      const auto& pp = std::get<LabeledPoint>(probe);
      if (p->label == pp.label) anchors_target.push_back(p->position);
    } else if (const auto* s = std::get_if<Segment>(&target)) {
      anchors_target.push_back(s->p);
      anchors_target.push_back(s->q);
    } else if (const auto* poly = std::get_if<Polygon>(&target)) {
      if (poly->vertices.size() == std::get<Polygon>(probe).vertices.size())
        for (const auto& v : poly->vertices) anchors_target.push_back(v);
    } else {
      anchors_target.push_back(std::get<Circle>(target).center);
    }
  };

  const Vec2 probe_anchor = md * primitive_anchor(probe);
  for (const auto& target : pat.motif.primitives) add_targets(target);

  std::vector<Vec2> shifts;
  const double abs_tol = pat.abs_tolerance();
  for (const Vec2& a : anchors_target) {
    Vec2 s = a - probe_anchor;
    s -= Vec2(std::floor(s.x()), std::floor(s.y()));
    bool dup = false;
    for (const Vec2& prev : shifts)
      if (pat.lattice.to_cartesian(s - prev).norm() <= abs_tol ||
          lattice_offset(pat.lattice, s, prev, abs_tol)) {
        dup = true;
        break;
      }
    if (!dup) shifts.push_back(s);
  }
  return shifts;
}

// ---- lattice automorphisms ------------------------------------------------

struct LatticeAutomorphism {
  Mat2 linear;  // Cartesian orthogonal matrix
  Mat2i map;    // fractional-space integer matrix
  int order;    // smallest k with map^k = I
  bool reflection;
};

inline int matrix_order(const Mat2i& m) {
  Mat2i p = Mat2i::Identity();
  for (int k = 1; k <= 12; ++k) {
    p = p * m;
    if (p == Mat2i::Identity()) return k;
  }
  return 0;
}

/// All orthogonal maps sending the lattice to itself. On a reduced basis the
/// integer coordinates of any automorphism lie in [-1,1]; [-2,2] is scanned
/// for slack.
inline std::vector<LatticeAutomorphism> lattice_automorphisms(const Lattice& lat,
                                                              double rel_tol) {
  const Mat2 basis = lat.basis();
  const Mat2 inv = basis.inverse();
  const double otol = std::max(20.0 * rel_tol, 1e-10);
  std::vector<LatticeAutomorphism> out;
  Mat2i m;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          m << a, b, c, d;
          const int det = a * d - b * c;
          if (det != 1 && det != -1) continue;
          const Mat2 q = basis * m.cast<double>() * inv;
          if ((q.transpose() * q - Mat2::Identity()).cwiseAbs().maxCoeff() > otol)
            continue;
          const int order = matrix_order(m);
          if (order == 0) continue;
          out.push_back({q, m, order, det < 0});
        }
  return out;
}

// Shortest positive projection of any lattice vector onto the unit vector u,
// optionally restricted to vectors (nearly) parallel to the line direction.
inline double min_positive_projection(const Lattice& lat, const Vec2& u,
                                      const Vec2* parallel_to, double abs_tol) {
  double best = 0.0;
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      if (i == 0 && j == 0) continue;
      const Vec2 v = lat.to_cartesian(Vec2(i, j));
      if (parallel_to) {
        const Vec2 n(-parallel_to->y(), parallel_to->x());
        if (std::abs(v.dot(n)) > abs_tol) continue;
      }
      const double p = std::abs(v.dot(u));
      if (p > abs_tol && (best == 0.0 || p < best)) best = p;
    }
  return best;
}

}  // namespace detail

/// True iff the isometry (Cartesian form) maps the periodically extended
/// motif onto itself within the pattern's tolerance. The linear part must
/// map the lattice to itself.
inline bool invariant_under(const PeriodicPattern& pat, const Isometry& iso) {
  const Mat2 basis = pat.lattice.basis();
  const double abs_tol = pat.abs_tolerance();
  // linear-part compatibility: Q a_i must be lattice vectors
  const Mat2 frac = basis.inverse() * iso.linear * basis;
  Mat2i map;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) map(r, c) = static_cast<int>(std::lround(frac(r, c)));
  const Mat2 resid = iso.linear * basis - basis * map.cast<double>();
  if (resid.colwise().norm().maxCoeff() > abs_tol)
    throw Error(ErrorCode::IncompatibleLinearPart,
                "isometry's linear part does not preserve the lattice");
  const Vec2 shift = pat.lattice.to_fractional(iso.translation);
  return detail::motif_invariant(pat, detail::FracMap{map, shift});
}

namespace detail {

// Rationalizes a fractional coordinate as p/q with small q; sub-period
// translations of a crystallographic pattern are always of this form.
inline std::optional<std::pair<int, int>> small_rational(double x, double tol) {
  for (int q = 1; q <= 12; ++q) {
    const double p = std::round(x * q);
    if (std::abs(x - p / q) <= tol) return std::make_pair(static_cast<int>(p), q);
  }
  return std::nullopt;
}

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

/// Extends the lattice by a fractional sub-translation t (components p/q)
/// and returns the refined pattern over the (reduced) finer basis.
inline PeriodicPattern refine_lattice(const PeriodicPattern& pat, const Vec2& t) {
  const double ftol = std::max(pat.tolerance * 10.0, 1e-9);
  const auto r1 = small_rational(t.x(), ftol);
  const auto r2 = small_rational(t.y(), ftol);
  if (!r1 || !r2)
    throw Error(ErrorCode::InvalidPattern,
                "motif repeats under a non-commensurate sub-translation");
  const long long q = std::lcm<long long>(r1->second, r2->second);
  const long long p1 = r1->first * (q / r1->second);
  const long long p2 = r2->first * (q / r2->second);

  // integer lattice generated by (q,0), (0,q), (p1,p2); Hermite-style basis
  long long g = gcd_ll(q, p1);
  long long s = 0, u = 1;
  {  // bezout: s*q + u*p1 = g
    long long a = q, b = p1, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b != 0) {
      const long long k = a / b;
      std::swap(a -= k * b, b);
      std::swap(x0 -= k * x1, x1);
      std::swap(y0 -= k * y1, y1);
    }
    s = x0;
    u = y0;
    g = a;
  }
  const Vec2 b1(static_cast<double>(g) / q, static_cast<double>(u * p2) / q);
  long long gy = q;
  if (g != 0) gy = gcd_ll(q, std::abs(p2 - (p1 / g) * u * p2 - 0 * q));
  // y-components after eliminating x: q (from (0,q)) and p2 - (p1/g)*(u*p2)
  const long long y_from_t = p2 - (p1 / g) * (u * p2);
  gy = gcd_ll(q, std::abs(y_from_t));
  if (gy == 0) gy = q;
  const Vec2 b2(0.0, static_cast<double>(gy) / q);

  Lattice fine;
  fine.a1 = pat.lattice.to_cartesian(b1);
  fine.a2 = pat.lattice.to_cartesian(b2);
  if (fine.cell_area() >= pat.lattice.cell_area() * (1.0 - 1e-9))
    throw Error(ErrorCode::InvalidPattern, "sub-translation refinement failed");

  PeriodicPattern out;
  out.tolerance = pat.tolerance;
  out.lattice = fine;
  for (const auto& prim : pat.motif.primitives) {
    Primitive moved = prim;
    auto convert = [&](Vec2& v) { v = fine.to_fractional(pat.lattice.to_cartesian(v)); };
    if (auto* p = std::get_if<LabeledPoint>(&moved)) convert(p->position);
    else if (auto* sgm = std::get_if<Segment>(&moved)) { convert(sgm->p); convert(sgm->q); }
    else if (auto* poly = std::get_if<Polygon>(&moved))
      for (auto& v : poly->vertices) convert(v);
    else convert(std::get<Circle>(moved).center);
    out.motif.primitives.push_back(moved);
  }
  out = reduce_lattice(out);
  out.canonicalize_motif();
  return out;
}

inline void dedupe_motif(PeriodicPattern& pat) {
  const double abs_tol = pat.abs_tolerance();
  std::vector<Primitive> kept;
  for (const auto& prim : pat.motif.primitives) {
    bool dup = false;
    for (const auto& k : kept)
      if (primitive_congruent(pat.lattice, prim, k, abs_tol)) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(prim);
  }
  pat.motif.primitives = std::move(kept);
}

/// Detects pure fractional translations and refines the lattice until none
/// remain, so the stored basis generates the full translation group.
inline PeriodicPattern normalize_translations(PeriodicPattern pat) {
  for (int round = 0; round < 8; ++round) {
    dedupe_motif(pat);
    const double abs_tol = pat.abs_tolerance();
    const auto shifts = candidate_shifts(pat, Mat2i::Identity());
    std::optional<Vec2> found;
    for (const Vec2& s : shifts) {
      if (pat.lattice.to_cartesian(s).norm() <= abs_tol) continue;
      if (lattice_offset(pat.lattice, s, Vec2::Zero(), abs_tol)) continue;
      if (motif_invariant(pat, FracMap{Mat2i::Identity(), s})) {
        found = s;
        break;
      }
    }
    if (!found) return pat;
    pat = refine_lattice(pat, *found);
  }
  throw Error(ErrorCode::InvalidPattern, "translation refinement did not converge");
}

}  // namespace detail

/// Enumerates every isometry class of the pattern: candidate linear parts
/// come from the reduced lattice's automorphism group, candidate
/// translations from matching one probe primitive, and every candidate is
/// confirmed against the full motif before centers and lines are read off.
inline SymmetryInventory detect_symmetries(const PeriodicPattern& pattern) {
  pattern.validate();
  PeriodicPattern pat = reduce_lattice(pattern);
  pat.canonicalize_motif();
  pat = detail::normalize_translations(pat);

  const double abs_tol = pat.abs_tolerance();
  const Mat2 basis = pat.lattice.basis();
  const auto autos = detail::lattice_automorphisms(pat.lattice, pat.tolerance);

  SymmetryInventory inv;
  inv.lattice = pat.lattice;

  std::vector<std::pair<Vec2, int>> centers;  // wrapped fractional, order
  auto add_center = [&](const Vec2& c_frac, int order) {
    const Vec2 w = detail::wrap_unit(c_frac);
    for (auto& [pos, ord] : centers) {
      if (detail::lattice_offset(pat.lattice, w, pos, 8 * abs_tol)) {
        ord = std::max(ord, order);
        return;
      }
    }
    centers.emplace_back(w, order);
  };

  struct LineBucket {
    Vec2 direction;
    double offset;  // along the unit normal, canonical in [0, spacing)
    double spacing;
    double period;  // lattice period along the line
    bool mirror = false;
    double glide_shift = 0.0;
  };
  std::vector<LineBucket> lines;

  for (const auto& aut : autos) {
    if (aut.map == Mat2i::Identity()) continue;  // translations already normalized

    // one valid translation per linear part; the rest differ by lattice vectors
    std::optional<Vec2> t_frac;
    for (const Vec2& s : detail::candidate_shifts(pat, aut.map)) {
      if (detail::motif_invariant(pat, detail::FracMap{aut.map, s})) {
        t_frac = s;
        break;
      }
    }
    if (!t_frac) continue;

    if (!aut.reflection) {
      // rotation: centers solve (I - M) c = t + k over lattice representatives
      const Mat2 imap = (Mat2i::Identity() - aut.map).cast<double>();
      const Mat2 inv_imap = imap.inverse();
      for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
          add_center(inv_imap * (*t_frac + Vec2(i, j)), aut.order);
      continue;
    }

    // reflection: split each representative translation into the line offset
    // (normal component / 2) and the glide shift (tangential component)
    Vec2 d = (aut.linear + Mat2::Identity()) * Vec2(1.0, 0.0);
    if (d.norm() < 0.5) d = (aut.linear + Mat2::Identity()) * Vec2(0.0, 1.0);
    d.normalize();
    if (d.x() < -1e-12 || (std::abs(d.x()) <= 1e-12 && d.y() < 0.0)) d = -d;
    const Vec2 n(-d.y(), d.x());

    const double spacing = detail::min_positive_projection(pat.lattice, n, nullptr, abs_tol);
    const double period = detail::min_positive_projection(pat.lattice, d, &d, abs_tol);
    if (spacing <= 0.0 || period <= 0.0) continue;

    const Vec2 t_cart0 = pat.lattice.to_cartesian(*t_frac);
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        const Vec2 t = t_cart0 + pat.lattice.to_cartesian(Vec2(i, j));
        double offset = std::fmod(t.dot(n) / 2.0, spacing);
        if (offset < 0) offset += spacing;
        if (spacing - offset <= 4 * abs_tol) offset = 0.0;
        double shift = std::fmod(t.dot(d), period);
        if (shift < 0) shift += period;
        if (period - shift <= 4 * abs_tol) shift = 0.0;
        const bool is_mirror = shift <= 4 * abs_tol;

        bool merged = false;
        for (auto& lb : lines) {
          if (std::abs(lb.direction.dot(d)) < 1.0 - 1e-9) continue;
          if (std::abs(lb.offset - offset) > 4 * abs_tol &&
              std::abs(std::abs(lb.offset - offset) - spacing) > 4 * abs_tol)
            continue;
          if (is_mirror) lb.mirror = true;
          else if (!lb.mirror) lb.glide_shift = std::min(shift, period - shift);
          merged = true;
          break;
        }
        if (!merged) {
          LineBucket lb;
          lb.direction = d;
          lb.offset = offset;
          lb.spacing = spacing;
          lb.period = period;
          lb.mirror = is_mirror;
          if (!is_mirror) lb.glide_shift = std::min(shift, period - shift);
          lines.push_back(lb);
        }
      }
  }

  for (const auto& [pos, ord] : centers) {
    inv.rotation_centers.push_back({pos, ord});
    inv.highest_rotation_order = std::max(inv.highest_rotation_order, ord);
  }
  std::vector<Vec2> mirror_dirs;
  for (const auto& lb : lines) {
    const Vec2 n(-lb.direction.y(), lb.direction.x());
    const Vec2 point = lb.offset * n;
    if (lb.mirror) {
      inv.mirror_lines.push_back({point, lb.direction, 0.0});
      bool new_dir = true;
      for (const Vec2& md : mirror_dirs)
        if (std::abs(md.dot(lb.direction)) > 1.0 - 1e-9) new_dir = false;
      if (new_dir) mirror_dirs.push_back(lb.direction);
    } else {
      inv.glide_lines.push_back({point, lb.direction, lb.glide_shift});
    }
  }
  inv.mirror_direction_count = static_cast<int>(mirror_dirs.size());

  // deterministic ordering for reporting
  auto center_key = [](const RotationCenter& c) {
    return std::make_tuple(-c.order, c.center.x(), c.center.y());
  };
  std::sort(inv.rotation_centers.begin(), inv.rotation_centers.end(),
            [&](const auto& a, const auto& b) { return center_key(a) < center_key(b); });
  auto line_key = [](const SymmetryLine& l) {
    return std::make_tuple(std::atan2(l.direction.y(), l.direction.x()),
                           l.point.x(), l.point.y());
  };
  std::sort(inv.mirror_lines.begin(), inv.mirror_lines.end(),
            [&](const auto& a, const auto& b) { return line_key(a) < line_key(b); });
  std::sort(inv.glide_lines.begin(), inv.glide_lines.end(),
            [&](const auto& a, const auto& b) { return line_key(a) < line_key(b); });
  return inv;
}

}  // namespace auxsym
