#include "rgit/exactgeom/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "rgit/common/errors.hpp"

namespace rgit::geom {

namespace {

// Positive factor k such that k * v is a primitive integer vector.
Rat primitive_scale(const QVec& v) {
  QVec p = primitive(v);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (!v[i].is_zero()) return p[i] / v[i];
  }
  throw InputError("zero normal vector");
}

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] &= o.w_[k];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (w_[k] & ~o.w_[k]) return false;
    }
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Ray {
  QVec y;
  Bits zero;
};

// Extreme rays of {y in Q^{k} : h_i . y >= 0 for all i}, assuming the h_i span Q^k.
std::vector<Ray> double_description(const QMat& h, std::size_t k) {
  const std::size_t n = h.size();
  // Pick k linearly independent rows for the initial simplicial cone.
  std::vector<std::size_t> init;
  QMat chosen;
  for (std::size_t i = 0; i < n && init.size() < k; ++i) {
    chosen.push_back(h[i]);
    if (rank(chosen, k) == chosen.size()) {
      init.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  if (init.size() != k) throw std::logic_error("double_description: rows do not span");

  std::vector<Ray> rays;
  for (std::size_t c = 0; c < k; ++c) {
    auto r = solve_square(chosen, QVec::unit(k, c));
    Ray ray{primitive(*r), Bits(n)};
    for (std::size_t j = 0; j < k; ++j) {
      if (j != c) ray.zero.set(init[j]);
    }
    rays.push_back(std::move(ray));
  }
  std::vector<bool> done(n, false);
  for (auto i : init) done[i] = true;

  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    done[i] = true;
    std::vector<Rat> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = h[i].dot(rays[r].y);
      if (val[r].sign() > 0) pos.push_back(r);
      if (val[r].sign() < 0) neg.push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (val[r].is_zero()) rays[r].zero.set(i);
      }
      continue;
    }
    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        if (k >= 2 && common.count() < k - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r != p && r != q && common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray fresh{primitive(rays[q].y * val[p] - rays[p].y * val[q]), common};
        fresh.zero.set(i);
        next.push_back(std::move(fresh));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r].sign() >= 0) {
        if (val[r].is_zero()) rays[r].zero.set(i);
        next.push_back(std::move(rays[r]));
      }
    }
    rays = std::move(next);
  }
  return rays;
}

}  // namespace

Hyperplane::Hyperplane(QVec normal, Rat offset) {
  if (normal.is_zero()) throw InputError("hyperplane with zero normal");
  Rat k = primitive_scale(normal);
  normal *= k;
  offset *= k;
  for (const auto& x : normal) {
    if (x.is_zero()) continue;
    if (x.sign() < 0) {
      normal *= Rat(-1);
      offset = -offset;
    }
    break;
  }
  normal_ = std::move(normal);
  offset_ = std::move(offset);
}

Halfspace::Halfspace(QVec normal, Rat offset) {
  if (normal.is_zero()) throw InputError("halfspace with zero normal");
  Rat k = primitive_scale(normal);
  normal_ = normal * k;
  offset_ = offset * k;
}

bool Polytope::in_affine_hull(const QVec& p) const {
  if (p.dim() != ambient_dim_) throw InputError("point dimension mismatch");
  return std::all_of(equalities_.begin(), equalities_.end(),
                     [&](const Hyperplane& h) { return h.eval(p).is_zero(); });
}

std::vector<std::size_t> Polytope::facet_vertices(std::size_t f) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (facets_.at(f).slack(vertices_[v]).is_zero()) out.push_back(v);
  }
  return out;
}

Polytope convex_hull(const std::vector<QVec>& points) {
  if (points.empty()) throw InputError("convex_hull: empty point list");
  const std::size_t dim = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) throw InputError("convex_hull: mixed point dimensions");
  }
  std::vector<QVec> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope poly;
  poly.ambient_dim_ = dim;
  const QVec& p0 = pts.front();
  QMat diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - p0);
  RowEchelon ech = rref(diffs, dim);
  const std::size_t d = ech.pivots.size();
  poly.affine_dim_ = static_cast<int>(d);

  QMat normals = nullspace(ech.rows, dim);
  for (const auto& nrm : normals) poly.equalities_.emplace_back(nrm, nrm.dot(p0));
  std::sort(poly.equalities_.begin(), poly.equalities_.end());
  QMat eq_normals;
  for (const auto& h : poly.equalities_) eq_normals.push_back(h.normal());

  if (d == 0) {
    poly.vertices_ = {p0};
    return poly;
  }

  // Coordinates on the affine hull: the pivot columns.
  std::vector<QVec> coords;
  for (const auto& p : pts) {
    QVec t(d);
    for (std::size_t k = 0; k < d; ++k) t[k] = p[ech.pivots[k]];
    coords.push_back(std::move(t));
  }
  // Valid inequalities a.t <= beta  <=>  (beta, a) . (1, -t) >= 0.
  QMat h;
  for (const auto& t : coords) {
    QVec row(d + 1);
    row[0] = 1;
    for (std::size_t k = 0; k < d; ++k) row[k + 1] = -t[k];
    h.push_back(std::move(row));
  }
  std::vector<Ray> rays = double_description(h, d + 1);

  std::vector<QMat> tight_normals(pts.size());
  for (const auto& ray : rays) {
    QVec lifted(dim);
    for (std::size_t k = 0; k < d; ++k) lifted[ech.pivots[k]] = ray.y[k + 1];
    QVec n = project_out(lifted, eq_normals);
    std::size_t on = pts.size();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (ray.zero.test(i)) {
        on = i;
        tight_normals[i].push_back(n);
      }
    }
    if (on == pts.size()) throw std::logic_error("convex_hull: facet without points");
    poly.facets_.emplace_back(n, n.dot(pts[on]));
  }
  std::sort(poly.facets_.begin(), poly.facets_.end());
  poly.facets_.erase(std::unique(poly.facets_.begin(), poly.facets_.end()), poly.facets_.end());

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (rank(tight_normals[i], dim) == d) poly.vertices_.push_back(pts[i]);
  }
  return poly;
}

Membership membership(const QVec& p, const Polytope& poly, int reference_dim) {
  if (p.dim() != poly.ambient_dim()) throw InputError("membership: dimension mismatch");
  const int ref = reference_dim < 0 ? static_cast<int>(poly.ambient_dim()) : reference_dim;
  if (!poly.in_affine_hull(p)) return Membership::Outside;
  if (poly.affine_dim() == 0) {
    if (p != poly.vertices().front()) return Membership::Outside;
    return ref == 0 ? Membership::InteriorFullDim : Membership::RelativeInteriorOnly;
  }
  bool boundary = false;
  for (const auto& f : poly.facets()) {
    int s = f.slack(p).sign();
    if (s < 0) return Membership::Outside;
    if (s == 0) boundary = true;
  }
  if (boundary) return Membership::OnBoundary;
  return poly.affine_dim() == ref ? Membership::InteriorFullDim : Membership::RelativeInteriorOnly;
}

SignedSqDistance signed_sq_distance_to_boundary(const QVec& p, const Polytope& poly,
                                                int reference_dim) {
  if (poly.vertices().empty()) throw DomainError(ErrorKind::EmptyPolytope, "empty polytope");
  switch (membership(p, poly, reference_dim)) {
    case Membership::Outside:
      return {+1, nearest_point(p, poly).sq_dist};
    case Membership::OnBoundary:
    case Membership::RelativeInteriorOnly:
      return {0, Rat(0)};
    case Membership::InteriorFullDim: {
      std::optional<Rat> best;
      for (const auto& f : poly.facets()) {
        Rat s = f.slack(p);
        Rat d2 = s * s / f.normal().norm2();
        if (!best || d2 < *best) best = d2;
      }
      return {-1, best.value_or(Rat(0))};
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Minimizer of |sum mu_k w_k|^2 subject to sum mu_k = 1.
std::vector<Rat> affine_minimizer(const std::vector<QVec>& w, const std::vector<std::size_t>& s) {
  const std::size_t k = s.size();
  QMat sys(k + 1, QVec(k + 1));
  QVec rhs(k + 1);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) sys[a][b] = w[s[a]].dot(w[s[b]]);
    sys[a][k] = 1;
    sys[k][a] = 1;
  }
  rhs[k] = 1;
  auto sol = solve_square(sys, rhs);
  if (!sol) throw std::logic_error("nearest_point: affinely dependent corral");
  return {sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(k)};
}

QVec combine(const std::vector<QVec>& w, const std::vector<std::size_t>& s, const std::vector<Rat>& lambda) {
  QVec x(w.front().dim());
  for (std::size_t a = 0; a < s.size(); ++a) x += w[s[a]] * lambda[a];
  return x;
}

}  // namespace

NearestPoint nearest_point(const QVec& p, const Polytope& poly) {
  const auto& verts = poly.vertices();
  if (verts.empty()) throw DomainError(ErrorKind::EmptyPolytope, "empty polytope");
  if (p.dim() != poly.ambient_dim()) throw InputError("nearest_point: dimension mismatch");

  // Wolfe's minimum-norm-point iteration on w_i = v_i - p, in exact arithmetic.
  std::vector<QVec> w;
  for (const auto& v : verts) w.push_back(v - p);
  std::size_t start = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i].norm2() < w[start].norm2()) start = i;
  }
  std::vector<std::size_t> corral{start};
  std::vector<Rat> lambda{Rat(1)};
  QVec x = w[start];

  while (!x.is_zero()) {
    const Rat xx = x.norm2();
    std::size_t j = 0;
    Rat best = x.dot(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
      Rat v = x.dot(w[i]);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (best >= xx) break;
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) {
      throw std::logic_error("nearest_point: cycling in minimum-norm iteration");
    }
    corral.push_back(j);
    lambda.push_back(Rat(0));
    while (true) {
      std::vector<Rat> mu = affine_minimizer(w, corral);
      if (std::all_of(mu.begin(), mu.end(), [](const Rat& r) { return r.sign() > 0; })) {
        lambda = std::move(mu);
        x = combine(w, corral, lambda);
        break;
      }
      std::optional<Rat> theta;
      for (std::size_t a = 0; a < corral.size(); ++a) {
        if (mu[a].sign() > 0) continue;
        Rat denom = lambda[a] - mu[a];
        Rat t = denom.is_zero() ? Rat(0) : lambda[a] / denom;
        if (!theta || t < *theta) theta = t;
      }
      for (std::size_t a = 0; a < corral.size(); ++a) {
        lambda[a] = (Rat(1) - *theta) * lambda[a] + *theta * mu[a];
      }
      std::vector<std::size_t> keep_idx;
      std::vector<Rat> keep_lambda;
      for (std::size_t a = 0; a < corral.size(); ++a) {
        if (lambda[a].sign() > 0) {
          keep_idx.push_back(corral[a]);
          keep_lambda.push_back(lambda[a]);
        }
      }
      corral = std::move(keep_idx);
      lambda = std::move(keep_lambda);
      x = combine(w, corral, lambda);
    }
  }

  QVec q = p + x;
  // Variational certificate: <p - q, v - q> <= 0 for every vertex v.
  for (const auto& v : verts) {
    if ((p - q).dot(v - q).sign() > 0) throw std::logic_error("nearest_point: certificate failed");
  }
  return {std::move(q), x.norm2()};
}

}  // namespace rgit::geom
