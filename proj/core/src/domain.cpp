#include "hardy/domain.hpp"

#include "hardy/quadrature.hpp"

#include <algorithm>

namespace hardy {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::HalfBall:
      return "half_ball";
    case DomainKind::HalfSpace:
      return "half_space";
    case DomainKind::ExteriorBall:
      return "exterior_ball";
    case DomainKind::PuncturedSpace:
      return "punctured_space";
    case DomainKind::Box:
      return "box";
  }
  return "unknown";
}

DomainKind parse_domain_kind(std::string_view name) {
  for (DomainKind k : {DomainKind::HalfBall, DomainKind::HalfSpace, DomainKind::ExteriorBall,
                       DomainKind::PuncturedSpace, DomainKind::Box}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown domain kind '" + std::string(name) + "'");
}

namespace {

void check_dim(int n) {
  if (n < 2) throw ConfigError("domain dimension must be >= 2, got " + std::to_string(n));
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("domain radius must be positive");
}

}  // namespace

DomainSpec DomainSpec::half_ball(int n, double radius) {
  check_dim(n);
  check_radius(radius);
  DomainSpec d(DomainKind::HalfBall, n);
  d.radius_ = radius;
  return d;
}

DomainSpec DomainSpec::half_space(int n) {
  check_dim(n);
  return DomainSpec(DomainKind::HalfSpace, n);
}

DomainSpec DomainSpec::exterior_ball(int n, double radius) {
  check_dim(n);
  check_radius(radius);
  DomainSpec d(DomainKind::ExteriorBall, n);
  d.radius_ = radius;
  return d;
}

DomainSpec DomainSpec::punctured_space(int n) {
  check_dim(n);
  return DomainSpec(DomainKind::PuncturedSpace, n);
}

DomainSpec DomainSpec::box(Vec lo, Vec hi) {
  if (lo.size() != hi.size()) throw ConfigError("box corners have different dimensions");
  check_dim(static_cast<int>(lo.size()));
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (!(hi(i) > lo(i))) throw ConfigError("box corner hi must exceed lo in every coordinate");
  }
  DomainSpec d(DomainKind::Box, static_cast<int>(lo.size()));
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

bool DomainSpec::contains(const Vec& x) const {
  if (x.size() != n_) return false;
  switch (kind_) {
    case DomainKind::HalfBall:
      return x(n_ - 1) > 0.0 && x.norm() < radius_;
    case DomainKind::HalfSpace:
      return x(n_ - 1) > 0.0;
    case DomainKind::ExteriorBall:
      return x.norm() > radius_;
    case DomainKind::PuncturedSpace:
      return x.norm() > 0.0;
    case DomainKind::Box:
      return ((x - lo_).array() > 0.0).all() && ((hi_ - x).array() > 0.0).all();
  }
  return false;
}

// ---------------------------------------------------------------------------

BoundaryPortion::BoundaryPortion(const DomainSpec& domain, std::vector<BoundaryPiece> pieces)
    : n_(domain.dim()), lo_(domain.lo()), hi_(domain.hi()), pieces_(std::move(pieces)) {
  exterior_ = domain.kind() == DomainKind::ExteriorBall;
}

namespace {

using Shape = BoundaryPiece::Shape;

bool box_side_point(const Vec& x, const Vec& lo, const Vec& hi, double tol) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) {
    if (x(i) < lo(i) - tol || x(i) > hi(i) + tol) return false;
  }
  for (int i = 0; i < n - 1; ++i) {
    if (std::abs(x(i) - lo(i)) <= tol || std::abs(x(i) - hi(i)) <= tol) return true;
  }
  return std::abs(x(n - 1) - hi(n - 1)) <= tol;
}

bool box_bottom_point(const Vec& x, const Vec& lo, const Vec& hi, double tol) {
  const int n = static_cast<int>(x.size());
  if (std::abs(x(n - 1) - lo(n - 1)) > tol) return false;
  for (int i = 0; i < n - 1; ++i) {
    if (!(x(i) > lo(i) + tol && x(i) < hi(i) - tol)) return false;
  }
  return true;
}

// Quadrature over the (n-1)-dimensional disc {x_n = 0, |x'| < radius}.
void disc_rule(int n, double radius, int order, std::vector<SurfaceSample>& out) {
  const Vec normal = -unit_vector(n, n - 1);
  if (n == 2) {
    const GaussRule g = gauss_legendre(order, -radius, radius);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      Vec p = Vec::Zero(2);
      p(0) = g.nodes[i];
      out.push_back({p, normal, g.weights[i]});
    }
    return;
  }
  const GaussRule radial = gauss_legendre(order, 0.0, radius);
  const SphereRule angles = sphere_rule(n - 1, order);
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double s = radial.nodes[i];
    const double ws = radial.weights[i] * std::pow(s, n - 2);
    for (std::size_t j = 0; j < angles.directions.size(); ++j) {
      Vec p = Vec::Zero(n);
      p.head(n - 1) = s * angles.directions[j];
      out.push_back({p, normal, ws * angles.weights[j]});
    }
  }
}

void face_rule(const Vec& lo, const Vec& hi, int axis, double value, double sign, int order,
               std::vector<SurfaceSample>& out) {
  const int n = static_cast<int>(lo.size());
  std::vector<GaussRule> rules;
  std::vector<int> axes;
  for (int i = 0; i < n; ++i) {
    if (i == axis) continue;
    axes.push_back(i);
    rules.push_back(gauss_legendre(order, lo(i), hi(i)));
  }
  const Vec normal = sign * unit_vector(n, axis);
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    Vec p(n);
    p(axis) = value;
    double w = 1.0;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      p(axes[a]) = rules[a].nodes[idx[a]];
      w *= rules[a].weights[idx[a]];
    }
    out.push_back({p, normal, w});
    std::size_t a = 0;
    while (a < idx.size() && ++idx[a] == rules[a].nodes.size()) idx[a++] = 0;
    if (a == idx.size()) break;
  }
}

}  // namespace

bool BoundaryPortion::contains(const Vec& x, double tol) const {
  if (x.size() != n_) return false;
  for (const BoundaryPiece& p : pieces_) {
    switch (p.shape) {
      case Shape::FlatDisc:
        if (std::abs(x(n_ - 1)) <= tol && x.norm() < p.radius - tol) return true;
        break;
      case Shape::Plane:
        if (std::abs(x(n_ - 1)) <= tol) return true;
        break;
      case Shape::Sphere:
        if (std::abs(x.norm() - p.radius) <= tol) return true;
        break;
      case Shape::UpperHemisphere:
        if (std::abs(x.norm() - p.radius) <= tol && x(n_ - 1) >= -tol) return true;
        break;
      case Shape::BoxBottom:
        if (box_bottom_point(x, lo_, hi_, tol)) return true;
        break;
      case Shape::BoxSides:
        if (box_side_point(x, lo_, hi_, tol)) return true;
        break;
    }
  }
  return false;
}

Vec BoundaryPortion::normal(const Vec& x) const {
  for (const BoundaryPiece& p : pieces_) {
    BoundaryPortion single;
    single.n_ = n_;
    single.lo_ = lo_;
    single.hi_ = hi_;
    single.pieces_ = {p};
    if (!single.contains(x, 1e-7 * (1.0 + x.norm()))) continue;
    switch (p.shape) {
      case Shape::FlatDisc:
      case Shape::Plane:
        return -unit_vector(n_, n_ - 1);
      case Shape::Sphere:
      case Shape::UpperHemisphere:
        return (exterior_ ? -1.0 : 1.0) * x / x.norm();
      case Shape::BoxBottom:
        return -unit_vector(n_, n_ - 1);
      case Shape::BoxSides: {
        const double tol = 1e-7 * (1.0 + x.norm());
        for (int i = 0; i < n_ - 1; ++i) {
          if (std::abs(x(i) - lo_(i)) <= tol) return -unit_vector(n_, i);
          if (std::abs(x(i) - hi_(i)) <= tol) return unit_vector(n_, i);
        }
        return unit_vector(n_, n_ - 1);
      }
    }
  }
  throw DomainError("normal requested at a point off the boundary portion");
}

std::vector<SurfaceSample> BoundaryPortion::quadrature(int order, double plane_radius) const {
  std::vector<SurfaceSample> out;
  for (const BoundaryPiece& p : pieces_) {
    switch (p.shape) {
      case Shape::FlatDisc:
        disc_rule(n_, p.radius, order, out);
        break;
      case Shape::Plane:
        disc_rule(n_, plane_radius, order, out);
        break;
      case Shape::Sphere:
      case Shape::UpperHemisphere: {
        const SphereRule rule = sphere_rule(n_, order, p.shape == Shape::UpperHemisphere);
        const double scale = std::pow(p.radius, n_ - 1);
        for (std::size_t j = 0; j < rule.directions.size(); ++j) {
          const Vec& d = rule.directions[j];
          out.push_back({p.radius * d, (exterior_ ? -1.0 : 1.0) * d, scale * rule.weights[j]});
        }
        break;
      }
      case Shape::BoxBottom:
        face_rule(lo_, hi_, n_ - 1, lo_(n_ - 1), -1.0, order, out);
        break;
      case Shape::BoxSides:
        for (int i = 0; i < n_ - 1; ++i) {
          face_rule(lo_, hi_, i, lo_(i), -1.0, order, out);
          face_rule(lo_, hi_, i, hi_(i), 1.0, order, out);
        }
        face_rule(lo_, hi_, n_ - 1, hi_(n_ - 1), 1.0, order, out);
        break;
    }
  }
  return out;
}

BoundaryDecomposition decompose_boundary(const DomainSpec& domain, SplitPolicy policy) {
  const double r = domain.radius();
  auto unsupported = [&](const char* policy_name) -> BoundaryDecomposition {
    throw ConfigError("split policy '" + std::string(policy_name) + "' is not available for " +
                      to_string(domain.kind()));
  };
  switch (domain.kind()) {
    case DomainKind::HalfBall: {
      BoundaryPortion disc(domain, {{Shape::FlatDisc, r}});
      BoundaryPortion cap(domain, {{Shape::UpperHemisphere, r}});
      if (policy == SplitPolicy::Canonical) return {disc, cap};
      if (policy == SplitPolicy::AllDirichlet) {
        return {BoundaryPortion(), BoundaryPortion(domain, {{Shape::FlatDisc, r},
                                                            {Shape::UpperHemisphere, r}})};
      }
      return unsupported("all_robin");
    }
    case DomainKind::HalfSpace: {
      if (policy == SplitPolicy::AllDirichlet) return unsupported("all_dirichlet");
      return {BoundaryPortion(domain, {{Shape::Plane, 0.0}}), BoundaryPortion()};
    }
    case DomainKind::ExteriorBall: {
      BoundaryPortion sphere(domain, {{Shape::Sphere, r}});
      if (policy == SplitPolicy::AllDirichlet) return {BoundaryPortion(), sphere};
      return {sphere, BoundaryPortion()};
    }
    case DomainKind::PuncturedSpace:
      if (policy != SplitPolicy::Canonical) return unsupported("non-canonical");
      return {BoundaryPortion(), BoundaryPortion()};
    case DomainKind::Box: {
      BoundaryPortion bottom(domain, {{Shape::BoxBottom, 0.0}});
      BoundaryPortion sides(domain, {{Shape::BoxSides, 0.0}});
      if (policy == SplitPolicy::Canonical) return {bottom, sides};
      if (policy == SplitPolicy::AllDirichlet) {
        return {BoundaryPortion(),
                BoundaryPortion(domain, {{Shape::BoxBottom, 0.0}, {Shape::BoxSides, 0.0}})};
      }
      return unsupported("all_robin");
    }
  }
  return unsupported("unknown");
}

// ---------------------------------------------------------------------------

double exhaustion_radius(const DomainSpec& domain, int k) {
  if (k < 1) throw ConfigError("exhaustion level must be >= 1, got " + std::to_string(k));
  const double two_k = std::ldexp(1.0, k);
  switch (domain.kind()) {
    case DomainKind::HalfBall:
      return domain.radius() * (1.0 - 1.0 / two_k);
    case DomainKind::HalfSpace:
    case DomainKind::PuncturedSpace:
      return two_k;
    case DomainKind::ExteriorBall:
      return domain.radius() * two_k;
    case DomainKind::Box:
      return (domain.hi() - domain.lo()).norm();
  }
  return two_k;
}

TruncatedDomain::TruncatedDomain(DomainSpec parent, int level)
    : parent_(std::move(parent)), level_(level) {
  if (level < 1) throw ConfigError("exhaustion level must be >= 1, got " + std::to_string(level));
  const int n = parent_.dim();
  switch (parent_.kind()) {
    case DomainKind::HalfBall:
    case DomainKind::HalfSpace:
      outer_ = exhaustion_radius(parent_, level);
      break;
    case DomainKind::ExteriorBall:
      inner_ = parent_.radius();
      outer_ = exhaustion_radius(parent_, level);
      break;
    case DomainKind::PuncturedSpace:
      outer_ = exhaustion_radius(parent_, level);
      inner_ = 1.0 / outer_;
      break;
    case DomainKind::Box: {
      const Vec delta = (parent_.hi() - parent_.lo()) * std::ldexp(1.0, -(level + 2));
      lo_ = parent_.lo() + delta;
      lo_(n - 1) = parent_.lo()(n - 1);
      hi_ = parent_.hi() - delta;
      break;
    }
  }
}

bool TruncatedDomain::contains(const Vec& x) const {
  const int n = dim();
  if (x.size() != n) return false;
  const double r = x.norm();
  if (r <= hole_) return false;
  switch (parent_.kind()) {
    case DomainKind::HalfBall:
    case DomainKind::HalfSpace:
      return x(n - 1) > 0.0 && r < outer_;
    case DomainKind::ExteriorBall:
    case DomainKind::PuncturedSpace:
      return r > inner_ && r < outer_;
    case DomainKind::Box:
      return ((x - lo_).array() > 0.0).all() && ((hi_ - x).array() > 0.0).all();
  }
  return false;
}

bool TruncatedDomain::robin_is_plane() const {
  const DomainKind k = parent_.kind();
  return k == DomainKind::HalfBall || k == DomainKind::HalfSpace || k == DomainKind::Box;
}

double TruncatedDomain::robin_plane() const {
  return parent_.kind() == DomainKind::Box ? lo_(dim() - 1) : 0.0;
}

bool TruncatedDomain::robin_is_inner_sphere() const {
  return parent_.kind() == DomainKind::ExteriorBall && hole_ < inner_;
}

bool TruncatedDomain::on_robin(const Vec& x, double tol) const {
  const int n = dim();
  if (x.size() != n) return false;
  const double r = x.norm();
  if (robin_is_plane()) {
    if (std::abs(x(n - 1) - robin_plane()) > tol) return false;
    if (parent_.kind() == DomainKind::Box) {
      for (int i = 0; i < n - 1; ++i) {
        if (!(x(i) > lo_(i) + tol && x(i) < hi_(i) - tol)) return false;
      }
      return r > hole_ + tol;
    }
    return r > hole_ + tol && r < outer_ - tol;
  }
  if (robin_is_inner_sphere()) return std::abs(r - inner_) <= tol;
  return false;
}

Vec TruncatedDomain::bbox_lo() const {
  const int n = dim();
  if (parent_.kind() == DomainKind::Box) return lo_;
  Vec lo = Vec::Constant(n, -outer_);
  if (robin_is_plane()) lo(n - 1) = 0.0;
  return lo;
}

Vec TruncatedDomain::bbox_hi() const {
  if (parent_.kind() == DomainKind::Box) return hi_;
  return Vec::Constant(dim(), outer_);
}

TruncatedDomain TruncatedDomain::without_ball(double hole_radius) const {
  if (!(hole_radius >= 0.0)) throw ConfigError("hole radius must be nonnegative");
  TruncatedDomain copy = *this;
  copy.hole_ = hole_radius;
  return copy;
}

double TruncatedDomain::distance_to_parent_dirichlet(const Vec& x) const {
  const int n = dim();
  switch (parent_.kind()) {
    case DomainKind::HalfBall:
      return parent_.radius() - x.norm();
    case DomainKind::Box: {
      double d = parent_.hi()(n - 1) - x(n - 1);
      for (int i = 0; i < n - 1; ++i) {
        d = std::min({d, x(i) - parent_.lo()(i), parent_.hi()(i) - x(i)});
      }
      return d;
    }
    default:
      return std::numeric_limits<double>::infinity();
  }
}

TruncatedDomain exhaustion_member(const DomainSpec& domain, int k) {
  return TruncatedDomain(domain, k);
}

}  // namespace hardy
