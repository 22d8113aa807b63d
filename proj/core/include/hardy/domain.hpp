#pragma once

#include "hardy/common.hpp"

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

enum class DomainKind { HalfBall, HalfSpace, ExteriorBall, PuncturedSpace, Box };

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(std::string_view name);

/// Model geometry. Half-domains live in {x_n > 0}; balls are centred at 0.
/// A Box is the open rectangle (lo, hi) whose bottom face x_n = lo_n carries
/// the Robin condition.
class DomainSpec {
 public:
  static DomainSpec half_ball(int n, double radius = 1.0);
  static DomainSpec half_space(int n);
  static DomainSpec exterior_ball(int n, double radius = 1.0);
  static DomainSpec punctured_space(int n);
  static DomainSpec box(Vec lo, Vec hi);

  DomainKind kind() const { return kind_; }
  int dim() const { return n_; }
  double radius() const { return radius_; }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }

  /// Membership in the open domain.
  bool contains(const Vec& x) const;

  bool bounded() const { return kind_ == DomainKind::HalfBall || kind_ == DomainKind::Box; }
  bool radially_symmetric() const {
    return kind_ == DomainKind::ExteriorBall || kind_ == DomainKind::PuncturedSpace;
  }

 private:
  DomainSpec(DomainKind kind, int n) : kind_(kind), n_(n) {}

  DomainKind kind_;
  int n_;
  double radius_ = 0.0;
  Vec lo_;
  Vec hi_;
};

struct SurfaceSample {
  Vec point;
  Vec normal;  // outward with respect to the domain
  double weight;
};

/// One smooth piece of a boundary portion.
struct BoundaryPiece {
  enum class Shape {
    FlatDisc,         // {x_n = 0, |x| < radius}, relatively open
    Plane,            // {x_n = 0}
    Sphere,           // {|x| = radius}
    UpperHemisphere,  // {|x| = radius, x_n >= 0}
    BoxBottom,        // {x_n = lo_n} with the other coordinates strictly inside
    BoxSides          // remaining faces of the box, closed
  };
  Shape shape;
  double radius = 0.0;
};

/// A boundary portion described by a union of pieces. Empty means no boundary.
class BoundaryPortion {
 public:
  BoundaryPortion() = default;
  BoundaryPortion(const DomainSpec& domain, std::vector<BoundaryPiece> pieces);

  bool empty() const { return pieces_.empty(); }
  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }

  bool contains(const Vec& x, double tol = 1e-9) const;

  /// Outward unit normal at a point of the portion.
  Vec normal(const Vec& x) const;

  /// Surface quadrature: polar Gauss rules on discs and spheres, tensor rules on
  /// box faces. Unbounded planes are cut at |x| < plane_radius.
  std::vector<SurfaceSample> quadrature(int order, double plane_radius = 1.0) const;

 private:
  int n_ = 0;
  bool exterior_ = false;
  Vec lo_;
  Vec hi_;
  std::vector<BoundaryPiece> pieces_;
};

struct BoundaryDecomposition {
  BoundaryPortion robin;
  BoundaryPortion dirichlet;
};

enum class SplitPolicy { Canonical, AllDirichlet, AllRobin };

/// Canonical split per kind: HalfBall = flat disc / cap, HalfSpace = plane / none,
/// ExteriorBall = sphere / none, PuncturedSpace = none / none, Box = bottom / sides.
/// AllDirichlet is available for the bounded kinds, AllRobin for ExteriorBall and
/// HalfSpace (where it coincides with the canonical split).
BoundaryDecomposition decompose_boundary(const DomainSpec& domain,
                                         SplitPolicy policy = SplitPolicy::Canonical);

/// Bounded member Ω_k of the canonical exhaustion, optionally with a ball
/// {|x| <= hole} removed. The removed ball and every artificial surface belong
/// to the Dirichlet part; the Robin part is what remains of the parent's.
class TruncatedDomain {
 public:
  TruncatedDomain(DomainSpec parent, int level);

  const DomainSpec& parent() const { return parent_; }
  int level() const { return level_; }
  int dim() const { return parent_.dim(); }

  /// Radial bounds: inner_radius() is 0 when there is no inner boundary.
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }

  bool contains(const Vec& x) const;

  /// Point of the relatively open Robin part ∂Ω_{k,Rob}.
  bool on_robin(const Vec& x, double tol = 1e-9) const;

  /// Robin part lies in the plane x_n = robin_plane() for half domains and boxes.
  bool robin_is_plane() const;
  double robin_plane() const;
  /// Robin part is the inner sphere (ExteriorBall).
  bool robin_is_inner_sphere() const;

  /// Axis-aligned box enclosing the member.
  Vec bbox_lo() const;
  Vec bbox_hi() const;

  /// Copy with the closed ball of the given radius removed (Ω_k ∖ K̄).
  TruncatedDomain without_ball(double hole_radius) const;
  double hole_radius() const { return hole_; }

  /// Distance from x to the Dirichlet part of the parent domain (infinity if empty).
  double distance_to_parent_dirichlet(const Vec& x) const;

 private:
  DomainSpec parent_;
  int level_;
  double inner_ = 0.0;
  double outer_ = std::numeric_limits<double>::infinity();
  double hole_ = 0.0;
  Vec lo_;
  Vec hi_;
};

/// Radius schedule of the canonical exhaustion:
/// HalfBall R(1 - 2^-k), HalfSpace 2^k, ExteriorBall R 2^k, PuncturedSpace 2^k
/// (with inner radius 2^-k). Box members shrink the non-Robin faces by
/// (hi - lo) 2^-(k+2).
double exhaustion_radius(const DomainSpec& domain, int k);

/// Throws ConfigError for k < 1.
TruncatedDomain exhaustion_member(const DomainSpec& domain, int k);

}  // namespace hardy
