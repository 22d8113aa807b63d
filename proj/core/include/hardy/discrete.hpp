#pragma once

#include "hardy/common.hpp"
#include "hardy/domain.hpp"
#include "hardy/operator.hpp"
#include "hardy/scalar_field.hpp"

#include <Eigen/Sparse>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace hardy {

using SpMat = Eigen::SparseMatrix<double>;

enum class NodeKind { Interior, RobinBoundary, DirichletBoundary, Ghost };
std::string to_string(NodeKind k);

/// Cartesian grid of spacing h on the box [lo, hi]. Box faces are Dirichlet
/// except the bottom face x_n = lo_n when robin_bottom is set. Nodes failing
/// `inside` are Dirichlet as well (staircase truncation of curved boundaries).
struct GridSpec {
  Vec lo;
  Vec hi;
  double h = 0.0;
  bool robin_bottom = false;
  std::function<bool(const Vec&)> inside;  // empty: every box-interior node is inside

  /// Grid over the bounding box of an exhaustion member. The upper box corner
  /// is rounded up to a multiple of h; the Robin plane must be the lower face.
  static GridSpec for_member(const TruncatedDomain& member, double h);
};

class Grid {
 public:
  /// ConfigError when (hi - lo)/h is not an integer on some axis.
  explicit Grid(GridSpec spec);

  int dim() const { return static_cast<int>(counts_.size()); }
  double h() const { return spec_.h; }
  const GridSpec& spec() const { return spec_; }
  /// Nodes per axis (cells + 1).
  const std::vector<int>& counts() const { return counts_; }
  std::size_t node_count() const { return kinds_.size(); }

  Vec point(std::size_t node) const;
  NodeKind kind(std::size_t node) const { return kinds_[node]; }
  std::vector<int> multi_index(std::size_t node) const;
  std::size_t node_at(const std::vector<int>& idx) const;

  /// Unknown numbering covers Interior and RobinBoundary nodes.
  std::size_t unknown_count() const { return unknowns_.size(); }
  std::size_t unknown_node(std::size_t u) const { return unknowns_[u]; }
  /// -1 for Dirichlet nodes.
  long unknown_of(std::size_t node) const { return unknown_of_[node]; }
  /// Unknown index of the node at x; ConfigError if x is not an unknown node.
  std::size_t unknown_at(const Vec& x) const;

 private:
  GridSpec spec_;
  std::vector<int> counts_;
  std::vector<NodeKind> kinds_;
  std::vector<std::size_t> unknowns_;
  std::vector<long> unknown_of_;
};

/// Discrete (P, B) with Dirichlet rows eliminated. Rows are scaled by the
/// dual-cell volume, so P is symmetric for symmetric presets and
/// x^T P x approximates the form B_{P,B}(x, x) including the Robin surface term.
struct DiscreteSystem {
  SpMat P;
  Vec volume;          // dual-cell volume per unknown
  Vec weight;          // W sampled at unknowns
  Vec robin_surface;   // boundary measure per unknown (0 off the Robin part)
  SpMat dirichlet_coupling;  // unknowns x Dirichlet nodes, value part moved to the right side
  std::vector<Vec> points;            // coordinates of unknowns
  std::vector<Vec> dirichlet_points;  // coordinates of Dirichlet nodes referenced by a stencil
  bool symmetric = true;

  std::size_t size() const { return static_cast<std::size_t>(volume.size()); }
  /// Diagonal M_W = diag(W * volume).
  SpMat mass() const;
  /// Samples W at the unknowns. Throws if W is negative or non-finite somewhere.
  void set_weight(const std::function<double(const Vec&)>& W);
};

/// Centred second-order differences. Robin rows use ghost elimination of
/// beta (A grad u + u b~) . n + gamma u = 0 on the bottom plane.
DiscreteSystem discretize(const OperatorSpec& op, const Grid& grid);

enum class RadialSpacing { Uniform, Logarithmic };

/// Shell (r_in, r_out) in R^n for radial data and the Laplacian:
/// -r^{1-n}(r^{n-1}u')'. Dirichlet at r_out; at r_in Dirichlet, or Robin
/// -u' + (gamma/beta) u = 0 when robin_inner (exterior of a ball).
struct RadialGridSpec {
  int n = 3;
  double r_in = 1.0;
  double r_out = 2.0;
  int cells = 100;
  RadialSpacing spacing = RadialSpacing::Logarithmic;
  bool robin_inner = false;
  double gamma = 0.0;
  double beta = 1.0;

  std::vector<double> radii() const;
};

DiscreteSystem discretize_radial(const RadialGridSpec& spec);

/// Sparse factorization used by every solve: LDLT for symmetric systems up to
/// direct_limit unknowns, SparseLU for nonsymmetric ones, and preconditioned
/// CG or BiCGSTAB beyond that.
class LinearSolver {
 public:
  LinearSolver(const SpMat& A, bool symmetric, std::size_t direct_limit = 60000,
               double iterative_tol = 1e-12);
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  /// NumericalError when the factorization or iteration fails.
  Vec solve(const Vec& rhs) const;
  bool direct() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct EigOptions {
  double tol = 1e-10;  // on the normwise backward error, plus a stalled Rayleigh quotient
  int max_iters = 500;
  double shift_factor = 0.9;
  double initial_shift = 0.0;
};

struct EigResult {
  double lambda0 = 0.0;
  Vec eigvec;               // unit 2-norm, positive sum
  double residual = 0.0;    // |P v - l M v| / ((|P| + |l| |M|) |v|), infinity norms for matrices
  double raw_residual = 0.0;  // |P v - l M v| / |M v|
  int iterations = 0;
  bool positive = false;
  std::vector<double> history;  // backward error per iteration
};

/// Smallest generalized eigenvalue of P v = l M_W v by shift-invert power
/// iteration from the all-ones vector. NumericalError after max_iters.
EigResult principal_eigenvalue(const DiscreteSystem& system, const EigOptions& options = {});

/// phi^T P phi - phi^T M_W phi.
double hardy_form_value(const DiscreteSystem& system, const Vec& phi);
double hardy_form_value(const DiscreteSystem& system, const std::function<double(const Vec&)>& phi);

struct MaxPrincipleReport {
  bool pass = false;
  bool singular = false;
  double lambda = 0.0;
  std::vector<double> min_entries;  // min(v) / max|v| per trial
  std::string diagnostic;
};

/// Solves (P - lambda M_W) v = volume * f for `trials` random f >= 0.
/// PASS iff every solution has min(v) >= -1e-10 max|v|.
MaxPrincipleReport max_principle_probe(const DiscreteSystem& system, double lambda = 0.0,
                                       int trials = 20, std::uint64_t seed = 1);

/// Solves P u = rhs - coupling * g(dirichlet points).
Vec solve_with_dirichlet(const DiscreteSystem& system, const Vec& rhs,
                         const std::function<double(const Vec&)>& dirichlet_values = {});

/// P g = e_y / volume_y, optionally with nonzero Dirichlet data.
Vec discrete_green(const DiscreteSystem& system, std::size_t source,
                   const std::function<double(const Vec&)>& dirichlet_values = {});

}  // namespace hardy
