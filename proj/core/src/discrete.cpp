#include "hardy/discrete.hpp"

#include "hardy/parallel.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <map>
#include <random>

namespace hardy {

std::string to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Interior:
      return "interior";
    case NodeKind::RobinBoundary:
      return "robin";
    case NodeKind::DirichletBoundary:
      return "dirichlet";
    case NodeKind::Ghost:
      return "ghost";
  }
  return "?";
}

// ---- grid ----------------------------------------------------------------------

GridSpec GridSpec::for_member(const TruncatedDomain& member, double h) {
  if (member.robin_is_inner_sphere()) {
    throw ConfigError("Cartesian grids cannot resolve a spherical Robin part; use a radial grid");
  }
  if (!(h > 0.0)) throw ConfigError("grid spacing must be positive");
  GridSpec spec;
  spec.lo = member.bbox_lo();
  spec.hi = member.bbox_hi();
  for (int i = 0; i < member.dim(); ++i) {
    if (!std::isfinite(spec.lo(i)) || !std::isfinite(spec.hi(i))) {
      throw ConfigError("grid needs a bounded exhaustion member");
    }
    const double cells = std::ceil((spec.hi(i) - spec.lo(i)) / h - 1e-9);
    spec.hi(i) = spec.lo(i) + cells * h;
  }
  spec.h = h;
  spec.robin_bottom = member.robin_is_plane();
  if (spec.robin_bottom && std::abs(member.robin_plane() - spec.lo(member.dim() - 1)) > 1e-12) {
    throw ConfigError("grid/boundary misalignment: Robin plane is not the lower box face");
  }
  spec.inside = [member](const Vec& x) { return member.contains(x); };
  return spec;
}

Grid::Grid(GridSpec spec) : spec_(std::move(spec)) {
  const int n = static_cast<int>(spec_.lo.size());
  if (n < 1 || spec_.hi.size() != n || !(spec_.h > 0.0)) throw ConfigError("malformed grid spec");
  for (int i = 0; i < n; ++i) {
    const double cells = (spec_.hi(i) - spec_.lo(i)) / spec_.h;
    const double rounded = std::round(cells);
    if (rounded < 2 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, rounded)) {
      throw ConfigError("grid/boundary misalignment: box side " + std::to_string(i) +
                        " is not a multiple of h (or has fewer than two cells)");
    }
    counts_.push_back(static_cast<int>(rounded) + 1);
  }
  std::size_t total = 1;
  for (int c : counts_) total *= static_cast<std::size_t>(c);
  kinds_.assign(total, NodeKind::Interior);
  unknown_of_.assign(total, -1);
  for (std::size_t node = 0; node < total; ++node) {
    const auto idx = multi_index(node);
    NodeKind kind = NodeKind::Interior;
    for (int i = 0; i < n; ++i) {
      const bool low = idx[i] == 0;
      const bool high = idx[i] == counts_[i] - 1;
      if (high || (low && i < n - 1)) kind = NodeKind::DirichletBoundary;
    }
    if (kind == NodeKind::Interior && idx[n - 1] == 0) {
      kind = spec_.robin_bottom ? NodeKind::RobinBoundary : NodeKind::DirichletBoundary;
    }
    if (kind != NodeKind::DirichletBoundary && spec_.inside) {
      Vec x = point(node);
      if (kind == NodeKind::RobinBoundary) x(n - 1) += 1e-7 * spec_.h;
      if (!spec_.inside(x)) kind = NodeKind::DirichletBoundary;
    }
    kinds_[node] = kind;
    if (kind != NodeKind::DirichletBoundary) {
      unknown_of_[node] = static_cast<long>(unknowns_.size());
      unknowns_.push_back(node);
    }
  }
}

std::vector<int> Grid::multi_index(std::size_t node) const {
  std::vector<int> idx(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    idx[i] = static_cast<int>(node % static_cast<std::size_t>(counts_[i]));
    node /= static_cast<std::size_t>(counts_[i]);
  }
  return idx;
}

std::size_t Grid::node_at(const std::vector<int>& idx) const {
  std::size_t node = 0;
  for (std::size_t i = counts_.size(); i-- > 0;) {
    node = node * static_cast<std::size_t>(counts_[i]) + static_cast<std::size_t>(idx[i]);
  }
  return node;
}

Vec Grid::point(std::size_t node) const {
  const auto idx = multi_index(node);
  Vec x(dim());
  for (int i = 0; i < dim(); ++i) x(i) = spec_.lo(i) + idx[i] * spec_.h;
  return x;
}

std::size_t Grid::unknown_at(const Vec& x) const {
  std::vector<int> idx(counts_.size());
  for (int i = 0; i < dim(); ++i) {
    const double s = (x(i) - spec_.lo(i)) / spec_.h;
    idx[i] = static_cast<int>(std::lround(s));
    if (std::abs(s - idx[i]) > 1e-9 || idx[i] < 0 || idx[i] >= counts_[i]) {
      throw ConfigError("point is not a grid node");
    }
  }
  const long u = unknown_of_[node_at(idx)];
  if (u < 0) throw ConfigError("point is a Dirichlet node");
  return static_cast<std::size_t>(u);
}

// ---- system --------------------------------------------------------------------

SpMat DiscreteSystem::mass() const {
  SpMat M(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  std::vector<Eigen::Triplet<double>> t;
  for (Eigen::Index i = 0; i < volume.size(); ++i) {
    if (weight(i) != 0.0) t.emplace_back(i, i, weight(i) * volume(i));
  }
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

void DiscreteSystem::set_weight(const std::function<double(const Vec&)>& W) {
  weight.resize(static_cast<Eigen::Index>(size()));
  parallel_for(size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) weight(static_cast<Eigen::Index>(i)) = W(points[i]);
  });
  for (Eigen::Index i = 0; i < weight.size(); ++i) {
    if (!std::isfinite(weight(i)) || weight(i) < 0.0) {
      throw DomainError("weight is negative or non-finite at a grid node");
    }
  }
}

namespace {

struct RowBuilder {
  std::map<long, double> unknown;   // column -> coefficient
  std::map<std::size_t, double> dirichlet;  // node -> coefficient
};

}  // namespace

DiscreteSystem discretize(const OperatorSpec& op, const Grid& grid) {
  const int n = grid.dim();
  if (op.dim() != n) throw ConfigError("operator and grid dimensions differ");
  const double h = grid.h();
  const std::size_t N = grid.unknown_count();
  std::vector<RowBuilder> rows(N);
  DiscreteSystem sys;
  sys.volume.resize(static_cast<Eigen::Index>(N));
  sys.robin_surface = Vec::Zero(static_cast<Eigen::Index>(N));
  sys.weight = Vec::Zero(static_cast<Eigen::Index>(N));
  sys.points.resize(N);
  sys.symmetric = op.symmetric();

  parallel_for(N, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      const std::size_t node = grid.unknown_node(u);
      const std::vector<int> idx = grid.multi_index(node);
      const Vec x = grid.point(node);
      const bool robin = grid.kind(node) == NodeKind::RobinBoundary;
      RowBuilder& row = rows[u];
      const Mat A0 = op.A(x);
      const Vec bt0 = op.b_tilde(x);
      double kappa = 0.0;
      if (robin) {
        const double beta = op.beta(x);
        if (!(beta > 0.0)) throw ConfigError("Robin rows need beta > 0");
        kappa = -(2.0 * h / A0(n - 1, n - 1)) * (op.gamma(x) / beta - bt0(n - 1));
      }
      std::function<void(std::vector<int>, double)> add = [&](std::vector<int> d, double coef) {
        if (coef == 0.0) return;
        std::vector<int> j = idx;
        for (int i = 0; i < n; ++i) j[i] += d[i];
        if (j[n - 1] < 0) {
          // ghost below the Robin plane: u_g = u_{+n} + kappa u_0
          std::vector<int> up(n, 0);
          up[n - 1] = 1;
          add(up, coef);
          add(std::vector<int>(n, 0), coef * kappa);
          return;
        }
        for (int i = 0; i < n; ++i) {
          if (j[i] < 0 || j[i] >= grid.counts()[i]) throw NumericalError("stencil leaves the grid");
        }
        const std::size_t target = grid.node_at(j);
        const long col = grid.unknown_of(target);
        if (col >= 0) {
          row.unknown[col] += coef;
        } else {
          row.dirichlet[target] += coef;
        }
      };
      auto offset = [n](std::initializer_list<std::pair<int, int>> parts) {
        std::vector<int> d(n, 0);
        for (auto [axis, step] : parts) d[axis] += step;
        return d;
      };
      const std::vector<int> zero(n, 0);
      const double h2 = h * h;
      for (int i = 0; i < n; ++i) {
        const Vec e = unit_vector(n, i);
        const Vec xp = x + 0.5 * h * e;
        const Vec xm = x - 0.5 * h * e;
        const double ap = op.A(xp)(i, i);
        const double btp = op.b_tilde(xp)(i);
        const bool ghost_side = robin && i == n - 1;
        const double am = ghost_side ? A0(i, i) : op.A(xm)(i, i);
        const double btm = ghost_side ? bt0(i) : op.b_tilde(xm)(i);
        add(offset({{i, 1}}), -ap / h2 - btp / (2 * h));
        add(zero, (ap + am) / h2 - btp / (2 * h) + btm / (2 * h));
        add(offset({{i, -1}}), -am / h2 + btm / (2 * h));
        const double bi = op.b(x)(i);
        add(offset({{i, 1}}), bi / (2 * h));
        add(offset({{i, -1}}), -bi / (2 * h));
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const double aijp = op.A(x + h * e)(i, j);
          const double aijm = op.A(x - h * e)(i, j);
          if (aijp == 0.0 && aijm == 0.0 && A0(i, j) == 0.0) continue;
          if (robin && (i == n - 1 || j == n - 1)) {
            throw ConfigError("Robin ghost elimination needs a_nj = 0 for j != n on the plane");
          }
          const double s = 1.0 / (4 * h2);
          add(offset({{i, 1}, {j, 1}}), -aijp * s);
          add(offset({{i, 1}, {j, -1}}), aijp * s);
          add(offset({{i, -1}, {j, 1}}), aijm * s);
          add(offset({{i, -1}, {j, -1}}), -aijm * s);
        }
      }
      add(zero, op.c(x));
      const double vol = robin ? 0.5 * std::pow(h, n) : std::pow(h, n);
      sys.volume(static_cast<Eigen::Index>(u)) = vol;
      if (robin) sys.robin_surface(static_cast<Eigen::Index>(u)) = std::pow(h, n - 1);
      sys.points[u] = x;
    }
  });

  std::map<std::size_t, long> dir_col;
  std::vector<Eigen::Triplet<double>> tp, td;
  for (std::size_t u = 0; u < N; ++u) {
    const double vol = sys.volume(static_cast<Eigen::Index>(u));
    for (auto [col, coef] : rows[u].unknown) {
      tp.emplace_back(static_cast<Eigen::Index>(u), col, coef * vol);
    }
    for (auto [node, coef] : rows[u].dirichlet) {
      auto it = dir_col.find(node);
      if (it == dir_col.end()) {
        it = dir_col.emplace(node, static_cast<long>(sys.dirichlet_points.size())).first;
        sys.dirichlet_points.push_back(grid.point(node));
      }
      td.emplace_back(static_cast<Eigen::Index>(u), it->second, coef * vol);
    }
  }
  const auto Ni = static_cast<Eigen::Index>(N);
  sys.P.resize(Ni, Ni);
  sys.P.setFromTriplets(tp.begin(), tp.end());
  sys.dirichlet_coupling.resize(Ni, static_cast<Eigen::Index>(sys.dirichlet_points.size()));
  sys.dirichlet_coupling.setFromTriplets(td.begin(), td.end());
  return sys;
}

std::vector<double> RadialGridSpec::radii() const {
  if (!(r_in > 0.0) || !(r_out > r_in) || cells < 2) throw ConfigError("malformed radial grid");
  std::vector<double> r(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) {
    const double s = static_cast<double>(i) / cells;
    r[static_cast<std::size_t>(i)] = spacing == RadialSpacing::Logarithmic
                                         ? r_in * std::pow(r_out / r_in, s)
                                         : r_in + s * (r_out - r_in);
  }
  r.back() = r_out;
  return r;
}

DiscreteSystem discretize_radial(const RadialGridSpec& spec) {
  if (spec.n < 1) throw ConfigError("radial grid needs n >= 1");
  if (spec.robin_inner && !(spec.beta > 0.0)) throw ConfigError("Robin end needs beta > 0");
  const std::vector<double> r = spec.radii();
  const int n = spec.n;
  const double omega = unit_sphere_area(n);
  const int first = spec.robin_inner ? 0 : 1;
  const int last = spec.cells - 1;
  const int N = last - first + 1;
  DiscreteSystem sys;
  sys.volume.resize(N);
  sys.weight = Vec::Zero(N);
  sys.robin_surface = Vec::Zero(N);
  sys.points.resize(static_cast<std::size_t>(N));
  sys.symmetric = true;
  std::vector<Eigen::Triplet<double>> tp, td;
  auto face = [&](int i) { return 0.5 * (r[static_cast<std::size_t>(i)] + r[static_cast<std::size_t>(i) + 1]); };
  auto conductance = [&](int i) {
    const double rf = face(i);
    return omega * std::pow(rf, n - 1) / (r[static_cast<std::size_t>(i) + 1] - r[static_cast<std::size_t>(i)]);
  };
  if (!spec.robin_inner) sys.dirichlet_points.push_back(radial_point(n, r.front()));
  sys.dirichlet_points.push_back(radial_point(n, r.back()));
  const long outer_col = static_cast<long>(sys.dirichlet_points.size()) - 1;
  for (int i = first; i <= last; ++i) {
    const int row = i - first;
    const double lo = i == 0 ? r[0] : face(i - 1);
    const double hi = face(i);
    sys.volume(row) = omega / n * (std::pow(hi, n) - std::pow(lo, n));
    sys.points[static_cast<std::size_t>(row)] = radial_point(n, r[static_cast<std::size_t>(i)]);
    const double cp = conductance(i);
    double diag = cp;
    if (i + 1 <= last) {
      tp.emplace_back(row, row + 1, -cp);
    } else {
      td.emplace_back(row, outer_col, -cp);
    }
    if (i > 0) {
      const double cm = conductance(i - 1);
      diag += cm;
      if (i - 1 >= first) {
        tp.emplace_back(row, row - 1, -cm);
      } else {
        td.emplace_back(row, 0, -cm);
      }
    } else {
      const double surface = omega * std::pow(r[0], n - 1);
      sys.robin_surface(row) = surface;
      diag += surface * spec.gamma / spec.beta;
    }
    tp.emplace_back(row, row, diag);
  }
  sys.P.resize(N, N);
  sys.P.setFromTriplets(tp.begin(), tp.end());
  sys.dirichlet_coupling.resize(N, static_cast<Eigen::Index>(sys.dirichlet_points.size()));
  sys.dirichlet_coupling.setFromTriplets(td.begin(), td.end());
  return sys;
}

// ---- solvers -------------------------------------------------------------------

struct LinearSolver::Impl {
  std::unique_ptr<Eigen::SimplicialLDLT<SpMat>> ldlt;
  std::unique_ptr<Eigen::SparseLU<SpMat>> lu;
  std::unique_ptr<Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper,
                                           Eigen::IncompleteCholesky<double>>>
      cg;
  std::unique_ptr<Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<double>>> bicg;
};

LinearSolver::LinearSolver(const SpMat& A, bool symmetric, std::size_t direct_limit,
                           double iterative_tol)
    : impl_(std::make_unique<Impl>()) {
  const auto N = static_cast<std::size_t>(A.rows());
  if (N <= direct_limit) {
    if (symmetric) {
      impl_->ldlt = std::make_unique<Eigen::SimplicialLDLT<SpMat>>(A);
      if (impl_->ldlt->info() != Eigen::Success) throw NumericalError("LDLT factorization failed");
      const Vec d = impl_->ldlt->vectorD();
      const double scale = d.cwiseAbs().maxCoeff();
      if (!(d.cwiseAbs().minCoeff() > 1e-13 * scale)) {
        throw NumericalError("singular system (zero pivot in LDLT)");
      }
    } else {
      SpMat Ac = A;
      Ac.makeCompressed();
      impl_->lu = std::make_unique<Eigen::SparseLU<SpMat>>();
      impl_->lu->analyzePattern(Ac);
      impl_->lu->factorize(Ac);
      if (impl_->lu->info() != Eigen::Success) {
        throw NumericalError("SparseLU factorization failed: " + impl_->lu->lastErrorMessage());
      }
    }
    return;
  }
  if (symmetric) {
    impl_->cg = std::make_unique<std::remove_reference_t<decltype(*impl_->cg)>>();
    impl_->cg->setTolerance(iterative_tol);
    impl_->cg->setMaxIterations(20000);
    impl_->cg->compute(A);
    if (impl_->cg->info() != Eigen::Success) throw NumericalError("IC preconditioner failed");
  } else {
    impl_->bicg = std::make_unique<std::remove_reference_t<decltype(*impl_->bicg)>>();
    impl_->bicg->setTolerance(iterative_tol);
    impl_->bicg->setMaxIterations(20000);
    impl_->bicg->compute(A);
    if (impl_->bicg->info() != Eigen::Success) throw NumericalError("ILUT preconditioner failed");
  }
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

bool LinearSolver::direct() const { return impl_->ldlt || impl_->lu; }

Vec LinearSolver::solve(const Vec& rhs) const {
  Vec x;
  if (impl_->ldlt) {
    x = impl_->ldlt->solve(rhs);
  } else if (impl_->lu) {
    x = impl_->lu->solve(rhs);
  } else if (impl_->cg) {
    x = impl_->cg->solve(rhs);
    if (impl_->cg->info() != Eigen::Success) {
      throw NumericalError("CG did not converge (error " + std::to_string(impl_->cg->error()) + ")");
    }
  } else {
    x = impl_->bicg->solve(rhs);
    if (impl_->bicg->info() != Eigen::Success) {
      throw NumericalError("BiCGSTAB did not converge (error " +
                           std::to_string(impl_->bicg->error()) + ")");
    }
  }
  if (!x.allFinite()) throw NumericalError("linear solve produced non-finite values");
  return x;
}

// ---- eigenvalue ----------------------------------------------------------------

namespace {

double inf_norm(const SpMat& A) {
  Vec rows = Vec::Zero(A.rows());
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SpMat::InnerIterator it(A, k); it; ++it) rows(it.row()) += std::abs(it.value());
  }
  return rows.size() ? rows.maxCoeff() : 0.0;
}

}  // namespace

EigResult principal_eigenvalue(const DiscreteSystem& system, const EigOptions& options) {
  const SpMat M = system.mass();
  if (M.nonZeros() == 0) throw ConfigError("principal_eigenvalue: weight vanishes identically");
  const double normP = inf_norm(system.P);
  const double normM = inf_norm(M);
  EigResult res;
  Vec v = Vec::Ones(static_cast<Eigen::Index>(system.size()));
  v.normalize();
  double sigma = options.initial_shift;
  auto factor = [&](double s) {
    return std::make_unique<LinearSolver>(SpMat(system.P - s * M), system.symmetric);
  };
  auto solver = factor(sigma);
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double previous = lambda;
  int refactors = 0;
  int polish = 0;
  for (int it = 1; it <= options.max_iters; ++it) {
    Vec y = solver->solve(M * v);
    if (y.sum() < 0.0) y = -y;
    const double norm = y.norm();
    if (!(norm > 0.0)) throw NumericalError("shift-invert iteration collapsed to zero");
    v = y / norm;
    const Vec Mv = M * v;
    lambda = v.dot(system.P * v) / v.dot(Mv);
    const Vec r = system.P * v - lambda * Mv;
    res.residual = r.norm() / ((normP + std::abs(lambda) * normM) * v.norm());
    res.raw_residual = r.norm() / Mv.norm();
    res.history.push_back(res.residual);
    res.iterations = it;
    // a small backward error alone can leave lambda short of convergence on
    // badly scaled systems, so also wait for the Rayleigh quotient to stall
    const bool steady = std::isfinite(previous) && std::abs(lambda - previous) <= 1e-12 * std::abs(lambda);
    if (res.residual <= options.tol) {
      if (steady || ++polish > 50) break;
    }
    const bool settled = std::isfinite(previous) && std::abs(lambda - previous) <= 1e-3 * std::abs(lambda);
    const double target = options.shift_factor * lambda;
    if (settled && refactors < 6 && target - sigma > 0.05 * std::abs(lambda)) {
      sigma = target;
      solver = factor(sigma);
      ++refactors;
    }
    previous = lambda;
    if (it == options.max_iters) {
      std::string hist;
      for (std::size_t k = res.history.size() > 5 ? res.history.size() - 5 : 0; k < res.history.size(); ++k) {
        hist += " " + std::to_string(res.history[k]);
      }
      throw NumericalError("principal_eigenvalue: no convergence in " +
                           std::to_string(options.max_iters) + " iterations; last residuals" + hist);
    }
  }
  res.lambda0 = lambda;
  res.eigvec = v;
  res.positive = v.minCoeff() > 0.0;
  return res;
}

double hardy_form_value(const DiscreteSystem& system, const Vec& phi) {
  return phi.dot(system.P * phi) - phi.dot(system.mass() * phi);
}

double hardy_form_value(const DiscreteSystem& system, const std::function<double(const Vec&)>& phi) {
  Vec values(static_cast<Eigen::Index>(system.size()));
  for (std::size_t i = 0; i < system.size(); ++i) values(static_cast<Eigen::Index>(i)) = phi(system.points[i]);
  return hardy_form_value(system, values);
}

MaxPrincipleReport max_principle_probe(const DiscreteSystem& system, double lambda, int trials,
                                       std::uint64_t seed) {
  MaxPrincipleReport rep;
  rep.lambda = lambda;
  std::unique_ptr<LinearSolver> solver;
  try {
    const SpMat K = system.P - lambda * system.mass();
    solver = std::make_unique<LinearSolver>(K, system.symmetric && lambda == 0.0);
  } catch (const NumericalError& e) {
    rep.singular = true;
    rep.diagnostic = e.what();
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  rep.pass = true;
  for (int k = 0; k < trials; ++k) {
    Vec f(static_cast<Eigen::Index>(system.size()));
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = unit(rng);
    Vec v;
    try {
      v = solver->solve(system.volume.cwiseProduct(f));
    } catch (const NumericalError& e) {
      rep.pass = false;
      rep.singular = true;
      rep.diagnostic = e.what();
      return rep;
    }
    const double scale = v.cwiseAbs().maxCoeff();
    const double m = scale > 0.0 ? v.minCoeff() / scale : 0.0;
    rep.min_entries.push_back(m);
    if (m < -1e-10) rep.pass = false;
  }
  return rep;
}

Vec solve_with_dirichlet(const DiscreteSystem& system, const Vec& rhs,
                         const std::function<double(const Vec&)>& dirichlet_values) {
  Vec b = rhs;
  if (dirichlet_values && !system.dirichlet_points.empty()) {
    Vec g(static_cast<Eigen::Index>(system.dirichlet_points.size()));
    for (std::size_t j = 0; j < system.dirichlet_points.size(); ++j) {
      g(static_cast<Eigen::Index>(j)) = dirichlet_values(system.dirichlet_points[j]);
    }
    b -= system.dirichlet_coupling * g;
  }
  return LinearSolver(system.P, system.symmetric).solve(b);
}

Vec discrete_green(const DiscreteSystem& system, std::size_t source,
                   const std::function<double(const Vec&)>& dirichlet_values) {
  if (source >= system.size()) throw ConfigError("discrete_green: source index out of range");
  Vec rhs = Vec::Zero(static_cast<Eigen::Index>(system.size()));
  rhs(static_cast<Eigen::Index>(source)) = 1.0;  // delta/vol tested against the volume-scaled row
  return solve_with_dirichlet(system, rhs, dirichlet_values);
}

}  // namespace hardy
