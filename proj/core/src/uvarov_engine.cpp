#include "uvarov/uvarov_engine.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "uvarov/errors.hpp"

namespace uvarov {

MassSpec MassSpec::plain(std::vector<Point> points, Eigen::MatrixXd lambda) {
  MassSpec m;
  m.points = std::move(points);
  m.lambda = std::move(lambda);
  return m;
}

MassSpec MassSpec::diagonal(std::vector<Point> points, const std::vector<double>& weights) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(weights.size()), static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = weights[i];
  return plain(std::move(points), std::move(L));
}

bool MassSpec::has_derivatives() const {
  for (const auto& a : deriv_orders)
    if (!a.is_zero()) return true;
  return false;
}

MultiIndex MassSpec::order(std::size_t i, int d) const {
  return deriv_orders.empty() ? MultiIndex::zero(d) : deriv_orders[i];
}

void MassSpec::validate(int d) const {
  const Eigen::Index N = size();
  if (N == 0) throw InvalidInput("mass specification has no points");
  if (lambda.rows() != N || lambda.cols() != N)
    throw InvalidInput("Lambda must be " + std::to_string(N) + "x" + std::to_string(N));
  if (!deriv_orders.empty() && static_cast<Eigen::Index>(deriv_orders.size()) != N)
    throw InvalidInput("deriv_orders must have one entry per mass point");
  for (const auto& p : points) {
    if (p.size() != d) throw InvalidInput("mass point dimension mismatch");
    if (!p.allFinite()) throw InvalidInput("mass point has non-finite coordinates");
  }
  for (const auto& a : deriv_orders)
    if (a.dimension() != d) throw InvalidInput("derivative order dimension mismatch");
  if (!lambda.allFinite()) throw InvalidInput("Lambda has non-finite entries");

  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  if ((lambda - lambda.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidInput("Lambda must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lambda, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -1e-12 * scale) {
    std::ostringstream os;
    os << "Lambda is indefinite (smallest eigenvalue " << min_eig << ")";
    throw InvalidInput(os.str());
  }

  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const bool same_order = order(static_cast<std::size_t>(i), d) == order(static_cast<std::size_t>(j), d);
      if (same_order && (points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)]).norm() <= 1e-14) {
        throw InvalidInput("mass conditions " + std::to_string(i) + " and " + std::to_string(j) +
                           " repeat the same point and derivative order");
      }
    }
  }
}

UvarovEngine::UvarovEngine(const BasisProvider& basis, MassSpec mass) : basis_(basis), mass_(std::move(mass)) {
  mass_.validate(basis_.dimension());
  states_.resize(static_cast<std::size_t>(basis_.max_degree()) + 1);
}

void UvarovEngine::extend_to(int n) {
  if (n > basis_.max_degree())
    throw InvalidInput("degree " + std::to_string(n) + " exceeds the basis maximum " + std::to_string(basis_.max_degree()));
  std::lock_guard lock(extend_mutex_);
  while (built_.load(std::memory_order_relaxed) < n) build_next();
}

const DegreeState& UvarovEngine::state(int n) const {
  if (n < 0 || n > built_degree())
    throw InvalidInput("degree state " + std::to_string(n) + " not built (built through " +
                       std::to_string(built_degree()) + ")");
  return *states_[static_cast<std::size_t>(n)];
}

const Eigen::MatrixXd& UvarovEngine::G_prev(int n) const { return n == 0 ? mass_.lambda : state(n - 1).G; }

void UvarovEngine::build_next() {
  const int n = built_.load(std::memory_order_relaxed) + 1;
  const int d = basis_.dimension();
  const Eigen::Index N = mass_.size();
  auto st = std::make_unique<DegreeState>();
  st->n = n;
  st->P_xi.resize(basis_.block_size(n), N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto& xi = mass_.points[static_cast<std::size_t>(i)];
    const MultiIndex a = mass_.order(static_cast<std::size_t>(i), d);
    st->P_xi.col(i) = a.is_zero() ? basis_.eval(n, xi) : basis_.partial(n, a, xi);
  }
  st->K = st->P_xi.transpose() * st->P_xi;
  if (n > 0) st->K += states_[static_cast<std::size_t>(n) - 1]->K;

  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(N, N) + mass_.lambda * st->K;
  st->solve.compute(M);
  const double rcond = st->solve.rcond();
  if (!(rcond > 1e-14)) {
    // Name the pair of mass conditions whose kernel columns are most nearly parallel.
    Eigen::Index bi = 0, bj = N > 1 ? 1 : 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = i + 1; j < N; ++j) {
        const double c = std::abs(st->K(i, j)) / std::sqrt(std::max(st->K(i, i) * st->K(j, j), 1e-300));
        if (c > best) best = c, bi = i, bj = j;
      }
    std::ostringstream os;
    os << "I + Lambda K_" << n << " is numerically singular (rcond " << rcond << "); mass conditions " << bi
       << " and " << bj << " are the most nearly dependent";
    throw NumericalFailure(os.str());
  }
  st->G = st->solve.solve(mass_.lambda);

  const Eigen::Index r = st->P_xi.rows();
  const Eigen::MatrixXd& Gp = n == 0 ? mass_.lambda : states_[static_cast<std::size_t>(n) - 1]->G;
  st->H = Eigen::MatrixXd::Identity(r, r) + st->P_xi * Gp * st->P_xi.transpose();
  st->H_inv = Eigen::MatrixXd::Identity(r, r) - st->P_xi * st->G * st->P_xi.transpose();

  states_[static_cast<std::size_t>(n)] = std::move(st);
  built_.store(n, std::memory_order_release);
}

Eigen::VectorXd UvarovEngine::accumulate_kernel_vector(const std::vector<Eigen::VectorXd>& blocks, int n) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mass_.size());
  for (int k = 0; k <= n; ++k) v.noalias() += state(k).P_xi.transpose() * blocks[static_cast<std::size_t>(k)];
  return v;
}

Eigen::VectorXd UvarovEngine::kernel_vector(int n, const Point& x) const {
  if (n < 0) return Eigen::VectorXd::Zero(mass_.size());
  state(n);
  return accumulate_kernel_vector(basis_.eval_upto(n, x), n);
}

Eigen::VectorXd UvarovEngine::q_eval(int n, const Point& x) const {
  state(n);
  const auto blocks = basis_.eval_upto(n, x);
  if (n == 0) return blocks[0];
  const Eigen::VectorXd kv = accumulate_kernel_vector(blocks, n - 1);
  return blocks[static_cast<std::size_t>(n)] - state(n).P_xi * (G_prev(n) * kv);
}

std::vector<Eigen::MatrixXd> UvarovEngine::q_coefficients(int n) const {
  const DegreeState& st = state(n);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  const Eigen::MatrixXd left = st.P_xi * G_prev(n);
  for (int k = 0; k < n; ++k) out.push_back(-left * state(k).P_xi.transpose());
  out.push_back(Eigen::MatrixXd::Identity(st.P_xi.rows(), st.P_xi.rows()));
  return out;
}

HBlocks UvarovEngine::h_blocks(int n) const {
  const DegreeState& st = state(n);
  return {st.H, st.H_inv};
}

double UvarovEngine::projection_kernel(int n, const Point& x, const Point& y) const {
  state(n);
  const auto bx = basis_.eval_upto(n, x);
  const auto by = basis_.eval_upto(n, y);
  const auto nn = static_cast<std::size_t>(n);
  double value = bx[nn].dot(by[nn]);
  const Eigen::VectorXd kx = accumulate_kernel_vector(bx, n);
  const Eigen::VectorXd ky = accumulate_kernel_vector(by, n);
  value -= kx.dot(state(n).G * ky);
  if (n > 0) {
    const Eigen::VectorXd kx1 = kx - state(n).P_xi.transpose() * bx[nn];
    const Eigen::VectorXd ky1 = ky - state(n).P_xi.transpose() * by[nn];
    value += kx1.dot(state(n - 1).G * ky1);
  }
  return value;
}

double UvarovEngine::sum_kernel(int n, const Point& x, const Point& y) const {
  state(n);
  const auto bx = basis_.eval_upto(n, x);
  const auto by = basis_.eval_upto(n, y);
  double base = 0.0;
  for (int k = 0; k <= n; ++k) base += bx[static_cast<std::size_t>(k)].dot(by[static_cast<std::size_t>(k)]);
  const Eigen::VectorXd kx = accumulate_kernel_vector(bx, n);
  const Eigen::VectorXd ky = accumulate_kernel_vector(by, n);
  return base - kx.dot(state(n).G * ky);
}

double UvarovEngine::christoffel(int n, const Point& x) const { return 1.0 / sum_kernel(n, x, x); }

IdentityResiduals identity_residuals(const UvarovEngine& engine, int n, const std::vector<Point>& points) {
  IdentityResiduals r;
  const DegreeState& st = engine.state(n);
  const Eigen::Index N = engine.mass().size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
  const Eigen::MatrixXd& L = engine.mass().lambda;

  const Eigen::MatrixXd K_prev = n > 0 ? engine.state(n - 1).K : Eigen::MatrixXd::Zero(N, N);
  const double k_scale = std::max(1.0, st.K.cwiseAbs().maxCoeff());
  r.kernel_increment = (st.K - K_prev - st.P_xi.transpose() * st.P_xi).cwiseAbs().maxCoeff() / k_scale;

  const Eigen::MatrixXd G_prev = n > 0 ? engine.state(n - 1).G : L;
  const Eigen::MatrixXd inv_n = st.solve.inverse();
  const Eigen::MatrixXd inv_prev = n > 0 ? engine.state(n - 1).solve.inverse() : I;
  r.resolvent = (G_prev * st.P_xi.transpose() * st.P_xi * inv_n - inv_prev + inv_n).cwiseAbs().maxCoeff();

  const Eigen::Index rn = st.P_xi.rows();
  r.h_product = (st.H * st.H_inv - Eigen::MatrixXd::Identity(rn, rn)).cwiseAbs().maxCoeff();
  r.g_symmetry = (st.G - st.G.transpose()).cwiseAbs().maxCoeff();

  for (const auto& x : points) {
    const Eigen::VectorXd kk = engine.kernel_vector(n, x);
    const Eigen::VectorXd step = kk - engine.kernel_vector(n - 1, x) - st.P_xi.transpose() * engine.basis().eval(n, x);
    const double scale = std::max(1.0, kk.cwiseAbs().maxCoeff());
    r.kernel_vector_step = std::max(r.kernel_vector_step, step.cwiseAbs().maxCoeff() / scale);
    const Eigen::VectorXd qx = engine.q_eval(n, x);
    for (const auto& y : points) {
      double total = 0.0;
      for (int j = 0; j <= n; ++j) total += engine.projection_kernel(j, x, y);
      const double k = engine.sum_kernel(n, x, y);
      r.projection_sum = std::max(r.projection_sum, std::abs(total - k) / std::max(1.0, std::abs(k)));
      const double p = engine.projection_kernel(n, x, y);
      const double via_q = qx.dot(st.H_inv * engine.q_eval(n, y));
      r.projection_vs_q = std::max(r.projection_vs_q, std::abs(p - via_q) / std::max(1.0, std::abs(p)));
      r.projection_symmetry = std::max(r.projection_symmetry, std::abs(p - engine.projection_kernel(n, y, x)));
    }
  }
  return r;
}

}  // namespace uvarov
