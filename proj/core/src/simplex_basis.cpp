#include "uvarov/simplex_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "uvarov/jacobi1d.hpp"

namespace uvarov {

SimplexJacobiParams::SimplexJacobiParams(int d, std::vector<double> kappa) : d_(d), kappa_(std::move(kappa)) {
  if (d < 1) throw InvalidInput("invalid dimension " + std::to_string(d));
  if (static_cast<int>(kappa_.size()) != d + 1)
    throw InvalidInput("kappa must have d+1 = " + std::to_string(d + 1) + " entries");
  for (double k : kappa_) {
    if (!std::isfinite(k) || k < 0.0) throw InvalidInput("kappa entries must be finite and >= 0");
  }
  lambda_ = kappa_sum() + 0.5 * (d + 1);
  double log_w = std::lgamma(lambda_);
  for (double k : kappa_) log_w -= std::lgamma(k + 0.5);
  w_norm_ = std::exp(log_w);
}

SimplexJacobiParams SimplexJacobiParams::symmetric(int d, double sigma) {
  if (d < 1) throw InvalidInput("invalid dimension " + std::to_string(d));
  return SimplexJacobiParams(d, std::vector<double>(static_cast<std::size_t>(d) + 1, sigma));
}

double SimplexJacobiParams::kappa_tail(int j) const {
  double s = 0.0;
  for (int i = std::max(j, 1); i <= d_ + 1; ++i) s += kappa_[static_cast<std::size_t>(i - 1)];
  return s;
}

bool SimplexJacobiParams::is_symmetric() const {
  return std::all_of(kappa_.begin(), kappa_.end(), [&](double k) { return k == kappa_.front(); });
}

double SimplexJacobiParams::sigma() const {
  if (!is_symmetric()) throw InvalidInput("operation requires kappa_1 = ... = kappa_{d+1}");
  return kappa_.front();
}

double moment(const SimplexJacobiParams& params, const MultiIndex& alpha) {
  return dirichlet_moment<double>(params, alpha);
}

void check_in_simplex(const Point& x, int d, double tol) {
  if (x.size() != d) throw InvalidInput("point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(d));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i)) || x(i) < -tol) throw InvalidInput("point lies outside the simplex");
    sum += x(i);
  }
  if (1.0 - sum < -tol) throw InvalidInput("point lies outside the simplex");
}

namespace {

int default_monomial_degree(int d) {
  if (d <= 2) return 8;
  if (d == 3) return 6;
  return 4;
}

}  // namespace

SimplexJacobiBasis::SimplexJacobiBasis(SimplexJacobiParams params, int max_degree, BasisOptions options)
    : params_(std::move(params)), max_degree_(max_degree) {
  if (max_degree < 0) throw InvalidInput("max_degree must be nonnegative");
  const int d = params_.d();
  monomial_degree_ = std::min(options.monomial_degree < 0 ? default_monomial_degree(d) : options.monomial_degree,
                              max_degree_);
  check_degree_ = std::min(options.normalization_check_degree, monomial_degree_);

  layouts_.reserve(static_cast<std::size_t>(max_degree_) + 1);
  elements_.resize(static_cast<std::size_t>(max_degree_) + 1);
  for (int n = 0; n <= max_degree_; ++n) {
    layouts_.push_back(enumerate_degree(d, n));
    auto& elems = elements_[static_cast<std::size_t>(n)];
    elems.reserve(layouts_.back().size());
    for (const auto& alpha : layouts_.back().indices) {
      Element e;
      e.tails.assign(static_cast<std::size_t>(d), 0);
      for (int j = d - 2; j >= 0; --j) e.tails[static_cast<std::size_t>(j)] = e.tails[static_cast<std::size_t>(j) + 1] + alpha[j + 1];
      e.inv_h = 1.0 / normalizer(alpha);
      elems.push_back(std::move(e));
    }
  }

  steps_.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const int max_tail = j == d - 1 ? 0 : max_degree_;
    auto& per_tail = steps_[static_cast<std::size_t>(j)];
    per_tail.resize(static_cast<std::size_t>(max_tail) + 1);
    for (int tail = 0; tail <= max_tail; ++tail) {
      const double a = jacobi_a(j, tail), b = jacobi_b(j);
      auto& seq = per_tail[static_cast<std::size_t>(tail)];
      for (int k = 0; k < max_degree_ - tail; ++k) {
        const auto s = orthonormal_jacobi_step<double>(a, b, k);
        seq.push_back({s.alpha, s.beta, s.gamma});
      }
    }
  }

  build_monomial_forms();
  verify_normalization();
}

// 0-based coordinate j; a_j = 2 |alpha^{j+1}| + |kappa^{j+1}| + (d - j - 1)/2 in 1-based terms.
double SimplexJacobiBasis::jacobi_a(int j, int tail) const {
  const int d = params_.d();
  const int j1 = j + 1;
  return 2.0 * tail + params_.kappa_tail(j1 + 1) + 0.5 * (d - j1 - 1);
}

double SimplexJacobiBasis::jacobi_b(int j) const { return params_.kappa()[static_cast<std::size_t>(j)] - 0.5; }

const SimplexJacobiBasis::Step& SimplexJacobiBasis::step(int j, int tail, int k) const {
  return steps_[static_cast<std::size_t>(j)][static_cast<std::size_t>(tail)][static_cast<std::size_t>(k)];
}

Eigen::Index SimplexJacobiBasis::block_size(int n) const { return static_cast<Eigen::Index>(layout(n).size()); }

const DegreeLayout& SimplexJacobiBasis::layout(int n) const {
  if (n < 0 || n > max_degree_)
    throw InvalidInput("degree " + std::to_string(n) + " outside [0, " + std::to_string(max_degree_) + "]");
  return layouts_[static_cast<std::size_t>(n)];
}

double SimplexJacobiBasis::normalizer(const MultiIndex& alpha) const {
  // h_alpha^2 = prod_j (u_{j+1})_{2 m_j} / (u_j)_{2 m_j},
  // u_j = |kappa^j| + (d - j + 2)/2, m_j = |alpha^{j+1}|.
  const int d = params_.d();
  if (alpha.dimension() != d) throw InvalidInput("multi-index dimension mismatch");
  double h_sq = 1.0;
  int tail = 0;
  for (int j1 = d; j1 >= 1; --j1) {
    const double u = params_.kappa_tail(j1) + 0.5 * (d - j1 + 2);
    const double u_next = params_.kappa_tail(j1 + 1) + 0.5 * (d - j1 + 1);
    for (int k = 0; k < 2 * tail; ++k) h_sq *= (u_next + k) / (u + k);
    tail += alpha[j1 - 1];
  }
  return std::sqrt(h_sq);
}

std::vector<std::vector<std::vector<double>>> SimplexJacobiBasis::factor_table(int n, const Point& x) const {
  const int d = params_.d();
  std::vector<std::vector<std::vector<double>>> table(static_cast<std::size_t>(d));
  double prefix = 0.0;
  for (int j = 0; j < d; ++j) {
    const double s = 1.0 - prefix;
    const double xj = x(j);
    const double u = 2.0 * xj - s;
    const double s2 = s * s;
    const int max_tail = j == d - 1 ? 0 : n;
    auto& per_tail = table[static_cast<std::size_t>(j)];
    per_tail.resize(static_cast<std::size_t>(max_tail) + 1);
    for (int tail = 0; tail <= max_tail; ++tail) {
      auto& g = per_tail[static_cast<std::size_t>(tail)];
      const int len = n - tail;
      g.resize(static_cast<std::size_t>(len) + 1);
      g[0] = 1.0;
      double prev = 0.0;
      for (int k = 0; k < len; ++k) {
        const Step& st = step(j, tail, k);
        const double cur = g[static_cast<std::size_t>(k)];
        g[static_cast<std::size_t>(k) + 1] = (st.alpha * u + st.beta * s) * cur - st.gamma * s2 * prev;
        prev = cur;
      }
    }
    prefix += xj;
  }
  return table;
}

Eigen::VectorXd SimplexJacobiBasis::assemble(int n, const std::vector<std::vector<std::vector<double>>>& factors) const {
  const auto& lay = layouts_[static_cast<std::size_t>(n)];
  const auto& elems = elements_[static_cast<std::size_t>(n)];
  const int d = params_.d();
  Eigen::VectorXd out(static_cast<Eigen::Index>(lay.size()));
  for (std::size_t i = 0; i < lay.size(); ++i) {
    double v = elems[i].inv_h;
    for (int j = 0; j < d; ++j) {
      v *= factors[static_cast<std::size_t>(j)][static_cast<std::size_t>(elems[i].tails[static_cast<std::size_t>(j)])]
                  [static_cast<std::size_t>(lay.indices[i][j])];
    }
    out(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

Eigen::VectorXd SimplexJacobiBasis::eval(int n, const Point& x) const {
  layout(n);
  check_in_simplex(x, params_.d());
  return assemble(n, factor_table(n, x));
}

std::vector<Eigen::VectorXd> SimplexJacobiBasis::eval_upto(int n, const Point& x) const {
  layout(n);
  check_in_simplex(x, params_.d());
  const auto factors = factor_table(n, x);
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out.push_back(assemble(k, factors));
  return out;
}

Eigen::VectorXd SimplexJacobiBasis::partial(int n, const MultiIndex& alpha, const Point& x) const {
  if (alpha.dimension() != params_.d()) throw InvalidInput("derivative order dimension mismatch");
  if (alpha.is_zero()) return eval(n, x);
  if (alpha.degree() > 2) throw InvalidInput("derivative orders above 2 are not supported");
  const auto& forms = monomial_form(n);
  check_in_simplex(x, params_.d());
  std::vector<HighPrecision> xh(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) xh[static_cast<std::size_t>(i)] = x(i);
  Eigen::VectorXd out(static_cast<Eigen::Index>(forms.size()));
  for (std::size_t i = 0; i < forms.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = static_cast<double>(forms[i].partial_derivative(alpha).evaluate(xh));
  return out;
}

const std::vector<SimplexJacobiBasis::HighPoly>& SimplexJacobiBasis::monomial_form(int n) const {
  layout(n);
  if (n > monomial_degree_)
    throw InvalidInput("degree " + std::to_string(n) + " exceeds the monomial-form ceiling " +
                       std::to_string(monomial_degree_));
  return monomial_forms_[static_cast<std::size_t>(n)];
}

void SimplexJacobiBasis::build_monomial_forms() {
  const int d = params_.d();
  const int top = monomial_degree_;
  using H = HighPrecision;

  // Homogenized 1-D factors as polynomials in x, indexed [j][tail][k].
  std::vector<std::vector<std::vector<HighPoly>>> factors(static_cast<std::size_t>(d));
  HighPoly s = HighPoly::constant(d, H(1));
  for (int j = 0; j < d; ++j) {
    const HighPoly xj = HighPoly::variable(d, j);
    const HighPoly u = xj * H(2) - s;
    const HighPoly s2 = s * s;
    const int max_tail = j == d - 1 ? 0 : top;
    H kappa_tail(0);
    for (int i = j + 1; i <= d; ++i) kappa_tail += H(params_.kappa()[static_cast<std::size_t>(i)]);
    const H b = H(params_.kappa()[static_cast<std::size_t>(j)]) - H(1) / 2;
    auto& per_tail = factors[static_cast<std::size_t>(j)];
    per_tail.resize(static_cast<std::size_t>(max_tail) + 1);
    for (int tail = 0; tail <= max_tail; ++tail) {
      const H a = H(2 * tail) + kappa_tail + H(d - j - 2) / 2;
      auto& g = per_tail[static_cast<std::size_t>(tail)];
      g.push_back(HighPoly::constant(d, H(1)));
      HighPoly prev(d);
      for (int k = 0; k < top - tail; ++k) {
        const auto st = orthonormal_jacobi_step<H>(a, b, k);
        HighPoly next = (u * st.alpha + s * st.beta) * g.back() - s2 * prev * st.gamma;
        prev = g.back();
        g.push_back(std::move(next));
      }
    }
    s -= xj;
  }

  // h_alpha^{-1} in extended precision, same product as normalizer().
  auto inv_h = [&](const MultiIndex& alpha) {
    H h_sq(1);
    int tail = 0;
    for (int j1 = d; j1 >= 1; --j1) {
      H tail_j(0), tail_next(0);
      for (int i = j1; i <= d + 1; ++i) tail_j += H(params_.kappa()[static_cast<std::size_t>(i - 1)]);
      for (int i = j1 + 1; i <= d + 1; ++i) tail_next += H(params_.kappa()[static_cast<std::size_t>(i - 1)]);
      const H u = tail_j + H(d - j1 + 2) / 2;
      const H u_next = tail_next + H(d - j1 + 1) / 2;
      for (int k = 0; k < 2 * tail; ++k) h_sq *= (u_next + k) / (u + k);
      tail += alpha[j1 - 1];
    }
    return 1 / sqrt(h_sq);
  };

  monomial_forms_.resize(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    const auto& lay = layouts_[static_cast<std::size_t>(n)];
    const auto& elems = elements_[static_cast<std::size_t>(n)];
    auto& forms = monomial_forms_[static_cast<std::size_t>(n)];
    forms.reserve(lay.size());
    for (std::size_t i = 0; i < lay.size(); ++i) {
      HighPoly p = HighPoly::constant(d, inv_h(lay.indices[i]));
      for (int j = 0; j < d; ++j) {
        p = p * factors[static_cast<std::size_t>(j)][static_cast<std::size_t>(elems[i].tails[static_cast<std::size_t>(j)])]
                       [static_cast<std::size_t>(lay.indices[i][j])];
      }
      forms.push_back(std::move(p));
    }
  }
}

void SimplexJacobiBasis::verify_normalization() {
  using H = HighPrecision;
  std::vector<const HighPoly*> polys;
  for (int n = 0; n <= check_degree_; ++n)
    for (const auto& p : monomial_forms_[static_cast<std::size_t>(n)]) polys.push_back(&p);

  std::map<MultiIndex, H, LayoutOrder> moments;
  auto mom = [&](const MultiIndex& a) -> const H& {
    auto it = moments.find(a);
    if (it == moments.end()) it = moments.emplace(a, dirichlet_moment<H>(params_, a)).first;
    return it->second;
  };

  double worst = 0.0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t k = i; k < polys.size(); ++k) {
      H ip(0);
      for (const auto& [a, ca] : polys[i]->terms())
        for (const auto& [b, cb] : polys[k]->terms()) ip += ca * cb * mom(a + b);
      const double dev = std::abs(static_cast<double>(ip) - (i == k ? 1.0 : 0.0));
      worst = std::max(worst, dev);
    }
  }
  normalization_deviation_ = worst;
  if (worst > 1e-8) {
    throw NumericalFailure("simplex basis normalization check failed: max Gram deviation " + std::to_string(worst));
  }
}

}  // namespace uvarov
