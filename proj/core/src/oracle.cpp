#include "uvarov/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace uvarov {

namespace {

using H = HighPrecision;

/// Gaussian elimination with partial pivoting; A is overwritten.
template <class T>
std::vector<T> dense_solve(std::vector<std::vector<T>> A, std::vector<T> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
    if (A[piv][c] == T(0)) throw NumericalFailure("singular system in oracle solve");
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (A[r][c] == T(0)) continue;
      const T f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= A[i][k] * x[k];
    x[i] = s / A[i][i];
  }
  return x;
}

std::vector<MultiIndex> graded_monomials(int d, int n, bool reversed, std::vector<std::size_t>& degree_end) {
  std::vector<MultiIndex> out;
  degree_end.clear();
  for (int k = 0; k <= n; ++k) {
    auto idx = enumerate_degree(d, k).indices;
    if (reversed) std::reverse(idx.begin(), idx.end());
    out.insert(out.end(), idx.begin(), idx.end());
    degree_end.push_back(out.size());
  }
  return out;
}

}  // namespace

NuInnerProduct::NuInnerProduct(SimplexJacobiParams base_, MassSpec mass_) : base(std::move(base_)), mass(std::move(mass_)) {
  if (mass.size() > 0) mass.validate(base.d());
}

NuInnerProduct::NuInnerProduct(SimplexJacobiParams base_) : base(std::move(base_)) {
  mass.lambda = Eigen::MatrixXd::Zero(0, 0);
}

OracleSystem::OracleSystem(NuInnerProduct ip, int max_degree, OracleOptions options)
    : ip_(std::move(ip)), max_degree_(max_degree) {
  if (max_degree < 0) throw InvalidInput("oracle degree must be nonnegative");
  const int d = ip_.base.d();
  monomials_ = graded_monomials(d, max_degree, options.reversed_within_degree, degree_end_);
  const std::size_t s = monomials_.size();

  gram_ = HighMatrix(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j <= i; ++j) gram_(i, j) = gram_(j, i) = ip_.monomial_pair<H>(monomials_[i], monomials_[j]);

  L_ = HighMatrix(s, s);
  for (std::size_t j = 0; j < s; ++j) {
    H diag = gram_(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= L_(j, k) * L_(j, k);
    if (!(diag > H(options.pivot_threshold) * gram_(j, j))) {
      std::ostringstream os;
      os << "oracle Gram matrix numerically singular at degree " << monomials_[j].degree() << " (monomial "
         << monomials_[j].to_string() << ", relative pivot " << static_cast<double>(diag / gram_(j, j)) << ")";
      throw NumericalFailure(os.str());
    }
    L_(j, j) = sqrt(diag);
    for (std::size_t i = j + 1; i < s; ++i) {
      H v = gram_(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= L_(i, k) * L_(j, k);
      L_(i, j) = v / L_(j, j);
    }
  }

  // Rows of L^{-1} give the coefficients of q_k.
  HighMatrix Linv(s, s);
  for (std::size_t c = 0; c < s; ++c) {
    Linv(c, c) = H(1) / L_(c, c);
    for (std::size_t i = c + 1; i < s; ++i) {
      H v(0);
      for (std::size_t k = c; k < i; ++k) v -= L_(i, k) * Linv(k, c);
      Linv(i, c) = v / L_(i, i);
    }
  }
  polys_.reserve(s);
  for (std::size_t k = 0; k < s; ++k) {
    HighPoly q(d);
    for (std::size_t j = 0; j <= k; ++j) q.add_term(monomials_[j], Linv(k, j));
    polys_.push_back(std::move(q));
  }
}

std::size_t OracleSystem::count(int n) const {
  if (n < 0) return 0;
  if (n > max_degree_) throw InvalidInput("degree exceeds the oracle system");
  return degree_end_[static_cast<std::size_t>(n)];
}

std::size_t OracleSystem::index_of(const MultiIndex& a) const {
  const auto it = std::find(monomials_.begin(), monomials_.end(), a);
  if (it == monomials_.end()) throw InvalidInput("monomial " + a.to_string() + " outside the oracle system");
  return static_cast<std::size_t>(it - monomials_.begin());
}

HighVector OracleSystem::monomial_values(const Point& x) const {
  HighVector v(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    v[i] = NuInnerProduct::monomial_functional<H>(monomials_[i], MultiIndex::zero(dimension()), x);
  return v;
}

HighVector OracleSystem::eval(int n, const Point& x) const {
  const std::size_t s = count(n);
  const HighVector m = monomial_values(x);
  HighVector v(s);
  for (std::size_t i = 0; i < s; ++i) {
    H t = m[i];
    for (std::size_t k = 0; k < i; ++k) t -= L_(i, k) * v[k];
    v[i] = t / L_(i, i);
  }
  return v;
}

HighVector OracleSystem::coefficients(const HighPoly& p) const {
  HighVector c(monomials_.size(), H(0));
  for (const auto& [a, v] : p.terms()) c[index_of(a)] = v;
  return c;
}

HighVector OracleSystem::pair_with_system(const HighPoly& p) const {
  const std::size_t s = count(std::max(p.degree(), 0));
  const HighVector c = coefficients(p);
  HighVector out(s, H(0));
  for (std::size_t a = 0; a < monomials_.size(); ++a) {
    if (c[a] == 0) continue;
    for (std::size_t k = 0; k <= std::min(a, s - 1); ++k) out[k] += c[a] * L_(a, k);
  }
  return out;
}

HighPrecision OracleSystem::pair(const HighPoly& p, const HighPoly& q) const {
  const HighVector cp = coefficients(p);
  const HighVector cq = coefficients(q);
  H v(0);
  for (std::size_t a = 0; a < cp.size(); ++a) {
    if (cp[a] == 0) continue;
    for (std::size_t b = 0; b < cq.size(); ++b)
      if (cq[b] != 0) v += cp[a] * cq[b] * gram_(a, b);
  }
  return v;
}

double OracleSystem::kernel(int n, const Point& x, const Point& y) const {
  const HighVector vx = eval(n, x);
  const HighVector vy = eval(n, y);
  H s(0);
  for (std::size_t k = 0; k < vx.size(); ++k) s += vx[k] * vy[k];
  return static_cast<double>(s);
}

double OracleSystem::christoffel_minimum(int n, const Point& x) const {
  const std::size_t s = count(n);
  const HighVector m = monomial_values(x);
  std::vector<HighVector> A(s + 1, HighVector(s + 1, H(0)));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) A[i][j] = 2 * gram_(i, j);
    A[i][s] = m[i];
    A[s][i] = m[i];
  }
  HighVector rhs(s + 1, H(0));
  rhs[s] = 1;
  const HighVector z = dense_solve(std::move(A), std::move(rhs));
  H value(0);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) value += z[i] * gram_(i, j) * z[j];
  return static_cast<double>(value);
}

Rational exact_kernel(const NuInnerProduct& ip, int n, const Point& x, const Point& y) {
  std::vector<std::size_t> ends;
  const auto mons = graded_monomials(ip.base.d(), n, false, ends);
  const std::size_t s = mons.size();
  std::vector<std::vector<Rational>> G(s, std::vector<Rational>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j <= i; ++j) G[i][j] = G[j][i] = ip.monomial_pair<Rational>(mons[i], mons[j]);
  const MultiIndex zero = MultiIndex::zero(ip.base.d());
  std::vector<Rational> my(s);
  std::vector<Rational> mx(s);
  for (std::size_t i = 0; i < s; ++i) {
    my[i] = NuInnerProduct::monomial_functional<Rational>(mons[i], zero, y);
    mx[i] = NuInnerProduct::monomial_functional<Rational>(mons[i], zero, x);
  }
  const auto z = dense_solve(std::move(G), std::move(my));
  Rational k(0);
  for (std::size_t i = 0; i < s; ++i) k += mx[i] * z[i];
  return k;
}

std::vector<OracleSystem::HighPoly> engine_q_polys(const UvarovEngine& engine, const SimplexJacobiBasis& basis, int n) {
  const auto C = engine.q_coefficients(n);
  const int d = basis.dimension();
  const Eigen::Index r = basis.block_size(n);
  std::vector<OracleSystem::HighPoly> out(static_cast<std::size_t>(r), OracleSystem::HighPoly(d));
  for (int k = 0; k <= n; ++k) {
    const auto& Pk = basis.monomial_form(k);
    const Eigen::MatrixXd& Ck = C[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < Ck.cols(); ++j)
        if (Ck(i, j) != 0.0) out[static_cast<std::size_t>(i)] += Pk[static_cast<std::size_t>(j)] * H(Ck(i, j));
  }
  return out;
}

bool EquivalenceReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.pass; });
}

std::vector<Point> sample_interior_points(int d, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (int c = 0; c < count; ++c) {
    Eigen::VectorXd b(d + 1);
    // Integer draws keep the points identical across standard libraries.
    for (int i = 0; i <= d; ++i) b(i) = 0.1 + static_cast<double>(rng() % 1000) / 1000.0;
    b /= b.sum();
    out.push_back(b.head(d));
  }
  return out;
}

EquivalenceReport equivalence_report(const SimplexJacobiParams& params, const MassSpec& mass, int n, double tolerance) {
  EquivalenceReport report;
  try {
    mass.validate(params.d());
  } catch (const InvalidInput& e) {
    report.entries.push_back({"configuration", n, 0.0, tolerance, false, e.what()});
    return report;
  }
  BasisOptions opts;
  opts.monomial_degree = n;
  const SimplexJacobiBasis basis(params, n, opts);
  UvarovEngine engine(basis, mass);
  engine.extend_to(n);
  const OracleSystem oracle(NuInnerProduct(params, mass), n);

  std::vector<Point> pts;
  for (const auto& p : mass.points) {
    if (std::find_if(pts.begin(), pts.end(), [&](const Point& q) { return (q - p).norm() == 0.0; }) == pts.end())
      pts.push_back(p);
  }
  pts.push_back(Point::Constant(params.d(), 1.0 / (params.d() + 1)));
  for (auto& p : sample_interior_points(params.d(), 3, 17u)) pts.push_back(p);

  const double span_tol = std::max(tolerance, 1e-8);
  for (int j = 0; j <= n; ++j) {
    const auto Q = engine_q_polys(engine, basis, j);
    const std::size_t lo = oracle.count(j - 1);
    const std::size_t hi = oracle.count(j);
    const std::size_t r = Q.size();

    double orth = 0.0;
    double span_q = 0.0;
    double span_o = 0.0;
    Eigen::MatrixXd B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(hi - lo));
    Eigen::MatrixXd Hq(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < r; ++i) {
      const HighVector v = oracle.pair_with_system(Q[i]);
      H block(0);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k < lo) orth = std::max(orth, static_cast<double>(abs(v[k])));
        else {
          block += v[k] * v[k];
          B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k - lo)) = static_cast<double>(v[k]);
        }
      }
      const H norm = oracle.pair(Q[i], Q[i]);
      span_q = std::max(span_q, static_cast<double>(abs(norm - block) / norm));
      for (std::size_t l = 0; l < r; ++l)
        Hq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = static_cast<double>(oracle.pair(Q[i], Q[l]));
    }
    // Oracle block projected onto span Q_j: 1 - b^T H^{-1} b for each q_k.
    const Eigen::MatrixXd proj = B.transpose() * Hq.ldlt().solve(B);
    for (Eigen::Index k = 0; k < proj.rows(); ++k) span_o = std::max(span_o, std::abs(1.0 - proj(k, k)));

    const double hdev = (engine.state(j).H - Hq).cwiseAbs().maxCoeff();

    double kdev = 0.0;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a; b < pts.size(); ++b) {
        const double ko = oracle.kernel(j, pts[a], pts[b]);
        const double ke = engine.sum_kernel(j, pts[a], pts[b]);
        kdev = std::max(kdev, std::abs(ko - ke) / std::max(1.0, std::abs(ko)));
      }

    report.entries.push_back({"nu_orthogonality", j, orth, tolerance, orth <= tolerance, ""});
    report.entries.push_back({"span_residual", j, std::max(span_q, span_o), span_tol, std::max(span_q, span_o) <= span_tol, ""});
    report.entries.push_back({"h_block", j, hdev, tolerance, hdev <= tolerance, ""});
    report.entries.push_back({"kernel", j, kdev, tolerance, kdev <= tolerance, ""});
  }
  return report;
}

}  // namespace uvarov
