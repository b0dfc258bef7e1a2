#include "uvarov/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uvarov {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw InvalidInput("multi-index dimension must be >= 1");
  for (int e : exponents_) {
    if (e < 0) throw InvalidInput("multi-index exponents must be nonnegative");
    degree_ += e;
  }
}

MultiIndex MultiIndex::zero(int d) {
  if (d < 1) throw InvalidInput("invalid dimension " + std::to_string(d));
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0));
}

MultiIndex MultiIndex::unit(int d, int i) {
  if (i < 0 || i >= d) throw InvalidInput("unit multi-index position out of range");
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dimension() != dimension()) throw InvalidInput("multi-index dimension mismatch");
  std::vector<int> e = exponents_;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(exponents_[i]);
  }
  return s + ")";
}

bool grevlex_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.dimension() - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

bool LayoutOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return grevlex_less(b, a);
}

std::size_t DegreeLayout::position(const MultiIndex& alpha) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), alpha, LayoutOrder{});
  if (it == indices.end() || !(*it == alpha))
    throw InvalidInput("multi-index " + alpha.to_string() + " not in degree block");
  return static_cast<std::size_t>(it - indices.begin());
}

namespace {

void compositions(int d, int remaining, int pos, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (pos == d - 1) {
    cur[static_cast<std::size_t>(pos)] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[static_cast<std::size_t>(pos)] = k;
    compositions(d, remaining - k, pos + 1, cur, out);
  }
}

}  // namespace

DegreeLayout enumerate_degree(int d, int n) {
  if (d < 1) throw InvalidInput("invalid dimension " + std::to_string(d));
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  DegreeLayout layout{d, n, {}};
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  compositions(d, n, 0, cur, layout.indices);
  std::sort(layout.indices.begin(), layout.indices.end(), LayoutOrder{});
  return layout;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t num = (n - k + i) / (i / g);
    const std::uint64_t r = result / g;
    if (num != 0 && r > std::numeric_limits<std::uint64_t>::max() / num)
      throw InvalidInput("binomial coefficient overflows 64 bits");
    result = r * num;
  }
  return result;
}

double binomial_real(double top, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= (top - k + i) / i;
  return v;
}

Dims dims(int d, int n) {
  if (d < 1) throw InvalidInput("invalid dimension " + std::to_string(d));
  if (n < 0) throw InvalidInput("degree must be nonnegative");
  const auto un = static_cast<std::uint64_t>(n);
  const auto ud = static_cast<std::uint64_t>(d);
  return {binomial(un + ud - 1, un), binomial(un + ud, un)};
}

}  // namespace uvarov
