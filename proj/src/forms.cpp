#include "lcak/forms.hpp"

#include <algorithm>
#include <stdexcept>

#include "lcak/finite_difference.hpp"

namespace lcak {

namespace {

void build(int dim, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < dim; ++i) {
    cur.push_back(i);
    build(dim, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Sorts idx in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

std::size_t position(int dim, const std::vector<int>& sorted) {
  const auto& all = increasing_multi_indices(dim, static_cast<int>(sorted.size()));
  auto it = std::lower_bound(all.begin(), all.end(), sorted);
  return static_cast<std::size_t>(it - all.begin());
}

}  // namespace

const std::vector<std::vector<int>>& increasing_multi_indices(int dim, int k) {
  constexpr int max_dim = 8;
  using Table = std::vector<std::vector<std::vector<std::vector<int>>>>;
  static const Table table = [] {
    Table t(max_dim + 1);
    for (int d = 0; d <= max_dim; ++d) {
      t[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(d + 1));
      for (int j = 0; j <= d; ++j) {
        std::vector<int> cur;
        build(d, j, 0, cur, t[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)]);
      }
    }
    return t;
  }();
  if (dim < 0 || dim > max_dim || k < 0 || k > dim) throw std::invalid_argument("multi-index table out of range");
  return table[static_cast<std::size_t>(dim)][static_cast<std::size_t>(k)];
}

FormValue::FormValue(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0 || degree > dim) throw std::invalid_argument("form degree out of range");
  values_ = Vec::Zero(static_cast<Eigen::Index>(increasing_multi_indices(dim, degree).size()));
}

double FormValue::at(std::span<const int> idx) const {
  std::vector<int> s(idx.begin(), idx.end());
  const int sign = sort_with_sign(s);
  if (sign == 0) return 0.0;
  return sign * values_[static_cast<Eigen::Index>(position(dim_, s))];
}

void FormValue::set(std::span<const int> idx, double value) {
  std::vector<int> s(idx.begin(), idx.end());
  const int sign = sort_with_sign(s);
  if (sign == 0) {
    if (value != 0.0) throw std::invalid_argument("nonzero component on a repeated index");
    return;
  }
  values_[static_cast<Eigen::Index>(position(dim_, s))] = sign * value;
}

FormValue one_form(const Vec& components) {
  FormValue a(static_cast<int>(components.size()), 1);
  a.values() = components;
  return a;
}

Vec one_form_components(const FormValue& a) {
  if (a.degree() != 1) throw std::invalid_argument("not a 1-form");
  return a.values();
}

FormValue two_form(const Mat& components) {
  const int n = static_cast<int>(components.rows());
  FormValue a(n, 2);
  const auto& idx = a.indices();
  for (std::size_t r = 0; r < idx.size(); ++r)
    a.values()[static_cast<Eigen::Index>(r)] = components(idx[r][0], idx[r][1]);
  return a;
}

Mat two_form_matrix(const FormValue& a) {
  if (a.degree() != 2) throw std::invalid_argument("not a 2-form");
  Mat m = Mat::Zero(a.dim(), a.dim());
  const auto& idx = a.indices();
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double v = a.values()[static_cast<Eigen::Index>(r)];
    m(idx[r][0], idx[r][1]) = v;
    m(idx[r][1], idx[r][0]) = -v;
  }
  return m;
}

FormValue wedge(const FormValue& a, const FormValue& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge of forms over different dimensions");
  const int k = a.degree();
  const int l = b.degree();
  FormValue out(a.dim(), k + l);
  if (k + l > a.dim()) return out;
  const auto& idx = out.indices();
  // each k-subset of positions (increasing) picks the slots fed to a
  const auto& shuffles = increasing_multi_indices(k + l, k);
  std::vector<int> ia(static_cast<std::size_t>(k)), ib(static_cast<std::size_t>(l));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double s = 0.0;
    for (const auto& pick : shuffles) {
      std::vector<bool> taken(static_cast<std::size_t>(k + l), false);
      int inversions = 0;
      for (int t = 0; t < k; ++t) {
        taken[static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])] = true;
        ia[static_cast<std::size_t>(t)] = idx[r][static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])];
        inversions += pick[static_cast<std::size_t>(t)] - t;
      }
      int u = 0;
      for (int t = 0; t < k + l; ++t)
        if (!taken[static_cast<std::size_t>(t)]) ib[static_cast<std::size_t>(u++)] = idx[r][static_cast<std::size_t>(t)];
      const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
      s += sign * a.at(ia) * b.at(ib);
    }
    out.values()[static_cast<Eigen::Index>(r)] = s;
  }
  return out;
}

FormValue exterior_derivative(const FormField& field, const Point& p) {
  const FormValue at_p = field(p);
  const int n = at_p.dim();
  const int k = at_p.degree();
  FormValue out(n, k + 1);
  if (k + 1 > n) return out;

  auto components = [&field](const Point& q) -> Vec { return field(q).values(); };
  std::vector<Vec> grad;
  grad.reserve(static_cast<std::size_t>(n));
  for (int axis = 0; axis < n; ++axis) grad.push_back(fd::partial(components, p, axis));

  const auto& idx = out.indices();
  std::vector<int> rest(static_cast<std::size_t>(k));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) {
      int u = 0;
      for (int t = 0; t <= k; ++t)
        if (t != j) rest[static_cast<std::size_t>(u++)] = idx[r][static_cast<std::size_t>(t)];
      // rest is increasing, so it is a storage index
      const auto& lower = increasing_multi_indices(n, k);
      const auto pos = static_cast<Eigen::Index>(std::lower_bound(lower.begin(), lower.end(), rest) - lower.begin());
      const double term = grad[static_cast<std::size_t>(idx[r][static_cast<std::size_t>(j)])][pos];
      s += (j % 2 == 0) ? term : -term;
    }
    out.values()[static_cast<Eigen::Index>(r)] = s;
  }
  return out;
}

}  // namespace lcak
