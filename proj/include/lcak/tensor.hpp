#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <vector>

namespace lcak {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Coordinates of a point of a chart.
struct Point {
  Vec coords;

  Point() = default;
  explicit Point(Vec c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(static_cast<Eigen::Index>(c.size())) {
    Eigen::Index i = 0;
    for (double v : c) coords[i++] = v;
  }

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[i]; }

  Point shifted(int axis, double h) const {
    Point q = *this;
    q.coords[axis] += h;
    return q;
  }
};

/// Dense tensor of rank <= 4 over a dim-dimensional space.
///
/// Slot variance is carried as a mask (true = contravariant). Storage is
/// row-major in the slot order, so t(a, b, c, d) has stride dim^3 on a.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, std::vector<bool> upper)
      : dim_(dim), upper_(std::move(upper)), data_(size_for(dim, rank()), 0.0) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(upper_.size()); }
  const std::vector<bool>& variance() const { return upper_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int a, int b, int c) { return data_[offset(a, b, c)]; }
  double operator()(int a, int b, int c) const { return data_[offset(a, b, c)]; }
  double& operator()(int a, int b, int c, int d) { return data_[offset(a, b, c, d)]; }
  double operator()(int a, int b, int c, int d) const { return data_[offset(a, b, c, d)]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  /// max |a - b| over all components.
  friend double max_abs_diff(const Tensor& a, const Tensor& b);
  double max_abs() const;

 private:
  static std::size_t size_for(int dim, int rank) {
    std::size_t s = 1;
    for (int i = 0; i < rank; ++i) s *= static_cast<std::size_t>(dim);
    return s;
  }
  std::size_t offset(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * dim_ + b) * dim_ + c;
  }
  std::size_t offset(int a, int b, int c, int d) const {
    return ((static_cast<std::size_t>(a) * dim_ + b) * dim_ + c) * dim_ + d;
  }

  int dim_ = 0;
  std::vector<bool> upper_;
  std::vector<double> data_;
};

double max_abs_diff(const Tensor& a, const Tensor& b);

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace lcak
