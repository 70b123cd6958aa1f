#include "lcak/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace lcak {

double max_abs_diff(const Tensor& a, const Tensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data_.size(); ++i) m = std::max(m, std::fabs(a.data_[i] - b.data_[i]));
  return m;
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace lcak
