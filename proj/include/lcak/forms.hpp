#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lcak/tensor.hpp"

namespace lcak {

/// Strictly increasing multi-indices of length k over 0..dim-1, in
/// lexicographic order. This is the storage order of FormValue.
const std::vector<std::vector<int>>& increasing_multi_indices(int dim, int k);

/// Differential k-form at a point.
///
/// Only the components with strictly increasing indices are stored. Any other
/// index tuple is read through at(), which sorts it and applies the sign of
/// the sorting permutation (zero on a repeated index), so antisymmetry holds
/// by construction.
class FormValue {
 public:
  FormValue() = default;
  FormValue(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t size() const { return values_.size(); }

  const std::vector<std::vector<int>>& indices() const { return increasing_multi_indices(dim_, degree_); }

  /// Component at an arbitrary index tuple.
  double at(std::span<const int> idx) const;
  double at(std::initializer_list<int> idx) const { return at(std::span<const int>(idx.begin(), idx.size())); }

  /// Sets the component at an arbitrary tuple (stores the canonical one).
  void set(std::span<const int> idx, double value);
  void set(std::initializer_list<int> idx, double value) {
    set(std::span<const int>(idx.begin(), idx.size()), value);
  }

  /// Canonical components in storage order.
  Vec& values() { return values_; }
  const Vec& values() const { return values_; }

  double max_abs() const { return lcak::max_abs(values_); }

 private:
  int dim_ = 0;
  int degree_ = 0;
  Vec values_;
};

using FormField = std::function<FormValue(const Point&)>;

FormValue one_form(const Vec& components);
Vec one_form_components(const FormValue& a);

/// 2-form from a matrix; only the strictly upper triangle is read.
FormValue two_form(const Mat& components);
/// Full antisymmetric matrix of a 2-form.
Mat two_form_matrix(const FormValue& a);

/// (a ^ b)(v_1..v_{k+l}) = sum over (k,l)-shuffles s of sgn(s) a(v_s...) b(v_s...).
/// For a 1-form w and 2-form W: (w ^ W)_abc = w_a W_bc - w_b W_ac + w_c W_ab.
FormValue wedge(const FormValue& a, const FormValue& b);

/// (d a)_{i0..ik} = sum_j (-1)^j d_{ij} a_{i0..^ij..ik}, with the partial
/// derivatives taken by the finite-difference oracle.
FormValue exterior_derivative(const FormField& field, const Point& p);

}  // namespace lcak
