#pragma once

// Randers metric data F = alpha + beta: a symmetric coefficient matrix
// a_ij(x) (upper triangle stored) and a one-form b_i(x), all entries
// expression ASTs over coordinates and bound parameters.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rlab/expr.hpp"

namespace rlab {

class MetricDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricDefinition {
  int dim = 0;
  std::vector<std::string> param_names;
  std::vector<double> param_values;
  std::vector<ExprPtr> a;  // upper triangle, row-major: (0,0),(0,1),...,(1,1),...
  std::vector<ExprPtr> b;  // dim entries
  std::string source;      // "builtin:<name>" or "file:<path>"

  int tri_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * dim - i * (i - 1) / 2 + (j - i);
  }
  const ExprPtr& a_entry(int i, int j) const {
    return a[static_cast<size_t>(tri_index(i, j))];
  }

  template <class T>
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> alpha_matrix(
      std::span<const T> x) const {
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        T v = eval(*a_entry(i, j), x, std::span<const double>(param_values));
        m(i, j) = v;
        if (i != j) m(j, i) = v;
      }
    return m;
  }

  template <class T>
  Eigen::Vector<T, Eigen::Dynamic> beta_covector(std::span<const T> x) const {
    Eigen::Vector<T, Eigen::Dynamic> v(dim);
    for (int i = 0; i < dim; ++i)
      v(i) = eval(*b[static_cast<size_t>(i)], x, std::span<const double>(param_values));
    return v;
  }
};

// Admissibility at a point: a(x) positive definite and ||b||_a(x) < 1.
// Throws MetricDomainError naming the offending quantity otherwise.
// Returns ||b||^2_a.
double check_admissible(const MetricDefinition& def,
                        std::span<const double> x);

// F(x,y) = sqrt(a_ij y^i y^j) + b_i y^i for quick direct evaluation.
double finsler_norm(const MetricDefinition& def, std::span<const double> x,
                    std::span<const double> y);

MetricDefinition parse_metric_text(const std::string& text,
                                   const std::string& source_name);
MetricDefinition parse_metric_file(const std::string& path);
std::string serialize_metric(const MetricDefinition& def);

// Builtin families.  `overrides` may set "n" (dimension) and the family's
// named parameters; conformal_minkowski additionally takes the expression
// text parameter "sigma".
MetricDefinition builtin_metric(
    const std::string& name,
    const std::map<std::string, std::string>& overrides = {});
std::vector<std::string> builtin_names();

}  // namespace rlab
