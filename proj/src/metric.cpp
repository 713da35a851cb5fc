#include "rlab/metric.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rlab {
namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_decimal(const std::string& text, const std::string& what) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw MetricDomainError(what + ": '" + text + "' is not a decimal number");
  }
  if (used != text.size())
    throw MetricDomainError(what + ": trailing characters in '" + text + "'");
  return v;
}

// ---- builtin generators ---------------------------------------------------

std::string sum_of_squares(const std::string& stem, int n) {
  std::string s = "(";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) s += " + ";
    s += stem + std::to_string(i) + "^2";
  }
  return s + ")";
}

std::string dot_product(const std::string& u, const std::string& v, int n) {
  std::string s = "(";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) s += " + ";
    s += u + std::to_string(i) + "*" + v + std::to_string(i);
  }
  return s + ")";
}

struct BuiltinSpec {
  int n = 2;
  std::map<std::string, std::string> overrides;

  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = overrides.find(key);
    return it == overrides.end() ? fallback : it->second;
  }
};

MetricDefinition assemble(int n, const std::vector<std::string>& param_names,
                          const std::vector<double>& param_values,
                          const std::vector<std::vector<std::string>>& a_text,
                          const std::vector<std::string>& b_text,
                          const std::string& source) {
  MetricDefinition def;
  def.dim = n;
  def.param_names = param_names;
  def.param_values = param_values;
  def.source = source;
  def.a.resize(static_cast<size_t>(n * (n + 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      def.a[static_cast<size_t>(def.tri_index(i, j))] = parse_expression(
          a_text[static_cast<size_t>(i)][static_cast<size_t>(j)], n,
          def.param_names);
  for (int i = 0; i < n; ++i)
    def.b.push_back(parse_expression(b_text[static_cast<size_t>(i)], n, def.param_names));
  return def;
}

std::vector<std::vector<std::string>> zero_matrix_text(int n) {
  return std::vector<std::vector<std::string>>(
      static_cast<size_t>(n), std::vector<std::string>(static_cast<size_t>(n), "0"));
}

// Flat metric, constant one-form: params b1..bn.
MetricDefinition make_minkowski(const BuiltinSpec& s) {
  const int n = s.n;
  std::vector<std::string> names;
  std::vector<double> values;
  for (int i = 1; i <= n; ++i) {
    names.push_back("b" + std::to_string(i));
    values.push_back(parse_decimal(s.get(names.back(), i == 1 ? "0.3" : "0"),
                                   "param " + names.back()));
  }
  auto a = zero_matrix_text(n);
  std::vector<std::string> b;
  for (int i = 0; i < n; ++i) {
    a[static_cast<size_t>(i)][static_cast<size_t>(i)] = "1";
    b.push_back("b" + std::to_string(i + 1));
  }
  return assemble(n, names, values, a, b, "builtin:minkowski_randers");
}

// The deformation family with linear isotropic S-curvature: parameters are
// the components of the constant vector a.
MetricDefinition make_example_1_1(const BuiltinSpec& s) {
  const int n = s.n;
  std::vector<std::string> names;
  std::vector<double> values;
  for (int i = 1; i <= n; ++i) {
    names.push_back("a" + std::to_string(i));
    values.push_back(parse_decimal(s.get(names.back(), i == 1 ? "0.1" : "0"),
                                   "param " + names.back()));
  }
  const std::string x2 = sum_of_squares("x", n);          // |x|^2
  const std::string a2 = sum_of_squares("a", n);          // |a|^2
  const std::string ax = dot_product("a", "x", n);        // <a,x>
  const std::string den = "(1 - " + a2 + "*" + x2 + "^2)";  // 1 - |a|^2 |x|^4
  auto w = [&](int i) {
    // w_i = |x|^2 a_i - 2 <a,x> x_i   (so that beta = -w_i y^i / den)
    return "(" + x2 + "*a" + std::to_string(i) + " - 2*" + ax + "*x" +
           std::to_string(i) + ")";
  };
  auto a_mat = zero_matrix_text(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      std::string entry = w(i) + "*" + w(j) + "/" + den + "^2";
      if (i == j) entry = "1/" + den + " + " + entry;
      a_mat[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = entry;
    }
  std::vector<std::string> b;
  for (int i = 1; i <= n; ++i) b.push_back("-" + w(i) + "/" + den);
  return assemble(n, names, values, a_mat, b, "builtin:example_1_1");
}

// Funk metric on the unit ball as a Randers pair.
MetricDefinition make_funk(const BuiltinSpec& s) {
  const int n = s.n;
  const std::string den = "(1 - " + sum_of_squares("x", n) + ")";
  auto a = zero_matrix_text(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      std::string entry = "x" + std::to_string(i) + "*x" + std::to_string(j) +
                          "/" + den + "^2";
      if (i == j) entry = "1/" + den + " + " + entry;
      a[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = entry;
    }
  std::vector<std::string> b;
  for (int i = 1; i <= n; ++i) b.push_back("x" + std::to_string(i) + "/" + den);
  return assemble(n, {}, {}, a, b, "builtin:funk");
}

// Round unit sphere in stereographic conformal coordinates; beta = 0.
MetricDefinition make_sphere_alpha(const BuiltinSpec& s) {
  const int n = s.n;
  const std::string conf = "1/(1 + " + sum_of_squares("x", n) + "/4)^2";
  auto a = zero_matrix_text(n);
  for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(i)] = conf;
  std::vector<std::string> b(static_cast<size_t>(n), "0");
  return assemble(n, {}, {}, a, b, "builtin:sphere_alpha");
}

// Conformally scaled flat Randers data: a_ij = e^{2 sigma} delta_ij,
// b_i = e^{sigma} c_i with constant c and sigma an expression parameter.
MetricDefinition make_conformal_minkowski(const BuiltinSpec& s) {
  const int n = s.n;
  std::vector<std::string> names;
  std::vector<double> values;
  for (int i = 1; i <= n; ++i) {
    names.push_back("b" + std::to_string(i));
    values.push_back(parse_decimal(s.get(names.back(), i == 1 ? "0.3" : "0"),
                                   "param " + names.back()));
  }
  const std::string sigma = "(" + s.get("sigma", "0.2*x1") + ")";
  auto a = zero_matrix_text(n);
  for (int i = 0; i < n; ++i)
    a[static_cast<size_t>(i)][static_cast<size_t>(i)] = "exp(2*" + sigma + ")";
  std::vector<std::string> b;
  for (int i = 1; i <= n; ++i)
    b.push_back("exp(" + sigma + ")*b" + std::to_string(i));
  return assemble(n, names, values, a, b, "builtin:conformal_minkowski");
}

}  // namespace

double check_admissible(const MetricDefinition& def, std::span<const double> x) {
  const Eigen::MatrixXd a = def.alpha_matrix(x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig <= 0.0) {
    std::ostringstream os;
    os << "a(x) is not positive definite: eigenvalue of sign "
       << (min_eig < 0 ? "-" : "0") << " (value " << min_eig << ")";
    throw MetricDomainError(os.str());
  }
  const Eigen::VectorXd b = def.beta_covector(x);
  const double b2 = b.dot(a.llt().solve(b));
  if (b2 >= 1.0) {
    std::ostringstream os;
    os << "||beta||_alpha = " << std::sqrt(b2) << " >= 1: not a Randers metric";
    throw MetricDomainError(os.str());
  }
  return b2;
}

double finsler_norm(const MetricDefinition& def, std::span<const double> x,
                    std::span<const double> y) {
  const Eigen::MatrixXd a = def.alpha_matrix(x);
  const Eigen::VectorXd b = def.beta_covector(x);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<long>(y.size()));
  return std::sqrt(yv.dot(a * yv)) + b.dot(yv);
}

MetricDefinition parse_metric_text(const std::string& text,
                                   const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int dim = -1;
  enum class Section { kNone, kParams, kAlpha, kBeta };
  Section section = Section::kNone;
  std::vector<std::string> param_names;
  std::vector<double> param_values;
  std::map<std::pair<int, int>, std::string> a_text;
  std::map<int, std::string> b_text;

  auto err = [&](const std::string& msg) -> void {
    throw MetricDomainError(source_name + ":" + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line == "[params]") {
      section = Section::kParams;
      continue;
    }
    if (line == "[alpha]") {
      section = Section::kAlpha;
      continue;
    }
    if (line == "[beta]") {
      section = Section::kBeta;
      continue;
    }
    if (line.front() == '[') err("unknown section " + line);

    const size_t eq = line.find('=');
    if (eq == std::string::npos) err("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (key == "dim" && section == Section::kNone) {
      dim = static_cast<int>(parse_decimal(value, "dim"));
      if (dim < 1 || dim > 8) err("dim must be in 1..8");
      continue;
    }
    if (section == Section::kNone) err("'" + key + "' before any section (only 'dim' allowed)");
    if (dim < 1) err("dim must be declared before sections");

    if (section == Section::kParams) {
      param_names.push_back(key);
      param_values.push_back(parse_decimal(value, "param " + key));
      continue;
    }

    // Expression entries are double-quoted.
    if (value.size() < 2 || value.front() != '"' || value.back() != '"')
      err("expression for '" + key + "' must be double-quoted");
    value = value.substr(1, value.size() - 2);

    if (section == Section::kAlpha) {
      if (key.size() < 3 || key[0] != 'a') err("alpha keys look like a<i><j>");
      const int i = key[1] - '0', j = key[2] - '0';
      if (key.size() != 3 || i < 1 || j < 1 || i > dim || j > dim)
        err("bad alpha key '" + key + "'");
      if (i > j) err("alpha entries are upper-triangular: use a" +
                     std::to_string(j) + std::to_string(i));
      a_text[{i - 1, j - 1}] = value;
    } else {
      if (key.size() != 2 || key[0] != 'b') err("beta keys look like b<i>");
      const int i = key[1] - '0';
      if (i < 1 || i > dim) err("bad beta key '" + key + "'");
      b_text[i - 1] = value;
    }
  }
  if (dim < 1) throw MetricDomainError(source_name + ": missing 'dim ='");

  MetricDefinition def;
  def.dim = dim;
  def.param_names = param_names;
  def.param_values = param_values;
  def.source = source_name;
  def.a.resize(static_cast<size_t>(dim * (dim + 1) / 2));
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      auto it = a_text.find({i, j});
      if (i == j && it == a_text.end())
        throw MetricDomainError(source_name + ": missing diagonal entry a" +
                                std::to_string(i + 1) + std::to_string(j + 1));
      const std::string text_ij = it == a_text.end() ? "0" : it->second;
      def.a[static_cast<size_t>(def.tri_index(i, j))] =
          parse_expression(text_ij, dim, def.param_names);
    }
  for (int i = 0; i < dim; ++i) {
    auto it = b_text.find(i);
    def.b.push_back(parse_expression(it == b_text.end() ? "0" : it->second, dim,
                                     def.param_names));
  }
  return def;
}

MetricDefinition parse_metric_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MetricDomainError("cannot open metric file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metric_text(buf.str(), "file:" + path);
}

std::string serialize_metric(const MetricDefinition& def) {
  std::ostringstream os;
  os << "dim = " << def.dim << "\n";
  if (!def.param_names.empty()) {
    os << "[params]\n";
    for (size_t i = 0; i < def.param_names.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", def.param_values[i]);
      os << def.param_names[i] << " = " << buf << "\n";
    }
  }
  os << "[alpha]\n";
  for (int i = 0; i < def.dim; ++i)
    for (int j = i; j < def.dim; ++j)
      os << "a" << (i + 1) << (j + 1) << " = \"" << pretty_print(def.a_entry(i, j))
         << "\"\n";
  os << "[beta]\n";
  for (int i = 0; i < def.dim; ++i)
    os << "b" << (i + 1) << " = \"" << pretty_print(def.b[static_cast<size_t>(i)])
       << "\"\n";
  return os.str();
}

MetricDefinition builtin_metric(const std::string& name,
                                const std::map<std::string, std::string>& overrides) {
  BuiltinSpec s;
  s.overrides = overrides;
  if (auto it = overrides.find("n"); it != overrides.end()) {
    s.n = static_cast<int>(parse_decimal(it->second, "param n"));
    if (s.n < 2 || s.n > 8)
      throw MetricDomainError("builtin dimension n must be in 2..8");
  }
  if (name == "minkowski_randers") return make_minkowski(s);
  if (name == "example_1_1") return make_example_1_1(s);
  if (name == "funk") return make_funk(s);
  if (name == "sphere_alpha") return make_sphere_alpha(s);
  if (name == "conformal_minkowski") return make_conformal_minkowski(s);
  throw MetricDomainError("unknown builtin metric '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"minkowski_randers", "example_1_1", "funk", "sphere_alpha",
          "conformal_minkowski"};
}

}  // namespace rlab
