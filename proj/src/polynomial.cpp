#include "sailroa/polynomial.hpp"

namespace sailroa {

int total_degree(const Exponents& e) {
  int d = 0;
  for (int k : e) d += k;
  return d;
}

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

namespace {

void enumerate(int n_vars, int var, int remaining, Exponents& current,
               std::vector<Exponents>& out) {
  if (var == n_vars) {
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[var] = k;
    enumerate(n_vars, var + 1, remaining - k, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Exponents> monomials_up_to(int n_vars, int max_degree) {
  std::vector<Exponents> out;
  Exponents current(n_vars, 0);
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Exponents> level;
    enumerate(n_vars, 0, d, current, level);
    // keep only exact-degree tuples, sorted lexicographically
    std::vector<Exponents> exact;
    for (auto& e : level)
      if (total_degree(e) == d) exact.push_back(e);
    std::sort(exact.begin(), exact.end());
    out.insert(out.end(), exact.begin(), exact.end());
  }
  return out;
}

Eigen::VectorXd PolyVectorField::eval(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(components.size()));
  for (std::size_t i = 0; i < components.size(); ++i) out[i] = components[i].eval(x);
  return out;
}

int PolyVectorField::degree() const {
  int d = 0;
  for (const auto& p : components) d = std::max(d, p.degree());
  return d;
}

CompiledPolynomial::CompiledPolynomial(const Polynomiald& p) : n_vars_(p.n_vars()) {
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(c);
    exponents_.insert(exponents_.end(), e.begin(), e.end());
  }
}

double CompiledPolynomial::eval(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double acc = 0.0;
  const int* e = exponents_.data();
  for (double c : coeffs_) {
    double m = c;
    for (int k = 0; k < n_vars_; ++k) {
      const double xk = x[k];
      for (int p = 0; p < e[k]; ++p) m *= xk;
    }
    acc += m;
    e += n_vars_;
  }
  return acc;
}

}  // namespace sailroa
