#pragma once

#include <Eigen/Dense>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sailroa {

/// Exponent tuple of a monomial, one entry per variable.
using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

/// Graded lexicographic order: lower total degree first, then lex.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// All exponent tuples in n_vars variables with total degree <= max_degree,
/// in graded-lex order. Includes the constant monomial.
std::vector<Exponents> monomials_up_to(int n_vars, int max_degree);

/// Sparse multivariate polynomial over a fixed number of variables.
template <typename Scalar = double>
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Scalar, GradedLex>;

  explicit Polynomial(int n_vars) : n_vars_(n_vars) {
    if (n_vars < 0) throw std::invalid_argument("Polynomial: negative variable count");
  }

  static Polynomial constant(int n_vars, Scalar c) {
    Polynomial p(n_vars);
    p.add_term(Exponents(n_vars, 0), c);
    return p;
  }

  static Polynomial variable(int n_vars, int i) {
    Polynomial p(n_vars);
    Exponents e(n_vars, 0);
    e.at(i) = 1;
    p.add_term(e, Scalar(1));
    return p;
  }

  int n_vars() const { return n_vars_; }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Scalar coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const Exponents& e, Scalar c) {
    if (static_cast<int>(e.size()) != n_vars_)
      throw std::invalid_argument("Polynomial: exponent tuple has wrong arity");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  Polynomial operator+(const Polynomial& o) const {
    check_arity(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const {
    check_arity(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    check_arity(o);
    Polynomial r(n_vars_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        Exponents e(n_vars_);
        for (int k = 0; k < n_vars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  Polynomial operator*(Scalar s) const {
    Polynomial r(n_vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  Polynomial derivative(int var) const {
    Polynomial r(n_vars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      r.add_term(d, c * Scalar(e[var]));
    }
    return r;
  }

  Polynomial truncated(int max_degree) const {
    Polynomial r(n_vars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) <= max_degree) r.add_term(e, c);
    return r;
  }

  template <typename Derived>
  Scalar eval(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != n_vars_)
      throw std::invalid_argument("Polynomial::eval: point has wrong arity");
    Scalar acc(0);
    for (const auto& [e, c] : terms_) {
      Scalar m = c;
      for (int k = 0; k < n_vars_; ++k)
        for (int p = 0; p < e[k]; ++p) m *= x[k];
      acc += m;
    }
    return acc;
  }

 private:
  void check_arity(const Polynomial& o) const {
    if (o.n_vars_ != n_vars_)
      throw std::invalid_argument("Polynomial: mixed variable counts");
  }

  int n_vars_;
  TermMap terms_;
};

template <typename Scalar>
Polynomial<Scalar> operator*(Scalar s, const Polynomial<Scalar>& p) {
  return p * s;
}

using Polynomiald = Polynomial<double>;

/// Polynomial map R^n -> R^n, one polynomial per component.
struct PolyVectorField {
  int n_vars = 0;
  std::vector<Polynomiald> components;

  Eigen::VectorXd eval(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  int degree() const;
};

/// Flattened polynomial for tight evaluation loops. Term order is the
/// graded-lex order of the source polynomial, so evaluation is deterministic.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomiald& p);

  double eval(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  int n_vars() const { return n_vars_; }

 private:
  int n_vars_ = 0;
  std::vector<double> coeffs_;
  std::vector<int> exponents_;  // n_vars_ entries per term
};

}  // namespace sailroa
