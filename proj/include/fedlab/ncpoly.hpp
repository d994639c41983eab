#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fedlab/linalg.hpp"
#include "fedlab/spectra.hpp"

namespace fedlab {

/// A monomial X_{w[0]} X_{w[1]} ... in noncommuting variables (0-based
/// indices). The empty word is the unit.
using Word = std::vector<int>;

/// Length first, then lexicographic.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Unital noncommutative polynomial with complex coefficients, kept in
/// combined form (one coefficient per word, zero coefficients dropped).
class NCPolynomial {
 public:
  explicit NCPolynomial(int n_vars);
  NCPolynomial(int n_vars, std::vector<std::pair<Complex, Word>> terms);

  static NCPolynomial unit(int n_vars);
  static NCPolynomial variable(int n_vars, int index);
  static NCPolynomial monomial(int n_vars, Word word, Complex coeff = 1.0);

  int n_vars() const noexcept { return n_vars_; }
  const std::map<Word, Complex, WordOrder>& terms() const noexcept { return terms_; }
  std::size_t degree() const;

  void add_term(Complex coeff, Word word);
  NCPolynomial operator+(const NCPolynomial& other) const;
  NCPolynomial operator-(const NCPolynomial& other) const;
  NCPolynomial operator*(Complex scalar) const;
  /// Word concatenation product; used to build test polynomials like X(X-1).
  NCPolynomial operator*(const NCPolynomial& other) const;

  /// Value at a commuting scalar point (all variables set to lambda).
  Complex evaluate_scalar(Complex lambda) const;

  std::string to_string() const;

 private:
  int n_vars_;
  std::map<Word, Complex, WordOrder> terms_;
};

/// Parses the config text form, e.g. `1 + 2*X1*X2 - X2`, `X^2 - 1`,
/// `(0.5+1i)*X1^3`. `X` alone means X1; variables are 1-based in text.
/// When n_vars is 0 it is inferred from the largest index used (minimum 1).
NCPolynomial parse_polynomial(std::string_view text, int n_vars = 0);

/// P(A_1, ..., A_n); the unit maps to the identity. Throws DimensionMismatch
/// on arity or size mismatch.
ComplexMatrix eval_matrix(const NCPolynomial& p, std::span<const HermitianMatrix> args);
ComplexMatrix eval_matrix(const NCPolynomial& p, const HermitianMatrix& arg);

/// sup over the discretization of K of |P(lambda)|, the norm of P(x) by
/// functional calculus. Requires n_vars == 1.
double sup_norm_on_spectrum(const NCPolynomial& p, const SpectrumSpec& k);
double sup_norm_on_points(const NCPolynomial& p, std::span<const double> points);

/// The unit and every coefficient-1 word of length <= degree_cap, in
/// length-then-lexicographic order.
std::vector<NCPolynomial> default_polynomial_family(int n_vars, int degree_cap);

}  // namespace fedlab
