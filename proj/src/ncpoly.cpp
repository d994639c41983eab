#include "fedlab/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "fedlab/error.hpp"
#include "parse_util.hpp"

namespace fedlab {

NCPolynomial::NCPolynomial(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 1) throw ConfigError("NCPolynomial: n_vars must be >= 1");
}

NCPolynomial::NCPolynomial(int n_vars, std::vector<std::pair<Complex, Word>> terms)
    : NCPolynomial(n_vars) {
  for (auto& [c, w] : terms) add_term(c, std::move(w));
}

NCPolynomial NCPolynomial::unit(int n_vars) { return monomial(n_vars, {}); }

NCPolynomial NCPolynomial::variable(int n_vars, int index) { return monomial(n_vars, {index}); }

NCPolynomial NCPolynomial::monomial(int n_vars, Word word, Complex coeff) {
  NCPolynomial p(n_vars);
  p.add_term(coeff, std::move(word));
  return p;
}

std::size_t NCPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

void NCPolynomial::add_term(Complex coeff, Word word) {
  for (int v : word) {
    if (v < 0 || v >= n_vars_) {
      throw ConfigError("NCPolynomial: variable index " + std::to_string(v + 1) +
                        " out of range for " + std::to_string(n_vars_) + " variables");
    }
  }
  auto [it, inserted] = terms_.try_emplace(std::move(word), coeff);
  if (!inserted) it->second += coeff;
  if (it->second == Complex(0.0)) terms_.erase(it);
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial& other) const {
  NCPolynomial out(std::max(n_vars_, other.n_vars_));
  for (const auto& [w, c] : terms_) out.add_term(c, w);
  for (const auto& [w, c] : other.terms_) out.add_term(c, w);
  return out;
}

NCPolynomial NCPolynomial::operator-(const NCPolynomial& other) const { return *this + other * Complex(-1.0); }

NCPolynomial NCPolynomial::operator*(Complex scalar) const {
  NCPolynomial out(n_vars_);
  for (const auto& [w, c] : terms_) out.add_term(c * scalar, w);
  return out;
}

NCPolynomial NCPolynomial::operator*(const NCPolynomial& other) const {
  NCPolynomial out(std::max(n_vars_, other.n_vars_));
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : other.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(ca * cb, std::move(w));
    }
  }
  return out;
}

Complex NCPolynomial::evaluate_scalar(Complex lambda) const {
  Complex sum = 0.0;
  for (const auto& [w, c] : terms_) sum += c * std::pow(lambda, static_cast<int>(w.size()));
  return sum;
}

std::string NCPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string coeff;
    if (c.imag() == 0.0) {
      coeff = detail::format_number(c.real());
    } else {
      coeff = "(" + detail::format_number(c.real()) + (c.imag() < 0 ? "-" : "+") +
              detail::format_number(std::abs(c.imag())) + "i)";
    }
    out += coeff;
    for (int v : w) out += "*X" + std::to_string(v + 1);
  }
  return out;
}

namespace {

// Recursive-descent parser over the text form. Arithmetic is done on
// polynomials with a provisional variable count that is widened as needed.
class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  NCPolynomial parse() {
    NCPolynomial p = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  int max_var() const { return max_var_; }

 private:
  static constexpr int kWorkVars = 64;

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("polynomial '" + std::string(s_) + "': " + why + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NCPolynomial expression() {
    NCPolynomial acc(kWorkVars);
    bool first = true;
    while (true) {
      char c = peek();
      double sign = 1.0;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        break;
      }
      acc = acc + term() * Complex(sign);
      first = false;
    }
    return acc;
  }

  static bool starts_factor(char c) {
    return c == 'X' || c == 'x' || c == '(' || c == 'i' || c == 'I' || c == '.' ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  NCPolynomial term() {
    NCPolynomial acc = factor();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor(c)) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  int exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    skip_ws();
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    return static_cast<int>(detail::parse_integer(s_.substr(start, pos_ - start), "polynomial exponent"));
  }

  static NCPolynomial power(const NCPolynomial& base, int e) {
    NCPolynomial out = NCPolynomial::unit(kWorkVars);
    for (int i = 0; i < e; ++i) out = out * base;
    return out;
  }

  NCPolynomial factor() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NCPolynomial inner = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return power(inner, exponent());
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      const auto start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      int index = 1;
      if (pos_ > start) index = static_cast<int>(detail::parse_integer(s_.substr(start, pos_ - start), "variable"));
      if (index < 1 || index > kWorkVars) fail("variable index out of range");
      max_var_ = std::max(max_var_, index);
      return power(NCPolynomial::variable(kWorkVars, index - 1), exponent());
    }
    if (c == 'i' || c == 'I') {
      ++pos_;
      return NCPolynomial::unit(kWorkVars) * Complex(0.0, 1.0);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const auto start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == 'e' ||
              s_[pos_] == 'E' ||
              ((s_[pos_] == '-' || s_[pos_] == '+') && pos_ > start && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      const double v = detail::parse_plain_double(s_.substr(start, pos_ - start), "polynomial coefficient");
      Complex coeff = v;
      if (pos_ < s_.size() && (s_[pos_] == 'i' || s_[pos_] == 'I')) {
        ++pos_;
        coeff = Complex(0.0, v);
      }
      return NCPolynomial::unit(kWorkVars) * coeff;
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int max_var_ = 0;
};

}  // namespace

NCPolynomial parse_polynomial(std::string_view text, int n_vars) {
  PolyParser parser(text);
  const NCPolynomial wide = parser.parse();
  const int needed = std::max(1, parser.max_var());
  if (n_vars == 0) n_vars = needed;
  if (n_vars < needed) {
    throw ConfigError("polynomial '" + std::string(text) + "' uses X" + std::to_string(needed) +
                      " but only " + std::to_string(n_vars) + " variables are declared");
  }
  NCPolynomial out(n_vars);
  for (const auto& [w, c] : wide.terms()) out.add_term(c, w);
  return out;
}

ComplexMatrix eval_matrix(const NCPolynomial& p, std::span<const HermitianMatrix> args) {
  if (static_cast<int>(args.size()) != p.n_vars()) {
    throw DimensionMismatch("eval_matrix: polynomial has " + std::to_string(p.n_vars()) +
                            " variables but " + std::to_string(args.size()) + " arguments were given");
  }
  const auto k = args.front().dim();
  for (const auto& a : args) {
    if (a.dim() != k) throw DimensionMismatch("eval_matrix: arguments have different dimensions");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(k, k);
  for (const auto& [w, c] : p.terms()) {
    if (w.empty()) {
      sum.diagonal().array() += c;
      continue;
    }
    ComplexMatrix prod = args[static_cast<std::size_t>(w.front())].entries();
    for (std::size_t i = 1; i < w.size(); ++i) prod = prod * args[static_cast<std::size_t>(w[i])].entries();
    sum += c * prod;
  }
  return sum;
}

ComplexMatrix eval_matrix(const NCPolynomial& p, const HermitianMatrix& arg) {
  return eval_matrix(p, std::span<const HermitianMatrix>(&arg, 1));
}

double sup_norm_on_points(const NCPolynomial& p, std::span<const double> points) {
  if (p.n_vars() != 1) {
    throw ConfigError("sup_norm_on_spectrum: only one-variable polynomials have a spectral norm");
  }
  double best = 0.0;
  for (double lambda : points) best = std::max(best, std::abs(p.evaluate_scalar(lambda)));
  return best;
}

double sup_norm_on_spectrum(const NCPolynomial& p, const SpectrumSpec& k) {
  if (p.n_vars() != 1) {
    throw ConfigError("sup_norm_on_spectrum: only one-variable polynomials have a spectral norm");
  }
  const RealVector pts = discretize(k);
  return sup_norm_on_points(p, pts);
}

std::vector<NCPolynomial> default_polynomial_family(int n_vars, int degree_cap) {
  if (n_vars < 1) throw ConfigError("default_polynomial_family: n_vars must be >= 1");
  if (degree_cap < 1) throw ConfigError("default_polynomial_family: degree_cap must be >= 1");
  std::vector<NCPolynomial> family{NCPolynomial::unit(n_vars)};
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= degree_cap; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (int v = 0; v < n_vars; ++v) {
        Word x = w;
        x.push_back(v);
        next.push_back(std::move(x));
      }
    }
    for (const auto& w : next) family.push_back(NCPolynomial::monomial(n_vars, w));
    layer = std::move(next);
  }
  return family;
}

}  // namespace fedlab
