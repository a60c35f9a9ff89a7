#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace kh {

// Exact Laurent polynomial in one variable with integer coefficients.
// The variable tag ('A', 'q', 't') travels with the value; mixing tags in
// arithmetic is a logic error and throws.
class LaurentPoly {
 public:
  explicit LaurentPoly(char var = 't') : var_(var) {}

  static LaurentPoly monomial(char var, std::int64_t coeff, int exp);
  static LaurentPoly constant(char var, std::int64_t c) {
    return monomial(var, c, 0);
  }

  char var() const { return var_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::int64_t coeff(int exp) const;
  const std::map<int, std::int64_t>& coeffs() const { return coeffs_; }
  int min_exp() const;
  int max_exp() const;
  int n_terms() const { return static_cast<int>(coeffs_.size()); }

  void add_term(int exp, std::int64_t coeff);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly&) const = default;

  LaurentPoly pow(int k) const;  // k >= 0

  // Exponent reversal x -> x^-1 (mirror substitution).
  LaurentPoly reversed() const;

  // Maps x^e -> newvar^(scale*e), e.g. t^k -> q^2k under t = q^2.
  LaurentPoly with_exponents_scaled(char newvar, int scale) const;

  // Maps x^e -> newvar^(e/div); throws if some exponent is not divisible.
  LaurentPoly with_exponents_divided(char newvar, int div) const;

  std::int64_t eval_at_one() const;

  // Sorted ascending by exponent, e.g. `-1*t^-1 + 3 + -1*t^1`; "0" if zero.
  std::string str() const;

 private:
  char var_;
  std::map<int, std::int64_t> coeffs_;  // no zero coefficients stored
};

}  // namespace kh
