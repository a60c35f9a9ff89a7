#include "khdetect/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace kh {

namespace {
void require_same_var(char a, char b) {
  if (a != b)
    throw std::logic_error(std::string("Laurent variable mismatch: ") + a +
                           " vs " + b);
}
}  // namespace

LaurentPoly LaurentPoly::monomial(char var, std::int64_t coeff, int exp) {
  LaurentPoly p(var);
  p.add_term(exp, coeff);
  return p;
}

std::int64_t LaurentPoly::coeff(int exp) const {
  auto it = coeffs_.find(exp);
  return it == coeffs_.end() ? 0 : it->second;
}

int LaurentPoly::min_exp() const {
  if (is_zero()) throw std::logic_error("min_exp of zero polynomial");
  return coeffs_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (is_zero()) throw std::logic_error("max_exp of zero polynomial");
  return coeffs_.rbegin()->first;
}

void LaurentPoly::add_term(int exp, std::int64_t coeff) {
  if (coeff == 0) return;
  auto it = coeffs_.find(exp);
  if (it == coeffs_.end()) {
    coeffs_[exp] = coeff;
  } else {
    it->second += coeff;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  require_same_var(var_, o.var_);
  LaurentPoly r = *this;
  for (auto [e, c] : o.coeffs_) r.add_term(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  require_same_var(var_, o.var_);
  LaurentPoly r = *this;
  for (auto [e, c] : o.coeffs_) r.add_term(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  require_same_var(var_, o.var_);
  LaurentPoly r(var_);
  for (auto [e1, c1] : coeffs_)
    for (auto [e2, c2] : o.coeffs_) r.add_term(e1 + e2, c1 * c2);
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(var_);
  for (auto [e, c] : coeffs_) r.add_term(e, -c);
  return r;
}

LaurentPoly LaurentPoly::pow(int k) const {
  if (k < 0) throw std::logic_error("negative power of a Laurent polynomial");
  LaurentPoly r = constant(var_, 1);
  for (int i = 0; i < k; i++) r = r * *this;
  return r;
}

LaurentPoly LaurentPoly::reversed() const {
  LaurentPoly r(var_);
  for (auto [e, c] : coeffs_) r.add_term(-e, c);
  return r;
}

LaurentPoly LaurentPoly::with_exponents_scaled(char newvar, int scale) const {
  LaurentPoly r(newvar);
  for (auto [e, c] : coeffs_) r.add_term(e * scale, c);
  return r;
}

LaurentPoly LaurentPoly::with_exponents_divided(char newvar, int div) const {
  LaurentPoly r(newvar);
  for (auto [e, c] : coeffs_) {
    if (e % div != 0)
      throw std::logic_error("exponent " + std::to_string(e) +
                             " not divisible by " + std::to_string(div));
    r.add_term(e / div, c);
  }
  return r;
}

std::int64_t LaurentPoly::eval_at_one() const {
  std::int64_t s = 0;
  for (auto [e, c] : coeffs_) s += c;
  return s;
}

std::string LaurentPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto [e, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    if (e == 0)
      out << c;
    else
      out << c << '*' << var_ << '^' << e;
  }
  return out.str();
}

}  // namespace kh
