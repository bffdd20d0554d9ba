// Copyright 2026 The padic-rigid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "padic_rigid/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "padic_rigid/errors.hpp"

namespace padic_rigid {

IntPolynomial::IntPolynomial(std::size_t variables) : variables_(variables) {
  if (variables_ == 0) fail(ErrorCode::kParameter, "polynomial needs at least one variable");
}

IntPolynomial IntPolynomial::constant(std::size_t variables, const mpz_class& c) {
  IntPolynomial f(variables);
  f.add_term(Exponents(variables, 0), c);
  return f;
}

IntPolynomial IntPolynomial::variable(std::size_t variables, std::size_t which) {
  if (which >= variables) fail(ErrorCode::kArity, "variable index out of range");
  IntPolynomial f(variables);
  Exponents e(variables, 0);
  e[which] = 1;
  f.add_term(e, 1);
  return f;
}

IntPolynomial IntPolynomial::from_dense(const DensePoly& coeffs) {
  IntPolynomial f(1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) f.add_term({static_cast<int>(i)}, coeffs[i]);
  }
  return f;
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) fail(ErrorCode::kUsage, "empty polynomial");
  IntPolynomial f(1);
  std::size_t i = 0;
  auto parse_uint = [&](std::size_t& pos) {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail(ErrorCode::kUsage, "malformed polynomial near position " + std::to_string(i));
    }
    mpz_class coeff = 1;
    const std::string digits = parse_uint(i);
    bool have_coeff = !digits.empty();
    if (have_coeff) coeff = mpz_class(digits);
    int power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_coeff) fail(ErrorCode::kUsage, "unexpected '*' in polynomial");
      ++i;
      if (i >= s.size() || s[i] != 'x') fail(ErrorCode::kUsage, "expected x after '*'");
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        const std::string exp = parse_uint(i);
        if (exp.empty() || exp.size() > 6) fail(ErrorCode::kUsage, "bad exponent in polynomial");
        power = std::stoi(exp);
      }
    } else if (!have_coeff) {
      fail(ErrorCode::kUsage, "malformed polynomial term near position " + std::to_string(i));
    }
    f.add_term({power}, sign * coeff);
  }
  return f;
}

void IntPolynomial::add_term(const Exponents& exponents, const mpz_class& coefficient) {
  if (exponents.size() != variables_) fail(ErrorCode::kArity, "exponent vector has wrong length");
  for (int e : exponents) {
    if (e < 0) fail(ErrorCode::kParameter, "negative exponent");
  }
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

int IntPolynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

mpz_class IntPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

DensePoly IntPolynomial::dense() const {
  if (variables_ != 1) fail(ErrorCode::kArity, "dense(): polynomial is not univariate");
  DensePoly out;
  for (const auto& [e, c] : terms_) {
    if (out.size() <= static_cast<std::size_t>(e[0])) out.resize(e[0] + 1);
    out[e[0]] = c;
  }
  return out;
}

std::string IntPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  // Highest total degree first, then reverse lexicographic exponent order.
  std::vector<std::pair<Exponents, mpz_class>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int x : a.first) da += x;
    for (int x : b.first) db += x;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    if (a != 1 || constant) out << a.get_str();
    bool need_sep = a != 1 && !constant;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (need_sep) out << '*';
      need_sep = true;
      if (variables_ == 1) {
        out << 'x';
      } else {
        out << 'x' << (v + 1);
      }
      if (e[v] > 1) out << '^' << e[v];
    }
  }
  return out.str();
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.variables_ != b.variables_) fail(ErrorCode::kArity, "polynomial arity mismatch");
  IntPolynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.variables_ != b.variables_) fail(ErrorCode::kArity, "polynomial arity mismatch");
  IntPolynomial out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.variables_ != b.variables_) fail(ErrorCode::kArity, "polynomial arity mismatch");
  IntPolynomial out(a.variables_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      IntPolynomial::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

mpz_class evaluate_mod(const IntPolynomial& f, std::span<const mpz_class> xs, const mpz_class& m) {
  if (xs.size() != f.variables()) {
    fail(ErrorCode::kArity, "evaluate: " + std::to_string(xs.size()) + " values for a polynomial in " +
                                std::to_string(f.variables()) + " variables");
  }
  mpz_class acc = 0, term, power;
  for (const auto& [e, c] : f.terms()) {
    term = c;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      mpz_powm_ui(power.get_mpz_t(), xs[v].get_mpz_t(), static_cast<unsigned long>(e[v]),
                  m.get_mpz_t());
      term *= power;
      mpz_fdiv_r(term.get_mpz_t(), term.get_mpz_t(), m.get_mpz_t());
    }
    acc += term;
  }
  mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  return acc;
}

namespace dense {

void trim(DensePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const DensePoly& f) {
  for (std::size_t i = f.size(); i > 0; --i) {
    if (f[i - 1] != 0) return static_cast<int>(i - 1);
  }
  return -1;
}

DensePoly add(const DensePoly& a, const DensePoly& b) {
  DensePoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

DensePoly sub(const DensePoly& a, const DensePoly& b) {
  DensePoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

DensePoly mul(const DensePoly& a, const DensePoly& b) {
  if (a.empty() || b.empty()) return {};
  DensePoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(out);
  return out;
}

DensePoly scale(const DensePoly& a, const mpz_class& c) {
  DensePoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * c;
  trim(out);
  return out;
}

mpz_class content(const DensePoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

DensePoly primitive_part(const DensePoly& f) {
  DensePoly out = f;
  trim(out);
  if (out.empty()) return out;
  mpz_class g = content(out);
  if (out.back() < 0) g = -g;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

mpz_class eval(const DensePoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t i = f.size(); i > 0; --i) acc = acc * x + f[i - 1];
  return acc;
}

std::uint64_t eval_mod(const std::vector<std::uint64_t>& f_mod, std::uint64_t x, std::uint64_t m) {
  unsigned __int128 acc = 0;
  for (std::size_t i = f_mod.size(); i > 0; --i) {
    acc = (acc * x + f_mod[i - 1]) % m;
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

// lc(b)^(deg a - deg b + 1) * a mod b
DensePoly pseudo_remainder(DensePoly a, const DensePoly& b) {
  const int db = degree(b);
  const mpz_class& lb = b[db];
  while (degree(a) >= db) {
    const int da = degree(a);
    const mpz_class la = a[da];
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
    trim(a);
  }
  return a;
}

}  // namespace

DensePoly gcd(const DensePoly& a0, const DensePoly& b0) {
  DensePoly a = primitive_part(a0);
  DensePoly b = primitive_part(b0);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    DensePoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  return primitive_part(a);
}

DensePoly exact_div(const DensePoly& a0, const DensePoly& b) {
  DensePoly a = a0;
  trim(a);
  const int db = degree(b);
  if (db < 0) fail(ErrorCode::kInternal, "exact_div by zero polynomial");
  if (degree(a) < db) {
    if (a.empty()) return {};
    fail(ErrorCode::kInternal, "exact_div: divisor does not divide");
  }
  DensePoly q(degree(a) - db + 1);
  while (degree(a) >= db) {
    const int da = degree(a);
    if (!mpz_divisible_p(a[da].get_mpz_t(), b[db].get_mpz_t())) {
      fail(ErrorCode::kInternal, "exact_div: divisor does not divide");
    }
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), a[da].get_mpz_t(), b[db].get_mpz_t());
    q[da - db] = t;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= t * b[i];
    trim(a);
  }
  if (!a.empty()) fail(ErrorCode::kInternal, "exact_div: non-zero remainder");
  trim(q);
  return q;
}

mpz_class resultant(const DensePoly& a0, const DensePoly& b0) {
  DensePoly a = a0, b = b0;
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  const int m = degree(a), n = degree(b);
  if (m == 0 && n == 0) return 1;
  const int size = m + n;
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[r][r + i] = a[m - i];
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = b[n - i];
  }
  return bareiss_determinant(std::move(s));
}

std::string to_string(const DensePoly& f, char var) {
  std::string s = IntPolynomial::from_dense(f).to_string();
  if (var != 'x') std::replace(s.begin(), s.end(), 'x', var);
  return s;
}

}  // namespace dense

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace padic_rigid
