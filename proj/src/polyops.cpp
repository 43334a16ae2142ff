#include "hyper3b/polyops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hyper3b/special_functions.hpp"

namespace hyper3b::poly {

namespace {
inline void accumulate(std::map<Mono, Complex>& terms, const Mono& m, Complex c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms.erase(it);
  }
}
}  // namespace

Poly Poly::constant(Complex c) {
  Poly p;
  if (c != 0.0) p.terms_[{0, 0, 0, 0, 0, 0}] = c;
  return p;
}

Poly Poly::variable(int k) {
  Poly p;
  Mono m{};
  m[size_t(k)] = 1;
  p.terms_[m] = 1.0;
  return p;
}

Complex Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void Poly::set(const Mono& m, Complex c) {
  if (c == 0.0)
    terms_.erase(m);
  else
    terms_[m] = c;
}

void Poly::add_term(const Mono& m, Complex c) { accumulate(terms_, m, c); }

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, -c);
  return *this;
}

Poly& Poly::operator*=(Complex c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Mono m;
      for (int i = 0; i < 6; ++i) m[size_t(i)] = (unsigned char)(ma[size_t(i)] + mb[size_t(i)]);
      accumulate(r.terms_, m, ca * cb);
    }
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    const int e = m[size_t(var)];
    if (e == 0) continue;
    Mono n = m;
    n[size_t(var)] = (unsigned char)(e - 1);
    accumulate(r.terms_, n, c * double(e));
  }
  return r;
}

Poly Poly::mul_var(int var) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Mono n = m;
    n[size_t(var)] = (unsigned char)(n[size_t(var)] + 1);
    r.terms_[n] = c;
  }
  return r;
}

Poly Poly::conj_complex_chart() const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Mono n{m[3], m[4], m[5], m[0], m[1], m[2]};
    r.terms_[n] = std::conj(c);
  }
  return r;
}

Poly Poly::conj_real_chart() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = std::conj(c);
  return r;
}

Poly Poly::substitute_linear(const std::array<std::array<Complex, 6>, 6>& map) const {
  Poly result;
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(c);
    for (int v = 0; v < 6; ++v) {
      const int e = m[size_t(v)];
      if (e == 0) continue;
      Poly lin;
      for (int j = 0; j < 6; ++j)
        if (map[size_t(v)][size_t(j)] != 0.0) {
          Mono mm{};
          mm[size_t(j)] = 1;
          lin.add_term(mm, map[size_t(v)][size_t(j)]);
        }
      for (int rep = 0; rep < e; ++rep) term = term * lin;
    }
    result += term;
  }
  return result;
}

Complex Poly::eval(const std::array<Complex, 6>& x) const {
  Complex s = 0.0;
  for (const auto& [m, c] : terms_) {
    Complex t = c;
    for (int v = 0; v < 6; ++v)
      for (int e = 0; e < m[size_t(v)]; ++e) t *= x[size_t(v)];
    s += t;
  }
  return s;
}

double Poly::max_abs_coeff() const {
  double r = 0.0;
  for (const auto& [m, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

void Poly::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

std::string Poly::dump() const {
  std::ostringstream os;
  char buf[128];
  for (const auto& [m, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %d %d %d %d %d %d\n", c.real(), c.imag(),
                  int(m[0]), int(m[1]), int(m[2]), int(m[3]), int(m[4]), int(m[5]));
    os << buf;
  }
  return os.str();
}

Poly Poly::parse(const std::string& text) {
  Poly p;
  std::istringstream is(text);
  double re, im;
  int e[6];
  while (is >> re >> im >> e[0] >> e[1] >> e[2] >> e[3] >> e[4] >> e[5]) {
    Mono m;
    for (int i = 0; i < 6; ++i) m[size_t(i)] = (unsigned char)e[i];
    p.add_term(m, {re, im});
  }
  return p;
}

bool Poly::is_homogeneous(int* degree) const {
  if (terms_.empty()) {
    if (degree) *degree = 0;
    return true;
  }
  const int d = total_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (total_degree(m) != d) return false;
  if (degree) *degree = d;
  return true;
}

Poly substitute_real(const Poly& f) {
  std::array<std::array<Complex, 6>, 6> map{};
  const Complex half(0.5, 0.0), mhalf_i(0.0, -0.5);
  for (int k = 0; k < 3; ++k) {
    map[size_t(k)][size_t(k)] = half;          // xi_k -> (z_k + z*_k)/2
    map[size_t(k)][size_t(k + 3)] = half;
    map[size_t(k + 3)][size_t(k)] = mhalf_i;   // eta_k -> (z_k - z*_k)/(2i)
    map[size_t(k + 3)][size_t(k + 3)] = -mhalf_i;
  }
  return f.substitute_linear(map);
}

Poly substitute_complex(const Poly& f) {
  std::array<std::array<Complex, 6>, 6> map{};
  const Complex one(1.0, 0.0), i(0.0, 1.0);
  for (int k = 0; k < 3; ++k) {
    map[size_t(k)][size_t(k)] = one;  // z_k -> xi_k + i eta_k
    map[size_t(k)][size_t(k + 3)] = i;
    map[size_t(k + 3)][size_t(k)] = one;
    map[size_t(k + 3)][size_t(k + 3)] = -i;
  }
  return f.substitute_linear(map);
}

namespace {

// first-order building blocks
Poly apply_A(int i, int k, const Poly& f) {
  // A_ik = i z_i d/dz_k - i z*_k d/dz*_i
  const Complex I(0.0, 1.0);
  Poly r = f.derivative(k).mul_var(i) * I;
  r -= f.derivative(3 + i).mul_var(3 + k) * I;
  return r;
}

Poly apply_L_first(int i, int k, const Poly& f) {
  Poly r = apply_A(i, k, f);
  r -= apply_A(k, i, f);
  return r * Complex(0.5, 0.0);
}

Poly apply_B_first(int i, int k, const Poly& f) {
  Poly r = apply_A(i, k, f);
  r += apply_A(k, i, f);
  return r * Complex(0.5, 0.0);
}

Poly apply_N(const Poly& f) {
  Poly r;
  for (int k = 0; k < 3; ++k) {
    r += f.derivative(k).mul_var(k);
    r -= f.derivative(3 + k).mul_var(3 + k);
  }
  return r * Complex(0.5, 0.0);
}

Poly apply_Lap6(const Poly& f) {
  Poly r;
  for (int k = 0; k < 3; ++k) r += f.derivative(k).derivative(3 + k);
  return r * Complex(4.0, 0.0);
}

}  // namespace

Poly apply(const OperatorTag& op, const Poly& f) {
  switch (op.kind) {
    case OperatorTag::A:
      return apply_A(op.i, op.k, f);
    case OperatorTag::L:
      return apply_L_first(op.i, op.k, f);
    case OperatorTag::B:
      return apply_B_first(op.i, op.k, f);
    case OperatorTag::N:
      return apply_N(f);
    case OperatorTag::Lap6:
      return apply_Lap6(f);
    case OperatorTag::L2: {
      // sign convention: L2 z_M = -2 z_M (the literal 4*sum L_ik^2 is positive)
      Poly r;
      const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
      for (auto& pr : pairs) r += apply_L_first(pr[0], pr[1], apply_L_first(pr[0], pr[1], f));
      return r * Complex(-4.0, 0.0);
    }
    case OperatorTag::L3:
      return apply_L_first(0, 1, f) * Complex(2.0, 0.0);
    case OperatorTag::Omega: {
      Poly r;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            r += apply_L_first(i, k, apply_B_first(k, l, apply_L_first(l, i, f)));
      return r;
    }
  }
  throw std::logic_error("apply: unknown operator");
}

Poly commutator(const OperatorTag& op1, const OperatorTag& op2, const Poly& f) {
  Poly r = apply(op1, apply(op2, f));
  r -= apply(op2, apply(op1, f));
  return r;
}

Complex inner_product(const Poly& f, const Poly& g) {
  // int_{S^5} z^p z*^q dOmega = 0 unless p == q, else 2 pi^3 prod p_k! / (2+|p|)!
  static const double pi3 = M_PI * M_PI * M_PI;
  Complex s = 0.0;
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      // f-term z^{pf} z*^{qf}; conj(g)-term z^{qg} z*^{pg}
      int p[3], q[3];
      bool diag = true;
      for (int k = 0; k < 3; ++k) {
        p[k] = mf[size_t(k)] + mg[size_t(k + 3)];
        q[k] = mf[size_t(k + 3)] + mg[size_t(k)];
        if (p[k] != q[k]) {
          diag = false;
          break;
        }
      }
      if (!diag) continue;
      const int tot = p[0] + p[1] + p[2];
      const double val = 2.0 * pi3 *
                         std::exp(sf::log_factorial(p[0]) + sf::log_factorial(p[1]) +
                                  sf::log_factorial(p[2]) - sf::log_factorial(2 + tot));
      s += cf * std::conj(cg) * val;
    }
  }
  return s;
}

double norm(const Poly& f) { return std::sqrt(std::abs(inner_product(f, f).real())); }

bool is_zero(const Poly& f, double tol, double ref) { return f.max_abs_coeff() <= tol * ref; }

Poly z_component(int M) {
  const Complex I(0.0, 1.0);
  const double s2 = std::sqrt(2.0);
  Poly x = Poly::variable(0), y = Poly::variable(1), z = Poly::variable(2);
  switch (M) {
    case +1:
      return (x + I * y) * (-I / s2);
    case 0:
      return z * I;
    case -1:
      return (x - I * y) * (I / s2);
  }
  throw std::invalid_argument("z_component: M must be -1,0,+1");
}

Poly zbar_component(int M) {
  const Complex I(0.0, 1.0);
  const double s2 = std::sqrt(2.0);
  Poly x = Poly::variable(3), y = Poly::variable(4), z = Poly::variable(5);
  switch (M) {
    case +1:
      return (x + I * y) * (-I / s2);
    case 0:
      return z * I;
    case -1:
      return (x - I * y) * (I / s2);
  }
  throw std::invalid_argument("zbar_component: M must be -1,0,+1");
}

Poly rho2() {
  Poly r;
  for (int k = 0; k < 3; ++k) {
    Mono m{};
    m[size_t(k)] = 1;
    m[size_t(k + 3)] = 1;
    r.add_term(m, 1.0);
  }
  return r;
}

}  // namespace hyper3b::poly
