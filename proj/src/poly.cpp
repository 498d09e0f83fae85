#include "diffalg/poly.hpp"

#include <algorithm>
#include <sstream>

namespace diffalg {

Monomial Monomial::var(std::size_t i, uint32_t e) {
  Monomial m;
  if (e > 0) {
    m.exp.assign(i + 1, 0);
    m.exp[i] = e;
  }
  return m;
}

uint32_t Monomial::total_degree() const {
  uint32_t d = 0;
  for (uint32_t e : exp) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.exp.resize(std::max(exp.size(), o.exp.size()), 0);
  for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] += exp[i];
  for (std::size_t i = 0; i < o.exp.size(); ++i) r.exp[i] += o.exp[i];
  r.trim();
  return r;
}

bool Monomial::try_divide(const Monomial& o, Monomial& out) const {
  out.exp.assign(std::max(exp.size(), o.exp.size()), 0);
  for (std::size_t i = 0; i < out.exp.size(); ++i) {
    uint32_t a = deg_in(i), b = o.deg_in(i);
    if (b > a) return false;
    out.exp[i] = a - b;
  }
  out.trim();
  return true;
}

bool Monomial::operator<(const Monomial& o) const {
  uint32_t da = total_degree(), db = o.total_degree();
  if (da != db) return da < db;
  // lex on padded exponents
  std::size_t n = std::max(exp.size(), o.exp.size());
  for (std::size_t i = 0; i < n; ++i) {
    uint32_t a = deg_in(i), b = o.deg_in(i);
    if (a != b) return a < b;
  }
  return false;
}

void Monomial::trim() {
  while (!exp.empty() && exp.back() == 0) exp.pop_back();
}

Poly Poly::constant(const Rat& c) {
  Poly p;
  if (c != 0) p.terms_[Monomial::one()] = c;
  return p;
}

Poly Poly::var(std::size_t i, uint32_t e) {
  Poly p;
  p.terms_[Monomial::var(i, e)] = 1;
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rat& c) {
  Poly p;
  if (c != 0) p.terms_[m] = c;
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat Poly::constant_value() const {
  auto it = terms_.find(Monomial::one());
  return it == terms_.end() ? Rat(0) : it->second;
}

uint32_t Poly::degree_in(std::size_t var) const {
  uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.deg_in(var));
  return d;
}

uint32_t Poly::total_degree() const {
  uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

long Poly::max_var() const {
  long mv = -1;
  for (const auto& [m, c] : terms_)
    mv = std::max(mv, static_cast<long>(m.exp.size()) - 1);
  return mv;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
  return r;
}

Poly Poly::operator*(const Rat& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

Poly Poly::pow(uint32_t e) const {
  Poly r = Poly::constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

Poly Poly::formal_derivative(std::size_t var) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    uint32_t e = m.deg_in(var);
    if (e == 0) continue;
    Monomial m2 = m;
    m2.exp[var] -= 1;
    m2.trim();
    r.add_term(m2, c * e);
  }
  return r;
}

std::map<uint32_t, Poly> Poly::coeffs_in(std::size_t var) const {
  std::map<uint32_t, Poly> out;
  for (const auto& [m, c] : terms_) {
    uint32_t e = m.deg_in(var);
    Monomial m2 = m;
    if (e > 0) {
      m2.exp[var] = 0;
      m2.trim();
    }
    out[e].add_term(m2, c);
  }
  return out;
}

Poly Poly::rename_vars(const std::vector<std::size_t>& idx_map) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Monomial m2;
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
      if (m.exp[i] == 0) continue;
      std::size_t j = idx_map.at(i);
      if (m2.exp.size() <= j) m2.exp.resize(j + 1, 0);
      m2.exp[j] += m.exp[i];
    }
    m2.trim();
    r.add_term(m2, c);
  }
  return r;
}

bool Poly::try_exact_divide(const Poly& d, Poly& q) const {
  q = Poly();
  if (d.is_zero()) return false;
  Poly rem = *this;
  // leading term of d under the monomial order
  const auto& dl = *d.terms_.rbegin();
  while (!rem.is_zero()) {
    const auto& rl = *rem.terms_.rbegin();
    Monomial qm;
    if (!rl.first.try_divide(dl.first, qm)) return false;
    Rat qc = rl.second / dl.second;
    Poly t = Poly::monomial(qm, qc);
    q = q + t;
    rem = rem - t * d;
  }
  return true;
}

Rat Poly::extract_content() {
  if (terms_.empty()) return Rat(0);
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    num_gcd = boost::multiprecision::gcd(num_gcd, numerator(c));
    den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
  }
  Rat content(num_gcd, den_lcm);
  if (terms_.rbegin()->second < 0) content = -content;
  for (auto& [m, c] : terms_) c /= content;
  return content;
}

std::string Poly::to_string(
    const std::function<std::string(std::size_t)>& var_name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print highest terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat ac = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool coeff_shown = !(ac == 1) || m.is_one();
    if (coeff_shown) os << ac;
    bool need_star = coeff_shown;
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
      if (m.exp[i] == 0) continue;
      if (need_star) os << "*";
      os << var_name(i);
      if (m.exp[i] > 1) os << "^" << m.exp[i];
      need_star = true;
    }
  }
  return os.str();
}

Poly gcd_univariate(const Poly& a, const Poly& b, std::size_t var) {
  // classical euclidean algorithm on dense coefficient vectors
  auto to_vec = [&](const Poly& p) {
    std::vector<Rat> v(p.degree_in(var) + 1, Rat(0));
    for (const auto& [m, c] : p.terms()) v[m.deg_in(var)] = c;
    return v;
  };
  auto trim = [](std::vector<Rat>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  std::vector<Rat> u = to_vec(a), w = to_vec(b);
  trim(u);
  trim(w);
  while (!w.empty()) {
    // u mod w
    while (u.size() >= w.size() && !u.empty()) {
      Rat f = u.back() / w.back();
      std::size_t off = u.size() - w.size();
      for (std::size_t i = 0; i < w.size(); ++i) u[off + i] -= f * w[i];
      trim(u);
    }
    std::swap(u, w);
  }
  Poly g;
  if (u.empty()) return g;
  for (std::size_t i = 0; i < u.size(); ++i)
    g.add_term(Monomial::var(var, static_cast<uint32_t>(i)),
               u[i] / u.back());
  return g;
}

}  // namespace diffalg
