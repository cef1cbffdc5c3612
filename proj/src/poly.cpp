#include "fbdual/poly.hpp"

#include <algorithm>
#include <cmath>

#include "fbdual/errors.hpp"

namespace fbd::exactnum {

namespace {

constexpr std::array<Var, kNumVars> kAllVars{Var::k1, Var::k2, Var::k3, Var::m, Var::t};

using Term = Poly::Term;

bool desc(const Poly::Term& a, const Poly::Term& b) { return a.mono > b.mono; }

}  // namespace

const char* var_name(Var v) {
  switch (v) {
    case Var::k1: return "k1";
    case Var::k2: return "k2";
    case Var::k3: return "k3";
    case Var::m: return "m";
    case Var::t: return "t";
  }
  return "?";
}

int Monomial::total_degree() const {
  int d = 0;
  for (Var v : kAllVars) d += exp(v);
  return d;
}

bool Monomial::divides(Monomial o) const {
  for (Var v : kAllVars)
    if (exp(v) > o.exp(v)) return false;
  return true;
}

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Poly Poly::monomial(Monomial m, Scalar c) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), desc);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  return p;
}

Scalar Poly::constant_value() const {
  if (terms_.empty()) return Scalar(0);
  if (terms_.back().mono.is_one()) return terms_.back().coef;
  return Scalar(0);
}

int Poly::degree(Var v) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exp(v));
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->mono > j->mono)) {
      out.push_back(std::move(*i++));
    } else if (i == terms_.end() || j->mono > i->mono) {
      out.push_back(*j++);
    } else {
      Scalar c = std::move(i->coef);
      c += j->coef;
      if (!c.is_zero()) out.push_back({i->mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b.scaled(a.terms_[0].coef);
  if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) return a.scaled(b.terms_[0].coef);
  std::vector<Poly::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back({x.mono * y.mono, x.coef * y.coef});
  return Poly::from_terms(std::move(prod));
}

Poly Poly::scaled(const Scalar& c) const {
  if (c.is_zero()) return {};
  if (c.is_one()) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = t.coef * c;
  return r;
}

Poly Poly::times_monomial(Monomial m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  return r;
}

Poly Poly::pow(int n) const {
  Poly r(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Poly{};
  if (d.is_constant()) return scaled(d.constant_value().inverse());
  const Term& lt = d.leading();
  const Scalar lc_inv = lt.coef.inverse();
  Poly rem = *this;
  std::vector<Term> quot;
  while (!rem.is_zero()) {
    const Term& r0 = rem.leading();
    if (!lt.mono.divides(r0.mono)) return std::nullopt;
    Term q{r0.mono / lt.mono, r0.coef * lc_inv};
    rem -= d.times_monomial(q.mono).scaled(q.coef);
    quot.push_back(std::move(q));
  }
  return Poly::from_terms(std::move(quot));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return scaled(leading().coef.inverse());
}

Poly Poly::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const int e = t.mono.exp(v);
    if (e == 0) continue;
    out.push_back({t.mono.with(v, e - 1), t.coef * Scalar(e)});
  }
  return from_terms(std::move(out));
}

Poly Poly::conj() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = t.coef.conj();
  return r;
}

Poly Poly::reflect_k() const {
  Poly r = *this;
  for (auto& t : r.terms_)
    if (t.mono.k_degree() % 2 == 1) t.coef = -t.coef;
  return r;
}

std::map<int, Poly> Poly::coefficients_in(Var v) const {
  std::map<int, std::vector<Term>> buckets;
  for (const auto& t : terms_) buckets[t.mono.exp(v)].push_back({t.mono.with(v, 0), t.coef});
  std::map<int, Poly> out;
  for (auto& [e, ts] : buckets) out.emplace(e, from_terms(std::move(ts)));
  return out;
}

std::complex<double> Poly::eval(const Point& p) const {
  const std::array<double, kNumVars> x{p.k[0], p.k[1], p.k[2], p.m, p.t};
  std::complex<double> acc = 0.0;
  for (const auto& t : terms_) {
    double mv = 1.0;
    for (int i = 0; i < kNumVars; ++i) {
      const int e = t.mono.exp(static_cast<Var>(i));
      for (int k = 0; k < e; ++k) mv *= x[i];
    }
    acc += t.coef.to_complex() * mv;
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono;
    for (Var v : kAllVars) {
      const int e = t.mono.exp(v);
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    std::string c = t.coef.to_string();
    const bool compound = c.find(' ') != std::string::npos;
    if (compound) c = "(" + c + ")";
    bool neg = false;
    if (!compound && c.front() == '-') {
      neg = true;
      c.erase(0, 1);
    }
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      out += c;
    } else if (c == "1") {
      out += mono;
    } else {
      out += c + "*" + mono;
    }
  }
  return out;
}

bool operator<(const Poly& a, const Poly& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono) return a.terms_[i].mono < b.terms_[i].mono;
    if (auto c = a.terms_[i].coef <=> b.terms_[i].coef; c != 0) return c < 0;
  }
  return a.terms_.size() < b.terms_.size();
}

// ---------------------------------------------------------------------------
// GCD: recursive primitive polynomial remainder sequences. Coefficients lie in
// a field, so every constant is a unit and results are normalized monic.

namespace {

Poly poly_from_coeffs(const std::map<int, Poly>& cs, Var v) {
  std::vector<Poly::Term> out;
  for (const auto& [e, c] : cs)
    for (const auto& t : c.terms()) out.push_back({t.mono.with(v, e), t.coef});
  return Poly::from_terms(std::move(out));
}

Poly content_in(const Poly& p, Var v) {
  Poly g;
  for (const auto& [e, c] : p.coefficients_in(v)) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: inexact division in gcd");
  return *std::move(q);
}

Poly primitive_part(const Poly& p, Var v) {
  if (p.is_zero()) return p;
  return exact(p, content_in(p, v)).monic();
}

// Substitutes integer values for every variable except `keep`.
Poly specialize(const Poly& p, Var keep, const std::array<long, kNumVars>& vals) {
  std::vector<Poly::Term> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    mpz_class f = 1;
    for (Var v : kAllVars) {
      if (v == keep) continue;
      mpz_class x;
      mpz_pow_ui(x.get_mpz_t(), mpz_class(vals[static_cast<int>(v)]).get_mpz_t(),
                 static_cast<unsigned long>(t.mono.exp(v)));
      f *= x;
    }
    out.push_back({Monomial::var(keep, t.mono.exp(keep)), t.coef * Scalar(Rational(f))});
  }
  return Poly::from_terms(std::move(out));
}

Poly univariate_gcd(Poly a, Poly b) {
  if (a.total_degree() < b.total_degree()) std::swap(a, b);
  while (!b.is_zero()) {
    const Term& lb = b.leading();
    const Scalar inv = lb.coef.inverse();
    while (!a.is_zero() && a.total_degree() >= b.total_degree()) {
      const Term& la = a.leading();
      a -= b.times_monomial(la.mono / lb.mono).scaled(la.coef * inv);
    }
    std::swap(a, b);
  }
  return a.monic();
}

// Sufficient test for gcd(a, b) = 1. A nontrivial common factor depends on
// some variable v shared by a and b, and keeps its v-degree under any
// specialization of the other variables that does not kill lc_v(a).
bool certainly_coprime(const Poly& a, const Poly& b) {
  static constexpr std::array<long, kNumVars> kVals{7, -11, 13, 5, 3};
  static constexpr std::array<long, kNumVars> kAlt{-17, 19, 23, -29, 31};
  for (Var v : kAllVars) {
    if (!a.depends_on(v) || !b.depends_on(v)) continue;
    bool ok = false;
    for (const auto* vals : {&kVals, &kAlt}) {
      const Poly sa = specialize(a, v, *vals), sb = specialize(b, v, *vals);
      if (sa.degree(v) != a.degree(v)) continue;
      if (!univariate_gcd(sa, sb).is_constant()) return false;
      ok = true;
      break;
    }
    if (!ok) return false;
  }
  return true;
}

// Pseudo-remainder of a by b with respect to v (up to a constant factor).
Poly prem(Poly a, const Poly& b, Var v) {
  const int db = b.degree(v);
  const auto bc = b.coefficients_in(v);
  const Poly& lcb = bc.rbegin()->second;
  std::map<int, Poly> b_rest = bc;
  b_rest.erase(db);
  const Poly b_tail = poly_from_coeffs(b_rest, v);
  while (!a.is_zero() && a.degree(v) >= db) {
    const int da = a.degree(v);
    auto ac = a.coefficients_in(v);
    Poly lca = ac.rbegin()->second;
    ac.erase(da);
    Poly a_tail = poly_from_coeffs(ac, v);
    // a <- lcb * a_tail - lca * v^(da-db) * b_tail
    a = lcb * a_tail - (lca * b_tail).times_monomial(Monomial::var(v, da - db));
  }
  return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();
  if (auto q = a.divide_exact(b)) return b.monic();
  if (auto q = b.divide_exact(a)) return a.monic();
  if (certainly_coprime(a, b)) return Poly(1);

  for (Var v : kAllVars) {
    const bool in_a = a.depends_on(v), in_b = b.depends_on(v);
    if (!in_a && !in_b) continue;
    if (in_a && !in_b) return gcd(content_in(a, v), b);
    if (!in_a && in_b) return gcd(a, content_in(b, v));

    const Poly ca = content_in(a, v), cb = content_in(b, v);
    const Poly c = gcd(ca, cb);
    Poly pa = exact(a, ca), pb = exact(b, cb);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    Poly g;
    while (true) {
      Poly r = prem(pa, pb, v);
      if (r.is_zero()) {
        g = pb;
        break;
      }
      if (r.degree(v) == 0) {
        g = Poly(1);
        break;
      }
      pa = std::move(pb);
      pb = primitive_part(r, v);
    }
    return (c * primitive_part(g, v)).monic();
  }
  return Poly(1);
}

}  // namespace fbd::exactnum
