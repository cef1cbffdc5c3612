#include "fbdual/omega_elem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbdual/errors.hpp"

namespace fbd::exactnum {

namespace {

using Factors = std::vector<DenFactor>;

Poly make_k_squared() {
  return Poly::var(Var::k1) * Poly::var(Var::k1) + Poly::var(Var::k2) * Poly::var(Var::k2) +
         Poly::var(Var::k3) * Poly::var(Var::k3);
}

// Rank of a symmetric matrix over Q(i, sqrt2) by Gaussian elimination.
int symmetric_rank(std::vector<std::vector<Scalar>> a) {
  const std::size_t n = a.size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    const Scalar inv = a[row][col].inverse();
    for (std::size_t r = row + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const Scalar f = a[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

struct Refined {
  std::vector<Poly> polys;
  std::vector<bool> irr;
  std::vector<int> ea, eb;

  void push(Poly p, bool irreducible, int a, int b) {
    polys.push_back(std::move(p));
    irr.push_back(irreducible);
    ea.push_back(a);
    eb.push_back(b);
  }
  void erase(std::size_t j) {
    polys.erase(polys.begin() + static_cast<long>(j));
    irr.erase(irr.begin() + static_cast<long>(j));
    ea.erase(ea.begin() + static_cast<long>(j));
    eb.erase(eb.begin() + static_cast<long>(j));
  }
};

// Common refinement of two factorizations into pairwise coprime monic factors;
// ea/eb give the exponents of each refined factor in the two inputs.
Refined refine(const Factors& a, const Factors& b) {
  Refined r;
  for (const auto& f : a) r.push(f.poly, f.irreducible, f.exp, 0);
  for (const auto& f : b) r.push(f.poly, f.irreducible, 0, f.exp);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < r.polys.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < r.polys.size() && !changed; ++j) {
        if (r.polys[i] == r.polys[j]) {
          r.ea[i] += r.ea[j];
          r.eb[i] += r.eb[j];
          r.erase(j);
          changed = true;
          break;
        }
        if (r.irr[i] && r.irr[j]) continue;
        Poly h = gcd(r.polys[i], r.polys[j]);
        if (h.is_one()) continue;
        Poly fi = *r.polys[i].divide_exact(h);
        Poly fj = *r.polys[j].divide_exact(h);
        const int ai = r.ea[i], bi = r.eb[i], aj = r.ea[j], bj = r.eb[j];
        r.irr[i] = certified_irreducible(h);
        r.polys[i] = std::move(h);
        r.ea[i] = ai + aj;
        r.eb[i] = bi + bj;
        if (fi.is_constant()) {
          r.erase(j);
        } else {
          r.irr[j] = certified_irreducible(fi);
          r.polys[j] = std::move(fi);
          r.ea[j] = ai;
          r.eb[j] = bi;
        }
        if (!fj.is_constant()) {
          const bool irr = certified_irreducible(fj);
          r.push(std::move(fj), irr, aj, bj);
        }
        changed = true;
      }
    }
  }
  return r;
}

Poly product(const Factors& den) {
  Poly r(1);
  for (const auto& f : den) r = r * f.poly.pow(f.exp);
  return r;
}

bool same_factors(const Factors& a, const Factors& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].exp != b[i].exp || !(a[i].poly == b[i].poly)) return false;
  return true;
}

// Cancels common factors of (p, q) against the denominator and sorts it.
void reduce(Poly& p, Poly& q, Factors& den) {
  if (p.is_zero() && q.is_zero()) {
    den.clear();
    return;
  }
  bool restart = true;
  while (restart) {
    restart = false;
    for (std::size_t idx = 0; idx < den.size(); ++idx) {
      DenFactor& f = den[idx];
      while (f.exp > 0) {
        auto dp = p.divide_exact(f.poly);
        if (!dp) break;
        auto dq = q.divide_exact(f.poly);
        if (!dq) break;
        p = std::move(*dp);
        q = std::move(*dq);
        --f.exp;
      }
      if (f.exp == 0 || f.irreducible) continue;
      Poly g = p.is_zero() ? f.poly : gcd(f.poly, p);
      if (g.is_one()) continue;
      if (!q.is_zero()) g = gcd(g, q);
      if (g.is_one()) continue;
      // A proper factor g of f divides the numerator: split f and retry.
      Poly rest = *f.poly.divide_exact(g);
      Factors split{{g, f.exp, certified_irreducible(g)}, {rest, f.exp, certified_irreducible(rest)}};
      den.erase(den.begin() + static_cast<long>(idx));
      Refined r = refine(den, split);
      den.clear();
      for (std::size_t i = 0; i < r.polys.size(); ++i)
        den.push_back({r.polys[i], r.ea[i] + r.eb[i], r.irr[i]});
      restart = true;
      break;
    }
  }
  std::erase_if(den, [](const DenFactor& f) { return f.exp == 0; });
  std::sort(den.begin(), den.end(), [](const DenFactor& a, const DenFactor& b) { return a.poly < b.poly; });
}

// Splits off repeated factors using gcd with a derivative.
Factors split_powers(const Poly& n) {
  if (n.is_constant()) return {};
  for (int vi = 0; vi < kNumVars; ++vi) {
    const Var v = static_cast<Var>(vi);
    if (!n.depends_on(v)) continue;
    Poly g = gcd(n, n.derivative(v));
    if (g.is_one()) break;
    Factors out = split_powers(g);
    Factors rest = split_powers(*n.divide_exact(g));
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  Poly m = n.monic();
  const bool irr = certified_irreducible(m);
  return {{std::move(m), 1, irr}};
}

}  // namespace

bool certified_irreducible(const Poly& p) {
  const int deg = p.total_degree();
  if (deg == 1) return true;
  if (deg != 2) return false;
  // Homogenize with an extra variable; a quadratic form of rank >= 3 does not
  // split into linear factors.
  constexpr int n = kNumVars + 1;
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
  for (const auto& t : p.terms()) {
    std::vector<int> idx;
    for (int v = 0; v < kNumVars; ++v)
      for (int e = 0; e < t.mono.exp(static_cast<Var>(v)); ++e) idx.push_back(v);
    while (idx.size() < 2) idx.push_back(kNumVars);
    if (idx[0] == idx[1]) {
      a[idx[0]][idx[0]] += t.coef;
    } else {
      const Scalar half = t.coef * Scalar::rational(1, 2);
      a[idx[0]][idx[1]] += half;
      a[idx[1]][idx[0]] += half;
    }
  }
  return symmetric_rank(std::move(a)) >= 3;
}

const Poly& OmegaElem::k_squared() {
  static const Poly k2 = make_k_squared();
  return k2;
}

const Poly& OmegaElem::omega_squared() {
  static const Poly w2 = make_k_squared() + Poly::var(Var::m) * Poly::var(Var::m);
  return w2;
}

OmegaElem::OmegaElem(Poly p, Poly q, std::vector<DenFactor> den) : p_(std::move(p)), q_(std::move(q)) {
  Factors clean;
  for (auto& f : den) {
    if (f.poly.is_zero()) throw DivisionByZero("zero denominator factor");
    if (f.exp == 0) continue;
    if (f.exp < 0) {
      const Poly m = f.poly.pow(-f.exp);
      p_ = p_ * m;
      q_ = q_ * m;
      continue;
    }
    const Scalar inv_lc = f.poly.leading().coef.inverse();
    Scalar s(1);
    for (int e = 0; e < f.exp; ++e) s = s * inv_lc;
    p_ = p_.scaled(s);
    q_ = q_.scaled(s);
    if (f.poly.is_constant()) continue;
    for (auto& g : split_powers(f.poly)) {
      g.exp *= f.exp;
      clean.push_back(std::move(g));
    }
  }
  Refined r = refine(clean, {});
  for (std::size_t i = 0; i < r.polys.size(); ++i) den_.push_back({r.polys[i], r.ea[i], r.irr[i]});
  reduce(p_, q_, den_);
}

Poly OmegaElem::denominator_poly() const { return product(den_); }

std::optional<Scalar> OmegaElem::as_scalar() const {
  if (!q_.is_zero() || !den_.empty() || !p_.is_constant()) return std::nullopt;
  return p_.constant_value();
}

OmegaElem OmegaElem::operator-() const {
  OmegaElem r = *this;
  r.p_ = -r.p_;
  r.q_ = -r.q_;
  return r;
}

OmegaElem& OmegaElem::operator+=(const OmegaElem& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (same_factors(den_, o.den_)) {
    p_ += o.p_;
    q_ += o.q_;
    reduce(p_, q_, den_);
    return *this;
  }
  Refined r = refine(den_, o.den_);
  Poly ma(1), mb(1);
  Factors den;
  for (std::size_t i = 0; i < r.polys.size(); ++i) {
    const int e = std::max(r.ea[i], r.eb[i]);
    if (e > r.ea[i]) ma = ma * r.polys[i].pow(e - r.ea[i]);
    if (e > r.eb[i]) mb = mb * r.polys[i].pow(e - r.eb[i]);
    den.push_back({r.polys[i], e, r.irr[i]});
  }
  p_ = p_ * ma + o.p_ * mb;
  q_ = q_ * ma + o.q_ * mb;
  den_ = std::move(den);
  reduce(p_, q_, den_);
  return *this;
}

OmegaElem operator*(const OmegaElem& a, const OmegaElem& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (auto s = b.as_scalar()) {
    OmegaElem r = a;
    r.p_ = r.p_.scaled(*s);
    r.q_ = r.q_.scaled(*s);
    return r;
  }
  if (auto s = a.as_scalar()) return b * a;
  OmegaElem r;
  r.p_ = a.p_ * b.p_;
  if (!a.q_.is_zero() && !b.q_.is_zero()) r.p_ += a.q_ * b.q_ * OmegaElem::omega_squared();
  r.q_ = a.p_ * b.q_ + a.q_ * b.p_;
  if (a.den_.empty()) {
    r.den_ = b.den_;
  } else if (b.den_.empty()) {
    r.den_ = a.den_;
  } else {
    Refined ref = refine(a.den_, b.den_);
    for (std::size_t i = 0; i < ref.polys.size(); ++i)
      r.den_.push_back({ref.polys[i], ref.ea[i] + ref.eb[i], ref.irr[i]});
  }
  if (!r.den_.empty()) reduce(r.p_, r.q_, r.den_);
  return r;
}

OmegaElem OmegaElem::inverse() const {
  Poly norm = p_ * p_;
  if (!q_.is_zero()) norm -= q_ * q_ * omega_squared();
  if (norm.is_zero()) throw DivisionByZero("inverse of an element with vanishing norm: " + to_string());
  const Poly d = product(den_);
  Poly np = d * p_;
  Poly nq = -(d * q_);
  if (norm.is_constant()) {
    const Scalar inv = norm.constant_value().inverse();
    return OmegaElem(np.scaled(inv), nq.scaled(inv));
  }
  // Strip the known irreducibles first; norms of the elements that occur in
  // practice are products of these and the existing denominator factors.
  const Scalar lc = norm.leading().coef;
  norm = norm.monic();
  Factors den;
  auto strip = [&](const Poly& f, bool irr) {
    int e = 0;
    while (!norm.is_constant()) {
      auto q = norm.divide_exact(f);
      if (!q) break;
      norm = std::move(*q);
      ++e;
    }
    if (e > 0) den.push_back({f, e, irr});
  };
  strip(k_squared(), true);
  strip(omega_squared(), true);
  for (const auto& f : den_)
    if (f.irreducible) strip(f.poly, true);
  if (!norm.is_constant()) den.push_back({norm, 1, false});
  const Scalar inv = lc.inverse();
  return OmegaElem(np.scaled(inv), nq.scaled(inv), std::move(den));
}

OmegaElem OmegaElem::differentiate(Var v) const {
  const Poly dw2 = omega_squared().derivative(v);
  // d omega = dw2 * omega / (2 omega^2)
  OmegaElem dnum(p_.derivative(v), q_.derivative(v));
  if (!q_.is_zero() && !dw2.is_zero())
    dnum += OmegaElem(Poly{}, q_ * dw2.scaled(Scalar::rational(1, 2)), {{omega_squared(), 1, true}});
  if (den_.empty()) return dnum;
  // d(N/D) = (N' - N * sum e_i f_i'/f_i) / D
  OmegaElem log_d;
  for (const auto& f : den_) {
    Poly df = f.poly.derivative(v);
    if (df.is_zero()) continue;
    log_d += OmegaElem(df.scaled(Scalar(f.exp)), Poly{}, {{f.poly, 1, f.irreducible}});
  }
  const OmegaElem num(p_, q_);
  const OmegaElem inv_d(Poly(1), Poly{}, den_);
  return (dnum - num * log_d) * inv_d;
}

OmegaElem OmegaElem::conj() const {
  Factors den;
  for (const auto& f : den_) den.push_back({f.poly.conj(), f.exp, f.irreducible});
  return OmegaElem(p_.conj(), q_.conj(), std::move(den));
}

OmegaElem OmegaElem::conj_reflect() const {
  Factors den;
  for (const auto& f : den_) den.push_back({f.poly.conj().reflect_k(), f.exp, f.irreducible});
  return OmegaElem(p_.conj().reflect_k(), q_.conj().reflect_k(), std::move(den));
}

namespace {

bool vanishes_at(const Poly& f, const Point& pt) {
  double scale = 0.0;
  for (const auto& t : f.terms()) scale += std::abs(Poly::monomial(t.mono, t.coef).eval(pt));
  return std::abs(f.eval(pt)) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

std::complex<double> OmegaElem::eval(const Point& pt) const {
  if (!(pt.m > 0.0)) throw EvalSingularity("evaluation requires m > 0");
  const double w = std::sqrt(pt.k[0] * pt.k[0] + pt.k[1] * pt.k[1] + pt.k[2] * pt.k[2] + pt.m * pt.m);
  const auto* bad = static_cast<const DenFactor*>(nullptr);
  for (const auto& f : den_)
    if (vanishes_at(f.poly, pt)) bad = &f;
  std::complex<double> num = p_.eval(pt);
  if (!q_.is_zero()) num += q_.eval(pt) * w;
  if (bad == nullptr) {
    std::complex<double> den = 1.0;
    for (const auto& f : den_) den *= std::pow(f.poly.eval(pt), f.exp);
    return num / den;
  }
  // Removable singularity left by rationalization: rewrite as
  // (p^2 - q^2 omega^2) / (D (p - q omega)) and cancel D against the norm.
  Poly norm = p_ * p_ - q_ * q_ * omega_squared();
  std::complex<double> den = p_.eval(pt) - q_.eval(pt) * w;
  for (const auto& f : den_) {
    int e = f.exp;
    while (e > 0) {
      auto q = norm.divide_exact(f.poly);
      if (!q) break;
      norm = std::move(*q);
      --e;
    }
    if (e > 0 && vanishes_at(f.poly, pt))
      throw EvalSingularity("denominator factor " + f.poly.to_string() + " vanishes at the point");
    den *= std::pow(f.poly.eval(pt), e);
  }
  if (std::abs(den) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(num)))
    throw EvalSingularity("denominator factor " + bad->poly.to_string() + " vanishes at the point");
  return norm.eval(pt) / den;
}

std::string OmegaElem::to_string() const {
  std::string num;
  if (q_.is_zero()) {
    num = p_.to_string();
  } else {
    std::string qs;
    if (q_.is_one()) {
      qs = "omega";
    } else if ((-q_).is_one()) {
      qs = "-omega";
    } else {
      qs = "(" + q_.to_string() + ")*omega";
    }
    num = p_.is_zero() ? qs : p_.to_string() + " + " + qs;
  }
  if (den_.empty()) return num;
  std::string den;
  for (const auto& f : den_) {
    if (!den.empty()) den += "*";
    den += "(" + f.poly.to_string() + ")";
    if (f.exp > 1) den += "^" + std::to_string(f.exp);
  }
  return "(" + num + ")/" + den;
}

double Radical::eval(const Point& pt) const {
  const std::complex<double> v = radicand.eval(pt);
  if (v.real() < 0.0 || std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
    throw EvalSingularity("radicand is not a non-negative real at the point");
  return std::sqrt(v.real());
}

OmegaElem arith(const OmegaElem& a, const OmegaElem& b, char op) {
  switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    case '/': return a / b;
  }
  throw Error(std::string("unknown arithmetic operator '") + op + "'");
}

}  // namespace fbd::exactnum
