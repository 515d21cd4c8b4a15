#include "ucred/rational_function.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <mutex>
#include <optional>
#include <ostream>
#include <unordered_map>

#include "ucred/errors.hpp"

namespace ucred {

namespace {

struct FactorEntry {
  LaurentPoly poly;
  std::array<std::optional<LaurentPoly>, kMaxVars> d;
};

class FactorTable {
 public:
  // Returns (unit, id) with p = unit * entry(id).
  std::pair<LaurentPoly, RationalFunction::FactorId> intern(const LaurentPoly& p) {
    const Term& lead = p.leading_term();
    LaurentPoly unit(lead.mono, lead.coeff);
    LaurentPoly normal = p.div_monomial(unit);
    std::size_t h = normal.hash();
    std::lock_guard lock(mu_);
    auto [lo, hi] = index_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (entries_[it->second].poly == normal) return {unit, it->second};
    auto id = static_cast<RationalFunction::FactorId>(entries_.size());
    entries_.push_back(FactorEntry{std::move(normal), {}});
    index_.emplace(h, id);
    return {unit, id};
  }

  const LaurentPoly& get(RationalFunction::FactorId id) {
    std::lock_guard lock(mu_);
    return entries_.at(id).poly;
  }

  const LaurentPoly& deriv(RationalFunction::FactorId id, int v) {
    std::lock_guard lock(mu_);
    FactorEntry& e = entries_.at(id);
    if (!e.d[v]) e.d[v] = derivative(e.poly, v);
    return *e.d[v];
  }

  std::size_t size() {
    std::lock_guard lock(mu_);
    return entries_.size();
  }

 private:
  std::mutex mu_;
  std::deque<FactorEntry> entries_;  // stable references
  std::unordered_multimap<std::size_t, RationalFunction::FactorId> index_;
};

FactorTable& table() {
  static FactorTable t;
  return t;
}

LaurentPoly expand(const RationalFunction::FactorList& fl) {
  LaurentPoly out(1);
  for (auto [id, e] : fl) out *= table().get(id).pow(static_cast<unsigned>(e));
  return out;
}

}  // namespace

namespace factor_table {
std::size_t size() { return table().size(); }
const LaurentPoly& get(RationalFunction::FactorId id) { return table().get(id); }
}  // namespace factor_table

RationalFunction RationalFunction::factor(const LaurentPoly& p) {
  if (p.size() <= 1) return RationalFunction(p);
  auto [unit, id] = table().intern(p);
  RationalFunction out(unit);
  out.fac_.emplace_back(id, 1);
  return out;
}

bool RationalFunction::has_trivial_denominator() const {
  return std::all_of(fac_.begin(), fac_.end(), [](const auto& f) { return f.second > 0; });
}

LaurentPoly RationalFunction::numerator() const {
  LaurentPoly out = num_;
  for (auto [id, e] : fac_)
    if (e > 0) out *= table().get(id).pow(static_cast<unsigned>(e));
  return out;
}

LaurentPoly RationalFunction::denominator() const {
  LaurentPoly out(1);
  for (auto [id, e] : fac_)
    if (e < 0) out *= table().get(id).pow(static_cast<unsigned>(-e));
  return out;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  FactorList common, left_a, left_b;
  std::size_t i = 0, j = 0;
  while (i < fac_.size() || j < o.fac_.size()) {
    FactorId id;
    int ea = 0, eb = 0;
    if (j == o.fac_.size() || (i < fac_.size() && fac_[i].first < o.fac_[j].first)) {
      id = fac_[i].first;
      ea = fac_[i++].second;
    } else if (i == fac_.size() || o.fac_[j].first < fac_[i].first) {
      id = o.fac_[j].first;
      eb = o.fac_[j++].second;
    } else {
      id = fac_[i].first;
      ea = fac_[i++].second;
      eb = o.fac_[j++].second;
    }
    int lo = std::min(ea, eb);
    if (lo != 0) common.emplace_back(id, lo);
    if (ea > lo) left_a.emplace_back(id, ea - lo);
    if (eb > lo) left_b.emplace_back(id, eb - lo);
  }
  LaurentPoly na = left_a.empty() ? num_ : num_ * expand(left_a);
  LaurentPoly nb = left_b.empty() ? o.num_ : o.num_ * expand(left_b);
  num_ = std::move(na) + nb;
  if (num_.is_zero()) {
    fac_.clear();
  } else {
    fac_ = std::move(common);
  }
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RationalFunction();
  num_ *= o.num_;
  FactorList out;
  out.reserve(fac_.size() + o.fac_.size());
  std::size_t i = 0, j = 0;
  while (i < fac_.size() || j < o.fac_.size()) {
    if (j == o.fac_.size() || (i < fac_.size() && fac_[i].first < o.fac_[j].first)) {
      out.push_back(fac_[i++]);
    } else if (i == fac_.size() || o.fac_[j].first < fac_[i].first) {
      out.push_back(o.fac_[j++]);
    } else {
      int e = fac_[i].second + o.fac_[j].second;
      if (e != 0) out.emplace_back(fac_[i].first, e);
      ++i;
      ++j;
    }
  }
  fac_ = std::move(out);
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw PreconditionError("division by the zero rational function");
  RationalFunction inv;
  if (o.num_.is_monomial()) {
    const Term& t = o.num_.leading_term();
    inv.num_ = LaurentPoly(t.mono.inverse(), Rational(1) / t.coeff);
  } else {
    auto [unit, id] = table().intern(o.num_);
    const Term& t = unit.leading_term();
    inv.num_ = LaurentPoly(t.mono.inverse(), Rational(1) / t.coeff);
    inv.fac_.emplace_back(id, -1);
  }
  RationalFunction rest;
  rest.num_ = LaurentPoly(1);
  for (auto [id, e] : o.fac_) rest.fac_.emplace_back(id, -e);
  inv *= rest;
  return *this *= inv;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return RationalFunction(1) / pow(-e);
  RationalFunction result(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

double RationalFunction::evaluate(std::span<const double> x) const {
  double v = num_.evaluate(x);
  for (auto [id, e] : fac_) v *= std::pow(table().get(id).evaluate(x), e);
  return v;
}

Rational RationalFunction::evaluate(std::span<const Rational> x) const {
  Rational v = num_.evaluate(x);
  for (auto [id, e] : fac_) {
    Rational fv = table().get(id).evaluate(x);
    if (fv.is_zero() && e < 0) throw SingularityError("rational function denominator vanishes at the evaluation point");
    v *= ucred::pow(fv, e);
  }
  return v;
}

RationalFunction RationalFunction::substitute(int v, const Rational& value) const {
  RationalFunction out(num_.substitute(v, value));
  for (auto [id, e] : fac_) {
    const LaurentPoly& f = table().get(id);
    RationalFunction part = f.depends_on(v) ? factor(f.substitute(v, value)) : [&] {
      RationalFunction r(1);
      r.fac_.emplace_back(id, 1);
      return r;
    }();
    if (part.is_zero() && e < 0) throw SingularityError("substitution makes a denominator vanish");
    out *= part.pow(e);
  }
  return out;
}

std::string RationalFunction::str() const {
  LaurentPoly d = denominator();
  if (d == LaurentPoly(1)) return numerator().str();
  return "(" + numerator().str() + ")/(" + d.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

RationalFunction derivative(const RationalFunction& f, int i) {
  if (f.is_zero()) return {};
  // f = N * prod F_k^{e_k}; with S the factors that depend on t_i,
  // f' = prod F^{e - [k in S]} * (N' prod_S F + N sum_{k in S} e_k F_k' prod_{S\k} F).
  const auto& fl = f.factors();
  std::vector<std::size_t> dep;
  for (std::size_t k = 0; k < fl.size(); ++k)
    if (!table().deriv(fl[k].first, i).is_zero()) dep.push_back(k);
  const LaurentPoly& n = f.core_numerator();
  LaurentPoly total = derivative(n, i);
  for (std::size_t k : dep) total *= table().get(fl[k].first);
  for (std::size_t a = 0; a < dep.size(); ++a) {
    LaurentPoly term = n * table().deriv(fl[dep[a]].first, i) * Rational(fl[dep[a]].second);
    for (std::size_t b = 0; b < dep.size(); ++b)
      if (b != a) term *= table().get(fl[dep[b]].first);
    total += term;
  }
  RationalFunction out(total);
  RationalFunction rest(1);
  for (std::size_t k = 0; k < fl.size(); ++k) {
    bool is_dep = std::find(dep.begin(), dep.end(), k) != dep.end();
    int e = fl[k].second - (is_dep ? 1 : 0);
    if (e == 0) continue;
    rest *= RationalFunction::factor(table().get(fl[k].first)).pow(e);
  }
  return out * rest;
}

RationalFunction euler_apply(const RationalFunction& f, int nvars) {
  RationalFunction out;
  for (int v = 0; v < nvars; ++v) out += RationalFunction::var(v) * derivative(f, v);
  return out;
}

bool try_divide(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quotient) {
  if (b.is_zero()) throw PreconditionError("try_divide by zero");
  if (b.is_monomial()) {
    quotient = a.div_monomial(b);
    return true;
  }
  quotient = LaurentPoly();
  if (a.is_zero()) return true;
  std::array<int, kMaxVars> lo{}, hi{};
  auto bounds = [](const LaurentPoly& p, std::array<int, kMaxVars>& mn, std::array<int, kMaxVars>& mx) {
    mn.fill(1 << 20);
    mx.fill(-(1 << 20));
    for (const auto& t : p.terms())
      for (int v = 0; v < kMaxVars; ++v) {
        mn[v] = std::min(mn[v], t.mono.exponent(v));
        mx[v] = std::max(mx[v], t.mono.exponent(v));
      }
  };
  std::array<int, kMaxVars> amn, amx, bmn, bmx;
  bounds(a, amn, amx);
  bounds(b, bmn, bmx);
  for (int v = 0; v < kMaxVars; ++v) {
    lo[v] = amn[v] - bmn[v];
    hi[v] = amx[v] - bmx[v];
    if (lo[v] > hi[v]) return false;
  }
  const Term& lead = b.leading_term();
  Rational inv = Rational(1) / lead.coeff;
  LaurentPoly r = a;
  std::vector<Term> q;
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    Monomial m = lt.mono / lead.mono;
    for (int v = 0; v < kMaxVars; ++v)
      if (m.exponent(v) < lo[v] || m.exponent(v) > hi[v]) return false;
    LaurentPoly qt(m, lt.coeff * inv);
    r -= qt * b;
    q.push_back(Term{m, qt.leading_term().coeff});
  }
  quotient = LaurentPoly::from_terms(std::move(q));
  return true;
}

}  // namespace ucred
