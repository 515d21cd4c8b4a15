#include "ucred/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ucred/errors.hpp"

namespace ucred {

namespace {

constexpr int kExpLimit = (1 << 15) - 1;

void check_var(int v) {
  if (v < 0 || v >= kMaxVars) throw PreconditionError("variable index out of range: " + std::to_string(v));
}

void check_exp(long e) {
  if (e < -kExpLimit || e > kExpLimit) throw PreconditionError("exponent out of range");
}

// Merges two sorted term lists, dropping cancelled coefficients.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono < b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono < a[i].mono) {
      out.push_back(negate_b ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Rational c = negate_b ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back(Term{a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Monomial Monomial::var(int v, int e) {
  check_var(v);
  check_exp(e);
  return Monomial().shifted(v, e);
}

Monomial Monomial::from_exponents(std::span<const int> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw PreconditionError("too many variables");
  Monomial m;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    check_exp(exps[v]);
    m = m.shifted(static_cast<int>(v), exps[v]);
  }
  return m;
}

std::array<int, kMaxVars> Monomial::exponents() const {
  std::array<int, kMaxVars> out{};
  for (int v = 0; v < kMaxVars; ++v) out[v] = exponent(v);
  return out;
}

int Monomial::total_degree() const {
  int d = 0;
  for (int v = 0; v < kMaxVars; ++v) d += exponent(v);
  return d;
}

int Monomial::top_var() const {
  for (int v = kMaxVars - 1; v >= 0; --v)
    if (exponent(v) != 0) return v;
  return -1;
}

Monomial Monomial::shifted(int v, int delta) const {
  check_exp(static_cast<long>(exponent(v)) + delta);
  Key d = static_cast<Key>(static_cast<std::uint16_t>(std::abs(delta))) << shift(v);
  return Monomial(delta >= 0 ? key_ + d : key_ - d);
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back(Term{Monomial(), c});
}

LaurentPoly::LaurentPoly(Monomial m, const Rational& c) {
  if (!c.is_zero()) terms_.push_back(Term{m, c});
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  LaurentPoly out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().mono == t.mono) {
      out.terms_.back().coeff += t.coeff;
      if (out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

Rational LaurentPoly::constant_term() const {
  for (const auto& t : terms_)
    if (t.mono.is_one()) return t.coeff;
  return Rational(0);
}

int LaurentPoly::top_var() const {
  int v = -1;
  for (const auto& t : terms_) v = std::max(v, t.mono.top_var());
  return v;
}

bool LaurentPoly::depends_on(int v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.exponent(v) != 0; });
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
  } else if (!c.is_one()) {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Monomial m) {
  for (auto& t : terms_) t.mono = t.mono * m;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& big = a.size() <= b.size() ? b : a;
  // Multiplying by a single term preserves term order, so the product is a
  // sum of sorted runs; merge them pairwise.
  std::vector<std::vector<Term>> runs;
  runs.reserve(small.size());
  for (const auto& s : small.terms()) {
    std::vector<Term> run;
    run.reserve(big.size());
    for (const auto& t : big.terms()) run.push_back(Term{t.mono * s.mono, t.coeff * s.coeff});
    runs.push_back(std::move(run));
  }
  while (runs.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((runs.size() + 1) / 2);
    for (std::size_t k = 0; k + 1 < runs.size(); k += 2) next.push_back(merge_terms(runs[k], runs[k + 1], false));
    if (runs.size() % 2) next.push_back(std::move(runs.back()));
    runs = std::move(next);
  }
  LaurentPoly out;
  out.terms_ = std::move(runs.front());
  return out;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (!(a.terms_[k].mono == b.terms_[k].mono) || a.terms_[k].coeff != b.terms_[k].coeff) return false;
  return true;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::div_monomial(const LaurentPoly& divisor) const {
  if (!divisor.is_monomial()) throw PreconditionError("div_monomial: divisor is not a single term");
  const Term& d = divisor.terms_.front();
  LaurentPoly out = *this;
  Rational inv = Rational(1) / d.coeff;
  for (auto& t : out.terms_) {
    t.mono = t.mono / d.mono;
    t.coeff *= inv;
  }
  return out;
}

double LaurentPoly::evaluate(std::span<const double> x) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.to_double();
    for (int k = 0; k < kMaxVars; ++k) {
      int e = t.mono.exponent(k);
      if (e == 0) continue;
      if (static_cast<std::size_t>(k) >= x.size()) throw PreconditionError("evaluate: missing variable value");
      v *= std::pow(x[k], e);
    }
    acc += v;
  }
  return acc;
}

Rational LaurentPoly::evaluate(std::span<const Rational> x) const {
  Rational acc(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (int k = 0; k < kMaxVars; ++k) {
      int e = t.mono.exponent(k);
      if (e == 0) continue;
      if (static_cast<std::size_t>(k) >= x.size()) throw PreconditionError("evaluate: missing variable value");
      v *= ucred::pow(x[k], e);
    }
    acc += v;
  }
  return acc;
}

LaurentPoly LaurentPoly::substitute(int v, const Rational& value) const {
  check_var(v);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    int e = t.mono.exponent(v);
    if (e == 0) {
      out.push_back(t);
    } else {
      out.push_back(Term{t.mono.shifted(v, -e), t.coeff * ucred::pow(value, e)});
    }
  }
  return from_terms(std::move(out));
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (first) {
      os << t.coeff.str();
    } else {
      os << (t.coeff.sign() < 0 ? " - " : " + ") << abs(t.coeff).str();
    }
    first = false;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = t.mono.exponent(v);
      if (e == 0) continue;
      os << "*t" << v;
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

namespace {

Term parse_term(std::string_view s, bool negative) {
  auto fail = [&](const char* why) { throw ConfigError(std::string("bad polynomial term '") + std::string(s) + "': " + why); };
  std::size_t star = s.find('*');
  Rational c = Rational::parse(s.substr(0, star));
  if (negative) c = -c;
  Monomial m;
  while (star != std::string_view::npos) {
    std::size_t next = s.find('*', star + 1);
    std::string_view f = s.substr(star + 1, next == std::string_view::npos ? std::string_view::npos : next - star - 1);
    if (f.size() < 2 || f[0] != 't') fail("expected t<k>");
    std::size_t caret = f.find('^');
    std::string idx(f.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1));
    if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos) fail("bad variable index");
    int v = std::stoi(idx);
    if (v >= kMaxVars) fail("variable index too large");
    int e = 1;
    if (caret != std::string_view::npos) {
      std::string es(f.substr(caret + 1));
      std::size_t used = 0;
      try {
        e = std::stoi(es, &used);
      } catch (const std::exception&) {
        fail("bad exponent");
      }
      if (used != es.size()) fail("bad exponent");
    }
    m = m.shifted(v, e);
    star = next;
  }
  return Term{m, c};
}

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ConfigError("empty polynomial text");
  if (text == "0") return {};
  std::vector<Term> terms;
  bool negative = false;
  std::size_t pos = 0;
  while (true) {
    std::size_t plus = text.find(" + ", pos);
    std::size_t minus = text.find(" - ", pos);
    std::size_t cut = std::min(plus, minus);
    terms.push_back(parse_term(text.substr(pos, cut == std::string_view::npos ? std::string_view::npos : cut - pos), negative));
    if (cut == std::string_view::npos) break;
    negative = (cut == minus);
    pos = cut + 3;
  }
  return from_terms(std::move(terms));
}

std::size_t LaurentPoly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& t : terms_) {
    auto k = t.mono.key();
    std::size_t hk = std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(k)) ^
                     (std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(k >> 64)) * 31u);
    h ^= hk + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= t.coeff.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

LaurentPoly derivative(const LaurentPoly& f, int i) {
  check_var(i);
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    int e = t.mono.exponent(i);
    if (e != 0) out.push_back(Term{t.mono.shifted(i, -1), t.coeff * Rational(e)});
  }
  return LaurentPoly::from_terms(std::move(out));
}

LaurentPoly hirota(int i, const LaurentPoly& f, const LaurentPoly& g) {
  return derivative(f, i) * g - f * derivative(g, i);
}

LaurentPoly hirota2(int i, int j, const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly fi = derivative(f, i), fj = derivative(f, j), gi = derivative(g, i), gj = derivative(g, j);
  return derivative(fi, j) * g - fi * gj - fj * gi + f * derivative(gi, j);
}

LaurentPoly euler_apply(const LaurentPoly& f, int nvars) {
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    int d = 0;
    for (int v = 0; v < nvars && v < kMaxVars; ++v) d += t.mono.exponent(v);
    if (d != 0) out.push_back(Term{t.mono, t.coeff * Rational(d)});
  }
  return LaurentPoly::from_terms(std::move(out));
}

}  // namespace ucred
