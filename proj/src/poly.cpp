#include "demazure/poly.hpp"

#include <algorithm>
#include <map>

namespace demazure {

namespace {

bool term_greater(const Poly::Term& a, const Poly::Term& b) { return a.mono > b.mono; }

}  // namespace

Poly Poly::constant(const Int& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({Mono{}, c});
  return p;
}

Poly Poly::monomial(const Mono& m, const Int& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    Int sum = std::move(terms_[i].coeff);
    while (j < terms_.size() && terms_[j].mono == terms_[i].mono) sum += terms_[j++].coeff;
    if (sum != 0) {
      terms_[out].mono = terms_[i].mono;
      terms_[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

Int Poly::constant_term() const {
  for (const auto& t : terms_)
    if (t.mono.is_one()) return t.coeff;
  return 0;
}

Mono Poly::min_exponents() const {
  Mono m;
  if (terms_.empty()) return m;
  m = terms_[0].mono;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(m.exp[i], t.mono.exp[i]);
  return m;
}

int Poly::total_degree() const {
  int best = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (auto e : t.mono.exp) d += e;
    best = std::max(best, d);
  }
  return best;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merges two descending-sorted term lists, b scaled by `sign`.
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                              int sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Int(-b[j].coeff)});
      ++j;
    } else {
      Int c = sign > 0 ? Int(a[i].coeff + b[j].coeff) : Int(a[i].coeff - b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, 1);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (small.size() <= 4) {
    // Shifted copies of `large` are already sorted; merge them.
    Poly r = large.mul_term(small.terms_[0].mono, small.terms_[0].coeff);
    for (std::size_t k = 1; k < small.size(); ++k)
      r.terms_ = merge(r.terms_, large.mul_term(small.terms_[k].mono, small.terms_[k].coeff).terms_, 1);
    return r;
  }
  std::vector<Poly::Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.push_back({x.mono * y.mono, x.coeff * y.coeff});
  return Poly::from_terms(std::move(out));
}

Poly Poly::mul_term(const Mono& m, const Int& c) const {
  if (c == 0) return {};
  Poly r;
  r.terms_.reserve(terms_.size());
  // Multiplying every monomial by a fixed one preserves the lex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(int k) const {
  Poly result = 1;
  Poly base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

Poly Poly::substitute(int var, const Poly& image) const {
  // Group terms by the exponent of `var`, then expand image powers once each.
  std::map<int, std::vector<Term>> groups;
  for (const auto& t : terms_) {
    Term rest = t;
    const int e = rest.mono.exp[var];
    rest.mono.exp[var] = 0;
    groups[e].push_back(std::move(rest));
  }
  Poly result;
  for (auto& [e, ts] : groups) {
    Poly rest = from_terms(std::move(ts));
    if (e < 0) throw std::logic_error("substitution into a negative power");
    result += rest * image.pow(e);
  }
  return result;
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& f, bool laurent) {
  if (f.is_zero()) return std::nullopt;
  if (p.is_zero()) return Poly{};
  Mono shift_p, shift_f;
  const Poly* num = &p;
  const Poly* den = &f;
  Poly p_shifted, f_shifted;
  if (laurent) {
    // Move both into the polynomial ring; monomials are units here.
    shift_p = p.min_exponents();
    shift_f = f.min_exponents();
    p_shifted = p.mul_term(Mono{} / shift_p, 1);
    f_shifted = f.mul_term(Mono{} / shift_f, 1);
    num = &p_shifted;
    den = &f_shifted;
  }
  if (den->size() == 1) {
    const auto& lt = den->leading();
    std::vector<Poly::Term> q;
    for (const auto& t : num->terms()) {
      if (!t.mono.divisible_by(lt.mono)) return std::nullopt;
      Int quot, rem;
      boost::multiprecision::divide_qr(t.coeff, lt.coeff, quot, rem);
      if (rem != 0) return std::nullopt;
      q.push_back({t.mono / lt.mono, quot});
    }
    Poly out = Poly::from_terms(std::move(q));
    if (laurent) out = out.mul_term(shift_p / shift_f, 1);
    return out;
  }

  const auto& lead = den->leading();
  std::map<Mono, Int, std::greater<>> rem;
  for (const auto& t : num->terms()) rem.emplace(t.mono, t.coeff);
  std::vector<Poly::Term> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!it->first.divisible_by(lead.mono)) return std::nullopt;
    Int qc, r;
    if (lead.coeff == 1) qc = it->second;
    else if (lead.coeff == -1) qc = -it->second;
    else {
      boost::multiprecision::divide_qr(it->second, lead.coeff, qc, r);
      if (r != 0) return std::nullopt;
    }
    const Mono qm = it->first / lead.mono;
    for (const auto& t : den->terms()) {
      const Mono m = t.mono * qm;
      auto [pos, inserted] = rem.try_emplace(m, 0);
      pos->second -= qc * t.coeff;
      if (pos->second == 0) rem.erase(pos);
    }
    quotient.push_back({qm, std::move(qc)});
  }
  Poly out = Poly::from_terms(std::move(quotient));
  if (laurent) out = out.mul_term(shift_p / shift_f, 1);
  return out;
}

}  // namespace demazure
