#include "demazure/ring.hpp"

#include <limits>
#include <random>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace demazure {

std::string Backend::name() const {
  std::string out = law == Law::additive ? "additive" : "multiplicative";
  if (with_h) out += "+h";
  if (with_v) out += "+v";
  return out;
}

// ---------------------------------------------------------------------------
// Ring

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

// Operands below kPrime; Mersenne reduction.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  const std::uint64_t r = (static_cast<std::uint64_t>(z) & kPrime) + static_cast<std::uint64_t>(z >> 61);
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }


std::uint64_t reduce(const Int& c) {
  static const Int small_max(std::numeric_limits<std::int64_t>::max());
  static const Int small_min(std::numeric_limits<std::int64_t>::min() + 1);
  if (c <= small_max && c >= small_min) {
    const std::int64_t v = c.convert_to<std::int64_t>();
    const std::uint64_t m = static_cast<std::uint64_t>(v < 0 ? -v : v) % kPrime;
    return v < 0 && m ? kPrime - m : m;
  }
  Int r = c % Int(kPrime);
  if (r < 0) r += Int(kPrime);
  return r.convert_to<std::uint64_t>();
}

// A point where f vanishes: f linear (additive), or f = c (M1 - M2) for
// monomials M1, M2 (multiplicative). Layout: slot values, then inverses.
std::vector<std::uint64_t> vanishing_point(const Poly& f, int slots, bool laurent, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 2);
  std::vector<std::uint64_t> val(slots);
  for (auto& x : val) x = dist(rng);
  if (!laurent) {
    for (const auto& t : f.terms()) {
      int degree = 0;
      for (int i = 0; i < slots; ++i) degree += t.mono.exp[i];
      if (degree != 1) return {};
    }
    const auto& lead = f.leading();
    int k = 0;
    while (lead.mono.exp[k] == 0) ++k;
    std::uint64_t rest = 0;
    for (const auto& t : f.terms()) {
      if (&t == &lead) continue;
      for (int i = 0; i < slots; ++i)
        if (t.mono.exp[i]) rest = (rest + mul_mod(reduce(t.coeff), val[i])) % kPrime;
    }
    // c_k t_k = -rest
    val[k] = mul_mod((kPrime - rest) % kPrime, inv_mod(reduce(lead.coeff)));
  } else {
    if (f.size() != 2 || f.terms()[0].coeff != -f.terms()[1].coeff) return {};
    const Mono ratio = f.terms()[0].mono / f.terms()[1].mono;
    int k = 0;
    while (k < slots && ratio.exp[k] == 0) ++k;
    if (k == slots) return {};
    auto signed_pow = [](std::uint64_t a, int e) { return e >= 0 ? pow_mod(a, e) : inv_mod(pow_mod(a, -e)); };
    std::uint64_t yk = 1;
    for (int j = 0; j < slots; ++j) {
      if (j == k) continue;
      const std::uint64_t r = val[j];
      val[j] = signed_pow(r, ratio.exp[k]);
      yk = mul_mod(yk, signed_pow(r, -ratio.exp[j]));
    }
    val[k] = yk;
  }
  std::vector<std::uint64_t> out = val;
  for (auto x : val) {
    if (x == 0) return {};
    out.push_back(inv_mod(x));
  }
  return out;
}

std::uint64_t evaluate_mod(const Poly& p, const std::vector<std::uint64_t>& point) {
  const int slots = static_cast<int>(point.size() / 2);
  std::uint64_t sum = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t term = reduce(t.coeff);
    for (int i = 0; i < slots; ++i) {
      const int e = t.mono.exp[i];
      if (e == 1) term = mul_mod(term, point[i]);
      else if (e == -1) term = mul_mod(term, point[slots + i]);
      else if (e > 0) term = mul_mod(term, pow_mod(point[i], e));
      else if (e < 0) term = mul_mod(term, pow_mod(point[slots + i], -e));
    }
    sum += term;
    if (sum >= kPrime) sum -= kPrime;
  }
  return sum;
}

}  // namespace

Ring::Ring(std::shared_ptr<const RootDatum> datum, Backend backend)
    : datum_(std::move(datum)), backend_(backend) {
  if (backend_.law == Law::additive && backend_.with_v)
    throw AlgebraError("the additive backend does not carry v");
  if (backend_.law == Law::multiplicative && backend_.with_h)
    throw AlgebraError("the multiplicative backend does not carry h");
  if (datum_->rank() + 1 > kMaxVars) throw AlgebraError("rank too large for the monomial layout");

  const int n = datum_->rank();
  const auto& roots = datum_->roots();
  x_factor_.resize(datum_->num_positive_roots());
  for (int r = 0; r < datum_->num_positive_roots(); ++r) x_factor_[r] = x_class(roots[r].weight);
  if (backend_.with_h || backend_.with_v) {
    hat_factor_.resize(roots.size());
    for (int r = 0; r < datum_->num_roots(); ++r) {
      if (backend_.with_h)
        hat_factor_[r] = h() - x_class(roots[r].weight);
      else
        hat_factor_[r] = Poly(1) - q() * exp_weight([&] {
                           Weight m = roots[r].weight;
                           for (auto& c : m) c = -c;
                           return m;
                         }());
    }
  }

  if (backend_.law == Law::additive) {
    reflection_images_.resize(n);
    for (int i = 0; i < n; ++i) {
      const auto& m = datum_->action_matrix(datum_->simple_reflection(i));
      for (int j = 0; j < n; ++j) {
        // w(t_j) = sum_k M_kj t_k
        std::vector<Poly::Term> terms;
        for (int k = 0; k < n; ++k)
          if (m[k * n + j]) terms.push_back({Mono::var(k), Int(m[k * n + j])});
        Poly image = Poly::from_terms(std::move(terms));
        if (!(image == Poly::monomial(Mono::var(j)))) reflection_images_[i].emplace_back(j, image);
      }
    }
  }

  std::mt19937_64 rng(0x5eed);
  for (const auto& f : x_factor_) x_zero_.push_back(vanishing_point(f, n + 1, backend_.laurent(), rng));
  for (const auto& f : hat_factor_) hat_zero_.push_back(vanishing_point(f, n + 1, backend_.laurent(), rng));

  for (int r = 0; r < datum_->num_positive_roots(); ++r) candidates_.push_back({FactorKey::Kind::x, r});
  if (!hat_factor_.empty())
    for (int r = 0; r < datum_->num_roots(); ++r) candidates_.push_back({FactorKey::Kind::hat, r});
}

Poly Ring::x_class(const Weight& weight) const {
  if (backend_.law == Law::additive) {
    std::vector<Poly::Term> terms;
    for (int i = 0; i < static_cast<int>(weight.size()); ++i)
      if (weight[i]) terms.push_back({Mono::var(i), Int(weight[i])});
    return Poly::from_terms(std::move(terms));
  }
  Weight neg = weight;
  for (auto& c : neg) c = -c;
  return Poly(1) - exp_weight(neg);
}

Poly Ring::exp_weight(const Weight& weight) const {
  if (backend_.law != Law::multiplicative) throw AlgebraError("e^lambda needs the multiplicative backend");
  Mono m;
  for (int i = 0; i < static_cast<int>(weight.size()); ++i) m.exp[i] = static_cast<std::int16_t>(weight[i]);
  return Poly::monomial(m);
}

Poly Ring::h() const {
  if (!backend_.with_h) throw AlgebraError("backend has no variable h");
  return Poly::monomial(Mono::var(extra_slot()));
}

Poly Ring::v() const {
  if (!backend_.with_v) throw AlgebraError("backend has no variable v");
  return Poly::monomial(Mono::var(extra_slot()));
}

Poly Ring::q() const {
  if (!backend_.with_v) throw AlgebraError("backend has no variable v");
  return Poly::monomial(Mono::var(extra_slot(), 2));
}

Poly Ring::fgl(const Poly& x, const Poly& y) const {
  if (backend_.law == Law::additive) return x + y;
  return x + y - x * y;
}

Poly Ring::kappa(const Weight& weight) const {
  if (std::all_of(weight.begin(), weight.end(), [](int c) { return c == 0; }))
    throw AlgebraError("kappa is undefined at the zero weight");
  Weight neg = weight;
  for (auto& c : neg) c = -c;
  const Poly xp = x_class(weight), xn = x_class(neg);
  auto quotient = demazure::divide_exact(xp + xn, xp * xn, backend_.laurent());
  if (!quotient) throw AlgebraError("internal consistency: kappa does not lie in S");
  return *quotient;
}

Poly Ring::act_simple(int i, const Poly& p) const {
  if (backend_.law == Law::multiplicative) return act(datum_->simple_reflection(i), p);
  const auto& images = reflection_images_[i];
  if (images.empty()) return p;
  if (images.size() == 1) return p.substitute(images[0].first, images[0].second);
  // Simultaneous linear substitution with cached image powers.
  std::vector<std::vector<Poly>> powers(images.size(), std::vector<Poly>{Poly(1)});
  Poly out;
  std::vector<Poly::Term> fixed_terms;
  std::map<std::vector<int>, std::vector<Poly::Term>> groups;
  for (const auto& t : p.terms()) {
    std::vector<int> key;
    Poly::Term rest = t;
    for (const auto& [var, img] : images) {
      key.push_back(rest.mono.exp[var]);
      rest.mono.exp[var] = 0;
    }
    groups[key].push_back(std::move(rest));
  }
  for (auto& [key, terms] : groups) {
    Poly acc = Poly::from_terms(std::move(terms));
    for (std::size_t k = 0; k < images.size(); ++k) {
      auto& pw = powers[k];
      while (static_cast<int>(pw.size()) <= key[k]) pw.push_back(pw.back() * images[k].second);
      if (key[k]) acc *= pw[key[k]];
    }
    out += acc;
  }
  return out;
}

Poly Ring::act(WeylElement w, const Poly& p) const {
  if (w.id == 0) return p;
  if (backend_.law == Law::multiplicative) {
    const int n = datum_->rank();
    const auto& m = datum_->action_matrix(w);
    return p.map_monomials([&](const Mono& mono) {
      Mono r = mono;
      for (int i = 0; i < n; ++i) {
        int s = 0;
        for (int j = 0; j < n; ++j) s += m[i * n + j] * mono.exp[j];
        r.exp[i] = static_cast<std::int16_t>(s);
      }
      return r;
    });
  }
  const auto& word = datum_->reduced_word(w);
  Poly out = p;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = act_simple(*it, out);
  return out;
}

std::pair<Poly, FactorKey> Ring::canonical(const FactorSymbol& f) const {
  const auto& d = *datum_;
  const auto& root = d.roots()[f.root];
  switch (f.kind) {
    case FactorSymbol::Kind::hat_additive:
      if (!backend_.with_h) throw AlgebraError("h - beta needs the additive backend with h");
      return {Poly(1), {FactorKey::Kind::hat, f.root}};
    case FactorSymbol::Kind::hat_multiplicative:
      if (!backend_.with_v) throw AlgebraError("1 - q e^{-beta} needs the multiplicative backend with v");
      return {Poly(1), {FactorKey::Kind::hat, f.root}};
    case FactorSymbol::Kind::one_minus_e:
      if (backend_.law != Law::multiplicative) throw AlgebraError("1 - e^beta needs the multiplicative backend");
      return canonical({FactorSymbol::Kind::x_root, d.negate_root(f.root)});
    case FactorSymbol::Kind::x_root:
      break;
  }
  if (root.positive) return {Poly(1), {FactorKey::Kind::x, f.root}};
  const int pos = d.negate_root(f.root);
  if (backend_.law == Law::additive) return {Poly(-1), {FactorKey::Kind::x, pos}};
  // 1 - e^{|beta|} = -e^{|beta|} (1 - e^{-|beta|})
  return {-exp_weight(d.roots()[pos].weight), {FactorKey::Kind::x, pos}};
}

FactorSymbol Ring::symbol_for(FactorSymbol::Kind kind, const Weight& beta) const {
  auto r = datum_->root_index(beta);
  if (!r) throw AlgebraError("factor weight is not a root");
  return {kind, *r};
}

const Poly& Ring::expand(const FactorKey& key) const {
  if (key.kind == FactorKey::Kind::x) return x_factor_.at(key.root);
  if (hat_factor_.empty()) throw AlgebraError("hat factor without h or v");
  return hat_factor_.at(key.root);
}

Poly Ring::expand(const FactorSymbol& f) const {
  auto [unit, key] = canonical(f);
  return unit * expand(key);
}

std::optional<Poly> Ring::divide_exact(const Poly& p, const FactorSymbol& f) const {
  return demazure::divide_exact(p, expand(f), backend_.laurent());
}

bool Ring::is_unit(const Poly& p) const {
  if (p.size() != 1) return false;
  const auto& t = p.leading();
  if (t.coeff != 1 && t.coeff != -1) return false;
  if (backend_.law == Law::multiplicative) return true;
  return t.mono.is_one();
}

Poly Ring::unit_inverse(const Poly& u) const {
  const auto& t = u.leading();
  return Poly::monomial(Mono{} / t.mono, t.coeff);
}

bool Ring::may_divide(const Poly& p, const FactorKey& key) const {
  const auto& point = key.kind == FactorKey::Kind::x ? x_zero_.at(key.root) : hat_zero_.at(key.root);
  return point.empty() || evaluate_mod(p, point) == 0;
}

void Ring::normalize(QElem& q) const {
  if (q.num_.is_zero()) {
    q.den_.clear();
    return;
  }
  const bool laurent = backend_.laurent();
  QElem::Denominator kept;
  for (auto [key, power] : q.den_) {
    const Poly& f = expand(key);
    if (!may_divide(q.num_, key)) {
      kept.emplace_back(key, power);
      continue;
    }
    while (power > 0) {
      auto quotient = demazure::divide_exact(q.num_, f, laurent);
      if (!quotient) break;
      q.num_ = std::move(*quotient);
      --power;
    }
    if (power > 0) kept.emplace_back(key, power);
  }
  q.den_ = std::move(kept);
}

QElem Ring::sum_of_products(const std::vector<std::pair<const QElem*, const QElem*>>& terms) const {
  // Numerators grouped by denominator, then scaled to the common one.
  std::map<std::map<FactorKey, int>, Poly> groups;
  std::map<FactorKey, int> top;
  for (const auto& [a, b] : terms) {
    std::map<FactorKey, int> d;
    for (const auto& [k, p] : a->den()) d[k] += p;
    for (const auto& [k, p] : b->den()) d[k] += p;
    for (const auto& [k, p] : d) top[k] = std::max(top[k], p);
    groups[std::move(d)] += a->num() * b->num();
  }
  Poly num;
  for (auto& [d, t] : groups) {
    for (const auto& [k, p] : top) {
      auto it = d.find(k);
      for (int j = it == d.end() ? 0 : it->second; j < p; ++j) t = t * expand(k);
    }
    num += t;
  }
  return QElem(*this, std::move(num), QElem::Denominator(top.begin(), top.end()));
}

QElem Ring::fraction(Poly p, const std::vector<std::pair<FactorSymbol, int>>& den) const {
  std::map<FactorKey, int> merged;
  for (const auto& [sym, power] : den) {
    auto [unit, key] = canonical(sym);
    for (int k = 0; k < power; ++k) p = p * unit_inverse(unit);
    merged[key] += power;
  }
  return QElem(*this, std::move(p), QElem::Denominator(merged.begin(), merged.end()));
}

QElem Ring::act(WeylElement w, const QElem& q) const {
  if (q.is_zero() || w.id == 0) return q;
  Poly num = act(w, q.num_);
  std::map<FactorKey, int> den;
  for (const auto& [key, power] : q.den_) {
    const int image = datum_->act_on_root(w, key.root);
    FactorSymbol sym{key.kind == FactorKey::Kind::x ? FactorSymbol::Kind::x_root
                                                      : (backend_.with_h ? FactorSymbol::Kind::hat_additive
                                                                         : FactorSymbol::Kind::hat_multiplicative),
                     image};
    auto [unit, new_key] = canonical(sym);
    const Poly inv = unit_inverse(unit);
    for (int k = 0; k < power; ++k) num = num * inv;
    den[new_key] += power;
  }
  QElem out;
  out.ring_ = this;
  out.num_ = std::move(num);
  out.den_.assign(den.begin(), den.end());
  // A ring automorphism maps a normalized fraction to a normalized one.
  return out;
}

QElem Ring::act_simple(int i, const QElem& q) const {
  if (backend_.law == Law::additive && q.den_.empty()) return QElem(*this, act_simple(i, q.num_));
  return act(datum_->simple_reflection(i), q);
}

std::optional<QElem> Ring::try_inverse(const QElem& q) const {
  if (q.is_zero()) return std::nullopt;
  Poly rest = q.num_;
  std::map<FactorKey, int> new_den;
  const bool laurent = backend_.laurent();
  for (const auto& key : candidates_) {
    if (is_unit(rest)) break;
    const Poly& f = expand(key);
    while (true) {
      auto quotient = demazure::divide_exact(rest, f, laurent);
      if (!quotient) break;
      rest = std::move(*quotient);
      ++new_den[key];
    }
  }
  if (!is_unit(rest)) return std::nullopt;
  Poly num = unit_inverse(rest);
  for (const auto& [key, power] : q.den_) num = num * expand(key).pow(power);
  return QElem(*this, std::move(num), QElem::Denominator(new_den.begin(), new_den.end()));
}

QElem Ring::inverse(const QElem& q) const {
  auto inv = try_inverse(q);
  if (!inv) throw AlgebraError("element is not invertible in the localization: " + to_string(q));
  return *inv;
}

// ---------------------------------------------------------------------------
// Text

std::string Ring::to_string(const Poly& p) const {
  if (p.is_zero()) return "0";
  const int n = datum_->rank();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Int c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    std::vector<std::string> parts;
    bool lattice_nonzero = false;
    for (int i = 0; i < n; ++i) lattice_nonzero |= t.mono.exp[i] != 0;
    if (backend_.law == Law::additive) {
      for (int i = 0; i < n; ++i) {
        if (!t.mono.exp[i]) continue;
        std::string s = "t" + std::to_string(i + 1);
        if (t.mono.exp[i] != 1) s += "^" + std::to_string(t.mono.exp[i]);
        parts.push_back(s);
      }
    } else if (lattice_nonzero) {
      std::string s = "E(";
      for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(t.mono.exp[i]);
      parts.push_back(s + ")");
    }
    if (const int e = t.mono.exp[extra_slot()]; e != 0) {
      std::string s = backend_.with_h ? "h" : "v";
      if (e != 1) s += "^" + std::to_string(e);
      parts.push_back(s);
    }
    std::string body;
    for (const auto& s : parts) body += (body.empty() ? "" : "*") + s;
    if (body.empty())
      os << c;
    else if (c == 1)
      os << body;
    else
      os << c << "*" << body;
    first = false;
  }
  return os.str();
}

std::string Ring::factor_name(const FactorKey& key) const {
  const std::string root = datum_->root_name(key.root);
  if (key.kind == FactorKey::Kind::x) return "x(" + root + ")";
  return "xh(" + root + ")";
}

std::string Ring::to_string(const QElem& q) const {
  if (q.den().empty()) return to_string(q.num());
  std::string den;
  for (const auto& [key, power] : q.den()) {
    if (!den.empty()) den += "*";
    den += factor_name(key);
    if (power != 1) den += "^" + std::to_string(power);
  }
  return "(" + to_string(q.num()) + ")/(" + den + ")";
}

namespace {

struct PolyParser {
  const Ring& ring;
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("cannot parse polynomial '" + s + "': " + what);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    long v = std::stol(s.substr(start, pos - start));
    return neg ? -v : v;
  }
  int exponent() {
    if (eat('^')) return static_cast<int>(integer());
    return 1;
  }
  // factor := INT | tK[^e] | h[^e] | v[^e] | E(m1,...,mn)
  void factor(Int& coeff, Mono& mono) {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    const char c = s[pos];
    const int n = ring.datum().rank();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      coeff *= Int(s.substr(start, pos - start));
    } else if (c == 't') {
      ++pos;
      const long var = integer();
      if (var < 1 || var > n) fail("variable index out of range");
      mono.exp[var - 1] = static_cast<std::int16_t>(mono.exp[var - 1] + exponent());
    } else if (c == 'h' || c == 'v') {
      ++pos;
      if ((c == 'h') != ring.backend().with_h && (c == 'v') != ring.backend().with_v)
        fail(std::string("variable ") + c + " is not part of this backend");
      mono.exp[ring.extra_slot()] = static_cast<std::int16_t>(mono.exp[ring.extra_slot()] + exponent());
    } else if (c == 'E') {
      ++pos;
      if (!eat('(')) fail("expected '(' after E");
      for (int i = 0; i < n; ++i) {
        if (i && !eat(',')) fail("expected ','");
        mono.exp[i] = static_cast<std::int16_t>(mono.exp[i] + integer());
      }
      if (!eat(')')) fail("expected ')'");
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  Poly parse() {
    std::vector<Poly::Term> terms;
    skip();
    if (s.substr(pos) == "0") return {};
    bool first = true;
    while (true) {
      skip();
      if (pos >= s.size()) break;
      int sign = 1;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Int coeff = sign;
      Mono mono;
      factor(coeff, mono);
      while (eat('*')) factor(coeff, mono);
      terms.push_back({mono, coeff});
      first = false;
    }
    return Poly::from_terms(std::move(terms));
  }
};

}  // namespace

Poly Ring::parse_poly(const std::string& text) const {
  PolyParser p{*this, text};
  return p.parse();
}

// ---------------------------------------------------------------------------
// QElem

QElem::QElem(const Ring& ring, Poly num, Denominator den)
    : ring_(&ring), num_(std::move(num)), den_(std::move(den)) {
  std::sort(den_.begin(), den_.end());
  Denominator merged;
  for (auto& entry : den_) {
    if (entry.second <= 0) continue;
    if (!merged.empty() && merged.back().first == entry.first)
      merged.back().second += entry.second;
    else
      merged.push_back(entry);
  }
  den_ = std::move(merged);
  ring.normalize(*this);
}

const Poly& QElem::as_poly() const {
  if (!den_.empty()) throw AlgebraError("element has a nontrivial denominator");
  return num_;
}

QElem QElem::operator-() const {
  QElem r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

const Ring* common_ring(const QElem& a, const QElem& b) {
  if (a.ring() && b.ring() && a.ring() != b.ring()) throw AlgebraError("mixing elements of different rings");
  return a.ring() ? a.ring() : b.ring();
}

}  // namespace

QElem operator+(const QElem& a, const QElem& b) {
  if (b.is_zero()) return a.ring() || !b.ring() ? a : b.ring()->zero();
  if (a.is_zero()) return b;
  const Ring& ring = *common_ring(a, b);
  if (a.den_ == b.den_) return QElem(ring, a.num_ + b.num_, a.den_);
  // Common denominator with maximal multiplicities.
  std::map<FactorKey, std::pair<int, int>> powers;
  for (const auto& [k, p] : a.den_) powers[k].first = p;
  for (const auto& [k, p] : b.den_) powers[k].second = p;
  Poly na = a.num_, nb = b.num_;
  QElem::Denominator den;
  for (const auto& [key, pp] : powers) {
    const int top = std::max(pp.first, pp.second);
    den.emplace_back(key, top);
    const Poly& f = ring.expand(key);
    for (int k = pp.first; k < top; ++k) na = na * f;
    for (int k = pp.second; k < top; ++k) nb = nb * f;
  }
  return QElem(ring, na + nb, std::move(den));
}

QElem operator-(const QElem& a, const QElem& b) { return a + (-b); }

QElem operator*(const QElem& a, const QElem& b) {
  if (a.is_zero() || b.is_zero()) {
    const Ring* r = a.ring() ? a.ring() : b.ring();
    return r ? r->zero() : QElem();
  }
  const Ring& ring = *common_ring(a, b);
  if (a.den_.empty() && b.den_.empty()) {
    QElem out;
    out.ring_ = &ring;
    out.num_ = a.num_ * b.num_;
    return out;
  }
  // Cancel each operand's denominator against the other's numerator first.
  Poly na = a.num_, nb = b.num_;
  const bool laurent = ring.backend().laurent();
  std::map<FactorKey, int> den;
  auto cancel = [&](Poly& num, const QElem::Denominator& d) {
    for (const auto& [key, power] : d) {
      int left = power;
      const Poly& f = ring.expand(key);
      while (left > 0 && ring.may_divide(num, key)) {
        auto quotient = divide_exact(num, f, laurent);
        if (!quotient) break;
        num = std::move(*quotient);
        --left;
      }
      if (left) den[key] += left;
    }
  };
  cancel(nb, a.den_);
  cancel(na, b.den_);
  QElem out;
  out.ring_ = &ring;
  out.num_ = na * nb;
  out.den_.assign(den.begin(), den.end());
  return out;
}

QElem operator/(const QElem& a, const QElem& b) {
  const Ring* ring = common_ring(a, b);
  if (!ring) throw AlgebraError("division by zero");
  return a * ring->inverse(b);
}

bool operator==(const QElem& a, const QElem& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.den_ == b.den_) return a.num_ == b.num_;
  const Ring& ring = *common_ring(a, b);
  Poly lhs = a.num_, rhs = b.num_;
  for (const auto& [key, power] : b.den_) lhs = lhs * ring.expand(key).pow(power);
  for (const auto& [key, power] : a.den_) rhs = rhs * ring.expand(key).pow(power);
  return lhs == rhs;
}

}  // namespace demazure
