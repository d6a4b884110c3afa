#include "demazure/twisted.hpp"

#include <algorithm>

namespace demazure {

// ---------------------------------------------------------------------------
// QWElem

QWElem QWElem::delta(const Ring& ring, WeylElement w) {
  QWElem z(ring);
  z.terms_.emplace(w.id, ring.one());
  return z;
}

QWElem QWElem::term(const QElem& coeff, WeylElement w) {
  if (!coeff.ring()) throw AlgebraError("coefficient without a ring");
  QWElem z(*coeff.ring());
  if (!coeff.is_zero()) z.terms_.emplace(w.id, coeff);
  return z;
}

QElem QWElem::coeff(WeylElement w) const {
  auto it = terms_.find(w.id);
  if (it != terms_.end()) return it->second;
  return ring_ ? ring_->zero() : QElem();
}

QWElem& QWElem::add_term(WeylElement w, const QElem& coeff) {
  if (coeff.is_zero()) return *this;
  if (!ring_) ring_ = coeff.ring();
  auto [it, inserted] = terms_.try_emplace(w.id, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

QWElem QWElem::operator-() const {
  QWElem r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

QWElem& QWElem::operator+=(const QWElem& o) {
  for (const auto& [w, c] : o.terms_) add_term(WeylElement{w}, c);
  if (!ring_) ring_ = o.ring_;
  return *this;
}

QWElem& QWElem::operator-=(const QWElem& o) {
  for (const auto& [w, c] : o.terms_) add_term(WeylElement{w}, -c);
  if (!ring_) ring_ = o.ring_;
  return *this;
}

QWElem operator*(const QWElem& a, const QWElem& b) {
  const Ring* ring = a.ring_ ? a.ring_ : b.ring_;
  QWElem out;
  out.ring_ = ring;
  if (a.is_zero() || b.is_zero()) return out;
  const RootDatum& d = ring->datum();
  for (const auto& [wa, ca] : a.terms_) {
    const WeylElement x{wa};
    for (const auto& [wb, cb] : b.terms_) out.add_term(d.mul(x, WeylElement{wb}), ca * ring->act(x, cb));
  }
  return out;
}

QWElem operator*(const QElem& q, const QWElem& z) {
  QWElem out;
  out.ring_ = z.ring_ ? z.ring_ : q.ring();
  if (q.is_zero()) return out;
  for (const auto& [w, c] : z.terms_) out.add_term(WeylElement{w}, q * c);
  return out;
}

bool operator==(const QWElem& a, const QWElem& b) { return (a - b).is_zero(); }

QElem act(const QWElem& z, const QElem& r) {
  const Ring* ring = z.ring() ? z.ring() : r.ring();
  QElem out = ring->zero();
  for (const auto& [w, c] : z.terms()) out += c * ring->act(WeylElement{w}, r);
  return out;
}

// ---------------------------------------------------------------------------
// OperatorFamily

namespace {

using K = FactorSymbol::Kind;

}  // namespace

OperatorFamily OperatorFamily::X(std::shared_ptr<const Ring> ring) {
  OperatorFamily f(std::move(ring), FamilyKind::X, "x");
  const Ring& r = *f.ring_;
  for (int root = 0; root < r.datum().num_roots(); ++root) {
    f.a_.push_back(r.inverse_factor({K::x_root, root}));
    f.b_.push_back(-r.inverse_factor({K::x_root, root}));
  }
  f.finish();
  return f;
}

OperatorFamily OperatorFamily::Y(std::shared_ptr<const Ring> ring) {
  OperatorFamily f(std::move(ring), FamilyKind::Y, "y");
  const Ring& r = *f.ring_;
  for (int root = 0; root < r.datum().num_roots(); ++root) {
    f.a_.push_back(r.inverse_factor({K::x_root, r.datum().negate_root(root)}));
    f.b_.push_back(r.inverse_factor({K::x_root, root}));
  }
  f.finish();
  return f;
}

OperatorFamily OperatorFamily::T(std::shared_ptr<const Ring> ring) {
  const Backend& be = ring->backend();
  if (be.law != Law::additive || !be.with_h)
    throw AlgebraError("family t requires the additive backend with h");
  OperatorFamily f(std::move(ring), FamilyKind::T, "t");
  const Ring& r = *f.ring_;
  for (int root = 0; root < r.datum().num_roots(); ++root) {
    f.a_.push_back(r.fraction(-r.h(), {{{K::x_root, root}, 1}}));
    f.b_.push_back(r.fraction(r.expand(FactorSymbol{K::hat_additive, root}), {{{K::x_root, root}, 1}}));
  }
  f.finish();
  return f;
}

OperatorFamily OperatorFamily::tau_minus(std::shared_ptr<const Ring> ring) {
  const Backend& be = ring->backend();
  if (be.law != Law::multiplicative || !be.with_v)
    throw AlgebraError("family tau requires the multiplicative backend with v");
  OperatorFamily f(std::move(ring), FamilyKind::tau_minus, "tau");
  const Ring& r = *f.ring_;
  for (int root = 0; root < r.datum().num_roots(); ++root) {
    f.a_.push_back(r.fraction(r.q() - Poly(1), {{{K::one_minus_e, root}, 1}}));
    f.b_.push_back(
        r.fraction(r.expand(FactorSymbol{K::hat_multiplicative, root}), {{{K::one_minus_e, root}, 1}}));
  }
  f.finish();
  return f;
}

OperatorFamily OperatorFamily::su(std::shared_ptr<const Ring> ring) {
  const Backend& be = ring->backend();
  if (be.law != Law::additive || !be.with_h)
    throw AlgebraError("the su preset requires the additive backend with h");
  OperatorFamily f(std::move(ring), FamilyKind::custom, "su");
  const Ring& r = *f.ring_;
  for (int root = 0; root < r.datum().num_roots(); ++root) {
    f.a_.push_back(r.fraction(-r.h(), {{{K::x_root, root}, 1}}));
    f.b_.push_back(r.fraction(r.h() + r.x_root(root), {{{K::x_root, root}, 1}}));
  }
  f.finish();
  return f;
}

OperatorFamily OperatorFamily::custom(std::shared_ptr<const Ring> ring, const std::vector<QElem>& a_simple,
                                      const std::vector<QElem>& b_simple, std::string name) {
  const RootDatum& d = ring->datum();
  const int n = d.rank();
  if (static_cast<int>(a_simple.size()) != n || static_cast<int>(b_simple.size()) != n)
    throw AlgebraError("custom family needs one a and one b per simple root");
  OperatorFamily f(ring, FamilyKind::custom, std::move(name));
  std::vector<std::optional<QElem>> a(d.num_roots()), b(d.num_roots());
  for (auto w : d.weyl_elements()) {
    for (int i = 0; i < n; ++i) {
      const int root = d.act_on_root(w, d.simple_root(i));
      QElem wa = ring->act(w, a_simple[i]);
      QElem wb = ring->act(w, b_simple[i]);
      if (!a[root]) {
        a[root] = std::move(wa);
        b[root] = std::move(wb);
      } else if (!(*a[root] == wa) || !(*b[root] == wb)) {
        throw AlgebraError("custom family is not W-equivariant at root " + d.root_name(root));
      }
    }
  }
  for (int root = 0; root < d.num_roots(); ++root) {
    f.a_.push_back(*a[root]);
    f.b_.push_back(*b[root]);
  }
  // Equivariance under every simple reflection, checked against all roots.
  for (int i = 0; i < n; ++i)
    for (int root = 0; root < d.num_roots(); ++root) {
      const int image = d.act_on_root(d.simple_reflection(i), root);
      if (!(ring->act_simple(i, f.a_[root]) == f.a_[image]) || !(ring->act_simple(i, f.b_[root]) == f.b_[image]))
        throw AlgebraError("custom family is not W-equivariant at root " + d.root_name(root));
    }
  f.finish();
  return f;
}

void OperatorFamily::finish() {
  b_inv_.clear();
  for (int root = 0; root < static_cast<int>(b_.size()); ++root) {
    auto inv = ring_->try_inverse(b_[root]);
    if (!inv)
      throw AlgebraError("b coefficient is not invertible at root " + datum().root_name(root) + ": " +
                         ring_->to_string(b_[root]));
    b_inv_.push_back(std::move(*inv));
  }
}

QWElem OperatorFamily::element(int i) const {
  QWElem z(*ring_);
  z.add_term(datum().identity(), a_[i]);
  z.add_term(datum().simple_reflection(i), b_[i]);
  return z;
}

QWElem OperatorFamily::compose(const Sequence& word) const {
  QWElem z = QWElem::delta(*ring_, datum().identity());
  for (int i : word) z = z * element(i);
  return z;
}

std::optional<QWElem> OperatorFamily::inverse_element(int i) const {
  const RootDatum& d = datum();
  const int neg = d.negate_root(i);
  const QElem& a = a_[i];
  const QElem& b = b_[i];
  // (a + b d)^{-1} = (s(a) - b d) / (a s(a) - b s(b)); the denominator is s-invariant.
  auto denom = ring_->try_inverse(a * a_[neg] - b * b_[neg]);
  if (!denom) return std::nullopt;
  QWElem inv(*ring_);
  inv.add_term(d.identity(), a_[neg] * *denom);
  inv.add_term(d.simple_reflection(i), -(b * *denom));
  return inv;
}

QWElem OperatorFamily::inverse_word(const Sequence& word) const {
  QWElem z = QWElem::delta(*ring_, datum().identity());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    auto inv = inverse_element(*it);
    if (!inv) throw AlgebraError("operator of family " + name_ + " is not invertible");
    z = z * *inv;
  }
  return z;
}

// ---------------------------------------------------------------------------
// Words

std::vector<Sequence> lexmin_words(const RootDatum& d) {
  std::vector<Sequence> words;
  for (auto w : d.weyl_elements()) words.push_back(d.reduced_word(w));
  return words;
}

void validate_words(const RootDatum& d, const std::vector<Sequence>& words) {
  if (static_cast<int>(words.size()) != d.order())
    throw RootDatumError("word family must give one word per Weyl group element");
  for (auto w : d.weyl_elements()) {
    const Sequence& word = words[w.id];
    for (int i : word)
      if (i < 0 || i >= d.rank()) throw RootDatumError("word letter out of range");
    if (!d.is_reduced(word) || d.product(word) != w)
      throw RootDatumError("'" + d.format_word(word) + "' is not a reduced word for " + d.format_element(w));
  }
}

// ---------------------------------------------------------------------------
// BasisChange

BasisChange::BasisChange(OperatorFamily family, std::vector<Sequence> words)
    : family_(std::move(family)), words_(std::move(words)) {
  const RootDatum& d = family_.datum();
  const Ring& ring = family_.ring();
  validate_words(d, words_);
  const int order = d.order();
  z_.reserve(order);
  a_.assign(order, std::vector<QElem>(order, ring.zero()));
  b_.assign(order, std::vector<QElem>(order, ring.zero()));
  std::vector<QElem> diag_inv(order, ring.one());
  for (auto w : d.weyl_elements()) {
    z_.push_back(family_.compose(words_[w.id]));
    for (const auto& [v, c] : z_.back().terms()) a_[w.id][v] = c;
    // The d_w coefficient of Z_{I_w} is prod_j b_{beta_j}.
    WeylElement prefix = d.identity();
    QElem inv = ring.one();
    for (int i : words_[w.id]) {
      inv *= family_.b_inverse(d.act_on_root(prefix, d.simple_root(i)));
      prefix = d.right_mul_simple(prefix, i);
    }
    diag_inv[w.id] = std::move(inv);
  }
  // B = A^{-1}, lower triangular in id order.
  for (int w = 0; w < order; ++w) {
    b_[w][w] = diag_inv[w];
    for (int v = w - 1; v >= 0; --v) {
      if (!d.bruhat_leq(WeylElement{v}, WeylElement{w})) continue;
      QElem s = ring.zero();
      for (int u = v + 1; u <= w; ++u)
        if (!b_[w][u].is_zero() && !a_[u][v].is_zero()) s += b_[w][u] * a_[u][v];
      if (!s.is_zero()) b_[w][v] = -(s * diag_inv[v]);
    }
  }
}

std::vector<QElem> BasisChange::expand(const QWElem& z) const {
  const int order = datum().order();
  std::vector<QElem> out(order, ring().zero());
  for (const auto& [v, coeff] : z.terms())
    for (int w = 0; w <= v; ++w)
      if (!b_[v][w].is_zero()) out[w] += coeff * b_[v][w];
  return out;
}

const std::vector<QElem>& BasisChange::c_row(const Sequence& J) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = c_cache_.find(J);
    if (it != c_cache_.end()) return it->second;
  }
  std::vector<QElem> row = expand(family_.compose(J));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return c_cache_.try_emplace(J, std::move(row)).first->second;
}

// ---------------------------------------------------------------------------
// Leibniz coefficients

Sequence restrict_word(const Sequence& word, std::uint32_t mask) {
  Sequence out;
  for (std::size_t j = 0; j < word.size(); ++j)
    if (mask >> j & 1u) out.push_back(word[j]);
  return out;
}

LeibnizTable::LeibnizTable(const OperatorFamily& family, Sequence word)
    : family_(&family), word_(std::move(word)) {
  const int k = length();
  if (k > 20) throw AlgebraError("word too long for Leibniz bitmasks");
  memo_.resize(k + 1);
  memo_[k].emplace(0u, family.ring().one());
  const int n = family.datum().rank();
  for (int i = 0; i < n; ++i) {
    const QElem& a = family.a(i);
    const QElem& inv = family.b_inverse(i);
    inv_b_.push_back(inv);
    neg_a_over_b_.push_back(-(a * inv));
    a_.push_back(a);
    a2_over_b_.push_back(a * a * inv);
  }
}

const QElem& LeibnizTable::suffix(int j, std::uint32_t code) {
  auto found = memo_[j].find(code);
  if (found != memo_[j].end()) return found->second;
  const Ring& ring = family_->ring();
  const QElem& rest = suffix(j + 1, code / 3);
  const int i = word_[j];
  const QElem moved = ring.act_simple(i, rest);
  QElem value;
  switch (code % 3) {
    case 2:
      value = inv_b_[i] * moved;
      break;
    case 1:
      value = neg_a_over_b_[i] * moved;
      break;
    default:
      value = a_[i] * rest + a2_over_b_[i] * moved;
      break;
  }
  return memo_[j].emplace(code, std::move(value)).first->second;
}

const QElem& LeibnizTable::value(std::uint32_t E, std::uint32_t F) {
  std::uint32_t code = 0;
  for (int j = length() - 1; j >= 0; --j) code = code * 3 + (E >> j & 1u) + (F >> j & 1u);
  return suffix(0, code);
}

QElem leibniz_coefficient(const OperatorFamily& family, const Sequence& word, std::uint32_t E, std::uint32_t F) {
  LeibnizTable table(family, word);
  return table.value(E, F);
}

QElem billey_closed_form(const OperatorFamily& family, const Sequence& word, std::uint32_t E) {
  const Ring& ring = family.ring();
  const RootDatum& d = family.datum();
  QElem out = ring.one();
  WeylElement prefix = d.identity();
  int outside = 0;
  for (std::size_t j = 0; j < word.size(); ++j) {
    const int i = word[j];
    const QElem n = ring.act(prefix, family.b(i));
    out *= ring.inverse(n);
    if (!(E >> j & 1u)) {
      out *= ring.act(prefix, family.a(i));
      ++outside;
    }
    prefix = d.right_mul_simple(prefix, i);
  }
  return outside % 2 ? -out : out;
}

// ---------------------------------------------------------------------------
// Relations

int braid_order(const RootDatum& d, int i, int j) {
  if (i == j) return 1;
  switch (d.cartan()[i][j] * d.cartan()[j][i]) {
    case 0:
      return 2;
    case 1:
      return 3;
    case 2:
      return 4;
    case 3:
      return 6;
    default:
      throw RootDatumError("unsupported braid order");
  }
}

Poly kappa_pair(const Ring& ring, int i, int j) {
  const RootDatum& d = ring.datum();
  if (braid_order(d, i, j) != 3) throw AlgebraError("kappa pair needs simple roots with braid order 3");
  Weight sum(d.rank(), 0);
  sum[i] = 1;
  sum[j] = 1;
  const auto ab = d.root_index_simple_coords(sum);
  if (!ab) throw AlgebraError("a + b is not a root");
  const int neg_a = d.negate_root(i);
  QElem k = ring.fraction(Poly(1), {{{K::x_root, *ab}, 1}, {{K::x_root, j}, 1}}) -
            ring.fraction(Poly(1), {{{K::x_root, *ab}, 1}, {{K::x_root, neg_a}, 1}}) -
            ring.fraction(Poly(1), {{{K::x_root, i}, 1}, {{K::x_root, j}, 1}});
  if (!k.in_S()) throw AlgebraError("internal consistency: kappa pair does not lie in S");
  return k.num();
}

namespace {

std::string residual(const Ring& ring, const QWElem& diff) {
  if (diff.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : diff.terms()) {
    if (!out.empty()) out += "; ";
    out += "[" + ring.datum().format_element(WeylElement{w}) + "] " + ring.to_string(c);
  }
  return out;
}

}  // namespace

std::vector<RelationCheck> verify_relations(const OperatorFamily& family) {
  const Ring& ring = family.ring();
  const RootDatum& d = family.datum();
  const int n = d.rank();
  std::vector<RelationCheck> out;
  const QWElem one = QWElem::delta(ring, d.identity());
  for (int i = 0; i < n; ++i) {
    const QWElem z = family.element(i);
    const QWElem sq = z * z;
    QWElem expected;
    std::string label;
    switch (family.kind()) {
      case FamilyKind::X:
      case FamilyKind::Y: {
        const QElem kappa = ring.lift(ring.kappa(d.roots()[i].weight));
        expected = kappa * z;
        label = "Z^2 = kappa Z";
        break;
      }
      case FamilyKind::T:
        expected = one;
        label = "T^2 = 1";
        break;
      case FamilyKind::tau_minus:
        expected = ring.lift(ring.q() - Poly(1)) * z + ring.lift(ring.q()) * one;
        label = "tau^2 = (q-1) tau + q";
        break;
      case FamilyKind::custom: {
        // Z^2 = lambda Z + mu with lambda = a + s(a), mu = b s(b) - a s(a).
        const int neg = d.negate_root(i);
        const QElem lambda = family.a(i) + family.a(neg);
        const QElem mu = family.b(i) * family.b(neg) - family.a(i) * family.a(neg);
        expected = lambda * z + mu * one;
        label = "Z^2 = lambda Z + mu, lambda = " + ring.to_string(lambda) + ", mu = " + ring.to_string(mu);
        break;
      }
    }
    const QWElem diff = sq - expected;
    out.push_back({"quadratic s" + std::to_string(i + 1) + ": " + label, diff.is_zero(), residual(ring, diff)});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int m = braid_order(d, i, j);
      QWElem lhs = one, rhs = one;
      for (int t = 0; t < m; ++t) {
        lhs = lhs * family.element(t % 2 ? j : i);
        rhs = rhs * family.element(t % 2 ? i : j);
      }
      const QWElem diff = lhs - rhs;
      out.push_back({"braid s" + std::to_string(i + 1) + " s" + std::to_string(j + 1) + " (m=" + std::to_string(m) + ")",
                     diff.is_zero(), residual(ring, diff)});
      if (m == 3 && (family.kind() == FamilyKind::X || family.kind() == FamilyKind::Y)) {
        const Poly kij = kappa_pair(ring, i, j);
        const Poly kji = kappa_pair(ring, j, i);
        out.push_back({"kappa pair s" + std::to_string(i + 1) + " s" + std::to_string(j + 1) + " vanishes",
                       kij.is_zero() && kji.is_zero(), ring.to_string(kij) + ", " + ring.to_string(kji)});
        if (family.kind() == FamilyKind::X) {
          // X_b X_a X_b - X_a X_b X_a = kappa_{ab} X_a - kappa_{ba} X_b
          const QWElem xa = family.element(i), xb = family.element(j);
          const QWElem diff2 =
              (xb * xa * xb - xa * xb * xa) - (ring.lift(kij) * xa - ring.lift(kji) * xb);
          out.push_back({"braid defect s" + std::to_string(i + 1) + " s" + std::to_string(j + 1) + " = kappa terms",
                         diff2.is_zero(), residual(ring, diff2)});
        }
      }
    }
  return out;
}

}  // namespace demazure
