#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "demazure/ring.hpp"

namespace demazure {

// Element of the twisted group algebra Q_W: a finite sum of p_w delta_w.
class QWElem {
 public:
  QWElem() = default;
  explicit QWElem(const Ring& ring) : ring_(&ring) {}
  static QWElem delta(const Ring& ring, WeylElement w);
  static QWElem term(const QElem& coeff, WeylElement w);
  static QWElem scalar(const QElem& coeff) { return term(coeff, WeylElement{0}); }

  const Ring* ring() const { return ring_; }
  const std::map<int, QElem>& terms() const { return terms_; }
  QElem coeff(WeylElement w) const;
  bool is_zero() const { return terms_.empty(); }
  QWElem& add_term(WeylElement w, const QElem& coeff);

  QWElem operator-() const;
  QWElem& operator+=(const QWElem& o);
  QWElem& operator-=(const QWElem& o);
  friend QWElem operator+(QWElem a, const QWElem& b) { return a += b; }
  friend QWElem operator-(QWElem a, const QWElem& b) { return a -= b; }
  // (p d_a)(p' d_b) = p a(p') d_{ab}
  friend QWElem operator*(const QWElem& a, const QWElem& b);
  // Left multiplication by an element of Q.
  friend QWElem operator*(const QElem& q, const QWElem& z);
  friend bool operator==(const QWElem& a, const QWElem& b);

 private:
  const Ring* ring_ = nullptr;
  std::map<int, QElem> terms_;
};

// Action of Q_W on Q: (p d_w) . r = p w(r).
QElem act(const QWElem& z, const QElem& r);

enum class FamilyKind { X, Y, T, tau_minus, custom };

// Operators Z_alpha = a_alpha + b_alpha d_alpha with W-equivariant
// coefficients, stored for every root.
class OperatorFamily {
 public:
  static OperatorFamily X(std::shared_ptr<const Ring> ring);
  static OperatorFamily Y(std::shared_ptr<const Ring> ring);
  // Requires the additive backend with h.
  static OperatorFamily T(std::shared_ptr<const Ring> ring);
  // Requires the multiplicative backend with v.
  static OperatorFamily tau_minus(std::shared_ptr<const Ring> ring);
  // sigma_i = ((h + a_i)/a_i) d_i - h/a_i; h = 1 recovers Su's operator.
  static OperatorFamily su(std::shared_ptr<const Ring> ring);
  // Coefficients given on simple roots, extended to all roots by the Weyl
  // action. Throws AlgebraError if the extension is inconsistent or some
  // b is not invertible.
  static OperatorFamily custom(std::shared_ptr<const Ring> ring, const std::vector<QElem>& a_simple,
                               const std::vector<QElem>& b_simple, std::string name = "custom");

  FamilyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Ring& ring() const { return *ring_; }
  std::shared_ptr<const Ring> ring_ptr() const { return ring_; }
  const RootDatum& datum() const { return ring_->datum(); }

  const QElem& a(int root) const { return a_[root]; }
  const QElem& b(int root) const { return b_[root]; }
  const QElem& b_inverse(int root) const { return b_inv_[root]; }

  // Z_{alpha_i}.
  QWElem element(int i) const;
  // Z_I = Z_{i1} ... Z_{ik}; the empty word gives d_e.
  QWElem compose(const Sequence& word) const;
  // Inverse of Z_{alpha_i} in Q_W when it exists.
  std::optional<QWElem> inverse_element(int i) const;
  // (Z_I)^{-1} = Z_{ik}^{-1} ... Z_{i1}^{-1}.
  QWElem inverse_word(const Sequence& word) const;

 private:
  OperatorFamily(std::shared_ptr<const Ring> ring, FamilyKind kind, std::string name)
      : ring_(std::move(ring)), kind_(kind), name_(std::move(name)) {}
  void finish();

  std::shared_ptr<const Ring> ring_;
  FamilyKind kind_;
  std::string name_;
  std::vector<QElem> a_, b_, b_inv_;
};

// Lexicographically least reduced words, indexed by element id.
std::vector<Sequence> lexmin_words(const RootDatum& d);
// Throws RootDatumError unless words[w] is a reduced word for w for all w.
void validate_words(const RootDatum& d, const std::vector<Sequence>& words);

// Change of basis between {d_w} and {Z_{I_w}} for a fixed family of reduced
// words. Rows are computed eagerly; c-rows are cached and the cache is
// guarded, so a BasisChange may be shared between threads.
class BasisChange {
 public:
  BasisChange(OperatorFamily family, std::vector<Sequence> words);

  const OperatorFamily& family() const { return family_; }
  const Ring& ring() const { return family_.ring(); }
  const RootDatum& datum() const { return family_.datum(); }
  const std::vector<Sequence>& words() const { return words_; }
  const Sequence& word(WeylElement w) const { return words_[w.id]; }

  const QWElem& Z(WeylElement w) const { return z_[w.id]; }
  // Coefficient of d_v in Z_{I_w}.
  const QElem& a(WeylElement w, WeylElement v) const { return a_[w.id][v.id]; }
  // d_w = sum_v b(w, v) Z_{I_v}.
  const QElem& b(WeylElement w, WeylElement v) const { return b_[w.id][v.id]; }
  // c_{J, I_w} for every w, indexed by element id.
  const std::vector<QElem>& c_row(const Sequence& J) const;
  // Expansion of an arbitrary element of Q_W in the Z basis.
  std::vector<QElem> expand(const QWElem& z) const;

 private:
  OperatorFamily family_;
  std::vector<Sequence> words_;
  std::vector<QWElem> z_;
  std::vector<std::vector<QElem>> a_, b_;
  mutable std::mutex cache_mutex_;
  mutable std::map<Sequence, std::vector<QElem>> c_cache_;
};

// Leibniz coefficients z^I_{E,F} = (B_1 ... B_k) . 1 for one word I, with E
// and F given as bitmasks (bit j-1 for position j). Values are memoized by
// the case pattern of the trailing positions, so sweeping the whole grid
// costs one B-step per distinct suffix. Not thread-safe; use one per worker.
class LeibnizTable {
 public:
  LeibnizTable(const OperatorFamily& family, Sequence word);
  const Sequence& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  const QElem& value(std::uint32_t E, std::uint32_t F);

 private:
  const QElem& suffix(int j, std::uint32_t code);

  const OperatorFamily* family_;
  Sequence word_;
  std::vector<std::unordered_map<std::uint32_t, QElem>> memo_;
  // Per simple root: 1/b, -a/b, a, a^2/b.
  std::vector<QElem> inv_b_, neg_a_over_b_, a_, a2_over_b_;
};

QElem leibniz_coefficient(const OperatorFamily& family, const Sequence& word, std::uint32_t E,
                          std::uint32_t F);
// (-1)^{k-|E|} prod_{j not in E} m_j prod_j n_j^{-1}.
QElem billey_closed_form(const OperatorFamily& family, const Sequence& word, std::uint32_t E);

// Subsequence I|_E.
Sequence restrict_word(const Sequence& word, std::uint32_t mask);

struct RelationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Quadratic and braid relations for every simple root and pair.
std::vector<RelationCheck> verify_relations(const OperatorFamily& family);

// kappa_{ab} = 1/(x_{a+b} x_b) - 1/(x_{a+b} x_{-a}) - 1/(x_a x_b) for simple
// roots a_i, a_j with braid order 3; certified to lie in S.
Poly kappa_pair(const Ring& ring, int i, int j);

// Order of s_i s_j.
int braid_order(const RootDatum& d, int i, int j);

}  // namespace demazure
