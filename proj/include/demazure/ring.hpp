#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "demazure/poly.hpp"
#include "demazure/root_system.hpp"

namespace demazure {

enum class Law { additive, multiplicative };

// Formal group law plus the optional central variable: h (additive) or
// v with q = v^2 (multiplicative).
struct Backend {
  Law law = Law::additive;
  bool with_h = false;
  bool with_v = false;

  static Backend additive(bool h = false) { return {Law::additive, h, false}; }
  static Backend multiplicative(bool v = false) { return {Law::multiplicative, false, v}; }
  bool laurent() const { return law == Law::multiplicative; }
  std::string name() const;
  bool operator==(const Backend&) const = default;
};

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A denominator factor as written in formulas. `root` is a root index of the
// datum.
struct FactorSymbol {
  enum class Kind {
    x_root,              // x_beta
    hat_additive,        // h - beta
    one_minus_e,         // 1 - e^beta
    hat_multiplicative,  // 1 - q e^{-beta}
  };
  Kind kind = Kind::x_root;
  int root = 0;
};

// Canonical representative of a factor up to a unit: x-type factors are keyed
// by a positive root, hat-type factors by any root.
struct FactorKey {
  enum class Kind : std::uint8_t { x, hat };
  Kind kind = Kind::x;
  int root = 0;
  auto operator<=>(const FactorKey&) const = default;
};

class Ring;

// Element of the localization Q: a numerator in S over a product of
// canonical factors. Normalized so that no denominator factor divides the
// numerator. A default-constructed QElem is zero and belongs to no ring.
class QElem {
 public:
  using Denominator = std::vector<std::pair<FactorKey, int>>;  // sorted, positive powers

  QElem() = default;
  QElem(const Ring& ring, Poly num, Denominator den = {});

  const Ring* ring() const { return ring_; }
  const Poly& num() const { return num_; }
  const Denominator& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool in_S() const { return den_.empty(); }
  // Numerator, provided the denominator is empty.
  const Poly& as_poly() const;

  QElem operator-() const;
  friend QElem operator+(const QElem& a, const QElem& b);
  friend QElem operator-(const QElem& a, const QElem& b);
  friend QElem operator*(const QElem& a, const QElem& b);
  friend QElem operator/(const QElem& a, const QElem& b);
  QElem& operator+=(const QElem& o) { return *this = *this + o; }
  QElem& operator-=(const QElem& o) { return *this = *this - o; }
  QElem& operator*=(const QElem& o) { return *this = *this * o; }
  // Equality by cross-multiplication.
  friend bool operator==(const QElem& a, const QElem& b);

 private:
  friend class Ring;
  const Ring* ring_ = nullptr;
  Poly num_;
  Denominator den_;
};

// Exact arithmetic context for the formal group algebra S of one root datum
// and backend, and its localization Q at root classes.
class Ring {
 public:
  Ring(std::shared_ptr<const RootDatum> datum, Backend backend);
  Ring(const Ring&) = delete;
  Ring& operator=(const Ring&) = delete;

  const RootDatum& datum() const { return *datum_; }
  std::shared_ptr<const RootDatum> datum_ptr() const { return datum_; }
  const Backend& backend() const { return backend_; }
  int extra_slot() const { return datum_->rank(); }

  // ---- elements of S ----
  Poly x_class(const Weight& weight) const;
  Poly x_root(int root) const { return x_class(datum_->roots()[root].weight); }
  // e^{weight} (multiplicative backend only).
  Poly exp_weight(const Weight& weight) const;
  Poly h() const;
  Poly v() const;
  Poly q() const;  // v^2
  // F(x, y) for the backend's formal group law.
  Poly fgl(const Poly& x, const Poly& y) const;
  // kappa_lambda = 1/x_lambda + 1/x_{-lambda}, certified to lie in S.
  Poly kappa(const Weight& weight) const;

  // Weyl action on S (fixes h and v).
  Poly act(WeylElement w, const Poly& p) const;
  Poly act_simple(int i, const Poly& p) const;

  // ---- factors ----
  std::pair<Poly, FactorKey> canonical(const FactorSymbol& f) const;  // (unit, key)
  FactorSymbol symbol_for(FactorSymbol::Kind kind, const Weight& beta) const;
  const Poly& expand(const FactorKey& key) const;
  // sum a_i b_i over one common denominator, normalized once at the end.
  QElem sum_of_products(const std::vector<std::pair<const QElem*, const QElem*>>& terms) const;
  Poly expand(const FactorSymbol& f) const;
  std::optional<Poly> divide_exact(const Poly& p, const FactorSymbol& f) const;
  // False only if the factor certainly does not divide p.
  bool may_divide(const Poly& p, const FactorKey& key) const;

  // ---- elements of Q ----
  QElem zero() const { return QElem(*this, Poly{}); }
  QElem one() const { return QElem(*this, Poly(1)); }
  QElem lift(Poly p) const { return QElem(*this, std::move(p)); }
  // p / (f1^k1 f2^k2 ...)
  QElem fraction(Poly p, const std::vector<std::pair<FactorSymbol, int>>& den) const;
  QElem inverse_factor(const FactorSymbol& f) const { return fraction(Poly(1), {{f, 1}}); }
  QElem act(WeylElement w, const QElem& q) const;
  QElem act_simple(int i, const QElem& q) const;
  // Inverse of q, provided its numerator is a unit times a product of
  // known factors.
  std::optional<QElem> try_inverse(const QElem& q) const;
  QElem inverse(const QElem& q) const;

  // ---- text ----
  std::string to_string(const Poly& p) const;
  std::string to_string(const QElem& q) const;
  std::string factor_name(const FactorKey& key) const;
  Poly parse_poly(const std::string& text) const;

 private:
  friend class QElem;
  void normalize(QElem& q) const;
  bool is_unit(const Poly& p) const;
  Poly unit_inverse(const Poly& u) const;

  std::shared_ptr<const RootDatum> datum_;
  Backend backend_;
  std::vector<Poly> x_factor_;    // by positive root
  std::vector<Poly> hat_factor_;  // by root
  // Additive backend: images of the lattice variables under each simple
  // reflection; only variables that move are listed.
  std::vector<std::vector<std::pair<int, Poly>>> reflection_images_;
  std::vector<FactorKey> candidates_;
  // Per factor, a point (values then inverses, modulo a prime) where the
  // factor vanishes; empty when no such point is known. Used to reject
  // non-divisible numerators before attempting exact division.
  std::vector<std::vector<std::uint64_t>> x_zero_, hat_zero_;
};

}  // namespace demazure
