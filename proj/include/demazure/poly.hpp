#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace demazure {

using Int = boost::multiprecision::cpp_int;

// Lattice coordinates plus one slot for the extra central variable (h or v).
inline constexpr int kMaxVars = 9;

// Exponent vector. Negative entries are allowed for Laurent variables.
struct Mono {
  std::array<std::int16_t, kMaxVars> exp{};

  auto operator<=>(const Mono&) const = default;
  Mono operator*(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::int16_t>(exp[i] + o.exp[i]);
    return r;
  }
  bool is_one() const {
    for (auto e : exp)
      if (e) return false;
    return true;
  }
  // Whether this monomial is divisible by `o` with nonnegative quotient exponents.
  bool divisible_by(const Mono& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp[i] < o.exp[i]) return false;
    return true;
  }
  Mono operator/(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::int16_t>(exp[i] - o.exp[i]);
    return r;
  }
  static Mono var(int i, int power = 1) {
    Mono m;
    m.exp[i] = static_cast<std::int16_t>(power);
    return m;
  }
};

// Exact sparse multivariate (Laurent) polynomial with integer coefficients.
// Terms are kept sorted by monomial in descending lexicographic order and no
// stored coefficient is zero.
class Poly {
 public:
  struct Term {
    Mono mono;
    Int coeff;
  };

  Poly() = default;
  Poly(long c) {  // NOLINT: implicit constant embedding is convenient in formulas
    if (c != 0) terms_.push_back({Mono{}, Int(c)});
  }
  static Poly constant(const Int& c);
  static Poly monomial(const Mono& m, const Int& c = 1);
  static Poly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  Int constant_term() const;
  // Coefficient-wise minimum of exponents (only meaningful when nonzero).
  Mono min_exponents() const;
  int total_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly mul_term(const Mono& m, const Int& c) const;
  Poly pow(int k) const;
  bool operator==(const Poly& o) const;

  // Replaces each exponent vector by f(exponent vector); used by Weyl actions
  // on group-like monomials.
  template <class F>
  Poly map_monomials(F&& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({f(t.mono), t.coeff});
    return from_terms(std::move(out));
  }

  // Substitutes variable `var` by the polynomial `image`.
  Poly substitute(int var, const Poly& image) const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

// Exact quotient p / f, or nullopt when f does not divide p. With
// `laurent` set, division happens in the Laurent ring (monomials are units).
std::optional<Poly> divide_exact(const Poly& p, const Poly& f, bool laurent);

}  // namespace demazure
