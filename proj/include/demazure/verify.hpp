#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demazure/dual.hpp"

namespace demazure {

struct Discrepancy {
  std::string location;
  std::string formula;
  std::string oracle;
};

// Outcome of one named property check. `discrepancies` lists every place
// where a closed formula and its independent oracle disagree.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
  std::vector<Discrepancy> discrepancies;

  void fail(std::string location, std::string formula, std::string oracle);
};

// Every structure constant by the subset formula and by the oracle.
CheckResult check_formula_vs_oracle(const BasisChange& basis, int jobs = 1);
// <Z*_{I_u}, Z_{I_v}> = [u = v].
CheckResult check_duality(const BasisChange& basis);
// d_w expanded in the Z basis and back.
CheckResult check_round_trip(const BasisChange& basis);
// c_{J, I_w} = 0 unless w <= Demazure product of J, for all J with |J| <= max_len.
CheckResult check_c_support(const BasisChange& basis, int max_len);
// Z_I (pq) = sum z_{E,F} (Z_E p)(Z_F q) for every I with |I| <= max_len on
// samples x samples random pairs.
CheckResult check_leibniz_rule(const OperatorFamily& family, int max_len, int samples, std::uint64_t seed);
// z_{[k],E} = z_{E,[k]} = closed form for every I with |I| <= max_len.
CheckResult check_billey(const OperatorFamily& family, int max_len);
// p_w b = b b_w and a b = 1 for every w.
CheckResult check_restriction_matrices(const BasisChange& basis);
// z^{I_v}_{I_w, I_v} = b_{v, I_w} for every reduced word I_v of v, and the
// value does not depend on the word.
CheckResult check_restriction_independence(const OperatorFamily& family);
// Additive backend: x^{I_w}_{u,v} = (-1)^{l(w)+l(u)+l(v)} y^{I_w}_{u,v} and
// zeta^X_w = (-1)^{l(w)} zeta^Y_w.
CheckResult check_sign_bridge(std::shared_ptr<const Ring> ring);
// Products of W^J classes stay in W^J; u longest in W^J gives only w = u.
CheckResult check_parabolic(std::shared_ptr<const Ring> ring, FamilyKind kind, const std::vector<int>& parabolic);
// Quadratic and braid relations.
CheckResult check_relations(const OperatorFamily& family);

// ---- stable bases ----

// Pairing identity and stab^- = (-1)^{l(w0)} hat alpha_{w0} T*_w.
CheckResult check_coh_stable_basis(const OperatorFamily& t_family);
// stab^-_w = q_w^{1/2} hat x_{w0} (tau_w)*.
CheckResult check_k_stable_basis(const OperatorFamily& tau_family);

// Expansion coefficients of stab_u stab_v in {stab_w} (the oracle route).
class StableConstants {
 public:
  enum class Kind { cohomology, k_theory };
  // `basis` must use family T (cohomology) or tau (K-theory).
  explicit StableConstants(const BasisChange& basis);
  Kind kind() const { return kind_; }
  const DualElem& stab(WeylElement w) const { return stab_[w.id]; }
  // Oracle values indexed by w.
  std::vector<QElem> oracle(WeylElement u, WeylElement v) const;
  // Subset formula as stated: hat alpha_{w0}^2 sum t^{I_w}_{E,F} (cohomology)
  // or q^{(l(u)+l(v)-l(w))/2} hat x_{w0} sum P c c (K-theory).
  QElem formula(WeylElement u, WeylElement v, WeylElement w) const;
  // Compares both routes over all (u, v, w) or one (u, v).
  CheckResult compare(std::optional<WeylElement> u = std::nullopt, std::optional<WeylElement> v = std::nullopt) const;

 private:
  const BasisChange* basis_;
  Kind kind_;
  std::vector<DualElem> stab_;
};

}  // namespace demazure
