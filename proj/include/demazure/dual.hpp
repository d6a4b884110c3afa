#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demazure/twisted.hpp"

namespace demazure {

// Element of the dual module Q_W^*: a finite sum of g_w f_w, with the
// coefficient-wise product f_u f_v = [u = v] f_u.
class DualElem {
 public:
  DualElem() = default;
  explicit DualElem(const Ring& ring) : ring_(&ring) {}
  static DualElem f(const Ring& ring, WeylElement w, const QElem& coeff);
  static DualElem unity(const Ring& ring);

  const Ring* ring() const { return ring_; }
  const std::map<int, QElem>& coeffs() const { return coeffs_; }
  QElem coeff(WeylElement w) const;
  bool is_zero() const { return coeffs_.empty(); }
  DualElem& add_term(WeylElement w, const QElem& coeff);

  DualElem operator-() const;
  DualElem& operator+=(const DualElem& o);
  DualElem& operator-=(const DualElem& o);
  friend DualElem operator+(DualElem a, const DualElem& b) { return a += b; }
  friend DualElem operator-(DualElem a, const DualElem& b) { return a -= b; }
  friend DualElem operator*(const DualElem& a, const DualElem& b);
  friend DualElem operator*(const QElem& q, const DualElem& f);
  friend bool operator==(const DualElem& a, const DualElem& b);

 private:
  const Ring* ring_ = nullptr;
  std::map<int, QElem> coeffs_;
};

// p d_w . (q f_v) = q (v w^{-1})(p) f_{v w^{-1}}. This is a left action:
// bullet(z1 z2, f) = bullet(z1, bullet(z2, f)), and <z . f, z'> = <f, z' z>.
DualElem bullet(const QWElem& z, const DualElem& f);
// <sum g_w f_w, sum p_u d_u> = sum p_u g_u.
QElem pairing(const DualElem& f, const QWElem& z);

// prod_{alpha < 0} x_alpha.
Poly negative_root_product(const Ring& ring);
// pt_w = w(prod_{alpha<0} x_alpha) f_w.
DualElem point_class(const Ring& ring, WeylElement w);
// zeta^Z_I = Z_{I reversed} . pt_e.
DualElem bott_samelson_class(const OperatorFamily& family, const Sequence& word);
// Z*_{I_w} = sum_u b_{u, I_w} f_u.
DualElem dual_basis_element(const BasisChange& basis, WeylElement w);

// Solves g = sum_w k_w col_w where col_w = sum_x m[x][w] f_x and m is lower
// triangular in id order (m[x][w] = 0 unless w <= x by id) with invertible
// diagonal. Returns k indexed by id.
std::vector<QElem> triangular_expand(const Ring& ring, const std::vector<std::vector<QElem>>& m,
                                     const std::vector<QElem>& diag_inverse, const DualElem& g);

// Structure constants of {Z*_{I_w}}.
class StructureConstants {
 public:
  explicit StructureConstants(const BasisChange& basis) : basis_(&basis) {}
  const BasisChange& basis() const { return *basis_; }

  // Sum over E, F of z^{I_w}_{E,F} c_{I_w|E, I_u} c_{I_w|F, I_v}.
  QElem formula(WeylElement u, WeylElement v, WeylElement w) const;
  // All (u, v) for a fixed w, as a |W| x |W| matrix.
  std::vector<std::vector<QElem>> formula_all(WeylElement w) const;
  // Coefficients of Z*_u Z*_v in {Z*_w} from the coefficient-wise product,
  // indexed by w. Throws AlgebraError if the support leaves {w >= u, v}.
  std::vector<QElem> oracle(WeylElement u, WeylElement v) const;

 private:
  const BasisChange* basis_;
};

enum class Provenance { formula, oracle };

struct TableEntry {
  WeylElement u, v, w;
  QElem value;
};

// Nonzero structure constants for all (u, v, w), sorted by (u, v, w).
struct StructureTable {
  std::string family;
  std::string backend;
  std::string datum;
  std::vector<Sequence> words;
  Provenance provenance = Provenance::formula;
  std::vector<TableEntry> entries;
};

// Builds the table; `jobs` worker threads split the work over w (formula) or
// u (oracle). Output is independent of `jobs`.
StructureTable build_table(const BasisChange& basis, Provenance provenance, int jobs = 1,
                           std::optional<WeylElement> only_u = std::nullopt,
                           std::optional<WeylElement> only_v = std::nullopt);

// ---- cohomological stable bases (family T, additive backend with h) ----

// alpha_{w0} = prod_{alpha>0} alpha.
Poly positive_root_product(const Ring& ring);
// hat alpha_{w0} = prod_{alpha>0} (h - alpha), or prod (1 - q e^{-alpha}).
Poly positive_hat_product(const Ring& ring);

// sign > 0: T_{w^{-1}} . (alpha_{w0} f_e);
// sign < 0: (-1)^{l(w0)} T_{w^{-1} w0} . (alpha_{w0} f_{w0}).
DualElem coh_stable_basis(const OperatorFamily& t_family, WeylElement w, int sign);
// Scalar c with hY . g = c 1 where hY = sum_w d_w / (alpha_{w0} hat alpha_{w0}).
// Throws AlgebraError if the image is not a multiple of the unity.
QElem hat_y_pair(const Ring& ring, const DualElem& g);

// ---- K-theoretic stable basis (family tau, multiplicative backend with v) ----

// q_{w0} q_w^{-1/2} (tau_{w0 w})^{-1} . (prod_{alpha>0}(1 - e^alpha) f_{w0}).
DualElem k_stable_basis(const OperatorFamily& tau_family, WeylElement w);

// Expansion of the coefficient-wise product stab_u stab_v in the basis
// {stab_w}; indexed by w. `basis[w]` must be upper triangular in Bruhat
// order (support on x >= w).
std::vector<QElem> expand_in_basis(const Ring& ring, const std::vector<DualElem>& basis, const DualElem& g);

// ---- restriction ----

struct MatrixCheck {
  bool passed = false;
  std::string detail;
};

// p_w b = b b_w and a b = 1, with p_w(u, v) = z^{I_v}_{I_w, I_u},
// b(u, v) = b_{v, I_u}, b_w = diag(b_{u, I_w}), a(u, v) = a_{I_v, u}.
MatrixCheck restriction_matrix_check(const StructureConstants& sc, WeylElement w);

// Structure constants of W^J classes for a J-compatible word family. Throws
// AlgebraError if the product has support outside W^J.
std::map<int, QElem> parabolic_structure_constants(const StructureConstants& sc, const std::vector<int>& parabolic,
                                                   WeylElement u, WeylElement v);

}  // namespace demazure
