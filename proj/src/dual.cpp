#include "demazure/dual.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace demazure {

// ---------------------------------------------------------------------------
// DualElem

DualElem DualElem::f(const Ring& ring, WeylElement w, const QElem& coeff) {
  DualElem e(ring);
  e.add_term(w, coeff);
  return e;
}

DualElem DualElem::unity(const Ring& ring) {
  DualElem e(ring);
  for (auto w : ring.datum().weyl_elements()) e.coeffs_.emplace(w.id, ring.one());
  return e;
}

QElem DualElem::coeff(WeylElement w) const {
  auto it = coeffs_.find(w.id);
  if (it != coeffs_.end()) return it->second;
  return ring_ ? ring_->zero() : QElem();
}

DualElem& DualElem::add_term(WeylElement w, const QElem& coeff) {
  if (coeff.is_zero()) return *this;
  if (!ring_) ring_ = coeff.ring();
  auto [it, inserted] = coeffs_.try_emplace(w.id, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
  return *this;
}

DualElem DualElem::operator-() const {
  DualElem r = *this;
  for (auto& [w, c] : r.coeffs_) c = -c;
  return r;
}

DualElem& DualElem::operator+=(const DualElem& o) {
  for (const auto& [w, c] : o.coeffs_) add_term(WeylElement{w}, c);
  if (!ring_) ring_ = o.ring_;
  return *this;
}

DualElem& DualElem::operator-=(const DualElem& o) {
  for (const auto& [w, c] : o.coeffs_) add_term(WeylElement{w}, -c);
  if (!ring_) ring_ = o.ring_;
  return *this;
}

DualElem operator*(const DualElem& a, const DualElem& b) {
  DualElem out;
  out.ring_ = a.ring_ ? a.ring_ : b.ring_;
  for (const auto& [w, c] : a.coeffs_) {
    auto it = b.coeffs_.find(w);
    if (it != b.coeffs_.end()) out.add_term(WeylElement{w}, c * it->second);
  }
  return out;
}

DualElem operator*(const QElem& q, const DualElem& f) {
  DualElem out;
  out.ring_ = f.ring_ ? f.ring_ : q.ring();
  if (q.is_zero()) return out;
  for (const auto& [w, c] : f.coeffs_) out.add_term(WeylElement{w}, q * c);
  return out;
}

bool operator==(const DualElem& a, const DualElem& b) { return (a - b).is_zero(); }

DualElem bullet(const QWElem& z, const DualElem& f) {
  DualElem out;
  const Ring* ring = z.ring() ? z.ring() : f.ring();
  if (!ring) return out;
  out = DualElem(*ring);
  const RootDatum& d = ring->datum();
  for (const auto& [w, p] : z.terms()) {
    const WeylElement w_inv = d.inverse(WeylElement{w});
    for (const auto& [v, g] : f.coeffs()) {
      const WeylElement target = d.mul(WeylElement{v}, w_inv);
      out.add_term(target, g * ring->act(target, p));
    }
  }
  return out;
}

QElem pairing(const DualElem& f, const QWElem& z) {
  const Ring* ring = f.ring() ? f.ring() : z.ring();
  if (!ring) return QElem();
  QElem out = ring->zero();
  for (const auto& [w, p] : z.terms()) {
    auto it = f.coeffs().find(w);
    if (it != f.coeffs().end()) out += p * it->second;
  }
  return out;
}

Poly negative_root_product(const Ring& ring) {
  const RootDatum& d = ring.datum();
  Poly out(1);
  for (int root = 0; root < d.num_roots(); ++root)
    if (!d.roots()[root].positive) out = out * ring.x_root(root);
  return out;
}

DualElem point_class(const Ring& ring, WeylElement w) {
  return DualElem::f(ring, w, ring.lift(ring.act(w, negative_root_product(ring))));
}

DualElem bott_samelson_class(const OperatorFamily& family, const Sequence& word) {
  Sequence reversed(word.rbegin(), word.rend());
  return bullet(family.compose(reversed), point_class(family.ring(), family.datum().identity()));
}

DualElem dual_basis_element(const BasisChange& basis, WeylElement w) {
  DualElem out(basis.ring());
  for (auto u : basis.datum().weyl_elements()) out.add_term(u, basis.b(u, w));
  return out;
}

std::vector<QElem> triangular_expand(const Ring& ring, const std::vector<std::vector<QElem>>& m,
                                     const std::vector<QElem>& diag_inverse, const DualElem& g) {
  const int order = static_cast<int>(m.size());
  std::vector<QElem> k(order, ring.zero());
  for (int x = 0; x < order; ++x) {
    QElem s = g.coeff(WeylElement{x});
    for (int w = 0; w < x; ++w)
      if (!m[x][w].is_zero() && !k[w].is_zero()) s -= m[x][w] * k[w];
    if (!s.is_zero()) k[x] = s * diag_inverse[x];
  }
  return k;
}

// ---------------------------------------------------------------------------
// Structure constants

namespace {

struct Subwords {
  std::vector<const std::vector<QElem>*> rows;  // c-row per subset mask
};

Subwords subword_rows(const BasisChange& basis, const Sequence& word) {
  Subwords s;
  const std::uint32_t count = 1u << word.size();
  s.rows.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) s.rows.push_back(&basis.c_row(restrict_word(word, mask)));
  return s;
}

}  // namespace

QElem StructureConstants::formula(WeylElement u, WeylElement v, WeylElement w) const {
  const BasisChange& bc = *basis_;
  const Ring& ring = bc.ring();
  const Sequence& word = bc.word(w);
  const Subwords sub = subword_rows(bc, word);
  std::vector<std::uint32_t> es, fs;
  for (std::uint32_t mask = 0; mask < sub.rows.size(); ++mask) {
    if (!(*sub.rows[mask])[u.id].is_zero()) es.push_back(mask);
    if (!(*sub.rows[mask])[v.id].is_zero()) fs.push_back(mask);
  }
  QElem out = ring.zero();
  if (es.empty() || fs.empty()) return out;
  LeibnizTable table(bc.family(), word);
  for (auto e : es) {
    QElem inner = ring.zero();
    for (auto f : fs) {
      const QElem& z = table.value(e, f);
      if (!z.is_zero()) inner += z * (*sub.rows[f])[v.id];
    }
    if (!inner.is_zero()) out += (*sub.rows[e])[u.id] * inner;
  }
  return out;
}

std::vector<std::vector<QElem>> StructureConstants::formula_all(WeylElement w) const {
  const BasisChange& bc = *basis_;
  const Ring& ring = bc.ring();
  const int order = bc.datum().order();
  const Sequence& word = bc.word(w);
  const Subwords sub = subword_rows(bc, word);
  const std::uint32_t count = static_cast<std::uint32_t>(sub.rows.size());
  // Sparse view of each c-row.
  std::vector<std::vector<int>> support(count);
  for (std::uint32_t mask = 0; mask < count; ++mask)
    for (int x = 0; x < order; ++x)
      if (!(*sub.rows[mask])[x].is_zero()) support[mask].push_back(x);

  LeibnizTable table(bc.family(), word);
  std::vector<std::vector<QElem>> out(order, std::vector<QElem>(order, ring.zero()));
  std::vector<QElem> g(order, ring.zero());
  for (std::uint32_t e = 0; e < count; ++e) {
    if (support[e].empty()) continue;
    std::fill(g.begin(), g.end(), ring.zero());
    bool any = false;
    for (std::uint32_t f = 0; f < count; ++f) {
      if (support[f].empty()) continue;
      const QElem& z = table.value(e, f);
      if (z.is_zero()) continue;
      for (int v : support[f]) g[v] += z * (*sub.rows[f])[v];
      any = true;
    }
    if (!any) continue;
    for (int u : support[e]) {
      const QElem& cu = (*sub.rows[e])[u];
      for (int v = 0; v < order; ++v)
        if (!g[v].is_zero()) out[u][v] += cu * g[v];
    }
  }
  return out;
}

std::vector<QElem> StructureConstants::oracle(WeylElement u, WeylElement v) const {
  const BasisChange& bc = *basis_;
  const Ring& ring = bc.ring();
  const RootDatum& d = bc.datum();
  const int order = d.order();
  std::vector<std::vector<QElem>> m(order, std::vector<QElem>(order, ring.zero()));
  std::vector<QElem> diag_inverse(order, ring.zero());
  for (int x = 0; x < order; ++x) {
    for (int w = 0; w <= x; ++w) m[x][w] = bc.b(WeylElement{x}, WeylElement{w});
    diag_inverse[x] = bc.a(WeylElement{x}, WeylElement{x});
  }
  const DualElem g = dual_basis_element(bc, u) * dual_basis_element(bc, v);
  std::vector<QElem> k = triangular_expand(ring, m, diag_inverse, g);
  for (auto w : d.weyl_elements())
    if (!k[w.id].is_zero() && !(d.bruhat_leq(u, w) && d.bruhat_leq(v, w)))
      throw AlgebraError("product of dual classes " + d.format_element(u) + ", " + d.format_element(v) +
                         " has a term at " + d.format_element(w) + " outside the upper interval: " +
                         ring.to_string(k[w.id]));
  return k;
}

StructureTable build_table(const BasisChange& basis, Provenance provenance, int jobs,
                           std::optional<WeylElement> only_u, std::optional<WeylElement> only_v) {
  const RootDatum& d = basis.datum();
  const int order = d.order();
  StructureConstants sc(basis);
  StructureTable table;
  table.family = basis.family().name();
  table.backend = basis.ring().backend().name();
  table.datum = d.label();
  table.words = basis.words();
  table.provenance = provenance;

  auto wanted = [&](int u, int v) {
    return (!only_u || only_u->id == u) && (!only_v || only_v->id == v);
  };
  // One bucket per w (formula) or per u (oracle); filled independently.
  std::vector<std::vector<TableEntry>> buckets(order);
  auto work = [&](int index) {
    auto& bucket = buckets[index];
    if (provenance == Provenance::formula) {
      const WeylElement w{index};
      if (only_u && only_v) {
        if (!d.bruhat_leq(*only_u, w) || !d.bruhat_leq(*only_v, w)) return;
        QElem value = sc.formula(*only_u, *only_v, w);
        if (!value.is_zero()) bucket.push_back({*only_u, *only_v, w, std::move(value)});
        return;
      }
      auto all = sc.formula_all(w);
      for (int u = 0; u < order; ++u)
        for (int v = 0; v < order; ++v)
          if (wanted(u, v) && !all[u][v].is_zero()) bucket.push_back({WeylElement{u}, WeylElement{v}, w, all[u][v]});
    } else {
      const int u = index;
      for (int v = 0; v < order; ++v) {
        if (!wanted(u, v)) continue;
        auto row = sc.oracle(WeylElement{u}, WeylElement{v});
        for (int w = 0; w < order; ++w)
          if (!row[w].is_zero()) bucket.push_back({WeylElement{u}, WeylElement{v}, WeylElement{w}, row[w]});
      }
    }
  };

  const int workers = std::max(1, std::min(jobs, order));
  if (workers == 1) {
    for (int i = 0; i < order; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (int t = 0; t < workers; ++t)
      threads.emplace_back([&, t] {
        try {
          for (int i = next++; i < order; i = next++) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : threads) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (auto& bucket : buckets)
    for (auto& entry : bucket) table.entries.push_back(std::move(entry));
  std::sort(table.entries.begin(), table.entries.end(), [](const TableEntry& a, const TableEntry& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  return table;
}

// ---------------------------------------------------------------------------
// Stable bases

Poly positive_root_product(const Ring& ring) {
  const RootDatum& d = ring.datum();
  Poly out(1);
  for (int root : d.positive_roots()) out = out * ring.x_root(root);
  return out;
}

Poly positive_hat_product(const Ring& ring) {
  const RootDatum& d = ring.datum();
  const auto kind = ring.backend().law == Law::additive ? FactorSymbol::Kind::hat_additive
                                                        : FactorSymbol::Kind::hat_multiplicative;
  Poly out(1);
  for (int root : d.positive_roots()) out = out * ring.expand(FactorSymbol{kind, root});
  return out;
}

DualElem coh_stable_basis(const OperatorFamily& t_family, WeylElement w, int sign) {
  const Ring& ring = t_family.ring();
  const RootDatum& d = ring.datum();
  const QElem top = ring.lift(positive_root_product(ring));
  if (sign > 0) {
    const Sequence word = d.reduced_word(d.inverse(w));
    return bullet(t_family.compose(word), DualElem::f(ring, d.identity(), top));
  }
  const WeylElement w0 = d.longest();
  const Sequence word = d.reduced_word(d.mul(d.inverse(w), w0));
  const QElem coeff = d.length(w0) % 2 ? -top : top;
  return bullet(t_family.compose(word), DualElem::f(ring, w0, coeff));
}

QElem hat_y_pair(const Ring& ring, const DualElem& g) {
  const RootDatum& d = ring.datum();
  const auto hat = ring.backend().law == Law::additive ? FactorSymbol::Kind::hat_additive
                                                       : FactorSymbol::Kind::hat_multiplicative;
  std::vector<std::pair<FactorSymbol, int>> den;
  for (int root : d.positive_roots()) {
    den.push_back({{FactorSymbol::Kind::x_root, root}, 1});
    den.push_back({{hat, root}, 1});
  }
  const QElem c = ring.fraction(Poly(1), den);
  QWElem hy(ring);
  for (auto w : d.weyl_elements()) hy.add_term(w, ring.act(w, c));
  const DualElem image = bullet(hy, g);
  const QElem value = image.coeff(d.identity());
  for (auto w : d.weyl_elements())
    if (!(image.coeff(w) == value))
      throw AlgebraError("hY pairing is not a multiple of the unity at " + d.format_element(w));
  return value;
}

DualElem k_stable_basis(const OperatorFamily& tau_family, WeylElement w) {
  const Ring& ring = tau_family.ring();
  const RootDatum& d = ring.datum();
  const WeylElement w0 = d.longest();
  Poly top = ring.v().pow(2 * d.length(w0) - d.length(w));
  for (int root : d.positive_roots()) top = top * ring.expand(FactorSymbol{FactorSymbol::Kind::one_minus_e, root});
  const QWElem inv = tau_family.inverse_word(d.reduced_word(d.mul(w0, w)));
  return bullet(inv, DualElem::f(ring, w0, ring.lift(top)));
}

std::vector<QElem> expand_in_basis(const Ring& ring, const std::vector<DualElem>& basis, const DualElem& g) {
  const int order = static_cast<int>(basis.size());
  std::vector<std::vector<QElem>> m(order, std::vector<QElem>(order, ring.zero()));
  std::vector<QElem> diag_inverse(order, ring.zero());
  for (int w = 0; w < order; ++w) {
    for (const auto& [x, c] : basis[w].coeffs()) {
      if (x < w) throw AlgebraError("basis is not triangular");
      m[x][w] = c;
    }
    diag_inverse[w] = ring.inverse(basis[w].coeff(WeylElement{w}));
  }
  return triangular_expand(ring, m, diag_inverse, g);
}

// ---------------------------------------------------------------------------
// Restriction

MatrixCheck restriction_matrix_check(const StructureConstants& sc, WeylElement w) {
  const BasisChange& bc = sc.basis();
  const Ring& ring = bc.ring();
  const RootDatum& d = bc.datum();
  const int order = d.order();
  using Matrix = std::vector<std::vector<QElem>>;
  Matrix p(order, std::vector<QElem>(order, ring.zero()));
  for (int v = 0; v < order; ++v) {
    if (!d.bruhat_leq(w, WeylElement{v})) continue;
    auto all = sc.formula_all(WeylElement{v});
    for (int u = 0; u < order; ++u) p[u][v] = all[w.id][u];
  }
  Matrix b(order, std::vector<QElem>(order, ring.zero()));
  Matrix a(order, std::vector<QElem>(order, ring.zero()));
  for (int u = 0; u < order; ++u)
    for (int v = 0; v < order; ++v) {
      b[u][v] = bc.b(WeylElement{v}, WeylElement{u});
      a[u][v] = bc.a(WeylElement{v}, WeylElement{u});
    }
  MatrixCheck check{true, ""};
  for (int u = 0; u < order && check.passed; ++u)
    for (int x = 0; x < order; ++x) {
      QElem lhs = ring.zero(), ab = ring.zero();
      for (int v = 0; v < order; ++v) {
        if (!p[u][v].is_zero() && !b[v][x].is_zero()) lhs += p[u][v] * b[v][x];
        if (!a[u][v].is_zero() && !b[v][x].is_zero()) ab += a[u][v] * b[v][x];
      }
      const QElem rhs = b[u][x] * bc.b(WeylElement{x}, w);
      const WeylElement ue{u}, xe{x};
      if (!(lhs == rhs)) {
        check = {false, "p_w b != b b_w at (" + d.format_element(ue) + ", " + d.format_element(xe) + ")"};
        break;
      }
      if (!(ab == (u == x ? ring.one() : ring.zero()))) {
        check = {false, "a b != 1 at (" + d.format_element(ue) + ", " + d.format_element(xe) + ")"};
        break;
      }
    }
  return check;
}

std::map<int, QElem> parabolic_structure_constants(const StructureConstants& sc, const std::vector<int>& parabolic,
                                                   WeylElement u, WeylElement v) {
  const RootDatum& d = sc.basis().datum();
  const auto reps = d.min_coset_reps(parabolic);
  auto in_reps = [&](WeylElement w) { return std::find(reps.begin(), reps.end(), w) != reps.end(); };
  if (!in_reps(u) || !in_reps(v)) throw AlgebraError("parabolic structure constants need u, v in W^J");
  std::map<int, QElem> out;
  for (auto w : d.weyl_elements()) {
    if (!d.bruhat_leq(u, w) || !d.bruhat_leq(v, w)) continue;
    QElem value = sc.formula(u, v, w);
    if (value.is_zero()) continue;
    if (!in_reps(w))
      throw AlgebraError("parabolic product has a term at " + d.format_element(w) + " outside W^J");
    out.emplace(w.id, std::move(value));
  }
  return out;
}

}  // namespace demazure
