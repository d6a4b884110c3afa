#include "demazure/verify.hpp"

#include <functional>
#include <map>
#include <random>

namespace demazure {

void CheckResult::fail(std::string location, std::string formula, std::string oracle) {
  passed = false;
  discrepancies.push_back({std::move(location), std::move(formula), std::move(oracle)});
}

namespace {

std::string name(const RootDatum& d, WeylElement w) {
  const std::string s = d.format_element(w);
  return s.empty() ? "e" : s;
}

std::string word_name(const RootDatum& d, const Sequence& seq) {
  return seq.empty() ? "e" : d.format_word(seq);
}

std::string triple(const RootDatum& d, WeylElement u, WeylElement v, WeylElement w) {
  return "u=" + name(d, u) + " v=" + name(d, v) + " w=" + name(d, w);
}

// Calls f on every sequence over the simple indices of length <= max_len.
void for_each_sequence(int rank, int max_len, const std::function<void(const Sequence&)>& f) {
  Sequence seq;
  std::function<void()> rec = [&] {
    f(seq);
    if (static_cast<int>(seq.size()) == max_len) return;
    for (int i = 0; i < rank; ++i) {
      seq.push_back(i);
      rec();
      seq.pop_back();
    }
  };
  rec();
}

Poly random_element(const Ring& ring, std::mt19937_64& rng) {
  const int n = ring.datum().rank();
  const Backend& be = ring.backend();
  std::uniform_int_distribution<int> coeff(-3, 3), count(1, 4);
  std::vector<Poly::Term> terms;
  const int k = count(rng);
  for (int t = 0; t < k; ++t) {
    Mono m;
    if (be.law == Law::additive) {
      std::uniform_int_distribution<int> var(0, n + (be.with_h ? 1 : 0));  // slot n is h when present; the last value adds nothing
      for (int deg = 0; deg < 2; ++deg) {
        const int x = var(rng);
        if (x < n) ++m.exp[x];
        else if (be.with_h && x == n) ++m.exp[ring.extra_slot()];
      }
    } else {
      std::uniform_int_distribution<int> e(-1, 1), vp(-1, 1);
      for (int i = 0; i < n; ++i) m.exp[i] = static_cast<std::int16_t>(e(rng));
      if (be.with_v) m.exp[ring.extra_slot()] = static_cast<std::int16_t>(vp(rng));
    }
    terms.push_back({m, Int(coeff(rng))});
  }
  return Poly::from_terms(std::move(terms));
}

}  // namespace

CheckResult check_formula_vs_oracle(const BasisChange& basis, int jobs) {
  CheckResult r{"structure constants: formula = oracle (" + basis.family().name() + ", " +
                    basis.ring().backend().name() + ", " + basis.datum().label() + ")",
                true, "", {}};
  const RootDatum& d = basis.datum();
  const Ring& ring = basis.ring();
  StructureTable f, o;
  try {
    f = build_table(basis, Provenance::formula, jobs);
    o = build_table(basis, Provenance::oracle, jobs);
  } catch (const AlgebraError& e) {
    r.passed = false;
    r.detail = e.what();
    return r;
  }
  std::map<std::tuple<int, int, int>, const QElem*> fm, om;
  for (const auto& e : f.entries) fm[{e.u.id, e.v.id, e.w.id}] = &e.value;
  for (const auto& e : o.entries) om[{e.u.id, e.v.id, e.w.id}] = &e.value;
  auto text = [&](const std::map<std::tuple<int, int, int>, const QElem*>& m, const std::tuple<int, int, int>& k) {
    auto it = m.find(k);
    return it == m.end() ? std::string("0") : ring.to_string(*it->second);
  };
  std::map<std::tuple<int, int, int>, bool> keys;
  for (auto& [k, _] : fm) keys[k] = true;
  for (auto& [k, _] : om) keys[k] = true;
  for (auto& [k, _] : keys) {
    auto fi = fm.find(k), oi = om.find(k);
    const bool same = fi != fm.end() && oi != om.end() ? *fi->second == *oi->second : false;
    if (!same) {
      auto [u, v, w] = k;
      r.fail(triple(d, WeylElement{u}, WeylElement{v}, WeylElement{w}), text(fm, k), text(om, k));
    }
  }
  r.detail = std::to_string(f.entries.size()) + " nonzero constants";
  return r;
}

CheckResult check_duality(const BasisChange& basis) {
  CheckResult r{"duality <Z*_u, Z_v> = [u = v] (" + basis.family().name() + ", " + basis.ring().backend().name() +
                    ", " + basis.datum().label() + ")",
                true, "", {}};
  const RootDatum& d = basis.datum();
  const Ring& ring = basis.ring();
  for (auto u : d.weyl_elements()) {
    const DualElem zu = dual_basis_element(basis, u);
    for (auto v : d.weyl_elements()) {
      const QElem p = pairing(zu, basis.Z(v));
      const QElem expected = u == v ? ring.one() : ring.zero();
      if (!(p == expected)) r.fail("u=" + name(d, u) + " v=" + name(d, v), ring.to_string(p),
                                  ring.to_string(expected));
    }
  }
  return r;
}

CheckResult check_round_trip(const BasisChange& basis) {
  CheckResult r{"round trip d_w -> Z basis -> d_w (" + basis.family().name() + ", " + basis.datum().label() + ")",
                true, "", {}};
  const RootDatum& d = basis.datum();
  const Ring& ring = basis.ring();
  for (auto w : d.weyl_elements()) {
    const auto coeffs = basis.expand(QWElem::delta(ring, w));
    QWElem back(ring);
    for (auto v : d.weyl_elements())
      if (!coeffs[v.id].is_zero()) back += coeffs[v.id] * basis.Z(v);
    if (!(back == QWElem::delta(ring, w))) r.fail("w=" + name(d, w), "round trip", "d_w");
  }
  return r;
}

CheckResult check_c_support(const BasisChange& basis, int max_len) {
  CheckResult r{"c_{J,I_w} = 0 unless w <= Demazure product (" + basis.family().name() + ", " +
                    basis.ring().backend().name() + ", " + basis.datum().label() + ")",
                true, "", {}};
  const RootDatum& d = basis.datum();
  const Ring& ring = basis.ring();
  int count = 0;
  for_each_sequence(d.rank(), max_len, [&](const Sequence& J) {
    ++count;
    const WeylElement top = d.demazure_product(J);
    const auto& row = basis.c_row(J);
    for (auto w : d.weyl_elements())
      if (!row[w.id].is_zero() && !d.bruhat_leq(w, top))
        r.fail("J=" + word_name(d, J) + " w=" + name(d, w), ring.to_string(row[w.id]), "0");
  });
  r.detail = std::to_string(count) + " sequences";
  return r;
}

CheckResult check_leibniz_rule(const OperatorFamily& family, int max_len, int samples, std::uint64_t seed) {
  const Ring& ring = family.ring();
  const RootDatum& d = family.datum();
  CheckResult r{"generalized Leibniz rule (" + family.name() + ", " + ring.backend().name() + ", " + d.label() + ")",
                true, "", {}};
  std::mt19937_64 rng(seed);
  std::vector<QElem> ps, qs;
  for (int s = 0; s < samples; ++s) ps.push_back(ring.lift(random_element(ring, rng)));
  for (int s = 0; s < samples; ++s) qs.push_back(ring.lift(random_element(ring, rng)));

  // Z_J x = Z_{j1}(Z_{J'} x) with J = (j1, J'), memoized on J for every sample.
  std::map<Sequence, std::vector<QElem>> image_cache;
  std::function<const std::vector<QElem>&(const Sequence&)> images_of = [&](const Sequence& J) -> const std::vector<QElem>& {
    auto it = image_cache.find(J);
    if (it != image_cache.end()) return it->second;
    std::vector<QElem> out;
    if (J.empty()) {
      out = ps;
      out.insert(out.end(), qs.begin(), qs.end());
    } else {
      const Sequence rest(J.begin() + 1, J.end());
      const auto& inner = images_of(rest);  // map nodes are stable
      const int i = J.front();
      const WeylElement s = d.simple_reflection(i);
      for (const auto& x : inner) out.push_back(family.a(i) * x + family.b(i) * ring.act(s, x));
    }
    return image_cache.emplace(J, std::move(out)).first->second;
  };
  int sequences = 0;
  for_each_sequence(d.rank(), max_len, [&](const Sequence& I) {
    ++sequences;
    const std::uint32_t count = 1u << I.size();
    LeibnizTable table(family, I);
    std::vector<std::vector<QElem>> P(ps.size()), Qv(qs.size());
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      const auto& im = images_of(restrict_word(I, mask));
      for (std::size_t s = 0; s < ps.size(); ++s) P[s].push_back(im[s]);
      for (std::size_t t = 0; t < qs.size(); ++t) Qv[t].push_back(im[ps.size() + t]);
    }
    const QWElem zi = family.compose(I);
    for (std::size_t t = 0; t < qs.size(); ++t) {
      std::vector<QElem> g(count, ring.zero());
      std::vector<std::pair<const QElem*, const QElem*>> terms;
      for (std::uint32_t e = 0; e < count; ++e) {
        terms.clear();
        for (std::uint32_t f = 0; f < count; ++f) {
          const QElem& z = table.value(e, f);
          if (!z.is_zero() && !Qv[t][f].is_zero()) terms.emplace_back(&z, &Qv[t][f]);
        }
        g[e] = ring.sum_of_products(terms);
      }
      for (std::size_t s = 0; s < ps.size(); ++s) {
        terms.clear();
        for (std::uint32_t e = 0; e < count; ++e)
          if (!g[e].is_zero() && !P[s][e].is_zero()) terms.emplace_back(&P[s][e], &g[e]);
        const QElem rhs = ring.sum_of_products(terms);
        const QElem lhs = act(zi, ps[s] * qs[t]);
        if (!(lhs == rhs))
          r.fail("I=" + word_name(d, I) + " p=" + ring.to_string(ps[s]) + " q=" + ring.to_string(qs[t]),
                 ring.to_string(rhs), ring.to_string(lhs));
      }
    }
  });
  r.detail = std::to_string(sequences) + " sequences x " + std::to_string(samples * samples) + " pairs";
  return r;
}

CheckResult check_billey(const OperatorFamily& family, int max_len) {
  const Ring& ring = family.ring();
  const RootDatum& d = family.datum();
  CheckResult r{"Billey closed form = B-product (" + family.name() + ", " + ring.backend().name() + ", " +
                    d.label() + ")",
                true, "", {}};
  int sequences = 0;
  for_each_sequence(d.rank(), max_len, [&](const Sequence& I) {
    ++sequences;
    LeibnizTable table(family, I);
    const std::uint32_t full = (1u << I.size()) - 1;
    for (std::uint32_t e = 0; e <= full; ++e) {
      const QElem closed = billey_closed_form(family, I, e);
      const QElem& left = table.value(full, e);
      const QElem& right = table.value(e, full);
      if (!(left == closed) || !(right == closed))
        r.fail("I=" + word_name(d, I) + " E=" + word_name(d, restrict_word(I, e)) + " mask=" + std::to_string(e),
               ring.to_string(closed), ring.to_string(left) + " | " + ring.to_string(right));
    }
  });
  r.detail = std::to_string(sequences) + " sequences";
  return r;
}

CheckResult check_restriction_matrices(const BasisChange& basis) {
  const RootDatum& d = basis.datum();
  CheckResult r{"restriction matrices p_w = b b_w b^{-1} (" + basis.family().name() + ", " +
                    basis.ring().backend().name() + ", " + d.label() + ")",
                true, "", {}};
  StructureConstants sc(basis);
  for (auto w : d.weyl_elements()) {
    const MatrixCheck m = restriction_matrix_check(sc, w);
    if (!m.passed) r.fail("w=" + name(d, w), m.detail, "identity");
  }
  return r;
}

CheckResult check_restriction_independence(const OperatorFamily& family) {
  const Ring& ring = family.ring();
  const RootDatum& d = family.datum();
  CheckResult r{"z^{I_v}_{I_w,I_v} = b_{v,I_w} over all reduced words of v (" + family.name() + ", " +
                    ring.backend().name() + ", " + d.label() + ")",
                true, "", {}};
  const auto base = lexmin_words(d);
  int words_checked = 0;
  for (auto v : d.weyl_elements()) {
    std::vector<QElem> first;
    for (const auto& word : d.all_reduced_words(v)) {
      ++words_checked;
      auto words = base;
      words[v.id] = word;
      BasisChange bc(family, words);
      StructureConstants sc(bc);
      std::vector<QElem> values;
      for (auto w : d.weyl_elements()) {
        QElem value = d.bruhat_leq(w, v) ? sc.formula(w, v, v) : ring.zero();
        const QElem& b = bc.b(v, w);
        const std::string where = "v=" + name(d, v) + " I_v=" + word_name(d, word) + " w=" + name(d, w);
        if (!(value == b)) r.fail(where, ring.to_string(value), ring.to_string(b));
        if (!first.empty() && !(value == first[w.id]))
          r.fail(where + " (word dependence)", ring.to_string(value), ring.to_string(first[w.id]));
        values.push_back(std::move(value));
      }
      if (first.empty()) first = std::move(values);
    }
  }
  r.detail = std::to_string(words_checked) + " reduced words";
  return r;
}

CheckResult check_sign_bridge(std::shared_ptr<const Ring> ring) {
  const RootDatum& d = ring->datum();
  CheckResult r{"sign bridge x = (-1)^{l(w)+l(u)+l(v)} y (" + ring->backend().name() + ", " + d.label() + ")", true,
                "", {}};
  if (ring->backend().law != Law::additive) {
    r.passed = false;
    r.detail = "needs the additive backend";
    return r;
  }
  const auto words = lexmin_words(d);
  BasisChange bx(OperatorFamily::X(ring), words), by(OperatorFamily::Y(ring), words);
  StructureConstants sx(bx), sy(by);
  for (auto w : d.weyl_elements()) {
    const auto tx = sx.formula_all(w), ty = sy.formula_all(w);
    for (auto u : d.weyl_elements())
      for (auto v : d.weyl_elements()) {
        const int sign = (d.length(w) + d.length(u) + d.length(v)) % 2 ? -1 : 1;
        const QElem expected = sign < 0 ? -ty[u.id][v.id] : ty[u.id][v.id];
        if (!(tx[u.id][v.id] == expected))
          r.fail(triple(d, u, v, w), ring->to_string(tx[u.id][v.id]), ring->to_string(expected));
      }
    const DualElem zx = bott_samelson_class(bx.family(), words[w.id]);
    const DualElem zy = bott_samelson_class(by.family(), words[w.id]);
    const DualElem expected = d.length(w) % 2 ? -zy : zy;
    if (!(zx == expected)) r.fail("zeta w=" + name(d, w), "zeta^X", "(-1)^l(w) zeta^Y");
  }
  return r;
}

CheckResult check_parabolic(std::shared_ptr<const Ring> ring, FamilyKind kind, const std::vector<int>& parabolic) {
  const RootDatum& d = ring->datum();
  std::string jtext;
  for (int j : parabolic) jtext += std::to_string(j + 1);
  OperatorFamily family = kind == FamilyKind::Y ? OperatorFamily::Y(ring) : OperatorFamily::X(ring);
  CheckResult r{"parabolic support in W^J, J={" + jtext + "} (" + family.name() + ", " + ring->backend().name() +
                    ", " + d.label() + ")",
                true, "", {}};
  BasisChange bc(family, d.j_compatible_words(parabolic));
  StructureConstants sc(bc);
  const auto reps = d.min_coset_reps(parabolic);
  WeylElement longest = reps.front();
  for (auto u : reps)
    if (d.length(u) > d.length(longest)) longest = u;
  for (auto u : reps)
    for (auto v : reps) {
      try {
        parabolic_structure_constants(sc, parabolic, u, v);
      } catch (const AlgebraError& e) {
        r.fail("u=" + name(d, u) + " v=" + name(d, v), e.what(), "support in W^J");
      }
    }
  for (auto v : reps)
    for (auto w : d.weyl_elements()) {
      if (w == longest) continue;
      const QElem value = sc.formula(longest, v, w);
      if (!value.is_zero()) r.fail(triple(d, longest, v, w) + " (u longest in W^J)", ring->to_string(value), "0");
    }
  r.detail = std::to_string(reps.size()) + " coset representatives";
  return r;
}

CheckResult check_relations(const OperatorFamily& family) {
  CheckResult r{"relations (" + family.name() + ", " + family.ring().backend().name() + ", " + family.datum().label() +
                    ")",
                true, "", {}};
  int count = 0;
  for (const auto& rel : verify_relations(family)) {
    ++count;
    if (!rel.passed) r.fail(rel.name, rel.detail, "0");
  }
  r.detail = std::to_string(count) + " relations";
  return r;
}

// ---------------------------------------------------------------------------
// Stable bases

CheckResult check_coh_stable_basis(const OperatorFamily& t_family) {
  const Ring& ring = t_family.ring();
  const RootDatum& d = ring.datum();
  CheckResult r{"cohomological stable basis: pairing identity and stab = (-1)^{l(w0)} hat alpha_{w0} T* (" + d.label() +
                    ")",
                true, "", {}};
  BasisChange bc(t_family, lexmin_words(d));
  const int sign = d.length(d.longest()) % 2 ? -1 : 1;
  const QElem hat = ring.lift(positive_hat_product(ring));
  const QElem signed_one = sign < 0 ? -ring.one() : ring.one();
  std::vector<DualElem> plus, minus;
  for (auto w : d.weyl_elements()) {
    plus.push_back(coh_stable_basis(t_family, w, 1));
    minus.push_back(coh_stable_basis(t_family, w, -1));
    const DualElem t_star = hat * dual_basis_element(bc, w);
    const DualElem expected = sign < 0 ? -t_star : t_star;
    if (!(minus.back() == expected)) r.fail("stab^- w=" + name(d, w), "stab^-", "(-1)^l(w0) hat T*");
    for (const auto& [x, c] : plus.back().coeffs())
      if (!d.bruhat_leq(WeylElement{x}, w)) r.fail("stab^+ support w=" + name(d, w), ring.to_string(c), "0");
    for (const auto& [x, c] : minus.back().coeffs())
      if (!d.bruhat_leq(w, WeylElement{x})) r.fail("stab^- support w=" + name(d, w), ring.to_string(c), "0");
  }
  for (auto v : d.weyl_elements())
    for (auto u : d.weyl_elements()) {
      const std::string where = "v=" + name(d, v) + " u=" + name(d, u);
      try {
        const QElem p = hat_y_pair(ring, plus[v.id] * minus[u.id]);
        const QElem expected = u == v ? signed_one : ring.zero();
        if (!(p == expected)) r.fail("pairing " + where, ring.to_string(p), ring.to_string(expected));
        const QElem p2 = hat_y_pair(ring, plus[v.id] * (hat * dual_basis_element(bc, u)));
        const QElem expected2 = u == v ? ring.one() : ring.zero();
        if (!(p2 == expected2)) r.fail("pairing with hat T* " + where, ring.to_string(p2), ring.to_string(expected2));
      } catch (const AlgebraError& e) {
        r.fail("pairing " + where, e.what(), "scalar");
      }
    }
  return r;
}

CheckResult check_k_stable_basis(const OperatorFamily& tau_family) {
  const Ring& ring = tau_family.ring();
  const RootDatum& d = ring.datum();
  CheckResult r{"K-theoretic stable basis: stab = q_w^{1/2} hat x_{w0} tau* (" + d.label() + ")", true, "", {}};
  BasisChange bc(tau_family, lexmin_words(d));
  const QElem hat = ring.lift(positive_hat_product(ring));
  for (auto w : d.weyl_elements()) {
    const DualElem stab = k_stable_basis(tau_family, w);
    const DualElem expected = ring.lift(ring.v().pow(d.length(w))) * hat * dual_basis_element(bc, w);
    if (!(stab == expected)) r.fail("w=" + name(d, w), "stab^-", "q_w^{1/2} hat x_{w0} tau*");
  }
  return r;
}

StableConstants::StableConstants(const BasisChange& basis) : basis_(&basis) {
  const FamilyKind fk = basis.family().kind();
  if (fk == FamilyKind::T) kind_ = Kind::cohomology;
  else if (fk == FamilyKind::tau_minus) kind_ = Kind::k_theory;
  else throw AlgebraError("stable bases need family t or tau");
  for (auto w : basis.datum().weyl_elements())
    stab_.push_back(kind_ == Kind::cohomology ? coh_stable_basis(basis.family(), w, -1)
                                              : k_stable_basis(basis.family(), w));
}

std::vector<QElem> StableConstants::oracle(WeylElement u, WeylElement v) const {
  return expand_in_basis(basis_->ring(), stab_, stab_[u.id] * stab_[v.id]);
}

QElem StableConstants::formula(WeylElement u, WeylElement v, WeylElement w) const {
  const Ring& ring = basis_->ring();
  const RootDatum& d = ring.datum();
  StructureConstants sc(*basis_);
  const QElem sum = sc.formula(u, v, w);
  const QElem hat = ring.lift(positive_hat_product(ring));
  if (kind_ == Kind::cohomology) return hat * hat * sum;
  const int power = d.length(u) + d.length(v) - d.length(w);
  return ring.lift(Poly::monomial(Mono::var(ring.extra_slot(), power))) * hat * sum;
}

CheckResult StableConstants::compare(std::optional<WeylElement> only_u, std::optional<WeylElement> only_v) const {
  const Ring& ring = basis_->ring();
  const RootDatum& d = ring.datum();
  CheckResult r{std::string(kind_ == Kind::cohomology ? "cohomological" : "K-theoretic") +
                    " stable constants: formula = oracle (" + d.label() + ")",
                true, "", {}};
  const QElem hat = ring.lift(positive_hat_product(ring));
  const bool odd = d.length(d.longest()) % 2;
  StructureConstants sc(*basis_);
  bool single_power = true;  // oracle = (-1)^{l(w0)} hat * sum everywhere
  for (auto u : d.weyl_elements()) {
    if (only_u && *only_u != u) continue;
    for (auto v : d.weyl_elements()) {
      if (only_v && *only_v != v) continue;
      const auto row = oracle(u, v);
      for (auto w : d.weyl_elements()) {
        const bool above = d.bruhat_leq(u, w) && d.bruhat_leq(v, w);
        const QElem f = above ? formula(u, v, w) : ring.zero();
        if (!(f == row[w.id])) r.fail(triple(d, u, v, w), ring.to_string(f), ring.to_string(row[w.id]));
        if (kind_ == Kind::cohomology && above) {
          const QElem one_power = hat * sc.formula(u, v, w);
          if (!((odd ? -one_power : one_power) == row[w.id])) single_power = false;
        }
      }
    }
  }
  if (kind_ == Kind::cohomology)
    r.detail = single_power ? "oracle = (-1)^{l(w0)} hat alpha_{w0} sum t^{I_w}_{E,F} at every entry"
                            : "oracle differs from (-1)^{l(w0)} hat alpha_{w0} sum t^{I_w}_{E,F} somewhere";
  return r;
}

}  // namespace demazure
