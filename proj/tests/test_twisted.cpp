#include <doctest.h>

#include "demazure/verify.hpp"

using namespace demazure;

namespace {

std::shared_ptr<const Ring> ring_for(const char* label, Backend backend) {
  auto d = std::make_shared<const RootDatum>(RootDatum::from_type(label));
  return std::make_shared<const Ring>(d, backend);
}

int root_of(const RootDatum& d, Weight simple_coords) { return *d.root_index_simple_coords(simple_coords); }

}  // namespace

TEST_CASE("delta_w in the X basis for A2") {
  for (auto backend : {Backend::additive(), Backend::multiplicative()}) {
    auto ring = ring_for("A2", backend);
    const RootDatum& d = ring->datum();
    BasisChange bc(OperatorFamily::X(ring), lexmin_words(d));
    const QElem x1 = ring->lift(ring->x_root(0)), x2 = ring->lift(ring->x_root(1));
    const QElem x13 = ring->lift(ring->x_root(root_of(d, {1, 1})));
    const QElem kappa = ring->lift(ring->kappa(d.roots()[0].weight));
    auto w = [&](const char* s) { return d.parse_element(s); };
    auto b = [&](const char* u, const char* v) { return bc.b(w(u), w(v)); };

    CHECK(b("", "") == ring->one());
    CHECK(b("1", "") == ring->one());
    CHECK(b("1", "1") == -x1);
    CHECK(b("2", "2") == -x2);
    CHECK(b("12", "1") == -x1);
    CHECK(b("12", "2") == -x13);
    CHECK(b("12", "12") == x1 * x13);
    CHECK(b("21", "2") == -x2);
    CHECK(b("21", "1") == -x13);
    CHECK(b("21", "21") == x2 * x13);
    CHECK(b("121", "") == ring->one());
    CHECK(b("121", "2") == -x13);
    CHECK(b("121", "1") == -(x1 + x2 - kappa * x1 * x2));
    CHECK(b("121", "1") == -x13);
    CHECK(b("121", "12") == x1 * x13);
    CHECK(b("121", "21") == x2 * x13);
    CHECK(b("121", "121") == -(x1 * x2 * x13));
    CHECK(b("1", "2").is_zero());
    CHECK(b("12", "21").is_zero());
  }
}

TEST_CASE("change of basis matrices are triangular and inverse") {
  for (const char* label : {"A2", "B2", "G2"}) {
    auto ring = ring_for(label, Backend::multiplicative());
    const RootDatum& d = ring->datum();
    BasisChange bc(OperatorFamily::Y(ring), lexmin_words(d));
    for (auto u : d.weyl_elements())
      for (auto v : d.weyl_elements()) {
        if (!d.bruhat_leq(v, u)) {
          CHECK(bc.a(u, v).is_zero());
          CHECK(bc.b(u, v).is_zero());
        }
        if (d.bruhat_leq(v, u)) CHECK(bc.b(u, v).in_S());
      }
    CHECK(check_round_trip(bc).passed);
  }
}

TEST_CASE("relations of the preset families") {
  for (const char* label : {"A2", "B2", "G2"}) {
    for (auto backend : {Backend::additive(), Backend::multiplicative()}) {
      auto ring = ring_for(label, backend);
      CHECK(check_relations(OperatorFamily::X(ring)).passed);
      CHECK(check_relations(OperatorFamily::Y(ring)).passed);
    }
    CHECK(check_relations(OperatorFamily::T(ring_for(label, Backend::additive(true)))).passed);
    CHECK(check_relations(OperatorFamily::tau_minus(ring_for(label, Backend::multiplicative(true)))).passed);
  }
}

TEST_CASE("quadratic relations hold as identities in the twisted algebra") {
  auto rh = ring_for("A2", Backend::additive(true));
  auto t = OperatorFamily::T(rh);
  for (int i = 0; i < 2; ++i) CHECK(t.compose({i, i}) == QWElem::delta(*rh, rh->datum().identity()));

  auto rv = ring_for("A2", Backend::multiplicative(true));
  auto tau = OperatorFamily::tau_minus(rv);
  const QElem q = rv->lift(rv->q());
  for (int i = 0; i < 2; ++i) {
    const QWElem ti = tau.element(i);
    CHECK(tau.compose({i, i}) == (q - rv->one()) * ti + QWElem::scalar(q));
    auto inv = tau.inverse_element(i);
    REQUIRE(inv);
    CHECK(*inv * ti == QWElem::delta(*rv, rv->datum().identity()));
    CHECK(ti * *inv == QWElem::delta(*rv, rv->datum().identity()));
  }
}

TEST_CASE("kappa of simple roots and of simple pairs") {
  for (auto backend : {Backend::additive(), Backend::multiplicative()}) {
    auto ring = ring_for("B2", backend);
    for (int i = 0; i < 2; ++i) CHECK(ring->kappa(ring->datum().roots()[i].weight) == Poly(backend.law == Law::additive ? 0 : 1));
  }
  for (auto backend : {Backend::additive(), Backend::multiplicative()})
    CHECK(kappa_pair(*ring_for("A2", backend), 0, 1).is_zero());
  auto g2 = ring_for("G2", Backend::multiplicative());
  CHECK(braid_order(g2->datum(), 0, 1) == 6);
}

TEST_CASE("Leibniz coefficients of a single operator") {
  for (auto backend : {Backend::additive(), Backend::multiplicative()}) {
    auto ring = ring_for("A2", backend);
    const QElem x = ring->lift(ring->x_root(0));
    const QElem xneg = ring->lift(ring->x_root(ring->datum().negate_root(0)));
    auto X = OperatorFamily::X(ring), Y = OperatorFamily::Y(ring);
    CHECK(leibniz_coefficient(X, {0}, 1, 1) == -x);
    CHECK(leibniz_coefficient(X, {0}, 1, 0) == ring->one());
    CHECK(leibniz_coefficient(X, {0}, 0, 1) == ring->one());
    CHECK(leibniz_coefficient(X, {0}, 0, 0).is_zero());
    CHECK(leibniz_coefficient(Y, {0}, 1, 1) == x);
    // -a/b with a = 1/x_{-alpha}, b = 1/x_alpha
    CHECK(leibniz_coefficient(Y, {0}, 1, 0) == -(x * ring->inverse(xneg)));
    const QElem inv = ring->inverse(xneg);
    CHECK(leibniz_coefficient(Y, {0}, 0, 0) == inv + x * inv * inv);
  }
}

TEST_CASE("Leibniz rule and Billey closed form on short words") {
  for (const char* label : {"A2", "B2"}) {
    for (auto backend : {Backend::additive(), Backend::multiplicative()}) {
      auto ring = ring_for(label, backend);
      for (const auto& f : {OperatorFamily::X(ring), OperatorFamily::Y(ring)}) {
        auto leibniz = check_leibniz_rule(f, 3, 3, 11);
        CHECK_MESSAGE(leibniz.passed, leibniz.name);
        auto billey = check_billey(f, 4);
        CHECK_MESSAGE(billey.passed, billey.name);
      }
    }
  }
  auto t = OperatorFamily::T(ring_for("A2", Backend::additive(true)));
  CHECK(check_leibniz_rule(t, 3, 2, 5).passed);
  CHECK(check_billey(t, 4).passed);
}

TEST_CASE("Leibniz table agrees with direct evaluation") {
  auto ring = ring_for("B2", Backend::multiplicative());
  auto y = OperatorFamily::Y(ring);
  const Sequence word{0, 1, 0, 1};
  LeibnizTable table(y, word);
  for (std::uint32_t e = 0; e < 16; e += 3)
    for (std::uint32_t f = 0; f < 16; f += 5) CHECK(table.value(e, f) == leibniz_coefficient(y, word, e, f));
}

TEST_CASE("restricted words") {
  CHECK(restrict_word({0, 1, 0}, 0b101) == Sequence{0, 0});
  CHECK(restrict_word({0, 1, 2, 0, 1}, 0b10010) == Sequence{1, 1});
  CHECK(restrict_word({0, 1}, 0).empty());
}

TEST_CASE("words are validated") {
  auto ring = ring_for("A2", Backend::additive());
  const RootDatum& d = ring->datum();
  auto words = lexmin_words(d);
  CHECK_NOTHROW(validate_words(d, words));
  words[d.longest().id] = {1, 0, 1};
  CHECK_NOTHROW(validate_words(d, words));
  words[d.longest().id] = {0, 0, 1};
  CHECK_THROWS(validate_words(d, words));
  words.pop_back();
  CHECK_THROWS(validate_words(d, words));
}
