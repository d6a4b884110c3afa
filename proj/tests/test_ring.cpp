#include <doctest.h>

#include <random>

#include "demazure/ring.hpp"

using namespace demazure;

namespace {

std::shared_ptr<const RootDatum> datum(const char* label, Lattice lattice = Lattice::simply_connected) {
  return std::make_shared<const RootDatum>(RootDatum::from_type(label, {lattice}));
}

Weight random_weight(std::mt19937& rng, int n, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  Weight w(n);
  for (auto& c : w) c = dist(rng);
  return w;
}

Poly random_poly(const Ring& ring, std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Poly p = coeff(rng);
  const auto& roots = ring.datum().roots();
  std::uniform_int_distribution<int> pick(0, static_cast<int>(roots.size()) - 1);
  for (int t = 0; t < terms; ++t) {
    Poly term = coeff(rng);
    term *= ring.x_root(pick(rng));
    if (t % 2) term *= ring.x_root(pick(rng));
    p += term;
  }
  return p;
}

}  // namespace

TEST_CASE("x classes satisfy the formal group law") {
  std::mt19937 rng(7);
  for (auto backend : {Backend::additive(), Backend::multiplicative()}) {
    Ring ring(datum("B2"), backend);
    for (int trial = 0; trial < 200; ++trial) {
      Weight a = random_weight(rng, 2, 3), b = random_weight(rng, 2, 3), s(2);
      for (int i = 0; i < 2; ++i) s[i] = a[i] + b[i];
      CHECK(ring.x_class(s) == ring.fgl(ring.x_class(a), ring.x_class(b)));
    }
    for (int r = 0; r < ring.datum().num_roots(); ++r)
      CHECK(ring.fgl(ring.x_root(r), ring.x_root(ring.datum().negate_root(r))).is_zero());
  }
}

TEST_CASE("x classes of special weights") {
  Ring add(datum("A2"), Backend::additive());
  CHECK(add.x_class({0, 0}).is_zero());
  Ring mul(datum("A2"), Backend::multiplicative());
  const Weight lam{1, 0}, neg{-1, 0};
  CHECK(mul.x_class(lam) == Poly(1) - mul.exp_weight(neg));
  // x_{-lambda} = x_lambda / (x_lambda - 1)
  CHECK(mul.x_class(neg) * (mul.x_class(lam) - Poly(1)) == mul.x_class(lam));
}

TEST_CASE("kappa") {
  Ring add(datum("A2"), Backend::additive());
  Ring mul(datum("A2"), Backend::multiplicative());
  for (const Weight& lam : {Weight{1, 0}, Weight{2, -1}, Weight{-3, 1}}) {
    CHECK(add.kappa(lam).is_zero());
    CHECK(mul.kappa(lam) == Poly(1));
    Weight neg = lam;
    for (auto& c : neg) c = -c;
    CHECK(mul.kappa(neg) == mul.kappa(lam));
  }
  // 1/x_a + 1/x_{-a} normalizes into S.
  for (Ring* r : {&add, &mul}) {
    QElem sum = r->inverse_factor({FactorSymbol::Kind::x_root, 0}) +
                r->inverse_factor({FactorSymbol::Kind::x_root, r->datum().negate_root(0)});
    CHECK(sum.in_S());
    CHECK(sum.num() == r->kappa(r->datum().roots()[0].weight));
  }
}

TEST_CASE("Weyl action on S") {
  std::mt19937 rng(11);
  for (auto lattice : {Lattice::simply_connected, Lattice::adjoint})
    for (auto backend : {Backend::additive(true), Backend::multiplicative(true)}) {
      Ring ring(datum("B2", lattice), backend);
      const auto& d = ring.datum();
      for (int trial = 0; trial < 20; ++trial) {
        Poly p = random_poly(ring, rng, 3), q = random_poly(ring, rng, 3);
        for (auto w : d.weyl_elements()) {
          CHECK(ring.act(w, p * q) == ring.act(w, p) * ring.act(w, q));
          CHECK(ring.act(w, p + q) == ring.act(w, p) + ring.act(w, q));
          for (auto u : d.weyl_elements())
            CHECK(ring.act(d.mul(w, u), p) == ring.act(w, ring.act(u, p)));
        }
      }
      for (auto w : d.weyl_elements())
        for (int r = 0; r < d.num_roots(); ++r)
          CHECK(ring.act(w, ring.x_root(r)) == ring.x_root(d.act_on_root(w, r)));
      CHECK(ring.act(d.simple_reflection(0), ring.extra_slot() == 2 && backend.with_h ? ring.h() : ring.v()) ==
            (backend.with_h ? ring.h() : ring.v()));
    }
  Ring add(datum("A2"), Backend::additive());
  const auto& d = add.datum();
  CHECK(add.act(d.simple_reflection(0), add.x_root(1)) == add.x_class(d.simple_to_weight({1, 1})));
}

TEST_CASE("exact division by factors") {
  Ring add(datum("A2"), Backend::additive(true));
  Ring mul(datum("A2"), Backend::multiplicative(true));
  using K = FactorSymbol::Kind;
  auto q = add.divide_exact(add.x_root(0) * add.x_root(1), {K::x_root, 0});
  REQUIRE(q);
  CHECK(*q == add.x_root(1));
  CHECK_FALSE(add.divide_exact(add.x_root(0) + add.x_root(1), {K::x_root, 0}));
  // 1 - e^{-2a} = (1 - e^{-a})(1 + e^{-a})
  const Weight a = mul.datum().roots()[0].weight;
  const Weight two_a{2 * a[0], 2 * a[1]};
  auto r = mul.divide_exact(mul.x_class(two_a), {K::x_root, 0});
  REQUIRE(r);
  CHECK(*r == Poly(1) + mul.exp_weight({-a[0], -a[1]}));

  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    for (Ring* ring : {&add, &mul}) {
      Poly p = random_poly(*ring, rng, 4);
      for (int root = 0; root < ring->datum().num_roots(); ++root) {
        std::vector<K> kinds{K::x_root};
        if (ring == &add) kinds.push_back(K::hat_additive);
        else kinds.insert(kinds.end(), {K::one_minus_e, K::hat_multiplicative});
        for (auto kind : kinds) {
          FactorSymbol f{kind, root};
          auto back = ring->divide_exact(p * ring->expand(f), f);
          REQUIRE(back);
          CHECK(*back == p);
        }
      }
    }
  }
}

TEST_CASE("localized arithmetic") {
  std::mt19937 rng(3);
  for (auto backend : {Backend::additive(true), Backend::multiplicative(true)}) {
    Ring ring(datum("A2"), backend);
    using K = FactorSymbol::Kind;
    QElem one_over = ring.inverse_factor({K::x_root, 0});
    QElem x = ring.lift(ring.x_root(0));
    CHECK((x * one_over) == ring.one());
    CHECK((x * one_over).in_S());
    QElem p = ring.fraction(random_poly(ring, rng, 3), {{{K::x_root, 2}, 1}});
    CHECK((p - p).is_zero());
    CHECK((p - p).in_S());
    for (int trial = 0; trial < 20; ++trial) {
      auto make = [&] {
        std::uniform_int_distribution<int> root(0, ring.datum().num_roots() - 1);
        return ring.fraction(random_poly(ring, rng, 2),
                             {{{K::x_root, root(rng)}, 1}, {{backend.with_h ? K::hat_additive : K::hat_multiplicative, root(rng)}, 1}});
      };
      QElem a = make(), b = make(), c = make();
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a == a);
      CHECK((a == b) == (b == a));
      if (!a.is_zero()) {
        auto inv = ring.try_inverse(a);
        if (inv) CHECK(*inv * a == ring.one());
      }
      for (auto w : ring.datum().weyl_elements())
        CHECK(ring.act(w, a * b + c) == ring.act(w, a) * ring.act(w, b) + ring.act(w, c));
    }
  }
}

TEST_CASE("polynomial text round trip") {
  std::mt19937 rng(9);
  for (auto backend : {Backend::additive(true), Backend::multiplicative(true)}) {
    Ring ring(datum("A3"), backend);
    for (int trial = 0; trial < 20; ++trial) {
      Poly p = random_poly(ring, rng, 4);
      if (backend.with_h) p *= ring.h() + Poly(2);
      else p *= ring.q() - ring.v();
      CHECK(ring.parse_poly(ring.to_string(p)) == p);
    }
  }
  Ring add(datum("A2"), Backend::additive(true));
  CHECK(add.to_string(add.x_root(2) * add.h()) == "t1*h + t2*h");
}
