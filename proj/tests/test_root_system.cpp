#include <doctest.h>

#include <algorithm>
#include <set>

#include "demazure/root_system.hpp"

using namespace demazure;

namespace {

// Independent closure of the simple reflection matrices, keyed by matrix.
std::set<std::vector<int>> brute_force_group(const RootDatum& d) {
  const int n = d.rank();
  std::vector<std::vector<int>> gens;
  for (int i = 0; i < n; ++i) gens.push_back(d.action_matrix(d.simple_reflection(i)));
  std::vector<int> id(n * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& m : frontier)
      for (const auto& g : gens) {
        std::vector<int> p(n * n, 0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) p[a * n + c] += m[a * n + b] * g[b * n + c];
        if (seen.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return seen;
}

// u <= w iff some subword of the canonical word of w multiplies to u.
bool subword_leq(const RootDatum& d, WeylElement u, WeylElement w) {
  const auto& word = d.reduced_word(w);
  const int k = static_cast<int>(word.size());
  for (int mask = 0; mask < (1 << k); ++mask) {
    Sequence sub;
    for (int j = 0; j < k; ++j)
      if (mask >> j & 1) sub.push_back(word[j]);
    if (d.product(sub) == u) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("A2 Weyl group has six elements in length-lex order") {
  auto d = RootDatum::from_type("A2");
  CHECK(d.order() == 6);
  std::vector<std::string> names;
  for (auto w : d.weyl_elements()) names.push_back(d.format_element(w));
  CHECK(names == std::vector<std::string>{"", "1", "2", "12", "21", "121"});
  CHECK(d.length(d.longest()) == 3);
  CHECK(d.num_positive_roots() == 3);
}

TEST_CASE("A1 from type and from Cartan matrix agree") {
  auto a = RootDatum::from_type("A1");
  auto b = RootDatum::from_cartan({{2}});
  CHECK(a.order() == 2);
  CHECK(a.num_positive_roots() == 1);
  CHECK(a.cartan() == b.cartan());
  CHECK(b.order() == 2);
}

TEST_CASE("group orders match a brute-force closure") {
  for (auto label : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "A4"}) {
    auto d = RootDatum::from_type(label);
    CHECK(static_cast<int>(brute_force_group(d).size()) == d.order());
  }
  CHECK(RootDatum::from_type("A3").order() == 24);
  CHECK(RootDatum::from_type("F4").order() == 1152);
}

TEST_CASE("non finite type Cartan matrices are rejected") {
  CHECK_THROWS_AS(RootDatum::from_cartan({{2, -2}, {-2, 2}}), RootDatumError);
  CHECK_THROWS_AS(RootDatum::from_cartan({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}), RootDatumError);
  CHECK_THROWS_AS(RootDatum::from_cartan({{3}}), RootDatumError);
  CHECK_THROWS_AS(RootDatum::from_type("A6"), RootDatumError);
}

TEST_CASE("reduced words") {
  auto d = RootDatum::from_type("A2");
  auto w0 = d.longest();
  CHECK(d.reduced_word(w0) == Sequence{0, 1, 0});
  auto all = d.all_reduced_words(w0);
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<Sequence>{{0, 1, 0}, {1, 0, 1}});
  CHECK(d.reduced_word(d.identity()).empty());

  auto a3 = RootDatum::from_type("A3");
  auto words = a3.all_reduced_words(a3.longest());
  CHECK(std::find(words.begin(), words.end(), Sequence{0, 1, 2, 0, 1, 0}) != words.end());
  CHECK(words.size() == 16);
  for (auto w : a3.weyl_elements())
    for (const auto& word : a3.all_reduced_words(w)) {
      CHECK(a3.product(word) == w);
      CHECK(static_cast<int>(word.size()) == a3.length(w));
    }
}

TEST_CASE("length equals the number of inverted positive roots") {
  for (auto label : {"A3", "B3", "G2", "C2"}) {
    auto d = RootDatum::from_type(label);
    for (auto w : d.weyl_elements()) {
      int inverted = 0;
      for (int r : d.positive_roots()) inverted += !d.roots()[d.act_on_root(w, r)].positive;
      CHECK(inverted == d.length(w));
    }
  }
}

TEST_CASE("Demazure product") {
  auto d = RootDatum::from_type("A2");
  CHECK(d.demazure_product({0, 0}) == d.simple_reflection(0));
  CHECK(d.demazure_product({0, 1, 0, 1}) == d.longest());
  CHECK(d.demazure_product({0, 1}) == d.product({0, 1}));
  CHECK(d.demazure_product({}) == d.identity());
  // Monotone under taking subsequences.
  auto b2 = RootDatum::from_type("B2");
  Sequence seq{0, 1, 1, 0, 1};
  for (int mask = 0; mask < 32; ++mask) {
    Sequence sub;
    for (int j = 0; j < 5; ++j)
      if (mask >> j & 1) sub.push_back(seq[j]);
    CHECK(b2.bruhat_leq(b2.demazure_product(sub), b2.demazure_product(seq)));
  }
}

TEST_CASE("Bruhat order agrees with the subword criterion") {
  for (auto label : {"A2", "B2", "A3", "G2"}) {
    auto d = RootDatum::from_type(label);
    for (auto u : d.weyl_elements())
      for (auto w : d.weyl_elements()) CHECK(d.bruhat_leq(u, w) == subword_leq(d, u, w));
  }
  auto d = RootDatum::from_type("A2");
  CHECK(d.bruhat_leq(d.parse_element("1"), d.parse_element("12")));
  CHECK_FALSE(d.bruhat_leq(d.parse_element("12"), d.parse_element("21")));
}

TEST_CASE("Weyl action on the lattice") {
  auto d = RootDatum::from_type("A2");
  auto s1 = d.simple_reflection(0);
  const auto& a1 = d.roots()[0].weight;
  const auto& a2 = d.roots()[1].weight;
  Weight neg_a1 = a1;
  for (auto& c : neg_a1) c = -c;
  CHECK(d.act(s1, a1) == neg_a1);
  CHECK(d.act(s1, a2) == d.simple_to_weight({1, 1}));
  for (int r : d.positive_roots()) CHECK_FALSE(d.roots()[d.act_on_root(d.longest(), r)].positive);
  for (auto lattice : {Lattice::simply_connected, Lattice::adjoint}) {
    auto b3 = RootDatum::from_type("B3", {lattice});
    for (auto w : b3.weyl_elements()) {
      Sequence word = b3.reduced_word(w);
      Weight lam{1, -2, 3};
      Weight step = lam;
      for (auto it = word.rbegin(); it != word.rend(); ++it) step = b3.reflect(*it, step);
      CHECK(b3.act(w, lam) == step);
    }
  }
}

TEST_CASE("minimal coset representatives") {
  auto d = RootDatum::from_type("A2");
  CHECK(d.min_coset_reps({}).size() == 6);
  CHECK(d.min_coset_reps({0, 1}) == std::vector<WeylElement>{d.identity()});
  std::vector<std::string> reps;
  for (auto w : d.min_coset_reps({1})) reps.push_back(d.format_element(w));
  CHECK(reps == std::vector<std::string>{"", "1", "21"});
  auto a3 = RootDatum::from_type("A3");
  auto words = a3.j_compatible_words({0});
  for (auto w : a3.weyl_elements()) {
    CHECK(a3.product(words[w.id]) == w);
    CHECK(static_cast<int>(words[w.id].size()) == a3.length(w));
  }
}

TEST_CASE("word text forms") {
  auto d = RootDatum::from_type("A2");
  CHECK(d.format_word({0, 1, 0}) == "121");
  CHECK(d.parse_word("121") == Sequence{0, 1, 0});
  CHECK(d.parse_element("") == d.identity());
  CHECK(d.parse_element("e") == d.identity());
  CHECK_THROWS(d.parse_word("13"));
  CHECK_THROWS(d.parse_element("11"));
  CHECK(d.root_name(d.positive_roots().back()) == "a1+a2");
}
