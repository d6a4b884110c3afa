#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace demazure {

// Integer coordinates of a weight in the chosen lattice basis.
using Weight = std::vector<int>;

// Sequence of simple-root indices. Indices are 0-based internally; the
// textual form ("121") is 1-based.
using Sequence = std::vector<int>;

enum class Lattice { simply_connected, adjoint };

class RootDatumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Handle to an element of the Weyl group of a particular RootDatum. Ids are
// assigned in (length, lexicographic canonical word) order, so id 0 is the
// identity and comparing ids is a linear extension of the Bruhat order.
struct WeylElement {
  int id = 0;
  auto operator<=>(const WeylElement&) const = default;
};

struct Root {
  Weight simple_coords;  // coordinates in the basis of simple roots
  Weight weight;         // coordinates in the lattice basis
  bool positive = true;
};

struct RootDatumOptions {
  Lattice lattice = Lattice::simply_connected;
  int max_rank = 5;
};

// A finite-type root datum together with its fully enumerated root system and
// Weyl group. Immutable after construction.
class RootDatum {
 public:
  // Builds from a type label such as "A2", "B3", "G2".
  static RootDatum from_type(std::string_view label, RootDatumOptions opts = {});
  // Builds from an explicit Cartan matrix a_ij = <alpha_i^vee, alpha_j>.
  static RootDatum from_cartan(std::vector<std::vector<int>> cartan, RootDatumOptions opts = {},
                               std::string label = "");

  int rank() const { return rank_; }
  const std::string& label() const { return label_; }
  Lattice lattice() const { return lattice_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }

  // ---- roots ----
  const std::vector<Root>& roots() const { return roots_; }
  int num_roots() const { return static_cast<int>(roots_.size()); }
  int num_positive_roots() const { return num_positive_; }
  // Root index of the simple root alpha_i (roots 0..n-1 are the simple roots).
  int simple_root(int i) const { return i; }
  int negate_root(int r) const { return negation_[r]; }
  std::optional<int> root_index(const Weight& weight) const;
  std::optional<int> root_index_simple_coords(const Weight& simple_coords) const;
  // Positive roots in index order.
  std::vector<int> positive_roots() const;
  Weight simple_to_weight(const Weight& simple_coords) const;

  // ---- Weyl group ----
  int order() const { return static_cast<int>(elements_.size()); }
  WeylElement identity() const { return {0}; }
  WeylElement longest() const { return {order() - 1}; }
  std::vector<WeylElement> weyl_elements() const;
  int length(WeylElement w) const { return elements_[w.id].length; }
  const Sequence& reduced_word(WeylElement w) const { return elements_[w.id].word; }
  std::vector<Sequence> all_reduced_words(WeylElement w) const;

  WeylElement simple_reflection(int i) const { return {right_[0][i]}; }
  WeylElement mul(WeylElement a, WeylElement b) const;
  WeylElement inverse(WeylElement w) const { return {elements_[w.id].inverse}; }
  WeylElement right_mul_simple(WeylElement w, int i) const { return {right_[w.id][i]}; }
  WeylElement left_mul_simple(int i, WeylElement w) const { return {left_[w.id][i]}; }
  // Ordinary product s_{i1}...s_{ik}.
  WeylElement product(const Sequence& seq) const;
  // Monoid product subject to braid relations and s_i^2 = s_i.
  WeylElement demazure_product(const Sequence& seq) const;
  bool is_reduced(const Sequence& seq) const;
  bool bruhat_leq(WeylElement u, WeylElement w) const;
  bool has_right_descent(WeylElement w, int i) const;
  bool has_left_descent(int i, WeylElement w) const;

  // Action on the lattice.
  Weight act(WeylElement w, const Weight& weight) const;
  Weight reflect(int i, const Weight& weight) const;
  int act_on_root(WeylElement w, int root) const { return elements_[w.id].root_perm[root]; }
  const std::vector<int>& action_matrix(WeylElement w) const { return elements_[w.id].matrix; }

  // Minimal length representatives of W/W_J (J given as 0-based indices).
  std::vector<WeylElement> min_coset_reps(const std::vector<int>& parabolic) const;
  // Reduced words I_w = I_u ++ I_v for the factorization w = uv,
  // u in W^J, v in W_J; both pieces use canonical words.
  std::vector<Sequence> j_compatible_words(const std::vector<int>& parabolic) const;

  // Text forms: "121" <-> s1 s2 s1, "" <-> e; comma separated for rank >= 10.
  std::string format_word(const Sequence& seq) const;
  Sequence parse_word(std::string_view text) const;
  std::string format_element(WeylElement w) const { return format_word(reduced_word(w)); }
  WeylElement parse_element(std::string_view text) const;
  // Readable name for a root, e.g. "a1+a2".
  std::string root_name(int root) const;
  std::string weight_name(const Weight& weight) const;

 private:
  struct ElementData {
    Sequence word;
    int length = 0;
    int inverse = 0;
    std::vector<int> matrix;    // rank x rank, row-major
    std::vector<int> root_perm;
  };

  RootDatum() = default;
  void build_roots();
  void build_weyl_group();
  void build_bruhat();
  std::vector<int> simple_reflection_matrix(int i) const;

  int rank_ = 0;
  std::string label_;
  Lattice lattice_ = Lattice::simply_connected;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> roots_;
  std::vector<int> negation_;
  int num_positive_ = 0;
  std::map<Weight, int> root_lookup_;
  std::vector<ElementData> elements_;
  std::vector<std::vector<int>> right_;
  std::vector<std::vector<int>> left_;
  std::vector<std::vector<std::uint64_t>> bruhat_;  // bruhat_[w] bitset of u <= w
};

// Cartan matrix for a type label ("A3", "B2", "G2", ...).
std::vector<std::vector<int>> cartan_matrix(std::string_view label);

}  // namespace demazure
