#include "demazure/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace demazure {

namespace {

constexpr int kMaxGroupOrder = 100000;
// E8 has 240 roots; anything larger cannot be finite type at supported ranks.
constexpr int kMaxRoots = 240;

using Matrix = std::vector<std::vector<int>>;

std::string matrix_to_string(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ",";
    os << "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ",";
      os << m[i][j];
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

// Generates the root set (simple-root coordinates) by reflection closure.
// Returns nullopt if the closure is not that of a finite root system.
std::optional<std::vector<Weight>> root_closure(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  std::set<Weight> seen;
  std::deque<Weight> queue;
  for (int i = 0; i < n; ++i) {
    Weight e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    Weight c = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      int pairing = 0;
      for (int k = 0; k < n; ++k) pairing += a[j][k] * c[k];
      if (pairing == 0) continue;
      Weight d = c;
      d[j] -= pairing;
      const bool has_pos = std::any_of(d.begin(), d.end(), [](int x) { return x > 0; });
      const bool has_neg = std::any_of(d.begin(), d.end(), [](int x) { return x < 0; });
      if (has_pos && has_neg) return std::nullopt;
      if (seen.insert(d).second) {
        if (static_cast<int>(seen.size()) > kMaxRoots) return std::nullopt;
        queue.push_back(d);
      }
    }
  }
  return std::vector<Weight>(seen.begin(), seen.end());
}

Matrix principal_submatrix(const Matrix& a, const std::vector<int>& idx) {
  Matrix m(idx.size(), std::vector<int>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m[i][j] = a[idx[i]][idx[j]];
  return m;
}

void validate_cartan(const Matrix& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw RootDatumError("Cartan matrix is empty");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw RootDatumError("Cartan matrix is not square");
  for (int i = 0; i < n; ++i) {
    if (a[i][i] != 2)
      throw RootDatumError("Cartan matrix diagonal entry " + std::to_string(i + 1) + " is not 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) throw RootDatumError("Cartan matrix has a positive off-diagonal entry");
      if ((a[i][j] == 0) != (a[j][i] == 0))
        throw RootDatumError("Cartan matrix zero pattern is not symmetric");
    }
  }
  if (root_closure(a)) return;
  // Report the smallest principal submatrix that is already not of finite type.
  for (int size = 2; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.end() - size, pick.end(), true);
    do {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (pick[i]) idx.push_back(i);
      Matrix sub = principal_submatrix(a, idx);
      if (!root_closure(sub)) {
        std::string which;
        for (int i : idx) which += (which.empty() ? "" : ",") + std::to_string(i + 1);
        throw RootDatumError("Cartan matrix is not of finite type; offending principal submatrix on {" +
                             which + "}: " + matrix_to_string(sub));
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  throw RootDatumError("Cartan matrix is not of finite type: " + matrix_to_string(a));
}

std::vector<int> mat_mul(const std::vector<int>& x, const std::vector<int>& y, int n) {
  std::vector<int> z(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const int xik = x[i * n + k];
      if (xik == 0) continue;
      for (int j = 0; j < n; ++j) z[i * n + j] += xik * y[k * n + j];
    }
  return z;
}

}  // namespace

std::vector<std::vector<int>> cartan_matrix(std::string_view label) {
  if (label.size() < 2) throw RootDatumError("bad type label '" + std::string(label) + "'");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
  int n = 0;
  try {
    n = std::stoi(std::string(label.substr(1)));
  } catch (const std::exception&) {
    throw RootDatumError("bad type label '" + std::string(label) + "'");
  }
  if (n < 1) throw RootDatumError("bad rank in type label '" + std::string(label) + "'");
  Matrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j, int aij, int aji) {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    case 'B':
      if (n < 2) throw RootDatumError("B_n needs n >= 2");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -1, -2);  // alpha_n short
      break;
    case 'C':
      if (n < 2) throw RootDatumError("C_n needs n >= 2");
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -2, -1);  // alpha_n long
      break;
    case 'D':
      if (n < 3) throw RootDatumError("D_n needs n >= 3");
      for (int i = 0; i + 3 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 3, n - 2, -1, -1);
      link(n - 3, n - 1, -1, -1);
      break;
    case 'G':
      if (n != 2) throw RootDatumError("G only exists in rank 2");
      link(0, 1, -1, -3);  // alpha_1 short
      break;
    case 'F':
      if (n != 4) throw RootDatumError("F only exists in rank 4");
      link(0, 1, -1, -1);
      link(1, 2, -2, -1);
      link(2, 3, -1, -1);
      break;
    case 'E':
      if (n < 6 || n > 8) throw RootDatumError("E_n needs 6 <= n <= 8");
      // Bourbaki numbering: 1-3-4-5-6(-7-8), 2 attached to 4.
      link(0, 2, -1, -1);
      link(2, 3, -1, -1);
      link(1, 3, -1, -1);
      for (int i = 3; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    default:
      throw RootDatumError("unknown Cartan type '" + std::string(label) + "'");
  }
  return a;
}

RootDatum RootDatum::from_type(std::string_view label, RootDatumOptions opts) {
  std::string name(label);
  for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return from_cartan(cartan_matrix(name), opts, name);
}

RootDatum RootDatum::from_cartan(std::vector<std::vector<int>> cartan, RootDatumOptions opts,
                                 std::string label) {
  validate_cartan(cartan);
  const int n = static_cast<int>(cartan.size());
  if (n > opts.max_rank)
    throw RootDatumError("rank " + std::to_string(n) + " exceeds the configured maximum " +
                         std::to_string(opts.max_rank));
  if (n > 8) throw RootDatumError("rank above 8 is not supported");
  RootDatum d;
  d.rank_ = n;
  d.cartan_ = std::move(cartan);
  d.lattice_ = opts.lattice;
  d.label_ = label.empty() ? "cartan" + matrix_to_string(d.cartan_) : std::move(label);
  d.build_roots();
  d.build_weyl_group();
  d.build_bruhat();
  return d;
}

Weight RootDatum::simple_to_weight(const Weight& c) const {
  if (lattice_ == Lattice::adjoint) return c;
  Weight w(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) w[i] += cartan_[i][j] * c[j];
  return w;
}

void RootDatum::build_roots() {
  auto all = *root_closure(cartan_);
  std::vector<Weight> pos;
  for (auto& c : all)
    if (std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; })) pos.push_back(c);
  auto height = [](const Weight& c) { return std::accumulate(c.begin(), c.end(), 0); };
  std::sort(pos.begin(), pos.end(), [&](const Weight& x, const Weight& y) {
    const int hx = height(x), hy = height(y);
    if (hx != hy) return hx < hy;
    return x > y;  // (1,0,..) before (0,1,..)
  });
  num_positive_ = static_cast<int>(pos.size());
  roots_.clear();
  for (auto& c : pos) roots_.push_back({c, simple_to_weight(c), true});
  for (auto& c : pos) {
    Weight neg = c;
    for (auto& x : neg) x = -x;
    roots_.push_back({neg, simple_to_weight(neg), false});
  }
  negation_.resize(roots_.size());
  for (int r = 0; r < num_positive_; ++r) {
    negation_[r] = r + num_positive_;
    negation_[r + num_positive_] = r;
  }
  root_lookup_.clear();
  for (int r = 0; r < num_roots(); ++r) root_lookup_[roots_[r].weight] = r;
}

std::optional<int> RootDatum::root_index(const Weight& weight) const {
  auto it = root_lookup_.find(weight);
  if (it == root_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> RootDatum::root_index_simple_coords(const Weight& c) const {
  if (static_cast<int>(c.size()) != rank_) return std::nullopt;
  return root_index(simple_to_weight(c));
}

std::vector<int> RootDatum::positive_roots() const {
  std::vector<int> out(num_positive_);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

std::vector<int> RootDatum::simple_reflection_matrix(int i) const {
  const int n = rank_;
  std::vector<int> m(n * n, 0);
  for (int k = 0; k < n; ++k) m[k * n + k] = 1;
  if (lattice_ == Lattice::simply_connected) {
    // s_i(lambda) = lambda - lambda_i alpha_i, alpha_i = column i of the Cartan matrix.
    for (int k = 0; k < n; ++k) m[k * n + i] -= cartan_[k][i];
  } else {
    // s_i(c) = c - (sum_l a_il c_l) e_i.
    for (int l = 0; l < n; ++l) m[i * n + l] -= cartan_[i][l];
  }
  return m;
}

void RootDatum::build_weyl_group() {
  const int n = rank_;
  std::vector<std::vector<int>> gens(n);
  for (int i = 0; i < n; ++i) gens[i] = simple_reflection_matrix(i);

  std::vector<int> ident(n * n, 0);
  for (int k = 0; k < n; ++k) ident[k * n + k] = 1;

  // BFS by length, left multiplication; the lexicographically least reduced
  // word of w starts with its least left descent.
  std::map<std::vector<int>, Sequence> prev{{ident, {}}};
  std::vector<std::pair<std::vector<int>, Sequence>> found{{ident, {}}};
  std::set<std::vector<int>> visited{ident};
  while (!prev.empty()) {
    std::map<std::vector<int>, Sequence> next;
    for (const auto& [mat, word] : prev) {
      for (int i = 0; i < n; ++i) {
        auto m = mat_mul(gens[i], mat, n);
        if (visited.count(m)) continue;
        // Least i with s_i m in the previous layer gives the canonical word.
        Sequence best;
        bool have = false;
        for (int j = 0; j < n && !have; ++j) {
          auto down = mat_mul(gens[j], m, n);
          auto it = prev.find(down);
          if (it != prev.end()) {
            best = {j};
            best.insert(best.end(), it->second.begin(), it->second.end());
            have = true;
          }
        }
        next[m] = best;
      }
    }
    for (const auto& [mat, word] : next) {
      visited.insert(mat);
      found.emplace_back(mat, word);
      if (static_cast<int>(found.size()) > kMaxGroupOrder)
        throw RootDatumError("Weyl group exceeds the supported order");
    }
    prev = std::move(next);
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.second.size() != y.second.size()) return x.second.size() < y.second.size();
    return x.second < y.second;
  });

  std::map<std::vector<int>, int> index;
  elements_.clear();
  elements_.resize(found.size());
  for (std::size_t k = 0; k < found.size(); ++k) {
    index[found[k].first] = static_cast<int>(k);
    elements_[k].matrix = found[k].first;
    elements_[k].word = found[k].second;
    elements_[k].length = static_cast<int>(found[k].second.size());
  }
  const int order = static_cast<int>(elements_.size());
  right_.assign(order, std::vector<int>(n));
  left_.assign(order, std::vector<int>(n));
  for (int w = 0; w < order; ++w) {
    for (int i = 0; i < n; ++i) {
      right_[w][i] = index.at(mat_mul(elements_[w].matrix, gens[i], n));
      left_[w][i] = index.at(mat_mul(gens[i], elements_[w].matrix, n));
    }
  }
  for (int w = 0; w < order; ++w) {
    int inv = 0;
    const auto& word = elements_[w].word;
    for (auto it = word.rbegin(); it != word.rend(); ++it) inv = right_[inv][*it];
    elements_[w].inverse = inv;
    auto& perm = elements_[w].root_perm;
    perm.resize(roots_.size());
    for (int r = 0; r < num_roots(); ++r) perm[r] = *root_index(act({w}, roots_[r].weight));
  }
}

void RootDatum::build_bruhat() {
  const int order = this->order();
  const int words = (order + 63) / 64;
  bruhat_.assign(order, std::vector<std::uint64_t>(words, 0));
  bruhat_[0][0] = 1;
  for (int w = 1; w < order; ++w) {
    const int s = elements_[w].word.front();
    const int lower = left_[w][s];
    // Lifting property: for s a left descent of w, u <= w iff min(u, su) <= sw.
    for (int u = 0; u < order; ++u) {
      const int su = left_[u][s];
      const int m = elements_[su].length < elements_[u].length ? su : u;
      if (bruhat_[lower][m / 64] >> (m % 64) & 1ULL) bruhat_[w][u / 64] |= 1ULL << (u % 64);
    }
  }
}

std::vector<WeylElement> RootDatum::weyl_elements() const {
  std::vector<WeylElement> out(order());
  for (int k = 0; k < order(); ++k) out[k] = {k};
  return out;
}

WeylElement RootDatum::mul(WeylElement a, WeylElement b) const {
  int r = a.id;
  for (int i : elements_[b.id].word) r = right_[r][i];
  return {r};
}

WeylElement RootDatum::product(const Sequence& seq) const {
  int r = 0;
  for (int i : seq) {
    if (i < 0 || i >= rank_) throw RootDatumError("simple index out of range in sequence");
    r = right_[r][i];
  }
  return {r};
}

WeylElement RootDatum::demazure_product(const Sequence& seq) const {
  int r = 0;
  for (int i : seq) {
    if (i < 0 || i >= rank_) throw RootDatumError("simple index out of range in sequence");
    const int up = right_[r][i];
    if (elements_[up].length > elements_[r].length) r = up;
  }
  return {r};
}

bool RootDatum::is_reduced(const Sequence& seq) const {
  return length(product(seq)) == static_cast<int>(seq.size());
}

bool RootDatum::bruhat_leq(WeylElement u, WeylElement w) const {
  return bruhat_[w.id][u.id / 64] >> (u.id % 64) & 1ULL;
}

bool RootDatum::has_right_descent(WeylElement w, int i) const {
  return elements_[right_[w.id][i]].length < elements_[w.id].length;
}

bool RootDatum::has_left_descent(int i, WeylElement w) const {
  return elements_[left_[w.id][i]].length < elements_[w.id].length;
}

std::vector<Sequence> RootDatum::all_reduced_words(WeylElement w) const {
  if (w.id == 0) return {Sequence{}};
  std::vector<Sequence> out;
  for (int i = 0; i < rank_; ++i) {
    if (!has_right_descent(w, i)) continue;
    for (auto word : all_reduced_words(right_mul_simple(w, i))) {
      word.push_back(i);
      out.push_back(std::move(word));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Weight RootDatum::act(WeylElement w, const Weight& weight) const {
  const auto& m = elements_[w.id].matrix;
  Weight out(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) out[i] += m[i * rank_ + j] * weight[j];
  return out;
}

Weight RootDatum::reflect(int i, const Weight& weight) const {
  return act(simple_reflection(i), weight);
}

std::vector<WeylElement> RootDatum::min_coset_reps(const std::vector<int>& parabolic) const {
  std::vector<WeylElement> out;
  for (int w = 0; w < order(); ++w) {
    bool minimal = true;
    for (int j : parabolic) {
      if (j < 0 || j >= rank_) throw RootDatumError("parabolic index out of range");
      if (has_right_descent({w}, j)) minimal = false;
    }
    if (minimal) out.push_back({w});
  }
  return out;
}

std::vector<Sequence> RootDatum::j_compatible_words(const std::vector<int>& parabolic) const {
  std::vector<WeylElement> parabolic_group;
  for (int v = 0; v < order(); ++v) {
    const auto& word = elements_[v].word;
    if (std::all_of(word.begin(), word.end(), [&](int i) {
          return std::find(parabolic.begin(), parabolic.end(), i) != parabolic.end();
        }))
      parabolic_group.push_back({v});
  }
  std::vector<Sequence> words(order());
  std::vector<bool> assigned(order(), false);
  for (auto u : min_coset_reps(parabolic)) {
    for (auto v : parabolic_group) {
      const auto w = mul(u, v);
      Sequence word = reduced_word(u);
      const auto& tail = reduced_word(v);
      word.insert(word.end(), tail.begin(), tail.end());
      if (assigned[w.id] || static_cast<int>(word.size()) != length(w))
        throw RootDatumError("internal error: parabolic factorization is not unique");
      words[w.id] = std::move(word);
      assigned[w.id] = true;
    }
  }
  return words;
}

std::string RootDatum::format_word(const Sequence& seq) const {
  std::string out;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (rank_ >= 10 && k) out += ",";
    out += std::to_string(seq[k] + 1);
  }
  return out;
}

Sequence RootDatum::parse_word(std::string_view text) const {
  Sequence seq;
  auto push = [&](int one_based) {
    if (one_based < 1 || one_based > rank_)
      throw RootDatumError("simple index " + std::to_string(one_based) + " out of range 1.." +
                           std::to_string(rank_));
    seq.push_back(one_based - 1);
  };
  if (text.find(',') != std::string_view::npos || rank_ >= 10) {
    std::string item;
    std::istringstream is{std::string(text)};
    while (std::getline(is, item, ',')) {
      if (item.empty()) continue;
      try {
        push(std::stoi(item));
      } catch (const std::invalid_argument&) {
        throw RootDatumError("bad word '" + std::string(text) + "'");
      }
    }
    return seq;
  }
  for (char ch : text) {
    if (ch == 's' || ch == ' ') continue;
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw RootDatumError("bad word '" + std::string(text) + "'");
    push(ch - '0');
  }
  return seq;
}

WeylElement RootDatum::parse_element(std::string_view text) const {
  if (text == "e") return identity();
  auto seq = parse_word(text);
  if (!is_reduced(seq))
    throw RootDatumError("word '" + std::string(text) + "' is not reduced");
  return product(seq);
}

std::string RootDatum::weight_name(const Weight& c) const {
  std::string out;
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    if (c[i] == 0) continue;
    int mag = c[i] < 0 ? -c[i] : c[i];
    if (c[i] < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (mag != 1) out += std::to_string(mag);
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

std::string RootDatum::root_name(int root) const { return weight_name(roots_[root].simple_coords); }

}  // namespace demazure
