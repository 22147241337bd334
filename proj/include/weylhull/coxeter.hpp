#pragma once

#include "weylhull/root_datum.hpp"

#include <limits>

namespace weylhull {

inline constexpr unsigned kInfiniteOrder = 0;  // m_ij = infinity marker

struct CoxeterMatrix {
  std::vector<std::vector<unsigned>> m;  // entries in {1,2,3,4,6} or kInfiniteOrder
};

/// m_ij from a_ij * a_ji: 0->2, 1->3, 2->4, 3->6, >=4->infinity.
CoxeterMatrix coxeter_matrix(const Gcm& gcm);

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfiniteSubgroup : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Group element. word is the ShortLex-canonical reduced word; actQ is the
/// action on root-lattice coordinates, actB on Cartan coordinates in basis B.
/// Both matrices act on column vectors: actB * x computes w(x).
struct WeylElement {
  std::vector<std::size_t> word;
  IMat actQ;  // n x n
  IMat actB;  // d x d
};

struct StandardCoset {
  WeylElement rep;
  std::vector<std::size_t> j_set;
};

/// The Weyl group of a root datum as a computational object.
class WeylGroup {
 public:
  explicit WeylGroup(RootDatum datum);

  const RootDatum& datum() const { return datum_; }
  std::size_t n() const { return datum_.n(); }

  WeylElement identity() const;
  WeylElement generator(std::size_t i) const;
  WeylElement mul(const WeylElement& a, const WeylElement& b) const;
  WeylElement mul_gen(const WeylElement& a, std::size_t i) const;  // a * s_i
  WeylElement inverse(const WeylElement& w) const;

  /// Product s_{i_1} ... s_{i_k} of a letter sequence (canonicalized once).
  WeylElement compose(const std::vector<std::size_t>& letters) const;
  bool equal(const WeylElement& a, const WeylElement& b) const { return a.actB == b.actB; }
  bool is_identity(const WeylElement& w) const;

  /// w(x) for x in B coordinates.
  QVec act(const WeylElement& w, const QVec& x) const;

  std::size_t length(const WeylElement& w) const { return w.word.size(); }
  std::vector<std::size_t> right_descents(const WeylElement& w) const;
  std::vector<std::size_t> left_descents(const WeylElement& w) const;
  std::vector<std::size_t> support(const WeylElement& w) const;

  /// All elements of length <= max_length in (length, lex word) order.
  /// Throws BudgetExceeded past `cap` elements.
  std::vector<WeylElement> enumerate_by_length(std::size_t max_length,
                                               std::size_t cap = 1'000'000) const;

  struct SubgroupEnumeration {
    std::vector<WeylElement> elements;
    bool saturated = false;  // an exhausted BFS level proved the subgroup finite
  };

  /// BFS of the standard subgroup W_J, same ordering guarantees.
  SubgroupEnumeration enumerate_standard_subgroup(const std::vector<std::size_t>& j_set,
                                                  std::size_t max_length,
                                                  std::size_t cap = 1'000'000) const;

  /// Minimal-length representative of wW_J.
  StandardCoset min_coset_rep(const WeylElement& w, std::vector<std::size_t> j_set) const;

  bool is_finite_standard_subgroup(const std::vector<std::size_t>& j_set) const;

  /// Longest element of a finite W_J; throws InfiniteSubgroup otherwise.
  WeylElement longest_word(const std::vector<std::size_t>& j_set) const;

 private:
  // Rebuilds the ShortLex word of an element from its matrices.
  std::vector<std::size_t> canonical_word(const WeylElement& w) const;

  RootDatum datum_;
  std::vector<IMat> gen_q_, gen_b_;
};

/// Union of the components of the GCM whose Weyl group is infinite; the
/// smallest finite-index standard subgroup is W restricted to this set.
std::vector<std::size_t> finite_index_core(const Gcm& gcm);

}  // namespace weylhull
