#include "weylhull/coxeter.hpp"

#include "weylhull/linalg.hpp"

#include <algorithm>
#include <map>

namespace weylhull {

namespace {

IMat int_identity(std::size_t n) {
  IMat m(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat int_mul(const IMat& a, const IMat& b) {
  IMat c(a.size(), std::vector<Int>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

std::vector<Int> flatten(const IMat& m) {
  std::vector<Int> key;
  key.reserve(m.size() * m.size());
  for (const auto& row : m) key.insert(key.end(), row.begin(), row.end());
  return key;
}

}  // namespace

CoxeterMatrix coxeter_matrix(const Gcm& gcm) {
  CoxeterMatrix cm;
  cm.m.assign(gcm.n, std::vector<unsigned>(gcm.n, 2));
  for (std::size_t i = 0; i < gcm.n; ++i) {
    cm.m[i][i] = 1;
    for (std::size_t j = 0; j < gcm.n; ++j) {
      if (i == j) continue;
      Int p = gcm.a[i][j] * gcm.a[j][i];
      cm.m[i][j] = p == 0 ? 2u : p == 1 ? 3u : p == 2 ? 4u : p == 3 ? 6u : kInfiniteOrder;
    }
  }
  return cm;
}

WeylGroup::WeylGroup(RootDatum datum) : datum_(std::move(datum)) {
  const std::size_t n = datum_.n(), d = datum_.d;
  for (std::size_t i = 0; i < n; ++i) {
    // s_i on Q: beta -> beta - <beta, alpha_i^vee> alpha_i, i.e. I - e_i (row i of A).
    IMat q = int_identity(n);
    for (std::size_t j = 0; j < n; ++j) q[i][j] -= datum_.gcm.a[i][j];
    gen_q_.push_back(std::move(q));
    // s_i on the Cartan space: x -> x - <alpha_i, x> alpha_i^vee.
    IMat b = int_identity(d);
    for (std::size_t j = 0; j < d; ++j) {
      const Rat& v = datum_.alpha_on_basis[i][j];
      if (denominator(v) != 1) throw std::logic_error("non-integral Cartan action");
      b[i][j] -= numerator(v);
    }
    gen_b_.push_back(std::move(b));
  }
}

WeylElement WeylGroup::identity() const {
  return {{}, int_identity(n()), int_identity(datum_.d)};
}

WeylElement WeylGroup::generator(std::size_t i) const {
  return {{i}, gen_q_[i], gen_b_[i]};
}

bool WeylGroup::is_identity(const WeylElement& w) const {
  return w.actB == int_identity(datum_.d);
}

QVec WeylGroup::act(const WeylElement& w, const QVec& x) const {
  if (x.size() != datum_.d) throw std::invalid_argument("act: dimension mismatch");
  QVec y(datum_.d, 0);
  for (std::size_t i = 0; i < datum_.d; ++i)
    for (std::size_t j = 0; j < datum_.d; ++j) y[i] += Rat(w.actB[i][j]) * x[j];
  return y;
}

std::vector<std::size_t> WeylGroup::right_descents(const WeylElement& w) const {
  // i is a right descent iff w(alpha_i) is negative, i.e. column i of actQ <= 0.
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n(); ++i) {
    bool neg = true;
    for (std::size_t r = 0; r < n() && neg; ++r) neg = w.actQ[r][i] <= 0;
    if (neg) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> WeylGroup::left_descents(const WeylElement& w) const {
  return right_descents(inverse(w));
}

std::vector<std::size_t> WeylGroup::support(const WeylElement& w) const {
  std::vector<std::size_t> s(w.word.begin(), w.word.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<std::size_t> WeylGroup::canonical_word(const WeylElement& w) const {
  // Strip the smallest left descent repeatedly; yields the ShortLex word.
  // Left descent of w at i iff w^{-1}(alpha_i) < 0, so work with actQ(w^{-1}).
  QMat qr(n());
  for (std::size_t i = 0; i < n(); ++i) qr[i].assign(w.actQ[i].begin(), w.actQ[i].end());
  QMat inv_r = *linalg::inverse(qr);
  IMat qinv(n(), std::vector<Int>(n()));
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j) qinv[i][j] = numerator(inv_r[i][j]);

  std::vector<std::size_t> word;
  const IMat id = int_identity(n());
  while (qinv != id) {
    std::size_t i = n();
    for (std::size_t cand = 0; cand < n() && i == n(); ++cand) {
      bool neg = true;
      for (std::size_t r = 0; r < n() && neg; ++r) neg = qinv[r][cand] <= 0;
      if (neg) i = cand;
    }
    if (i == n()) throw std::logic_error("no descent on a non-identity element");
    word.push_back(i);
    qinv = int_mul(qinv, gen_q_[i]);  // (s_i w)^{-1} = w^{-1} s_i
  }
  return word;
}

WeylElement WeylGroup::mul(const WeylElement& a, const WeylElement& b) const {
  WeylElement w;
  w.actQ = int_mul(a.actQ, b.actQ);
  w.actB = int_mul(a.actB, b.actB);
  w.word = canonical_word(w);
  return w;
}

WeylElement WeylGroup::mul_gen(const WeylElement& a, std::size_t i) const {
  return mul(a, generator(i));
}

WeylElement WeylGroup::compose(const std::vector<std::size_t>& letters) const {
  WeylElement w = identity();
  for (std::size_t i : letters) {
    w.actQ = int_mul(w.actQ, gen_q_[i]);
    w.actB = int_mul(w.actB, gen_b_[i]);
  }
  w.word = canonical_word(w);
  return w;
}

WeylElement WeylGroup::inverse(const WeylElement& w) const {
  WeylElement inv = identity();
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    inv.actQ = int_mul(inv.actQ, gen_q_[*it]);
    inv.actB = int_mul(inv.actB, gen_b_[*it]);
  }
  inv.word = canonical_word(inv);
  return inv;
}

WeylGroup::SubgroupEnumeration WeylGroup::enumerate_standard_subgroup(
    const std::vector<std::size_t>& j_set, std::size_t max_length, std::size_t cap) const {
  SubgroupEnumeration se;
  auto& out = se.elements;
  out.push_back(identity());
  std::map<std::vector<Int>, std::size_t> seen;
  seen.emplace(flatten(out[0].actB), 0);
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::size_t level_end = out.size();
    if (level_begin == level_end) {
      se.saturated = true;
      break;
    }
    for (std::size_t idx = level_begin; idx < level_end; ++idx)
      for (std::size_t i : j_set) {
        WeylElement child;
        child.actQ = int_mul(out[idx].actQ, gen_q_[i]);
        child.actB = int_mul(out[idx].actB, gen_b_[i]);
        auto [it, fresh] = seen.emplace(flatten(child.actB), out.size());
        if (!fresh) continue;
        child.word = out[idx].word;
        child.word.push_back(i);
        if (out.size() >= cap)
          throw BudgetExceeded("element budget of " + std::to_string(cap) + " exceeded");
        out.push_back(std::move(child));
      }
    level_begin = level_end;
    if (level_begin == out.size()) {  // the new level is empty: W_J exhausted
      se.saturated = true;
      break;
    }
  }
  return se;
}

std::vector<WeylElement> WeylGroup::enumerate_by_length(std::size_t max_length,
                                                        std::size_t cap) const {
  std::vector<std::size_t> all(n());
  for (std::size_t i = 0; i < n(); ++i) all[i] = i;
  return enumerate_standard_subgroup(all, max_length, cap).elements;
}

StandardCoset WeylGroup::min_coset_rep(const WeylElement& w, std::vector<std::size_t> j_set) const {
  std::sort(j_set.begin(), j_set.end());
  WeylElement rep = w;
  for (bool moved = true; moved;) {
    moved = false;
    auto desc = right_descents(rep);
    for (std::size_t i : j_set)
      if (std::find(desc.begin(), desc.end(), i) != desc.end()) {
        rep = mul_gen(rep, i);
        moved = true;
        break;
      }
  }
  return {std::move(rep), std::move(j_set)};
}

bool WeylGroup::is_finite_standard_subgroup(const std::vector<std::size_t>& j_set) const {
  if (j_set.empty()) return true;
  std::vector<std::size_t> idx = j_set;
  std::sort(idx.begin(), idx.end());
  auto sub = validate_gcm(principal_submatrix(datum_.gcm.a, idx));
  for (const auto& t : classify(sub))
    if (t.tag != GcmTag::Finite) return false;
  return true;
}

WeylElement WeylGroup::longest_word(const std::vector<std::size_t>& j_set) const {
  if (!is_finite_standard_subgroup(j_set))
    throw InfiniteSubgroup("standard subgroup is infinite; no longest element");
  WeylElement w = identity();
  for (bool moved = true; moved;) {
    moved = false;
    auto desc = right_descents(w);
    for (std::size_t i : j_set)
      if (std::find(desc.begin(), desc.end(), i) == desc.end()) {
        w = mul_gen(w, i);
        moved = true;
        break;
      }
  }
  return w;
}

std::vector<std::size_t> finite_index_core(const Gcm& gcm) {
  auto types = classify(gcm);
  std::vector<std::size_t> core;
  for (std::size_t k = 0; k < gcm.components.size(); ++k)
    if (types[k].tag != GcmTag::Finite)
      core.insert(core.end(), gcm.components[k].begin(), gcm.components[k].end());
  std::sort(core.begin(), core.end());
  return core;
}

}  // namespace weylhull
