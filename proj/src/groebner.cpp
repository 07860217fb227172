#include "toric/groebner.hpp"

#include "toric/error.hpp"
#include "toric/linalg.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace toric {
namespace {

Monomial normal_form(const std::vector<Binomial>& basis, Monomial m) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Binomial& g : basis)
      if (divides(g.plus, m)) {
        m += g.minus - g.plus;
        changed = true;
        break;
      }
  }
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) { return (a.array().min(b.array()) == 0).all(); }

// Support of a monomial folded into 64 bits; supp(a) within supp(b) is
// necessary for a | b, which makes the mask a cheap prefilter.
std::uint64_t support_mask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (Index i = 0; i < m.size(); ++i)
    if (m(i) != 0) mask |= std::uint64_t{1} << (i % 64);
  return mask;
}

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, const GroebnerOptions& options) : order_(order), options_(options) {}

  void add(const Binomial& f) {
    Binomial r{reduce(f.plus), reduce(f.minus)};
    if (r.is_zero()) return;
    r = r.oriented(order_);
    const std::size_t k = basis_.size();
    masks_.push_back(support_mask(r.plus));
    basis_.push_back(std::move(r));
    pending_.emplace_back(k, false);
    // coprime leading terms reduce to zero and never become pending
    for (std::size_t i = 0; i < k; ++i) {
      if (coprime(basis_[i].plus, basis_[k].plus)) continue;
      const Count degree = basis_[i].plus.cwiseMax(basis_[k].plus).sum();
      queue_.push({degree, k, i});
      pending_[k][i] = true;
    }
  }

  void run() {
    while (!queue_.empty()) {
      const Pair p = queue_.top();
      queue_.pop();
      const std::size_t i = p.low, j = p.high;
      pending_[j][i] = false;
      const Monomial& li = basis_[i].plus;
      const Monomial& lj = basis_[j].plus;
      const Monomial lcm = li.cwiseMax(lj);
      if (chain_criterion(i, j, lcm)) continue;
      if (++reduced_ > options_.spair_budget)
        throw Error(ErrorCode::NonterminationGuard,
                    "S-pair budget of " + std::to_string(options_.spair_budget) + " exhausted with " +
                        std::to_string(basis_.size()) + " basis elements");
      add({lcm - li + basis_[i].minus, lcm - lj + basis_[j].minus});
    }
  }

  std::vector<Binomial> reduced_basis() const {
    std::vector<Binomial> minimal;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
        if (i == j || !divides(basis_[j].plus, basis_[i].plus)) continue;
        // equal leading terms: keep the earliest
        redundant = basis_[j].plus != basis_[i].plus || j < i;
      }
      if (!redundant) minimal.push_back(basis_[i]);
    }
    for (Binomial& g : minimal) {
      std::vector<Binomial> others;
      for (const Binomial& h : minimal)
        if (&h != &g) others.push_back(h);
      g.minus = normal_form(others, g.minus);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const Binomial& a, const Binomial& b) { return canonical_less(a, b, order_); });
    return minimal;
  }

 private:
  // S-pairs by lcm degree, then by the later and the earlier element
  struct Pair {
    Count degree;
    std::size_t high;
    std::size_t low;
    bool operator>(const Pair& o) const { return std::tie(degree, high, low) > std::tie(o.degree, o.high, o.low); }
  };

  bool is_pending(std::size_t a, std::size_t b) const { return a < b ? pending_[b][a] : pending_[a][b]; }

  Monomial reduce(Monomial m) const {
    bool changed = true;
    while (changed) {
      changed = false;
      const std::uint64_t mask = support_mask(m);
      for (std::size_t k = 0; k < basis_.size(); ++k)
        if ((masks_[k] & ~mask) == 0 && divides(basis_[k].plus, m)) {
          m += basis_[k].minus - basis_[k].plus;
          changed = true;
          break;
        }
    }
    return m;
  }

  bool chain_criterion(std::size_t i, std::size_t j, const Monomial& lcm) const {
    const std::uint64_t lcm_mask = support_mask(lcm);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == i || k == j || (masks_[k] & ~lcm_mask) != 0 || !divides(basis_[k].plus, lcm)) continue;
      if (!is_pending(i, k) && !is_pending(j, k)) return true;
    }
    return false;
  }

  const MonomialOrder& order_;
  const GroebnerOptions& options_;
  std::vector<Binomial> basis_;
  std::vector<std::uint64_t> masks_;
  std::uint64_t reduced_ = 0;
  std::priority_queue<Pair, std::vector<Pair>, std::greater<Pair>> queue_;
  std::vector<std::vector<bool>> pending_;  // pending_[j][i] for i < j
};

}  // namespace

GroebnerBasis::GroebnerBasis(MonomialOrder order, std::vector<Binomial> elements)
    : order_(std::move(order)), elements_(std::move(elements)) {
  for (Binomial& g : elements_) g = g.oriented(order_);
}

GroebnerBasis GroebnerBasis::compute(std::vector<Binomial> generators, const MonomialOrder& order,
                                     const GroebnerOptions& options) {
  Buchberger b(order, options);
  for (const Binomial& f : generators) {
    if (f.variables() != order.variables())
      throw Error(ErrorCode::DimensionMismatch, "generator length differs from the number of variables");
    b.add(f);
  }
  b.run();
  GroebnerBasis g;
  g.order_ = order;
  g.elements_ = b.reduced_basis();
  return g;
}

Monomial GroebnerBasis::reduce(Monomial m) const { return normal_form(elements_, std::move(m)); }

Binomial GroebnerBasis::reduce(const Binomial& f) const { return {reduce(f.plus), reduce(f.minus)}; }

bool GroebnerBasis::is_reduced() const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = 0; j < elements_.size(); ++j) {
      if (i == j) continue;
      if (divides(elements_[i].plus, elements_[j].plus) || divides(elements_[i].plus, elements_[j].minus))
        return false;
    }
  return true;
}

GroebnerBasis toric_ideal(const Configuration& a, const GroebnerOptions& options) {
  return toric_ideal(a, MonomialOrder(a.size()), options);
}

GroebnerBasis toric_ideal(const Configuration& a, const MonomialOrder& order, const GroebnerOptions& options) {
  const Index n = a.size();
  if (n > options.max_variables)
    throw Error(ErrorCode::CapExceeded, "toric ideal of " + std::to_string(n) + " variables exceeds the cap of " +
                                            std::to_string(options.max_variables));
  const LatticeBasis kernel = kernel_lattice(a.matrix());
  std::vector<Binomial> generators;
  for (Index i = 0; i < kernel.rank(); ++i) generators.push_back(binomial_of(kernel.vector(i)));

  // (lattice ideal) : x_i^infinity, using that for homogeneous ideals and a
  // reverse lexicographic order with x_i last the quotient of a Groebner
  // basis by the largest power of x_i is a Groebner basis of the saturation
  for (Index i = 0; i < n && !generators.empty(); ++i) {
    const GroebnerBasis g = GroebnerBasis::compute(generators, MonomialOrder::cheapest_last(n, i), options);
    generators.clear();
    for (Binomial f : g.elements()) {
      const Count k = std::min(f.plus(i), f.minus(i));
      f.plus(i) -= k;
      f.minus(i) -= k;
      generators.push_back(std::move(f));
    }
  }
  GroebnerBasis result = GroebnerBasis::compute(std::move(generators), order, options);
  for (const Binomial& f : result.elements())
    if (!in_toric_ideal(a, f)) throw std::logic_error("toric ideal element does not vanish: " + to_text(f, a));
  return result;
}

}  // namespace toric
