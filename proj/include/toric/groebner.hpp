#pragma once

#include "toric/binomial.hpp"
#include "toric/configuration.hpp"

#include <cstdint>
#include <vector>

namespace toric {

struct GroebnerOptions {
  std::uint64_t spair_budget = 1'000'000;  // S-pairs reduced per Buchberger run
  Index max_variables = 40;
};

/// Binomial Groebner basis with every element oriented by `order()`.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(MonomialOrder order, std::vector<Binomial> elements);

  /// Buchberger's algorithm with the coprime and chain criteria. The
  /// result is reduced and sorted canonically. Throws NonterminationGuard
  /// when the S-pair budget runs out.
  static GroebnerBasis compute(std::vector<Binomial> generators, const MonomialOrder& order,
                               const GroebnerOptions& options = {});

  const MonomialOrder& order() const { return order_; }
  const std::vector<Binomial>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /// Normal form of a monomial by repeated replacement lead -> trail.
  Monomial reduce(Monomial m) const;
  /// Both terms reduced; the result is zero iff f lies in the ideal.
  Binomial reduce(const Binomial& f) const;
  bool contains(const Binomial& f) const { return reduce(f).is_zero(); }

  /// True when no leading term divides a term of another element.
  bool is_reduced() const;

 private:
  MonomialOrder order_;
  std::vector<Binomial> elements_;
};

/// Reduced Groebner basis of I_A in graded reverse lexicographic order:
/// binomials of a kernel basis, saturated one variable at a time.
GroebnerBasis toric_ideal(const Configuration& a, const GroebnerOptions& options = {});
GroebnerBasis toric_ideal(const Configuration& a, const MonomialOrder& order, const GroebnerOptions& options = {});

}  // namespace toric
