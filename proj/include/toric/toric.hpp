#pragma once

#include "toric/binomial.hpp"
#include "toric/configuration.hpp"
#include "toric/groebner.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace toric {

enum class FiberPruning {
  Bounds,     // coordinate bounds from the residual only
  Cone,       // also require the residual in the cone of the remaining points
  Automatic,  // cone pruning once the bound product gets large
};

struct FiberOptions {
  std::uint64_t cap = 1'000'000;  // fiber elements
  FiberPruning pruning = FiberPruning::Automatic;
  double automatic_threshold = 1e6;
};

/// All m >= 0 with A m = b, sorted lexicographically. Throws CapExceeded
/// once more than `cap` elements have been found.
std::vector<Monomial> fiber(const Configuration& a, const IntVector& b, const FiberOptions& options = {});

enum class Indispensability { Indispensable, NotConfirmed };

struct IndispensabilityResult {
  Indispensability verdict = Indispensability::NotConfirmed;
  std::vector<Monomial> fiber;
};

/// Indispensable when the fiber of A plus(f) is exactly {plus, minus} and
/// the two monomials are coprime, so no move of lower degree connects them.
/// Anything else is reported as NotConfirmed. Throws NotInIdeal.
IndispensabilityResult is_indispensable(const Configuration& a, const Binomial& f, const FiberOptions& options = {});

enum class PrincipalStatus { ZeroIdeal, Principal, NotPrincipal };

struct PrincipalResult {
  PrincipalStatus status = PrincipalStatus::NotPrincipal;
  Index kernel_rank = 0;
  std::optional<Binomial> generator;  // in the variables of A
};

/// I_B for the points `subset`: principal exactly when the kernel of the
/// submatrix has rank one, generated by the binomial of its primitive vector.
PrincipalResult is_principal_toric(const Configuration& a, const std::vector<Index>& subset);

enum class FundamentalSource { Support, CoordinateSection };

struct FundamentalCertificate {
  Binomial binomial;
  std::vector<Index> subset;
  FaceCertificate face;
  FundamentalSource source = FundamentalSource::Support;
};

/// Searches for a face B with I_B = (f): first the points in supp(f), then
/// the smallest coordinate section containing them. nullopt means
/// undecided; it never claims f is not fundamental. Throws NotInIdeal.
std::optional<FundamentalCertificate> fundamental_certificate(const Configuration& a, const Binomial& f);

/// Re-checks a certificate from scratch.
bool verify_fundamental(const Configuration& a, const FundamentalCertificate& certificate);

}  // namespace toric
