#pragma once

#include "toric/configuration.hpp"
#include "toric/groebner.hpp"
#include "toric/linalg.hpp"
#include "toric/semigroup.hpp"
#include "toric/toric.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace toric {

/// All nonzero maximal minors were enumerated and agree. Replay rescans
/// the minors; the recorded value, when present, must match.
struct UnimodularCertificate {
  std::uint64_t minors_examined = 0;
  std::optional<Integer> value;
};

/// Two maximal minors of the point matrix with distinct nonzero values.
struct MinorPairCertificate {
  MinorWitness witness;
};

struct HolesCertificate {
  HoleList holes;
};

/// Holes base + m a_k for m = 0..checked_up_to, with the fundamental
/// binomial they were built from when there is one.
struct HoleFamilyCertificate {
  HoleFamily family;
  Count checked_up_to = 0;
  std::optional<FundamentalCertificate> fundamental;
};

/// A pairs off as a Lawrence lifting of `base`. When the base is not
/// unimodular, neither is A and its semigroup ring is not very ample.
struct LawrenceCertificate {
  LawrenceMatch match;
  bool base_unimodular = false;
  std::optional<MinorWitness> base_minors;
  std::optional<HoleFamilyCertificate> family;
};

struct Rank2Certificate {
  Rank2Analysis analysis;
  std::optional<HoleFamilyCertificate> family;
};

using Certificate = std::variant<UnimodularCertificate, MinorPairCertificate, HolesCertificate,
                                 HoleFamilyCertificate, LawrenceCertificate, Rank2Certificate>;

enum class Ampleness { VeryAmple, NotVeryAmple, Unknown };
enum class Normality { Normal, NormalUpTo, NotNormal, Unknown };

struct Verdict {
  Ampleness ampleness = Ampleness::Unknown;
  Normality normality = Normality::Unknown;
  Index normal_up_to = 0;  // with Normality::NormalUpTo
  std::string reason;      // the cascade step that decided
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;  // stages skipped or inconclusive

  /// VERY_AMPLE, NOT_VERY_AMPLE, NOT_NORMAL, NORMAL_UP_TO(D) or UNKNOWN.
  std::string status() const;
  std::string normality_name() const;
};

struct VerdictOptions {
  Index max_degree = 3;
  Count family_length = 20;
  MinorOptions minors;
  GroebnerOptions groebner;
  SemigroupOptions semigroup;
  bool attach_lawrence_family = true;
};

/// Outcome of one stage of the cascade: done, skipped or the error name.
struct StageRecord {
  std::string stage;
  std::string status;
  std::string message;
};

/// Intermediate results kept for reports.
struct VerdictTrace {
  std::optional<UnimodularityResult> unimodularity;
  std::optional<GroebnerBasis> toric;
  std::optional<HoleList> holes;
  std::vector<StageRecord> stages;
};

/// Decision cascade: unimodularity; Lawrence type with non-unimodular base;
/// fundamental binomials with no squarefree monomial among the Groebner
/// basis; bounded hole search with the exact rank-2 rule.
Verdict verdict(const Configuration& a, const VerdictOptions& options = {}, VerdictTrace* trace = nullptr);

/// Primitive circuit of `m` with an entry of absolute value at least 2,
/// found by walking between the two bases of a minor witness.
IntVector circuit_from_minor_pair(const IntMatrix& m, const MinorWitness& witness);

/// Hole family for a non-unimodular Lawrence base: the circuit lifted to
/// the pairs, its fundamental certificate and the family it generates.
std::optional<HoleFamilyCertificate> lawrence_hole_family(const Configuration& a, const LawrenceMatch& match,
                                                          const MinorWitness& witness, Count checked_up_to,
                                                          const SemigroupOptions& options = {});

struct ReplayResult {
  bool ok = true;
  std::string message;  // the violated invariant when !ok

  static ReplayResult failure(std::string why) { return {false, std::move(why)}; }
};

ReplayResult replay(const Configuration& a, const Certificate& certificate, const VerdictOptions& options = {});

/// Replays every certificate and checks that they support the status.
ReplayResult replay(const Configuration& a, const Verdict& verdict, const VerdictOptions& options = {});

}  // namespace toric
