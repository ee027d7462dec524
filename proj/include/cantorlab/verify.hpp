#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cantorlab/coding.hpp"
#include "cantorlab/walks.hpp"

namespace cantorlab {

/// Base seed of the verification suite, fixed once and never tuned.
inline constexpr std::uint64_t kVerifySeed = 1729;

struct VerifyOptions {
  std::uint64_t seed = kVerifySeed;
  unsigned threads = 0;
  long precision = 256;
};

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string summary;
  nlohmann::json details;
  double seconds = 0;
};

/// Random admissible word: depth uniform in [1, max_depth], each symbol
/// uniform among the legal values in [0, max_symbol].
AdmissibleWord random_admissible_word(Rng& rng, std::size_t max_depth, Symbol max_symbol);

CriterionResult check_partition_identity(const VerifyOptions& opt);   // 1
CriterionResult check_consistency(const VerifyOptions& opt);          // 2
CriterionResult check_folded_identity(const VerifyOptions& opt);      // 3
CriterionResult check_kernel_empirical(const VerifyOptions& opt);     // 4
CriterionResult check_path_law(const VerifyOptions& opt);             // 5
CriterionResult check_transience(const VerifyOptions& opt);           // 6
CriterionResult check_borel_cantelli(const VerifyOptions& opt);       // 7
/// Criteria 8 and 9 share their paths; returns both results.
std::vector<CriterionResult> check_pointwise_dimension(const VerifyOptions& opt);
CriterionResult check_pressure(const VerifyOptions& opt);             // 10
CriterionResult check_lebesgue(const VerifyOptions& opt);             // 11

/// Fast structural checks: kernel row sums, folded identity, consistency
/// and partition identity at reduced sizes.
std::vector<CriterionResult> run_quick_checks(const VerifyOptions& opt);

/// All acceptance criteria in order, one result each.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace cantorlab
