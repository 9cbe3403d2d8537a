#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "linsys/core.hpp"
#include "linsys/solvers.hpp"

namespace linsys::verify {

enum class Status { Pass, Fail, Inconclusive, Error };

std::string_view status_name(Status s) noexcept;

struct InstanceRecord {
  std::string id;
  Status status = Status::Pass;
  nlohmann::json data = nlohmann::json::object();
};

/// Outcome of checking one claim over a set of instances. `details` holds
/// one record per checked instance; instances excluded by the claim's
/// hypotheses are only counted in `instances_filtered`.
struct VerificationReport {
  std::string theorem_id;
  std::size_t instances_checked = 0;
  std::size_t instances_filtered = 0;
  bool passed = true;
  std::optional<nlohmann::json> counterexample;
  std::vector<InstanceRecord> details;
  nlohmann::json summary = nlohmann::json::object();

  std::size_t count(Status s) const;
  /// Pass with every instance conclusive.
  bool conclusive_pass() const;
};

nlohmann::json report_json(const VerificationReport& r);

struct NamedInstance {
  std::string id;
  LinearSystem system;
};

/// Random systems with 8-14 points, at most 12 lines and line sizes 2-4;
/// sizes are derived from the seed so the corpus is a pure function of the
/// seed range.
std::vector<NamedInstance> random_corpus(std::uint64_t first_seed, std::size_t count);

/// Supplies (tau, nu2) certificates; the default runs the exact solvers.
using CertificateProvider =
    std::function<std::pair<Certificate, Certificate>(const LinearSystem&)>;

struct VerifyOptions {
  SolveOptions solve;
  CertificateProvider provider;  // empty: exact solvers
};

VerificationReport verify_eq1(const std::vector<NamedInstance>& corpus,
                              const VerifyOptions& opts = {});
VerificationReport verify_thm21(const std::vector<NamedInstance>& corpus,
                                const VerifyOptions& opts = {});

enum class PropSelection { Tau, Nu2, Both };

/// Builds the system over Z_n for each n and checks tau and/or nu2 = n + 1.
/// Orders that cannot be built are recorded as instance errors.
VerificationReport verify_props_31_32(const std::vector<std::int64_t>& orders,
                                      PropSelection which = PropSelection::Both,
                                      const VerifyOptions& opts = {});

/// |L| = deg p + deg q + nu2 - 2 = 2 Delta + nu2 - 2 for the system over Z_n.
VerificationReport verify_thm32_minimality(const std::vector<std::int64_t>& orders,
                                           const VerifyOptions& opts = {});

/// Candidates that are not intersecting rank-r systems with tau = nu2 = r are
/// filtered out.
VerificationReport verify_lemma41(const std::vector<NamedInstance>& candidates,
                                  const VerifyOptions& opts = {});
VerificationReport verify_lemmas_42_43(const std::vector<NamedInstance>& candidates,
                                       const VerifyOptions& opts = {});

struct Cor42Member {
  LinearSystem system;
  std::size_t tau = 0;
  std::size_t nu2 = 0;
  bool optimal = true;
  bool in_a = false;  // 4-uniform, intersecting, nu2 = 4
  bool in_b = false;  // intersecting, rank 4, tau = nu2 = 4
  bool is_plane = false;
};

/// Every system between the triangle-deleted plane and the order-3 plane,
/// with solver results.
std::vector<Cor42Member> cor42_lattice(const VerifyOptions& opts = {});
VerificationReport verify_cor42(const VerifyOptions& opts = {});

/// No transversal of `size` points avoids p and q in the system over Z_n.
/// Exhaustive over all point subsets of that size.
bool no_small_transversal_off_pq(std::int64_t n, std::size_t size);

}  // namespace linsys::verify
