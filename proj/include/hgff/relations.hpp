#pragma once

// Registry of relations between hypergeometric values and Fourier
// coefficients, the per-prime checker and the batch runner.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hgff/quadratic_signs.hpp"

namespace hgff {

enum class Outcome { Exact, UpToSign, Fail, Skipped };
enum class Backend { Complex, Padic, Both };
enum class SignPolicy { None, Kind, UpToSign };

std::string to_string(Outcome o);
std::string to_string(Backend b);

/// One evaluated conjugate choice of a conjugate-sensitive relation.
struct Alternative {
    std::string choice;  // "chi" or "conj"
    std::string lhs;
    bool matched = false;
    int sign = 0;           // sign s with lhs = s * a(p), 0 when none
    std::string embedding;  // index of the embedding that matched
};

struct Report {
    std::string id;
    std::int64_t p = 0;
    std::int64_t q = 0;
    Outcome outcome = Outcome::Skipped;
    std::string lhs;
    std::string rhs;
    std::string expected_sign;  // empty when the relation carries none
    int realized_sign = 0;
    std::string conjugate_choice;
    std::string embedding_choice;
    std::vector<Alternative> alternatives;
    std::string reason;
    bool conjectural = false;
    double seconds = 0;
};

struct RelationSpec {
    std::string id;
    std::string description;
    std::string hyp;        // parameter template, e.g. "1/2,1/2;1,1 | 1"
    std::string field;      // "p", "p^2" or "p^3"
    std::string oracle;     // "eta:...", "ec:...", "data:<label>", "dim:0", ...
    std::string transform;  // affine adjustment applied before comparing
    SignPolicy sign_policy = SignPolicy::None;
    std::optional<SignKind> sign_kind;
    std::string condition;
    std::function<bool(std::int64_t)> admits;
    Backend backend = Backend::Complex;
    bool conjectural = false;
    bool conjugate_sensitive = false;
    std::int64_t ceiling = 199;
    std::string note;
    std::function<Report(const RelationSpec&, std::int64_t)> evaluate;
};

/// Every relation, in registry order, ids unique.
const std::vector<RelationSpec>& registry();
/// nullptr when no spec has the id.
const RelationSpec* find_relation(const std::string& id);

/// Never throws for computational failures: those become Fail or Skipped
/// with a reason.
Report check_relation(const RelationSpec& spec, std::int64_t p);

struct SuiteOptions {
    std::string filter = "*";
    std::int64_t pmin = 3;
    std::int64_t pmax = 199;
    int jobs = 1;
    bool strict_conjectures = false;
    bool timing = false;
};

struct SuiteSummary {
    std::size_t exact = 0, up_to_sign = 0, fail = 0, skipped = 0;
    std::size_t hard_failures = 0;  // failures of non-conjectural relations
};

struct SuiteResult {
    std::vector<Report> reports;  // sorted by id, then p
    SuiteSummary summary;
    /// Nonzero iff a non-conjectural relation failed, or any relation
    /// failed under strict_conjectures.
    int exit_status = 0;
};

/// Primes in [pmin, min(pmax, spec.ceiling)] admitted by the spec.
std::vector<std::int64_t> primes_for(const RelationSpec& spec, std::int64_t pmin, std::int64_t pmax);

SuiteResult run_suite(const SuiteOptions& options);

/// Shell-style glob on relation ids ("new:*", "rv:1?").
bool id_matches(const std::string& pattern, const std::string& id);

std::string report_json(const SuiteResult& result, const SuiteOptions& options);
std::string summary_text(const SuiteResult& result);

}  // namespace hgff
