#pragma once

#include <optional>
#include <string>

#include "sharp/report.hpp"

namespace sharp {

inline constexpr const char* kArtifactVersion = "sharppoly 1.0.0";

struct EnumerateOptions {
    int degree = 0;
    std::optional<int> terms;
    std::string backend = "nullspace";  // nullspace | mip | both
    std::optional<std::pair<std::uint64_t, std::uint64_t>> shard;  // index / count
    int jobs = 1;
    double audit_fraction = 0.01;
    std::uint64_t pivot_budget = 1000000;
    int subtree_depth = 10;
    bool timings = false;
    bool corpus_check = true;
    bool use_cache = true;
    std::string command_line;
};

struct EnumerateRun {
    SearchReport report;
    bool backend_mismatch = false;
    std::vector<BivariatePoly> only_nullspace;  // canonical diff when backends disagree
    std::vector<BivariatePoly> only_mip;
    bool corpus_mismatch = false;
    std::string corpus_diff;
};

// Runs the requested backend(s), applies the always-on structural
// verifications to every accepted polynomial, compares against the
// embedded regression corpus when the search covers a frozen entry, and
// assembles the report.
EnumerateRun run_enumerate(const EnumerateOptions& opts);

// Raw (swap-inclusive) set for the mip backend; check_support-verified.
SearchOutcome run_mip_backend(int d, const EnumerateOptions& opts);

}  // namespace sharp
