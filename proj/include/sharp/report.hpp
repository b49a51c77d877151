#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sharp/nullsearch.hpp"

namespace sharp {

struct ReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShardInfo {
    std::uint64_t index = 0;
    std::uint64_t count = 1;
    std::uint64_t supports_tested = 0;
    std::uint64_t wall_ms = 0;
};

// Enough to re-run the search bit-identically: the semantic flags only.
// Job counts, shard slicing and timing do not influence results and are
// kept out of the deterministic portion.
struct RunManifest {
    std::string command_line;
    std::string config;
    std::string artifact_version;
    std::string environment;
    std::uint64_t wall_ms = 0;
    std::vector<ShardInfo> shards;
};

struct SearchReport {
    int schema_version = 1;
    int degree = 0;
    int n_terms = 0;
    std::string backend;
    std::string fingerprint;
    std::vector<BivariatePoly> polynomials;  // canonical, sorted
    std::uint64_t raw_count = 0;
    std::vector<FamilyWitness> families;
    SearchStats stats;
    RunManifest manifest;
};

std::string constraint_fingerprint(int degree, int n_terms, const ConstraintSet& cs,
                                   const SearchConfig& cfg);

std::string report_to_json(const SearchReport& rep);
// Parses, validates the schema, and re-verifies membership of every
// polynomial; tampered reports are rejected.
SearchReport report_from_json(const std::string& text);

void save_report(const SearchReport& rep, const std::string& path);
SearchReport load_report(const std::string& path);

// Combines shard fragments into the report a single-shard run produces.
SearchReport merge_reports(std::vector<SearchReport> fragments);

std::string report_to_csv(const SearchReport& rep);
std::string report_to_text(const SearchReport& rep);

}  // namespace sharp
