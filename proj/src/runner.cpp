#include "sharp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "sharp/corpus.hpp"
#include "sharp/diagram.hpp"
#include "sharp/mip.hpp"
#include "sharp/textio.hpp"

namespace sharp {

namespace {

// Always-on verification of everything a search reports (structural
// diagram checks, swap closure, support uniqueness). Violations are
// internal errors, not data.
void verify_outcome(const SearchOutcome& out, bool sharp_mode) {
    auto supp_less = [](const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), MonoLess{});
    };
    std::set<std::vector<Monomial>, decltype(supp_less)> supports(supp_less);
    for (const auto& p : out.raw) {
        CheckReport rep = structural_check(p, out.degree);
        if (!rep.ok(sharp_mode))
            throw std::logic_error("structural check failed for " + to_text(p));
        if (!supports.insert(p.support()).second)
            throw std::logic_error("two accepted polynomials share a support");
    }
    for (const auto& p : out.raw) {
        BivariatePoly s = swap_vars(p);
        if (!std::any_of(out.raw.begin(), out.raw.end(),
                         [&](const BivariatePoly& q) { return q == s; }))
            throw std::logic_error("accepted set is not closed under swapping variables");
    }
    if (out.stats.audit_failures != 0)
        throw std::logic_error("modular prefilter audit recorded a failure");
}

SearchConfig make_config(const EnumerateOptions& opts) {
    SearchConfig cfg;
    if (opts.shard) {
        cfg.shard_index = opts.shard->first;
        cfg.shard_count = opts.shard->second;
    }
    cfg.jobs = opts.jobs;
    cfg.audit_fraction = opts.audit_fraction;
    return cfg;
}

SearchOutcome run_nullspace_backend(int d, int n, const EnumerateOptions& opts) {
    SearchConfig cfg = make_config(opts);
    SearchOutcome out =
        n == sharp_term_target(d) ? enumerate_sharp(d, cfg) : enumerate_with_terms(d, n, cfg);
    verify_outcome(out, n == sharp_term_target(d));
    return out;
}

std::string diff_polys(const std::vector<BivariatePoly>& a, const std::vector<BivariatePoly>& b,
                       std::vector<BivariatePoly>* only_a, std::vector<BivariatePoly>* only_b) {
    std::ostringstream os;
    for (const auto& p : a)
        if (!std::binary_search(b.begin(), b.end(), p, poly_less)) {
            if (only_a) only_a->push_back(p);
            os << "  < " << to_text(p) << "\n";
        }
    for (const auto& p : b)
        if (!std::binary_search(a.begin(), a.end(), p, poly_less)) {
            if (only_b) only_b->push_back(p);
            os << "  > " << to_text(p) << "\n";
        }
    return os.str();
}

std::string cache_path(const std::string& fingerprint, const std::string& backend, int d, int n) {
    const char* dir = std::getenv("SHARP_CACHE_DIR");
    if (!dir || !*dir) return {};
    std::ostringstream os;
    os << dir << "/sharppoly-" << fingerprint << "-" << backend << "-d" << d << "-n" << n
       << ".json";
    return os.str();
}

}  // namespace

SearchOutcome run_mip_backend(int d, const EnumerateOptions& opts) {
    MipModel model = build_model(d, d % 2 == 1);
    MipConfig mcfg;
    mcfg.pivot_budget = opts.pivot_budget;
    mcfg.subtree_depth = opts.subtree_depth;
    mcfg.jobs = opts.jobs;
    MipOutcome mip = enumerate_feasible(model, mcfg);

    SearchOutcome out;
    out.degree = d;
    out.n_terms = model.n_terms;
    // The symmetry row suppresses right-heavy orientations; restore the
    // swapped mates so raw counts are swap-inclusive.
    std::vector<BivariatePoly> raw;
    for (const auto& p : mip.polys) {
        raw.push_back(p);
        raw.push_back(swap_vars(p));
    }
    std::sort(raw.begin(), raw.end(), poly_less);
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    out.raw = std::move(raw);
    for (const auto& p : out.raw) out.canonical.push_back(canonical_form(p));
    std::sort(out.canonical.begin(), out.canonical.end(), poly_less);
    out.canonical.erase(std::unique(out.canonical.begin(), out.canonical.end()),
                        out.canonical.end());
    out.stats.accepted = out.raw.size();
    out.stats.supports_tested = mip.stats.leaves;
    verify_outcome(out, true);
    return out;
}

EnumerateRun run_enumerate(const EnumerateOptions& opts) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();

    int d = opts.degree;
    int n = opts.terms.value_or(sharp_term_target(d));
    if (opts.backend != "nullspace" && n != sharp_term_target(d))
        throw std::invalid_argument("the mip backend only searches minimal term counts");
    if (opts.shard && opts.backend != "nullspace")
        throw std::invalid_argument("sharding applies to the nullspace backend");

    EnumerateRun run;
    SearchConfig cfg = make_config(opts);
    ConstraintSet cs;
    {
        ConstraintSet def = d % 2 ? ConstraintSet::sharp_odd() : ConstraintSet::sharp_even();
        cs = n == sharp_term_target(d) ? def : ConstraintSet::with_terms();
    }
    std::string fp = constraint_fingerprint(d, n, cs, cfg);

    bool full_run = !opts.shard || opts.shard->second == 1;
    std::string cpath =
        opts.use_cache && full_run ? cache_path(fp, opts.backend, d, n) : std::string{};
    if (!cpath.empty() && std::filesystem::exists(cpath)) {
        run.report = load_report(cpath);
        return run;
    }

    std::optional<SearchOutcome> null_out, mip_out;
    if (opts.backend == "nullspace" || opts.backend == "both")
        null_out = run_nullspace_backend(d, n, opts);
    if (opts.backend == "mip" || opts.backend == "both") mip_out = run_mip_backend(d, opts);

    if (null_out && mip_out) {
        if (null_out->canonical != mip_out->canonical || null_out->raw != mip_out->raw) {
            run.backend_mismatch = true;
            diff_polys(null_out->canonical, mip_out->canonical, &run.only_nullspace,
                       &run.only_mip);
        }
    }

    const SearchOutcome& primary = null_out ? *null_out : *mip_out;

    SearchReport rep;
    rep.degree = d;
    rep.n_terms = n;
    rep.backend = opts.backend;
    rep.fingerprint = fp;
    rep.polynomials = primary.canonical;
    rep.raw_count = primary.raw.size();
    rep.families = primary.families;
    rep.stats = primary.stats;
    rep.manifest.command_line = opts.command_line;
    rep.manifest.config = cs.describe();
    rep.manifest.artifact_version = kArtifactVersion;
    rep.manifest.environment = "c++20/gmp exact arithmetic";
    ShardInfo si;
    si.index = cfg.shard_index;
    si.count = cfg.shard_count;
    si.supports_tested = primary.stats.supports_tested;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
    si.wall_ms = opts.timings ? static_cast<std::uint64_t>(ms) : 0;
    rep.manifest.wall_ms = opts.timings ? static_cast<std::uint64_t>(ms) : 0;
    rep.manifest.shards = {si};
    run.report = std::move(rep);

    // Regression corpus: compare full runs against the frozen entries.
    if (opts.corpus_check && full_run) {
        std::ostringstream diff;
        if (n == sharp_term_target(d)) {
            auto expected = corpus::parsed_classes(d);
            if (!expected.empty()) {
                std::sort(expected.begin(), expected.end(), poly_less);
                if (expected != run.report.polynomials) {
                    run.corpus_mismatch = true;
                    diff << "canonical classes differ from the frozen classification:\n"
                         << diff_polys(run.report.polynomials, expected, nullptr, nullptr);
                }
            }
            const auto& counts = d % 2 ? corpus::raw_counts_odd() : corpus::raw_counts_even();
            for (auto [deg, cnt] : counts) {
                if (deg == d && run.report.raw_count != static_cast<std::uint64_t>(cnt)) {
                    run.corpus_mismatch = true;
                    diff << "raw count " << run.report.raw_count << " differs from frozen "
                         << cnt << "\n";
                }
            }
        } else if (d % 2 == 1 && n == (d + 5) / 2) {
            for (auto [deg, cnt] : corpus::isolated_counts()) {
                if (deg == d && run.report.raw_count != static_cast<std::uint64_t>(cnt)) {
                    run.corpus_mismatch = true;
                    diff << "isolated count " << run.report.raw_count << " differs from frozen "
                         << cnt << "\n";
                }
            }
        }
        run.corpus_diff = diff.str();
    }

    if (!cpath.empty() && !run.backend_mismatch && !run.corpus_mismatch) {
        std::error_code ec;
        std::filesystem::create_directories(std::filesystem::path(cpath).parent_path(), ec);
        save_report(run.report, cpath);
    }
    return run;
}

}  // namespace sharp
