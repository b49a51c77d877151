// Command line front end: enumeration, verification, construction and
// sequence queries for minimal-term polynomials equal to 1 on x+y=1.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sharp/constructor.hpp"
#include "sharp/corpus.hpp"
#include "sharp/diagram.hpp"
#include "sharp/invariant.hpp"
#include "sharp/runner.hpp"
#include "sharp/textio.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitBackendDisagree = 3;
constexpr int kExitRegression = 4;

std::string join_args(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    return os.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << text;
    }
}

int cmd_enumerate(const sharp::EnumerateOptions& opts, const std::string& format,
                  const std::string& out_path) {
    sharp::EnumerateRun run = sharp::run_enumerate(opts);
    std::string text;
    if (format == "json")
        text = sharp::report_to_json(run.report);
    else if (format == "csv")
        text = sharp::report_to_csv(run.report);
    else
        text = sharp::report_to_text(run.report);
    write_output(text, out_path);
    if (run.backend_mismatch) {
        std::cerr << "backend disagreement; symmetric difference:\n";
        for (const auto& p : run.only_nullspace)
            std::cerr << "  only nullspace: " << sharp::to_text(p) << "\n";
        for (const auto& p : run.only_mip) std::cerr << "  only mip: " << sharp::to_text(p) << "\n";
        return kExitBackendDisagree;
    }
    if (run.corpus_mismatch) {
        std::cerr << "regression mismatch against the frozen corpus:\n" << run.corpus_diff;
        return kExitRegression;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact search tools for minimal-term polynomials equal to 1 on the line x+y=1"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "search one degree for members");
    int en_degree = 0;
    int en_terms = -1;
    std::string en_backend = "nullspace";
    std::string en_shard;
    int en_jobs = 1;
    std::string en_format = "text";
    std::string en_out;
    double en_audit = 0.01;
    std::uint64_t en_pivot_budget = 1000000;
    int en_subtree_depth = 10;
    bool en_timings = false;
    bool en_no_corpus = false;
    bool en_no_cache = false;
    enumerate->add_option("--degree", en_degree, "degree d")->required();
    enumerate->add_option("--terms", en_terms, "term count N (default: minimal for d)");
    enumerate->add_option("--backend", en_backend, "nullspace|mip|both")
        ->check(CLI::IsMember({"nullspace", "mip", "both"}));
    enumerate->add_option("--shard", en_shard, "fragment i/k of the nullspace search");
    enumerate->add_option("--jobs", en_jobs, "worker threads");
    enumerate->add_option("--format", en_format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    enumerate->add_option("--out", en_out, "write output to a file");
    enumerate->add_option("--audit-fraction", en_audit, "prefilter audit sampling rate");
    enumerate->add_option("--pivot-budget", en_pivot_budget, "simplex pivot budget per solve");
    enumerate->add_option("--subtree-depth", en_subtree_depth, "mip worker frontier depth");
    enumerate->add_flag("--timings", en_timings, "include wall times in the report");
    enumerate->add_flag("--no-corpus-check", en_no_corpus, "skip the frozen-corpus comparison");
    enumerate->add_flag("--no-cache", en_no_cache, "ignore SHARP_CACHE_DIR");

    // merge
    auto* merge = app.add_subcommand("merge", "merge shard fragment reports");
    std::vector<std::string> merge_inputs;
    std::string merge_out;
    merge->add_option("fragments", merge_inputs, "fragment JSON files")->required();
    merge->add_option("--out", merge_out, "merged report path");

    // verify
    auto* verify = app.add_subcommand("verify", "check membership of a polynomial");
    std::string ver_poly;
    int ver_degree = 0;
    verify->add_option("--poly", ver_poly, "polynomial in text grammar")->required();
    verify->add_option("--degree", ver_degree, "degree d")->required();

    // invariant
    auto* invariant = app.add_subcommand("invariant", "print the invariant-family polynomial");
    int inv_degree = 0;
    bool inv_even = false;
    invariant->add_option("--degree", inv_degree, "degree")->required();
    invariant->add_flag("--even", inv_even, "even-degree variant (one negative term)");

    // construct
    auto* construct = app.add_subcommand("construct", "build new minimal members");
    int con_degree = 0;
    int con_depth = 1;
    construct->add_option("--degree", con_degree, "degree")->required();
    construct->add_option("--depth", con_depth, "substitution steps (odd degrees)");

    // scan
    auto* scan = app.add_subcommand("scan", "substitution scan over odd degrees");
    int scan_max = 0;
    int scan_depth = 1;
    scan->add_option("--max-degree", scan_max, "largest odd degree")->required();
    scan->add_option("--depth", scan_depth, "substitution steps");

    // diagram
    auto* diagram = app.add_subcommand("diagram", "print the quotient sign diagram");
    std::string dia_poly;
    int dia_degree = 0;
    diagram->add_option("--poly", dia_poly, "polynomial in text grammar")->required();
    diagram->add_option("--degree", dia_degree, "degree d")->required();

    // sequences
    auto* sequences = app.add_subcommand("sequences", "frozen and computed integer sequences");
    std::string seq_name;
    int seq_count = 0;
    sequences->add_option("--name", seq_name, "a143105|a143106|pell")
        ->required()
        ->check(CLI::IsMember({"a143105", "a143106", "pell"}));
    sequences->add_option("--count", seq_count, "number of entries (default: all known)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*enumerate) {
            sharp::EnumerateOptions opts;
            opts.degree = en_degree;
            if (en_terms > 0) opts.terms = en_terms;
            opts.backend = en_backend;
            if (!en_shard.empty()) {
                auto slash = en_shard.find('/');
                if (slash == std::string::npos) throw CLI::ValidationError("--shard expects i/k");
                opts.shard = {std::stoull(en_shard.substr(0, slash)),
                              std::stoull(en_shard.substr(slash + 1))};
            }
            opts.jobs = en_jobs;
            opts.audit_fraction = en_audit;
            opts.pivot_budget = en_pivot_budget;
            opts.subtree_depth = en_subtree_depth;
            opts.timings = en_timings;
            opts.corpus_check = !en_no_corpus;
            opts.use_cache = !en_no_cache;
            // Only the semantic flags; job/shard slicing never changes results.
            std::ostringstream cl;
            cl << "enumerate --degree " << en_degree;
            if (en_terms > 0) cl << " --terms " << en_terms;
            cl << " --backend " << en_backend;
            opts.command_line = cl.str();
            return cmd_enumerate(opts, en_format, en_out);
        }
        if (*merge) {
            std::vector<sharp::SearchReport> frags;
            for (const auto& f : merge_inputs) frags.push_back(sharp::load_report(f));
            sharp::SearchReport merged = sharp::merge_reports(std::move(frags));
            write_output(sharp::report_to_json(merged), merge_out);
            return 0;
        }
        if (*verify) {
            sharp::BivariatePoly p = sharp::parse_poly(ver_poly);
            sharp::MembershipReport rep = sharp::is_member(p, ver_degree);
            if (!rep.ok()) {
                std::cout << "not a member:";
                if (!rep.line_ok) std::cout << " not constant 1 on x+y=1;";
                if (!rep.nonneg_ok)
                    std::cout << " negative coefficient "
                              << sharp::to_string(*rep.negative_coeff) << " at "
                              << sharp::to_string(*rep.negative_witness) << ";";
                if (!rep.degree_ok) {
                    std::cout << " degree is ";
                    if (rep.actual_degree)
                        std::cout << *rep.actual_degree;
                    else
                        std::cout << "-inf";
                    std::cout << ", expected " << ver_degree << ";";
                }
                std::cout << "\n";
                return 1;
            }
            bool sharp_min = p.term_count() == sharp::sharp_term_target(ver_degree);
            sharp::CheckReport chk = sharp::structural_check(p, ver_degree);
            std::cout << "member of H(2," << ver_degree << ") with " << p.term_count()
                      << " terms" << (sharp_min ? " (minimal: sharp)" : "") << "\n";
            std::cout << "structural check: "
                      << (chk.ok(sharp_min) ? "pass" : "FAIL") << " (sinks "
                      << chk.analysis.sink_count << ", sources "
                      << chk.analysis.sources.size() << ")\n";
            return chk.ok(sharp_min) ? 0 : 1;
        }
        if (*invariant) {
            sharp::BivariatePoly f = inv_even ? sharp::invariant_even(inv_degree)
                                              : sharp::invariant_sharp(inv_degree);
            std::cout << sharp::to_text(f) << "\n";
            return 0;
        }
        if (*construct) {
            if (con_degree % 2 == 1) {
                auto recs = sharp::scan_uniqueness({con_degree}, con_depth);
                const auto& rec = recs.at(0);
                std::cout << "invariant: " << sharp::to_text(sharp::invariant_sharp(con_degree))
                          << "\n";
                if (!rec.found_noninvariant) {
                    std::cout << "no further minimal member found by substitution\n";
                } else {
                    std::cout << "substitution witness (m=" << rec.witness_params->m << ", x^"
                              << rec.witness_params->j << "y^" << rec.witness_params->k
                              << ", c=" << sharp::to_string(rec.witness_params->c)
                              << "):\n  " << sharp::to_text(*rec.witness) << "\n";
                }
            } else {
                // Even degrees: compose every ordered pair of odd-degree
                // minimal members that sums to the degree.
                std::vector<sharp::BivariatePoly> out;
                for (int d1 = 1; d1 < con_degree; d1 += 2) {
                    int d2 = con_degree - d1;
                    auto ps = sharp::corpus::parsed_classes(d1);
                    auto qs = sharp::corpus::parsed_classes(d2);
                    if (ps.empty() || qs.empty())
                        throw std::runtime_error("no frozen odd classification for degree " +
                                                 std::to_string(d1) + "+" + std::to_string(d2));
                    for (const auto& pc : ps)
                        for (const auto& qc : qs)
                            for (const auto& p : {pc, sharp::swap_vars(pc)})
                                for (const auto& q : {qc, sharp::swap_vars(qc)}) {
                                    auto f = sharp::compose_even(p, q);
                                    out.push_back(sharp::canonical_form(f));
                                }
                }
                std::sort(out.begin(), out.end(), sharp::poly_less);
                out.erase(std::unique(out.begin(), out.end()), out.end());
                for (const auto& f : out) std::cout << sharp::to_text(f) << "\n";
            }
            return 0;
        }
        if (*scan) {
            std::vector<int> degrees;
            for (int d = 1; d <= scan_max; d += 2) degrees.push_back(d);
            auto recs = sharp::scan_uniqueness(degrees, scan_depth);
            for (const auto& rec : recs) {
                std::ostringstream os;
                os << "{\"degree\": " << rec.degree << ", \"found_noninvariant\": "
                   << (rec.found_noninvariant ? "true" : "false");
                if (rec.witness) {
                    os << ", \"params\": {\"m\": " << rec.witness_params->m
                       << ", \"j\": " << rec.witness_params->j
                       << ", \"k\": " << rec.witness_params->k << ", \"c\": \""
                       << sharp::to_string(rec.witness_params->c) << "\"}";
                    os << ", \"witness\": \"" << sharp::to_text(*rec.witness) << "\"";
                }
                os << "}";
                std::cout << os.str() << "\n";
            }
            return 0;
        }
        if (*diagram) {
            sharp::BivariatePoly p = sharp::parse_poly(dia_poly);
            sharp::BivariatePoly q = sharp::quotient_q(p);
            sharp::SignDiagram diag = sharp::sign_diagram(q, dia_degree);
            std::cout << sharp::render(diag);
            auto an = sharp::analyze(diag);
            std::cout << "sinks: " << an.sink_count << ", sources: " << an.sources.size() << "\n";
            return 0;
        }
        if (*sequences) {
            std::vector<std::string> out;
            if (seq_name == "pell") {
                int count = seq_count > 0 ? seq_count : 5;
                for (const auto& v : sharp::pell_degrees(count)) out.push_back(sharp::to_string(v));
            } else {
                const auto& seq = seq_name == "a143105"
                                      ? sharp::corpus::substitution_failure_degrees()
                                      : sharp::corpus::uniqueness_holds_degrees();
                size_t count = seq_count > 0 ? std::min<size_t>(seq_count, seq.size()) : seq.size();
                for (size_t i = 0; i < count; ++i) out.push_back(std::to_string(seq[i]));
            }
            for (size_t i = 0; i < out.size(); ++i) std::cout << (i ? ", " : "") << out[i];
            std::cout << "\n";
            return 0;
        }
    } catch (const sharp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
