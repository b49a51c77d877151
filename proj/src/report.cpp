#include "sharp/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sharp/textio.hpp"

namespace sharp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

ordered_json poly_to_json(const BivariatePoly& p) {
    ordered_json terms = ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        ordered_json t;
        t["j"] = m.j;
        t["k"] = m.k;
        t["num"] = to_string(c.get_num());
        t["den"] = to_string(c.get_den());
        terms.push_back(std::move(t));
    }
    ordered_json o;
    o["terms"] = std::move(terms);
    o["symmetric"] = is_swap_symmetric(p);
    o["text"] = to_text(p);
    return o;
}

BivariatePoly poly_from_json(const ordered_json& o) {
    BivariatePoly p;
    for (const auto& t : o.at("terms")) {
        Integer num(t.at("num").get<std::string>());
        Integer den(t.at("den").get<std::string>());
        p.add_term({t.at("j").get<int>(), t.at("k").get<int>()}, make_rational(num, den));
    }
    return p;
}

}  // namespace

std::string constraint_fingerprint(int degree, int n_terms, const ConstraintSet& cs,
                                   const SearchConfig& cfg) {
    std::ostringstream os;
    os << "v1;d=" << degree << ";N=" << n_terms << ";" << cs.describe() << ";primes=";
    for (auto p : cfg.prefilter_primes) os << p << ",";
    os << ";audit=" << cfg.audit_fraction;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(os.str())));
    return buf;
}

std::string report_to_json(const SearchReport& rep) {
    ordered_json o;
    o["schema_version"] = rep.schema_version;
    o["degree"] = rep.degree;
    o["n_terms"] = rep.n_terms;
    o["backend"] = rep.backend;
    o["fingerprint"] = rep.fingerprint;
    ordered_json polys = ordered_json::array();
    for (const auto& p : rep.polynomials) polys.push_back(poly_to_json(p));
    o["polynomials"] = std::move(polys);
    o["raw_count"] = rep.raw_count;
    ordered_json fams = ordered_json::array();
    for (const auto& f : rep.families) {
        ordered_json fo;
        ordered_json supp = ordered_json::array();
        for (const auto& m : f.support.monomials) supp.push_back({{"j", m.j}, {"k", m.k}});
        fo["support"] = std::move(supp);
        fo["nullspace_dim"] = f.nullspace_dim;
        fo["members"] = ordered_json::array({poly_to_json(f.member_a), poly_to_json(f.member_b)});
        fams.push_back(std::move(fo));
    }
    o["families"] = std::move(fams);
    ordered_json st;
    st["candidates_seen"] = rep.stats.candidates_seen;
    st["supports_tested"] = rep.stats.supports_tested;
    st["rejected_shortcut"] = rep.stats.rejected_shortcut;
    st["rejected_prefilter"] = rep.stats.rejected_prefilter;
    st["rejected_dim0"] = rep.stats.rejected_dim0;
    st["rejected_dim_high"] = rep.stats.rejected_dim_high;
    st["rejected_negativity"] = rep.stats.rejected_negativity;
    st["rejected_degree"] = rep.stats.rejected_degree;
    st["rejected_shrink"] = rep.stats.rejected_shrink;
    st["accepted"] = rep.stats.accepted;
    st["audited"] = rep.stats.audited;
    st["audit_failures"] = rep.stats.audit_failures;
    o["stats"] = std::move(st);
    ordered_json man;
    man["command_line"] = rep.manifest.command_line;
    man["config"] = rep.manifest.config;
    man["artifact_version"] = rep.manifest.artifact_version;
    man["environment"] = rep.manifest.environment;
    man["wall_ms"] = rep.manifest.wall_ms;
    ordered_json shards = ordered_json::array();
    for (const auto& s : rep.manifest.shards) {
        shards.push_back({{"index", s.index},
                          {"count", s.count},
                          {"supports_tested", s.supports_tested},
                          {"wall_ms", s.wall_ms}});
    }
    man["shards"] = std::move(shards);
    o["manifest"] = std::move(man);
    return o.dump(2) + "\n";
}

SearchReport report_from_json(const std::string& text) {
    ordered_json o;
    try {
        o = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ReportError(std::string("invalid report JSON: ") + e.what());
    }
    SearchReport rep;
    try {
        rep.schema_version = o.at("schema_version").get<int>();
        if (rep.schema_version != 1) throw ReportError("unsupported schema version");
        rep.degree = o.at("degree").get<int>();
        rep.n_terms = o.at("n_terms").get<int>();
        rep.backend = o.at("backend").get<std::string>();
        rep.fingerprint = o.at("fingerprint").get<std::string>();
        for (const auto& pj : o.at("polynomials")) rep.polynomials.push_back(poly_from_json(pj));
        rep.raw_count = o.at("raw_count").get<std::uint64_t>();
        for (const auto& fj : o.at("families")) {
            FamilyWitness f;
            std::vector<Monomial> ms;
            for (const auto& mj : fj.at("support"))
                ms.push_back({mj.at("j").get<int>(), mj.at("k").get<int>()});
            f.support = Support(ms);
            f.nullspace_dim = fj.at("nullspace_dim").get<int>();
            f.member_a = poly_from_json(fj.at("members").at(0));
            f.member_b = poly_from_json(fj.at("members").at(1));
            rep.families.push_back(std::move(f));
        }
        const auto& st = o.at("stats");
        rep.stats.candidates_seen = st.at("candidates_seen").get<std::uint64_t>();
        rep.stats.supports_tested = st.at("supports_tested").get<std::uint64_t>();
        rep.stats.rejected_shortcut = st.at("rejected_shortcut").get<std::uint64_t>();
        rep.stats.rejected_prefilter = st.at("rejected_prefilter").get<std::uint64_t>();
        rep.stats.rejected_dim0 = st.at("rejected_dim0").get<std::uint64_t>();
        rep.stats.rejected_dim_high = st.at("rejected_dim_high").get<std::uint64_t>();
        rep.stats.rejected_negativity = st.at("rejected_negativity").get<std::uint64_t>();
        rep.stats.rejected_degree = st.at("rejected_degree").get<std::uint64_t>();
        rep.stats.rejected_shrink = st.at("rejected_shrink").get<std::uint64_t>();
        rep.stats.accepted = st.at("accepted").get<std::uint64_t>();
        rep.stats.audited = st.at("audited").get<std::uint64_t>();
        rep.stats.audit_failures = st.at("audit_failures").get<std::uint64_t>();
        const auto& man = o.at("manifest");
        rep.manifest.command_line = man.at("command_line").get<std::string>();
        rep.manifest.config = man.at("config").get<std::string>();
        rep.manifest.artifact_version = man.at("artifact_version").get<std::string>();
        rep.manifest.environment = man.at("environment").get<std::string>();
        rep.manifest.wall_ms = man.at("wall_ms").get<std::uint64_t>();
        for (const auto& sj : man.at("shards")) {
            ShardInfo s;
            s.index = sj.at("index").get<std::uint64_t>();
            s.count = sj.at("count").get<std::uint64_t>();
            s.supports_tested = sj.at("supports_tested").get<std::uint64_t>();
            s.wall_ms = sj.at("wall_ms").get<std::uint64_t>();
            rep.manifest.shards.push_back(s);
        }
    } catch (const ordered_json::exception& e) {
        throw ReportError(std::string("report schema violation: ") + e.what());
    }

    // Never trust stored data: every polynomial must still be a member.
    for (const auto& p : rep.polynomials) {
        if (!is_member(p, rep.degree).ok())
            throw ReportError("stored polynomial failed membership re-verification: " +
                              to_text(p));
    }
    for (const auto& f : rep.families) {
        if (!is_member(f.member_a, rep.degree).ok() || !is_member(f.member_b, rep.degree).ok())
            throw ReportError("stored family member failed membership re-verification");
    }
    if (!std::is_sorted(rep.polynomials.begin(), rep.polynomials.end(), poly_less))
        throw ReportError("stored polynomials are not canonically sorted");
    if (rep.raw_count < rep.polynomials.size())
        throw ReportError("raw count below canonical count");
    return rep;
}

void save_report(const SearchReport& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ReportError("cannot write report: " + path);
    out << report_to_json(rep);
}

SearchReport load_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ReportError("cannot read report: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return report_from_json(ss.str());
}

SearchReport merge_reports(std::vector<SearchReport> fragments) {
    if (fragments.empty()) throw ReportError("nothing to merge");
    SearchReport out = fragments[0];
    for (size_t i = 1; i < fragments.size(); ++i) {
        const auto& f = fragments[i];
        if (f.degree != out.degree || f.n_terms != out.n_terms || f.backend != out.backend ||
            f.fingerprint != out.fingerprint)
            throw ReportError("fragments disagree on search identity");
        out.raw_count += f.raw_count;
        for (const auto& p : f.polynomials) out.polynomials.push_back(p);
        for (const auto& fam : f.families) out.families.push_back(fam);
        out.stats.merge(f.stats);
        out.manifest.wall_ms = 0;
    }
    std::sort(out.polynomials.begin(), out.polynomials.end(), poly_less);
    out.polynomials.erase(std::unique(out.polynomials.begin(), out.polynomials.end()),
                          out.polynomials.end());
    std::sort(out.families.begin(), out.families.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.support.monomials.begin(), a.support.monomials.end(),
                                            b.support.monomials.begin(), b.support.monomials.end(),
                                            MonoLess{});
    });
    ShardInfo merged;
    merged.index = 0;
    merged.count = 1;
    merged.supports_tested = out.stats.supports_tested;
    merged.wall_ms = 0;
    out.manifest.shards = {merged};
    return out;
}

std::string report_to_csv(const SearchReport& rep) {
    std::ostringstream os;
    os << "degree,n_terms,backend,canonical_count,raw_count,family_count\n";
    os << rep.degree << ',' << rep.n_terms << ',' << rep.backend << ','
       << rep.polynomials.size() << ',' << rep.raw_count << ',' << rep.families.size() << '\n';
    return os.str();
}

std::string report_to_text(const SearchReport& rep) {
    std::ostringstream os;
    os << "degree " << rep.degree << ", " << rep.n_terms << " terms, backend " << rep.backend
       << "\n";
    os << "canonical classes: " << rep.polynomials.size() << " (raw count " << rep.raw_count
       << ")\n";
    for (const auto& p : rep.polynomials)
        os << "  " << to_text(p) << (is_swap_symmetric(p) ? "   [symmetric]" : "") << "\n";
    if (!rep.families.empty()) {
        os << "families: " << rep.families.size() << "\n";
        for (const auto& f : rep.families) {
            os << "  support {";
            for (size_t i = 0; i < f.support.monomials.size(); ++i)
                os << (i ? ", " : "") << to_string(f.support.monomials[i]);
            os << "} kernel dim " << f.nullspace_dim << "\n";
            os << "    e.g. " << to_text(f.member_a) << "\n";
            os << "    and  " << to_text(f.member_b) << "\n";
        }
    }
    os << "supports tested: " << rep.stats.supports_tested << "\n";
    return os.str();
}

}  // namespace sharp
