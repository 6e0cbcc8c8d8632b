// evendesign: analyze, construct and search even resolution IV designs.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 resource budget exceeded.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "evendesign/bounds.hpp"
#include "evendesign/construct.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/identities.hpp"
#include "evendesign/io.hpp"
#include "evendesign/search.hpp"
#include "evendesign/verify.hpp"

using namespace evendesign;

namespace {

enum class Format { human, json, csv };

// 128-run minima are not recomputed; they come from the published 128-run catalog.
constexpr const char* kRuns128Source = "reference (Block and Mee 2005)";

struct OutputFlags {
    bool json = false;
    bool csv = false;

    Format format() const { return json ? Format::json : csv ? Format::csv : Format::human; }
};

void add_output_flags(CLI::App* cmd, OutputFlags& out)
{
    auto* j = cmd->add_flag("--json", out.json, "Machine-readable JSON output");
    auto* c = cmd->add_flag("--csv", out.csv, "CSV output");
    j->excludes(c);
}

std::string wlp_text(const WordlengthPattern& w)
{
    std::ostringstream os;
    bool any = false;
    for (int i = 1; i <= w.n(); ++i)
        if (w.at(i) != 0) {
            os << (any ? " " : "") << 'A' << i << '=' << to_string(w.at(i));
            any = true;
        }
    return any ? os.str() : "(no defining words)";
}

std::string points_text(const DesignSpec& d)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < d.points().size(); ++i)
        os << (i ? " " : "") << d.points()[i];
    return os.str();
}

void print_json(const Json& j)
{
    std::cout << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& path, Format fmt)
{
    const DesignSpec d = load_design(path);
    const DesignAnalysis a = analyze_design(d);
    const std::string res = a.resolution ? std::to_string(*a.resolution) : "unbounded";
    switch (fmt) {
    case Format::json:
        print_json(analysis_json(d, a));
        break;
    case Format::csv:
        std::cout << "n,m,k,rank,even,resolution";
        for (int i = 1; i <= a.n; ++i)
            std::cout << ",A" << i;
        std::cout << '\n' << a.n << ',' << a.m << ',' << a.k << ',' << a.rank << ',' << (a.even ? "yes" : "no") << ','
                  << res;
        for (int i = 1; i <= a.n; ++i)
            std::cout << ',' << to_string(a.wlp.at(i));
        std::cout << '\n';
        break;
    case Format::human:
        if (!d.name().empty())
            std::cout << "design " << d.name() << '\n';
        std::cout << "n=" << a.n << " m=" << a.m << " k=" << a.k << " rank=" << a.rank << '\n';
        std::cout << "even: " << (a.even ? "yes" : "no") << '\n';
        std::cout << "resolution: " << res << '\n';
        std::cout << "wlp: " << wlp_text(a.wlp) << '\n';
        break;
    }
    return 0;
}

int cmd_complement(const std::string& path, const std::string& out_path)
{
    const DesignSpec d = load_design(path);
    const EvenPartition part = complement_in_maximal_even(d);
    DesignSpec c = part.complement();
    c.set_name(d.name().empty() ? "complement" : d.name() + "-complement");
    if (out_path.empty())
        std::cout << render_design(c);
    else
        save_design(out_path, c);
    return 0;
}

int cmd_construct(const std::string& family, int k, int n_tilde, bool full, const std::string& out_path)
{
    const Family f = parse_family(family);
    DesignSpec c;
    if (f == Family::sidon) {
        c = sidon_complement(k, n_tilde);
    } else {
        const ComplementFamily expected = classify_complement(k, n_tilde);
        if (expected.family != f)
            throw DomainError("n_tilde=" + std::to_string(n_tilde) + " belongs to the " + to_string(expected.family) +
                              " family for k=" + std::to_string(k));
        c = complement_construction(k, n_tilde);
    }
    DesignSpec d = full ? design_from_complement(k, c) : c;
    if (full)
        d.set_name(c.name() + "-design");
    if (out_path.empty())
        std::cout << render_design(d);
    else
        save_design(out_path, d);
    return 0;
}

int cmd_bounds(int n, int k, Format fmt)
{
    const BoundReport b = a4_bound(n, k);
    switch (fmt) {
    case Format::json:
        print_json(bound_json(b));
        break;
    case Format::csv:
        std::cout << "n,k,bound,source,lb_direct,lb_complement,offset\n";
        std::cout << n << ',' << k << ',' << to_string(b.bound) << ',' << to_string(b.source) << ','
                  << to_string(b.lb_direct) << ',' << to_string(b.lb_complement) << ',' << to_string(b.offset) << '\n';
        break;
    case Format::human:
        std::cout << "n=" << n << " k=" << k << '\n';
        std::cout << "A4 >= " << to_string(b.bound) << " (" << to_string(b.source) << (b.exact ? ", attained" : "")
                  << ")\n";
        std::cout << "LB(n,k)       = " << to_string(b.lb_direct) << " ~ " << to_decimal(b.lb_direct, 6) << '\n';
        std::cout << "LB(N/2-n,k)   = " << to_string(b.lb_complement) << " ~ " << to_decimal(b.lb_complement, 6)
                  << '\n';
        std::cout << "A4 offset     = " << to_string(b.offset) << '\n';
        break;
    }
    return 0;
}

void print_search(const SearchReport& r, Format fmt)
{
    const int n = (1 << (r.k - 1)) - r.n_tilde;
    switch (fmt) {
    case Format::json:
        print_json(search_json(r));
        break;
    case Format::csv:
        std::cout << "k,n,n_tilde,min_a4_tilde,min_a4,exhaustive,nodes\n";
        std::cout << r.k << ',' << n << ',' << r.n_tilde << ',' << r.min_a4_tilde << ',' << to_string(r.full_wlp.at(4))
                  << ',' << (r.exhaustive ? "yes" : "no") << ',' << r.nodes_explored << '\n';
        break;
    case Format::human:
        std::cout << "k=" << r.k << " n=" << n << " n_tilde=" << r.n_tilde << " objective="
                  << (r.objective == Objective::a4 ? "a4" : "aberration") << " symmetry=" << to_string(r.symmetry)
                  << '\n';
        std::cout << "min A4 of complement: " << r.min_a4_tilde << '\n';
        std::cout << "min A4 of design:     " << to_string(r.full_wlp.at(4)) << '\n';
        std::cout << "exhaustive: " << (r.exhaustive ? "yes" : "no (budget exhausted)") << ", nodes " << r.nodes_explored
                  << '\n';
        std::cout << "complement: " << points_text(r.witness) << '\n';
        std::cout << "complement wlp: " << wlp_text(r.tilde_wlp) << '\n';
        std::cout << "design wlp: " << wlp_text(r.full_wlp) << '\n';
        break;
    }
}

int cmd_tables(int which, const SearchOptions& options, Format fmt)
{
    if (which != 1 && which != 2)
        throw ConfigError("tables: choose 1 (64 runs) or 2 (128 runs)");
    const int k = which == 1 ? 6 : 7;
    const auto& ref = which == 1 ? runs64_reference() : runs128_reference();
    Json rows = Json::array();
    if (fmt == Format::csv)
        std::cout << (which == 1 ? "n,bound,min_a4,exhaustive\n" : "n,bound,reference_min_a4\n");
    else if (fmt == Format::human)
        std::cout << std::setw(4) << "n" << std::setw(8) << "bound" << std::setw(8) << "min A4"
                  << (which == 1 ? "" : std::string("  ") + kRuns128Source) << '\n';
    for (const auto& row : ref) {
        const BoundReport b = a4_bound(row.n, k);
        Json j;
        j["n"] = row.n;
        j["bound"] = big_json(b.bound);
        std::string min_text;
        bool exhaustive = true;
        if (which == 1) {
            const SearchReport s = min_a4(k, (1 << (k - 1)) - row.n, options);
            exhaustive = s.exhaustive;
            j["min_a4"] = big_json(s.full_wlp.at(4));
            j["exhaustive"] = s.exhaustive;
            min_text = to_string(s.full_wlp.at(4));
        } else {
            j["min_a4"] = row.min_a4;
            j["min_source"] = kRuns128Source;
            min_text = std::to_string(row.min_a4);
        }
        rows.push_back(j);
        if (fmt == Format::csv) {
            std::cout << row.n << ',' << to_string(b.bound) << ',' << min_text;
            if (which == 1)
                std::cout << ',' << (exhaustive ? "yes" : "no");
            std::cout << '\n';
        } else if (fmt == Format::human) {
            std::cout << std::setw(4) << row.n << std::setw(8) << to_string(b.bound) << std::setw(8) << min_text
                      << (exhaustive ? "" : "  (not exhaustive)") << '\n';
        }
    }
    if (fmt == Format::json) {
        Json j;
        j["format_version"] = kFormatVersion;
        j["table"] = which;
        j["k"] = k;
        j["rows"] = rows;
        print_json(j);
    }
    return 0;
}

int cmd_verify(const std::string& suite, const VerifyOptions& options, Format fmt)
{
    const VerifyReport r = run_suite(suite, options);
    if (fmt == Format::json) {
        print_json(verify_json(r));
    } else {
        std::cout << "suite " << r.suite << ": " << r.cases << " cases, " << r.failures.size() << " failures\n";
        for (const auto& f : r.failures)
            std::cout << "FAIL " << f << '\n';
        std::cout << (r.passed() ? "PASS" : "FAIL") << '\n';
    }
    return r.passed() ? 0 : 1;
}

int cmd_catalog_add(const std::string& catalog, const std::string& path, const std::string& name,
                    const std::string& provenance)
{
    if (catalog.empty())
        throw ConfigError("no catalog path: pass --catalog or set EVENDESIGN_CATALOG");
    CatalogEntry e;
    e.design = load_design(path);
    e.name = name.empty() ? e.design.name() : name;
    if (e.name.empty())
        throw ConfigError("catalog entries need a name");
    e.design.set_name(e.name);
    e.wlp = wordlength_pattern(e.design);
    e.provenance = provenance;
    append_catalog(catalog, e);
    std::cout << "added " << e.name << " (" << catalog_checksum(e.design, e.wlp) << ")\n";
    return 0;
}

int cmd_catalog_list(const std::string& catalog, Format fmt)
{
    if (catalog.empty())
        throw ConfigError("no catalog path: pass --catalog or set EVENDESIGN_CATALOG");
    const auto entries = read_catalog(catalog, true);
    if (fmt == Format::json) {
        Json arr = Json::array();
        for (const auto& e : entries) {
            Json j;
            j["name"] = e.name;
            j["k"] = e.design.k();
            j["n"] = e.design.n();
            j["wlp"] = wlp_json(e.wlp, true);
            j["provenance"] = e.provenance;
            arr.push_back(j);
        }
        Json j;
        j["format_version"] = kFormatVersion;
        j["entries"] = arr;
        print_json(j);
        return 0;
    }
    if (fmt == Format::csv)
        std::cout << "name,k,n,provenance\n";
    for (const auto& e : entries) {
        if (fmt == Format::csv)
            std::cout << e.name << ',' << e.design.k() << ',' << e.design.n() << ',' << e.provenance << '\n';
        else
            std::cout << e.name << "  k=" << e.design.k() << " n=" << e.design.n() << "  " << wlp_text(e.wlp)
                      << (e.provenance.empty() ? "" : "  [" + e.provenance + "]") << '\n';
    }
    return 0;
}

int cmd_catalog_get(const std::string& catalog, const std::string& name)
{
    if (catalog.empty())
        throw ConfigError("no catalog path: pass --catalog or set EVENDESIGN_CATALOG");
    const auto e = find_catalog_entry(catalog, name);
    if (!e)
        throw ConfigError("catalog has no entry named '" + name + "'");
    std::cout << render_design(e->design);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Even resolution IV two-level designs: complements, bounds and searches"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "evendesign 1.0.0");

    OutputFlags out;
    std::string path, out_path, family, suite, name, provenance, catalog, symmetry = "frame", checkpoint;
    int k = 0, n = 0, n_tilde = -1, which = 0, threads = 0, samples = 200;
    std::uint64_t budget = 0, seed = 20240601;
    bool full = false, ma = false;

    auto* analyze = app.add_subcommand("analyze", "Report n, m, k, rank, evenness, resolution and wordlength pattern");
    analyze->add_option("file", path, "Design file")->required();
    add_output_flags(analyze, out);

    auto* complement = app.add_subcommand("complement", "Complement of an even design in the maximal even design");
    complement->add_option("file", path, "Design file")->required();
    complement->add_option("-o,--output", out_path, "Write the complement here instead of stdout");

    auto* construct = app.add_subcommand("construct", "Build a complement from a construction family");
    construct->add_option("--family", family, "independent, k+1, k+2, k+3 or sidon")->required();
    construct->add_option("-k,--k", k, "Run-size exponent")->required();
    construct->add_option("--n-tilde", n_tilde, "Number of complement factors")->required();
    construct->add_flag("--full", full, "Emit the full design instead of the complement");
    construct->add_option("-o,--output", out_path, "Write the design here instead of stdout");

    auto* bounds = app.add_subcommand("bounds", "Lower bound on A4 for n factors in 2^k runs");
    bounds->add_option("-n,--n", n, "Number of factors")->required();
    bounds->add_option("-k,--k", k, "Run-size exponent")->required();
    add_output_flags(bounds, out);

    const auto add_search_flags = [&](CLI::App* cmd) {
        cmd->add_option("--budget", budget, "Node budget (0 = unlimited)")->envname("EVENDESIGN_BUDGET");
        cmd->add_option("--threads", threads, "Worker threads (0 = all cores)")->envname("EVENDESIGN_THREADS");
        cmd->add_option("--symmetry", symmetry, "none, translation or frame")->capture_default_str();
        cmd->add_option("--checkpoint", checkpoint, "Resumable checkpoint file");
    };

    auto* search = app.add_subcommand("search", "Minimum A4 or minimum aberration complement search");
    search->add_option("-k,--k", k, "Run-size exponent")->required();
    auto* nt_opt = search->add_option("--n-tilde", n_tilde, "Complement size");
    auto* n_opt = search->add_option("-n,--n", n, "Number of design factors");
    nt_opt->excludes(n_opt);
    search->add_flag("--ma", ma, "Minimize the full wordlength pattern (requires --n)");
    add_search_flags(search);
    add_output_flags(search, out);

    auto* tables = app.add_subcommand("tables", "Reproduce the 64-run (1) or 128-run (2) table");
    tables->add_option("which", which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    add_search_flags(tables);
    add_output_flags(tables, out);

    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    verify->add_option("suite", suite, "identities, bounds or constructions")
        ->required()
        ->check(CLI::IsMember({"identities", "bounds", "constructions"}));
    verify->add_option("--samples", samples, "Random samples for the sampled checks")->capture_default_str();
    verify->add_option("--seed", seed, "Random seed")->capture_default_str();
    verify->add_flag("--json", out.json, "Machine-readable JSON output");

    auto* cat = app.add_subcommand("catalog", "Append-only design catalog");
    cat->add_option("--catalog", catalog, "Catalog file")->envname("EVENDESIGN_CATALOG");
    cat->require_subcommand(1);
    auto* cat_add = cat->add_subcommand("add", "Add a design file");
    cat_add->add_option("file", path, "Design file")->required();
    cat_add->add_option("--name", name, "Entry name (defaults to the design name)");
    cat_add->add_option("--provenance", provenance, "Construction family or search id");
    auto* cat_list = cat->add_subcommand("list", "List entries, re-verifying each");
    add_output_flags(cat_list, out);
    auto* cat_get = cat->add_subcommand("get", "Print one entry as a design file");
    cat_get->add_option("name", name, "Entry name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        SearchOptions opts;
        opts.node_budget = budget;
        opts.threads = threads;
        opts.symmetry = parse_symmetry(symmetry);
        opts.checkpoint_path = checkpoint;
        const Format fmt = out.format();

        if (*analyze)
            return cmd_analyze(path, fmt);
        if (*complement)
            return cmd_complement(path, out_path);
        if (*construct)
            return cmd_construct(family, k, n_tilde, full, out_path);
        if (*bounds)
            return cmd_bounds(n, k, fmt);
        if (*search) {
            SearchReport r;
            if (ma) {
                if (!*n_opt)
                    throw ConfigError("--ma needs --n");
                r = ma_search(k, n, opts);
            } else if (*n_opt) {
                r = min_a4(k, (1 << (k - 1)) - n, opts);
            } else if (*nt_opt) {
                r = min_a4(k, n_tilde, opts);
            } else {
                throw ConfigError("search needs --n-tilde or --n");
            }
            print_search(r, fmt);
            return r.exhaustive ? 0 : 3;
        }
        if (*tables)
            return cmd_tables(which, opts, fmt);
        if (*verify) {
            VerifyOptions vo;
            vo.random_samples = samples;
            vo.seed = seed;
            return cmd_verify(suite, vo, fmt);
        }
        if (*cat_add)
            return cmd_catalog_add(catalog, path, name, provenance);
        if (*cat_list)
            return cmd_catalog_list(catalog, fmt);
        if (*cat_get)
            return cmd_catalog_get(catalog, name);
    } catch (const ResourceError& e) {
        std::cerr << "evendesign: resource limit: " << e.what() << '\n';
        return 3;
    } catch (const InvariantViolation& e) {
        std::cerr << "evendesign: invariant violated: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "evendesign: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
