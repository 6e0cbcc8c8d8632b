#include "evendesign/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "evendesign/errors.hpp"

namespace evendesign {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw FormatError(what);
}

void check_version(const Json& j)
{
    require(j.is_object(), "expected a JSON object");
    require(j.contains("format_version") && j["format_version"].is_number_integer(), "missing format_version");
    const auto v = j["format_version"].get<int>();
    require(v == kFormatVersion, "unsupported format_version " + std::to_string(v));
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

Json design_json(const DesignSpec& d)
{
    Json j;
    j["format_version"] = kFormatVersion;
    j["k"] = d.k();
    if (!d.name().empty())
        j["name"] = d.name();
    j["points"] = d.points();
    return j;
}

DesignSpec design_from_json(const Json& j)
{
    check_version(j);
    require(j.contains("k") && j["k"].is_number_integer(), "design needs an integer k");
    require(j.contains("points") && j["points"].is_array(), "design needs a points array");
    std::vector<PointMask> pts;
    for (const auto& p : j["points"]) {
        require(p.is_number_unsigned() || (p.is_number_integer() && p.get<std::int64_t>() >= 0),
                "points must be nonnegative integers");
        const auto v = p.get<std::uint64_t>();
        require(v <= 0xFFFFFFFFu, "point out of range");
        pts.push_back(static_cast<PointMask>(v));
    }
    std::string name;
    if (j.contains("name")) {
        require(j["name"].is_string(), "name must be a string");
        name = j["name"].get<std::string>();
    }
    try {
        return DesignSpec(j["k"].get<int>(), std::move(pts), std::move(name));
    } catch (const DomainError& e) {
        throw FormatError(std::string("invalid design: ") + e.what());
    }
}

std::string render_design(const DesignSpec& d)
{
    return design_json(d).dump(2) + "\n";
}

DesignSpec parse_design(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed design file: ") + e.what());
    }
    return design_from_json(j);
}

DesignSpec load_design(const std::string& path)
{
    return parse_design(read_file(path));
}

void save_design(const std::string& path, const DesignSpec& d)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw FormatError("cannot write " + path);
    out << render_design(d);
}

Json big_json(const BigInt& v)
{
    if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max())
        return static_cast<std::uint64_t>(v);
    if (v < 0 && v >= std::numeric_limits<std::int64_t>::min())
        return static_cast<std::int64_t>(v);
    return to_string(v);
}

BigInt big_from_json(const Json& j)
{
    if (j.is_number_unsigned())
        return j.get<std::uint64_t>();
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    require(j.is_string(), "expected an integer");
    try {
        return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
        throw FormatError("not an integer: " + j.get<std::string>());
    }
}

Json rational_json(const Rational& v)
{
    if (is_integer(v))
        return big_json(boost::multiprecision::numerator(v));
    return to_string(v);
}

Json wlp_json(const WordlengthPattern& w, bool sparse)
{
    Json j = Json::object();
    for (int i = 1; i <= w.n(); ++i)
        if (!sparse || w.at(i) != 0)
            j["A" + std::to_string(i)] = big_json(w.at(i));
    return j;
}

DesignAnalysis analyze_design(const DesignSpec& d)
{
    DesignAnalysis a;
    a.k = d.k();
    a.n = d.n();
    a.rank = d.rank();
    a.m = d.n() - a.rank;
    a.even = is_even(d);
    a.wlp = wordlength_pattern(d);
    a.resolution = a.wlp.resolution();
    return a;
}

Json analysis_json(const DesignSpec& d, const DesignAnalysis& a)
{
    Json j;
    j["format_version"] = kFormatVersion;
    if (!d.name().empty())
        j["name"] = d.name();
    j["k"] = a.k;
    j["n"] = a.n;
    j["m"] = a.m;
    j["rank"] = a.rank;
    j["even"] = a.even;
    if (a.resolution)
        j["resolution"] = *a.resolution;
    else
        j["resolution"] = "unbounded";
    j["wlp"] = wlp_json(a.wlp, true);
    return j;
}

Json bound_json(const BoundReport& b)
{
    Json j;
    j["format_version"] = kFormatVersion;
    j["n"] = b.n;
    j["k"] = b.k;
    j["bound"] = big_json(b.bound);
    j["source"] = to_string(b.source);
    j["exact"] = b.exact;
    j["in_lp_regime"] = b.in_lp_regime;
    j["lb_direct"] = rational_json(b.lb_direct);
    j["lb_complement"] = rational_json(b.lb_complement);
    j["offset"] = rational_json(b.offset);
    j["via_complement"] = big_json(b.via_complement);
    j["direct"] = big_json(b.direct);
    return j;
}

Json search_json(const SearchReport& r)
{
    Json j;
    j["format_version"] = kFormatVersion;
    j["k"] = r.k;
    j["n_tilde"] = r.n_tilde;
    j["n"] = (1 << (r.k - 1)) - r.n_tilde;
    j["objective"] = r.objective == Objective::a4 ? "a4" : "aberration";
    j["symmetry"] = to_string(r.symmetry);
    j["min_a4_tilde"] = r.min_a4_tilde;
    j["min_a4"] = big_json(r.full_wlp.at(4));
    j["exhaustive"] = r.exhaustive;
    j["nodes_explored"] = r.nodes_explored;
    j["threads"] = r.threads;
    j["branches_total"] = r.branches_total;
    j["branches_resumed"] = r.branches_resumed;
    j["witness"] = r.witness.points();
    j["tilde_wlp"] = wlp_json(r.tilde_wlp, true);
    j["full_wlp"] = wlp_json(r.full_wlp, true);
    return j;
}

// ---------------------------------------------------------------------------

std::string catalog_checksum(const DesignSpec& d, const WordlengthPattern& wlp)
{
    std::ostringstream os;
    os << d.k() << ';';
    for (std::size_t i = 0; i < d.points().size(); ++i)
        os << (i ? "," : "") << d.points()[i];
    os << ';';
    for (int i = 1; i <= wlp.n(); ++i)
        os << (i > 1 ? "," : "") << to_string(wlp.at(i));
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string catalog_line(const CatalogEntry& e)
{
    Json j;
    j["format_version"] = kFormatVersion;
    j["name"] = e.name;
    j["k"] = e.design.k();
    j["points"] = e.design.points();
    Json w = Json::array();
    for (int i = 1; i <= e.wlp.n(); ++i)
        w.push_back(big_json(e.wlp.at(i)));
    j["wlp"] = w;
    j["provenance"] = e.provenance;
    j["checksum"] = catalog_checksum(e.design, e.wlp);
    return j.dump();
}

CatalogEntry parse_catalog_line(const std::string& line, bool reverify)
{
    Json j;
    try {
        j = Json::parse(line);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed catalog line: ") + e.what());
    }
    check_version(j);
    require(j.contains("name") && j["name"].is_string(), "catalog entry needs a name");
    require(j.contains("wlp") && j["wlp"].is_array(), "catalog entry needs a wlp array");
    require(j.contains("checksum") && j["checksum"].is_string(), "catalog entry needs a checksum");
    CatalogEntry e;
    e.name = j["name"].get<std::string>();
    e.design = design_from_json(j);
    e.design.set_name(e.name);
    e.wlp = WordlengthPattern(static_cast<int>(j["wlp"].size()));
    for (std::size_t i = 0; i < j["wlp"].size(); ++i)
        e.wlp.counts[i + 1] = big_from_json(j["wlp"][i]);
    if (j.contains("provenance") && j["provenance"].is_string())
        e.provenance = j["provenance"].get<std::string>();
    require(j["checksum"].get<std::string>() == catalog_checksum(e.design, e.wlp),
            "checksum mismatch for catalog entry '" + e.name + "'");
    if (reverify)
        require(wordlength_pattern(e.design) == e.wlp, "cached wordlength pattern of '" + e.name + "' is stale");
    return e;
}

std::vector<CatalogEntry> read_catalog(const std::string& path, bool reverify)
{
    std::vector<CatalogEntry> out;
    std::ifstream in(path);
    if (!in)
        return out;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty())
            out.push_back(parse_catalog_line(line, reverify));
    return out;
}

void append_catalog(const std::string& path, const CatalogEntry& e)
{
    for (const auto& existing : read_catalog(path, false))
        if (existing.name == e.name)
            throw FormatError("catalog already has an entry named '" + e.name + "'");
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw FormatError("cannot append to " + path);
    out << catalog_line(e) << '\n';
}

std::optional<CatalogEntry> find_catalog_entry(const std::string& path, const std::string& name)
{
    for (auto& e : read_catalog(path, true))
        if (e.name == name)
            return e;
    return std::nullopt;
}

} // namespace evendesign
