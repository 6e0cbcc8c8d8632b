#pragma once

// Design files, the append-only catalog, and JSON renderings of reports.
// Every document carries a leading format_version field.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evendesign/bounds.hpp"
#include "evendesign/design.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/search.hpp"

namespace evendesign {

using Json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

Json design_json(const DesignSpec& d);
DesignSpec design_from_json(const Json& j);

/// Two-space indented JSON with a trailing newline; parse(render(d)) == d and
/// render(parse(text)) == text for any text this function produced.
std::string render_design(const DesignSpec& d);
DesignSpec parse_design(const std::string& text);

DesignSpec load_design(const std::string& path);
void save_design(const std::string& path, const DesignSpec& d);

/// Counts as JSON numbers when they fit in 64 bits, decimal strings otherwise.
Json big_json(const BigInt& v);
BigInt big_from_json(const Json& j);
Json rational_json(const Rational& v);
/// {"A1": .., "A2": .., ...}: only nonzero entries when sparse is true.
Json wlp_json(const WordlengthPattern& w, bool sparse = false);

struct DesignAnalysis {
    int k = 0;
    int n = 0;
    int rank = 0;
    int m = 0;
    bool even = false;
    std::optional<int> resolution;
    WordlengthPattern wlp;
};

DesignAnalysis analyze_design(const DesignSpec& d);
Json analysis_json(const DesignSpec& d, const DesignAnalysis& a);
Json bound_json(const BoundReport& b);
Json search_json(const SearchReport& r);

// ---------------------------------------------------------------------------
// Catalog: one JSON object per line.

struct CatalogEntry {
    std::string name;
    DesignSpec design;
    WordlengthPattern wlp;
    std::string provenance;
};

/// FNV-1a 64 over "k;points;wlp" in decimal, as 16 hex digits.
std::string catalog_checksum(const DesignSpec& d, const WordlengthPattern& wlp);

std::string catalog_line(const CatalogEntry& e);
/// Checks format version and checksum; when `reverify` is set also recomputes
/// the wordlength pattern. FormatError on any mismatch.
CatalogEntry parse_catalog_line(const std::string& line, bool reverify = true);

std::vector<CatalogEntry> read_catalog(const std::string& path, bool reverify = true);
/// Appends; FormatError when the name is already present.
void append_catalog(const std::string& path, const CatalogEntry& e);
std::optional<CatalogEntry> find_catalog_entry(const std::string& path, const std::string& name);

} // namespace evendesign
