#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "evendesign/construct.hpp"
#include "evendesign/errors.hpp"
#include "evendesign/io.hpp"

using namespace evendesign;

TEST_CASE("design text round trip")
{
    const DesignSpec d(6, {33, 40, 63}, "three");
    const std::string text = render_design(d);
    const DesignSpec back = parse_design(text);
    CHECK(back == d);
    CHECK(back.name() == "three");
    CHECK(render_design(back) == text);
    CHECK(text.rfind("{\n  \"format_version\": 1", 0) == 0);
}

TEST_CASE("malformed design files")
{
    CHECK_THROWS_AS(parse_design("not json"), FormatError);
    CHECK_THROWS_AS(parse_design(R"({"k": 3, "points": [1]})"), FormatError);
    CHECK_THROWS_AS(parse_design(R"({"format_version": 2, "k": 3, "points": [1]})"), FormatError);
    CHECK_THROWS_AS(parse_design(R"({"format_version": 1, "k": 3, "points": [9]})"), FormatError);
    CHECK_THROWS_AS(parse_design(R"({"format_version": 1, "k": 3, "points": ["a"]})"), FormatError);
    CHECK_THROWS_AS(load_design("/nonexistent/design.json"), FormatError);
}

TEST_CASE("big integers in JSON")
{
    const BigInt small = 12345;
    CHECK(big_json(small).is_number());
    CHECK(big_from_json(big_json(small)) == small);
    const BigInt large = pow2(80) + 7;
    CHECK(big_json(large).is_string());
    CHECK(big_from_json(big_json(large)) == large);
}

TEST_CASE("analysis")
{
    const DesignAnalysis a = analyze_design(DesignSpec(3, {4, 2, 1, 7}));
    CHECK(a.n == 4);
    CHECK(a.rank == 3);
    CHECK(a.m == 1);
    CHECK(a.even);
    CHECK(a.resolution == 4);
    const Json j = analysis_json(DesignSpec(3, {4, 2, 1, 7}), a);
    CHECK(j.begin().key() == "format_version");
}

TEST_CASE("catalog append, read, reverify")
{
    const std::string path = "io_test_catalog.jsonl";
    std::remove(path.c_str());
    CatalogEntry e;
    e.name = "k6-nt8";
    e.design = complement_construction(6, 8);
    e.wlp = wordlength_pattern(e.design);
    e.provenance = "k+2";
    append_catalog(path, e);
    CHECK_THROWS_AS(append_catalog(path, e), FormatError);

    const auto all = read_catalog(path);
    REQUIRE(all.size() == 1);
    CHECK(all[0].design == e.design);
    CHECK(all[0].wlp == e.wlp);
    CHECK(find_catalog_entry(path, "k6-nt8").has_value());
    CHECK_FALSE(find_catalog_entry(path, "missing").has_value());

    std::string line = catalog_line(e);
    const auto pos = line.find("[0,0,0,1,");
    REQUIRE(pos != std::string::npos);
    line.replace(pos, 9, "[0,0,0,2,");
    CHECK_THROWS_AS(parse_catalog_line(line), FormatError);
    std::remove(path.c_str());
}

TEST_CASE("catalog checksum is stable")
{
    const DesignSpec d(3, {4, 5, 6, 7});
    CHECK(catalog_checksum(d, wordlength_pattern(d)).size() == 16);
    CHECK(catalog_checksum(d, wordlength_pattern(d)) == catalog_checksum(d, wordlength_pattern(d)));
    CHECK(catalog_checksum(d, wordlength_pattern(d)) != catalog_checksum(DesignSpec(3, {4, 5, 6}), WordlengthPattern(3)));
}
