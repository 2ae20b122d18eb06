#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "rayclass/cycray.hpp"
#include "rayclass/refdata.hpp"
#include "rayclass/render.hpp"

using namespace rayclass;

namespace {

std::vector<Int> ints(std::vector<long> v) { return std::vector<Int>(v.begin(), v.end()); }

} // namespace

TEST_CASE("crt merge")
{
    /* Z/3 x (Z/23)^10 -> Z/(3*23) x (Z/23)^9 */
    std::vector<Int> m = crt_merge(ab_group(ints({ 3 })), ab_group(std::vector<Int>(10, Int(23))));
    REQUIRE(m.size() == 10);
    for (int i = 0; i < 9; ++i)
        CHECK(m[i] == 23);
    CHECK(m[9] == 69);

    CHECK(crt_merge(ab_group(), ab_group()).empty());
    CHECK(crt_merge(ab_group(ints({ 2, 2 })), ab_group()) == ints({ 2, 2 }));
}

TEST_CASE("display and parse are inverse on Table 1 rows")
{
    for (const table1_entry& row : table1_reference()) {
        if (row.irregular)
            continue;
        long pm1 = static_cast<long>(row.p.get_ui()) - 1;
        for (long k : { pm1, 2 * pm1 }) {
            ray_class_structure s = ray_structure(row.p, k, row.cl);
            std::string text = display_merged(s.class_part, s.p_part, row.p);
            auto [cls, pp] = parse_merged(text, row.p);
            CHECK(cls == s.class_part);
            CHECK(pp == s.p_part);
        }
    }
    CHECK(display_merged(ab_group(ints({ 3 })), ab_group(std::vector<Int>(10, Int(23))), 23) ==
          "Z/(3·23) × (Z/23)^9");
    CHECK(display_merged(ab_group(), ab_group(), 5) == "1");
    auto [c0, p0] = parse_merged("1", 5);
    CHECK(c0.trivial());
    CHECK(p0.trivial());
}

TEST_CASE("display/parse across random structures")
{
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        Int p = std::vector<long>{ 3, 5, 23 }[trial % 3];
        std::vector<Int> cls;
        Int f = 2 + static_cast<long>(rng() % 5);
        if (f % p == 0)
            ++f;
        for (int i = 0; i < static_cast<int>(rng() % 3); ++i)
            cls.push_back(f);
        std::vector<Int> pp;
        int lo = static_cast<int>(rng() % 3), hi = static_cast<int>(rng() % 3);
        for (int i = 0; i < lo; ++i)
            pp.push_back(p);
        for (int i = 0; i < hi; ++i)
            pp.push_back(p * p);
        ab_group a(cls), b(pp);
        auto [ra, rb] = parse_merged(display_merged(a, b, p), p);
        CHECK(ra == a);
        CHECK(rb == b);
    }
}

TEST_CASE("result record json round trip")
{
    result_record r;
    r.kind = "quad";
    r.d = Int(17);
    r.p = 2;
    r.k = 3;
    r.case_ = "split";
    r.ratio = Int(4);
    r.bound = false;
    r.class_part = ints({});
    r.p_part = ints({ 2, 2 });
    r.provenance = "both";
    r.agreement = true;

    nlohmann::json j = record_to_json(r);
    CHECK(record_from_json(j) == r);
    /* schema spot checks */
    CHECK(j["query"]["kind"] == "quad");
    CHECK(j["query"]["d"] == "17");
    CHECK(j["result"]["ratio"] == "4");
    CHECK(j["result"]["p_part"].size() == 2);
    CHECK(j["agreement"] == true);

    /* parse(emit(.)) on a cyc record with nulls */
    result_record c;
    c.kind = "cyc";
    c.p = 23;
    c.k = 22;
    c.exponent = 10;
    c.class_part = ints({ 3 });
    c.p_part = std::vector<Int>(10, Int(23));
    c.provenance = "formula";
    CHECK(record_from_json(record_to_json(c)) == c);

    std::string csv = record_to_csv(c);
    CHECK(csv == "cyc,,23,22,,,0,10,3,23;23;23;23;23;23;23;23;23;23,formula,");
    CHECK(csv_header().rfind("kind,", 0) == 0);
}

TEST_CASE("reference data parser")
{
    const auto& rows = table1_reference();
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].p == 23);
    CHECK(rows[0].cl.invariant_factors() == ints({ 3 }));
    CHECK(rows[0].source == "table1");
    CHECK(rows[3].p == 37);
    CHECK(rows[3].irregular);
    CHECK(rows[1].cl.invariant_factors() == ints({ 2, 2, 2 })); /* p=29 */

    std::istringstream bad("p=5 cl=[oops]");
    CHECK_THROWS(parse_reference(bad));
}
