#include <catch2/catch_amalgamated.hpp>

#include "permlab/bounds.hpp"

using namespace permlab;

namespace {

// independent window oracle: try every (i, h) product directly
std::vector<int64_t> brute_falling_values(int64_t n, int64_t h) {
    std::vector<int64_t> out;
    for (int64_t i = h + 1; i <= n; ++i) {
        BigNat v = 1;
        for (int64_t t = i; t > i - h; --t)
            v *= t;
        if (v <= n && v >= 3)
            out.push_back(v.convert_to<int64_t>());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("largest_top examples") {
    CHECK(largest_top(20, 2) == 5);   // 5*4 = 20 fits, 6*5 = 30 does not
    CHECK(largest_top(7, 2) == 3);
    CHECK(largest_top(10, 3) == 3);   // degenerate: already 4*3*2 > 10
    CHECK(largest_top(2, 2) == 2);
    CHECK_THROWS_AS(largest_top(10, 1), std::invalid_argument);
}

TEST_CASE("falling_values examples") {
    CHECK(falling_values(20, 2) == std::vector<int64_t>{6, 12, 20});
    CHECK(falling_values(7, 2) == std::vector<int64_t>{6});
    CHECK(falling_values(10, 3).empty());
}

TEST_CASE("window size equals largest_top - h") {
    for (int64_t n = 3; n <= 2000; ++n)
        for (int64_t h = 2; h <= m_index(n) - 1; ++h) {
            auto direct = falling_values(n, h);
            CHECK(direct == brute_falling_values(n, h));
            CHECK(static_cast<int64_t>(direct.size()) == largest_top(n, h) - h);
        }
}

TEST_CASE("upper bound examples") {
    CHECK(upper_bound_edges(6) == 15);          // empty window sum
    CHECK(upper_bound_edges(7) == 20);          // 21 - (3-2)
    CHECK(upper_bound_edges(20) == 187);        // 190 - (5-2)
    CHECK(upper_bound_edges(2) == 1);
}

TEST_CASE("upper bound never exceeds the complete count") {
    for (int64_t n = 2; n <= 400; ++n) {
        int64_t up = upper_bound_edges(n);
        CHECK(up <= n * (n - 1) / 2);
        bool empty_sum = true;
        for (int64_t h = 2; h <= m_index(n) - 1; ++h)
            if (largest_top(n, h) - h > 0)
                empty_sum = false;
        CHECK((up == n * (n - 1) / 2) == empty_sum);
        CHECK(upper_bound_edges_all_h(n) <= up);
    }
}

TEST_CASE("lower bound examples") {
    auto [formula2, union2] = lower_bound(6, {2, false});
    CHECK(union2 == 13);
    CHECK(formula2 == 11);  // 6 + 1 + 3 + 0 + 2 - 1

    auto [formula3, union3] = lower_bound(6, {3, false});
    (void)formula3;
    CHECK(union3 == 12);

    auto [formulan3, unionn3] = lower_bound(3, {2, false});
    (void)formulan3;
    CHECK(unionn3 == 3);
    CHECK(unionn3 == distinct_value_count(3));
}

TEST_CASE("sandwich reports") {
    auto r6 = sandwich_report(6, {2, false});
    REQUIRE(r6.exact.has_value());
    CHECK(r6.lower_union == 13);
    CHECK(*r6.exact == 13);
    CHECK(r6.upper == 15);
    CHECK(r6.lower_equals_exact);

    auto r7 = sandwich_report(7, {2, false});
    CHECK(*r7.exact == 19);
    CHECK(r7.upper == 20);
    CHECK(r7.lower_union == 17);
    CHECK_FALSE(r7.lower_equals_exact);

    auto r5 = sandwich_report(5, {2, false});
    CHECK(*r5.exact == 10);
    CHECK(r5.upper == 10);

    CHECK_THROWS_AS(sandwich_report(301, {2, false}, true, 300), std::invalid_argument);
    auto skipped = sandwich_report(301, {2, false}, false, 300);
    CHECK_FALSE(skipped.exact.has_value());
}

TEST_CASE("sandwich holds with the oracle over a small range") {
    auto counts = distinct_counts_upto(80);
    for (int64_t s_min : {2, 3})
        for (int64_t n = 3; n <= 80; ++n) {
            auto r = sandwich_report(n, {s_min, false}, true, 80);
            REQUIRE(r.exact.has_value());
            CHECK(r.lower_union <= *r.exact);
            CHECK(*r.exact <= r.upper);
            CHECK(*r.exact == counts[n]);
        }
}

TEST_CASE("sweep reports share the oracle and stay consistent") {
    auto rows = sweep_reports(3, 60, {2, false}, 300);
    REQUIRE(rows.size() == 58);
    for (const auto& r : rows) {
        auto single = sandwich_report(r.n, {2, false}, true, 300);
        CHECK(r.lower_union == single.lower_union);
        CHECK(r.lower_formula == single.lower_formula);
        CHECK(r.upper == single.upper);
        REQUIRE(r.exact.has_value());
        CHECK(*r.exact == *single.exact);
    }
    // beyond-cap rows carry no exact value
    auto capped = sweep_reports(3, 20, {2, false}, 10);
    for (const auto& r : capped)
        CHECK(r.exact.has_value() == (r.n <= 10));
    CHECK_THROWS_AS(sweep_reports(10, 3, {2, false}, 300), std::invalid_argument);
}

TEST_CASE("csv row shape") {
    CHECK(bound_csv_header() == "n,lower_formula,lower_union,delta,upper,exact,s1,s2,s3,s45,s6,config_id");
    auto r = sandwich_report(6, {2, false});
    CHECK(bound_csv_row(r) == "6,11,13,1,15,13,8,1,0,3,2,smin2");
    // the closed form fixes its own s range, so only the union moves with s_min
    auto r3 = sandwich_report(6, {3, true}, false);
    CHECK(bound_csv_row(r3) == "6,11,12,1,15,,8,0,0,3,2,smin3-strict");
}
