#pragma once

// Per-n bound assembly: the witness-union lower bound (with the closed-form
// expression alongside), the deletion-window upper bound, and
// the sandwich record lower_union <= D(n) <= upper.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlab/labels.hpp"
#include "permlab/parallel.hpp"
#include "permlab/witness.hpp"

namespace permlab {

// Largest i > h with P(i, h) <= n; h itself when already (h+1)! > n, which
// makes the window size i - h degenerate to zero.
inline int64_t largest_top(int64_t n, int64_t h) {
    if (n < 2 || h < 2)
        throw std::invalid_argument("largest_top: need n >= 2 and h >= 2");
    int64_t i = h;
    while (falling_factorial(i + 1, h) <= n)
        ++i;
    return i;
}

// All k <= n expressible as a length-h descending product P(i, h) with i > h.
// Every such k is at least (h+1)! >= 6, so the range filter k >= 3 is vacuous.
inline std::vector<int64_t> falling_values(int64_t n, int64_t h) {
    if (n < 3 || h < 2)
        throw std::invalid_argument("falling_values: need n >= 3 and h >= 2");
    std::vector<int64_t> out;
    for (int64_t i = h + 1;; ++i) {
        BigNat v = falling_factorial(i, h);
        if (v > n)
            break;
        out.push_back(v.convert_to<int64_t>());
    }
    return out;
}

// n(n-1)/2 minus one forced deletion per window element, h = 2 .. m_index(n)-1.
inline int64_t upper_bound_edges(int64_t n) {
    if (n < 2)
        throw std::invalid_argument("upper_bound_edges: n must be >= 2");
    int64_t total = n * (n - 1) / 2;
    const int64_t m = m_index(n);
    for (int64_t h = 2; h <= m - 1; ++h)
        total -= largest_top(n, h) - h;
    return total;
}

// Diagnostic variant subtracting every nonempty window regardless of the
// h <= m_index(n)-1 range; not part of the reported upper bound.
inline int64_t upper_bound_edges_all_h(int64_t n) {
    if (n < 2)
        throw std::invalid_argument("upper_bound_edges_all_h: n must be >= 2");
    int64_t total = n * (n - 1) / 2;
    for (int64_t h = 2;; ++h) {
        int64_t window = largest_top(n, h) - h;
        if (window == 0)
            break;  // windows vanish for all larger h as well
        total -= window;
    }
    return total;
}

struct BoundReport {
    int64_t n = 0;
    int64_t lower_formula = 0;  // closed-form expression, diagnostic only
    int64_t lower_union = 0;    // |S1 u ... u S6|, authoritative
    int64_t delta = 0;
    int64_t upper = 0;
    std::optional<int64_t> exact;  // D(n) when requested and within the cap
    int64_t s1 = 0, s2 = 0, s3 = 0, s45 = 0, s6 = 0;
    int64_t upper_all_h = 0;    // diagnostic, see upper_bound_edges_all_h
    bool lower_equals_exact = false;  // informational strictness flag
    WitnessConfig config;
};

// (closed-form value, direct-union value).
inline std::pair<int64_t, int64_t> lower_bound(int64_t n, const WitnessConfig& cfg) {
    auto d = union_and_delta(n, cfg);
    auto f = closed_form_cardinalities(n, cfg);
    int64_t formula = f.s1_formula + f.s2_formula + d.s45 + f.s3_formula + f.s6_formula - d.delta;
    return {formula, d.union_size};
}

namespace detail {

inline BoundReport assemble_report(int64_t n, const WitnessConfig& cfg,
                                   std::optional<int64_t> exact) {
    auto d = union_and_delta(n, cfg);
    auto f = closed_form_cardinalities(n, cfg);
    BoundReport r;
    r.n = n;
    r.config = cfg;
    r.lower_formula = f.s1_formula + f.s2_formula + d.s45 + f.s3_formula + f.s6_formula - d.delta;
    r.lower_union = d.union_size;
    r.delta = d.delta;
    r.upper = upper_bound_edges(n);
    r.upper_all_h = upper_bound_edges_all_h(n);
    r.s1 = d.s1;
    r.s2 = d.s2;
    r.s3 = d.s3;
    r.s45 = d.s45;
    r.s6 = d.s6;
    r.exact = exact;
    r.lower_equals_exact = exact && *exact == r.lower_union;
    return r;
}

}  // namespace detail

inline BoundReport sandwich_report(int64_t n, const WitnessConfig& cfg, bool with_exact = true,
                                   int64_t oracle_cap = 300) {
    if (n < 3)
        throw std::invalid_argument("sandwich_report: n must be >= 3");
    std::optional<int64_t> exact;
    if (with_exact) {
        if (n > oracle_cap)
            throw std::invalid_argument("sandwich_report: n=" + std::to_string(n) +
                                        " is beyond the oracle cap (" + std::to_string(oracle_cap) + ")");
        exact = distinct_value_count(n);
    }
    return detail::assemble_report(n, cfg, exact);
}

// One report per n in [from, to]. D(n) comes from a single collision table at
// min(to, oracle_cap); rows beyond the cap leave `exact` empty. The per-n
// work runs in parallel, buffered, and is emitted in ascending n.
inline std::vector<BoundReport> sweep_reports(int64_t from, int64_t to, const WitnessConfig& cfg,
                                              int64_t oracle_cap = 300) {
    if (from < 3 || from > to)
        throw std::invalid_argument("sweep_reports: need 3 <= from <= to");
    std::vector<int64_t> exact_counts;
    int64_t exact_top = std::min(to, oracle_cap);
    if (exact_top >= from)
        exact_counts = distinct_counts_upto(exact_top);
    std::vector<BoundReport> out(static_cast<size_t>(to - from + 1));
    detail::parallel_index(from, to + 1, [&](int64_t n) {
        std::optional<int64_t> exact;
        if (n <= exact_top)
            exact = exact_counts[static_cast<size_t>(n)];
        out[static_cast<size_t>(n - from)] = detail::assemble_report(n, cfg, exact);
    });
    return out;
}

inline std::string bound_csv_header() {
    return "n,lower_formula,lower_union,delta,upper,exact,s1,s2,s3,s45,s6,config_id";
}

inline std::string bound_csv_row(const BoundReport& r) {
    std::string out;
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.lower_formula);
    out += ',';
    out += std::to_string(r.lower_union);
    out += ',';
    out += std::to_string(r.delta);
    out += ',';
    out += std::to_string(r.upper);
    out += ',';
    if (r.exact)
        out += std::to_string(*r.exact);
    out += ',';
    out += std::to_string(r.s1);
    out += ',';
    out += std::to_string(r.s2);
    out += ',';
    out += std::to_string(r.s3);
    out += ',';
    out += std::to_string(r.s45);
    out += ',';
    out += std::to_string(r.s6);
    out += ',';
    out += r.config.id();
    return out;
}

}  // namespace permlab
