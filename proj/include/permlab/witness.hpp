#pragma once

// The six witness families S1..S6 of edge values, each element carrying the
// parameters that generated it, plus the union/repetition correction delta
// and the closed-form cardinality expressions used as diagnostics.
//
// Direct enumeration is authoritative; the closed forms are evaluated
// literally and compared against it (they have known small-n edge cases).

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "permlab/numtheory.hpp"

namespace permlab {

struct WitnessConfig {
    int64_t s_min = 2;        // hypothesis floor for the S2 family: 2 or 3
    bool strict_tops = false; // tighten the S4/S5 scans to top < n instead of top <= n

    std::string id() const {
        std::string s = s_min == 3 ? "smin3" : "smin2";
        if (strict_tops)
            s += "-strict";
        return s;
    }
};

enum class WitnessId { S1 = 1, S2, S3, S4, S5, S6 };

inline const char* to_string(WitnessId id) {
    switch (id) {
        case WitnessId::S1: return "S1";
        case WitnessId::S2: return "S2";
        case WitnessId::S3: return "S3";
        case WitnessId::S4: return "S4";
        case WitnessId::S5: return "S5";
        case WitnessId::S6: return "S6";
    }
    return "?";
}

struct WitnessParams {
    std::optional<int64_t> q, s, l, k, h, m;
};

struct WitnessElement {
    WitnessId set_id;
    BigNat value;   // falling_factorial(top, sub)
    int64_t top;
    int64_t sub;
    WitnessParams params;
};

struct WitnessSet {
    WitnessId set_id;
    int64_t n = 0;
    std::vector<WitnessElement> elements;  // generation order (deterministic)
    std::vector<BigNat> values;            // deduplicated, ascending

    int64_t size() const { return static_cast<int64_t>(values.size()); }
    bool contains(const BigNat& v) const {
        return std::binary_search(values.begin(), values.end(), v);
    }
};

namespace detail {

inline void finalize_values(WitnessSet& ws) {
    ws.values.reserve(ws.elements.size());
    for (const auto& e : ws.elements)
        ws.values.push_back(e.value);
    std::sort(ws.values.begin(), ws.values.end());
    ws.values.erase(std::unique(ws.values.begin(), ws.values.end()), ws.values.end());
}

inline void require_n(int64_t n, int64_t least, const char* who) {
    if (n < least)
        throw std::invalid_argument(std::string(who) + ": n must be >= " + std::to_string(least));
}

}  // namespace detail

// S1(n): P(k, i) for k = 3..n and i = k-m(k) .. k-1.
inline WitnessSet witness_s1(int64_t n) {
    detail::require_n(n, 3, "witness_s1");
    WitnessSet ws{WitnessId::S1, n, {}, {}};
    for (int64_t k = 3; k <= n; ++k) {
        int64_t m = m_index(k);
        BigNat v = factorial(k) / factorial(m);  // P(k, k-m)
        for (int64_t i = k - m; i <= k - 1; ++i) {
            WitnessParams p;
            p.k = k;
            p.m = m;
            ws.elements.push_back({WitnessId::S1, v, k, i, p});
            v *= (k - i);
        }
    }
    detail::finalize_values(ws);
    return ws;
}

// S2(n): P(q+1, s) for q prime, s >= s_min, s + sqrt(s+1) < q, q + 1 <= n.
// The top bound q + 1 <= n is the same constraint as q < n.
inline WitnessSet witness_s2(int64_t n, int64_t s_min) {
    detail::require_n(n, 3, "witness_s2");
    if (s_min != 2 && s_min != 3)
        throw std::invalid_argument("witness_s2: s_min must be 2 or 3");
    WitnessSet ws{WitnessId::S2, n, {}, {}};
    auto pt = primes_upto(static_cast<uint64_t>(n));
    for (uint64_t q : pt->primes) {
        int64_t top = static_cast<int64_t>(q) + 1;
        if (top > n)
            break;
        if (!shifted_sqrt_lt(s_min, q))
            continue;  // the bound grows with s, so no s works for this q
        BigNat v = falling_factorial(top, s_min);
        for (int64_t s = s_min; s < top && shifted_sqrt_lt(s, q); ++s) {
            WitnessParams p;
            p.q = static_cast<int64_t>(q);
            p.s = s;
            ws.elements.push_back({WitnessId::S2, v, top, s, p});
            v *= (top - s);
        }
    }
    detail::finalize_values(ws);
    return ws;
}

// S3(n): P(q+2, s) for q prime, s >= 3, 4s < q, q + 2 <= n (equivalently q < n-1).
inline WitnessSet witness_s3(int64_t n) {
    detail::require_n(n, 3, "witness_s3");
    WitnessSet ws{WitnessId::S3, n, {}, {}};
    auto pt = primes_upto(static_cast<uint64_t>(n));
    for (uint64_t q : pt->primes) {
        int64_t top = static_cast<int64_t>(q) + 2;
        if (top > n)
            break;
        if (q <= 12)
            continue;  // needs q > 4s with s >= 3
        BigNat v = falling_factorial(top, 3);
        for (int64_t s = 3; 4 * s < static_cast<int64_t>(q); ++s) {
            WitnessParams p;
            p.q = static_cast<int64_t>(q);
            p.s = s;
            ws.elements.push_back({WitnessId::S3, v, top, s, p});
            v *= (top - s);
        }
    }
    detail::finalize_values(ws);
    return ws;
}

namespace detail {

// Shared scan for the two q-adic families. `family_top(q^m, q, l, k)` gives
// the element's top; it is strictly increasing in k, and in l through both
// q^m (m = l + v_q(l!) grows with l) and q*l, which bounds every loop.
template <typename TopFn>
inline WitnessSet scan_qadic_family(WitnessId id, int64_t n, bool strict_tops, TopFn family_top) {
    require_n(n, 3, "witness_s4/s5");
    WitnessSet ws{id, n, {}, {}};
    const int64_t top_cap = strict_tops ? n - 1 : n;
    auto pt = primes_upto(static_cast<uint64_t>(n));
    for (uint64_t qu : pt->primes) {
        const int64_t q = static_cast<int64_t>(qu);
        if (q >= n)
            break;  // ql < n with l >= 1 is already impossible
        for (int64_t l = 1; q * l < n; ++l) {
            const int64_t m = l + factorial_valuation(qu, l);
            int64_t qm = 1;
            bool too_big = false;
            for (int64_t e = 0; e < m; ++e) {
                if (qm > top_cap / q) {
                    too_big = true;
                    break;
                }
                qm *= q;
            }
            if (too_big || family_top(qm, q, l, int64_t{1}) > top_cap)
                break;  // tops only grow with l
            const int64_t sub = q * l - 1;
            for (int64_t k = 1;; ++k) {
                const int64_t top = family_top(qm, q, l, k);
                if (top > top_cap)
                    break;
                WitnessParams p;
                p.q = q;
                p.l = l;
                p.k = k;
                p.m = m;
                ws.elements.push_back({id, falling_factorial(top, sub), top, sub, p});
            }
        }
    }
    finalize_values(ws);
    return ws;
}

}  // namespace detail

// S4(n): P(q^m k + ql - 1, ql - 1) for q prime, l,k >= 1, ql < n, m = l + v_q(l!).
inline WitnessSet witness_s4(int64_t n, bool strict_tops = false) {
    return detail::scan_qadic_family(
        WitnessId::S4, n, strict_tops,
        [](int64_t qm, int64_t q, int64_t l, int64_t k) { return qm * k + q * l - 1; });
}

// S5(n): P(q^m (k + l) - 1, ql - 1), same parameter ranges.
inline WitnessSet witness_s5(int64_t n, bool strict_tops = false) {
    return detail::scan_qadic_family(
        WitnessId::S5, n, strict_tops,
        [](int64_t qm, int64_t q, int64_t l, int64_t k) {
            (void)q;
            return qm * (k + l) - 1;
        });
}

// S6(n): the value 2 = P(2, 1), plus 2 q^h = P(2 q^h, 1) for every prime
// power q^h != 3 with 2 q^h <= n.
inline WitnessSet witness_s6(int64_t n) {
    detail::require_n(n, 2, "witness_s6");
    WitnessSet ws{WitnessId::S6, n, {}, {}};
    ws.elements.push_back({WitnessId::S6, BigNat(2), 2, 1, {}});
    auto pt = primes_upto(static_cast<uint64_t>(n / 2 + 1));
    for (uint64_t qu : pt->primes) {
        int64_t q = static_cast<int64_t>(qu);
        if (2 * q > n)
            break;
        int64_t power = q;
        for (int64_t h = 1; 2 * power <= n; ++h) {
            if (!(q == 3 && h == 1)) {
                WitnessParams p;
                p.q = q;
                p.h = h;
                ws.elements.push_back({WitnessId::S6, BigNat(2 * power), 2 * power, 1, p});
            }
            if (power > n / (2 * q))
                break;
            power *= q;
        }
    }
    detail::finalize_values(ws);
    return ws;
}

inline WitnessSet make_witness_set(WitnessId id, int64_t n, const WitnessConfig& cfg) {
    switch (id) {
        case WitnessId::S1: return witness_s1(n);
        case WitnessId::S2: return witness_s2(n, cfg.s_min);
        case WitnessId::S3: return witness_s3(n);
        case WitnessId::S4: return witness_s4(n, cfg.strict_tops);
        case WitnessId::S5: return witness_s5(n, cfg.strict_tops);
        case WitnessId::S6: return witness_s6(n);
    }
    throw std::invalid_argument("make_witness_set: unknown id");
}

// Value-level multiplicities over {S1, S2, S3, S4 u S5, S6}; delta counts the
// repetitions, so delta = sum of the five cardinalities - union size.
struct DeltaReport {
    int64_t n = 0;
    WitnessConfig config;
    std::map<BigNat, int64_t> multiplicity;
    int64_t delta = 0;
    int64_t union_size = 0;
    int64_t s1 = 0, s2 = 0, s3 = 0, s45 = 0, s6 = 0;  // merged cardinalities
};

inline DeltaReport union_and_delta(int64_t n, const WitnessConfig& cfg) {
    detail::require_n(n, 3, "union_and_delta");
    DeltaReport rep;
    rep.n = n;
    rep.config = cfg;

    auto add = [&rep](const std::vector<BigNat>& values) {
        for (const auto& v : values)
            ++rep.multiplicity[v];
    };
    auto s1 = witness_s1(n);
    auto s2 = witness_s2(n, cfg.s_min);
    auto s3 = witness_s3(n);
    auto s4 = witness_s4(n, cfg.strict_tops);
    auto s5 = witness_s5(n, cfg.strict_tops);
    auto s6 = witness_s6(n);

    std::vector<BigNat> s45;
    std::set_union(s4.values.begin(), s4.values.end(), s5.values.begin(), s5.values.end(),
                   std::back_inserter(s45));

    add(s1.values);
    add(s2.values);
    add(s3.values);
    add(s45);
    add(s6.values);

    rep.s1 = s1.size();
    rep.s2 = s2.size();
    rep.s3 = s3.size();
    rep.s45 = static_cast<int64_t>(s45.size());
    rep.s6 = s6.size();
    rep.union_size = static_cast<int64_t>(rep.multiplicity.size());
    for (const auto& [value, count] : rep.multiplicity) {
        (void)value;
        rep.delta += count - 1;
    }
    return rep;
}

// Literal evaluations of the closed-form per-family cardinality summands.
struct ClosedForms {
    int64_t s1_formula = 0;        // n*m - m! - 4 - sum_{k=3}^{m-1} k!, m = m_index(n)
    int64_t s2_formula = 0;        // sum_{s=2}^{floor((2n+3-sqrt(4n+18))/2)} pi(n-1) - pi(s+sqrt(s+1))
    int64_t s3_formula = 0;        // sum_{s=2}^{floor((n-1)/4)} pi(n-1) - pi(4s)
    int64_t s3_formula_proof = 0;  // variant: sum_{s=3}^{floor((n-3)/4)} pi(n-1) - pi(4s)
    int64_t s6_formula = 0;        // sum over primes q <= n/2 of the largest h with 2 q^h <= n
};

namespace detail {

// floor((2n+3 - sqrt(4n+18)) / 2), decided in integers: the largest s with
// 2s <= 2n+3 - sqrt(4n+18); 4n+18 = 2 mod 4 is never a perfect square.
inline int64_t s2_summation_limit(int64_t n) {
    int64_t s = 0;
    while (true) {
        int64_t t = 2 * n + 3 - 2 * (s + 1);
        if (t < 0 || t * t < 4 * n + 18)
            return s;
        ++s;
    }
}

}  // namespace detail

inline ClosedForms closed_form_cardinalities(int64_t n, const WitnessConfig& cfg = {}) {
    (void)cfg;  // the closed forms fix their own ranges
    detail::require_n(n, 3, "closed_form_cardinalities");
    ClosedForms f;

    const int64_t m = m_index(n);
    BigNat s1f = BigNat(n) * m - factorial(m) - 4;
    for (int64_t k = 3; k <= m - 1; ++k)
        s1f -= factorial(k);
    f.s1_formula = s1f.convert_to<int64_t>();

    const int64_t pi_n1 = prime_pi(static_cast<double>(n - 1));
    const int64_t s2_lim = detail::s2_summation_limit(n);
    for (int64_t s = 2; s <= s2_lim; ++s)
        f.s2_formula += pi_n1 - prime_pi_shifted_sqrt(s);

    for (int64_t s = 2; s <= (n - 1) / 4; ++s)
        f.s3_formula += pi_n1 - prime_pi(static_cast<double>(4 * s));
    for (int64_t s = 3; s <= (n - 3) / 4; ++s)
        f.s3_formula_proof += pi_n1 - prime_pi(static_cast<double>(4 * s));

    auto pt = primes_upto(static_cast<uint64_t>(n / 2 + 1));
    for (uint64_t q : pt->primes) {
        if (2 * static_cast<int64_t>(q) > n)
            break;
        int64_t h = 0;
        int64_t power = 1;
        while (power <= n / (2 * static_cast<int64_t>(q))) {
            power *= static_cast<int64_t>(q);
            ++h;
        }
        f.s6_formula += h;
    }
    return f;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string params_json_text(const WitnessParams& p) {
    std::string out = "{";
    bool first = true;
    auto put = [&](const char* name, const std::optional<int64_t>& v) {
        if (!v)
            return;
        if (!first)
            out += ',';
        first = false;
        out += '"';
        out += name;
        out += "\":";
        out += std::to_string(*v);
    };
    put("q", p.q);
    put("s", p.s);
    put("l", p.l);
    put("k", p.k);
    put("h", p.h);
    put("m", p.m);
    out += '}';
    return out;
}

}  // namespace detail

// CSV with columns set_id,value_decimal,top,sub,params_json.
inline std::string witness_csv(const std::vector<WitnessSet>& sets) {
    std::string out = "set_id,value_decimal,top,sub,params_json\n";
    for (const auto& ws : sets)
        for (const auto& e : ws.elements) {
            out += to_string(e.set_id);
            out += ',';
            out += e.value.str();
            out += ',';
            out += std::to_string(e.top);
            out += ',';
            out += std::to_string(e.sub);
            out += ',';
            out += detail::csv_quote(detail::params_json_text(e.params));
            out += '\n';
        }
    return out;
}

}  // namespace permlab
