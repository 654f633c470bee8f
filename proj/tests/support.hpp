#pragma once

// Shared helpers for the test suite: deterministic RNG and random ring
// elements with prescribed precision shape.

#include <random>
#include <vector>

#include "vostok/laurent.hpp"
#include "vostok/witt_coeffs.hpp"

namespace testsupport {

using vostok::CoeffRing;
using vostok::Int;
using vostok::KElem;
using vostok::LaurentSeries;
using vostok::MultiIndex;
using vostok::PadicScalar;
using vostok::PolicyPtr;

inline std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline KElem random_kelem(const CoeffRing* R, std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<Int> d(0, R->p - 1);
    for (;;) {
        std::vector<Int> c((size_t)R->s);
        for (auto& x : c) x = d(rng);
        KElem e(R, std::move(c));
        if (!nonzero || !e.is_zero()) return e;
    }
}

/// Random scalar with val in [vmin, vmax] and cap = val + A (public shape).
inline PadicScalar random_scalar(const CoeffRing* R, std::mt19937_64& rng, int vmin = -3,
                                 int vmax = 3, bool nonzero = false) {
    std::uniform_int_distribution<int> dv(vmin, vmax);
    std::uniform_int_distribution<long> dm(0, 1L << 30);
    for (;;) {
        int v = dv(rng);
        std::vector<mpz_class> m((size_t)R->s);
        for (auto& x : m) x = dm(rng);
        PadicScalar x = PadicScalar::from_poly(R, std::move(m), v, v + R->A);
        if (!nonzero || !x.is_zero()) return x;
    }
}

/// Two scalars represent the same value mod p^cap (rings must share p, s but
/// may differ in precision parameters).
inline bool scalars_agree(const PadicScalar& a, const PadicScalar& b, int cap) {
    cap = std::min({cap, a.cap(), b.cap()});
    auto ra = a.reduce_cap(cap);
    auto rb = b.reduce_cap(cap);
    if (ra.is_zero() != rb.is_zero()) return false;
    if (ra.is_zero()) return true;
    if (ra.val() != rb.val()) return false;
    int digits = std::min({ra.cap() - ra.val(), ra.ring()->Amax, rb.ring()->Amax});
    const mpz_class& md = ra.ring()->ppw(digits);
    auto ma = ra.canonical();
    auto mb = rb.canonical();
    for (size_t i = 0; i < ma.size(); ++i)
        if ((ma[i] - mb[i]) % md != 0) return false;
    return true;
}

/// Everything `lo` claims (its known region at its p-precision) must be
/// reproduced by `hi`, a recomputation with more generous truncation.
inline bool series_agree(const LaurentSeries& lo, const LaurentSeries& hi) {
    if (hi.known_below() < lo.known_below() || hi.pcap() < lo.pcap()) return false;
    std::vector<MultiIndex> idx;
    for (const auto& [a, c] : lo.terms()) idx.push_back(a);
    for (const auto& [a, c] : hi.terms()) idx.push_back(a);
    for (const auto& a : idx) {
        if (lo.policy()->weight(a) >= lo.known_below()) continue;
        if (!scalars_agree(lo.coeff_or_zero(a), hi.coeff_or_zero(a), lo.pcap())) return false;
    }
    return true;
}

/// Structural description of a random series, instantiable over any ring so
/// the same case can be evaluated at two precision settings.
struct TermSpec {
    MultiIndex idx;
    int val = 0;
    std::vector<long> mant;
};

inline LaurentSeries instantiate(const PolicyPtr& P, const std::vector<TermSpec>& ts) {
    LaurentSeries f = LaurentSeries::zero(P);
    const CoeffRing* R = P->ring.get();
    for (const auto& t : ts) {
        std::vector<mpz_class> m(t.mant.begin(), t.mant.end());
        f.accumulate(t.idx, PadicScalar::from_poly(R, std::move(m), t.val, t.val + R->A));
    }
    f.finalize();
    return f;
}

inline std::vector<TermSpec> random_terms(std::mt19937_64& rng, const CoeffRing* R, int N,
                                          int nterms, Int expo_lo, Int expo_hi, int vmin,
                                          int vmax) {
    std::uniform_int_distribution<Int> de(expo_lo, expo_hi);
    std::uniform_int_distribution<int> dv(vmin, vmax);
    std::uniform_int_distribution<long> dm(1, (1L << 24) - 1);
    std::vector<TermSpec> ts;
    for (int i = 0; i < nterms; ++i) {
        TermSpec t;
        t.idx.resize((size_t)N);
        for (auto& e : t.idx) e = de(rng);
        t.val = dv(rng);
        t.mant.resize((size_t)R->s);
        for (auto& x : t.mant) x = dm(rng);
        ts.push_back(std::move(t));
    }
    return ts;
}

}  // namespace testsupport
