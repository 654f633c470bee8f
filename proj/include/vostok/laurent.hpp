#pragma once

// Truncated multivariate Laurent series over the Witt coefficient ring,
// modeling k((t_N))...((t_1)) with certified truncation: each series carries
// a weight bound known_below (exact strictly below it) and a p-precision
// pcap (coefficients exact mod p^pcap).  Indices are ordered lexicographically
// with t_1 most significant; the weight vector is chosen so that weight sign
// agrees with lex sign on every stored index (checked at insertion).

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vostok/errors.hpp"
#include "vostok/witt_coeffs.hpp"

namespace vostok {

using MultiIndex = std::vector<Int>;

inline int lex_sign(const MultiIndex& a) {
    for (Int x : a) {
        if (x > 0) return 1;
        if (x < 0) return -1;
    }
    return 0;
}

inline bool lex_less(const MultiIndex& a, const MultiIndex& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// a >= b in the lexicographic order
inline bool lex_geq(const MultiIndex& a, const MultiIndex& b) { return !lex_less(a, b); }

inline MultiIndex idx_add(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline MultiIndex idx_scale(const MultiIndex& a, Int k) {
    MultiIndex r = a;
    for (auto& x : r) x *= k;
    return r;
}

struct SeriesPolicy {
    int N = 1;
    std::vector<Int> W;           // positive weights, t_1 first
    long D = 1;                   // global truncation weight bound
    std::vector<Int> lower_bound; // runaway guard per variable (hard error)
    RingPtr ring;

    long weight(const MultiIndex& a) const {
        long w = 0;
        for (int i = 0; i < N; ++i) w += (long)W[(size_t)i] * a[(size_t)i];
        return w;
    }
};

using PolicyPtr = std::shared_ptr<const SeriesPolicy>;

inline PolicyPtr make_policy(RingPtr ring, int N, long D = -1, std::vector<Int> W = {},
                             std::vector<Int> lower_bound = {}, Int lambda = 64) {
    if (N < 1) throw domain_error("policy: N must be positive");
    auto P = std::make_shared<SeriesPolicy>();
    P->N = N;
    if (W.empty()) {
        W.resize((size_t)N);
        Int w = 1;
        for (int i = N - 1; i >= 0; --i) {
            W[(size_t)i] = w;
            w *= lambda;
        }
    }
    if ((int)W.size() != N) throw domain_error("policy: weight vector length mismatch");
    for (Int w : W)
        if (w < 1) throw domain_error("policy: weights must be positive");
    P->W = std::move(W);
    long maxW = *std::max_element(P->W.begin(), P->W.end());
    P->D = (D > 0) ? D : 200 * maxW;
    if (P->D < 1) throw domain_error("policy: D must be positive");
    if (lower_bound.empty()) lower_bound.assign((size_t)N, -(Int(1) << 24));
    if ((int)lower_bound.size() != N) throw domain_error("policy: lower_bound length mismatch");
    P->lower_bound = std::move(lower_bound);
    P->ring = std::move(ring);
    return P;
}

inline bool same_policy(const PolicyPtr& a, const PolicyPtr& b) {
    if (a == b) return true;
    return a->N == b->N && a->W == b->W && a->D == b->D && a->lower_bound == b->lower_bound &&
           a->ring == b->ring;
}

class LaurentSeries {
  public:
    LaurentSeries() = default;

    static LaurentSeries zero(PolicyPtr P, long kb = WEIGHT_INF, int pcap = CAP_INF) {
        LaurentSeries f;
        f.P_ = std::move(P);
        // Negative kb is legitimate (deep Laurent supports shrink the certified
        // region below every stored weight), so clamp from above only.
        f.kb_ = std::min(kb, f.P_->D);
        f.pcap_ = pcap;
        return f;
    }

    static LaurentSeries constant(PolicyPtr P, const PadicScalar& c) {
        LaurentSeries f = zero(P);
        f.set(MultiIndex((size_t)f.P_->N, 0), c);
        return f;
    }

    static LaurentSeries one(PolicyPtr P) {
        const CoeffRing* R = P->ring.get();
        return constant(std::move(P), PadicScalar::from_int(R, 1));
    }

    static LaurentSeries monomial(PolicyPtr P, const PadicScalar& c, const MultiIndex& a) {
        LaurentSeries f = zero(P);
        f.set(a, c);
        return f;
    }

    const PolicyPtr& policy() const { return P_; }
    const CoeffRing* ring() const { return P_->ring.get(); }
    long known_below() const { return kb_; }
    int pcap() const { return pcap_; }
    bool is_zero() const { return c_.empty(); }
    size_t term_count() const { return c_.size(); }
    const std::map<MultiIndex, PadicScalar>& terms() const { return c_; }

    /// Certified coefficient read; errors if the index lies outside the known
    /// region instead of silently returning zero.
    PadicScalar coefficient_at(const MultiIndex& a) const {
        if (P_->weight(a) >= kb_)
            throw precision_error("coefficient at weight " + std::to_string(P_->weight(a)) +
                                      " is outside the known region (< " + std::to_string(kb_) +
                                      "); increase D",
                                  2 * P_->D, -1);
        auto it = c_.find(a);
        if (it == c_.end())
            return PadicScalar::zero(ring(), std::min(pcap_, (int)CAP_INF));
        return it->second;
    }

    /// Uncertified read used by internal loops that already checked the region.
    PadicScalar coeff_or_zero(const MultiIndex& a) const {
        auto it = c_.find(a);
        if (it == c_.end()) return PadicScalar::zero(ring(), std::min(pcap_, (int)CAP_INF));
        return it->second;
    }

    long min_weight() const {  // +infinity convention for the zero series
        long mw = LONG_MAX_SENTINEL;
        for (const auto& [a, c] : c_) mw = std::min(mw, P_->weight(a));
        return mw;
    }
    int min_val() const {
        int mv = CAP_INF;
        for (const auto& [a, c] : c_) mv = std::min(mv, c.val());
        return mv;
    }

    friend LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) {
        require_compatible(f, g);
        LaurentSeries r = zero(f.P_, std::min(f.kb_, g.kb_), std::min(f.pcap_, g.pcap_));
        for (const auto& [a, c] : f.c_) r.accumulate(a, c);
        for (const auto& [a, c] : g.c_) r.accumulate(a, c);
        r.finalize();
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) {
        return f + g.neg();
    }

    LaurentSeries neg() const {
        LaurentSeries r = *this;
        for (auto& [a, c] : r.c_) c = c.neg();
        return r;
    }

    friend LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) {
        require_compatible(f, g);
        // Three pollution sources: unknown(f) x stored(g), stored(f) x unknown(g),
        // and unknown(f) x unknown(g).  The last is only binding when a factor
        // stores nothing, since stored terms always lie strictly below kb.
        long kb = std::min({(long)f.P_->D, addsat(f.kb_, g.min_weight()),
                            addsat(g.kb_, f.min_weight()), addsat(f.kb_, g.kb_)});
        int pcap = (int)std::min({(long)CAP_INF, (long)f.pcap_ + g.min_val(),
                                  (long)g.pcap_ + f.min_val(), (long)f.pcap_ + (long)g.pcap_});
        LaurentSeries r = zero(f.P_, kb, pcap);
        if (f.is_zero() || g.is_zero()) return r;
        for (const auto& [a, ca] : f.c_) {
            long wa = f.P_->weight(a);
            for (const auto& [b, cb] : g.c_) {
                if (wa + g.P_->weight(b) >= kb) continue;
                r.accumulate(idx_add(a, b), ca * cb);
            }
        }
        r.finalize();
        return r;
    }

    LaurentSeries scalar_mul(const PadicScalar& c) const {
        int pcap = (int)std::min({(long)CAP_INF, (long)pcap_ + c.val(), (long)c.cap() + min_val()});
        LaurentSeries r = zero(P_, kb_, pcap);
        if (c.is_zero()) return r;
        for (const auto& [a, x] : c_) r.accumulate(a, x * c);
        r.finalize();
        return r;
    }

    /// Lossless shift by p^{-k} (k may be negative): vals and caps move by -k.
    LaurentSeries div_p(int k) const {
        LaurentSeries r = *this;
        r.pcap_ = (pcap_ >= CAP_INF) ? pcap_ : pcap_ - k;
        for (auto& [a, c] : r.c_) c = c.div_pk(k);
        r.finalize();
        return r;
    }
    LaurentSeries mul_p(int k) const { return div_p(-k); }

    bool integral() const {
        for (const auto& [a, c] : c_)
            if (c.val() < 0) return false;
        return true;
    }

    /// Forget part of the certificate (weight bound and/or p-precision).
    /// Coefficient caps are reduced to the new pcap for a canonical result.
    LaurentSeries reduce_certificates(long kb, int pcap) const {
        LaurentSeries r = zero(P_, std::min(kb, kb_), std::min(pcap, pcap_));
        for (const auto& [a, c] : c_) r.accumulate(a, c.reduce_cap(r.pcap_));
        r.finalize();
        return r;
    }

    /// Engine-internal: reassert certificates after a functional-precision
    /// argument (see the exp/log engines).  Passing CAP_INF lifts every
    /// stored mantissa to the exact representative it is (cap val + Amax);
    /// a finite pcap is a claim about the true value and must already be
    /// covered by the computed coefficient caps.
    LaurentSeries assert_certificates(long kb, int pcap) const {
        LaurentSeries r = zero(P_, kb, pcap);
        const CoeffRing* R = ring();
        for (const auto& [a, c] : c_) {
            if (pcap >= CAP_INF) {
                r.accumulate(a, c.raise_cap_unchecked(CAP_INF));
                continue;
            }
            if (c.cap() < pcap)
                throw precision_error(
                    "internal digit headroom exhausted while asserting a p-precision claim", -1,
                    R->G * 2);
            r.accumulate(a, c);
        }
        r.finalize();
        return r;
    }

    friend bool eq_mod_certificates(const LaurentSeries& f, const LaurentSeries& g) {
        return (f - g).is_zero();
    }

    // --- mutation primitives used by the operation layer -------------------

    void set(const MultiIndex& a, const PadicScalar& c) {
        accumulate(a, c);
        finalize();
    }

    void accumulate(const MultiIndex& a, const PadicScalar& c) {
        if ((int)a.size() != P_->N) throw domain_error("multi-index arity mismatch");
        auto it = c_.find(a);
        if (it == c_.end())
            it = c_.emplace(a, c).first;
        else
            it->second = it->second + c;
    }

    /// Re-establish representation invariants: prune terms at weight >= kb,
    /// lower the series claim to the surviving coefficient caps (terms about
    /// to be weight-pruned must not drag the claim down), prune terms of
    /// p-valuation >= pcap, drop zeros, verify guard bounds and lex/weight
    /// sign agreement.  Individual coefficients may be known beyond the
    /// series claim (caps >= pcap); clipping them here would destroy digits
    /// that valuation-heterogeneous inputs legitimately carry.
    void finalize() {
        kb_ = std::min(kb_, P_->D);
        for (auto it = c_.begin(); it != c_.end();) {
            if (P_->weight(it->first) >= kb_ || it->second.is_zero())
                it = c_.erase(it);
            else {
                pcap_ = std::min(pcap_, it->second.cap());
                ++it;
            }
        }
        for (auto it = c_.begin(); it != c_.end();) {
            const MultiIndex& a = it->first;
            PadicScalar& c = it->second;
            if (c.is_zero() || c.val() >= pcap_) {
                it = c_.erase(it);
                continue;
            }
            int ls = lex_sign(a);
            long w = P_->weight(a);
            int ws = (w > 0) ? 1 : (w < 0 ? -1 : 0);
            if (ls != ws)
                throw precision_error(
                    "weight order does not refine lex order at a stored index; "
                    "increase the weight spread (lambda)");
            for (int i = 0; i < P_->N; ++i)
                if (a[(size_t)i] < P_->lower_bound[(size_t)i])
                    throw domain_error("exponent of t_" + std::to_string(i + 1) +
                                       " fell below the policy lower bound");
            ++it;
        }
    }

  private:
    static void require_compatible(const LaurentSeries& f, const LaurentSeries& g) {
        if (!same_policy(f.P_, g.P_)) throw domain_error("incompatible series policies");
    }

    static long addsat(long a, long b) {
        if (a >= LONG_MAX_SENTINEL || b >= LONG_MAX_SENTINEL) return LONG_MAX_SENTINEL;
        return a + b;
    }

    static constexpr long LONG_MAX_SENTINEL = (1L << 40);

    PolicyPtr P_;
    std::map<MultiIndex, PadicScalar> c_;
    long kb_ = 0;
    int pcap_ = 0;

  public:
    static constexpr long WEIGHT_INF = LONG_MAX_SENTINEL;
};

// --- substitution and differential operators ------------------------------

/// Frobenius substitution: coefficientwise sigma and t_i -> t_i^p.
inline LaurentSeries sigma_subst(const LaurentSeries& f) {
    const auto& P = f.policy();
    Int p = P->ring->p;
    long kb = std::min((long)P->D, p * f.known_below());
    LaurentSeries r = LaurentSeries::zero(P, kb, f.pcap());
    for (const auto& [a, c] : f.terms()) {
        MultiIndex b = idx_scale(a, p);
        if (P->weight(b) >= kb) continue;
        r.accumulate(b, c.frobenius());
    }
    r.finalize();
    return r;
}

/// t_i * d/dt_i, termwise multiplication of coefficients by the exponent.
inline LaurentSeries t_partial(const LaurentSeries& f, int i) {
    const auto& P = f.policy();
    if (i < 1 || i > P->N) throw domain_error("t_partial: variable index out of range");
    LaurentSeries r = LaurentSeries::zero(P, f.known_below(), f.pcap());
    const CoeffRing* R = P->ring.get();
    for (const auto& [a, c] : f.terms()) {
        Int e = a[(size_t)(i - 1)];
        if (e == 0) continue;
        auto k = PadicScalar::exact_int(R, e);
        r.accumulate(a, c * k);
    }
    r.finalize();
    return r;
}

// --- inversion --------------------------------------------------------------

/// Multiplicative inverse by Newton iteration in the joint (weight, p) filtration.
/// u must split as c*t^{a0}*(1+r) with c a unit scalar of minimal valuation,
/// t^{a0} of minimal weight among minimal-valuation terms (ties broken lex,
/// but a genuine weight tie among minimal-valuation terms is rejected), and
/// every term of r of positive weight or positive relative p-valuation.
inline LaurentSeries invert(const LaurentSeries& u) {
    const auto& P = u.policy();
    if (u.is_zero()) throw domain_error("invert: series is zero at working precision");
    int v0 = u.min_val();
    long w0 = LaurentSeries::WEIGHT_INF;
    const MultiIndex* a0 = nullptr;
    for (const auto& [a, c] : u.terms()) {
        if (c.val() != v0) continue;
        long w = P->weight(a);
        if (w < w0 || (w == w0 && (a0 == nullptr || lex_less(a, *a0)))) {
            w0 = w;
            a0 = &a;
        }
    }
    const MultiIndex lead = *a0;
    PadicScalar c0 = u.terms().at(lead);
    for (const auto& [a, c] : u.terms()) {
        if (a == lead) continue;
        bool ok = (P->weight(a) > w0) || (c.val() > v0);
        if (!ok)
            throw domain_error("invert: non-invertible leading structure at t^index with weight " +
                               std::to_string(P->weight(a)));
    }

    long pcap_out = std::min((long)CAP_INF, (long)u.pcap() - 2L * v0);
    if (pcap_out < 1)
        throw precision_error("invert: no certified p-digit remains for the inverse", -1,
                              P->ring->G + 2 * std::abs(v0));

    // Strip the leading p-valuation first.  The Newton loop then runs on a
    // series whose leading term is a unit.
    LaurentSeries un = u.div_p(v0);
    long pcap_n = (long)un.pcap();

    // Working window for the iteration.  This is the exact claim for a
    // pure-weight splitting; valuation tails can only certify less, and the
    // honest bound is recovered from the final residual.
    long kb_work = std::min((long)P->D, u.known_below() - 2 * w0);

    // The iterate is a candidate we construct from stored data, so the loop
    // runs in an explicit window model: products keep everything strictly
    // below the given window and prune by the working p-cap, nothing else.
    // Routing the updates through the general product would instead charge
    // each factor's unknown-tail arms, and once those dip below the stored
    // support the pruning destroys real head terms of the candidate.
    auto wprod = [&](const LaurentSeries& f, const LaurentSeries& g, long window) {
        LaurentSeries r = LaurentSeries::zero(P, window, (int)pcap_n);
        for (const auto& [a, ca] : f.terms())
            for (const auto& [b, cb] : g.terms()) {
                MultiIndex ab = idx_add(a, b);
                if (P->weight(ab) >= window) continue;
                r.accumulate(ab, ca * cb);
            }
        r.finalize();
        return r;
    };

    // The residual lives w0 above the iterate: clearing a residual term at
    // weight w takes an x-term at w - w0, so exactly the residual terms below
    // kb_work + w0 are reachable.  A wider residual window would store
    // unclearable boundary terms whose update products can land on and
    // exactly cancel legitimate corrections, freezing the iteration.
    long w_res = kb_work + w0;

    // x0 = c0^{-1} t^{-a0} relative to the normalized series
    LaurentSeries x = LaurentSeries::monomial(P, c0.div_pk(v0).invert(), idx_scale(lead, -1));
    x = x.reduce_certificates(kb_work, (int)pcap_n);
    // The exact constant 1: without the assertion its default p-cap would
    // throttle every residual, and with it the whole iteration, to the base
    // working precision even when the input carries more certified digits.
    LaurentSeries one = LaurentSeries::one(P).assert_certificates(P->D, CAP_INF);

    long iters = 0;
    for (;;) {
        LaurentSeries res = one - wprod(un, x, w_res);
        if (res.is_zero()) break;
        // residual contraction in the joint filtration guarantees termination;
        // the bound below is generous
        if (++iters > 64)
            throw precision_error("invert: Newton iteration failed to contract", 2 * P->D, -1);
        x = x + wprod(x, res, kb_work);
    }

    // The window residual vanished; now judge the candidate once with the
    // general product, whose certificate honestly charges u's unknown tail.
    LaurentSeries res_h = one - un * x;
    long res_floor = res_h.known_below();
    if (!res_h.is_zero()) res_floor = std::min(res_floor, res_h.min_weight());

    // x differs from the true inverse by u^{-1}*(1 - u*x) plus the response
    // u^{-1}*(tail of u)*u^{-1} to the uncertified tail of u; both bounds use
    // a floor for the inverse's weight support.  The floor is x's own stored
    // support: any deeper mass of the inverse would have to cancel against
    // u^{-1}*(1 - u*x), which sits at least res_floor below it, and the
    // leading term check at the end forces res_floor > 0 whenever a result
    // is returned.
    long mw_inv = std::min(x.min_weight(), x.known_below());
    long kb_out = std::min({(long)P->D, u.known_below() + 2 * mw_inv, res_floor + mw_inv});
    // A certified result must at least contain its own leading term, otherwise
    // "no terms below kb" would be a false claim about the true inverse.
    if (kb_out <= -w0)
        throw precision_error("invert: certified region cannot reach the inverse's leading term",
                              P->D + 2 * std::abs(w0) + 1, -1);
    return x.div_p(v0).reduce_certificates(kb_out, (int)pcap_out);
}

// --- reparameterization -----------------------------------------------------

/// Substitute t_i -> t_i * (1 + m_i) for each i, where every m_i has positive
/// weight.  Used to verify parameter invariance of the residue.
inline LaurentSeries reparameterize(const LaurentSeries& f, const std::vector<LaurentSeries>& m) {
    const auto& P = f.policy();
    if ((int)m.size() != P->N) throw domain_error("reparameterize: need one multiplier per variable");
    for (const auto& mi : m)
        for (const auto& [a, c] : mi.terms())
            if (P->weight(a) <= 0)
                throw domain_error("reparameterize: multiplier term without positive weight");

    // cached powers of (1+m_i) and of its inverse; the constant 1 is exact
    LaurentSeries exact_one = LaurentSeries::one(P).assert_certificates(P->D, CAP_INF);
    std::vector<LaurentSeries> base, base_inv;
    std::vector<std::vector<LaurentSeries>> pow_pos((size_t)P->N), pow_neg((size_t)P->N);
    for (int i = 0; i < P->N; ++i) {
        LaurentSeries b = exact_one + m[(size_t)i];
        base.push_back(b);
        base_inv.push_back(invert(b));
        pow_pos[(size_t)i].push_back(exact_one);
        pow_neg[(size_t)i].push_back(exact_one);
    }
    auto power = [&](int i, Int e) -> const LaurentSeries& {
        auto& cache = (e >= 0) ? pow_pos[(size_t)i] : pow_neg[(size_t)i];
        const LaurentSeries& b = (e >= 0) ? base[(size_t)i] : base_inv[(size_t)i];
        size_t k = (size_t)std::abs(e);
        while (cache.size() <= k) cache.push_back(cache.back() * b);
        return cache[k];
    };

    long kb = f.known_below();
    LaurentSeries acc = LaurentSeries::zero(P, kb, f.pcap());
    std::vector<LaurentSeries> images;
    for (const auto& [a, c] : f.terms()) {
        LaurentSeries term = LaurentSeries::monomial(P, c, a);
        for (int i = 0; i < P->N; ++i)
            if (a[(size_t)i] != 0) term = term * power(i, a[(size_t)i]);
        kb = std::min(kb, term.known_below());
        images.push_back(std::move(term));
    }
    for (auto& t : images) acc = acc + t.reduce_certificates(kb, f.pcap());
    return acc.reduce_certificates(kb, f.pcap());
}

// --- exp / log engines -------------------------------------------------------

/// log(u) = sum (-1)^{n-1} (u-1)^n / n for u = 1 + m, all terms of m of
/// positive weight.  A perturbation of u by p^pcap moves log(u) by that
/// perturbation times u^{-1}, so for integral m the input p-precision is
/// preserved up to the 1/n denominators, while negative-valuation
/// coefficients in m cost |min val| digits per power both in the claim on
/// the output and mechanically inside the loop.  Deep truncation bounds on
/// such arguments need guard digits sized for that decay; when none of the
/// claim survives this raises instead of returning junk.
inline LaurentSeries series_log(const LaurentSeries& u) {
    const auto& P = u.policy();
    const CoeffRing* R = P->ring.get();
    // The constant 1 is exact by definition; subtracting it at the public
    // precision would collapse u's claim before the engine ever runs.
    LaurentSeries m = u - LaurentSeries::one(P).assert_certificates(P->D, CAP_INF);
    for (const auto& [a, c] : m.terms())
        if (P->weight(a) <= 0)
            throw domain_error("series_log: argument is not 1 + (positive weight terms)");
    long kb = u.known_below();
    if (u.pcap() < 1) throw precision_error("series_log: no p-adic precision left");

    LaurentSeries mx = m.assert_certificates(kb, CAP_INF);
    long minw = mx.is_zero() ? LaurentSeries::WEIGHT_INF : mx.min_weight();
    long nmax = (minw < LaurentSeries::WEIGHT_INF && minw < kb) ? (kb - 1) / minw : 0;
    long pcap_out = (long)u.pcap();
    if (nmax > 0) pcap_out += nmax * std::min(0L, (long)mx.min_val());
    if (pcap_out < 1)
        throw precision_error("series_log: p-adic precision exhausted", -1, R->G * 2);

    LaurentSeries acc = LaurentSeries::zero(P, kb, CAP_INF);
    LaurentSeries pw = LaurentSeries::one(P).assert_certificates(kb, CAP_INF);
    for (long n = 1; n <= nmax; ++n) {
        pw = (pw * mx).reduce_certificates(kb, CAP_INF);
        mpz_class nn = (n % 2 == 1) ? mpz_class(n) : mpz_class(-n);
        int vn = 0;
        while (nn % R->p == 0) {
            nn /= R->p;
            ++vn;
        }
        acc = acc + pw.scalar_mul(PadicScalar::exact_int(R, nn).invert().div_pk(vn));
    }
    LaurentSeries r = acc.reduce_certificates(kb, (int)std::min(pcap_out, (long)CAP_INF));
    if (r.pcap() < 1)
        throw precision_error("series_log: p-adic precision exhausted", -1, R->G * 2);
    return r;
}

/// exp(m) = sum m^n / n! for m with all terms of positive weight.  The n!
/// denominators consume the ring's internal digit headroom, and each power
/// of a non-integral m costs |min val| digits of the uniform claim.  The
/// result is asserted at cap_target when given (callers owning an
/// integrality argument, e.g. Artin-Hasse), else reduced to the input pcap
/// adjusted by the valuation drop of the computed exponential; when none of
/// the claim survives this raises instead of returning junk.
inline LaurentSeries series_exp(const LaurentSeries& m, int cap_target = -1) {
    const auto& P = m.policy();
    const CoeffRing* R = P->ring.get();
    for (const auto& [a, c] : m.terms())
        if (P->weight(a) <= 0)
            throw domain_error("series_exp: argument terms must have positive weight");
    long kb = m.known_below();

    LaurentSeries mx = m.assert_certificates(kb, CAP_INF);
    long minw = mx.is_zero() ? LaurentSeries::WEIGHT_INF : mx.min_weight();
    long nmax = (minw < LaurentSeries::WEIGHT_INF && minw < kb) ? (kb - 1) / minw : 0;
    LaurentSeries acc = LaurentSeries::one(P).assert_certificates(kb, CAP_INF);
    LaurentSeries pw = LaurentSeries::one(P).assert_certificates(kb, CAP_INF);
    // n! tracked as p^vfact * ufact with the unit part reduced internally
    int vfact = 0;
    PadicScalar ufact_inv = PadicScalar::exact_int(R, 1);
    for (long n = 1; n <= nmax; ++n) {
        pw = (pw * mx).reduce_certificates(kb, CAP_INF);
        mpz_class nn = n;
        while (nn % R->p == 0) {
            nn /= R->p;
            ++vfact;
        }
        if (!pw.is_zero() && vfact + R->A >= R->Amax)
            throw precision_error("series_exp: denominator exceeds internal precision headroom",
                                  -1, R->G * 2);
        ufact_inv = ufact_inv * PadicScalar::exact_int(R, nn).invert();
        acc = acc + pw.scalar_mul(ufact_inv.div_pk(vfact));
    }
    if (cap_target >= 0) return acc.assert_certificates(kb, cap_target);
    long pcap_out = (long)m.pcap() + std::min(0L, (long)acc.min_val());
    LaurentSeries r = acc.reduce_certificates(kb, (int)std::min(pcap_out, (long)CAP_INF));
    if (r.pcap() < 1)
        throw precision_error("series_exp: p-adic precision exhausted", -1, R->G * 2);
    return r;
}

// --- membership predicates ---------------------------------------------------

/// f lies in m0: integral coefficients, all indices lex-positive.
inline bool is_m0(const LaurentSeries& f) {
    for (const auto& [a, c] : f.terms())
        if (c.val() < 0 || lex_sign(a) <= 0) return false;
    return true;
}

/// f lies in O0 = W(k) + m0.
inline bool is_O0(const LaurentSeries& f) {
    for (const auto& [a, c] : f.terms())
        if (c.val() < 0 || lex_sign(a) < 0) return false;
    return true;
}

/// u is a principal unit of O0: u = 1 + (terms of positive weight or positive
/// p-valuation), i.e. u - 1 lies in m0 + p*W(k) + p*m0 within precision.
inline bool is_principal_unit(const LaurentSeries& u) {
    LaurentSeries m = u - LaurentSeries::one(u.policy());
    for (const auto& [a, c] : m.terms()) {
        if (c.val() < 0) return false;
        if (lex_sign(a) <= 0 && c.val() < 1) return false;
    }
    return true;
}

/// f lies in O0[[t^{ep}/p]]: integral part in O0, and each term of valuation
/// -n < 0 has index >= lex n*e*p.
inline bool is_O0_ep_over_p(const LaurentSeries& f, const std::vector<Int>& e) {
    const auto& P = f.policy();
    if ((int)e.size() != P->N) throw domain_error("membership: e has wrong arity");
    Int p = P->ring->p;
    for (const auto& [a, c] : f.terms()) {
        if (c.val() >= 0) {
            if (lex_sign(a) < 0) return false;
            continue;
        }
        MultiIndex bound = idx_scale(e, p * (Int)(-c.val()));
        if (!lex_geq(a, bound)) return false;
    }
    return true;
}

/// f lies in L0 = O0[[p/t^{e(p-1)}, t^{ep}/p]] (two-sided condition).
inline bool is_L0(const LaurentSeries& f, const std::vector<Int>& e) {
    const auto& P = f.policy();
    if ((int)e.size() != P->N) throw domain_error("membership: e has wrong arity");
    Int p = P->ring->p;
    for (const auto& [a, c] : f.terms()) {
        if (c.val() < 0) {
            MultiIndex bound = idx_scale(e, p * (Int)(-c.val()));
            if (!lex_geq(a, bound)) return false;
        } else if (lex_sign(a) < 0) {
            // negative indices allowed only with valuation >= n where
            // a >= -n*e*(p-1), i.e. need val >= ceil over the deficiency
            Int n = (Int)c.val();
            MultiIndex bound = idx_scale(e, -(p - 1) * n);
            if (!lex_geq(a, bound)) return false;
        }
    }
    return true;
}

}  // namespace vostok
