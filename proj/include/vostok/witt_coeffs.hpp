#pragma once

// Unramified coefficient ring W(k)/p^A for k = F_{p^s}, realised as
// Z/p^A[X]/(m(X)) where m is the Hensel lift of an irreducible seed
// polynomial whose root is a Teichmueller element (X^{p^s} = X holds in the
// quotient).  Scalars carry capped absolute precision: a value p^val * u is
// asserted correct mod p^cap only.

#include <algorithm>
#include <cassert>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "vostok/errors.hpp"

namespace vostok {

using Int = long;

/// Sentinel cap for values known exactly (engine internal / literal zero).
constexpr int CAP_INF = 1 << 24;

namespace detail {

inline bool is_small_prime(Int p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline mpz_class pow_mpz(const mpz_class& b, unsigned long e) {
    mpz_class r;
    ::mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// --- F_p[x] helpers (dense, low-to-high coefficients) ---------------------

inline void fp_trim(std::vector<Int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<Int> fp_mulmod(const std::vector<Int>& a, const std::vector<Int>& b,
                                  const std::vector<Int>& mod, Int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<Int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce by monic mod
    size_t s = mod.size() - 1;
    for (size_t d = r.size(); d-- > s;) {
        Int c = r[d] % p;
        if (c == 0) continue;
        for (size_t j = 0; j <= s; ++j) {
            r[d - s + j] = ((r[d - s + j] - c * mod[j]) % p + p) % p;
        }
    }
    r.resize(std::min(r.size(), s));
    for (auto& x : r) x = ((x % p) + p) % p;
    fp_trim(r);
    return r;
}

inline std::vector<Int> fp_powmod(std::vector<Int> base, mpz_class e,
                                  const std::vector<Int>& mod, Int p) {
    std::vector<Int> r{1};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mulmod(r, base, mod, p);
        base = fp_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

inline std::vector<Int> fp_gcd(std::vector<Int> a, std::vector<Int> b, Int p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // a mod b
        Int lead = b.back();
        // make b monic
        Int inv = 1;
        {
            Int e = p - 2, bb = lead % p, r = 1;
            while (e) {
                if (e & 1) r = r * bb % p;
                bb = bb * bb % p;
                e >>= 1;
            }
            inv = r;
        }
        std::vector<Int> bm = b;
        for (auto& x : bm) x = x * inv % p;
        while (a.size() >= bm.size() && !a.empty()) {
            Int c = a.back() % p;
            size_t off = a.size() - bm.size();
            if (c != 0)
                for (size_t j = 0; j < bm.size(); ++j)
                    a[off + j] = ((a[off + j] - c * bm[j]) % p + p) % p;
            fp_trim(a);
            if (a.size() < bm.size()) break;
        }
        std::swap(a, b);
    }
    return a;
}

inline bool fp_irreducible(const std::vector<Int>& f, Int p) {
    size_t s = f.size() - 1;
    if (s == 0) return false;
    if (s == 1) return true;
    // x^{p^s} == x mod f, and gcd(x^{p^{s/q}} - x, f) = 1 for prime q | s
    std::vector<Int> x{0, 1};
    auto frob = fp_powmod(x, pow_mpz(mpz_class(p), (unsigned long)s), f, p);
    if (frob != x) return false;
    for (size_t q = 2; q <= s; ++q) {
        if (s % q != 0) continue;
        bool prime_q = true;
        for (size_t d = 2; d * d <= q; ++d)
            if (q % d == 0) prime_q = false;
        if (!prime_q) continue;
        auto g = fp_powmod(x, pow_mpz(mpz_class(p), (unsigned long)(s / q)), f, p);
        // g - x
        std::vector<Int> diff = g;
        diff.resize(std::max(diff.size(), size_t(2)), 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        fp_trim(diff);
        auto gc = fp_gcd(f, diff, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

class PadicScalar;

struct CoeffRing {
    Int p = 0;
    int s = 1;
    int A = 1;     // public absolute digit budget: constructed scalars satisfy cap <= val + A
    int Amax = 1;  // internal modulus precision (>= A); engine representatives may use up to this
    int M = 1;     // reporting precision p^M (carried for convenience)
    int G = 0;     // guard digits, A = M + G
    mpz_class pA, pAmax;
    std::vector<mpz_class> ppow;                 // p^0 .. p^Amax
    std::vector<mpz_class> modulus;              // lower coefficients m_0..m_{s-1} of monic modulus
    std::vector<Int> modulus_p;                  // modulus mod p (monic, size s+1)
    std::vector<std::vector<mpz_class>> sigma_col;  // sigma(X^j) in the power basis, j = 0..s-1
    std::vector<Int> seed;                       // seed polynomial coefficients mod p (size s+1)

    const mpz_class& ppw(int k) const {
        assert(k >= 0 && k <= Amax);
        return ppow[(size_t)k];
    }

    // --- polynomial arithmetic in Z/p^d[X]/(modulus), vectors of size s ---

    void reduce_vec(std::vector<mpz_class>& v, int digits) const {
        const mpz_class& md = ppw(std::min(digits, Amax));
        for (auto& x : v) {
            x %= md;
            if (x < 0) x += md;
        }
    }

    std::vector<mpz_class> mul_vec(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                   int digits) const {
        std::vector<mpz_class> full(2 * (size_t)s - 1, mpz_class(0));
        for (int i = 0; i < s; ++i) {
            if (a[(size_t)i] == 0) continue;
            for (int j = 0; j < s; ++j) {
                if (b[(size_t)j] == 0) continue;
                full[(size_t)(i + j)] += a[(size_t)i] * b[(size_t)j];
            }
        }
        // reduce by monic modulus: X^s = -sum m_j X^j
        for (int d = 2 * s - 2; d >= s; --d) {
            if (full[(size_t)d] == 0) continue;
            mpz_class c = full[(size_t)d];
            full[(size_t)d] = 0;
            for (int j = 0; j < s; ++j) full[(size_t)(d - s + j)] -= c * modulus[(size_t)j];
        }
        full.resize((size_t)s);
        reduce_vec(full, digits);
        return full;
    }

    std::vector<mpz_class> pow_vec(std::vector<mpz_class> base, mpz_class e, int digits) const {
        std::vector<mpz_class> r((size_t)s, mpz_class(0));
        r[0] = 1;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul_vec(r, base, digits);
            base = mul_vec(base, base, digits);
            e >>= 1;
        }
        return r;
    }

    // sigma on the power basis; valid to `digits` p-digits
    std::vector<mpz_class> sigma_vec(const std::vector<mpz_class>& a, int digits) const {
        std::vector<mpz_class> r((size_t)s, mpz_class(0));
        for (int j = 0; j < s; ++j) {
            if (a[(size_t)j] == 0) continue;
            for (int i = 0; i < s; ++i) r[(size_t)i] += a[(size_t)j] * sigma_col[(size_t)j][(size_t)i];
        }
        reduce_vec(r, digits);
        return r;
    }

    // inverse of a unit (nonzero mod p), valid to `digits`
    std::vector<mpz_class> inv_vec(const std::vector<mpz_class>& a, int digits) const {
        digits = std::min(digits, Amax);
        // invert mod p by Fermat in F_{p^s}
        mpz_class e = detail::pow_mpz(mpz_class(p), (unsigned long)s) - 2;
        std::vector<mpz_class> y = pow_vec(a, e, 1);
        int have = 1;
        while (have < digits) {
            have = std::min(2 * have, digits);
            // y <- y (2 - a y)
            auto ay = mul_vec(a, y, have);
            for (auto& x : ay) x = -x;
            ay[0] += 2;
            y = mul_vec(y, ay, have);
        }
        return y;
    }

    bool unit_vec(const std::vector<mpz_class>& a) const {
        for (const auto& x : a)
            if (x % p != 0) return true;
        return false;
    }
};

using RingPtr = std::shared_ptr<const CoeffRing>;

/// Residue-field element of k = F_{p^s} in the power basis of the generator.
class KElem {
  public:
    KElem() = default;
    KElem(const CoeffRing* R, std::vector<Int> c) : R_(R), c_(std::move(c)) {
        c_.resize((size_t)R->s, 0);
        for (auto& x : c_) x = ((x % R->p) + R->p) % R->p;
    }
    static KElem zero(const CoeffRing* R) { return KElem(R, {}); }
    static KElem one(const CoeffRing* R) { return KElem(R, {1}); }
    static KElem gen(const CoeffRing* R) { return KElem(R, {0, 1}); }

    const CoeffRing* ring() const { return R_; }
    const std::vector<Int>& coords() const { return c_; }
    bool is_zero() const {
        for (Int x : c_)
            if (x) return false;
        return true;
    }

    friend KElem operator+(const KElem& a, const KElem& b) {
        std::vector<Int> r = a.c_;
        for (size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + b.c_[i]) % a.R_->p;
        return KElem(a.R_, std::move(r));
    }
    friend KElem operator-(const KElem& a, const KElem& b) {
        std::vector<Int> r = a.c_;
        for (size_t i = 0; i < r.size(); ++i) r[i] = ((r[i] - b.c_[i]) % a.R_->p + a.R_->p) % a.R_->p;
        return KElem(a.R_, std::move(r));
    }
    friend KElem operator*(const KElem& a, const KElem& b) {
        return KElem(a.R_, detail::fp_mulmod(a.c_, b.c_, a.R_->modulus_p, a.R_->p));
    }
    friend bool operator==(const KElem& a, const KElem& b) { return a.c_ == b.c_; }

    KElem pow(mpz_class e) const {
        return KElem(R_, detail::fp_powmod(c_, std::move(e), R_->modulus_p, R_->p));
    }
    KElem inv() const {
        if (is_zero()) throw domain_error("division by zero in residue field");
        return pow(detail::pow_mpz(mpz_class(R_->p), (unsigned long)R_->s) - 2);
    }
    KElem frobenius() const { return pow(R_->p); }
    /// p-th root: x^{1/p} = x^{p^{s-1}} in F_{p^s}.
    KElem pth_root() const {
        return pow(detail::pow_mpz(mpz_class(R_->p), (unsigned long)(R_->s - 1)));
    }

  private:
    const CoeffRing* R_ = nullptr;
    std::vector<Int> c_;
};

/// Capped-absolute-precision element of W(k)[1/p] truncated mod p^cap:
/// value = p^val * mantissa with unit (or zero) mantissa of degree < s.
/// Zero is stored with empty mantissa and val == cap.
class PadicScalar {
  public:
    PadicScalar() = default;

    static PadicScalar zero(const CoeffRing* R, int cap) {
        PadicScalar x;
        x.R_ = R;
        x.val_ = cap;
        x.cap_ = cap;
        return x;
    }

    /// Small-integer constant at public precision; cap = v_p(n) + A.
    static PadicScalar from_int(const CoeffRing* R, mpz_class n) {
        if (n == 0) return zero(R, CAP_INF);
        int v = 0;
        while (n % R->p == 0) {
            n /= R->p;
            ++v;
        }
        std::vector<mpz_class> m((size_t)R->s, mpz_class(0));
        m[0] = std::move(n);
        return make(R, v, v + R->A, std::move(m));
    }

    /// Engine-internal exact integer constant: the mantissa is the true value
    /// reduced mod p^Amax, the representative modulus, not mod p^A.  The cap
    /// clamps to val + Amax, the strongest computable claim.
    static PadicScalar exact_int(const CoeffRing* R, mpz_class n) {
        if (n == 0) return zero(R, CAP_INF);
        int v = 0;
        while (n % R->p == 0) {
            n /= R->p;
            ++v;
        }
        std::vector<mpz_class> m((size_t)R->s, mpz_class(0));
        m[0] = std::move(n);
        return make(R, v, CAP_INF, std::move(m));
    }

    static PadicScalar from_poly(const CoeffRing* R, std::vector<mpz_class> coords, int val,
                                 int cap) {
        coords.resize((size_t)R->s, mpz_class(0));
        return make(R, val, cap, std::move(coords));
    }

    static PadicScalar one(const CoeffRing* R) { return from_int(R, 1); }

    const CoeffRing* ring() const { return R_; }
    bool is_zero() const { return m_.empty(); }
    int val() const { return val_; }
    int cap() const { return cap_; }
    /// Mantissa in the power basis; reduced mod p^{min(cap-val, Amax)}.
    const std::vector<mpz_class>& mantissa() const { return m_; }
    int digits() const { return is_zero() ? 0 : std::min(cap_ - val_, R_->Amax); }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
        assert(a.R_ == b.R_);
        const CoeffRing* R = a.R_;
        int cap = std::min(a.cap_, b.cap_);
        if (a.is_zero() && b.is_zero()) return zero(R, cap);
        if (a.is_zero()) return b.reduce_cap(cap);
        if (b.is_zero()) return a.reduce_cap(cap);
        int v = std::min(a.val_, b.val_);
        if (v >= cap) return zero(R, cap);
        std::vector<mpz_class> m((size_t)R->s, mpz_class(0));
        const mpz_class& sa = R->ppw(std::min(a.val_ - v, R->Amax));
        const mpz_class& sb = R->ppw(std::min(b.val_ - v, R->Amax));
        for (int i = 0; i < R->s; ++i) m[(size_t)i] = a.m_[(size_t)i] * sa + b.m_[(size_t)i] * sb;
        return make(R, v, cap, std::move(m));
    }

    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + b.neg(); }

    PadicScalar neg() const {
        if (is_zero()) return *this;
        std::vector<mpz_class> m = m_;
        for (auto& x : m) x = -x;
        return make(R_, val_, cap_, std::move(m));
    }

    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        assert(a.R_ == b.R_);
        const CoeffRing* R = a.R_;
        long cap = std::min((long)a.cap_ + b.val_, (long)b.cap_ + a.val_);
        cap = std::min(cap, (long)CAP_INF);
        if (a.is_zero() || b.is_zero()) return zero(R, (int)cap);
        int v = a.val_ + b.val_;
        if (v >= cap) return zero(R, (int)cap);
        auto m = R->mul_vec(a.m_, b.m_, std::min((int)cap - v, R->Amax));
        return make(R, v, (int)cap, std::move(m));
    }

    /// Exact division by p^k (lossless shift).
    PadicScalar div_pk(int k) const {
        PadicScalar x = *this;
        x.val_ -= k;
        if (x.cap_ < CAP_INF) x.cap_ -= k;
        return x;
    }
    PadicScalar mul_pk(int k) const { return div_pk(-k); }

    PadicScalar invert() const {
        if (is_zero())
            throw domain_error("scalar inverse: operand is zero at working precision");
        int d = digits();
        long cap = (long)cap_ - 2L * val_;
        if (cap <= -val_ || d <= 0)
            throw precision_error("scalar inverse: no significant digits remain");
        auto m = R_->inv_vec(m_, d);
        return make(R_, -val_, (int)std::min(cap, (long)CAP_INF), std::move(m));
    }

    PadicScalar frobenius() const {
        if (is_zero()) return *this;
        auto m = R_->sigma_vec(m_, digits());
        return make(R_, val_, cap_, std::move(m));
    }

    /// Trace to Z/p^A: sum of sigma^i.  The result lies in the prime subring;
    /// higher basis coordinates are checked to vanish within cap.
    PadicScalar trace() const {
        if (is_zero()) return *this;
        PadicScalar acc = *this;
        PadicScalar cur = *this;
        for (int i = 1; i < R_->s; ++i) {
            cur = cur.frobenius();
            acc = acc + cur;
        }
        if (!acc.is_zero()) {
            const mpz_class& md = acc.R_->ppw(acc.digits());
            for (int i = 1; i < acc.R_->s; ++i) {
                if (acc.m_[(size_t)i] % md != 0)
                    throw domain_error("trace: non-constant component within precision");
                acc.m_[(size_t)i] = 0;
            }
            acc.normalize();
        }
        return acc;
    }

    PadicScalar pow_ui(unsigned long e) const {
        PadicScalar r = one(R_);
        PadicScalar b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /// Reduce the assertion cap (forgetting digits); never raises it.
    PadicScalar reduce_cap(int cap) const {
        if (cap >= cap_) return *this;
        if (is_zero() || val_ >= cap) return zero(R_, cap);
        PadicScalar x = *this;
        x.cap_ = cap;
        x.R_->reduce_vec(x.m_, x.digits());
        x.normalize();
        return x;
    }

    /// Engine-internal: reassert a higher cap for a representative.  Sound only
    /// when the caller's functional precision analysis covers the claim.
    PadicScalar raise_cap_unchecked(int cap) const {
        PadicScalar x = *this;
        if (x.is_zero()) {
            x.val_ = cap;
            x.cap_ = cap;
        } else if (cap > x.cap_) {
            x.cap_ = (int)std::min((long)cap, (long)x.val_ + R_->Amax);
        }
        return x;
    }

    /// Canonical mantissa-coordinate list mod p^digits (empty for zero).
    std::vector<mpz_class> canonical() const {
        if (is_zero()) return {};
        std::vector<mpz_class> m = m_;
        R_->reduce_vec(m, digits());
        return m;
    }

    friend bool eq_mod_cap(const PadicScalar& a, const PadicScalar& b) {
        int cap = std::min(a.cap_, b.cap_);
        PadicScalar d = (a - b).reduce_cap(cap);
        return d.is_zero();
    }

    /// Residue in k (zero when val > 0; error when val < 0).
    KElem residue() const {
        if (cap_ < 1) throw precision_error("residue requested below one digit of precision");
        if (is_zero() || val_ > 0) return KElem::zero(R_);
        if (val_ < 0) throw domain_error("residue of non-integral scalar");
        std::vector<Int> c((size_t)R_->s);
        for (int i = 0; i < R_->s; ++i) {
            mpz_class r = m_[(size_t)i] % R_->p;
            if (r < 0) r += R_->p;
            c[(size_t)i] = (Int)r.get_si();
        }
        return KElem(R_, std::move(c));
    }

    /// Canonical integer in [0, p^M) for prime-subring values; requires
    /// val >= 0, cap >= M, and vanishing higher coordinates mod p^M.
    mpz_class to_int_mod(int Mdigits) const {
        if (cap_ < Mdigits)
            throw precision_error("value cap " + std::to_string(cap_) + " below requested p^" +
                                      std::to_string(Mdigits),
                                  -1, R_ ? R_->G + 2 : -1);
        if (is_zero() || val_ >= Mdigits) return 0;
        if (val_ < 0) throw domain_error("non-integral value where an integer was expected");
        const mpz_class& md = R_->ppw(Mdigits);
        const mpz_class& mdv = R_->ppw(Mdigits - val_);
        for (int i = 1; i < R_->s; ++i)
            if (m_[(size_t)i] % mdv != 0)
                throw domain_error("value not in the prime subring mod p^M");
        mpz_class r = (m_[0] % mdv) * R_->ppw(val_) % md;
        if (r < 0) r += md;
        return r;
    }

    /// Coordinates mod p^M in the power basis (length s), requires val >= 0.
    std::vector<mpz_class> to_poly_mod(int Mdigits) const {
        if (cap_ < Mdigits) throw precision_error("cap below requested p^M");
        std::vector<mpz_class> out((size_t)R_->s, mpz_class(0));
        if (is_zero() || val_ >= Mdigits) return out;
        if (val_ < 0) throw domain_error("non-integral value where W_M(k) was expected");
        const mpz_class& md = R_->ppw(Mdigits);
        for (int i = 0; i < R_->s; ++i) {
            out[(size_t)i] = m_[(size_t)i] * R_->ppw(val_) % md;
            if (out[(size_t)i] < 0) out[(size_t)i] += md;
        }
        return out;
    }

  private:
    static PadicScalar make(const CoeffRing* R, int val, int cap, std::vector<mpz_class> m) {
        PadicScalar x;
        x.R_ = R;
        x.val_ = val;
        // The mantissa only ever carries Amax digits, so a claim past
        // val + Amax is not computable; clamping here keeps caps absolute and
        // makes cancellation (valuation rise in normalize) lose digits instead
        // of silently floating the claim upward.
        x.cap_ = (int)std::min((long)cap, (long)val + R->Amax);
        x.m_ = std::move(m);
        x.normalize();
        return x;
    }

    // strip p factors from the mantissa, reduce mod p^digits, detect zero
    void normalize() {
        if (m_.empty()) {
            val_ = cap_;
            return;
        }
        for (;;) {
            if (val_ >= cap_) {
                m_.clear();
                val_ = cap_;
                return;
            }
            R_->reduce_vec(m_, digits());
            bool all_zero = true, div_p = true;
            for (const auto& x : m_) {
                if (x != 0) all_zero = false;
                if (x % R_->p != 0) div_p = false;
            }
            if (all_zero) {
                m_.clear();
                val_ = cap_;
                return;
            }
            if (!div_p) return;
            for (auto& x : m_) x /= R_->p;
            ++val_;
        }
    }

    const CoeffRing* R_ = nullptr;
    int val_ = 0;
    int cap_ = 0;
    std::vector<mpz_class> m_;  // empty = zero
};

/// Teichmueller lift of theta in k: the unique root of x^{p^s} = x reducing
/// to theta, computed to `digits` p-digits (default A).
inline PadicScalar teichmuller(const CoeffRing* R, const KElem& theta, int digits = -1) {
    if (digits < 0) digits = R->A;
    digits = std::min(digits, R->Amax);
    if (theta.is_zero()) return PadicScalar::zero(R, digits);
    std::vector<mpz_class> z((size_t)R->s, mpz_class(0));
    for (int i = 0; i < R->s; ++i) z[(size_t)i] = theta.coords()[(size_t)i];
    mpz_class q = detail::pow_mpz(mpz_class(R->p), (unsigned long)R->s);
    for (int it = 0; it <= digits + 1; ++it) {
        auto nz = R->pow_vec(z, q, digits);
        if (nz == z) break;
        z = std::move(nz);
    }
    return PadicScalar::from_poly(R, std::move(z), 0, digits);
}

/// Build the coefficient ring.  seed_poly: monic irreducible polynomial over
/// F_p, coefficients low-to-high, length s+1.  extra_digits controls the
/// internal headroom A_max = A + extra_digits used by exp/log engines.
inline RingPtr make_ring(Int p, int s, int M, int G, std::vector<Int> seed_poly,
                         int extra_digits = 48) {
    if (p < 3 || p % 2 == 0 || !detail::is_small_prime(p))
        throw domain_error("p must be an odd prime");
    if (s < 1 || M < 1 || G < 1) throw domain_error("require s >= 1, M >= 1, G >= 1");
    if ((int)seed_poly.size() != s + 1) throw domain_error("seed polynomial must have degree s");
    for (auto& c : seed_poly) c = ((c % p) + p) % p;
    if (seed_poly.back() != 1) throw domain_error("seed polynomial must be monic");
    if (!detail::fp_irreducible(seed_poly, p)) throw domain_error("seed polynomial is reducible");

    auto R = std::make_shared<CoeffRing>();
    R->p = p;
    R->s = s;
    R->M = M;
    R->G = G;
    R->A = M + G;
    R->Amax = R->A + std::max(extra_digits, 8);
    R->seed = seed_poly;
    R->ppow.resize((size_t)R->Amax + 1);
    R->ppow[0] = 1;
    for (int i = 1; i <= R->Amax; ++i) R->ppow[(size_t)i] = R->ppow[(size_t)i - 1] * p;
    R->pA = R->ppow[(size_t)R->A];
    R->pAmax = R->ppow[(size_t)R->Amax];

    // Work ring with the naive lift of the seed; find the Teichmueller
    // generator there, then take its characteristic polynomial.
    CoeffRing W = *R;
    W.modulus.assign((size_t)s, mpz_class(0));
    for (int i = 0; i < s; ++i) W.modulus[(size_t)i] = seed_poly[(size_t)i];
    mpz_class q = detail::pow_mpz(mpz_class(p), (unsigned long)s);

    std::vector<mpz_class> z((size_t)s, mpz_class(0));
    if (s == 1)
        z[0] = (p - seed_poly[0]) % p;  // the root of X + c
    else
        z[1] = 1;
    {
        bool fixed = false;
        for (int it = 0; it <= W.Amax + 1; ++it) {
            auto nz = W.pow_vec(z, q, W.Amax);
            if (nz == z) {
                fixed = true;
                break;
            }
            z = std::move(nz);
        }
        if (!fixed) throw domain_error("Teichmueller iteration failed to converge");
    }

    // modulus = prod_{i<s} (X - z^{p^i}), expanded over the work ring
    std::vector<std::vector<mpz_class>> poly;  // coefficients in W, low-to-high
    poly.push_back({std::vector<mpz_class>((size_t)s, mpz_class(0))});
    poly[0][0] = 1;  // constant polynomial 1
    std::vector<mpz_class> conj = z;
    for (int i = 0; i < s; ++i) {
        std::vector<std::vector<mpz_class>> next(poly.size() + 1,
                                                 std::vector<mpz_class>((size_t)s, mpz_class(0)));
        for (size_t d = 0; d < poly.size(); ++d) {
            // X * poly
            for (int c = 0; c < s; ++c) next[d + 1][(size_t)c] += poly[d][(size_t)c];
            // -conj * poly
            auto t = W.mul_vec(poly[d], conj, W.Amax);
            for (int c = 0; c < s; ++c) next[d][(size_t)c] -= t[(size_t)c];
        }
        for (auto& v : next) W.reduce_vec(v, W.Amax);
        poly = std::move(next);
        conj = W.pow_vec(conj, p, W.Amax);
    }
    if (poly.size() != (size_t)s + 1) throw domain_error("internal: characteristic poly degree");
    R->modulus.assign((size_t)s, mpz_class(0));
    for (int d = 0; d < s; ++d) {
        for (int c = 1; c < s; ++c)
            if (poly[(size_t)d][(size_t)c] % R->pAmax != 0)
                throw domain_error("internal: modulus coefficient not in the prime subring");
        R->modulus[(size_t)d] = poly[(size_t)d][0] % R->pAmax;
        if (R->modulus[(size_t)d] < 0) R->modulus[(size_t)d] += R->pAmax;
    }

    R->modulus_p.assign((size_t)s + 1, 0);
    for (int d = 0; d < s; ++d)
        R->modulus_p[(size_t)d] = (Int)mpz_class(R->modulus[(size_t)d] % p).get_si();
    R->modulus_p[(size_t)s] = 1;
    // sanity: modulus reduces to the seed mod p
    for (int d = 0; d <= s; ++d)
        if (R->modulus_p[(size_t)d] != seed_poly[(size_t)d])
            throw domain_error("internal: Hensel-lifted modulus does not reduce to the seed");

    // generator must be Teichmueller in the new presentation
    {
        std::vector<mpz_class> x((size_t)s, mpz_class(0));
        if (s == 1) {
            mpz_class root = (R->pAmax - R->modulus[0]) % R->pAmax;
            x[0] = root;
        } else {
            x[1] = 1;
        }
        auto xq = R->pow_vec(x, q, R->Amax);
        if (xq != x) throw domain_error("internal: generator is not a Teichmueller element");
    }

    // sigma columns: sigma(X^j) = X^{jp} mod modulus
    R->sigma_col.resize((size_t)s);
    for (int j = 0; j < s; ++j) {
        std::vector<mpz_class> x((size_t)s, mpz_class(0));
        if (s == 1) {
            R->sigma_col[0].assign(1, mpz_class(1));
            continue;
        }
        x[1] = 1;
        R->sigma_col[(size_t)j] = R->pow_vec(x, mpz_class(p) * j, R->Amax);
    }

    return R;
}

/// The canonical generator [g] of the ring (Teichmueller by construction).
inline PadicScalar ring_generator(const CoeffRing* R) {
    if (R->s == 1) {
        mpz_class root = (R->pAmax - R->modulus[0]) % R->pAmax;
        std::vector<mpz_class> m{root};
        return PadicScalar::from_poly(R, std::move(m), 0, R->A);
    }
    std::vector<mpz_class> m((size_t)R->s, mpz_class(0));
    m[1] = 1;
    return PadicScalar::from_poly(R, std::move(m), 0, R->A);
}

}  // namespace vostok
