#pragma once

// Logarithmic differential forms in d_log coordinates and the N-dimensional
// residue.  A LogForm stores the coordinate vector (g_1, ..., g_N) of
// sum g_i d_log t_i; a TopForm stores the density f of the top-degree form
// f d_log t_1 ^ ... ^ d_log t_N.  In this basis the residue is the constant
// coefficient of the density (the t^(-1,...,-1) coefficient in the dt basis).

#include <string>
#include <utility>
#include <vector>

#include "vostok/errors.hpp"
#include "vostok/laurent.hpp"

namespace vostok {

/// Coordinate vector of a 1-form against the d_log t_i basis.
class LogForm {
  public:
    LogForm(PolicyPtr P, std::vector<LaurentSeries> coords) : P_(std::move(P)), c_(std::move(coords)) {
        if ((int)c_.size() != P_->N)
            throw domain_error("LogForm: need one coordinate per variable");
        for (const auto& g : c_)
            if (!same_policy(g.policy(), P_))
                throw domain_error("LogForm: coordinate policy mismatch");
    }

    static LogForm zero(PolicyPtr P) {
        std::vector<LaurentSeries> c((size_t)P->N, LaurentSeries::zero(P));
        return LogForm(std::move(P), std::move(c));
    }

    /// d_log t_i (1-based i).
    static LogForm basis(PolicyPtr P, int i) {
        if (i < 1 || i > P->N) throw domain_error("LogForm: variable index out of range");
        std::vector<LaurentSeries> c((size_t)P->N, LaurentSeries::zero(P));
        c[(size_t)(i - 1)] = LaurentSeries::one(P);
        return LogForm(std::move(P), std::move(c));
    }

    const PolicyPtr& policy() const { return P_; }
    const std::vector<LaurentSeries>& coords() const { return c_; }
    const LaurentSeries& coord(int i) const { return c_[(size_t)(i - 1)]; }

    LogForm operator+(const LogForm& o) const {
        std::vector<LaurentSeries> c;
        c.reserve(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) c.push_back(c_[i] + o.c_[i]);
        return LogForm(P_, std::move(c));
    }

    LogForm neg() const {
        std::vector<LaurentSeries> c;
        c.reserve(c_.size());
        for (const auto& g : c_) c.push_back(g.neg());
        return LogForm(P_, std::move(c));
    }

    /// f * omega, coordinatewise.
    LogForm scaled(const LaurentSeries& f) const {
        std::vector<LaurentSeries> c;
        c.reserve(c_.size());
        for (const auto& g : c_) c.push_back(f * g);
        return LogForm(P_, std::move(c));
    }

  private:
    PolicyPtr P_;
    std::vector<LaurentSeries> c_;
};

/// Top-degree form f d_log t_1 ^ ... ^ d_log t_N, stored by its density f.
class TopForm {
  public:
    explicit TopForm(LaurentSeries density) : f_(std::move(density)) {}

    const LaurentSeries& density() const { return f_; }
    const PolicyPtr& policy() const { return f_.policy(); }

    TopForm operator+(const TopForm& o) const { return TopForm(f_ + o.f_); }
    TopForm operator-(const TopForm& o) const { return TopForm(f_ - o.f_); }
    TopForm neg() const { return TopForm(f_.neg()); }
    TopForm scaled(const LaurentSeries& f) const { return TopForm(f * f_); }

  private:
    LaurentSeries f_;
};

/// Logarithmic derivative coordinates: dlog(u)_i = t_i du/dt_i * u^{-1}.
/// Additive on products.
inline LogForm dlog(const LaurentSeries& u) {
    const auto& P = u.policy();
    LaurentSeries v = invert(u);
    std::vector<LaurentSeries> c;
    c.reserve((size_t)P->N);
    for (int i = 1; i <= P->N; ++i) c.push_back(t_partial(u, i) * v);
    return LogForm(P, std::move(c));
}

/// The differential of a function in the d_log basis:
/// dg = sum t_i dg/dt_i d_log t_i.
inline LogForm differential(const LaurentSeries& g) {
    const auto& P = g.policy();
    std::vector<LaurentSeries> c;
    c.reserve((size_t)P->N);
    for (int i = 1; i <= P->N; ++i) c.push_back(t_partial(g, i));
    return LogForm(P, std::move(c));
}

/// (sigma/p) d_log u.  Because d_log(t_i^p) = p d_log t_i, applying the
/// Frobenius substitution to u multiplies each d_log coordinate by p as a
/// form; dividing back by p leaves exactly the sigma-substitution of the
/// coordinates of dlog(u).  No division by p ever occurs.
inline LogForm sigma_over_p_dlog(const LaurentSeries& u) {
    LogForm w = dlog(u);
    std::vector<LaurentSeries> c;
    c.reserve(w.coords().size());
    for (const auto& g : w.coords()) c.push_back(sigma_subst(g));
    return LogForm(w.policy(), std::move(c));
}

namespace detail {

/// Determinant by cofactor expansion along the first remaining row.
inline LaurentSeries det_minor(const std::vector<const LogForm*>& rows, size_t r,
                               std::vector<int>& cols) {
    const auto& P = rows[r]->policy();
    if (cols.size() == 1) return rows[r]->coord(cols[0]);
    LaurentSeries acc = LaurentSeries::zero(P);
    for (size_t k = 0; k < cols.size(); ++k) {
        const LaurentSeries& entry = rows[r]->coord(cols[k]);
        if (entry.is_zero()) continue;
        int col = cols[k];
        cols.erase(cols.begin() + (long)k);
        LaurentSeries m = entry * det_minor(rows, r + 1, cols);
        cols.insert(cols.begin() + (long)k, col);
        acc = (k % 2 == 0) ? acc + m : acc - m;
    }
    return acc;
}

}  // namespace detail

/// Wedge of N 1-forms: the density is the determinant of the coordinate
/// matrix (row j = coordinates of the j-th form).  Alternating and
/// multilinear over LaurentSeries.
inline TopForm wedge_top(const std::vector<LogForm>& forms) {
    if (forms.empty()) throw domain_error("wedge_top: no forms given");
    const auto& P = forms.front().policy();
    if ((int)forms.size() != P->N)
        throw domain_error("wedge_top: need exactly N = " + std::to_string(P->N) + " forms");
    std::vector<const LogForm*> rows;
    rows.reserve(forms.size());
    for (const auto& w : forms) {
        if (!same_policy(w.policy(), P)) throw domain_error("wedge_top: policy mismatch");
        rows.push_back(&w);
    }
    std::vector<int> cols;
    for (int i = 1; i <= P->N; ++i) cols.push_back(i);
    return TopForm(detail::det_minor(rows, 0, cols));
}

/// The residue: the t^0 coefficient of the density in the d_log basis.
/// Errors if that coefficient is not inside the certified region.
inline PadicScalar residue(const TopForm& w) {
    const auto& f = w.density();
    const auto& P = f.policy();
    for (Int lb : P->lower_bound)
        if (lb > 0)
            throw precision_error("residue: the constant index lies below the exponent floor");
    return f.coefficient_at(MultiIndex((size_t)P->N, 0));
}

/// Tr compose Res, valued in the prime subring Z/p^cap.
inline PadicScalar trace_residue(const TopForm& w) { return residue(w).trace(); }

}  // namespace vostok
