#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tcr {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class Num>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Num value{};
    std::vector<Num> x;     // primal
    std::vector<Num> dual;  // one per constraint row
    std::size_t pivots = 0;
};

/// Exact two-phase simplex for: maximise c.x subject to A x <= b, x >= 0.
/// Entering and leaving variables follow Bland's rule (smallest index), which
/// terminates without an epsilon and makes the returned vertex deterministic.
template <class Num>
class Simplex {
public:
    Simplex(const std::vector<std::vector<Num>>& a, const std::vector<Num>& b, const std::vector<Num>& c)
        : m_(b.size()), n_(c.size()), nonbasic_(n_ + 1), basic_(m_), d_(m_ + 2, std::vector<Num>(n_ + 2)) {
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
        for (std::size_t i = 0; i < m_; ++i) {
            basic_[i] = static_cast<long>(n_ + i);
            d_[i][n_] = -1;
            d_[i][n_ + 1] = b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            nonbasic_[j] = static_cast<long>(j);
            d_[m_][j] = -c[j];
        }
        nonbasic_[n_] = -1;  // auxiliary variable of phase one
        d_[m_ + 1][n_] = 1;
    }

    LpSolution<Num> solve() {
        LpSolution<Num> out;
        std::size_t r = 0;
        for (std::size_t i = 1; i < m_; ++i)
            if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
        if (m_ > 0 && d_[r][n_ + 1] < 0) {
            pivot(r, n_);
            if (!run(1) || d_[m_ + 1][n_ + 1] < 0) {
                out.status = LpStatus::Infeasible;
                out.pivots = pivots_;
                return out;
            }
            for (std::size_t i = 0; i < m_; ++i)
                if (basic_[i] == -1) {
                    std::size_t s = 0;
                    bool have = false;
                    for (std::size_t j = 0; j <= n_; ++j)
                        if (d_[i][j] != 0 && (!have || nonbasic_[j] < nonbasic_[s])) s = j, have = true;
                    if (have) pivot(i, s);
                }
        }
        if (!run(2)) {
            out.status = LpStatus::Unbounded;
            out.pivots = pivots_;
            return out;
        }
        out.status = LpStatus::Optimal;
        out.x.assign(n_, Num(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basic_[i] >= 0 && basic_[i] < static_cast<long>(n_)) out.x[basic_[i]] = d_[i][n_ + 1];
        out.dual.assign(m_, Num(0));
        for (std::size_t j = 0; j <= n_; ++j)
            if (nonbasic_[j] >= static_cast<long>(n_)) out.dual[nonbasic_[j] - n_] = d_[m_][j];
        out.value = d_[m_][n_ + 1];
        out.pivots = pivots_;
        return out;
    }

private:
    void pivot(std::size_t r, std::size_t s) {
        ++pivots_;
        Num inv = Num(1) / d_[r][s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r || d_[i][s] == 0) continue;
            Num factor = d_[i][s] * inv;
            for (std::size_t j = 0; j < n_ + 2; ++j)
                if (j != s && d_[r][j] != 0) d_[i][j] -= d_[r][j] * factor;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j)
            if (j != s) d_[r][j] *= inv;
        for (std::size_t i = 0; i < m_ + 2; ++i)
            if (i != r) d_[i][s] *= -inv;
        d_[r][s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    bool run(int phase) {
        const std::size_t row = phase == 1 ? m_ + 1 : m_;
        while (true) {
            long s = -1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (phase == 2 && nonbasic_[j] == -1) continue;
                if (d_[row][j] < 0 && (s < 0 || nonbasic_[j] < nonbasic_[s])) s = static_cast<long>(j);
            }
            if (s < 0) return true;
            long r = -1;
            Num best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!(d_[i][s] > 0)) continue;
                Num ratio = d_[i][n_ + 1] / d_[i][s];
                if (r < 0 || ratio < best || (ratio == best && basic_[i] < basic_[r]))
                    r = static_cast<long>(i), best = ratio;
            }
            if (r < 0) return false;
            pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
        }
    }

    std::size_t m_, n_;
    std::vector<long> nonbasic_, basic_;
    std::vector<std::vector<Num>> d_;
    std::size_t pivots_ = 0;
};

template <class Num>
LpSolution<Num> solve_lp(const std::vector<std::vector<Num>>& a, const std::vector<Num>& b, const std::vector<Num>& c) {
    return Simplex<Num>(a, b, c).solve();
}

}  // namespace tcr
