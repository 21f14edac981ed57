#pragma once

#include <functional>
#include <optional>

#include "rational.hpp"

namespace tourglue {

// Exact-rational simplex over a growing column pool, built for convex
// decomposition: rows are edge-value equations plus a convexity row, columns
// are incidence vectors of family members. Artificial columns provide the
// initial basis and the phase-1 objective; Bland's rule everywhere, so runs
// are deterministic and terminating. The basis inverse is kept explicitly
// (m is small at desk scale).
class ColumnLP {
public:
    explicit ColumnLP(std::vector<Rat> rhs) : m_((int)rhs.size()), b_(std::move(rhs)) {
        for (const Rat& v : b_)
            if (v < 0) throw std::invalid_argument("ColumnLP needs rhs >= 0");
        binv_.assign(m_, std::vector<Rat>(m_, Rat(0)));
        for (int i = 0; i < m_; ++i) binv_[i][i] = 1;
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) basis_[i] = i;  // columns 0..m-1 are artificial
        xb_ = b_;
    }

    int rows() const { return m_; }
    int num_columns() const { return (int)cols_.size(); }

    int add_column(std::vector<Rat> a) {
        if ((int)a.size() != m_) throw std::invalid_argument("column size mismatch");
        cols_.push_back(std::move(a));
        return m_ + (int)cols_.size() - 1;
    }

    // Phase 1: minimize total artificial mass over the current pool.
    // Returns the remaining artificial mass (0 = the pool spans the target).
    Rat solve_phase1() {
        run(/*phase2=*/false, {});
        return artificial_mass();
    }

    Rat artificial_mass() const {
        Rat s = 0;
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < m_) s += xb_[i];
        return s;
    }

    bool feasible() const { return artificial_mass() == 0; }

    // Phase-1 duals: y = c_B B^{-1} with artificial cost 1, real cost 0.
    // A new column a improves iff y.a > 0; if sup y.a <= 0 over the family,
    // y is a Farkas witness of infeasibility (y.b > 0).
    std::vector<Rat> duals_phase1() const {
        std::vector<Rat> y(m_, Rat(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < m_)
                for (int j = 0; j < m_; ++j) y[j] += binv_[i][j];
        return y;
    }

    // Phase 2: minimize cost over real columns (cost[j] for column id m+j);
    // artificial columns are barred from entering. Requires feasibility.
    void optimize(const std::vector<Rat>& cost) {
        if (!feasible()) throw std::logic_error("optimize before feasibility");
        if ((int)cost.size() != (int)cols_.size())
            throw std::invalid_argument("cost size mismatch");
        run(/*phase2=*/true, cost);
    }

    // Current basic solution restricted to real columns: (pool index, value).
    std::vector<std::pair<int, Rat>> solution() const {
        std::vector<std::pair<int, Rat>> out;
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= m_ && xb_[i] > 0) out.emplace_back(basis_[i] - m_, xb_[i]);
        return out;
    }

private:
    const std::vector<Rat>& column(int id) const { return cols_[id - m_]; }

    Rat reduced_cost(int id, const std::vector<Rat>& y, bool phase2,
                     const std::vector<Rat>& cost) const {
        Rat c = phase2 ? cost[id - m_] : Rat(0);
        const auto& a = column(id);
        for (int i = 0; i < m_; ++i)
            if (a[i] != 0) c -= y[i] * a[i];
        return c;
    }

    std::vector<Rat> dual_vector(bool phase2, const std::vector<Rat>& cost) const {
        std::vector<Rat> y(m_, Rat(0));
        for (int i = 0; i < m_; ++i) {
            Rat cb = basis_[i] < m_ ? (phase2 ? Rat(0) : Rat(1))
                                    : (phase2 ? cost[basis_[i] - m_] : Rat(0));
            if (cb != 0)
                for (int j = 0; j < m_; ++j) y[j] += cb * binv_[i][j];
        }
        return y;
    }

    void run(bool phase2, const std::vector<Rat>& cost) {
        while (true) {
            std::vector<Rat> y = dual_vector(phase2, cost);
            int enter = -1;
            // Bland: smallest column id with negative reduced cost.
            // Artificials (ids < m) may re-enter in phase 1 only.
            if (!phase2) {
                for (int id = 0; id < m_ && enter == -1; ++id)
                    if (!is_basic(id) && Rat(1) - y[id] < 0) enter = id;
            }
            if (enter == -1) {
                for (int j = 0; j < (int)cols_.size(); ++j) {
                    int id = m_ + j;
                    if (is_basic(id)) continue;
                    if (reduced_cost(id, y, phase2, cost) < 0) {
                        enter = id;
                        break;
                    }
                }
            }
            if (enter == -1) return;
            pivot_in(enter);
        }
    }

    bool is_basic(int id) const {
        for (int i = 0; i < m_; ++i)
            if (basis_[i] == id) return true;
        return false;
    }

    void pivot_in(int enter) {
        std::vector<Rat> d(m_, Rat(0));
        if (enter < m_) {
            for (int i = 0; i < m_; ++i) d[i] = binv_[i][enter];
        } else {
            const auto& a = column(enter);
            for (int i = 0; i < m_; ++i)
                for (int j = 0; j < m_; ++j)
                    if (a[j] != 0) d[i] += binv_[i][j] * a[j];
        }
        int leave = -1;
        Rat best;
        for (int i = 0; i < m_; ++i) {
            if (d[i] <= 0) continue;
            Rat ratio = xb_[i] / d[i];
            if (leave == -1 || ratio < best ||
                (ratio == best && basis_[i] < basis_[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == -1) throw std::logic_error("unbounded pivot in bounded LP");
        // eta update of B^{-1} and x_B
        Rat piv = d[leave];
        for (int j = 0; j < m_; ++j) binv_[leave][j] /= piv;
        xb_[leave] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == leave || d[i] == 0) continue;
            Rat f = d[i];
            for (int j = 0; j < m_; ++j) binv_[i][j] -= f * binv_[leave][j];
            xb_[i] -= f * xb_[leave];
        }
        basis_[leave] = enter;
    }

    int m_;
    std::vector<Rat> b_;
    std::vector<std::vector<Rat>> cols_;
    std::vector<std::vector<Rat>> binv_;
    std::vector<int> basis_;
    std::vector<Rat> xb_;
};

}  // namespace tourglue
