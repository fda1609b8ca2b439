#include "lp.hpp"

namespace hdl {

namespace {

// Dense exact simplex tableau with Bland's rule.
struct Tableau {
    size_t m, n_total;
    Mat T;                    // m x n_total
    std::vector<Rat> b;       // m
    std::vector<size_t> basis;

    // Minimize cost.x given reduced costs already consistent with the basis.
    // Returns false on unboundedness.
    bool run(std::vector<Rat>& cost, Rat& obj) {
        while (true) {
            size_t enter = n_total;
            for (size_t j = 0; j < n_total; ++j)
                if (cost[j] < 0) { enter = j; break; }
            if (enter == n_total) return true;
            size_t leave = m;
            Rat best;
            for (size_t i = 0; i < m; ++i) {
                if (T[i][enter] <= 0) continue;
                Rat ratio = b[i] / T[i][enter];
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave]))
                    { leave = i; best = ratio; }
            }
            if (leave == m) return false;
            pivot(leave, enter, cost, obj);
        }
    }

    void pivot(size_t leave, size_t enter, std::vector<Rat>& cost, Rat& obj) {
        Rat piv = T[leave][enter];
        for (size_t j = 0; j < n_total; ++j) T[leave][j] /= piv;
        b[leave] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (size_t j = 0; j < n_total; ++j) T[i][j] -= f * T[leave][j];
            b[i] -= f * b[leave];
        }
        Rat fc = cost[enter];
        if (fc != 0) {
            for (size_t j = 0; j < n_total; ++j) cost[j] -= fc * T[leave][j];
            obj -= fc * b[leave];
        }
        basis[leave] = enter;
    }
};

// Phase I: returns a tableau with a feasible basis, or nullopt if infeasible.
std::optional<Tableau> phase1(const Mat& A0, const std::vector<Rat>& b0, size_t n) {
    const size_t m = A0.size();
    Mat A = A0;
    std::vector<Rat> b = b0;
    for (size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (size_t j = 0; j < n; ++j) A[i][j] = -A[i][j];
            b[i] = -b[i];
        }
    Tableau t;
    t.m = m;
    t.n_total = n + m;
    t.T.assign(m, std::vector<Rat>(t.n_total, Rat(0)));
    t.b = b;
    t.basis.resize(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) t.T[i][j] = A[i][j];
        t.T[i][n + i] = 1;
        t.basis[i] = n + i;
    }
    std::vector<Rat> cost(t.n_total, Rat(0));
    Rat obj = 0;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) cost[j] -= t.T[i][j];
        obj -= t.b[i];
    }
    t.run(cost, obj); // Phase I is never unbounded
    if (obj != 0) return std::nullopt;
    // Drive remaining artificial variables out of the basis where possible.
    for (size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n) continue;
        size_t enter = n;
        for (size_t j = 0; j < n; ++j)
            if (t.T[i][j] != 0) { enter = j; break; }
        if (enter == n) continue; // redundant row, harmless
        std::vector<Rat> dummy(t.n_total, Rat(0));
        Rat dobj = 0;
        t.pivot(i, enter, dummy, dobj);
    }
    return t;
}

} // namespace

bool lp_feasible(const Mat& A, const std::vector<Rat>& b) {
    const size_t n = A.empty() ? 0 : A[0].size();
    if (A.empty()) return true;
    return phase1(A, b, n).has_value();
}

std::optional<Rat> lp_max(const Mat& A, const std::vector<Rat>& b,
                          const std::vector<Rat>& c) {
    const size_t n = A.empty() ? c.size() : A[0].size();
    auto t1 = phase1(A, b, n);
    if (!t1) return std::nullopt;
    // Drop artificial columns (and the redundant rows still carrying an
    // artificial basis variable) before Phase II.
    Tableau t;
    t.n_total = n;
    for (size_t i = 0; i < t1->m; ++i) {
        if (t1->basis[i] >= n) continue; // redundant row
        std::vector<Rat> row(t1->T[i].begin(), t1->T[i].begin() + n);
        t.T.push_back(std::move(row));
        t.b.push_back(t1->b[i]);
        t.basis.push_back(t1->basis[i]);
    }
    t.m = t.T.size();
    // Phase II: minimize -c.x.
    std::vector<Rat> cost(n);
    for (size_t j = 0; j < n; ++j) cost[j] = -c[j];
    Rat obj = 0;
    for (size_t i = 0; i < t.m; ++i) {
        if (cost[t.basis[i]] == 0) continue;
        Rat f = cost[t.basis[i]];
        for (size_t j = 0; j < n; ++j) cost[j] -= f * t.T[i][j];
        obj -= f * t.b[i];
    }
    if (!t.run(cost, obj))
        throw Error(ErrorCode::InvalidInput, "lp_max: unbounded program");
    return -obj;
}

} // namespace hdl
