#include "wardsim/detail/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace wardsim::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-8;

enum class VarState : unsigned char { at_lower, at_upper, basic };

class Simplex {
 public:
  explicit Simplex(const LpProblem& p) : p_(p), m_(p.rows()) {
    const int ns = p_.structurals();
    // Column layout: structurals, slacks for <= rows, one artificial per row.
    n_total_ = ns;
    slack_of_row_.assign(m_, -1);
    for (int r = 0; r < m_; ++r)
      if (p_.sense[r] == RowSense::le) {
        slack_of_row_[r] = n_total_++;
        row_of_slack_.push_back(r);
      }
    art_begin_ = n_total_;
    n_total_ += m_;

    lower_.assign(n_total_, 0.0);
    upper_.assign(n_total_, kInf);
    for (int j = 0; j < ns; ++j) {
      lower_[j] = p_.lower[j];
      upper_[j] = p_.upper[j];
    }
    state_.assign(n_total_, VarState::at_lower);
    basis_.assign(m_, -1);
    basic_pos_.assign(n_total_, -1);

    // Artificial signs make the initial basic solution nonnegative.
    art_sign_.assign(m_, 1.0);
    std::vector<double> residual = p_.rhs;
    for (int j = 0; j < ns; ++j) {
      if (lower_[j] == 0.0) continue;
      const auto& col = p_.cols[j];
      for (std::size_t k = 0; k < col.rows.size(); ++k)
        residual[col.rows[k]] -= col.coef[k] * lower_[j];
    }
    for (int r = 0; r < m_; ++r) {
      if (residual[r] < 0.0) art_sign_[r] = -1.0;
      const int a = art_begin_ + r;
      basis_[r] = a;
      basic_pos_[a] = r;
      state_[a] = VarState::basic;
    }
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) binv_[static_cast<std::size_t>(r) * m_ + r] = art_sign_[r];

    xb_.assign(m_, 0.0);
    work_.assign(m_, 0.0);
  }

  LpResult run() {
    LpResult res;
    phase_one_ = true;
    if (!iterate()) {
      res.status = LpStatus::infeasible;
      res.iterations = iterations_;
      return res;
    }
    compute_xb();
    double art_total = 0.0;
    for (int r = 0; r < m_; ++r)
      if (basis_[r] >= art_begin_) art_total += std::abs(xb_[r]);
    if (art_total > kFeasTol * (1.0 + norm_rhs())) {
      res.status = LpStatus::infeasible;
      res.iterations = iterations_;
      return res;
    }
    // Pin artificials; any still basic are stuck at zero.
    for (int a = art_begin_; a < n_total_; ++a) upper_[a] = 0.0;

    phase_one_ = false;
    stall_ = 0;
    bland_ = false;
    if (!iterate()) {
      res.status = LpStatus::unbounded;
      res.iterations = iterations_;
      return res;
    }

    compute_xb();
    res.status = LpStatus::optimal;
    res.x.assign(p_.structurals(), 0.0);
    for (int j = 0; j < p_.structurals(); ++j) res.x[j] = value_of(j);
    res.objective = 0.0;
    for (int j = 0; j < p_.structurals(); ++j) res.objective += p_.obj[j] * res.x[j];
    res.iterations = iterations_;
    return res;
  }

 private:
  double norm_rhs() const {
    double s = 0.0;
    for (double b : p_.rhs) s += std::abs(b);
    return s;
  }

  double cost_of(int j) const {
    if (phase_one_) return j >= art_begin_ ? 1.0 : 0.0;
    return j < p_.structurals() ? p_.obj[j] : 0.0;
  }

  // Sparse column j of the full system.
  void column(int j, std::vector<int>& rows, std::vector<double>& coef) const {
    rows.clear();
    coef.clear();
    if (j < p_.structurals()) {
      const auto& col = p_.cols[j];
      rows = col.rows;
      coef = col.coef;
    } else if (j < art_begin_) {
      for (int r = 0; r < m_; ++r)
        if (slack_of_row_[r] == j) {
          rows.push_back(r);
          coef.push_back(1.0);
          break;
        }
    } else {
      rows.push_back(j - art_begin_);
      coef.push_back(art_sign_[j - art_begin_]);
    }
  }

  double value_of(int j) const {
    if (state_[j] == VarState::basic) return xb_[basic_pos_[j]];
    return state_[j] == VarState::at_lower ? lower_[j] : upper_[j];
  }

  // y . A_j without materializing the column.
  double dot_with_column(const std::vector<double>& y, int j) const {
    if (j < p_.structurals()) {
      const auto& col = p_.cols[j];
      double s = 0.0;
      for (std::size_t k = 0; k < col.rows.size(); ++k) s += y[col.rows[k]] * col.coef[k];
      return s;
    }
    if (j < art_begin_) return y[row_of_slack_[j - p_.structurals()]];
    return art_sign_[j - art_begin_] * y[j - art_begin_];
  }

  void compute_xb() {
    // x_B = Binv * (b - N x_N)
    std::vector<double> rhs = p_.rhs;
    std::vector<int> rows;
    std::vector<double> coef;
    for (int j = 0; j < n_total_; ++j) {
      if (state_[j] == VarState::basic) continue;
      const double v = state_[j] == VarState::at_lower ? lower_[j] : upper_[j];
      if (v == 0.0) continue;
      column(j, rows, coef);
      for (std::size_t k = 0; k < rows.size(); ++k) rhs[rows[k]] -= coef[k] * v;
    }
    for (int r = 0; r < m_; ++r) {
      double s = 0.0;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int c = 0; c < m_; ++c) s += row[c] * rhs[c];
      xb_[r] = s;
    }
  }

  void compute_duals(std::vector<double>& y) const {
    // y = c_B' * Binv
    y.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double cb = cost_of(basis_[r]);
      if (cb == 0.0) continue;
      const double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (int c = 0; c < m_; ++c) y[c] += cb * row[c];
    }
  }

  double reduced_cost(int j, const std::vector<double>& y, std::vector<int>& rows,
                      std::vector<double>& coef) const {
    column(j, rows, coef);
    double d = cost_of(j);
    for (std::size_t k = 0; k < rows.size(); ++k) d -= y[rows[k]] * coef[k];
    return d;
  }

  void ftran(const std::vector<int>& rows, const std::vector<double>& coef,
             std::vector<double>& out) const {
    out.assign(m_, 0.0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const int c = rows[k];
      const double v = coef[k];
      for (int r = 0; r < m_; ++r) out[r] += binv_[static_cast<std::size_t>(r) * m_ + c] * v;
    }
  }

  void refactorize() {
    // Rebuild Binv from the basis columns by Gauss-Jordan elimination.
    std::vector<double> mat(static_cast<std::size_t>(m_) * 2 * m_, 0.0);
    std::vector<int> rows;
    std::vector<double> coef;
    const int w = 2 * m_;
    for (int c = 0; c < m_; ++c) {
      column(basis_[c], rows, coef);
      for (std::size_t k = 0; k < rows.size(); ++k)
        mat[static_cast<std::size_t>(rows[k]) * w + c] = coef[k];
    }
    for (int r = 0; r < m_; ++r) mat[static_cast<std::size_t>(r) * w + m_ + r] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      double best = std::abs(mat[static_cast<std::size_t>(col) * w + col]);
      for (int r = col + 1; r < m_; ++r) {
        const double v = std::abs(mat[static_cast<std::size_t>(r) * w + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-12) throw std::runtime_error("simplex: singular basis during refactorization");
      if (piv != col)
        for (int c = 0; c < w; ++c)
          std::swap(mat[static_cast<std::size_t>(piv) * w + c],
                    mat[static_cast<std::size_t>(col) * w + c]);
      const double inv = 1.0 / mat[static_cast<std::size_t>(col) * w + col];
      for (int c = 0; c < w; ++c) mat[static_cast<std::size_t>(col) * w + c] *= inv;
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = mat[static_cast<std::size_t>(r) * w + col];
        if (f == 0.0) continue;
        for (int c = 0; c < w; ++c)
          mat[static_cast<std::size_t>(r) * w + c] -= f * mat[static_cast<std::size_t>(col) * w + c];
      }
    }
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < m_; ++c)
        binv_[static_cast<std::size_t>(r) * m_ + c] = mat[static_cast<std::size_t>(r) * w + m_ + c];
  }

  // One simplex phase; returns false on infeasibility signal (phase 1 never
  // returns false) or unboundedness (phase 2).
  bool iterate() {
    std::vector<double> y;
    std::vector<int> rows;
    std::vector<double> coef;
    std::vector<double> dir;
    const int max_iters = 20000 + 200 * (m_ + n_total_);
    int since_refactor = 0;

    while (true) {
      if (++iterations_ > max_iters)
        throw std::runtime_error("simplex: iteration limit exceeded");
      if (++since_refactor >= 120) {
        refactorize();
        since_refactor = 0;
      }
      compute_xb();
      compute_duals(y);

      // Entering variable.
      int enter = -1;
      double best_violation = bland_ ? 0.0 : kCostTol;
      bool enter_from_lower = true;
      for (int j = 0; j < n_total_; ++j) {
        if (state_[j] == VarState::basic) continue;
        if (lower_[j] == upper_[j]) continue;  // fixed
        if (phase_one_ == false && j >= art_begin_) continue;
        const double d = reduced_cost(j, y, rows, coef);
        if (state_[j] == VarState::at_lower && d < -best_violation) {
          if (bland_) {
            enter = j;
            enter_from_lower = true;
            break;
          }
          best_violation = -d;
          enter = j;
          enter_from_lower = true;
        } else if (state_[j] == VarState::at_upper && d > best_violation) {
          if (bland_) {
            enter = j;
            enter_from_lower = false;
            break;
          }
          best_violation = d;
          enter = j;
          enter_from_lower = false;
        }
      }
      if (enter < 0) return true;  // optimal for this phase

      column(enter, rows, coef);
      ftran(rows, coef, dir);
      // Moving x_enter by +t (from lower) changes x_B by -t*dir; from upper the
      // movement is -t, so flip the direction.
      const double sgn = enter_from_lower ? 1.0 : -1.0;

      double t_max = upper_[enter] == kInf || lower_[enter] == -kInf
                         ? kInf
                         : upper_[enter] - lower_[enter];
      int leave_pos = -1;
      bool leave_to_lower = true;
      for (int r = 0; r < m_; ++r) {
        const double a = sgn * dir[r];
        const int bj = basis_[r];
        if (a > kPivotTol) {
          const double room = xb_[r] - lower_[bj];
          const double t = room / a;
          if (t < t_max - 1e-12 || (std::abs(t - t_max) <= 1e-12 &&
                                    (leave_pos == -1 || basis_[r] < basis_[leave_pos]))) {
            t_max = std::max(0.0, t);
            leave_pos = r;
            leave_to_lower = true;
          }
        } else if (a < -kPivotTol) {
          if (upper_[bj] == kInf) continue;
          const double room = upper_[bj] - xb_[r];
          const double t = room / (-a);
          if (t < t_max - 1e-12 || (std::abs(t - t_max) <= 1e-12 &&
                                    (leave_pos == -1 || basis_[r] < basis_[leave_pos]))) {
            t_max = std::max(0.0, t);
            leave_pos = r;
            leave_to_lower = false;
          }
        }
      }

      if (t_max == kInf) return false;  // unbounded

      if (t_max <= kPivotTol) {
        if (++stall_ > 2 * (m_ + 8)) bland_ = true;
      } else {
        stall_ = 0;
        if (!bland_) bland_ = false;
      }

      if (leave_pos < 0) {
        // Bound flip; basis unchanged.
        state_[enter] =
            state_[enter] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
        continue;
      }

      // Pivot: `enter` replaces basis_[leave_pos].
      const int leave = basis_[leave_pos];
      state_[leave] = leave_to_lower ? VarState::at_lower : VarState::at_upper;
      basic_pos_[leave] = -1;
      basis_[leave_pos] = enter;
      basic_pos_[enter] = leave_pos;
      state_[enter] = VarState::basic;

      // Rank-one update of Binv.
      const double piv = dir[leave_pos];
      if (std::abs(piv) < 1e-12) {
        refactorize();
        since_refactor = 0;
        continue;
      }
      double* prow = &binv_[static_cast<std::size_t>(leave_pos) * m_];
      const double inv = 1.0 / piv;
      for (int c = 0; c < m_; ++c) prow[c] *= inv;
      for (int r = 0; r < m_; ++r) {
        if (r == leave_pos) continue;
        const double f = dir[r];
        if (f == 0.0) continue;
        double* row = &binv_[static_cast<std::size_t>(r) * m_];
        for (int c = 0; c < m_; ++c) row[c] -= f * prow[c];
      }
    }
  }

  const LpProblem& p_;
  int m_ = 0;
  int n_total_ = 0;
  int art_begin_ = 0;
  std::vector<int> slack_of_row_;
  std::vector<double> art_sign_;
  std::vector<double> lower_, upper_;
  std::vector<VarState> state_;
  std::vector<int> basis_;
  std::vector<int> basic_pos_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::vector<double> work_;
  bool phase_one_ = true;
  bool bland_ = false;
  int stall_ = 0;
  int iterations_ = 0;
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  if (p.cols.size() != p.obj.size() || p.cols.size() != p.lower.size() ||
      p.cols.size() != p.upper.size() || p.sense.size() != p.rhs.size())
    throw std::invalid_argument("inconsistent LP dimensions");
  Simplex s(p);
  return s.run();
}

}  // namespace wardsim::detail
