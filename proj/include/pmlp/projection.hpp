#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pmlp/linalg.hpp"
#include "pmlp/scalar_map.hpp"

namespace pmlp {

// How the refresh batch is enlarged once it crosses the n^a threshold.
// GrowLoop is the 1.5x growth rule; PowerOfTwo rounds the batch up to the
// next power of two whose tail drift falls under a decaying threshold.
enum class ResetStrategy { kGrowLoop, kPowerOfTwo };

// Outcome classification for one update.
enum class UpdateBranch { kRebuild, kVectorReset, kSparse };

struct UpdatePlan {
  Vector y;                                  // relative drift u_new/u~ - 1
  std::vector<std::size_t> order;            // |y| descending, stable
  std::size_t k = 0;                         // refresh batch size
  std::vector<std::size_t> refresh_set;      // S: first k of order
  std::vector<std::size_t> band_violations;  // T: v entries out of band
};

struct UpdateResult {
  Vector u_tilde;
  Vector v_tilde;
  Vector f_v_tilde;
  Vector r;
  UpdateBranch branch = UpdateBranch::kSparse;
};

struct MaintainerCounters {
  std::uint64_t updates = 0;
  std::uint64_t rebuilds = 0;        // rank-k rebuild branch taken
  std::uint64_t v_resets = 0;        // dense v reset branch taken
  std::uint64_t sparse_updates = 0;  // sparse branch taken
  std::uint64_t fallbacks = 0;       // full recomputations forced by numerics
  std::map<std::size_t, std::uint64_t> rank_histogram;  // rebuild size -> count

  bool operator==(const MaintainerCounters&) const = default;
};

struct AuditReport {
  double m_deviation = 0.0;
  double w_deviation = 0.0;
};

// Rank-k downdate M - M_S (Delta_SS^-1 + M_SS)^-1 M_S^T. `delta_ss` holds the
// k diagonal entries of Delta restricted to S; none may be zero. Throws
// SingularityError when the inner k x k system cannot be factored.
Matrix smw_downdate(const Matrix& m, const std::vector<std::size_t>& s,
                    const Vector& delta_ss, const Matrix& m_s,
                    const Matrix& m_ss);
// Convenience overload extracting M_S and M_SS from `m`.
Matrix smw_downdate(const Matrix& m, const std::vector<std::size_t>& s,
                    const Vector& delta_ss);

// Maintains u~ ~ u, v~ ~ v and the projected vector
// r = sqrt(U~) A^T (A U~ A^T)^-1 A sqrt(U~) f(v~) under multiplicative drift,
// refreshing lazily through rank-k downdates of M = A^T (A U~ A^T)^-1 A.
class ProjectionMaintainer {
 public:
  struct Options {
    double eps_mp = 0.1;        // approximation band, in (0, 1/4)
    double a = 2.0 / 3.0;       // batch-size exponent, in (0, 1]
    ResetStrategy strategy = ResetStrategy::kGrowLoop;
    // Every `audit_interval` updates, recompute M and w from scratch if the
    // incremental state drifted past `fallback_tol`. 0 disables the cadence.
    std::size_t audit_interval = 512;
    double fallback_tol = 1e-4;
  };

  ProjectionMaintainer(Matrix a, const Vector& u, ScalarMap f, const Vector& v,
                       Options opt);

  UpdatePlan plan_update(const Vector& u_new, const Vector& v_new) const;
  UpdateResult update(const Vector& u_new, const Vector& v_new);

  // Recomputes M and w from scratch and reports the max absolute deviations.
  AuditReport audit() const;

  std::size_t dim() const { return n_; }
  std::size_t constraint_dim() const { return d_; }
  // Batch threshold ceil(n^a).
  std::size_t batch_threshold() const { return threshold_; }
  const Vector& u_tilde() const { return u_tilde_; }
  const Vector& v_tilde() const { return v_tilde_; }
  const Vector& w() const { return w_; }
  const Matrix& m() const { return m_; }
  const MaintainerCounters& counters() const { return counters_; }
  const Options& options() const { return opt_; }

 private:
  Matrix exact_m(const Vector& u) const;
  void rebuild_from_scratch(const Vector& u, const Vector& v);
  // M_S (Delta_SS^-1 + M_SS)^-1 M_S^T z for the current M.
  Vector smw_correction(const std::vector<std::size_t>& s, const Vector& delta,
                        const Vector& z) const;
  Vector exact_r(const Vector& u, const Vector& fv) const;
  void maybe_periodic_audit();

  Matrix a_;
  std::size_t d_ = 0, n_ = 0;
  Matrix m_;
  Vector w_;
  Vector u_tilde_;
  Vector v_tilde_;
  ScalarMap f_;
  Options opt_;
  std::size_t threshold_ = 1;
  double log_n_ = 1.0;  // natural log of n, floored at 1
  MaintainerCounters counters_;
};

}  // namespace pmlp
