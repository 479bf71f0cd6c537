#include "pmlp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace pmlp {

ScalarMap sqrt_map() {
  return [](double x) { return std::sqrt(x); };
}

ScalarMap sinh_gradient_map(double lambda) {
  return [lambda](double x) {
    return lambda * std::sinh(lambda * (x - 1.0)) / std::sqrt(x);
  };
}

Vector apply_map(const ScalarMap& f, const Vector& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f(v[i]);
  return Vector(std::move(out));
}

namespace {

void check_positive(const Vector& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw DomainError(std::string(what) + ": entry " + std::to_string(i) +
                        " = " + std::to_string(v[i]) + " must be positive");
    }
  }
}

void check_nonnegative(const Vector& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0.0) {
      throw DomainError(std::string(what) + ": entry " + std::to_string(i) +
                        " = " + std::to_string(v[i]) + " must be nonnegative");
    }
  }
}

Matrix columns_of(const Matrix& m, const std::vector<std::size_t>& s) {
  Matrix out(m.rows(), s.size(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) out(i, j) = m(i, s[j]);
  }
  return out;
}

Matrix principal_submatrix(const Matrix& m, const std::vector<std::size_t>& s) {
  Matrix out(s.size(), s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) out(i, j) = m(s[i], s[j]);
  }
  return out;
}

// (Delta_SS^-1 + M_SS) for the inner solve.
Matrix inner_system(const Matrix& m_ss, const Vector& delta_ss) {
  Matrix inner = m_ss;
  for (std::size_t i = 0; i < delta_ss.size(); ++i) {
    if (delta_ss[i] == 0.0) {
      throw DomainError("smw_downdate: zero diagonal entry in Delta at slot " +
                        std::to_string(i));
    }
    inner(i, i) += 1.0 / delta_ss[i];
  }
  return inner;
}

}  // namespace

Matrix smw_downdate(const Matrix& m, const std::vector<std::size_t>& s,
                    const Vector& delta_ss, const Matrix& m_s,
                    const Matrix& m_ss) {
  if (s.empty()) return m;
  if (delta_ss.size() != s.size() || m_s.cols() != s.size() ||
      m_ss.rows() != s.size() || m_ss.cols() != s.size() ||
      m_s.rows() != m.rows()) {
    throw ShapeError("smw_downdate: inconsistent slice dimensions");
  }
  const Matrix inner = inner_system(m_ss, delta_ss);
  const Matrix b = solve_linear(inner, transpose(m_s));  // k x n
  const Matrix corr = mat_mul(m_s, b);
  Matrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double* oi = out.row(i);
    const double* ci = corr.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) oi[j] -= ci[j];
  }
  return out;
}

Matrix smw_downdate(const Matrix& m, const std::vector<std::size_t>& s,
                    const Vector& delta_ss) {
  return smw_downdate(m, s, delta_ss, columns_of(m, s),
                      principal_submatrix(m, s));
}

ProjectionMaintainer::ProjectionMaintainer(Matrix a, const Vector& u,
                                           ScalarMap f, const Vector& v,
                                           Options opt)
    : a_(std::move(a)),
      d_(a_.rows()),
      n_(a_.cols()),
      f_(std::move(f)),
      opt_(opt) {
  if (n_ < d_ || n_ == 0) {
    throw RankError("ProjectionMaintainer: need n >= d >= 1, got d=" +
                    std::to_string(d_) + " n=" + std::to_string(n_));
  }
  if (u.size() != n_ || v.size() != n_) {
    throw ShapeError("ProjectionMaintainer: u and v must have length n");
  }
  if (!(opt_.eps_mp > 0.0 && opt_.eps_mp < 0.25)) {
    throw DomainError("ProjectionMaintainer: eps_mp must lie in (0, 1/4)");
  }
  if (!(opt_.a > 0.0 && opt_.a <= 1.0)) {
    throw DomainError("ProjectionMaintainer: batch exponent a must lie in (0, 1]");
  }
  check_positive(u, "ProjectionMaintainer: u");
  check_nonnegative(v, "ProjectionMaintainer: v");
  if (rank(a_) != d_) {
    throw RankError("ProjectionMaintainer: A must have full row rank " +
                    std::to_string(d_));
  }
  threshold_ = static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(n_), opt_.a)));
  log_n_ = std::max(std::log(static_cast<double>(n_)), 1.0);
  u_tilde_ = u;
  v_tilde_ = v;
  rebuild_from_scratch(u_tilde_, v_tilde_);
  counters_ = MaintainerCounters{};
}

Matrix ProjectionMaintainer::exact_m(const Vector& u) const {
  Matrix au = a_;
  for (std::size_t i = 0; i < d_; ++i) {
    double* r = au.row(i);
    for (std::size_t j = 0; j < n_; ++j) r[j] *= u[j];
  }
  const Matrix gram = mat_mul(au, transpose(a_));  // A U A^T, d x d
  const Matrix gram_inv = invert(gram);
  return mat_mul(transpose(a_), mat_mul(gram_inv, a_));
}

void ProjectionMaintainer::rebuild_from_scratch(const Vector& u,
                                                const Vector& v) {
  m_ = exact_m(u);
  w_ = mat_vec(m_, mul(sqrt(u), apply_map(f_, v)));
}

Vector ProjectionMaintainer::exact_r(const Vector& u, const Vector& fv) const {
  const Vector su = sqrt(u);
  const Vector y = mul(su, fv);
  Matrix au = a_;
  for (std::size_t i = 0; i < d_; ++i) {
    double* r = au.row(i);
    for (std::size_t j = 0; j < n_; ++j) r[j] *= u[j];
  }
  const Matrix gram = mat_mul(au, transpose(a_));
  const Vector t = solve_linear(gram, mat_vec(a_, y));
  return mul(su, mat_transpose_vec(a_, t));
}

UpdatePlan ProjectionMaintainer::plan_update(const Vector& u_new,
                                             const Vector& v_new) const {
  if (u_new.size() != n_ || v_new.size() != n_) {
    throw ShapeError("update: u and v must have length n");
  }
  check_positive(u_new, "update: u");
  check_nonnegative(v_new, "update: v");

  UpdatePlan plan;
  {
    std::vector<double> y(n_);
    for (std::size_t i = 0; i < n_; ++i) y[i] = u_new[i] / u_tilde_[i] - 1.0;
    plan.y = Vector(std::move(y));
  }

  plan.order.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) plan.order[i] = i;
  std::stable_sort(plan.order.begin(), plan.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::fabs(plan.y[a]) > std::fabs(plan.y[b]);
                   });

  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::fabs(plan.y[i]) >= opt_.eps_mp) ++k;
  }

  if (k >= threshold_) {
    if (opt_.strategy == ResetStrategy::kGrowLoop) {
      // grow while the tail beyond position k is still nearly as large
      while (3 * k < 2 * n_) {
        const std::size_t probe = (3 * k + 1) / 2;  // ceil(1.5 k)
        const double tail = std::fabs(plan.y[plan.order[probe - 1]]);
        const double head = std::fabs(plan.y[plan.order[k - 1]]);
        if (tail < (1.0 - 1.0 / log_n_) * head) break;
        k = std::min(probe, n_);
      }
    } else {
      std::size_t chosen = n_;
      std::size_t idx = 1;
      for (std::size_t level = 0; idx <= n_; ++level, idx <<= 1) {
        const double cutoff =
            (1.0 - 0.5 * static_cast<double>(level) / log_n_) * opt_.eps_mp;
        if (std::fabs(plan.y[plan.order[idx - 1]]) < cutoff) {
          chosen = idx;
          break;
        }
      }
      k = chosen;
    }
  }
  plan.k = k;
  plan.refresh_set.assign(plan.order.begin(),
                          plan.order.begin() + static_cast<std::ptrdiff_t>(k));

  for (std::size_t i = 0; i < n_; ++i) {
    const bool in_band = (1.0 - opt_.eps_mp) * v_tilde_[i] <= v_new[i] &&
                         v_new[i] <= (1.0 + opt_.eps_mp) * v_tilde_[i];
    if (!in_band) plan.band_violations.push_back(i);
  }
  return plan;
}

Vector ProjectionMaintainer::smw_correction(const std::vector<std::size_t>& s,
                                            const Vector& delta,
                                            const Vector& z) const {
  if (s.empty()) return Vector(n_, 0.0);
  const Matrix m_ss = principal_submatrix(m_, s);
  const Matrix inner = inner_system(m_ss, delta);
  std::vector<double> rhs(s.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += m_(j, s[i]) * z[j];
    rhs[i] = acc;
  }
  const Vector q = solve_linear(inner, Vector(std::move(rhs)));
  std::vector<double> corr(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) acc += m_(j, s[i]) * q[i];
    corr[j] = acc;
  }
  return Vector(std::move(corr));
}

UpdateResult ProjectionMaintainer::update(const Vector& u_new,
                                          const Vector& v_new) {
  const UpdatePlan plan = plan_update(u_new, v_new);

  Vector u_tilde_new = u_tilde_;
  for (std::size_t idx : plan.refresh_set) u_tilde_new[idx] = u_new[idx];

  // Entries selected by the plan but with zero actual drift change nothing;
  // the inner system needs Delta's diagonal nonzero, so drop them.
  std::vector<std::size_t> s_eff;
  std::vector<double> delta_eff;
  for (std::size_t idx : plan.refresh_set) {
    const double d = u_tilde_new[idx] - u_tilde_[idx];
    if (d != 0.0) {
      s_eff.push_back(idx);
      delta_eff.push_back(d);
    }
  }
  const Vector delta(std::move(delta_eff));

  UpdateResult res;
  ++counters_.updates;

  if (plan.k >= threshold_) {
    const Vector fv = apply_map(f_, v_new);  // may throw; members untouched
    Matrix m_new;
    try {
      m_new = smw_downdate(m_, s_eff, delta);
    } catch (const SingularityError&) {
      ++counters_.fallbacks;
      m_new = exact_m(u_tilde_new);
    }
    m_ = std::move(m_new);
    u_tilde_ = u_tilde_new;
    v_tilde_ = v_new;
    w_ = mat_vec(m_, mul(sqrt(u_tilde_), fv));
    res.r = mul(sqrt(u_tilde_), w_);
    res.u_tilde = u_tilde_;
    res.v_tilde = v_tilde_;
    res.f_v_tilde = fv;
    res.branch = UpdateBranch::kRebuild;
    ++counters_.rebuilds;
    ++counters_.rank_histogram[plan.k];
  } else if (plan.band_violations.size() >= threshold_) {
    const Vector fv = apply_map(f_, v_new);
    const Vector su_new = sqrt(u_tilde_new);
    const Vector z = mul(su_new, fv);
    try {
      const Vector corr = smw_correction(s_eff, delta, z);
      res.r = mul(su_new, sub(mat_vec(m_, z), corr));
    } catch (const SingularityError&) {
      ++counters_.fallbacks;
      res.r = exact_r(u_tilde_new, fv);
    }
    w_ = mat_vec(m_, mul(sqrt(u_tilde_), fv));  // old u~ stays in the members
    v_tilde_ = v_new;
    res.u_tilde = u_tilde_new;
    res.v_tilde = v_tilde_;
    res.f_v_tilde = fv;
    res.branch = UpdateBranch::kVectorReset;
    ++counters_.v_resets;
  } else {
    Vector v_tilde_new = v_tilde_;
    for (std::size_t idx : plan.band_violations) v_tilde_new[idx] = v_new[idx];
    const Vector fv_new = apply_map(f_, v_tilde_new);
    const Vector su_new = sqrt(u_tilde_new);

    // sparse difference sqrt(U~new) f(v~new) - sqrt(U~) f(v~)
    std::vector<std::size_t> touched;
    touched.reserve(s_eff.size() + plan.band_violations.size());
    touched.insert(touched.end(), s_eff.begin(), s_eff.end());
    touched.insert(touched.end(), plan.band_violations.begin(),
                   plan.band_violations.end());
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    std::vector<std::pair<std::size_t, double>> sparse_diff;
    sparse_diff.reserve(touched.size());
    for (std::size_t idx : touched) {
      const double old_term =
          std::sqrt(u_tilde_[idx]) * f_(v_tilde_[idx]);
      const double diff = su_new[idx] * fv_new[idx] - old_term;
      if (diff != 0.0) sparse_diff.emplace_back(idx, diff);
    }

    std::vector<double> core(w_.raw());
    for (const auto& [idx, diff] : sparse_diff) {
      for (std::size_t j = 0; j < n_; ++j) core[j] += m_(j, idx) * diff;
    }

    try {
      const Vector z_new = mul(su_new, fv_new);
      const Vector corr = smw_correction(s_eff, delta, z_new);
      for (std::size_t j = 0; j < n_; ++j) core[j] -= corr[j];
      res.r = mul(su_new, Vector(std::move(core)));
    } catch (const SingularityError&) {
      ++counters_.fallbacks;
      res.r = exact_r(u_tilde_new, fv_new);
    }
    res.u_tilde = u_tilde_new;
    res.v_tilde = std::move(v_tilde_new);
    res.f_v_tilde = fv_new;
    res.branch = UpdateBranch::kSparse;
    ++counters_.sparse_updates;
  }

  maybe_periodic_audit();
  return res;
}

AuditReport ProjectionMaintainer::audit() const {
  const Matrix m_exact = exact_m(u_tilde_);
  const Vector w_exact =
      mat_vec(m_exact, mul(sqrt(u_tilde_), apply_map(f_, v_tilde_)));
  AuditReport rep;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      rep.m_deviation =
          std::max(rep.m_deviation, std::fabs(m_(i, j) - m_exact(i, j)));
    }
    rep.w_deviation = std::max(rep.w_deviation, std::fabs(w_[i] - w_exact[i]));
  }
  return rep;
}

void ProjectionMaintainer::maybe_periodic_audit() {
  if (opt_.audit_interval == 0) return;
  if (counters_.updates % opt_.audit_interval != 0) return;
  const AuditReport rep = audit();
  if (std::max(rep.m_deviation, rep.w_deviation) > opt_.fallback_tol) {
    rebuild_from_scratch(u_tilde_, v_tilde_);
    ++counters_.fallbacks;
  }
}

}  // namespace pmlp
