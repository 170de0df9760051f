#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "symrank/decompositions.hpp"
#include "symrank/exact_linalg.hpp"
#include "symrank/waring.hpp"

namespace symrank {

struct AlsConfig {
  int rank = 1;
  int restarts = 20;
  int max_iters = 2000;
  double tol = 1e-10;
  unsigned long long seed = 1;
  double ridge = 1e-12;
  double alarm = 1e3;                // factor-norm threshold for the degeneracy flag
  double degeneracy_residual = 1e-3; // residual below which the flag can latch
};

struct RestartStat {
  int restart = 0;
  double residual = 1.0;
  double factor_metric = 0.0;
  int iterations = 0;
  bool degenerate = false;
};

struct SearchOutcome {
  double best_residual = std::numeric_limits<double>::infinity();
  int best_restart = -1;
  int iterations = 0;   // of the best restart
  bool degenerate = false;
  std::vector<RestartStat> restarts;
  std::optional<ProductDecomposition> product_certificate;
  std::optional<SymmetricDecomposition> symmetric_certificate;
};

namespace detail {

inline std::mt19937_64 restart_rng(unsigned long long seed, int restart) {
  return std::mt19937_64(seed + 0x9e3779b97f4a7c15ull * static_cast<unsigned long long>(restart + 1));
}

inline std::complex<double> gaussian(std::mt19937_64& rng) {
  static constexpr double half = 0.7071067811865476;
  std::normal_distribution<double> nd(0.0, 1.0);
  double re = nd(rng), im = nd(rng);
  return {re * half, im * half};
}

}  // namespace detail

// Alternating least squares for a rank-r product approximation. Per-party
// updates solve ridge-regularized normal equations via the Gram/MTTKRP
// shortcut; the per-restart degeneracy flag latches as soon as a good
// residual coincides with exploding factor norms (the classic border-rank
// signature) and stops that restart early.
inline SearchOutcome cp_als(const SparseState& target, const AlsConfig& cfg) {
  const int P = target.parties();
  const int r = cfg.rank;
  if (P < 2) throw std::invalid_argument("need at least two parties");
  if (r < 1) throw std::invalid_argument("need rank >= 1");
  const std::vector<int>& dims = target.dims();
  double dense = 1;
  for (int d : dims) dense *= d;
  if (dense > 1e9) throw std::invalid_argument("resource guard: tensor too large");

  std::vector<std::pair<MultiIndex, std::complex<double>>> nz;
  for (const auto& [k, v] : target.amplitudes()) nz.emplace_back(k, v.to_complex());
  double norm_t = target.norm();
  if (norm_t == 0) throw std::invalid_argument("zero target");

  // The Gram residual formula cancels catastrophically below ~1e-8 relative,
  // so small tensors get a direct dense residual instead.
  const bool dense_resid = dense <= 65536;
  std::vector<std::complex<double>> tvec;
  if (dense_resid) {
    tvec.assign(static_cast<size_t>(dense), {0.0, 0.0});
    for (const auto& [w, v] : nz) {
      size_t idx = 0;
      for (int a = 0; a < P; ++a) idx = idx * dims[a] + w[a];
      tvec[idx] = v;
    }
  }

  using Mat = Eigen::MatrixXcd;
  SearchOutcome out;
  std::vector<Mat> best_factors;
  // the alarm compares term magnitudes against the target's own scale
  const double alarm = cfg.alarm * norm_t;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    auto rng = detail::restart_rng(cfg.seed, restart);
    std::vector<Mat> f(P);
    for (int a = 0; a < P; ++a) {
      f[a].resize(dims[a], r);
      for (int i = 0; i < dims[a]; ++i)
        for (int t = 0; t < r; ++t) f[a](i, t) = detail::gaussian(rng);
    }

    RestartStat stat;
    stat.restart = restart;
    std::vector<Mat> snapshot = f;
    double best = std::numeric_limits<double>::max();
    int since_improved = 0;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
      stat.iterations = iter;
      for (int a = 0; a < P; ++a) {
        Mat gram = Mat::Ones(r, r);
        for (int b = 0; b < P; ++b)
          if (b != a) gram = gram.cwiseProduct(f[b].adjoint() * f[b]);
        gram += cfg.ridge * Mat::Identity(r, r);
        Mat mttkrp = Mat::Zero(dims[a], r);
        for (const auto& [w, v] : nz) {
          for (int t = 0; t < r; ++t) {
            std::complex<double> prod = v;
            for (int b = 0; b < P; ++b)
              if (b != a) prod *= std::conj(f[b](w[b], t));
            mttkrp(w[a], t) += prod;
          }
        }
        // normal equations read X * conj(gram) = mttkrp
        Mat gbar = gram.conjugate();
        f[a] = gbar.ldlt().solve(mttkrp.adjoint()).adjoint();
      }

      // rebalance column scales across parties; the model is unchanged
      for (int t = 0; t < r; ++t) {
        double total = 1;
        std::vector<double> norms(P);
        for (int a = 0; a < P; ++a) {
          norms[a] = f[a].col(t).norm();
          total *= norms[a];
        }
        if (total <= 0) continue;
        double geo = std::pow(total, 1.0 / P);
        for (int a = 0; a < P; ++a) f[a].col(t) *= geo / norms[a];
      }

      double res;
      if (dense_resid) {
        double err_sq = 0;
        MultiIndex w(P, 0);
        for (size_t idx = 0; idx < tvec.size(); ++idx) {
          std::complex<double> model = 0;
          for (int t = 0; t < r; ++t) {
            std::complex<double> prod = 1;
            for (int a = 0; a < P; ++a) prod *= f[a](w[a], t);
            model += prod;
          }
          err_sq += std::norm(model - tvec[idx]);
          for (int a = P - 1; a >= 0; --a) {
            if (++w[a] < dims[a]) break;
            w[a] = 0;
          }
        }
        res = std::sqrt(err_sq) / norm_t;
      } else {
        Mat gram_all = Mat::Ones(r, r);
        for (int a = 0; a < P; ++a) gram_all = gram_all.cwiseProduct(f[a].adjoint() * f[a]);
        double hat_sq = gram_all.sum().real();
        std::complex<double> cross = 0;
        for (const auto& [w, v] : nz) {
          std::complex<double> model = 0;
          for (int t = 0; t < r; ++t) {
            std::complex<double> prod = 1;
            for (int a = 0; a < P; ++a) prod *= f[a](w[a], t);
            model += prod;
          }
          cross += std::conj(v) * model;
        }
        double res_sq = norm_t * norm_t + hat_sq - 2 * cross.real();
        res = std::sqrt(std::max(0.0, res_sq)) / norm_t;
      }

      double metric = 0;
      for (int t = 0; t < r; ++t) {
        double prod = 1;
        for (int a = 0; a < P; ++a) prod *= f[a].col(t).norm();
        metric = std::max(metric, prod);
      }
      stat.factor_metric = std::max(stat.factor_metric, metric);
      if (res < cfg.degeneracy_residual && metric > alarm) stat.degenerate = true;

      if (res < best - 1e-13 * std::max(1.0, best)) {
        best = res;
        snapshot = f;
        since_improved = 0;
      } else if (++since_improved > 30) {
        break;
      }
      if (res < cfg.tol) break;
      if (stat.degenerate && res < cfg.degeneracy_residual) break;
    }

    stat.residual = best;
    out.restarts.push_back(stat);
    if (best < out.best_residual) {
      out.best_residual = best;
      out.best_restart = restart;
      out.iterations = stat.iterations;
      out.degenerate = stat.degenerate;
      best_factors = snapshot;
    }
  }

  if (out.best_restart >= 0 && out.best_residual < cfg.tol) {
    ProductDecomposition cert;
    cert.dims = dims;
    for (int t = 0; t < r; ++t) {
      ProductTerm term;
      term.weight = Scalar::one();
      for (int a = 0; a < P; ++a) {
        LinearForm v;
        for (int i = 0; i < dims[a]; ++i) v.push_back(Scalar(best_factors[a](i, t)));
        term.vectors.push_back(std::move(v));
      }
      cert.terms.push_back(std::move(term));
    }
    VerifyResult vr = verify_product(cert, target, 1.0);
    out.best_residual = vr.residual;
    if (vr.residual < cfg.tol) out.product_certificate = std::move(cert);
  }
  return out;
}

// Levenberg-Marquardt search for a weighted power decomposition of a
// homogeneous polynomial, with the weights eliminated by an exact linear
// refit inside every step. The residual is the coefficient-vector distance.
inline SearchOutcome symmetric_als(const HomogeneousPolynomial& target, const AlsConfig& cfg) {
  const int d = target.vars();
  const int N = target.degree();
  const int r = cfg.rank;
  if (r < 1) throw std::invalid_argument("need rank >= 1");
  std::vector<ExponentVec> monos = monomials_of_degree(d, N);
  const int m = static_cast<int>(monos.size());
  if (m > 200000) throw std::invalid_argument("resource guard: too many monomials");

  Eigen::VectorXcd h(m);
  Eigen::VectorXd mult(m);
  for (int e = 0; e < m; ++e) {
    h(e) = target.at(monos[e]).to_complex();
    mult(e) = multinomial(N, monos[e]).get_d();
  }
  double norm_h = h.norm();
  if (norm_h == 0) throw std::invalid_argument("zero target");

  using Mat = Eigen::MatrixXcd;
  using Vec = Eigen::VectorXcd;
  // variable projection: only the form entries are free parameters, the
  // weights always sit at their exact least-squares optimum
  const int np = d * r;
  const double alarm = cfg.alarm * norm_h;

  auto powers = [&](const Mat& forms) {
    Mat p = Mat::Ones(m, r);
    for (int e = 0; e < m; ++e)
      for (int t = 0; t < r; ++t) {
        std::complex<double> prod = 1;
        for (int i = 0; i < d; ++i)
          for (int c = 0; c < monos[e][i]; ++c) prod *= forms(i, t);
        p(e, t) = prod;
      }
    return p;
  };
  auto refit = [&](const Mat& p, Vec& w) {
    Mat a = mult.asDiagonal() * p;
    Mat g = a.adjoint() * a + cfg.ridge * Mat::Identity(r, r);
    w = g.ldlt().solve(a.adjoint() * h);
    return (a * w - h).eval();
  };

  SearchOutcome out;
  Mat best_forms;
  Vec best_w;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    auto rng = detail::restart_rng(cfg.seed, restart);
    Mat forms(d, r);
    // even restarts start real: real targets usually admit real
    // decompositions and those basins tend to be much better conditioned
    const bool real_init = restart % 2 == 0;
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int i = 0; i < d; ++i)
      for (int t = 0; t < r; ++t)
        forms(i, t) = real_init ? std::complex<double>(nd(rng), 0.0) : detail::gaussian(rng);
    Vec w(r);
    Vec resid = refit(powers(forms), w);
    double res = resid.norm() / norm_h;

    RestartStat stat;
    stat.restart = restart;
    double best = res;
    Mat snap_forms = forms;
    Vec snap_w = w;
    double lambda = 1e-3;
    int since_improved = 0;
    int below_tol = 0;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
      stat.iterations = iter;
      Mat p = powers(forms);
      Mat jac(m, np);
      for (int e = 0; e < m; ++e) {
        for (int t = 0; t < r; ++t) {
          for (int i = 0; i < d; ++i) {
            int ei = monos[e][i];
            std::complex<double> deriv = 0;
            if (ei > 0) {
              std::complex<double> li = forms(i, t);
              if (std::abs(li) > 1e-140) {
                deriv = static_cast<double>(ei) * p(e, t) / li;
              } else if (ei == 1) {
                deriv = 1;
                for (int i2 = 0; i2 < d; ++i2) {
                  if (i2 == i) continue;
                  for (int c = 0; c < monos[e][i2]; ++c) deriv *= forms(i2, t);
                }
              }
            }
            jac(e, t * d + i) = mult(e) * w(t) * deriv;
          }
        }
      }
      Vec rvec = (mult.asDiagonal() * p) * w - h;
      Mat jtj = jac.adjoint() * jac;
      Vec jtr = jac.adjoint() * rvec;

      bool accepted = false;
      for (int attempt = 0; attempt < 10; ++attempt) {
        Mat damped = jtj + lambda * Mat::Identity(np, np);
        Vec delta = damped.ldlt().solve(-jtr);
        Mat cand = forms;
        for (int t = 0; t < r; ++t)
          for (int i = 0; i < d; ++i) cand(i, t) += delta(t * d + i);
        Vec wc = w;
        Vec rc = refit(powers(cand), wc);
        double res_c = rc.norm() / norm_h;
        if (res_c < res) {
          forms = cand;
          w = wc;
          res = res_c;
          lambda = std::max(lambda / 3, 1e-12);
          accepted = true;
          break;
        }
        lambda *= 7;
      }

      double metric = 0;
      for (int t = 0; t < r; ++t)
        metric = std::max(metric, std::abs(w(t)) * std::pow(forms.col(t).norm(), N));
      stat.factor_metric = std::max(stat.factor_metric, metric);
      if (res < cfg.degeneracy_residual && metric > alarm) stat.degenerate = true;

      if (res < best - 1e-13 * std::max(1.0, best)) {
        best = res;
        snap_forms = forms;
        snap_w = w;
        since_improved = 0;
      } else if (++since_improved > 20) {
        break;
      }
      // once under tol, polish a little further for margin before stopping
      if (res < 0.1 * cfg.tol) break;
      if (res < cfg.tol && ++below_tol > 25) break;
      if (!accepted && lambda > 1e12) break;
      if (stat.degenerate && res < cfg.degeneracy_residual) break;
    }

    stat.residual = best;
    out.restarts.push_back(stat);
    if (best < out.best_residual) {
      out.best_residual = best;
      out.best_restart = restart;
      out.iterations = stat.iterations;
      out.degenerate = stat.degenerate;
      best_forms = snap_forms;
      best_w = snap_w;
    }
    // keep trying for a comfortable success, settle for a marginal one
    if (out.best_residual < 0.1 * cfg.tol) break;
  }

  if (out.best_restart >= 0 && out.best_residual < cfg.tol) {
    SymmetricDecomposition cert;
    cert.vars = d;
    cert.degree = N;
    for (int t = 0; t < r; ++t) {
      WaringTerm term;
      term.weight = Scalar(best_w(t));
      for (int i = 0; i < d; ++i) term.form.push_back(Scalar(best_forms(i, t)));
      cert.terms.push_back(std::move(term));
    }
    VerifyResult vr = verify_waring(cert, target, 1.0);
    out.best_residual = vr.residual;
    if (vr.residual < cfg.tol) out.symmetric_certificate = std::move(cert);
  }
  return out;
}

// Largest flattening rank over bipartitions: all of them up to 12 parties,
// single-party cuts beyond that.
inline int flattening_bound_all(const SparseState& s, double rel_tol = 1e-10) {
  int p = s.parties();
  if (p < 2) return s.nonzeros() > 0 ? 1 : 0;
  int best = 0;
  if (p <= 12) {
    for (unsigned long mask = 1; mask + 1 < (1ul << p); ++mask) {
      if (!(mask & 1)) continue;  // fix party 0 on the row side
      std::vector<int> rows;
      for (int a = 0; a < p; ++a)
        if ((mask >> a) & 1) rows.push_back(a);
      best = std::max(best, flattening_rank(s, rows, rel_tol));
    }
  } else {
    for (int a = 0; a < p; ++a) best = std::max(best, flattening_rank(s, {a}, rel_tol));
  }
  return best;
}

enum class TripartiteClass { GhzClass, WClass, Degenerate };

struct HyperdetResult {
  Scalar delta;
  TripartiteClass label = TripartiteClass::Degenerate;
  int rank = 0;
};

// Cayley hyperdeterminant of a 2x2x2 tensor, exact over the rationals. A
// nonzero value pins tensor rank 2; zero with all three flattenings of rank 2
// pins rank 3.
inline HyperdetResult hyperdet_222(const SparseState& s, double tol = 1e-9) {
  if (s.dims() != std::vector<int>{2, 2, 2})
    throw std::invalid_argument("hyperdeterminant needs a 2x2x2 state");
  auto a = [&](int i, int j, int k) { return s.at({i, j, k}); };
  auto sq = [](const Scalar& x) { return x * x; };

  Scalar delta = sq(a(0, 0, 0)) * sq(a(1, 1, 1)) + sq(a(0, 0, 1)) * sq(a(1, 1, 0)) +
                 sq(a(0, 1, 0)) * sq(a(1, 0, 1)) + sq(a(0, 1, 1)) * sq(a(1, 0, 0));
  Scalar two(Rational(2)), four(Rational(4));
  delta = delta - two * (a(0, 0, 0) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 1) +
                         a(0, 0, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 1) +
                         a(0, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 1) +
                         a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 1) * a(1, 1, 0) +
                         a(0, 0, 1) * a(1, 0, 0) * a(0, 1, 1) * a(1, 1, 0) +
                         a(0, 1, 0) * a(1, 0, 0) * a(0, 1, 1) * a(1, 0, 1));
  delta = delta + four * (a(0, 0, 0) * a(0, 1, 1) * a(1, 0, 1) * a(1, 1, 0) +
                          a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0) * a(1, 1, 1));

  HyperdetResult res;
  res.delta = delta;
  bool zero;
  if (delta.is_rational()) {
    zero = delta.is_zero();
  } else {
    double scale = std::pow(s.norm(), 4);
    zero = std::abs(delta.to_complex()) <= tol * std::max(scale, 1e-300);
  }

  int f0 = flattening_rank(s, {0}), f1 = flattening_rank(s, {1}), f2 = flattening_rank(s, {2});
  int fmax = std::max({f0, f1, f2});
  if (!zero) {
    res.label = TripartiteClass::GhzClass;
    res.rank = 2;
  } else if (f0 == 2 && f1 == 2 && f2 == 2) {
    res.label = TripartiteClass::WClass;
    res.rank = 3;
  } else {
    res.label = TripartiteClass::Degenerate;
    res.rank = fmax;
  }
  return res;
}

}  // namespace symrank
