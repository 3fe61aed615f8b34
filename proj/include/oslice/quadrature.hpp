#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

#include "oslice/octonion.hpp"

namespace oslice {

/// Gauss nodes/weights for the weight (1-t^2)^lambda on [-1,1]
/// (lambda = 0 is Gauss-Legendre), via Golub-Welsch on the symmetric
/// tridiagonal of the monic three-term recurrence.
inline void gauss_gegenbauer(int n, double lambda, Eigen::VectorXd& nodes,
                             Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_gegenbauer: need at least one node");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b =
        k * (k + 2.0 * lambda) / ((2.0 * k + 2.0 * lambda + 1.0) * (2.0 * k + 2.0 * lambda - 1.0));
    jac(k, k - 1) = jac(k - 1, k) = std::sqrt(b);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
  const double mu0 = std::sqrt(M_PI) * std::tgamma(lambda + 1.0) / std::tgamma(lambda + 1.5);
  nodes = eig.eigenvalues();
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = eig.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

inline void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  gauss_gegenbauer(n, 0.0, nodes, weights);
}

/// Surface area of the unit sphere S^{n-1} in R^n.
inline double sphere_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

/// Product quadrature on the unit sphere S^{n-1}, 2 <= n <= 8.
///
/// Polar angles use `level`-point Gauss-Gegenbauer rules in the polar
/// cosines t_k (weight exponent (n-2-k)/2 absorbs the surface measure), the
/// final angle a periodic trapezoid with 2*level points (level points for
/// n = 2). Exact for spherical polynomials of degree <= 2*level - 1.
///
/// Nodes are streamed in a fixed mixed-radix order rather than materialized;
/// rules for large n stay usable.
class SphereRule {
 public:
  SphereRule(int n, int level) : dim_(n), level_(level) {
    if (n < 2 || n > 8) throw std::invalid_argument("sphere_rule: dimension must be in 2..8");
    if (level < 1) throw std::invalid_argument("sphere_rule: level must be >= 1");
    azimuth_ = (n == 2) ? level : 2 * level;
    polar_t_.resize(n - 2);
    polar_s_.resize(n - 2);
    polar_w_.resize(n - 2);
    for (int k = 1; k <= n - 2; ++k) {
      Eigen::VectorXd t, w;
      gauss_gegenbauer(level, 0.5 * (n - 2 - k), t, w);
      polar_t_[k - 1] = t;
      polar_w_[k - 1] = w;
      polar_s_[k - 1] = (1.0 - t.array().square()).sqrt();
    }
    cos_phi_.resize(azimuth_);
    sin_phi_.resize(azimuth_);
    for (int j = 0; j < azimuth_; ++j) {
      const double phi = 2.0 * M_PI * j / azimuth_;
      cos_phi_[j] = std::cos(phi);
      sin_phi_[j] = std::sin(phi);
    }
    azimuth_weight_ = 2.0 * M_PI / azimuth_;
  }

  int dim() const { return dim_; }
  int level() const { return level_; }

  std::size_t size() const {
    std::size_t s = azimuth_;
    for (int k = 0; k < dim_ - 2; ++k) s *= level_;
    return s;
  }

  /// Unit node and weight at position i of the fixed traversal order.
  void node(std::size_t i, Eigen::VectorXd& u, double& weight) const {
    u.resize(dim_);
    const std::size_t j = i % azimuth_;
    std::size_t rest = i / azimuth_;
    weight = azimuth_weight_;
    double prefix = 1.0;  // product of sines of the processed polar angles
    // decode polar indices from the most significant digit
    std::vector<int> idx(dim_ - 2);
    for (int k = dim_ - 3; k >= 0; --k) {
      idx[k] = static_cast<int>(rest % level_);
      rest /= level_;
    }
    for (int k = 0; k < dim_ - 2; ++k) {
      const int ik = idx[k];
      u[k] = prefix * polar_t_[k][ik];
      weight *= polar_w_[k][ik];
      prefix *= polar_s_[k][ik];
    }
    u[dim_ - 2] = prefix * cos_phi_[j];
    u[dim_ - 1] = prefix * sin_phi_[j];
  }

  Eigen::MatrixXd nodes() const {
    Eigen::MatrixXd m(dim_, size());
    Eigen::VectorXd u;
    double w;
    for (std::size_t i = 0; i < size(); ++i) {
      node(i, u, w);
      m.col(i) = u;
    }
    return m;
  }

  Eigen::VectorXd weights() const {
    Eigen::VectorXd w(size());
    Eigen::VectorXd u;
    double wi;
    for (std::size_t i = 0; i < size(); ++i) {
      node(i, u, wi);
      w[i] = wi;
    }
    return w;
  }

 private:
  int dim_, level_, azimuth_;
  double azimuth_weight_ = 0;
  std::vector<Eigen::VectorXd> polar_t_, polar_s_, polar_w_;
  Eigen::VectorXd cos_phi_, sin_phi_;
};

inline SphereRule sphere_rule(int n, int level) { return SphereRule(n, level); }

/// Sphere rule times a radial Gauss-Legendre rule on [0,1] with level/2
/// nodes. radial_weights carry the rho^{n-1} volume factor; the plain
/// weights serve integrals whose radial measure is flat (the kernel-volume
/// integrals, where the singularity cancels the rho^{n-1} exactly).
class BallRule {
 public:
  BallRule(int n, int level) : sphere_(n, level) {
    const int m = std::max(1, level / 2);
    Eigen::VectorXd t, w;
    gauss_legendre(m, t, w);
    radial_nodes_.resize(m);
    radial_weights_.resize(m);
    radial_weights_plain_.resize(m);
    for (int j = 0; j < m; ++j) {
      const double rho = 0.5 * (t[j] + 1.0);
      radial_nodes_[j] = rho;
      radial_weights_plain_[j] = 0.5 * w[j];
      radial_weights_[j] = 0.5 * w[j] * std::pow(rho, n - 1);
    }
  }

  const SphereRule& sphere() const { return sphere_; }
  const Eigen::VectorXd& radial_nodes() const { return radial_nodes_; }
  const Eigen::VectorXd& radial_weights() const { return radial_weights_; }
  const Eigen::VectorXd& radial_weights_plain() const { return radial_weights_plain_; }

 private:
  SphereRule sphere_;
  Eigen::VectorXd radial_nodes_, radial_weights_, radial_weights_plain_;
};

inline BallRule ball_rule(int n, int level) { return BallRule(n, level); }

/// Fixed-tree pairwise reduction over [lo, hi).
template <class T>
T pairwise_sum(const std::vector<T>& buf, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n == 0) return T();
  if (n <= 8) {
    T acc = buf[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) acc += buf[i];
    return acc;
  }
  const std::size_t mid = lo + n / 2;
  T left = pairwise_sum(buf, lo, mid);
  left += pairwise_sum(buf, mid, hi);
  return left;
}

template <class T>
T pairwise_sum(const std::vector<T>& buf) {
  return pairwise_sum(buf, 0, buf.size());
}

namespace detail {

/// Static chunking over worker threads; each worker writes disjoint index
/// ranges, so results do not depend on the schedule.
template <class Body>
void parallel_index_for(std::size_t n, const Body& body) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (n < 1024) workers = 1;
  if (workers == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = std::min<std::size_t>(w * chunk, n);
    const std::size_t hi = std::min<std::size_t>(lo + chunk, n);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

constexpr std::size_t kQuadBlock = 1 << 14;

}  // namespace detail

/// Evaluates fn at every node index and reduces with the fixed pairwise
/// tree: blocks of 2^14 nodes, pairwise within a block, pairwise over block
/// partials. Node evaluation runs concurrently; the gather order is by index
/// so the reduction is bit-reproducible regardless of the schedule.
template <class F>
Octonion<double> quad_sum(std::size_t count, F&& fn) {
  using Oct = Octonion<double>;
  const std::size_t nblocks = (count + detail::kQuadBlock - 1) / detail::kQuadBlock;
  std::vector<Oct> partials(nblocks);
  std::vector<Oct> buf(std::min(count, detail::kQuadBlock));
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = b * detail::kQuadBlock;
    const std::size_t hi = std::min(count, lo + detail::kQuadBlock);
    detail::parallel_index_for(hi - lo, [&](std::size_t clo, std::size_t chi) {
      for (std::size_t i = clo; i < chi; ++i) buf[i] = fn(lo + i);
    });
    partials[b] = pairwise_sum(buf, 0, hi - lo);
  }
  return pairwise_sum(partials);
}

}  // namespace oslice
