#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <cstdint>
#include <vector>

#include "giantwalk/error.hpp"
#include "giantwalk/graph.hpp"
#include "giantwalk/resistance.hpp"
#include "giantwalk/rng.hpp"

namespace giantwalk {

constexpr double kEulerMascheroni = 0.5772156649015329;

// Cramer's expansion for the expected maximum of s iid standard normals.
inline double expected_max_iid_normals(std::size_t s) {
    if (s <= 1) return 0.0;
    double ls = std::log(static_cast<double>(s));
    return std::sqrt(2.0 * ls) -
           (std::log(ls) + std::log(4.0 * M_PI) - 2.0 * kEulerMascheroni) / std::sqrt(8.0 * ls);
}

// sigma * sqrt(2 ln s): upper bound on E max of any centered Gaussian vector
// with max variance sigma^2.
inline double union_bound_max(double sigma, std::size_t s) {
    if (s <= 1) return 0.0;
    return sigma * std::sqrt(2.0 * std::log(static_cast<double>(s)));
}

struct GffSample {
    VertexId pin = 0;
    std::vector<double> eta; // eta[pin] == 0 exactly
};

// Pinned GFF sampler: covariance is exactly the inverse grounded Laplacian.
// With P L_g P^T = L L^T, eta = P^T L^{-T} z for standard normal z.
class GffSampler {
public:
    GffSampler(const Graph& g, VertexId pin) : n_(g.vertex_count()), pin_(pin) {
        llt_.compute(grounded_laplacian(g, pin));
        if (llt_.info() != Eigen::Success)
            throw FactorizationFailed("grounded Laplacian factorization failed");
    }

    GffSample sample(Rng& rng) const {
        Eigen::VectorXd z(static_cast<Eigen::Index>(n_ - 1));
        std::normal_distribution<double> normal(0.0, 1.0);
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
        Eigen::VectorXd y = llt_.permutationPinv() * llt_.matrixU().solve(z).eval();
        GffSample s;
        s.pin = pin_;
        s.eta.resize(n_);
        for (VertexId v = 0; v < n_; ++v)
            s.eta[v] = v == pin_ ? 0.0 : y[v < pin_ ? v : v - 1];
        return s;
    }

    // Var(eta_v) = R_eff(v, pin), via one solve of L_g x = e_v.
    double variance(VertexId v) const {
        if (v == pin_) return 0.0;
        Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_ - 1));
        Eigen::Index i = v < pin_ ? v : v - 1;
        b[i] = 1.0;
        Eigen::VectorXd x = llt_.solve(b);
        return x[i];
    }

    VertexId pin() const { return pin_; }

private:
    std::size_t n_;
    VertexId pin_;
    Eigen::SimplicialLLT<SparseMat> llt_;
};

inline GffSample sample_gff(const Graph& g, VertexId pin, Rng& rng) {
    if (!is_connected(g)) throw FactorizationFailed("graph disconnected");
    return GffSampler(g, pin).sample(rng);
}

struct MEstimate {
    std::size_t replicas = 0;
    double mean_max = 0.0;
    double se = 0.0;
    double sigma2 = 0.0;        // max sampled Var(eta_v)
    double sigma2_diam_bound = 0.0; // diameter upper bound on sigma^2
    double radius = 0.0;        // sigma * sqrt(2 ln(2/alpha))
    std::vector<double> max_eta; // per-replica values, in replica order
};

// Monte Carlo E[max eta], with the Gaussian concentration radius at level alpha.
inline MEstimate estimate_M(const Graph& g, VertexId pin, std::size_t replicas, Rng& rng,
                            double alpha = 0.05, std::size_t var_probe = 32) {
    if (replicas < 100) throw ConfigInvalid("estimate_M needs >= 100 replicas");
    GffSampler sampler(g, pin);
    MEstimate est;
    est.replicas = replicas;
    est.max_eta.reserve(replicas);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t r = 0; r < replicas; ++r) {
        GffSample s = sampler.sample(rng);
        double m = *std::max_element(s.eta.begin(), s.eta.end());
        est.max_eta.push_back(m);
        sum += m;
        sumsq += m * m;
    }
    est.mean_max = sum / static_cast<double>(replicas);
    double var = (sumsq - sum * sum / static_cast<double>(replicas)) /
                 static_cast<double>(replicas - 1);
    est.se = std::sqrt(std::max(0.0, var) / static_cast<double>(replicas));
    // sigma^2 probe: BFS-farthest vertices from the pin plus an id-stride sample
    auto df = bfs_distances(g, {pin});
    std::vector<VertexId> probes;
    std::vector<VertexId> order(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) order[v] = v;
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(var_probe / 2, order.size()),
                      order.end(),
                      [&](VertexId a, VertexId b) { return df.dist[a] > df.dist[b]; });
    for (std::size_t i = 0; i < std::min<std::size_t>(var_probe / 2, order.size()); ++i)
        probes.push_back(order[i]);
    std::size_t stride = std::max<std::size_t>(1, g.vertex_count() / (var_probe / 2 + 1));
    for (std::size_t v = 0; v < g.vertex_count(); v += stride)
        probes.push_back(static_cast<VertexId>(v));
    for (VertexId v : probes) est.sigma2 = std::max(est.sigma2, sampler.variance(v));
    est.sigma2_diam_bound = static_cast<double>(df.max_finite());
    est.radius = std::sqrt(est.sigma2) * std::sqrt(2.0 * std::log(2.0 / alpha));
    return est;
}

struct SlepianReport {
    double mean_max_x = 0.0, se_x = 0.0;
    double mean_max_y = 0.0, se_y = 0.0;
    bool holds = false; // E max X <= E max Y + 3 * combined SE
};

// Monte Carlo check of the Gaussian comparison inequality on two small
// covariance specs whose increments are verified to dominate.
inline SlepianReport slepian_check(const Eigen::MatrixXd& cov_x, const Eigen::MatrixXd& cov_y,
                                   std::size_t replicas, Rng& rng) {
    const Eigen::Index s = cov_x.rows();
    if (cov_y.rows() != s) throw ConfigInvalid("dimension mismatch");
    for (Eigen::Index i = 0; i < s; ++i)
        for (Eigen::Index j = 0; j < s; ++j) {
            double ix = cov_x(i, i) + cov_x(j, j) - 2.0 * cov_x(i, j);
            double iy = cov_y(i, i) + cov_y(j, j) - 2.0 * cov_y(i, j);
            if (ix > iy + 1e-12) throw DominationViolated();
        }
    Eigen::LLT<Eigen::MatrixXd> lx(cov_x), ly(cov_y);
    if (lx.info() != Eigen::Success || ly.info() != Eigen::Success) throw NotPSD();
    std::normal_distribution<double> normal(0.0, 1.0);
    SlepianReport rep;
    double sx = 0, sx2 = 0, sy = 0, sy2 = 0;
    Eigen::VectorXd z(s);
    for (std::size_t r = 0; r < replicas; ++r) {
        for (Eigen::Index i = 0; i < s; ++i) z[i] = normal(rng);
        double mx = (lx.matrixL() * z).maxCoeff();
        for (Eigen::Index i = 0; i < s; ++i) z[i] = normal(rng);
        double my = (ly.matrixL() * z).maxCoeff();
        sx += mx;
        sx2 += mx * mx;
        sy += my;
        sy2 += my * my;
    }
    double n = static_cast<double>(replicas);
    rep.mean_max_x = sx / n;
    rep.mean_max_y = sy / n;
    rep.se_x = std::sqrt(std::max(0.0, (sx2 - sx * sx / n) / (n - 1)) / n);
    rep.se_y = std::sqrt(std::max(0.0, (sy2 - sy * sy / n) / (n - 1)) / n);
    double combined = std::sqrt(rep.se_x * rep.se_x + rep.se_y * rep.se_y);
    rep.holds = rep.mean_max_x <= rep.mean_max_y + 3.0 * combined;
    return rep;
}

} // namespace giantwalk
