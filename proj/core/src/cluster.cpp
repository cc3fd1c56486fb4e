#include "wsynth/cluster.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "wsynth/rng.hpp"

namespace wsynth {

Eigen::MatrixXd rmse_matrix(const Eigen::MatrixXd& series) {
  const Eigen::Index p = series.cols();
  const double n = static_cast<double>(series.rows());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index b = a + 1; b < p; ++b) {
      const double mse = (series.col(a) - series.col(b)).squaredNorm() / n;
      const double rmse = std::sqrt(mse);
      d(a, b) = rmse;
      d(b, a) = rmse;
    }
  }
  return d;
}

namespace {

// Medoid: member with the lowest summed squared RMSE to its cluster mates.
int select_medoid(const Eigen::MatrixXd& d2, const std::vector<int>& assignment, int cluster) {
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  const int p = static_cast<int>(d2.rows());
  for (int cand = 0; cand < p; ++cand) {
    if (assignment[static_cast<std::size_t>(cand)] != cluster) continue;
    double cost = 0.0;
    for (int other = 0; other < p; ++other) {
      if (assignment[static_cast<std::size_t>(other)] != cluster) continue;
      cost += d2(cand, other);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = cand;
    }
  }
  return best;
}

}  // namespace

ClusterModel cluster_series(const Eigen::MatrixXd& series, int n_clusters,
                            std::uint64_t seed, int max_iter) {
  const int p = static_cast<int>(series.cols());
  if (n_clusters < 1 || n_clusters > p) {
    throw std::invalid_argument("cluster_series: n_clusters must be in [1, n_series]");
  }

  const Eigen::MatrixXd d = rmse_matrix(series);
  const Eigen::MatrixXd d2 = d.cwiseProduct(d);

  ClusterModel model;
  model.n_clusters = n_clusters;
  model.assignment.resize(static_cast<std::size_t>(p));
  model.representatives.assign(static_cast<std::size_t>(n_clusters), -1);

  Rng rng(seed);
  for (int s = 0; s < p; ++s) {
    model.assignment[static_cast<std::size_t>(s)] =
        static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n_clusters)));
  }
  // A random start can leave clusters empty; steal the lowest-index series
  // from the largest cluster until every cluster is populated.
  for (int c = 0; c < n_clusters; ++c) {
    while (true) {
      std::vector<int> count(static_cast<std::size_t>(n_clusters), 0);
      for (int s = 0; s < p; ++s) ++count[static_cast<std::size_t>(model.assignment[static_cast<std::size_t>(s)])];
      if (count[static_cast<std::size_t>(c)] > 0) break;
      int largest = 0;
      for (int c2 = 1; c2 < n_clusters; ++c2) {
        if (count[static_cast<std::size_t>(c2)] > count[static_cast<std::size_t>(largest)]) largest = c2;
      }
      for (int s = 0; s < p; ++s) {
        if (model.assignment[static_cast<std::size_t>(s)] == largest) {
          model.assignment[static_cast<std::size_t>(s)] = c;
          break;
        }
      }
    }
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    model.iterations = iter + 1;

    for (int c = 0; c < n_clusters; ++c) {
      model.representatives[static_cast<std::size_t>(c)] = select_medoid(d2, model.assignment, c);
    }

    // Reassign to the nearest representative (RMSE, ties to lower cluster).
    bool changed = false;
    for (int s = 0; s < p; ++s) {
      int best = model.assignment[static_cast<std::size_t>(s)];
      double best_d = d(s, model.representatives[static_cast<std::size_t>(best)]);
      for (int c = 0; c < n_clusters; ++c) {
        const double dist = d(s, model.representatives[static_cast<std::size_t>(c)]);
        if (dist < best_d || (dist == best_d && c < best)) {
          best = c;
          best_d = dist;
        }
      }
      if (best != model.assignment[static_cast<std::size_t>(s)]) {
        model.assignment[static_cast<std::size_t>(s)] = best;
        changed = true;
      }
    }

    // Re-seed any cluster emptied by the reassignment with the series
    // farthest from its representative (lowest index on ties).
    for (int c = 0; c < n_clusters; ++c) {
      bool empty = true;
      for (int s = 0; s < p; ++s) {
        if (model.assignment[static_cast<std::size_t>(s)] == c) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      int farthest = -1;
      double far_d = -1.0;
      for (int s = 0; s < p; ++s) {
        const int rep =
            model.representatives[static_cast<std::size_t>(model.assignment[static_cast<std::size_t>(s)])];
        const double dist = d(s, rep);
        if (dist > far_d) {
          far_d = dist;
          farthest = s;
        }
      }
      model.assignment[static_cast<std::size_t>(farthest)] = c;
      changed = true;
    }

    if (!changed) {
      model.converged = true;
      break;
    }
  }
  if (!model.converged) {
    std::cerr << "warning: clustering hit max_iter=" << max_iter
              << " before reaching a fixed point\n";
    for (int c = 0; c < n_clusters; ++c) {
      model.representatives[static_cast<std::size_t>(c)] = select_medoid(d2, model.assignment, c);
    }
  }

  model.rmse_to_representative.resize(static_cast<std::size_t>(p));
  for (int s = 0; s < p; ++s) {
    const int rep =
        model.representatives[static_cast<std::size_t>(model.assignment[static_cast<std::size_t>(s)])];
    model.rmse_to_representative[static_cast<std::size_t>(s)] = d(s, rep);
  }
  return model;
}

}  // namespace wsynth
