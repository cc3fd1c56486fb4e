#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace wsynth {

struct ClusterModel {
  std::vector<int> assignment;       // cluster index per series
  std::vector<int> representatives;  // series index per cluster (the medoid)
  int n_clusters = 0;
  int iterations = 0;
  bool converged = false;  // false when max_iter hit before a fixed point

  // Within-cluster RMSE of every series to its representative, for the
  // "suitable number of clusters" diagnostic.
  std::vector<double> rmse_to_representative;
};

// K-medoids-style alternation on the RMSE between series (columns of
// `series`, expected gaussianized so scale differences don't dominate):
// medoid selection minimizes the summed squared RMSE within the cluster,
// reassignment moves each series to its nearest representative. Ties break
// towards the lower cluster/series index; empty clusters are re-seeded with
// the series farthest from its current representative.
ClusterModel cluster_series(const Eigen::MatrixXd& series, int n_clusters,
                            std::uint64_t seed, int max_iter = 100);

// Pairwise RMSE matrix between columns.
Eigen::MatrixXd rmse_matrix(const Eigen::MatrixXd& series);

}  // namespace wsynth
