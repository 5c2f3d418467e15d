#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace agentmem::analytics {

using Vec = std::vector<double>;

/// Mean of (1 - cosine similarity) over all C(n,2) pairs. Needs >= 2 vectors.
double pairwise_cosine_mean(const std::vector<Vec>& vectors);

struct KMeansResult {
    std::vector<int> assignments;
    std::vector<Vec> centroids;
    double inertia = 0.0;
    int iterations = 0;
    /// Inertia after each Lloyd iteration; non-increasing.
    std::vector<double> inertia_trace;
};

/// Lloyd's algorithm with k-means++ seeding. Deterministic for a fixed seed;
/// runs to an assignment fixpoint or 300 iterations. Empty clusters are
/// repaired by stealing the point farthest from its centroid.
KMeansResult kmeans(const std::vector<Vec>& vectors, int k, std::uint64_t seed);

/// Mean silhouette over all points (Euclidean distances). Points in singleton
/// clusters score 0; so do points where max(a, b) = 0. Needs >= 2 nonempty
/// clusters.
double silhouette(const std::vector<Vec>& vectors, const std::vector<int>& assignments);

/// Knee of the inertia curve: k at the maximum discrete second difference,
/// ties toward smaller k. Needs >= 3 (k, inertia) points. Emits `warning` when
/// the curve is not non-increasing.
int elbow_select(const std::vector<int>& k_values, const std::vector<double>& inertias,
                 std::string* warning = nullptr);

/// Sample Pearson correlation; NaN when either side has zero variance.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Diversity statistics for one collection of reflection groups (one group per
/// task). d_mean averages the per-group means; d_mean_pooled treats all pairs
/// globally.
struct DiversityReport {
    std::vector<double> per_sample_mean_distance;
    double d_mean = 0.0;
    double d_mean_pooled = 0.0;
    int n_samples_per_task = 10;
    double temperature_used = 1.0;
};

DiversityReport build_diversity_report(const std::vector<std::vector<Vec>>& groups,
                                       int n_samples_per_task = 10, double temperature_used = 1.0);

struct ClusteringReport {
    std::vector<int> k_values;
    std::vector<double> inertias;
    /// NaN where undefined (k = 1).
    std::vector<double> silhouettes;
    int k_star = 0;
    std::string warning;
};

/// Sweeps k over [1, min(max_k, n-1)], clustering with per-k deterministic
/// seeds derived from `seed`, then picks k_star by the elbow rule.
ClusteringReport build_clustering_report(const std::vector<Vec>& vectors, int max_k,
                                         std::uint64_t seed);

} // namespace agentmem::analytics
