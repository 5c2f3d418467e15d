#include "agentmem/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "agentmem/errors.hpp"
#include "agentmem/stable_hash.hpp"

namespace agentmem::analytics {

namespace {

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double sq_dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void check_same_dim(const std::vector<Vec>& vectors) {
    for (const auto& v : vectors)
        if (v.size() != vectors.front().size())
            throw InputError("vectors must share one dimension");
}

// Unbiased double in [0, 1) from the raw engine; std::uniform_real_distribution
// output is implementation-defined, which would break cross-platform seeds.
double rand01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t rand_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rand01(rng) * static_cast<double>(n)) % n;
}

} // namespace

double pairwise_cosine_mean(const std::vector<Vec>& vectors) {
    if (vectors.size() < 2) throw InputError("pairwise_cosine_mean needs >= 2 vectors");
    check_same_dim(vectors);
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const double ni = norm(vectors[i]);
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            const double nj = norm(vectors[j]);
            const double denom = ni * nj;
            const double cos = denom > 0.0 ? dot(vectors[i], vectors[j]) / denom : 0.0;
            sum += 1.0 - cos;
            ++pairs;
        }
    }
    return sum / static_cast<double>(pairs);
}

KMeansResult kmeans(const std::vector<Vec>& vectors, int k, std::uint64_t seed) {
    const std::size_t n = vectors.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw InputError("kmeans: need 1 <= k <= n");
    check_same_dim(vectors);

    std::mt19937_64 rng(seed);
    const std::size_t dim = vectors.front().size();

    // k-means++ seeding.
    std::vector<Vec> centroids;
    centroids.reserve(k);
    centroids.push_back(vectors[rand_index(rng, n)]);
    std::vector<double> min_sq(n, std::numeric_limits<double>::max());
    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            min_sq[i] = std::min(min_sq[i], sq_dist(vectors[i], centroids.back()));
            total += min_sq[i];
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = rand01(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += min_sq[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rand_index(rng, n);
        }
        centroids.push_back(vectors[pick]);
    }

    KMeansResult result;
    result.assignments.assign(n, -1);

    auto assign = [&]() -> std::pair<bool, double> {
        bool changed = false;
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_sq = std::numeric_limits<double>::max();
            for (int c = 0; c < k; ++c) {
                const double d = sq_dist(vectors[i], centroids[c]);
                if (d < best_sq) {
                    best_sq = d;
                    best = c;
                }
            }
            if (result.assignments[i] != best) {
                result.assignments[i] = best;
                changed = true;
            }
            inertia += best_sq;
        }
        return {changed, inertia};
    };

    constexpr int kMaxIterations = 300;
    double inertia = 0.0;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        auto [changed, current] = assign();
        inertia = current;
        result.inertia_trace.push_back(inertia);
        result.iterations = iter + 1;
        if (!changed && iter > 0) break;

        // Recompute centroids.
        std::vector<Vec> sums(k, Vec(dim, 0.0));
        std::vector<int> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const int c = result.assignments[i];
            ++counts[c];
            for (std::size_t d = 0; d < dim; ++d) sums[c][d] += vectors[i][d];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // Repair: steal the point farthest from its centroid.
                std::size_t farthest = 0;
                double far_sq = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = sq_dist(vectors[i], centroids[result.assignments[i]]);
                    if (d > far_sq && counts[result.assignments[i]] > 1) {
                        far_sq = d;
                        farthest = i;
                    }
                }
                --counts[result.assignments[farthest]];
                for (std::size_t d = 0; d < dim; ++d)
                    sums[result.assignments[farthest]][d] -= vectors[farthest][d];
                result.assignments[farthest] = c;
                counts[c] = 1;
                sums[c] = vectors[farthest];
            }
            for (std::size_t d = 0; d < dim; ++d)
                centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
        }
        if (!changed) break;
    }

    result.centroids = std::move(centroids);
    result.inertia = inertia;
    return result;
}

double silhouette(const std::vector<Vec>& vectors, const std::vector<int>& assignments) {
    if (vectors.size() != assignments.size())
        throw InputError("silhouette: vectors/assignments size mismatch");
    const std::size_t n = vectors.size();
    if (n == 0) throw InputError("silhouette: empty input");
    check_same_dim(vectors);

    const int k = *std::max_element(assignments.begin(), assignments.end()) + 1;
    std::vector<std::size_t> cluster_size(k, 0);
    for (int a : assignments) {
        if (a < 0) throw InputError("silhouette: negative cluster label");
        ++cluster_size[a];
    }
    int nonempty = 0;
    for (std::size_t s : cluster_size) nonempty += s > 0 ? 1 : 0;
    if (nonempty < 2) throw InputError("silhouette needs >= 2 nonempty clusters");

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int own = assignments[i];
        if (cluster_size[own] == 1) continue; // singleton scores 0
        std::vector<double> dist_sum(k, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            dist_sum[assignments[j]] += std::sqrt(sq_dist(vectors[i], vectors[j]));
        }
        const double a = dist_sum[own] / static_cast<double>(cluster_size[own] - 1);
        double b = std::numeric_limits<double>::max();
        for (int c = 0; c < k; ++c) {
            if (c == own || cluster_size[c] == 0) continue;
            b = std::min(b, dist_sum[c] / static_cast<double>(cluster_size[c]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

int elbow_select(const std::vector<int>& k_values, const std::vector<double>& inertias,
                 std::string* warning) {
    if (k_values.size() != inertias.size())
        throw InputError("elbow_select: k/inertia size mismatch");
    if (k_values.size() < 3) throw InputError("elbow_select needs >= 3 points");
    for (std::size_t i = 1; i < inertias.size(); ++i) {
        if (inertias[i] > inertias[i - 1] && warning) {
            *warning = "inertia curve increases at k=" + std::to_string(k_values[i]);
        }
    }
    int best_k = k_values[1];
    double best_curvature = -std::numeric_limits<double>::max();
    for (std::size_t i = 1; i + 1 < inertias.size(); ++i) {
        const double curvature = inertias[i - 1] - 2.0 * inertias[i] + inertias[i + 1];
        // Strict > keeps the smallest k on ties.
        if (curvature > best_curvature) {
            best_curvature = curvature;
            best_k = k_values[i];
        }
    }
    return best_k;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw InputError("pearson: size mismatch");
    if (xs.size() < 2) throw InputError("pearson needs >= 2 points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

DiversityReport build_diversity_report(const std::vector<std::vector<Vec>>& groups,
                                       int n_samples_per_task, double temperature_used) {
    DiversityReport report;
    report.n_samples_per_task = n_samples_per_task;
    report.temperature_used = temperature_used;

    std::vector<Vec> pooled;
    for (const auto& group : groups) {
        for (const auto& v : group) pooled.push_back(v);
        if (group.size() < 2) continue;
        report.per_sample_mean_distance.push_back(pairwise_cosine_mean(group));
    }
    if (report.per_sample_mean_distance.empty())
        throw InputError("diversity report needs at least one group with >= 2 reflections");
    double sum = 0.0;
    for (double d : report.per_sample_mean_distance) sum += d;
    report.d_mean = sum / static_cast<double>(report.per_sample_mean_distance.size());
    report.d_mean_pooled =
        pooled.size() >= 2 ? pairwise_cosine_mean(pooled) : report.d_mean;
    return report;
}

ClusteringReport build_clustering_report(const std::vector<Vec>& vectors, int max_k,
                                         std::uint64_t seed) {
    if (vectors.size() < 4)
        throw InputError("clustering report needs >= 4 vectors");
    ClusteringReport report;
    const int top = std::min<int>(max_k, static_cast<int>(vectors.size()) - 1);
    for (int k = 1; k <= top; ++k) {
        const auto result = kmeans(vectors, k, fnv1a64_mix(seed, static_cast<std::uint64_t>(k)));
        report.k_values.push_back(k);
        report.inertias.push_back(result.inertia);
        report.silhouettes.push_back(k >= 2 ? silhouette(vectors, result.assignments)
                                            : std::numeric_limits<double>::quiet_NaN());
    }
    report.k_star = elbow_select(report.k_values, report.inertias, &report.warning);
    return report;
}

} // namespace agentmem::analytics
