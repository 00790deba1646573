#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "drs/exact_circle.hpp"
#include "drs/graph_dynamics.hpp"

// Brute-force checks that avoid the decision shortcuts used by the library.
namespace drs::oracle {

using Rng = std::mt19937_64;

// raw eventually periodic edge sequence, no canonical form
struct RawPoint {
    std::vector<int> prefix, cycle;
    int at(std::size_t i) const {
        return i < prefix.size() ? prefix[i] : cycle[(i - prefix.size()) % cycle.size()];
    }
};

std::vector<std::vector<int>> closed_walks(const Graph& g, std::size_t max_len);
std::vector<RawPoint> raw_points(const Graph& g, std::size_t max_prefix, std::size_t max_cycle);

// every enumerated point's orbit meets every cylinder of length <= depth
bool minimal(const Graph& g, int depth);

// displacements p with |p| <= window such that (x,p,x) is an arrow for every enumerated point
std::set<long long> periodicity_window(const Graph& g, long long window);

double circle_distance(double a, double b);

std::vector<double> sample_circle_subgroup(const std::vector<ExactAngle>& gens, long long samples, Rng& rng);
std::vector<std::vector<double>> sample_torus_subgroup(const std::vector<AngleVector>& gens, std::size_t dim,
                                                       long long samples, Rng& rng);
// every grid target (spacing eps) lies within eps of a sample
bool covers_circle(const std::vector<double>& samples, double eps);
bool covers_torus(const std::vector<std::vector<double>>& samples, std::size_t dim, double eps);

// random walks along o -> t from weighted starts that never strand in a dead end; dead-end tails
// are recorded exhaustively. numeric labels per visited vertex
std::map<int, std::vector<double>> walk_labels(const Graph& g, const EdgeLabeling& l,
                                               const std::vector<std::pair<int, double>>& starts, long long samples,
                                               int max_len, Rng& rng);

// exact labels of every path of length <= max_len from the starts, keyed by end vertex
std::map<int, std::set<ExactAngle>> exact_path_labels(const Graph& g, const EdgeLabeling& l,
                                                      const std::vector<std::pair<int, ExactAngle>>& starts,
                                                      int max_len);

} // namespace drs::oracle
