#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drs/abelian_cohomology.hpp"
#include "drs/exact_circle.hpp"
#include "drs/integer_lattice.hpp"

namespace drs {

struct GraphError : Error {
    using Error::Error;
};
struct NotMinimal : Error {
    using Error::Error;
};

struct Edge {
    std::string name;
    int o = 0; // origin (source)
    int t = 0; // terminus (range)
};

class Graph {
public:
    Graph() = default;
    Graph(std::vector<std::string> vertices, std::vector<Edge> edges);
    // edges given as (name, origin name, terminus name)
    static Graph from_names(std::vector<std::string> vertices,
                            const std::vector<std::tuple<std::string, std::string, std::string>>& edges);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }
    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& name) const;

    const std::vector<int>& edges_from(int v) const { return out_[v]; } // o(e) = v
    const std::vector<int>& edges_into(int v) const { return in_[v]; }  // t(e) = v

    // u ~> w: there is a path nu with o(nu) = u, t(nu) = w (empty path allowed)
    bool reaches(int u, int w) const { return reach_[u][w]; }
    const std::vector<int>& scc_of() const { return scc_; }
    int scc_count() const { return scc_count_; }
    bool on_cycle(int v) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<std::vector<char>> reach_;
    std::vector<int> scc_;
    int scc_count_ = 0;
};

// e_1 ... e_n with o(e_i) = t(e_{i+1}); vertex used only when empty
struct PathWord {
    std::vector<int> edges;
    int vertex = -1;

    bool empty() const { return edges.empty(); }
    std::size_t size() const { return edges.size(); }
    bool operator==(const PathWord&) const = default;
};

bool composable(const Graph& g, const std::vector<int>& word);
int word_terminus(const Graph& g, const PathWord& w);
int word_origin(const Graph& g, const PathWord& w);

// prefix . cycle^infinity in canonical form
class EPPoint {
public:
    EPPoint() = default;
    EPPoint(const Graph& g, std::vector<int> prefix, std::vector<int> cycle);

    const std::vector<int>& prefix() const { return prefix_; }
    const std::vector<int>& cycle() const { return cycle_; }
    int edge_at(std::size_t i) const; // i-th edge of the infinite path, 0-based
    std::vector<int> first_edges(std::size_t n) const;
    EPPoint shifted(std::size_t n) const;
    // the period of the tail
    std::size_t period() const { return cycle_.size(); }

    auto operator<=>(const EPPoint&) const = default;
    std::string str(const Graph& g) const;

private:
    std::vector<int> prefix_, cycle_;
};

using EdgeLabeling = std::vector<ExactAngle>;

struct Component {
    Graph graph;
    std::optional<EdgeLabeling> labels;
};

struct ProductSystem {
    std::vector<Component> components;
    std::size_t rank() const { return components.size(); }
};

EPPoint shift(const EPPoint& x, std::size_t n);
int point_vertex(const Graph& g, const EPPoint& x); // t(x)
ExactAngle label_sum(const EdgeLabeling& l, const PathWord& w);
ExactAngle label_sum(const EdgeLabeling& l, const std::vector<int>& edges);
ExactAngle h_tilde(const Graph& g, const EdgeLabeling& l, const PathWord& mu, const PathWord& nu);

struct MinimalityWitness {
    int cycle_vertex = -1;
    int unreachable = -1;
};
bool is_minimal(const Graph& g);
std::optional<MinimalityWitness> minimality_witness(const Graph& g);
bool is_path_space_uncountable(const Graph& g);
Sublattice compute_P_T(const Graph& g);
Sublattice compute_P_T(const ProductSystem& s);

// every primitive cycle word of length <= max_len (all rotations)
std::vector<std::vector<int>> enumerate_cycles(const Graph& g, std::size_t max_len);
// canonical points with |prefix| <= max_prefix, |cycle| <= max_cycle
std::vector<EPPoint> enumerate_points(const Graph& g, std::size_t max_prefix, std::size_t max_cycle);
// all points of a graph with countable path space
std::vector<EPPoint> all_points_countable(const Graph& g);

// a closed walk with nonzero irrational label inside the SCC of v, if any
std::optional<std::vector<int>> irrational_cycle_in_scc(const Graph& g, const EdgeLabeling& l, int scc);

struct OrbitWitness {
    int vertex = -1;                 // target vertex where density fails
    bool unreachable = false;
    std::vector<ExactAngle> cosets;  // exact finite set of achievable labels
};

struct DensityResult {
    bool dense = false;
    std::optional<std::vector<int>> certificate_cycle; // cycle with irrational label
    std::optional<OrbitWitness> witness;
};

// closure of {(t(mu), l(mu)) : o(mu) = v} is all of E0 x T
DensityResult forward_orbit_dense(const Graph& g, const EdgeLabeling& l, int v);

// labels {l(mu) : o(mu) = v, t(mu) = w}; finite unless an irrational cycle is usable
std::vector<ExactAngle> reachable_labels(const Graph& g, const EdgeLabeling& l,
                                         const std::vector<std::pair<int, ExactAngle>>& starts, int w,
                                         std::size_t cap = 200000);

// reduce a word: the primitive root of a cycle word
std::vector<int> primitive_root(const std::vector<int>& c);

} // namespace drs
