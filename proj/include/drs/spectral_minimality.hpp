#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "drs/abelian_cohomology.hpp"
#include "drs/graph_dynamics.hpp"
#include "drs/groupoid_algebra.hpp"

namespace drs {

using Json = nlohmann::ordered_json;

enum class Status { Simple, NotSimple, Unknown };
std::string status_name(Status s);

struct Reason {
    std::string kind; // NonMinimalSystem, NonDenseOrbit, AnnihilatorFunctional, DenseCertificate, SearchExhausted
    Json data;
};

struct Verdict {
    Status status = Status::Unknown;
    std::vector<Reason> reasons;
    Json derivation = Json::object();

    Json to_json() const;
};

struct Bounds {
    std::size_t prefix = 4;
    std::size_t cycle = 4;
    long long degree = 4;
    int depth = 6;
    double epsilon = 0.05;
    long long samples = 10000;
    bool operator==(const Bounds&) const = default;
};

struct CircleResult {
    bool dense = false;
    std::optional<ExactAngle> generator;  // one with nonzero irrational part
    std::vector<ExactAngle> subgroup;     // the finite subgroup when not dense
};
CircleResult circle_dense(const std::vector<ExactAngle>& gens);

struct TorusSubgroupPresentation {
    std::size_t dim = 0;
    std::vector<AngleVector> generators;
    AngleVector offset;
};

struct TorusResult {
    bool dense = false;
    std::optional<Vec> annihilator;
    Sublattice annihilators; // every m with m.g = 0 for all generators
};
TorusResult torus_dense(const TorusSubgroupPresentation& p);

DensityResult rho_orbit_dense(const Graph& g, const EdgeLabeling& l, const EPPoint& x);

Verdict crossed_product_simple(const Graph& g, const EdgeLabeling& l);
Verdict simplicity_pipeline(const ProductSystem& s, const CocycleSpec& sigma, const Bounds& bounds = {});

Json angle_json(const ExactAngle& a);
Json point_json(const Graph& g, const EPPoint& x);
Json word_json(const Graph& g, const std::vector<int>& w);
Json vec_json(const Vec& v);
Json intvec_json(const IntVec& v);
Json lattice_json(const Sublattice& l);
Json pairing_json(const Bicharacter& b);
Json angles_json(const std::vector<ExactAngle>& v);
Json product_point_json(const ProductSystem& s, const Point& x);

} // namespace drs
