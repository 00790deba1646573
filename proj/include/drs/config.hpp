#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "drs/spectral_minimality.hpp"

namespace drs {

struct ConfigError : Error {
    ConfigError(std::string field, const std::string& msg)
        : Error(field.empty() ? msg : field + ": " + msg), field(std::move(field)), message(msg) {}
    std::string field;
    std::string message;
};

enum class Mode { Simplicity, CrossedProduct, Cohomology, Oracle };
enum class Format { TOML, JSON };

struct EdgeSpec {
    std::string name, o, t;
    std::optional<std::string> label;
};

struct GraphSpec {
    std::vector<std::string> vertices;
    std::vector<EdgeSpec> edges;
};

struct CochainEntry {
    Vec vector;
    std::string angle;
};

struct CocycleConfig {
    std::string kind = "degree"; // degree | trivial | ch
    std::size_t rank = 0;
    std::vector<std::vector<std::string>> pairing;
    std::vector<CochainEntry> cochain;
    long long radius = 0;
};

struct JobConfig {
    Mode mode = Mode::Simplicity;
    std::vector<std::pair<std::string, double>> basis;
    std::vector<GraphSpec> components;
    std::optional<CocycleConfig> cocycle;
    Bounds bounds;
    std::uint64_t seed = 0;
    std::vector<std::string> checks;

    bool operator==(const JobConfig& o) const;
};

std::string mode_name(Mode m);
// syntax only, no schema validation
Json parse_document(std::string_view text, Format fmt);
JobConfig parse_config(std::string_view text, Format fmt);
JobConfig config_from_json(const Json& j);
Json config_to_json(const JobConfig& c);
Format guess_format(const std::string& path, std::string_view text);

// materialized objects
BasisPtr make_basis(const JobConfig& c);
ProductSystem make_system(const JobConfig& c, const BasisPtr& basis);
Cocycle2 make_cocycle2(const CocycleConfig& c, const BasisPtr& basis);

} // namespace drs
