#include "drs/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "toml.hpp"

namespace drs {

namespace {

Json toml_to_json(const toml::node& n, const std::string& path) {
    if (auto t = n.as_table()) {
        Json j = Json::object();
        for (const auto& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v, path.empty() ? std::string(k.str()) : path + "." + std::string(k.str()));
        return j;
    }
    if (auto a = n.as_array()) {
        Json j = Json::array();
        std::size_t i = 0;
        for (const auto& v : *a) j.push_back(toml_to_json(v, path + "[" + std::to_string(i++) + "]"));
        return j;
    }
    if (auto s = n.as_string()) return s->get();
    if (auto i = n.as_integer()) return i->get();
    if (auto f = n.as_floating_point()) return f->get();
    if (auto b = n.as_boolean()) return b->get();
    throw ConfigError(path, "unsupported TOML value type");
}

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(path, "expected a table/object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; });
        if (!ok) throw ConfigError(at(path, it.key()), "unknown key");
    }
}

std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

long long get_int(const Json& j, const std::string& path, long long lo = std::numeric_limits<long long>::min()) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    long long v = j.get<long long>();
    if (v < lo) throw ConfigError(path, "must be at least " + std::to_string(lo));
    return v;
}

double get_number(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    return j.get<double>();
}

const Json& require(const Json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw ConfigError(at(path, key), "missing required field");
    return j.at(key);
}

std::string canonical_angle(const Json& j, const std::string& path, const BasisPtr& basis) {
    std::string s = get_string(j, path);
    try {
        return parse_angle(s, basis).str();
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

Mode parse_mode(const std::string& s, const std::string& path) {
    if (s == "simplicity") return Mode::Simplicity;
    if (s == "crossed-product") return Mode::CrossedProduct;
    if (s == "cohomology") return Mode::Cohomology;
    if (s == "oracle") return Mode::Oracle;
    throw ConfigError(path, "unknown mode '" + s + "'");
}

const std::set<std::string>& known_checks() {
    static const std::set<std::string> k{"minimality", "periodicity", "forward_orbit", "crossed_product",
                                         "cocycle_identity", "groupoid_axioms"};
    return k;
}

} // namespace

std::string mode_name(Mode m) {
    switch (m) {
    case Mode::Simplicity: return "simplicity";
    case Mode::CrossedProduct: return "crossed-product";
    case Mode::Cohomology: return "cohomology";
    default: return "oracle";
    }
}

Format guess_format(const std::string& path, std::string_view text) {
    auto ends = [&](const std::string& suf) {
        return path.size() >= suf.size() && path.compare(path.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends(".json")) return Format::JSON;
    if (ends(".toml")) return Format::TOML;
    auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string_view::npos && text[pos] == '{' ? Format::JSON : Format::TOML;
}

Json parse_document(std::string_view text, Format fmt) {
    Json j;
    if (fmt == Format::JSON) {
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ConfigError("", std::string("JSON syntax error: ") + e.what());
        }
    } else {
        try {
            toml::table t = toml::parse(text);
            j = toml_to_json(t, "");
        } catch (const toml::parse_error& e) {
            std::ostringstream os;
            os << "TOML syntax error at line " << e.source().begin.line << ", column " << e.source().begin.column << ": "
               << e.description();
            throw ConfigError("", os.str());
        }
    }
    return j;
}

JobConfig parse_config(std::string_view text, Format fmt) { return config_from_json(parse_document(text, fmt)); }

JobConfig config_from_json(const Json& j) {
    check_keys(j, "", {"mode", "basis", "system", "cocycle", "bounds", "seed", "checks"});
    JobConfig c;
    c.mode = parse_mode(get_string(require(j, "", "mode"), "mode"), "mode");

    if (j.contains("basis")) {
        const Json& b = j.at("basis");
        if (!b.is_object()) throw ConfigError("basis", "expected a table/object of symbol = value");
        for (auto it = b.begin(); it != b.end(); ++it) c.basis.emplace_back(it.key(), get_number(it.value(), at("basis", it.key())));
    }
    BasisPtr basis;
    try {
        basis = std::make_shared<IrrationalBasis>(c.basis);
    } catch (const Error& e) {
        throw ConfigError("basis", e.what());
    }

    if (j.contains("system")) {
        const Json& s = j.at("system");
        check_keys(s, "system", {"components"});
        const Json& comps = require(s, "system", "components");
        if (!comps.is_array() || comps.empty()) throw ConfigError("system.components", "expected a nonempty array");
        for (std::size_t i = 0; i < comps.size(); ++i) {
            std::string p = idx("system.components", i);
            const Json& cj = comps[i];
            check_keys(cj, p, {"vertices", "edges"});
            GraphSpec gs;
            const Json& vs = require(cj, p, "vertices");
            if (!vs.is_array()) throw ConfigError(at(p, "vertices"), "expected an array of strings");
            for (std::size_t v = 0; v < vs.size(); ++v) gs.vertices.push_back(get_string(vs[v], idx(at(p, "vertices"), v)));
            const Json& es = require(cj, p, "edges");
            if (!es.is_array()) throw ConfigError(at(p, "edges"), "expected an array of edge records");
            for (std::size_t e = 0; e < es.size(); ++e) {
                std::string ep = idx(at(p, "edges"), e);
                check_keys(es[e], ep, {"name", "o", "t", "label"});
                EdgeSpec ed;
                ed.name = get_string(require(es[e], ep, "name"), at(ep, "name"));
                ed.o = get_string(require(es[e], ep, "o"), at(ep, "o"));
                ed.t = get_string(require(es[e], ep, "t"), at(ep, "t"));
                if (es[e].contains("label")) ed.label = canonical_angle(es[e].at("label"), at(ep, "label"), basis);
                gs.edges.push_back(std::move(ed));
            }
            std::size_t labeled = std::count_if(gs.edges.begin(), gs.edges.end(), [](const EdgeSpec& x) { return x.label.has_value(); });
            if (labeled != 0 && labeled != gs.edges.size())
                for (std::size_t e = 0; e < gs.edges.size(); ++e)
                    if (!gs.edges[e].label) throw ConfigError(at(idx(at(p, "edges"), e), "label"), "labels must be given on every edge or on none");
            std::vector<std::tuple<std::string, std::string, std::string>> raw;
            for (const auto& ed : gs.edges) raw.emplace_back(ed.name, ed.o, ed.t);
            try {
                Graph::from_names(gs.vertices, raw);
            } catch (const Error& e) {
                throw ConfigError(p, e.what());
            }
            c.components.push_back(std::move(gs));
        }
    }

    if (j.contains("cocycle")) {
        const Json& cj = j.at("cocycle");
        check_keys(cj, "cocycle", {"kind", "rank", "pairing", "cochain", "radius"});
        CocycleConfig cc;
        if (cj.contains("kind")) cc.kind = get_string(cj.at("kind"), "cocycle.kind");
        if (cc.kind != "degree" && cc.kind != "trivial" && cc.kind != "ch")
            throw ConfigError("cocycle.kind", "expected one of degree, trivial, ch");
        if (cc.kind == "ch") {
            for (const char* k : {"rank", "pairing", "cochain", "radius"})
                if (cj.contains(k)) throw ConfigError(at("cocycle", k), "not used by the ch cocycle");
            if (c.components.size() != 1) throw ConfigError("cocycle.kind", "the ch cocycle needs exactly one graph component");
            if (c.components[0].edges.empty() || !c.components[0].edges[0].label)
                throw ConfigError("system.components[0].edges", "the ch cocycle needs edge labels");
        } else {
            if (cj.contains("rank"))
                cc.rank = static_cast<std::size_t>(get_int(cj.at("rank"), "cocycle.rank", 1));
            else if (cc.kind == "trivial" && !c.components.empty())
                cc.rank = c.components.size();
            else
                throw ConfigError("cocycle.rank", "missing required field");
            if (cc.kind == "degree") {
                const Json& pj = require(cj, "cocycle", "pairing");
                if (!pj.is_array() || pj.size() != cc.rank) throw ConfigError("cocycle.pairing", "expected rank x rank array of angle strings");
                for (std::size_t r = 0; r < cc.rank; ++r) {
                    if (!pj[r].is_array() || pj[r].size() != cc.rank)
                        throw ConfigError(idx("cocycle.pairing", r), "expected an array of length rank");
                    std::vector<std::string> row;
                    for (std::size_t q = 0; q < cc.rank; ++q) row.push_back(canonical_angle(pj[r][q], idx(idx("cocycle.pairing", r), q), basis));
                    cc.pairing.push_back(row);
                }
            } else {
                if (cj.contains("pairing")) throw ConfigError("cocycle.pairing", "not used by the trivial cocycle");
                cc.pairing.assign(cc.rank, std::vector<std::string>(cc.rank, "0/1"));
            }
            long long need = 0;
            if (cj.contains("cochain")) {
                const Json& ch = cj.at("cochain");
                if (!ch.is_array()) throw ConfigError("cocycle.cochain", "expected an array of {vector, angle} records");
                for (std::size_t i = 0; i < ch.size(); ++i) {
                    std::string p = idx("cocycle.cochain", i);
                    check_keys(ch[i], p, {"vector", "angle"});
                    CochainEntry ce;
                    const Json& vj = require(ch[i], p, "vector");
                    if (!vj.is_array() || vj.size() != cc.rank) throw ConfigError(at(p, "vector"), "expected an integer vector of length rank");
                    for (std::size_t q = 0; q < vj.size(); ++q) {
                        ce.vector.push_back(get_int(vj[q], idx(at(p, "vector"), q)));
                        need = std::max(need, std::llabs(ce.vector.back()));
                    }
                    ce.angle = canonical_angle(require(ch[i], p, "angle"), at(p, "angle"), basis);
                    if (is_zero_vec(ce.vector) && ce.angle != "0/1") throw ConfigError(at(p, "angle"), "cochain must vanish at the zero vector");
                    cc.cochain.push_back(std::move(ce));
                }
            }
            cc.radius = need;
            if (cj.contains("radius")) {
                cc.radius = get_int(cj.at("radius"), "cocycle.radius", 0);
                if (cc.radius < need) throw ConfigError("cocycle.radius", "smaller than the largest cochain vector entry");
            }
        }
        c.cocycle = cc;
    }

    if (j.contains("bounds")) {
        const Json& b = j.at("bounds");
        check_keys(b, "bounds", {"prefix", "cycle", "degree", "depth", "epsilon", "samples"});
        if (b.contains("prefix")) c.bounds.prefix = static_cast<std::size_t>(get_int(b.at("prefix"), "bounds.prefix", 0));
        if (b.contains("cycle")) c.bounds.cycle = static_cast<std::size_t>(get_int(b.at("cycle"), "bounds.cycle", 1));
        if (b.contains("degree")) c.bounds.degree = get_int(b.at("degree"), "bounds.degree", 0);
        if (b.contains("depth")) c.bounds.depth = static_cast<int>(get_int(b.at("depth"), "bounds.depth", 1));
        if (b.contains("samples")) c.bounds.samples = get_int(b.at("samples"), "bounds.samples", 1);
        if (b.contains("epsilon")) {
            c.bounds.epsilon = get_number(b.at("epsilon"), "bounds.epsilon");
            if (!(c.bounds.epsilon > 0 && c.bounds.epsilon < 1)) throw ConfigError("bounds.epsilon", "must lie in (0, 1)");
        }
    }
    if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(get_int(j.at("seed"), "seed", 0));
    if (j.contains("checks")) {
        const Json& ck = j.at("checks");
        if (!ck.is_array()) throw ConfigError("checks", "expected an array of check names");
        for (std::size_t i = 0; i < ck.size(); ++i) {
            std::string n = get_string(ck[i], idx("checks", i));
            if (!known_checks().count(n)) throw ConfigError(idx("checks", i), "unknown check '" + n + "'");
            c.checks.push_back(n);
        }
    }

    switch (c.mode) {
    case Mode::Simplicity:
    case Mode::Oracle:
        if (c.components.empty()) throw ConfigError("system", "missing required section for mode " + mode_name(c.mode));
        break;
    case Mode::CrossedProduct:
        if (c.components.size() != 1) throw ConfigError("system.components", "crossed-product mode needs exactly one graph");
        if (c.components[0].edges.empty() || !c.components[0].edges[0].label)
            throw ConfigError("system.components[0].edges", "crossed-product mode needs edge labels");
        if (c.cocycle && c.cocycle->kind != "ch")
            throw ConfigError("cocycle.kind", "crossed-product mode uses the edge-label cocycle, expected 'ch'");
        break;
    case Mode::Cohomology:
        if (!c.cocycle) throw ConfigError("cocycle", "missing required section for mode cohomology");
        if (c.cocycle->kind == "ch") throw ConfigError("cocycle.kind", "cohomology mode needs a degree or trivial cocycle");
        break;
    }
    if (c.cocycle && c.cocycle->kind != "ch" && c.mode != Mode::Cohomology && c.cocycle->rank != c.components.size())
        throw ConfigError("cocycle.rank", "must equal the number of system components");
    return c;
}

Json config_to_json(const JobConfig& c) {
    Json j;
    j["mode"] = mode_name(c.mode);
    j["basis"] = Json::object();
    for (const auto& [k, v] : c.basis) j["basis"][k] = v;
    if (!c.components.empty()) {
        Json comps = Json::array();
        for (const auto& g : c.components) {
            Json edges = Json::array();
            for (const auto& e : g.edges) {
                Json ej{{"name", e.name}, {"o", e.o}, {"t", e.t}};
                if (e.label) ej["label"] = *e.label;
                edges.push_back(ej);
            }
            comps.push_back(Json{{"vertices", g.vertices}, {"edges", edges}});
        }
        j["system"] = Json{{"components", comps}};
    }
    if (c.cocycle) {
        const auto& cc = *c.cocycle;
        Json cj{{"kind", cc.kind}};
        if (cc.kind != "ch") {
            cj["rank"] = cc.rank;
            if (cc.kind == "degree") cj["pairing"] = cc.pairing;
            Json ch = Json::array();
            for (const auto& e : cc.cochain) ch.push_back(Json{{"vector", e.vector}, {"angle", e.angle}});
            cj["cochain"] = ch;
            cj["radius"] = cc.radius;
        }
        j["cocycle"] = cj;
    }
    j["bounds"] = Json{{"prefix", c.bounds.prefix}, {"cycle", c.bounds.cycle}, {"degree", c.bounds.degree},
                       {"depth", c.bounds.depth}, {"epsilon", c.bounds.epsilon}, {"samples", c.bounds.samples}};
    j["seed"] = c.seed;
    j["checks"] = c.checks;
    return j;
}

bool JobConfig::operator==(const JobConfig& o) const { return config_to_json(*this).dump() == config_to_json(o).dump(); }

BasisPtr make_basis(const JobConfig& c) { return std::make_shared<IrrationalBasis>(c.basis); }

ProductSystem make_system(const JobConfig& c, const BasisPtr& basis) {
    ProductSystem s;
    for (const auto& gs : c.components) {
        std::vector<std::tuple<std::string, std::string, std::string>> raw;
        for (const auto& e : gs.edges) raw.emplace_back(e.name, e.o, e.t);
        Component comp{Graph::from_names(gs.vertices, raw), std::nullopt};
        if (!gs.edges.empty() && gs.edges[0].label) {
            EdgeLabeling l;
            for (const auto& e : gs.edges) l.push_back(parse_angle(*e.label, basis));
            comp.labels = l;
        }
        s.components.push_back(std::move(comp));
    }
    return s;
}

Cocycle2 make_cocycle2(const CocycleConfig& c, const BasisPtr& basis) {
    std::vector<AngleVector> m(c.rank, AngleVector(c.rank));
    for (std::size_t i = 0; i < c.rank; ++i)
        for (std::size_t j = 0; j < c.rank; ++j) m[i][j] = parse_angle(c.pairing[i][j], basis);
    std::optional<OneCochain> b;
    if (!c.cochain.empty()) {
        b = OneCochain(c.rank, c.radius);
        for (const auto& e : c.cochain) b->set(e.vector, parse_angle(e.angle, basis));
    }
    return Cocycle2(Bicharacter(m), b);
}

} // namespace drs
