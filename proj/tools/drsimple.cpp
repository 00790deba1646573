#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "drs/orchestrator.hpp"

namespace {

struct Overrides {
    std::optional<long long> prefix, cycle, degree, depth, samples, seed;
    std::optional<double> epsilon;
};

const std::vector<std::string> kIntKeys{"prefix", "cycle", "degree", "depth", "samples"};

std::string upper(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

void apply_env(drs::Json& doc) {
    auto set = [&](const std::string& key, bool is_seed, bool is_double) {
        std::string var = "DRSIMPLE_" + upper(key);
        const char* v = std::getenv(var.c_str());
        if (!v) return;
        std::string s(v);
        try {
            std::size_t used = 0;
            drs::Json val;
            if (is_double)
                val = std::stod(s, &used);
            else
                val = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            if (is_seed)
                doc["seed"] = val;
            else
                doc["bounds"][key] = val;
        } catch (const std::logic_error&) {
            throw drs::ConfigError(var, "not a number: '" + s + "'");
        }
    };
    for (const auto& k : kIntKeys) set(k, false, false);
    set("epsilon", false, true);
    set("seed", true, false);
}

void apply_flags(drs::Json& doc, const Overrides& o) {
    auto put = [&](const char* k, const auto& v) {
        if (v) doc["bounds"][k] = *v;
    };
    put("prefix", o.prefix);
    put("cycle", o.cycle);
    put("degree", o.degree);
    put("depth", o.depth);
    put("samples", o.samples);
    put("epsilon", o.epsilon);
    if (o.seed) doc["seed"] = *o.seed;
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw drs::ConfigError("config", "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int emit_error(const std::string& kind, const std::string& field, const std::string& msg, int code) {
    drs::Json e{{"kind", kind}, {"message", msg}};
    if (!field.empty()) e["field"] = field;
    std::cout << drs::Json{{"error", e}}.dump(2) << "\n";
    std::cerr << "drsimple: " << kind << " error" << (field.empty() ? "" : " in " + field) << ": " << msg << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simplicity checks for twisted Deaconu-Renault groupoid algebras of graph systems"};
    app.require_subcommand(1);

    std::string path, format;
    Overrides o;
    bool no_timings = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", path, "TOML or JSON job file, '-' for stdin")->required();
        sub->add_option("--format", format, "toml or json (default: from extension)")->check(CLI::IsMember({"toml", "json"}));
        sub->add_option("--prefix", o.prefix, "max prefix length of enumerated points");
        sub->add_option("--cycle", o.cycle, "max cycle length of enumerated points");
        sub->add_option("--degree", o.degree, "max |degree| of enumerated arrows");
        sub->add_option("--depth", o.depth, "cylinder depth for oracles");
        sub->add_option("--epsilon", o.epsilon, "epsilon-net spacing");
        sub->add_option("--samples", o.samples, "Monte-Carlo sample budget");
        sub->add_option("--seed", o.seed, "oracle seed");
        sub->add_flag("--no-timings", no_timings, "omit the timings field");
    };
    auto* check = app.add_subcommand("check", "decide simplicity (mode simplicity or crossed-product)");
    auto* coh = app.add_subcommand("cohomology", "normalize the cocycle and dump centre and quotient");
    auto* orc = app.add_subcommand("oracle", "run brute-force oracle checks");
    for (auto* s : {check, coh, orc}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error("usage", "", e.what(), 3);
    }

    drs::JobConfig cfg;
    try {
        std::string text = read_input(path);
        drs::Format fmt = format.empty() ? drs::guess_format(path, text) : (format == "json" ? drs::Format::JSON : drs::Format::TOML);
        drs::Json doc = drs::parse_document(text, fmt);
        if (!doc.is_object()) throw drs::ConfigError("", "top level must be a table/object");
        apply_env(doc);
        apply_flags(doc, o);
        if (coh->parsed())
            doc["mode"] = "cohomology";
        else if (orc->parsed())
            doc["mode"] = "oracle";
        else if (doc.contains("mode") && doc["mode"] != "simplicity" && doc["mode"] != "crossed-product")
            throw drs::ConfigError("mode", "check expects mode simplicity or crossed-product");
        cfg = drs::config_from_json(doc);
    } catch (const drs::ConfigError& e) {
        return emit_error("input", e.field, e.message, 3);
    } catch (const std::exception& e) {
        return emit_error("input", "", e.what(), 3);
    }

    try {
        drs::Report rep = drs::run(cfg);
        std::cout << rep.to_json(!no_timings).dump(2) << "\n";
        for (const auto& r : rep.oracle_results)
            if (!r.passed) std::cerr << "drsimple: oracle check " << r.check << " failed\n";
        return rep.exit_code;
    } catch (const std::exception& e) {
        return emit_error("internal", "", e.what(), 2);
    }
}
