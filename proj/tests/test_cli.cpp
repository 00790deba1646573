#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

#include "drs/config.hpp"
#include "drs/orchestrator.hpp"

using drs::Json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    Json json() const { return Json::parse(out); }
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + DRSIMPLE_BIN + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string cfg(const std::string& name) { return std::string(DRS_CONFIG_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("drsimple_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

const char* kLoopHalfJson = R"({
  "mode": "crossed-product",
  "system": {"components": [{"vertices": ["v"], "edges": [{"name": "e", "o": "v", "t": "v", "label": "1/2"}]}]}
})";

} // namespace

TEST_CASE("exit codes follow the verdict") {
    Run s = run("check --no-timings " + cfg("loop_irrational.toml"));
    CHECK(s.code == 0);
    CHECK(s.json()["verdict"]["status"] == "Simple");
    Run h = run("check --no-timings " + cfg("loop_half.toml"));
    CHECK(h.code == 1);
    Json v = h.json()["verdict"];
    CHECK(v["status"] == "NotSimple");
    CHECK(v["reasons"][0]["data"]["cosets"] == Json::array({"0/1", "1/2"}));
    CHECK(run("check " + cfg("two_loops.toml")).code == 1);
    CHECK(run("check " + cfg("figure_eight.json")).code == 0);
    CHECK(run("check " + cfg("product_beta.toml")).code == 0);
}

TEST_CASE("input errors name the field") {
    Run b = run("check " + cfg("bad_angle.toml"));
    CHECK(b.code == 3);
    CHECK(b.json()["error"]["field"] == "system.components[0].edges[0].label");
    std::string unk = write_temp("unknown.json", R"({"mode": "simplicity", "sytem": {}})");
    Run u = run("check " + unk);
    CHECK(u.code == 3);
    CHECK(u.json()["error"]["field"] == "sytem");
    std::string nomode = write_temp("nomode.toml", "[[system.components]]\nvertices = [\"v\"]\nedges = [{ name = \"e\", o = \"v\", t = \"v\" }]\n");
    Run m = run("check " + nomode);
    CHECK(m.code == 3);
    CHECK(m.json()["error"]["field"] == "mode");
    std::string wrong = write_temp("wrong_kind.toml", std::string("mode = \"crossed-product\"\n[cocycle]\nkind = \"trivial\"\n") +
                                                         "[[system.components]]\nvertices = [\"v\"]\n" +
                                                         "edges = [{ name = \"e\", o = \"v\", t = \"v\", label = \"1/2\" }]\n");
    Run k = run("check " + wrong);
    CHECK(k.code == 3);
    CHECK(k.json()["error"]["field"] == "cocycle.kind");
    std::string broken = write_temp("broken.toml", "mode = \n");
    CHECK(run("check " + broken).code == 3);
    CHECK(run("check /nonexistent/job.toml").code == 3);
}

TEST_CASE("output is deterministic without timings") {
    for (const char* f : {"loop_half.toml", "product_beta.toml"}) {
        Run a = run("oracle --no-timings " + cfg(f));
        Run b = run("oracle --no-timings " + cfg(f));
        CHECK(a.out == b.out);
        CHECK_FALSE(a.json().contains("timings"));
    }
    Run t = run("check " + cfg("loop_half.toml"));
    CHECK(t.json()["timings"]["total"].is_number());
}

TEST_CASE("toml and json inputs are equivalent") {
    std::string j = write_temp("loop_half.json", kLoopHalfJson);
    Run a = run("check --no-timings " + cfg("loop_half.toml"));
    Run b = run("check --no-timings " + j);
    CHECK(a.out == b.out);
    Run c = run("check --no-timings --format json - < " + j);
    CHECK(c.out == a.out);
}

TEST_CASE("input echo round trips") {
    for (const char* f : {"loop_irrational.toml", "product_beta.toml", "figure_eight.json", "skew_half.toml"}) {
        std::string path = cfg(f);
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)), {});
        drs::JobConfig c = drs::parse_config(text, drs::guess_format(path, text));
        std::string sub = c.mode == drs::Mode::Cohomology ? "cohomology" : "oracle";
        Run r = run(sub + " --no-timings " + path);
        Json echo = r.json()["input_echo"];
        drs::JobConfig back = drs::parse_config(echo.dump(), drs::Format::JSON);
        back.mode = c.mode;
        back.checks = c.checks;
        CHECK(back == c);
    }
}

TEST_CASE("cohomology subcommand") {
    Run r = run("cohomology --no-timings " + cfg("skew_half.toml"));
    CHECK(r.code == 1);
    Json j = r.json();
    CHECK(j["cohomology"]["centre"] == Json::array({Json::array({2, 0}), Json::array({0, 2})}));
    CHECK(j["cohomology"]["omega_tilde"]["orders"] == Json::array({"2", "2"}));
    CHECK(run("check " + cfg("skew_half.toml")).code == 3);
}

TEST_CASE("oracle subcommand passes on the example configs") {
    for (const char* f : {"loop_irrational.toml", "loop_half.toml", "two_loops.toml", "figure_eight.json", "product_beta.toml"}) {
        Run r = run("oracle --no-timings " + cfg(f));
        CHECK_MESSAGE(r.code == 0, f);
        for (const auto& o : r.json()["oracle_results"]) CHECK(o["passed"] == true);
    }
}

TEST_CASE("bounds precedence is config, env, flags") {
    std::string path = write_temp("bounds.toml", std::string("mode = \"crossed-product\"\n[bounds]\nprefix = 2\n") +
                                                     "[[system.components]]\nvertices = [\"v\"]\n" +
                                                     "edges = [{ name = \"e\", o = \"v\", t = \"v\", label = \"1/2\" }]\n");
    auto bounds = [](const Run& r) { return r.json()["input_echo"]["bounds"]; };
    CHECK(bounds(run("check --no-timings " + path))["prefix"] == 2);
    CHECK(bounds(run("check --no-timings " + path, "DRSIMPLE_PREFIX=3"))["prefix"] == 3);
    CHECK(bounds(run("check --no-timings --prefix 5 " + path, "DRSIMPLE_PREFIX=3"))["prefix"] == 5);
    CHECK(run("check --no-timings --seed 9 " + path).json()["input_echo"]["seed"] == 9);
    Run bad = run("check " + path, "DRSIMPLE_DEPTH=abc");
    CHECK(bad.code == 3);
    CHECK(bad.json()["error"]["field"] == "DRSIMPLE_DEPTH");
    CHECK(run("check --epsilon 2 " + path).code == 3);
}

TEST_CASE("counterexample replay reproduces the check") {
    drs::JobConfig c = drs::parse_config(kLoopHalfJson, drs::Format::JSON);
    drs::Report rep = drs::run(c);
    for (const auto& o : rep.oracle_results) CHECK(o.passed);
    // a replay document is a complete config restricted to one check
    drs::JobConfig rc = c;
    rc.mode = drs::Mode::Oracle;
    rc.checks = {"crossed_product"};
    std::string path = write_temp("replay.json", drs::config_to_json(rc).dump());
    Run r = run("oracle --no-timings " + path);
    CHECK(r.code == 0);
    REQUIRE(r.json()["oracle_results"].size() == 1);
    CHECK(r.json()["oracle_results"][0]["check"] == "crossed_product");
}
