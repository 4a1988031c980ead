// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "condlab/config.hpp"
#include "condlab/errors.hpp"

using namespace condlab;

namespace {

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("values of every supported type") {
        const Config c = Config::parse(R"(# comment
top = 1
[a]
x = 2.5e-3
flag = true
name = "cubic \"box\""
list = [1, 2,
        3]
grid = { start = 1e4, factor = 10, count = 3 }
)");
        const ConfigReader r(c);
        CHECK(r.number("", "top") == 1.0);
        CHECK(r.number("a", "x") == 2.5e-3);
        CHECK(r.boolean("a", "flag", false));
        CHECK(r.text("a", "name") == "cubic \"box\"");
        CHECK(r.grid("a", "list") == std::vector<double>{1.0, 2.0, 3.0});
        const std::vector<double> g = r.grid("a", "grid");
        REQUIRE(g.size() == 3);
        CHECK(g[0] == 1e4);
        CHECK(g[2] == doctest::Approx(1e6).epsilon(1e-15));
        CHECK_NOTHROW(r.finish());
        CHECK(c.find("a", "list")->line == 7);
    }

    TEST_CASE("defaults enter the resolved config") {
        const Config c = Config::parse("[s]\nx = 1\n");
        const ConfigReader r(c);
        CHECK(r.number("s", "x", 7.0) == 1.0);
        CHECK(r.number("s", "y", 7.0) == 7.0);
        CHECK(r.integer("s", "n", 3) == 3);
        CHECK(r.text("t", "mode", "auto") == "auto");
        CHECK_FALSE(r.optional_number("s", "z"));
        CHECK(r.resolved()["s"]["x"] == 1.0);
        CHECK(r.resolved()["s"]["y"] == 7.0);
        CHECK(r.resolved()["t"]["mode"] == "auto");
    }

    TEST_CASE("unknown keys are named with their line") {
        const Config c = Config::parse("[s]\nx = 1\n\nvolum = 4\n", "run.toml");
        const ConfigReader r(c);
        r.number("s", "x");
        const std::string m = message_of([&] { r.finish(); });
        CHECK(m.find("run.toml:4") != std::string::npos);
        CHECK(m.find("s.volum") != std::string::npos);
    }

    TEST_CASE("missing and mistyped keys") {
        const Config c = Config::parse("[s]\nx = \"text\"\nn = 2.5\n");
        const ConfigReader r(c);
        CHECK(message_of([&] { r.number("s", "y"); }).find("s.y") != std::string::npos);
        CHECK_THROWS_AS(r.number("s", "x"), ValidationError);
        CHECK_THROWS_AS(r.integer("s", "n", 0), ValidationError);
        CHECK_THROWS_AS(r.boolean("s", "x", false), ValidationError);
    }

    TEST_CASE("syntax errors") {
        CHECK(message_of([] { Config::parse("[s]\nx = 1\nx = 2\n"); }).find(":3: duplicate key") != std::string::npos);
        CHECK_THROWS_AS(Config::parse("[s]\n[s]\n"), ValidationError);
        CHECK_THROWS_AS(Config::parse("x = \"open\n"), ValidationError);
        CHECK_THROWS_AS(Config::parse("x 1\n"), ValidationError);
        CHECK_THROWS_AS(Config::parse("x = 1 2\n"), ValidationError);
        CHECK_THROWS_AS(Config::load("/nonexistent/run.toml"), ValidationError);
    }

    TEST_CASE("grid validation") {
        const Config c = Config::parse("[g]\na = { start = 1, factor = 2 }\nb = { start = 1, factor = 2, count = 0 }\n"
                                       "c = { start = 1, factor = 2, count = 2, step = 1 }\n");
        const ConfigReader r(c);
        CHECK_THROWS_AS(r.grid("g", "a"), ValidationError);
        CHECK_THROWS_AS(r.grid("g", "b"), ValidationError);
        CHECK_THROWS_AS(r.grid("g", "c"), ValidationError);
        CHECK(r.grid("g", "d", {1.0}) == std::vector<double>{1.0});
    }
}
