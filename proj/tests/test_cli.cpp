#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "langdual/cli.hpp"

using namespace langdual;
using namespace langdual::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json call_json(std::vector<std::string> args, int expect) {
  args.insert(args.begin(), "--json");
  auto o = call(args);
  REQUIRE_MESSAGE(o.code == expect, o.err);
  auto j = nlohmann::json::parse(o.out);
  CHECK(j.at("exit_code") == expect);
  CHECK(j.at("pass") == (expect == 0));
  return j;
}

// Report with the timing fields removed.
nlohmann::json stable(nlohmann::json j) {
  j.erase("wall_seconds");
  if (j["details"].contains("spherical")) j["details"]["spherical"].erase("seconds");
  return j;
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  Config c = config_from_json(nlohmann::json::parse(R"({"max_length":12,"window":3,"format":"json"})"));
  CHECK(c.max_length == 12);
  CHECK(c.window == 3);
  CHECK(c.format == Format::Json);
  CHECK(c.ball_cap == Config{}.ball_cap);

  auto code_of = [](const char* text) {
    try {
      config_from_json(nlohmann::json::parse(text)).validate();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error for " << text);
    return Errc::Overflow;
  };
  CHECK(code_of(R"({"window":0})") == Errc::BadParameter);
  CHECK(code_of(R"({"max_length":0})") == Errc::BadParameter);
  CHECK(code_of(R"({"colour":"red"})") == Errc::BadInput);
  CHECK(code_of(R"([1])") == Errc::BadInput);
  CHECK(code_of(R"({"window":-1})") == Errc::BadInput);
}

TEST_CASE("exit codes") {
  CHECK(call({"rootsys", "--type", "G2"}).code == 0);
  CHECK(call({"cells", "--type", "A2~", "--ball", "11"}).code == 1);
  CHECK(call({"rootsys", "--type", "Z9"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"--window", "0", "cells", "--type", "A1~", "--ball", "6"}).code == 2);
  CHECK(call({"--max-length", "3", "bridge20", "--type", "A2", "--lambda", "1,1", "--mu", "1,1"}).code == 3);
  CHECK(call({"--ball-cap", "5", "cells", "--type", "A1~", "--ball", "10"}).code == 3);
}

TEST_CASE("exit_for mapping") {
  CHECK(exit_for(Errc::BallTooLarge, false) == Exit::Budget);
  CHECK(exit_for(Errc::SupportEscapesBall, true) == Exit::Budget);
  CHECK(exit_for(Errc::Overflow, false) == Exit::Budget);
  CHECK(exit_for(Errc::BadParameter, false) == Exit::Usage);
  CHECK(exit_for(Errc::NotDominant, false) == Exit::Usage);
  CHECK(exit_for(Errc::NotPositiveDefinite, true) == Exit::Usage);
  CHECK(exit_for(Errc::NotPositiveDefinite, false) == Exit::VerificationFailed);
}

TEST_CASE("reference examples") {
  SUBCASE("rootsys") {
    auto j = call_json({"rootsys", "--type", "G2"}, 0);
    CHECK(j["details"]["cartan"] == nlohmann::json::parse("[[2,-1],[-3,2]]"));
    auto d = call_json({"rootsys", "--type", "B2", "--dual"}, 0);
    CHECK(d["details"]["type"] == "C2");
    CHECK(d["details"]["cartan"] == nlohmann::json::parse("[[2,-2],[-1,2]]"));
  }
  SUBCASE("mckay") {
    auto j = call_json({"mckay", "--family", "e"}, 0);
    CHECK(j["details"]["type"] == "E8");
    CHECK(j["details"]["rank"] == 8);
    CHECK(call_json({"mckay", "--family", "a", "--n", "2"}, 0)["details"]["type"] == "A1");
    call_json({"mckay", "--family", "f", "--n", "1"}, 2);
  }
  SUBCASE("bridge20") {
    auto j = call_json({"bridge20", "--type", "A1", "--lambda", "1", "--mu", "1"}, 0);
    auto dec = j["details"]["decomposition"];
    REQUIRE(dec.size() == 2);
    CHECK(dec[0]["mu"] == nlohmann::json::parse("[0]"));
    CHECK(dec[1]["mu"] == nlohmann::json::parse("[2]"));
  }
  SUBCASE("cells") {
    auto j = call_json({"cells", "--type", "A2~", "--ball", "12"}, 0);
    CHECK(j["details"]["cells"] == 3);
    CHECK(j["details"]["partitions"] == 3);
    CHECK(call_json({"cells", "--type", "B2~", "--ball", "4"}, 2)["error"]["code"] == "BadParameter");
  }
  SUBCASE("transport") {
    auto j = call_json({"transport", "--type", "A1", "--w", "s1", "--q", "2", "--theta", "1/3"}, 0);
    CHECK(j["details"]["point"] == nlohmann::json::parse(R"(["2/3"])"));
    CHECK(j["details"]["order"] == 3);
    call_json({"transport", "--type", "A1", "--w", "s1", "--q", "6", "--theta", "1/3"}, 2);
  }
  SUBCASE("kl") {
    auto j = call_json({"kl", "--type", "A1~", "--z", "s0 s1 s0"}, 0);
    CHECK(j["details"]["length"] == 3);
    CHECK(j["details"]["bar_invariant"] == true);
    // Bruhat interval below a length-3 element of the infinite dihedral group.
    CHECK(j["details"]["entries"].size() == 6);
    // Infinite dihedral: p_{w,z} = v^{l(w) - l(z)}.
    for (const auto& e : j["details"]["entries"]) {
      int d = e["length"].get<int>() - 3;
      CHECK(e["p_terms"] == nlohmann::json::array({nlohmann::json::array({d, 1})}));
    }
  }
}

TEST_CASE("reports are deterministic apart from timings") {
  std::vector<std::vector<std::string>> runs = {
      {"bridge20", "--type", "A2", "--lambda", "1,0", "--mu", "1,0"},
      {"cells", "--type", "A1~", "--ball", "8"},
      {"mckay", "--family", "b", "--n", "3"},
      {"kl", "--type", "A2~", "--z", "s0 s1 s2 s1"},
  };
  for (const auto& r : runs) {
    auto a = stable(call_json(r, 0));
    auto b = stable(call_json(r, 0));
    CHECK(a == b);
  }
}

TEST_CASE("config file, flags and cache") {
  auto cfg = temp_file("langdual_cli_cfg.json", R"({"window":3,"max_length":30})");
  auto j = call_json({"--config", cfg.string(), "cells", "--type", "A1~", "--ball", "6"}, 0);
  CHECK(j["details"]["window"] == 3);
  // A flag given on the command line wins over the file.
  j = call_json({"--config", cfg.string(), "--window", "2", "cells", "--type", "A1~", "--ball", "6"}, 0);
  CHECK(j["details"]["window"] == 2);

  auto bad = temp_file("langdual_cli_badcfg.json", R"({"windw":3})");
  CHECK(call({"--config", bad.string(), "rootsys", "--type", "A1"}).code == 2);
  CHECK(call({"--config", "/nonexistent/langdual.json", "rootsys", "--type", "A1"}).code == 2);

  auto cache = std::filesystem::temp_directory_path() / "langdual_cli_cache.jsonl";
  std::filesystem::remove(cache);
  auto first = call_json({"--cache", cache.string(), "cells", "--type", "A1~", "--ball", "8"}, 0);
  auto second = call_json({"--cache", cache.string(), "cells", "--type", "A1~", "--ball", "8"}, 0);
  CHECK(first["cache"]["hits"] == 0);
  CHECK(second["cache"]["hits"].get<int>() > 0);
  CHECK(second["cache"]["misses"] == 0);
  CHECK(stable(first)["details"] == stable(second)["details"]);
  std::filesystem::remove(cache);
  std::filesystem::remove(cfg);
  std::filesystem::remove(bad);
}

TEST_CASE("text output") {
  auto o = call({"rootsys", "--type", "A2"});
  CHECK(o.code == 0);
  CHECK(o.out.find("A2") != std::string::npos);
  auto e = call({"rootsys", "--type", "Z9"});
  CHECK(e.code == 2);
  CHECK(!e.err.empty());
}
