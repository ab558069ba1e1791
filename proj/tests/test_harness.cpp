#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hardcore/harness.hpp"

using namespace hardcore;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hardcore_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

nlohmann::json parse_json(const std::string& text) { return nlohmann::json::parse(text); }

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hardcore_lab_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"bogus"}).code == kExitUsage);
  CHECK(invoke({"exact", "nonsense"}).code == kExitUsage);
  CHECK(invoke({"exact", "colour=blue"}).code == kExitUsage);
  CHECK(invoke({"exact", "d=x"}).code == kExitUsage);
  CHECK(invoke({"exact", "lambda=1/0"}).code == kExitUsage);
  CHECK(invoke({"exact", "v0=(9,9)"}).code == kExitUsage);
  CHECK(invoke({"exact", "boundary=sideways"}).code == kExitUsage);
  CHECK(invoke({"sample", "sweeps=10", "burn_in=20"}).code == kExitUsage);
  CHECK(invoke({"replay"}).code == kExitUsage);
  const Outcome o = invoke({"exact", "M=x"});
  CHECK(o.err.find("usage") != std::string::npos);
}

TEST_CASE("sampling rejects fractional activities") {
  CHECK(invoke({"sample", "lambda=1/2", "sweeps=200", "burn_in=10"}).code == kExitUsage);
  CHECK(invoke({"sample", "lambda=0.5", "sweeps=200", "burn_in=10"}).code == kExitOk);
}

TEST_CASE("exact occupation example") {
  const Outcome o = invoke({"exact", "boundary=even", "v0=(1,0)", "lambda=1/2"});
  REQUIRE(o.code == kExitOk);
  const auto j = parse_json(o.out);
  CHECK(j.at("header").at("tool") == "hardcore_lab");
  CHECK(j.at("header").at("subcommand") == "exact");
  bool found = false;
  for (const auto& r : j.at("results"))
    if (r.at("quantity") == "occupation") {
      found = true;
      CHECK(r.at("value_num") == "0");
      CHECK(r.at("value_den") == "1");
    }
  CHECK(found);

  const Outcome odd = invoke({"exact", "boundary=odd", "v0=(1,0)", "lambda=2"});
  REQUIRE(odd.code == kExitOk);
  for (const auto& r : parse_json(odd.out).at("results"))
    if (r.at("quantity") == "occupation") {
      CHECK(r.at("value_num") == "54");
      CHECK(r.at("value_den") == "83");
    }
}

TEST_CASE("forced-large flow audit passes") {
  const Outcome o = invoke({"flow-audit", "force-large=true"});
  REQUIRE(o.code == kExitOk);
  const auto j = parse_json(o.out);
  CHECK(j.at("policy").at("tau") == 0);
  for (const auto& run : j.at("runs")) {
    CHECK(run.at("row_sums") == true);
    CHECK(run.at("ok") == true);
    CHECK(run.at("fallback_count") == 0);
  }
}

TEST_CASE("config files and overrides") {
  const fs::path cfg_path = scratch("cfg.json");
  {
    std::ofstream f(cfg_path);
    f << R"({"M": 3, "lambda": [2], "boundary": "odd", "seed": 9, "force_large": false})";
  }
  const std::string file_arg = "config=" + cfg_path.string();
  const std::vector<std::string> argv_a = {"hardcore_lab", "exact", file_arg, "seed=4"};
  std::vector<const char*> ptrs;
  for (const auto& s : argv_a) ptrs.push_back(s.c_str());
  const RunConfig cfg = parse_args(static_cast<int>(ptrs.size()), ptrs.data());
  CHECK(cfg.M == 3);
  CHECK(cfg.seed == 4);
  CHECK(cfg.lambdas == std::vector<std::string>{"2"});
  REQUIRE(cfg.boundary.has_value());
  CHECK(*cfg.boundary == Boundary::odd);

  const fs::path bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"M": 3, "flavour": 1})";
  }
  CHECK(invoke({"exact", "config=" + bad.string()}).code == kExitUsage);
  CHECK(invoke({"exact", "config=/nonexistent/file.json"}).code == kExitUsage);
}

TEST_CASE("config hash") {
  RunConfig a;
  a.subcommand = "sample";
  RunConfig b = a;
  CHECK(a.hash() == b.hash());
  b.out = "elsewhere";
  b.threads = 3;
  CHECK(a.hash() == b.hash());
  b.seed = 2;
  CHECK(a.hash() != b.hash());
  RunConfig c = a;
  apply_setting(c, "tau", "inf");
  CHECK(c.hash() != a.hash());
  CHECK(a.to_json().at("subcommand") == "sample");
  CHECK(hex64(0x1f) == "0x000000000000001f");
}

TEST_CASE("header echo") {
  RunConfig cfg;
  cfg.subcommand = "iso";
  cfg.seed = 12;
  const auto h = header_json(cfg);
  CHECK(h.at("tool") == "hardcore_lab");
  CHECK(h.at("seed") == 12);
  CHECK(h.at("config_hash") == hex64(cfg.hash()));
  CHECK(h.at("config") == cfg.to_json());
  const std::string block = csv_header_block(cfg);
  CHECK(block.rfind("# hardcore_lab iso\n# config_hash=" + hex64(cfg.hash()) + "\n# seed=12\n# config=", 0) == 0);
}

TEST_CASE("sample output carries the header and columns") {
  const Outcome o = invoke({"sample", "sweeps=500", "burn_in=50", "lambda=1", "seed=3"});
  REQUIRE(o.code == kExitOk);
  CHECK(o.out.rfind("# hardcore_lab sample\n", 0) == 0);
  CHECK(o.out.find("# seed=3\n") != std::string::npos);
  CHECK(o.out.find("d,M,lambda,boundary,v0,estimate,stderr,sweeps,burn_in,seed\n") != std::string::npos);
  CHECK(invoke({"sample", "sweeps=500", "burn_in=50", "lambda=1", "seed=3"}).out == o.out);
}

TEST_CASE("flow audit writes defect tables and failure files") {
  const fs::path out = scratch("flow");
  const Outcome o = invoke({"flow-audit", "lambda=1,2", "out=" + out.string()});
  REQUIRE(o.code == kExitOk);
  const std::string csv = slurp(out.string() + ".defect.1.csv");
  CHECK(csv.find("# lambda=2\nJ_mask,defect_num,defect_den,argmax_I_mask\n") != std::string::npos);
  CHECK(fs::exists(out.string() + ".defect.0.csv"));
  const auto failures = parse_json(slurp(out.string() + ".failures.json"));
  CHECK(failures.at("failures").empty());
  CHECK(failures.at("header").at("subcommand") == "flow-audit");
  CHECK(parse_json(slurp(out)).at("runs").size() == 2);
}

TEST_CASE("replay round trip") {
  const fs::path out = scratch("contours");
  REQUIRE(invoke({"contour-audit", "M=3", "boundary=even", "v0=(1,0)", "out=" + out.string()}).code == kExitOk);
  const std::string failures = out.string() + ".failures.json";
  const Outcome r = invoke({"replay", "file=" + failures});
  CHECK(r.code == kExitOk);
  const auto rep = parse_json(r.out);
  CHECK(rep.at("reproduced") == true);
  CHECK(rep.at("replayed") == "contour-audit");

  const Outcome f = invoke({"replay", "file=" + failures, "out=" + scratch("replayed").string()});
  CHECK(f.code == kExitOk);
  CHECK(parse_json(slurp(scratch("replayed"))).at("stored_failures") == 0);
}

TEST_CASE("replay detects a mismatch") {
  const fs::path path = scratch("fake.failures.json");
  RunConfig cfg;
  cfg.subcommand = "contour-audit";
  {
    std::ofstream f(path);
    const nlohmann::json fake{{"header", header_json(cfg)},
                              {"failures", {{{"kind", "contour"}, {"I", "0001"}, {"properties", nullptr}}}}};
    f << fake.dump();
  }
  const Outcome r = invoke({"replay", "file=" + path.string()});
  CHECK(r.code == kExitInvariant);
  CHECK(parse_json(r.out).at("reproduced") == false);
  CHECK(r.err.find("failures not reproduced") != std::string::npos);

  const fs::path broken = scratch("broken.json");
  {
    std::ofstream f(broken);
    f << "{not json";
  }
  CHECK(invoke({"replay", "file=" + broken.string()}).code == kExitUsage);
}

TEST_CASE("other subcommands run cleanly") {
  CHECK(invoke({"iso", "d=3", "r_max=4"}).code == kExitOk);
  CHECK(invoke({"approx-audit", "M=3", "source=pairs"}).code == kExitOk);
  CHECK(invoke({"contour-audit"}).code == kExitOk);
  const Outcome g = invoke({"gap-scan", "sweeps=400", "burn_in=40"});
  CHECK(g.code == kExitOk);
  CHECK(invoke({"gap-scan", "v0=(1,0)", "sweeps=400", "burn_in=40"}).code == kExitUsage);
}

TEST_CASE("built binary behaves like the entry point") {
  const char* bin = std::getenv("HARDCORE_LAB");
  if (bin == nullptr) return;
  const std::string base = std::string("\"") + bin + "\"";
  CHECK(std::system((base + " exact > /dev/null 2>&1").c_str()) == 0);
  const int bad = std::system((base + " exact lambda=abc > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(bad) == kExitUsage);
}
