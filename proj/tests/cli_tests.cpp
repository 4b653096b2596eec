// End-to-end checks of the command-line tool. The binary path arrives in
// the COAUTHNET_CLI environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* env = std::getenv("COAUTHNET_CLI");
  REQUIRE_MESSAGE(env != nullptr, "COAUTHNET_CLI must point at the built binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string command = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  while (size_t got = fread(buffer, 1, sizeof(buffer), pipe)) result.output.append(buffer, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("coauthnet_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string record(const std::string& id, const std::string& type,
                   const std::vector<std::string>& addresses) {
  std::string out = "PT J\nAU Writer, W.\nTI T\nSO S\nDT " + type + "\nLA English\n";
  for (const auto& a : addresses) out += "C1 " + a + "\n";
  out += "UT " + id + "\nER\n";
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bad input path exits 2 with a message on stderr") {
  fs::path dir = fresh_dir("badpath");
  RunResult r = run_cli("ingest --input /definitely/not/here.txt --out " + (dir / "o").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("unknown subcommand and missing required flags exit 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("ingest").exit_code == 2);
}

TEST_CASE("version flag prints the tool version and exits cleanly") {
  RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0.1.0") != std::string::npos);
}

TEST_CASE("ingest writes canonical jsonl plus a summary") {
  fs::path dir = fresh_dir("ingest");
  std::string corpus = record("A1", "Article", {"Univ One, Paris, France",
                                                "Univ Two, Boston, MA 02115 USA"}) +
                       record("A2", "Review", {"Univ One, Paris, France"}) + "EF\n";
  write(dir / "corpus.txt", corpus);
  RunResult r = run_cli("ingest --input " + (dir / "corpus.txt").string() + " --out " +
                        (dir / "out").string());
  CHECK(r.exit_code == 0);
  auto summary = nlohmann::json::parse(slurp(dir / "out" / "ingest_summary.json"));
  CHECK(summary["summary"]["n_records"] == 2);
  CHECK(summary["summary"]["n_international"] == 1);
  CHECK(summary["header"]["version"].is_string());
  CHECK(fs::exists(dir / "out" / "corpus.jsonl"));
}

TEST_CASE("reruns on unchanged input are byte-identical") {
  fs::path dir = fresh_dir("determinism");
  std::string corpus;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> addrs{"Org " + std::to_string(i % 7) + ", Town, France"};
    if (i % 3 == 0) addrs.push_back("Org X, City, Germany");
    if (i % 5 == 0) addrs.push_back("Org Y, City, Japan");
    corpus += record("R" + std::to_string(i), i % 4 ? "Article" : "Review", addrs);
  }
  corpus += "EF\n";
  write(dir / "corpus.txt", corpus);
  std::string base = "run --input " + (dir / "corpus.txt").string() + " --permutations 25 ";
  CHECK(run_cli(base + "--out " + (dir / "a").string()).exit_code == 1);  // tiny: no KL units
  CHECK(run_cli(base + "--out " + (dir / "b").string()).exit_code == 1);
  for (const char* name : {"run_report.json", "country.net", "totals.csv", "communities.clu",
                           "map_network.svg", "map_verdicts.svg", "verdicts.csv"}) {
    CAPTURE(name);
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
}

TEST_CASE("ego on a triangle emits a three-node star") {
  fs::path dir = fresh_dir("ego");
  write(dir / "tri.net",
        "*Vertices 3\n1 \"A\"\n2 \"B\"\n3 \"C\"\n*Edges\n1 2 1\n1 3 2\n2 3 3\n");
  RunResult r = run_cli("ego --net " + (dir / "tri.net").string() + " --ego A --remove-inside " +
                        "--out " + (dir / "ego.net").string());
  CHECK(r.exit_code == 0);
  CHECK(slurp(dir / "ego.net") ==
        "*Vertices 3\n1 \"A\"\n2 \"B\"\n3 \"C\"\n*Edges\n1 2 1\n1 3 2\n");
  CHECK(run_cli("ego --net " + (dir / "tri.net").string() + " --ego NOPE --out " +
                (dir / "x.net").string())
            .exit_code == 2);
}

TEST_CASE("shrink collapses the group file members") {
  fs::path dir = fresh_dir("shrink");
  // star of 30 nodes around HUB
  std::ostringstream net;
  net << "*Vertices 31\n1 \"HUB\"\n";
  for (int i = 0; i < 30; ++i) net << (i + 2) << " \"M" << i << "\"\n";
  net << "*Edges\n";
  for (int i = 0; i < 30; ++i) net << "1 " << (i + 2) << " 1\n";
  write(dir / "star.net", net.str());
  std::ostringstream group;
  for (int i = 0; i < 28; ++i) group << "M" << i << "\n";
  write(dir / "group.txt", group.str());
  RunResult r = run_cli("shrink --net " + (dir / "star.net").string() + " --group " +
                        (dir / "group.txt").string() + " --label MERGED --out " +
                        (dir / "shrunk.net").string());
  CHECK(r.exit_code == 0);
  std::string out = slurp(dir / "shrunk.net");
  CHECK(out.find("*Vertices 4") == 0);  // 31 - 28 + 1
  CHECK(out.find("\"MERGED\"") != std::string::npos);
}

TEST_CASE("kltest reproduces the engineered verdicts") {
  fs::path dir = fresh_dir("kltest");
  std::string corpus;
  int id = 0;
  auto add_org = [&](const std::string& org, const std::string& country, int dom, int intl) {
    for (int i = 0; i < dom; ++i)
      corpus += record("D" + std::to_string(id++), "Article",
                       {org + ", Town, " + country});
    for (int i = 0; i < intl; ++i)
      corpus += record("D" + std::to_string(id++), "Article",
                       {org + ", Town, " + country, "Partner Org, Abroad, Japan"});
  };
  // dom column (16, 4), int column (10, 10): international wins
  add_org("Org IA", "France", 16, 10);
  add_org("Org IB", "France", 4, 10);
  // mirrored: domestic wins
  add_org("Org DA", "Germany", 10, 16);
  add_org("Org DB", "Germany", 10, 4);
  corpus += "EF\n";
  write(dir / "corpus.txt", corpus);
  RunResult r = run_cli("kltest --input " + (dir / "corpus.txt").string() + " --out " +
                        (dir / "out").string());
  CHECK(r.exit_code == 0);
  std::string verdicts = slurp(dir / "out" / "verdicts.csv");
  CHECK(verdicts.find("FRANCE") != std::string::npos);
  CHECK(verdicts.find("GERMANY") != std::string::npos);
  auto report = nlohmann::json::parse(slurp(dir / "out" / "kltest.json"));
  for (const auto& unit : report["divergence"]["units"]) {
    if (unit["unit"] == "FRANCE") CHECK(unit["verdict"] == "international");
    if (unit["unit"] == "GERMANY") CHECK(unit["verdict"] == "domestic");
  }
  // JAPAN hosts only the partner org: single eligible org, hence ineligible
  bool japan_ineligible = false;
  for (const auto& unit : report["divergence"]["ineligible"])
    japan_ineligible |= unit["unit"] == "JAPAN";
  CHECK(japan_ineligible);
}

TEST_CASE("network command reports the parameter block") {
  fs::path dir = fresh_dir("network");
  std::string corpus;
  corpus += record("N1", "Article", {"O1, X, France", "O2, X, Germany"});
  corpus += record("N2", "Article", {"O1, X, France", "O3, X, Japan"});
  corpus += record("N3", "Letter", {"O4, X, Japan", "O2, X, Germany"});
  corpus += record("N4", "Editorial Material", {"O9, X, Spain", "O8, X, Italy"});  // not citable
  corpus += "EF\n";
  write(dir / "corpus.txt", corpus);
  RunResult r = run_cli("network --input " + (dir / "corpus.txt").string() + " --out " +
                        (dir / "out").string());
  CHECK(r.exit_code == 0);
  auto report = nlohmann::json::parse(slurp(dir / "out" / "network_stats.json"));
  CHECK(report["network"]["n_nodes"] == 3);
  CHECK(report["network"]["n_lines"] == 3);
  CHECK(report["network"]["density_simple"].is_number());
  CHECK(report["network"]["density_loops"].is_number());
  CHECK(report["network"]["average_degree"].is_number());
  CHECK(report["centrality"]["top_degree"].is_array());
  CHECK(fs::exists(dir / "out" / "country.net"));
  CHECK(fs::exists(dir / "out" / "totals.csv"));
}

TEST_CASE("communities and compare commands chain on network output") {
  fs::path dir = fresh_dir("chain");
  std::string corpus;
  // two dense country blocks joined by a single bridge paper
  const std::vector<std::string> left{"France", "Germany", "Belgium"};
  const std::vector<std::string> right{"Japan", "South Korea", "Taiwan"};
  int id = 0;
  for (int round = 0; round < 5; ++round) {
    for (size_t i = 0; i < left.size(); ++i)
      for (size_t j = i + 1; j < left.size(); ++j)
        corpus += record("L" + std::to_string(id++), "Article",
                         {"O" + left[i] + ", X, " + left[i], "O" + left[j] + ", X, " + left[j]});
    for (size_t i = 0; i < right.size(); ++i)
      for (size_t j = i + 1; j < right.size(); ++j)
        corpus += record("R" + std::to_string(id++), "Article",
                         {"O" + right[i] + ", X, " + right[i], "O" + right[j] + ", X, " + right[j]});
  }
  corpus += record("BRIDGE", "Article", {"OF, X, France", "OJ, X, Japan"});
  corpus += "EF\n";
  write(dir / "corpus.txt", corpus);
  REQUIRE(run_cli("network --input " + (dir / "corpus.txt").string() + " --out " +
                  (dir / "net").string())
              .exit_code == 0);
  RunResult comm = run_cli("communities --net " + (dir / "net" / "country.net").string() +
                           " --out " + (dir / "comm").string());
  CHECK(comm.exit_code == 0);
  auto communities = nlohmann::json::parse(slurp(dir / "comm" / "communities.json"));
  CHECK(communities["communities"]["n_communities"] == 2);
  CHECK(communities["communities"]["q"].get<double>() > 0.3);

  RunResult cmp = run_cli("compare --net-a " + (dir / "net" / "country.net").string() +
                          " --net-b " + (dir / "net" / "country.net").string() +
                          " --permutations 50 --out " + (dir / "cmp").string());
  CHECK(cmp.exit_code == 0);
  auto compare = nlohmann::json::parse(slurp(dir / "cmp" / "compare.json"));
  CHECK(compare["comparison"]["r"].get<double>() == 1.0);
  CHECK(compare["comparison"]["jaccard"].get<double>() == 1.0);
  CHECK(compare["comparison"]["n_permutations"] == 50);
  CHECK(compare["comparison"]["per_entity_z"].is_array());

  RunResult map = run_cli("map --net " + (dir / "net" / "country.net").string() +
                          " --partition " + (dir / "comm" / "communities.clu").string() +
                          " --iterations 40 --out " + (dir / "map.svg").string());
  CHECK(map.exit_code == 0);
  CHECK(slurp(dir / "map.svg").find("<svg") != std::string::npos);
}

TEST_CASE("config file values are applied and flags win") {
  fs::path dir = fresh_dir("config");
  write(dir / "corpus.txt", record("C1", "Article", {"O, X, France"}) + "EF\n");
  write(dir / "run.cfg", "input=" + (dir / "corpus.txt").string() + "\nout=" +
                             (dir / "from_config").string() + "\npermutations=10\n");
  RunResult r = run_cli("run --config " + (dir / "run.cfg").string());
  CHECK(fs::exists(dir / "from_config" / "run_report.json"));
  CHECK(r.exit_code == 1);  // no KL-eligible units in a one-doc corpus
  RunResult r2 = run_cli("run --config " + (dir / "run.cfg").string() + " --out " +
                         (dir / "flag_wins").string());
  CHECK(fs::exists(dir / "flag_wins" / "run_report.json"));
  CHECK(r2.exit_code == 1);
}

}  // TEST_SUITE
