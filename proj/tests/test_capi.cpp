#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "eulerfv.h"

namespace fs = std::filesystem;

namespace {

const char* kConfig = R"([gas]
a = 1.0
gamma = 1.5

[scheme]
alpha = 0.5
beta = -0.8

[mesh]
dim = 1
n = 16

[case]
id = smooth_periodic

[study]
t_end = 0.1
snapshot_times = 0.05,0.1
levels = 2

[output]
directory = PLACEHOLDER
)";

std::string write_config(const std::string& dir) {
  fs::create_directories(dir);
  std::string text = kConfig;
  const std::string key = "PLACEHOLDER";
  text.replace(text.find(key), key.size(), dir + "/out");
  const std::string path = dir + "/run.ini";
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

bool directories_identical(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel_a, rel_b;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) rel_a.push_back(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) rel_b.push_back(fs::relative(e.path(), b));
  std::sort(rel_a.begin(), rel_a.end());
  std::sort(rel_b.begin(), rel_b.end());
  if (rel_a != rel_b) return false;
  for (const fs::path& r : rel_a) {
    // the echoed config embeds the output directory, which differs by design
    if (r.filename() == "resolved_config.ini") continue;
    if (slurp(a / r) != slurp(b / r)) return false;
  }
  return true;
}

} // namespace

TEST_CASE("version string") {
  CHECK(std::strlen(efv_version()) > 0);
}

TEST_CASE("config handle lifecycle and overrides") {
  char err[512] = {0};
  CHECK(efv_config_load("/definitely/missing.ini", err, sizeof(err)) == nullptr);
  CHECK(std::strlen(err) > 0);

  efv_config* cfg = efv_config_create();
  REQUIRE(cfg != nullptr);
  CHECK(efv_config_set(cfg, "gas.gamma", "1.5", err, sizeof(err)) == EFV_OK);
  CHECK(efv_config_set(cfg, "nodots", "1", err, sizeof(err)) == EFV_ERR_CONFIG);
  CHECK(efv_config_set(nullptr, "a.b", "1", err, sizeof(err)) == EFV_ERR_CONFIG);
  efv_config_destroy(cfg);
  efv_config_destroy(nullptr); // harmless
}

TEST_CASE("solve writes snapshots and the ledger") {
  const std::string dir = "capi_solve_work";
  fs::remove_all(dir);
  const std::string path = write_config(dir);
  char err[512] = {0};
  efv_config* cfg = efv_config_load(path.c_str(), err, sizeof(err));
  REQUIRE(cfg != nullptr);
  CHECK(efv_cmd_solve(cfg, err, sizeof(err)) == EFV_OK);
  CHECK(fs::exists(dir + "/out/fields_0000.csv"));
  CHECK(fs::exists(dir + "/out/fields_0001.csv"));
  CHECK(fs::exists(dir + "/out/energy.csv"));
  CHECK(fs::exists(dir + "/out/resolved_config.ini"));
  const std::string header = slurp(dir + "/out/fields_0000.csv").substr(0, 26);
  CHECK(header == "t,cell_index,x0,rho,u0,m0\n");
  efv_config_destroy(cfg);
}

TEST_CASE("invalid gate comes back as config status") {
  const std::string dir = "capi_badcfg_work";
  fs::remove_all(dir);
  const std::string path = write_config(dir);
  char err[512] = {0};
  efv_config* cfg = efv_config_load(path.c_str(), err, sizeof(err));
  REQUIRE(cfg != nullptr);
  CHECK(efv_config_set(cfg, "scheme.alpha", "1.5", err, sizeof(err)) == EFV_OK);
  CHECK(efv_cmd_solve(cfg, err, sizeof(err)) == EFV_ERR_CONFIG);
  CHECK(std::string(err).find("alpha") != std::string::npos);
  efv_config_destroy(cfg);
}

TEST_CASE("forced solver failure comes back as runtime status") {
  const std::string dir = "capi_fail_work";
  fs::remove_all(dir);
  const std::string path = write_config(dir);
  char err[512] = {0};
  efv_config* cfg = efv_config_load(path.c_str(), err, sizeof(err));
  REQUIRE(cfg != nullptr);
  efv_config_set(cfg, "scheme.tol_nl", "1e-30", err, sizeof(err));
  efv_config_set(cfg, "scheme.max_nl_iter", "1", err, sizeof(err));
  efv_config_set(cfg, "scheme.max_dt_halvings", "0", err, sizeof(err));
  CHECK(efv_cmd_solve(cfg, err, sizeof(err)) == EFV_ERR_RUNTIME);
  efv_config_destroy(cfg);
}

TEST_CASE("study returns a classification and is byte-deterministic") {
  const std::string dir = "capi_study_work";
  fs::remove_all(dir);
  const std::string path = write_config(dir);
  char err[512] = {0};
  char label[64] = {0};

  efv_config* cfg = efv_config_load(path.c_str(), err, sizeof(err));
  REQUIRE(cfg != nullptr);
  efv_config_set(cfg, "case.amp_rho", "0.0", err, sizeof(err));
  efv_config_set(cfg, "case.amp_u", "0.0", err, sizeof(err));
  efv_config_set(cfg, "output.directory", (dir + "/study_a").c_str(), err, sizeof(err));
  REQUIRE(efv_cmd_study(cfg, label, sizeof(label), err, sizeof(err)) == EFV_OK);
  CHECK(std::string(label) == "strong-K");
  efv_config_set(cfg, "output.directory", (dir + "/study_b").c_str(), err, sizeof(err));
  REQUIRE(efv_cmd_study(cfg, label, sizeof(label), err, sizeof(err)) == EFV_OK);
  CHECK(directories_identical(dir + "/study_a", dir + "/study_b"));
  efv_config_destroy(cfg);
}

TEST_CASE("audit and consistency commands succeed on the smooth case") {
  const std::string dir = "capi_audit_work";
  fs::remove_all(dir);
  const std::string path = write_config(dir);
  char err[512] = {0};
  efv_config* cfg = efv_config_load(path.c_str(), err, sizeof(err));
  REQUIRE(cfg != nullptr);
  CHECK(efv_cmd_audit(cfg, err, sizeof(err)) == EFV_OK);
  efv_config_set(cfg, "study.levels", "2", err, sizeof(err));
  CHECK(efv_cmd_consistency(cfg, err, sizeof(err)) == EFV_OK);
  CHECK(fs::exists(dir + "/out/consistency.csv"));
  CHECK(fs::exists(dir + "/out/consistency_orders.csv"));
  efv_config_set(cfg, "study.levels", "1", err, sizeof(err));
  CHECK(efv_cmd_consistency(cfg, err, sizeof(err)) == EFV_ERR_CONFIG);
  efv_config_destroy(cfg);
}

TEST_CASE("selftest passes on a pristine build") {
  std::string report(1 << 16, '\0');
  CHECK(efv_selftest(report.data(), report.size()) == EFV_OK);
  CHECK(report.find("FAIL") == std::string::npos);
}
