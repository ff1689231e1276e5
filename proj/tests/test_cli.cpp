#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string("cd ") + DGKIT_DATA_DIR + " && " + DGKIT_CLI_PATH + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe.release());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST(Cli, Homology) {
  CliRun r = cli("homology M2.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "H_0 = Z/2, H_1 = 0\n");
}

TEST(Cli, VerifyCategory) {
  EXPECT_EQ(cli("verify-category ell_window.json").status, 0);
  EXPECT_EQ(cli("verify-category dual_numbers.json").status, 0);
  CliRun bad = cli("verify-category bad_unit_category.json");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("unit law fails"), std::string::npos);
}

TEST(Cli, ConeOfIdentityIsAcyclic) {
  CliRun r = cli("cone --f f.json --map-cone-of-identity");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("H_0 = 0, H_1 = 0"), std::string::npos) << r.out;
}

TEST(Cli, CokernelProtosplit) {
  CliRun r = cli("cokernel-protosplit --f protosplit_f.json --t protosplit_t.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("H_0 = Z\n"), std::string::npos) << r.out;
  EXPECT_EQ(cli("cokernel-protosplit --f scalar2.json --t identity_K0.json").status, 1);
}

TEST(Cli, TensorHomTot) {
  CliRun t = cli("tensor LZ.json LZ.json");
  EXPECT_EQ(t.status, 0);
  EXPECT_NE(t.out.find("ranks 1 2 1"), std::string::npos);
  EXPECT_EQ(cli("hom LZ.json M2.json").status, 0);
  CliRun tot = cli("tot square.json");
  EXPECT_EQ(tot.status, 0);
  EXPECT_NE(tot.out.find("chain isomorphism"), std::string::npos);
  EXPECT_EQ(cli("tot square.json --window 0").status, 2);
}

TEST(Cli, Colimits) {
  CliRun r = cli("colim colim_unit.json");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("H_0 = Z/2"), std::string::npos) << r.out;
  CliRun t = cli("colim colim_torsion.json");
  EXPECT_EQ(t.status, 1);
  EXPECT_NE(t.out.find("Z + Z/2"), std::string::npos) << t.out;
}

TEST(Cli, VerifyCauchy) {
  EXPECT_EQ(cli("verify-cauchy cauchy.json").status, 0);
  CliRun bad = cli("verify-cauchy cauchy_mutated.json");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("snake identity fails at object"), std::string::npos) << bad.out;
}

TEST(Cli, InputErrors) {
  CliRun r = cli("homology malformed.json");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("diffs[1]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("degree 1"), std::string::npos) << r.out;
  EXPECT_EQ(cli("homology missing.json").status, 2);
  EXPECT_EQ(cli("frobnicate").status, 2);
  EXPECT_EQ(cli("").status, 2);
}

TEST(Cli, JsonAndDeterminism) {
  CliRun a = cli("--json tot square.json"), b = cli("tot square.json --json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"verified\": true"), std::string::npos);
  EXPECT_EQ(cli("colim colim_unit.json --json").out, cli("colim colim_unit.json --json").out);
}

TEST(Cli, Suite) {
  CliRun r = cli("suite --seed 3");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("PASS [12]"), std::string::npos);
  EXPECT_EQ(r.out, cli("suite --seed 3").out);
}
