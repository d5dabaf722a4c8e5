#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(RIFFLE_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, DescentPolyJson) {
  CliRun r = cli("descent-poly --from '1^2 2^2' --to 1221");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"coeffs\":[0,2,2]}\n");
  EXPECT_EQ(cli("descent-poly --from 1221 --to 1122 --format csv").out, "d,count\n0,0\n1,2\n2,2\n");
}

TEST(Cli, DescentPolyNeedsSortedEndpoint) {
  EXPECT_EQ(cli("descent-poly --from 1212 --to 1221").code, 2);
  EXPECT_EQ(cli("descent-poly --from 1212 --to 1221 --brute-force").out, "{\"coeffs\":[0,2,2]}\n");
}

TEST(Cli, TransitionIdentity) {
  CliRun r = cli("transition --from 12 --to 12 --a 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a,probability,decimal\n1,1/1,1\n");
  EXPECT_NE(cli("transition --from 1122 --to 1221 --riffles 1 --format json").out.find("\"probability\":\"1/8\""),
            std::string::npos);
}

TEST(Cli, BridgeSeparationRows) {
  CliRun r = cli("mixing --spec '1^13 2^13 3^13 4^13' --metric separation --riffles 10..11");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("10,separation-lower,"), std::string::npos);
  EXPECT_NE(r.out.find(",0.501345863885,"), std::string::npos);
  EXPECT_NE(r.out.find("11,separation-upper,"), std::string::npos);
  EXPECT_NE(r.out.find(",0.479495807702,"), std::string::npos);
}

TEST(Cli, EulerianRow) {
  EXPECT_EQ(cli("eulerian --n 4").out, "d,count\n0,1\n1,11\n2,11\n3,1\n");
}

TEST(Cli, ClassesReportCounts) {
  CliRun r = cli("classes --n 3 --relation s3 --a 2");
  EXPECT_EQ(r.code, 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 1u + 14u);
  EXPECT_EQ(r.out.find(",false"), std::string::npos);
}

TEST(Cli, SimulateIsReproducible) {
  std::string args = "simulate --deck 1122 --riffles 2 --samples 2000 --seed 4";
  CliRun a = cli(args), b = cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, cli("simulate --deck 1122 --riffles 2 --samples 2000 --seed 5").out);
}

TEST(Cli, MonteCarloIndependentOfWorkers) {
  std::string args = "mixing --spec '1^2 2^2 3' --metric tv-mc --riffles 1..2 --samples 9000 --seed 8";
  CliRun one = cli(args + " --workers 1"), two = cli(args + " --workers 2");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, two.out);
}

TEST(Cli, ManifestFile) {
  std::string path = testing::TempDir() + "riffle_manifest.json";
  EXPECT_EQ(cli("eulerian --n 3 --format json --output " + path).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("\"manifest\":{\"command\":\"eulerian --n 3"), std::string::npos);
  EXPECT_NE(ss.str().find("\"result\":[{\"d\":0,\"count\":1}"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("bogus").code, 2);
  EXPECT_EQ(cli("transition --from 1x --to 12 --a 2").code, 2);
  EXPECT_EQ(cli("mixing --spec '1^13 2^13 3^13 4^13' --metric tv-exact --riffles 3").code, 1);
  EXPECT_EQ(cli("verify").code, 0);
}
