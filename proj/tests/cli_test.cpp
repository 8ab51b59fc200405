// SPDX-License-Identifier: Apache-2.0
//
// Runs the graphbpe executable end to end and checks outputs and exit codes.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_paths.h"

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("graphbpe_cli_" + std::string(info->name()) + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  static std::string read(const std::string& file) {
    std::ifstream in(file);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  CliRun run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string err = path("stderr.txt");
    const std::string cmd = std::string(GRAPHBPE_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read(out);
    r.err = read(err);
    return r;
  }

  fs::path dir_;
};

TEST_F(CliTest, MineFigureTwoCorpus) {
  write("fig2.smi", "Brc1ccccc1\nCc1cccc(O)c1\n");
  const CliRun r = run("mine --corpus " + path("fig2.smi") + " -K 3 --out " + path("run"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("operations=3"), std::string::npos);
  std::istringstream ops(read(path("run/ops.txt")));
  std::string header, line1, line2;
  std::getline(ops, header);
  std::getline(ops, line1);
  std::getline(ops, line2);
  EXPECT_NE(line1.find("\tc:c\t"), std::string::npos) << line1;
  EXPECT_NE(line2.find("\tc:c:c:c\t"), std::string::npos) << line2;

  const CliRun inspect = run("inspect-vocab --vocab " + path("run/vocab.txt"));
  ASSERT_EQ(inspect.code, 0) << inspect.err;
  EXPECT_EQ(inspect.out.rfind("5 motifs\n", 0), 0u) << inspect.out;
}

TEST_F(CliTest, MineWithoutOperationsGivesAtoms) {
  write("c.smi", "CCO\nCN\n");
  ASSERT_EQ(run("mine --corpus " + path("c.smi") + " -K 0 --out " + path("run")).code, 0);
  const CliRun inspect = run("inspect-vocab --vocab " + path("run/vocab.txt"));
  // *C, *C*, *N, *O
  EXPECT_EQ(inspect.out.rfind("4 motifs\n", 0), 0u) << inspect.out;
}

TEST_F(CliTest, FragmentizeWorkedExample) {
  write("train.smi", "CC\nCN\nCNN\nCN=O\nCC=O\n");
  write("query.smi", "CCN\n");
  ASSERT_EQ(run("mine --corpus " + path("train.smi") + " -K 2 --out " + path("run")).code, 0);
  const CliRun r = run("fragmentize --corpus " + path("query.smi") + " --ops " + path("run/ops.txt"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("C|CN"), std::string::npos) << r.out;
}

TEST_F(CliTest, FragmentizeEmptyCorpus) {
  write("train.smi", "CC\n");
  write("empty.smi", "");
  ASSERT_EQ(run("mine --corpus " + path("train.smi") + " -K 1 --out " + path("run")).code, 0);
  const CliRun r = run("fragmentize --corpus " + path("empty.smi") + " --ops " + path("run/ops.txt"));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, CorruptedOpsHeaderIsAVersionError) {
  write("q.smi", "CC\n");
  write("ops.txt", "graphbpe-ops v9\n0\tCC\t1\n");
  const CliRun r = run("fragmentize --corpus " + path("q.smi") + " --ops " + path("ops.txt"));
  EXPECT_EQ(r.code, 4) << r.err;
}

TEST_F(CliTest, UnparsableMoleculeIsAnInputError) {
  write("bad.smi", "CC\nC1CC\n");
  const CliRun r = run("mine --corpus " + path("bad.smi") + " -K 1 --out " + path("run"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("mine --corpus").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  write("c.smi", "CC\n");
  EXPECT_EQ(run("mine --corpus " + path("c.smi") + " -K -1 --out " + path("run")).code, 2);
}

TEST_F(CliTest, InspectEmptyAndTamperedVocabulary) {
  write("train.smi", "CCO\n");
  ASSERT_EQ(run("mine --corpus " + path("train.smi") + " -K 0 --out " + path("run")).code, 0);
  const std::string vocab = read(path("run/vocab.txt"));
  const std::string header = vocab.substr(0, vocab.find('\n') + 1);

  write("empty.txt", header);
  const CliRun empty = run("inspect-vocab --vocab " + path("empty.txt"));
  ASSERT_EQ(empty.code, 0) << empty.err;
  EXPECT_EQ(empty.out, "0 motifs\n");

  write("tampered.txt", vocab + "*C\tnot-a-number\t0-\n");
  const CliRun bad = run("inspect-vocab --vocab " + path("tampered.txt"));
  EXPECT_EQ(bad.code, 3);
  const auto lines = std::count(vocab.begin(), vocab.end(), '\n');
  EXPECT_NE(bad.err.find("line " + std::to_string(lines + 1)), std::string::npos) << bad.err;
}

TEST_F(CliTest, ArtifactsAreByteIdenticalAcrossThreadCounts) {
  const std::string corpus = test_paths::kFixture1k;
  for (int threads : {1, 4}) {
    const std::string out = path("t" + std::to_string(threads));
    ASSERT_EQ(run("mine --corpus " + corpus + " -K 100 --threads " + std::to_string(threads) +
                  " --out " + out)
                  .code,
              0);
    ASSERT_EQ(run("generate --vocab " + out + "/vocab.txt --num 200 --seed 7 --threads " +
                  std::to_string(threads) + " --out " + out + "/gen.smi")
                  .code,
              0);
  }
  for (const char* file : {"ops.txt", "vocab.txt", "attachments.txt", "gen.smi"}) {
    EXPECT_EQ(read(path("t1/") + file), read(path("t4/") + file)) << file;
  }
}

TEST_F(CliTest, GenerateAndEvaluate) {
  const std::string corpus = test_paths::kFixture1k;
  ASSERT_EQ(run("mine --corpus " + corpus + " -K 200 --out " + path("run")).code, 0);
  const CliRun gen = run("generate --vocab " + path("run/vocab.txt") + " --ops " +
                      path("run/ops.txt") + " --num 100 --seed 1 --out " + path("gen.smi"));
  ASSERT_EQ(gen.code, 0) << gen.err;
  EXPECT_NE(gen.err.find("requested=100"), std::string::npos) << gen.err;
  const CliRun ev = run("eval --generated " + path("gen.smi") + " --train " + corpus);
  ASSERT_EQ(ev.code, 0) << ev.err;
  EXPECT_NE(ev.out.find("validity=1.000000"), std::string::npos) << ev.out;
  EXPECT_NE(ev.out.find("kl_div_score="), std::string::npos);
}

TEST_F(CliTest, HelpDocumentsTheSmilesSubset) {
  const CliRun r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("SMILES"), std::string::npos);
}

}  // namespace
