#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <algwit/io.hpp>

namespace {

  std::filesystem::path workdir() {
    auto dir = std::filesystem::temp_directory_path() / "algwit_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
  }

  int run(std::string const& args) {
    std::string cmd = std::string(ALGWIT_CLI) + " " + args + " > " + (workdir() / "stdout.txt").string()
                      + " 2> " + (workdir() / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string out_file(std::string const& name) {
    return (workdir() / name).string();
  }

  std::string slurp(std::string const& path) {
    std::ifstream      in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

}  // namespace

TEST(Cli, VerifiedCommandsExitZeroAndRecheck) {
  struct row {
    std::string args;
    std::string file;
  };
  for (auto const& r : {row{"verify sharpness --m 4 --q 2", "sharp.json"},
                        row{"verify induction --m 5 --q 3", "ind.json"},
                        row{"check identity --family n-distributive --m 4 --q 2 --n 3 --focus-ad --expect fails",
                            "id.json"},
                        row{"level --scheme jonsson --fixture N:2:4 --expect 4", "level.json"},
                        row{"search --scheme nu --arity 3 --fixture I:4 --expect none", "search.json"},
                        row{"search --scheme half-nu --m 3 --fixture Nm:3", "half.json"},
                        row{"toolkit lone-dissent --fixture dissent --mode arithmetical --d 0 --e 1",
                            "toolkit.json"}}) {
    EXPECT_EQ(run(r.args + " -o " + out_file(r.file)), 0) << r.args << "\n" << slurp(out_file("stderr.txt"));
    auto cert = algwit::read_json_file(out_file(r.file));
    EXPECT_TRUE(cert.contains("claim")) << r.args;
    EXPECT_EQ(run("--recheck " + out_file(r.file)), 0) << r.args;
  }
}

TEST(Cli, RefutedExpectationExitsOne) {
  EXPECT_EQ(run("level --scheme jonsson --fixture N:2:4 --expect 3"), 1);
  EXPECT_EQ(run("search --scheme nu --arity 3 --fixture I:4"), 1);
  EXPECT_EQ(run("check identity --family n-distributive --m 4 --q 2 --n 4 --focus-ad --expect fails"), 1);
}

TEST(Cli, CapExitsTwo) {
  EXPECT_EQ(run("--cap 10 verify sharpness --m 6 --q 3"), 2);
}

TEST(Cli, InvalidInputExitsThree) {
  EXPECT_EQ(run("build fixture --name bogus"), 3);
  EXPECT_EQ(run("verify sharpness --m 2 --q 2"), 3);
  EXPECT_EQ(run("level --scheme nope --fixture N:2:3"), 3);
  EXPECT_EQ(run("no-such-command"), 3);
  EXPECT_EQ(run("--recheck " + out_file("does-not-exist.json")), 3);
  EXPECT_EQ(run("build type-filtered --a1 N:1:4 --a2 N:1:4 --a3 N:2:4 --a4 N:3:4 --h 1 --k 3 --a 0 --d 1"), 3);
  EXPECT_NE(slurp(out_file("stderr.txt")).find("absorbing-4"), std::string::npos);
}

TEST(Cli, TamperedCertificateFailsRecheck) {
  ASSERT_EQ(run("level --scheme jonsson --fixture N:2:3 -o " + out_file("t.json")), 0);
  auto cert                 = algwit::read_json_file(out_file("t.json"));
  cert["evidence"]["level"] = 1;
  algwit::write_json_file(out_file("t.json"), cert);
  EXPECT_EQ(run("--recheck " + out_file("t.json")), 1);
}

TEST(Cli, BuildWritesAlgebras) {
  ASSERT_EQ(run("build ujm --size 3 --j 2 --m 4 -o " + out_file("u.json")), 0);
  auto alg = algwit::load_algebra(out_file("u.json"));
  EXPECT_EQ(alg.size(), 3u);
  ASSERT_EQ(run("build product --input " + out_file("u.json") + " " + out_file("u.json") + " -o "
                + out_file("p.json")),
            0);
  EXPECT_EQ(algwit::load_algebra(out_file("p.json")).size(), 9u);
  EXPECT_EQ(run("build type-filtered --a1 N:1:4 --a2 N:1:4 --a3 N:2:4 --a4 N:2:4 --h 1 --k 3 --a 0 --d 1"), 0);
  EXPECT_EQ(run("build punctured --m 4"), 0);
  EXPECT_EQ(run("build sharpness --m 3 --q 2"), 0);
}
