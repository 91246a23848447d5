#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ccmm/cli.hpp"
#include "ccmm/config.hpp"
#include "ccmm/realization.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = ccmm::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ccmm_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("build and info") {
  TempDir d;
  CHECK(run({"build", "group-scheme", "cyclic:5", "-o", d / "z5.ccfg"}).code == 0);
  const auto r = run({"info", d / "z5.ccfg"});
  CHECK(r.code == 0);
  CHECK(r.out == "points 5 classes 5 commutative true scheme true\n");
  CHECK(run({"verify", d / "z5.ccfg"}).code == 0);

  CHECK(run({"build", "trivial", "3", "-o", d / "t3.ccfg"}).code == 0);
  CHECK(run({"info", d / "t3.ccfg"}).out == "points 3 classes 9 commutative false scheme false\n");
  CHECK(run({"degrees", d / "t3.ccfg"}).out.rfind("degrees: 3 ", 0) == 0);
}

TEST_CASE("build verbs write verified files") {
  TempDir d;
  CHECK(run({"build", "schurian", "diagonal:3", "-o", d / "d3.ccfg"}).code == 0);
  CHECK(ccmm::load_ccfg(d / "d3.ccfg").rank() == 27);
  CHECK(run({"build", "gas", "sym:3", "-o", d / "g.ccfg"}).code == 0);
  CHECK(ccmm::load_ccfg(d / "g.ccfg").rank() == 3);
  CHECK(run({"build", "product", d / "g.ccfg", d / "g.ccfg", "-o", d / "p.ccfg"}).code == 0);
  CHECK(ccmm::load_ccfg(d / "p.ccfg").rank() == 9);
  CHECK(run({"build", "power", d / "g.ccfg", "--k", "2", "-o", d / "pw.ccfg"}).code == 0);
  CHECK(run({"build", "sympow", d / "g.ccfg", "--k", "2", "-o", d / "s.ccfg"}).code == 0);
  CHECK(ccmm::load_ccfg(d / "s.ccfg").rank() == 6);

  CHECK(run({"build", "group-scheme", "cyclic:4", "-o", d / "z4.ccfg"}).code == 0);
  write_file(d / "ok.part", "0\n1 3\n2\n");
  CHECK(run({"build", "fuse", d / "z4.ccfg", "--partition", d / "ok.part", "-o", d / "f.ccfg"}).code == 0);
  CHECK(ccmm::load_ccfg(d / "f.ccfg").rank() == 3);

  CHECK(run({"build", "group-scheme", "cyclic:5", "-o", d / "z5.ccfg"}).code == 0);
  write_file(d / "bad.part", "0\n1 2\n3\n4\n");
  const auto bad = run({"build", "fuse", d / "z5.ccfg", "--partition", d / "bad.part", "-o", d / "x.ccfg"});
  CHECK(bad.code == 1);
  CHECK_FALSE(bad.err.empty());
  CHECK_FALSE(fs::exists(d / "x.ccfg"));
}

TEST_CASE("cap flag") {
  TempDir d;
  CHECK(run({"--cap", "10", "build", "group-scheme", "sym:4", "-o", d / "s4.ccfg"}).code == 1);
  CHECK(run({"build", "group-scheme", "sym:4", "--cap", "30", "-o", d / "s4.ccfg"}).code == 0);
}

TEST_CASE("realize, matmul and boolmm") {
  TempDir d;
  CHECK(run({"build", "trivial", "3", "-o", d / "t3.ccfg"}).code == 0);
  CHECK(run({"realize", "fibers", d / "t3.ccfg", "-o", d / "t3.real"}).code == 0);
  CHECK(run({"realize", "verify", "--ccfg", d / "t3.ccfg", "--real", d / "t3.real"}).code == 0);

  write_file(d / "a.mat", "3 3\n1 2 3\n4 5 6\n7 8 9\n");
  const auto m = run({"matmul", "--ccfg", d / "t3.ccfg", "--real", d / "t3.real", "--a", d / "a.mat", "--b",
                      d / "a.mat", "--oracle"});
  CHECK(m.code == 0);
  CHECK(m.out == "3 3\n30 36 42\n66 81 96\n102 126 150\n");
  CHECK(m.err == "oracle agrees\n");

  write_file(d / "b.mat", "3 3\n1 0 0\n0 0 1\n0 0 0\n");
  CHECK(run({"boolmm", "--ccfg", d / "t3.ccfg", "--real", d / "t3.real", "--a", d / "b.mat", "--b", d / "b.mat"})
            .code == 2);
  const auto b = run({"boolmm", "--ccfg", d / "t3.ccfg", "--real", d / "t3.real", "--a", d / "b.mat", "--b",
                      d / "b.mat", "--seed", "4"});
  CHECK(b.code == 0);
  CHECK(b.out == "3 3\n1 0 0\n0 0 0\n0 0 0\n");

  // Corrupt one gamma entry: verification fails with a witness.
  auto r = ccmm::read_realization(*std::make_unique<std::ifstream>(d / "t3.real"));
  std::swap(r.gamma[0], r.gamma[1]);
  {
    std::ofstream o(d / "bad.real");
    ccmm::write_realization(o, r);
  }
  const auto v = run({"realize", "verify", "--ccfg", d / "t3.ccfg", "--real", d / "bad.real"});
  CHECK(v.code == 1);
  CHECK_FALSE(v.err.empty());
}

TEST_CASE("realization pipelines") {
  TempDir d;
  CHECK(run({"realize", "diagonal-example", "--n", "3", "--set", "0,1", "-o", d / "d3"}).code == 0);
  CHECK(fs::exists(d / "d3.ccfg"));
  CHECK(run({"realize", "sympow", "--ccfg", d / "d3.ccfg", "--real", d / "d3.0.real", "--real", d / "d3.1.real"})
            .code == 0);
  write_file(d / "z8.triples", "A=0,1 B=0,2 C=0,4\n");
  const auto g = run({"realize", "grp-as", "--group", "cyclic:8", "--triples", d / "z8.triples"});
  CHECK(g.code == 0);
  CHECK(g.out.find("<2,2,2>") != std::string::npos);
  CHECK(run({"realize", "tpp", "--group", "cyclic:8", "--triples", d / "z8.triples"}).code == 0);
  CHECK(run({"realize", "search-tpp", "--group", "cyclic:4", "--count", "2"}).code == 0);
}

TEST_CASE("demos") {
  const auto t = run({"demo", "theorem32", "--n", "2", "--seed", "0"});
  CHECK(t.code == 0);
  CHECK(t.out.rfind("PASS\n", 0) == 0);
  CHECK(run({"demo", "theorem32", "--n", "2"}).code == 2);
  CHECK(run({"demo", "jminusi", "--n", "5"}).out == "n 5 rank(J-I) 5 rank(M-J) 2 same-support true\n");
  CHECK(run({"demo", "triangle-free", "--n", "3"}).out == "n 3 size 3 set (1,1,3) (1,2,2) (1,3,1)\n");
}

TEST_CASE("exponent verbs") {
  const auto c = run({"exponent", "cksu", "--m", "10"});
  CHECK(c.code == 0);
  CHECK(c.out == "omega_s <= 2.4037 (provenance: cksu(10) -> 2.4036322608328735)\n");
  const auto w = run({"exponent", "convert"}, c.out);
  CHECK(w.code == 0);
  CHECK(w.out ==
        "omega <= 2.6055 (provenance: cksu(10) -> 2.4036322608328735; convert -> 2.6054483912493103)\n");
  CHECK(run({"exponent", "convert", "--omega-s", "2.41"}).out.rfind("omega <= 2.6150", 0) == 0);
  CHECK(run({"exponent", "commutative", "--dims", "5,5,5", "--rank", "25"}).out.rfind("omega_s <= 2.0000", 0) == 0);
  CHECK(run({"exponent", "noncommutative", "--dims", "4,4,4", "--degrees", "4"}).out.rfind("omega_s <= 2.3727", 0) ==
        0);
  CHECK(run({"exponent", "cksu", "--m", "2"}).code == 2);
  TempDir d;
  write_file(d / "b.blocks", "5 5 5\n5 5 5\n");
  CHECK(run({"exponent", "asi", "--blocks", d / "b.blocks", "--rank", "125"}).out.rfind("omega_s <= 2.5694", 0) == 0);
}

TEST_CASE("reproduce") {
  const auto r = run({"reproduce"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"build", "group-scheme", "nonsense:3", "-o", "/dev/null"}).code == 2);
  CHECK(run({"info", "/nonexistent/file.ccfg"}).code != 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("scripts") {
  TempDir d;
  write_file(d / "ok.script", "# build then inspect\nccmm build group-scheme cyclic:3 -o " + (d / "z3.ccfg") +
                                  "\ninfo " + (d / "z3.ccfg") + "\n");
  const auto ok = run({"run-script", d / "ok.script"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("points 3 classes 3") != std::string::npos);
  write_file(d / "bad.script", "info " + (d / "missing.ccfg") + "\n");
  CHECK(run({"run-script", d / "bad.script"}).code == 2);
}

TEST_CASE("identical arguments give identical output") {
  TempDir d;
  CHECK(run({"build", "schurian", "natural:sym:4", "-o", d / "n4.ccfg"}).code == 0);
  CHECK(run({"realize", "fibers", d / "n4.ccfg", "-o", d / "n4.real"}).code == 0);
  for (const std::vector<std::string> args :
       {std::vector<std::string>{"degrees", d / "n4.ccfg", "--seed", "3"}, {"demo", "theorem32", "--n", "3", "--seed", "7"},
        {"exponent", "asi", "--blocks", d / "n4.real", "--rank", "5"}, {"reproduce"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
  CHECK(run({"build", "schurian", "natural:sym:4", "-o", d / "again.ccfg"}).code == 0);
  std::ifstream f1(d / "n4.ccfg"), f2(d / "again.ccfg");
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
}
