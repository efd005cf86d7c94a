#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "mincyc/cli.hpp"
#include "support.hpp"

using namespace mincyc;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "mincyc");
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "mincyc_cli_test")
    {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("homology subcommand")
{
    TempDir dir;
    REQUIRE(run({"generate", "rp2_6", "--out", dir / "rp2_6"}).code == 0);
    const auto r = run({"homology", "--mesh", dir / "rp2_6.smesh", "-k", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");
    CHECK(run({"homology", "--mesh", "gen:torus3_grid:3,3,3"}).out == "1 3 3 1\n");
}

TEST_CASE("minimize: bounding input")
{
    TempDir dir;
    io::write_file(dir / "tri.chain", "0 1\n1 2\n0 2\n");
    const auto r = run({"minimize", "--mesh", "gen:rp2_6", "--cycle", dir / "tri.chain"});
    CHECK(r.code == 0);
    const auto j = io::Json::parse(r.out);
    CHECK(j["weight"] == 0);
    CHECK(j["edges"].empty());
}

TEST_CASE("minimize: rp2_6 generator from generated files")
{
    TempDir dir;
    REQUIRE(run({"generate", "rp2_6", "--out", dir / "rp"}).code == 0);
    CHECK(std::filesystem::exists(dir / "rp.basis"));
    CHECK(std::filesystem::exists(dir / "rp.h1"));
    io::write_file(dir / "five.chain", "0 1\n1 2\n2 4\n3 4\n0 3\n");
    const auto r = run({"minimize", "--mesh", dir / "rp.smesh", "--cycle", dir / "five.chain"});
    CHECK(r.code == 0);
    CHECK(io::Json::parse(r.out)["weight"] == 3);
    const auto text = run({"minimize", "--mesh", dir / "rp.smesh", "--cycle", "h1:0", "--format", "text"});
    CHECK(text.out.find("weight 3\n") != std::string::npos);

    io::write_file(dir / "w.txt", "0 1 10\n1 3 10\n0 3 10\n");
    const auto heavy = run({"minimize", "--mesh", dir / "rp.smesh", "--cycle", "h1:0", "--weights", dir / "w.txt"});
    CHECK(io::Json::parse(heavy.out)["weight"] == 3);
}

TEST_CASE("exit codes and error lines")
{
    TempDir dir;
    const auto usage = run({"minimize", "--mesh", "gen:rp2_6"});
    CHECK(usage.code == 2);
    CHECK(usage.err.rfind("error:", 0) == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"generate", "not_a_mesh"}).code == 2);

    const auto missing = run({"homology", "--mesh", dir / "nope.smesh"});
    CHECK(missing.code == 1);
    CHECK(missing.err.rfind("error: IoError", 0) == 0);
    CHECK(std::count(missing.err.begin(), missing.err.end(), '\n') == 1);

    io::write_file(dir / "bad.smesh", "dim 2\nvertices 3\n0 1 2 3\n");
    const auto bad = run({"check", "--mesh", dir / "bad.smesh"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("line 3") != std::string::npos);

    io::write_file(dir / "open.smesh", "dim 2\nvertices 3\n0 1 2\n");
    CHECK(run({"homology", "--mesh", dir / "open.smesh"}).code == 1);
    CHECK(run({"homology", "--mesh", dir / "open.smesh", "--allow-open"}).out == "1 0 0\n");
    const auto check = run({"check", "--mesh", dir / "open.smesh", "--format", "text"});
    CHECK(check.code == 1);
    CHECK(check.out.find("has 1 top cofaces") != std::string::npos);

    CHECK(run({"generate", "torus_grid", "2", "3"}).code == 1);
    io::write_file(dir / "neg.txt", "0 1 -2\n");
    CHECK(run({"minimize", "--mesh", "gen:rp2_6", "--cycle", "h1:0", "--weights", dir / "neg.txt"}).code == 1);
    CHECK(run({"minimize", "--mesh", "gen:rp2_6", "--cycle", "h1:4"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("check and index subcommands")
{
    const auto ok = run({"check", "--mesh", "gen:klein_grid:4,4"});
    CHECK(ok.code == 0);
    CHECK(io::Json::parse(ok.out)["ok"] == true);

    const auto idx = run({"index", "--mesh", "gen:torus_grid:3,3"});
    CHECK(idx.code == 0);
    CHECK(idx.out.rfind("r 2\nedges 27\n", 0) == 0);
    const auto dump = run({"index", "--mesh", "gen:torus_grid:3,3", "--dump", "-"});
    CHECK(io::Json::parse(dump.out)["edges"].size() == 27);

    TempDir dir;
    CHECK(run({"index", "--mesh", "gen:rp2_6", "--cover", dir / "cover.smesh"}).code == 0);
    CHECK(io::parse_mesh(io::read_file(dir / "cover.smesh")).complex.euler_characteristic() == 2);
    CHECK(run({"index", "--mesh", "gen:torus_grid:3,3", "--cover", dir / "c.smesh", "--max-cells", "10"}).code == 1);
}

TEST_CASE("supplied basis files are validated")
{
    TempDir dir;
    REQUIRE(run({"generate", "torus_grid", "3", "3", "--out", dir / "t"}).code == 0);
    io::write_file(dir / "eight.basis", "0 1\n1 2\n0 2\n0 3\n3 6\n0 6\n---\n0 3\n3 6\n0 6\n");
    const auto r = run({"minimize", "--mesh", dir / "t.smesh", "--cycle", "h1:0", "--basis", dir / "eight.basis"});
    CHECK(r.code == 1);
    CHECK(r.err.find("NotSimple") != std::string::npos);
}

TEST_CASE("verify subcommand")
{
    const auto r = run({"verify", "--mesh", "gen:rp2_6", "--mesh", "gen:torus_grid:3,3", "--random-weights", "--seed", "3"});
    CHECK(r.code == 0);
    const auto j = io::Json::parse(r.out);
    REQUIRE(j.size() == 2);
    for (const auto& rep : j) {
        CHECK(rep["match"] == true);
        CHECK(rep["form_invariants_match"] == true);
    }
    const auto skipped = run({"verify", "--mesh", "gen:torus3_grid:3,3,3", "--budget", "100"});
    CHECK(skipped.code == 0);
    const auto s = io::Json::parse(skipped.out)[0];
    CHECK(s["oracle_min"].is_null());
    CHECK(s["match"].is_null());
    CHECK(s["form_invariants_match"].is_null());
}

TEST_CASE("output is identical across runs and thread counts")
{
    const std::vector<std::string> args{"minimize", "--mesh", "gen:genus2_polygon", "--cycle", "h1:0,2,3"};
    const auto first = run(args);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--jobs", "3"});
    for (int i = 0; i < 2; ++i) {
        CHECK(run(args).out == first.out);
        CHECK(run(threaded).out == first.out);
    }
}
