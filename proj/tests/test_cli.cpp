#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "pergraph/cli.hpp"
#include "pergraph/io.hpp"

using namespace pergraph;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "pergraph");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "pergraph_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("generate writes catalog graphs") {
    auto r = call({"generate", "bcc"});
    REQUIRE(r.code == 0);
    auto g = io::parse_graph(r.out);
    CHECK(g.order() == 2);
    CHECK(g.edges.size() == 11);

    g = io::parse_graph(call({"generate", "lattice", "--d", "2"}).out);
    CHECK(g.order() == 1);
    CHECK(g.edges.size() == 2);

    g = io::parse_graph(call({"generate", "subdivided", "--d", "2", "--n", "2"}).out);
    CHECK(g.order() == 5);

    const auto path = scratch("star.json");
    CHECK(call({"generate", "star_decorated", "--d", "2", "--nu", "3", "-o", path.string()}).code == 0);
    CHECK(io::read_graph(path.string()).order() == 3);

    CHECK(call({"generate", "hexagonal"}).code == 2);
    CHECK(call({"generate", "bcc", "--d", "2"}).code == 2);
    CHECK(call({"generate", "lattice", "--d", "0"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"bands"}).code == 2);
}

TEST_CASE("bands table and path data") {
    const auto fcc = scratch("fcc.json");
    io::write_text(fcc.string(), call({"generate", "fcc"}).out);
    auto r = call({"bands", fcc.string(), "--grid", "16"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out) == 5);
    CHECK(r.out.find("2,1,1,true,2\n3,1,1,true,2\n") != std::string::npos);

    const auto csv = scratch("fcc.csv");
    CHECK(call({"bands", fcc.string(), "--csv", csv.string()}).code == 0);
    CHECK(io::read_text(csv.string()) == r.out);

    r = call({"bands", fcc.string(), "--grid", "7"});
    CHECK(r.code == 2);
    CHECK(r.err.find("grid must be even to include π") != std::string::npos);

    const auto lat = scratch("lat2.json");
    io::write_text(lat.string(), call({"generate", "lattice", "--d", "2"}).out);
    const auto path_csv = scratch("path.csv");
    r = call({"bands", lat.string(), "--grid", "4", "--path", "0,0..pi,pi:8", "--path-csv", path_csv.string()});
    REQUIRE(r.code == 0);
    const auto table = io::read_text(path_csv.string());
    CHECK(lines(table) == 10);
    CHECK(table.find("\n4,1.5707963267949,1.5707963267949,1\n") != std::string::npos);
    CHECK(table.find("\n8,3.14159265358979,3.14159265358979,2\n") != std::string::npos);

    CHECK(call({"bands", lat.string(), "--path", "0..pi:8"}).code == 2);
    CHECK(call({"bands", lat.string(), "--potential", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("potential file and defaults") {
    const auto bcc = scratch("bcc.json");
    io::write_text(bcc.string(), call({"generate", "bcc"}).out);
    const auto pot = scratch("q.json");
    io::write_text(pot.string(), R"({"v1": 1})");
    auto with = call({"bands", bcc.string(), "--potential", pot.string()});
    REQUIRE(with.code == 0);
    CHECK(with.out.find("2,2,") != std::string::npos);  // second band starts at 1 + q1
    auto without = call({"bands", bcc.string()});
    CHECK(without.out.find("1,0,1,false,") != std::string::npos);
}

TEST_CASE("report verdicts and exit status") {
    const auto star = scratch("star3.json");
    io::write_text(star.string(), call({"generate", "star_decorated", "--d", "2", "--nu", "3"}).out);
    auto r = call({"report", star.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"loop\": true") != std::string::npos);
    CHECK(r.out.find("\"exact\": true") != std::string::npos);
    CHECK(r.out.find("(equality)") != std::string::npos);

    const auto bcc = scratch("bcc_r.json");
    io::write_text(bcc.string(), call({"generate", "bcc"}).out);
    const auto pot = scratch("q1.json");
    io::write_text(pot.string(), R"({"v1": 1.0})");
    r = call({"report", bcc.string(), "--potential", pot.string(), "--grid", "8"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("1.42857142857143,\n      2.0\n") != std::string::npos);
}

TEST_CASE("check subcommand") {
    const auto bcc = scratch("bcc_c.json");
    io::write_text(bcc.string(), call({"generate", "bcc"}).out);
    auto r = call({"check", bcc.string(), "--grid", "8", "--trials", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const auto broken = scratch("broken.json");
    io::write_text(broken.string(), R"({"dimension": 1, "vertices": [{"id": "a"}], "edges": [{"u": "a", "v": "z", "index": [1]}]})");
    r = call({"check", broken.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown vertex") != std::string::npos);

    const auto thin = scratch("thin.json");
    io::write_text(thin.string(),
                   R"({"dimension": 2, "vertices": [{"id": "a"}, {"id": "b"}], "edges": [{"u": "a", "v": "b", "index": [0, 0]}, {"u": "a", "v": "a", "index": [1, 0]}]})");
    r = call({"check", thin.string(), "--grid", "4", "--trials", "2"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning:") != std::string::npos);
}

TEST_CASE("mass subcommand") {
    const auto lat = scratch("lat3.json");
    io::write_text(lat.string(), call({"generate", "lattice", "--d", "3"}).out);
    auto r = call({"mass", lat.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("M\n", 0) == 0);
    CHECK(r.out.find("\nm\n3") != std::string::npos);

    const auto thin = scratch("thin_m.json");
    io::write_text(thin.string(), R"({"dimension": 2, "vertices": [{"id": "a"}], "edges": [{"u": "a", "v": "a", "index": [1, 0]}]})");
    r = call({"mass", thin.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("effective mass undefined") != std::string::npos);
}

TEST_CASE("output is identical across worker counts") {
    const auto fcc = scratch("fcc_t.json");
    io::write_text(fcc.string(), call({"generate", "fcc"}).out);
    const auto pot = scratch("fcc_q.json");
    io::write_text(pot.string(), R"({"v1": 0.2, "v2": -0.4, "v3": 0.1})");
    setenv("PERGRAPH_THREADS", "1", 1);
    const auto one = call({"report", fcc.string(), "--grid", "8", "--potential", pot.string()});
    setenv("PERGRAPH_THREADS", "3", 1);
    const auto three = call({"report", fcc.string(), "--grid", "8", "--potential", pot.string()});
    unsetenv("PERGRAPH_THREADS");
    CHECK(one.code == three.code);
    CHECK(one.out == three.out);
}
