#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Workspace {
public:
    Workspace() : dir_(fs::temp_directory_path() / "rwadyn_test_cli") {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Workspace() { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name), std::ios::binary) << text;
        return path(name);
    }

    Result run(const std::string& args) const {
        const std::string cmd = std::string("\"") + RWADYN_CLI_PATH + "\" " + args + " >\"" +
                                path("stdout").string() + "\" 2>\"" + path("stderr").string() + "\"";
        const int status = std::system(cmd.c_str());
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return {code, slurp(path("stdout")), slurp(path("stderr"))};
    }

private:
    fs::path dir_;
};

const char* kSmall = "g = 1\nt_max = 1\ndt = 0.01\n";

}  // namespace

TEST_CASE("run writes csv and manifest") {
    Workspace ws;
    const auto cfg = ws.write("a.cfg", std::string(kSmall) + "output = " + ws.path("a.csv").string() + "\n");
    const auto r = ws.run("run \"" + cfg.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("a.csv") != std::string::npos);
    const std::string csv = slurp(ws.path("a.csv"));
    CHECK(csv.rfind("t,rho11\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
    CHECK(slurp(ws.path("a.csv.manifest")).find("solver.dt = 0.01") != std::string::npos);

    // identical config, byte-identical results
    const auto again = ws.run("run \"" + cfg.string() + "\"");
    CHECK(again.code == 0);
    CHECK(slurp(ws.path("a.csv")) == csv);
}

TEST_CASE("config errors exit with 2 and name the line") {
    Workspace ws;
    const auto cfg = ws.write("bad.cfg", "g = 1\n# comment\np = 7\n");
    const auto r = ws.run("run \"" + cfg.string() + "\"");
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(ws.run("run \"" + ws.path("missing.cfg").string() + "\"").code == 2);
    CHECK(ws.run("frobnicate").code == 2);
    CHECK(ws.run("run").code == 2);
    CHECK(ws.run("preset figure1 --g 0 --out x.csv").code == 2);
    CHECK(ws.run("preset figure2 --g 1 --out x.csv").code == 2);
}

TEST_CASE("unwritable output exits with 2") {
    Workspace ws;
    const auto cfg = ws.write("io.cfg", std::string(kSmall) + "output = " +
                                            ws.path("no/such/dir.csv").string() + "\n");
    const auto r = ws.run("run \"" + cfg.string() + "\"");
    CHECK(r.code == 2);
    CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("numerical failures exit with 3 and keep their context") {
    Workspace ws;
    const auto cfg = ws.write("num.cfg", std::string(kSmall) + "quad.max_panels = 4\noutput = " +
                                             ws.path("n.csv").string() + "\n");
    const auto r = ws.run("run \"" + cfg.string() + "\"");
    CHECK(r.code == 3);
    CHECK(r.err.find("zero-temperature kernel") != std::string::npos);
}

TEST_CASE("compare reports the oracle difference") {
    Workspace ws;
    const auto cfg = ws.write("c.cfg", std::string(kSmall) + "output = " + ws.path("c.csv").string() + "\n");
    const auto r = ws.run("compare \"" + cfg.string() + "\"");
    CHECK(r.code == 0);
    CHECK(r.out.find("max_abs_diff") != std::string::npos);
    CHECK(slurp(ws.path("c.csv")).rfind("t,rho11_volterra,rho11_oracle,abs_diff\n", 0) == 0);
    CHECK(slurp(ws.path("c.csv.manifest")).find("max_abs_diff = ") != std::string::npos);
}

TEST_CASE("preset can emit its config for later runs") {
    Workspace ws;
    const auto r = ws.run("preset figure1 --g 4 --write-config --out \"" + ws.path("f.cfg").string() + "\"");
    CHECK(r.code == 0);
    const std::string text = slurp(ws.path("f.cfg"));
    CHECK(text.find("g = 4\n") != std::string::npos);
    CHECK(text.find("p = 0.3\n") != std::string::npos);
    CHECK(text.find("omega = 5\n") != std::string::npos);
    CHECK(text.find("dt = 0.001\n") != std::string::npos);
    CHECK(ws.run("--version").out.find("0.3.0") != std::string::npos);
}

TEST_CASE("preset runs the figure scenario directly") {
    Workspace ws;
    const auto r = ws.run("preset figure1 --g 0.5 --out \"" + ws.path("fig.csv").string() + "\"");
    CHECK(r.code == 0);
    const std::string csv = slurp(ws.path("fig.csv"));
    CHECK(csv.rfind("t,rho11\n0,0.28089617357", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10002);
    CHECK(slurp(ws.path("fig.csv.manifest")).find("g_over_gamma = 0.5") != std::string::npos);
}
