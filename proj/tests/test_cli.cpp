#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "specimeta/ark.hpp"
#include "specimeta/core.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = SPECIMETA_BIN;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("specimeta-cli-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const {
        return (path / name).string();
    }
};

int run(const std::string& args) {
    int status = std::system((kBin + " " + args).c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("unknown subcommand exits 2 with a synopsis") {
    CHECK(run("frobnicate 2>/dev/null") == 2);
    CHECK(run("2>/dev/null") == 2);
}

TEST_CASE("end-to-end pipeline through the CLI") {
    TempDir tmp;
    REQUIRE(run("generate --records 25 --seed 5 --out " + (tmp / "corpus") +
                " 2>/dev/null") == 0);
    REQUIRE(fs::exists(tmp.path / "corpus" / "rules" / "media.csv"));

    std::string inputs;
    for (const char* name : {"media", "event", "iq", "extended", "admin"})
        inputs += " --input " + std::string(name) + "=" +
                  (tmp / "corpus") + "/" + name + ".csv";
    std::string graph_cmd = "graph" + inputs + " --rules " +
                            (tmp / "corpus") + "/rules --naan 99999 --out " +
                            (tmp / "graph.nt") + " 2>/dev/null";
    REQUIRE(run(graph_cmd) == 0);
    auto first = slurp(tmp / "graph.nt");
    CHECK(!first.empty());

    SUBCASE("graph output is byte-stable across reruns") {
        REQUIRE(run(graph_cmd) == 0);
        CHECK(slurp(tmp / "graph.nt") == first);
    }

    SUBCASE("query prints bindings") {
        int rc = run("query --graph " + (tmp / "graph.nt") +
                     " --pattern '?s dwc:genus ?g' > " +
                     (tmp / "bindings.txt") + " 2>/dev/null");
        REQUIRE(rc == 0);
        auto out = slurp(tmp / "bindings.txt");
        CHECK(out.find("?s=<https://n2t.net/ark:/99999/fk4") !=
              std::string::npos);
    }

    SUBCASE("validate writes a report") {
        REQUIRE(run("validate --graph " + (tmp / "graph.nt") + " --labels " +
                    (tmp / "corpus") + "/labels.csv --naan 99999 --out " +
                    (tmp / "report.csv") + " 2>/dev/null") == 0);
        auto report = slurp(tmp / "report.csv");
        CHECK(report.starts_with("ark,score,pass,completeness,issueCount"));
        CHECK(report.find("true") != std::string::npos);
    }

    SUBCASE("export bundles a Multimedia root") {
        auto root = specimeta::ark::mint(
            "99999", specimeta::EntityClass::Multimedia, "INHS_FISH_00001");
        REQUIRE(run("export --graph " + (tmp / "graph.nt") + " --root '" +
                    root.render() + "' --out " + (tmp / "bundle.zip") +
                    " 2>/dev/null") == 0);
        auto zip = slurp(tmp / "bundle.zip");
        CHECK(zip.substr(0, 2) == "PK");

        // an independent reader accepts the archive
        int rc = std::system(
            ("python3 -c \"import sys, zipfile; z = zipfile.ZipFile('" +
             (tmp / "bundle.zip") +
             "'); names = z.namelist(); assert z.testzip() is None; assert "
             "'metadata.csv' in names and 'citation.txt' in names and "
             "'graph.owl' in names, names\"")
                .c_str());
        CHECK(WEXITSTATUS(rc) == 0);
    }

    SUBCASE("missing input file is a data error (exit 1)") {
        CHECK(run("query --graph /nonexistent.nt --pattern '?s ?p ?o' "
                  "2>/dev/null") == 1);
    }
}
