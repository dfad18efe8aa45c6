// Copyright 2026 The vqesim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "pch.hpp"

#include <filesystem>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

class Scratch {
  public:
    Scratch() {
        dir_ = fs::temp_directory_path() /
               ("vqesim_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    [[nodiscard]] std::string path(const std::string &name) const { return (dir_ / name).string(); }
    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

  private:
    static inline int counter_ = 0;
    fs::path dir_;
};

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string &args) {
    Scratch s;
    const std::string cmd = std::string("'") + VQESIM_CLI_PATH + "' " + args + " >'" +
                            s.path("out") + "' 2>'" + s.path("err") + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(s.path("out"));
    r.err = slurp(s.path("err"));
    return r;
}

std::string h2_file() { return oracle::data_path("h2_sto3g_0.7414.fcidump"); }

nlohmann::json last_json_line(const std::string &text) {
    std::istringstream in(text);
    std::string line, last;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            last = line;
        }
    }
    return nlohmann::json::parse(last);
}

} // namespace

TEST_CASE("Cli::usage errors exit with code 2", "[Cli]") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--workers 0 exact x").code == 2);

    Scratch s;
    const auto bad = s.write("bad.fcidump", "&FCI NORB=2,\n&END\n 1.0 1 1 0 0\n");
    CHECK(run("transform '" + bad + "'").code == 2);

    const auto cfg = s.write("cfg.json", R"({"fcidump": "x", "colour": "red"})");
    const auto r = run("run-vqe --config '" + cfg + "'");
    CHECK(r.code == 2);
    CHECK_THAT(r.err, ContainsSubstring("colour"));

    const auto bad_json = s.write("broken.json", "{");
    CHECK(run("run-vqe --config '" + bad_json + "'").code == 2);
    CHECK(run("scan").code == 2);
    CHECK(run("run-vqe --fcidump '" + h2_file() + "' --backend gpu").code == 2);
    CHECK(run("transform '" + s.path("missing.fcidump") + "'").code == 2);
}

TEST_CASE("Cli::resource limits exit with code 3", "[Cli]") {
    Scratch s;
    const auto big = s.write("big.txt", "1.0 Z19\n");
    const auto r = run("exact '" + big + "'");
    CHECK(r.code == 3);
    CHECK_THAT(r.err, ContainsSubstring("error"));
}

TEST_CASE("Cli::exact eigenvalues", "[Cli]") {
    Scratch s;
    const auto z = s.write("z.txt", "1.0 Z0\n");
    const auto r = run("exact '" + z + "'");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["eigenvalues"] == nlohmann::json::array({-1.0, 1.0}));
    CHECK(j["schema_version"] == 1);

    const auto h = run("exact -k 1 '" + h2_file() + "'");
    REQUIRE(h.code == 0);
    CHECK(std::abs(nlohmann::json::parse(h.out)["eigenvalues"][0].get<double>() -
                   -1.137270174660903) < 1e-10);
}

TEST_CASE("Cli::transform output parses back", "[Cli]") {
    const auto r = run("transform '" + h2_file() + "'");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto h = vqesim::parse_pauli_sum(in);
    CHECK(h.size() == 15);
    CHECK_THAT(r.err, ContainsSubstring("terms: 15"));

    Scratch s;
    const auto zero = s.write("zero.fcidump", "&FCI NORB=2, NELEC=2, MS2=0,\n&END\n 0.5 0 0 0 0\n");
    const auto z = run("transform '" + zero + "'");
    REQUIRE(z.code == 0);
    std::istringstream zin(z.out);
    const auto hz = vqesim::parse_pauli_sum(zin);
    REQUIRE(hz.size() == 1);
    CHECK(hz.terms()[0].string.is_identity());
    CHECK(hz.terms()[0].coefficient == vqesim::complex_t{0.5});
}

TEST_CASE("Cli::resources report", "[Cli]") {
    const auto r = run("resources --fcidump '" + h2_file() + "'");
    REQUIRE(r.code == 0);
    const auto j = last_json_line(r.out);
    CHECK(j["n_qubits"] == 4);
    CHECK(j["n_params"] == 2);
    CHECK(j["n_cnot"] == 64);

    const auto g = last_json_line(run("resources --ansatz uccgsd --n-spatial 2 --n-electrons 2").out);
    CHECK(g["n_params"] == 5);

    const auto h = last_json_line(run("resources --ansatz hea --n-qubits 3 --hea-layers 1").out);
    CHECK(h["n_qubits"] == 3);
    CHECK(h["n_params"] == 18);
    CHECK(h["n_cnot"] == 2);

    CHECK(run("resources --ansatz hea").code == 2);
}

TEST_CASE("Cli::run-vqe on both backends", "[Cli]") {
    for (const char *backend : {"sv", "mps"}) {
        const auto r = run("--workers 2 run-vqe --fcidump '" + h2_file() + "' --backend " + backend);
        REQUIRE(r.code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(std::abs(j["energy"].get<double>() - -1.137270174660903) < 1e-6);
        CHECK(j["backend"] == backend);
        CHECK(j["schema_version"] == 1);
        CHECK(j.contains("truncation_log") == (std::string(backend) == "mps"));
        CHECK(j["history"].is_array());
    }
}

TEST_CASE("Cli::run-vqe is reproducible and flags override the config", "[Cli]") {
    Scratch s;
    const auto cfg = s.write("cfg.json", R"({"fcidump": ")" + h2_file() +
                                             R"(", "backend": "mps", "max_bond": 1})");
    const auto a = run("run-vqe --config '" + cfg + "' --backend sv");
    const auto b = run("run-vqe --config '" + cfg + "' --backend sv");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    auto ja = nlohmann::json::parse(a.out);
    auto jb = nlohmann::json::parse(b.out);
    CHECK(ja["backend"] == "sv");
    ja.erase("wall_time_s");
    jb.erase("wall_time_s");
    CHECK(ja.dump() == jb.dump());

    const auto out_path = s.path("result.json");
    const auto c = run("-o '" + out_path + "' run-vqe --config '" + cfg + "'");
    REQUIRE(c.code == 0);
    CHECK(c.out.empty());
    CHECK(nlohmann::json::parse(slurp(out_path))["backend"] == "mps");
}

TEST_CASE("Cli::run-vqe methods", "[Cli]") {
    const auto adapt = run("run-vqe --fcidump '" + h2_file() + "' --method adapt");
    REQUIRE(adapt.code == 0);
    const auto ja = nlohmann::json::parse(adapt.out);
    CHECK(ja["selected_operators"].size() <= 2);
    CHECK(std::abs(ja["energy"].get<double>() - -1.137270174660903) < 1e-6);

    const auto vqd = run("run-vqe --fcidump '" + h2_file() +
                         "' --method vqd --ansatz hea --vqd-k 1");
    REQUIRE(vqd.code == 0);
    const auto jv = nlohmann::json::parse(vqd.out);
    REQUIRE(jv["energies"].size() == 2);
    CHECK(std::abs(jv["energies"][1].get<double>() - -0.538709579877) < 1e-4);
}

TEST_CASE("Cli::scan writes one CSV row per file", "[Cli]") {
    const auto r = run("scan '" + oracle::data_path("h2_sto3g_0.5000.fcidump") + "' '" +
                       oracle::data_path("h2_sto3g_1.5000.fcidump") + "'");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "# schema_version=1");
    CHECK(lines[1] == "label,energy,exact_energy,reference_energy,converged");
    for (std::size_t i = 2; i < 4; ++i) {
        std::vector<std::string> f;
        std::stringstream row(lines[i]);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            f.push_back(cell);
        }
        REQUIRE(f.size() == 5);
        CHECK(std::abs(std::stod(f[1]) - std::stod(f[2])) < 1e-5);
        CHECK(f[4] == "true");
    }
}

TEST_CASE("Cli::gradcheck reports", "[Cli]") {
    const auto r = run("gradcheck --fcidump '" + h2_file() + "'");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["report"]["max_abs_reverse_minus_fd"].get<double>() < 1e-6);
    CHECK(j["report"]["max_abs_reverse_minus_shift"].get<double>() < 1e-10);

    const auto m = nlohmann::json::parse(
        run("gradcheck --backend mps --fcidump '" + h2_file() + "'").out);
    CHECK(m["report"]["reverse"].is_null());
    CHECK(m["report"]["max_abs_shift_minus_fd"].get<double>() < 1e-6);

    Scratch s;
    const auto full = s.write("full.fcidump", "&FCI NORB=2, NELEC=4, MS2=0,\n&END\n"
                                              " 1.0 1 1 0 0\n 1.0 2 2 0 0\n 0.0 0 0 0 0\n");
    const auto z = run("gradcheck --fcidump '" + full + "'");
    REQUIRE(z.code == 0);
    CHECK(nlohmann::json::parse(z.out)["n_params"] == 0);
}
