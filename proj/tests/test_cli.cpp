// Copyright 2026-present the prunerank project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prunerank/io.hpp"
#include "prunerank/matrix.hpp"

using namespace prunerank;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "prunerank_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir / name;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream all;
    all << in.rdbuf();
    return all.str();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI through the shell so env prefixes and redirection work.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const fs::path out_file = temp_file("cli_stdout_" + std::to_string(counter));
    const fs::path err_file = temp_file("cli_stderr_" + std::to_string(counter));
    ++counter;
    std::string cmd = env_prefix.empty() ? std::string() : env_prefix + " ";
    cmd += '"';
    cmd += PRUNERANK_CLI_PATH;
    cmd += "\" " + args + " > \"" + out_file.string() + "\" 2> \"" + err_file.string() + '"';
    const int status = std::system(cmd.c_str());
    CliResult r;
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = read_text(out_file);
    r.err = read_text(err_file);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream stream(line);
    std::string field;
    while (std::getline(stream, field, '\t')) fields.push_back(field);
    return fields;
}

bool same_bytes(const fs::path& a, const fs::path& b) { return read_text(a) == read_text(b); }

std::string fixtures_dir() { return PRUNERANK_FIXTURES_DIR; }

// Shared synthetic corpus for the retrieval subcommands.
const fs::path& corpus_dir() {
    static const fs::path dir = [] {
        const fs::path d = temp_file("corpus");
        const auto r = run_cli("generate --out-dir \"" + d.string() +
                               "\" --docs 200 --queries 8 --dim 16 --rank 4 --sigma 0.05 "
                               "--seed 7");
        REQUIRE(r.exit_code == 0);
        return d;
    }();
    return dir;
}

// Corpus whose Gram matrix is diagonal with distinct descending column
// norms, so the fitted basis is exactly the identity.
fs::path axis_aligned_corpus() {
    const fs::path path = temp_file("axis.vec");
    const DenseMatrix docs =
        DenseMatrix::from_rows({{4, 0, 0}, {0, 2, 0}, {0, 0, 1}, {2, 0, 0}});
    write_vectors(path, docs);
    return path;
}

}  // namespace

TEST_CASE("generate is deterministic across invocations") {
    const fs::path a = temp_file("gen_a");
    const fs::path b = temp_file("gen_b");
    const std::string spec = " --docs 50 --queries 4 --dim 8 --rank 2 --sigma 0.1 --seed 3";
    REQUIRE(run_cli("generate --out-dir \"" + a.string() + "\"" + spec).exit_code == 0);
    REQUIRE(run_cli("generate --out-dir \"" + b.string() + "\"" + spec).exit_code == 0);
    for (const char* name : {"docs.vec", "docs.ids", "queries.vec", "queries.ids", "qrels.txt"}) {
        CAPTURE(name);
        CHECK(same_bytes(a / name, b / name));
    }
    CHECK(fs::file_size(a / "docs.vec") == 50 * (4 + 4 * 8));
}

TEST_CASE("fit writes a deterministic model and a decile table") {
    const fs::path docs = corpus_dir() / "docs.vec";
    const fs::path model_a = temp_file("fit_a.pca");
    const fs::path model_b = temp_file("fit_b.pca");
    const auto ra = run_cli("fit --docs \"" + docs.string() + "\" --out \"" +
                            model_a.string() + "\"");
    const auto rb = run_cli("fit --docs \"" + docs.string() + "\" --out \"" +
                            model_b.string() + "\"");
    REQUIRE(ra.exit_code == 0);
    REQUIRE(rb.exit_code == 0);
    CHECK(same_bytes(model_a, model_b));

    const auto table = lines_of(ra.out);
    REQUIRE(table.size() == 11);
    CHECK(table[0] == "m\tcutoff\tretained_variance");
    // Most aggressive decile first: cutoff 0.9 keeps m = 2 of 16 dims.
    CHECK(fields_of(table[1])[0] == "2");
    CHECK(fields_of(table[1])[1] == "0.900000");
    // The cutoff-0 row retains everything.
    CHECK(fields_of(table[10])[0] == "16");
    CHECK(fields_of(table[10])[2] == "1.000000");
}

TEST_CASE("fit clamps oversized samples with a warning") {
    const fs::path docs = corpus_dir() / "docs.vec";
    const auto r = run_cli("fit --docs \"" + docs.string() + "\" --out \"" +
                           temp_file("clamped.pca").string() + "\" --sample-size 100000");
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.find("clamped to 200") != std::string::npos);
}

TEST_CASE("prune-transform at cutoff 0 reproduces an axis-aligned corpus byte for byte") {
    const fs::path docs = axis_aligned_corpus();
    const fs::path model = temp_file("axis.pca");
    REQUIRE(run_cli("fit --docs \"" + docs.string() + "\" --out \"" + model.string() + "\"")
                .exit_code == 0);

    const fs::path unchanged = temp_file("axis_c0.vec");
    REQUIRE(run_cli("prune-transform --docs \"" + docs.string() + "\" --model \"" +
                    model.string() + "\" --cutoff 0 --out \"" + unchanged.string() + "\"")
                .exit_code == 0);
    CHECK(same_bytes(docs, unchanged));

    // Cutoff 0.5 on dim 3 keeps m = 1: payload is n * (4 + 4 * 1) bytes.
    const fs::path half = temp_file("axis_c05.vec");
    REQUIRE(run_cli("prune-transform --docs \"" + docs.string() + "\" --model \"" +
                    model.string() + "\" --cutoff 0.5 --out \"" + half.string() + "\"")
                .exit_code == 0);
    CHECK(fs::file_size(half) == 4 * (4 + 4 * 1));
}

TEST_CASE("prune-transform rejects bad inputs") {
    const fs::path docs = axis_aligned_corpus();
    const fs::path model = temp_file("axis2.pca");
    REQUIRE(run_cli("fit --docs \"" + docs.string() + "\" --out \"" + model.string() + "\"")
                .exit_code == 0);
    const auto full_cut = run_cli("prune-transform --docs \"" + docs.string() +
                                  "\" --model \"" + model.string() +
                                  "\" --cutoff 1.0 --out \"" +
                                  temp_file("never.vec").string() + "\"");
    CHECK(full_cut.exit_code != 0);
    CHECK(full_cut.err.find("error:") != std::string::npos);

    CHECK(run_cli("prune-transform --docs /nonexistent.vec --model \"" + model.string() +
                  "\" --out \"" + temp_file("never2.vec").string() + "\"")
              .exit_code != 0);
}

TEST_CASE("search honors k and model application") {
    const fs::path dir = corpus_dir();
    const std::string files = " --index \"" + (dir / "docs.vec").string() + "\" --ids \"" +
                              (dir / "docs.ids").string() + "\" --queries \"" +
                              (dir / "queries.vec").string() + "\" --query-ids \"" +
                              (dir / "queries.ids").string() + "\"";
    const fs::path plain = temp_file("plain.run");
    REQUIRE(run_cli("search" + files + " --k 5 --out \"" + plain.string() + "\"")
                .exit_code == 0);
    const auto run = read_run(plain, nullptr);
    REQUIRE(run.size() == 8);
    for (const auto& r : run) CHECK(r.hits.size() == 5);

    // A full-dimension rotation must not change a single output byte.
    const fs::path model = temp_file("search.pca");
    REQUIRE(run_cli("fit --docs \"" + (dir / "docs.vec").string() + "\" --out \"" +
                    model.string() + "\"")
                .exit_code == 0);
    const fs::path rotated = temp_file("rotated.run");
    REQUIRE(run_cli("search" + files + " --k 5 --model \"" + model.string() +
                    "\" --cutoff 0 --out \"" + rotated.string() + "\"")
                .exit_code == 0);
    CHECK(same_bytes(plain, rotated));

    // Searching a pre-pruned index only transforms the queries.
    const fs::path pruned_index = temp_file("pruned_index.vec");
    REQUIRE(run_cli("prune-transform --docs \"" + (dir / "docs.vec").string() +
                    "\" --model \"" + model.string() + "\" --cutoff 0.5 --out \"" +
                    pruned_index.string() + "\"")
                .exit_code == 0);
    const fs::path from_pruned = temp_file("from_pruned.run");
    const auto rp = run_cli("search --index \"" + pruned_index.string() + "\" --ids \"" +
                            (dir / "docs.ids").string() + "\" --queries \"" +
                            (dir / "queries.vec").string() + "\" --query-ids \"" +
                            (dir / "queries.ids").string() + "\" --k 5 --model \"" +
                            model.string() + "\" --cutoff 0.5 --out \"" +
                            from_pruned.string() + "\"");
    REQUIRE(rp.exit_code == 0);
    CHECK(rp.err.find("dim 8") != std::string::npos);

    CHECK(run_cli("search" + files + " --cutoff 0.5 --out \"" +
                  temp_file("nomodel.run").string() + "\"")
              .exit_code != 0);
}

TEST_CASE("thread count comes from the flag or the environment, same result") {
    const fs::path dir = corpus_dir();
    const std::string files = " --index \"" + (dir / "docs.vec").string() + "\" --ids \"" +
                              (dir / "docs.ids").string() + "\" --queries \"" +
                              (dir / "queries.vec").string() + "\" --query-ids \"" +
                              (dir / "queries.ids").string() + "\"";
    const fs::path by_flag = temp_file("threads_flag.run");
    const fs::path by_env = temp_file("threads_env.run");
    REQUIRE(run_cli("search" + files + " --k 20 --threads 3 --out \"" + by_flag.string() +
                    "\"")
                .exit_code == 0);
    REQUIRE(run_cli("search" + files + " --k 20 --out \"" + by_env.string() + "\"",
                    "PRUNERANK_THREADS=3")
                .exit_code == 0);
    CHECK(same_bytes(by_flag, by_env));
}

TEST_CASE("eval prints the metric table and mirrors it to JSON") {
    const fs::path report = temp_file("report.json");
    const auto r = run_cli("eval --run \"" + fixtures_dir() + "/golden_run.txt" +
                           "\" --qrels \"" + fixtures_dir() + "/golden_qrels.txt" +
                           "\" --gain linear --report \"" + report.string() + "\"");
    REQUIRE(r.exit_code == 0);
    const auto table = lines_of(r.out);
    REQUIRE(table.size() == 13);  // header + 3 metrics x (3 queries + all)
    CHECK(table[0] == "metric\tquery_id\tvalue");
    auto has_line = [&](const std::string& want) {
        for (const auto& line : table) {
            if (line == want) return true;
        }
        return false;
    };
    CHECK(has_line("AP\tq1\t0.638889"));
    CHECK(has_line("AP\tall\t0.712963"));
    CHECK(has_line("nDCG@10\tall\t0.750447"));
    CHECK(has_line("MRR@10\tall\t0.666667"));

    const auto doc = nlohmann::json::parse(read_text(report));
    REQUIRE(doc.at("metrics").size() == 3);
    CHECK(doc.at("metrics")[0].at("name") == "AP");
    CHECK(std::abs(doc.at("metrics")[0].at("mean").get<double>() - 0.7129629629629628) <=
          1e-12);
    CHECK(doc.at("metrics")[0].at("per_query").size() == 3);
}

TEST_CASE("compare of a run against itself is a null result") {
    const std::string golden = fixtures_dir() + "/golden_run.txt";
    const auto r = run_cli("compare \"" + golden + "\" \"" + golden + "\" --qrels \"" +
                           fixtures_dir() + "/golden_qrels.txt\"");
    REQUIRE(r.exit_code == 0);
    const auto table = lines_of(r.out);
    REQUIRE(table.size() == 2);
    const auto fields = fields_of(table[1]);
    REQUIRE(fields.size() == 8);
    CHECK(fields[0] == "nDCG@10");
    CHECK(fields[1] == "3");          // paired queries
    CHECK(fields[2] == fields[3]);    // identical means
    CHECK(fields[4] == "0");          // n_effective after zero removal
    CHECK(fields[6] == "1.000000");   // p-value
    CHECK(fields[7] == "0");          // not significant
}

TEST_CASE("compare rejects runs with no shared judged queries") {
    const fs::path run_a = temp_file("only_q1.run");
    const fs::path run_b = temp_file("only_q2.run");
    std::ofstream(run_a) << "q1 Q0 D1 1 1.000000 a\n";
    std::ofstream(run_b) << "q2 Q0 D1 1 1.000000 b\n";
    const auto r = run_cli("compare \"" + run_a.string() + "\" \"" + run_b.string() +
                           "\" --qrels \"" + fixtures_dir() + "/golden_qrels.txt\"");
    CHECK(r.exit_code != 0);
    CHECK(r.err.find("share no judged queries") != std::string::npos);
}

TEST_CASE("sweep emits the full grid with baseline rows marked") {
    const fs::path dir = corpus_dir();
    const auto r = run_cli("sweep --docs \"" + (dir / "docs.vec").string() + "\" --ids \"" +
                           (dir / "docs.ids").string() + "\" --queries \"" +
                           (dir / "queries.vec").string() + "\" --query-ids \"" +
                           (dir / "queries.ids").string() + "\" --qrels \"" +
                           (dir / "qrels.txt").string() +
                           "\" --cutoff 0,0.5 --sample-size 0,100 --k 5");
    REQUIRE(r.exit_code == 0);
    const auto table = lines_of(r.out);
    REQUIRE(table.size() == 5);
    CHECK(table[0] == "sample_size\tcutoff\tm\tap\tap_sig\tndcg\tndcg_sig\tmrr\tmrr_sig");

    const auto row_full_c0 = fields_of(table[1]);
    const auto row_full_c05 = fields_of(table[2]);
    const auto row_sub_c0 = fields_of(table[3]);
    REQUIRE(row_full_c0.size() == 9);
    CHECK(row_full_c0[0] == "0");
    CHECK(row_full_c0[1] == "0.000000");
    CHECK(row_full_c0[2] == "16");
    CHECK(row_full_c05[2] == "8");
    // Cutoff-0 cells are the baseline itself: no significance test.
    for (const std::size_t i : {4, 6, 8}) {
        CHECK(row_full_c0[i] == "-");
        CHECK(row_sub_c0[i] == "-");
        CHECK(row_full_c05[i] != "-");
    }
    // A pure rotation cannot move any metric, whatever the fitting sample.
    for (const std::size_t i : {3, 5, 7}) {
        CHECK(row_full_c0[i] == row_sub_c0[i]);
    }
}

TEST_CASE("bench reports a one-row throughput table") {
    const fs::path dir = corpus_dir();
    const auto r = run_cli("bench --index \"" + (dir / "docs.vec").string() +
                           "\" --queries \"" + (dir / "queries.vec").string() +
                           "\" --reps 2 --k 3");
    REQUIRE(r.exit_code == 0);
    const auto table = lines_of(r.out);
    REQUIRE(table.size() == 2);
    const auto fields = fields_of(table[1]);
    REQUIRE(fields.size() == 8);
    CHECK(fields[0] == "16");
    CHECK(fields[1] == "200");
    CHECK(fields[2] == "8");
    CHECK(std::stod(fields[6]) > 0.0);
}
