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

#include "prunerank/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "prunerank/error.hpp"

// All on-disk integers and floats are little-endian; raw byte copies below
// assume the host matches.
static_assert(std::endian::native == std::endian::little,
              "prunerank file I/O requires a little-endian host");

namespace prunerank {

namespace {

bool is_f64_path(const std::filesystem::path& path) {
    return path.extension() == ".f64";
}

std::ifstream open_input(const std::filesystem::path& path, bool binary) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) {
        throw Error("cannot open " + path.string() + " for reading");
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, binary ? (std::ios::binary | std::ios::trunc) : std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    return out;
}

void flush_or_throw(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw Error("write to " + path.string() + " failed");
    }
}

template <typename T>
void put_raw(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

// Reads one vector record header. Returns false on clean end-of-file,
// throws on a partial header.
bool read_record_dim(std::ifstream& in, const std::filesystem::path& path,
                     std::size_t record, std::uint64_t offset, std::int32_t* dim) {
    char buf[4];
    in.read(buf, 4);
    const auto got = in.gcount();
    if (got == 0 && in.eof()) {
        return false;
    }
    if (got != 4) {
        throw Error("truncated vector file " + path.string() + ": record " +
                    std::to_string(record) + " cut off at byte offset " +
                    std::to_string(offset + static_cast<std::uint64_t>(got)));
    }
    std::memcpy(dim, buf, 4);
    return true;
}

template <typename T>
void read_record_values(std::ifstream& in, const std::filesystem::path& path,
                        std::size_t record, std::uint64_t offset, std::size_t dim,
                        std::vector<T>* out) {
    const std::size_t start = out->size();
    out->resize(start + dim);
    const auto bytes = static_cast<std::streamsize>(dim * sizeof(T));
    in.read(reinterpret_cast<char*>(out->data() + start), bytes);
    if (in.gcount() != bytes) {
        throw Error("truncated vector file " + path.string() + ": record " +
                    std::to_string(record) + " cut off at byte offset " +
                    std::to_string(offset + 4 + static_cast<std::uint64_t>(in.gcount())));
    }
}

// Shared record loop for both value widths. Records are 1-based in errors.
template <typename T>
void read_vector_records(const std::filesystem::path& path, std::size_t* n_rows,
                         std::size_t* dim, std::vector<T>* values) {
    auto in = open_input(path, /*binary=*/true);
    *n_rows = 0;
    *dim = 0;
    std::uint64_t offset = 0;
    for (std::size_t record = 1;; ++record) {
        std::int32_t raw_dim = 0;
        if (!read_record_dim(in, path, record, offset, &raw_dim)) {
            break;
        }
        if (raw_dim <= 0) {
            throw Error("vector file " + path.string() + ": record " +
                        std::to_string(record) + " has non-positive dimension " +
                        std::to_string(raw_dim));
        }
        const auto d = static_cast<std::size_t>(raw_dim);
        if (*n_rows == 0) {
            *dim = d;
        } else if (d != *dim) {
            throw Error("vector file " + path.string() + ": record " +
                        std::to_string(record) + " has dimension " + std::to_string(d) +
                        ", expected " + std::to_string(*dim));
        }
        read_record_values(in, path, record, offset, d, values);
        offset += 4 + static_cast<std::uint64_t>(d) * sizeof(T);
        ++*n_rows;
    }
}

}  // namespace

RawVectors read_vectors_f32(const std::filesystem::path& path) {
    if (is_f64_path(path)) {
        throw Error("vector file " + path.string() + " holds 64-bit values; use read_vectors");
    }
    RawVectors raw;
    read_vector_records(path, &raw.n_rows, &raw.dim, &raw.values);
    return raw;
}

DenseMatrix read_vectors(const std::filesystem::path& path) {
    std::size_t n_rows = 0;
    std::size_t dim = 0;
    std::vector<double> values;
    if (is_f64_path(path)) {
        read_vector_records(path, &n_rows, &dim, &values);
    } else {
        std::vector<float> narrow;
        read_vector_records(path, &n_rows, &dim, &narrow);
        values.assign(narrow.begin(), narrow.end());
    }
    return DenseMatrix(n_rows, dim, std::move(values));
}

void write_vectors(const std::filesystem::path& path, const DenseMatrix& m) {
    auto out = open_output(path, /*binary=*/true);
    const bool wide = is_f64_path(path);
    const auto dim = static_cast<std::int32_t>(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        put_raw(out, dim);
        const auto row = m.row(i);
        if (wide) {
            out.write(reinterpret_cast<const char*>(row.data()),
                      static_cast<std::streamsize>(row.size() * sizeof(double)));
        } else {
            for (const double v : row) {
                put_raw(out, static_cast<float>(v));
            }
        }
    }
    flush_or_throw(out, path);
}

void write_vectors(const std::filesystem::path& path, const EmbeddingIndex& index) {
    if (is_f64_path(path)) {
        throw Error("index rows are 32-bit; refusing to write " + path.string());
    }
    auto out = open_output(path, /*binary=*/true);
    const auto dim = static_cast<std::int32_t>(index.dim());
    for (std::size_t i = 0; i < index.size(); ++i) {
        put_raw(out, dim);
        const auto row = index.row(i);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    flush_or_throw(out, path);
}

std::vector<std::string> read_ids(const std::filesystem::path& path) {
    auto in = open_input(path, /*binary=*/false);
    std::vector<std::string> ids;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            throw Error("id file " + path.string() + ": empty line " + std::to_string(line_no));
        }
        if (!seen.insert(line).second) {
            throw Error("id file " + path.string() + ": duplicate id \"" + line +
                        "\" at line " + std::to_string(line_no));
        }
        ids.push_back(line);
    }
    return ids;
}

void write_ids(const std::filesystem::path& path, const std::vector<std::string>& ids) {
    auto out = open_output(path, /*binary=*/false);
    for (const auto& id : ids) {
        out << id << '\n';
    }
    flush_or_throw(out, path);
}

Qrels read_qrels(const std::filesystem::path& path) {
    auto in = open_input(path, /*binary=*/false);
    Qrels qrels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string query_id;
        std::string iteration;  // conventionally "0", carried but unused
        std::string doc_id;
        long grade = 0;
        if (!(fields >> query_id >> iteration >> doc_id >> grade)) {
            throw Error("qrels file " + path.string() + ": malformed line " +
                        std::to_string(line_no));
        }
        std::string extra;
        if (fields >> extra) {
            throw Error("qrels file " + path.string() + ": trailing fields on line " +
                        std::to_string(line_no));
        }
        if (grade < 0) {
            throw Error("qrels file " + path.string() + ": negative grade on line " +
                        std::to_string(line_no));
        }
        auto& per_query = qrels.judgments[query_id];
        if (!per_query.emplace(doc_id, static_cast<int>(grade)).second) {
            throw Error("qrels file " + path.string() + ": duplicate judgment for (" +
                        query_id + ", " + doc_id + ") at line " + std::to_string(line_no));
        }
    }
    return qrels;
}

void write_qrels(const std::filesystem::path& path, const Qrels& qrels) {
    auto out = open_output(path, /*binary=*/false);
    for (const auto& [query_id, docs] : qrels.judgments) {
        for (const auto& [doc_id, grade] : docs) {
            out << query_id << " 0 " << doc_id << ' ' << grade << '\n';
        }
    }
    flush_or_throw(out, path);
}

std::vector<Ranking> read_run(const std::filesystem::path& path, std::ostream* warnings) {
    auto in = open_input(path, /*binary=*/false);
    std::vector<Ranking> run;
    std::unordered_set<std::string> closed;  // query ids whose block has ended
    std::vector<long> ranks_in_file;         // rank column of the current block
    std::string line;
    std::size_t line_no = 0;

    auto finish_block = [&] {
        if (run.empty()) {
            return;
        }
        Ranking& r = run.back();
        // The rank column is advisory: order is re-derived from scores.
        bool consistent = true;
        std::vector<std::size_t> order(r.hits.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (r.hits[a].score != r.hits[b].score) return r.hits[a].score > r.hits[b].score;
            return r.hits[a].doc_id < r.hits[b].doc_id;
        });
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (order[i] != i || ranks_in_file[i] != static_cast<long>(i) + 1) {
                consistent = false;
                break;
            }
        }
        if (!consistent) {
            std::vector<ScoredHit> sorted;
            sorted.reserve(r.hits.size());
            for (const std::size_t i : order) sorted.push_back(std::move(r.hits[i]));
            r.hits = std::move(sorted);
            if (warnings != nullptr) {
                *warnings << "warning: run file " << path.string() << ": query " << r.query_id
                          << " re-ranked by score; rank column was inconsistent\n";
            }
        }
        ranks_in_file.clear();
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string query_id;
        std::string q0;
        std::string doc_id;
        long rank = 0;
        double score = 0.0;
        std::string tag;
        if (!(fields >> query_id >> q0 >> doc_id >> rank >> score >> tag)) {
            throw Error("run file " + path.string() + ": malformed line " +
                        std::to_string(line_no));
        }
        if (run.empty() || run.back().query_id != query_id) {
            finish_block();
            if (!closed.insert(query_id).second) {
                throw Error("run file " + path.string() + ": query " + query_id +
                            " appears in two separate blocks (line " +
                            std::to_string(line_no) + ")");
            }
            run.push_back(Ranking{query_id, {}});
        }
        run.back().hits.push_back(ScoredHit{doc_id, score});
        ranks_in_file.push_back(rank);
    }
    finish_block();
    for (auto& r : run) {
        std::unordered_set<std::string> docs;
        for (const auto& hit : r.hits) {
            if (!docs.insert(hit.doc_id).second) {
                throw Error("run file " + path.string() + ": duplicate doc " + hit.doc_id +
                            " for query " + r.query_id);
            }
        }
    }
    return run;
}

void write_run(const std::filesystem::path& path, const std::vector<Ranking>& rankings,
               const std::string& tag) {
    auto out = open_output(path, /*binary=*/false);
    char score_buf[64];
    for (const auto& r : rankings) {
        std::size_t rank = 1;
        for (const auto& hit : r.hits) {
            std::snprintf(score_buf, sizeof(score_buf), "%.6f", hit.score);
            out << r.query_id << " Q0 " << hit.doc_id << ' ' << rank << ' ' << score_buf
                << ' ' << tag << '\n';
            ++rank;
        }
    }
    flush_or_throw(out, path);
}

namespace {

constexpr char kPcaMagic[4] = {'P', 'C', 'A', 'M'};
constexpr std::uint32_t kPcaVersion = 1;

template <typename T>
T get_raw(std::ifstream& in, const std::filesystem::path& path, const char* what) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (in.gcount() != sizeof(T)) {
        throw Error("model file " + path.string() + ": truncated reading " +
                    std::string(what));
    }
    return value;
}

}  // namespace

void save_pca(const std::filesystem::path& path, const PcaModel& model) {
    auto out = open_output(path, /*binary=*/true);
    out.write(kPcaMagic, 4);
    put_raw(out, kPcaVersion);
    put_raw(out, static_cast<std::uint32_t>(model.dim));
    put_raw(out, static_cast<std::uint64_t>(model.fitted_on));
    put_raw(out, static_cast<std::uint32_t>(model.source_tag.size()));
    out.write(model.source_tag.data(),
              static_cast<std::streamsize>(model.source_tag.size()));
    out.write(reinterpret_cast<const char*>(model.eigenvalues.data()),
              static_cast<std::streamsize>(model.dim * sizeof(double)));
    // Basis is stored column-major: column j is principal direction j.
    std::vector<double> col_major(model.dim * model.dim);
    for (std::size_t j = 0; j < model.dim; ++j) {
        for (std::size_t i = 0; i < model.dim; ++i) {
            col_major[j * model.dim + i] = model.basis(i, j);
        }
    }
    out.write(reinterpret_cast<const char*>(col_major.data()),
              static_cast<std::streamsize>(col_major.size() * sizeof(double)));
    flush_or_throw(out, path);
}

PcaModel load_pca(const std::filesystem::path& path) {
    auto in = open_input(path, /*binary=*/true);
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kPcaMagic, 4) != 0) {
        throw Error("model file " + path.string() + ": unknown magic");
    }
    const auto version = get_raw<std::uint32_t>(in, path, "version");
    if (version != kPcaVersion) {
        throw Error("model file " + path.string() + ": unsupported version " +
                    std::to_string(version));
    }
    PcaModel model;
    model.dim = get_raw<std::uint32_t>(in, path, "dimension");
    if (model.dim == 0) {
        throw Error("model file " + path.string() + ": zero dimension");
    }
    model.fitted_on = get_raw<std::uint64_t>(in, path, "fitted_on");
    const auto tag_len = get_raw<std::uint32_t>(in, path, "tag length");
    model.source_tag.resize(tag_len);
    in.read(model.source_tag.data(), tag_len);
    if (in.gcount() != static_cast<std::streamsize>(tag_len)) {
        throw Error("model file " + path.string() + ": truncated reading tag");
    }
    model.eigenvalues.resize(model.dim);
    in.read(reinterpret_cast<char*>(model.eigenvalues.data()),
            static_cast<std::streamsize>(model.dim * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(model.dim * sizeof(double))) {
        throw Error("model file " + path.string() + ": truncated reading eigenvalues");
    }
    std::vector<double> col_major(model.dim * model.dim);
    in.read(reinterpret_cast<char*>(col_major.data()),
            static_cast<std::streamsize>(col_major.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(col_major.size() * sizeof(double))) {
        throw Error("model file " + path.string() + ": truncated reading basis");
    }
    char trailing = 0;
    if (in.read(&trailing, 1); in.gcount() != 0) {
        throw Error("model file " + path.string() + ": trailing bytes after basis");
    }
    model.basis = DenseMatrix(model.dim, model.dim);
    for (std::size_t j = 0; j < model.dim; ++j) {
        for (std::size_t i = 0; i < model.dim; ++i) {
            model.basis(i, j) = col_major[j * model.dim + i];
        }
    }
    return model;
}

}  // namespace prunerank
