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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "prunerank/eval.hpp"
#include "prunerank/index.hpp"
#include "prunerank/matrix.hpp"
#include "prunerank/pca.hpp"

namespace prunerank {

// Vector files hold repeated records of (dim: int32 LE, then dim float32 LE
// values), the layout produced by common embedding dump tools. A path
// ending in ".f64" switches the value type to float64. Ids live in a
// newline-delimited sidecar file, one id per vector record, same order.

/// Raw 32-bit vector records, exactly as stored on disk.
struct RawVectors {
    std::size_t n_rows = 0;
    std::size_t dim = 0;
    std::vector<float> values;  // row-major
};

RawVectors read_vectors_f32(const std::filesystem::path& path);

/// Reads a vector file into 64-bit internal precision (widening from the
/// 32-bit layout is lossless; ".f64" files load verbatim).
DenseMatrix read_vectors(const std::filesystem::path& path);

/// Writes the matrix in the vector-file layout, narrowing to 32-bit values
/// unless the path ends in ".f64".
void write_vectors(const std::filesystem::path& path, const DenseMatrix& m);

/// Writes an index's 32-bit rows verbatim.
void write_vectors(const std::filesystem::path& path, const EmbeddingIndex& index);

std::vector<std::string> read_ids(const std::filesystem::path& path);
void write_ids(const std::filesystem::path& path, const std::vector<std::string>& ids);

/// TREC qrels: `query_id 0 doc_id grade`, whitespace-separated.
Qrels read_qrels(const std::filesystem::path& path);
void write_qrels(const std::filesystem::path& path, const Qrels& qrels);

/// TREC run format: `query_id Q0 doc_id rank score tag`. On read, hits are
/// re-sorted per the Ranking contract; a rank column inconsistent with that
/// order is accepted with a warning.
std::vector<Ranking> read_run(const std::filesystem::path& path,
                              std::ostream* warnings = nullptr);
void write_run(const std::filesystem::path& path, const std::vector<Ranking>& rankings,
               const std::string& tag);

// PCA model container (little-endian): magic "PCAM", version u32 = 1,
// d u32, fitted_on u64, source_tag (u32 length + UTF-8 bytes), eigenvalues
// d x f64, basis d*d x f64 column-major. Save/load round-trips bit-exactly.
void save_pca(const std::filesystem::path& path, const PcaModel& model);
PcaModel load_pca(const std::filesystem::path& path);

}  // namespace prunerank
