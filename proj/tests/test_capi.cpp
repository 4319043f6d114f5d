// Copyright 2026 The amrstore Authors.
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

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "amrstore/amrstore.h"
#include "test_util.hpp"

using testutil::TempDir;

namespace {

struct Owned {
  amr_domain* d = nullptr;
  ~Owned() { amr_domain_free(d); }
};

amr_domain* five_node(std::uint32_t id = 0) {
  const std::uint8_t ref[] = {1, 0, 0, 0, 0};
  const std::uint8_t own[] = {1, 1, 1, 1, 1};
  amr_domain* d = nullptr;
  REQUIRE(amr_domain_create(2, ref, own, 5, id, &d) == AMR_OK);
  const double v[] = {1, 2, 3, 4, 5};
  REQUIRE(amr_domain_set_field(d, "rho", v, 5) == AMR_OK);
  return d;
}

amr_domain* generated(int lmin, int lmax) {
  amr_gen_spec spec;
  amr_gen_spec_init(&spec);
  spec.level_min = lmin;
  spec.level_max = lmax;
  amr_domain* d = nullptr;
  REQUIRE(amr_generate(&spec, &d) == AMR_OK);
  return d;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("status names and last error") {
    CHECK(std::string(amr_status_name(AMR_OK)) == "OK");
    CHECK(std::string(amr_status_name(AMR_ERR_MALFORMED_TREE)) == "MalformedTree");
    CHECK(std::string(amr_status_name(AMR_ERR_BUFFER_TOO_SMALL)) == "BufferTooSmall");
    amr_domain* d = nullptr;
    const std::uint8_t bad[] = {1, 0, 0};
    CHECK(amr_domain_create(2, bad, bad, 3, 0, &d) == AMR_ERR_MALFORMED_TREE);
    CHECK(d == nullptr);
    CHECK(std::string(amr_last_error()).find("MalformedTree") != std::string::npos);
    CHECK(amr_domain_create(2, bad, bad, 3, 0, nullptr) == AMR_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("domain accessors and the size query convention") {
    Owned d{five_node(3)};
    CHECK(amr_domain_node_count(d.d) == 5);
    CHECK(amr_domain_leaf_count(d.d) == 4);
    CHECK(amr_domain_dim(d.d) == 2);
    CHECK(amr_domain_id(d.d) == 3);
    CHECK(amr_domain_field_count(d.d) == 1);
    CHECK(std::string(amr_domain_field_name(d.d, 0)) == "rho");
    CHECK(amr_domain_field_name(d.d, 1) == nullptr);

    std::size_t n = 0;
    CHECK(amr_domain_field(d.d, "rho", nullptr, 0, &n) == AMR_ERR_BUFFER_TOO_SMALL);
    CHECK(n == 5);
    std::vector<double> v(n);
    CHECK(amr_domain_field(d.d, "rho", v.data(), v.size(), &n) == AMR_OK);
    CHECK(v == std::vector<double>{1, 2, 3, 4, 5});
    CHECK(amr_domain_field(d.d, "nope", v.data(), v.size(), &n) == AMR_ERR_NOT_FOUND);

    const double short_v[] = {1, 2};
    CHECK(amr_domain_set_field(d.d, "x", short_v, 2) == AMR_ERR_LENGTH_MISMATCH);

    std::vector<std::uint8_t> ref(5);
    CHECK(amr_domain_refinement(d.d, ref.data(), ref.size(), &n) == AMR_OK);
    CHECK(ref == std::vector<std::uint8_t>{1, 0, 0, 0, 0});
  }

  TEST_CASE("validation report") {
    const std::uint8_t ref[] = {1, 0, 0, 0, 0};
    const std::uint8_t own[] = {0, 1, 0, 0, 0};
    Owned d;
    REQUIRE(amr_domain_create(2, ref, own, 5, 0, &d.d) == AMR_OK);
    char report[128];
    CHECK(amr_domain_validate(d.d, report, sizeof report) == AMR_ERR_MALFORMED_TREE);
    CHECK(std::string(report).rfind("ownership consistency at node 0", 0) == 0);
    Owned ok{five_node()};
    CHECK(amr_domain_validate(ok.d, report, sizeof report) == AMR_OK);
    CHECK(report[0] == '\0');
  }

  TEST_CASE("boolean codec") {
    const std::uint8_t b[] = {1, 1, 1, 1, 1};
    char text[16];
    std::size_t len = 0;
    CHECK(amr_bool_encode(b, 5, nullptr, 0, &len) == AMR_ERR_BUFFER_TOO_SMALL);
    CHECK(len == 2);
    CHECK(amr_bool_encode(b, 5, text, sizeof text, &len) == AMR_OK);
    CHECK(std::string(text, len) == "1E");
    std::uint8_t out[8];
    std::size_t count = 0;
    CHECK(amr_bool_decode("0BA", 3, out, sizeof out, &count) == AMR_OK);
    CHECK(count == 3);
    CHECK((out[0] == 0 && out[1] == 0 && out[2] == 1));
    CHECK(amr_bool_decode("0xyz", 4, out, sizeof out, &count) == AMR_ERR_MALFORMED_ENCODING);
    amr_bool_stats s;
    CHECK(amr_bool_stats_compute(b, 5, &s) == AMR_OK);
    CHECK(s.bitfield_bytes == 1);
    CHECK(s.encoded_bytes == 2);
  }

  TEST_CASE("delta codec") {
    const std::uint8_t ref[] = {1, 0, 0, 0, 0};
    const double v[] = {1.0, 1.5, -0.0, 1e-310, 2.0};
    std::size_t len = 0;
    CHECK(amr_delta_compress(2, ref, 5, v, 4, 1.0, nullptr, 0, &len) == AMR_ERR_BUFFER_TOO_SMALL);
    std::vector<std::uint8_t> buf(len);
    CHECK(amr_delta_compress(2, ref, 5, v, 4, 1.0, buf.data(), buf.size(), &len) == AMR_OK);
    double back[5];
    CHECK(amr_delta_decompress(2, ref, 5, buf.data(), buf.size(), back, 5) == AMR_OK);
    CHECK(std::memcmp(back, v, sizeof v) == 0);
    std::size_t count = 0;
    CHECK(amr_delta_decompress_to_level(2, ref, 5, buf.data(), buf.size(), 0, back, 5, &count) ==
          AMR_OK);
    CHECK(count == 1);
    CHECK(amr_delta_compress(2, ref, 5, v, 9, 1.0, buf.data(), buf.size(), &len) ==
          AMR_ERR_INVALID_HEADER_WIDTH);
    const std::uint8_t other[] = {0};
    CHECK(amr_delta_decompress(2, other, 1, buf.data(), buf.size(), back, 5) ==
          AMR_ERR_CONTEXT_MISMATCH);
  }

  TEST_CASE("generate, decompose, prune, assemble") {
    Owned g{generated(2, 5)};
    std::vector<amr_domain*> parts(8, nullptr);
    REQUIRE(amr_decompose(g.d, 8, AMR_CURVE_HILBERT, AMR_GHOSTS_COARSE_SKELETON, 2,
                          parts.data()) == AMR_OK);
    std::vector<amr_domain*> pruned(8, nullptr);
    for (std::size_t i = 0; i < 8; ++i) {
      amr_prune_stats s;
      REQUIRE(amr_domain_prune(parts[i], &pruned[i], &s) == AMR_OK);
      CHECK(s.nodes_after <= s.nodes_before);
      CHECK(amr_domain_validate(pruned[i], nullptr, 0) == AMR_OK);
    }
    Owned whole;
    REQUIRE(amr_assemble(pruned.data(), pruned.size(), &whole.d) == AMR_OK);
    CHECK(amr_domain_equal(whole.d, g.d));
    for (auto* p : parts) amr_domain_free(p);
    for (auto* p : pruned) amr_domain_free(p);

    std::vector<amr_domain*> many(100000, nullptr);
    CHECK(amr_decompose(g.d, many.size(), AMR_CURVE_MORTON, AMR_GHOSTS_MINIMAL, 0,
                        many.data()) == AMR_ERR_TOO_MANY_DOMAINS);

    amr_gen_spec spec;
    amr_gen_spec_init(&spec);
    spec.level_min = 7;
    spec.level_max = 3;
    amr_domain* none = nullptr;
    CHECK(amr_generate(&spec, &none) == AMR_ERR_SPEC_INVALID);
  }

  TEST_CASE("databases") {
    TempDir tmp("capi_db");
    const std::string pp = (tmp / "pp").string();
    amr_db_params p;
    amr_db_params_init(&p);
    p.durable = 0;
    p.field_selection = "rho";
    amr_db* db = nullptr;
    REQUIRE(amr_db_create(pp.c_str(), &p, &db) == AMR_OK);
    Owned d{five_node(2)};
    const double other[] = {5, 4, 3, 2, 1};
    REQUIRE(amr_domain_set_field(d.d, "zeta", other, 5) == AMR_OK);
    CHECK(amr_db_write_domain(db, 9, d.d) == AMR_OK);
    CHECK(amr_db_write_domain(db, 9, d.d) == AMR_ERR_DUPLICATE_ENTRY);
    CHECK(amr_db_write_raw(db, 9, 3, "x", 1) == AMR_ERR_KIND_MISMATCH);
    CHECK(amr_db_commit(db) == AMR_OK);
    amr_db_close(db);
    CHECK(amr_db_create(pp.c_str(), &p, &db) == AMR_ERR_ALREADY_EXISTS);

    REQUIRE(amr_db_open(pp.c_str(), &db) == AMR_OK);
    CHECK(amr_db_get_kind(db) == AMR_DB_POSTPROC);
    std::uint32_t ids[4];
    std::size_t n = 0;
    CHECK(amr_db_contexts(db, ids, 4, &n) == AMR_OK);
    CHECK((n == 1 && ids[0] == 9));
    CHECK(amr_db_domains(db, 9, ids, 4, &n) == AMR_OK);
    CHECK((n == 1 && ids[0] == 2));
    Owned back;
    REQUIRE(amr_db_read_domain(db, 9, 2, &back.d) == AMR_OK);
    CHECK(amr_domain_field_count(back.d) == 1);
    amr_domain* missing = nullptr;
    CHECK(amr_db_read_domain(db, 9, 7, &missing) == AMR_ERR_NOT_FOUND);
    CHECK(missing == nullptr);
    std::size_t files = 0;
    CHECK(amr_db_file_count(db, &files) == AMR_OK);
    CHECK(files == 1);
    amr_db_close(db);

    amr_db* none = nullptr;
    CHECK(amr_db_open((tmp / "missing").string().c_str(), &none) == AMR_ERR_NOT_A_DATABASE);

    const std::string ck = (tmp / "ck").string();
    amr_db_params_init(&p);
    p.kind = AMR_DB_CHECKPOINT;
    p.ncf = 4;
    p.durable = 0;
    REQUIRE(amr_db_create(ck.c_str(), &p, &db) == AMR_OK);
    const char payload[] = "raw checkpoint bytes";
    CHECK(amr_db_write_raw(db, 0, 5, payload, sizeof payload) == AMR_OK);
    CHECK(amr_db_commit(db) == AMR_OK);
    char out[64];
    std::size_t len = 0;
    CHECK(amr_db_read_raw(db, 0, 5, nullptr, 0, &len) == AMR_ERR_BUFFER_TOO_SMALL);
    CHECK(len == sizeof payload);
    CHECK(amr_db_read_raw(db, 0, 5, out, sizeof out, &len) == AMR_OK);
    CHECK(std::string(out) == payload);
    CHECK(amr_db_ncf(db) == 4);
    amr_db_close(db);
  }

  TEST_CASE("checkpoint state") {
    Owned d{five_node(1)};
    std::size_t len = 0;
    CHECK(amr_state_serialize(d.d, 12, 3, nullptr, 0, &len) == AMR_ERR_BUFFER_TOO_SMALL);
    std::vector<std::uint8_t> blob(len);
    CHECK(amr_state_serialize(d.d, 12, 3, blob.data(), blob.size(), &len) == AMR_OK);
    Owned back;
    std::uint64_t step = 0;
    std::uint32_t n = 0;
    CHECK(amr_state_deserialize(blob.data(), blob.size(), &back.d, &step, &n) == AMR_OK);
    CHECK(step == 12);
    CHECK(n == 3);
    CHECK(amr_domain_equal(back.d, d.d));
    blob[blob.size() / 2] ^= 1;
    amr_domain* bad = nullptr;
    CHECK(amr_state_deserialize(blob.data(), blob.size(), &bad, &step, &n) ==
          AMR_ERR_CORRUPT_RECORD);
  }

  TEST_CASE("bench") {
    TempDir tmp("capi_bench");
    const std::string out = tmp.path().string();
    amr_bench_config c;
    amr_bench_config_init(&c);
    CHECK(c.n_workers == 64);
    CHECK(c.repetitions == 5);
    c.n_workers = 8;
    c.repetitions = 2;
    c.bytes_per_worker = 2048;
    c.output = out.c_str();
    c.mode = AMR_BENCH_AGGREGATED;
    c.ncf = 4;
    amr_bench_report* r = nullptr;
    REQUIRE(amr_bench_report_create(&r) == AMR_OK);
    CHECK(amr_bench_run(&c, r) == AMR_OK);
    REQUIRE(amr_bench_summary_count(r) == 1);
    amr_bench_summary s;
    CHECK(amr_bench_summary_get(r, 0, &s) == AMR_OK);
    CHECK(s.aggregated == 1);
    CHECK(s.file_count == 3);
    CHECK(s.runs == 2);
    CHECK(amr_bench_summary_get(r, 1, &s) == AMR_ERR_INDEX_OUT_OF_RANGE);
    CHECK(amr_bench_emit_csv(r, (tmp / "b.csv").string().c_str()) == AMR_OK);
    c.repetitions = 0;
    CHECK(amr_bench_run(&c, r) == AMR_ERR_CONFIG_INVALID);
    amr_bench_report_free(r);
  }
}
