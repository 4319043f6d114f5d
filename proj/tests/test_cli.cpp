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

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "test_util.hpp"

namespace fs = std::filesystem;
using testutil::TempDir;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(AMRSTORE_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Result ok(const std::string& args) {
  auto r = run(args);
  INFO(args, "\n", r.out);
  REQUIRE(r.code == 0);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) m[fs::relative(e.path(), root).string()] = slurp(e.path());
  }
  return m;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ls(line);
  while (std::getline(ls, cell, sep)) cells.push_back(cell);
  if (!line.empty() && line.back() == sep) cells.emplace_back();
  return cells;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> words(const std::string& line) {
  std::vector<std::string> w;
  std::istringstream in(line);
  std::string s;
  while (in >> s) w.push_back(s);
  return w;
}

std::set<std::string> contexts(const fs::path& db) {
  std::set<std::string> ids;
  for (const auto& line : lines_of(slurp(db / "index.txt"))) {
    if (!line.empty() && line[0] != '#') ids.insert(words(line)[0]);
  }
  return ids;
}

const std::string kSmall = "--dim 2 --level-min 2 --level-max 5 --no-sync";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2 and name the flag") {
    TempDir tmp("cli_usage");
    CHECK(run("").code == 2);
    CHECK(run("frob").code == 2);
    CHECK(run("gen").code == 2);
    const auto r = run("gen --level-min 5 --level-max 3 --out " + (tmp / "x").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("--level-max") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp / "x"));
    CHECK(run("gen --shell 0.3 0.05 --random 0.5 --out " + (tmp / "y").string()).code == 2);
    CHECK(run("decompose --curve zigzag --in a --out b").code == 2);
    CHECK(run("gen --dim 4 --out " + (tmp / "z").string()).code == 2);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("runtime errors exit 1") {
    TempDir tmp("cli_runtime");
    const auto r = run("stats --in " + (tmp / "missing").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("NotADatabase") != std::string::npos);
    ok("gen " + kSmall + " --out " + (tmp / "g").string());
    CHECK(run("gen " + kSmall + " --out " + (tmp / "g").string()).code == 1);
  }

  TEST_CASE("gen is deterministic under a seed") {
    TempDir tmp("cli_gen");
    for (const std::string rule : {"--shell 0.35 0.05", "--random 0.4"}) {
      const auto a = tmp / ("a" + std::to_string(rule.size()));
      const auto b = tmp / ("b" + std::to_string(rule.size()));
      const auto c = tmp / ("c" + std::to_string(rule.size()));
      ok("--seed 7 gen " + kSmall + " " + rule + " --out " + a.string());
      ok("--seed 7 gen " + kSmall + " " + rule + " --out " + b.string());
      ok("--seed 8 gen " + kSmall + " " + rule + " --out " + c.string());
      CHECK(tree_bytes(a) == tree_bytes(b));
      if (rule[2] == 'r') CHECK(tree_bytes(a) != tree_bytes(c));
      CHECK(contexts(a) == std::set<std::string>{"0"});
    }
  }

  TEST_CASE("decompose into 16 then assemble restores the original") {
    TempDir tmp("cli_assemble");
    const std::string g = (tmp / "g").string();
    ok("gen --dim 3 --level-min 3 --level-max 5 --no-sync --out " + g);
    for (const std::string ghosts : {"minimal", "skeleton"}) {
      const std::string d = (tmp / ("d_" + ghosts)).string();
      const std::string p = (tmp / ("p_" + ghosts)).string();
      const std::string a = (tmp / ("a_" + ghosts)).string();
      ok("decompose --domains 16 --ghosts " + ghosts + " --no-sync --in " + g + " --out " + d);
      ok("prune --no-sync --in " + d + " --out " + p);
      ok("assemble --no-sync --in " + p + " --out " + a);
      ok("export --in " + g + " --out " + g + ".txt");
      ok("export --in " + a + " --out " + a + ".txt");
      CHECK(slurp(g + ".txt") == slurp(a + ".txt"));
      CHECK(slurp(fs::path(g) / "g0.f0.dat") == slurp(fs::path(a) / "g0.f0.dat"));
    }
  }

  TEST_CASE("prune reports removed percentages") {
    TempDir tmp("cli_prune");
    const std::string g = (tmp / "g").string();
    ok("gen --dim 3 --level-min 3 --level-max 5 --no-sync --out " + g);
    ok("decompose --domains 8 --no-sync --in " + g + " --out " + g + "_min");
    ok("prune --no-sync --in " + g + "_min --out " + g + "_minp --csv " + g +
       "_min.csv");
    const auto rows = lines_of(slurp(g + "_min.csv"));
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == "domain,nodes_before,nodes_after,removed_percent");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(split(rows[i], ',')[3] == "0.00");

    ok("decompose --domains 8 --ghosts skeleton --no-sync --in " + g + " --out " + g + "_sk");
    const auto s = ok("prune --no-sync --in " + g + "_sk --out " + g + "_skp --csv " + g +
                      "_sk.csv");
    const auto sk = lines_of(slurp(g + "_sk.csv"));
    REQUIRE(sk.size() == 9);
    const auto table = lines_of(s.out);
    for (std::size_t i = 1; i < sk.size(); ++i) {
      const auto cells = split(sk[i], ',');
      CHECK(std::stod(cells[3]) > 0.0);
      CHECK(std::stoul(cells[2]) < std::stoul(cells[1]));
      const auto w = std::find_if(table.begin(), table.end(), [&](const std::string& l) {
        const auto ws = words(l);
        return !ws.empty() && ws[0] == cells[0];
      });
      REQUIRE(w != table.end());
      CHECK(words(*w) == cells);
    }
  }

  TEST_CASE("stats CSV parses back to the printed table") {
    TempDir tmp("cli_stats");
    const std::string g = (tmp / "g").string();
    ok("gen --dim 3 --level-min 3 --level-max 5 --no-sync --fields density,vx --out " + g);
    ok("decompose --domains 8 --ghosts skeleton --no-sync --in " + g + " --out " + g + "_d");
    const auto r = ok("-v stats --no-timing --in " + g + "_d --csv " + g + ".csv");
    const auto csv = lines_of(slurp(g + ".csv"));
    REQUIRE(csv.size() == 1 + 8 * 2);
    CHECK(split(csv[0], ',') ==
          std::vector<std::string>{"domain", "nodes", "leaves", "refinement_ratio",
                                   "ownership_ratio", "field", "rate", "mean_removed_zeros",
                                   "groups", "throughput_mb_s"});
    const auto printed = lines_of(r.out);
    std::vector<std::vector<std::string>> table;
    for (const auto& l : printed) {
      const auto w = words(l);
      if (w.size() == 9 && std::isdigit(static_cast<unsigned char>(w[0][0]))) table.push_back(w);
    }
    REQUIRE(table.size() == csv.size() - 1);
    double ref = 0.0;
    double own = 0.0;
    for (std::size_t i = 1; i < csv.size(); ++i) {
      auto cells = split(csv[i], ',');
      CHECK(cells.back().empty());
      cells.pop_back();
      CHECK(cells == table[i - 1]);
      CHECK((cells[5] == "density" || cells[5] == "vx"));
      ref += std::stod(cells[3]);
      own += std::stod(cells[4]);
    }
    CHECK(own >= ref);
    CHECK(r.out.find("mean ownership ratio") != std::string::npos);
  }

  TEST_CASE("stats on a single-leaf domain") {
    TempDir tmp("cli_leaf");
    const std::string g = (tmp / "g").string();
    ok("gen --level-min 0 --level-max 0 --fields density --no-sync --out " + g);
    ok("stats --in " + g + " --csv " + g + ".csv");
    const auto csv = lines_of(slurp(g + ".csv"));
    REQUIRE(csv.size() == 2);
    CHECK(csv[1] == "0,1,1,,,density,0.000000,0.000000,0,");
  }

  TEST_CASE("checkpoint and restart") {
    TempDir tmp("cli_ckpt");
    const auto ck = tmp / "ck";
    ok("checkpoint " + kSmall + " --domains 4 --step 3 --out " + ck.string());
    CHECK(contexts(ck) == std::set<std::string>{"3"});
    const auto r = ok("restart --in " + ck.string() + " --out " + (tmp / "again").string());
    CHECK(r.out.find("identical") != std::string::npos);
    CHECK(tree_bytes(ck) == tree_bytes(tmp / "again"));

    fs::copy(ck, tmp / "bad", fs::copy_options::recursive);
    {
      std::fstream f(tmp / "bad" / "g1.f0.dat", std::ios::in | std::ios::out | std::ios::binary);
      f.seekp(100);
      f.put('\x7f');
    }
    const auto t = run("restart --in " + (tmp / "bad").string());
    CHECK(t.code != 0);
    CHECK(t.out.find("CorruptRecord") != std::string::npos);

    fs::copy(ck, tmp / "hole", fs::copy_options::recursive);
    {
      const auto idx = lines_of(slurp(tmp / "hole" / "index.txt"));
      std::ofstream out(tmp / "hole" / "index.txt", std::ios::trunc);
      for (const auto& l : idx) {
        if (l.rfind("3 2 ", 0) != 0) out << l << '\n';
      }
    }
    const auto h = run("restart --in " + (tmp / "hole").string());
    CHECK(h.code == 1);
    CHECK(h.out.find("NotFound") != std::string::npos);
  }

  TEST_CASE("export") {
    TempDir tmp("cli_export");
    const std::string g = (tmp / "g").string();
    ok("gen --dim 2 --level-min 1 --level-max 1 --no-sync --out " + g);
    ok("export --in " + g + " --out " + g + ".txt");
    const auto five = lines_of(slurp(g + ".txt"));
    REQUIRE(five.size() == 4);
    CHECK(words(five[0]).size() == 5 + 4);
    CHECK(five[3].rfind("1 0.5 0.5 0 0.5 ", 0) == 0);

    const std::string big = (tmp / "big").string();
    ok("gen " + kSmall + " --out " + big);
    ok("decompose --domains 4 --ghosts skeleton --skeleton-level 2 --no-sync --in " + big +
       " --out " + big + "_d");
    ok("prune --no-sync --in " + big + "_d --out " + big + "_p");
    for (int d = 0; d < 4; ++d) {
      const std::string id = std::to_string(d);
      ok("export --owned-only --domain " + id + " --in " + big + "_d --out " + big + id + "a");
      ok("export --owned-only --domain " + id + " --in " + big + "_p --out " + big + id + "b");
      CHECK(slurp(big + id + "a") == slurp(big + id + "b"));
      CHECK_FALSE(slurp(big + id + "a").empty());
    }
  }

  TEST_CASE("bench file counts") {
    TempDir tmp("cli_bench");
    const std::string csv = (tmp / "b.csv").string();
    ok("bench --workers 64 --bytes 4096 --reps 2 --out " + tmp.path().string() + " --csv " + csv);
    std::map<std::string, std::string> files;
    for (const auto& l : lines_of(slurp(csv))) {
      const auto c = split(l, ',');
      if (c[3] == "aggregate") files[c[0]] = c[8];
    }
    CHECK(files["legacy"] == "128");
    CHECK(files["aggregated"] == "5");
  }

  TEST_CASE("run driver output frequencies") {
    TempDir tmp("cli_run");
    const auto out = tmp / "r";
    ok("run " + kSmall + " --domains 4 --steps 10 --checkpoint-every 5 --postproc-every 2 " +
       "--fields density --out " + out.string());
    CHECK(contexts(out / "checkpoint") == std::set<std::string>{"5", "10"});
    CHECK(contexts(out / "postproc") == std::set<std::string>{"2", "4", "6", "8", "10"});
    const auto r = ok("restart --context 10 --in " + (out / "checkpoint").string());
    CHECK(r.out.find("identical") != std::string::npos);
    ok("stats --in " + (out / "postproc").string() + " --context 6 --csv " +
       (tmp / "s.csv").string());
    CHECK(lines_of(slurp(tmp / "s.csv")).size() == 1 + 4);
  }
}
