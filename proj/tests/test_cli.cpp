// End-to-end checks of the quatcomp binary (path injected as QTC_CLI_PATH).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string cli = QTC_CLI_PATH;

int run(const std::string& args) {
  const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("qtc_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

bool same_bytes(const fs::path& a, const fs::path& b) { return slurp(a) == slurp(b); }

nlohmann::json metrics_without_seconds(const fs::path& dir) {
  auto j = nlohmann::json::parse(slurp(dir / "metrics.json"));
  j.erase("seconds");
  return j;
}

}  // namespace

TEST_CASE("help and argument validation") {
  CHECK(run("--help") == 0);
  CHECK(run("recover --help") == 0);
  CHECK(run("") != 0);                                   // subcommand required
  CHECK(run("recover --no-such-flag x") != 0);           // unknown flag is a hard error
  CHECK(run("recover --output /tmp/x") != 0);            // missing required --input
  CHECK(run("synth --kind nonsense --output /tmp/x") != 0);
}

TEST_CASE("synth is deterministic and lowrank emits an exact-rank ground truth") {
  const auto a = fresh_dir("synth_a"), b = fresh_dir("synth_b");
  const std::string flags = "synth --kind lowrank --height 20 --width 20 --frames 6 --rank 3 --seed 5 --output ";
  REQUIRE(run(flags + a.string()) == 0);
  REQUIRE(run(flags + b.string()) == 0);
  CHECK(fs::exists(a / "ground_truth.qtns"));
  CHECK(fs::exists(a / "frame_0001.png"));
  CHECK(same_bytes(a / "ground_truth.qtns", b / "ground_truth.qtns"));
  CHECK(same_bytes(a / "frame_0003.png", b / "frame_0003.png"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("sparsity: smooth content is sparse, empty directory exits 2") {
  const auto frames = fresh_dir("spars_in");
  REQUIRE(run("synth --kind smooth --height 32 --width 32 --frames 6 --seed 3 --output " +
              frames.string()) == 0);
  const auto csv_path = fresh_dir("spars_out") / "hist.csv";
  REQUIRE(run("sparsity --input " + frames.string() + " --bins 4000 --output " +
              csv_path.string()) == 0);

  // cumulative fraction at the bin containing 1e-3 * max exceeds one half
  std::ifstream csv(csv_path);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "bin_left,bin_right,count,cumulative_fraction");
  double max_right = 0;
  std::vector<std::array<double, 3>> rows;  // right edge, count, cumulative
  while (std::getline(csv, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double l, r, c, f;
    ss >> l >> r >> c >> f;
    rows.push_back({r, c, f});
    max_right = r;
  }
  REQUIRE(rows.size() == 4000);
  double at_cut = 0;
  for (const auto& row : rows)
    if (row[0] <= 1e-3 * max_right) at_cut = row[2];
  CHECK(at_cut > 0.5);

  const auto empty = fresh_dir("spars_empty");
  CHECK(run("sparsity --input " + empty.string() + " --bins 10") == 2);
  CHECK(run("sparsity --input /no/such/dir --bins 10") == 2);
  fs::remove_all(frames);
  fs::remove_all(csv_path.parent_path());
  fs::remove_all(empty);
}

TEST_CASE("recover at SR = 1 reproduces the input exactly with an inf psnr") {
  const auto in = fresh_dir("rec_full_in"), out = fresh_dir("rec_full_out");
  REQUIRE(run("synth --kind smooth --height 16 --width 16 --frames 4 --seed 8 --output " +
              in.string()) == 0);
  REQUIRE(run("recover --input " + in.string() + " --output " + out.string() +
              " --sr 1.0 --seed 1 --rank-trunc 1") == 0);

  const auto j = nlohmann::json::parse(slurp(out / "metrics.json"));
  CHECK(j.at("schema") == 1);
  CHECK(j.at("psnr") == "inf");
  CHECK(j.at("assim").get<double>() == 1.0);
  for (int f = 1; f <= 4; ++f) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04d.png", f);
    CHECK(same_bytes(in / name, out / name));
  }
  fs::remove_all(in);
  fs::remove_all(out);
}

TEST_CASE("recover is reproducible run to run and across thread counts") {
  const auto in = fresh_dir("rec_det_in");
  const auto out1 = fresh_dir("rec_det_1"), out2 = fresh_dir("rec_det_2");
  REQUIRE(run("synth --kind smooth --height 20 --width 20 --frames 4 --seed 21 --output " +
              in.string()) == 0);
  const std::string flags = "recover --input " + in.string() +
                            " --sr 0.4 --seed 9 --variant rnns1 --max-inner 120 --max-outer 2 "
                            "--save-mask ";
  setenv("QUATCOMP_THREADS", "1", 1);
  REQUIRE(run(flags + (out1 / "m.qmsk").string() + " --output " + out1.string()) == 0);
  setenv("QUATCOMP_THREADS", "4", 1);
  REQUIRE(run(flags + (out2 / "m.qmsk").string() + " --output " + out2.string()) == 0);
  unsetenv("QUATCOMP_THREADS");

  CHECK(same_bytes(out1 / "trace.csv", out2 / "trace.csv"));
  CHECK(same_bytes(out1 / "m.qmsk", out2 / "m.qmsk"));
  CHECK(same_bytes(out1 / "frame_0002.png", out2 / "frame_0002.png"));
  CHECK(metrics_without_seconds(out1) == metrics_without_seconds(out2));
  fs::remove_all(in);
  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("recover from a mask file and the metrics subcommand") {
  const auto in = fresh_dir("rec_mask_in"), out = fresh_dir("rec_mask_out");
  const auto out_b = fresh_dir("rec_mask_out_b");
  REQUIRE(run("synth --kind smooth --height 16 --width 16 --frames 4 --seed 33 --output " +
              in.string()) == 0);

  // first run generates + saves the mask; second reuses it via --mask-file
  REQUIRE(run("recover --input " + in.string() + " --output " + out.string() +
              " --sr 0.5 --seed 2 --max-inner 60 --max-outer 1 --save-mask " +
              (out / "m.qmsk").string()) == 0);
  REQUIRE(run("recover --input " + in.string() + " --output " + out_b.string() +
              " --mask-file " + (out / "m.qmsk").string() + " --seed 2 --max-inner 60 "
              "--max-outer 1") == 0);
  CHECK(same_bytes(out / "frame_0001.png", out_b / "frame_0001.png"));

  const auto mpath = out / "between.json";
  REQUIRE(run("metrics --ref " + in.string() + " --test " + out.string() + " --output " +
              mpath.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(mpath));
  CHECK(j.at("schema") == 1);
  CHECK(j.at("psnr").is_number());
  CHECK(j.at("assim").is_number());

  CHECK(run("metrics --ref " + in.string() + " --test /no/such/dir") == 2);
  fs::remove_all(in);
  fs::remove_all(out);
  fs::remove_all(out_b);
}

TEST_CASE("recover improves clearly over the zero-filled baseline on smooth data") {
  const auto in = fresh_dir("rec_gain_in"), out = fresh_dir("rec_gain_out");
  REQUIRE(run("synth --kind smooth --height 24 --width 24 --frames 6 --seed 44 --output " +
              in.string()) == 0);
  REQUIRE(run("recover --input " + in.string() + " --output " + out.string() +
              " --sr 0.3 --seed 7 --variant rnns2") == 0);
  const auto j = metrics_without_seconds(out);
  CHECK(j.at("psnr").get<double>() > 25.0);  // smooth content recovers well
  fs::remove_all(in);
  fs::remove_all(out);
}
