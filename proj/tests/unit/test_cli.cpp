#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "irops/cli/app.hpp"
#include "irops/cli/manifest.hpp"
#include "irops/cli/pipeline_config.hpp"
#include "irops/cli/split.hpp"
#include "irops/core/error.hpp"
#include "irops/core/keyed_text.hpp"

using namespace irops;
using namespace irops::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("IROPS_TEST_TMP");
  const fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "irops_cli_tests";
  const fs::path p = root / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_subcommand(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("split sizes and partition") {
  const auto s = split_indices(10, 0.7, 1);
  CHECK(s.train.size() == 7);
  CHECK(s.test.size() == 3);
  const auto big = split_indices(1000, 0.7, 99);
  std::set<std::size_t> all(big.train.begin(), big.train.end());
  for (const auto i : big.test) CHECK(all.insert(i).second);
  CHECK(all.size() == 1000);
  CHECK(*all.rbegin() == 999);
  const auto again = split_indices(1000, 0.7, 99);
  CHECK(again.train == big.train);
  CHECK(split_indices(1000, 0.7, 100).train != big.train);
  CHECK_THROWS_AS(split_indices(9, 0.7, 1), DomainError);
  CHECK_THROWS_AS(split_indices(100, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(split_indices(100, 0.0, 1), ConfigError);
  CHECK_THROWS_AS(split_indices(10, 0.05, 1), DomainError);

  FeatureMatrix fm;
  fm.values = Eigen::MatrixXd::Random(20, 2);
  fm.descriptors = {make_descriptor("a", AbstractionClass::Epistemic, FeatureCategory::Continuous),
                    make_descriptor("b", AbstractionClass::Epistemic, FeatureCategory::Continuous)};
  for (int i = 0; i < 20; ++i) fm.row_ids.push_back("r" + std::to_string(i));
  const auto [train, test] = split_train_test(fm, 0.7, 5);
  CHECK(train.rows() == 14);
  CHECK(test.rows() == 6);
  std::set<std::string> ids(train.row_ids.begin(), train.row_ids.end());
  for (const auto& id : test.row_ids) CHECK(ids.insert(id).second);
  CHECK(ids.size() == 20);
}

TEST_CASE("hashing and manifests") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

  const auto dir = scratch("manifest");
  RunManifest m("unit");
  m.set_param("alpha", "1");
  m.set_seed("split", 42);
  ArtifactWriter w(dir, m);
  w.write("a.csv", "x\n1\n");
  w.write("b.txt", "hello");
  const auto path = w.finish();
  CHECK(path.filename() == "manifest_unit.txt");
  CHECK_FALSE(fs::exists(dir / "a.csv.tmp"));
  const auto doc = KeyedText::read_file(path);
  CHECK(doc.get_string("command") == "unit");
  CHECK(doc.get_string("param.alpha") == "1");
  CHECK(doc.get_uint("seed.split") == 42);
  CHECK(verify_manifest(path).empty());
  atomic_write(dir / "b.txt", "changed");
  fs::remove(dir / "a.csv");
  const auto bad = verify_manifest(path);
  CHECK(bad.size() == 2);
}

TEST_CASE("pipeline config parsing") {
  const auto doc = KeyedText::parse(
      "seed = 7\nsubset.domain = all\ndimred.scaler = power\nshifts.starts = 0, 480, 960\n"
      "gpr.features = ONBD_CT, ADJST_TURN_MINS\nsplit.fraction = 0.6\n");
  const auto c = pipeline_config_from_keyed(doc, "/base");
  CHECK(c.seed == 7);
  CHECK_FALSE(c.subset.domain.has_value());
  CHECK(c.dimred_scaler == features::ScalerMethod::Power);
  CHECK(c.shifts.starts == std::vector<int>{0, 480, 960});
  CHECK(c.gpr_features == std::vector<std::string>{"ONBD_CT", "ADJST_TURN_MINS"});
  CHECK(c.split_fraction == 0.6);
  const auto with_input = pipeline_config_from_keyed(KeyedText::parse("input = data/f.csv"), "/base");
  CHECK(with_input.input == fs::path("/base/data/f.csv"));
  CHECK_THROWS_AS(pipeline_config_from_keyed(KeyedText::parse("split.fraction = 1.5")), ConfigError);
  CHECK_THROWS_AS(pipeline_config_from_keyed(KeyedText::parse("dimred.scaler = robust")), ConfigError);
  const auto round = pipeline_config_from_keyed(pipeline_config_to_keyed(c), "/base");
  CHECK(pipeline_config_to_keyed(round).to_string() == pipeline_config_to_keyed(c).to_string());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsageError);
  CHECK(run({"frobnicate"}).code == kExitUsageError);
  CHECK(run({"synth", "--bogus-flag"}).code == kExitUsageError);
  CHECK(run({"report"}).code == kExitUsageError);
  CHECK(run({"--help"}).code == kExitOk);
  const auto dir = scratch("codes");
  CHECK(run({"report", "-i", (dir / "missing.csv").string(), "-o", dir.string()}).code == kExitDomainError);
  CHECK(run({"synth", "--n", "0", "-o", dir.string()}).code == kExitDomainError);
}

TEST_CASE("subcommands write artifacts and leave inputs alone") {
  const auto dir = scratch("chain");
  const auto synth_dir = dir / "synth";
  auto r = run({"synth", "--n", "20000", "--seed", "42", "-o", synth_dir.string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto flights = synth_dir / "flights.csv";
  REQUIRE(fs::exists(flights));
  CHECK(verify_manifest(synth_dir / "manifest_synth.txt").empty());
  const auto before = sha256_file(flights);

  r = run({"report", "-i", flights.string(), "-o", (dir / "report").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(r.out.find("Weather") != std::string::npos);
  CHECK(fs::exists(dir / "report" / "report.csv"));

  const auto tdir = dir / "transform";
  r = run({"transform", "-i", flights.string(), "--scaler", "standard", "--domain", "Weather", "--effect",
           "Delayed", "-o", tdir.string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto feats = tdir / "features.csv";
  REQUIRE(fs::exists(feats));
  CHECK(fs::exists(tdir / "scaler.txt"));
  const auto feats_before = sha256_file(feats);

  r = run({"pca", "-i", feats.string(), "--dims", "2", "-o", (dir / "pca").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(fs::exists(dir / "pca" / "pca_spectrum.csv"));

  r = run({"tsne", "-i", feats.string(), "--iters", "300", "--perplexity", "20", "--seed", "3", "-o",
           (dir / "tsne").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto emb = slurp(dir / "tsne" / "tsne_embedding.csv");
  CHECK(emb.rfind("row_id,dim1,dim2,label", 0) == 0);

  r = run({"mir", "-i", feats.string(), "-o", (dir / "mir").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto mir = slurp(dir / "mir" / "mir_scores.csv");
  CHECK(mir.find("ADJST_TURN_MINS") != std::string::npos);

  r = run({"gpr", "-i", feats.string(), "--target", "NOT_THERE", "-o", (dir / "gpr_bad").string()});
  CHECK(r.code == kExitDomainError);
  CHECK(r.err.find("target feature not found") != std::string::npos);

  r = run({"gpr", "-i", feats.string(), "--restarts", "1", "--max-rows", "150", "--seed", "4", "-o",
           (dir / "gpr").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  for (const auto* f : {"gpr_lengthscales.csv", "gpr_predictions.csv", "gpr_qq.csv", "gpr_summary.txt"}) {
    CHECK_MESSAGE(fs::exists(dir / "gpr" / f), f);
  }
  CHECK(slurp(dir / "gpr" / "gpr_lengthscales.csv").rfind("lengthscale,feature_class,feature_name", 0) == 0);
  CHECK(verify_manifest(dir / "gpr" / "manifest_gpr.txt").empty());

  CHECK(sha256_file(flights) == before);
  CHECK(sha256_file(feats) == feats_before);
}

TEST_CASE("pipeline manifests repeat exactly") {
  const auto dir = scratch("pipeline");
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "seed = 9\nsynth.n_total = 20000\ntsne.iters = 300\ngpr.restarts = 1\ngpr.max_rows = 150\n";
  for (const auto* sub : {"a", "b"}) {
    const auto r = run({"pipeline", "--config", cfg.string(), "-o", (dir / sub).string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
  }
  const auto a = slurp(dir / "a" / "manifest_pipeline.txt");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(dir / "b" / "manifest_pipeline.txt"));
  CHECK(verify_manifest(dir / "a" / "manifest_pipeline.txt").empty());
}
