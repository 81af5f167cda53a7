// Copyright 2026 The Lukthung Classifier Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "lukthung/nn/checkpoint.h"
#include "test_util.h"

namespace lukthung::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

TEST(CliUsageTest, ExitCodes) {
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"no-such-command"}).code, 2);
  EXPECT_EQ(Cli({"train"}).code, 2);  // --model is required
  EXPECT_EQ(Cli({"--help"}).code, 0);
  const Result defaults = Cli({"config-defaults"});
  EXPECT_EQ(defaults.code, 0);
  EXPECT_NE(defaults.out.find("seed = 42"), std::string::npos);
}

TEST(CliUsageTest, MissingManifestIsReported) {
  const Result r = Cli({"featurize-audio"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing input: manifest"), std::string::npos) << r.err;
}

TEST(CliUsageTest, BadConfigReportsLine) {
  testing::TempDir dir("cli_cfg");
  const fs::path cfg = dir.path() / "run.cfg";
  std::ofstream(cfg) << "seed = 1\nnot_a_key = 3\n";
  const Result r = Cli({"--config", cfg.string(), "featurize-audio"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("config line 2: unknown config key 'not_a_key'"), std::string::npos)
      << r.err;
  EXPECT_EQ(Cli({"--set", "seed", "config-defaults"}).code, 1);
}

// A tiny corpus with 2 s excerpts, prepared once for the whole suite.
class CliPipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = std::make_unique<testing::TempDir>("cli_pipeline");
    const fs::path root = dir_->path();
    std::ofstream(root / "run.cfg") << "manifest = " << (root / "corpus" / "manifest.jsonl").string()
                                    << "\nartifacts_dir = " << (root / "out").string()
                                    << "\nclip_seconds = 2\n"
                                       "vocab_min_count = 2\n"
                                       "max_epochs = 8\n"
                                       "cnn_max_epochs = 1\n"
                                       "batch_size = 8\n";
    ASSERT_EQ(Cli({"gen-synth", "--out", (root / "corpus").string(), "--n-per-class", "10",
                   "--split-per-class", "6,2,2"})
                  .code,
              0);
    for (const char* cmd : {"build-vocab", "featurize-lyrics", "featurize-audio"}) {
      const Result r = Cli(Args({cmd}));
      ASSERT_EQ(r.code, 0) << cmd << ": " << r.err;
    }
  }
  static void TearDownTestSuite() { dir_.reset(); }

  static std::vector<std::string> Args(std::vector<std::string> rest) {
    std::vector<std::string> args = {"--config", (dir_->path() / "run.cfg").string()};
    args.insert(args.end(), rest.begin(), rest.end());
    return args;
  }
  static fs::path Checkpoint(const std::string& model) {
    return dir_->path() / "out" / "checkpoints" / (model + ".ltnn");
  }
  static void EnsureTrained(const std::string& model) {
    if (fs::exists(Checkpoint(model))) return;
    const Result r = Cli(Args({"train", "--model", model}));
    ASSERT_EQ(r.code, 0) << r.err;
  }

  static std::unique_ptr<testing::TempDir> dir_;
};

std::unique_ptr<testing::TempDir> CliPipelineTest::dir_;

TEST_F(CliPipelineTest, CombinedNeedsBothBases) {
  const fs::path out = dir_->path() / "early_combined.ltnn";
  fs::remove(Checkpoint("bow_mlp"));
  fs::remove(Checkpoint("spectro_cnn"));
  const Result r = Cli(Args({"train", "--model", "combined", "--out", out.string()}));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing input: bow_mlp checkpoint"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("spectro_cnn checkpoint"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(out));
}

TEST_F(CliPipelineTest, EvaluateWritesMetricsDocument) {
  EnsureTrained("bow_mlp");
  const Result r = Cli(Args({"evaluate", "--model", "bow_mlp"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [key, value] : doc.items()) keys.push_back(key);
  const std::vector<std::string> expected = {
      "model", "checkpoint", "checkpoint_hash", "split", "songs", "threshold", "tp", "fp",
      "fn", "tn", "precision", "recall", "f1_positive", "f1_macro", "accuracy",
      "config_hash", "config"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(doc["model"], "bow_mlp");
  EXPECT_EQ(doc["songs"], 4);
  EXPECT_EQ(doc["tp"].get<int>() + doc["fp"].get<int>() + doc["fn"].get<int>() +
                doc["tn"].get<int>(),
            4);
  EXPECT_EQ(doc["config"]["clip_seconds"], "2");
}

TEST_F(CliPipelineTest, PredictSingleSong) {
  EnsureTrained("bow_mlp");
  const fs::path lyrics = dir_->path() / "song.txt";
  std::ofstream(lyrics) << ReadText(dir_->path() / "corpus" / "lyrics" / "synth00000.txt");
  const Result r = Cli(Args({"predict", "--model", "bow_mlp", "--lyrics", lyrics.string()}));
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream line(r.out);
  std::string id, label;
  double prob = -1.0;
  line >> id >> prob >> label;
  EXPECT_EQ(id, "song");
  EXPECT_GT(prob, 0.0);
  EXPECT_LT(prob, 1.0);
  EXPECT_EQ(label, prob >= 0.5 ? "lukthung" : "other");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);

  const Result missing = Cli(Args({"predict", "--model", "bow_mlp", "--audio", "x.wav"}));
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("--lyrics"), std::string::npos);
}

TEST_F(CliPipelineTest, PredictSplitListsEverySong) {
  EnsureTrained("bow_mlp");
  const Result r = Cli(Args({"predict", "--model", "bow_mlp", "--split", "all"}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 20);
}

TEST_F(CliPipelineTest, RefusesCheckpointFromAnotherConfig) {
  EnsureTrained("bow_mlp");
  const Result refused = Cli(Args({"--set", "lr=0.01", "evaluate", "--model", "bow_mlp"}));
  EXPECT_EQ(refused.code, 1);
  EXPECT_NE(refused.err.find("config mismatch"), std::string::npos) << refused.err;
  EXPECT_NE(refused.err.find("--force"), std::string::npos);
  const Result forced =
      Cli(Args({"--set", "lr=0.01", "evaluate", "--model", "bow_mlp", "--force"}));
  EXPECT_EQ(forced.code, 0) << forced.err;
  EXPECT_NE(forced.err.find("warning: config mismatch"), std::string::npos);
  // Locations are not part of the hash.
  EXPECT_EQ(Cli(Args({"--workers", "2", "evaluate", "--model", "bow_mlp"})).code, 0);
}

TEST_F(CliPipelineTest, CombinedLeavesBasesUntouchedAndIsDeterministic) {
  EnsureTrained("bow_mlp");
  EnsureTrained("spectro_cnn");
  const std::string bow_before = ReadText(Checkpoint("bow_mlp"));
  const std::string cnn_before = ReadText(Checkpoint("spectro_cnn"));
  const fs::path a = dir_->path() / "combined_a.ltnn";
  const fs::path b = dir_->path() / "combined_b.ltnn";
  ASSERT_EQ(Cli(Args({"train", "--model", "combined", "--out", a.string()})).code, 0);
  ASSERT_EQ(Cli(Args({"train", "--model", "combined", "--out", b.string()})).code, 0);
  EXPECT_EQ(ReadText(Checkpoint("bow_mlp")), bow_before);
  EXPECT_EQ(ReadText(Checkpoint("spectro_cnn")), cnn_before);
  EXPECT_EQ(ReadText(a), ReadText(b));

  const auto meta = nn::ModelCheckpoint::Load(a, nn::kModelMagic).metadata();
  EXPECT_EQ(meta.at("architecture"), "combined");
  EXPECT_FALSE(meta.at("base.bow_mlp.hash").empty());

  const Result eval_a = Cli(Args({"evaluate", "--checkpoint", a.string(), "--split", "all"}));
  ASSERT_EQ(eval_a.code, 0) << eval_a.err;
  const auto doc = nlohmann::json::parse(eval_a.out);
  EXPECT_EQ(doc["songs"], 20);

  // Retraining a base model invalidates the combined checkpoint.
  const fs::path other = dir_->path() / "bow_other.ltnn";
  ASSERT_EQ(Cli(Args({"--seed", "5", "train", "--model", "bow_mlp", "--out", other.string()})).code,
            0);
  fs::copy_file(Checkpoint("bow_mlp"), dir_->path() / "bow_backup.ltnn");
  fs::copy_file(other, Checkpoint("bow_mlp"), fs::copy_options::overwrite_existing);
  const Result stale = Cli(Args({"evaluate", "--checkpoint", a.string(), "--force"}));
  EXPECT_EQ(stale.code, 1);
  EXPECT_NE(stale.err.find("bow_mlp"), std::string::npos) << stale.err;
  fs::copy_file(dir_->path() / "bow_backup.ltnn", Checkpoint("bow_mlp"),
                fs::copy_options::overwrite_existing);
}

TEST_F(CliPipelineTest, ExportFeatures) {
  EnsureTrained("bow_mlp");
  const fs::path csv = dir_->path() / "features.csv";
  const Result r = Cli(Args({"export-features", "--model", "bow_mlp", "--split", "all", "--out",
                             csv.string()}));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = ReadText(csv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 21);  // header + 20 songs
  const auto sidecar = nlohmann::json::parse(ReadText(fs::path(csv.string() + ".json")));
  EXPECT_EQ(sidecar["feature_dim"], 100);
  EXPECT_EQ(sidecar["rows"], 20);

  const Result groups = Cli(Args({"export-features", "--model", "bow_mlp", "--split", "all",
                                  "--top-k", "3"}));
  ASSERT_EQ(groups.code, 0) << groups.err;
  EXPECT_FALSE(groups.out.empty());
}

TEST_F(CliPipelineTest, LogisticBaseline) {
  EnsureTrained("lr_baseline");
  const Result r = Cli(Args({"evaluate", "--model", "lr_baseline", "--split", "all"}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["model"], "lr_baseline");
}

}  // namespace
}  // namespace lukthung::cli
