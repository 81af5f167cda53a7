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
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "commands.h"
#include "lukthung/errors.h"
#include "run_config.h"

namespace lukthung::cli {
namespace {

struct GlobalFlags {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::string> manifest;
  std::optional<std::string> artifacts_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<std::size_t> workers;
};

RunConfig ResolveConfig(const GlobalFlags& g) {
  RunConfig config = g.config.empty() ? RunConfig{} : LoadRunConfig(g.config);
  for (const std::string& s : g.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + s + "'");
    SetConfigValue(config, s.substr(0, eq), s.substr(eq + 1));
  }
  if (g.manifest) config.manifest = *g.manifest;
  if (g.artifacts_dir) config.artifacts_dir = *g.artifacts_dir;
  if (g.seed) config.seed = *g.seed;
  if (g.threshold) config.threshold = *g.threshold;
  if (g.workers) config.workers = *g.workers;
  config.Validate();
  return config;
}

void AddInferenceFlags(CLI::App* sub, InferenceOptions& o, bool with_split) {
  sub->add_option("--checkpoint", o.checkpoint, "Checkpoint file");
  sub->add_option("--model", o.model,
                  "Model kind (bow_mlp, spectro_cnn, combined, lr_baseline); picks the "
                  "default checkpoint");
  if (with_split) {
    sub->add_option("--split", o.split, "train, val, test or all")
        ->check(CLI::IsMember({"train", "val", "test", "all"}));
  }
  sub->add_option("--out", o.out, "Output file (default: stdout)");
  sub->add_flag("--force", o.force, "Proceed when the checkpoint was made with another config");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Lukthung vs. other genre classifier", "lukthung");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config, "Run config file (key = value lines)");
  app.add_option("--set", g.sets, "Override one config key: key=value (repeatable)");
  app.add_option("--manifest", g.manifest, "Song manifest (JSON lines)");
  app.add_option("--artifacts-dir", g.artifacts_dir, "Directory for derived artifacts");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threshold", g.threshold, "Decision threshold on the probability");
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)");

  std::function<void(Context&)> action;

  GenSynthOptions synth;
  auto* gen = app.add_subcommand("gen-synth", "Write a synthetic two-class corpus");
  gen->add_option("--out", synth.out_dir, "Output directory")->required();
  gen->add_option("--n-per-class", synth.n_per_class, "Songs per class");
  gen->add_option("--split-per-class", synth.split_per_class,
                  "Preset train,val,test counts per class; empty for none");
  gen->callback([&] { action = [&](Context& c) { GenSynth(c, synth); }; });

  BuildVocabOptions vocab;
  auto* bv = app.add_subcommand("build-vocab", "Build the lyrics vocabulary");
  bv->add_option("--extra-lyrics", vocab.extra_lyrics, "Directory of unlabeled lyrics files");
  bv->add_option("--out", vocab.out, "Vocabulary file");
  bv->callback([&] { action = [&](Context& c) { BuildVocab(c, vocab); }; });

  auto* fa = app.add_subcommand("featurize-audio", "Compute and cache spectrogram features");
  fa->callback([&] { action = [](Context& c) { FeaturizeAudio(c); }; });

  FeaturizeLyricsOptions fl_options;
  auto* fl = app.add_subcommand("featurize-lyrics", "Compute bag-of-words features");
  fl->add_option("--out", fl_options.out, "Feature file");
  fl->callback([&] { action = [&](Context& c) { FeaturizeLyrics(c, fl_options); }; });

  TrainOptions train;
  auto* tr = app.add_subcommand("train", "Train one model");
  tr->add_option("--model", train.model, "bow_mlp, spectro_cnn, combined or lr_baseline")
      ->required();
  tr->add_option("--out", train.out, "Checkpoint file");
  tr->callback([&] { action = [&](Context& c) { Train(c, train); }; });

  InferenceOptions eval;
  auto* ev = app.add_subcommand("evaluate", "Score a split and write a metrics document");
  AddInferenceFlags(ev, eval, true);
  ev->callback([&] { action = [&](Context& c) { Evaluate(c, eval); }; });

  PredictOptions predict;
  auto* pr = app.add_subcommand("predict", "Print id, probability and label per song");
  AddInferenceFlags(pr, predict.inference, true);
  pr->add_option("--audio", predict.audio, "Audio file of a single song");
  pr->add_option("--lyrics", predict.lyrics, "Lyrics file of a single song");
  pr->callback([&] { action = [&](Context& c) { Predict(c, predict); }; });

  ExportOptions exp;
  auto* ex = app.add_subcommand("export-features", "Write learned representations as CSV");
  AddInferenceFlags(ex, exp.inference, true);
  ex->add_option("--top-k", exp.top_k, "Keep the k most confident songs per outcome group");
  ex->callback([&] { action = [&](Context& c) { ExportFeatures(c, exp); }; });

  auto* cd = app.add_subcommand("config-defaults", "Print the default config file");
  cd->callback([&] { action = [](Context& c) { c.out << DefaultConfigText(); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    err << "run 'lukthung --help' for usage\n";
    return 2;
  }

  try {
    Context ctx{ResolveConfig(g), out, err};
    action(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lukthung::cli
