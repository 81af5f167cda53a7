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

#include "commands.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <sstream>

#include "artifacts.h"
#include "json.hpp"
#include "lukthung/audio/features.h"
#include "lukthung/audio/wav.h"
#include "lukthung/data/feature_export.h"
#include "lukthung/data/logistic_regression.h"
#include "lukthung/data/manifest.h"
#include "lukthung/data/metrics.h"
#include "lukthung/data/split.h"
#include "lukthung/data/synth.h"
#include "lukthung/errors.h"
#include "lukthung/hash.h"
#include "lukthung/lyrics/bow.h"
#include "lukthung/models/model_io.h"
#include "lukthung/models/trainer.h"
#include "lukthung/parallel.h"
#include "model_runner.h"

namespace lukthung::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::string Seconds(Clock::time_point since) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1fs",
                std::chrono::duration<double>(Clock::now() - since).count());
  return buf;
}

std::string Fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void WriteText(Context& ctx, const std::filesystem::path& out, const std::string& text) {
  if (out.empty()) {
    ctx.out << text;
    ctx.out.flush();
    return;
  }
  nn::WriteFileBytes(out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                    text.size()));
  ctx.log << "wrote " << out.string() << "\n";
}

// ------------------------------------------------------------ corpus

struct Corpus {
  data::Manifest manifest;
  data::DatasetSplits splits;

  const std::vector<data::SongRecord>& Select(const std::string& split) const {
    if (split == "all") return manifest.records;
    switch (data::ParseSplit(split)) {
      case data::Split::kTrain:
        return splits.train;
      case data::Split::kVal:
        return splits.val;
      case data::Split::kTest:
        return splits.test;
    }
    throw ValidationError("unknown split " + split);
  }
};

data::Manifest LoadManifestFor(const RunConfig& config) {
  if (config.manifest.empty()) {
    throw MissingInputError("manifest", "set manifest in the config or pass --manifest");
  }
  return data::LoadManifest(config.manifest);
}

Corpus LoadCorpus(const RunConfig& config) {
  Corpus c;
  c.manifest = LoadManifestFor(config);
  c.splits = data::SplitDataset(c.manifest.records, config.split, config.seed);
  return c;
}

std::vector<int> Labels(const std::vector<data::SongRecord>& records) {
  std::vector<int> y;
  y.reserve(records.size());
  for (const auto& r : records) y.push_back(data::LabelValue(r.label));
  return y;
}

AudioCache MakeAudioCache(const RunConfig& config) {
  return AudioCache(config.CacheDir(), config.spectrogram, config.HashHex());
}

// Loads cached spectrogram features for `records` in parallel; a missing
// entry is an error naming the song.
std::vector<AudioEntry> LoadAudio(const RunConfig& config, const Corpus& corpus,
                                  const std::vector<data::SongRecord>& records) {
  const AudioCache cache = MakeAudioCache(config);
  std::vector<AudioEntry> out(records.size());
  ParallelFor(records.size(), config.Workers(), [&](std::size_t i) {
    out[i] = cache.Load(corpus.manifest.Resolve(records[i].audio_path), records[i].id);
  });
  return out;
}

std::optional<ModelRunner::VocabInfo> VocabOf(const LyricsFeatures& f) {
  return ModelRunner::VocabInfo{f.vocab_hash, f.bow.shape()[1]};
}

void CheckVocabulary(const LyricsFeatures& features, const RunConfig& config) {
  const auto path = config.VocabPath();
  if (!std::filesystem::is_regular_file(path)) {
    throw MissingInputError("vocabulary " + path.string(), "run build-vocab");
  }
  const std::string current = HashToHex(lyrics::Vocabulary::Load(path).Hash());
  if (current != features.vocab_hash) {
    throw ValidationError("lyrics features were built with vocabulary " + features.vocab_hash +
                          " but " + path.string() + " has hash " + current +
                          "; rerun featurize-lyrics");
  }
}

std::filesystem::path CheckpointPathOf(const RunConfig& config, const InferenceOptions& o) {
  if (!o.checkpoint.empty()) return o.checkpoint;
  if (o.model.empty()) throw ValidationError("pass --checkpoint or --model");
  return DefaultCheckpointPath(config, ParseModelType(o.model));
}

ModelType PeekType(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw MissingInputError("checkpoint " + path.string(), "run train first or pass --checkpoint");
  }
  return ParseModelType(nn::ModelCheckpoint::Load(path, nn::kModelMagic).Meta("architecture"));
}

void CheckConfigHash(const ModelRunner& runner, const RunConfig& config,
                     const std::filesystem::path& path, bool force, std::ostream& log) {
  const auto& c = runner.checkpoint();
  const std::string found = c.HasMeta(kMetaConfigHash) ? c.Meta(kMetaConfigHash) : "(none)";
  if (found == config.HashHex()) return;
  const std::string msg = "config mismatch: " + path.string() + " was produced with config_hash " +
                          found + ", current config_hash is " + config.HashHex();
  if (!force) throw ValidationError(msg + " (pass --force to proceed)");
  log << "warning: " << msg << "\n";
}

// A loaded model plus everything needed to score manifest songs with it.
struct Scorer {
  std::filesystem::path path;
  std::optional<LyricsFeatures> lyrics;
  std::optional<ModelRunner> runner;
};

Scorer LoadScorer(Context& ctx, const InferenceOptions& o) {
  Scorer s;
  s.path = CheckpointPathOf(ctx.config, o);
  const ModelType type = PeekType(s.path);
  std::optional<ModelRunner::VocabInfo> vocab;
  if (type == ModelType::kBowMlp || type == ModelType::kCombined) {
    s.lyrics = LyricsFeatures::Load(ctx.config.LyricsFeaturesPath());
    vocab = VocabOf(*s.lyrics);
  }
  s.runner = ModelRunner::Load(s.path, ctx.config, vocab);
  CheckConfigHash(*s.runner, ctx.config, s.path, o.force, ctx.log);
  return s;
}

// Scores records in parallel. Audio comes from the cache when present and is
// computed on the fly otherwise.
std::vector<Prediction> Score(const RunConfig& config, const Scorer& scorer, const Corpus& corpus,
                              const std::vector<data::SongRecord>& records) {
  const AudioCache cache = MakeAudioCache(config);
  const ModelRunner& runner = *scorer.runner;
  std::vector<Prediction> out(records.size());
  ParallelFor(records.size(), config.Workers(), [&](std::size_t i) {
    const data::SongRecord& r = records[i];
    SongData song;
    song.id = r.id;
    if (runner.uses_lyrics()) song.bow = scorer.lyrics->Row(r.id);
    if (runner.uses_audio()) {
      const auto path = corpus.manifest.Resolve(r.audio_path);
      song.audio_key = cache.KeyFor(path);
      song.load_audio = [&cache, path, id = r.id, key = song.audio_key] {
        if (std::filesystem::is_regular_file(cache.PathFor(key))) return cache.Load(path, id);
        return cache.Compute(path, id);
      };
    }
    out[i] = runner.Predict(song);
  });
  return out;
}

const char* LabelText(double prob, double threshold) {
  return prob >= threshold ? "lukthung" : "other";
}

std::string FormatProb(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", p);
  return buf;
}

// ------------------------------------------------------------ training

template <typename Model>
void LogEpochs(std::ostream& log, const char* name, const models::EpochLog& e) {
  log << name << " epoch " << e.epoch << ": train_loss=" << Fixed(e.train_loss)
      << " val_loss=" << Fixed(e.val_loss) << " val_f1=" << Fixed(e.val_f1)
      << (e.improved ? " *" : "") << "\n";
  log.flush();
}

void AddTrainMeta(nn::ModelCheckpoint& c, const RunConfig& config, const models::TrainResult& r,
                  std::size_t n_train, std::size_t n_val) {
  c.SetMeta(kMetaConfigHash, config.HashHex());
  c.SetMeta("train.best_epoch", std::to_string(r.best_epoch));
  c.SetMeta("train.best_val_f1", Fixed(r.best_val_f1, 6));
  c.SetMeta("train.epochs", std::to_string(r.history.size()));
  c.SetMeta("train.steps", std::to_string(r.steps));
  c.SetMeta("train.pos_weight", Fixed(r.pos_weight, 6));
  c.SetMeta("train.songs", std::to_string(n_train));
  c.SetMeta("val.songs", std::to_string(n_val));
}

template <typename Model>
models::TrainResult RunTraining(Context& ctx, Model& model, const char* name,
                                const models::LabeledSet<nn::Tensor>& train,
                                const models::LabeledSet<nn::Tensor>& val, bool cnn) {
  const auto start = Clock::now();
  const models::TrainConfig tc = ctx.config.Training(cnn);
  ctx.log << "training " << name << " on " << train.size() << " songs (" << val.size()
          << " validation), up to " << tc.max_epochs << " epochs\n";
  const auto result = models::Train(model, train, val, tc, [&](const models::EpochLog& e) {
    LogEpochs<Model>(ctx.log, name, e);
  });
  ctx.log << name << ": best epoch " << result.best_epoch << " (val_f1 "
          << Fixed(result.best_val_f1) << ") after " << Seconds(start) << "\n";
  return result;
}

models::LabeledSet<nn::Tensor> FromRows(std::vector<nn::Tensor> rows,
                                        const std::vector<data::SongRecord>& records) {
  models::LabeledSet<nn::Tensor> set;
  set.inputs = std::move(rows);
  set.labels = Labels(records);
  return set;
}

void TrainBowMlp(Context& ctx, const Corpus& corpus, const std::filesystem::path& out) {
  const LyricsFeatures features = LyricsFeatures::Load(ctx.config.LyricsFeaturesPath());
  CheckVocabulary(features, ctx.config);
  const auto rows = [&](const std::vector<data::SongRecord>& records) {
    std::vector<nn::Tensor> x;
    for (const auto& r : records) x.push_back(features.Row(r.id));
    return FromRows(std::move(x), records);
  };
  const auto train = rows(corpus.splits.train);
  const auto val = rows(corpus.splits.val);
  models::Mlp<float> model(models::BowMlpDims(features.bow.shape()[1]), ctx.config.seed);
  const auto result = RunTraining(ctx, model, "bow_mlp", train, val, false);
  nn::ModelCheckpoint c = models::ToCheckpoint(model);
  AddTrainMeta(c, ctx.config, result, train.size(), val.size());
  c.SetMeta(kMetaVocabHash, features.vocab_hash);
  c.Save(out);
}

void TrainSpectroCnn(Context& ctx, const Corpus& corpus, const std::filesystem::path& out) {
  const auto start = Clock::now();
  const auto mels = [&](const std::vector<data::SongRecord>& records) {
    std::vector<nn::Tensor> x;
    for (auto& e : LoadAudio(ctx.config, corpus, records)) x.push_back(std::move(e.mel));
    return FromRows(std::move(x), records);
  };
  const auto train = mels(corpus.splits.train);
  const auto val = mels(corpus.splits.val);
  ctx.log << "loaded spectrograms in " << Seconds(start) << "\n";
  models::SpectroCnn<float> model(CnnConfigFor(ctx.config.spectrogram), ctx.config.seed);
  const auto result = RunTraining(ctx, model, "spectro_cnn", train, val, true);
  nn::ModelCheckpoint c = models::ToCheckpoint(model);
  AddTrainMeta(c, ctx.config, result, train.size(), val.size());
  c.SetMeta(kMetaSpecHash, HashToHex(ctx.config.spectrogram.Hash()));
  c.SetMeta("spectrogram", ctx.config.spectrogram.Canonical());
  c.Save(out);
}

void TrainCombined(Context& ctx, const Corpus& corpus, const std::filesystem::path& out) {
  const auto bow_path = DefaultCheckpointPath(ctx.config, ModelType::kBowMlp);
  const auto cnn_path = DefaultCheckpointPath(ctx.config, ModelType::kSpectroCnn);
  std::string missing;
  for (const auto& [path, name] : {std::pair{bow_path, "bow_mlp"}, {cnn_path, "spectro_cnn"}}) {
    if (!std::filesystem::is_regular_file(path)) {
      missing += (missing.empty() ? "" : ", ") + std::string(name) + " checkpoint " + path.string();
    }
  }
  if (!missing.empty()) {
    throw MissingInputError(missing, "combined training needs both base models; train them first");
  }
  const auto start = Clock::now();
  Scorer bow;
  bow.lyrics = LyricsFeatures::Load(ctx.config.LyricsFeaturesPath());
  CheckVocabulary(*bow.lyrics, ctx.config);
  bow.runner = ModelRunner::Load(bow_path, ctx.config, VocabOf(*bow.lyrics));
  Scorer cnn;
  cnn.runner = ModelRunner::Load(cnn_path, ctx.config, std::nullopt);
  const std::string bow_hash = bow.runner->checkpoint_hash();
  const std::string cnn_hash = cnn.runner->checkpoint_hash();

  const models::CombinedConfig head_config;
  const auto fused = [&](const std::vector<data::SongRecord>& records) {
    const auto lyric = Score(ctx.config, bow, corpus, records);
    const auto audio = Score(ctx.config, cnn, corpus, records);
    std::vector<nn::Tensor> x;
    for (std::size_t i = 0; i < records.size(); ++i) {
      x.push_back(models::Combined<float>::Concat(
          nn::Tensor({lyric[i].feature.size()}, lyric[i].feature),
          nn::Tensor({audio[i].feature.size()}, audio[i].feature), head_config));
    }
    return FromRows(std::move(x), records);
  };
  const auto train = fused(corpus.splits.train);
  const auto val = fused(corpus.splits.val);
  ctx.log << "base-model features ready in " << Seconds(start) << "\n";

  models::Combined<float> model(head_config, ctx.config.seed);
  const auto result = RunTraining(ctx, model, "combined", train, val, false);
  nn::ModelCheckpoint c = models::ToCheckpoint(model);
  AddTrainMeta(c, ctx.config, result, train.size(), val.size());
  c.SetMeta(kMetaBaseBowHash, bow_hash);
  c.SetMeta(kMetaBaseCnnHash, cnn_hash);
  c.SetMeta(kMetaVocabHash, bow.lyrics->vocab_hash);
  c.SetMeta(kMetaSpecHash, HashToHex(ctx.config.spectrogram.Hash()));
  c.Save(out);
}

void TrainLrBaseline(Context& ctx, const Corpus& corpus, const std::filesystem::path& out) {
  const auto& records = corpus.splits.train;
  std::vector<std::vector<double>> rows;
  for (const auto& e : LoadAudio(ctx.config, corpus, records)) {
    rows.emplace_back(e.mfcc_stats.values().begin(), e.mfcc_stats.values().end());
  }
  data::LogisticRegressionConfig lc;
  lc.l2 = ctx.config.lr_baseline_l2;
  const auto start = Clock::now();
  const auto model = data::TrainLogisticRegression(rows, Labels(records), lc);
  ctx.log << "lr_baseline: " << model.iterations << " iterations, gradient norm "
          << model.gradient_norm << (model.converged ? "" : " (iteration cap reached)") << ", "
          << Seconds(start) << "\n";
  nn::ModelCheckpoint c = data::ToCheckpoint(model);
  c.SetMeta(kMetaConfigHash, ctx.config.HashHex());
  c.SetMeta(kMetaSpecHash, HashToHex(ctx.config.spectrogram.Hash()));
  c.SetMeta("train.songs", std::to_string(records.size()));
  c.Save(out);
}

std::vector<std::size_t> ParseCounts(const std::string& text) {
  std::vector<std::size_t> counts;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view part = rest.substr(0, comma);
    std::size_t v = 0;
    const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size()) {
      throw ValidationError("--split-per-class expects train,val,test counts, got '" + text + "'");
    }
    counts.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (counts.size() != 3) {
    throw ValidationError("--split-per-class expects three counts, got '" + text + "'");
  }
  return counts;
}

}  // namespace

// ------------------------------------------------------------ commands

void GenSynth(Context& ctx, const GenSynthOptions& options) {
  if (options.out_dir.empty()) throw MissingInputError("output directory", "pass --out");
  data::SynthOptions so;
  so.n_per_class = options.n_per_class;
  so.seed = ctx.config.seed;
  if (!options.split_per_class.empty()) {
    const auto c = ParseCounts(options.split_per_class);
    so.split_per_class = std::array<std::size_t, 3>{c[0], c[1], c[2]};
  }
  const auto start = Clock::now();
  const auto records = data::GenerateSynthCorpus(options.out_dir, so, ctx.config.Workers());
  ctx.log << "generated " << records.size() << " songs in " << Seconds(start) << "\n";
  ctx.out << (options.out_dir / "manifest.jsonl").string() << "\n";
}

void BuildVocab(Context& ctx, const BuildVocabOptions& options) {
  const data::Manifest manifest = LoadManifestFor(ctx.config);
  std::vector<std::vector<std::string>> corpus;
  for (const auto& r : manifest.records) {
    corpus.push_back(ReadLyricsTokens(manifest.Resolve(r.lyrics_path), ctx.config.tokenize_mode));
  }
  std::size_t extra = 0;
  for (const auto& dir : options.extra_lyrics) {
    if (!std::filesystem::is_directory(dir)) {
      throw MissingInputError("lyrics directory " + dir.string(), "check --extra-lyrics");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) corpus.push_back(ReadLyricsTokens(f, ctx.config.tokenize_mode));
    extra += files.size();
  }
  lyrics::Vocabulary vocab = lyrics::Vocabulary::Build(corpus, ctx.config.vocab_options);
  vocab.SetHeaderExtra("config_hash", ctx.config.HashHex());
  vocab.SetHeaderExtra("tokenize_mode", std::string(lyrics::TokenizeModeName(ctx.config.tokenize_mode)));
  const auto out = options.out.empty() ? ctx.config.VocabPath() : options.out;
  vocab.Save(out);
  ctx.log << "vocabulary of " << vocab.size() << " tokens from " << corpus.size()
          << " documents (" << extra << " unlabeled) written to " << out.string() << "\n";
}

void FeaturizeAudio(Context& ctx) {
  const data::Manifest manifest = LoadManifestFor(ctx.config);
  const AudioCache cache = MakeAudioCache(ctx.config);
  const auto start = Clock::now();
  std::atomic<std::size_t> computed{0};
  ParallelFor(manifest.records.size(), ctx.config.Workers(), [&](std::size_t i) {
    const auto& r = manifest.records[i];
    if (cache.Ensure(manifest.Resolve(r.audio_path), r.id)) ++computed;
  });
  ctx.log << "audio features: " << computed << " computed, "
          << manifest.records.size() - computed << " cached, " << Seconds(start) << " ("
          << ctx.config.Workers() << " workers, cache " << ctx.config.CacheDir().string() << ")\n";
}

void FeaturizeLyrics(Context& ctx, const FeaturizeLyricsOptions& options) {
  const data::Manifest manifest = LoadManifestFor(ctx.config);
  const auto vocab_path = ctx.config.VocabPath();
  if (!std::filesystem::is_regular_file(vocab_path)) {
    throw MissingInputError("vocabulary " + vocab_path.string(), "run build-vocab");
  }
  const lyrics::Vocabulary vocab = lyrics::Vocabulary::Load(vocab_path);
  LyricsFeatures f;
  f.vocab_hash = HashToHex(vocab.Hash());
  f.config_hash = ctx.config.HashHex();
  f.bow = nn::Tensor({manifest.records.size(), vocab.size()});
  ParallelFor(manifest.records.size(), ctx.config.Workers(), [&](std::size_t i) {
    const auto& r = manifest.records[i];
    const auto bow = lyrics::ComputeBow(
        ReadLyricsTokens(manifest.Resolve(r.lyrics_path), ctx.config.tokenize_mode), vocab, r.id);
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      f.bow[i * vocab.size() + j] = static_cast<float>(bow.values[j]);
    }
  });
  for (const auto& r : manifest.records) f.ids.push_back(r.id);
  const auto out = options.out.empty() ? ctx.config.LyricsFeaturesPath() : options.out;
  f.Save(out);
  ctx.log << "bag-of-words for " << f.ids.size() << " songs over " << vocab.size()
          << " tokens written to " << out.string() << "\n";
}

void Train(Context& ctx, const TrainOptions& options) {
  if (options.model.empty()) throw MissingInputError("model kind", "pass --model");
  const ModelType type = ParseModelType(options.model);
  const Corpus corpus = LoadCorpus(ctx.config);
  const auto out = options.out.empty() ? DefaultCheckpointPath(ctx.config, type) : options.out;
  switch (type) {
    case ModelType::kBowMlp:
      TrainBowMlp(ctx, corpus, out);
      break;
    case ModelType::kSpectroCnn:
      TrainSpectroCnn(ctx, corpus, out);
      break;
    case ModelType::kCombined:
      TrainCombined(ctx, corpus, out);
      break;
    case ModelType::kLrBaseline:
      TrainLrBaseline(ctx, corpus, out);
      break;
  }
  ctx.log << "checkpoint written to " << out.string() << "\n";
}

void Evaluate(Context& ctx, const InferenceOptions& options) {
  const Scorer scorer = LoadScorer(ctx, options);
  const Corpus corpus = LoadCorpus(ctx.config);
  const auto& records = corpus.Select(options.split);
  const auto start = Clock::now();
  const auto preds = Score(ctx.config, scorer, corpus, records);
  std::vector<double> probs;
  for (const auto& p : preds) probs.push_back(p.prob);
  const data::Metrics m = data::ComputeMetrics(probs, Labels(records), ctx.config.threshold);
  ctx.log << ModelTypeName(scorer.runner->type()) << " on " << options.split << ": f1_positive "
          << Fixed(m.f1_positive) << ", f1_macro " << Fixed(m.f1_macro) << " (" << Seconds(start)
          << ")\n";

  nlohmann::ordered_json doc;
  doc["model"] = ModelTypeName(scorer.runner->type());
  doc["checkpoint"] = scorer.path.string();
  doc["checkpoint_hash"] = scorer.runner->checkpoint_hash();
  doc["split"] = options.split;
  doc["songs"] = records.size();
  doc["threshold"] = ctx.config.threshold;
  doc["tp"] = m.tp;
  doc["fp"] = m.fp;
  doc["fn"] = m.fn;
  doc["tn"] = m.tn;
  doc["precision"] = m.precision;
  doc["recall"] = m.recall;
  doc["f1_positive"] = m.f1_positive;
  doc["f1_macro"] = m.f1_macro;
  doc["accuracy"] = m.accuracy();
  doc["config_hash"] = ctx.config.HashHex();
  nlohmann::ordered_json echo;
  for (const auto& [k, v] : ctx.config.Entries()) echo[k] = v;
  doc["config"] = echo;
  WriteText(ctx, options.out, doc.dump(2) + "\n");
}

void Predict(Context& ctx, const PredictOptions& options) {
  const InferenceOptions& o = options.inference;
  const double threshold = ctx.config.threshold;
  if (options.audio.empty() && options.lyrics.empty()) {
    const Scorer scorer = LoadScorer(ctx, o);
    const Corpus corpus = LoadCorpus(ctx.config);
    const auto& records = corpus.Select(o.split);
    const auto preds = Score(ctx.config, scorer, corpus, records);
    std::string text;
    for (std::size_t i = 0; i < records.size(); ++i) {
      text += records[i].id + "\t" + FormatProb(preds[i].prob) + "\t" +
              LabelText(preds[i].prob, threshold) + "\n";
    }
    WriteText(ctx, o.out, text);
    return;
  }

  // Single song from files.
  const auto path = CheckpointPathOf(ctx.config, o);
  const ModelType type = PeekType(path);
  const bool wants_lyrics = type == ModelType::kBowMlp || type == ModelType::kCombined;
  const bool wants_audio = type != ModelType::kBowMlp;
  if (wants_lyrics && options.lyrics.empty()) {
    throw MissingInputError("lyrics file", std::string(ModelTypeName(type)) + " needs --lyrics");
  }
  if (wants_audio && options.audio.empty()) {
    throw MissingInputError("audio file", std::string(ModelTypeName(type)) + " needs --audio");
  }
  SongData song;
  song.id = (wants_audio ? options.audio : options.lyrics).stem().string();
  std::optional<ModelRunner::VocabInfo> vocab_info;
  if (wants_lyrics) {
    const auto vocab_path = ctx.config.VocabPath();
    if (!std::filesystem::is_regular_file(vocab_path)) {
      throw MissingInputError("vocabulary " + vocab_path.string(), "run build-vocab");
    }
    const auto vocab = lyrics::Vocabulary::Load(vocab_path);
    vocab_info = ModelRunner::VocabInfo{HashToHex(vocab.Hash()), vocab.size()};
    song.bow = lyrics::ComputeBow(ReadLyricsTokens(options.lyrics, ctx.config.tokenize_mode),
                                  vocab, song.id)
                   .ToTensor();
  }
  const ModelRunner runner = ModelRunner::Load(path, ctx.config, vocab_info);
  CheckConfigHash(runner, ctx.config, path, o.force, ctx.log);
  if (wants_audio) {
    const AudioCache cache = MakeAudioCache(ctx.config);
    song.load_audio = [&] { return cache.Compute(options.audio, song.id); };
  }
  const Prediction p = runner.Predict(song);
  WriteText(ctx, o.out,
            song.id + "\t" + FormatProb(p.prob) + "\t" + LabelText(p.prob, threshold) + "\n");
}

void ExportFeatures(Context& ctx, const ExportOptions& options) {
  const InferenceOptions& o = options.inference;
  const Scorer scorer = LoadScorer(ctx, o);
  const Corpus corpus = LoadCorpus(ctx.config);
  const auto& records = corpus.Select(o.split);
  const auto preds = Score(ctx.config, scorer, corpus, records);
  std::vector<data::FeatureRow> rows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    rows.push_back({records[i].id, data::LabelValue(records[i].label), preds[i].prob,
                    preds[i].feature});
  }
  std::string text;
  if (options.top_k > 0) {
    const auto groups = data::SelectConfidenceGroups(rows, options.top_k, ctx.config.threshold);
    for (const auto& w : groups.warnings) ctx.log << "warning: " << w << "\n";
    text = data::ConfidenceGroupsCsv(groups);
  } else {
    text = data::FeatureCsv(rows);
  }
  WriteText(ctx, o.out, text);
  if (!o.out.empty()) {
    // The CSV layout is fixed, so provenance goes into a sidecar.
    nlohmann::ordered_json meta;
    meta["model"] = ModelTypeName(scorer.runner->type());
    meta["checkpoint_hash"] = scorer.runner->checkpoint_hash();
    meta["config_hash"] = ctx.config.HashHex();
    meta["split"] = o.split;
    meta["rows"] = rows.size();
    meta["feature_dim"] = scorer.runner->feature_dim();
    meta["top_k"] = options.top_k;
    auto sidecar = o.out;
    sidecar += ".json";
    const std::string s = meta.dump(2) + "\n";
    nn::WriteFileBytes(sidecar,
                       std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }
}

}  // namespace lukthung::cli
