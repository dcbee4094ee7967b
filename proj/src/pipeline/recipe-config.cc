// pipeline/recipe-config.cc

// Copyright 2026  The vqvc Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "pipeline/recipe-config.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace vqvc {

const char *const kStageNames[kNumStages] = {"prepare", "extract", "stats",
                                             "train",   "convert", "evaluate"};

StageId ParseStage(const std::string &s) {
  for (int i = 0; i < kNumStages; i++)
    if (s == kStageNames[i] || s == std::to_string(i + 1)) return StageId(i);
  throw ConfigError("unknown stage '" + s +
                    "' (prepare, extract, stats, train, convert, evaluate or 1-6)");
}

StageRange ParseStageRange(const std::string &s) {
  StageRange r;
  size_t colon = s.find(':');
  if (colon == std::string::npos) {
    r.start = r.stop = ParseStage(s);
  } else {
    std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    if (!a.empty()) r.start = ParseStage(a);
    if (!b.empty()) r.stop = ParseStage(b);
  }
  if (int(r.start) > int(r.stop))
    throw ConfigError("stage range '" + s + "' runs backwards");
  return r;
}

std::string RecipeConfig::Resolve(const std::string &p) const {
  std::filesystem::path path(p);
  if (path.is_absolute() || config_path.empty()) return path.lexically_normal().string();
  std::filesystem::path base = std::filesystem::path(config_path).parent_path();
  return (base / path).lexically_normal().string();
}

void RecipeConfig::Check() const {
  if (corpus_dir.empty() || work_dir.empty())
    throw ConfigError("recipe: corpus.dir and work.dir must be set");
  if (features.sample_rate_hz <= 0) throw ConfigError("recipe: sample_rate must be > 0");
  try {
    features.stft.Check();
  } catch (const Error &e) {
    throw ConfigError(std::string("recipe: ") + e.what());
  }
  if (!(features.mel.fmin < features.mel.fmax) ||
      features.mel.fmax > features.sample_rate_hz / 2.0)
    throw ConfigError("recipe: need fmin < fmax <= sample_rate / 2");
  if (!(f0.fmin < f0.fmax) || f0.fmin <= 0)
    throw ConfigError("recipe: need 0 < f0_min < f0_max");
  if (griffin_lim_iters < 1) throw ConfigError("recipe: griffin_lim_iters must be >= 1");
  if (model.feat_dim != features.mel.n_mels)
    throw ConfigError("recipe: model feature width must equal n_mels");
  if (features.mel.n_mels < kDefaultCepstrumOrder)
    throw ConfigError(fmt::format("recipe: n_mels must be >= {} for evaluation",
                                  kDefaultCepstrumOrder));
  bool any_list = !train_ids.empty() || !dev_ids.empty() || !eval_ids.empty();
  if (any_list && (train_ids.empty() || eval_ids.empty()))
    throw ConfigError("recipe: explicit split needs at least train and eval lists");
  std::set<std::string> seen;
  for (const auto *list : {&train_ids, &dev_ids, &eval_ids})
    for (const auto &id : *list)
      if (!seen.insert(id).second)
        throw ConfigError("recipe: utterance " + id + " appears in more than one split");
  train.Check();
  ModelConfig m = model;
  m.n_speakers = std::max(1, m.n_speakers);
  m.Check();
}

namespace {

// Reads one table, remembering which keys were consumed so leftovers can be
// reported.
class Section {
 public:
  Section(const toml::table *t, std::string name) : t_(t), name_(std::move(name)) {}

  void Str(const char *key, std::string *out) { Get<std::string>(key, out, "a string"); }
  void Bool(const char *key, bool *out) { Get<bool>(key, out, "a boolean"); }
  template <typename I>
  void Int(const char *key, I *out) {
    int64_t v = static_cast<int64_t>(*out);
    Get<int64_t>(key, &v, "an integer");
    *out = static_cast<I>(v);
  }
  void Real(const char *key, double *out) {
    const toml::node *n = Find(key);
    if (!n) return;
    if (auto d = n->value_exact<double>()) *out = *d;
    else if (auto i = n->value_exact<int64_t>()) *out = double(*i);
    else Bad(key, "a number");
  }
  void StrList(const char *key, std::vector<std::string> *out) {
    const toml::node *n = Find(key);
    if (!n) return;
    const toml::array *a = n->as_array();
    if (!a) Bad(key, "an array of strings");
    out->clear();
    for (const toml::node &e : *a) {
      auto s = e.value_exact<std::string>();
      if (!s) Bad(key, "an array of strings");
      out->push_back(*s);
    }
  }
  void CheckUnused() const {
    if (!t_) return;
    for (auto &&[k, v] : *t_)
      if (!used_.count(std::string(k.str())))
        throw ConfigError(fmt::format("config: unknown key '{}' in [{}]", k.str(), name_));
  }

 private:
  const toml::node *Find(const char *key) {
    used_.insert(key);
    return t_ ? t_->get(key) : nullptr;
  }
  template <typename T>
  void Get(const char *key, T *out, const char *what) {
    const toml::node *n = Find(key);
    if (!n) return;
    auto v = n->value_exact<T>();
    if (!v) Bad(key, what);
    *out = *v;
  }
  [[noreturn]] void Bad(const char *key, const char *what) const {
    throw ConfigError(fmt::format("config: [{}] {} must be {}", name_, key, what));
  }
  const toml::table *t_;
  std::string name_;
  std::set<std::string> used_;
};

}  // namespace

RecipeConfig ParseRecipeConfig(const std::string &text, const std::string &path) {
  toml::table root;
  try {
    root = toml::parse(text, path);
  } catch (const toml::parse_error &e) {
    std::ostringstream os;
    os << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(path + ": " + os.str());
  }
  static const std::set<std::string> kTables = {"corpus", "split", "work",  "signal",
                                                "model",  "loss",  "train", "evaluate",
                                                "stages"};
  for (auto &&[k, v] : root) {
    if (!kTables.count(std::string(k.str())))
      throw ConfigError(fmt::format("config: unknown table [{}]", k.str()));
    if (!v.is_table())
      throw ConfigError(fmt::format("config: '{}' must be a table", k.str()));
  }
  auto table = [&](const char *n) { return root.get_as<toml::table>(n); };

  RecipeConfig c;
  c.config_path = path;
  {
    Section s(table("corpus"), "corpus");
    s.Str("dir", &c.corpus_dir);
    s.Bool("synthetic", &c.synthetic);
    s.Int("n_speakers", &c.synth.n_speakers);
    s.Int("utts_per_speaker", &c.synth.utts_per_speaker);
    s.Int("seed", &c.synth.seed);
    s.StrList("speakers", &c.speakers);
    s.CheckUnused();
  }
  {
    Section s(table("split"), "split");
    s.Int("train_per_speaker", &c.train_per_speaker);
    s.Int("dev_per_speaker", &c.dev_per_speaker);
    s.Int("seed", &c.split_seed);
    s.StrList("train", &c.train_ids);
    s.StrList("dev", &c.dev_ids);
    s.StrList("eval", &c.eval_ids);
    s.CheckUnused();
  }
  {
    Section s(table("work"), "work");
    s.Str("dir", &c.work_dir);
    s.CheckUnused();
  }
  {
    Section s(table("signal"), "signal");
    s.Int("sample_rate", &c.features.sample_rate_hz);
    s.Int("fft_size", &c.features.stft.fft_size);
    s.Int("hop_size", &c.features.stft.hop_size);
    s.Int("win_size", &c.features.stft.win_size);
    s.Int("n_mels", &c.features.mel.n_mels);
    s.Real("fmin", &c.features.mel.fmin);
    s.Real("fmax", &c.features.mel.fmax);
    s.Real("f0_min", &c.f0.fmin);
    s.Real("f0_max", &c.f0.fmax);
    s.Real("voicing_threshold", &c.f0.voicing_threshold);
    s.Real("rms_threshold", &c.f0.rms_threshold);
    s.Int("griffin_lim_iters", &c.griffin_lim_iters);
    s.CheckUnused();
  }
  c.synth.sample_rate_hz = c.features.sample_rate_hz;
  c.model.feat_dim = c.features.mel.n_mels;
  {
    Section s(table("model"), "model");
    s.Int("codebook_size", &c.model.codebook_size);
    s.Int("latent_dim", &c.model.latent_dim);
    s.Int("spk_embed_dim", &c.model.spk_embed_dim);
    s.Int("layers", &c.model.encoder.layers);
    s.Int("channels", &c.model.encoder.channels);
    s.Int("kernel_size", &c.model.encoder.kernel_size);
    s.Bool("causal", &c.model.encoder.causal);
    s.Int("disc_layers", &c.model.discriminator.layers);
    s.Int("disc_channels", &c.model.discriminator.channels);
    s.Int("seed", &c.model.seed);
    s.CheckUnused();
    c.model.decoder = c.model.encoder;
    c.model.discriminator.kernel_size = c.model.encoder.kernel_size;
    c.model.discriminator.causal = c.model.encoder.causal;
  }
  {
    Section s(table("loss"), "loss");
    LossConfig &l = c.train.loss;
    s.Real("beta", &l.beta);
    s.Real("cycle_weight", &l.cycle_weight);
    s.Real("adv_weight", &l.adv_weight);
    s.Real("spkadv_lambda", &l.spkadv_lambda);
    s.Real("stft_weight", &l.stft_weight);
    std::string adv = AdvTargetName(l.adv_target), rk = ReconKindName(l.recon_kind);
    s.Str("adv_target", &adv);
    s.Str("recon_kind", &rk);
    l.adv_target = ParseAdvTarget(adv);
    l.recon_kind = ParseReconKind(rk);
    s.CheckUnused();
  }
  {
    Section s(table("train"), "train");
    TrainConfig &t = c.train;
    std::string v = VariantName(t.variant);
    s.Str("variant", &v);
    t.variant = ParseVariant(v);
    s.Int("steps", &t.steps);
    s.Int("batch_size", &t.batch_size);
    s.Int("segment_len", &t.segment_len);
    s.Real("lr", &t.lr);
    s.Real("disc_lr", &t.disc_lr);
    s.Int("seed", &t.seed);
    s.Int("checkpoint_every", &t.checkpoint_every);
    s.CheckUnused();
  }
  {
    Section s(table("evaluate"), "evaluate");
    s.Str("scorer", &c.scorer);
    s.CheckUnused();
  }
  {
    Section s(table("stages"), "stages");
    std::string start = kStageNames[int(c.stages.start)];
    std::string stop = kStageNames[int(c.stages.stop)];
    s.Str("start", &start);
    s.Str("stop", &stop);
    c.stages = ParseStageRange(start + ":" + stop);
    s.CheckUnused();
  }
  c.Check();
  return c;
}

RecipeConfig ReadRecipeConfig(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ParseRecipeConfig(ss.str(), std::filesystem::absolute(path).string());
}

std::string RecipeConfigTemplate() {
  RecipeConfig d;
  d.train.steps = 2000;
  const TrainConfig &t = d.train;
  const LossConfig &l = t.loss;
  std::string s;
  s += "# vqvc recipe.  Relative paths are resolved against this file.\n\n";
  s += "[corpus]\n";
  s += fmt::format("dir = \"{}\"\n", d.corpus_dir);
  s += "# generate the bundled synthetic corpus in `prepare` if dir has no manifest.tsv\n";
  s += fmt::format("synthetic = {}\n", d.synthetic);
  s += fmt::format("n_speakers = {}\n", d.synth.n_speakers);
  s += fmt::format("utts_per_speaker = {}\n", d.synth.utts_per_speaker);
  s += fmt::format("seed = {}\n", d.synth.seed);
  s += "# speakers = [\"spk1\", \"spk2\"]   # default: every speaker in the manifest\n\n";
  s += "[split]\n";
  s += fmt::format("train_per_speaker = {}\n", d.train_per_speaker);
  s += fmt::format("dev_per_speaker = {}\n", d.dev_per_speaker);
  s += fmt::format("seed = {}\n", d.split_seed);
  s += "# explicit lists override the computed split:\n";
  s += "# train = [...]\n# dev = [...]\n# eval = [...]\n\n";
  s += "[work]\n";
  s += fmt::format("dir = \"{}\"\n\n", d.work_dir);
  s += "[signal]\n";
  s += fmt::format("sample_rate = {}\n", d.features.sample_rate_hz);
  s += fmt::format("fft_size = {}\n", d.features.stft.fft_size);
  s += fmt::format("hop_size = {}\n", d.features.stft.hop_size);
  s += fmt::format("win_size = {}\n", d.features.stft.win_size);
  s += fmt::format("n_mels = {}\n", d.features.mel.n_mels);
  s += fmt::format("fmin = {:.1f}\n", d.features.mel.fmin);
  s += fmt::format("fmax = {:.1f}\n", d.features.mel.fmax);
  s += fmt::format("f0_min = {:.1f}\n", d.f0.fmin);
  s += fmt::format("f0_max = {:.1f}\n", d.f0.fmax);
  s += fmt::format("voicing_threshold = {}\n", d.f0.voicing_threshold);
  s += fmt::format("rms_threshold = {}\n", d.f0.rms_threshold);
  s += fmt::format("griffin_lim_iters = {}\n\n", d.griffin_lim_iters);
  s += "[model]\n";
  s += fmt::format("codebook_size = {}\n", d.model.codebook_size);
  s += fmt::format("latent_dim = {}\n", d.model.latent_dim);
  s += fmt::format("spk_embed_dim = {}\n", d.model.spk_embed_dim);
  s += "# encoder and decoder stacks\n";
  s += fmt::format("layers = {}\n", d.model.encoder.layers);
  s += fmt::format("channels = {}\n", d.model.encoder.channels);
  s += fmt::format("kernel_size = {}\n", d.model.encoder.kernel_size);
  s += fmt::format("causal = {}\n", d.model.encoder.causal);
  s += "# discriminator and latent speaker classifier\n";
  s += fmt::format("disc_layers = {}\n", d.model.discriminator.layers);
  s += fmt::format("disc_channels = {}\n", d.model.discriminator.channels);
  s += fmt::format("seed = {}\n\n", d.model.seed);
  s += "[loss]\n";
  s += fmt::format("beta = {}\n", l.beta);
  s += fmt::format("cycle_weight = {:.1f}\n", l.cycle_weight);
  s += fmt::format("adv_weight = {:.1f}\n", l.adv_weight);
  s += fmt::format("spkadv_lambda = {}\n", l.spkadv_lambda);
  s += fmt::format("stft_weight = {:.1f}\n", l.stft_weight);
  s += "# reconstructed | converted\n";
  s += fmt::format("adv_target = \"{}\"\n", AdvTargetName(l.adv_target));
  s += "# l1 | l2 | l1_plus_stft (cyclegan_stft always uses l1_plus_stft)\n";
  s += fmt::format("recon_kind = \"{}\"\n\n", ReconKindName(l.recon_kind));
  s += "[train]\n";
  s += "# baseline | cycle | gan | cyclegan | cyclegan_stft\n";
  s += fmt::format("variant = \"{}\"\n", VariantName(t.variant));
  s += fmt::format("steps = {}\n", t.steps);
  s += fmt::format("batch_size = {}\n", t.batch_size);
  s += "# must be >= 128 (the largest STFT-loss window) for cyclegan_stft\n";
  s += fmt::format("segment_len = {}\n", t.segment_len);
  s += fmt::format("lr = {}\n", t.lr);
  s += fmt::format("disc_lr = {}\n", t.disc_lr);
  s += fmt::format("seed = {}\n", t.seed);
  s += fmt::format("checkpoint_every = {}\n\n", t.checkpoint_every);
  s += "[evaluate]\n";
  s += "# external MOS predictor: gets WAV paths as arguments, prints one score per line\n";
  s += "scorer = \"\"\n\n";
  s += "[stages]\n";
  s += "start = \"prepare\"\n";
  s += "stop = \"evaluate\"\n";
  return s;
}

}  // namespace vqvc
