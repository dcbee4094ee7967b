// tools/vqvc.cc

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

// Command-line front end of the recipe.
//
//   vqvc init <dir>
//   vqvc run --config <file> [--stage a:b] [--force] [--jobs N]
//   vqvc synth-corpus --out <dir> [--seed S]
//   vqvc convert --config <file> --wav <in> --source <spk> --target <spk> --out <wav>
//   vqvc evaluate --config <file> [--jobs N]
//
// Exit status is 0 on success, 2 for configuration errors and 1 otherwise.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pipeline/recipe.h"

namespace fs = std::filesystem;
using namespace vqvc;

namespace {

int Init(const std::string &dir) {
  fs::create_directories(dir);
  std::string path = dir + "/recipe.toml";
  if (fs::exists(path)) throw ConfigError(path + " already exists");
  std::ofstream os(path);
  os << RecipeConfigTemplate();
  if (!os) throw Error("cannot write " + path);
  fmt::print("wrote {}\n", path);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  InitLogging();
  CLI::App app{"vqvc: hierarchical VQVAE voice conversion recipe"};
  app.require_subcommand(1);

  std::string init_dir;
  auto *init = app.add_subcommand("init", "write a commented recipe.toml template");
  init->add_option("dir", init_dir, "recipe directory")->required();

  std::string config, stage_range;
  bool force = false;
  int jobs = 1;
  auto *run = app.add_subcommand("run", "run the recipe stages");
  run->add_option("--config", config, "recipe TOML file")->required();
  run->add_option("--stage", stage_range, "stage range a:b (names or 1-6)");
  run->add_flag("--force", force, "re-run stages even if up to date");
  run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string synth_out;
  uint64_t synth_seed = 0;
  auto *synth = app.add_subcommand("synth-corpus", "generate the synthetic corpus");
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--seed", synth_seed, "generator seed");

  std::string wav_in, wav_out, source, target;
  auto *conv = app.add_subcommand("convert", "convert one WAV file");
  conv->add_option("--config", config, "recipe TOML file")->required();
  conv->add_option("--wav", wav_in, "input WAV")->required();
  conv->add_option("--source", source, "source speaker")->required();
  conv->add_option("--target", target, "target speaker")->required();
  conv->add_option("--out", wav_out, "output WAV")->required();

  auto *eval = app.add_subcommand("evaluate", "re-run the evaluate stage");
  eval->add_option("--config", config, "recipe TOML file")->required();
  eval->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*init) return Init(init_dir);
    if (*synth) {
      SyntheticCorpusOptions opts;
      opts.seed = synth_seed;
      CorpusManifest m = GenerateSyntheticCorpus(synth_out, opts);
      fmt::print("wrote {} utterances to {}\n", m.utts.size(), synth_out);
      return 0;
    }
    RecipeConfig cfg = ReadRecipeConfig(config);
    if (*conv) {
      ConvertWaveFile(cfg, wav_in, source, target, wav_out);
      fmt::print("wrote {}\n", wav_out);
      return 0;
    }
    RunOptions opts;
    opts.jobs = jobs;
    if (*eval) {
      opts.stages = {StageId::kEvaluate, StageId::kEvaluate};
      opts.force = true;
    } else {
      opts.stages = stage_range.empty() ? cfg.stages : ParseStageRange(stage_range);
      opts.force = force;
    }
    RunRecipe(cfg, opts);
    return 0;
  } catch (const ConfigError &e) {
    spdlog::error("configuration error: {}", e.what());
    return 2;
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
