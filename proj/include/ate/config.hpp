#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "ate/corpus.hpp"
#include "ate/error.hpp"
#include "ate/hash.hpp"
#include "ate/labeling.hpp"
#include "ate/run_record.hpp"
#include "ate/tagger.hpp"

namespace ate {

/// Bumped whenever a change would alter the outputs of an identical config.
inline constexpr const char* kCodeVersion = "ate-1.0";

/// Flat run configuration:
///   {"corpus": {"root", "language"},
///    "split": {"train": [...], "val": "...", "test": "..."},
///    "variant": "ANN"|"NES", "pool": "mono"|"multi",
///    "backend": {"kind", "model_id", "hyperparams": {...}},
///    "labeling": {"case_insensitive", "max_term_tokens"},
///    "output_dir": "..."}
/// Relative paths resolve against the config file's directory.
struct RunConfig {
  std::filesystem::path corpus_root;
  SplitSpec split;
  BackendSpec backend;
  Pool pool = Pool::mono;
  LabelingOptions labeling;
  std::filesystem::path output_dir;

  const std::string& language() const { return split.language; }
  Variant variant() const { return split.variant; }
};

inline RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  try {
    RunConfig c;
    const auto& corpus = j.at("corpus");
    c.corpus_root = resolve(corpus.at("root").get<std::string>());
    c.split.language = corpus.at("language").get<std::string>();

    const auto& split = j.at("split");
    c.split.train_domains = split.at("train").get<std::vector<std::string>>();
    c.split.val_domain = split.value("val", "");
    c.split.test_domain = split.at("test").get<std::string>();
    c.split.variant = variant_from_string(j.value("variant", "ANN"));

    c.backend = backend_spec_from_json(j.at("backend"));
    c.pool = pool_from_string(j.value("pool", "mono"));
    if (j.contains("labeling")) {
      const auto& l = j.at("labeling");
      c.labeling.case_insensitive = l.value("case_insensitive", true);
      c.labeling.max_term_tokens = l.value("max_term_tokens", std::size_t{0});
    }
    c.output_dir = resolve(j.value("output_dir", "runs"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
  }
  return parse_run_config(j, path.parent_path());
}

inline nlohmann::json to_json(const RunConfig& c) {
  return {{"corpus", {{"root", c.corpus_root.string()}, {"language", c.split.language}}},
          {"split", {{"train", c.split.train_domains}, {"val", c.split.val_domain}, {"test", c.split.test_domain}}},
          {"variant", to_string(c.split.variant)},
          {"pool", to_string(c.pool)},
          {"backend", to_json(c.backend)},
          {"labeling",
           {{"case_insensitive", c.labeling.case_insensitive}, {"max_term_tokens", c.labeling.max_term_tokens}}},
          {"output_dir", c.output_dir.string()}};
}

/// Everything that determines a run's outputs. The corpus enters through its
/// content checksum, so moving the corpus or the output directory keeps the id.
inline nlohmann::json effective_config(const RunConfig& c, const std::string& corpus_checksum) {
  return {{"corpus_checksum", corpus_checksum},
          {"split", to_json(c.split)},
          {"backend", to_json(c.backend)},
          {"pool", to_string(c.pool)},
          {"labeling",
           {{"case_insensitive", c.labeling.case_insensitive}, {"max_term_tokens", c.labeling.max_term_tokens}}},
          {"code_version", kCodeVersion}};
}

/// First 16 hex digits of SHA-256 over the canonical (key-sorted) JSON dump.
inline std::string compute_run_id(const RunConfig& c, const std::string& corpus_checksum) {
  return sha256_hex(effective_config(c, corpus_checksum).dump()).substr(0, 16);
}

}  // namespace ate
