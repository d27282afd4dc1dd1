#pragma once

#include <filesystem>
#include <map>
#include <memory>

#include "zslt/models.hpp"
#include "zslt/speech.hpp"

namespace zslt {

/// One completed training procedure over an (encoder, decoder) pair.
struct TrainingRecord {
  std::string procedure;  // joint_mt, asr_baseline, asr_langspec, couple
  ModuleKey src;
  ModuleKey tgt;
  std::size_t steps = 0;

  nlohmann::json to_json() const;
  static TrainingRecord from_json(const nlohmann::json& j);
};

struct ModuleEntry {
  std::shared_ptr<LangModule> module;
  bool frozen = false;
  bool trained = false;
};

/// Encoder -> decoder composition. Any registered pair routes, trained or not.
struct TranslationPath {
  ModuleKey src;
  ModuleKey tgt;
  const EncoderModule* encoder = nullptr;
  const TextDecoder* decoder = nullptr;

  std::vector<std::vector<std::int32_t>> translate(const SourceBatch& batch, std::size_t max_len) const;
};

class Registry {
 public:
  /// Constructs and registers a module from its JSON config; throws ConflictError on a duplicate key.
  LangModule& register_module(const ModuleKey& key, const nlohmann::json& config, std::uint64_t seed);
  void add(const ModuleKey& key, std::shared_ptr<LangModule> module);
  /// Replaces an existing entry or adds a new one.
  void put(const ModuleKey& key, ModuleEntry entry);

  bool contains(const ModuleKey& key) const { return entries_.count(key) != 0; }
  const ModuleEntry& entry(const ModuleKey& key) const;
  ModuleEntry& entry(const ModuleKey& key);
  LangModule& module(const ModuleKey& key) { return *entry(key).module; }
  const LangModule& module(const ModuleKey& key) const { return *entry(key).module; }
  EncoderModule& encoder(const ModuleKey& key);
  TextDecoder& decoder(const ModuleKey& key);
  SpeechEncoder& speech_encoder(const ModuleKey& key);
  std::vector<ModuleKey> keys() const;
  std::size_t size() const { return entries_.size(); }

  TranslationPath route(const ModuleKey& src, const ModuleKey& tgt) const;

  void freeze(const ModuleKey& key);
  void thaw(const ModuleKey& key);
  bool frozen(const ModuleKey& key) const { return entry(key).frozen; }
  void mark_trained(const ModuleKey& key) { entry(key).trained = true; }

  /// Was (src, tgt) ever optimised together?
  bool route_trained(const ModuleKey& src, const ModuleKey& tgt) const;

  std::string vocab_hash;
  std::vector<TrainingRecord> history;
  // Adam moments per module: "m.<param>", "v.<param>", "t.<param>".
  std::map<ModuleKey, io::NamedTensors> optimizer_state;
  std::size_t optimizer_step = 0;

 private:
  std::string available() const;
  std::map<ModuleKey, ModuleEntry> entries_;
};

std::shared_ptr<LangModule> make_module(const ModuleKey& key, const nlohmann::json& config, std::uint64_t seed);

inline constexpr int kCheckpointVersion = 1;

// Directory layout: manifest.json, modules/<key>.mbt, optim/<key>.mbt.
void save_checkpoint(const Registry& registry, const std::filesystem::path& dir);
/// Loads everything or throws; never returns a partial registry.
Registry load_checkpoint(const std::filesystem::path& dir);
/// Loads only `key` from a checkpoint into `registry`, replacing any existing entry.
void load_module(const std::filesystem::path& dir, const ModuleKey& key, Registry& registry);

std::filesystem::path module_file(const std::filesystem::path& dir, const ModuleKey& key);

}  // namespace zslt
