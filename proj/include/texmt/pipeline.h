#ifndef TEXMT_PIPELINE_H_
#define TEXMT_PIPELINE_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "texmt/backend.h"
#include "texmt/router.h"

namespace texmt {

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Everything the translate command needs. Backend specs are "identity",
// "mock:PATH" (dictionary file for MockDictionaryBackend) or an http(s) URL.
struct PipelineConfig {
  std::string source_lang = "en";
  std::string target_lang = "fr";
  std::string primary;
  std::string fallback;
  double threshold = kDefaultThreshold;
  std::string glossary_path;  // wraps the primary backend when set
  int concurrency = 4;
  bool dump_intermediate = false;
  bool french_conventions = true;
  bool display_math_ends_sentence = false;
  std::string parser_config_path;
  std::string abbreviations_path;
  HttpOptions http;  // url is ignored; timeouts, retries and key apply to every HTTP backend

  // Throws ConfigError when the threshold is not positive or no backend is
  // configured.
  void Validate() const;
  // Keys mirror the field names; "timeout_ms", "retries", "api_key" set the
  // HTTP options. Unknown keys are errors.
  static PipelineConfig FromJson(const nlohmann::json& j);
  static PipelineConfig Load(const std::string& path);
  // TEXMT_BACKEND_URL, TEXMT_FALLBACK_URL, TEXMT_API_KEY, TEXMT_TIMEOUT_MS,
  // TEXMT_RETRIES. Only fills fields that are still unset or default.
  void ApplyEnvironment();
};

std::shared_ptr<const Backend> MakeBackend(const std::string& spec, const HttpOptions& http);

struct PipelineResult {
  std::string output;
  TranslatedDocument doc;
  // Report warnings plus pipeline-level ones (missing \documentclass, ...).
  std::vector<std::string> warnings;
};

// Parse, translate, apply French conventions, render. Throws ParseError
// for malformed input.
PipelineResult TranslateTex(std::string_view source, const PipelineConfig& config);

// Same as TranslateTex with ready-made backends.
PipelineResult TranslateTex(std::string_view source, const PipelineConfig& config, const Backend& primary,
                            const Backend* fallback);

// {"tokens": <token map>, "sentences": [{"id", "block", "source", "output"}]}
nlohmann::ordered_json IntermediateJson(const TranslatedDocument& doc);

}  // namespace texmt

#endif  // TEXMT_PIPELINE_H_
