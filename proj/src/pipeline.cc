#include "texmt/pipeline.h"

#include <cstdlib>
#include <fstream>

#include "texmt/french.h"
#include "texmt/latex.h"

namespace texmt {

namespace {

const char* Env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

long ParseLong(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(what + ": not an integer: " + s);
}

}  // namespace

void PipelineConfig::Validate() const {
  if (!(threshold > 0.0)) throw ConfigError("threshold must be positive");
  if (primary.empty() && fallback.empty()) throw ConfigError("no backend configured");
  if (concurrency < 1) throw ConfigError("concurrency must be at least 1");
}

PipelineConfig PipelineConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("pipeline config must be a JSON object");
  PipelineConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "source_lang") c.source_lang = v.get<std::string>();
      else if (key == "target_lang") c.target_lang = v.get<std::string>();
      else if (key == "primary") c.primary = v.get<std::string>();
      else if (key == "fallback") c.fallback = v.get<std::string>();
      else if (key == "threshold") c.threshold = v.get<double>();
      else if (key == "glossary_path") c.glossary_path = v.get<std::string>();
      else if (key == "concurrency") c.concurrency = v.get<int>();
      else if (key == "dump_intermediate") c.dump_intermediate = v.get<bool>();
      else if (key == "french_conventions") c.french_conventions = v.get<bool>();
      else if (key == "display_math_ends_sentence") c.display_math_ends_sentence = v.get<bool>();
      else if (key == "parser_config_path") c.parser_config_path = v.get<std::string>();
      else if (key == "abbreviations_path") c.abbreviations_path = v.get<std::string>();
      else if (key == "timeout_ms") c.http.timeout = std::chrono::milliseconds(v.get<long>());
      else if (key == "retries") c.http.retries = v.get<int>();
      else if (key == "api_key") c.http.api_key = v.get<std::string>();
      else if (key == "max_concurrency") c.http.max_concurrency = v.get<int>();
      else throw ConfigError("unknown config key: " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON: " + path);
  return FromJson(j);
}

void PipelineConfig::ApplyEnvironment() {
  if (primary.empty()) {
    if (const char* v = Env("TEXMT_BACKEND_URL")) primary = v;
  }
  if (fallback.empty()) {
    if (const char* v = Env("TEXMT_FALLBACK_URL")) fallback = v;
  }
  if (http.api_key.empty()) {
    if (const char* v = Env("TEXMT_API_KEY")) http.api_key = v;
  }
  if (const char* v = Env("TEXMT_TIMEOUT_MS")) {
    if (http.timeout == HttpOptions{}.timeout) http.timeout = std::chrono::milliseconds(ParseLong(v, "TEXMT_TIMEOUT_MS"));
  }
  if (const char* v = Env("TEXMT_RETRIES")) {
    if (http.retries == HttpOptions{}.retries) http.retries = static_cast<int>(ParseLong(v, "TEXMT_RETRIES"));
  }
}

std::shared_ptr<const Backend> MakeBackend(const std::string& spec, const HttpOptions& http) {
  if (spec == "identity") return std::make_shared<IdentityBackend>();
  if (spec.rfind("mock:", 0) == 0) return MockDictionaryBackend::Load(spec.substr(5));
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
    HttpOptions o = http;
    o.url = spec;
    return std::make_shared<HttpBackend>(o);
  }
  throw ConfigError("unknown backend spec '" + spec + "' (expected identity, mock:PATH or an http(s) URL)");
}

PipelineResult TranslateTex(std::string_view source, const PipelineConfig& config, const Backend& primary,
                            const Backend* fallback) {
  config.Validate();
  TranslateOptions opts;
  opts.router.threshold = config.threshold;
  opts.router.source_lang = config.source_lang;
  opts.router.target_lang = config.target_lang;
  opts.concurrency = config.concurrency;
  opts.display_math_ends_sentence = config.display_math_ends_sentence;
  const bool french = config.french_conventions && config.target_lang == "fr";
  opts.french_quotes = french;
  if (!config.parser_config_path.empty()) opts.parser = ParserConfig::Load(config.parser_config_path);
  Abbreviations abbreviations;
  if (!config.abbreviations_path.empty()) {
    abbreviations = Abbreviations::Load(config.abbreviations_path);
    opts.abbreviations = &abbreviations;
  }

  DocumentAst ast = ParseDocument(source, opts.parser);
  PipelineResult r;
  r.doc = TranslateDocument(ast, primary, fallback, opts);
  if (french) {
    if (r.doc.ast.has_document_env) {
      try {
        r.doc.ast = AddFrenchPreamble(r.doc.ast);
      } catch (const NoDocumentClassError&) {
        r.doc.report.warnings.push_back("no \\documentclass in preamble; French packages not added");
      }
    }
  }
  r.output = RenderDocument(r.doc.ast);
  r.warnings = r.doc.report.warnings;
  return r;
}

PipelineResult TranslateTex(std::string_view source, const PipelineConfig& config) {
  config.Validate();
  std::string primary_spec = config.primary.empty() ? config.fallback : config.primary;
  std::string fallback_spec = config.primary.empty() ? "" : config.fallback;
  std::shared_ptr<const Backend> primary = MakeBackend(primary_spec, config.http);
  if (!config.glossary_path.empty()) {
    auto glossary = std::make_shared<const Glossary>(Glossary::Load(config.glossary_path));
    primary = std::make_shared<GlossaryWrappedBackend>(primary, glossary);
  }
  std::shared_ptr<const Backend> fallback;
  if (!fallback_spec.empty()) fallback = MakeBackend(fallback_spec, config.http);
  return TranslateTex(source, config, *primary, fallback.get());
}

nlohmann::ordered_json IntermediateJson(const TranslatedDocument& doc) {
  nlohmann::ordered_json j;
  j["tokens"] = doc.map.ToJson();
  j["sentences"] = nlohmann::ordered_json::array();
  for (const SentenceRecord& s : doc.report.sentences) {
    j["sentences"].push_back({{"id", s.id}, {"block", s.block}, {"source", s.source}, {"output", s.output}});
  }
  return j;
}

}  // namespace texmt
