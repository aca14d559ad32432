#ifndef TEXMT_BACKEND_H_
#define TEXMT_BACKEND_H_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "texmt/errors.h"
#include "texmt/glossary.h"

namespace texmt {

struct BackendRequest {
  std::string text;
  std::string source_lang = "en";
  std::string target_lang = "fr";
  bool want_logprobs = true;
};

struct TranslationResult {
  std::string text;
  // Natural-log probabilities of each scored output unit, all <= 0.
  std::optional<std::vector<double>> token_logprobs;
  std::optional<double> perplexity;
  std::string backend_id;
};

class BackendError : public Error {
 public:
  enum class Kind { kTimeout, kUnreachable, kMalformedResponse, kInvalidRequest };
  BackendError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* BackendErrorKindName(BackendError::Kind kind);

// A translation engine. Implementations must be safe to call from several
// threads at once, or report max_concurrency() == 1.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual TranslationResult Translate(const BackendRequest& req) const = 0;
  virtual std::string id() const = 0;
  // 0 means no limit.
  virtual int max_concurrency() const { return 0; }
};

// Throws BackendError(kInvalidRequest) for blank text.
void ValidateRequest(const BackendRequest& req);

// Returns the input unchanged; every output word scores `logprob`.
class IdentityBackend : public Backend {
 public:
  explicit IdentityBackend(bool with_logprobs = true, double logprob = 0.0)
      : with_logprobs_(with_logprobs), logprob_(logprob) {}
  TranslationResult Translate(const BackendRequest& req) const override;
  std::string id() const override { return "identity"; }

 private:
  bool with_logprobs_;
  double logprob_;
};

// Per-sentence behavior that replaces the dictionary lookup.
struct MockOverride {
  std::optional<std::string> text;
  std::optional<std::vector<double>> logprobs;
  bool no_logprobs = false;
  std::optional<BackendError::Kind> error;
};

struct MockOptions {
  std::string id = "mock";
  // Lower-case source word or phrase -> target text.
  std::map<std::string, std::string> entries;
  double known_logprob = -0.1;
  double unknown_logprob = -1.0;
  bool with_logprobs = true;
  // Keyed by the exact request text.
  std::map<std::string, MockOverride> overrides;
};

// Deterministic word-for-word translator for tests. Phrases are matched
// longest-first on whitespace-separated words, ignoring case and the
// punctuation around each word; unknown words (including MATHnX and TERMkX
// placeholders) pass through unchanged. An initial capital is carried over
// to the translation. Each output word gets known_logprob if it came from
// the dictionary, unknown_logprob otherwise, and 0 for placeholders.
class MockDictionaryBackend : public Backend {
 public:
  explicit MockDictionaryBackend(MockOptions options);
  // JSON object {"id", "entries", "known_logprob", "unknown_logprob",
  // "logprobs", "overrides"}, or a TSV "source<TAB>target" file.
  static std::unique_ptr<MockDictionaryBackend> Load(const std::string& path);
  static MockOptions OptionsFromJson(const nlohmann::json& j);

  TranslationResult Translate(const BackendRequest& req) const override;
  std::string id() const override { return options_.id; }

 private:
  MockOptions options_;
  std::size_t max_phrase_words_ = 1;
};

struct HttpOptions {
  std::string url;  // http[s]://host[:port]/path
  std::chrono::milliseconds timeout{30000};
  int retries = 2;  // extra attempts after a timeout or connection failure
  std::chrono::milliseconds retry_backoff{200};
  std::string api_key;
  std::string api_key_header = "Authorization";  // value sent as "Bearer <key>"
  int max_concurrency = 0;
};

// JSON-over-HTTP client. POSTs {"src","tgt","text","logprobs"} and expects
// {"text": "...", "token_logprobs": [...] | null}.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpOptions options);
  TranslationResult Translate(const BackendRequest& req) const override;
  std::string id() const override { return "http:" + options_.url; }
  int max_concurrency() const override { return options_.max_concurrency; }

  // Exposed for tests.
  static nlohmann::ordered_json RequestBody(const BackendRequest& req);
  static TranslationResult ParseResponse(const std::string& body, const std::string& backend_id);

 private:
  HttpOptions options_;
  std::string scheme_host_port_;
  std::string path_;
};

// Masks glossary terms as TERMkX before calling `inner` and replaces the
// placeholders in its output with the target terms.
class GlossaryWrappedBackend : public Backend {
 public:
  GlossaryWrappedBackend(std::shared_ptr<const Backend> inner, std::shared_ptr<const Glossary> glossary)
      : inner_(std::move(inner)), glossary_(std::move(glossary)) {}
  TranslationResult Translate(const BackendRequest& req) const override;
  std::string id() const override { return "glossary+" + inner_->id(); }
  int max_concurrency() const override { return inner_->max_concurrency(); }

 private:
  std::shared_ptr<const Backend> inner_;
  std::shared_ptr<const Glossary> glossary_;
};

}  // namespace texmt

#endif  // TEXMT_BACKEND_H_
