#ifndef TEXMT_ROUTER_H_
#define TEXMT_ROUTER_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "texmt/ast.h"
#include "texmt/backend.h"
#include "texmt/math_tokens.h"
#include "texmt/parser_config.h"
#include "texmt/sentences.h"

namespace texmt {

class EmptyScoreListError : public Error {
 public:
  EmptyScoreListError() : Error("perplexity of an empty score list") {}
};

// exp(-mean(logprobs)).
double Perplexity(const std::vector<double>& logprobs);

constexpr double kDefaultThreshold = 2.05;

enum class Route { kPrimary, kFallback, kPassthrough };
enum class RouteReason {
  kBelowThreshold,
  kAboveThreshold,
  kNoLogprobs,
  kTokenConservationFailure,
  kPrimaryError,
};

const char* RouteName(Route r);
const char* RouteReasonName(RouteReason r);

struct RoutingDecision {
  Route chosen = Route::kPrimary;
  RouteReason reason = RouteReason::kBelowThreshold;
  double threshold = kDefaultThreshold;
  std::optional<double> perplexity;  // of the primary result
  bool repaired = false;             // tokens were patched into the output
};

struct RouterOptions {
  double threshold = kDefaultThreshold;
  std::string source_lang = "en";
  std::string target_lang = "fr";
};

struct RouteOutcome {
  TranslationResult result;
  RoutingDecision decision;
  std::vector<std::string> warnings;
};

// Sends a sentence to `primary` and keeps its output iff the perplexity is
// <= threshold and the MATHnX tokens are conserved. Otherwise the sentence
// goes to `fallback` (which may be null). If the fallback output loses
// tokens they are repaired; if no usable output exists at all the source
// sentence is passed through untranslated. Never throws BackendError.
RouteOutcome RouteSentence(const Sentence& sentence, const MathTokenMap& map, const Backend& primary,
                           const Backend* fallback, const RouterOptions& options = {});

struct SentenceRecord {
  int id = 0;
  int block = 0;
  std::string source;
  std::string output;
  std::string backend;
  RoutingDecision decision;
};

struct RoutingReport {
  std::vector<SentenceRecord> sentences;
  std::vector<std::string> warnings;

  std::size_t total() const { return sentences.size(); }
  // Sentences whose primary output was rejected.
  std::size_t fallback_count() const;
  double fallback_fraction() const;
  nlohmann::ordered_json ToJson() const;
};

struct TranslateOptions {
  RouterOptions router;
  int concurrency = 4;
  // Display formulas inside a paragraph end the sentence they close.
  bool display_math_ends_sentence = false;
  // Rewrite ``...'' as \og ...\fg{} in translated text.
  bool french_quotes = false;
  const Abbreviations* abbreviations = &Abbreviations::Defaults();
  ParserConfig parser = ParserConfig::Defaults();
};

struct TranslatedDocument {
  DocumentAst ast;
  RoutingReport report;
  MathTokenMap map;
};

// Translates every translatable block of `ast` sentence by sentence and
// puts the results back in place. Backend calls run on up to
// `concurrency` threads; results are reassembled in document order.
TranslatedDocument TranslateDocument(const DocumentAst& ast, const Backend& primary,
                                     const Backend* fallback, const TranslateOptions& options = {});

}  // namespace texmt

#endif  // TEXMT_ROUTER_H_
