#include "texmt/router.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <thread>

#include "texmt/french.h"

namespace texmt {

double Perplexity(const std::vector<double>& logprobs) {
  if (logprobs.empty()) throw EmptyScoreListError();
  double sum = 0.0;
  for (double lp : logprobs) sum += lp;
  return std::exp(-sum / static_cast<double>(logprobs.size()));
}

const char* RouteName(Route r) {
  switch (r) {
    case Route::kPrimary: return "primary";
    case Route::kFallback: return "fallback";
    case Route::kPassthrough: return "passthrough";
  }
  return "primary";
}

const char* RouteReasonName(RouteReason r) {
  switch (r) {
    case RouteReason::kBelowThreshold: return "below_threshold";
    case RouteReason::kAboveThreshold: return "above_threshold";
    case RouteReason::kNoLogprobs: return "no_logprobs";
    case RouteReason::kTokenConservationFailure: return "token_conservation_failure";
    case RouteReason::kPrimaryError: return "primary_error";
  }
  return "below_threshold";
}

namespace {

std::string Join(const std::vector<std::string>& v) {
  std::string out;
  for (const std::string& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

TranslationResult Repaired(TranslationResult r, const Sentence& s, const MathTokenMap& map,
                           RouteOutcome& o) {
  TokenRepair fix = RepairTokens(s.text, r.text, map);
  r.text = std::move(fix.text);
  o.decision.repaired = true;
  std::string what = "repaired tokens from " + r.backend_id;
  if (!fix.appended.empty()) what += "; appended " + Join(fix.appended);
  if (!fix.removed.empty()) what += "; removed " + Join(fix.removed);
  if (!fix.unwrapped.empty()) what += "; unwrapped " + Join(fix.unwrapped);
  o.warnings.push_back(std::move(what));
  return r;
}

}  // namespace

RouteOutcome RouteSentence(const Sentence& sentence, const MathTokenMap& map, const Backend& primary,
                           const Backend* fallback, const RouterOptions& options) {
  RouteOutcome o;
  o.decision.threshold = options.threshold;
  BackendRequest req{sentence.text, options.source_lang, options.target_lang, true};

  std::optional<TranslationResult> first;
  try {
    first = primary.Translate(req);
  } catch (const BackendError& e) {
    o.decision.reason = RouteReason::kPrimaryError;
    o.warnings.push_back(std::string("primary backend failed (") + BackendErrorKindName(e.kind()) +
                         "): " + e.what());
  }
  if (first) {
    if (!first->token_logprobs || first->token_logprobs->empty()) {
      o.decision.reason = RouteReason::kNoLogprobs;
    } else {
      double ppl = Perplexity(*first->token_logprobs);
      first->perplexity = ppl;
      o.decision.perplexity = ppl;
      if (ppl > options.threshold) {
        o.decision.reason = RouteReason::kAboveThreshold;
      } else if (!TokensConserved(sentence.text, first->text, map)) {
        o.decision.reason = RouteReason::kTokenConservationFailure;
      } else {
        o.decision.chosen = Route::kPrimary;
        o.decision.reason = RouteReason::kBelowThreshold;
        o.result = std::move(*first);
        return o;
      }
    }
  }

  if (fallback) {
    try {
      TranslationResult fb = fallback->Translate(req);
      if (fb.token_logprobs && !fb.token_logprobs->empty())
        fb.perplexity = Perplexity(*fb.token_logprobs);
      o.decision.chosen = Route::kFallback;
      o.result = TokensConserved(sentence.text, fb.text, map) ? std::move(fb)
                                                              : Repaired(std::move(fb), sentence, map, o);
      return o;
    } catch (const BackendError& e) {
      o.warnings.push_back(std::string("fallback backend failed (") + BackendErrorKindName(e.kind()) +
                           "): " + e.what());
    }
  } else if (first) {
    // Nothing better to fall back on: keep the rejected primary output.
    o.warnings.push_back(std::string("no fallback backend; kept primary output (") +
                         RouteReasonName(o.decision.reason) + ")");
    o.decision.chosen = Route::kPrimary;
    o.result = TokensConserved(sentence.text, first->text, map) ? std::move(*first)
                                                                 : Repaired(std::move(*first), sentence, map, o);
    return o;
  }

  o.decision.chosen = Route::kPassthrough;
  o.result.text = sentence.text;
  o.result.backend_id = "passthrough";
  o.warnings.push_back("sentence left untranslated");
  return o;
}

std::size_t RoutingReport::fallback_count() const {
  return static_cast<std::size_t>(std::count_if(sentences.begin(), sentences.end(), [](const SentenceRecord& r) {
    return r.decision.reason != RouteReason::kBelowThreshold;
  }));
}

double RoutingReport::fallback_fraction() const {
  return sentences.empty() ? 0.0 : static_cast<double>(fallback_count()) / static_cast<double>(total());
}

nlohmann::ordered_json RoutingReport::ToJson() const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["total"] = total();
  j["fallback_count"] = fallback_count();
  j["fallback_fraction"] = fallback_fraction();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const SentenceRecord& r : sentences) {
    nlohmann::ordered_json s;
    s["id"] = r.id;
    s["block"] = r.block;
    s["perplexity"] = r.decision.perplexity ? nlohmann::ordered_json(*r.decision.perplexity)
                                            : nlohmann::ordered_json(nullptr);
    s["threshold"] = r.decision.threshold;
    s["chosen"] = RouteName(r.decision.chosen);
    s["reason"] = RouteReasonName(r.decision.reason);
    s["repaired"] = r.decision.repaired;
    s["backend"] = r.backend;
    s["source"] = r.source;
    s["output"] = r.output;
    list.push_back(std::move(s));
  }
  j["sentences"] = std::move(list);
  j["warnings"] = warnings;
  return j;
}

namespace {

struct Unit {
  Inlines* inlines;
  int block;
  std::vector<std::string> tokens;
  std::size_t first_sentence = 0;
  std::size_t sentence_count = 0;
};

void CollectUnits(Blocks& blocks, const ParserConfig& config, std::vector<Unit>& out) {
  for (Block& b : blocks) {
    if (b.is<Paragraph>()) {
      out.push_back({&b.as<Paragraph>().inlines, static_cast<int>(out.size()), {}});
    } else if (b.is<Heading>()) {
      out.push_back({&b.as<Heading>().inlines, static_cast<int>(out.size()), {}});
    } else if (b.is<ListBlock>()) {
      for (ListItem& item : b.as<ListBlock>().items) CollectUnits(item.blocks, config, out);
    } else if (b.is<EnvironmentBlock>()) {
      EnvironmentBlock& env = b.as<EnvironmentBlock>();
      if (!config.untranslated_environments.count(env.name)) CollectUnits(env.blocks, config, out);
    }
  }
}

// True if the sentence has letters outside its MATHnX tokens.
bool HasWords(const std::string& text) {
  std::size_t last = 0;
  auto has_letter = [](std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
    });
  };
  for (const TokenMatch& m : FindTokens(text)) {
    if (has_letter(std::string_view(text).substr(last, m.pos - last))) return true;
    last = m.pos + m.len;
  }
  return has_letter(std::string_view(text).substr(last));
}

}  // namespace

TranslatedDocument TranslateDocument(const DocumentAst& ast, const Backend& primary, const Backend* fallback,
                                     const TranslateOptions& options) {
  TranslatedDocument out;
  out.ast = ast;
  std::vector<Unit> units;
  CollectUnits(out.ast.blocks, options.parser, units);

  // Tokenize and segment sequentially so that token indices follow
  // document order.
  std::vector<Sentence> sentences;
  std::vector<std::string> unit_texts(units.size());
  for (std::size_t u = 0; u < units.size(); ++u) {
    Unit& unit = units[u];
    unit.first_sentence = sentences.size();
    if (!HasTranslatableText(*unit.inlines)) continue;
    std::string text = JoinInlines(TokenizeMath(*unit.inlines, out.map));
    SegmentOptions seg;
    seg.abbreviations = options.abbreviations;
    seg.map = &out.map;
    unit.tokens = TokenNamesIn(text);
    if (options.display_math_ends_sentence) {
      for (const std::string& name : unit.tokens) {
        if (out.map.Find(name)->kind == TokenKind::kDisplay) seg.break_after.insert(name);
      }
    }
    for (Sentence& s : SegmentSentences(text, unit.block, seg)) sentences.push_back(std::move(s));
    unit.sentence_count = sentences.size() - unit.first_sentence;
    unit_texts[u] = std::move(text);
  }

  std::vector<RouteOutcome> outcomes(sentences.size());
  std::vector<bool> routed(sentences.size(), false);
  for (std::size_t i = 0; i < sentences.size(); ++i) routed[i] = HasWords(sentences[i].text);

  int limit = std::max(1, options.concurrency);
  for (const Backend* b : {&primary, fallback}) {
    if (b && b->max_concurrency() > 0) limit = std::min(limit, b->max_concurrency());
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sentences.size(); i = next++) {
      if (routed[i]) outcomes[i] = RouteSentence(sentences[i], out.map, primary, fallback, options.router);
    }
  };
  std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(limit), sentences.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  int id = 0;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (!routed[i]) {
      outcomes[i].result.text = sentences[i].text;
      continue;
    }
    SentenceRecord rec;
    rec.id = ++id;
    rec.block = sentences[i].source_block;
    rec.source = sentences[i].text;
    rec.output = outcomes[i].result.text;
    rec.backend = outcomes[i].result.backend_id;
    rec.decision = outcomes[i].decision;
    for (const std::string& w : outcomes[i].warnings)
      out.report.warnings.push_back("sentence " + std::to_string(rec.id) + ": " + w);
    out.report.sentences.push_back(std::move(rec));
  }

  for (std::size_t u = 0; u < units.size(); ++u) {
    const Unit& unit = units[u];
    if (unit.sentence_count == 0) continue;
    std::string translated;
    for (std::size_t i = unit.first_sentence; i < unit.first_sentence + unit.sentence_count; ++i)
      translated += (translated.empty() ? "" : " ") + outcomes[i].result.text;
    if (options.french_quotes) {
      QuoteConversion q = ConvertQuotes(translated);
      if (q.unbalanced > 0)
        out.report.warnings.push_back("block " + std::to_string(unit.block) + ": " +
                                      std::to_string(q.unbalanced) + " unbalanced quote mark(s) left as is");
      translated = std::move(q.text);
    }
    try {
      *unit.inlines = Detokenize(translated, out.map, unit.tokens, options.parser);
    } catch (const TokenError& e) {
      out.report.warnings.push_back("block " + std::to_string(unit.block) +
                                    ": kept source text, " + e.what());
    }
  }
  return out;
}

}  // namespace texmt
