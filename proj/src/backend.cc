#include "texmt/backend.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "texmt/router.h"

namespace texmt {

const char* BackendErrorKindName(BackendError::Kind kind) {
  switch (kind) {
    case BackendError::Kind::kTimeout: return "timeout";
    case BackendError::Kind::kUnreachable: return "unreachable";
    case BackendError::Kind::kMalformedResponse: return "malformed_response";
    case BackendError::Kind::kInvalidRequest: return "invalid_request";
  }
  return "unknown";
}

void ValidateRequest(const BackendRequest& req) {
  if (req.text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw BackendError(BackendError::Kind::kInvalidRequest, "empty translation request");
}

namespace {

bool IsBlank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsBlank(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !IsBlank(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

void FillScores(TranslationResult& r) {
  if (r.token_logprobs && !r.token_logprobs->empty()) r.perplexity = Perplexity(*r.token_logprobs);
}

bool IsPlaceholder(std::string_view w) {
  for (const char* prefix : {"MATH", "TERM"}) {
    if (w.size() < 6 || w.substr(0, 4) != prefix || w.back() != 'X') continue;
    std::string_view digits = w.substr(4, w.size() - 5);
    if (std::all_of(digits.begin(), digits.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      return true;
  }
  return false;
}

constexpr std::string_view kLeadPunct = "([{`'\"";
constexpr std::string_view kTrailPunct = ".,;:!?)]}'\"";

struct Word {
  std::string lead, core, trail;
};

Word SplitPunct(const std::string& w) {
  Word out;
  std::size_t b = 0, e = w.size();
  while (b < e && kLeadPunct.find(w[b]) != std::string_view::npos) ++b;
  while (e > b && kTrailPunct.find(w[e - 1]) != std::string_view::npos) --e;
  out.lead = w.substr(0, b);
  out.core = w.substr(b, e - b);
  out.trail = w.substr(e);
  return out;
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Lower-cased key with surrounding punctuation removed from every word.
std::string NormalizeKey(const std::string& phrase) {
  std::string key;
  for (const std::string& w : SplitWords(phrase)) {
    if (!key.empty()) key += ' ';
    key += Lower(SplitPunct(w).core);
  }
  return key;
}

bool StartsUpper(std::string_view s) {
  if (s.empty()) return false;
  unsigned char c = s[0];
  if (c >= 'A' && c <= 'Z') return true;
  return c == 0xC3 && s.size() > 1 && static_cast<unsigned char>(s[1]) >= 0x80 &&
         static_cast<unsigned char>(s[1]) <= 0x9E;
}

std::string Capitalize(std::string s) {
  if (s.empty()) return s;
  unsigned char c = s[0];
  if (c >= 'a' && c <= 'z') {
    s[0] = static_cast<char>(std::toupper(c));
  } else if (c == 0xC3 && s.size() > 1) {
    unsigned char d = s[1];
    if (d >= 0xA0 && d <= 0xBE && d != 0xB7) s[1] = static_cast<char>(d - 0x20);
  }
  return s;
}

}  // namespace

TranslationResult IdentityBackend::Translate(const BackendRequest& req) const {
  ValidateRequest(req);
  TranslationResult r;
  r.text = req.text;
  r.backend_id = id();
  if (with_logprobs_ && req.want_logprobs) {
    r.token_logprobs = std::vector<double>(SplitWords(req.text).size(), logprob_);
    FillScores(r);
  }
  return r;
}

MockDictionaryBackend::MockDictionaryBackend(MockOptions options) {
  std::map<std::string, std::string> normalized;
  for (auto& [k, v] : options.entries) {
    std::string key = NormalizeKey(k);
    if (key.empty()) continue;
    max_phrase_words_ = std::max<std::size_t>(max_phrase_words_, SplitWords(key).size());
    normalized.emplace(std::move(key), std::move(v));
  }
  options.entries = std::move(normalized);
  options_ = std::move(options);
}

MockOptions MockDictionaryBackend::OptionsFromJson(const nlohmann::json& j) {
  MockOptions o;
  o.id = j.value("id", o.id);
  if (j.contains("entries"))
    o.entries = j.at("entries").get<std::map<std::string, std::string>>();
  o.known_logprob = j.value("known_logprob", o.known_logprob);
  o.unknown_logprob = j.value("unknown_logprob", o.unknown_logprob);
  o.with_logprobs = j.value("logprobs", o.with_logprobs);
  if (j.contains("overrides")) {
    for (const auto& [text, v] : j.at("overrides").items()) {
      MockOverride ov;
      if (v.contains("text")) ov.text = v.at("text").get<std::string>();
      if (v.contains("logprobs")) {
        if (v.at("logprobs").is_null()) {
          ov.no_logprobs = true;
        } else {
          ov.logprobs = v.at("logprobs").get<std::vector<double>>();
        }
      }
      if (v.contains("error")) {
        std::string e = v.at("error").get<std::string>();
        if (e == "timeout") {
          ov.error = BackendError::Kind::kTimeout;
        } else if (e == "unreachable") {
          ov.error = BackendError::Kind::kUnreachable;
        } else {
          ov.error = BackendError::Kind::kMalformedResponse;
        }
      }
      o.overrides.emplace(text, std::move(ov));
    }
  }
  return o;
}

std::unique_ptr<MockDictionaryBackend> MockDictionaryBackend::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open mock dictionary: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string body = buf.str();
  std::size_t first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '{') {
    try {
      return std::make_unique<MockDictionaryBackend>(OptionsFromJson(nlohmann::json::parse(body)));
    } catch (const nlohmann::json::exception& e) {
      throw Error("bad mock dictionary " + path + ": " + e.what());
    }
  }
  MockOptions o;
  Glossary tsv = Glossary::Parse(body);
  for (const GlossaryEntry& e : tsv.entries()) o.entries.emplace(e.source, e.target);
  return std::make_unique<MockDictionaryBackend>(std::move(o));
}

TranslationResult MockDictionaryBackend::Translate(const BackendRequest& req) const {
  ValidateRequest(req);
  const MockOverride* ov = nullptr;
  if (auto it = options_.overrides.find(req.text); it != options_.overrides.end()) ov = &it->second;
  if (ov && ov->error) throw BackendError(*ov->error, "mock backend error for: " + req.text);

  TranslationResult r;
  r.backend_id = id();
  std::vector<double> scores;
  std::vector<std::string> out;
  std::vector<std::string> words = SplitWords(req.text);
  std::vector<Word> parts;
  for (const std::string& w : words) parts.push_back(SplitPunct(w));

  for (std::size_t i = 0; i < words.size();) {
    bool hit = false;
    for (std::size_t n = std::min(max_phrase_words_, words.size() - i); n >= 1 && !hit; --n) {
      std::string key;
      bool clean = true;
      for (std::size_t k = i; k < i + n; ++k) {
        if ((k > i && !parts[k].lead.empty()) || (k + 1 < i + n && !parts[k].trail.empty()) ||
            parts[k].core.empty()) {
          clean = false;
          break;
        }
        if (!key.empty()) key += ' ';
        key += Lower(parts[k].core);
      }
      if (!clean) continue;
      auto it = options_.entries.find(key);
      if (it == options_.entries.end()) continue;
      std::string target = StartsUpper(parts[i].core) ? Capitalize(it->second) : it->second;
      std::vector<std::string> tw = SplitWords(target);
      if (tw.empty()) {
        if (!parts[i].lead.empty() || !parts[i + n - 1].trail.empty())
          tw.push_back(parts[i].lead + parts[i + n - 1].trail);
      } else {
        tw.front() = parts[i].lead + tw.front();
        tw.back() += parts[i + n - 1].trail;
      }
      for (std::string& w : tw) {
        out.push_back(std::move(w));
        scores.push_back(options_.known_logprob);
      }
      i += n;
      hit = true;
    }
    if (!hit) {
      out.push_back(words[i]);
      scores.push_back(IsPlaceholder(parts[i].core) ? 0.0 : options_.unknown_logprob);
      ++i;
    }
  }
  for (const std::string& w : out) r.text += (r.text.empty() ? "" : " ") + w;

  if (ov && ov->text) r.text = *ov->text;
  if (options_.with_logprobs && req.want_logprobs && !(ov && ov->no_logprobs)) {
    if (ov && ov->logprobs) {
      r.token_logprobs = ov->logprobs;
    } else if (ov && ov->text) {
      r.token_logprobs = std::vector<double>(SplitWords(r.text).size(), options_.known_logprob);
    } else {
      r.token_logprobs = std::move(scores);
    }
    FillScores(r);
  }
  return r;
}

HttpBackend::HttpBackend(HttpOptions options) : options_(std::move(options)) {
  std::size_t scheme_end = options_.url.find("://");
  if (scheme_end == std::string::npos)
    throw BackendError(BackendError::Kind::kInvalidRequest, "backend URL needs a scheme: " + options_.url);
  std::size_t path_start = options_.url.find('/', scheme_end + 3);
  scheme_host_port_ = options_.url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : options_.url.substr(path_start);
}

nlohmann::ordered_json HttpBackend::RequestBody(const BackendRequest& req) {
  return nlohmann::ordered_json{{"src", req.source_lang},
                                {"tgt", req.target_lang},
                                {"text", req.text},
                                {"logprobs", req.want_logprobs}};
}

TranslationResult HttpBackend::ParseResponse(const std::string& body, const std::string& backend_id) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw BackendError(BackendError::Kind::kMalformedResponse, std::string("response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("text") || !j.at("text").is_string())
    throw BackendError(BackendError::Kind::kMalformedResponse, "response lacks a \"text\" string");
  TranslationResult r;
  r.backend_id = backend_id;
  r.text = j.at("text").get<std::string>();
  if (j.contains("token_logprobs") && !j.at("token_logprobs").is_null()) {
    const nlohmann::json& lp = j.at("token_logprobs");
    if (!lp.is_array())
      throw BackendError(BackendError::Kind::kMalformedResponse, "\"token_logprobs\" is not an array");
    std::vector<double> v;
    for (const nlohmann::json& x : lp) {
      if (!x.is_number())
        throw BackendError(BackendError::Kind::kMalformedResponse, "non-numeric log-probability");
      double d = x.get<double>();
      if (!std::isfinite(d) || d > 1e-9)
        throw BackendError(BackendError::Kind::kMalformedResponse,
                           "log-probability out of range: " + x.dump());
      v.push_back(std::min(d, 0.0));
    }
    r.token_logprobs = std::move(v);
    FillScores(r);
  }
  return r;
}

TranslationResult HttpBackend::Translate(const BackendRequest& req) const {
  ValidateRequest(req);
  const std::string body = RequestBody(req).dump();
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace(options_.api_key_header, options_.api_key_header == "Authorization"
                                                 ? "Bearer " + options_.api_key
                                                 : options_.api_key);
  }
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout);

  BackendError last(BackendError::Kind::kUnreachable, "no attempt made");
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.retry_backoff * attempt);
    httplib::Client cli(scheme_host_port_);
    if (!cli.is_valid())
      throw BackendError(BackendError::Kind::kUnreachable,
                         "unsupported backend URL (https needs OpenSSL): " + options_.url);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    httplib::Result res = cli.Post(path_, headers, body, "application/json");
    if (!res) {
      httplib::Error err = res.error();
      bool timed_out = err == httplib::Error::Read || err == httplib::Error::Write ||
                       err == httplib::Error::ConnectionTimeout;
      last = BackendError(timed_out ? BackendError::Kind::kTimeout : BackendError::Kind::kUnreachable,
                          options_.url + ": " + httplib::to_string(err));
      continue;
    }
    if (res->status >= 500) {
      last = BackendError(BackendError::Kind::kUnreachable,
                          options_.url + ": HTTP " + std::to_string(res->status));
      continue;
    }
    if (res->status != 200)
      throw BackendError(BackendError::Kind::kInvalidRequest,
                         options_.url + ": HTTP " + std::to_string(res->status));
    return ParseResponse(res->body, id());
  }
  throw last;
}

TranslationResult GlossaryWrappedBackend::Translate(const BackendRequest& req) const {
  ProtectedText p = ProtectTerms(req.text, *glossary_);
  BackendRequest inner_req = req;
  inner_req.text = p.text;
  TranslationResult r = inner_->Translate(inner_req);
  r.text = UnprotectTerms(r.text, p.restore);
  r.backend_id = id();
  return r;
}

}  // namespace texmt
