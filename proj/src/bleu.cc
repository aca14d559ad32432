#include "texmt/bleu.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "texmt/corpus.h"

namespace texmt {

namespace {

std::map<std::vector<std::string>, std::size_t> Ngrams(const TokenList& toks, int n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) ++counts[TokenList(toks.begin() + i, toks.begin() + i + n)];
  return counts;
}

void CheckCorpus(std::size_t hyps, std::size_t refs) {
  if (hyps != refs)
    throw BleuError(BleuError::Kind::kMismatchedLengths,
                    "hypothesis and reference counts differ: " + std::to_string(hyps) + " vs " +
                        std::to_string(refs));
  if (hyps == 0) throw BleuError(BleuError::Kind::kEmptyCorpus, "empty corpus");
}

}  // namespace

NgramCount ClippedNgramPrecision(const std::vector<TokenList>& hyps, const std::vector<TokenList>& refs, int n) {
  CheckCorpus(hyps.size(), refs.size());
  if (n < 1) throw Error("n-gram order must be positive");
  NgramCount out;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    auto ref = Ngrams(refs[s], n);
    for (const auto& [gram, count] : Ngrams(hyps[s], n)) {
      auto it = ref.find(gram);
      out.matches += std::min(count, it == ref.end() ? std::size_t{0} : it->second);
      out.total += count;
    }
  }
  return out;
}

BleuReport Bleu(const std::vector<TokenList>& hyps, const std::vector<TokenList>& refs, bool smooth) {
  CheckCorpus(hyps.size(), refs.size());
  BleuReport r;
  r.smoothed = smooth;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    r.hyp_len += hyps[s].size();
    r.ref_len += refs[s].size();
  }
  bool any_zero = false;
  double log_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    NgramCount c = ClippedNgramPrecision(hyps, refs, n);
    r.counts[n - 1] = c;
    double p;
    if (smooth && n >= 2) {
      p = static_cast<double>(c.matches + 1) / static_cast<double>(c.total + 1);
    } else {
      p = c.total == 0 ? 0.0 : static_cast<double>(c.matches) / static_cast<double>(c.total);
    }
    r.precisions[n - 1] = p;
    if (p == 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  if (r.hyp_len == 0) {
    r.brevity_penalty = 0.0;
  } else if (r.hyp_len > r.ref_len) {
    r.brevity_penalty = 1.0;
  } else {
    r.brevity_penalty = std::exp(1.0 - static_cast<double>(r.ref_len) / static_cast<double>(r.hyp_len));
  }
  r.score = any_zero ? 0.0 : r.brevity_penalty * std::exp(log_sum / 4.0);
  return r;
}

BleuReport BleuFromText(const std::vector<std::string>& hyps, const std::vector<std::string>& refs, bool smooth) {
  CheckCorpus(hyps.size(), refs.size());
  std::vector<TokenList> h, r;
  for (const std::string& s : hyps) h.push_back(WordTokenize(s));
  for (const std::string& s : refs) r.push_back(WordTokenize(s));
  return Bleu(h, r, smooth);
}

nlohmann::ordered_json BleuReport::ToJson() const {
  nlohmann::ordered_json j;
  j["bleu"] = score * 100.0;
  j["precisions"] = nlohmann::ordered_json::array();
  j["ngram_matches"] = nlohmann::ordered_json::array();
  j["ngram_totals"] = nlohmann::ordered_json::array();
  for (int i = 0; i < 4; ++i) {
    j["precisions"].push_back(precisions[i] * 100.0);
    j["ngram_matches"].push_back(counts[i].matches);
    j["ngram_totals"].push_back(counts[i].total);
  }
  j["brevity_penalty"] = brevity_penalty;
  j["hyp_len"] = hyp_len;
  j["ref_len"] = ref_len;
  j["smoothed"] = smoothed;
  return j;
}

}  // namespace texmt
