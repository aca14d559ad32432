#ifndef TEXMT_BLEU_H_
#define TEXMT_BLEU_H_

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "texmt/errors.h"

namespace texmt {

class BleuError : public Error {
 public:
  enum class Kind { kEmptyCorpus, kMismatchedLengths };
  BleuError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

using TokenList = std::vector<std::string>;

struct NgramCount {
  std::size_t matches = 0;
  std::size_t total = 0;
};

// Sum over sentence pairs of hypothesis n-gram counts clipped by the
// reference counts, and of hypothesis n-gram counts.
NgramCount ClippedNgramPrecision(const std::vector<TokenList>& hyps, const std::vector<TokenList>& refs, int n);

struct BleuReport {
  std::array<NgramCount, 4> counts;
  std::array<double, 4> precisions{};
  double brevity_penalty = 0.0;
  double score = 0.0;  // in [0, 1]
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  bool smoothed = false;

  nlohmann::ordered_json ToJson() const;
};

// Corpus BLEU with one reference per hypothesis. Without smoothing a zero
// n-gram precision gives a score of 0; with it, add-one smoothing applies
// to n >= 2.
BleuReport Bleu(const std::vector<TokenList>& hyps, const std::vector<TokenList>& refs, bool smooth = false);
// Tokenizes both sides with WordTokenize first.
BleuReport BleuFromText(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                        bool smooth = false);

}  // namespace texmt

#endif  // TEXMT_BLEU_H_
