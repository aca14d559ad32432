#ifndef TEXMT_CORPUS_H_
#define TEXMT_CORPUS_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "texmt/errors.h"
#include "texmt/glossary.h"

namespace texmt {

// Splits punctuation off words. MATHnX and TERMkX placeholders stay whole.
// A period stays inside a word only between two letters or digits
// ("p.d.f." gives "p.d.f" and "."); likewise for an apostrophe between
// letters and a comma between digits. Runs of periods, `` and '' are one
// token each. Re-tokenizing the space-joined output gives the same list.
std::vector<std::string> WordTokenize(std::string_view text);
std::string JoinTokens(const std::vector<std::string>& tokens);

struct ParallelCorpus {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string provenance;

  std::size_t size() const { return pairs.size(); }
  std::vector<std::string> sources() const;
  std::vector<std::string> targets() const;
};

// One sentence per line in two aligned files.
ParallelCorpus ReadParallel(const std::string& source_path, const std::string& target_path);
// "source<TAB>target" per line.
ParallelCorpus ReadParallelTsv(const std::string& path);
void WriteParallel(const ParallelCorpus& c, const std::string& source_path, const std::string& target_path);
void WriteParallelTsv(const ParallelCorpus& c, const std::string& path);
std::vector<std::string> ReadLines(const std::string& path);

// Keeps the pairs whose source side holds at least `min_terms` glossary
// matches, in order.
ParallelCorpus FilterByGlossary(const ParallelCorpus& c, const Glossary& g, int min_terms = 2);

class BadRatiosError : public Error {
 public:
  explicit BadRatiosError(const std::string& what) : Error(what) {}
};

struct CorpusSplit {
  ParallelCorpus train, valid, test;
};

// Shuffles with a seeded Fisher-Yates pass, then cuts. The validation and
// test sizes are floor(ratio * N); the remainder goes to train.
CorpusSplit ShuffleSplit(const ParallelCorpus& c, std::array<double, 3> ratios, std::uint64_t seed);
std::array<std::size_t, 3> SplitSizes(std::size_t n, std::array<double, 3> ratios);

// Distinct WordTokenize tokens over all sentences.
std::size_t VocabSize(const std::vector<std::string>& sentences, bool casefold = false);

}  // namespace texmt

#endif  // TEXMT_CORPUS_H_
