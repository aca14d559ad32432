// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "inline_generator.h"
#include "planted_corpus.h"
#include "texmt/bleu.h"
#include "texmt/corpus.h"
#include "texmt/french.h"
#include "texmt/latex.h"
#include "texmt/pipeline.h"

namespace texmt {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Collects failed checks for one criterion.
class Check {
 public:
  void That(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

// ---- AC1: parse/render round trip on the fixture corpus ----

void Ac1(Check& c) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(TEXMT_FIXTURES "/corpus"))
    if (e.path().extension() == ".tex") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  c.That(files.size() >= 20, "fewer than 20 fixture documents");

  std::set<std::string> features;
  auto start = Clock::now();
  for (const std::string& f : files) {
    std::string src = Slurp(f);
    for (const char* needle : {"\\begin{theorem}", "\\begin{lemma}", "\\begin{itemize}", "\\begin{enumerate}",
                               "\\[", "$$", "\\begin{equation}", "\\begin{verbatim}"}) {
      if (src.find(needle) != std::string::npos) features.insert(needle);
    }
    DocumentAst ast = ParseDocument(src);
    std::string once = RenderDocument(ast);
    std::string twice = RenderDocument(ParseDocument(once));
    c.That(once == twice, f + ": render(parse(.)) not idempotent");
    std::vector<std::string> math = CollectMath(ast);
    c.That(CollectMath(ParseDocument(once)) == math, f + ": math bodies changed");
    // Each body must be a byte-exact substring of both the input and output.
    for (const std::string& m : math) {
      c.That(src.find(m) != std::string::npos, f + ": math body not in source: " + m);
      c.That(once.find(m) != std::string::npos, f + ": math body not in output: " + m);
    }
  }
  c.That(features.size() == 8, "fixture corpus lacks theorem/list/display/verbatim coverage");
  double secs = Seconds(start);
  c.That(secs < 5.0, "round trip took " + std::to_string(secs) + " s");
}

// ---- AC2: tokenize/detokenize identity on generated inline sequences ----

void Ac2(Check& c) {
  testing::InlineGenerator gen(7);
  int failures = 0;
  const int kTrials = 1000;
  for (int i = 0; i < kTrials; ++i) {
    Inlines x = gen.Sequence();
    MathTokenMap map;
    std::string text = JoinInlines(TokenizeMath(x, map));
    Inlines back = Detokenize(text, map, TokenNamesIn(text));
    if (testing::Canonical(back) != testing::Canonical(x)) ++failures;
  }
  c.That(failures == 0, std::to_string(failures) + " of " + std::to_string(kTrials) + " sequences changed");
}

// ---- AC3: the worked example sentence ----

void Ac3(Check& c) {
  DocumentAst doc = ParseDocument(
      "Let $Y$ have mean $\\mu$ and variance $\\sigma^2$, and an unknown p.d.f. $p_Y$ that is everywhere "
      "nonzero.");
  c.That(doc.blocks.size() == 1 && doc.blocks[0].is<Paragraph>(), "not a single paragraph");
  if (!c.failures().empty()) return;
  MathTokenMap map;
  std::string text = JoinInlines(TokenizeMath(doc.blocks[0].as<Paragraph>().inlines, map));
  std::vector<Sentence> s = SegmentSentences(text, 0, {});
  const std::string expected =
      "Let MATH1X have mean MATH2X and variance MATH3X, and an unknown p.d.f. MATH4X that is everywhere nonzero.";
  c.That(s.size() == 1, "expected one sentence, got " + std::to_string(s.size()));
  c.That(!s.empty() && s[0].text == expected, "sentence text: " + (s.empty() ? "" : s[0].text));
  c.That(map.size() == 4, "expected four tokens");
  const std::vector<std::string> bodies = {"Y", "\\mu", "\\sigma^2", "p_Y"};
  for (int i = 0; i < 4 && map.size() == 4; ++i) {
    const TokenEntry* e = map.Find(TokenName(i + 1));
    c.That(e && e->tex == bodies[i], TokenName(i + 1) + " maps to the wrong formula");
  }
}

// ---- AC4: perplexity gate and planted fallback fraction ----

class FixedBackend : public Backend {
 public:
  FixedBackend(std::string text, std::vector<double> lp) : text_(std::move(text)), lp_(std::move(lp)) {}
  TranslationResult Translate(const BackendRequest&) const override {
    TranslationResult r;
    r.text = text_;
    r.token_logprobs = lp_;
    r.backend_id = "fixed";
    return r;
  }
  std::string id() const override { return "fixed"; }

 private:
  std::string text_;
  std::vector<double> lp_;
};

// Largest log-probability whose one-token perplexity does not exceed `ppl`.
double LogprobAtMost(double ppl) {
  double lp = -std::log(ppl);
  while (std::exp(-lp) > ppl) lp = std::nextafter(lp, 0.0);
  while (std::exp(-std::nextafter(lp, -1.0)) <= ppl) lp = std::nextafter(lp, -1.0);
  return lp;
}

void Ac4(Check& c) {
  c.That(Perplexity({0.0, 0.0, 0.0}) == 1.0, "perplexity([0,0,0]) != 1");
  c.That(std::fabs(Perplexity({-0.5, -0.7, -0.3}) - std::exp(0.5)) <= 1e-12, "perplexity([-.5,-.7,-.3])");

  MathTokenMap map;
  map.Add({"x", TokenKind::kInline, MathDelim::Canonical(MathMode::kInline), {}});
  Sentence s{"Let MATH1X.", 0, {"MATH1X"}};
  IdentityBackend fallback(false);
  double at = LogprobAtMost(2.05);
  c.That(Perplexity({at}) <= 2.05 && Perplexity({std::nextafter(at, -1.0)}) > 2.05, "boundary logprob");
  RouteOutcome on = RouteSentence(s, map, FixedBackend("Soit MATH1X.", {at}), &fallback);
  c.That(on.decision.chosen == Route::kPrimary, "perplexity at the threshold was rejected");
  RouteOutcome above = RouteSentence(s, map, FixedBackend("Soit MATH1X.", {std::nextafter(at, -1.0)}), &fallback);
  c.That(above.decision.chosen == Route::kFallback, "perplexity just above the threshold was accepted");
  RouteOutcome lost = RouteSentence(s, map, FixedBackend("Soit.", {0.0}), &fallback);
  c.That(lost.decision.chosen == Route::kFallback &&
             lost.decision.reason == RouteReason::kTokenConservationFailure,
         "dropped token accepted from the primary");

  // 100 sentences, 26 of them made of unknown words (perplexity e^0.75).
  std::string doc = "\\documentclass{article}\n\\begin{document}\n";
  std::set<int> planted;
  std::mt19937 rng(26);
  while (planted.size() < 26) planted.insert(static_cast<int>(rng() % 100) + 1);
  for (int i = 1; i <= 100; ++i) {
    doc += planted.count(i) ? "Quantum chromodynamics suffices $q_{" + std::to_string(i) + "}$.\n\n"
                            : "Let $x_{" + std::to_string(i) + "}$.\n\n";
  }
  doc += "\\end{document}\n";
  PipelineConfig cfg;
  cfg.primary = std::string("mock:") + TEXMT_FIXTURES "/defn_dictionary.json";
  cfg.fallback = "identity";
  PipelineResult r = TranslateTex(doc, cfg);
  const RoutingReport& rep = r.doc.report;
  c.That(rep.total() == 100, "total " + std::to_string(rep.total()));
  c.That(rep.fallback_count() == 26, "fallback count " + std::to_string(rep.fallback_count()));
  c.That(rep.fallback_fraction() == 0.26, "fallback fraction is not exactly 0.26");
  c.That(rep.ToJson()["fallback_fraction"].get<double>() == 0.26, "report JSON fraction");
  std::set<int> rejected;
  for (const SentenceRecord& s : rep.sentences)
    if (s.decision.chosen != Route::kPrimary) rejected.insert(s.id);
  c.That(rejected == planted, "rejected sentences differ from the planted ones");
}

// ---- AC5: BLEU ----

// Independent counter: n-grams as joined strings in sorted vectors, clipped
// by a merge walk.
double OracleBleu(const std::vector<std::string>& hyp, const std::vector<std::string>& ref) {
  auto grams = [](const std::vector<std::string>& t, std::size_t n) {
    std::vector<std::string> g;
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
      std::string s;
      for (std::size_t k = 0; k < n; ++k) s += t[i + k] + '\x1f';
      g.push_back(s);
    }
    std::sort(g.begin(), g.end());
    return g;
  };
  double c = 0, r = 0, log_p = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    double m = 0, total = 0;
    for (std::size_t s = 0; s < hyp.size(); ++s) {
      std::vector<std::string> h = grams(WordTokenize(hyp[s]), n), rf = grams(WordTokenize(ref[s]), n);
      total += h.size();
      std::vector<std::string> common;
      std::set_intersection(h.begin(), h.end(), rf.begin(), rf.end(), std::back_inserter(common));
      m += common.size();  // multiset intersection = clipped count
    }
    if (m == 0) return 0;
    log_p += std::log(m / total) / 4;
  }
  for (std::size_t s = 0; s < hyp.size(); ++s) {
    c += WordTokenize(hyp[s]).size();
    r += WordTokenize(ref[s]).size();
  }
  return (c > r ? 1.0 : std::exp(1 - r / c)) * std::exp(log_p);
}

void Ac5(Check& c) {
  std::vector<std::string> ref = ReadLines(TEXMT_FIXTURES "/bleu/ref.fr");
  std::vector<std::string> hyp = ReadLines(TEXMT_FIXTURES "/bleu/hyp.fr");
  c.That(BleuFromText(ref, ref).score == 1.0, "identical corpora do not score 1");
  NgramCount u = ClippedNgramPrecision({{"the", "the", "the", "the", "the", "the", "the"}},
                                       {{"the", "cat", "is", "on", "the", "mat"}}, 1);
  c.That(u.matches == 2 && u.total == 7, "clipped unigram case is not 2/7");
  c.That(hyp.size() == 3, "fixture is not three sentences");
  double got = BleuFromText(hyp, ref).score, want = OracleBleu(hyp, ref);
  c.That(want > 0 && want < 1, "fixture oracle is degenerate");
  c.That(std::fabs(got - want) <= 1e-9, "BLEU " + std::to_string(got) + " vs oracle " + std::to_string(want));
}

// ---- AC6: glossary filter on a planted corpus ----

void Ac6(Check& c) {
  testing::PlantedCorpus p = testing::MakePlantedCorpus(1000, 100);
  ParallelCorpus kept = FilterByGlossary(p.corpus, testing::PlantedGlossary(), 2);
  std::vector<std::pair<std::string, std::string>> want;
  for (std::size_t i : p.planted) want.push_back(p.corpus.pairs[i]);
  c.That(p.corpus.size() == 1000 && want.size() == 100, "planted corpus shape");
  c.That(kept.size() == 100, "kept " + std::to_string(kept.size()) + " pairs");
  c.That(kept.pairs == want, "kept pairs differ from the planted ones or are out of order");
}

// ---- AC7: split determinism ----

void Ac7(Check& c) {
  auto numbered = [](std::size_t n) {
    ParallelCorpus pc;
    for (std::size_t i = 0; i < n; ++i) pc.pairs.emplace_back(std::to_string(i), "t" + std::to_string(i));
    return pc;
  };
  CorpusSplit ten = ShuffleSplit(numbered(10), {0.8, 0.1, 0.1}, 1);
  c.That(ten.train.size() == 8 && ten.valid.size() == 1 && ten.test.size() == 1, "N=10 sizes");
  ParallelCorpus big = numbered(1000);
  CorpusSplit a = ShuffleSplit(big, {0.8, 0.1, 0.1}, 99), b = ShuffleSplit(big, {0.8, 0.1, 0.1}, 99);
  c.That(a.train.pairs == b.train.pairs && a.valid.pairs == b.valid.pairs && a.test.pairs == b.test.pairs,
         "same seed gave different partitions");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = rng() % 5000;
    ParallelCorpus pc = numbered(n);
    CorpusSplit s = ShuffleSplit(pc, {0.8, 0.1, 0.1}, rng());
    std::vector<std::string> seen;
    for (const ParallelCorpus* part : {&s.train, &s.valid, &s.test})
      for (const auto& pr : part->pairs) seen.push_back(pr.first);
    std::sort(seen.begin(), seen.end());
    std::vector<std::string> all;
    for (const auto& pr : pc.pairs) all.push_back(pr.first);
    std::sort(all.begin(), all.end());
    if (seen != all) {
      c.That(false, "partition property fails for N=" + std::to_string(n));
      break;
    }
  }
}

// ---- AC8: French conventions ----

void Ac8(Check& c) {
  const std::string want = "\\documentclass[french]{article}\n\\usepackage[T1]{fontenc}\n\\usepackage{babel}";
  std::string once = AddFrenchPreamble("\\documentclass{article}");
  c.That(once == want, "preamble: " + once);
  c.That(AddFrenchPreamble(once) == want, "preamble change is not idempotent");
  c.That(ConvertQuotes("``bonjour''").text == "\\og bonjour\\fg{}", "quote conversion");

  std::string doc =
      "\\documentclass{article}\n\\begin{document}\nHe said ``hello'' twice.\n"
      "Note $``a'' + b$ here.\n\\begin{verbatim}\n``raw''\n\\end{verbatim}\n\\end{document}\n";
  PipelineConfig cfg;
  cfg.primary = "identity";
  std::string out = TranslateTex(doc, cfg).output;
  c.That(out.find("\\og hello\\fg{}") != std::string::npos, "quotes in text not converted");
  c.That(out.find("$``a'' + b$") != std::string::npos, "math changed");
  c.That(out.find("\\begin{verbatim}\n``raw''\n\\end{verbatim}") != std::string::npos, "verbatim changed");
}

// ---- AC9: end to end ----

void Ac9(Check& c) {
  PipelineConfig cfg;
  cfg.primary = std::string("mock:") + TEXMT_FIXTURES "/defn_dictionary.json";
  std::string in = Slurp(TEXMT_FIXTURES "/defn.tex");
  PipelineResult r = TranslateTex(in, cfg);
  c.That(r.output == Slurp(TEXMT_FIXTURES "/defn.golden.tex"), "definition output differs from golden");
  for (const char* needle : {"\\begin{defn}", "\\end{defn}", "$$\nS_r(x) = \\{y \\in \\F^n \\mid d(x,y) \\leq r\\}.\n$$",
                             "\\define{", "$x \\in \\F^n$"}) {
    c.That(r.output.find(needle) != std::string::npos, std::string("missing ") + needle);
  }
  std::vector<std::string> m_in = CollectMath(ParseDocument(in)), m_out = CollectMath(ParseDocument(r.output));
  std::sort(m_in.begin(), m_in.end());
  std::sort(m_out.begin(), m_out.end());
  c.That(m_in == m_out, "formulas differ after translation");

  cfg.fallback = "identity";
  std::string ten = Slurp(TEXMT_FIXTURES "/tenpage.tex");
  auto start = Clock::now();
  PipelineResult big = TranslateTex(ten, cfg);
  double secs = Seconds(start);
  c.That(secs < 10.0, "ten-page document took " + std::to_string(secs) + " s");
  c.That(big.doc.report.total() > 500, "ten-page document has too few sentences");
}

}  // namespace
}  // namespace texmt

int main() {
  using texmt::Check;
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"AC1 round trip on fixture corpus", texmt::Ac1},
      {"AC2 tokenize/detokenize identity", texmt::Ac2},
      {"AC3 worked example sentence", texmt::Ac3},
      {"AC4 perplexity gate and fallback fraction", texmt::Ac4},
      {"AC5 BLEU oracle", texmt::Ac5},
      {"AC6 glossary filter", texmt::Ac6},
      {"AC7 split determinism", texmt::Ac7},
      {"AC8 French conventions", texmt::Ac8},
      {"AC9 end to end", texmt::Ac9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.That(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.failures().empty() ? "PASS " : "FAIL ") << name << "\n";
    for (const std::string& f : c.failures()) std::cout << "    " << f << "\n";
    failed += !c.failures().empty();
  }
  return failed == 0 ? 0 : 1;
}
