#include <gtest/gtest.h>

#include <random>

#include "inline_generator.h"
#include "texmt/latex.h"
#include "texmt/sentences.h"

namespace texmt {
namespace {

Inlines ParseParagraph(std::string_view src) {
  DocumentAst doc = ParseDocument(src);
  EXPECT_EQ(doc.blocks.size(), 1u);
  return doc.blocks.at(0).as<Paragraph>().inlines;
}

std::vector<std::string> Texts(const std::vector<Sentence>& sentences) {
  std::vector<std::string> out;
  for (const Sentence& s : sentences) out.push_back(s.text);
  return out;
}

TEST(TokenizeMathTest, ReplacesFormulasInOrder) {
  MathTokenMap map;
  Inlines in = {Str{"Let"}, Space{}, Math(MathMode::kInline, "Y"), Space{}, Str{"have"}};
  Inlines expected = {Str{"Let"}, Space{}, Str{"MATH1X"}, Space{}, Str{"have"}};
  EXPECT_EQ(TokenizeMath(in, map), expected);
  ASSERT_EQ(map.size(), 1u);
  EXPECT_EQ(map.Find("MATH1X")->tex, "Y");
  EXPECT_EQ(map.Find("MATH1X")->kind, TokenKind::kInline);
}

TEST(TokenizeMathTest, MathFreeInputUnchanged) {
  MathTokenMap map;
  Inlines in = {Str{"no"}, Space{}, Str{"math"}};
  EXPECT_EQ(TokenizeMath(in, map), in);
  EXPECT_TRUE(map.empty());
}

TEST(TokenizeMathTest, IndicesContinueAcrossCalls) {
  MathTokenMap map;
  TokenizeMath({Math(MathMode::kInline, "Y")}, map);
  Inlines out = TokenizeMath(
      {Math(MathMode::kInline, "\\mu"), Space{}, Math(MathMode::kInline, "\\sigma^2")}, map);
  EXPECT_EQ(out, (Inlines{Str{"MATH2X"}, Space{}, Str{"MATH3X"}}));
  EXPECT_EQ(map.names(), (std::vector<std::string>{"MATH1X", "MATH2X", "MATH3X"}));
  EXPECT_EQ(map.Find("MATH3X")->tex, "\\sigma^2");
}

TEST(TokenizeMathTest, TranslatableCommandBecomesMarkerPair) {
  MathTokenMap map;
  Inlines out = TokenizeMath(ParseParagraph("A \\emph{closed ball} here."), map);
  EXPECT_EQ(JoinInlines(out), "A MATH1X closed ball MATH2X here.");
  EXPECT_EQ(map.Find("MATH1X")->kind, TokenKind::kOpen);
  EXPECT_EQ(map.Find("MATH1X")->tex, "\\emph{");
  EXPECT_EQ(map.Find("MATH1X")->partner, "MATH2X");
  EXPECT_EQ(map.Find("MATH2X")->kind, TokenKind::kClose);
}

TEST(TokenizeMathTest, MapJsonFormat) {
  MathTokenMap map;
  TokenizeMath(ParseParagraph("Let $Y$ and $$Z$$ be."), map);
  EXPECT_EQ(map.ToJson().dump(),
            R"({"MATH1X":{"tex":"Y","mode":"inline"},"MATH2X":{"tex":"Z","mode":"display","delim":"$$"}})");
  MathTokenMap back = MathTokenMap::FromJson(nlohmann::json::parse(map.ToJson().dump()));
  EXPECT_EQ(back.ToJson(), map.ToJson());
  EXPECT_EQ(back.next_index(), 3);
}

TEST(JoinInlinesTest, WorkedExample) {
  Inlines in = {Str{"Let"}, Space{}, Str{"MATH1X"}, Space{}, Str{"have"},
                Space{}, Str{"mean"}, Space{}, Str{"MATH2X"}};
  EXPECT_EQ(JoinInlines(in), "Let MATH1X have mean MATH2X");
}

TEST(JoinInlinesTest, EmptyAndSpaceRuns) {
  EXPECT_EQ(JoinInlines({}), "");
  EXPECT_EQ(JoinInlines({Str{"a"}, Space{}, Space{}, Str{"b"}}), "a b");
  EXPECT_EQ(JoinInlines({Space{}, Str{"a"}, Space{}}), "a");
}

TEST(JoinInlinesTest, RejectsUntokenizedMath) {
  EXPECT_THROW(JoinInlines({Math(MathMode::kInline, "x")}), UntokenizedMathError);
}

TEST(SegmentSentencesTest, AbbreviationDoesNotSplit) {
  MathTokenMap map;
  Inlines tokens = TokenizeMath(
      ParseParagraph("Let $Y$ have mean $\\mu$ and variance $\\sigma^2$, and an unknown p.d.f. "
                     "$f$ that is everywhere nonzero."),
      map);
  std::string text = JoinInlines(tokens);
  EXPECT_EQ(text,
            "Let MATH1X have mean MATH2X and variance MATH3X, and an unknown p.d.f. MATH4X that "
            "is everywhere nonzero.");
  auto sentences = SegmentSentences(text, 0);
  ASSERT_EQ(sentences.size(), 1u);
  EXPECT_EQ(sentences[0].token_names,
            (std::vector<std::string>{"MATH1X", "MATH2X", "MATH3X", "MATH4X"}));
}

TEST(SegmentSentencesTest, CanonicalBoundary) {
  EXPECT_EQ(Texts(SegmentSentences("It holds. We conclude.", 0)),
            (std::vector<std::string>{"It holds.", "We conclude."}));
}

TEST(SegmentSentencesTest, SplitsAfterNumberNotAbbreviation) {
  // Candidates: after "Thm." (abbreviation, no split) and after "3." (split).
  EXPECT_EQ(Texts(SegmentSentences("See Thm. 3. Then MATH1X follows.", 0)),
            (std::vector<std::string>{"See Thm. 3.", "Then MATH1X follows."}));
}

TEST(SegmentSentencesTest, TokenStartsSentence) {
  EXPECT_EQ(Texts(SegmentSentences("Hence it is. MATH2X is prime!", 7)),
            (std::vector<std::string>{"Hence it is.", "MATH2X is prime!"}));
  EXPECT_EQ(SegmentSentences("a. MATH2X", 7)[1].source_block, 7);
}

TEST(SegmentSentencesTest, NoSplitBeforeLowercase) {
  EXPECT_EQ(SegmentSentences("It is e.g. small. and so on", 0).size(), 1u);
  EXPECT_EQ(SegmentSentences("Is it? yes", 0).size(), 1u);
}

TEST(SegmentSentencesTest, NoTerminatorIsOnePhrase) {
  EXPECT_EQ(Texts(SegmentSentences("Main results", 0)), std::vector<std::string>{"Main results"});
  EXPECT_TRUE(SegmentSentences("", 0).empty());
}

TEST(SegmentSentencesTest, AccentedCapitalStartsSentence) {
  EXPECT_EQ(SegmentSentences("Fin. \xC3\x89tant donn\xC3\xA9.", 0).size(), 2u);
}

TEST(SegmentSentencesTest, NoSplitInsideMarkerPair) {
  MathTokenMap map;
  std::string text = JoinInlines(TokenizeMath(ParseParagraph("A \\footnote{See it. Then go.} B."), map));
  SegmentOptions with_map;
  with_map.map = &map;
  EXPECT_EQ(SegmentSentences(text, 0, with_map).size(), 1u);
  EXPECT_EQ(SegmentSentences(text, 0).size(), 3u);
}

TEST(SegmentSentencesTest, BreakAfterDisplayToken) {
  SegmentOptions opts;
  opts.break_after = {"MATH2X"};
  EXPECT_EQ(Texts(SegmentSentences("We have MATH2X where MATH3X is small.", 0, opts)),
            (std::vector<std::string>{"We have MATH2X", "where MATH3X is small."}));
}

TEST(SegmentSentencesTest, PartitionReproducesText) {
  std::string text = "One. Two? Three! cf. Four. MATH1X five. Six";
  std::string joined;
  for (const Sentence& s : SegmentSentences(text, 0)) joined += (joined.empty() ? "" : " ") + s.text;
  EXPECT_EQ(joined, text);
}

TEST(AbbreviationsTest, LoadFile) {
  Abbreviations a = Abbreviations::Load(std::string(TEXMT_DATA) + "/abbreviations.txt");
  EXPECT_TRUE(a.Contains("p.d.f."));
  EXPECT_TRUE(a.Contains("(cf."));
  EXPECT_FALSE(a.Contains("real."));
  EXPECT_EQ(a.words(), Abbreviations::Defaults().words());
}

TEST(DetokenizeTest, WorkedExampleInverse) {
  MathTokenMap map;
  map.Add({"Y", TokenKind::kInline, MathDelim::Canonical(MathMode::kInline), {}});
  map.Add({"\\mu", TokenKind::kInline, MathDelim::Canonical(MathMode::kInline), {}});
  Inlines expected = {Str{"Soit"},    Space{}, Math(MathMode::kInline, "Y"), Space{}, Str{"de"},
                      Space{},        Str{"moyenne"}, Space{}, Math(MathMode::kInline, "\\mu")};
  EXPECT_EQ(Detokenize("Soit MATH1X de moyenne MATH2X", map), expected);
}

TEST(DetokenizeTest, NoTokens) {
  EXPECT_EQ(Detokenize("bonjour  le monde", MathTokenMap{}),
            (Inlines{Str{"bonjour"}, Space{}, Str{"le"}, Space{}, Str{"monde"}}));
}

TEST(DetokenizeTest, PunctuationReattached) {
  MathTokenMap map;
  map.Add({"x", TokenKind::kInline, MathDelim::Canonical(MathMode::kInline), {}});
  EXPECT_EQ(Detokenize("(MATH1X),", map),
            (Inlines{Str{"("}, Math(MathMode::kInline, "x"), Str{"),"}}));
}

TEST(DetokenizeTest, Errors) {
  MathTokenMap map;
  map.Add({"x", TokenKind::kInline, MathDelim::Canonical(MathMode::kInline), {}});
  try {
    Detokenize("MATH1X MATH9X", map);
    FAIL();
  } catch (const TokenError& e) {
    EXPECT_EQ(e.kind(), TokenError::Kind::kMissingToken);
    EXPECT_EQ(e.names(), std::vector<std::string>{"MATH9X"});
  }
  try {
    Detokenize("rien", map, {"MATH1X"});
    FAIL();
  } catch (const TokenError& e) {
    EXPECT_EQ(e.kind(), TokenError::Kind::kDroppedToken);
  }
}

TEST(DetokenizeTest, MisnestedMarkers) {
  MathTokenMap map;
  TokenizeMath(ParseParagraph("\\emph{a} b"), map);
  try {
    Detokenize("MATH2X a MATH1X", map);
    FAIL();
  } catch (const TokenError& e) {
    EXPECT_EQ(e.kind(), TokenError::Kind::kMisnested);
  }
  EXPECT_THROW(Detokenize("MATH1X a", map), TokenError);
}

TEST(TokenConservationTest, Multiset) {
  MathTokenMap map;
  TokenizeMath(ParseParagraph("$a$ $b$ \\emph{c}"), map);
  EXPECT_TRUE(TokensConserved("MATH1X MATH2X", "MATH2X et MATH1X", map));
  EXPECT_FALSE(TokensConserved("MATH1X MATH2X", "MATH2X", map));
  EXPECT_FALSE(TokensConserved("MATH1X", "MATH1X MATH1X", map));
  EXPECT_TRUE(TokensConserved("MATH3X c MATH4X", "MATH3X c MATH4X", map));
  EXPECT_FALSE(TokensConserved("MATH3X c MATH4X", "MATH4X c MATH3X", map));
}

TEST(TokenRepairTest, AppendsRemovesAndUnwraps) {
  MathTokenMap map;
  TokenizeMath(ParseParagraph("$a$ $b$ \\emph{c}"), map);
  TokenRepair r = RepairTokens("MATH1X MATH2X", "soit MATH1X MATH1X MATH7X", map);
  EXPECT_EQ(r.text, "soit MATH1X MATH2X");
  EXPECT_EQ(r.appended, std::vector<std::string>{"MATH2X"});
  EXPECT_EQ(r.removed, (std::vector<std::string>{"MATH1X", "MATH7X"}));
  EXPECT_TRUE(TokensConserved("MATH1X MATH2X", r.text, map));

  TokenRepair w = RepairTokens("MATH3X c MATH4X", "MATH4X c MATH3X", map);
  EXPECT_EQ(w.text, "c");
  EXPECT_EQ(w.unwrapped, std::vector<std::string>{"MATH3X"});
  EXPECT_NO_THROW(Detokenize(w.text, map));
}

TEST(TokenRoundTripProperty, GeneratedSequences) {
  testing::InlineGenerator gen(20240611);
  int failures = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Inlines x = gen.Sequence();
    MathTokenMap map;
    std::string text = JoinInlines(TokenizeMath(x, map));
    SegmentOptions opts;
    opts.map = &map;
    std::string translated;
    for (const Sentence& s : SegmentSentences(text, 0, opts))
      translated += (translated.empty() ? "" : " ") + s.text;
    Inlines back = Detokenize(translated, map, TokenNamesIn(text));
    if (testing::Canonical(back) != testing::Canonical(x)) {
      ++failures;
      ADD_FAILURE() << "trial " << trial << ": " << RenderInlines(x) << "\n  became "
                    << RenderInlines(back);
      if (failures > 5) break;
    }
  }
  EXPECT_EQ(failures, 0);
}

}  // namespace
}  // namespace texmt
