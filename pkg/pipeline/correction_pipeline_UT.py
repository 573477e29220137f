#!/usr/bin/env python
import unittest

from config.config_models import CorrectionConfig, NoiseConfig
from data.models import StatementClass, Token, TokenKind
from experiments.synthetic_corpus import build_functions
from grammar.grammar_core import DEFAULT_KEYWORDS, lex
from noisy_channel.error_injector import ErrorInjector
from pipeline.adaptive_lexicon import AdaptiveLexicon
from pipeline.correction_pipeline import (
    concatenate,
    correct_file_lines,
    correct_sample,
    correct_statement,
    detect_unbalanced,
    merge_split_identifiers,
    normalize_token,
    repair_hyphens,
    resolve_token,
)
from utils.errors import EmptyStatementError

DEFAULT_CONFIG = CorrectionConfig()

IF_CLASS = StatementClass("if", True)
WHILE_CLASS = StatementClass("while", True)
RETURN_CLASS = StatementClass("return", False)


def ident(text, space_before=True, role=None):
    return Token(text, TokenKind.IDENTIFIER, space_before, role)


def sym(text, space_before=True):
    return Token(text, TokenKind.SYMBOL, space_before)


def kw(text, space_before=True):
    return Token(text, TokenKind.KEYWORD, space_before)


class TestAdaptiveLexicon(unittest.TestCase):
    def test_add_rules(self):
        lexicon = AdaptiveLexicon()
        self.assertTrue(lexicon.add("cookie"))
        self.assertFalse(lexicon.add("cookie"))
        self.assertFalse(lexicon.add("return"))
        self.assertFalse(lexicon.add(""))
        self.assertEqual(lexicon.entries, ("cookie",))

    def test_best_match_prefers_exact_and_earliest(self):
        lexicon = AdaptiveLexicon(entries=["Cookie", "cookie", "abcd", "abce"])
        self.assertEqual(lexicon.best_match("cookie"), ("cookie", 1.0))
        self.assertEqual(lexicon.best_match("COOKIE")[0], "Cookie")
        self.assertEqual(lexicon.best_match("abcx")[0], "abcd")

    def test_empty_lexicon(self):
        self.assertEqual(AdaptiveLexicon().best_match("x"), (None, 0.0))


class TestTokenStages(unittest.TestCase):
    def test_normalize(self):
        self.assertEqual(normalize_token(ident("Cookie. name")).text, "Cookie.name")
        self.assertEqual(normalize_token(sym("= =")).text, "==")
        literal = Token("'a b'", TokenKind.STRING_LITERAL)
        self.assertIs(normalize_token(literal), literal)

    def test_resolve_replaces_similar(self):
        lexicon = AdaptiveLexicon(entries=["name"])
        self.assertEqual(resolve_token(ident("naue"), lexicon, DEFAULT_CONFIG).text, "name")
        self.assertEqual(lexicon.entries, ("name",))

    def test_resolve_accepts_new(self):
        lexicon = AdaptiveLexicon()
        self.assertEqual(resolve_token(ident("total"), lexicon, DEFAULT_CONFIG).text, "total")
        self.assertEqual(lexicon.entries, ("total",))

    def test_resolve_case_variant(self):
        lexicon = AdaptiveLexicon(entries=["cookie"])
        self.assertEqual(resolve_token(ident("Cookie"), lexicon, DEFAULT_CONFIG).text, "cookie")

    def test_resolve_per_segment(self):
        lexicon = AdaptiveLexicon(entries=["cookie", "name"])
        self.assertEqual(resolve_token(ident("Cookie.naue"), lexicon, DEFAULT_CONFIG).text, "cookie.name")

    def test_resolve_respects_threshold(self):
        lexicon = AdaptiveLexicon(entries=["name"])
        strict = CorrectionConfig(similarity_threshold=0.8)
        self.assertEqual(resolve_token(ident("naue"), lexicon, strict).text, "naue")
        self.assertEqual(lexicon.entries, ("name", "naue"))

    def test_non_identifiers_pass_through(self):
        lexicon = AdaptiveLexicon(entries=["name"])
        token = Token("naue", TokenKind.KEYWORD)
        self.assertIs(resolve_token(token, lexicon, DEFAULT_CONFIG), token)

    def test_merge_split_identifiers(self):
        merged = merge_split_identifiers(lex("x = Conflict Error"))
        self.assertEqual([t.text for t in merged], ["x", "=", "ConflictError"])
        self.assertTrue(merged[-1].space_before)

    def test_merge_blocked_by_keywords(self):
        merged = merge_split_identifiers(lex("x = a if b else c"))
        self.assertEqual([t.text for t in merged], ["x", "=", "a", "if", "b", "else", "c"])
        merged = merge_split_identifiers(lex("match value"))
        self.assertEqual([t.text for t in merged], ["match", "value"])

    def test_repair_hyphens_needs_known_junction(self):
        lexicon = AdaptiveLexicon(entries=["max_depth"])
        repaired = repair_hyphens(lex("x = max-depth"), lexicon)
        self.assertEqual([t.text for t in repaired], ["x", "=", "max_depth"])
        untouched = repair_hyphens(lex("x = a-b"), lexicon)
        self.assertEqual([t.text for t in untouched], ["x", "=", "a", "-", "b"])
        spaced = repair_hyphens(lex("x = max - depth"), lexicon)
        self.assertEqual(len(spaced), 5)


class TestConcatenate(unittest.TestCase):
    def test_colon_replaces_final_semicolon(self):
        tokens = [kw("if", False), ident("cookie.name"), sym("=="), ident("name"), sym(";")]
        self.assertEqual(concatenate(tokens, IF_CLASS), "if cookie.name == name:")

    def test_colon_appended(self):
        self.assertEqual(concatenate([kw("while", False), ident("flag")], WHILE_CLASS), "while flag:")

    def test_existing_colon_kept(self):
        tokens = [kw("while", False), ident("flag"), sym(":", False)]
        self.assertEqual(concatenate(tokens, WHILE_CLASS), "while flag:")

    def test_one_line_body_keeps_header_colon(self):
        tokens = [kw("if", False), ident("x"), sym(":", False), kw("return"), ident("y")]
        self.assertEqual(concatenate(tokens, IF_CLASS), "if x: return y")
        tokens = [kw("if", False), ident("d"), sym("[", False), Token("1", TokenKind.NUMBER_LITERAL, False),
                  sym(":]", False)]
        self.assertEqual(concatenate(tokens, IF_CLASS), "if d[1:]:")

    def test_no_colon_for_return(self):
        self.assertEqual(concatenate([kw("return", False), ident("x")], RETURN_CLASS), "return x")

    def test_first_token_never_spaced(self):
        self.assertEqual(concatenate([ident("x", True)], RETURN_CLASS), "x")

    def test_empty_raises(self):
        with self.assertRaises(ValueError):
            concatenate([], RETURN_CLASS)


class TestDiagnostics(unittest.TestCase):
    def test_balanced(self):
        self.assertEqual(detect_unbalanced(lex("f(x)")).unbalanced_brackets, 0)
        self.assertEqual(detect_unbalanced(lex("cname")).unbalanced_brackets, 0)

    def test_unclosed(self):
        diag = detect_unbalanced(lex("f(x, cname"))
        self.assertEqual(diag.unbalanced_brackets, 1)
        self.assertEqual(diag.flagged_tokens, (1,))

    def test_mismatched_closer(self):
        diag = detect_unbalanced(lex("a[1)"))
        self.assertEqual(diag.unbalanced_brackets, 2)


class TestCorrectStatement(unittest.TestCase):
    def test_golden_line(self):
        lexicon = AdaptiveLexicon(entries=["cookie", "name"])
        corrected, diag = correct_statement("if Cookie. name == naue ;", lexicon)
        self.assertEqual(corrected, "if cookie.name == name:")
        self.assertEqual(diag.unbalanced_brackets, 0)

    def test_keyword_repair(self):
        corrected, _ = correct_statement("retwrn x", AdaptiveLexicon())
        self.assertEqual(corrected, "return x")

    def test_def_name_hyphen(self):
        lexicon = AdaptiveLexicon()
        corrected, _ = correct_statement("def get-value(self):", lexicon)
        self.assertEqual(corrected, "def get_value(self):")
        self.assertEqual(lexicon.entries, ("get_value", "self"))

    def test_split_names_merge(self):
        corrected, _ = correct_statement("total = get_ value + 1", AdaptiveLexicon())
        self.assertEqual(corrected, "total = get_value + 1")

    def test_colon_guarantee(self):
        self.assertEqual(correct_statement("else;", AdaptiveLexicon())[0], "else:")
        self.assertEqual(correct_statement("while flag", AdaptiveLexicon())[0], "while flag:")

    def test_one_line_compound_statements_untouched(self):
        for line in ("if x: return y", "else: pass", "try: x = 1", "if (f(x)):continue;",
                     "while (n := next_item()) is not None: total = n"):
            with self.subTest(line=line):
                self.assertEqual(correct_statement(line, AdaptiveLexicon())[0], line)

    def test_glued_keyword_keeps_operand(self):
        self.assertEqual(correct_statement("returnx", AdaptiveLexicon())[0], "return x")

    def test_near_miss_is_flagged(self):
        lexicon = AdaptiveLexicon(entries=["name"])
        strict = CorrectionConfig(similarity_threshold=0.8)
        corrected, diag = correct_statement("x = naue", lexicon, strict)
        self.assertEqual(corrected, "x = naue")
        self.assertEqual(diag.flagged_tokens, (2,))

    def test_blank_raises(self):
        with self.assertRaises(EmptyStatementError):
            correct_statement("  ", AdaptiveLexicon())


class TestCorrectSample(unittest.TestCase):
    def test_empty_sample(self):
        self.assertEqual(correct_sample([]), ([], []))

    def test_clean_lines_unchanged_and_lexicon_filled(self):
        lexicon = AdaptiveLexicon()
        corrected, _ = correct_sample(["x = 1", "y = x"], lexicon=lexicon)
        self.assertEqual(corrected, ["x = 1", "y = x"])
        self.assertEqual(lexicon.entries, ("x", "y"))

    def test_cross_line_repair(self):
        lines = ["def get(name):", "x = 1", "y = 2", "return naue"]
        corrected, _ = correct_sample(lines)
        self.assertEqual(corrected[-1], "return name")

    def test_blank_lines_preserved(self):
        corrected, diagnostics = correct_file_lines(["x = 1", "   ", "y = x"], DEFAULT_CONFIG, AdaptiveLexicon())
        self.assertEqual(corrected, ["x = 1", "", "y = x"])
        self.assertEqual(len(diagnostics), 3)

    def test_fresh_lexicon_per_call(self):
        correct_sample(["cookie = 1"])
        corrected, _ = correct_sample(["cookle = 2"])
        self.assertEqual(corrected, ["cookle = 2"])

    def test_keywords_never_enter_lexicon(self):
        lexicon = AdaptiveLexicon()
        for sample in build_functions(10, seed=3):
            correct_sample(sample.source_lines, lexicon=lexicon)
        self.assertTrue(len(lexicon) > 0)
        for entry in lexicon:
            self.assertNotIn(entry, DEFAULT_KEYWORDS)
            self.assertFalse(any(ch.isspace() for ch in entry))


class TestIdempotence(unittest.TestCase):
    def test_clean_corpus_is_a_fixed_point(self):
        for sample in build_functions(40, seed=11):
            corrected, _ = correct_sample(sample.source_lines)
            self.assertEqual(corrected, list(sample.source_lines))

    def test_correcting_twice_changes_nothing(self):
        injector = ErrorInjector(NoiseConfig(seed=5))
        for sample in build_functions(40, seed=5):
            noisy, _ = injector.inject(sample.source_lines)
            once, _ = correct_sample(noisy)
            twice, _ = correct_sample(once)
            self.assertEqual(twice, once)


if __name__ == "__main__":
    unittest.main()
