#!/usr/bin/env python
import os
import tempfile
import unittest

from data.models import TokenKind
from grammar.class_registry import (
    ASSIGNMENT,
    BUILTIN_CLASS_NAMES,
    DEFAULT_REGISTRY,
    load_class_registry,
    parse_registry_text,
)
from grammar.grammar_core import (
    DEFAULT_KEYWORDS,
    KeywordSet,
    classify_statement,
    lex,
    parse_statement,
    requires_trailing_colon,
)
from utils.errors import EmptyStatementError, InputFormatError

# line -> expected class name
CLASSIFY_CASES = {
    "if x > 1:": "if",
    "def f(a):": "def",
    "    return x": "return",
    "retwrn x": "return",
    "x = 1": ASSIGNMENT,
    "print(x)": ASSIGNMENT,
    "for i in range(3):": "for",
    "else;": "else",
    "pass": "pass",
    "whiIe flag:": "while",
}

COLON_CLASSES = ("def", "if", "elif", "for", "while", "try", "except", "else")


class TestKeywordSet(unittest.TestCase):
    def test_default_keywords_cover_python_and_classes(self):
        for word in ("if", "def", "return", "lambda", "None", "yield"):
            self.assertIn(word, DEFAULT_KEYWORDS)
        self.assertNotIn("name", DEFAULT_KEYWORDS)

    def test_iteration_is_sorted(self):
        words = list(KeywordSet(["while", "if", "def"]))
        self.assertEqual(words, ["def", "if", "while"])


class TestClassify(unittest.TestCase):
    def test_examples(self):
        for line, expected in CLASSIFY_CASES.items():
            with self.subTest(line=line):
                self.assertEqual(classify_statement(line).name, expected)

    def test_name_use_is_never_repaired(self):
        # "retwrn" is close to "return" but it is assigned to here
        self.assertEqual(classify_statement("retwrn = 3").name, ASSIGNMENT)
        self.assertEqual(classify_statement("retwrn(3)").name, ASSIGNMENT)

    def test_repair_needs_a_plausible_length(self):
        # similar enough to "return" but two characters longer and not a glued prefix
        self.assertEqual(classify_statement("rreturnn x").name, ASSIGNMENT)
        self.assertEqual(classify_statement("returnx").name, "return")

    def test_repair_can_be_disabled(self):
        self.assertEqual(classify_statement("retwrn x", fuzzy_threshold=None).name, ASSIGNMENT)

    def test_blank_line_raises(self):
        with self.assertRaises(EmptyStatementError):
            classify_statement("   ")

    def test_colon_requirement(self):
        for name in BUILTIN_CLASS_NAMES:
            with self.subTest(name=name):
                self.assertEqual(requires_trailing_colon(DEFAULT_REGISTRY.get(name)), name in COLON_CLASSES)


class TestLex(unittest.TestCase):
    def test_kinds_and_spacing(self):
        tokens = lex("x = f('a b', 10)")
        self.assertEqual([t.text for t in tokens], ["x", "=", "f", "(", "'a b'", ",", "10", ")"])
        self.assertEqual(tokens[4].kind, TokenKind.STRING_LITERAL)
        self.assertEqual(tokens[6].kind, TokenKind.NUMBER_LITERAL)
        self.assertEqual([t.space_before for t in tokens],
                         [False, True, True, False, False, False, True, False])

    def test_dotted_name_with_spaces_is_one_token(self):
        tokens = lex("self. value")
        self.assertEqual(len(tokens), 1)
        self.assertEqual(tokens[0].text, "self. value")
        self.assertEqual(tokens[0].kind, TokenKind.IDENTIFIER)


class TestParse(unittest.TestCase):
    def test_if_statement(self):
        line = "if Cookie. name == naue ;"
        tokens = parse_statement(line, classify_statement(line))
        self.assertEqual([t.text for t in tokens], ["if", "Cookie. name", "==", "naue", ";"])
        self.assertEqual([t.kind for t in tokens], [
            TokenKind.KEYWORD, TokenKind.IDENTIFIER, TokenKind.SYMBOL, TokenKind.IDENTIFIER, TokenKind.SYMBOL,
        ])

    def test_assignment(self):
        tokens = parse_statement("count = count + 1", DEFAULT_REGISTRY.assignment)
        self.assertEqual([t.text for t in tokens], ["count", "=", "count", "+", "1"])
        self.assertEqual(tokens[-1].kind, TokenKind.NUMBER_LITERAL)

    def test_repaired_keyword_is_emitted(self):
        line = "retwrn x"
        tokens = parse_statement(line, classify_statement(line))
        self.assertEqual(tokens[0].text, "return")
        self.assertEqual(tokens[0].kind, TokenKind.KEYWORD)

    def test_glued_keyword_keeps_the_rest_of_the_word(self):
        for line, expected in (("returnx", ["return", "x"]), ("returnab + 1", ["return", "ab", "+", "1"])):
            with self.subTest(line=line):
                tokens = parse_statement(line, classify_statement(line))
                self.assertEqual([t.text for t in tokens], expected)
                self.assertEqual(tokens[1].kind, TokenKind.IDENTIFIER)
                self.assertTrue(tokens[1].space_before)
                self.assertEqual("".join(t.text for t in tokens), "".join(line.split()))

    def test_def_name_keeps_hyphen_and_role(self):
        line = "def get-value(self):"
        tokens = parse_statement(line, classify_statement(line))
        self.assertEqual(tokens[1].text, "get-value")
        self.assertEqual(tokens[1].role, "name")
        self.assertTrue(tokens[1].space_before)
        self.assertEqual([t.text for t in tokens[2:]], ["(", "self", "):"])

    def test_indentation_is_ignored(self):
        tokens = parse_statement("        pass", DEFAULT_REGISTRY.get("pass"))
        self.assertEqual([t.text for t in tokens], ["pass"])
        self.assertFalse(tokens[0].space_before)

    def test_every_line_parses(self):
        for line in ("?? ::", "x", ")(", "'open string", "1 2 3"):
            with self.subTest(line=line):
                self.assertTrue(parse_statement(line, classify_statement(line)))


class TestRegistryFile(unittest.TestCase):
    def test_parse_and_override(self):
        text = "# extra classes\nwith = true keyword tail\n\nclass = true keyword name tail\n"
        productions = parse_registry_text(text)
        self.assertEqual([p.statement_class.name for p in productions], ["with", "class"])
        registry = DEFAULT_REGISTRY.with_overrides(productions)
        self.assertIn("with", registry)
        self.assertTrue(registry.get("class").requires_trailing_colon)
        self.assertEqual(len(registry), len(DEFAULT_REGISTRY) + 2)

    def test_bad_lines_name_location(self):
        bad = {
            "with true keyword tail": "expected",
            "with = maybe keyword tail": "colon flag",
            "with = true tail": "must start with its keyword",
            "with = true keyword bogus": "unknown pattern elements",
        }
        for text, fragment in bad.items():
            with self.subTest(text=text):
                with self.assertRaises(InputFormatError) as ctx:
                    parse_registry_text(text, source="reg.txt")
                self.assertIn("reg.txt:1", str(ctx.exception))
                self.assertIn(fragment, str(ctx.exception))

    def test_load_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "classes.txt")
            with open(path, "w", encoding="utf-8") as f:
                f.write("with = true keyword tail\n")
            registry = load_class_registry(path)
            line = "with open(p) as fh"
            statement_class = classify_statement(line, KeywordSet.for_registry(registry), registry=registry)
            self.assertEqual(statement_class.name, "with")

    def test_missing_file(self):
        with self.assertRaises(InputFormatError):
            load_class_registry("/nonexistent/classes.txt")


if __name__ == "__main__":
    unittest.main()
