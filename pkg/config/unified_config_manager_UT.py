#!/usr/bin/env python
import json
import os
import tempfile
import unittest

from config.config_models import CodehandSettings, CorrectionConfig, NoiseConfig
from config.unified_config_manager import (
    UnifiedConfigManager,
    deep_merge_dicts,
    dump_kv_config,
    load_kv_config,
    parse_kv_text,
)
from utils.errors import ConfigError

BASE_CONFIG = {
    "noise_config": {"p_space": 0.2, "seed": 1},
    "correction_config": {"similarity_threshold": 0.75},
}


class TestKeyValueConfig(unittest.TestCase):
    def test_parse(self):
        parsed = parse_kv_text("# tuning\nsimilarity_threshold = 0.8\nnoise_config.seed = 9\n"
                               "fuzzy_keyword_repair = off\nsystem_config.log_file = none\n")
        self.assertEqual(parsed, {
            "correction_config": {"similarity_threshold": 0.8, "fuzzy_keyword_repair": False},
            "noise_config": {"seed": 9},
            "system_config": {"log_file": None},
        })

    def test_dump_and_load(self):
        config = CorrectionConfig(similarity_threshold=0.85, case_insensitive_match=False)
        self.assertEqual(load_kv_config(dump_kv_config(config)), config)

    def test_bad_lines(self):
        with self.assertRaises(ConfigError):
            parse_kv_text("threshold 0.8")
        with self.assertRaises(ConfigError):
            parse_kv_text(" = 3")
        with self.assertRaises(ConfigError):
            load_kv_config("similarity_threshold = 2.0")


class TestUnifiedConfigManager(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.base_path = os.path.join(self.tmp.name, "codehand_config.json")
        with open(self.base_path, "w", encoding="utf-8") as f:
            json.dump(BASE_CONFIG, f)
        self.manager = UnifiedConfigManager(self.base_path)

    def tearDown(self):
        self.tmp.cleanup()

    def test_deep_merge(self):
        merged = deep_merge_dicts({"a": {"x": 1, "y": 2}, "b": 1}, {"a": {"y": 3}, "c": {}})
        self.assertEqual(merged, {"a": {"x": 1, "y": 3}, "b": 1})

    def test_precedence(self):
        user_path = os.path.join(self.tmp.name, "user.cfg")
        with open(user_path, "w", encoding="utf-8") as f:
            f.write("similarity_threshold = 0.8\nnoise_config.seed = 5\n")
        settings = self.manager.load_settings(user_path, {"noise_config": {"seed": 7, "p_word": None}})
        self.assertEqual(settings.correction_config.similarity_threshold, 0.8)
        self.assertEqual(settings.noise_config.seed, 7)
        self.assertEqual(settings.noise_config.p_space, 0.2)
        self.assertEqual(settings.noise_config.p_word, NoiseConfig().p_word)

    def test_missing_base_uses_defaults(self):
        settings = UnifiedConfigManager(os.path.join(self.tmp.name, "absent.json")).load_settings()
        self.assertEqual(settings, CodehandSettings())

    def test_missing_user_file(self):
        with self.assertRaises(ConfigError):
            self.manager.load_settings(os.path.join(self.tmp.name, "absent.json"))

    def test_invalid_values(self):
        for overrides in ({"noise_config": {"p_space": 1.5}},
                          {"correction_config": {"similarity_threshold": 0}},
                          {"correction_config": {"unknown": 1}},
                          {"system_config": {"log_level": "LOUD"}}):
            with self.subTest(overrides=overrides):
                with self.assertRaises(ConfigError):
                    self.manager.load_settings(overrides=overrides)

    def test_loading_leaves_base_file_untouched(self):
        with open(self.base_path, encoding="utf-8") as f:
            before = f.read()
        self.manager.load_settings(overrides={"segment_config": {"line_gap_ratio": 0.4}})
        with open(self.base_path, encoding="utf-8") as f:
            self.assertEqual(f.read(), before)


if __name__ == "__main__":
    unittest.main()
