#!/usr/bin/env python
import logging
import tempfile
import unittest
from pathlib import Path

from utils.operations_manager import OperationsLogger, read_operations


class TestOperationsLogger(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)

    def test_records_read_back_in_order(self):
        path = self.root / "run" / "operations_log.txt"
        with OperationsLogger(path) as journal:
            journal.log("inject started", source="codehand", operation_type="Command Started")
            journal.log("inject completed", source="codehand", operation_type="Command Completed")
        records = read_operations(path)
        self.assertEqual([r["operation_type"] for r in records], ["Command Started", "Command Completed"])
        self.assertEqual(records[0]["message"], "inject started")
        self.assertTrue(records[0]["timestamp"].endswith("+00:00"))

    def test_reopening_appends(self):
        path = self.root / "operations_log.txt"
        for n in range(2):
            journal = OperationsLogger(path)
            journal.log(f"run {n}")
            journal.close()
        self.assertEqual([r["message"] for r in read_operations(path)], ["run 0", "run 1"])

    def test_many_journals_register_no_loggers(self):
        before = set(logging.Logger.manager.loggerDict)
        for n in range(20):
            journal = OperationsLogger(self.root / f"out{n}" / "operations_log.txt")
            journal.log("started")
            journal.close()
        self.assertEqual(set(logging.Logger.manager.loggerDict), before)

    def test_log_after_close_raises(self):
        journal = OperationsLogger(self.root / "operations_log.txt")
        journal.close()
        journal.close()
        with self.assertRaises(ValueError):
            journal.log("late")

    def test_malformed_lines_skipped(self):
        path = self.root / "operations_log.txt"
        path.write_text('{"message": "ok"}\nnot json\n\n', encoding="utf-8")
        self.assertEqual(read_operations(path), [{"message": "ok"}])


if __name__ == "__main__":
    unittest.main()
