# test/test_printing/test_printing.py
from __future__ import annotations
import unittest
from typing import Mapping

import pandas as pd

from dpenet.printing import Printable, RecordValue, ReportFormatter, ReportStyle


class Dummy(Printable):
    def __init__(self, value: float) -> None:
        self.value = value

    def __str__(self) -> str:
        return f"Valor = {self.value:.1f}"

    def as_record(self) -> Mapping[str, RecordValue]:
        return {"value": self.value, "n": 3, "name": "x"}


class TestPrintable(unittest.TestCase):
    def tearDown(self) -> None:
        ReportFormatter.set_style(ReportStyle.TEXT)
        ReportFormatter.set_precision(6)

    def test_str_and_repr(self) -> None:
        d = Dummy(3.14)
        self.assertEqual(str(d), "Valor = 3.1")
        self.assertEqual(repr(d), "Dummy(value=3.140000 n=3 name=x)")

    def test_render_follows_style(self) -> None:
        d = Dummy(2.0)
        self.assertEqual(d.render(), "Valor = 2.0")
        ReportFormatter.set_style(ReportStyle.RECORD)
        self.assertEqual(d.render(), "value=2.000000 n=3 name=x")

    def test_precision(self) -> None:
        ReportFormatter.set_precision(2)
        self.assertEqual(Dummy(0.123).record_line(), "value=0.12 n=3 name=x")
        with self.assertRaises(ValueError):
            ReportFormatter.set_precision(0)


class TestTables(unittest.TestCase):
    def test_ablation_columns(self) -> None:
        frame = pd.DataFrame([{"variant": "Network1", "mdice": 0.5, "accuracy": 0.9,
                               "miou": 0.4, "lr": 1e-4, "parameters": 10}])
        text = ReportFormatter.ablation_table_str(frame)
        header = text.splitlines()[0].split()
        self.assertEqual(header, ["variant", "mdice", "accuracy", "miou", "lr"])
        self.assertIn("Network1", text)


if __name__ == "__main__":
    unittest.main()
