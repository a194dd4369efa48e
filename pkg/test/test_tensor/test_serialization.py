# test/test_tensor/test_serialization.py
import struct
import tempfile
import unittest
from pathlib import Path

import numpy as np

from dpenet import Config
from dpenet.errors import TensorFormatError
from dpenet.tensor import SeededRng, Tensor, decode_tensor, encode_tensor, read_tensor, write_tensor


class TestDpetFormat(unittest.TestCase):
    def test_header_layout(self):
        """magic · versión · dtype · rango · extensiones u32 LE · datos."""
        t = Tensor(np.arange(6, dtype=np.float32).reshape(2, 3))
        raw = encode_tensor(t)
        self.assertEqual(raw[:4], b"DPET")
        self.assertEqual(raw[4:7], bytes([1, 0, 2]))
        self.assertEqual(struct.unpack("<2I", raw[7:15]), (2, 3))
        self.assertEqual(len(raw), 15 + 6 * 4)
        self.assertEqual(np.frombuffer(raw[15:], dtype="<f4").tolist(), [0, 1, 2, 3, 4, 5])

    def test_float64_bit_identical(self):
        with Config.use_precision("float64"):
            t = Tensor(SeededRng(1).normal((2, 3, 4, 5)))
        back, end = decode_tensor(encode_tensor(t))
        self.assertEqual(end, len(encode_tensor(t)))
        self.assertEqual(back.dtype, np.float64)
        self.assertTrue(back.equal(t))

    def test_file_helpers(self):
        t = Tensor(SeededRng(2).normal((1, 2, 2, 2)))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "t.dpet"
            write_tensor(path, t)
            self.assertTrue(read_tensor(path).equal(t))
            path.write_bytes(path.read_bytes() + b"\x00")
            with self.assertRaises(TensorFormatError):
                read_tensor(path)

    def test_corrupt_records(self):
        raw = encode_tensor(Tensor([1.0, 2.0]))
        with self.assertRaises(TensorFormatError):
            decode_tensor(b"XXXX" + raw[4:])
        with self.assertRaises(TensorFormatError):
            decode_tensor(raw[:-1])
        with self.assertRaises(TensorFormatError):
            decode_tensor(raw[:5])
        bad_version = raw[:4] + bytes([9]) + raw[5:]
        with self.assertRaises(TensorFormatError):
            decode_tensor(bad_version)
        bad_dtype = raw[:5] + bytes([7]) + raw[6:]
        with self.assertRaises(TensorFormatError):
            decode_tensor(bad_dtype)


if __name__ == "__main__":
    unittest.main()
