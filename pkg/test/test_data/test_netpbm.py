# test/test_data/test_netpbm.py
import tempfile
import unittest
from pathlib import Path

import numpy as np
import numpy.testing as npt

from dpenet.data import decode_netpbm, encode_netpbm, read_pgm, read_ppm, write_pgm, write_ppm
from dpenet.errors import DataError, TensorFormatError
from dpenet.tensor import SeededRng, Tensor, tensor_new


class TestNetpbm(unittest.TestCase):
    def test_pgm_header_and_payload(self):
        mask = tensor_new((1, 2, 3), [0, 1, 0, 1, 1, 0])
        raw = encode_netpbm(mask)
        self.assertTrue(raw.startswith(b"P5\n3 2\n255\n"))
        self.assertEqual(raw[-6:], bytes([0, 255, 0, 255, 255, 0]))

    def test_ppm_interleaves_channels(self):
        image = tensor_new((3, 1, 1), [1.0, 0.0, 0.5])
        self.assertEqual(encode_netpbm(image)[-3:], bytes([255, 0, 128]))

    def test_quantization_round_trip(self):
        """Lectura tras escritura: error ≤ 1/510 por canal."""
        image = Tensor(SeededRng(0).uniform(0.0, 1.0, (3, 5, 7)))
        back = decode_netpbm(encode_netpbm(image))
        self.assertEqual(back.shape.dims, (3, 5, 7))
        self.assertLessEqual(float(np.abs(back.data - image.data).max()), 1 / 510 + 1e-6)

    def test_masks_are_exact(self):
        mask = Tensor((SeededRng(1).uniform(0.0, 1.0, (1, 6, 6)) > 0.5).astype(np.float32))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "m.pgm"
            write_pgm(path, mask)
            self.assertTrue(read_pgm(path).equal(mask))

    def test_header_comments(self):
        data = b"P5\n# comentario\n2 1\n255\n" + bytes([0, 255])
        npt.assert_array_equal(decode_netpbm(data).data, [[[0.0, 1.0]]])

    def test_malformed_files(self):
        for data in (b"P3\n1 1\n255\n\x00", b"P5\n1 1\n65535\n\x00\x00", b"P5\n2 2\n255\n\x00",
                     b"P5\n2", b"P5\nx 1\n255\n\x00"):
            with self.assertRaises(TensorFormatError):
                decode_netpbm(data)

    def test_wrong_kind(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "i.ppm"
            write_ppm(path, tensor_new((3, 2, 2), 0.5))
            with self.assertRaises(TensorFormatError):
                read_pgm(path)
            self.assertEqual(read_ppm(path).shape.dims, (3, 2, 2))
            with self.assertRaises(DataError):
                write_ppm(path, tensor_new((1, 2, 2), 0.5))

    def test_out_of_range_values(self):
        with self.assertRaises(DataError):
            encode_netpbm(tensor_new((1, 1, 1), 1.5))


if __name__ == "__main__":
    unittest.main()
