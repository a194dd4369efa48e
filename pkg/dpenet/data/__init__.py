from dpenet.data.synthetic import Sample, generate_synthetic_dataset, sample_id
from dpenet.data.split import DatasetSplit, split_dataset, split_sizes, read_split, write_split
from dpenet.data.netpbm import (read_pgm, write_pgm, read_ppm, write_ppm,
                                encode_netpbm, decode_netpbm)
from dpenet.data.resize import resize_bilinear, resize_nearest
from dpenet.data.dataset import (Purpose, SampleSource, InMemoryDataset, DirectoryDataset,
                                 write_dataset)

__all__ = [
    'Sample',
    'DatasetSplit',
    'Purpose',
    'SampleSource',
    'InMemoryDataset',
    'DirectoryDataset',

    'generate_synthetic_dataset',
    'sample_id',
    'split_dataset',
    'split_sizes',
    'read_split',
    'write_split',
    'write_dataset',

    'read_pgm',
    'write_pgm',
    'read_ppm',
    'write_ppm',
    'encode_netpbm',
    'decode_netpbm',
    'resize_bilinear',
    'resize_nearest',
]
