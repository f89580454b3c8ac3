#!/usr/bin/env python3
"""Convert the 5000-image MNIST sample bundled with mlxtend into gzipped IDX files.

Usage: make_mnist_subset.py <mlxtend wheel or mnist_5k.csv.gz> <output dir>

The sample holds 500 images per digit. Output files use the canonical MNIST
names so the CLI can be pointed at the directory directly.
"""
import gzip
import io
import struct
import sys
import zipfile
from pathlib import Path

import numpy as np


def read_rows(src: Path) -> np.ndarray:
    if src.suffix == ".whl":
        with zipfile.ZipFile(src) as z:
            raw = z.read("mlxtend/data/data/mnist_5k.csv.gz")
    else:
        raw = src.read_bytes()
    return np.loadtxt(io.BytesIO(gzip.decompress(raw)), delimiter=",")


def main() -> None:
    src, out = Path(sys.argv[1]), Path(sys.argv[2])
    rows = read_rows(src)
    images = rows[:, :-1].astype(np.uint8)
    labels = rows[:, -1].astype(np.uint8)
    out.mkdir(parents=True, exist_ok=True)
    n = len(labels)
    with gzip.GzipFile(out / "train-images-idx3-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">IIII", 0x803, n, 28, 28))
        f.write(images.tobytes())
    with gzip.GzipFile(out / "train-labels-idx1-ubyte.gz", "wb", mtime=0) as f:
        f.write(struct.pack(">II", 0x801, n))
        f.write(labels.tobytes())


if __name__ == "__main__":
    main()
