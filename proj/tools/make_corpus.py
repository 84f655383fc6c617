#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Regenerates tests/data/corpus from the public-domain/CC0 scikit-image samples."""
import pathlib
import sys

import skimage.data
from PIL import Image

# (loader, output name, target width)
IMAGES = [
    ("astronaut", "astronaut.ppm", 216),
    ("camera", "camera.pgm", 200),
    ("coffee", "coffee.png", 240),
    ("chelsea", "chelsea.ppm", 225),
    ("coins", "coins.pgm", 192),
    ("rocket", "rocket.png", 231),
    ("hubble_deep_field", "hubble.png", 180),
    ("immunohistochemistry", "ihc.ppm", 168),
    ("text", "text.pgm", 250),
    ("retina", "retina.png", 190),
    ("grass", "grass.pgm", 160),
    ("brick", "brick.png", 176),
    ("clock", "clock.pgm", 210),
]


def main(out_dir: pathlib.Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for loader, name, width in IMAGES:
        img = Image.fromarray(getattr(skimage.data, loader)())
        img = img.convert("L" if name.endswith(".pgm") or img.mode == "L" else "RGB")
        height = round(img.height * width / img.width)
        img.resize((width, height), Image.LANCZOS).save(out_dir / name)


if __name__ == "__main__":
    main(pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data/corpus"))
