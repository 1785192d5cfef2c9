"""Regenerate the 128x128 natural-image crops under tests/data/.

The crops come from images bundled with scikit-image (public domain /
CC0 sample data), so no download is needed.
"""
import pathlib

from PIL import Image
import skimage.data

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"

# name -> (loader, top, left)
CROPS = {
    "portrait": (skimage.data.astronaut, 60, 170),
    "cat": (skimage.data.chelsea, 60, 130),
    "coffee": (skimage.data.coffee, 120, 200),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (loader, top, left) in CROPS.items():
        img = loader()[top:top + 128, left:left + 128, :3]
        Image.fromarray(img).save(OUT / f"{name}_128.png")
        print(name, img.shape)


if __name__ == "__main__":
    main()
