"""Regenerates the HDBSCAN reference partitions under tests/data/hdbscan.

The C++ min_samples excludes the query point itself; scikit-learn counts it,
so the reference is computed with min_samples + 1.
"""

import pathlib

import numpy as np
from sklearn.cluster import HDBSCAN
from sklearn.cluster._hdbscan import hdbscan as hdbscan_impl
from sklearn.datasets import make_blobs

OUT = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data" / "hdbscan"

CASES = [
    # name, n_samples, centers, cluster_std, seed, min_cluster_size, min_samples
    ("blobs2_seed7", 120, 2, 0.8, 7, 5, 5),
    ("blobs3_seed11", 210, 3, 1.0, 11, 8, 4),
    ("blobs3_seed23", 300, 3, 1.3, 23, 10, 6),
]


def _process_mst_stable(mst):
    # scikit-learn orders MST edges with an unstable argsort, so equal-weight
    # edges can merge in an arbitrary order and change the condensed tree.
    # The C++ side sorts stably; do the same here so tied inputs compare.
    order = np.argsort(mst["distance"], kind="stable")
    return hdbscan_impl.make_single_linkage(mst[order])


def main():
    hdbscan_impl._process_mst = _process_mst_stable
    OUT.mkdir(parents=True, exist_ok=True)
    for name, n, centers, std, seed, mcs, ms in CASES:
        x, _ = make_blobs(n_samples=n, centers=centers, cluster_std=std,
                          n_features=2, random_state=seed)
        model = HDBSCAN(min_cluster_size=mcs, min_samples=ms + 1,
                        allow_single_cluster=False).fit(x)
        with open(OUT / f"{name}.txt", "w") as f:
            f.write(f"n={n} dim=2 min_cluster_size={mcs} min_samples={ms}\n")
            for point, label, prob in zip(x, model.labels_,
                                          model.probabilities_):
                f.write(f"{float(point[0])!r} {float(point[1])!r} {int(label)} {float(prob)!r}\n")
        noise = int((model.labels_ == -1).sum())
        print(name, "clusters", model.labels_.max() + 1, "noise", noise)


if __name__ == "__main__":
    main()
