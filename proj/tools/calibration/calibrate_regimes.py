# Copyright 2026 The gda Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Brute-force calibration of the experiment-regime and whitening thresholds.

Shares no code with the C++ library: data come from numpy's generator,
LDA/QDA/naive Bayes and the EM mixture come from scikit-learn, and the
plug-in Bayes densities from scipy. Prints per-seed statistics and the
summary recorded in docs/calibration.md.

    python3 tools/calibration/calibrate_regimes.py --seeds 200
"""

import argparse

import numpy as np
from scipy.stats import multivariate_normal
from sklearn.discriminant_analysis import (LinearDiscriminantAnalysis,
                                           QuadraticDiscriminantAnalysis)
from sklearn.mixture import GaussianMixture

MEANS = [np.array([-4.0, 4.0]), np.array([3.0, -3.0]), np.array([-3.0, 3.0])]
COVS = [np.array([[10.0, 1.0], [1.0, 5.0]]),
        np.array([[3.0, 0.0], [0.0, 4.0]]),
        np.array([[6.0, 1.5], [1.5, 4.0]])]

# class -> list of (gaussian index, count)
SCENARIOS = {
    "a": [[(0, 200)], [(1, 200)], [(2, 200)]],
    "b": [[(0, 200)], [(1, 200)]],
    "c": [[(0, 10)], [(1, 10)], [(2, 10)]],
    "d": [[(0, 10)], [(1, 10)]],
    "e": [[(0, 200)], [(1, 100)], [(2, 10)]],
    "f": [[(0, 200)], [(1, 10)]],
    "g": [[(0, 200), (1, 200)], [(2, 200)]],
}


def bounds():
    xs, ys = [], []
    for m, c in zip(MEANS, COVS):
        sx, sy = 3 * np.sqrt(c[0, 0]), 3 * np.sqrt(c[1, 1])
        xs += [m[0] - sx, m[0] + sx]
        ys += [m[1] - sy, m[1] + sy]
    return min(xs), max(xs), min(ys), max(ys)


def lattice(h=0.1):
    xmin, xmax, ymin, ymax = bounds()
    cols = int(np.ceil((xmax - xmin) / h))
    rows = int(np.ceil((ymax - ymin) / h))
    xc = xmin + (np.arange(cols) + 0.5) * h
    yc = ymax - (np.arange(rows) + 0.5) * h
    gx, gy = np.meshgrid(xc, yc)
    return np.column_stack([gx.ravel(), gy.ravel()])


def draw(scenario, rng):
    xs, ys = [], []
    for k, modes in enumerate(SCENARIOS[scenario]):
        for g, n in modes:
            xs.append(rng.multivariate_normal(MEANS[g], COVS[g], size=n))
            ys.append(np.full(n, k))
    return np.vstack(xs), np.concatenate(ys)


def split(x, y, rng, frac=0.2):
    tr, te = [], []
    for k in np.unique(y):
        idx = rng.permutation(np.flatnonzero(y == k))
        n_test = min(int(round(frac * len(idx))), max(len(idx) - 2, 0))
        te.append(idx[:n_test])
        tr.append(idx[n_test:])
    tr, te = np.concatenate(tr), np.concatenate(te)
    return x[tr], y[tr], x[te], y[te]


def bayes_predict(points, priors, densities):
    scores = np.column_stack([np.log(p) + d(points) for p, d in zip(priors, densities)])
    return np.argmax(scores, axis=1)


def run(scenario, seed, grid):
    rng = np.random.default_rng(seed)
    x, y = draw(scenario, rng)
    xtr, ytr, xte, yte = split(x, y, rng)
    priors = np.bincount(ytr) / len(ytr)
    qda = QuadraticDiscriminantAnalysis(priors=priors, store_covariance=True).fit(xtr, ytr)
    lda = LinearDiscriminantAnalysis(priors=priors, solver="lsqr").fit(xtr, ytr)
    densities = []
    for k, modes in enumerate(SCENARIOS[scenario]):
        if len(modes) == 1:
            g = modes[0][0]
            densities.append(multivariate_normal(MEANS[g], COVS[g]).logpdf)
        else:
            gm = GaussianMixture(len(modes), covariance_type="full", n_init=5,
                                 random_state=seed).fit(xtr[ytr == k])
            densities.append(gm.score_samples)
    q_grid = qda.predict(grid)
    b_grid = bayes_predict(grid, priors, densities)
    cells = [np.bincount(q_grid, minlength=len(priors)),
             np.bincount(lda.predict(grid), minlength=len(priors)),
             np.bincount(b_grid, minlength=len(priors))]
    return {
        "agree": 100.0 * np.mean(q_grid == b_grid),
        "cells": cells,
        "acc_bayes": np.mean(bayes_predict(xte, priors, densities) == yte),
        "acc_lda": np.mean(lda.predict(xte) == yte),
    }


def whitened_deviation(seed):
    """Largest max-abs gap between I and the sample covariance of a
    scenario (a) class whitened with its generating covariance."""
    rng = np.random.default_rng(seed)
    x, y = draw("a", rng)
    worst = 0.0
    for k, modes in enumerate(SCENARIOS["a"]):
        vals, vecs = np.linalg.eigh(COVS[modes[0][0]])
        z = x[y == k] @ vecs / np.sqrt(vals)
        worst = max(worst, np.abs(np.cov(z.T) - np.eye(2)).max())
    return worst


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=200)
    args = ap.parse_args()
    grid = lattice()
    stats = {s: [] for s in SCENARIOS}
    for seed in range(args.seeds):
        for s in SCENARIOS:
            stats[s].append(run(s, 1000 * seed + ord(s), grid))

    def q(v):
        v = np.asarray(v)
        return "min %.2f  p5 %.2f  median %.2f" % (v.min(), np.percentile(v, 5), np.median(v))

    print("seeds:", args.seeds, " grid cells:", len(grid))
    for s in "abcdefg":
        print("QDA-vs-Bayes agreement %s: %s" % (s, q([r["agree"] for r in stats[s]])))
    for s in "ab":
        print("P(agreement %s >= 95): %.3f" % (s, np.mean([r["agree"] >= 95.0 for r in stats[s]])))
    for big, small in (("a", "c"), ("b", "d")):
        lower = np.mean([rs["agree"] < rb["agree"] for rb, rs in zip(stats[big], stats[small])])
        print("P(agreement %s < %s): %.3f" % (small, big, lower))
    for s, k in (("e", 2), ("f", 1)):
        for name, i in (("qda", 0), ("lda", 1), ("bayes", 2)):
            frac = np.mean([r["cells"][i][k] == r["cells"][i].min() for r in stats[s]])
            print("P(n_k=10 class smallest region, %s %s): %.3f" % (s, name, frac))
    frac = np.mean([r["acc_bayes"] >= r["acc_lda"] for r in stats["g"]])
    print("P(Bayes-GMM accuracy >= LDA accuracy, g): %.3f" % frac)
    dev = np.array([whitened_deviation(1000 * seed + 7) for seed in range(args.seeds)])
    within = np.mean(dev <= 0.15)
    print("whitened scenario a, max-abs |S - I| over classes: median %.3f  p95 %.3f  max %.3f"
          % (np.median(dev), np.percentile(dev, 95), dev.max()))
    print("P(whitened covariance within 0.15 of I): %.3f  P(all of 20 seeds): %.2e" % (within, within ** 20))


if __name__ == "__main__":
    main()
